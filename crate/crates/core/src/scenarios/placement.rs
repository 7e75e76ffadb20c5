//! Station and UAV placement rules of scenario 3 (reused by scenario 1 for
//! the per-cluster-edge stations): nearest point of the feasibility disk,
//! nearest road point with the living-zone shortcut, and the 1-D search for
//! the coverage-optimal hover point of a cluster pair.

use rand::Rng;

use crate::channel::ChannelParams;
use crate::error::{SimError, SimResult};
use crate::numerics::gamma_q;
use crate::rng::TrialRng;
use crate::spatial::{elevation_angle_deg, nearest_point_on_roads, ClusterSpec, GroundPoint, RoadLine};

/// Nearest point of the closed disk (living_center, R) to the UAV: the UAV
/// point itself when inside, otherwise the boundary point on the ray from
/// the center toward the UAV.
pub fn place_ee_station(
    uav_point: &GroundPoint,
    living_center: &GroundPoint,
    radius_m: f64,
) -> GroundPoint {
    debug_assert!(radius_m > 0.0);
    let dx = uav_point.x - living_center.x;
    let dy = uav_point.y - living_center.y;
    let dist = (dx * dx + dy * dy).sqrt();
    if dist <= radius_m {
        return *uav_point;
    }
    GroundPoint {
        x: living_center.x + dx / dist * radius_m,
        y: living_center.y + dy / dist * radius_m,
    }
}

/// RE station placement: anywhere inside the living zone (3 sigma around the
/// living center, where rooftops are available), otherwise the nearest point
/// on a road. With no roads and the UAV outside the zone there is no RE
/// placement and the caller falls back to the EE mode.
pub fn place_re_station(
    uav_point: &GroundPoint,
    roads: &[RoadLine],
    living: &ClusterSpec,
) -> SimResult<GroundPoint> {
    let zone_radius = 3.0 * living.user_stddev_m;
    if uav_point.distance(&living.center) <= zone_radius {
        return Ok(*uav_point);
    }
    let (point, _) = nearest_point_on_roads(uav_point, roads)?;
    Ok(point)
}

/// Common-random-number estimate of the pair coverage objective: a fixed set
/// of mixture user draws, each scored by its conditional coverage
/// probability with the LoS mixture and Nakagami fading tails integrated
/// analytically. Smooth in the hover point, so a 1-D golden-section search
/// and a grid search resolve the same optimum.
pub struct PairObjective {
    /// User positions in the canonical frame (living at origin, working at
    /// (d, 0)).
    users: Vec<GroundPoint>,
    channel: ChannelParams,
    altitude_m: f64,
    pair_distance_m: f64,
}

impl PairObjective {
    /// Draws the common user set: with probability `working_weight` a user
    /// of the working cluster, else of the living cluster.
    pub fn sample(
        pair_distance_m: f64,
        user_stddev_m: f64,
        working_weight: f64,
        channel: &ChannelParams,
        altitude_m: f64,
        n_draws: u64,
        rng: &mut TrialRng,
    ) -> Self {
        use rand_distr::{Distribution, Normal};
        let normal = Normal::new(0.0, user_stddev_m).expect("positive stddev");
        let users = (0..n_draws)
            .map(|_| {
                let working = rng.gen::<f64>() < working_weight;
                let cx = if working { pair_distance_m } else { 0.0 };
                GroundPoint {
                    x: cx + normal.sample(rng),
                    y: normal.sample(rng),
                }
            })
            .collect();
        PairObjective {
            users,
            channel: *channel,
            altitude_m,
            pair_distance_m,
        }
    }

    /// Conditional (noise-limited) coverage probability of one user at the
    /// given horizontal distance from the hover point.
    fn user_coverage(&self, horiz_m: f64) -> f64 {
        let ch = &self.channel;
        let theta = elevation_angle_deg(horiz_m, self.altitude_m).expect("valid altitude");
        let p_los = 1.0 / (1.0 + ch.env_a * (-ch.env_b * (theta - ch.env_a)).exp());
        let d3 = (horiz_m * horiz_m + self.altitude_m * self.altitude_m).sqrt();
        let s_los = ch.rho_uav_w * ch.eta_los * d3.powf(-ch.alpha_los);
        let s_nlos = ch.rho_uav_w * ch.eta_nlos * d3.powf(-ch.alpha_nlos);
        // P(gain > beta sigma2 / S) for Gamma(m, 1/m) fading.
        let tail = |m: f64, s: f64| gamma_q(m, m * ch.sinr_threshold * ch.noise_w / s);
        p_los * tail(ch.m_los, s_los) + (1.0 - p_los) * tail(ch.m_nlos, s_nlos)
    }

    /// Mean conditional coverage of the user set for a hover point at offset
    /// `t` along the living-to-working segment.
    pub fn eval(&self, offset_m: f64) -> f64 {
        let hover = GroundPoint::new(offset_m, 0.0);
        let sum: f64 = self
            .users
            .iter()
            .map(|u| self.user_coverage(u.distance(&hover)))
            .sum();
        sum / self.users.len() as f64
    }

    /// Mean conditional coverage for an arbitrary 2-D hover point (used by
    /// the unimodality verification tests).
    pub fn eval_2d(&self, hover: &GroundPoint) -> f64 {
        let sum: f64 = self
            .users
            .iter()
            .map(|u| self.user_coverage(u.distance(hover)))
            .sum();
        sum / self.users.len() as f64
    }

    /// Exhaustive grid argmax at the given resolution over [0, d].
    pub fn grid_argmax(&self, resolution_m: f64) -> f64 {
        let mut best_t = 0.0;
        let mut best_v = f64::NEG_INFINITY;
        let steps = (self.pair_distance_m / resolution_m).ceil() as usize;
        for k in 0..=steps {
            let t = (k as f64 * resolution_m).min(self.pair_distance_m);
            let v = self.eval(t);
            if v > best_v {
                best_v = v;
                best_t = t;
            }
        }
        best_t
    }

    /// Golden-section argmax over [0, d], run to sub-meter bracket width.
    pub fn golden_argmax(&self) -> f64 {
        golden_section_max(|t| self.eval(t), 0.0, self.pair_distance_m, 0.5)
    }
}

/// Golden-section search for the maximum of a unimodal function on [a, b].
fn golden_section_max<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.6180339887498949;
    let (mut a, mut b) = (a, b);
    if b - a <= tol {
        return 0.5 * (a + b);
    }
    let mut c = b - (b - a) * INV_PHI;
    let mut d = a + (b - a) * INV_PHI;
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * INV_PHI;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * INV_PHI;
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Hover point on the segment between the pair centers maximizing the
/// common-random-number coverage estimate of a mixture-sampled user.
#[allow(clippy::too_many_arguments)]
pub fn place_uav_optimal(
    living_center: &GroundPoint,
    working_center: &GroundPoint,
    user_stddev_m: f64,
    working_weight: f64,
    channel: &ChannelParams,
    altitude_m: f64,
    n_draws: u64,
    rng: &mut TrialRng,
) -> SimResult<GroundPoint> {
    if !(working_weight > 0.0 && working_weight < 1.0) {
        return Err(SimError::invalid(
            "working_weight",
            "must lie in (0, 1)",
            working_weight,
        ));
    }
    let d = living_center.distance(working_center);
    if d == 0.0 {
        return Ok(*living_center);
    }
    let objective = PairObjective::sample(
        d,
        user_stddev_m,
        working_weight,
        channel,
        altitude_m,
        n_draws,
        rng,
    );
    let t = objective.golden_argmax();
    let ux = (working_center.x - living_center.x) / d;
    let uy = (working_center.y - living_center.y) / d;
    Ok(GroundPoint {
        x: living_center.x + t * ux,
        y: living_center.y + t * uy,
    })
}
