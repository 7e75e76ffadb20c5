//! Air-to-ground and terrestrial channel models: LoS probability sigmoid,
//! Nakagami-m power fading, average received power laws, strongest-power
//! association, SINR assembly, and the coverage indicator.
//!
//! LoS states and fading gains are sampled once per link per trial and then
//! reused for both association and SINR, so a snapshot sees one consistent
//! propagation state.

use rand::Rng;
use rand_distr::{Distribution, Gamma};
use serde::{Deserialize, Serialize};

use crate::error::{SimError, SimResult};
use crate::rng::TrialRng;
use crate::spatial::{elevation_angle_deg, GroundPoint};

/// All radio constants of the simulation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    /// LoS environment variable a (dimensionless).
    pub env_a: f64,
    /// LoS environment variable b (per degree).
    pub env_b: f64,
    /// Path-loss exponent of LoS UAV links.
    pub alpha_los: f64,
    /// Path-loss exponent of NLoS UAV links.
    pub alpha_nlos: f64,
    /// Path-loss exponent of terrestrial BS links.
    pub alpha_tbs: f64,
    /// Nakagami shape of LoS fading.
    pub m_los: f64,
    /// Nakagami shape of NLoS fading.
    pub m_nlos: f64,
    /// Additional loss of LoS links, linear scale in (0, 1].
    pub eta_los: f64,
    /// Additional loss of NLoS links, linear scale in (0, 1].
    pub eta_nlos: f64,
    /// UAV transmit power, W.
    pub rho_uav_w: f64,
    /// TBS transmit power, W.
    pub rho_tbs_w: f64,
    /// Noise power, W.
    pub noise_w: f64,
    /// SINR threshold, linear scale.
    pub sinr_threshold: f64,
}

impl ChannelParams {
    pub fn validate(&self) -> SimResult<()> {
        if !(self.env_a > 0.0) {
            return Err(SimError::invalid("env_a", "must be positive", self.env_a));
        }
        if !(self.env_b > 0.0) {
            return Err(SimError::invalid("env_b", "must be positive", self.env_b));
        }
        if !(self.alpha_los > 0.0) {
            return Err(SimError::invalid(
                "alpha_los",
                "must be positive",
                self.alpha_los,
            ));
        }
        for (name, v) in [("alpha_nlos", self.alpha_nlos), ("alpha_tbs", self.alpha_tbs)] {
            if !(v >= 2.0) {
                return Err(SimError::invalid(name, "must be >= 2", v));
            }
        }
        for (name, v) in [("m_los", self.m_los), ("m_nlos", self.m_nlos)] {
            if !(v >= 0.5) {
                return Err(SimError::invalid(name, "must be >= 0.5", v));
            }
        }
        for (name, v) in [("eta_los", self.eta_los), ("eta_nlos", self.eta_nlos)] {
            if !(v > 0.0 && v <= 1.0) {
                return Err(SimError::invalid(name, "must be in (0, 1]", v));
            }
        }
        for (name, v) in [
            ("rho_uav_w", self.rho_uav_w),
            ("rho_tbs_w", self.rho_tbs_w),
            ("noise_w", self.noise_w),
            ("sinr_threshold", self.sinr_threshold),
        ] {
            if !(v > 0.0) {
                return Err(SimError::invalid(name, "must be positive", v));
            }
        }
        Ok(())
    }
}

/// Transmitter kind: aerial or terrestrial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TxKind {
    Uav,
    Tbs,
}

/// One candidate transmitter in a trial snapshot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transmitter {
    pub kind: TxKind,
    pub location: GroundPoint,
    /// Hover altitude for UAVs; 0 for terrestrial stations.
    pub altitude_m: f64,
    /// False while the UAV is away charging.
    pub active: bool,
}

impl Transmitter {
    pub fn uav(location: GroundPoint, altitude_m: f64, active: bool) -> Self {
        debug_assert!(altitude_m > 0.0);
        Transmitter {
            kind: TxKind::Uav,
            location,
            altitude_m,
            active,
        }
    }

    pub fn tbs(location: GroundPoint) -> Self {
        Transmitter {
            kind: TxKind::Tbs,
            location,
            altitude_m: 0.0,
            active: true,
        }
    }

    /// 3-D distance to a ground user. Terrestrial distance is floored at 1 m
    /// so the power law stays finite.
    pub fn distance_3d(&self, user: &GroundPoint) -> f64 {
        let horiz = self.location.distance(user);
        match self.kind {
            TxKind::Uav => (horiz * horiz + self.altitude_m * self.altitude_m).sqrt(),
            TxKind::Tbs => horiz.max(1.0),
        }
    }

    /// Elevation angle from the user, degrees (only meaningful for UAVs).
    pub fn elevation_deg(&self, user: &GroundPoint) -> f64 {
        elevation_angle_deg(self.location.distance(user), self.altitude_m.max(1e-9))
            .expect("non-negative distance")
    }
}

/// One sampled link state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkRealization {
    pub is_los: bool,
    pub distance_3d_m: f64,
    pub fading_gain: f64,
    pub avg_rx_power_w: f64,
}

/// LoS probability of an air-to-ground link at elevation angle `theta_deg`:
/// 1 / (1 + a exp(-b (theta - a))).
pub fn los_probability(theta_deg: f64, params: &ChannelParams) -> SimResult<f64> {
    if !(0.0..=90.0).contains(&theta_deg) {
        return Err(SimError::OutOfRange {
            op: "los_probability",
            detail: format!("theta_deg {theta_deg} not in [0, 90]"),
        });
    }
    Ok(1.0 / (1.0 + params.env_a * (-params.env_b * (theta_deg - params.env_a)).exp()))
}

/// Bernoulli LoS draw with success probability `los_probability(theta)`.
pub fn sample_los_state(theta_deg: f64, params: &ChannelParams, rng: &mut TrialRng) -> bool {
    let p = los_probability(theta_deg, params).expect("angle in range");
    rng.gen::<f64>() < p
}

/// Nakagami-m power fading gain: Gamma(shape = m, scale = 1/m), unit mean.
pub fn sample_fading(shape_m: f64, rng: &mut TrialRng) -> SimResult<f64> {
    if !(shape_m >= 0.5) {
        return Err(SimError::invalid("shape_m", "must be >= 0.5", shape_m));
    }
    let gamma = Gamma::new(shape_m, 1.0 / shape_m)
        .map_err(|_| SimError::invalid("shape_m", "gamma shape invalid", shape_m))?;
    Ok(gamma.sample(rng))
}

/// Average received power of a link, fading excluded (unit mean).
///
/// UAV: rho_u eta d^-alpha with (eta, alpha) chosen by the LoS state.
/// TBS: rho_t d^-alpha_t.
pub fn avg_rx_power(
    tx: &Transmitter,
    user: &GroundPoint,
    is_los: bool,
    params: &ChannelParams,
) -> f64 {
    let d = tx.distance_3d(user);
    match tx.kind {
        TxKind::Uav => {
            let (eta, alpha) = if is_los {
                (params.eta_los, params.alpha_los)
            } else {
                (params.eta_nlos, params.alpha_nlos)
            };
            params.rho_uav_w * eta * d.powf(-alpha)
        }
        TxKind::Tbs => params.rho_tbs_w * d.powf(-params.alpha_tbs),
    }
}

/// Index of the active transmitter with the strongest average received power
/// under the sampled LoS states; ties broken by smallest 3-D distance, then
/// lowest index. `None` when no candidate is active.
pub fn associate(
    user: &GroundPoint,
    candidates: &[Transmitter],
    los_states: &[bool],
    params: &ChannelParams,
) -> Option<usize> {
    debug_assert_eq!(candidates.len(), los_states.len());
    let mut best: Option<(usize, f64, f64)> = None;
    for (i, tx) in candidates.iter().enumerate() {
        if !tx.active {
            continue;
        }
        let p = avg_rx_power(tx, user, los_states[i], params);
        let d = tx.distance_3d(user);
        let better = match best {
            None => true,
            Some((_, bp, bd)) => p > bp || (p == bp && d < bd),
        };
        if better {
            best = Some((i, p, d));
        }
    }
    best.map(|(i, _, _)| i)
}

/// SINR of the link from `server` to the user: sampled signal power over the
/// sum of sampled interference powers plus noise. Interferers are all active
/// transmitters except the server; with `interference` off the denominator is
/// noise only.
#[allow(clippy::too_many_arguments)]
pub fn sinr(
    user: &GroundPoint,
    server: usize,
    transmitters: &[Transmitter],
    los_states: &[bool],
    fading: &[f64],
    params: &ChannelParams,
    interference: bool,
) -> f64 {
    debug_assert!(transmitters[server].active);
    let signal = avg_rx_power(&transmitters[server], user, los_states[server], params)
        * fading[server];
    let mut denom = params.noise_w;
    if interference {
        for (i, tx) in transmitters.iter().enumerate() {
            if i == server || !tx.active {
                continue;
            }
            denom += avg_rx_power(tx, user, los_states[i], params) * fading[i];
        }
    }
    signal / denom
}

/// Coverage means SINR strictly above the threshold.
pub fn coverage_indicator(sinr_value: f64, params: &ChannelParams) -> bool {
    sinr_value > params.sinr_threshold
}
