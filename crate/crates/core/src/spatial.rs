//! Point and line process samplers plus the geometric queries built on them:
//! parent Poisson process of cluster centers, Gaussian cluster-user offsets,
//! Poisson Line Process roads in Hesse normal form, nearest-road projection,
//! and the elevation angle seen from a ground user to a hovering UAV.

use rand::Rng;
use rand_distr::{Distribution, Normal, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{SimError, SimResult};
use crate::rng::TrialRng;

/// A location on the ground plane, meters, origin at the reference center.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroundPoint {
    pub x: f64,
    pub y: f64,
}

impl GroundPoint {
    pub const ORIGIN: GroundPoint = GroundPoint { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        GroundPoint { x, y }
    }

    pub fn distance(&self, other: &GroundPoint) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2)).sqrt()
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// Square observation window centered at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimWindow {
    pub half_width_m: f64,
}

impl SimWindow {
    pub fn new(half_width_m: f64) -> SimResult<Self> {
        if !(half_width_m > 0.0) || !half_width_m.is_finite() {
            return Err(SimError::invalid(
                "half_width_m",
                "must be positive and finite",
                half_width_m,
            ));
        }
        Ok(SimWindow { half_width_m })
    }

    pub fn area_m2(&self) -> f64 {
        4.0 * self.half_width_m * self.half_width_m
    }

    /// Radius of the circle circumscribing the square window; the PLP offset
    /// range is [-R, R] so every line crossing the window is generated.
    pub fn circumradius_m(&self) -> f64 {
        self.half_width_m * std::f64::consts::SQRT_2
    }

    pub fn contains(&self, p: &GroundPoint) -> bool {
        p.x.abs() <= self.half_width_m && p.y.abs() <= self.half_width_m
    }
}

/// One user cluster: a center plus the per-axis standard deviation of the
/// symmetric Gaussian offset of its users.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClusterSpec {
    pub center: GroundPoint,
    pub user_stddev_m: f64,
}

impl ClusterSpec {
    pub fn new(center: GroundPoint, user_stddev_m: f64) -> SimResult<Self> {
        if !(user_stddev_m > 0.0) || !user_stddev_m.is_finite() {
            return Err(SimError::invalid(
                "user_stddev_m",
                "must be positive and finite",
                user_stddev_m,
            ));
        }
        if !center.is_finite() {
            return Err(SimError::invalid("center", "must be finite", f64::NAN));
        }
        Ok(ClusterSpec {
            center,
            user_stddev_m,
        })
    }
}

/// A road in Hesse normal form: the line {p : p・(cos a, sin a) = offset}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RoadLine {
    /// Normal direction angle in [0, pi).
    pub angle_rad: f64,
    /// Signed perpendicular distance of the line from the origin, meters.
    pub offset_m: f64,
}

impl RoadLine {
    /// Signed distance from `p` to the line (positive on the normal side).
    pub fn signed_distance(&self, p: &GroundPoint) -> f64 {
        p.x * self.angle_rad.cos() + p.y * self.angle_rad.sin() - self.offset_m
    }

    /// Orthogonal projection of `p` onto the line.
    pub fn project(&self, p: &GroundPoint) -> GroundPoint {
        let d = self.signed_distance(p);
        GroundPoint {
            x: p.x - d * self.angle_rad.cos(),
            y: p.y - d * self.angle_rad.sin(),
        }
    }
}

/// Densities of all point/line processes in play.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProcessDensities {
    /// Medium-size cluster centers per m^2.
    pub lambda_m_per_m2: f64,
    /// Users per m^2 in the living cluster.
    pub lambda_l_per_m2: f64,
    /// Users per m^2 in the working cluster.
    pub lambda_w_per_m2: f64,
    /// Road lines per meter of offset.
    pub lambda_roads_per_m: f64,
}

impl ProcessDensities {
    pub fn validate(&self) -> SimResult<()> {
        for (name, v) in [
            ("lambda_m_per_m2", self.lambda_m_per_m2),
            ("lambda_l_per_m2", self.lambda_l_per_m2),
            ("lambda_w_per_m2", self.lambda_w_per_m2),
            ("lambda_roads_per_m", self.lambda_roads_per_m),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(SimError::invalid(name, "must be positive and finite", v));
            }
        }
        Ok(())
    }

    /// Probability that a user of the living/working mixture belongs to the
    /// working cluster.
    pub fn working_weight(&self) -> f64 {
        self.lambda_w_per_m2 / (self.lambda_l_per_m2 + self.lambda_w_per_m2)
    }
}

/// Samples a homogeneous Poisson point process of the given density over the
/// window: Poisson count with mean density x area, points independent uniform.
pub fn sample_ppp(
    density_per_m2: f64,
    window: &SimWindow,
    rng: &mut TrialRng,
) -> SimResult<Vec<GroundPoint>> {
    if !(density_per_m2 > 0.0) || !density_per_m2.is_finite() {
        return Err(SimError::invalid(
            "density_per_m2",
            "must be positive and finite",
            density_per_m2,
        ));
    }
    let mean = density_per_m2 * window.area_m2();
    let n = Poisson::new(mean)
        .map_err(|_| SimError::invalid("density_per_m2", "poisson mean invalid", mean))?
        .sample(rng) as usize;
    let hw = window.half_width_m;
    Ok((0..n)
        .map(|_| GroundPoint {
            x: rng.gen_range(-hw..hw),
            y: rng.gen_range(-hw..hw),
        })
        .collect())
}

/// Draws one user of the cluster: center plus independent zero-mean Gaussian
/// offsets with the cluster's per-axis standard deviation.
pub fn sample_cluster_user(spec: &ClusterSpec, rng: &mut TrialRng) -> GroundPoint {
    let normal = Normal::new(0.0, spec.user_stddev_m).expect("validated stddev");
    GroundPoint {
        x: spec.center.x + normal.sample(rng),
        y: spec.center.y + normal.sample(rng),
    }
}

/// Samples a Poisson Line Process over the window: offsets form a 1-D Poisson
/// process on [-R, R] (R the circumscribing radius) with the given intensity,
/// angles independent uniform on [0, pi).
pub fn sample_plp(
    line_density_per_m: f64,
    window: &SimWindow,
    rng: &mut TrialRng,
) -> SimResult<Vec<RoadLine>> {
    if !(line_density_per_m > 0.0) || !line_density_per_m.is_finite() {
        return Err(SimError::invalid(
            "line_density_per_m",
            "must be positive and finite",
            line_density_per_m,
        ));
    }
    let r = window.circumradius_m();
    let mean = line_density_per_m * 2.0 * r;
    let n = Poisson::new(mean)
        .map_err(|_| SimError::invalid("line_density_per_m", "poisson mean invalid", mean))?
        .sample(rng) as usize;
    Ok((0..n)
        .map(|_| RoadLine {
            angle_rad: rng.gen_range(0.0..std::f64::consts::PI),
            offset_m: rng.gen_range(-r..r),
        })
        .collect())
}

/// Returns the closest point over all roads to `p` and its distance.
pub fn nearest_point_on_roads(
    p: &GroundPoint,
    roads: &[RoadLine],
) -> SimResult<(GroundPoint, f64)> {
    let best = roads
        .iter()
        .map(|line| (line, line.signed_distance(p).abs()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or(SimError::NoRoad)?;
    Ok((best.0.project(p), best.1))
}

/// Elevation angle in degrees from a ground point at the given horizontal
/// distance up to a platform at the given altitude; 90 when directly below.
pub fn elevation_angle_deg(horizontal_dist_m: f64, altitude_m: f64) -> SimResult<f64> {
    if !(altitude_m > 0.0) {
        return Err(SimError::invalid(
            "altitude_m",
            "must be positive",
            altitude_m,
        ));
    }
    if horizontal_dist_m < 0.0 {
        return Err(SimError::invalid(
            "horizontal_dist_m",
            "must be non-negative",
            horizontal_dist_m,
        ));
    }
    Ok(altitude_m.atan2(horizontal_dist_m).to_degrees())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::trial_stream;

    #[test]
    fn ppp_mean_count_matches_density_times_area() {
        // density 1e-6 over half-width 5000 m -> mean 100.
        let window = SimWindow::new(5000.0).unwrap();
        let mut rng = trial_stream(42, 0);
        let draws = 10_000;
        let mut total = 0usize;
        for _ in 0..draws {
            total += sample_ppp(1e-6, &window, &mut rng).unwrap().len();
        }
        let mean = total as f64 / draws as f64;
        // Poisson(100): se of the sample mean over 1e4 draws is 0.1.
        assert!(
            (mean - 100.0).abs() < 0.3,
            "sample mean {mean} departs from 100"
        );
    }

    #[test]
    fn ppp_is_deterministic_and_rejects_bad_input() {
        let window = SimWindow::new(200.0).unwrap();
        let a = sample_ppp(1e-4, &window, &mut trial_stream(9, 3)).unwrap();
        let b = sample_ppp(1e-4, &window, &mut trial_stream(9, 3)).unwrap();
        assert_eq!(a, b);
        assert!(sample_ppp(0.0, &window, &mut trial_stream(9, 3)).is_err());
        assert!(sample_ppp(-1.0, &window, &mut trial_stream(9, 3)).is_err());
        assert!(SimWindow::new(0.0).is_err());
    }

    #[test]
    fn ppp_empty_draw_is_allowed() {
        // Tiny mean: Poisson(0.001) is almost always 0.
        let window = SimWindow::new(1.0).unwrap();
        let pts = sample_ppp(2.5e-4, &window, &mut trial_stream(1, 0)).unwrap();
        assert!(pts.len() <= 2);
    }

    #[test]
    fn ppp_counts_fit_poisson_chi_square_at_1_percent() {
        // Goodness of fit of counts against Poisson(4) over 1e4 windows.
        let window = SimWindow::new(1000.0).unwrap();
        let lambda = 4.0;
        let density = lambda / window.area_m2();
        let mut rng = trial_stream(2024, 0);
        let draws = 10_000usize;
        // Bins 0..=9 plus tail.
        let mut obs = [0.0f64; 11];
        for _ in 0..draws {
            let n = sample_ppp(density, &window, &mut rng).unwrap().len();
            obs[n.min(10)] += 1.0;
        }
        let mut expected = [0.0f64; 11];
        let mut pmf = (-lambda).exp();
        let mut cum = 0.0;
        for (k, e) in expected.iter_mut().enumerate().take(10) {
            if k > 0 {
                pmf *= lambda / k as f64;
            }
            *e = pmf * draws as f64;
            cum += pmf;
        }
        expected[10] = (1.0 - cum) * draws as f64;
        let chi2: f64 = obs
            .iter()
            .zip(expected.iter())
            .map(|(o, e)| (o - e).powi(2) / e)
            .sum();
        // chi-square critical value, 10 dof at 1%: 23.209.
        assert!(chi2 < 23.209, "chi2 {chi2} exceeds the 1% critical value");
    }

    #[test]
    fn cluster_user_moments_match_configuration() {
        let spec = ClusterSpec::new(GroundPoint::new(30.0, -20.0), 120f64.sqrt()).unwrap();
        let mut rng = trial_stream(5, 1);
        let n = 100_000usize;
        let (mut sx, mut sy, mut sxx, mut syy) = (0.0, 0.0, 0.0, 0.0);
        let (mut sk, mut kurt) = (0.0, 0.0);
        let mut pts = Vec::with_capacity(n);
        for _ in 0..n {
            let p = sample_cluster_user(&spec, &mut rng);
            sx += p.x;
            sy += p.y;
            pts.push(p);
        }
        let (mx, my) = (sx / n as f64, sy / n as f64);
        for p in &pts {
            sxx += (p.x - mx).powi(2);
            syy += (p.y - my).powi(2);
            let z = (p.x - mx) / spec.user_stddev_m;
            sk += z.powi(3);
            kurt += z.powi(4);
        }
        let var_x = sxx / n as f64;
        let var_y = syy / n as f64;
        // Mean within 4 sigma / sqrt(n) per axis.
        let tol = 4.0 * spec.user_stddev_m / (n as f64).sqrt();
        assert!((mx - 30.0).abs() < tol);
        assert!((my + 20.0).abs() < tol);
        // Per-axis variance within 5% of sigma^2 = 120.
        assert!((var_x - 120.0).abs() < 6.0, "var_x {var_x}");
        assert!((var_y - 120.0).abs() < 6.0, "var_y {var_y}");
        // Gaussianity moment checks: skewness -> 0, kurtosis -> 3.
        let skew = sk / n as f64;
        let kurt = kurt / n as f64;
        assert!(skew.abs() < 0.05, "skewness {skew}");
        assert!((kurt - 3.0).abs() < 0.15, "kurtosis {kurt}");
        // 3 sigma band: nearly all offsets within +-33 m of center.
        let inside = pts
            .iter()
            .filter(|p| (p.x - 30.0).abs() < 33.0 && (p.y + 20.0).abs() < 33.0)
            .count();
        assert!(inside as f64 / n as f64 > 0.99);
    }

    #[test]
    fn plp_mean_count_and_determinism() {
        let window = SimWindow::new(5000.0).unwrap();
        let mut rng = trial_stream(77, 0);
        let draws = 20_000;
        let mut total = 0usize;
        for _ in 0..draws {
            total += sample_plp(1e-3, &window, &mut rng).unwrap().len();
        }
        let mean = total as f64 / draws as f64;
        // lambda * 2R = 1e-3 * 2 * 5000 * sqrt(2) = 14.142; se ~ 0.027.
        assert!((mean - 14.142).abs() < 0.1, "plp mean {mean}");
        let a = sample_plp(1e-3, &window, &mut trial_stream(8, 8)).unwrap();
        let b = sample_plp(1e-3, &window, &mut trial_stream(8, 8)).unwrap();
        assert_eq!(a, b);
        assert!(sample_plp(0.0, &window, &mut trial_stream(8, 8)).is_err());
    }

    #[test]
    fn plp_rotation_invariance_of_nearest_road_distance() {
        // KS two-sample test at 1% on nearest-road distance from the origin,
        // one sample in the base frame and one with every line rotated.
        let window = SimWindow::new(5000.0).unwrap();
        let rot = 0.83; // arbitrary rotation angle
        let n = 4000usize;
        let mut base = Vec::with_capacity(n);
        let mut rotated = Vec::with_capacity(n);
        let mut rng_a = trial_stream(100, 0);
        let mut rng_b = trial_stream(200, 0);
        let origin = GroundPoint::ORIGIN;
        for _ in 0..n {
            if let Ok((_, d)) = nearest_point_on_roads(
                &origin,
                &sample_plp(1e-3, &window, &mut rng_a).unwrap(),
            ) {
                base.push(d);
            }
            let roads: Vec<RoadLine> = sample_plp(1e-3, &window, &mut rng_b)
                .unwrap()
                .into_iter()
                .map(|l| RoadLine {
                    angle_rad: (l.angle_rad + rot).rem_euclid(std::f64::consts::PI),
                    offset_m: l.offset_m,
                })
                .collect();
            if let Ok((_, d)) = nearest_point_on_roads(&origin, &roads) {
                rotated.push(d);
            }
        }
        base.sort_by(f64::total_cmp);
        rotated.sort_by(f64::total_cmp);
        let d = ks_statistic(&base, &rotated);
        let (n1, n2) = (base.len() as f64, rotated.len() as f64);
        let crit = 1.628 * ((n1 + n2) / (n1 * n2)).sqrt();
        assert!(d < crit, "KS statistic {d} above 1% critical value {crit}");
    }

    fn ks_statistic(a: &[f64], b: &[f64]) -> f64 {
        let (mut i, mut j) = (0usize, 0usize);
        let mut d: f64 = 0.0;
        while i < a.len() && j < b.len() {
            if a[i] <= b[j] {
                i += 1;
            } else {
                j += 1;
            }
            let fa = i as f64 / a.len() as f64;
            let fb = j as f64 / b.len() as f64;
            d = d.max((fa - fb).abs());
        }
        d
    }

    #[test]
    fn nearest_road_projection_examples() {
        // Vertical line x = 5 (normal angle 0, offset 5).
        let line = RoadLine {
            angle_rad: 0.0,
            offset_m: 5.0,
        };
        let (p, d) = nearest_point_on_roads(&GroundPoint::ORIGIN, &[line]).unwrap();
        assert!((p.x - 5.0).abs() < 1e-12 && p.y.abs() < 1e-12);
        assert!((d - 5.0).abs() < 1e-12);

        // Point on the line -> distance 0.
        let on = GroundPoint::new(5.0, 17.0);
        let (_, d0) = nearest_point_on_roads(&on, &[line]).unwrap();
        assert!(d0.abs() < 1e-12);

        // Two lines at distances 3 and 8: the 3 m projection wins.
        let near = RoadLine {
            angle_rad: std::f64::consts::FRAC_PI_2,
            offset_m: 3.0,
        };
        let far = RoadLine {
            angle_rad: 0.0,
            offset_m: 8.0,
        };
        let (p2, d2) = nearest_point_on_roads(&GroundPoint::ORIGIN, &[far, near]).unwrap();
        assert!((d2 - 3.0).abs() < 1e-12);
        assert!((p2.y - 3.0).abs() < 1e-12);

        assert_eq!(
            nearest_point_on_roads(&GroundPoint::ORIGIN, &[]),
            Err(SimError::NoRoad)
        );
    }

    #[test]
    fn nearest_road_never_beaten_by_any_single_line() {
        let window = SimWindow::new(2000.0).unwrap();
        let mut rng = trial_stream(31, 4);
        for _ in 0..200 {
            let roads = sample_plp(2e-3, &window, &mut rng).unwrap();
            if roads.is_empty() {
                continue;
            }
            let p = GroundPoint::new(rng.gen_range(-1500.0..1500.0), rng.gen_range(-1500.0..1500.0));
            let (_, d) = nearest_point_on_roads(&p, &roads).unwrap();
            for line in &roads {
                assert!(d <= line.signed_distance(&p).abs() + 1e-12);
            }
        }
    }

    #[test]
    fn elevation_angle_examples_and_monotonicity() {
        assert!((elevation_angle_deg(60.0, 60.0).unwrap() - 45.0).abs() < 1e-12);
        assert!((elevation_angle_deg(0.0, 60.0).unwrap() - 90.0).abs() < 1e-12);
        // atan(0.1) evaluated independently.
        assert!((elevation_angle_deg(600.0, 60.0).unwrap() - 5.710593137499643).abs() < 1e-9);
        assert!(elevation_angle_deg(-1.0, 60.0).is_err());
        assert!(elevation_angle_deg(10.0, 0.0).is_err());
        let mut prev = 90.1;
        for k in 0..200 {
            let theta = elevation_angle_deg(k as f64 * 25.0, 60.0).unwrap();
            assert!(theta < prev, "not strictly decreasing at {k}");
            prev = theta;
        }
    }
}
