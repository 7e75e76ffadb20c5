//! Scenario 2: the scenario-1 world in RE-at-center deployment, but the
//! solar stations hold finite storage refilled by a day/night harvest. A UAV
//! refused by its depleted station diverts to the shared grid station at the
//! large-cluster center; availability comes from the event-driven cycle
//! simulation time-averaged over whole day/night periods.

use rand::Rng;

use super::{sample_scene, snapshot_coverage, DeploymentMode, Scenario2Config};
use crate::channel::Transmitter;
use crate::error::SimResult;
use crate::montecarlo::{digest_f64, sweep, SweepResult, TrialOutcome};
use crate::rng::{TrialRng, TrialStreams};
use crate::spatial::{sample_cluster_user, ClusterSpec, GroundPoint};
use crate::stations::{simulate_uav_cycles, EeStation, ReStation, StationRef, UavPlan};

/// Coverage versus RE-station storage capacity. Stations start full at dawn.
pub fn run_scenario2(
    cfg: &Scenario2Config,
    n_trials: u64,
    seed: u64,
) -> SimResult<SweepResult> {
    cfg.validate()?;
    let modes = [DeploymentMode::ReAtCenter];
    Ok(sweep(
        &cfg.capacities_wh,
        &modes,
        n_trials,
        seed,
        |capacity_wh, _mode, rng| scenario2_trial(cfg, capacity_wh, rng),
    ))
}

/// Charge-event log of a representative run: trial 0's geometry at the
/// given storage capacity.
pub fn scenario2_charge_log(
    cfg: &Scenario2Config,
    capacity_wh: f64,
    seed: u64,
) -> crate::error::SimResult<crate::stations::ChargeEventLog> {
    cfg.validate()?;
    let mut rng = crate::rng::trial_stream(seed, 0);
    let mut streams = TrialStreams::fork(&mut rng);
    let scene = sample_scene(
        &cfg.common.window,
        cfg.common.densities.lambda_m_per_m2,
        &mut streams.geometry,
    )?;
    let (_, log) = cycle_sim(cfg, &scene.centers, capacity_wh);
    Ok(log)
}

/// Event-driven cycle simulation of one sampled geometry at the given RE
/// storage capacity: RE at every center starting full, shared EE fallback at
/// the origin.
fn cycle_sim(
    cfg: &Scenario2Config,
    centers: &[GroundPoint],
    capacity_wh: f64,
) -> (Vec<f64>, crate::stations::ChargeEventLog) {
    let stations = [EeStation {
        location: GroundPoint::ORIGIN,
        n_chargers: cfg.ee_chargers,
        charge_time_s: cfg.charge_time_s,
    }];
    let mut re_stations: Vec<ReStation> = centers
        .iter()
        .map(|c| {
            ReStation::new(
                *c,
                capacity_wh,
                capacity_wh,
                cfg.charge_time_s,
                cfg.harvest,
            )
            .expect("validated capacity")
        })
        .collect();
    let plans: Vec<UavPlan> = centers
        .iter()
        .enumerate()
        .map(|(i, c)| UavPlan {
            hover: *c,
            primary: StationRef::Re(i),
            fallback_ee: Some(0),
        })
        .collect();
    simulate_uav_cycles(
        &plans,
        &stations,
        &mut re_stations,
        &cfg.common.energy,
        cfg.horizon_s,
    )
    .expect("validated geometry")
}

fn scenario2_trial(cfg: &Scenario2Config, capacity_wh: f64, rng: &mut TrialRng) -> TrialOutcome {
    let common = &cfg.common;
    let mut streams = TrialStreams::fork(rng);
    let scene = sample_scene(
        &common.window,
        common.densities.lambda_m_per_m2,
        &mut streams.geometry,
    )
    .expect("validated configuration");
    let ref_cluster =
        ClusterSpec::new(scene.centers[0], common.user_stddev_m).expect("validated stddev");
    let user = sample_cluster_user(&ref_cluster, &mut streams.geometry);

    let (availabilities, _log) = cycle_sim(cfg, &scene.centers, capacity_wh);

    let altitude = common.energy.altitude_m;
    let mut transmitters: Vec<Transmitter> = scene
        .centers
        .iter()
        .zip(&availabilities)
        .map(|(center, &a)| {
            let active = streams.activity.gen::<f64>() < a;
            Transmitter::uav(*center, altitude, active)
        })
        .collect();
    transmitters.push(Transmitter::tbs(GroundPoint::ORIGIN));

    let covered = snapshot_coverage(
        &user,
        &transmitters,
        &common.channel,
        common.noise_limited,
        &mut streams.channel,
    );
    let digest = digest_f64(digest_f64(scene.digest, user.x), user.y);
    TrialOutcome::new(covered, digest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::default_run_config;

    #[test]
    fn capacity_sweep_shares_geometry_and_orders_sensibly() {
        let mut cfg = default_run_config(2).scenario2().unwrap();
        cfg.capacities_wh = vec![0.0, 8.0 * 177.6];
        cfg.horizon_s = 86_400.0;
        let result = run_scenario2(&cfg, 600, 3).unwrap();
        assert_eq!(result.points.len(), 2);
        assert_eq!(
            result.points[0].geometry_digest,
            result.points[1].geometry_digest
        );
        // Generous storage cannot do worse than none (CRN, same draws).
        assert!(
            result.points[1].estimate.p_hat >= result.points[0].estimate.p_hat,
            "storage hurt coverage: {:?}",
            result.points
        );
    }

    #[test]
    fn unbounded_capacity_serves_every_recharge() {
        let mut cfg = default_run_config(2).scenario2().unwrap();
        cfg.capacities_wh = vec![f64::INFINITY];
        cfg.horizon_s = 86_400.0;
        let result = run_scenario2(&cfg, 200, 9).unwrap();
        assert!(result.points[0].estimate.p_hat > 0.2);
    }

    #[test]
    fn estimates_self_converge_as_capacity_grows() {
        // With a generous harvest, once the storage covers a whole night of
        // recharges the diverts vanish and further capacity changes nothing.
        let b = 177.6;
        let mut cfg = default_run_config(2).scenario2().unwrap();
        cfg.capacities_wh = vec![b, 2.0 * b, 8.0 * b, 16.0 * b, 32.0 * b];
        let result = run_scenario2(&cfg, 800, 13).unwrap();
        let p: Vec<f64> = result.points.iter().map(|p| p.estimate.p_hat).collect();
        let diffs: Vec<f64> = p.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
        assert!(
            diffs.windows(2).all(|w| w[1] <= w[0] + 1e-12),
            "successive capacity effects did not shrink: {diffs:?}"
        );
        assert_eq!(p[3], p[4], "8B vs 16B of headroom still changed the estimate");
    }
}
