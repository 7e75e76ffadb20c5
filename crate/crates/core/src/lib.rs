//! Monte Carlo stochastic-geometry simulator for UAV-assisted cellular
//! coverage in rural areas.
//!
//! Rural users cluster into villages modeled as a Thomas cluster process;
//! one rotary-wing UAV hovers over each cluster and recharges at grid-powered
//! (EE) or renewable (RE) charging stations. The simulator estimates the
//! downlink coverage probability of a typical user as a function of charging
//! time, RE storage capacity, and living/working cluster geometry, across
//! the deployment strategies the experiments compare:
//!
//! * scenario 1 — charging-time sweep under four station deployments;
//! * scenario 2 — capacity-limited solar stations with a day/night harvest;
//! * scenario 3 — living/working cluster pairs with road-constrained RE
//!   placement and an optimally placed UAV.
//!
//! Everything is reproducible: each trial owns a counter-indexed random
//! stream, aggregation is order-independent, and deployment modes compared
//! at one sweep value share identical streams (common random numbers).

// Validations use `!(v > 0.0)` so NaN fails them too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod config;
pub mod energy;
pub mod error;
pub mod montecarlo;
pub mod numerics;
pub mod output;
pub mod rng;
pub mod scenarios;
pub mod spatial;
pub mod stations;

pub use channel::{ChannelParams, Transmitter, TxKind};
pub use config::{default_run_config, RunConfig};
pub use energy::{FlightCycle, SolarUavParams, UavEnergyParams};
pub use error::{SimError, SimResult};
pub use montecarlo::{CoverageEstimate, SweepPoint, SweepResult};
pub use scenarios::{
    run_scenario1, run_scenario2, run_scenario3, DeploymentMode, Scenario1Config,
    Scenario2Config, Scenario3Config,
};
pub use spatial::{ClusterSpec, GroundPoint, ProcessDensities, RoadLine, SimWindow};
pub use stations::{ChargeEventLog, EeStation, HarvestProfile, ReStation};

/// Runs the scenario selected by the configuration.
pub fn run_configured(config: &RunConfig) -> SimResult<SweepResult> {
    let n = config.run.n_trials;
    let seed = config.run.seed;
    match config.run.scenario {
        1 => run_scenario1(&config.scenario1()?, n, seed),
        2 => run_scenario2(&config.scenario2()?, n, seed),
        3 => run_scenario3(&config.scenario3()?, n, seed),
        other => Err(SimError::Config(format!(
            "run.scenario must be 1, 2 or 3 (got {other})"
        ))),
    }
}
