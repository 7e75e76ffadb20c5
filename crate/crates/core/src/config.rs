//! Run configuration: a human-editable TOML file with one section per
//! parameter block, flag-style overrides on top, validation, and per-key
//! provenance tags separating simulation-table values from artifact
//! defaults.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channel::ChannelParams;
use crate::energy::{SolarUavParams, UavEnergyParams};
use crate::error::{SimError, SimResult};
use crate::scenarios::{
    DeploymentMode, Scenario1Config, Scenario2Config, Scenario3Config, ScenarioCommon,
};
use crate::spatial::{ProcessDensities, SimWindow};
use crate::stations::HarvestProfile;

const BATTERY_WH: f64 = 177.6;

fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Radio constants at their simulation-table values.
pub fn table1_channel_params() -> ChannelParams {
    ChannelBlock::default().to_params()
}

/// UAV energy constants at their simulation-table values.
pub fn table1_energy_params() -> UavEnergyParams {
    EnergyBlock::default().to_params()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunBlock {
    pub scenario: u8,
    pub n_trials: u64,
    pub seed: u64,
    pub output: String,
    /// Worker threads; 0 means "let the runtime decide".
    pub threads: usize,
}

impl Default for RunBlock {
    fn default() -> Self {
        RunBlock {
            scenario: 1,
            n_trials: 10_000,
            seed: 1,
            output: "results.csv".into(),
            threads: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WindowBlock {
    pub half_width_m: f64,
}

impl Default for WindowBlock {
    fn default() -> Self {
        // Sized so a handful of medium clusters share the central station;
        // see the README notes on scenario-1 defaults.
        WindowBlock {
            half_width_m: 2000.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DensitiesBlock {
    pub lambda_m_per_m2: f64,
    pub lambda_l_per_m2: f64,
    pub lambda_w_per_m2: f64,
    pub lambda_roads_per_m: f64,
}

impl Default for DensitiesBlock {
    fn default() -> Self {
        DensitiesBlock {
            lambda_m_per_m2: 1e-6,
            lambda_l_per_m2: 1e-5,
            lambda_w_per_m2: 1e-4, // 10x the living density
            lambda_roads_per_m: 1e-3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ClusterBlock {
    /// Per-axis standard deviation of the user offset; the literal reading
    /// of "variance 120" from the parameter table.
    pub user_stddev_m: f64,
}

impl Default for ClusterBlock {
    fn default() -> Self {
        ClusterBlock {
            user_stddev_m: 120f64.sqrt(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ChannelBlock {
    pub env_a: f64,
    pub env_b: f64,
    pub alpha_los: f64,
    pub alpha_nlos: f64,
    pub alpha_tbs: f64,
    pub m_los: f64,
    pub m_nlos: f64,
    pub eta_los_db: f64,
    pub eta_nlos_db: f64,
    pub rho_uav_w: f64,
    pub rho_tbs_w: f64,
    pub noise_w: f64,
    pub sinr_threshold_db: f64,
}

impl Default for ChannelBlock {
    fn default() -> Self {
        ChannelBlock {
            env_a: 4.88,
            env_b: 0.43,
            alpha_los: 2.1,
            alpha_nlos: 4.0,
            alpha_tbs: 4.0,
            m_los: 3.0,
            m_nlos: 1.0,
            eta_los_db: 0.0,
            eta_nlos_db: -20.0,
            rho_uav_w: 0.2,
            rho_tbs_w: 10.0,
            noise_w: 1e-9,
            sinr_threshold_db: 0.0,
        }
    }
}

impl ChannelBlock {
    pub fn to_params(self) -> ChannelParams {
        ChannelParams {
            env_a: self.env_a,
            env_b: self.env_b,
            alpha_los: self.alpha_los,
            alpha_nlos: self.alpha_nlos,
            alpha_tbs: self.alpha_tbs,
            m_los: self.m_los,
            m_nlos: self.m_nlos,
            eta_los: db_to_linear(self.eta_los_db),
            eta_nlos: db_to_linear(self.eta_nlos_db),
            rho_uav_w: self.rho_uav_w,
            rho_tbs_w: self.rho_tbs_w,
            noise_w: self.noise_w,
            sinr_threshold: db_to_linear(self.sinr_threshold_db),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EnergyBlock {
    pub battery_wh: f64,
    pub power_service_w: f64,
    pub power_travel_w: f64,
    pub speed_mps: f64,
    pub altitude_m: f64,
}

impl Default for EnergyBlock {
    fn default() -> Self {
        EnergyBlock {
            battery_wh: BATTERY_WH,
            power_service_w: 177.5,
            power_travel_w: 161.8,
            speed_mps: 10.0,
            altitude_m: 60.0,
        }
    }
}

impl EnergyBlock {
    pub fn to_params(self) -> UavEnergyParams {
        UavEnergyParams {
            battery_wh: self.battery_wh,
            power_service_w: self.power_service_w,
            power_travel_w: self.power_travel_w,
            speed_mps: self.speed_mps,
            altitude_m: self.altitude_m,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolarUavBlock {
    pub harvest_w: f64,
    pub weight_penalty: f64,
}

impl Default for SolarUavBlock {
    fn default() -> Self {
        // Illustrative knobs for the onboard-panel variant; the mechanism
        // (small harvest, meaningful weight cost) is what matters.
        SolarUavBlock {
            harvest_w: 20.0,
            weight_penalty: 1.15,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StationsBlock {
    /// Chargers at the shared central EE station.
    pub ee_chargers: usize,
    /// Evaluate SNR only, ignoring interference.
    pub noise_limited: bool,
}

impl Default for StationsBlock {
    fn default() -> Self {
        StationsBlock {
            ee_chargers: 9,
            noise_limited: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct HarvestBlock {
    pub peak_harvest_w: f64,
    pub day_length_s: f64,
    pub period_s: f64,
}

impl Default for HarvestBlock {
    fn default() -> Self {
        HarvestBlock {
            peak_harvest_w: 400.0,
            day_length_s: 43_200.0,
            period_s: 86_400.0,
        }
    }
}

impl HarvestBlock {
    fn to_profile(self) -> HarvestProfile {
        HarvestProfile {
            peak_harvest_w: self.peak_harvest_w,
            day_length_s: self.day_length_s,
            period_s: self.period_s,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Scenario1Block {
    pub modes: Vec<String>,
    pub charge_times_s: Vec<f64>,
    pub feasibility_radius_m: f64,
    pub horizon_s: f64,
}

impl Default for Scenario1Block {
    fn default() -> Self {
        Scenario1Block {
            modes: vec![
                "EE_CENTRAL_ONLY".into(),
                "EE_PER_CLUSTER_EDGE".into(),
                "RE_AT_CENTER".into(),
                "RE_UAV".into(),
            ],
            charge_times_s: vec![1800.0, 3600.0, 7200.0, 10_800.0],
            feasibility_radius_m: 2000.0,
            horizon_s: 172_800.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Scenario2Block {
    pub capacities_wh: Vec<f64>,
    pub charge_time_s: f64,
    pub horizon_s: f64,
}

impl Default for Scenario2Block {
    fn default() -> Self {
        Scenario2Block {
            capacities_wh: vec![
                0.0,
                BATTERY_WH,
                2.0 * BATTERY_WH,
                4.0 * BATTERY_WH,
                8.0 * BATTERY_WH,
            ],
            charge_time_s: 10_800.0,
            horizon_s: 259_200.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Scenario3Block {
    pub distances_m: Vec<f64>,
    pub modes: Vec<String>,
    pub feasibility_radius_m: f64,
    pub charge_time_s: f64,
    pub placement_draws: u64,
}

impl Default for Scenario3Block {
    fn default() -> Self {
        Scenario3Block {
            distances_m: vec![500.0, 1000.0, 2000.0, 4000.0],
            modes: vec!["EE_PER_CLUSTER_EDGE".into(), "RE_ON_ROAD".into()],
            feasibility_radius_m: 500.0,
            charge_time_s: 3600.0,
            placement_draws: 20_000,
        }
    }
}

/// The complete resolved configuration of one run.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub run: RunBlock,
    pub window: WindowBlock,
    pub densities: DensitiesBlock,
    pub cluster: ClusterBlock,
    pub channel: ChannelBlock,
    pub energy: EnergyBlock,
    pub solar_uav: SolarUavBlock,
    pub stations: StationsBlock,
    pub harvest: HarvestBlock,
    pub scenario1: Scenario1Block,
    pub scenario2: Scenario2Block,
    pub scenario3: Scenario3Block,
}

/// Defaults with the scenario id selected.
pub fn default_run_config(scenario: u8) -> RunConfig {
    let mut cfg = RunConfig::default();
    cfg.run.scenario = scenario;
    cfg
}

impl RunConfig {
    /// Parses a TOML file body. Unknown keys, type mismatches and malformed
    /// syntax surface with the offending key path and line.
    pub fn from_toml_str(text: &str) -> SimResult<RunConfig> {
        toml::from_str(text).map_err(|e| SimError::Config(e.to_string()))
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    /// Applies one `section.key=value` override on top of the file values.
    pub fn apply_override(&mut self, key: &str, value: &str) -> SimResult<()> {
        fn parse<T: FromStr>(key: &str, value: &str) -> SimResult<T> {
            value.trim().parse().map_err(|_| {
                SimError::Config(format!(
                    "override `{key}`: cannot parse `{value}` as {}",
                    std::any::type_name::<T>()
                ))
            })
        }
        fn parse_f64_list(key: &str, value: &str) -> SimResult<Vec<f64>> {
            value
                .split(',')
                .map(|v| parse::<f64>(key, v))
                .collect::<SimResult<Vec<f64>>>()
        }
        fn parse_str_list(value: &str) -> Vec<String> {
            value.split(',').map(|s| s.trim().to_string()).collect()
        }

        match key {
            "run.scenario" => self.run.scenario = parse(key, value)?,
            "run.n_trials" => self.run.n_trials = parse(key, value)?,
            "run.seed" => self.run.seed = parse(key, value)?,
            "run.output" => self.run.output = value.to_string(),
            "run.threads" => self.run.threads = parse(key, value)?,
            "window.half_width_m" => self.window.half_width_m = parse(key, value)?,
            "densities.lambda_m_per_m2" => self.densities.lambda_m_per_m2 = parse(key, value)?,
            "densities.lambda_l_per_m2" => self.densities.lambda_l_per_m2 = parse(key, value)?,
            "densities.lambda_w_per_m2" => self.densities.lambda_w_per_m2 = parse(key, value)?,
            "densities.lambda_roads_per_m" => {
                self.densities.lambda_roads_per_m = parse(key, value)?
            }
            "cluster.user_stddev_m" => self.cluster.user_stddev_m = parse(key, value)?,
            "channel.env_a" => self.channel.env_a = parse(key, value)?,
            "channel.env_b" => self.channel.env_b = parse(key, value)?,
            "channel.alpha_los" => self.channel.alpha_los = parse(key, value)?,
            "channel.alpha_nlos" => self.channel.alpha_nlos = parse(key, value)?,
            "channel.alpha_tbs" => self.channel.alpha_tbs = parse(key, value)?,
            "channel.m_los" => self.channel.m_los = parse(key, value)?,
            "channel.m_nlos" => self.channel.m_nlos = parse(key, value)?,
            "channel.eta_los_db" => self.channel.eta_los_db = parse(key, value)?,
            "channel.eta_nlos_db" => self.channel.eta_nlos_db = parse(key, value)?,
            "channel.rho_uav_w" => self.channel.rho_uav_w = parse(key, value)?,
            "channel.rho_tbs_w" => self.channel.rho_tbs_w = parse(key, value)?,
            "channel.noise_w" => self.channel.noise_w = parse(key, value)?,
            "channel.sinr_threshold_db" => self.channel.sinr_threshold_db = parse(key, value)?,
            "energy.battery_wh" => self.energy.battery_wh = parse(key, value)?,
            "energy.power_service_w" => self.energy.power_service_w = parse(key, value)?,
            "energy.power_travel_w" => self.energy.power_travel_w = parse(key, value)?,
            "energy.speed_mps" => self.energy.speed_mps = parse(key, value)?,
            "energy.altitude_m" => self.energy.altitude_m = parse(key, value)?,
            "solar_uav.harvest_w" => self.solar_uav.harvest_w = parse(key, value)?,
            "solar_uav.weight_penalty" => self.solar_uav.weight_penalty = parse(key, value)?,
            "stations.ee_chargers" => self.stations.ee_chargers = parse(key, value)?,
            "stations.noise_limited" => self.stations.noise_limited = parse(key, value)?,
            "harvest.peak_harvest_w" => self.harvest.peak_harvest_w = parse(key, value)?,
            "harvest.day_length_s" => self.harvest.day_length_s = parse(key, value)?,
            "harvest.period_s" => self.harvest.period_s = parse(key, value)?,
            "scenario1.modes" => self.scenario1.modes = parse_str_list(value),
            "scenario1.charge_times_s" => {
                self.scenario1.charge_times_s = parse_f64_list(key, value)?
            }
            "scenario1.feasibility_radius_m" => {
                self.scenario1.feasibility_radius_m = parse(key, value)?
            }
            "scenario1.horizon_s" => self.scenario1.horizon_s = parse(key, value)?,
            "scenario2.capacities_wh" => self.scenario2.capacities_wh = parse_f64_list(key, value)?,
            "scenario2.charge_time_s" => self.scenario2.charge_time_s = parse(key, value)?,
            "scenario2.horizon_s" => self.scenario2.horizon_s = parse(key, value)?,
            "scenario3.distances_m" => self.scenario3.distances_m = parse_f64_list(key, value)?,
            "scenario3.modes" => self.scenario3.modes = parse_str_list(value),
            "scenario3.feasibility_radius_m" => {
                self.scenario3.feasibility_radius_m = parse(key, value)?
            }
            "scenario3.charge_time_s" => self.scenario3.charge_time_s = parse(key, value)?,
            "scenario3.placement_draws" => self.scenario3.placement_draws = parse(key, value)?,
            _ => {
                return Err(SimError::Config(format!(
                    "override `{key}`: unknown configuration key"
                )))
            }
        }
        Ok(())
    }

    /// Sets the scenario's charging-time knob (the swept axis of scenario 1,
    /// the fixed duration of scenarios 2 and 3).
    pub fn set_charge_time(&mut self, seconds: f64) {
        match self.run.scenario {
            1 => self.scenario1.charge_times_s = vec![seconds],
            2 => self.scenario2.charge_time_s = seconds,
            _ => self.scenario3.charge_time_s = seconds,
        }
    }

    fn common(&self) -> SimResult<ScenarioCommon> {
        let common = ScenarioCommon {
            window: SimWindow::new(self.window.half_width_m)?,
            densities: ProcessDensities {
                lambda_m_per_m2: self.densities.lambda_m_per_m2,
                lambda_l_per_m2: self.densities.lambda_l_per_m2,
                lambda_w_per_m2: self.densities.lambda_w_per_m2,
                lambda_roads_per_m: self.densities.lambda_roads_per_m,
            },
            user_stddev_m: self.cluster.user_stddev_m,
            channel: self.channel.to_params(),
            energy: self.energy.to_params(),
            noise_limited: self.stations.noise_limited,
        };
        common.validate()?;
        Ok(common)
    }

    fn parse_modes(names: &[String]) -> SimResult<Vec<DeploymentMode>> {
        names.iter().map(|s| s.parse()).collect()
    }

    /// Builds and validates the scenario-1 configuration.
    pub fn scenario1(&self) -> SimResult<Scenario1Config> {
        let cfg = Scenario1Config {
            common: self.common()?,
            modes: Self::parse_modes(&self.scenario1.modes)?,
            charge_times_s: self.scenario1.charge_times_s.clone(),
            feasibility_radius_m: self.scenario1.feasibility_radius_m,
            ee_chargers: self.stations.ee_chargers,
            horizon_s: self.scenario1.horizon_s,
            solar: SolarUavParams {
                harvest_w: self.solar_uav.harvest_w,
                weight_penalty: self.solar_uav.weight_penalty,
            },
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Builds and validates the scenario-2 configuration.
    pub fn scenario2(&self) -> SimResult<Scenario2Config> {
        let cfg = Scenario2Config {
            common: self.common()?,
            capacities_wh: self.scenario2.capacities_wh.clone(),
            charge_time_s: self.scenario2.charge_time_s,
            harvest: self.harvest.to_profile(),
            ee_chargers: self.stations.ee_chargers,
            horizon_s: self.scenario2.horizon_s,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Builds and validates the scenario-3 configuration.
    pub fn scenario3(&self) -> SimResult<Scenario3Config> {
        let cfg = Scenario3Config {
            common: self.common()?,
            distances_m: self.scenario3.distances_m.clone(),
            modes: Self::parse_modes(&self.scenario3.modes)?,
            feasibility_radius_m: self.scenario3.feasibility_radius_m,
            charge_time_s: self.scenario3.charge_time_s,
            placement_draws: self.scenario3.placement_draws,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Validates the configuration for its selected scenario.
    pub fn validate(&self) -> SimResult<()> {
        match self.run.scenario {
            1 => self.scenario1().map(|_| ()),
            2 => self.scenario2().map(|_| ()),
            3 => self.scenario3().map(|_| ()),
            other => Err(SimError::Config(format!(
                "run.scenario must be 1, 2 or 3 (got {other})"
            ))),
        }
    }

    /// Provenance of every parameter: whether its default comes from the
    /// simulation table or is an artifact choice. Overridden values keep the
    /// tag of their key so downstream users can spot drift from the table.
    pub fn provenance(&self) -> BTreeMap<String, String> {
        let table_keys = [
            "densities.lambda_m_per_m2",
            "cluster.user_stddev_m",
            "channel.env_a",
            "channel.env_b",
            "channel.alpha_los",
            "channel.alpha_nlos",
            "channel.alpha_tbs",
            "channel.m_los",
            "channel.m_nlos",
            "channel.eta_los_db",
            "channel.eta_nlos_db",
            "channel.rho_uav_w",
            "channel.rho_tbs_w",
            "channel.noise_w",
            "channel.sinr_threshold_db",
            "energy.battery_wh",
            "energy.power_service_w",
            "energy.power_travel_w",
            "energy.speed_mps",
            "energy.altitude_m",
        ];
        // The working/living ratio is a table value even though the absolute
        // densities are artifact defaults.
        let ratio_key = "densities.lambda_w_over_lambda_l";
        let mut map = BTreeMap::new();
        let doc: toml::Value = toml::from_str(&self.to_toml_string()).expect("valid toml");
        if let toml::Value::Table(sections) = doc {
            for (section, body) in sections {
                if let toml::Value::Table(fields) = body {
                    for (field, value) in fields {
                        let key = format!("{section}.{field}");
                        let tag = if table_keys.contains(&key.as_str()) {
                            "paper"
                        } else {
                            "default"
                        };
                        map.insert(key, format!("{value} ({tag})"));
                    }
                }
            }
        }
        map.insert(
            ratio_key.to_string(),
            format!(
                "{} (paper)",
                self.densities.lambda_w_per_m2 / self.densities.lambda_l_per_m2
            ),
        );
        map
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_resolves_to_table_defaults() {
        let cfg = RunConfig::from_toml_str("").unwrap();
        assert_eq!(cfg, RunConfig::default());
        let ch = cfg.channel.to_params();
        assert_eq!(ch.sinr_threshold, 1.0); // 0 dB
        assert_eq!(ch.env_a, 4.88);
        assert!((ch.eta_nlos - 0.01).abs() < 1e-15); // -20 dB
        assert_eq!(cfg.energy.altitude_m, 60.0);
        assert_eq!(cfg.energy.speed_mps, 10.0);
        assert!((cfg.cluster.user_stddev_m.powi(2) - 120.0).abs() < 1e-9);
        cfg.validate().unwrap();
    }

    #[test]
    fn flag_override_beats_file_value() {
        let mut cfg = RunConfig::from_toml_str("[scenario2]\ncharge_time_s = 3600.0\n").unwrap();
        assert_eq!(cfg.scenario2.charge_time_s, 3600.0);
        cfg.run.scenario = 2;
        cfg.set_charge_time(7200.0);
        assert_eq!(cfg.scenario2.charge_time_s, 7200.0);
        cfg.apply_override("scenario2.charge_time_s", "5400").unwrap();
        assert_eq!(cfg.scenario2.charge_time_s, 5400.0);
    }

    #[test]
    fn invariant_violations_are_diagnosed() {
        let mut cfg = RunConfig::default();
        cfg.channel.noise_w = -1e-9;
        let err = cfg.validate().unwrap_err();
        assert!(err.to_string().contains("noise_w"), "{err}");

        let mut cfg = RunConfig::default();
        cfg.channel.sinr_threshold_db = f64::NAN;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn unknown_keys_and_type_mismatches_carry_context() {
        let err = RunConfig::from_toml_str("[channel]\nenv_q = 3\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("env_q"), "{msg}");

        let err = RunConfig::from_toml_str("[run]\nn_trials = \"many\"\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("n_trials") || msg.contains("invalid type"), "{msg}");

        let mut cfg = RunConfig::default();
        let err = cfg.apply_override("channel.bogus", "1").unwrap_err();
        assert!(err.to_string().contains("channel.bogus"));
    }

    #[test]
    fn toml_round_trip_reproduces_the_config() {
        let mut cfg = default_run_config(3);
        cfg.run.seed = 77;
        cfg.scenario3.distances_m = vec![250.0, 750.0];
        cfg.apply_override("channel.m_los", "2.5").unwrap();
        let text = cfg.to_toml_string();
        let back = RunConfig::from_toml_str(&text).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn provenance_tags_split_table_values_from_defaults() {
        let cfg = RunConfig::default();
        let tags = cfg.provenance();
        assert!(tags["channel.env_a"].contains("paper"));
        assert!(tags["energy.battery_wh"].contains("paper"));
        assert!(tags["window.half_width_m"].contains("default"));
        assert!(tags["stations.ee_chargers"].contains("default"));
        assert!(tags["densities.lambda_w_over_lambda_l"].starts_with("10 "));
    }

    #[test]
    fn scenario_builders_validate_their_blocks() {
        let mut cfg = default_run_config(1);
        cfg.scenario1.charge_times_s.clear();
        assert!(cfg.scenario1().is_err());

        let mut cfg = default_run_config(2);
        cfg.scenario2.horizon_s = 1000.0; // less than one period
        assert!(cfg.scenario2().is_err());

        let mut cfg = default_run_config(3);
        cfg.scenario3.modes = vec!["RE_AT_CENTER".into()];
        assert!(cfg.scenario3().is_err());

        let mut cfg = default_run_config(4);
        cfg.run.scenario = 4;
        assert!(cfg.validate().is_err());
    }
}
