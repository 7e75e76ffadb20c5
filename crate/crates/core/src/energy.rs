//! UAV battery and power bookkeeping: travel cost, sortie endurance under a
//! reserve-for-return policy, the renewal-cycle availability fraction, and
//! the net-power model of solar-panel UAVs.

use serde::{Deserialize, Serialize};

use crate::error::{SimError, SimResult};

/// Energy model constants of one UAV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UavEnergyParams {
    /// Battery size, watt-hours.
    pub battery_wh: f64,
    /// Hovering plus communication power while serving, W.
    pub power_service_w: f64,
    /// Power while traveling, W.
    pub power_travel_w: f64,
    /// Cruise speed, m/s.
    pub speed_mps: f64,
    /// Hover altitude, m.
    pub altitude_m: f64,
}

impl UavEnergyParams {
    pub fn validate(&self) -> SimResult<()> {
        for (name, v) in [
            ("battery_wh", self.battery_wh),
            ("power_service_w", self.power_service_w),
            ("power_travel_w", self.power_travel_w),
            ("speed_mps", self.speed_mps),
            ("altitude_m", self.altitude_m),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(SimError::invalid(name, "must be positive and finite", v));
            }
        }
        Ok(())
    }

    /// Battery energy in joules.
    pub fn battery_j(&self) -> f64 {
        self.battery_wh * 3600.0
    }

    /// Travel duration and energy for a leg of the given ground distance.
    pub fn travel_leg(&self, dist_m: f64) -> (f64, f64) {
        debug_assert!(dist_m >= 0.0);
        let t = dist_m / self.speed_mps;
        (t, self.power_travel_w * t)
    }

    /// Service time of one sortie given the total travel distance the UAV
    /// must reserve energy for. The UAV departs exactly when the remaining
    /// energy equals the reserved travel energy, so
    /// `t_serve * P_s + E_travel = B` holds exactly.
    pub fn sortie_service_time(&self, round_trip_dist_m: f64) -> SimResult<f64> {
        let (_, e_travel) = self.travel_leg(round_trip_dist_m);
        let battery = self.battery_j();
        if e_travel >= battery {
            return Err(SimError::UnreachableStation {
                round_trip_m: round_trip_dist_m,
                required_j: e_travel,
                battery_j: battery,
            });
        }
        Ok((battery - e_travel) / self.power_service_w)
    }
}

/// One service/recharge renewal cycle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlightCycle {
    pub t_serve_s: f64,
    pub t_travel_s: f64,
    pub t_wait_s: f64,
    pub t_charge_s: f64,
}

impl FlightCycle {
    pub fn total_s(&self) -> f64 {
        self.t_serve_s + self.t_travel_s + self.t_wait_s + self.t_charge_s
    }

    /// Renewal-reward fraction of time the UAV is on station serving.
    pub fn availability(&self) -> SimResult<f64> {
        for (name, v) in [
            ("t_serve_s", self.t_serve_s),
            ("t_travel_s", self.t_travel_s),
            ("t_wait_s", self.t_wait_s),
            ("t_charge_s", self.t_charge_s),
        ] {
            if v < 0.0 || !v.is_finite() {
                return Err(SimError::invalid(name, "must be non-negative", v));
            }
        }
        let total = self.total_s();
        if total <= 0.0 {
            return Err(SimError::invalid(
                "total cycle",
                "must be positive",
                total,
            ));
        }
        Ok(self.t_serve_s / total)
    }
}

/// Onboard solar-harvest model: panel output and the weight/drag penalty it
/// imposes on both power draws.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolarUavParams {
    pub harvest_w: f64,
    pub weight_penalty: f64,
}

impl SolarUavParams {
    pub fn validate(&self) -> SimResult<()> {
        if !(self.harvest_w >= 0.0) {
            return Err(SimError::invalid(
                "harvest_w",
                "must be non-negative",
                self.harvest_w,
            ));
        }
        if !(self.weight_penalty >= 1.0) {
            return Err(SimError::invalid(
                "weight_penalty",
                "must be >= 1",
                self.weight_penalty,
            ));
        }
        Ok(())
    }
}

/// Net power draws of a solar-panel UAV: the panel offsets consumption while
/// the added weight and rotor area scale it up. Harvest that would exceed
/// consumption (perpetual flight) is rejected.
pub fn solar_uav_net_powers(
    base: &UavEnergyParams,
    solar: &SolarUavParams,
) -> SimResult<UavEnergyParams> {
    solar.validate()?;
    let p_s = solar.weight_penalty * base.power_service_w - solar.harvest_w;
    let p_m = solar.weight_penalty * base.power_travel_w - solar.harvest_w;
    if p_s <= 0.0 || p_m <= 0.0 {
        return Err(SimError::invalid(
            "harvest_w",
            "harvest must stay below consumption",
            solar.harvest_w,
        ));
    }
    Ok(UavEnergyParams {
        power_service_w: p_s,
        power_travel_w: p_m,
        ..*base
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::table1_energy_params;
    use proptest::prelude::*;

    fn params() -> UavEnergyParams {
        table1_energy_params()
    }

    #[test]
    fn travel_leg_arithmetic() {
        let p = params();
        let (t, e) = p.travel_leg(2000.0);
        assert!((t - 200.0).abs() < 1e-12);
        assert!((e - 32_360.0).abs() < 1e-9);
        assert_eq!(p.travel_leg(0.0), (0.0, 0.0));
        let (t2, e2) = p.travel_leg(4000.0);
        assert!((t2 - 2.0 * t).abs() < 1e-12);
        assert!((e2 - 2.0 * e).abs() < 1e-9);
    }

    #[test]
    fn sortie_service_time_examples() {
        let p = params();
        // (639360 - 32360) / 177.5, cross-checked by integrating the
        // discharge at P_s after subtracting the travel energy.
        let t = p.sortie_service_time(2000.0).unwrap();
        assert!((t - 3419.718309859155).abs() < 1e-9);
        let energy_integral = t * p.power_service_w + 32_360.0;
        assert!((energy_integral - p.battery_j()).abs() / p.battery_j() < 1e-12);

        let t0 = p.sortie_service_time(0.0).unwrap();
        assert!((t0 - 3602.0281690140846).abs() < 1e-9);

        // Round trip needing more than the battery.
        let too_far = p.battery_j() / p.power_travel_w * p.speed_mps + 1.0;
        assert!(matches!(
            p.sortie_service_time(too_far),
            Err(SimError::UnreachableStation { .. })
        ));
    }

    #[test]
    fn availability_examples() {
        let cycle = FlightCycle {
            t_serve_s: 3420.0,
            t_travel_s: 200.0,
            t_wait_s: 0.0,
            t_charge_s: 3600.0,
        };
        assert!((cycle.availability().unwrap() - 0.47368421052631576).abs() < 1e-15);

        let uninterrupted = FlightCycle {
            t_serve_s: 3602.0,
            t_travel_s: 0.0,
            t_wait_s: 0.0,
            t_charge_s: 0.0,
        };
        assert_eq!(uninterrupted.availability().unwrap(), 1.0);

        let zero = FlightCycle {
            t_serve_s: 0.0,
            t_travel_s: 0.0,
            t_wait_s: 0.0,
            t_charge_s: 0.0,
        };
        assert!(zero.availability().is_err());
    }

    #[test]
    fn solar_net_power_examples() {
        let base = params();
        let identity = solar_uav_net_powers(
            &base,
            &SolarUavParams {
                harvest_w: 0.0,
                weight_penalty: 1.0,
            },
        )
        .unwrap();
        assert_eq!(identity, base);

        // Default knobs: the panel harvests 20 W but the weight penalty costs
        // more, so net service power rises and endurance worsens.
        let solar = solar_uav_net_powers(
            &base,
            &SolarUavParams {
                harvest_w: 20.0,
                weight_penalty: 1.15,
            },
        )
        .unwrap();
        assert!((solar.power_service_w - 184.125).abs() < 1e-9);
        assert!(solar.power_service_w > base.power_service_w);
        assert!(
            solar.sortie_service_time(0.0).unwrap() < base.sortie_service_time(0.0).unwrap()
        );

        // Pure harvest with no weight penalty improves endurance by the
        // ratio of service powers.
        let light = solar_uav_net_powers(
            &base,
            &SolarUavParams {
                harvest_w: 10.0,
                weight_penalty: 1.0,
            },
        )
        .unwrap();
        let ratio = light.sortie_service_time(0.0).unwrap() / base.sortie_service_time(0.0).unwrap();
        assert!((ratio - 177.5 / 167.5).abs() < 1e-12);

        // Harvest above consumption rejected.
        assert!(solar_uav_net_powers(
            &base,
            &SolarUavParams {
                harvest_w: 200.0,
                weight_penalty: 1.0,
            },
        )
        .is_err());
    }

    proptest! {
        #[test]
        fn energy_conservation_on_every_sortie(dist in 0.0..30_000.0f64) {
            let p = params();
            if let Ok(t_serve) = p.sortie_service_time(dist) {
                let (_, e_travel) = p.travel_leg(dist);
                let total = t_serve * p.power_service_w + e_travel;
                prop_assert!((total - p.battery_j()).abs() / p.battery_j() < 1e-6);
            }
        }

        #[test]
        fn sortie_time_decreasing_in_distance(d1 in 0.0..15_000.0f64, extra in 1.0..15_000.0f64) {
            let p = params();
            let t1 = p.sortie_service_time(d1).unwrap();
            let t2 = p.sortie_service_time(d1 + extra).unwrap();
            prop_assert!(t2 < t1);
        }

        #[test]
        fn availability_monotonicities(
            serve in 100.0..5000.0f64,
            travel in 0.0..2000.0f64,
            wait in 0.0..5000.0f64,
            charge in 0.0..20_000.0f64,
            bump in 1.0..1000.0f64,
        ) {
            let base = FlightCycle { t_serve_s: serve, t_travel_s: travel, t_wait_s: wait, t_charge_s: charge };
            let a0 = base.availability().unwrap();
            for grown in [
                FlightCycle { t_travel_s: travel + bump, ..base },
                FlightCycle { t_wait_s: wait + bump, ..base },
                FlightCycle { t_charge_s: charge + bump, ..base },
            ] {
                prop_assert!(grown.availability().unwrap() < a0);
            }
            let better = FlightCycle { t_serve_s: serve + bump, ..base };
            prop_assert!(better.availability().unwrap() > a0);
        }
    }
}
