//! Charging-station models and the event-driven simulation of UAV charge
//! cycles: grid-powered (EE) stations with multi-charger FCFS queues, and
//! renewable (RE) stations with finite storage refilled by a day/night
//! harvest profile. All-or-nothing service at RE stations; a refused UAV
//! diverts to its EE fallback, paying the extra travel leg.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::energy::UavEnergyParams;
use crate::error::{SimError, SimResult};
use crate::spatial::GroundPoint;

/// Grid-powered charging station with `n_chargers` identical slots and a
/// deterministic full-recharge duration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EeStation {
    pub location: GroundPoint,
    pub n_chargers: usize,
    pub charge_time_s: f64,
}

impl EeStation {
    pub fn validate(&self) -> SimResult<()> {
        if self.n_chargers < 1 {
            return Err(SimError::invalid(
                "n_chargers",
                "must be >= 1",
                self.n_chargers as f64,
            ));
        }
        if self.charge_time_s < 0.0 {
            return Err(SimError::invalid(
                "charge_time_s",
                "must be non-negative",
                self.charge_time_s,
            ));
        }
        Ok(())
    }
}

/// FCFS queue state of one EE station: the time each charger frees up.
#[derive(Debug, Clone)]
pub struct EeQueueState {
    charge_time_s: f64,
    free_at_s: Vec<f64>,
}

impl EeQueueState {
    pub fn new(station: &EeStation) -> Self {
        EeQueueState {
            charge_time_s: station.charge_time_s,
            free_at_s: vec![0.0; station.n_chargers],
        }
    }

    /// FCFS assignment to the earliest-free charger. Arrivals must be fed in
    /// non-decreasing time order. Returns (charge_start, wait).
    pub fn enqueue(&mut self, arrival_s: f64) -> (f64, f64) {
        let slot = self
            .free_at_s
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .expect("at least one charger");
        let start = arrival_s.max(self.free_at_s[slot]);
        self.free_at_s[slot] = start + self.charge_time_s;
        (start, start - arrival_s)
    }
}

/// Convenience wrapper matching the one-shot enqueue operation.
pub fn ee_enqueue(state: &mut EeQueueState, _uav_id: usize, arrival_s: f64) -> (f64, f64) {
    state.enqueue(arrival_s)
}

/// Parametric day/night harvest: half-sine of the given peak over the first
/// `day_length_s` seconds of every period, zero otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HarvestProfile {
    pub peak_harvest_w: f64,
    pub day_length_s: f64,
    pub period_s: f64,
}

impl HarvestProfile {
    pub fn validate(&self) -> SimResult<()> {
        if !(self.peak_harvest_w >= 0.0) {
            return Err(SimError::invalid(
                "peak_harvest_w",
                "must be non-negative",
                self.peak_harvest_w,
            ));
        }
        if !(self.period_s > 0.0) {
            return Err(SimError::invalid(
                "period_s",
                "must be positive",
                self.period_s,
            ));
        }
        if !(0.0..=self.period_s).contains(&self.day_length_s) {
            return Err(SimError::invalid(
                "day_length_s",
                "must lie in [0, period_s]",
                self.day_length_s,
            ));
        }
        Ok(())
    }

    /// Instantaneous harvest rate at absolute time `t_s`.
    pub fn rate_w(&self, t_s: f64) -> f64 {
        let tau = t_s.rem_euclid(self.period_s);
        if self.day_length_s > 0.0 && tau < self.day_length_s {
            self.peak_harvest_w * (std::f64::consts::PI * tau / self.day_length_s).sin()
        } else {
            0.0
        }
    }

    /// Energy harvested over [t0, t1], joules, integrated analytically.
    pub fn energy_j(&self, t0_s: f64, t1_s: f64) -> f64 {
        debug_assert!(t1_s >= t0_s);
        if self.peak_harvest_w == 0.0 || self.day_length_s == 0.0 {
            return 0.0;
        }
        // Antiderivative of the half-sine within one period, evaluated at a
        // phase tau in [0, period].
        let primitive = |tau: f64| -> f64 {
            let d = self.day_length_s;
            let clamped = tau.min(d);
            self.peak_harvest_w * d / std::f64::consts::PI
                * (1.0 - (std::f64::consts::PI * clamped / d).cos())
        };
        let full_period = self.peak_harvest_w * self.day_length_s * 2.0 / std::f64::consts::PI;
        let whole = |t: f64| -> f64 {
            let k = (t / self.period_s).floor();
            k * full_period + primitive(t - k * self.period_s)
        };
        whole(t1_s) - whole(t0_s)
    }
}

/// Renewable charging station with finite stored energy. An unbounded
/// station is modeled with infinite capacity and storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ReStation {
    pub location: GroundPoint,
    pub storage_capacity_wh: f64,
    pub stored_wh: f64,
    pub charge_time_s: f64,
    pub harvest: HarvestProfile,
    /// Time the stored level was last brought up to date.
    last_update_s: f64,
}

impl ReStation {
    pub fn new(
        location: GroundPoint,
        storage_capacity_wh: f64,
        stored_wh: f64,
        charge_time_s: f64,
        harvest: HarvestProfile,
    ) -> SimResult<Self> {
        harvest.validate()?;
        if storage_capacity_wh < 0.0 {
            return Err(SimError::invalid(
                "storage_capacity_wh",
                "must be non-negative",
                storage_capacity_wh,
            ));
        }
        if !(0.0..=storage_capacity_wh).contains(&stored_wh)
            && !(storage_capacity_wh.is_infinite() && stored_wh.is_infinite())
        {
            return Err(SimError::invalid(
                "stored_wh",
                "must lie in [0, capacity]",
                stored_wh,
            ));
        }
        Ok(ReStation {
            location,
            storage_capacity_wh,
            stored_wh,
            charge_time_s,
            harvest,
            last_update_s: 0.0,
        })
    }

    /// Unbounded-storage station: recharge requests never divert.
    pub fn unbounded(location: GroundPoint, charge_time_s: f64) -> Self {
        ReStation {
            location,
            storage_capacity_wh: f64::INFINITY,
            stored_wh: f64::INFINITY,
            charge_time_s,
            harvest: HarvestProfile {
                peak_harvest_w: 0.0,
                day_length_s: 0.0,
                period_s: 86_400.0,
            },
            last_update_s: 0.0,
        }
    }

    /// Integrates the harvest over [t, t+dt] into storage, clamped at
    /// capacity. Returns the updated stored level.
    pub fn harvest_step(&mut self, t_s: f64, dt_s: f64) -> f64 {
        debug_assert!(dt_s >= 0.0);
        if self.stored_wh.is_finite() {
            let gained_wh = self.harvest.energy_j(t_s, t_s + dt_s) / 3600.0;
            self.stored_wh = (self.stored_wh + gained_wh).min(self.storage_capacity_wh);
        }
        self.last_update_s = self.last_update_s.max(t_s + dt_s);
        self.stored_wh
    }

    /// Brings the storage level up to absolute time `t_s`.
    pub fn harvest_to(&mut self, t_s: f64) {
        if t_s > self.last_update_s {
            let t0 = self.last_update_s;
            self.harvest_step(t0, t_s - t0);
        }
    }

    /// All-or-nothing recharge: deducts `demand_wh` and reports success, or
    /// leaves the storage untouched so the UAV diverts to its EE fallback.
    /// The exact-fit boundary is served; the tolerance only absorbs the
    /// rounding dust of repeated deductions.
    pub fn re_serve_recharge(&mut self, demand_wh: f64) -> bool {
        debug_assert!(demand_wh > 0.0);
        let tol = 1e-9 * demand_wh.max(1.0);
        if self.stored_wh + tol >= demand_wh {
            self.stored_wh = (self.stored_wh - demand_wh).max(0.0);
            true
        } else {
            false
        }
    }
}

/// Where a UAV charges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StationRef {
    Ee(usize),
    Re(usize),
}

impl StationRef {
    fn label(&self) -> String {
        match self {
            StationRef::Ee(i) => format!("ee{i}"),
            StationRef::Re(i) => format!("re{i}"),
        }
    }
}

/// Per-UAV deployment plan for the cycle simulation.
#[derive(Debug, Clone, Copy)]
pub struct UavPlan {
    pub hover: GroundPoint,
    pub primary: StationRef,
    /// EE station a refused RE request falls back to. Required whenever the
    /// primary RE storage is finite.
    pub fallback_ee: Option<usize>,
}

/// One completed charge, as logged.
#[derive(Debug, Clone, PartialEq)]
pub struct ChargeEvent {
    pub uav_id: usize,
    pub arrival_s: f64,
    pub wait_s: f64,
    pub charge_start_s: f64,
    pub charge_end_s: f64,
    pub station_id: String,
    pub diverted: bool,
}

/// Complete charge history of a simulation run.
#[derive(Debug, Clone, Default)]
pub struct ChargeEventLog {
    pub events: Vec<ChargeEvent>,
}

impl ChargeEventLog {
    /// CSV export: `uav_id,arrival_s,wait_s,charge_start_s,charge_end_s,station_id,diverted`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(
            w,
            "uav_id,arrival_s,wait_s,charge_start_s,charge_end_s,station_id,diverted"
        )?;
        for e in &self.events {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                e.uav_id,
                crate::numerics::fmt_sig(e.arrival_s, 10),
                crate::numerics::fmt_sig(e.wait_s, 10),
                crate::numerics::fmt_sig(e.charge_start_s, 10),
                crate::numerics::fmt_sig(e.charge_end_s, 10),
                e.station_id,
                e.diverted,
            )?;
        }
        Ok(())
    }

    /// Fraction of charges of one UAV that were diverted to the fallback.
    pub fn divert_fraction(&self, uav_id: usize) -> f64 {
        let mine: Vec<_> = self.events.iter().filter(|e| e.uav_id == uav_id).collect();
        if mine.is_empty() {
            return 0.0;
        }
        mine.iter().filter(|e| e.diverted).count() as f64 / mine.len() as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum EventKind {
    Depart,
    ArriveAt(StationRef, bool), // bool: this arrival follows an RE refusal
    ChargeDone(StationRef),
    ArriveHome,
}

#[derive(Debug, Clone, Copy)]
struct Event {
    time_s: f64,
    seq: u64,
    uav: usize,
    kind: EventKind,
}

impl PartialEq for Event {
    fn eq(&self, other: &Self) -> bool {
        self.time_s == other.time_s && self.seq == other.seq
    }
}
impl Eq for Event {}
impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Event {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.time_s
            .total_cmp(&other.time_s)
            .then(self.seq.cmp(&other.seq))
    }
}

struct UavState {
    battery_j: f64,
    serve_start_s: f64,
    serving: bool,
    total_serve_s: f64,
}

/// Event-driven simulation of serve / travel / (RE attempt, possibly divert)
/// / queue / charge / return cycles for a fleet of UAVs sharing stations.
///
/// Every UAV starts fully charged and serving at t = 0 and reserves exactly
/// the travel energy it may need (the leg to its primary station plus, for
/// finite-storage RE primaries, the divert leg to the EE fallback).
///
/// Returns the per-UAV fraction of the horizon spent serving on station and
/// the complete charge log.
pub fn simulate_uav_cycles(
    plans: &[UavPlan],
    ee_stations: &[EeStation],
    re_stations: &mut [ReStation],
    energy: &UavEnergyParams,
    horizon_s: f64,
) -> SimResult<(Vec<f64>, ChargeEventLog)> {
    energy.validate()?;
    if !(horizon_s > 0.0) {
        return Err(SimError::invalid(
            "horizon_s",
            "must be positive",
            horizon_s,
        ));
    }
    for station in ee_stations {
        station.validate()?;
    }

    // Pre-resolve travel legs and reserves; validate reachability.
    struct Legs {
        d_primary_m: f64,
        d_divert_m: f64,
        reserve_j: f64,
    }
    let battery_j = energy.battery_j();
    let mut legs = Vec::with_capacity(plans.len());
    for (idx, plan) in plans.iter().enumerate() {
        let primary_loc = match plan.primary {
            StationRef::Ee(i) => {
                ee_stations
                    .get(i)
                    .ok_or_else(|| SimError::Config(format!("uav {idx}: ee station {i} missing")))?
                    .location
            }
            StationRef::Re(i) => {
                re_stations
                    .get(i)
                    .ok_or_else(|| SimError::Config(format!("uav {idx}: re station {i} missing")))?
                    .location
            }
        };
        let d_primary_m = plan.hover.distance(&primary_loc);
        let d_divert_m = match plan.primary {
            StationRef::Re(i) if re_stations[i].storage_capacity_wh.is_finite() => {
                let fb = plan.fallback_ee.ok_or_else(|| {
                    SimError::Config(format!(
                        "uav {idx}: finite-storage RE primary needs an EE fallback"
                    ))
                })?;
                let fb_loc = ee_stations
                    .get(fb)
                    .ok_or_else(|| SimError::Config(format!("uav {idx}: ee fallback {fb} missing")))?
                    .location;
                primary_loc.distance(&fb_loc)
            }
            _ => 0.0,
        };
        let (_, reserve_j) = energy.travel_leg(d_primary_m + d_divert_m);
        // The worst-case loop (out via primary and divert, home from the
        // fallback) must fit in one battery.
        let d_home_worst = match (plan.primary, plan.fallback_ee) {
            (StationRef::Re(_), Some(fb)) => plan.hover.distance(&ee_stations[fb].location),
            _ => d_primary_m,
        };
        let (_, worst_j) = energy.travel_leg(d_primary_m + d_divert_m + d_home_worst);
        if worst_j >= battery_j {
            return Err(SimError::UnreachableStation {
                round_trip_m: d_primary_m + d_divert_m + d_home_worst,
                required_j: worst_j,
                battery_j,
            });
        }
        legs.push(Legs {
            d_primary_m,
            d_divert_m,
            reserve_j,
        });
    }

    let mut queues: Vec<EeQueueState> = ee_stations.iter().map(EeQueueState::new).collect();
    let mut states: Vec<UavState> = plans
        .iter()
        .map(|_| UavState {
            battery_j,
            serve_start_s: 0.0,
            serving: true,
            total_serve_s: 0.0,
        })
        .collect();

    let mut heap: BinaryHeap<Reverse<Event>> = BinaryHeap::new();
    let mut seq = 0u64;
    let push = |heap: &mut BinaryHeap<Reverse<Event>>, seq: &mut u64, e: Event| {
        let mut e = e;
        e.seq = *seq;
        *seq += 1;
        heap.push(Reverse(e));
    };

    for (u, st) in states.iter().enumerate() {
        let serve_s = (st.battery_j - legs[u].reserve_j) / energy.power_service_w;
        push(
            &mut heap,
            &mut seq,
            Event {
                time_s: serve_s,
                seq: 0,
                uav: u,
                kind: EventKind::Depart,
            },
        );
    }

    let mut log = ChargeEventLog::default();

    while let Some(Reverse(ev)) = heap.pop() {
        if ev.time_s > horizon_s {
            break;
        }
        let t = ev.time_s;
        let u = ev.uav;
        match ev.kind {
            EventKind::Depart => {
                states[u].total_serve_s += t - states[u].serve_start_s;
                states[u].serving = false;
                // The UAV departs exactly when the remaining energy equals
                // its travel reserve.
                states[u].battery_j = legs[u].reserve_j;
                let (dt, de) = energy.travel_leg(legs[u].d_primary_m);
                states[u].battery_j -= de;
                push(
                    &mut heap,
                    &mut seq,
                    Event {
                        time_s: t + dt,
                        seq: 0,
                        uav: u,
                        kind: EventKind::ArriveAt(plans[u].primary, false),
                    },
                );
            }
            EventKind::ArriveAt(station, after_divert) => match station {
                StationRef::Re(i) => {
                    let re = &mut re_stations[i];
                    re.harvest_to(t);
                    let demand_wh = (battery_j - states[u].battery_j) / 3600.0;
                    if re.re_serve_recharge(demand_wh) {
                        let end = t + re.charge_time_s;
                        log.events.push(ChargeEvent {
                            uav_id: u,
                            arrival_s: t,
                            wait_s: 0.0,
                            charge_start_s: t,
                            charge_end_s: end,
                            station_id: station.label(),
                            diverted: false,
                        });
                        push(
                            &mut heap,
                            &mut seq,
                            Event {
                                time_s: end,
                                seq: 0,
                                uav: u,
                                kind: EventKind::ChargeDone(station),
                            },
                        );
                    } else {
                        let fb = plans[u].fallback_ee.expect("validated fallback");
                        let (dt, de) = energy.travel_leg(legs[u].d_divert_m);
                        states[u].battery_j -= de;
                        push(
                            &mut heap,
                            &mut seq,
                            Event {
                                time_s: t + dt,
                                seq: 0,
                                uav: u,
                                kind: EventKind::ArriveAt(StationRef::Ee(fb), true),
                            },
                        );
                    }
                }
                StationRef::Ee(i) => {
                    let (start, wait) = queues[i].enqueue(t);
                    let end = start + ee_stations[i].charge_time_s;
                    log.events.push(ChargeEvent {
                        uav_id: u,
                        arrival_s: t,
                        wait_s: wait,
                        charge_start_s: start,
                        charge_end_s: end,
                        station_id: station.label(),
                        diverted: after_divert,
                    });
                    push(
                        &mut heap,
                        &mut seq,
                        Event {
                            time_s: end,
                            seq: 0,
                            uav: u,
                            kind: EventKind::ChargeDone(station),
                        },
                    );
                }
            },
            EventKind::ChargeDone(station) => {
                states[u].battery_j = battery_j;
                let loc = match station {
                    StationRef::Ee(i) => ee_stations[i].location,
                    StationRef::Re(i) => re_stations[i].location,
                };
                let (dt, de) = energy.travel_leg(loc.distance(&plans[u].hover));
                states[u].battery_j -= de;
                push(
                    &mut heap,
                    &mut seq,
                    Event {
                        time_s: t + dt,
                        seq: 0,
                        uav: u,
                        kind: EventKind::ArriveHome,
                    },
                );
            }
            EventKind::ArriveHome => {
                states[u].serve_start_s = t;
                states[u].serving = true;
                let serve_s = (states[u].battery_j - legs[u].reserve_j) / energy.power_service_w;
                push(
                    &mut heap,
                    &mut seq,
                    Event {
                        time_s: t + serve_s,
                        seq: 0,
                        uav: u,
                        kind: EventKind::Depart,
                    },
                );
            }
        }
    }

    let availabilities = states
        .iter()
        .map(|st| {
            let mut total = st.total_serve_s;
            if st.serving {
                total += horizon_s - st.serve_start_s;
            }
            total / horizon_s
        })
        .collect();

    Ok((availabilities, log))
}
