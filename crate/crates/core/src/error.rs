//! Error types shared across the simulator.

use thiserror::Error;

/// Errors produced by samplers, channel models, and scenario runners.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    /// A parameter failed its validity invariant.
    #[error("invalid parameter `{name}`: {reason} (got {value})")]
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
        value: f64,
    },

    /// An input was outside the documented domain of an operation.
    #[error("{op}: argument out of range: {detail}")]
    OutOfRange { op: &'static str, detail: String },

    /// No road line is available for a nearest-point query or RE placement.
    #[error("no road available")]
    NoRoad,

    /// The UAV cannot reach its assigned charging station on a full battery.
    #[error("unreachable station: round trip of {round_trip_m} m needs {required_j:.0} J, battery holds {battery_j:.0} J")]
    UnreachableStation {
        round_trip_m: f64,
        required_j: f64,
        battery_j: f64,
    },

    /// A scenario was configured without a usable fallback or geometry.
    #[error("configuration error: {0}")]
    Config(String),
}

pub type SimResult<T> = Result<T, SimError>;

impl SimError {
    pub(crate) fn invalid(name: &'static str, reason: &'static str, value: f64) -> Self {
        SimError::InvalidParameter {
            name,
            reason,
            value,
        }
    }
}
