//! Circuit IR, lowering to lattice schedules, execution and validation.

mod ir;
mod lower;
mod schedule;
mod validate;

use thiserror::Error;

use crate::geometry::GeometryError;

pub use ir::{CircuitIr, Gate};
pub use lower::{
    braid_hops, compile, is_semionic, lower_cnot, lower_cz, lower_cz_along, lower_h, lower_rx,
    lower_rz, lower_x, rewrite,
};
pub use schedule::{apply_op, execute, ExecutionStats, OpCounts, PrimitiveOp, Schedule};
pub use validate::{
    validate_schedule, validate_schedule_with, Violation, ViolationKind, DEFAULT_EXACT_LIMIT,
};

/// Version tag written to and required from circuit and schedule files.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LowerError {
    #[error("{gate} requires semionic phase (phi = pi), got phi = {phi}")]
    SemionicPhaseRequired { gate: &'static str, phi: f64 },
    #[error("braid planning failed: {0}")]
    Planning(GeometryError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CompileError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),
    #[error("layout: {0}")]
    Layout(GeometryError),
    #[error("gate {index}: {source}")]
    Gate {
        index: usize,
        #[source]
        source: LowerError,
    },
}
