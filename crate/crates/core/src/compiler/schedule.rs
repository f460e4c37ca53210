use serde::{Deserialize, Serialize};

use super::{CompileError, FORMAT_VERSION};
use crate::encoding::QubitLayout;
use crate::engine::{BraidingConvention, EngineError, SparseFockState};
use crate::geometry::Site;

/// A lattice-level instruction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase", deny_unknown_fields)]
pub enum PrimitiveOp {
    /// `exp(-i theta n_site)`.
    Nphase { site: Site, theta: f64 },
    /// Bare occupation swap with string-crossing phase.
    Hop { from: Site, to: Site },
    /// `exp(-i theta B_ab / 2)`.
    Pswap { a: Site, b: Site, theta: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "ScheduleFile", try_from = "ScheduleFile")]
pub struct Schedule {
    layout: QubitLayout,
    phi: f64,
    ops: Vec<PrimitiveOp>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScheduleFile {
    format: u32,
    layout: QubitLayout,
    phi: f64,
    ops: Vec<PrimitiveOp>,
}

impl From<Schedule> for ScheduleFile {
    fn from(s: Schedule) -> Self {
        ScheduleFile {
            format: FORMAT_VERSION,
            layout: s.layout,
            phi: s.phi,
            ops: s.ops,
        }
    }
}

impl TryFrom<ScheduleFile> for Schedule {
    type Error = CompileError;

    fn try_from(f: ScheduleFile) -> Result<Self, Self::Error> {
        if f.format != FORMAT_VERSION {
            return Err(CompileError::Parse(format!(
                "unsupported format version {}",
                f.format
            )));
        }
        if !f.phi.is_finite() {
            return Err(CompileError::Parse(format!("non-finite phi {}", f.phi)));
        }
        Ok(Schedule::new(f.layout, f.phi, f.ops))
    }
}

/// Op tallies of a schedule.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct OpCounts {
    pub hops: usize,
    pub pswaps: usize,
    pub nphases: usize,
    /// Hops that lift a rail-0 anyon into the transit corridor; one per braid.
    pub braids: usize,
}

impl Schedule {
    pub fn new(layout: QubitLayout, phi: f64, ops: Vec<PrimitiveOp>) -> Self {
        Schedule { layout, phi, ops }
    }

    pub fn layout(&self) -> &QubitLayout {
        &self.layout
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn convention(&self) -> BraidingConvention {
        BraidingConvention::new(self.phi)
    }

    pub fn ops(&self) -> &[PrimitiveOp] {
        &self.ops
    }

    pub fn ops_mut(&mut self) -> &mut Vec<PrimitiveOp> {
        &mut self.ops
    }

    pub fn counts(&self) -> OpCounts {
        let mut c = OpCounts::default();
        for op in &self.ops {
            match *op {
                PrimitiveOp::Nphase { .. } => c.nphases += 1,
                PrimitiveOp::Pswap { .. } => c.pswaps += 1,
                PrimitiveOp::Hop { from, to } => {
                    c.hops += 1;
                    if self.layout.is_rail0(from) && to == from.offset(0, -1) {
                        c.braids += 1;
                    }
                }
            }
        }
        c
    }

    pub fn from_json(s: &str) -> Result<Self, CompileError> {
        serde_json::from_str(s).map_err(|e| CompileError::Parse(e.to_string()))
    }

    /// Pretty JSON with a trailing newline; identical schedules give
    /// identical bytes.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("schedule serializes");
        s.push('\n');
        s
    }
}

/// What happened to the state while a schedule ran.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExecutionStats {
    pub ops_applied: usize,
    pub max_support: usize,
    /// Largest `| ||psi||^2 - 1 |` seen after any primitive.
    pub max_norm_deviation: f64,
    pub anyon_count_stable: bool,
}

pub fn apply_op(
    state: &mut SparseFockState,
    convention: &BraidingConvention,
    op: &PrimitiveOp,
) -> Result<(), EngineError> {
    match *op {
        PrimitiveOp::Nphase { site, theta } => state.apply_number_phase(site, theta),
        PrimitiveOp::Hop { from, to } => state.apply_hop(convention, from, to),
        PrimitiveOp::Pswap { a, b, theta } => state.apply_partial_swap(convention, a, b, theta),
    }
}

/// Runs every op of `schedule` on `state`, tracking support size, norm drift
/// and anyon number after each primitive.
pub fn execute(
    schedule: &Schedule,
    state: &mut SparseFockState,
) -> Result<ExecutionStats, EngineError> {
    let lattice = schedule.layout.lattice();
    if state.lattice() != lattice {
        return Err(EngineError::DimensionMismatch(state.lattice(), lattice));
    }
    let conv = schedule.convention();
    let count = state.anyon_count();
    let mut stats = ExecutionStats {
        ops_applied: 0,
        max_support: state.len(),
        max_norm_deviation: (state.norm_sqr() - 1.0).abs(),
        anyon_count_stable: true,
    };
    for op in &schedule.ops {
        apply_op(state, &conv, op)?;
        stats.ops_applied += 1;
        stats.max_support = stats.max_support.max(state.len());
        stats.max_norm_deviation = stats.max_norm_deviation.max((state.norm_sqr() - 1.0).abs());
        if state.terms().any(|(c, _)| Some(c.count()) != count) {
            stats.anyon_count_stable = false;
        }
    }
    Ok(stats)
}
