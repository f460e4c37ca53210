//! Gate rewriting and lowering to lattice primitives.
//!
//! The native gate set is `{Rz, Rx, Cphase}`. Everything else is rewritten
//! into it first, then each native gate becomes a short primitive sequence.

use std::f64::consts::{FRAC_PI_2, PI};

use super::ir::{CircuitIr, Gate};
use super::schedule::{PrimitiveOp, Schedule};
use super::{CompileError, LowerError};
use crate::encoding::QubitLayout;
use crate::geometry::{
    plan_braid_loop, plan_layout, GeometryError, LatticePath, Orientation, DEFAULT_SPACING,
};

/// `diag(1, e^{-i theta})`: one number-phase pulse on rail 1.
pub fn lower_rz(layout: &QubitLayout, q: usize, theta: f64) -> Vec<PrimitiveOp> {
    vec![PrimitiveOp::Nphase {
        site: layout.qubit(q).rail1,
        theta,
    }]
}

/// Exact `Rx(theta)`: park rail 1 on the ancilla so both halves of the qubit
/// are vertical neighbours, partial-swap them, and move back.
pub fn lower_rx(layout: &QubitLayout, q: usize, theta: f64) -> Vec<PrimitiveOp> {
    let s = layout.qubit(q);
    vec![
        PrimitiveOp::Hop {
            from: s.rail1,
            to: s.ancilla,
        },
        PrimitiveOp::Pswap {
            a: s.rail0,
            b: s.ancilla,
            theta,
        },
        PrimitiveOp::Hop {
            from: s.ancilla,
            to: s.rail1,
        },
    ]
}

/// Hadamard, exactly: `Rz(-pi/2) Rx(pi/2) Rz(-pi/2)` in the number-phase
/// `Rz` convention.
pub fn lower_h(q: usize) -> Vec<Gate> {
    vec![
        Gate::Rz(q, -FRAC_PI_2),
        Gate::Rx(q, FRAC_PI_2),
        Gate::Rz(q, -FRAC_PI_2),
    ]
}

/// NOT up to a global `-i`.
pub fn lower_x(q: usize) -> Vec<Gate> {
    vec![Gate::Rx(q, PI)]
}

/// `e^{i phi} = -1` within `1e-12`.
pub fn is_semionic(phi: f64) -> bool {
    (phi.abs() - PI).abs() < 1e-12
}

/// CNOT as `H(t) CZ(c, t) H(t)`; only available for semions.
pub fn lower_cnot(phi: f64, control: usize, target: usize) -> Result<Vec<Gate>, LowerError> {
    if !is_semionic(phi) {
        return Err(LowerError::SemionicPhaseRequired { gate: "CNOT", phi });
    }
    let mut gates = lower_h(target);
    gates.push(Gate::Cz(control, target));
    gates.extend(lower_h(target));
    Ok(gates)
}

/// One hop per edge of `path`.
pub fn braid_hops(path: &LatticePath) -> Vec<PrimitiveOp> {
    path.edges()
        .map(|e| PrimitiveOp::Hop {
            from: e.from(),
            to: e.to(),
        })
        .collect()
}

/// Controlled phase `diag(1, 1, 1, e^{i phi})` from a CCW braid of the
/// control's rail 0 around the target's rail 0.
///
/// The braid alone phases the branch where both rail-0 sites are occupied,
/// i.e. logical `|00>`; X layers on both qubits before and after move that
/// phase onto `|11>`. Each X is `-iX`, so the four of them multiply to 1.
pub fn lower_cz(
    layout: &QubitLayout,
    control: usize,
    target: usize,
) -> Result<Vec<PrimitiveOp>, GeometryError> {
    let path = plan_braid_loop(layout, control, target, Orientation::Ccw)?;
    Ok(lower_cz_along(layout, control, target, &path))
}

/// As [`lower_cz`], with a caller-supplied braid path.
pub fn lower_cz_along(
    layout: &QubitLayout,
    control: usize,
    target: usize,
    path: &LatticePath,
) -> Vec<PrimitiveOp> {
    let x_layer = || {
        let mut ops = lower_rx(layout, control, PI);
        ops.extend(lower_rx(layout, target, PI));
        ops
    };
    let mut ops = x_layer();
    ops.extend(braid_hops(path));
    ops.extend(x_layer());
    ops
}

/// Rewrites `gate` into native gates.
pub fn rewrite(gate: Gate, phi: f64) -> Result<Vec<Gate>, LowerError> {
    Ok(match gate {
        Gate::Rz(..) | Gate::Rx(..) | Gate::Cphase(..) => vec![gate],
        Gate::H(q) => lower_h(q),
        Gate::X(q) => lower_x(q),
        Gate::Cz(c, t) => {
            if !is_semionic(phi) {
                return Err(LowerError::SemionicPhaseRequired { gate: "CZ", phi });
            }
            vec![Gate::Cphase(c, t)]
        }
        Gate::Cnot(c, t) => {
            let mut out = Vec::new();
            for g in lower_cnot(phi, c, t)? {
                out.extend(rewrite(g, phi)?);
            }
            out
        }
    })
}

fn lower_native(layout: &QubitLayout, gate: Gate) -> Result<Vec<PrimitiveOp>, LowerError> {
    match gate {
        Gate::Rz(q, theta) => Ok(lower_rz(layout, q, theta)),
        Gate::Rx(q, theta) => Ok(lower_rx(layout, q, theta)),
        Gate::Cphase(c, t) => lower_cz(layout, c, t).map_err(LowerError::Planning),
        other => unreachable!("{} is not native", other.name()),
    }
}

/// Lowers a circuit gate by gate onto the default layout. Braids are
/// emitted one after another, never interleaved.
pub fn compile(circuit: &CircuitIr) -> Result<Schedule, CompileError> {
    let layout = plan_layout(circuit.n_qubits(), DEFAULT_SPACING).map_err(CompileError::Layout)?;
    let mut ops = Vec::new();
    for (index, &gate) in circuit.gates().iter().enumerate() {
        let at = |source| CompileError::Gate { index, source };
        for native in rewrite(gate, circuit.phi()).map_err(at)? {
            ops.extend(lower_native(&layout, native).map_err(at)?);
        }
    }
    Ok(Schedule::new(layout, circuit.phi(), ops))
}
