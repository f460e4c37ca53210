use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{CompileError, FORMAT_VERSION};

/// Logical gates. Two-qubit gates take `(control, target)`.
///
/// `Rz(theta)` follows the number-phase convention `diag(1, e^{-i theta})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "GateRecord", from = "GateRecord")]
pub enum Gate {
    Rz(usize, f64),
    Rx(usize, f64),
    H(usize),
    X(usize),
    /// `diag(1, 1, 1, -1)`; only native when `phi = pi`.
    Cz(usize, usize),
    /// `diag(1, 1, 1, e^{i phi})` for the machine's statistical angle.
    Cphase(usize, usize),
    Cnot(usize, usize),
}

impl Gate {
    pub fn name(&self) -> &'static str {
        match self {
            Gate::Rz(..) => "rz",
            Gate::Rx(..) => "rx",
            Gate::H(_) => "h",
            Gate::X(_) => "x",
            Gate::Cz(..) => "cz",
            Gate::Cphase(..) => "cphase",
            Gate::Cnot(..) => "cnot",
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::Rz(q, _) | Gate::Rx(q, _) | Gate::H(q) | Gate::X(q) => vec![q],
            Gate::Cz(c, t) | Gate::Cphase(c, t) | Gate::Cnot(c, t) => vec![c, t],
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self, Gate::Cz(..) | Gate::Cphase(..) | Gate::Cnot(..))
    }

    fn check(&self, n_qubits: usize) -> Result<(), String> {
        let qs = self.qubits();
        if let Some(q) = qs.iter().find(|&&q| q >= n_qubits) {
            return Err(format!("qubit {q} out of range for {n_qubits} qubits"));
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(format!("{} operands must differ", self.name()));
        }
        if let Gate::Rz(_, t) | Gate::Rx(_, t) = self {
            if !t.is_finite() {
                return Err(format!("non-finite angle {t}"));
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "g", rename_all = "lowercase", deny_unknown_fields)]
enum GateRecord {
    Rz { q: usize, theta: f64 },
    Rx { q: usize, theta: f64 },
    H { q: usize },
    X { q: usize },
    Cz { c: usize, t: usize },
    Cphase { c: usize, t: usize },
    Cnot { c: usize, t: usize },
}

impl From<Gate> for GateRecord {
    fn from(g: Gate) -> Self {
        match g {
            Gate::Rz(q, theta) => GateRecord::Rz { q, theta },
            Gate::Rx(q, theta) => GateRecord::Rx { q, theta },
            Gate::H(q) => GateRecord::H { q },
            Gate::X(q) => GateRecord::X { q },
            Gate::Cz(c, t) => GateRecord::Cz { c, t },
            Gate::Cphase(c, t) => GateRecord::Cphase { c, t },
            Gate::Cnot(c, t) => GateRecord::Cnot { c, t },
        }
    }
}

impl From<GateRecord> for Gate {
    fn from(r: GateRecord) -> Self {
        match r {
            GateRecord::Rz { q, theta } => Gate::Rz(q, theta),
            GateRecord::Rx { q, theta } => Gate::Rx(q, theta),
            GateRecord::H { q } => Gate::H(q),
            GateRecord::X { q } => Gate::X(q),
            GateRecord::Cz { c, t } => Gate::Cz(c, t),
            GateRecord::Cphase { c, t } => Gate::Cphase(c, t),
            GateRecord::Cnot { c, t } => Gate::Cnot(c, t),
        }
    }
}

/// An ordered gate list over `n_qubits` for a machine with statistical
/// angle `phi`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "CircuitFile", try_from = "CircuitFile")]
pub struct CircuitIr {
    n_qubits: usize,
    phi: f64,
    gates: Vec<Gate>,
}

impl CircuitIr {
    pub fn new(n_qubits: usize, phi: f64, gates: Vec<Gate>) -> Result<Self, CompileError> {
        let invalid = |m: String| Err(CompileError::InvalidCircuit(m));
        if n_qubits == 0 {
            return invalid("circuit needs at least one qubit".into());
        }
        if !phi.is_finite() || phi == 0.0 || phi.abs() >= 2.0 * PI {
            return invalid(format!(
                "phi must lie in (-2pi, 2pi) and be nonzero, got {phi}"
            ));
        }
        for (index, g) in gates.iter().enumerate() {
            if let Err(m) = g.check(n_qubits) {
                return invalid(format!("gate {index} ({}): {m}", g.name()));
            }
        }
        Ok(CircuitIr {
            n_qubits,
            phi,
            gates,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn from_json(s: &str) -> Result<Self, CompileError> {
        serde_json::from_str(s).map_err(|e| CompileError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("circuit serializes")
    }
}

fn default_format() -> u32 {
    FORMAT_VERSION
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircuitFile {
    #[serde(default = "default_format")]
    format: u32,
    qubits: usize,
    phi: f64,
    gates: Vec<Gate>,
}

impl From<CircuitIr> for CircuitFile {
    fn from(c: CircuitIr) -> Self {
        CircuitFile {
            format: FORMAT_VERSION,
            qubits: c.n_qubits,
            phi: c.phi,
            gates: c.gates,
        }
    }
}

impl TryFrom<CircuitFile> for CircuitIr {
    type Error = CompileError;

    fn try_from(f: CircuitFile) -> Result<Self, Self::Error> {
        if f.format != FORMAT_VERSION {
            return Err(CompileError::Parse(format!(
                "unsupported format version {}",
                f.format
            )));
        }
        CircuitIr::new(f.qubits, f.phi, f.gates)
    }
}
