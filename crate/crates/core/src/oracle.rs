//! Dense `2^n` reference simulator over logical qubits.
//!
//! Amplitude index `i` corresponds to the bitstring [`Bits::from_index`],
//! so qubit 0 is the most significant bit.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::compiler::{CircuitIr, Gate};
use crate::encoding::{decode_amplitudes, Bits, EncodingError, QubitLayout};
use crate::engine::SparseFockState;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

type Mat2 = [[Complex64; 2]; 2];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl DenseState {
    pub fn basis(bits: &Bits) -> Self {
        let n = bits.len();
        let mut amps = vec![Complex64::default(); 1 << n];
        amps[bits.to_index()] = c(1.0, 0.0);
        DenseState { n_qubits: n, amps }
    }

    /// Takes `amps` as given; the caller keeps it normalized.
    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex64>) -> Self {
        assert_eq!(amps.len(), 1 << n_qubits, "amplitude vector length");
        DenseState { n_qubits, amps }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, bits: &Bits) -> Complex64 {
        self.amps[bits.to_index()]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn mask(&self, q: usize) -> usize {
        1 << (self.n_qubits - 1 - q)
    }

    fn apply_1q(&mut self, q: usize, m: &Mat2) {
        let bit = self.mask(q);
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    /// Applies the ideal matrix of `gate`; `Cphase` uses `phi`.
    pub fn apply_ideal_gate(&mut self, gate: &Gate, phi: f64) {
        match *gate {
            Gate::Rz(q, theta) => self.apply_1q(
                q,
                &[
                    [c(1.0, 0.0), c(0.0, 0.0)],
                    [c(0.0, 0.0), Complex64::from_polar(1.0, -theta)],
                ],
            ),
            Gate::Rx(q, theta) => {
                let (cs, sn) = ((theta / 2.0).cos(), (theta / 2.0).sin());
                self.apply_1q(q, &[[c(cs, 0.0), c(0.0, -sn)], [c(0.0, -sn), c(cs, 0.0)]])
            }
            Gate::H(q) => {
                let h = FRAC_1_SQRT_2;
                self.apply_1q(q, &[[c(h, 0.0), c(h, 0.0)], [c(h, 0.0), c(-h, 0.0)]])
            }
            Gate::X(q) => {
                self.apply_1q(q, &[[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]])
            }
            Gate::Cz(a, b) => self.phase_both(a, b, c(-1.0, 0.0)),
            Gate::Cphase(a, b) => self.phase_both(a, b, Complex64::from_polar(1.0, phi)),
            Gate::Cnot(ctl, tgt) => {
                let (cm, tm) = (self.mask(ctl), self.mask(tgt));
                for i in 0..self.amps.len() {
                    if i & cm != 0 && i & tm == 0 {
                        self.amps.swap(i, i | tm);
                    }
                }
            }
        }
    }

    fn phase_both(&mut self, a: usize, b: usize, factor: Complex64) {
        let m = self.mask(a) | self.mask(b);
        for (i, amp) in self.amps.iter_mut().enumerate() {
            if i & m == m {
                *amp *= factor;
            }
        }
    }
}

/// Ideal gates applied in order to the basis state `input`.
pub fn simulate(circuit: &CircuitIr, input: &Bits) -> Result<DenseState, EncodingError> {
    if input.len() != circuit.n_qubits() {
        return Err(EncodingError::LengthMismatch {
            expected: circuit.n_qubits(),
            got: input.len(),
        });
    }
    let mut st = DenseState::basis(input);
    for g in circuit.gates() {
        st.apply_ideal_gate(g, circuit.phi());
    }
    Ok(st)
}

/// `|<dense|decode(anyon)>|^2`, insensitive to global phase.
pub fn fidelity(
    dense: &DenseState,
    layout: &QubitLayout,
    anyon: &SparseFockState,
) -> Result<f64, EncodingError> {
    if dense.n_qubits() != layout.n_qubits() {
        return Err(EncodingError::LengthMismatch {
            expected: layout.n_qubits(),
            got: dense.n_qubits(),
        });
    }
    let overlap: Complex64 = decode_amplitudes(layout, anyon)?
        .iter()
        .map(|(bits, a)| dense.amplitude(bits).conj() * a)
        .sum();
    Ok(overlap.norm_sqr())
}
