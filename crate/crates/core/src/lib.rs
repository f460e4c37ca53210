//! Universal quantum computation with abelian anyons.
//!
//! Each logical qubit is a single anyon shared between two lattice sites
//! (dual rail). Single-qubit gates are number-phase pulses and partial swaps
//! between a qubit's own sites; the controlled-phase gate comes for free from
//! the statistics, by carrying one qubit's rail-0 contents once around
//! another's. This crate compiles circuits into such schedules, executes them
//! on an exact sparse Fock-state engine and checks the results against a
//! dense qubit-level reference simulator.
//!
//! ```
//! use braidlab::compiler::{compile, execute, CircuitIr, Gate};
//! use braidlab::encoding::{encode_basis, readout_distribution, Bits};
//! use std::f64::consts::PI;
//!
//! let circuit = CircuitIr::new(2, PI, vec![Gate::H(0), Gate::Cnot(0, 1)]).unwrap();
//! let schedule = compile(&circuit).unwrap();
//! let mut state = encode_basis(schedule.layout(), &Bits::zeros(2)).unwrap();
//! execute(&schedule, &mut state).unwrap();
//! let dist = readout_distribution(schedule.layout(), &state).unwrap();
//! assert!((dist[&"00".parse().unwrap()] - 0.5).abs() < 1e-12);
//! assert!((dist[&"11".parse().unwrap()] - 0.5).abs() < 1e-12);
//! ```

pub mod compiler;
pub mod encoding;
pub mod engine;
pub mod geometry;
pub mod oracle;
