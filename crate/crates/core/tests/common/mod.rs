#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};
use std::f64::consts::PI;

use braidlab::compiler::{execute, CircuitIr, ExecutionStats, Gate, Schedule};
use braidlab::encoding::{decode_amplitudes, encode_basis, Bits, QubitLayout};
use braidlab::engine::SparseFockState;
use braidlab::geometry::{Lattice, LatticePath, Site};
use braidlab::oracle::simulate;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

pub type Matrix = Vec<Vec<Complex64>>;

/// Runs `schedule` from one encoded basis input.
pub fn run_basis(schedule: &Schedule, input: &Bits) -> (SparseFockState, ExecutionStats) {
    let mut st = encode_basis(schedule.layout(), input).expect("encode");
    let stats = execute(schedule, &mut st).expect("execute");
    (st, stats)
}

/// Column `c` holds the decoded output for basis input `c`.
pub fn encoded_matrix(schedule: &Schedule) -> Matrix {
    let n = schedule.layout().n_qubits();
    let dim = 1 << n;
    let mut m = vec![vec![Complex64::default(); dim]; dim];
    for (col, input) in Bits::all(n).enumerate() {
        let (st, _) = run_basis(schedule, &input);
        for (bits, amp) in decode_amplitudes(schedule.layout(), &st).expect("codespace") {
            m[bits.to_index()][col] = amp;
        }
    }
    m
}

pub fn ideal_matrix(circuit: &CircuitIr) -> Matrix {
    let n = circuit.n_qubits();
    let dim = 1 << n;
    let mut m = vec![vec![Complex64::default(); dim]; dim];
    for (col, input) in Bits::all(n).enumerate() {
        let st = simulate(circuit, &input).expect("simulate");
        for (row, a) in st.amplitudes().iter().enumerate() {
            m[row][col] = *a;
        }
    }
    m
}

/// Largest entrywise deviation of `actual` from `ideal` after removing the
/// best single global phase (read off the largest ideal entry).
pub fn deviation_up_to_phase(actual: &Matrix, ideal: &Matrix) -> f64 {
    let (mut best, mut pivot) = (0.0, (0, 0));
    for (r, row) in ideal.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            if v.norm() > best {
                best = v.norm();
                pivot = (r, c);
            }
        }
    }
    let ratio = actual[pivot.0][pivot.1] / ideal[pivot.0][pivot.1];
    let phase = ratio / ratio.norm();
    max_deviation(actual, &scale(ideal, phase))
}

pub fn max_deviation(a: &Matrix, b: &Matrix) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn scale(m: &Matrix, k: Complex64) -> Matrix {
    m.iter()
        .map(|row| row.iter().map(|v| v * k).collect())
        .collect()
}

pub fn random_native_circuit(rng: &mut impl Rng, n: usize, depth: usize, phi: f64) -> CircuitIr {
    let gates = (0..depth)
        .map(|_| {
            let q = rng.gen_range(0..n);
            match rng.gen_range(0..3) {
                0 => Gate::Rz(q, rng.gen_range(-2.0 * PI..2.0 * PI)),
                1 => Gate::Rx(q, rng.gen_range(-2.0 * PI..2.0 * PI)),
                _ => {
                    let t = (q + rng.gen_range(1..n)) % n;
                    Gate::Cphase(q, t)
                }
            }
        })
        .collect();
    CircuitIr::new(n, phi, gates).expect("valid circuit")
}

/// Shortest route from `from` to `to` over sites not in `blocked`.
pub fn bfs(lattice: &Lattice, blocked: &HashSet<Site>, from: Site, to: Site) -> Option<Vec<Site>> {
    let mut prev = std::collections::HashMap::new();
    let mut queue = VecDeque::from([from]);
    prev.insert(from, from);
    while let Some(s) = queue.pop_front() {
        if s == to {
            let mut route = vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[&cur];
                route.push(cur);
            }
            route.reverse();
            return Some(route);
        }
        for nb in lattice.neighbours(s) {
            if !blocked.contains(&nb) && !prev.contains_key(&nb) {
                prev.insert(nb, s);
                queue.push_back(nb);
            }
        }
    }
    None
}

/// Closed random walk from `start` avoiding `blocked`: wandering steps with
/// occasional retracing, closed off by a shortest route home.
pub fn random_closed_walk(
    rng: &mut impl Rng,
    lattice: &Lattice,
    blocked: &HashSet<Site>,
    start: Site,
    steps: usize,
) -> LatticePath {
    let mut sites = vec![start];
    for _ in 0..steps {
        let cur = *sites.last().unwrap();
        if sites.len() > 3 && rng.gen_bool(0.08) {
            // retrace a few steps of our own history
            let back = rng.gen_range(1..=3.min(sites.len() - 1));
            let n = sites.len();
            let replay: Vec<Site> = sites[n - 1 - back..n - 1].iter().rev().copied().collect();
            sites.extend(replay);
            continue;
        }
        let options: Vec<Site> = lattice
            .neighbours(cur)
            .filter(|s| !blocked.contains(s))
            .collect();
        if let Some(&next) = options.choose(rng) {
            sites.push(next);
        }
    }
    let home = bfs(lattice, blocked, *sites.last().unwrap(), start).expect("start reachable");
    sites.extend(home.into_iter().skip(1));
    LatticePath::new(sites).expect("adjacent steps")
}

/// Sites a braid may not enter: every rail and ancilla.
pub fn reserved_sites(layout: &QubitLayout) -> HashSet<Site> {
    layout
        .qubits()
        .iter()
        .flat_map(|s| [s.rail0, s.ancilla, s.rail1])
        .collect()
}
