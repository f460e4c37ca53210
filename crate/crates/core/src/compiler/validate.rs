//! Static occupancy replay.
//!
//! Up to [`DEFAULT_EXACT_LIMIT`] qubits every configuration reachable from any
//! encoded basis input is tracked; partial swaps fork a branch into both of
//! its outcomes. Beyond that a per-site "may be occupied" mask stands in,
//! which can only over-report.

use std::collections::BTreeMap;
use std::fmt;

use super::schedule::{PrimitiveOp, Schedule};
use crate::encoding::Bits;
use crate::engine::Configuration;
use crate::geometry::{Lattice, Site};

pub const DEFAULT_EXACT_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    OutOfBounds(Site),
    NotAdjacent(Site, Site),
    /// Both ends of a hop occupied; `input` names a basis input that gets
    /// there (absent in superset mode).
    Collision {
        from: Site,
        to: Site,
        input: Option<Bits>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub op_index: usize,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "op {}: ", self.op_index)?;
        match &self.kind {
            ViolationKind::OutOfBounds(s) => write!(f, "site {s} out of bounds"),
            ViolationKind::NotAdjacent(a, b) => write!(f, "sites {a} and {b} not adjacent"),
            ViolationKind::Collision {
                from,
                to,
                input: Some(b),
            } => {
                write!(
                    f,
                    "hard-core collision hopping {from} -> {to} from input {b}"
                )
            }
            ViolationKind::Collision {
                from,
                to,
                input: None,
            } => {
                write!(f, "possible hard-core collision hopping {from} -> {to}")
            }
        }
    }
}

impl std::error::Error for Violation {}

pub fn validate_schedule(schedule: &Schedule) -> Result<(), Violation> {
    validate_schedule_with(schedule, DEFAULT_EXACT_LIMIT)
}

pub fn validate_schedule_with(schedule: &Schedule, exact_limit: usize) -> Result<(), Violation> {
    let layout = schedule.layout();
    let lattice = layout.lattice();
    if layout.n_qubits() <= exact_limit {
        let mut branches: BTreeMap<Configuration, Bits> = BTreeMap::new();
        for b in Bits::all(layout.n_qubits()) {
            let config = layout
                .configuration(&b)
                .expect("bitstring length matches layout");
            branches.insert(config, b);
        }
        replay(schedule, &lattice, ExactBranches(branches))
    } else {
        let mut mask = vec![false; lattice.n_sites()];
        for s in layout.qubits() {
            for site in [s.rail0, s.rail1] {
                mask[lattice.index(site).expect("layout sites in bounds")] = true;
            }
        }
        replay(schedule, &lattice, MayOccupy(mask))
    }
}

trait Occupancy {
    /// `Err` carries the offending input, if known.
    fn hop(&mut self, a: usize, b: usize) -> Result<(), Option<Bits>>;
    fn pswap(&mut self, a: usize, b: usize);
}

struct ExactBranches(BTreeMap<Configuration, Bits>);

impl Occupancy for ExactBranches {
    fn hop(&mut self, a: usize, b: usize) -> Result<(), Option<Bits>> {
        if let Some((_, input)) = self.0.iter().find(|(c, _)| c.get(a) && c.get(b)) {
            return Err(Some(input.clone()));
        }
        let old = std::mem::take(&mut self.0);
        self.0 = old
            .into_iter()
            .map(|(c, i)| (swapped(c, a, b), i))
            .collect();
        Ok(())
    }

    fn pswap(&mut self, a: usize, b: usize) {
        let forks: Vec<_> = self
            .0
            .iter()
            .filter(|(c, _)| c.get(a) != c.get(b))
            .map(|(c, i)| (swapped(c.clone(), a, b), i.clone()))
            .collect();
        for (c, i) in forks {
            self.0.entry(c).or_insert(i);
        }
    }
}

struct MayOccupy(Vec<bool>);

impl Occupancy for MayOccupy {
    fn hop(&mut self, a: usize, b: usize) -> Result<(), Option<Bits>> {
        if self.0[a] && self.0[b] {
            return Err(None);
        }
        self.0.swap(a, b);
        Ok(())
    }

    fn pswap(&mut self, a: usize, b: usize) {
        let either = self.0[a] || self.0[b];
        self.0[a] = either;
        self.0[b] = either;
    }
}

fn swapped(mut c: Configuration, a: usize, b: usize) -> Configuration {
    let (x, y) = (c.get(a), c.get(b));
    c.set(a, y);
    c.set(b, x);
    c
}

fn replay(
    schedule: &Schedule,
    lattice: &Lattice,
    mut occ: impl Occupancy,
) -> Result<(), Violation> {
    for (op_index, op) in schedule.ops().iter().enumerate() {
        let fail = |kind| Err(Violation { op_index, kind });
        let index = |s: Site| {
            lattice.index(s).ok_or(Violation {
                op_index,
                kind: ViolationKind::OutOfBounds(s),
            })
        };
        match *op {
            PrimitiveOp::Nphase { site, .. } => {
                index(site)?;
            }
            PrimitiveOp::Hop { from, to } => {
                let (a, b) = (index(from)?, index(to)?);
                if !from.is_adjacent(to) {
                    return fail(ViolationKind::NotAdjacent(from, to));
                }
                if let Err(input) = occ.hop(a, b) {
                    return fail(ViolationKind::Collision { from, to, input });
                }
            }
            PrimitiveOp::Pswap { a, b, .. } => {
                let (ia, ib) = (index(a)?, index(b)?);
                if !a.is_adjacent(b) {
                    return fail(ViolationKind::NotAdjacent(a, b));
                }
                occ.pswap(ia, ib);
            }
        }
    }
    Ok(())
}
