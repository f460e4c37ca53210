//! Layout and braid-loop planning on the linear dual-rail machine.
//!
//! Qubit `q` owns column `c = spacing * q + 1`: rail 0 at `(c, 1)`, the gate
//! ancilla at `(c, 2)` and rail 1 at `(c, 3)`. Rows 0, 2 and 4 are transit
//! corridors. A braid carries the contents of the source's rail 0 down into
//! row 0, along the corridor to the target, once around a rectangle that
//! encloses only the target's rail 0, and back the way it came.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{GeometryError, LatticePath, Site};
use crate::encoding::{QubitLayout, QubitSites};

pub const DEFAULT_SPACING: u32 = 3;

/// Sense of rotation of a braid loop. Counterclockwise picks up `e^{+i phi}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Ccw,
    Cw,
}

impl Orientation {
    pub fn sign(self) -> i32 {
        match self {
            Orientation::Ccw => 1,
            Orientation::Cw => -1,
        }
    }
}

pub fn plan_layout(n_qubits: usize, spacing: u32) -> Result<QubitLayout, GeometryError> {
    if n_qubits == 0 {
        return Err(GeometryError::EmptyMachine);
    }
    if spacing < 3 {
        return Err(GeometryError::InsufficientSpacing(spacing));
    }
    let qubits = (0..n_qubits)
        .map(|q| {
            let c = (spacing as usize * q + 1) as i32;
            QubitSites {
                rail0: Site::new(c, 1),
                ancilla: Site::new(c, 2),
                rail1: Site::new(c, 3),
            }
        })
        .collect();
    let width = spacing * n_qubits as u32 + 2;
    Ok(QubitLayout::from_parts(width, 5, qubits))
}

/// Closed path from `source`'s rail 0 that winds once around `target`'s
/// rail 0 and around no other qubit site.
pub fn plan_braid_loop(
    layout: &QubitLayout,
    source: usize,
    target: usize,
    orientation: Orientation,
) -> Result<LatticePath, GeometryError> {
    let n = layout.n_qubits();
    for q in [source, target] {
        if q >= n {
            return Err(GeometryError::QubitOutOfRange {
                qubit: q,
                n_qubits: n,
            });
        }
    }
    if source == target {
        return Err(GeometryError::SelfBraid(source));
    }

    let start = layout.qubit(source).rail0;
    let anchor = layout.qubit(target).rail0;
    if start.y != anchor.y {
        return Err(GeometryError::NoCorridor(format!(
            "rails of qubits {source} and {target} are not on a common row"
        )));
    }
    let row = start.y - 1;

    // Rectangle around the anchor, counterclockwise from its south-west corner.
    let (ax, top) = (anchor.x, row + 2);
    let mut ring = [
        Site::new(ax - 1, row),
        Site::new(ax, row),
        Site::new(ax + 1, row),
        Site::new(ax + 1, row + 1),
        Site::new(ax + 1, top),
        Site::new(ax, top),
        Site::new(ax - 1, top),
        Site::new(ax - 1, row + 1),
    ];
    if orientation == Orientation::Cw {
        ring.reverse();
    }
    // Enter the ring at the corner on the near side of the corridor.
    let entry = if anchor.x > start.x {
        Site::new(ax - 1, row)
    } else {
        Site::new(ax + 1, row)
    };
    let at = ring
        .iter()
        .position(|&s| s == entry)
        .expect("entry corner on ring");
    ring.rotate_left(at);

    let mut transit = vec![start, Site::new(start.x, row)];
    let step = (entry.x - start.x).signum();
    let mut x = start.x;
    while x != entry.x {
        x += step;
        transit.push(Site::new(x, row));
    }

    let mut sites = transit.clone();
    sites.extend(ring.iter().skip(1));
    sites.push(entry);
    sites.extend(transit.iter().rev().skip(1));

    check_clearance(layout, source, target, &sites)?;
    LatticePath::new(sites)
}

fn check_clearance(
    layout: &QubitLayout,
    source: usize,
    target: usize,
    sites: &[Site],
) -> Result<(), GeometryError> {
    let lattice = layout.lattice();
    let reserved: HashSet<Site> = layout
        .qubits()
        .iter()
        .enumerate()
        .flat_map(|(q, s)| {
            [s.rail0, s.ancilla, s.rail1]
                .into_iter()
                .filter(move |site| !(q == target && *site == s.ancilla))
        })
        .collect();
    let start = layout.qubit(source).rail0;
    let last = sites.len() - 1;
    for (i, &s) in sites.iter().enumerate() {
        if !lattice.contains(s) {
            return Err(GeometryError::NoCorridor(format!(
                "braid {source}->{target} leaves the lattice at {s}"
            )));
        }
        let endpoint = (i == 0 || i == last) && s == start;
        if reserved.contains(&s) && !endpoint {
            return Err(GeometryError::NoCorridor(format!(
                "braid {source}->{target} would pass through qubit site {s}"
            )));
        }
    }
    Ok(())
}
