//! Integer-grid geometry for the anyon lattice.
//!
//! Sites sit at integer coordinates with `x` growing to the east and `y`
//! growing to the north, so "counterclockwise" has its usual mathematical
//! meaning. Paths are sequences of nearest-neighbour sites; a closed path is
//! the spatial shadow of an anyon worldline, and its winding number around
//! another anyon is the only datum the braid phase depends on.

mod planner;
mod winding;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use planner::{plan_braid_loop, plan_layout, Orientation, DEFAULT_SPACING};
pub use winding::{winding_number, Point};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("sites {0} and {1} are not nearest neighbours")]
    NotAdjacent(Site, Site),
    #[error("path not closed")]
    PathNotClosed,
    #[error("degenerate point ({x}, {y}): lies on or is collinear with a path edge")]
    DegeneratePoint { x: f64, y: f64 },
    #[error("layout needs at least one qubit")]
    EmptyMachine,
    #[error("insufficient corridor spacing: {0} columns per qubit, need at least 3")]
    InsufficientSpacing(u32),
    #[error("self-braid: qubit {0} cannot be braided around itself")]
    SelfBraid(usize),
    #[error("qubit {qubit} out of range for a {n_qubits}-qubit layout")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("no corridor: {0}")]
    NoCorridor(String),
}

/// A lattice site. Serialized as a two-element array `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i32; 2]", into = "[i32; 2]")]
pub struct Site {
    pub x: i32,
    pub y: i32,
}

impl Site {
    pub const fn new(x: i32, y: i32) -> Self {
        Site { x, y }
    }

    pub fn is_adjacent(self, other: Site) -> bool {
        (self.x - other.x).abs() + (self.y - other.y).abs() == 1
    }

    /// A point in the same face as this site for every path that avoids the
    /// site. Quarter offsets keep it off all lattice lines, so winding numbers
    /// around it are always well defined.
    pub fn probe_point(self) -> Point {
        Point::new(self.x as f64 + 0.25, self.y as f64 + 0.25)
    }

    pub fn offset(self, dx: i32, dy: i32) -> Site {
        Site::new(self.x + dx, self.y + dy)
    }
}

impl From<[i32; 2]> for Site {
    fn from([x, y]: [i32; 2]) -> Self {
        Site { x, y }
    }
}

impl From<Site> for [i32; 2] {
    fn from(s: Site) -> Self {
        [s.x, s.y]
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A directed nearest-neighbour edge `a -> b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    a: Site,
    b: Site,
}

impl Edge {
    pub fn new(a: Site, b: Site) -> Result<Self, GeometryError> {
        if a.is_adjacent(b) {
            Ok(Edge { a, b })
        } else {
            Err(GeometryError::NotAdjacent(a, b))
        }
    }

    pub fn from(&self) -> Site {
        self.a
    }

    pub fn to(&self) -> Site {
        self.b
    }

    pub fn is_horizontal(&self) -> bool {
        self.a.y == self.b.y
    }

    pub fn reversed(&self) -> Edge {
        Edge {
            a: self.b,
            b: self.a,
        }
    }
}

/// Rectangular lattice dimensions. Sites are packed row-major:
/// `index = y * width + x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lattice {
    pub width: u32,
    pub height: u32,
}

impl Lattice {
    pub const fn new(width: u32, height: u32) -> Self {
        Lattice { width, height }
    }

    pub fn n_sites(&self) -> usize {
        self.width as usize * self.height as usize
    }

    pub fn contains(&self, s: Site) -> bool {
        s.x >= 0 && s.y >= 0 && (s.x as u32) < self.width && (s.y as u32) < self.height
    }

    /// Row-major index of an in-bounds site.
    pub fn index(&self, s: Site) -> Option<usize> {
        self.contains(s)
            .then(|| s.y as usize * self.width as usize + s.x as usize)
    }

    pub fn site(&self, index: usize) -> Site {
        let w = self.width as usize;
        Site::new((index % w) as i32, (index / w) as i32)
    }

    /// In-bounds orthogonal neighbours of `s`.
    pub fn neighbours(&self, s: Site) -> impl Iterator<Item = Site> + '_ {
        [(1, 0), (-1, 0), (0, 1), (0, -1)]
            .into_iter()
            .map(move |(dx, dy)| s.offset(dx, dy))
            .filter(|n| self.contains(*n))
    }
}

/// An ordered walk over nearest-neighbour sites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePath {
    sites: Vec<Site>,
}

impl LatticePath {
    pub fn new(sites: Vec<Site>) -> Result<Self, GeometryError> {
        for w in sites.windows(2) {
            if !w[0].is_adjacent(w[1]) {
                return Err(GeometryError::NotAdjacent(w[0], w[1]));
            }
        }
        Ok(LatticePath { sites })
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    /// Number of hops along the path.
    pub fn n_edges(&self) -> usize {
        self.sites.len().saturating_sub(1)
    }

    pub fn is_closed(&self) -> bool {
        !self.sites.is_empty() && self.sites.first() == self.sites.last()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.sites.windows(2).map(|w| Edge { a: w[0], b: w[1] })
    }

    pub fn reversed(&self) -> LatticePath {
        let mut sites = self.sites.clone();
        sites.reverse();
        LatticePath { sites }
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn concat(&self, other: &LatticePath) -> Result<LatticePath, GeometryError> {
        match (self.sites.last(), other.sites.first()) {
            (Some(&end), Some(&start)) if end != start => {
                Err(GeometryError::NotAdjacent(end, start))
            }
            _ => {
                let mut sites = self.sites.clone();
                let skip = usize::from(!sites.is_empty());
                sites.extend(other.sites.iter().skip(skip));
                Ok(LatticePath { sites })
            }
        }
    }
}
