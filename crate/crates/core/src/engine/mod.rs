//! Exact sparse simulation of hard-core abelian anyons.
//!
//! Statistics are carried by strings: every anyon at `(x0, y0)` drags a ray
//! at column `x0 - 1/4` hanging down through all rows `y < y0`. A hop that
//! crosses another anyon's string eastward multiplies the amplitude by
//! `e^{+i phi}`, westward by `e^{-i phi}`. For a closed path the product of
//! these factors is `e^{i phi w}` with `w` the winding number around the
//! static anyon, whatever the shape of the path.

mod config;
mod state;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Edge, Lattice, Site};

pub use config::Configuration;
pub use state::{DumpEntry, SparseFockState};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("site {0} outside the lattice")]
    OutOfBounds(Site),
    #[error("sites {0} and {1} are not adjacent")]
    NotAdjacent(Site, Site),
    #[error("hard-core collision: hop {from} -> {to} with both sites occupied")]
    HardCoreCollision { from: Site, to: Site },
    #[error("lattice dimension mismatch: {0:?} vs {1:?}")]
    DimensionMismatch(Lattice, Lattice),
    #[error("configurations carry different anyon counts")]
    MixedAnyonCount,
    #[error("state has no terms")]
    EmptyState,
}

/// Statistical angle plus the string geometry described at module level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BraidingConvention {
    pub phi: f64,
}

impl BraidingConvention {
    pub fn new(phi: f64) -> Self {
        BraidingConvention { phi }
    }

    /// Phase picked up by the anyon hopping along `edge` in `config`.
    ///
    /// The string of an anyon at `(sx, sy)` meets a horizontal edge at row
    /// `y` exactly when the edge spans columns `sx - 1 .. sx` and `y < sy`.
    /// The hopper itself sits on row `y` and so never counts.
    pub fn crossing_phase(
        &self,
        lattice: &Lattice,
        edge: Edge,
        config: &Configuration,
    ) -> Complex64 {
        if !edge.is_horizontal() {
            return Complex64::new(1.0, 0.0);
        }
        let (a, b) = (edge.from(), edge.to());
        let column = a.x.max(b.x);
        let crossed = (a.y + 1..lattice.height as i32)
            .filter_map(|y| lattice.index(Site::new(column, y)))
            .filter(|&i| config.get(i))
            .count() as i32;
        if crossed == 0 {
            return Complex64::new(1.0, 0.0);
        }
        let sign = if b.x > a.x { 1 } else { -1 };
        Complex64::from_polar(1.0, f64::from(sign * crossed) * self.phi)
    }
}
