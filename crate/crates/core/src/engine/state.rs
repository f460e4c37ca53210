use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use super::{BraidingConvention, Configuration, EngineError};
use crate::geometry::{Edge, Lattice, Site};

/// Superposition of hard-core occupation configurations.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseFockState {
    lattice: Lattice,
    terms: BTreeMap<Configuration, Complex64>,
    prune_threshold: f64,
}

/// One line of a state dump: row-major occupancy bits and the amplitude.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DumpEntry(pub String, pub f64, pub f64);

impl SparseFockState {
    /// Single configuration with amplitude 1.
    pub fn new(lattice: Lattice, config: Configuration) -> Result<Self, EngineError> {
        Self::from_terms(lattice, vec![(config, Complex64::new(1.0, 0.0))])
    }

    pub fn from_sites(lattice: Lattice, sites: &[Site]) -> Result<Self, EngineError> {
        let mut config = Configuration::empty(lattice.n_sites());
        for &s in sites {
            let i = lattice.index(s).ok_or(EngineError::OutOfBounds(s))?;
            config.set(i, true);
        }
        Self::new(lattice, config)
    }

    /// Builds a state from explicit terms. Amplitudes are taken as given;
    /// repeated configurations are summed.
    pub fn from_terms(
        lattice: Lattice,
        terms: impl IntoIterator<Item = (Configuration, Complex64)>,
    ) -> Result<Self, EngineError> {
        let mut map: BTreeMap<Configuration, Complex64> = BTreeMap::new();
        let mut count = None;
        for (config, amp) in terms {
            if config.n_sites() != lattice.n_sites() {
                let last = config.n_sites().saturating_sub(1);
                return Err(EngineError::OutOfBounds(lattice.site(last)));
            }
            let c = config.count();
            if *count.get_or_insert(c) != c {
                return Err(EngineError::MixedAnyonCount);
            }
            *map.entry(config).or_default() += amp;
        }
        if map.is_empty() {
            return Err(EngineError::EmptyState);
        }
        Ok(SparseFockState {
            lattice,
            terms: map,
            prune_threshold: 0.0,
        })
    }

    /// Terms with `|amp| <= threshold` are dropped after each primitive.
    pub fn with_prune_threshold(mut self, threshold: f64) -> Self {
        self.prune_threshold = threshold;
        self
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    /// Number of stored configurations.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Configuration, &Complex64)> {
        self.terms.iter()
    }

    pub fn amplitude(&self, config: &Configuration) -> Complex64 {
        self.terms.get(config).copied().unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.terms.values().map(|a| a.norm_sqr()).sum()
    }

    /// Common anyon count of all terms (`None` only for an empty state).
    pub fn anyon_count(&self) -> Option<u32> {
        self.terms.keys().next().map(Configuration::count)
    }

    fn index(&self, s: Site) -> Result<usize, EngineError> {
        self.lattice.index(s).ok_or(EngineError::OutOfBounds(s))
    }

    fn edge(&self, a: Site, b: Site) -> Result<(Edge, usize, usize), EngineError> {
        let (ia, ib) = (self.index(a)?, self.index(b)?);
        let edge = Edge::new(a, b).map_err(|_| EngineError::NotAdjacent(a, b))?;
        Ok((edge, ia, ib))
    }

    fn prune(&mut self) {
        let t = self.prune_threshold;
        self.terms.retain(|_, a| a.norm() > t);
    }

    /// `exp(-i theta n_site)`: occupied terms gain `e^{-i theta}`.
    pub fn apply_number_phase(&mut self, site: Site, theta: f64) -> Result<(), EngineError> {
        let i = self.index(site)?;
        let factor = Complex64::from_polar(1.0, -theta);
        for (config, amp) in self.terms.iter_mut() {
            if config.get(i) {
                *amp *= factor;
            }
        }
        Ok(())
    }

    /// Moves the anyon across the edge in every term where exactly one end is
    /// occupied, applying the string-crossing phase for the direction it
    /// actually travels.
    pub fn apply_hop(
        &mut self,
        convention: &BraidingConvention,
        from: Site,
        to: Site,
    ) -> Result<(), EngineError> {
        let (edge, i_from, i_to) = self.edge(from, to)?;
        if self.terms.keys().any(|c| c.get(i_from) && c.get(i_to)) {
            return Err(EngineError::HardCoreCollision { from, to });
        }
        let lattice = self.lattice;
        let terms = std::mem::take(&mut self.terms);
        self.terms = terms
            .into_iter()
            .map(
                |(config, amp)| match (config.get(i_from), config.get(i_to)) {
                    (true, false) => {
                        let g = convention.crossing_phase(&lattice, edge, &config);
                        (moved(config, i_from, i_to), amp * g)
                    }
                    (false, true) => {
                        let g = convention.crossing_phase(&lattice, edge.reversed(), &config);
                        (moved(config, i_to, i_from), amp * g)
                    }
                    _ => (config, amp),
                },
            )
            .collect();
        Ok(())
    }

    /// `exp(-i theta B_ab / 2)` on the one-anyon span of `{a, b}`, the moved
    /// component also carrying the string-crossing phase. Empty and doubly
    /// occupied pairs are fixed points.
    pub fn apply_partial_swap(
        &mut self,
        convention: &BraidingConvention,
        a: Site,
        b: Site,
        theta: f64,
    ) -> Result<(), EngineError> {
        let (edge, ia, ib) = self.edge(a, b)?;
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        let minus_i_sin = Complex64::new(0.0, -s);
        let lattice = self.lattice;
        let terms = std::mem::take(&mut self.terms);
        let mut out: BTreeMap<Configuration, Complex64> = BTreeMap::new();
        for (config, amp) in terms {
            let (dir, src, dst) = match (config.get(ia), config.get(ib)) {
                (true, false) => (edge, ia, ib),
                (false, true) => (edge.reversed(), ib, ia),
                _ => {
                    *out.entry(config).or_default() += amp;
                    continue;
                }
            };
            let g = convention.crossing_phase(&lattice, dir, &config);
            *out.entry(moved(config.clone(), src, dst)).or_default() += amp * minus_i_sin * g;
            *out.entry(config).or_default() += amp * c;
        }
        self.terms = out;
        self.prune();
        Ok(())
    }

    /// `<self|other>`.
    pub fn inner_product(&self, other: &SparseFockState) -> Result<Complex64, EngineError> {
        if self.lattice != other.lattice {
            return Err(EngineError::DimensionMismatch(self.lattice, other.lattice));
        }
        Ok(self
            .terms
            .iter()
            .filter_map(|(c, a)| other.terms.get(c).map(|b| a.conj() * b))
            .sum())
    }

    /// Terms sorted by occupancy bitstring.
    pub fn dump(&self) -> Vec<DumpEntry> {
        let mut entries: Vec<DumpEntry> = self
            .terms
            .iter()
            .map(|(c, a)| DumpEntry(c.to_bitstring(), a.re, a.im))
            .collect();
        entries.sort_by(|x, y| x.0.cmp(&y.0));
        entries
    }
}

fn moved(mut config: Configuration, src: usize, dst: usize) -> Configuration {
    config.set(src, false);
    config.set(dst, true);
    config
}
