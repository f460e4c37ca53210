//! Dual-rail encoding: one anyon per qubit, sitting on rail 0 for `|0>` and on
//! rail 1 for `|1>`.
//!
//! Bitstrings everywhere are ASCII `'0'`/`'1'` with qubit 0 leftmost.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{Configuration, EngineError, SparseFockState};
use crate::geometry::{Lattice, Site};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EncodingError {
    #[error("bitstring has {got} bits, layout has {expected} qubits")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid bitstring {0:?}: expected only '0' and '1'")]
    BadBitstring(String),
    #[error("state not in codespace: {0}")]
    NotInCodespace(String),
    #[error("invalid layout: {0}")]
    InvalidLayout(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// A classical bitstring, qubit 0 first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bits(Vec<bool>);

impl Bits {
    pub fn new(bits: Vec<bool>) -> Self {
        Bits(bits)
    }

    pub fn zeros(n: usize) -> Self {
        Bits(vec![false; n])
    }

    /// Bits of `index` in big-endian order, so qubit 0 is the most
    /// significant bit.
    pub fn from_index(index: usize, n: usize) -> Self {
        Bits((0..n).map(|q| (index >> (n - 1 - q)) & 1 == 1).collect())
    }

    pub fn to_index(&self) -> usize {
        self.0.iter().fold(0, |acc, &b| (acc << 1) | usize::from(b))
    }

    /// All `2^n` bitstrings in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Bits> {
        (0..1usize << n).map(move |i| Bits::from_index(i, n))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, q: usize) -> bool {
        self.0[q]
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }
}

impl FromStr for Bits {
    type Err = EncodingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(EncodingError::BadBitstring(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Bits)
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl Serialize for Bits {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Bits {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The three sites owned by one logical qubit, stacked vertically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QubitSites {
    pub rail0: Site,
    pub ancilla: Site,
    pub rail1: Site,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawLayout")]
pub struct QubitLayout {
    width: u32,
    height: u32,
    qubits: Vec<QubitSites>,
}

#[derive(Deserialize)]
struct RawLayout {
    width: u32,
    height: u32,
    qubits: Vec<QubitSites>,
}

impl TryFrom<RawLayout> for QubitLayout {
    type Error = EncodingError;

    fn try_from(raw: RawLayout) -> Result<Self, Self::Error> {
        let layout = QubitLayout::from_parts(raw.width, raw.height, raw.qubits);
        layout.validate()?;
        Ok(layout)
    }
}

impl QubitLayout {
    /// Assembles a layout without checking it; see [`QubitLayout::validate`].
    pub fn from_parts(width: u32, height: u32, qubits: Vec<QubitSites>) -> Self {
        QubitLayout {
            width,
            height,
            qubits,
        }
    }

    pub fn validate(&self) -> Result<(), EncodingError> {
        let bad = |m: String| Err(EncodingError::InvalidLayout(m));
        if self.qubits.is_empty() {
            return bad("no qubits".into());
        }
        let lattice = self.lattice();
        let mut seen = HashSet::new();
        for (q, s) in self.qubits.iter().enumerate() {
            for site in [s.rail0, s.ancilla, s.rail1] {
                if !lattice.contains(site) {
                    return bad(format!(
                        "qubit {q} site {site} outside {}x{}",
                        self.width, self.height
                    ));
                }
                if !seen.insert(site) {
                    return bad(format!("site {site} used twice"));
                }
            }
            if s.ancilla != s.rail0.offset(0, 1) || s.rail1 != s.rail0.offset(0, 2) {
                return bad(format!(
                    "qubit {q}: rail0, ancilla, rail1 must be vertically consecutive"
                ));
            }
        }
        for (i, a) in self.qubits.iter().enumerate() {
            for b in &self.qubits[i + 1..] {
                if (a.rail0.x - b.rail0.x).abs() < 3 {
                    return bad(format!(
                        "columns {} and {} closer than 3",
                        a.rail0.x, b.rail0.x
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.qubits.len()
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn lattice(&self) -> Lattice {
        Lattice::new(self.width, self.height)
    }

    pub fn qubit(&self, q: usize) -> &QubitSites {
        &self.qubits[q]
    }

    pub fn qubits(&self) -> &[QubitSites] {
        &self.qubits
    }

    pub fn is_rail0(&self, site: Site) -> bool {
        self.qubits.iter().any(|s| s.rail0 == site)
    }

    /// Occupancy pattern encoding `bits`.
    pub fn configuration(&self, bits: &Bits) -> Result<Configuration, EncodingError> {
        if bits.len() != self.n_qubits() {
            return Err(EncodingError::LengthMismatch {
                expected: self.n_qubits(),
                got: bits.len(),
            });
        }
        let lattice = self.lattice();
        let mut config = Configuration::empty(lattice.n_sites());
        for (s, &b) in self.qubits.iter().zip(bits.as_slice()) {
            let site = if b { s.rail1 } else { s.rail0 };
            config.set(lattice.index(site).expect("layout sites in bounds"), true);
        }
        Ok(config)
    }

    /// Reads a configuration back as a bitstring; fails on any anyon off the
    /// rails or any qubit without exactly one rail occupied.
    pub fn decode(&self, config: &Configuration) -> Result<Bits, EncodingError> {
        let lattice = self.lattice();
        let occupied = |s: Site| config.get(lattice.index(s).expect("layout sites in bounds"));
        let mut bits = Vec::with_capacity(self.n_qubits());
        for (q, s) in self.qubits.iter().enumerate() {
            match (occupied(s.rail0), occupied(s.rail1)) {
                (true, false) => bits.push(false),
                (false, true) => bits.push(true),
                (a, b) => {
                    let what = if a && b { "both rails" } else { "neither rail" };
                    return Err(EncodingError::NotInCodespace(format!(
                        "qubit {q} has {what} occupied"
                    )));
                }
            }
        }
        if config.count() as usize != self.n_qubits() {
            let stray: Vec<String> = config
                .occupied()
                .map(|i| lattice.site(i))
                .filter(|site| {
                    !self
                        .qubits
                        .iter()
                        .any(|s| s.rail0 == *site || s.rail1 == *site)
                })
                .map(|site| site.to_string())
                .collect();
            return Err(EncodingError::NotInCodespace(format!(
                "anyon off-rail at {}",
                stray.join(", ")
            )));
        }
        Ok(Bits(bits))
    }
}

/// Prepares the product state with each qubit's anyon on the rail its bit
/// selects.
pub fn encode_basis(layout: &QubitLayout, bits: &Bits) -> Result<SparseFockState, EncodingError> {
    let config = layout.configuration(bits)?;
    Ok(SparseFockState::new(layout.lattice(), config)?)
}

/// Codespace amplitudes keyed by bitstring.
pub fn decode_amplitudes(
    layout: &QubitLayout,
    state: &SparseFockState,
) -> Result<BTreeMap<Bits, Complex64>, EncodingError> {
    if state.lattice() != layout.lattice() {
        return Err(EncodingError::NotInCodespace(
            "state lattice differs from layout".into(),
        ));
    }
    state
        .terms()
        .map(|(config, amp)| Ok((layout.decode(config)?, *amp)))
        .collect()
}

pub fn readout_distribution(
    layout: &QubitLayout,
    state: &SparseFockState,
) -> Result<BTreeMap<Bits, f64>, EncodingError> {
    Ok(decode_amplitudes(layout, state)?
        .into_iter()
        .map(|(bits, amp)| (bits, amp.norm_sqr()))
        .collect())
}

/// Seeded multinomial sampling of the readout distribution.
pub fn sample(
    layout: &QubitLayout,
    state: &SparseFockState,
    shots: u64,
    seed: u64,
) -> Result<BTreeMap<Bits, u64>, EncodingError> {
    let dist = readout_distribution(layout, state)?;
    let mut counts = BTreeMap::new();
    if shots == 0 {
        return Ok(counts);
    }
    let (outcomes, weights): (Vec<Bits>, Vec<f64>) = dist.into_iter().unzip();
    let index = WeightedIndex::new(&weights)
        .map_err(|e| EncodingError::NotInCodespace(format!("cannot sample: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..shots {
        *counts
            .entry(outcomes[index.sample(&mut rng)].clone())
            .or_insert(0) += 1;
    }
    Ok(counts)
}
