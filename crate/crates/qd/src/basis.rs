//! Truncated direct-sum Hilbert spaces for systems whose spatial dimension
//! is itself a quantum observable.
//!
//! The full space is a direct sum of fixed-dimension oscillator sectors,
//! one for each dimension `d` in a window `[n1, n2]`. A sector-`d` basis
//! ket is labeled by `d` occupation numbers, written `|d; k1,...,kd>`; the
//! `d = 0` sector is a legal one-state space with the single ket `|0;>`.
//! Each sector is truncated by total quanta `k1 + ... + kd <= K`, which
//! keeps every energy level with at most `K` quanta complete, so degeneracy
//! counts below the cutoff are exact.
//!
//! Basis order is canonical and fixed: ascending sector `d`, then ascending
//! total quanta, then occupation lists in descending lexicographic order.
//! Sector blocks are therefore contiguous index ranges and the diagonal of
//! the free Hamiltonian is nondecreasing within each sector.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::combinatorics::for_each_composition;
use crate::error::QdError;

/// The allowed dimension window `[n1, n2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DimRangeRepr")]
pub struct DimRange {
    n1: u32,
    n2: u32,
}

#[derive(Deserialize)]
struct DimRangeRepr {
    n1: u32,
    n2: u32,
}

impl TryFrom<DimRangeRepr> for DimRange {
    type Error = QdError;

    fn try_from(r: DimRangeRepr) -> Result<Self, QdError> {
        DimRange::new(r.n1, r.n2)
    }
}

impl DimRange {
    /// Validates `n1 <= n2`. Both bounds are inclusive; `d = 0` is allowed.
    pub fn new(n1: u32, n2: u32) -> Result<Self, QdError> {
        if n1 > n2 {
            return Err(QdError::InvalidRange { n1, n2 });
        }
        Ok(Self { n1, n2 })
    }

    /// One-sector window `[d, d]`, recovering an ordinary fixed-dimension system.
    pub fn single(d: u32) -> Self {
        Self { n1: d, n2: d }
    }

    pub fn n1(&self) -> u32 {
        self.n1
    }

    pub fn n2(&self) -> u32 {
        self.n2
    }

    /// Number of sectors, `n2 - n1 + 1`.
    pub fn width(&self) -> u32 {
        self.n2 - self.n1 + 1
    }

    pub fn contains(&self, d: u32) -> bool {
        self.n1 <= d && d <= self.n2
    }

    /// Iterate the sector dimensions in ascending order.
    pub fn sectors(&self) -> impl Iterator<Item = u32> {
        self.n1..=self.n2
    }
}

impl fmt::Display for DimRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.n1, self.n2)
    }
}

/// Vacuum-offset choice for the fixed-dimension oscillator Hamiltonians.
///
/// `Unshifted` keeps the sector-`d` ground state at energy `d/2`;
/// `Shifted` offsets every sector so its ground state sits at zero.
/// The choice is observable once sectors are summed: it decides which
/// levels from different sectors line up, and hence the degeneracy
/// structure of the combined spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnergyConvention {
    Unshifted,
    Shifted,
}

impl fmt::Display for EnergyConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnergyConvention::Unshifted => f.write_str("unshifted"),
            EnergyConvention::Shifted => f.write_str("shifted"),
        }
    }
}

impl FromStr for EnergyConvention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "unshifted" => Ok(EnergyConvention::Unshifted),
            "shifted" => Ok(EnergyConvention::Shifted),
            other => Err(format!(
                "unknown energy convention `{other}` (expected `unshifted` or `shifted`)"
            )),
        }
    }
}

/// One basis ket `|d; k1,...,kd>`: a sector dimension plus one occupation
/// number per mode.
///
/// The wire/display form is `d;k1,k2,...` (the `d = 0` ket prints as `0;`),
/// and that string is also the serde representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct BasisLabel {
    d: u32,
    occ: Vec<u32>,
}

impl BasisLabel {
    /// Requires exactly `d` occupation numbers.
    pub fn new(d: u32, occ: Vec<u32>) -> Result<Self, QdError> {
        if occ.len() != d as usize {
            return Err(QdError::LabelLength { d, len: occ.len() });
        }
        Ok(Self { d, occ })
    }

    /// The sector ground state `|d; 0,...,0>`.
    pub fn ground(d: u32) -> Self {
        Self {
            d,
            occ: vec![0; d as usize],
        }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn occ(&self) -> &[u32] {
        &self.occ
    }

    /// Total quanta carried by the label.
    pub fn total_quanta(&self) -> u32 {
        self.occ.iter().sum()
    }

    /// Canonical basis order: ascending `d`, then ascending total quanta,
    /// then descending lexicographic occupation list.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.d
            .cmp(&other.d)
            .then_with(|| self.total_quanta().cmp(&other.total_quanta()))
            .then_with(|| other.occ.cmp(&self.occ))
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.d)?;
        for (i, k) in self.occ.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl FromStr for BasisLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (d_str, occ_str) = s
            .split_once(';')
            .ok_or_else(|| format!("label `{s}` is missing `;` (expected `d;k1,k2,...`)"))?;
        let d: u32 = d_str
            .trim()
            .parse()
            .map_err(|_| format!("label `{s}` has a malformed sector dimension"))?;
        let occ: Vec<u32> = if occ_str.trim().is_empty() {
            Vec::new()
        } else {
            occ_str
                .split(',')
                .map(|k| {
                    k.trim()
                        .parse::<u32>()
                        .map_err(|_| format!("label `{s}` has a malformed occupation number"))
                })
                .collect::<Result<_, _>>()?
        };
        BasisLabel::new(d, occ).map_err(|e| e.to_string())
    }
}

impl From<BasisLabel> for String {
    fn from(label: BasisLabel) -> String {
        label.to_string()
    }
}

impl TryFrom<String> for BasisLabel {
    type Error = String;

    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

/// A truncated, indexed enumeration of the full direct-sum basis.
///
/// Holds every label with `n1 <= d <= n2` and total quanta `<= cutoff_k`,
/// in canonical order. The label list and the index lookup form a bijection;
/// sector `d` occupies the contiguous index range `sector_range(d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QdBasis {
    range: DimRange,
    cutoff_k: u32,
    convention: EnergyConvention,
    labels: Vec<BasisLabel>,
    sector_offsets: Vec<usize>,
}

impl QdBasis {
    /// Enumerate the basis for the given window, cutoff, and convention.
    pub fn new(range: DimRange, cutoff_k: u32, convention: EnergyConvention) -> Arc<Self> {
        let mut labels = Vec::new();
        let mut sector_offsets = Vec::with_capacity(range.width() as usize);
        for d in range.sectors() {
            sector_offsets.push(labels.len());
            for n in 0..=cutoff_k {
                for_each_composition(n, d, &mut |occ| {
                    labels.push(BasisLabel {
                        d,
                        occ: occ.to_vec(),
                    });
                });
            }
        }
        Arc::new(Self {
            range,
            cutoff_k,
            convention,
            labels,
            sector_offsets,
        })
    }

    pub fn range(&self) -> DimRange {
        self.range
    }

    pub fn cutoff_k(&self) -> u32 {
        self.cutoff_k
    }

    pub fn convention(&self) -> EnergyConvention {
        self.convention
    }

    /// Total number of basis states.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &BasisLabel {
        &self.labels[index]
    }

    /// Position of a label in the canonical order, `None` if it is outside
    /// the window or above the cutoff.
    pub fn index_of(&self, label: &BasisLabel) -> Option<usize> {
        if !self.range.contains(label.d) || label.total_quanta() > self.cutoff_k {
            return None;
        }
        self.labels
            .binary_search_by(|probe| probe.canonical_cmp(label))
            .ok()
    }

    /// Number of states in sector `d` (zero if `d` is outside the window).
    pub fn sector_size(&self, d: u32) -> usize {
        if !self.range.contains(d) {
            return 0;
        }
        self.sector_range(d).len()
    }

    /// Contiguous index range occupied by sector `d`.
    ///
    /// Panics if `d` is outside the window.
    pub fn sector_range(&self, d: u32) -> std::ops::Range<usize> {
        assert!(self.range.contains(d), "sector {d} outside {}", self.range);
        let i = (d - self.range.n1()) as usize;
        let start = self.sector_offsets[i];
        let end = self
            .sector_offsets
            .get(i + 1)
            .copied()
            .unwrap_or(self.labels.len());
        start..end
    }

    /// Sector dimension of the state at a global index.
    pub fn sector_of_index(&self, index: usize) -> u32 {
        debug_assert!(index < self.labels.len());
        self.labels[index].d()
    }

    /// Two bases are interchangeable when window, cutoff, and convention all
    /// match; the label list is then identical by construction.
    pub fn same_space(&self, other: &QdBasis) -> bool {
        self.range == other.range
            && self.cutoff_k == other.cutoff_k
            && self.convention == other.convention
    }
}
