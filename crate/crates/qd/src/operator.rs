//! Block operators on a direct-sum basis.
//!
//! An operator is stored as a map from sector pairs `(d, d')` to dense
//! complex blocks over the corresponding sector bases. Generalized
//! observables assembled from fixed-dimension operators are block-diagonal
//! (`d = d'` only) and act sector by sector; absent blocks act as zero, so a
//! block-diagonal operator can never transfer amplitude between sectors.
//! Cross-dimension physics enters only through explicit off-diagonal blocks,
//! as in the hopping interactions of [`crate::dynamics`].
//!
//! Every system whose dimension window is nontrivial carries the dimension
//! observable [`dimension_operator`], which acts as `d` times the identity
//! on sector `d`.

use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::basis::{BasisLabel, QdBasis};
use crate::error::QdError;
use crate::state::StateVector;

/// Elementwise tolerance for the conjugate-symmetry check on operators
/// flagged hermitian.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Normalization slack accepted by [`BlockOperator::expectation`].
pub const EXPECTATION_NORM_TOL: f64 = 1e-8;

/// Ladder operator flavor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderKind {
    Create,
    Annihilate,
}

/// An operator over a [`QdBasis`], stored as dense blocks keyed by sector
/// pair, plus a hermiticity flag validated at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockOperator {
    basis: Arc<QdBasis>,
    blocks: BTreeMap<(u32, u32), DMatrix<Complex64>>,
    hermitian: bool,
}

impl BlockOperator {
    /// The zero operator (no blocks).
    pub fn zero(basis: &Arc<QdBasis>) -> Self {
        Self {
            basis: Arc::clone(basis),
            blocks: BTreeMap::new(),
            hermitian: true,
        }
    }

    /// The identity.
    pub fn identity(basis: &Arc<QdBasis>) -> Self {
        Self::diagonal(basis, |_| 1.0)
    }

    /// Block-diagonal operator that is diagonal in the occupation basis,
    /// with entry `f(label)` on each basis ket.
    pub fn diagonal(basis: &Arc<QdBasis>, f: impl Fn(&BasisLabel) -> f64) -> Self {
        let mut blocks = BTreeMap::new();
        for d in basis.range().sectors() {
            let r = basis.sector_range(d);
            let size = r.len();
            let mut m = DMatrix::zeros(size, size);
            for (local, global) in r.enumerate() {
                m[(local, local)] = Complex64::new(f(basis.label(global)), 0.0);
            }
            blocks.insert((d, d), m);
        }
        Self {
            basis: Arc::clone(basis),
            blocks,
            hermitian: true,
        }
    }

    /// Assemble an operator from explicit blocks.
    ///
    /// Validates that every key lies in the dimension window, that every
    /// block has the sector shape, and, when `hermitian` is set, that
    /// `block(d, d')` equals the conjugate transpose of `block(d', d)`
    /// within [`HERMITICITY_TOL`].
    pub fn from_blocks(
        basis: &Arc<QdBasis>,
        blocks: BTreeMap<(u32, u32), DMatrix<Complex64>>,
        hermitian: bool,
    ) -> Result<Self, QdError> {
        let range = basis.range();
        for (&(d, dp), block) in &blocks {
            for s in [d, dp] {
                if !range.contains(s) {
                    return Err(QdError::SectorOutOfRange {
                        d: s,
                        n1: range.n1(),
                        n2: range.n2(),
                    });
                }
            }
            let want_rows = basis.sector_size(d);
            let want_cols = basis.sector_size(dp);
            if block.nrows() != want_rows || block.ncols() != want_cols {
                return Err(QdError::BlockShape {
                    d,
                    dp,
                    rows: block.nrows(),
                    cols: block.ncols(),
                    want_rows,
                    want_cols,
                });
            }
        }
        let op = Self {
            basis: Arc::clone(basis),
            blocks,
            hermitian,
        };
        if hermitian {
            let violation = op.hermiticity_violation();
            if violation > HERMITICITY_TOL {
                return Err(QdError::NotHermitian {
                    max_violation: violation,
                });
            }
        }
        Ok(op)
    }

    pub fn basis(&self) -> &Arc<QdBasis> {
        &self.basis
    }

    pub fn hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn block(&self, d: u32, dp: u32) -> Option<&DMatrix<Complex64>> {
        self.blocks.get(&(d, dp))
    }

    pub fn blocks(&self) -> &BTreeMap<(u32, u32), DMatrix<Complex64>> {
        &self.blocks
    }

    /// `max |M[i,j] - conj(M[j,i])|` over all stored entries.
    pub fn hermiticity_violation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (&(d, dp), block) in &self.blocks {
            match self.blocks.get(&(dp, d)) {
                Some(partner) => {
                    for r in 0..block.nrows() {
                        for c in 0..block.ncols() {
                            worst = worst.max((block[(r, c)] - partner[(c, r)].conj()).norm());
                        }
                    }
                }
                None => {
                    // missing partner acts as zero
                    worst = worst.max(block.iter().map(|z| z.norm()).fold(0.0, f64::max));
                }
            }
        }
        worst
    }

    /// Apply to a state: the output amplitude on sector `k` collects
    /// `block(k, d) * psi_d` over all stored blocks.
    pub fn apply(&self, psi: &StateVector) -> Result<StateVector, QdError> {
        if !self.basis.same_space(psi.basis()) {
            return Err(QdError::BasisMismatch);
        }
        let mut out = nalgebra::DVector::<Complex64>::zeros(self.basis.len());
        for (&(k, d), block) in &self.blocks {
            let src = psi.amplitudes().rows_range(self.basis.sector_range(d));
            let mut dst = out.rows_range_mut(self.basis.sector_range(k));
            dst.gemv(Complex64::new(1.0, 0.0), block, &src, Complex64::new(1.0, 0.0));
        }
        Ok(StateVector::from_dvector(psi.basis(), out))
    }

    /// `<psi|O|psi>` for a normalized state. Real up to roundoff when the
    /// operator is hermitian.
    pub fn expectation(&self, psi: &StateVector) -> Result<Complex64, QdError> {
        if !self.basis.same_space(psi.basis()) {
            return Err(QdError::BasisMismatch);
        }
        if !psi.is_normalized(EXPECTATION_NORM_TOL) {
            return Err(QdError::NotNormalized {
                norm_sq: psi.norm_sq(),
            });
        }
        let applied = self.apply(psi)?;
        psi.inner(&applied)
    }

    /// Assemble the full dense matrix, placing each block at its sector
    /// offsets.
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let n = self.basis.len();
        let mut m = DMatrix::zeros(n, n);
        for (&(d, dp), block) in &self.blocks {
            let r0 = self.basis.sector_range(d).start;
            let c0 = self.basis.sector_range(dp).start;
            m.view_mut((r0, c0), (block.nrows(), block.ncols()))
                .copy_from(block);
        }
        m
    }

    /// Frobenius norm over all blocks.
    pub fn frobenius_norm(&self) -> f64 {
        self.blocks
            .values()
            .map(|b| b.iter().map(|z| z.norm_sqr()).sum::<f64>())
            .sum::<f64>()
            .sqrt()
    }

    /// Block-sparse product `self * other`.
    pub fn matmul(&self, other: &BlockOperator) -> Result<BlockOperator, QdError> {
        if !self.basis.same_space(&other.basis) {
            return Err(QdError::BasisMismatch);
        }
        let range = self.basis.range();
        let mut blocks: BTreeMap<(u32, u32), DMatrix<Complex64>> = BTreeMap::new();
        for (&(i, k), a) in &self.blocks {
            for (&(_, j), b) in other.blocks.range((k, range.n1())..=(k, range.n2())) {
                let prod = a * b;
                blocks
                    .entry((i, j))
                    .and_modify(|acc| *acc += &prod)
                    .or_insert(prod);
            }
        }
        Ok(BlockOperator {
            basis: Arc::clone(&self.basis),
            blocks,
            hermitian: false,
        })
    }

    /// Sum of two operators on the same basis; hermitian iff both are.
    pub fn add(&self, other: &BlockOperator) -> Result<BlockOperator, QdError> {
        self.combine(other, Complex64::new(1.0, 0.0))
    }

    /// Difference `self - other`; hermitian iff both are.
    pub fn sub(&self, other: &BlockOperator) -> Result<BlockOperator, QdError> {
        self.combine(other, Complex64::new(-1.0, 0.0))
    }

    fn combine(&self, other: &BlockOperator, sign: Complex64) -> Result<BlockOperator, QdError> {
        if !self.basis.same_space(&other.basis) {
            return Err(QdError::BasisMismatch);
        }
        let mut blocks = self.blocks.clone();
        for (&key, b) in &other.blocks {
            let scaled = b * sign;
            blocks
                .entry(key)
                .and_modify(|acc| *acc += &scaled)
                .or_insert(scaled);
        }
        Ok(BlockOperator {
            basis: Arc::clone(&self.basis),
            blocks,
            hermitian: self.hermitian && other.hermitian,
        })
    }

    /// Scale by a real factor (preserves hermiticity).
    pub fn scaled(&self, factor: f64) -> BlockOperator {
        let f = Complex64::new(factor, 0.0);
        BlockOperator {
            basis: Arc::clone(&self.basis),
            blocks: self.blocks.iter().map(|(&k, b)| (k, b * f)).collect(),
            hermitian: self.hermitian,
        }
    }
}

/// The dimension observable: `d` times the identity on each sector `d`.
///
/// For a single-sector window this is proportional to the identity and
/// carries no information; with several sectors its expectation value is the
/// effective (generally non-integer) dimension of a state.
pub fn dimension_operator(basis: &Arc<QdBasis>) -> BlockOperator {
    BlockOperator::diagonal(basis, |label| f64::from(label.d()))
}

/// Creation or annihilation operator on mode `i` (1-based, `1 <= i <= d`) of
/// sector `d`.
///
/// Matrix elements are the standard `sqrt(k+1)` / `sqrt(k)`; creation out of
/// the top of the truncated sector maps to zero.
pub fn ladder(
    basis: &Arc<QdBasis>,
    d: u32,
    i: u32,
    kind: LadderKind,
) -> Result<BlockOperator, QdError> {
    let range = basis.range();
    if !range.contains(d) {
        return Err(QdError::SectorOutOfRange {
            d,
            n1: range.n1(),
            n2: range.n2(),
        });
    }
    if i == 0 || i > d {
        return Err(QdError::ModeIndex { d, index: i });
    }
    let mode = (i - 1) as usize;
    let r = basis.sector_range(d);
    let offset = r.start;
    let size = r.len();
    let mut m = DMatrix::zeros(size, size);
    for (col, global) in r.enumerate() {
        let label = basis.label(global);
        let k = label.occ()[mode];
        let (target_k, amp) = match kind {
            LadderKind::Create => (k + 1, f64::from(k + 1).sqrt()),
            LadderKind::Annihilate => {
                if k == 0 {
                    continue; // annihilates the mode vacuum
                }
                (k - 1, f64::from(k).sqrt())
            }
        };
        let mut occ = label.occ().to_vec();
        occ[mode] = target_k;
        let target = BasisLabel::new(d, occ).expect("same sector length");
        match basis.index_of(&target) {
            Some(row) => m[(row - offset, col)] = Complex64::new(amp, 0.0),
            None => debug_assert_eq!(kind, LadderKind::Create), // pushed above the cutoff
        }
    }
    let mut blocks = BTreeMap::new();
    blocks.insert((d, d), m);
    Ok(BlockOperator {
        basis: Arc::clone(basis),
        blocks,
        hermitian: false,
    })
}

/// Frobenius norm of the commutator `[a, b] = ab - ba`.
///
/// Zero (up to roundoff) exactly when the two operators commute; in
/// particular any block-diagonal generalized observable commutes with the
/// dimension operator, so a nonzero value against [`dimension_operator`]
/// certifies genuine cross-sector coupling.
pub fn commutator_norm(a: &BlockOperator, b: &BlockOperator) -> Result<f64, QdError> {
    let ab = a.matmul(b)?;
    let ba = b.matmul(a)?;
    Ok(ab.sub(&ba)?.frobenius_norm())
}
