//! State vectors over a truncated direct-sum basis.

use std::sync::Arc;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::basis::{BasisLabel, QdBasis};
use crate::error::QdError;

/// Normalization slack accepted by [`StateVector::normalize`] checks.
pub const NORM_TOL: f64 = 1e-12;

/// Complex amplitudes over a [`QdBasis`], one per basis label.
///
/// A state may be a superposition of kets living in different numbers of
/// spatial dimensions; the sector decomposition is read off through
/// [`StateVector::sector_probability`].
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    basis: Arc<QdBasis>,
    amps: DVector<Complex64>,
}

impl StateVector {
    /// The zero vector (not a physical state until amplitudes are set).
    pub fn zero(basis: &Arc<QdBasis>) -> Self {
        Self {
            basis: Arc::clone(basis),
            amps: DVector::zeros(basis.len()),
        }
    }

    /// The basis ket `|label>`.
    pub fn basis_state(basis: &Arc<QdBasis>, label: &BasisLabel) -> Result<Self, QdError> {
        let idx = basis
            .index_of(label)
            .ok_or_else(|| QdError::LabelNotInBasis(label.clone()))?;
        let mut s = Self::zero(basis);
        s.amps[idx] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    /// A normalized equal-phase superposition of the given basis kets.
    pub fn superposition(basis: &Arc<QdBasis>, labels: &[BasisLabel]) -> Result<Self, QdError> {
        let mut s = Self::zero(basis);
        for label in labels {
            let idx = basis
                .index_of(label)
                .ok_or_else(|| QdError::LabelNotInBasis(label.clone()))?;
            s.amps[idx] += Complex64::new(1.0, 0.0);
        }
        s.normalize()?;
        Ok(s)
    }

    /// Wrap an amplitude vector; the length must match the basis.
    pub fn from_amplitudes(
        basis: &Arc<QdBasis>,
        amps: Vec<Complex64>,
    ) -> Result<Self, QdError> {
        if amps.len() != basis.len() {
            return Err(QdError::AmplitudeCount {
                expected: basis.len(),
                got: amps.len(),
            });
        }
        Ok(Self {
            basis: Arc::clone(basis),
            amps: DVector::from_vec(amps),
        })
    }

    pub fn basis(&self) -> &Arc<QdBasis> {
        &self.basis
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub(crate) fn from_dvector(basis: &Arc<QdBasis>, amps: DVector<Complex64>) -> Self {
        debug_assert_eq!(amps.len(), basis.len());
        Self {
            basis: Arc::clone(basis),
            amps,
        }
    }

    /// Squared norm `sum |amp|^2`.
    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Whether the state is normalized within `tol` on `sum |amp|^2`.
    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sq() - 1.0).abs() <= tol
    }

    /// Scale to unit norm. Fails on the zero vector.
    pub fn normalize(&mut self) -> Result<(), QdError> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(QdError::NotNormalized { norm_sq: n * n });
        }
        self.amps /= Complex64::new(n, 0.0);
        Ok(())
    }

    /// Inner product `<self|other>` (conjugate-linear in `self`).
    pub fn inner(&self, other: &StateVector) -> Result<Complex64, QdError> {
        if !self.basis.same_space(&other.basis) {
            return Err(QdError::BasisMismatch);
        }
        Ok(self.amps.dotc(&other.amps))
    }

    /// Probability weight carried by sector `d`.
    pub fn sector_probability(&self, d: u32) -> f64 {
        if !self.basis.range().contains(d) {
            return 0.0;
        }
        self.basis
            .sector_range(d)
            .map(|i| self.amps[i].norm_sqr())
            .sum()
    }
}
