//! The isotropic oscillator with a dimension window: exact spectrum, exact
//! level degeneracies, and the single-mode partition function.
//!
//! Energies are half-integers, so they are carried as the exact integer `2E`
//! and degeneracy grouping never needs a floating-point tolerance. Two
//! independent paths to the spectrum exist on purpose: the combinatorial one
//! here ([`level_degeneracy`], cutoff-free) and the truncated-matrix diagonal
//! of [`oscillator_hamiltonian`]; tests hold them against each other.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::basis::{BasisLabel, DimRange, EnergyConvention, QdBasis};
use crate::combinatorics::compositions;
use crate::error::QdError;
use crate::operator::BlockOperator;

/// All states at one exact energy, across every sector of a window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnergyLevel {
    /// `2E`, exact.
    pub twice_energy: u64,
    /// `members.len()`, kept explicit for reports.
    pub multiplicity: u64,
    /// Every basis ket at this energy, in canonical basis order.
    pub members: Vec<BasisLabel>,
}

/// Exact `2E` of one basis ket: `d + 2·Σk` unshifted, `2·Σk` shifted.
pub fn twice_energy_of(label: &BasisLabel, convention: EnergyConvention) -> u64 {
    let twice_quanta = 2 * u64::from(label.total_quanta());
    match convention {
        EnergyConvention::Unshifted => u64::from(label.d()) + twice_quanta,
        EnergyConvention::Shifted => twice_quanta,
    }
}

/// Energy as a float, `twice_energy_of / 2`.
pub fn energy_of(label: &BasisLabel, convention: EnergyConvention) -> f64 {
    twice_energy_of(label, convention) as f64 / 2.0
}

/// The free Hamiltonian: block-diagonal and diagonal in the occupation
/// basis, with entries [`energy_of`] under the basis convention.
pub fn oscillator_hamiltonian(basis: &Arc<QdBasis>) -> BlockOperator {
    let convention = basis.convention();
    BlockOperator::diagonal(basis, |label| energy_of(label, convention))
}

/// Quanta count `n` a sector-`d` state must carry to sit at `2E`, if any.
///
/// Unshifted needs `2E - d` nonnegative and even; shifted needs `2E` even
/// (the same `n` then works in every sector). `None` means sector `d` does
/// not touch the level.
fn sector_quanta(d: u32, twice_energy: u64, convention: EnergyConvention) -> Option<u32> {
    let twice_quanta = match convention {
        EnergyConvention::Unshifted => twice_energy.checked_sub(u64::from(d))?,
        EnergyConvention::Shifted => twice_energy,
    };
    if twice_quanta % 2 != 0 {
        return None;
    }
    Some(u32::try_from(twice_quanta / 2).expect("quanta count fits u32"))
}

/// Exact degeneracy of the level `2E` over a dimension window, cutoff-free.
///
/// Sector `d` contributes `C(n+d-1, d-1)` states (one per weak composition
/// of its quanta count `n` into `d` parts; for `d = 0` only the empty state
/// at `n = 0`). A level no sector touches comes back with multiplicity 0.
pub fn level_degeneracy(
    range: DimRange,
    twice_energy: u64,
    convention: EnergyConvention,
) -> EnergyLevel {
    let mut members = Vec::new();
    for d in range.sectors() {
        let Some(n) = sector_quanta(d, twice_energy, convention) else {
            continue;
        };
        for occ in compositions(n, d) {
            members.push(BasisLabel::new(d, occ).expect("composition has d parts"));
        }
    }
    EnergyLevel {
        twice_energy,
        multiplicity: members.len() as u64,
        members,
    }
}

/// Single-mode partition function `e^{-beta/2} / (1 - e^{-beta})`.
///
/// `1 - e^{-beta}` is evaluated as `-expm1(-beta)`, which stays fully
/// accurate down to tiny `beta` (where the value approaches `1/beta`) and
/// decays cleanly to `e^{-beta/2}` at large `beta`; no series crossover is
/// needed.
pub fn z1(beta: f64) -> Result<f64, QdError> {
    if !beta.is_finite() || beta <= 0.0 {
        return Err(QdError::InvalidBeta(beta));
    }
    Ok((-beta / 2.0).exp() / -(-beta).exp_m1())
}
