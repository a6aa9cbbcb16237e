//! Quantum mechanics in which the spatial dimension is itself an observable.
//!
//! The Hilbert space is a direct sum of fixed-dimension sectors
//! `⊕_{d=n1}^{n2} ℋ^(d)`, where `ℋ^(d)` carries a `d`-dimensional harmonic
//! oscillator (the `d = 0` sector is one-dimensional). The dimension operator
//! `D̂` acts as `d` on each sector, so states may be superpositions of
//! distinct dimensions and `⟨D̂⟩` need not be an integer.
//!
//! What the crate computes:
//!
//! - [`basis`]: sector windows, occupation-number labels, and the canonical
//!   ordering of the direct-sum basis.
//! - [`operator`]: block matrices keyed by sector pairs, ladder operators,
//!   and commutator norms.
//! - [`oscillator`]: exact integer spectra (`2E` is always an integer in
//!   either energy convention) and closed-form level degeneracies.
//! - [`thermo`]: canonical partition functions, the thermal mean dimension
//!   `⟨D̂⟩(β)`, and a brute-force summation oracle for cross-checking.
//! - [`symmetry`]: degenerate multiplets that span several sectors, the
//!   enhanced symmetry they signal, and unitary-mixing residual checks.
//! - [`dynamics`]: exact eigendecomposition evolution under dimension-mixing
//!   interactions, tracking `⟨D̂⟩(t)` and norm.
//! - [`cli`]: the subcommand layer behind the `qd` binary, with
//!   deterministic CSV/JSON output.
//!
//! Labels are written `d;k1,...,kd` (e.g. `1;1` or `3;0,0,0`): the sector
//! dimension, then one occupation number per mode.

pub mod basis;
pub mod cli;
pub mod combinatorics;
pub mod dynamics;
pub mod error;
pub mod operator;
pub mod oscillator;
pub mod state;
pub mod symmetry;
pub mod thermo;

pub use basis::{BasisLabel, DimRange, EnergyConvention, QdBasis};
pub use dynamics::{
    dimension_variance, evolve, evolve_guarded, hopping_interaction, Trajectory,
    DEFAULT_DIM_GUARD,
};
pub use error::QdError;
pub use operator::{
    commutator_norm, dimension_operator, ladder, BlockOperator, LadderKind,
};
pub use oscillator::{
    energy_of, level_degeneracy, oscillator_hamiltonian, twice_energy_of, z1, EnergyLevel,
};
pub use state::StateVector;
pub use symmetry::{
    mixing_residual, spectrum_multiplets, symmetry_report, verify_unitary_mixing, LevelSymmetry,
    Multiplet, SymmetryReport,
};
pub use thermo::{
    brute_force_thermal, default_beta_grid, dim_vs_energy_curve, energy_per_dimension,
    mode_partition, partition_closed, thermal_point, ThermalCurve, ThermalPoint,
};
