//! Canonical-ensemble thermodynamics over a dimension window.
//!
//! Everything factorizes through the single-mode partition function: with
//! `x` the per-mode factor, the full partition function is the finite sum
//! `Z = Σ_{d=n1}^{n2} x^d`, the thermal effective dimension is the weighted
//! mean `⟨D⟩ = Σ d·x^d / Z`, and the mean energy splits as
//! `⟨H⟩ = ⟨D⟩·ε(β)` with `ε` the per-mode thermal energy. Closed forms are
//! the primary path; [`brute_force_thermal`] recomputes the same three
//! numbers by explicit summation over a truncated basis and exists to hold
//! the closed forms to account.
//!
//! `x` exceeds 1 at high temperature, so ratio numerators and denominators
//! are rescaled by `x^{-n2}` before summing; the reported `Z` itself is the
//! raw sum, which stays finite for any desk-scale window.

use serde::{Deserialize, Serialize};

use crate::basis::{DimRange, EnergyConvention, QdBasis};
use crate::error::QdError;
use crate::oscillator::{energy_of, z1};

/// Thermal state summary at one inverse temperature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermalPoint {
    pub beta: f64,
    /// Partition function `Z(beta)`.
    pub z: f64,
    /// Effective dimension `⟨D⟩`.
    pub mean_dim: f64,
    /// Mean energy `⟨H⟩`.
    pub mean_energy: f64,
}

/// A dimension-vs-energy curve: thermal points ordered by descending beta,
/// i.e. by increasing mean energy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThermalCurve {
    pub range: DimRange,
    pub convention: EnergyConvention,
    pub points: Vec<ThermalPoint>,
}

/// Per-mode partition factor `x`: the single-mode partition function under
/// the given vacuum convention.
pub fn mode_partition(beta: f64, convention: EnergyConvention) -> Result<f64, QdError> {
    match convention {
        EnergyConvention::Unshifted => z1(beta),
        EnergyConvention::Shifted => {
            if !beta.is_finite() || beta <= 0.0 {
                return Err(QdError::InvalidBeta(beta));
            }
            Ok(1.0 / -(-beta).exp_m1())
        }
    }
}

/// Per-mode thermal energy `ε(β)`: `1/2 + 1/(e^β - 1)` unshifted (the
/// coth form), `1/(e^β - 1)` shifted. Evaluated via `expm1` so both limits
/// are clean.
pub fn energy_per_dimension(beta: f64, convention: EnergyConvention) -> Result<f64, QdError> {
    if !beta.is_finite() || beta <= 0.0 {
        return Err(QdError::InvalidBeta(beta));
    }
    let excitation = 1.0 / beta.exp_m1();
    Ok(match convention {
        EnergyConvention::Unshifted => 0.5 + excitation,
        EnergyConvention::Shifted => excitation,
    })
}

/// Closed-form partition function `Z = Σ_{d=n1}^{n2} x^d`.
pub fn partition_closed(
    beta: f64,
    range: DimRange,
    convention: EnergyConvention,
) -> Result<f64, QdError> {
    let x = mode_partition(beta, convention)?;
    Ok(range.sectors().map(|d| x.powi(d as i32)).sum())
}

/// Closed-form thermal point: `Z`, `⟨D⟩` as the scaled weighted mean over
/// sectors, and `⟨H⟩ = ⟨D⟩·ε(β)`.
pub fn thermal_point(
    beta: f64,
    range: DimRange,
    convention: EnergyConvention,
) -> Result<ThermalPoint, QdError> {
    let x = mode_partition(beta, convention)?;
    // scale weights by x^{-n2} when x > 1 so powers shrink instead of grow
    let anchor = if x > 1.0 { range.n2() as i32 } else { 0 };
    let mut weight_sum = 0.0;
    let mut dim_sum = 0.0;
    for d in range.sectors() {
        let w = x.powi(d as i32 - anchor);
        weight_sum += w;
        dim_sum += f64::from(d) * w;
    }
    let mean_dim = dim_sum / weight_sum;
    Ok(ThermalPoint {
        beta,
        z: range.sectors().map(|d| x.powi(d as i32)).sum(),
        mean_dim,
        mean_energy: mean_dim * energy_per_dimension(beta, convention)?,
    })
}

/// Independent oracle: explicit `Σ e^{-βE}` over every label of a truncated
/// basis, with compensated summation so million-label bases keep full
/// double precision.
pub fn brute_force_thermal(beta: f64, basis: &QdBasis) -> ThermalPoint {
    debug_assert!(beta.is_finite() && beta > 0.0);
    let convention = basis.convention();
    let mut z = Kahan::default();
    let mut dim = Kahan::default();
    let mut energy = Kahan::default();
    for label in basis.labels() {
        let e = energy_of(label, convention);
        let w = (-beta * e).exp();
        z.add(w);
        dim.add(f64::from(label.d()) * w);
        energy.add(e * w);
    }
    ThermalPoint {
        beta,
        z: z.value(),
        mean_dim: dim.value() / z.value(),
        mean_energy: energy.value() / z.value(),
    }
}

/// Evaluate the curve on a beta grid: validates and sorts the grid
/// descending, drops exact duplicates, and emits one point per beta so the
/// points run from low to high mean energy.
pub fn dim_vs_energy_curve(
    range: DimRange,
    convention: EnergyConvention,
    beta_grid: &[f64],
) -> Result<ThermalCurve, QdError> {
    if beta_grid.is_empty() {
        return Err(QdError::EmptyBetaGrid);
    }
    for &beta in beta_grid {
        if !beta.is_finite() || beta <= 0.0 {
            return Err(QdError::InvalidBeta(beta));
        }
    }
    let mut grid = beta_grid.to_vec();
    grid.sort_by(|a, b| b.partial_cmp(a).expect("grid validated finite"));
    grid.dedup();
    let points = grid
        .iter()
        .map(|&beta| thermal_point(beta, range, convention))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ThermalCurve {
        range,
        convention,
        points,
    })
}

/// Default curve grid: 400 log-spaced betas from 50 down to 1e-2, covering
/// both asymptotes of the curve.
pub fn default_beta_grid() -> Vec<f64> {
    const POINTS: usize = 400;
    const TOP: f64 = 50.0;
    const BOTTOM: f64 = 1e-2;
    (0..POINTS)
        .map(|i| TOP * (BOTTOM / TOP).powf(i as f64 / (POINTS - 1) as f64))
        .collect()
}

/// Kahan compensated accumulator.
#[derive(Default)]
struct Kahan {
    sum: f64,
    compensation: f64,
}

impl Kahan {
    fn add(&mut self, v: f64) {
        let y = v - self.compensation;
        let t = self.sum + y;
        self.compensation = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use approx::assert_relative_eq;

    fn range(n1: u32, n2: u32) -> DimRange {
        DimRange::new(n1, n2).unwrap()
    }

    const UNSHIFTED: EnergyConvention = EnergyConvention::Unshifted;
    const SHIFTED: EnergyConvention = EnergyConvention::Shifted;

    #[test]
    fn reference_point_at_beta_ln_four() {
        // x = 2/3 exactly, so Z = 65/27 and ⟨D⟩ = 66/65
        let beta = 4.0f64.ln();
        let z = partition_closed(beta, range(0, 3), UNSHIFTED).unwrap();
        assert_relative_eq!(z, 65.0 / 27.0, max_relative = 1e-14);
        let pt = thermal_point(beta, range(0, 3), UNSHIFTED).unwrap();
        assert_relative_eq!(pt.z, 65.0 / 27.0, max_relative = 1e-14);
        assert_relative_eq!(pt.mean_dim, 66.0 / 65.0, max_relative = 1e-14);
        // ε(ln 4) = 1/2 + 1/3 = 5/6
        assert_relative_eq!(pt.mean_energy, 66.0 / 65.0 * 5.0 / 6.0, max_relative = 1e-14);
    }

    #[test]
    fn single_sector_window_pins_the_dimension() {
        for beta in [0.05, 1.0, 17.3] {
            let pt = thermal_point(beta, range(2, 2), UNSHIFTED).unwrap();
            assert_eq!(pt.mean_dim, 2.0);
            assert_relative_eq!(pt.z, z1(beta).unwrap().powi(2), max_relative = 1e-15);
            let pt = thermal_point(beta, range(1, 1), SHIFTED).unwrap();
            assert_eq!(pt.mean_dim, 1.0);
        }
    }

    #[test]
    fn cold_limit_empties_the_window_from_above() {
        let pt = thermal_point(50.0, range(0, 3), UNSHIFTED).unwrap();
        assert!(pt.mean_dim < 1e-5);
        assert!(pt.mean_energy < 1e-5);
        assert_relative_eq!(pt.z, 1.0, max_relative = 1e-10);
    }

    #[test]
    fn hot_limit_saturates_the_window_from_below() {
        let pt = thermal_point(0.01, range(0, 3), UNSHIFTED).unwrap();
        assert!((pt.mean_dim - 3.0).abs() < 0.02);
    }

    #[test]
    fn brute_force_matches_closed_form_on_a_truncated_basis() {
        for convention in [UNSHIFTED, SHIFTED] {
            let basis = QdBasis::new(range(0, 3), 200, convention);
            for beta in [0.5, 1.0, 4.0f64.ln(), 7.0, 50.0] {
                let closed = thermal_point(beta, range(0, 3), convention).unwrap();
                let brute = brute_force_thermal(beta, &basis);
                assert_relative_eq!(closed.z, brute.z, max_relative = 1e-10);
                assert_relative_eq!(closed.mean_dim, brute.mean_dim, max_relative = 1e-10);
                if closed.mean_energy.abs() > 1e-300 {
                    assert_relative_eq!(
                        closed.mean_energy,
                        brute.mean_energy,
                        max_relative = 1e-10
                    );
                }
            }
        }
    }

    #[test]
    fn truncation_error_shrinks_monotonically_with_cutoff() {
        // warm enough that even the K = 80 tail (~4e-13) dwarfs roundoff
        let beta = 0.5;
        let exact = partition_closed(beta, range(0, 3), UNSHIFTED).unwrap();
        let mut last = f64::INFINITY;
        for k in [10, 20, 40, 80] {
            let basis = QdBasis::new(range(0, 3), k, UNSHIFTED);
            let err = (exact - brute_force_thermal(beta, &basis).z).abs();
            assert!(err < last, "K = {k}: {err} !< {last}");
            last = err;
        }
    }

    #[test]
    fn single_label_basis_is_its_own_thermal_state() {
        let basis = QdBasis::new(range(2, 2), 0, UNSHIFTED);
        assert_eq!(basis.len(), 1);
        let pt = brute_force_thermal(3.0, &basis);
        assert_eq!(pt.mean_dim, 2.0);
        assert_eq!(pt.mean_energy, 1.0);
    }

    #[test]
    fn energy_factorizes_through_the_per_mode_energy() {
        // the oracle computes Σ E·w independently, so this checks the
        // ⟨H⟩ = ⟨D⟩·ε(β) identity rather than restating the closed form
        for convention in [UNSHIFTED, SHIFTED] {
            let basis = QdBasis::new(range(0, 3), 120, convention);
            for beta in [0.7, 1.3, 2.9] {
                let pt = brute_force_thermal(beta, &basis);
                let eps = energy_per_dimension(beta, convention).unwrap();
                assert_relative_eq!(pt.mean_energy, pt.mean_dim * eps, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn mean_energy_matches_the_log_derivative_of_z() {
        for convention in [UNSHIFTED, SHIFTED] {
            for (n1, n2) in [(0, 3), (1, 4)] {
                for beta in [0.5, 4.0f64.ln(), 2.0, 5.0] {
                    let h = 1e-5 * beta;
                    let ln_z = |b: f64| {
                        partition_closed(b, range(n1, n2), convention)
                            .unwrap()
                            .ln()
                    };
                    let fd = -(ln_z(beta + h) - ln_z(beta - h)) / (2.0 * h);
                    let pt = thermal_point(beta, range(n1, n2), convention).unwrap();
                    assert_relative_eq!(pt.mean_energy, fd, max_relative = 1e-6);
                }
            }
        }
    }

    #[test]
    fn mean_dim_stays_inside_the_window() {
        for convention in [UNSHIFTED, SHIFTED] {
            for (n1, n2) in [(0, 3), (1, 4), (2, 2)] {
                for &beta in &default_beta_grid() {
                    let pt = thermal_point(beta, range(n1, n2), convention).unwrap();
                    assert!(pt.mean_dim >= f64::from(n1) - 1e-12);
                    assert!(pt.mean_dim <= f64::from(n2) + 1e-12);
                    let floor = match convention {
                        UNSHIFTED => f64::from(n1) / 2.0,
                        SHIFTED => 0.0,
                    };
                    assert!(pt.mean_energy >= floor - 1e-12);
                }
            }
        }
    }

    #[test]
    fn curve_runs_monotonically_from_cold_to_hot() {
        for convention in [UNSHIFTED, SHIFTED] {
            let curve =
                dim_vs_energy_curve(range(0, 3), convention, &default_beta_grid()).unwrap();
            assert_eq!(curve.points.len(), 400);
            for pair in curve.points.windows(2) {
                assert!(pair[0].beta > pair[1].beta);
                assert!(pair[0].mean_energy < pair[1].mean_energy);
                assert!(pair[0].mean_dim <= pair[1].mean_dim);
            }
        }
    }

    #[test]
    fn curve_sorts_and_dedups_its_grid() {
        let curve =
            dim_vs_energy_curve(range(0, 2), UNSHIFTED, &[1.0, 3.0, 1.0, 2.0]).unwrap();
        let betas: Vec<f64> = curve.points.iter().map(|p| p.beta).collect();
        assert_eq!(betas, vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn curve_rejects_bad_grids() {
        assert_eq!(
            dim_vs_energy_curve(range(0, 2), UNSHIFTED, &[]),
            Err(QdError::EmptyBetaGrid)
        );
        assert_eq!(
            dim_vs_energy_curve(range(0, 2), UNSHIFTED, &[1.0, -2.0]),
            Err(QdError::InvalidBeta(-2.0))
        );
        assert!(dim_vs_energy_curve(range(0, 2), UNSHIFTED, &[f64::NAN]).is_err());
    }

    #[test]
    fn wider_windows_sit_higher_at_equal_energy() {
        // compare curves at shared probe energies via linear interpolation
        // in (mean_energy, mean_dim)
        let grid = default_beta_grid();
        let dim_at = |n2: u32, e: f64| -> f64 {
            let curve = dim_vs_energy_curve(range(0, n2), UNSHIFTED, &grid).unwrap();
            let pts = &curve.points;
            let j = pts
                .iter()
                .position(|p| p.mean_energy >= e)
                .expect("probe energy inside curve range");
            assert!(j > 0, "probe energy above the cold end");
            let (a, b) = (&pts[j - 1], &pts[j]);
            let t = (e - a.mean_energy) / (b.mean_energy - a.mean_energy);
            a.mean_dim + t * (b.mean_dim - a.mean_dim)
        };
        for e in [0.3, 0.5, 1.0, 1.5, 3.0] {
            let d2 = dim_at(2, e);
            let d3 = dim_at(3, e);
            let d5 = dim_at(5, e);
            assert!(d2 < d3 && d3 < d5, "E = {e}: {d2} {d3} {d5}");
        }
    }

    #[test]
    fn default_grid_shape() {
        let grid = default_beta_grid();
        assert_eq!(grid.len(), 400);
        assert_abs_diff_eq!(grid[0], 50.0, epsilon = 1e-12);
        assert_abs_diff_eq!(grid[399], 1e-2, epsilon = 1e-14);
        assert!(grid.windows(2).all(|w| w[0] > w[1]));
    }
}
