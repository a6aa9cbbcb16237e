//! Degenerate multiplets and the symmetry structure they imply.
//!
//! Every fixed-d isotropic oscillator carries its own U(d); the window as a
//! whole therefore always has the product of those groups. What the window
//! adds is degeneracy *across* sectors: any unitary mixing of an exactly
//! degenerate multiplet commutes with the free Hamiltonian, and when the
//! multiplet spans several sectors that mixing is a genuinely new (enhanced)
//! symmetry that no fixed-d system has. Which levels are enhanced depends
//! on the vacuum convention — shifting every sector ground to zero makes
//! the ground level itself a window-wide multiplet.
//!
//! The analytic path (exact integer energies, combinatorial multiplicities)
//! is primary; conjugating a truncated Hamiltonian by explicit unitaries is
//! the numerical cross-check.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::basis::{BasisLabel, DimRange, EnergyConvention};
use crate::error::QdError;
use crate::operator::BlockOperator;
use crate::oscillator::level_degeneracy;

/// Unitarity slack accepted on mixing matrices.
pub const UNITARY_TOL: f64 = 1e-10;

/// Frobenius-residual threshold under which a conjugated Hamiltonian counts
/// as invariant.
pub const INVARIANCE_TOL: f64 = 1e-9;

/// One exact energy level viewed as a degenerate multiplet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multiplet {
    /// `2E`, exact.
    pub twice_energy: u64,
    /// Members in canonical basis order.
    pub members: Vec<BasisLabel>,
    /// How many members each sector contributes.
    pub sector_histogram: BTreeMap<u32, u64>,
    /// True iff the members span at least two sectors.
    pub enhanced: bool,
}

impl Multiplet {
    /// Build a multiplet from its members, deriving histogram and flag.
    pub fn new(twice_energy: u64, members: Vec<BasisLabel>) -> Self {
        let mut sector_histogram = BTreeMap::new();
        for member in &members {
            *sector_histogram.entry(member.d()).or_insert(0u64) += 1;
        }
        let enhanced = sector_histogram.len() >= 2;
        Self {
            twice_energy,
            members,
            sector_histogram,
            enhanced,
        }
    }

    pub fn multiplicity(&self) -> u64 {
        self.members.len() as u64
    }
}

/// Per-level symmetry summary: the mixing group a multiplicity implies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelSymmetry {
    pub twice_energy: u64,
    pub multiplicity: u64,
    /// `U(m)` for a multiplicity-`m` level.
    pub group: String,
    pub enhanced: bool,
}

/// Symmetry structure of a window up to an energy ceiling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub range: DimRange,
    pub convention: EnergyConvention,
    /// The always-present product of fixed-sector groups,
    /// `U(n1) × ... × U(n2)` (with `U(0)` trivial).
    pub base_group: String,
    pub per_level: Vec<LevelSymmetry>,
}

/// All occupied levels with `2E ≤ max_twice_energy`, as multiplets. Exact:
/// built from integer energies and combinatorial enumeration, no tolerance.
pub fn spectrum_multiplets(
    range: DimRange,
    convention: EnergyConvention,
    max_twice_energy: u64,
) -> Vec<Multiplet> {
    (0..=max_twice_energy)
        .filter_map(|twice_energy| {
            let level = level_degeneracy(range, twice_energy, convention);
            (level.multiplicity > 0).then(|| Multiplet::new(twice_energy, level.members))
        })
        .collect()
}

/// Symmetry report over a window: the base product group plus one `U(m)`
/// entry per occupied level.
pub fn symmetry_report(
    range: DimRange,
    convention: EnergyConvention,
    max_twice_energy: u64,
) -> SymmetryReport {
    let base_group = range
        .sectors()
        .map(|d| format!("U({d})"))
        .collect::<Vec<_>>()
        .join(" × ");
    let per_level = spectrum_multiplets(range, convention, max_twice_energy)
        .into_iter()
        .map(|m| LevelSymmetry {
            twice_energy: m.twice_energy,
            multiplicity: m.multiplicity(),
            group: format!("U({})", m.multiplicity()),
            enhanced: m.enhanced,
        })
        .collect();
    SymmetryReport {
        range,
        convention,
        base_group,
        per_level,
    }
}

/// Frobenius norm of `U†HU - H`, where `U` acts as `u` on the multiplet
/// members and as the identity elsewhere.
///
/// Zero exactly when the mixing is a symmetry of `h`; for a diagonal `h`
/// the residual instead scales with the energy spread inside the mixed
/// span, so mixing non-degenerate states is loudly visible.
pub fn mixing_residual(
    h: &BlockOperator,
    multiplet: &Multiplet,
    u: &DMatrix<Complex64>,
) -> Result<f64, QdError> {
    let m = multiplet.members.len();
    if u.nrows() != m || u.ncols() != m {
        return Err(QdError::MixingSize {
            m,
            rows: u.nrows(),
            cols: u.ncols(),
        });
    }
    let gram_violation = (u.adjoint() * u - DMatrix::<Complex64>::identity(m, m))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if gram_violation > UNITARY_TOL {
        return Err(QdError::NotUnitary {
            max_violation: gram_violation,
        });
    }
    let basis = h.basis();
    let indices = multiplet
        .members
        .iter()
        .map(|member| {
            basis
                .index_of(member)
                .ok_or_else(|| QdError::LabelNotInBasis(member.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let n = basis.len();
    let mut u_full = DMatrix::<Complex64>::identity(n, n);
    for (p, &ip) in indices.iter().enumerate() {
        u_full[(ip, ip)] = u[(p, p)];
        for (q, &iq) in indices.iter().enumerate() {
            if p != q {
                u_full[(ip, iq)] = u[(p, q)];
            }
        }
    }
    let h_dense = h.to_dense();
    Ok((u_full.adjoint() * &h_dense * &u_full - &h_dense).norm())
}

/// True iff conjugating `h` by the embedded mixing leaves it invariant
/// within [`INVARIANCE_TOL`].
pub fn verify_unitary_mixing(
    h: &BlockOperator,
    multiplet: &Multiplet,
    u: &DMatrix<Complex64>,
) -> Result<bool, QdError> {
    Ok(mixing_residual(h, multiplet, u)? < INVARIANCE_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::QdBasis;
    use crate::oscillator::oscillator_hamiltonian;
    use nalgebra::SymmetricEigen;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const UNSHIFTED: EnergyConvention = EnergyConvention::Unshifted;
    const SHIFTED: EnergyConvention = EnergyConvention::Shifted;

    fn range(n1: u32, n2: u32) -> DimRange {
        DimRange::new(n1, n2).unwrap()
    }

    fn label(s: &str) -> BasisLabel {
        s.parse().unwrap()
    }

    fn haar_like_unitary(m: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
        let raw = DMatrix::from_fn(m, m, |_, _| {
            Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
        });
        raw.qr().q()
    }

    #[test]
    fn doublet_shows_up_as_the_first_enhanced_level() {
        let multiplets = spectrum_multiplets(range(0, 3), UNSHIFTED, 3);
        assert_eq!(multiplets.len(), 4); // 2E = 0, 1, 2, 3 all occupied
        for m in &multiplets[..3] {
            assert_eq!(m.multiplicity(), 1);
            assert!(!m.enhanced);
        }
        let doublet = &multiplets[3];
        assert_eq!(doublet.twice_energy, 3);
        assert_eq!(doublet.members, vec![label("1;1"), label("3;0,0,0")]);
        assert_eq!(
            doublet.sector_histogram,
            BTreeMap::from([(1, 1), (3, 1)])
        );
        assert!(doublet.enhanced);
    }

    #[test]
    fn shifted_spectrum_skips_odd_levels_and_opens_enhanced() {
        let multiplets = spectrum_multiplets(range(0, 3), SHIFTED, 2);
        assert_eq!(multiplets.len(), 2); // 2E = 1 is unoccupied
        assert_eq!(multiplets[0].twice_energy, 0);
        assert_eq!(multiplets[0].multiplicity(), 4);
        assert!(multiplets[0].enhanced);
        assert_eq!(multiplets[1].twice_energy, 2);
        assert_eq!(multiplets[1].multiplicity(), 6);
        assert_eq!(
            multiplets[1].sector_histogram,
            BTreeMap::from([(1, 1), (2, 2), (3, 3)])
        );
    }

    #[test]
    fn report_names_the_base_product_and_per_level_groups() {
        let report = symmetry_report(range(0, 3), UNSHIFTED, 3);
        assert_eq!(report.base_group, "U(0) × U(1) × U(2) × U(3)");
        let groups: Vec<&str> = report.per_level.iter().map(|l| l.group.as_str()).collect();
        assert_eq!(groups, vec!["U(1)", "U(1)", "U(1)", "U(2)"]);
        assert!(report.per_level[3].enhanced);

        let report = symmetry_report(range(0, 3), SHIFTED, 0);
        assert_eq!(report.per_level[0].group, "U(4)");
        assert!(report.per_level[0].enhanced);
    }

    #[test]
    fn single_sector_window_never_enhances() {
        let report = symmetry_report(range(2, 2), UNSHIFTED, 10);
        assert_eq!(report.base_group, "U(2)");
        for (i, level) in report.per_level.iter().enumerate() {
            assert!(!level.enhanced);
            // d = 2 level at quanta n holds n + 1 states
            assert_eq!(level.multiplicity, i as u64 + 1);
        }
    }

    #[test]
    fn vacuum_shift_flips_the_ground_level_structure() {
        for n1 in 0..=5u32 {
            for n2 in n1..=5u32 {
                let unshifted_ground =
                    &spectrum_multiplets(range(n1, n2), UNSHIFTED, u64::from(2 * n2))[0];
                assert_eq!(unshifted_ground.twice_energy, u64::from(n1));
                assert_eq!(unshifted_ground.multiplicity(), 1);
                assert!(!unshifted_ground.enhanced);

                let shifted_ground = &spectrum_multiplets(range(n1, n2), SHIFTED, 0)[0];
                assert_eq!(shifted_ground.multiplicity(), u64::from(n2 - n1 + 1));
                assert_eq!(shifted_ground.enhanced, n1 < n2);
            }
        }
    }

    #[test]
    fn multiplets_match_clustered_eigenvalues_of_the_truncated_hamiltonian() {
        let basis = QdBasis::new(range(0, 3), 4, UNSHIFTED);
        let mut eigen: Vec<f64> = SymmetricEigen::new(oscillator_hamiltonian(&basis).to_dense())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        eigen.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for multiplet in spectrum_multiplets(range(0, 3), UNSHIFTED, 8) {
            if multiplet
                .members
                .iter()
                .any(|m| m.total_quanta() > basis.cutoff_k())
            {
                continue; // level not complete below the cutoff
            }
            let e = multiplet.twice_energy as f64 / 2.0;
            let cluster = eigen.iter().filter(|&&v| (v - e).abs() < 1e-9).count();
            assert_eq!(
                cluster as u64,
                multiplet.multiplicity(),
                "2E = {}",
                multiplet.twice_energy
            );
        }
    }

    #[test]
    fn identity_mixing_is_always_a_symmetry() {
        let basis = QdBasis::new(range(0, 3), 3, UNSHIFTED);
        let h = oscillator_hamiltonian(&basis);
        let doublet = Multiplet::new(3, vec![label("1;1"), label("3;0,0,0")]);
        let u = DMatrix::<Complex64>::identity(2, 2);
        assert!(verify_unitary_mixing(&h, &doublet, &u).unwrap());
    }

    #[test]
    fn degenerate_mixing_is_a_symmetry_but_detuned_mixing_is_not() {
        let basis = QdBasis::new(range(0, 3), 3, UNSHIFTED);
        let h = oscillator_hamiltonian(&basis);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let u = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(s, 0.0),
                Complex64::new(s, 0.0),
                Complex64::new(-s, 0.0),
                Complex64::new(s, 0.0),
            ],
        );

        let degenerate = Multiplet::new(3, vec![label("1;1"), label("3;0,0,0")]);
        assert!(verify_unitary_mixing(&h, &degenerate, &u).unwrap());

        // |1;0> sits a full quantum below |3;0,0,0>; rotating them by 45°
        // moves diagonal energy by ±1/2 and seeds 1/2 off-diagonals
        let detuned = Multiplet::new(1, vec![label("1;0"), label("3;0,0,0")]);
        let residual = mixing_residual(&h, &detuned, &u).unwrap();
        assert!((residual - 1.0).abs() < 1e-12, "residual = {residual}");
        assert!(!verify_unitary_mixing(&h, &detuned, &u).unwrap());
    }

    #[test]
    fn random_multiplet_unitaries_leave_h_invariant() {
        let basis = QdBasis::new(range(0, 3), 3, UNSHIFTED);
        let h = oscillator_hamiltonian(&basis);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for multiplet in spectrum_multiplets(range(0, 3), UNSHIFTED, 6) {
            if multiplet
                .members
                .iter()
                .any(|m| m.total_quanta() > basis.cutoff_k())
            {
                continue;
            }
            let m = multiplet.members.len();
            for _ in 0..5 {
                let u = haar_like_unitary(m, &mut rng);
                assert!(
                    verify_unitary_mixing(&h, &multiplet, &u).unwrap(),
                    "2E = {}",
                    multiplet.twice_energy
                );
            }
        }
    }

    #[test]
    fn cross_level_mixing_is_rejected_by_the_residual() {
        let basis = QdBasis::new(range(0, 3), 3, UNSHIFTED);
        let h = oscillator_hamiltonian(&basis);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        // |1;0> and |1;1> sit one quantum apart in the same sector
        let fake = Multiplet::new(1, vec![label("1;0"), label("1;1")]);
        for _ in 0..5 {
            let u = haar_like_unitary(2, &mut rng);
            // a random draw can land near-diagonal; only genuine mixing
            // must fail, so skip draws that barely couple the pair
            if u[(0, 1)].norm() < 0.1 {
                continue;
            }
            assert!(!verify_unitary_mixing(&h, &fake, &u).unwrap());
        }
    }

    #[test]
    fn mixing_validates_its_inputs() {
        let basis = QdBasis::new(range(0, 3), 3, UNSHIFTED);
        let h = oscillator_hamiltonian(&basis);
        let doublet = Multiplet::new(3, vec![label("1;1"), label("3;0,0,0")]);

        let wrong_size = DMatrix::<Complex64>::identity(3, 3);
        assert!(matches!(
            verify_unitary_mixing(&h, &doublet, &wrong_size),
            Err(QdError::MixingSize { m: 2, rows: 3, cols: 3 })
        ));

        let not_unitary = DMatrix::<Complex64>::identity(2, 2) * Complex64::new(2.0, 0.0);
        assert!(matches!(
            verify_unitary_mixing(&h, &doublet, &not_unitary),
            Err(QdError::NotUnitary { .. })
        ));

        let outside = Multiplet::new(11, vec![label("1;5"), label("3;1,1,2")]);
        let u = DMatrix::<Complex64>::identity(2, 2);
        assert!(matches!(
            verify_unitary_mixing(&h, &outside, &u),
            Err(QdError::LabelNotInBasis(_))
        ));
    }
}
