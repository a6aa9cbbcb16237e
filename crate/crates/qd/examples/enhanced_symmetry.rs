//! Cross-sector degeneracy as symmetry: multiplets that span several
//! dimensions admit unitary mixing that a fixed-dimension system cannot.
//!
//! Run with: cargo run --example enhanced_symmetry

use nalgebra::DMatrix;
use num_complex::Complex64;
use qd::{
    mixing_residual, oscillator_hamiltonian, spectrum_multiplets, symmetry_report,
    verify_unitary_mixing, DimRange, EnergyConvention, Multiplet, QdBasis,
};

fn main() {
    let range = DimRange::new(0, 3).unwrap();

    // the report names the always-present product of per-sector groups and
    // the U(m) a multiplicity-m level adds on top
    for convention in [EnergyConvention::Unshifted, EnergyConvention::Shifted] {
        let report = symmetry_report(range, convention, 3);
        println!("{convention:?} window {range}: base group {}", report.base_group);
        for level in &report.per_level {
            println!(
                "  2E = {}  {}  {}",
                level.twice_energy,
                level.group,
                if level.enhanced { "enhanced (spans sectors)" } else { "within one sector" }
            );
        }
        println!();
    }

    // the first unshifted enhanced level: |1;1> and |3;0,0,0> at E = 3/2
    let multiplets = spectrum_multiplets(range, EnergyConvention::Unshifted, 3);
    let doublet = multiplets.last().unwrap().clone();
    assert!(doublet.enhanced);
    println!(
        "doublet at E = 3/2: {:?}, sectors {:?}",
        doublet.members.iter().map(ToString::to_string).collect::<Vec<_>>(),
        doublet.sector_histogram
    );

    // rotating the degenerate pair by 45 degrees commutes with H ...
    let basis = QdBasis::new(range, 3, EnergyConvention::Unshifted);
    let h = oscillator_hamiltonian(&basis);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let rotate = DMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(s, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(-s, 0.0),
            Complex64::new(s, 0.0),
        ],
    );
    let ok = verify_unitary_mixing(&h, &doublet, &rotate).unwrap();
    println!(
        "mixing the degenerate pair: residual {:.3e} -> invariant = {ok}",
        mixing_residual(&h, &doublet, &rotate).unwrap()
    );
    assert!(ok);

    // ... while the same rotation applied to a NON-degenerate pair shifts
    // energies around and is caught immediately
    let detuned = Multiplet::new(
        1,
        vec!["1;0".parse().unwrap(), "3;0,0,0".parse().unwrap()],
    );
    let residual = mixing_residual(&h, &detuned, &rotate).unwrap();
    println!(
        "mixing a non-degenerate pair: residual {residual:.3} -> invariant = {}",
        verify_unitary_mixing(&h, &detuned, &rotate).unwrap()
    );
    assert!(residual > 0.1);

    // the shifted ground multiplet collects one ground per sector, so its
    // mixing group grows with the window itself
    let ground = &spectrum_multiplets(range, EnergyConvention::Shifted, 0)[0];
    println!(
        "\nshifted ground multiplet: {} members -> U({}) mixing across all sectors",
        ground.multiplicity(),
        ground.multiplicity()
    );
    assert_eq!(ground.multiplicity(), u64::from(range.width()));
}
