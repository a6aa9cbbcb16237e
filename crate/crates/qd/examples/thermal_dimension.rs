//! Thermodynamics with a temperature-dependent effective dimension: the
//! closed forms, their brute-force oracle, and the dimension-vs-energy curve.
//!
//! Run with: cargo run --example thermal_dimension

use qd::{
    brute_force_thermal, default_beta_grid, dim_vs_energy_curve, partition_closed, thermal_point,
    DimRange, EnergyConvention, QdBasis,
};

fn main() {
    let range = DimRange::new(0, 3).unwrap();
    let convention = EnergyConvention::Unshifted;

    // at beta = ln 4 the per-mode factor is exactly 2/3, so everything has
    // a rational value to compare against
    let beta = 4.0f64.ln();
    let z = partition_closed(beta, range, convention).unwrap();
    let pt = thermal_point(beta, range, convention).unwrap();
    println!("beta = ln 4 on window {range}:");
    println!("  Z        = {z:.15}   (65/27 = {:.15})", 65.0 / 27.0);
    println!("  <D>      = {:.15}   (66/65 = {:.15})", pt.mean_dim, 66.0 / 65.0);
    println!("  <H>      = {:.15}", pt.mean_energy);
    assert!((z - 65.0 / 27.0).abs() < 1e-12);
    assert!((pt.mean_dim - 66.0 / 65.0).abs() < 1e-12);

    // the oracle knows nothing of the closed forms: it sums exp(-beta E)
    // over every ket of a deep truncated basis
    let basis = QdBasis::new(range, 200, convention);
    let oracle = brute_force_thermal(beta, &basis);
    println!(
        "  oracle over {} kets: Z = {:.15}, <D> = {:.15}",
        basis.len(),
        oracle.z,
        oracle.mean_dim
    );
    assert!((oracle.z - z).abs() / z < 1e-10);
    assert!((oracle.mean_dim - pt.mean_dim).abs() / pt.mean_dim < 1e-10);

    // cooling empties the window from above, heating saturates it:
    // the effective dimension interpolates the window ends
    let curve = dim_vs_energy_curve(range, convention, &default_beta_grid()).unwrap();
    let cold = curve.points.first().unwrap();
    let hot = curve.points.last().unwrap();
    println!("\ndimension vs energy over {} grid points:", curve.points.len());
    println!(
        "  coldest: beta = {:5.1}, <H> = {:.3e}, <D> = {:.3e}",
        cold.beta, cold.mean_energy, cold.mean_dim
    );
    println!(
        "  hottest: beta = {:5.2}, <H> = {:.3e}, <D> = {:.6}",
        hot.beta, hot.mean_energy, hot.mean_dim
    );
    assert!(cold.mean_dim < 1e-5);
    assert!((hot.mean_dim - 3.0).abs() < 0.02);

    // a compact table of the crossover region
    println!("\n  {:>8}  {:>12}  {:>10}", "beta", "<H>", "<D>");
    for pt in curve.points.iter().filter(|p| p.beta <= 4.0 && p.beta >= 0.2).step_by(12) {
        println!(
            "  {:>8.4}  {:>12.6}  {:>10.6}",
            pt.beta, pt.mean_energy, pt.mean_dim
        );
    }
}
