//! Dimension changing in time: without cross-sector coupling the dimension
//! is a constant of motion; with it, a degenerate pair oscillates like a
//! textbook two-level system.
//!
//! Run with: cargo run --example dimension_dynamics

use qd::{
    commutator_norm, dimension_operator, evolve, hopping_interaction, oscillator_hamiltonian,
    DimRange, EnergyConvention, QdBasis, StateVector,
};

fn main() {
    let basis = QdBasis::new(DimRange::new(0, 3).unwrap(), 2, EnergyConvention::Unshifted);
    let h0 = oscillator_hamiltonian(&basis);
    let d_op = dimension_operator(&basis);

    // the free Hamiltonian commutes with dimension ...
    println!(
        "|[H0, D]| = {:.2e}",
        commutator_norm(&h0, &d_op).unwrap()
    );

    // ... so free evolution leaves sector weights alone, even for a state
    // smeared across sectors
    let times: Vec<f64> = (0..=100).map(|i| i as f64).collect();
    let smeared = StateVector::superposition(
        &basis,
        &["0;".parse().unwrap(), "3;0,0,0".parse().unwrap()],
    )
    .unwrap();
    let free = evolve(&h0, &smeared, &times).unwrap();
    let drift = free
        .mean_dim
        .iter()
        .map(|d| (d - free.mean_dim[0]).abs())
        .fold(0.0, f64::max);
    println!("free evolution: max |<D>(t) - <D>(0)| = {drift:.2e}");
    assert!(drift < 1e-9);

    // couple the degenerate pair |1;1> <-> |3;0,0,0> with amplitude g: the
    // commutator turns on and the dimension starts to move
    let g = 0.1;
    let pair = ("1;1".parse().unwrap(), "3;0,0,0".parse().unwrap());
    let hop = hopping_interaction(&basis, g, &[pair]).unwrap();
    let h = h0.add(&hop).unwrap();
    println!(
        "\nwith hopping g = {g}: |[H, D]| = {:.6} (= 2*sqrt(2)*g = {:.6})",
        commutator_norm(&h, &d_op).unwrap(),
        8.0f64.sqrt() * g
    );

    // starting in the d = 1 member, the mean dimension swings between the
    // two sector values with period pi/g — and the exact two-level formula
    // 2 - cos(2 g t) tracks it everywhere
    let psi0 = StateVector::basis_state(&basis, &"1;1".parse().unwrap()).unwrap();
    let trajectory = evolve(&h, &psi0, &times).unwrap();
    let mut worst = 0.0f64;
    for (&t, &dim) in times.iter().zip(&trajectory.mean_dim) {
        worst = worst.max((dim - (2.0 - (2.0 * g * t).cos())).abs());
    }
    println!("two-level oracle error over t in [0, 100]: {worst:.2e}");
    assert!(worst < 1e-8);

    println!("\n  {:>5}  {:>8}  {:>12}", "t", "<D>(t)", "norm drift");
    for (i, &t) in times.iter().enumerate().step_by(10) {
        println!(
            "  {:>5.0}  {:>8.5}  {:>12.2e}",
            t,
            trajectory.mean_dim[i],
            (trajectory.norm[i] - 1.0).abs()
        );
    }

    let max_norm_drift = trajectory
        .norm
        .iter()
        .map(|n| (n - 1.0).abs())
        .fold(0.0, f64::max);
    assert!(max_norm_drift < 1e-9, "evolution must stay unitary");
}
