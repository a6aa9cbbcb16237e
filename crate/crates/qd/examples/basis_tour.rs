//! A walk through the direct-sum Hilbert space: build a truncated basis over
//! a window of dimension sectors, look at its labels and layout, and measure
//! dimension on a few states.
//!
//! Run with: cargo run --example basis_tour

use qd::{
    dimension_operator, dimension_variance, BasisLabel, DimRange, EnergyConvention, QdBasis,
    StateVector,
};

fn main() {
    // every state of the model lives in one of the sectors d = 0..=3, each
    // truncated at 2 total quanta
    let range = DimRange::new(0, 3).unwrap();
    let basis = QdBasis::new(range, 2, EnergyConvention::Unshifted);

    println!("window {range}, cutoff K = {}", basis.cutoff_k());
    println!("{} basis kets, ordered by sector then energy:", basis.len());
    for d in range.sectors() {
        let labels: Vec<String> = basis.sector_range(d).map(|i| basis.label(i).to_string()).collect();
        println!("  sector {d}: {}", labels.join("  "));
    }

    // a ket parses back from its wire form, and the basis knows its index
    let ket: BasisLabel = "2;1,0".parse().unwrap();
    println!(
        "\nket {ket} sits at index {} of the enumeration",
        basis.index_of(&ket).unwrap()
    );

    // dimension is an observable: sector states are its eigenstates ...
    let d_op = dimension_operator(&basis);
    let sector_state = StateVector::basis_state(&basis, &ket).unwrap();
    println!(
        "<D> on {ket} = {} (variance {})",
        d_op.expectation(&sector_state).unwrap().re,
        dimension_variance(&sector_state)
    );

    // ... and superpositions across sectors have non-integer dimension
    let mixed = StateVector::superposition(
        &basis,
        &["1;0".parse().unwrap(), "3;0,0,0".parse().unwrap()],
    )
    .unwrap();
    let mean = d_op.expectation(&mixed).unwrap().re;
    println!(
        "<D> on (|1;0> + |3;0,0,0>)/sqrt(2) = {mean} (variance {})",
        dimension_variance(&mixed)
    );
    assert!((mean - 2.0).abs() < 1e-12);

    // sector weights are plain probabilities
    let weights: Vec<f64> = range.sectors().map(|d| mixed.sector_probability(d)).collect();
    println!("sector weights of the superposition: {weights:?}");
}
