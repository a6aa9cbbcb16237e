//! Exact spectra and degeneracies of the oscillator over a dimension window,
//! and how the vacuum convention reshapes them.
//!
//! Run with: cargo run --example spectrum_degeneracy

use qd::{
    level_degeneracy, oscillator_hamiltonian, DimRange, EnergyConvention, QdBasis,
};

fn main() {
    let range = DimRange::new(0, 3).unwrap();

    // with every sector ground at d/2, levels are sparse at the bottom and
    // the first degeneracy appears at E = 3/2, shared across two sectors
    println!("unshifted spectrum of window {range}:");
    for twice_energy in 0..=4 {
        let level = level_degeneracy(range, twice_energy, EnergyConvention::Unshifted);
        if level.multiplicity == 0 {
            continue;
        }
        let members: Vec<String> = level.members.iter().map(|m| m.to_string()).collect();
        println!(
            "  E = {:>3}/2  multiplicity {}  [{}]",
            twice_energy,
            level.multiplicity,
            members.join(", ")
        );
    }
    let doublet = level_degeneracy(range, 3, EnergyConvention::Unshifted);
    assert_eq!(doublet.multiplicity, 2);

    // shifting every sector ground to 0 stacks all four grounds onto one
    // level — the degeneracy now counts the sectors themselves
    println!("\nshifted spectrum of the same window:");
    for twice_energy in 0..=4 {
        let level = level_degeneracy(range, twice_energy, EnergyConvention::Shifted);
        if level.multiplicity == 0 {
            continue;
        }
        println!(
            "  E = {:>3}/2  multiplicity {}",
            twice_energy, level.multiplicity
        );
    }
    let ground = level_degeneracy(range, 0, EnergyConvention::Shifted);
    assert_eq!(ground.multiplicity, u64::from(range.width()));

    // the combinatorial counts above are cutoff-free; a truncated matrix
    // must agree on every level it holds completely
    let basis = QdBasis::new(range, 4, EnergyConvention::Unshifted);
    let h = oscillator_hamiltonian(&basis);
    println!("\ncross-check against the K = {} matrix diagonal:", basis.cutoff_k());
    for twice_energy in 0..=6u64 {
        let level = level_degeneracy(range, twice_energy, EnergyConvention::Unshifted);
        if level.members.iter().any(|m| m.total_quanta() > basis.cutoff_k()) {
            continue; // level pokes above the cutoff; the matrix can't see all of it
        }
        let mut diagonal_count = 0;
        for d in range.sectors() {
            let block = h.block(d, d).unwrap();
            diagonal_count += (0..block.nrows())
                .filter(|&i| block[(i, i)].re == twice_energy as f64 / 2.0)
                .count() as u64;
        }
        assert_eq!(level.multiplicity, diagonal_count);
        println!(
            "  2E = {twice_energy}: combinatorial {} == diagonal {}",
            level.multiplicity, diagonal_count
        );
    }
}
