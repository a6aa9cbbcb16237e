//! Integer compositions and binomial coefficients.
//!
//! A sector with `d` oscillator modes and total quanta `n` has one basis
//! state per weak composition of `n` into `d` parts, so degeneracy counting
//! reduces to `C(n + d - 1, d - 1)` and explicit level enumeration reduces
//! to listing compositions.

/// Binomial coefficient `C(n, k)` computed with 128-bit intermediates.
///
/// Panics on overflow of the final `u64` result; the composition counts used
/// by this crate stay far below that.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// Number of weak compositions of `n` into `parts` parts.
///
/// `parts = 0` is the empty product space: one composition when `n = 0`,
/// none otherwise.
pub fn composition_count(n: u64, parts: u64) -> u64 {
    if parts == 0 {
        return u64::from(n == 0);
    }
    binomial(n + parts - 1, parts - 1)
}

/// All weak compositions of `n` into `parts` parts, in the canonical order
/// used throughout the crate: first part largest first (lexicographically
/// descending).
///
/// `compositions(2, 2)` yields `[2,0], [1,1], [0,2]`.
pub fn compositions(n: u32, parts: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::with_capacity(composition_count(n as u64, parts as u64) as usize);
    let mut buf = Vec::with_capacity(parts as usize);
    extend_compositions(n, parts, &mut buf, &mut |c| out.push(c.to_vec()));
    out
}

/// Visit every weak composition of `n` into `parts` parts in canonical order
/// without materializing the list.
pub fn for_each_composition(n: u32, parts: u32, visit: &mut impl FnMut(&[u32])) {
    let mut buf = Vec::with_capacity(parts as usize);
    extend_compositions(n, parts, &mut buf, visit);
}

fn extend_compositions(
    remaining: u32,
    parts: u32,
    buf: &mut Vec<u32>,
    visit: &mut impl FnMut(&[u32]),
) {
    if parts == 0 {
        if remaining == 0 {
            visit(buf);
        }
        return;
    }
    if parts == 1 {
        buf.push(remaining);
        visit(buf);
        buf.pop();
        return;
    }
    for k in (0..=remaining).rev() {
        buf.push(k);
        extend_compositions(remaining - k, parts - 1, buf, visit);
        buf.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_basics() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(5, 5), 1);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(4, 7), 0);
        assert_eq!(binomial(203, 3), 1_373_701);
    }

    #[test]
    fn composition_count_matches_enumeration() {
        for parts in 0..=5u32 {
            for n in 0..=8u32 {
                let listed = compositions(n, parts);
                assert_eq!(
                    listed.len() as u64,
                    composition_count(n as u64, parts as u64),
                    "n = {n}, parts = {parts}"
                );
                for c in &listed {
                    assert_eq!(c.len(), parts as usize);
                    assert_eq!(c.iter().sum::<u32>(), n);
                }
            }
        }
    }

    #[test]
    fn compositions_zero_parts() {
        assert_eq!(compositions(0, 0), vec![Vec::<u32>::new()]);
        assert!(compositions(1, 0).is_empty());
        assert!(compositions(3, 0).is_empty());
    }

    #[test]
    fn compositions_canonical_order() {
        assert_eq!(compositions(1, 2), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(
            compositions(2, 3),
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2],
            ]
        );
        // descending lexicographic within the fixed total
        let comps = compositions(4, 3);
        for w in comps.windows(2) {
            assert!(w[0] > w[1], "{:?} !> {:?}", w[0], w[1]);
        }
    }
}
