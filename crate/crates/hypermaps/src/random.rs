//! Seeded random generators for permutations and hypermap collections, used
//! by the Monte Carlo machinery and the randomized test suites.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::perm::{HypermapCollection, Permutation};

pub use rand::SeedableRng;

/// The reproducible generator used throughout: a fixed algorithm, so a fixed
/// seed yields a bit-identical stream on every platform.
pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    SeededRng::seed_from_u64(seed)
}

/// A uniformly random permutation of `{1..n}`.
pub fn random_permutation(n: u32, rng: &mut SeededRng) -> Permutation {
    let mut images: Vec<u32> = (1..=n).collect();
    images.shuffle(rng);
    Permutation::from_images(images).expect("shuffle keeps a bijection")
}

/// A random permutation whose cycle lengths are drawn from `allowed`.
/// Points are shuffled and cut into consecutive cycles; when no allowed
/// length fits the remainder, the tail becomes fixed points.
pub fn random_permutation_with_cycle_lengths(
    n: u32,
    allowed: &[u32],
    rng: &mut SeededRng,
) -> Permutation {
    let mut points: Vec<u32> = (1..=n).collect();
    points.shuffle(rng);
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    let mut rest = points.as_slice();
    while !rest.is_empty() {
        let fits: Vec<u32> = allowed
            .iter()
            .copied()
            .filter(|&len| len as usize <= rest.len())
            .collect();
        if fits.is_empty() {
            for &p in rest {
                cycles.push(vec![p]);
            }
            break;
        }
        let len = fits[rng.gen_range(0..fits.len())] as usize;
        cycles.push(rest[..len].to_vec());
        rest = &rest[len..];
    }
    Permutation::from_cycles(n, &cycles).expect("cut cycles are disjoint")
}

/// A random collection `(sigma, alpha)` with `alpha` cycles of length at most
/// `max_edge_len` and unconstrained `sigma`.
pub fn random_collection(n: u32, max_edge_len: u32, rng: &mut SeededRng) -> HypermapCollection {
    let allowed: Vec<u32> = (1..=max_edge_len).collect();
    let sigma = random_permutation(n, rng);
    let alpha = random_permutation_with_cycle_lengths(n, &allowed, rng);
    HypermapCollection::new(sigma, alpha).expect("same ground set")
}

/// A random connected hypermap, by rejection on `kappa == 1`.
pub fn random_hypermap(n: u32, max_edge_len: u32, rng: &mut SeededRng) -> HypermapCollection {
    loop {
        let h = random_collection(n, max_edge_len, rng);
        if h.kappa() == 1 {
            return h;
        }
    }
}

/// A random connected map: every hyperedge has at most two points.
pub fn random_map(n: u32, rng: &mut SeededRng) -> HypermapCollection {
    random_hypermap(n, 2, rng)
}

/// A random connected 3-uniform hypermap: hyperedges of length 1 or 3 only,
/// with at least one 3-cycle when `n >= 3`.
pub fn random_three_uniform_hypermap(n: u32, rng: &mut SeededRng) -> HypermapCollection {
    loop {
        let sigma = random_permutation(n, rng);
        let alpha = random_permutation_with_cycle_lengths(n, &[3, 3, 1], rng);
        if n >= 3 && alpha.cycles_of_len(3) == 0 {
            continue;
        }
        let h = HypermapCollection::new(sigma, alpha).expect("same ground set");
        if h.kappa() == 1 {
            return h;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = random_hypermap(9, 3, &mut rng_from_seed(7));
        let b = random_hypermap(9, 3, &mut rng_from_seed(7));
        assert_eq!(a, b);
    }

    #[test]
    fn constraints_hold() {
        let mut rng = rng_from_seed(11);
        for _ in 0..50 {
            let h = random_collection(10, 3, &mut rng);
            assert!(h.has_short_hyperedges());
            let m = random_map(8, &mut rng);
            assert!(m.is_map() && m.kappa() == 1);
            let t = random_three_uniform_hypermap(9, &mut rng);
            assert!(t.is_three_uniform() && t.kappa() == 1);
            assert!(t.alpha().cycles_of_len(3) >= 1);
        }
    }
}
