//! The two characterizations of noncrossing refinement agree, the enumerator
//! is complete, and counts match the Catalan/Narayana numbers.

use hypermaps::perm::Permutation;
use hypermaps::refine::{self, is_refinement, narayana, noncrossing_partitions, RefinementSpace};
use itertools::Itertools;
use num_bigint::BigInt;

/// All set partitions of `{0..n}` via restricted growth strings.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(rgs: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if rgs.len() == n {
            let blocks = max + 1;
            let mut partition = vec![Vec::new(); blocks];
            for (i, &b) in rgs.iter().enumerate() {
                partition[b].push(i);
            }
            out.push(partition);
            return;
        }
        for b in 0..=max + 1 {
            rgs.push(b);
            go(rgs, max.max(b), n, out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return vec![Vec::new()];
    }
    go(&mut vec![0], 0, n, &mut out);
    out
}

/// Independent oracle: two blocks cross on the circle `0..m` when walking the
/// circle meets them in alternating order more than twice.
fn blocks_pairwise_noncrossing(blocks: &[Vec<usize>], m: usize) -> bool {
    for (a, b) in blocks.iter().tuple_combinations() {
        let mut sequence = Vec::new();
        for p in 0..m {
            if a.contains(&p) {
                sequence.push(0u8);
            } else if b.contains(&p) {
                sequence.push(1u8);
            }
        }
        let mut switches = 0;
        for w in sequence.windows(2) {
            if w[0] != w[1] {
                switches += 1;
            }
        }
        if sequence.first() != sequence.last() {
            switches += 1;
        }
        if switches > 2 {
            return false;
        }
    }
    true
}

#[test]
fn genus_zero_agrees_with_chord_crossing_test() {
    for m in 1..=8usize {
        let cycle: Vec<u32> = (1..=m as u32).collect();
        let alpha = Permutation::from_cycles(m as u32, &[cycle]).unwrap();
        let mut noncrossing_found = 0u64;
        for partition in set_partitions(m) {
            let blocks_points: Vec<Vec<u32>> = partition
                .iter()
                .map(|b| b.iter().map(|&p| p as u32 + 1).collect())
                .collect();
            let beta = Permutation::from_cycles(m as u32, &blocks_points).unwrap();
            let by_genus = is_refinement(&beta, &alpha).unwrap();
            let by_chords = blocks_pairwise_noncrossing(&partition, m);
            assert_eq!(by_genus, by_chords, "m = {m}, partition {partition:?}");
            if by_genus {
                noncrossing_found += 1;
            }
        }
        assert_eq!(
            noncrossing_found,
            noncrossing_partitions(&(1..=m as u32).collect::<Vec<_>>()).len() as u64
        );
    }
}

#[test]
#[allow(clippy::needless_range_loop)] // m and k are the mathematical indices
fn catalan_counts_up_to_twelve() {
    let catalan: [u64; 13] = [
        1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012,
    ];
    for m in 1..=12usize {
        let cycle: Vec<u32> = (1..=m as u32).collect();
        assert_eq!(noncrossing_partitions(&cycle).len() as u64, catalan[m]);
        // Block-count census matches the Narayana numbers.
        let mut by_blocks = vec![0u64; m + 1];
        for p in noncrossing_partitions(&cycle) {
            by_blocks[p.block_count()] += 1;
        }
        for k in 1..=m {
            assert_eq!(
                BigInt::from(by_blocks[k]),
                narayana(m as u32, k as u32).unwrap()
            );
        }
    }
}

#[test]
fn enumerator_is_complete_on_small_ground_sets() {
    // Exhaustive scan: every permutation of {1..6} that passes is_refinement
    // is produced by the refinement space, and vice versa.
    let alphas = [
        Permutation::from_cycles(6, &[vec![1, 2, 3, 4, 5, 6]]).unwrap(),
        Permutation::from_cycles(6, &[vec![1, 2, 3], vec![4, 5, 6]]).unwrap(),
        Permutation::from_cycles(6, &[vec![1, 2, 3, 4], vec![5, 6]]).unwrap(),
        Permutation::from_cycles(6, &[vec![2, 5], vec![3, 6, 4]]).unwrap(),
    ];
    for alpha in alphas {
        let mut enumerated: Vec<Permutation> = RefinementSpace::new(&alpha).iter().collect();
        enumerated.sort_by_key(|p| p.images().to_vec());
        let len_before = enumerated.len();
        enumerated.dedup();
        assert_eq!(
            len_before,
            enumerated.len(),
            "duplicates for alpha = {alpha}"
        );

        let mut scanned: Vec<Permutation> = (1..=6u32)
            .permutations(6)
            .map(|images| Permutation::from_images(images).unwrap())
            .filter(|beta| is_refinement(beta, &alpha).unwrap())
            .collect();
        scanned.sort_by_key(|p| p.images().to_vec());
        assert_eq!(enumerated, scanned, "alpha = {alpha}");
    }
}

#[test]
fn every_refinement_is_a_refinement() {
    let alpha =
        Permutation::from_cycles(9, &[vec![1, 4, 2, 8], vec![3, 9, 5], vec![6, 7]]).unwrap();
    let space = RefinementSpace::new(&alpha);
    assert_eq!(space.len(), 14 * 5 * 2);
    for beta in space.iter() {
        assert!(is_refinement(&beta, &alpha).unwrap());
        // Refining only splits cycles.
        assert!(beta.cycle_count() >= alpha.cycle_count());
    }
}

#[test]
fn spanning_hypertree_count_is_constant_term_of_whitney() {
    use hypermaps::random::{random_hypermap, rng_from_seed};
    let mut rng = rng_from_seed(1234);
    for _ in 0..40 {
        let h = random_hypermap(8, 4, &mut rng);
        let enumerated = refine::count_spanning_hypertrees(&h).unwrap();
        let whitney = hypermaps::whitney::whitney_bruteforce(&h).constant_term();
        assert_eq!(
            enumerated,
            whitney,
            "sigma={} alpha={}",
            h.sigma(),
            h.alpha()
        );
    }
}
