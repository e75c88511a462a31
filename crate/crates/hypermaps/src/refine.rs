//! Noncrossing-partition machinery: refinement enumeration, Narayana
//! combinatorics and the spanning-hypertree predicate.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::perm::{HypermapCollection, Permutation};
use crate::poly::UniPoly;
use crate::{Error, Result};

/// A noncrossing partition of one cycle into blocks, each block carrying the
/// cyclic order induced by the parent cycle.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycleRefinement {
    parent: Vec<u32>,
    blocks: Vec<Vec<u32>>,
}

impl CycleRefinement {
    pub fn parent(&self) -> &[u32] {
        &self.parent
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }
}

/// Noncrossing partitions of positions `0..m`, blocks listed in increasing
/// position order and sorted by smallest position. The recursion splits on
/// the smallest element: its block is chosen first and the gaps between
/// consecutive chosen positions are partitioned independently. Enumeration
/// order is deterministic.
fn noncrossing_position_partitions(positions: &[usize]) -> Vec<Vec<Vec<usize>>> {
    if positions.is_empty() {
        return vec![Vec::new()];
    }
    let rest = &positions[1..];
    let mut out = Vec::new();
    // Bitmask over `rest` selects the remainder of the first block, counted in
    // binary order so the output order is reproducible.
    for mask in 0u64..(1u64 << rest.len()) {
        let mut block = vec![positions[0]];
        let mut segments: Vec<Vec<usize>> = Vec::new();
        let mut current = Vec::new();
        for (bit, &p) in rest.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                block.push(p);
                segments.push(std::mem::take(&mut current));
            } else {
                current.push(p);
            }
        }
        segments.push(current);
        // Partition each gap independently and take the cartesian product.
        let mut partials: Vec<Vec<Vec<usize>>> = vec![vec![block]];
        for segment in &segments {
            let sub = noncrossing_position_partitions(segment);
            let mut next = Vec::with_capacity(partials.len() * sub.len());
            for partial in &partials {
                for choice in &sub {
                    let mut combined = partial.clone();
                    combined.extend(choice.iter().cloned());
                    next.push(combined);
                }
            }
            partials = next
                .into_iter()
                .map(|mut blocks| {
                    blocks.sort_by_key(|b| b[0]);
                    blocks
                })
                .collect();
        }
        out.extend(partials);
    }
    out
}

/// All noncrossing partitions of a cycle with respect to its cyclic order.
/// The count is the Catalan number of the cycle length.
pub fn noncrossing_partitions(cycle: &[u32]) -> Vec<CycleRefinement> {
    assert!(!cycle.is_empty(), "cycle must be nonempty");
    assert!(
        cycle.len() <= 64,
        "cycle too long for refinement enumeration"
    );
    let all_positions: Vec<usize> = (0..cycle.len()).collect();
    noncrossing_position_partitions(&all_positions)
        .into_iter()
        .map(|blocks| CycleRefinement {
            parent: cycle.to_vec(),
            blocks: blocks
                .into_iter()
                .map(|b| b.into_iter().map(|p| cycle[p]).collect())
                .collect(),
        })
        .collect()
}

/// The product space of per-cycle noncrossing partitions of `alpha`: every
/// refinement `beta <= alpha` appears exactly once. Items are addressable by
/// index, so disjoint index ranges may be consumed concurrently; the iterator
/// itself runs in constant memory per item.
pub struct RefinementSpace {
    n: u32,
    per_cycle: Vec<Vec<CycleRefinement>>,
}

impl RefinementSpace {
    pub fn new(alpha: &Permutation) -> Self {
        let per_cycle = alpha
            .cycles()
            .iter()
            .map(|c| noncrossing_partitions(c))
            .collect();
        RefinementSpace {
            n: alpha.n(),
            per_cycle,
        }
    }

    pub fn len(&self) -> u128 {
        self.per_cycle.iter().fold(1u128, |acc, options| {
            acc.checked_mul(options.len() as u128)
                .expect("refinement space too large to index")
        })
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The refinement at a mixed-radix index in `0..len()`.
    pub fn get(&self, mut index: u128) -> Permutation {
        let mut images: Vec<u32> = (1..=self.n).collect();
        for options in &self.per_cycle {
            let choice = &options[(index % options.len() as u128) as usize];
            index /= options.len() as u128;
            for block in choice.blocks() {
                for (k, &p) in block.iter().enumerate() {
                    images[(p - 1) as usize] = block[(k + 1) % block.len()];
                }
            }
        }
        Permutation::from_images(images).expect("blocks partition the ground set")
    }

    pub fn iter(&self) -> impl Iterator<Item = Permutation> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }
}

/// Streams every refinement of `alpha`.
pub fn refinements(alpha: &Permutation) -> impl Iterator<Item = Permutation> {
    let space = RefinementSpace::new(alpha);
    (0..space.len()).map(move |i| space.get(i))
}

/// Whether every cycle of `beta` sits inside one cycle of `alpha` and, cycle
/// by cycle, the restricted pair has genus zero.
pub fn is_refinement(beta: &Permutation, alpha: &Permutation) -> Result<bool> {
    if beta.n() != alpha.n() {
        return Err(Error::GroundSetMismatch(beta.n(), alpha.n()));
    }
    for cycle in beta.cycles() {
        let first = cycle[0];
        if cycle.iter().any(|&p| !alpha.same_cycle(first, p)) {
            return Ok(false);
        }
    }
    for cycle in alpha.cycles() {
        let mut points = cycle.clone();
        points.sort_unstable();
        let gamma = Permutation::from_cycles(alpha.n(), std::slice::from_ref(cycle))
            .expect("alpha cycle is a valid cycle")
            .restricted_to(&points)
            .expect("cycle is closed under itself");
        let theta = beta
            .restricted_to(&points)
            .expect("beta cycles are contained in alpha cycles");
        // Genus-zero test on the single-component pair (theta, gamma):
        // m + 2 = z(theta) + z(gamma) + z(faces).
        let m = points.len() as u32;
        let faces = gamma.inverse().compose(&theta).expect("same ground set");
        if theta.cycle_count() + 1 + faces.cycle_count() != m + 2 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The Narayana number `N(m, k) = C(m, k) C(m, k-1) / m`, the number of
/// noncrossing partitions of an `m`-cycle into `k` blocks.
pub fn narayana(m: u32, k: u32) -> Result<BigInt> {
    if m < 1 || k < 1 || k > m {
        return Err(Error::InvalidParameter(format!(
            "narayana(m, k) needs 1 <= k <= m, got m={m}, k={k}"
        )));
    }
    let product =
        binomial(BigInt::from(m), BigInt::from(k)) * binomial(BigInt::from(m), BigInt::from(k - 1));
    let (q, r) = num_integer::Integer::div_rem(&product, &BigInt::from(m));
    debug_assert!(r.is_zero());
    Ok(q)
}

/// The reduced Narayana polynomial `Ñ_m(t) = Σ_k N(m, k) t^(k-1)`.
pub fn reduced_narayana_poly(m: u32) -> UniPoly {
    let coeffs = (1..=m)
        .map(|k| narayana(m, k).expect("k in range"))
        .collect();
    UniPoly::from_coeffs(coeffs)
}

/// The Narayana polynomial `N_m(t) = t Ñ_m(t)`.
pub fn narayana_poly(m: u32) -> UniPoly {
    reduced_narayana_poly(m).mul(&UniPoly::monomial(1, BigInt::one()))
}

/// Whether `(sigma, theta)` is a spanning hypertree of `(sigma, alpha)`:
/// `theta` refines `alpha`, the pair is connected, has exactly one face and
/// genus zero. Rejects `theta` that is not a refinement.
pub fn is_spanning_hypertree(
    sigma: &Permutation,
    theta: &Permutation,
    alpha: &Permutation,
) -> Result<bool> {
    if !is_refinement(theta, alpha)? {
        return Err(Error::NotARefinement);
    }
    let pair = HypermapCollection::new(sigma.clone(), theta.clone())?;
    Ok(spans_as_hypertree(&pair))
}

/// The hypertree test without the refinement precondition check, for use on
/// permutations produced by the enumerator.
pub(crate) fn spans_as_hypertree(pair: &HypermapCollection) -> bool {
    pair.kappa() == 1 && pair.faces().cycle_count() == 1 && pair.genus() == 0
}

/// Counts spanning hypertrees by direct enumeration over the refinement
/// space. Independent of the Whitney polynomial computations.
pub fn count_spanning_hypertrees(h: &HypermapCollection) -> Result<BigInt> {
    let kappa = h.kappa();
    if kappa != 1 {
        return Err(Error::Disconnected(kappa));
    }
    let mut count = BigInt::zero();
    for theta in refinements(h.alpha()) {
        let pair = HypermapCollection::new(h.sigma().clone(), theta)?;
        if spans_as_hypertree(&pair) {
            count += 1;
        }
    }
    Ok(count)
}
