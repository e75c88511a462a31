//! Permutations on `{1..n}` and the hypermap operations built directly on
//! them: connected components, genus, faces, duality, reciprocal,
//! hyperdeletion and hypercontraction.

use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Result};

/// A bijection of `{1..n}` with a cached cycle decomposition.
///
/// Values are immutable after construction; every operation returns a fresh
/// permutation with its cycle cache recomputed. The cache is canonical: each
/// cycle is rotated so its smallest point comes first and cycles are sorted by
/// that point, so two equal permutations always carry identical caches.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    /// `images[p - 1]` is the image of point `p`.
    images: Vec<u32>,
    cycles: Vec<Vec<u32>>,
    /// `cycle_index[p - 1]` is the index into `cycles` of the cycle through `p`.
    cycle_index: Vec<u32>,
}

fn compute_cycles(images: &[u32]) -> (Vec<Vec<u32>>, Vec<u32>) {
    let n = images.len();
    let mut cycle_index = vec![u32::MAX; n];
    let mut cycles = Vec::new();
    for start in 1..=n as u32 {
        if cycle_index[(start - 1) as usize] != u32::MAX {
            continue;
        }
        let id = cycles.len() as u32;
        let mut cycle = Vec::new();
        let mut p = start;
        loop {
            cycle.push(p);
            cycle_index[(p - 1) as usize] = id;
            p = images[(p - 1) as usize];
            if p == start {
                break;
            }
        }
        cycles.push(cycle);
    }
    // Scanning starts at the smallest unvisited point, so each cycle begins at
    // its minimum and the cycle list is sorted by minimum.
    (cycles, cycle_index)
}

impl Permutation {
    /// The identity on `{1..n}`.
    pub fn identity(n: u32) -> Self {
        Self::from_images((1..=n).collect()).expect("identity is a bijection")
    }

    /// Builds a permutation from its image table: `images[p - 1]` is the image
    /// of `p`. Fails unless the table is a bijection of `{1..n}`.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len() as u32;
        let mut seen = vec![false; images.len()];
        for &q in &images {
            if q == 0 || q > n {
                return Err(Error::PointOutOfRange { point: q, n });
            }
            if seen[(q - 1) as usize] {
                return Err(Error::NotABijection);
            }
            seen[(q - 1) as usize] = true;
        }
        let (cycles, cycle_index) = compute_cycles(&images);
        Ok(Permutation {
            images,
            cycles,
            cycle_index,
        })
    }

    /// Builds a permutation of `{1..n}` from disjoint cycles; points not
    /// mentioned become fixed points.
    pub fn from_cycles(n: u32, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (1..=n).collect();
        let mut used = vec![false; n as usize];
        for cycle in cycles {
            for (pos, &p) in cycle.iter().enumerate() {
                if p == 0 || p > n {
                    return Err(Error::PointOutOfRange { point: p, n });
                }
                if used[(p - 1) as usize] {
                    return Err(Error::DuplicatePoint(p));
                }
                used[(p - 1) as usize] = true;
                images[(p - 1) as usize] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    /// The transposition `(i, j)` on `{1..n}`.
    pub fn transposition(n: u32, i: u32, j: u32) -> Result<Self> {
        if i == j {
            return Err(Error::PointsNotDistinct { i, j });
        }
        Self::from_cycles(n, &[vec![i, j]])
    }

    pub fn n(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn apply(&self, p: u32) -> u32 {
        self.images[(p - 1) as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0u32; self.images.len()];
        for (i, &q) in self.images.iter().enumerate() {
            images[(q - 1) as usize] = i as u32 + 1;
        }
        Self::from_images(images).expect("inverse of a bijection is a bijection")
    }

    /// The composite `self ∘ other`: `other` is applied first, so
    /// `compose(p, q)(x) = p(q(x))`. Products written multiplicatively, like
    /// `alpha (i,j)` or `(i,j) sigma`, follow this convention throughout.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::GroundSetMismatch(self.n(), other.n()));
        }
        let images = other.images.iter().map(|&q| self.apply(q)).collect();
        Self::from_images(images)
    }

    /// `(i, j) ∘ self`: swaps the two points in the image.
    pub fn mul_swap_left(&self, i: u32, j: u32) -> Self {
        let images = self
            .images
            .iter()
            .map(|&q| {
                if q == i {
                    j
                } else if q == j {
                    i
                } else {
                    q
                }
            })
            .collect();
        Self::from_images(images).expect("swapping images keeps a bijection")
    }

    /// `self ∘ (i, j)`: swaps the two preimages.
    pub fn mul_swap_right(&self, i: u32, j: u32) -> Self {
        let mut images = self.images.clone();
        images.swap((i - 1) as usize, (j - 1) as usize);
        Self::from_images(images).expect("swapping preimages keeps a bijection")
    }

    /// `c ∘ self` for a cycle `c` given by its point list.
    pub fn mul_cycle_left(&self, cycle: &[u32]) -> Self {
        let pos = |q: u32| cycle.iter().position(|&c| c == q);
        let images = self
            .images
            .iter()
            .map(|&q| match pos(q) {
                Some(k) => cycle[(k + 1) % cycle.len()],
                None => q,
            })
            .collect();
        Self::from_images(images).expect("cycle action keeps a bijection")
    }

    /// `self ∘ c` for a cycle `c` given by its point list.
    pub fn mul_cycle_right(&self, cycle: &[u32]) -> Self {
        let mut images = self.images.clone();
        for (k, &p) in cycle.iter().enumerate() {
            images[(p - 1) as usize] = self.apply(cycle[(k + 1) % cycle.len()]);
        }
        Self::from_images(images).expect("cycle action keeps a bijection")
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &q)| q == i as u32 + 1)
    }

    /// Cycles in canonical order: each starts at its smallest point, sorted by
    /// that point. Fixed points appear as cycles of length 1.
    pub fn cycles(&self) -> &[Vec<u32>] {
        &self.cycles
    }

    /// `z`: the number of cycles, fixed points included.
    pub fn cycle_count(&self) -> u32 {
        self.cycles.len() as u32
    }

    /// Cycle-length census: maps each occurring length `i` to `z_i`.
    pub fn cycle_length_counts(&self) -> BTreeMap<u32, u32> {
        let mut census = BTreeMap::new();
        for c in &self.cycles {
            *census.entry(c.len() as u32).or_insert(0) += 1;
        }
        census
    }

    /// Number of cycles of the given length.
    pub fn cycles_of_len(&self, len: u32) -> u32 {
        self.cycles.iter().filter(|c| c.len() as u32 == len).count() as u32
    }

    pub fn cycle_of(&self, p: u32) -> &[u32] {
        &self.cycles[self.cycle_index[(p - 1) as usize] as usize]
    }

    pub fn same_cycle(&self, i: u32, j: u32) -> bool {
        self.cycle_index[(i - 1) as usize] == self.cycle_index[(j - 1) as usize]
    }

    pub fn max_cycle_len(&self) -> u32 {
        self.cycles
            .iter()
            .map(|c| c.len() as u32)
            .max()
            .unwrap_or(0)
    }

    /// Restriction to a sorted set of points, relabeled to `1..=keep.len()` in
    /// order. The set must be closed under the permutation.
    pub fn restricted_to(&self, keep: &[u32]) -> Result<Self> {
        let mut new_label = vec![0u32; self.images.len()];
        for (idx, &p) in keep.iter().enumerate() {
            if p == 0 || p > self.n() {
                return Err(Error::PointOutOfRange {
                    point: p,
                    n: self.n(),
                });
            }
            if new_label[(p - 1) as usize] != 0 {
                return Err(Error::DuplicatePoint(p));
            }
            new_label[(p - 1) as usize] = idx as u32 + 1;
        }
        let mut images = Vec::with_capacity(keep.len());
        for &p in keep {
            let q = self.apply(p);
            let label = new_label[(q - 1) as usize];
            if label == 0 {
                return Err(Error::InvalidParameter(format!(
                    "point set not closed under the permutation: {p} -> {q}"
                )));
            }
            images.push(label);
        }
        Self::from_images(images)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, fixed points included: `(1 4 8)(2 5)(3 6)(7)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.images.is_empty() {
            return write!(f, "()");
        }
        for cycle in &self.cycles {
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Union-find over point indices, used for orbit counting.
pub(crate) struct DisjointSets {
    parent: Vec<u32>,
}

impl DisjointSets {
    pub(crate) fn new(len: usize) -> Self {
        DisjointSets {
            parent: (0..len as u32).collect(),
        }
    }

    pub(crate) fn find(&mut self, i: u32) -> u32 {
        let mut root = i;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut p = i;
        while self.parent[p as usize] != root {
            let next = self.parent[p as usize];
            self.parent[p as usize] = root;
            p = next;
        }
        root
    }

    pub(crate) fn union(&mut self, i: u32, j: u32) {
        let (ri, rj) = (self.find(i), self.find(j));
        if ri != rj {
            self.parent[rj as usize] = ri;
        }
    }
}

/// A pair of permutations `(sigma, alpha)` on a shared ground set.
///
/// The cycles of `sigma` are the vertices and the cycles of `alpha` are the
/// hyperedges. The pair is a hypermap when the group generated by the two
/// permutations is transitive (`kappa == 1`); otherwise it is a collection of
/// hypermaps, one per orbit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HypermapCollection {
    sigma: Permutation,
    alpha: Permutation,
}

impl HypermapCollection {
    pub fn new(sigma: Permutation, alpha: Permutation) -> Result<Self> {
        if sigma.n() != alpha.n() {
            return Err(Error::GroundSetMismatch(sigma.n(), alpha.n()));
        }
        if sigma.n() == 0 {
            return Err(Error::EmptyGroundSet);
        }
        Ok(HypermapCollection { sigma, alpha })
    }

    pub fn from_cycles(n: u32, sigma: &[Vec<u32>], alpha: &[Vec<u32>]) -> Result<Self> {
        Self::new(
            Permutation::from_cycles(n, sigma)?,
            Permutation::from_cycles(n, alpha)?,
        )
    }

    pub fn n(&self) -> u32 {
        self.sigma.n()
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    /// Component id per point plus the number of components.
    fn component_ids(&self) -> (Vec<u32>, u32) {
        let n = self.n() as usize;
        let mut sets = DisjointSets::new(n);
        for p in 0..n as u32 {
            sets.union(p, self.sigma.images()[p as usize] - 1);
            sets.union(p, self.alpha.images()[p as usize] - 1);
        }
        let mut ids = vec![u32::MAX; n];
        let mut count = 0;
        for p in 0..n as u32 {
            let root = sets.find(p);
            if ids[root as usize] == u32::MAX {
                ids[root as usize] = count;
                count += 1;
            }
            ids[p as usize] = ids[root as usize];
        }
        (ids, count)
    }

    /// `kappa`: the number of orbits of the group generated by `sigma` and
    /// `alpha`, i.e. the number of connected components.
    pub fn kappa(&self) -> u32 {
        self.component_ids().1
    }

    pub fn is_hypermap(&self) -> bool {
        self.kappa() == 1
    }

    /// Every hyperedge has at most two points.
    pub fn is_map(&self) -> bool {
        self.alpha.max_cycle_len() <= 2
    }

    /// Every hyperedge has at most three points.
    pub fn has_short_hyperedges(&self) -> bool {
        self.alpha.max_cycle_len() <= 3
    }

    /// Short hyperedges and no hyperedge of length exactly 2.
    pub fn is_three_uniform(&self) -> bool {
        self.has_short_hyperedges() && self.alpha.cycles_of_len(2) == 0
    }

    /// The faces: `alpha^-1 sigma` (apply `sigma` first).
    pub fn faces(&self) -> Permutation {
        self.alpha
            .inverse()
            .compose(&self.sigma)
            .expect("same ground set")
    }

    /// Genus, summed over connected components. For a single component with
    /// `n` points it satisfies `n + 2 - 2g = z(sigma) + z(alpha) + z(faces)`.
    pub fn genus(&self) -> u32 {
        let (ids, count) = self.component_ids();
        let mut points = vec![0i64; count as usize];
        let mut cycles = vec![0i64; count as usize];
        for &id in &ids {
            points[id as usize] += 1;
        }
        for perm in [&self.sigma, &self.alpha, &self.faces()] {
            for cycle in perm.cycles() {
                cycles[ids[(cycle[0] - 1) as usize] as usize] += 1;
            }
        }
        let mut genus = 0i64;
        for c in 0..count as usize {
            let twice = points[c] + 2 - cycles[c];
            assert!(
                twice >= 0 && twice % 2 == 0,
                "component genus parity violated: corrupted input"
            );
            genus += twice / 2;
        }
        genus as u32
    }

    /// The dual `(alpha^-1 sigma, alpha^-1)`; preserves `kappa` and genus.
    pub fn dual(&self) -> Self {
        HypermapCollection {
            sigma: self.faces(),
            alpha: self.alpha.inverse(),
        }
    }

    /// The reciprocal `(alpha, sigma)`; an involution preserving `kappa` and
    /// genus.
    pub fn reciprocal(&self) -> Self {
        HypermapCollection {
            sigma: self.alpha.clone(),
            alpha: self.sigma.clone(),
        }
    }

    /// Hyperdeletion: `(sigma, alpha (i,j))` for `i`, `j` in the same cycle of
    /// `alpha`. Splits that hyperedge in two, so `z(alpha)` grows by exactly 1
    /// and `kappa` grows by 0 or 1.
    pub fn hyperdelete(&self, i: u32, j: u32) -> Result<Self> {
        if i == j {
            return Err(Error::PointsNotDistinct { i, j });
        }
        self.check_point(i)?;
        self.check_point(j)?;
        if !self.alpha.same_cycle(i, j) {
            return Err(Error::NotInSameAlphaCycle { i, j });
        }
        let deleted = HypermapCollection {
            sigma: self.sigma.clone(),
            alpha: self.alpha.mul_swap_right(i, j),
        };
        debug_assert_eq!(deleted.alpha.cycle_count(), self.alpha.cycle_count() + 1);
        debug_assert!(deleted.kappa() <= self.kappa() + 1);
        Ok(deleted)
    }

    /// Hypercontraction: `((i,j) sigma, (i,j) alpha)` for `i`, `j` in the same
    /// cycle of `alpha` but different cycles of `sigma`. Merges the two
    /// vertices without changing `kappa` or the faces.
    pub fn hypercontract(&self, i: u32, j: u32) -> Result<Self> {
        if i == j {
            return Err(Error::PointsNotDistinct { i, j });
        }
        self.check_point(i)?;
        self.check_point(j)?;
        if !self.alpha.same_cycle(i, j) {
            return Err(Error::NotInSameAlphaCycle { i, j });
        }
        if self.sigma.same_cycle(i, j) {
            return Err(Error::InSameSigmaCycle { i, j });
        }
        let contracted = HypermapCollection {
            sigma: self.sigma.mul_swap_left(i, j),
            alpha: self.alpha.mul_swap_left(i, j),
        };
        debug_assert_eq!(contracted.kappa(), self.kappa());
        debug_assert_eq!(contracted.faces(), self.faces());
        debug_assert_eq!(contracted.sigma.cycle_count() + 1, self.sigma.cycle_count());
        Ok(contracted)
    }

    fn check_point(&self, p: u32) -> Result<()> {
        if p == 0 || p > self.n() {
            return Err(Error::PointOutOfRange {
                point: p,
                n: self.n(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: u32, cycles: &[&[u32]]) -> Permutation {
        let cycles: Vec<Vec<u32>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(n, &cycles).unwrap()
    }

    /// The running 8-point example: sigma = (1 4 8)(2 5)(3 6)(7),
    /// alpha = (1 2 3)(4 5)(6 7 8).
    fn example_eight() -> HypermapCollection {
        HypermapCollection::new(
            perm(8, &[&[1, 4, 8], &[2, 5], &[3, 6]]),
            perm(8, &[&[1, 2, 3], &[4, 5], &[6, 7, 8]]),
        )
        .unwrap()
    }

    #[test]
    fn compose_identity_and_inverse() {
        let p = perm(5, &[&[1, 3, 5], &[2, 4]]);
        let id = Permutation::identity(5);
        assert_eq!(id.compose(&p).unwrap(), p);
        assert_eq!(p.compose(&id).unwrap(), p);
        assert_eq!(p.compose(&p.inverse()).unwrap(), id);
    }

    #[test]
    fn compose_rejects_mismatched_ground_sets() {
        let p = Permutation::identity(3);
        let q = Permutation::identity(4);
        assert_eq!(p.compose(&q).unwrap_err(), Error::GroundSetMismatch(3, 4));
    }

    #[test]
    fn faces_of_eight_point_example() {
        // Hand-computed: alpha^-1 sigma = (1 5)(2 4 7 6)(3 8).
        let h = example_eight();
        let faces = h.faces();
        assert_eq!(faces.cycles(), &[vec![1, 5], vec![2, 4, 7, 6], vec![3, 8]]);
        assert_eq!(faces.cycle_count(), 3);
    }

    #[test]
    fn cycle_cache_is_canonical() {
        let p = perm(6, &[&[4, 6, 5], &[2, 1]]);
        assert_eq!(p.cycles(), &[vec![1, 2], vec![3], vec![4, 6, 5]]);
        let q = Permutation::from_images(p.images().to_vec()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn duplicate_point_in_cycles_rejected() {
        assert_eq!(
            Permutation::from_cycles(3, &[vec![1, 1]]).unwrap_err(),
            Error::DuplicatePoint(1)
        );
        assert_eq!(
            Permutation::from_cycles(3, &[vec![1, 2], vec![2, 3]]).unwrap_err(),
            Error::DuplicatePoint(2)
        );
    }

    #[test]
    fn kappa_small_cases() {
        let h = HypermapCollection::from_cycles(3, &[], &[vec![1, 2, 3]]).unwrap();
        assert_eq!(h.kappa(), 1);
        let h = HypermapCollection::from_cycles(4, &[vec![1, 2], vec![3, 4]], &[]).unwrap();
        assert_eq!(h.kappa(), 2);
        let h = HypermapCollection::from_cycles(3, &[], &[]).unwrap();
        assert_eq!(h.kappa(), 3);
    }

    #[test]
    fn genus_examples() {
        let h = HypermapCollection::from_cycles(3, &[vec![1, 2, 3]], &[]).unwrap();
        assert_eq!(h.genus(), 0);
        assert_eq!(example_eight().genus(), 0);
        // sigma = alpha = (1 2 3): faces are the identity, genus 0.
        let h = HypermapCollection::from_cycles(3, &[vec![1, 2, 3]], &[vec![1, 2, 3]]).unwrap();
        assert_eq!(h.faces().cycle_count(), 3);
        assert_eq!(h.genus(), 0);
    }

    #[test]
    fn dual_and_reciprocal() {
        let h = example_eight();
        assert_eq!(h.reciprocal().reciprocal(), h);
        assert_eq!(h.dual().kappa(), h.kappa());
        assert_eq!(h.dual().genus(), h.genus());
        assert_eq!(h.dual().genus(), 0);
        assert_eq!(h.dual().kappa(), 1);

        // dual of (sigma=(1 2), alpha=(1 2)) is (identity, (1 2)).
        let loop_map = HypermapCollection::from_cycles(2, &[vec![1, 2]], &[vec![1, 2]]).unwrap();
        let d = loop_map.dual();
        assert!(d.sigma().is_identity());
        assert_eq!(d.alpha().cycles(), &[vec![1, 2]]);
    }

    #[test]
    fn hyperdelete_bridge_and_loop() {
        let bridge = HypermapCollection::from_cycles(2, &[], &[vec![1, 2]]).unwrap();
        assert_eq!(bridge.kappa(), 1);
        assert_eq!(bridge.hyperdelete(1, 2).unwrap().kappa(), 2);

        let loop_map = HypermapCollection::from_cycles(2, &[vec![1, 2]], &[vec![1, 2]]).unwrap();
        assert_eq!(loop_map.hyperdelete(1, 2).unwrap().kappa(), 1);
    }

    #[test]
    fn hyperdelete_splits_alpha_cycle() {
        // alpha = (1 2 3): deleting (1,3) gives (2 3)(1) = alpha (1,3).
        let h = HypermapCollection::from_cycles(3, &[vec![1, 2, 3]], &[vec![1, 2, 3]]).unwrap();
        let d = h.hyperdelete(1, 3).unwrap();
        assert_eq!(d.alpha().cycles(), &[vec![1], vec![2, 3]]);
        assert_eq!(d.alpha(), &h.alpha().mul_swap_right(1, 3));
    }

    #[test]
    fn hyperdelete_rejects_different_cycles() {
        let h = HypermapCollection::from_cycles(4, &[], &[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(
            h.hyperdelete(1, 3).unwrap_err(),
            Error::NotInSameAlphaCycle { i: 1, j: 3 }
        );
    }

    #[test]
    fn hypercontract_bridge() {
        let h = HypermapCollection::from_cycles(2, &[], &[vec![1, 2]]).unwrap();
        let c = h.hypercontract(1, 2).unwrap();
        assert_eq!(c.sigma().cycles(), &[vec![1, 2]]);
        assert!(c.alpha().is_identity());
        assert_eq!(c.kappa(), 1);
    }

    #[test]
    fn hypercontract_preserves_faces_on_example() {
        let h = example_eight();
        let before = h.faces().cycle_count();
        let c = h.hypercontract(1, 2).unwrap();
        assert_eq!(c.faces().cycle_count(), before);
        assert_eq!(before, 3);
    }

    #[test]
    fn hypercontract_rejects_same_sigma_cycle() {
        let h = HypermapCollection::from_cycles(2, &[vec![1, 2]], &[vec![1, 2]]).unwrap();
        assert_eq!(
            h.hypercontract(1, 2).unwrap_err(),
            Error::InSameSigmaCycle { i: 1, j: 2 }
        );
    }

    #[test]
    fn restricted_to_relabels_in_order() {
        let p = perm(6, &[&[1, 4], &[2, 5, 3]]);
        // Drop the fixed point 6 and keep everything else.
        let r = p.restricted_to(&[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(r.cycles(), &[vec![1, 4], vec![2, 5, 3]]);
        // {1, 4} is closed; {1, 2} is not.
        assert!(p.restricted_to(&[1, 4]).is_ok());
        assert!(p.restricted_to(&[1, 2]).is_err());
    }

    #[test]
    fn display_cycle_notation() {
        let h = example_eight();
        assert_eq!(h.sigma().to_string(), "(1 4 8)(2 5)(3 6)(7)");
        assert_eq!(h.alpha().to_string(), "(1 2 3)(4 5)(6 7 8)");
    }
}
