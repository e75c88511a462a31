//! The associated two-colored map of a short-hyperedge collection: each
//! 3-cycle hyperedge becomes a white 3-point vertex joined by edges to the
//! black vertices it touched. Refinements lift to the two-colored side, and
//! spanning hypertrees are counted there by a signed sum of Matrix-Tree
//! spanning-tree counts over subsets of the white vertices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::perm::{HypermapCollection, Permutation};
use crate::refine::is_refinement;
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Color {
    Black,
    White,
}

/// One lifted 3-cycle: the original hyperedge `(i, j, k)` and the white
/// points `(i', j', k')` allocated for it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WhiteVertex {
    pub origin: [u32; 3],
    pub primes: [u32; 3],
}

/// The associated collection of two-colored maps `(S, A)` of a
/// short-hyperedge collection `(sigma, alpha)`:
///
/// - every cycle of `sigma` stays a (black) cycle of `S`;
/// - every 1- and 2-cycle of `alpha` stays a cycle of `A`;
/// - every 3-cycle `(i, j, k)` of `alpha` contributes the white cycle
///   `(i', k', j')` to `S` (note the reversed orientation) and the edges
///   `(i, i')`, `(j, j')`, `(k, k')` to `A`.
///
/// White points are numbered `n+1, n+2, ...` in order of the 3-cycles by
/// smallest original point; within a cycle `(i, j, k)` rotated smallest
/// first, the primes `i' < j' < k'` are consecutive.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwoColoredMap {
    map: HypermapCollection,
    n_black: u32,
    whites: Vec<WhiteVertex>,
}

impl TwoColoredMap {
    /// The underlying pair `(S, A)`. Every cycle of `S` is monochromatic and
    /// every cycle of `A` has length at most 2.
    pub fn map(&self) -> &HypermapCollection {
        &self.map
    }

    pub fn n_black(&self) -> u32 {
        self.n_black
    }

    pub fn color(&self, point: u32) -> Color {
        if point <= self.n_black {
            Color::Black
        } else {
            Color::White
        }
    }

    pub fn whites(&self) -> &[WhiteVertex] {
        &self.whites
    }
}

/// Builds the associated two-colored map. Errors on hyperedges longer than 3.
pub fn associate(h: &HypermapCollection) -> Result<TwoColoredMap> {
    let longest = h.alpha().max_cycle_len();
    if longest > 3 {
        return Err(Error::LongHyperedge(longest));
    }
    let n = h.n();
    let mut s_cycles: Vec<Vec<u32>> = h.sigma().cycles().to_vec();
    let mut a_cycles: Vec<Vec<u32>> = Vec::new();
    let mut whites = Vec::new();
    let mut next = n + 1;
    for cycle in h.alpha().cycles() {
        match cycle.len() {
            1 | 2 => a_cycles.push(cycle.clone()),
            _ => {
                let (i, j, k) = (cycle[0], cycle[1], cycle[2]);
                let (pi, pj, pk) = (next, next + 1, next + 2);
                next += 3;
                s_cycles.push(vec![pi, pk, pj]);
                a_cycles.push(vec![i, pi]);
                a_cycles.push(vec![j, pj]);
                a_cycles.push(vec![k, pk]);
                whites.push(WhiteVertex {
                    origin: [i, j, k],
                    primes: [pi, pj, pk],
                });
            }
        }
    }
    let total = next - 1;
    let map = HypermapCollection::new(
        Permutation::from_cycles(total, &s_cycles)?,
        Permutation::from_cycles(total, &a_cycles)?,
    )?;
    debug_assert!(map.alpha().max_cycle_len() <= 2);
    Ok(TwoColoredMap {
        map,
        n_black: n,
        whites,
    })
}

/// A vertex-labeled multigraph; labels are the smallest point of the vertex's
/// cycle in the map it came from, or arbitrary ids for built graphs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabeledMultigraph {
    labels: Vec<u32>,
    colors: Vec<Color>,
    /// Unordered vertex-index pairs (self-loops allowed) to multiplicity >= 1.
    edges: BTreeMap<(usize, usize), u64>,
}

impl LabeledMultigraph {
    pub fn new(labels: Vec<u32>, colors: Vec<Color>) -> Self {
        assert_eq!(labels.len(), colors.len());
        LabeledMultigraph {
            labels,
            colors,
            edges: BTreeMap::new(),
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize, multiplicity: u64) {
        assert!(
            a < self.labels.len() && b < self.labels.len(),
            "dangling endpoint"
        );
        if multiplicity == 0 {
            return;
        }
        let key = (a.min(b), a.max(b));
        *self.edges.entry(key).or_insert(0) += multiplicity;
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.edges.iter().map(|(&(a, b), &m)| (a, b, m))
    }

    /// The restriction to the vertices with `keep[v]`: kept vertices are
    /// reindexed in order and only edges with both endpoints kept survive.
    pub fn restrict(&self, keep: &[bool]) -> Self {
        assert_eq!(keep.len(), self.labels.len());
        let mut new_index = vec![usize::MAX; keep.len()];
        let mut labels = Vec::new();
        let mut colors = Vec::new();
        for (v, &kept) in keep.iter().enumerate() {
            if kept {
                new_index[v] = labels.len();
                labels.push(self.labels[v]);
                colors.push(self.colors[v]);
            }
        }
        let mut restricted = LabeledMultigraph::new(labels, colors);
        for (&(a, b), &m) in &self.edges {
            if keep[a] && keep[b] {
                restricted.add_edge(new_index[a], new_index[b], m);
            }
        }
        restricted
    }

    /// Edge-list text format: a header listing each vertex with its color,
    /// then one `u v multiplicity` triple per line (vertex labels).
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "vertices {}", self.labels.len());
        for (label, color) in self.labels.iter().zip(&self.colors) {
            let color = match color {
                Color::Black => "black",
                Color::White => "white",
            };
            let _ = writeln!(out, "{label} {color}");
        }
        let _ = writeln!(out, "edges {}", self.edges.len());
        for (&(a, b), &m) in &self.edges {
            let _ = writeln!(out, "{} {} {}", self.labels[a], self.labels[b], m);
        }
        out
    }

    /// The number of spanning trees by the Matrix-Tree theorem: determinant
    /// of a Laplacian minor via fraction-free integer elimination. Exact at
    /// any size; 0 for disconnected graphs, 1 for a single vertex. Self-loops
    /// never occur in spanning trees and are ignored.
    pub fn spanning_tree_count(&self) -> BigInt {
        let n = self.labels.len();
        if n == 0 {
            return BigInt::zero();
        }
        if n == 1 {
            return BigInt::one();
        }
        let dim = n - 1;
        let mut lap = vec![0i128; dim * dim];
        for (&(a, b), &m) in &self.edges {
            if a == b {
                continue;
            }
            let m = m as i128;
            if a < dim {
                lap[a * dim + a] += m;
            }
            if b < dim {
                lap[b * dim + b] += m;
            }
            if a < dim && b < dim {
                lap[a * dim + b] -= m;
                lap[b * dim + a] -= m;
            }
        }
        if let Some(det) = bareiss_i128(&mut lap.clone(), dim) {
            return BigInt::from(det);
        }
        let mut big: Vec<BigInt> = lap.into_iter().map(BigInt::from).collect();
        bareiss_bigint(&mut big, dim)
    }
}

/// Fraction-free Bareiss elimination over i128; `None` on overflow.
fn bareiss_i128(m: &mut [i128], dim: usize) -> Option<i128> {
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..dim.saturating_sub(1) {
        if m[k * dim + k] == 0 {
            let pivot_row = match (k + 1..dim).find(|&r| m[r * dim + k] != 0) {
                Some(r) => r,
                None => return Some(0),
            };
            for c in 0..dim {
                m.swap(k * dim + c, pivot_row * dim + c);
            }
            sign = -sign;
        }
        for i in k + 1..dim {
            for j in k + 1..dim {
                let a = m[i * dim + j].checked_mul(m[k * dim + k])?;
                let b = m[i * dim + k].checked_mul(m[k * dim + j])?;
                m[i * dim + j] = a.checked_sub(b)? / prev;
            }
            m[i * dim + k] = 0;
        }
        prev = m[k * dim + k];
    }
    Some(sign * m[dim * dim - 1])
}

fn bareiss_bigint(m: &mut [BigInt], dim: usize) -> BigInt {
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..dim.saturating_sub(1) {
        if m[k * dim + k].is_zero() {
            match (k + 1..dim).find(|&r| !m[r * dim + k].is_zero()) {
                Some(pivot_row) => {
                    for c in 0..dim {
                        m.swap(k * dim + c, pivot_row * dim + c);
                    }
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..dim {
            for j in k + 1..dim {
                let val =
                    (&m[i * dim + j] * &m[k * dim + k] - &m[i * dim + k] * &m[k * dim + j]) / &prev;
                m[i * dim + j] = val;
            }
            m[i * dim + k] = BigInt::zero();
        }
        prev = m[k * dim + k].clone();
    }
    sign * m[dim * dim - 1].clone()
}

/// The underlying graph of a two-colored map: one vertex per cycle of `S`,
/// one edge per 2-cycle of `A`.
pub fn underlying_graph(tc: &TwoColoredMap) -> LabeledMultigraph {
    let s = tc.map.sigma();
    let labels: Vec<u32> = s.cycles().iter().map(|c| c[0]).collect();
    let colors: Vec<Color> = labels.iter().map(|&l| tc.color(l)).collect();
    let index_of: BTreeMap<u32, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut graph = LabeledMultigraph::new(labels, colors);
    for cycle in tc.map.alpha().cycles() {
        if cycle.len() == 2 {
            let a = index_of[&s.cycle_of(cycle[0])[0]];
            let b = index_of[&s.cycle_of(cycle[1])[0]];
            graph.add_edge(a, b, 1);
        }
    }
    graph
}

/// How one hyperedge of `alpha` is refined in `beta`.
enum CyclePattern {
    Unchanged,
    /// A 3-cycle split into a pair plus the singleton at `origin[index]`.
    PairPlusSingleton(usize),
    FullySplit,
}

fn pattern_of(beta: &Permutation, white: &WhiteVertex) -> CyclePattern {
    let fixed = white.origin.iter().filter(|&&p| beta.apply(p) == p).count();
    match fixed {
        0 => CyclePattern::Unchanged,
        3 => CyclePattern::FullySplit,
        1 => {
            let index = white
                .origin
                .iter()
                .position(|&p| beta.apply(p) == p)
                .expect("exactly one fixed point");
            CyclePattern::PairPlusSingleton(index)
        }
        _ => unreachable!("a 3-cycle refines into 1, 2 or 3 blocks"),
    }
}

/// Recovers `alpha` on the black points from the two-colored map.
fn original_alpha(tc: &TwoColoredMap) -> Permutation {
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    for cycle in tc.map.alpha().cycles() {
        if cycle.len() == 2 && tc.color(cycle[1]) == Color::Black {
            cycles.push(cycle.clone());
        }
    }
    for white in &tc.whites {
        cycles.push(white.origin.to_vec());
    }
    Permutation::from_cycles(tc.n_black, &cycles).expect("original alpha is well-formed")
}

/// Lifts a refinement `beta <= alpha` to a refinement of `A`: a split
/// 2-cycle of `alpha` splits in `A`; a 3-cycle split into pair plus singleton
/// drops the singleton's prime edge; a fully split 3-cycle drops all three
/// prime edges.
pub fn lift_refinement(tc: &TwoColoredMap, beta: &Permutation) -> Result<Permutation> {
    let alpha_original = original_alpha(tc);
    if !is_refinement(beta, &alpha_original)? {
        return Err(Error::NotARefinement);
    }
    let mut images = tc.map.alpha().images().to_vec();
    let mut drop_edge = |p: u32, q: u32| {
        images[(p - 1) as usize] = p;
        images[(q - 1) as usize] = q;
    };
    for cycle in alpha_original.cycles() {
        if cycle.len() == 2 && beta.apply(cycle[0]) == cycle[0] {
            drop_edge(cycle[0], cycle[1]);
        }
    }
    for white in &tc.whites {
        match pattern_of(beta, white) {
            CyclePattern::Unchanged => {}
            CyclePattern::PairPlusSingleton(s) => {
                drop_edge(white.origin[s], white.primes[s]);
            }
            CyclePattern::FullySplit => {
                for s in 0..3 {
                    drop_edge(white.origin[s], white.primes[s]);
                }
            }
        }
    }
    let lifted = Permutation::from_images(images).expect("dropping edges keeps a bijection");
    debug_assert!(is_refinement(&lifted, tc.map.alpha())?);
    Ok(lifted)
}

/// The singularities of `beta`: white vertices whose hyperedge fully splits,
/// identified by the smallest prime point of the white cycle.
pub fn singularities(tc: &TwoColoredMap, beta: &Permutation) -> Result<BTreeSet<u32>> {
    let alpha_original = original_alpha(tc);
    if !is_refinement(beta, &alpha_original)? {
        return Err(Error::NotARefinement);
    }
    Ok(tc
        .whites
        .iter()
        .filter(|w| matches!(pattern_of(beta, w), CyclePattern::FullySplit))
        .map(|w| w.primes[0])
        .collect())
}

/// Reduces `(S, lift(beta))` to the associated two-colored map of
/// `(sigma, beta)`: removes the singular white vertices, contracts one prime
/// edge per pair-plus-singleton hyperedge, discards the buds this leaves
/// behind and relabels the surviving points. Returns the reduced pair
/// together with the old-to-new point renaming.
pub fn reduce_refinement(
    tc: &TwoColoredMap,
    beta: &Permutation,
) -> Result<(HypermapCollection, BTreeMap<u32, u32>)> {
    let lifted = lift_refinement(tc, beta)?;
    let mut s_cur = tc.map.sigma().clone();
    let mut a_cur = lifted;
    let total = tc.map.n();
    let mut dropped = vec![false; total as usize];
    // `pre_label[p - 1]`: the point p stands for after the contractions.
    let mut pre_label: Vec<u32> = (1..=total).collect();

    for white in &tc.whites {
        match pattern_of(beta, white) {
            CyclePattern::Unchanged => {}
            CyclePattern::FullySplit => {
                for &p in &white.primes {
                    dropped[(p - 1) as usize] = true;
                }
            }
            CyclePattern::PairPlusSingleton(s) => {
                // Rotate (i, j, k) so the singleton comes last: (a, b, s).
                let a_pos = (s + 1) % 3;
                let b_pos = (s + 2) % 3;
                let a = white.origin[a_pos];
                let a_prime = white.primes[a_pos];
                let b_prime = white.primes[b_pos];
                let s_prime = white.primes[s];
                // Contract the edge (a, a'): merges the white vertex into
                // a's black vertex.
                s_cur = s_cur.mul_swap_left(a, a_prime);
                a_cur = a_cur.mul_swap_left(a, a_prime);
                // a and a' become buds, s' already was one; b' takes over
                // the label of a.
                dropped[(a - 1) as usize] = true;
                dropped[(a_prime - 1) as usize] = true;
                dropped[(s_prime - 1) as usize] = true;
                pre_label[(b_prime - 1) as usize] = a;
            }
        }
    }

    let keep: Vec<u32> = (1..=total)
        .filter(|&p| !dropped[(p - 1) as usize])
        .collect();
    let mut order: Vec<u32> = keep.clone();
    order.sort_by_key(|&p| pre_label[(p - 1) as usize]);
    let mut renaming: BTreeMap<u32, u32> = BTreeMap::new();
    for (rank, &p) in order.iter().enumerate() {
        renaming.insert(p, rank as u32 + 1);
    }
    // Dropped points sit on cycles through kept ones, so splice them out
    // rather than restrict.
    let relabel: Vec<u32> = (1..=total)
        .map(|p| renaming.get(&p).copied().unwrap_or(0))
        .collect();
    let splice = |perm: &Permutation| -> Permutation {
        let mut images = vec![0u32; order.len()];
        for &p in &keep {
            let mut q = perm.apply(p);
            while relabel[(q - 1) as usize] == 0 {
                q = perm.apply(q);
            }
            images[(relabel[(p - 1) as usize] - 1) as usize] = relabel[(q - 1) as usize];
        }
        Permutation::from_images(images).expect("splicing keeps a bijection")
    };
    let reduced = HypermapCollection::new(splice(&s_cur), splice(&a_cur))?;
    Ok((reduced, renaming))
}

/// The number of spanning hypertrees of a connected short-hyperedge hypermap
/// via the associated two-colored graph `G`:
/// `Σ_{S ⊆ whites} (-2)^|S| s(G restricted to V - S)`.
///
/// The outer sum is parallelized by splitting the subset masks into ranges.
/// Subsets whose removal strands a black vertex are skipped: the restriction
/// is disconnected and contributes nothing.
pub fn hypertree_count(h: &HypermapCollection) -> Result<BigInt> {
    let kappa = h.kappa();
    if kappa != 1 {
        return Err(Error::Disconnected(kappa));
    }
    let tc = associate(h)?;
    let graph = underlying_graph(&tc);
    let whites: Vec<usize> = graph
        .colors()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == Color::White)
        .map(|(v, _)| v)
        .collect();
    assert!(whites.len() < 64, "too many white vertices to enumerate");

    // For pruning: the white neighbors of each black vertex, and whether a
    // black-black edge keeps it attached regardless of S.
    let vcount = graph.vertex_count();
    let mut white_rank = vec![usize::MAX; vcount];
    for (rank, &w) in whites.iter().enumerate() {
        white_rank[w] = rank;
    }
    let mut white_nbrs = vec![0u64; vcount];
    let mut black_degree = vec![0u64; vcount];
    for (a, b, m) in graph.edges() {
        if a == b {
            continue;
        }
        for (x, y) in [(a, b), (b, a)] {
            if graph.colors()[x] == Color::Black {
                if graph.colors()[y] == Color::White {
                    white_nbrs[x] |= 1 << white_rank[y];
                } else {
                    black_degree[x] += m;
                }
            }
        }
    }
    let stranded_blacks: Vec<u64> = (0..vcount)
        .filter(|&v| graph.colors()[v] == Color::Black && black_degree[v] == 0)
        .map(|v| white_nbrs[v])
        .collect();

    let masks = 1u64 << whites.len();
    let count_mask = |mask: u64| -> BigInt {
        let remaining = vcount as u64 - mask.count_ones() as u64;
        if remaining > 1 && stranded_blacks.iter().any(|&nbrs| nbrs & !mask == 0) {
            return BigInt::zero();
        }
        let mut keep = vec![true; vcount];
        for (rank, &w) in whites.iter().enumerate() {
            if mask >> rank & 1 == 1 {
                keep[w] = false;
            }
        }
        let s = graph.restrict(&keep).spanning_tree_count();
        let weight = BigInt::from(2u64).pow(mask.count_ones());
        if mask.count_ones().is_multiple_of(2) {
            s * weight
        } else {
            -s * weight
        }
    };
    let sum = if masks <= 64 {
        (0..masks)
            .map(count_mask)
            .fold(BigInt::zero(), |a, b| a + b)
    } else {
        (0..masks)
            .into_par_iter()
            .map(count_mask)
            .reduce(BigInt::zero, |a, b| a + b)
    };
    Ok(sum)
}
