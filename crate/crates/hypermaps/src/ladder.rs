//! Closed forms for spanning-tree and hypertree counts of generalized pencil
//! graphs and ladder maps: the Θ recurrence and its explicit sum, the sparse
//! chain-product identities, the F/G/H/T generating functions and the ladder
//! reciprocal construction they count.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;

use crate::perm::{HypermapCollection, Permutation};
use crate::poly::{PowerSeries, RationalFunction, UniPoly};
use crate::random::rng_from_seed;
use crate::twocolor::{Color, LabeledMultigraph};
use crate::{Error, Result};

/// A generalized pencil graph `P(a_1, ..., a_m; t)`: a hub joined to spoke
/// vertex `v_i` by `a_i` parallel edges, consecutive spokes joined by `t`
/// parallel edges.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PencilSpec {
    a: Vec<u64>,
    t: u64,
}

impl PencilSpec {
    pub fn new(a: Vec<u64>, t: u64) -> Result<Self> {
        if a.is_empty() || t < 1 || a.iter().any(|&x| x < 1) {
            return Err(Error::InvalidParameter(
                "pencil spec needs m >= 1 spokes, all multiplicities >= 1".into(),
            ));
        }
        Ok(PencilSpec { a, t })
    }

    pub fn spokes(&self) -> &[u64] {
        &self.a
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    /// The pencil as a plain multigraph: vertex 0 is the hub.
    pub fn graph(&self) -> LabeledMultigraph {
        let m = self.a.len();
        let labels: Vec<u32> = (0..=m as u32).collect();
        let mut g = LabeledMultigraph::new(labels, vec![Color::Black; m + 1]);
        for (i, &ai) in self.a.iter().enumerate() {
            g.add_edge(0, i + 1, ai);
        }
        for i in 1..m {
            g.add_edge(i, i + 1, self.t);
        }
        g
    }
}

fn theta_rec_u128(a: &mut Vec<u64>, t: u64) -> Option<u128> {
    let m = a.len();
    if m == 1 {
        return Some(a[0] as u128);
    }
    let last = a.pop().expect("m >= 2");
    let keep_last = theta_rec_u128(a, t)?;
    let prev = a.pop().expect("m >= 2");
    a.push(prev.checked_add(last)?);
    let contract = theta_rec_u128(a, t)?;
    a.pop();
    a.push(prev);
    a.push(last);
    (last as u128)
        .checked_mul(keep_last)?
        .checked_add((t as u128).checked_mul(contract)?)
}

fn theta_rec_big(a: &mut Vec<BigInt>, t: &BigInt) -> BigInt {
    let m = a.len();
    if m == 1 {
        return a[0].clone();
    }
    let last = a.pop().expect("m >= 2");
    let keep_last = theta_rec_big(a, t);
    let prev = a.pop().expect("m >= 2");
    a.push(&prev + &last);
    let contract = theta_rec_big(a, t);
    a.pop();
    a.push(prev);
    a.push(last.clone());
    last * keep_last + t * contract
}

/// The number of spanning trees of `P(a; t)` by the two-case recurrence:
/// the last spoke either hangs off the hub directly
/// (`a_m Θ(a_1..a_{m-1}; t)`) or reaches the rest through a rung
/// (`t Θ(a_1..a_{m-2}, a_{m-1}+a_m; t)`).
pub fn theta_rec(spec: &PencilSpec) -> BigInt {
    let mut a = spec.a.clone();
    match theta_rec_u128(&mut a, spec.t) {
        Some(value) => BigInt::from(value),
        None => {
            let mut big: Vec<BigInt> = spec.a.iter().map(|&x| BigInt::from(x)).collect();
            theta_rec_big(&mut big, &BigInt::from(spec.t))
        }
    }
}

/// The same count by the explicit sum over the set of spokes attached
/// directly to the hub:
/// `Θ = Σ_k t^(m-k) Σ_{i_1<..<i_k} Π_j (i_{j+1} - i_j) a_{i_1} ... a_{i_k}`.
pub fn theta_closed(spec: &PencilSpec) -> BigInt {
    let m = spec.a.len();
    assert!(m < 64, "spoke count too large for subset enumeration");
    let t = spec.t as u128;
    let mut total = BigInt::zero();
    let mut small: u128 = 0;
    for mask in 1u64..(1u64 << m) {
        let k = mask.count_ones();
        let mut term: Option<u128> = Some(1);
        let mut prev: Option<u32> = None;
        for i in 0..m as u32 {
            if mask >> i & 1 == 1 {
                term = term.and_then(|v| v.checked_mul(spec.a[i as usize] as u128));
                if let Some(p) = prev {
                    term = term.and_then(|v| v.checked_mul((i - p) as u128));
                }
                prev = Some(i);
            }
        }
        for _ in 0..(m as u32 - k) {
            term = term.and_then(|v| v.checked_mul(t));
        }
        match term.and_then(|v| small.checked_add(v)) {
            Some(sum) => small = sum,
            None => {
                // Rare: spill the running sum and redo this term exactly.
                total += BigInt::from(small);
                small = 0;
                let mut big_term = BigInt::one();
                let mut prev: Option<u32> = None;
                for i in 0..m as u32 {
                    if mask >> i & 1 == 1 {
                        big_term *= BigInt::from(spec.a[i as usize]);
                        if let Some(p) = prev {
                            big_term *= BigInt::from(i - p);
                        }
                        prev = Some(i);
                    }
                }
                big_term *= BigInt::from(t).pow(m as u32 - k);
                total += big_term;
            }
        }
    }
    total + BigInt::from(small)
}

/// The four boundary flavors of the sparse chain-product sums.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SparseSumVariant {
    /// `1 < i_1`, `i_k < m`.
    OpenOpen,
    /// `i_1 = 1`, `i_k < m`.
    ClosedOpen,
    /// `1 < i_1`, `i_k = m`.
    OpenClosed,
    /// `i_1 = 1`, `i_k = m`.
    ClosedClosed,
}

fn choose(n: i64, r: i64) -> BigInt {
    if r < 0 || n < 0 || r > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(r))
}

/// `Σ Π_{j=1}^{k-1} (i_{j+1} - i_j)` over chains `i_1 < ... < i_k` in
/// `{1..m}` with the variant's boundary conditions, computed by direct
/// enumeration. The result always matches a single binomial coefficient:
/// `C(m+k-3, 2k-1)`, `C(m+k-3, 2k-2)`, `C(m+k-3, 2k-2)` and `C(m+k-3, 2k-3)`
/// for the four variants in order; the equality is asserted.
pub fn sparse_sum(m: u32, k: u32, variant: SparseSumVariant) -> Result<BigInt> {
    if m < 2 || k < 2 {
        return Err(Error::InvalidParameter(format!(
            "sparse sums need m, k >= 2, got m={m}, k={k}"
        )));
    }
    let (first_fixed, last_fixed) = match variant {
        SparseSumVariant::OpenOpen => (false, false),
        SparseSumVariant::ClosedOpen => (true, false),
        SparseSumVariant::OpenClosed => (false, true),
        SparseSumVariant::ClosedClosed => (true, true),
    };
    fn extend(chain: &mut Vec<u32>, k: u32, last_fixed: bool, m: u32, sum: &mut BigInt) {
        if chain.len() == k as usize {
            let last = *chain.last().expect("k >= 2");
            let ok_last = if last_fixed { last == m } else { last < m };
            if ok_last {
                let mut product = BigInt::one();
                for pair in chain.windows(2) {
                    product *= BigInt::from(pair[1] - pair[0]);
                }
                *sum += product;
            }
            return;
        }
        let low = chain.last().map_or(1, |&last| last + 1);
        for next in low..=m {
            chain.push(next);
            extend(chain, k, last_fixed, m, sum);
            chain.pop();
        }
    }
    let mut sum = BigInt::zero();
    let mut chain = Vec::new();
    if first_fixed {
        chain.push(1);
        extend(&mut chain, k, last_fixed, m, &mut sum);
    } else {
        for start in 2..=m {
            chain.push(start);
            extend(&mut chain, k, last_fixed, m, &mut sum);
            chain.pop();
        }
    }
    let (mi, ki) = (m as i64, k as i64);
    let expected = match variant {
        SparseSumVariant::OpenOpen => choose(mi + ki - 3, 2 * ki - 1),
        SparseSumVariant::ClosedOpen | SparseSumVariant::OpenClosed => {
            choose(mi + ki - 3, 2 * ki - 2)
        }
        SparseSumVariant::ClosedClosed => choose(mi + ki - 3, 2 * ki - 3),
    };
    assert_eq!(sum, expected, "chain-product sum vs binomial, m={m} k={k}");
    Ok(sum)
}

fn series(num: &[i64], den: &[i64]) -> PowerSeries {
    PowerSeries::new(
        RationalFunction::new(UniPoly::from_i64(num), UniPoly::from_i64(den))
            .expect("nonzero denominator"),
    )
    .expect("denominator nonzero at 0")
}

/// The generating functions `F(x) = 1/(1-8x+4x^2)`,
/// `G(x) = (1-2x)/(1-8x+4x^2)` and `H(x) = (1-2x)^2/(1-8x+4x^2)`.
///
/// For `m >= 2` their coefficients count spanning trees of the pencils
/// `P(6, 4.., 6; 2)`, `P(6, 4..; 2)` and `P(4..; 2)`; `F(1) = 8` and
/// `G(1) = 6` are the 8-cycle and 6-cycle counts. The `x^1` coefficient of
/// `H` is 4, the spanning-tree count of the one-rung ladder's two-colored
/// graph (a 4-cycle).
pub fn fgh_series() -> (PowerSeries, PowerSeries, PowerSeries) {
    let den = [1, -8, 4];
    (
        series(&[1], &den),
        series(&[1, -2], &den),
        series(&[1, -4, 4], &den),
    )
}

/// `T(x) = (1-2x)^2 / (1-8x+8x^2)`: the generating function of the ladder
/// reciprocal hypertree counts.
pub fn t_series() -> PowerSeries {
    series(&[1, -4, 4], &[1, -8, 8])
}

/// The ladder map with `m` bounded faces: a 2 x (m+1) grid drawn in the
/// plane, vertices carrying clockwise rotations and points numbered
/// column by column, left to right. Each edge `e` (0-based) owns the darts
/// `2e+1, 2e+2`.
pub fn build_ladder_map(m: u32) -> Result<HypermapCollection> {
    build_ladder_map_inner(m, None)
}

fn build_ladder_map_inner(m: u32, shuffle_seed: Option<u64>) -> Result<HypermapCollection> {
    if m < 1 {
        return Err(Error::InvalidParameter(
            "ladder needs at least one bounded face".into(),
        ));
    }
    // Edge order per column: V_0, then TH_i, BH_i, V_i for i = 1..m.
    let vertical = |i: u32| if i == 0 { 0 } else { 3 * i };
    let top_rail = |i: u32| 3 * i - 2; // T_{i-1} (end 0) to T_i (end 1)
    let bottom_rail = |i: u32| 3 * i - 1;
    let dart = |edge: u32, end: u32| 2 * edge + 1 + end;

    let edge_count = 3 * m + 1;
    let n = 2 * edge_count;
    let mut sigma_cycles: Vec<Vec<u32>> = Vec::new();
    for i in 0..=m {
        // Top vertex T_i, clockwise: east, south, west.
        let mut top = Vec::new();
        if i < m {
            top.push(dart(top_rail(i + 1), 0));
        }
        top.push(dart(vertical(i), 0));
        if i > 0 {
            top.push(dart(top_rail(i), 1));
        }
        sigma_cycles.push(top);
        // Bottom vertex B_i, clockwise: east, west, north.
        let mut bottom = Vec::new();
        if i < m {
            bottom.push(dart(bottom_rail(i + 1), 0));
        }
        if i > 0 {
            bottom.push(dart(bottom_rail(i), 1));
        }
        bottom.push(dart(vertical(i), 1));
        sigma_cycles.push(bottom);
    }
    if let Some(seed) = shuffle_seed {
        let mut rng = rng_from_seed(seed);
        for cycle in &mut sigma_cycles {
            cycle.shuffle(&mut rng);
        }
    }
    let alpha_cycles: Vec<Vec<u32>> = (0..edge_count)
        .map(|e| vec![dart(e, 0), dart(e, 1)])
        .collect();
    let map = HypermapCollection::new(
        Permutation::from_cycles(n, &sigma_cycles)?,
        Permutation::from_cycles(n, &alpha_cycles)?,
    )?;
    debug_assert_eq!(map.kappa(), 1);
    Ok(map)
}

/// The reciprocal `(alpha_m, sigma_m)` of the ladder map. Ladder degrees are
/// at most 3, so every hyperedge of the reciprocal is short.
pub fn build_ladder_reciprocal(m: u32) -> Result<HypermapCollection> {
    let reciprocal = build_ladder_map(m)?.reciprocal();
    assert!(reciprocal.has_short_hyperedges());
    Ok(reciprocal)
}

/// Like `build_ladder_reciprocal` but with every vertex rotation replaced by
/// a seeded random cyclic order. Hypertree counts do not depend on the
/// rotations, only on the underlying graph.
pub fn build_ladder_reciprocal_with_rotations(m: u32, seed: u64) -> Result<HypermapCollection> {
    let reciprocal = build_ladder_map_inner(m, Some(seed))?.reciprocal();
    assert!(reciprocal.has_short_hyperedges());
    Ok(reciprocal)
}

/// Which argument the trailing `G` factor of the sparse-subset decomposition
/// receives. Only `Shifted` is consistent with the `(-4x^2)^k` grading and
/// with the hypertree oracle; `AsWritten` is kept so the disagreement stays
/// checkable.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TailFactor {
    /// `G(m - i_k)`.
    AsWritten,
    /// `G(m - i_k - 1)`, mirroring the leading `G(i_1 - 1)`.
    Shifted,
}

/// The ladder hypertree count assembled from the sparse-subset decomposition:
/// `H(m) + Σ_{k>=1} (-4)^k Σ_{sparse i_1<..<i_k} G(i_1 - 1)
///  Π_j F(i_{j+1} - i_j - 2) G(tail)`,
/// summing over sparse subsets of `{1..m-1}` (no two consecutive columns).
pub fn ladder_decomposition_count(m: u32, tail: TailFactor) -> BigInt {
    let (f, g, h) = fgh_series();
    let f: Vec<BigInt> = f.prefix(m as usize + 1);
    let g: Vec<BigInt> = g.prefix(m as usize + 1);
    let mut total = h.coefficient(m as usize);

    fn sparse_subsets(from: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        for next in from..=max {
            current.push(next);
            out.push(current.clone());
            sparse_subsets(next + 2, max, current, out);
            current.pop();
        }
    }
    if m >= 2 {
        let mut subsets = Vec::new();
        sparse_subsets(1, m - 1, &mut Vec::new(), &mut subsets);
        for subset in subsets {
            let k = subset.len() as u32;
            let mut term = g[(subset[0] - 1) as usize].clone();
            for pair in subset.windows(2) {
                term *= &f[(pair[1] - pair[0] - 2) as usize];
            }
            let last = *subset.last().expect("nonempty subset");
            let tail_index = match tail {
                TailFactor::AsWritten => m - last,
                TailFactor::Shifted => m - last - 1,
            };
            term *= &g[tail_index as usize];
            let weight = BigInt::from(4u64).pow(k);
            if k.is_multiple_of(2) {
                total += term * weight;
            } else {
                total -= term * weight;
            }
        }
    }
    total
}

/// The number of spanning hypertrees of the ladder reciprocal, computed three
/// ways and cross-checked: the signed two-colored count on the built map
/// (the oracle), the coefficient of `T(x)`, and the sparse-subset
/// decomposition with the shifted tail factor. Returns the oracle value.
pub fn ladder_hypertree_count(m: u32) -> Result<BigInt> {
    let oracle = crate::twocolor::hypertree_count(&build_ladder_reciprocal(m)?)?;
    let coefficient = t_series().coefficient(m as usize);
    assert_eq!(
        oracle, coefficient,
        "two-colored count vs T(x) coefficient at m = {m}"
    );
    let decomposition = ladder_decomposition_count(m, TailFactor::Shifted);
    assert_eq!(
        oracle, decomposition,
        "two-colored count vs sparse decomposition at m = {m}"
    );
    Ok(oracle)
}

/// The generating function `Σ_m Θ(a, 4.., b; 2) x^m` of pencil counts with
/// constant inner multiplicity 4 and end multiplicities `a`, `b`, as a closed
/// rational expression. Valid for the coefficients with `m >= 2`; the `x^0`
/// and `x^1` coefficients are boundary conventions (`1` and `a + b - 4`),
/// not pencil counts.
pub fn pencil_run_series(a: u64, b: u64) -> Result<PowerSeries> {
    if a < 1 || b < 1 {
        return Err(Error::InvalidParameter(
            "end multiplicities must be positive".into(),
        ));
    }
    let (a, b) = (a as i64, b as i64);
    let one_minus_2x = UniPoly::from_i64(&[1, -2]);
    let sq = one_minus_2x.mul(&one_minus_2x);
    let term1 = RationalFunction::one();
    let term2 = RationalFunction::new(
        UniPoly::from_i64(&[0, a + b - 4, 16 - 2 * a - 2 * b]),
        sq.clone(),
    )?;
    // (64x^2 + 8(a+b)x(1-2x) + ab(1-2x)^2) x^2 / ((4x^2-8x+1)(1-2x)^2)
    let bracket = UniPoly::from_i64(&[0, 0, 64])
        .add(&UniPoly::from_i64(&[0, 8 * (a + b)]).mul(&one_minus_2x))
        .add(&sq.scale(&BigInt::from(a * b)));
    let term3 = RationalFunction::new(
        bracket.mul(&UniPoly::from_i64(&[0, 0, 1])),
        UniPoly::from_i64(&[1, -8, 4]).mul(&sq),
    )?;
    PowerSeries::new(term1.add(&term2).add(&term3))
}
