//! The Narayana-weighted random refinement model: each hyperedge is
//! independently replaced by a random noncrossing partition, a partition into
//! `k` blocks of an `m`-cycle drawn with probability `t^(k-1) / Ñ_m(t)`.
//! Exact reliability and random-cluster invariants come out of the Whitney
//! polynomial; a seeded Monte Carlo sampler cross-validates them.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;

use crate::perm::{HypermapCollection, Permutation};
use crate::poly::{BivariatePolynomial, RationalFunction, UniPoly};
use crate::random::{rng_from_seed, SeededRng};
use crate::refine::{noncrossing_partitions, reduced_narayana_poly, CycleRefinement};
use crate::whitney::{whitney_bruteforce, whitney_recursive};
use crate::{Error, Result};

fn whitney_any(h: &HypermapCollection) -> BivariatePolynomial {
    if h.has_short_hyperedges() {
        whitney_recursive(h).expect("short hyperedges")
    } else {
        whitney_bruteforce(h)
    }
}

/// `Π_i Ñ_i(t)^(z_i(alpha))`: the normalizing denominator of the model.
fn narayana_denominator(alpha: &Permutation) -> UniPoly {
    let mut den = UniPoly::one();
    for (len, count) in alpha.cycle_length_counts() {
        den = den.mul(&reduced_narayana_poly(len).pow(count));
    }
    den
}

/// The reliability function: the probability that the random refinement
/// leaves the hypermap connected, as an exact rational function of `t`.
///
/// Computed by substituting `u = 0`, `v = 1/t` into the Whitney polynomial
/// and clearing denominators symbolically: the `u = 0` slice collects exactly
/// the spanning refinements, and the prefactor `t^(n + 1 - z(sigma) -
/// z(alpha))` turns the slice into `Σ_beta t^(z(beta) - z(alpha))`, a genuine
/// polynomial, over the Narayana denominator.
pub fn reliability_function(h: &HypermapCollection) -> Result<RationalFunction> {
    let kappa = h.kappa();
    if kappa != 1 {
        return Err(Error::Disconnected(kappa));
    }
    let r = whitney_any(h);
    let shift = h.n() as i64 + 1 - h.sigma().cycle_count() as i64 - h.alpha().cycle_count() as i64;
    let mut num = UniPoly::zero();
    for (&(a, b), c) in r.terms() {
        if a != 0 {
            continue;
        }
        let exp = shift - b as i64;
        assert!(exp >= 0, "spanning refinements have z(beta) >= z(alpha)");
        num = num.add(&UniPoly::monomial(exp as usize, c.clone()));
    }
    RationalFunction::new(num, narayana_denominator(h.alpha()))
}

/// Evaluates the reliability function at a rational `t >= 0`. The reduced
/// form is finite on all of `t >= 0`; at `t = 0` the value is the right
/// limit, which is 1 for connected input (no destruction happens).
pub fn reliability_eval(h: &HypermapCollection, t: &BigRational) -> Result<BigRational> {
    if t.is_negative() {
        return Err(Error::InvalidParameter(format!(
            "reliability needs t >= 0, got {t}"
        )));
    }
    let fun = reliability_function(h)?;
    let value = fun
        .evaluate(t)
        .expect("Narayana denominators are positive on t >= 0");
    debug_assert!(!value.is_negative() && value <= BigRational::one());
    Ok(value)
}

/// The random-cluster partition function `Z(sigma, alpha; Q, t)` as a rational
/// function of `t` for a fixed rational `Q > 0`:
/// `Z = Q^kappa t^(n + kappa - z(sigma) - z(alpha)) Π Ñ_i(t)^(-z_i(alpha))
///      R(sigma, alpha; Q t, 1/t)`.
/// Defined for collections; normalizes `µ(beta) = Z^-1 Q^kappa(sigma,beta)
/// t^(z(beta)-z(alpha)) / Π Ñ_i(t)^(z_i(alpha))` to total mass 1.
pub fn partition_function(h: &HypermapCollection, q: &BigRational) -> Result<RationalFunction> {
    if !q.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "partition function needs Q > 0, got {q}"
        )));
    }
    let kappa = h.kappa();
    let r = whitney_any(h);
    let shift = h.n() as i64 + kappa as i64
        - h.sigma().cycle_count() as i64
        - h.alpha().cycle_count() as i64;
    // Each term c u^a v^b contributes c Q^(a + kappa) t^(shift + a - b); the
    // exponent equals z(beta) - z(alpha) >= 0. Q powers are cleared into a
    // common integer denominator afterwards.
    let (qn, qd) = (q.numer().clone(), q.denom().clone());
    let max_qpow = r.terms().map(|(&(a, _), _)| a).max().unwrap_or(0) + kappa;
    let mut num = UniPoly::zero();
    for (&(a, b), c) in r.terms() {
        let exp = shift + a as i64 - b as i64;
        assert!(exp >= 0, "t-exponent z(beta) - z(alpha) is nonnegative");
        let qpow = a + kappa;
        let coeff = c * qn.pow(qpow) * qd.pow(max_qpow - qpow);
        num = num.add(&UniPoly::monomial(exp as usize, coeff));
    }
    let den = narayana_denominator(h.alpha()).scale(&qd.pow(max_qpow));
    RationalFunction::new(num, den)
}

/// Per-cycle sampling tables: noncrossing partitions grouped by block count
/// with the exact integer weights `N(m, k) p^(k-1) q^(m-k)` for `t = p/q`.
struct CycleTable {
    by_block_count: Vec<Vec<CycleRefinement>>,
    weights: Vec<BigUint>,
    total: BigUint,
}

impl CycleTable {
    fn new(cycle: &[u32], t_num: &BigUint, t_den: &BigUint) -> Self {
        let m = cycle.len();
        let mut by_block_count: Vec<Vec<CycleRefinement>> = vec![Vec::new(); m];
        for part in noncrossing_partitions(cycle) {
            by_block_count[part.block_count() - 1].push(part);
        }
        let weights: Vec<BigUint> = (1..=m)
            .map(|k| {
                let narayana = BigUint::from(by_block_count[k - 1].len());
                narayana * t_num.pow(k as u32 - 1) * t_den.pow((m - k) as u32)
            })
            .collect();
        let total = weights.iter().sum();
        CycleTable {
            by_block_count,
            weights,
            total,
        }
    }
}

/// Uniform integer below `bound` by rejection on 64-bit limbs.
fn uniform_below(bound: &BigUint, rng: &mut SeededRng) -> BigUint {
    assert!(!bound.is_zero());
    if let Some(small) = bound.to_u64() {
        return BigUint::from(rng.gen_range(0..small));
    }
    let bits = bound.bits();
    let limbs = bits.div_ceil(64) as usize;
    let top_mask = if bits.is_multiple_of(64) {
        u64::MAX
    } else {
        (1u64 << (bits % 64)) - 1
    };
    loop {
        let mut digits: Vec<u64> = (0..limbs).map(|_| rng.gen()).collect();
        *digits.last_mut().expect("at least one limb") &= top_mask;
        let words: Vec<u32> = digits
            .iter()
            .flat_map(|d| [*d as u32, (*d >> 32) as u32])
            .collect();
        let candidate = BigUint::from_slice(&words);
        if candidate < *bound {
            return candidate;
        }
    }
}

/// Draws random refinements per the model. Two stages per hyperedge: the
/// block count `k` with probability `N(m, k) t^(k-1) / Ñ_m(t)`, then a
/// uniform noncrossing partition with `k` blocks. Sampling is table-driven
/// and supports cycles up to length 12; the stream is bit-reproducible for a
/// fixed seed.
pub struct RefinementSampler {
    n: u32,
    tables: Vec<CycleTable>,
    rng: SeededRng,
}

impl RefinementSampler {
    pub fn new(h: &HypermapCollection, t: &BigRational, seed: u64) -> Result<Self> {
        if !t.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "sampler needs t > 0, got {t}"
            )));
        }
        let longest = h.alpha().max_cycle_len();
        if longest > 12 {
            return Err(Error::InvalidParameter(format!(
                "sampler supports cycles up to length 12, got {longest}"
            )));
        }
        let t_num = t.numer().to_biguint().expect("t > 0");
        let t_den = t.denom().to_biguint().expect("positive denominator");
        let tables = h
            .alpha()
            .cycles()
            .iter()
            .map(|c| CycleTable::new(c, &t_num, &t_den))
            .collect();
        Ok(RefinementSampler {
            n: h.n(),
            tables,
            rng: rng_from_seed(seed),
        })
    }

    pub fn sample(&mut self) -> Permutation {
        let mut images: Vec<u32> = (1..=self.n).collect();
        for table in &self.tables {
            let mut draw = uniform_below(&table.total, &mut self.rng);
            let mut block_count = 0;
            for (k, w) in table.weights.iter().enumerate() {
                if draw < *w {
                    block_count = k;
                    break;
                }
                draw -= w;
            }
            let group = &table.by_block_count[block_count];
            let pick = uniform_below(&BigUint::from(group.len()), &mut self.rng)
                .to_usize()
                .expect("group sizes fit usize");
            for block in group[pick].blocks() {
                for (k, &p) in block.iter().enumerate() {
                    images[(p - 1) as usize] = block[(k + 1) % block.len()];
                }
            }
        }
        Permutation::from_images(images).expect("blocks partition the ground set")
    }
}

/// One random refinement for the given seed.
pub fn sample_refinement(
    h: &HypermapCollection,
    t: &BigRational,
    seed: u64,
) -> Result<Permutation> {
    Ok(RefinementSampler::new(h, t, seed)?.sample())
}

/// A Monte Carlo connectivity estimate with its binomial standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonteCarloEstimate {
    pub successes: u64,
    pub trials: u64,
    pub estimate: f64,
    pub stderr: f64,
}

/// Estimates the probability that the random refinement stays connected:
/// the fraction of samples with `kappa(sigma, beta) = 1`. Trials run in
/// fixed-size chunks with per-chunk seeds derived from `seed`, so results do
/// not depend on the number of worker threads.
pub fn mc_connectivity(
    h: &HypermapCollection,
    t: &BigRational,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    const CHUNK: u64 = 1024;
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be positive".into()));
    }
    RefinementSampler::new(h, t, seed)?; // validate parameters up front
    let chunks = trials.div_ceil(CHUNK);
    let successes: u64 = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let chunk_seed = seed
                .wrapping_mul(0x9e3779b97f4a7c15)
                .wrapping_add(chunk)
                .wrapping_add(1);
            let mut sampler =
                RefinementSampler::new(h, t, chunk_seed).expect("parameters validated");
            let count = CHUNK.min(trials - chunk * CHUNK);
            let mut hits = 0u64;
            for _ in 0..count {
                let beta = sampler.sample();
                let pair =
                    HypermapCollection::new(h.sigma().clone(), beta).expect("same ground set");
                if pair.kappa() == 1 {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let estimate = successes as f64 / trials as f64;
    let stderr = (estimate * (1.0 - estimate) / trials as f64).sqrt();
    Ok(MonteCarloEstimate {
        successes,
        trials,
        estimate,
        stderr,
    })
}
