//! The Whitney polynomial `R(sigma, alpha; u, v)`, by definition and by
//! deletion-contraction recurrences, plus hyperedge classification and
//! special evaluations.
//!
//! The defining sum runs over all refinements `beta <= alpha`:
//! `R = Σ_beta u^(kappa(sigma,beta) - kappa(sigma,alpha))
//!            v^(kappa(sigma,beta) + n - z(beta) - z(sigma))`.

mod classify;
mod evaluations;
mod recursive;

pub use classify::{classify2, classify3, EdgeClass};
pub use evaluations::{eval_minus_one, eval_two_cycle_zero};
pub use recursive::{tutte_positive_form, whitney_recursive, TuttePositiveForm};

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::perm::{HypermapCollection, Permutation};
use crate::poly::BivariatePolynomial;
use crate::refine::RefinementSpace;
use crate::{Error, Result};

/// The exponent pair of one refinement's contribution.
fn term_exponents(h: &HypermapCollection, beta: &Permutation, kappa_alpha: u32) -> (u32, u32) {
    let pair = HypermapCollection::new(h.sigma().clone(), beta.clone()).expect("same ground set");
    let kappa_beta = pair.kappa();
    assert!(kappa_beta >= kappa_alpha, "refining cannot reconnect");
    let v_exp = kappa_beta as i64 + h.n() as i64
        - beta.cycle_count() as i64
        - h.sigma().cycle_count() as i64;
    assert!(v_exp >= 0, "v-exponent must be nonnegative");
    (kappa_beta - kappa_alpha, v_exp as u32)
}

/// The Whitney polynomial by its defining sum over all refinements of
/// `alpha`. Exact for any collection; the refinement space is streamed and,
/// when large, split into index ranges processed in parallel.
pub fn whitney_bruteforce(h: &HypermapCollection) -> BivariatePolynomial {
    let kappa_alpha = h.kappa();
    let space = RefinementSpace::new(h.alpha());
    let len = space.len();
    let sum_range = |range: std::ops::Range<u128>| {
        let mut acc = BivariatePolynomial::zero();
        for index in range {
            let beta = space.get(index);
            let (a, b) = term_exponents(h, &beta, kappa_alpha);
            acc.add_term(a, b, &BigInt::one());
        }
        acc
    };
    const SERIAL_LIMIT: u128 = 1 << 12;
    if len <= SERIAL_LIMIT {
        return sum_range(0..len);
    }
    let chunks = (rayon::current_num_threads() as u128 * 8).max(1);
    let chunk_size = len.div_ceil(chunks);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * chunk_size;
            let end = ((c + 1) * chunk_size).min(len);
            sum_range(start..end)
        })
        .reduce(BivariatePolynomial::zero, |a, b| a.add(&b))
}

/// Replaces one cycle of `perm` by the given blocks, leaving everything else
/// untouched. The blocks must partition the cycle's points.
fn replace_cycle(perm: &Permutation, cycle: &[u32], blocks: &[&[u32]]) -> Permutation {
    debug_assert_eq!(blocks.iter().map(|b| b.len()).sum::<usize>(), cycle.len());
    let mut images = perm.images().to_vec();
    for block in blocks {
        for (k, &p) in block.iter().enumerate() {
            images[(p - 1) as usize] = block[(k + 1) % block.len()];
        }
    }
    Permutation::from_images(images).expect("blocks partition the cycle")
}

/// One step of the general cycle-elimination recurrence: expands `R(h)` as
/// `Σ_k R(ψ_k) w_k` over the given cycle `(c_1, ..., c_m)` of `alpha`, with
/// every summand satisfying `kappa(ψ_k) = kappa(h)`. The monomials `w_k` come
/// from the set `{1, u, v, uv}`.
pub fn psi_expand(
    h: &HypermapCollection,
    cycle: &[u32],
) -> Result<Vec<(HypermapCollection, BivariatePolynomial)>> {
    let m = cycle.len();
    if m < 2 {
        return Err(Error::FixedPointCycle(m as u32));
    }
    // Any rotation of a stored alpha-cycle is accepted; the given rotation
    // fixes the frame the index arithmetic below runs in.
    let is_cycle = cycle
        .iter()
        .enumerate()
        .all(|(k, &p)| p >= 1 && p <= h.n() && h.alpha().apply(p) == cycle[(k + 1) % m]);
    if !is_cycle || h.alpha().cycle_of(cycle[0]).len() != m {
        return Err(Error::NotAnAlphaCycle(cycle.to_vec()));
    }

    let sigma = h.sigma();
    let alpha = h.alpha();
    let kappa = h.kappa();
    let c = cycle;
    let mut out = Vec::with_capacity(m);

    for k in 1..=m {
        let ck = c[k - 1];
        let same = sigma.same_cycle(c[0], ck);

        // phi_k: split the cycle at position k with sigma merged when c_1 and
        // c_k lie on different vertices.
        let alpha_k = if k <= 2 {
            replace_cycle(alpha, c, &[&c[..1], &c[1..]])
        } else {
            replace_cycle(alpha, c, &[&c[..1], &c[1..k - 1], &c[k - 1..]])
        };
        let sigma_k = if k == 1 || same {
            sigma.clone()
        } else {
            sigma.mul_swap_left(c[0], ck)
        };
        let phi = HypermapCollection::new(sigma_k, alpha_k)?;
        let kappa_phi = phi.kappa();
        debug_assert!(kappa_phi == kappa || kappa_phi == kappa + 1);

        let weight = BivariatePolynomial::monomial(
            kappa_phi - kappa,
            u32::from(k != 1 && same),
            BigInt::one(),
        );

        // z((c_1, c_k) sigma) <= z(sigma) exactly when k == 1 or the two
        // points lie on different vertices.
        let z_le = k == 1 || !same;
        let merged = kappa_phi == kappa;
        // Index arithmetic is modulo m with representatives in 1..=m.
        let wrap = |idx: usize| -> u32 { c[(idx + m - 1) % m] };
        let psi = match (z_le, merged) {
            (true, true) => {
                // ((1,k) sigma, (1,k) alpha (1,k-1))
                let mut a = alpha.clone();
                let j = wrap(if k == 1 { m } else { k - 1 });
                if j != c[0] {
                    a = a.mul_swap_right(c[0], j);
                }
                let (s, a) = if k == 1 {
                    (sigma.clone(), a)
                } else {
                    (sigma.mul_swap_left(c[0], ck), a.mul_swap_left(c[0], ck))
                };
                HypermapCollection::new(s, a)?
            }
            (true, false) => {
                // ((1,2)(1,k) sigma, (1,2)(1,k) alpha)
                let (mut s, mut a) = (sigma.clone(), alpha.clone());
                if k != 1 {
                    s = s.mul_swap_left(c[0], ck);
                    a = a.mul_swap_left(c[0], ck);
                }
                s = s.mul_swap_left(c[0], c[1]);
                a = a.mul_swap_left(c[0], c[1]);
                HypermapCollection::new(s, a)?
            }
            (false, true) => {
                // (sigma, alpha (1,k-1)(1,m)): right factors attach outward,
                // so (1,k-1) multiplies alpha before (1,m) does.
                let mut a = alpha.clone();
                let j = wrap(k - 1);
                if j != c[0] {
                    a = a.mul_swap_right(c[0], j);
                }
                a = a.mul_swap_right(c[0], c[m - 1]);
                HypermapCollection::new(sigma.clone(), a)?
            }
            (false, false) => {
                // ((1,2) sigma, (1,2) alpha (k-1,m))
                let j = wrap(k - 1);
                let mut a = alpha.clone();
                if j != c[m - 1] {
                    a = a.mul_swap_right(j, c[m - 1]);
                }
                a = a.mul_swap_left(c[0], c[1]);
                let s = sigma.mul_swap_left(c[0], c[1]);
                HypermapCollection::new(s, a)?
            }
        };
        assert_eq!(
            psi.kappa(),
            kappa,
            "cycle elimination must preserve kappa (k = {k})"
        );
        out.push((psi, weight));
    }
    Ok(out)
}

/// The number of spanning hypertrees: the Whitney polynomial evaluated at
/// `u = v = 0`. Uses the recurrences when every hyperedge is short, the
/// defining sum otherwise.
pub fn hypertree_count(h: &HypermapCollection) -> Result<BigInt> {
    let kappa = h.kappa();
    if kappa != 1 {
        return Err(Error::Disconnected(kappa));
    }
    let r = if h.has_short_hyperedges() {
        whitney_recursive(h)?
    } else {
        whitney_bruteforce(h)
    };
    Ok(r.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn collection(n: u32, sigma: &[&[u32]], alpha: &[&[u32]]) -> HypermapCollection {
        let s: Vec<Vec<u32>> = sigma.iter().map(|c| c.to_vec()).collect();
        let a: Vec<Vec<u32>> = alpha.iter().map(|c| c.to_vec()).collect();
        HypermapCollection::from_cycles(n, &s, &a).unwrap()
    }

    fn poly(terms: &[(u32, u32, i64)]) -> BivariatePolynomial {
        let mut p = BivariatePolynomial::zero();
        for &(a, b, c) in terms {
            p.add_term(a, b, &BigInt::from(c));
        }
        p
    }

    #[test]
    fn bruteforce_bridge_and_loop() {
        let bridge = collection(2, &[], &[&[1, 2]]);
        assert_eq!(whitney_bruteforce(&bridge), poly(&[(0, 0, 1), (1, 0, 1)]));
        let loop_map = collection(2, &[&[1, 2]], &[&[1, 2]]);
        assert_eq!(whitney_bruteforce(&loop_map), poly(&[(0, 0, 1), (0, 1, 1)]));
    }

    #[test]
    fn bruteforce_simple_bridge_example() {
        let h = collection(5, &[&[1, 4], &[2, 5]], &[&[1, 2, 3], &[4, 5]]);
        assert_eq!(whitney_bruteforce(&h).to_string(), "u^2+u*v+4*u+v+3");
    }

    #[test]
    fn bruteforce_on_disconnected_collection() {
        // u-exponents track the growth of kappa above its base value.
        let h = collection(4, &[], &[&[1, 2], &[3, 4]]);
        assert_eq!(h.kappa(), 2);
        let r = whitney_bruteforce(&h);
        assert_eq!(r, poly(&[(0, 0, 1), (1, 0, 2), (2, 0, 1)]));
    }

    #[test]
    fn psi_expand_matches_bruteforce_on_long_cycles() {
        // A 4-cycle hyperedge: one elimination step, checked against the
        // defining sum on both sides.
        let h = collection(6, &[&[1, 5], &[2, 6], &[3, 4]], &[&[1, 2, 3, 4], &[5, 6]]);
        let cycle = h.alpha().cycle_of(1).to_vec();
        let summands = psi_expand(&h, &cycle).unwrap();
        assert_eq!(summands.len(), 4);
        let mut total = BivariatePolynomial::zero();
        for (psi, w) in &summands {
            total = total.add(&whitney_bruteforce(psi).mul(w));
        }
        assert_eq!(total, whitney_bruteforce(&h));
    }

    #[test]
    fn psi_expand_two_cycle_reduces_to_deletion_contraction() {
        let bridge = collection(2, &[], &[&[1, 2]]);
        let summands = psi_expand(&bridge, &[1, 2]).unwrap();
        // Both summands are the contraction, weighted 1 + u.
        let contraction = collection(2, &[&[1, 2]], &[]);
        let mut weight = BivariatePolynomial::zero();
        for (psi, w) in &summands {
            assert_eq!(psi, &contraction);
            weight = weight.add(w);
        }
        assert_eq!(weight, poly(&[(0, 0, 1), (1, 0, 1)]));
    }

    #[test]
    fn psi_expand_three_cycle_forms() {
        // Double loop sigma = alpha = (1 2 3): the three summands are the
        // deletion (sigma, alpha(1,3)) twice (weights 1 and v) and the full
        // deletion (sigma, alpha(1,3,2)) with weight v, recovering the
        // (1 + 3v + v^2) rule after the inner 2-cycle is eliminated.
        let h = collection(3, &[&[1, 2, 3]], &[&[1, 2, 3]]);
        let summands = psi_expand(&h, &[1, 2, 3]).unwrap();
        let deletion = collection(3, &[&[1, 2, 3]], &[&[2, 3]]);
        let full = collection(3, &[&[1, 2, 3]], &[]);
        assert_eq!(summands[0].0, deletion);
        assert_eq!(summands[0].1, poly(&[(0, 0, 1)]));
        assert_eq!(summands[1].0, deletion);
        assert_eq!(summands[1].1, poly(&[(0, 1, 1)]));
        assert_eq!(summands[2].0, full);
        assert_eq!(summands[2].1, poly(&[(0, 1, 1)]));

        // Double bridge sigma = id: the first summand is the contraction
        // ((1,2) sigma, (1,2) alpha) with weight u.
        let db = collection(3, &[], &[&[1, 2, 3]]);
        let summands = psi_expand(&db, &[1, 2, 3]).unwrap();
        assert_eq!(summands[0].0, collection(3, &[&[1, 2]], &[&[2, 3]]));
        assert_eq!(summands[0].1, poly(&[(1, 0, 1)]));
    }

    #[test]
    fn psi_expand_rejects_fixed_points_and_non_cycles() {
        let h = collection(3, &[], &[&[1, 2]]);
        assert_eq!(psi_expand(&h, &[3]).unwrap_err(), Error::FixedPointCycle(1));
        assert!(matches!(
            psi_expand(&h, &[1, 3]),
            Err(Error::NotAnAlphaCycle(_))
        ));
    }

    #[test]
    fn hypertree_count_small() {
        let h = collection(3, &[], &[&[1, 2, 3]]);
        assert_eq!(hypertree_count(&h).unwrap(), BigInt::from(1));
        let loop_map = collection(2, &[&[1, 2]], &[&[1, 2]]);
        assert_eq!(hypertree_count(&loop_map).unwrap(), BigInt::from(1));
        let disconnected = collection(4, &[], &[&[1, 2], &[3, 4]]);
        assert_eq!(
            hypertree_count(&disconnected).unwrap_err(),
            Error::Disconnected(2)
        );
    }
}
