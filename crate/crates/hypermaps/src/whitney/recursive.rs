//! Recursive computation of the Whitney polynomial for collections whose
//! hyperedges have at most three points, by eliminating one hyperedge at a
//! time: the familiar deletion-contraction rules for 2-cycles and six rules
//! for 3-cycles keyed on the edge class.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Signed;

use super::classify::{classify2, classify3, EdgeClass};
use crate::perm::{HypermapCollection, Permutation};
use crate::poly::BivariatePolynomial;
use crate::{Error, Result};

/// Splices the dropped points out of `perm`: the image of a kept point is its
/// first kept iterate. `new_label[p - 1]` is the 1-based new label of `p`, or
/// 0 when `p` is dropped.
fn splice(perm: &Permutation, keep: &[u32], new_label: &[u32]) -> Permutation {
    let images = keep
        .iter()
        .map(|&p| {
            let mut q = perm.apply(p);
            while new_label[(q - 1) as usize] == 0 {
                q = perm.apply(q);
            }
            new_label[(q - 1) as usize]
        })
        .collect();
    Permutation::from_images(images).expect("splicing keeps a bijection")
}

/// Drops the fixed points of `alpha` from both permutations and relabels the
/// rest by rank. The Whitney polynomial is invariant under this: buds
/// contribute nothing to any term of the defining sum.
fn drop_buds(sigma: &Permutation, alpha: &Permutation) -> (Permutation, Permutation) {
    let n = alpha.n();
    let keep: Vec<u32> = (1..=n).filter(|&p| alpha.apply(p) != p).collect();
    let mut new_label = vec![0u32; n as usize];
    for (idx, &p) in keep.iter().enumerate() {
        new_label[(p - 1) as usize] = idx as u32 + 1;
    }
    (
        splice(sigma, &keep, &new_label),
        splice(alpha, &keep, &new_label),
    )
}

fn memo_key(sigma: &Permutation, alpha: &Permutation) -> Vec<u32> {
    let mut key = Vec::with_capacity(2 * sigma.n() as usize);
    key.extend_from_slice(sigma.images());
    key.extend_from_slice(alpha.images());
    key
}

fn kappa_of(sigma: &Permutation, alpha: Permutation) -> u32 {
    HypermapCollection::new(sigma.clone(), alpha)
        .expect("same ground set")
        .kappa()
}

/// The pivot hyperedge: the cycle containing the smallest point. After
/// `drop_buds` every cycle has length at least 2, so this is always a valid
/// pivot and the recursion is deterministic.
fn pivot(alpha: &Permutation) -> Vec<u32> {
    alpha.cycles()[0].clone()
}

/// Rotates a 3-cycle so the rules of the recurrence apply literally:
/// for loops the two points sharing a vertex come first; for simple bridges
/// splitting off the first point keeps `kappa` while splitting off the third
/// raises it. Double loops, double bridges and ordinary regular hyperedges
/// work in any rotation.
fn normalize_rotation(
    sigma: &Permutation,
    alpha: &Permutation,
    cycle: &[u32],
    class: EdgeClass,
) -> [u32; 3] {
    let rotations = [
        [cycle[0], cycle[1], cycle[2]],
        [cycle[1], cycle[2], cycle[0]],
        [cycle[2], cycle[0], cycle[1]],
    ];
    match class {
        EdgeClass::SimpleLoop | EdgeClass::BridgeLoop => rotations
            .into_iter()
            .find(|r| sigma.same_cycle(r[0], r[1]))
            .expect("a single loop has a unique vertex-sharing pair"),
        EdgeClass::SimpleBridge => {
            let kappa = kappa_of(sigma, alpha.clone());
            // splits_off(x) deletes (x, pred(x)), turning x into a bud.
            let splits_off = |r: &[u32; 3]| -> bool {
                kappa_of(sigma, alpha.mul_swap_right(r[0], r[2])) > kappa
            };
            let raises: Vec<bool> = rotations.iter().map(splits_off).collect();
            rotations
                .into_iter()
                .enumerate()
                .find(|(i, _)| !raises[*i] && raises[(i + 2) % 3])
                .map(|(_, r)| r)
                .expect("a simple bridge admits a valid rotation")
        }
        _ => rotations[0],
    }
}

fn one_plus_u() -> BivariatePolynomial {
    let mut p = BivariatePolynomial::one();
    p.add_term(1, 0, &BigInt::from(1));
    p
}

fn one_plus_v() -> BivariatePolynomial {
    let mut p = BivariatePolynomial::one();
    p.add_term(0, 1, &BigInt::from(1));
    p
}

/// `1 + 3w + w^2` in the given variable (0 = u, 1 = v).
fn double_weight(v: bool) -> BivariatePolynomial {
    let mut p = BivariatePolynomial::one();
    let (du, dv) = if v { (0, 1) } else { (1, 0) };
    p.add_term(du, dv, &BigInt::from(3));
    p.add_term(2 * du, 2 * dv, &BigInt::from(1));
    p
}

struct Recursion {
    memo: HashMap<Vec<u32>, BivariatePolynomial>,
}

impl Recursion {
    fn run(&mut self, sigma: &Permutation, alpha: &Permutation) -> BivariatePolynomial {
        let (sigma, alpha) = drop_buds(sigma, alpha);
        if alpha.n() == 0 {
            return BivariatePolynomial::one();
        }
        let key = memo_key(&sigma, &alpha);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let cycle = pivot(&alpha);
        let h = HypermapCollection::new(sigma.clone(), alpha.clone()).expect("same ground set");
        let result = if cycle.len() == 2 {
            let (i, j) = (cycle[0], cycle[1]);
            match classify2(&h, &cycle).expect("pivot is an alpha cycle") {
                EdgeClass::Loop => one_plus_v().mul(&self.run(&sigma, &alpha.mul_swap_right(i, j))),
                EdgeClass::Bridge => one_plus_u()
                    .mul(&self.run(&sigma.mul_swap_left(i, j), &alpha.mul_swap_left(i, j))),
                EdgeClass::Ordinary => self
                    .run(&sigma.mul_swap_left(i, j), &alpha.mul_swap_left(i, j))
                    .add(&self.run(&sigma, &alpha.mul_swap_right(i, j))),
                _ => unreachable!("classify2 returns a 2-cycle class"),
            }
        } else {
            let class = classify3(&h, &cycle).expect("pivot is an alpha cycle");
            let [x, y, z] = normalize_rotation(&sigma, &alpha, &cycle, class);
            // alpha' turns the whole hyperedge into buds.
            let deleted = alpha.mul_cycle_right(&[x, z, y]);
            match class {
                EdgeClass::DoubleLoop => double_weight(true).mul(&self.run(&sigma, &deleted)),
                EdgeClass::DoubleBridge => {
                    double_weight(false).mul(&self.run(&sigma.mul_cycle_left(&[x, z, y]), &deleted))
                }
                EdgeClass::SimpleLoop => {
                    let a = self.run(&sigma.mul_swap_left(y, z), &deleted);
                    let b = self.run(&sigma, &deleted);
                    let c = self.run(&sigma.mul_swap_left(x, z), &deleted);
                    one_plus_v().mul(&a.add(&b)).add(&c)
                }
                EdgeClass::SimpleBridge => {
                    let a = self.run(&sigma.mul_swap_left(y, z), &deleted);
                    let b = self.run(&sigma.mul_cycle_left(&[x, z, y]), &deleted);
                    let c = self.run(&sigma.mul_swap_left(x, z), &deleted);
                    one_plus_u().mul(&a.add(&b)).add(&c)
                }
                EdgeClass::BridgeLoop => {
                    let a = self.run(&sigma.mul_swap_left(y, z), &deleted);
                    let c = self.run(&sigma.mul_swap_left(x, z), &deleted);
                    one_plus_u().mul(&one_plus_v()).mul(&a).add(&c)
                }
                EdgeClass::OrdinaryRegular => {
                    let mut sum = self.run(&sigma, &deleted);
                    sum = sum.add(&self.run(&sigma.mul_swap_left(y, z), &deleted));
                    sum = sum.add(&self.run(&sigma.mul_swap_left(x, y), &deleted));
                    sum = sum.add(&self.run(&sigma.mul_cycle_left(&[x, z, y]), &deleted));
                    sum.add(&self.run(&sigma.mul_swap_left(x, z), &deleted))
                }
                _ => unreachable!("classify3 returns a 3-cycle class"),
            }
        };
        self.memo.insert(key, result.clone());
        result
    }
}

/// The Whitney polynomial by hyperedge elimination. Requires every cycle of
/// `alpha` to have at most 3 points; agrees with `whitney_bruteforce` on its
/// whole domain. Subproblems are memoized on the bud-free relabeled pair,
/// which recursion trees on ladder-like inputs share heavily.
pub fn whitney_recursive(h: &HypermapCollection) -> Result<BivariatePolynomial> {
    let longest = h.alpha().max_cycle_len();
    if longest > 3 {
        return Err(Error::LongHyperedge(longest));
    }
    let mut rec = Recursion {
        memo: HashMap::new(),
    };
    Ok(rec.run(h.sigma(), h.alpha()))
}

/// A Whitney polynomial written as a nonnegative combination
/// `Σ c_ab (1+u)^a (1+v)^b`; exists whenever the recursion never meets a
/// double loop or a double bridge on any branch.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TuttePositiveForm {
    terms: BivariatePolynomial,
}

impl TuttePositiveForm {
    /// Coefficients indexed by `(a, b)` with the monomial `(1+u)^a (1+v)^b`.
    pub fn terms(&self) -> &BivariatePolynomial {
        &self.terms
    }

    /// Expands back into the ordinary `u, v` monomial basis.
    pub fn expand(&self) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (&(a, b), c) in self.terms.terms() {
            let factor = one_plus_u().pow(a).mul(&one_plus_v().pow(b));
            out = out.add(&factor.scale(c));
        }
        out
    }
}

trait PowExt {
    fn pow(&self, exp: u32) -> BivariatePolynomial;
}

impl PowExt for BivariatePolynomial {
    fn pow(&self, exp: u32) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::one();
        for _ in 0..exp {
            out = out.mul(self);
        }
        out
    }
}

struct PositiveRecursion {
    memo: HashMap<Vec<u32>, Option<BivariatePolynomial>>,
}

impl PositiveRecursion {
    /// Like `Recursion::run` but in the `(1+u), (1+v)` power basis, where the
    /// exponent pair is stored directly in the term key. `None` signals a
    /// double loop or double bridge somewhere below.
    fn run(&mut self, sigma: &Permutation, alpha: &Permutation) -> Option<BivariatePolynomial> {
        let (sigma, alpha) = drop_buds(sigma, alpha);
        if alpha.n() == 0 {
            return Some(BivariatePolynomial::one());
        }
        let key = memo_key(&sigma, &alpha);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let shift = |p: BivariatePolynomial, du: u32, dv: u32| {
            p.mul(&BivariatePolynomial::monomial(du, dv, BigInt::from(1)))
        };
        let cycle = pivot(&alpha);
        let h = HypermapCollection::new(sigma.clone(), alpha.clone()).expect("same ground set");
        let result = if cycle.len() == 2 {
            let (i, j) = (cycle[0], cycle[1]);
            match classify2(&h, &cycle).expect("pivot is an alpha cycle") {
                EdgeClass::Loop => self
                    .run(&sigma, &alpha.mul_swap_right(i, j))
                    .map(|p| shift(p, 0, 1)),
                EdgeClass::Bridge => self
                    .run(&sigma.mul_swap_left(i, j), &alpha.mul_swap_left(i, j))
                    .map(|p| shift(p, 1, 0)),
                EdgeClass::Ordinary => {
                    let a = self.run(&sigma.mul_swap_left(i, j), &alpha.mul_swap_left(i, j));
                    let b = self.run(&sigma, &alpha.mul_swap_right(i, j));
                    match (a, b) {
                        (Some(a), Some(b)) => Some(a.add(&b)),
                        _ => None,
                    }
                }
                _ => unreachable!(),
            }
        } else {
            let class = classify3(&h, &cycle).expect("pivot is an alpha cycle");
            if matches!(class, EdgeClass::DoubleLoop | EdgeClass::DoubleBridge) {
                self.memo.insert(key, None);
                return None;
            }
            let [x, y, z] = normalize_rotation(&sigma, &alpha, &cycle, class);
            let deleted = alpha.mul_cycle_right(&[x, z, y]);
            match class {
                EdgeClass::SimpleLoop => {
                    let a = self.run(&sigma.mul_swap_left(y, z), &deleted)?;
                    let b = self.run(&sigma, &deleted)?;
                    let c = self.run(&sigma.mul_swap_left(x, z), &deleted)?;
                    Some(shift(a.add(&b), 0, 1).add(&c))
                }
                EdgeClass::SimpleBridge => {
                    let a = self.run(&sigma.mul_swap_left(y, z), &deleted)?;
                    let b = self.run(&sigma.mul_cycle_left(&[x, z, y]), &deleted)?;
                    let c = self.run(&sigma.mul_swap_left(x, z), &deleted)?;
                    Some(shift(a.add(&b), 1, 0).add(&c))
                }
                EdgeClass::BridgeLoop => {
                    let a = self.run(&sigma.mul_swap_left(y, z), &deleted)?;
                    let c = self.run(&sigma.mul_swap_left(x, z), &deleted)?;
                    Some(shift(a, 1, 1).add(&c))
                }
                EdgeClass::OrdinaryRegular => {
                    let mut sum = self.run(&sigma, &deleted)?;
                    sum = sum.add(&self.run(&sigma.mul_swap_left(y, z), &deleted)?);
                    sum = sum.add(&self.run(&sigma.mul_swap_left(x, y), &deleted)?);
                    sum = sum.add(&self.run(&sigma.mul_cycle_left(&[x, z, y]), &deleted)?);
                    Some(sum.add(&self.run(&sigma.mul_swap_left(x, z), &deleted)?))
                }
                _ => unreachable!(),
            }
        };
        self.memo.insert(key, result.clone());
        result
    }
}

/// Runs the recursion in the canonical pivot order while recording whether a
/// double loop or double bridge was met on any branch. If none was, returns
/// the combination `Σ c_ab (1+u)^a (1+v)^b` with all `c_ab >= 0`; otherwise
/// `None`. Pivot order is not searched over.
pub fn tutte_positive_form(h: &HypermapCollection) -> Result<Option<TuttePositiveForm>> {
    let longest = h.alpha().max_cycle_len();
    if longest > 3 {
        return Err(Error::LongHyperedge(longest));
    }
    let mut rec = PositiveRecursion {
        memo: HashMap::new(),
    };
    Ok(rec.run(h.sigma(), h.alpha()).map(|terms| {
        assert!(
            terms.terms().all(|(_, c)| !c.is_negative()),
            "the double-free recursion only ever adds nonnegative terms"
        );
        TuttePositiveForm { terms }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::whitney::whitney_bruteforce;

    fn collection(n: u32, sigma: &[&[u32]], alpha: &[&[u32]]) -> HypermapCollection {
        let s: Vec<Vec<u32>> = sigma.iter().map(|c| c.to_vec()).collect();
        let a: Vec<Vec<u32>> = alpha.iter().map(|c| c.to_vec()).collect();
        HypermapCollection::from_cycles(n, &s, &a).unwrap()
    }

    #[test]
    fn identity_alpha_gives_one() {
        let h = collection(4, &[&[1, 2, 3, 4]], &[]);
        assert_eq!(whitney_recursive(&h).unwrap(), BivariatePolynomial::one());
        assert_eq!(whitney_bruteforce(&h), BivariatePolynomial::one());
    }

    #[test]
    fn double_loop_and_double_bridge() {
        let dl = collection(3, &[&[1, 2, 3]], &[&[1, 2, 3]]);
        assert_eq!(whitney_recursive(&dl).unwrap().to_string(), "v^2+3*v+1");
        let db = collection(3, &[], &[&[1, 2, 3]]);
        assert_eq!(whitney_recursive(&db).unwrap().to_string(), "u^2+3*u+1");
    }

    #[test]
    fn simple_bridge_example() {
        let h = collection(5, &[&[1, 4], &[2, 5]], &[&[1, 2, 3], &[4, 5]]);
        let r = whitney_recursive(&h).unwrap();
        assert_eq!(r.to_string(), "u^2+u*v+4*u+v+3");
        assert_eq!(r, whitney_bruteforce(&h));
    }

    #[test]
    fn rejects_long_hyperedges() {
        let h = collection(4, &[], &[&[1, 2, 3, 4]]);
        assert_eq!(whitney_recursive(&h).unwrap_err(), Error::LongHyperedge(4));
    }

    #[test]
    fn matches_bruteforce_on_assorted_small_cases() {
        let cases = [
            collection(2, &[], &[&[1, 2]]),
            collection(2, &[&[1, 2]], &[&[1, 2]]),
            collection(4, &[&[1, 3], &[2, 4]], &[&[1, 2], &[3, 4]]),
            collection(5, &[&[1, 2, 4], &[3, 5]], &[&[1, 2, 3], &[4, 5]]),
            collection(3, &[&[1, 2]], &[&[1, 2, 3]]),
            collection(
                7,
                &[&[1, 4], &[2, 5, 6], &[3, 7]],
                &[&[1, 2, 3], &[4, 5], &[6, 7]],
            ),
            collection(6, &[&[1, 4], &[2, 6]], &[&[1, 2, 3], &[4, 5, 6]]),
        ];
        for h in cases {
            assert_eq!(
                whitney_recursive(&h).unwrap(),
                whitney_bruteforce(&h),
                "mismatch on sigma={} alpha={}",
                h.sigma(),
                h.alpha()
            );
        }
    }

    #[test]
    fn positive_form_on_the_simple_bridge_example() {
        let h = collection(5, &[&[1, 4], &[2, 5]], &[&[1, 2, 3], &[4, 5]]);
        let form = tutte_positive_form(&h).unwrap().expect("no doubles met");
        assert_eq!(form.expand(), whitney_bruteforce(&h));
        // (1+u)^2 + (1+u)(1+v) + (1+u)
        let mut expected = BivariatePolynomial::zero();
        expected.add_term(2, 0, &BigInt::from(1));
        expected.add_term(1, 1, &BigInt::from(1));
        expected.add_term(1, 0, &BigInt::from(1));
        assert_eq!(form.terms(), &expected);
    }

    #[test]
    fn positive_form_absent_on_double_loop() {
        let dl = collection(3, &[&[1, 2, 3]], &[&[1, 2, 3]]);
        assert!(tutte_positive_form(&dl).unwrap().is_none());
    }

    #[test]
    fn positive_form_always_present_for_maps() {
        let map = collection(4, &[&[1, 3], &[2, 4]], &[&[1, 2], &[3, 4]]);
        let form = tutte_positive_form(&map)
            .unwrap()
            .expect("maps never meet doubles");
        assert_eq!(form.expand(), whitney_bruteforce(&map));
    }
}
