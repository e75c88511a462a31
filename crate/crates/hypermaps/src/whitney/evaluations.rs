//! Special evaluations of the Whitney polynomial at negative arguments.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{whitney_bruteforce, whitney_recursive};
use crate::perm::HypermapCollection;
use crate::poly::BivariatePolynomial;
use crate::{Error, Result};

fn whitney_any(h: &HypermapCollection) -> BivariatePolynomial {
    if h.has_short_hyperedges() {
        whitney_recursive(h).expect("short hyperedges")
    } else {
        whitney_bruteforce(h)
    }
}

/// `R(-1, -1)` for a 3-uniform hypermap: always a sign, namely
/// `(-1)^((z(sigma) - z(faces))/2 + genus)`, which equals
/// `(-1)^(z(sigma) + z_3(alpha) + 1)` and so depends only on the underlying
/// multi-hypergraph. On even genus (in particular the plane case) the
/// exponent reduces to `(z(sigma) - z(faces))/2` alone; without the genus
/// term the sign would flip on odd-genus inputs, where `R` itself cannot see
/// the embedding but the face count does.
///
/// The vertex and face counts of a 3-uniform hypermap share the same parity,
/// so the exponent is an integer. Also checks that `R(-2, -1)` and
/// `R(-1, -2)` evaluate to the same sign.
pub fn eval_minus_one(h: &HypermapCollection) -> Result<i32> {
    let kappa = h.kappa();
    if kappa != 1 {
        return Err(Error::Disconnected(kappa));
    }
    let longest = h.alpha().max_cycle_len();
    if longest > 3 {
        return Err(Error::LongHyperedge(longest));
    }
    if h.alpha().cycles_of_len(2) != 0 {
        return Err(Error::HasTwoCycle);
    }
    let z_sigma = h.sigma().cycle_count() as i64;
    let z_faces = h.faces().cycle_count() as i64;
    let diff = z_sigma - z_faces;
    assert_eq!(diff.rem_euclid(2), 0, "vertex/face parity must agree");
    let exponent = diff / 2 + h.genus() as i64;
    let sign = if exponent.rem_euclid(2) == 0 { 1 } else { -1 };
    debug_assert_eq!(
        sign,
        if (z_sigma + h.alpha().cycles_of_len(3) as i64 + 1).rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    );

    let r = whitney_any(h);
    let minus_one = BigInt::from(-1);
    let minus_two = BigInt::from(-2);
    let expected = BigInt::from(sign);
    assert_eq!(r.evaluate_int(&minus_one, &minus_one), expected);
    assert_eq!(r.evaluate_int(&minus_two, &minus_one), expected);
    assert_eq!(r.evaluate_int(&minus_one, &minus_two), expected);
    Ok(sign)
}

/// `R(-1, -1)` for a hypermap whose `alpha` contains a 2-cycle: always 0.
pub fn eval_two_cycle_zero(h: &HypermapCollection) -> Result<BigInt> {
    let kappa = h.kappa();
    if kappa != 1 {
        return Err(Error::Disconnected(kappa));
    }
    if h.alpha().cycles_of_len(2) == 0 {
        return Err(Error::NoTwoCycle);
    }
    let minus_one = BigInt::from(-1);
    let value = whitney_any(h).evaluate_int(&minus_one, &minus_one);
    assert!(value.is_zero(), "a 2-cycle forces R(-1, -1) = 0");
    Ok(value)
}
