//! Classification of hyperedges of length 2 and 3 by vertex incidence and
//! disconnection behavior.

use std::fmt;

use crate::perm::HypermapCollection;
use crate::{Error, Result};

/// The class of a hyperedge: six mutually exclusive classes for 3-cycles of
/// `alpha`, three for 2-cycles.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum EdgeClass {
    // 3-cycle classes.
    OrdinaryRegular,
    SimpleLoop,
    DoubleLoop,
    SimpleBridge,
    BridgeLoop,
    DoubleBridge,
    // 2-cycle classes.
    Loop,
    Bridge,
    Ordinary,
}

impl fmt::Display for EdgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            EdgeClass::OrdinaryRegular => "ordinary regular",
            EdgeClass::SimpleLoop => "simple loop",
            EdgeClass::DoubleLoop => "double loop",
            EdgeClass::SimpleBridge => "simple bridge",
            EdgeClass::BridgeLoop => "bridge-loop",
            EdgeClass::DoubleBridge => "double bridge",
            EdgeClass::Loop => "loop",
            EdgeClass::Bridge => "bridge",
            EdgeClass::Ordinary => "ordinary",
        };
        write!(f, "{name}")
    }
}

fn check_alpha_cycle(h: &HypermapCollection, cycle: &[u32]) -> Result<()> {
    let n = h.n();
    for &p in cycle {
        if p == 0 || p > n {
            return Err(Error::PointOutOfRange { point: p, n });
        }
    }
    let matches = cycle
        .iter()
        .enumerate()
        .all(|(k, &p)| h.alpha().apply(p) == cycle[(k + 1) % cycle.len()]);
    if !matches {
        return Err(Error::NotAnAlphaCycle(cycle.to_vec()));
    }
    Ok(())
}

/// `kappa` after replacing the 3-cycle `(i, j, k)` of `alpha` with three fixed
/// points, minus `kappa` before. The replacement is `alpha (i, k, j)`.
fn full_deletion_delta(h: &HypermapCollection, cycle: &[u32]) -> u32 {
    let deleted = h.alpha().mul_cycle_right(&[cycle[0], cycle[2], cycle[1]]);
    let split = HypermapCollection::new(h.sigma().clone(), deleted).expect("same ground set");
    split.kappa() - h.kappa()
}

/// Classifies a 3-cycle of `alpha` into one of the six classes. Crossing the
/// loop trichotomy (how many of the three points share a vertex) with the
/// bridge trichotomy (how much full deletion raises `kappa`) leaves exactly
/// six realizable combinations; the rest are rejected as unreachable.
pub fn classify3(h: &HypermapCollection, cycle: &[u32]) -> Result<EdgeClass> {
    if cycle.len() != 3 {
        return Err(Error::NotAnAlphaCycle(cycle.to_vec()));
    }
    check_alpha_cycle(h, cycle)?;
    let (i, j, k) = (cycle[0], cycle[1], cycle[2]);
    let sigma = h.sigma();
    let shared = [(i, j), (i, k), (j, k)]
        .iter()
        .filter(|&&(a, b)| sigma.same_cycle(a, b))
        .count();
    // 0 shared pairs: three distinct vertices; 1: exactly two points share;
    // 3: all on one vertex. Two shared pairs force the third.
    let delta = full_deletion_delta(h, cycle);
    match (shared, delta) {
        (0, 0) => Ok(EdgeClass::OrdinaryRegular),
        (1, 0) => Ok(EdgeClass::SimpleLoop),
        (3, 0) => Ok(EdgeClass::DoubleLoop),
        (0, 1) => Ok(EdgeClass::SimpleBridge),
        (1, 1) => Ok(EdgeClass::BridgeLoop),
        (0, 2) => Ok(EdgeClass::DoubleBridge),
        other => unreachable!("impossible 3-cycle class {other:?}"),
    }
}

/// Classifies a 2-cycle of `alpha`: a loop if both points share a vertex,
/// a bridge if deleting the edge disconnects, ordinary otherwise.
pub fn classify2(h: &HypermapCollection, cycle: &[u32]) -> Result<EdgeClass> {
    if cycle.len() != 2 {
        return Err(Error::NotAnAlphaCycle(cycle.to_vec()));
    }
    check_alpha_cycle(h, cycle)?;
    let (i, j) = (cycle[0], cycle[1]);
    if h.sigma().same_cycle(i, j) {
        return Ok(EdgeClass::Loop);
    }
    let deleted = HypermapCollection::new(h.sigma().clone(), h.alpha().mul_swap_right(i, j))
        .expect("same ground set");
    if deleted.kappa() > h.kappa() {
        Ok(EdgeClass::Bridge)
    } else {
        Ok(EdgeClass::Ordinary)
    }
}
