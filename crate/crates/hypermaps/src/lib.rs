//! Exact-arithmetic invariants of hypermaps represented as permutation pairs.
//!
//! A collection of hypermaps is a pair of permutations `(sigma, alpha)` acting
//! on the points `1..=n`: the cycles of `sigma` are the vertices, the cycles of
//! `alpha` are the hyperedges, and the cycles of `alpha^-1 sigma` are the
//! faces. On top of this representation the crate computes
//!
//! - the Whitney polynomial `R(sigma, alpha; u, v)`, both by summing over all
//!   noncrossing refinements of `alpha` and by deletion-contraction recurrences
//!   for hypermaps whose hyperedges have at most three points,
//! - special evaluations of `R` (spanning-hypertree counts, sign identities at
//!   `u = v = -1` for 3-uniform hypermaps),
//! - the reliability function and random-cluster partition function of the
//!   Narayana-weighted random refinement model, together with an exact-weight
//!   Monte Carlo sampler,
//! - the associated two-colored map of a short-hyperedge hypermap and the
//!   signed spanning-tree formula for hypertree counting built on it,
//! - closed forms for spanning-tree and hypertree counts of generalized pencil
//!   graphs and ladder maps.
//!
//! All counting is exact: polynomial coefficients are arbitrary-precision
//! integers and rational-function arithmetic never leaves the integers.

pub mod ladder;
pub mod perm;
pub mod poly;
pub mod random;
pub mod refine;
pub mod reliability;
pub mod twocolor;
pub mod whitney;

pub use perm::{HypermapCollection, Permutation};
pub use poly::{BivariatePolynomial, PowerSeries, RationalFunction, UniPoly};

/// Errors reported by operations in this crate.
///
/// Every precondition of an operation maps to a variant; operations never
/// panic on bad inputs that a caller could reasonably construct.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("ground sets differ: {0} vs {1} points")]
    GroundSetMismatch(u32, u32),
    #[error("ground set must be nonempty")]
    EmptyGroundSet,
    #[error("point {point} outside ground set 1..={n}")]
    PointOutOfRange { point: u32, n: u32 },
    #[error("point {0} appears more than once")]
    DuplicatePoint(u32),
    #[error("images do not form a bijection")]
    NotABijection,
    #[error("points {i} and {j} lie in different cycles of alpha")]
    NotInSameAlphaCycle { i: u32, j: u32 },
    #[error("points {i} and {j} lie in the same cycle of sigma")]
    InSameSigmaCycle { i: u32, j: u32 },
    #[error("points {i} and {j} must be distinct")]
    PointsNotDistinct { i: u32, j: u32 },
    #[error("{0:?} is not a cycle of alpha")]
    NotAnAlphaCycle(Vec<u32>),
    #[error("hyperedge of length {0} present; every cycle of alpha must have at most 3 points")]
    LongHyperedge(u32),
    #[error("operation requires a connected input (kappa = 1), got kappa = {0}")]
    Disconnected(u32),
    #[error("beta is not a refinement of alpha")]
    NotARefinement,
    #[error("alpha has a cycle of length 2; the input must be 3-uniform")]
    HasTwoCycle,
    #[error("alpha has no cycle of length 2")]
    NoTwoCycle,
    #[error("cycle of length {0} is a fixed point; expected length >= 2")]
    FixedPointCycle(u32),
    #[error("parameter out of range: {0}")]
    InvalidParameter(String),
    #[error("refinement space too large to index")]
    RefinementSpaceTooLarge,
    #[error("division by a zero polynomial")]
    ZeroDenominator,
    #[error("power series denominator vanishes at 0")]
    SeriesDenominatorVanishes,
}

pub type Result<T> = std::result::Result<T, Error>;
