//! Shared fixtures for the benchmark targets.

use hypermaps::perm::HypermapCollection;
use hypermaps::random::{self, rng_from_seed};

/// A fixed batch of random short-hyperedge hypermaps.
pub fn short_hypermaps(n: u32, count: usize) -> Vec<HypermapCollection> {
    let mut rng = rng_from_seed(0xBE);
    (0..count)
        .map(|_| random::random_hypermap(n, 3, &mut rng))
        .collect()
}

/// The reciprocal of the ladder map with `m` bounded faces.
pub fn ladder_reciprocal(m: u32) -> HypermapCollection {
    hypermaps::ladder::build_ladder_reciprocal(m).expect("m >= 1")
}
