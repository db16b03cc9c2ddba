//! Seeded sampling of source-destination node pairs.

use rand::{Rng as _, SeedableRng as _};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::graph::{NodeId, RoadGraph};
use crate::scalar::Scalar;
use crate::Result;

/// Draws `n` uniformly random node pairs with euclidean separation at least
/// `min_separation`, reproducibly from `seed`. Fails with `Infeasible` when
/// the graph cannot supply enough valid pairs within a bounded number of
/// retries.
pub fn sample_pairs<S: Scalar>(
    graph: &RoadGraph<S>,
    n: usize,
    seed: u64,
    min_separation: S,
) -> Result<Vec<(NodeId, NodeId)>> {
    if graph.node_count() < 2 {
        return Err(Error::Infeasible("graph has fewer than 2 nodes".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::with_capacity(n);
    let budget = 200usize.saturating_mul(n).max(1000);
    let mut attempts = 0usize;
    while pairs.len() < n {
        if attempts >= budget {
            return Err(Error::Infeasible(format!(
                "found {} of {} pairs with separation >= {} after {} attempts",
                pairs.len(),
                n,
                min_separation,
                attempts
            )));
        }
        attempts += 1;
        let a = rng.gen_range(0..graph.node_count());
        let b = rng.gen_range(0..graph.node_count());
        if a == b {
            continue;
        }
        let (na, nb) = (NodeId(a), NodeId(b));
        if graph.node(na).position.distance(graph.node(nb).position) >= min_separation {
            pairs.push((na, nb));
        }
    }
    Ok(pairs)
}
