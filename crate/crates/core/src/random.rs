//! Seeded random instances.

use std::ops::RangeInclusive;

use rand::seq::index;
use rand::Rng;

use crate::berge::find_berge_c4_through;
use crate::hypergraph::Hypergraph;

/// Greedy random Berge-C4-free hypergraph: `attempts` random hyperedges with
/// sizes drawn uniformly from `sizes`, each kept only if it closes no
/// Berge-C4 with the hyperedges kept so far.
pub fn random_greedy_c4_free<R: Rng>(rng: &mut R, n: usize, sizes: RangeInclusive<usize>, attempts: usize) -> Hypergraph {
    assert!(*sizes.end() <= n, "hyperedge size exceeds vertex count");
    greedy(n, attempts, |h| {
        let size = rng.gen_range(sizes.clone());
        h.push(index::sample(rng, n, size).into_vec())
    })
}

/// Like [`random_greedy_c4_free`], but every hyperedge contains vertex 0.
/// Vertex 0 ends up with many distinctly coloured neighbours, which is what
/// the digraph checks need.
pub fn random_star_c4_free<R: Rng>(rng: &mut R, n: usize, sizes: RangeInclusive<usize>, attempts: usize) -> Hypergraph {
    assert!(*sizes.start() >= 1 && *sizes.end() <= n, "hyperedge sizes must lie in 1..=n");
    greedy(n, attempts, |h| {
        let size = rng.gen_range(sizes.clone());
        let mut edge: Vec<usize> = index::sample(rng, n - 1, size - 1).into_iter().map(|x| x + 1).collect();
        edge.push(0);
        h.push(edge)
    })
}

fn greedy(n: usize, attempts: usize, mut propose: impl FnMut(&mut Hypergraph) -> crate::Result<usize>) -> Hypergraph {
    let mut h = Hypergraph::empty(n);
    for _ in 0..attempts {
        let id = propose(&mut h).expect("sampled vertices are distinct and in range");
        if find_berge_c4_through(&h, id).is_some() {
            h.pop();
        }
    }
    h
}
