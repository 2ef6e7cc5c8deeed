//! Exact maximum of `Σ(|h| - 3)` over Berge-C4-free multi-hypergraphs on a
//! few vertices.
//!
//! The universe is every vertex subset of size at least 4, ordered by size
//! and then lexicographically, each usable at most `max_mult` times (3 by
//! default: four copies of a set of size >= 4 always form a Berge-C4, and
//! sets of size <= 3 never add weight). Multisets are enumerated as
//! non-decreasing candidate sequences, so the depth-first order is the
//! lexicographic order of sequences and the first optimum found is the
//! lexicographically least one.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::berge::is_berge_c4_free;
use crate::constructions::theoretical_bounds;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};

/// Vertex counts accepted without `allow_large`.
pub const GUARD: std::ops::RangeInclusive<usize> = 4..=7;
/// Hard limit for bitmask vertex sets.
pub const MAX_VERTICES: usize = 12;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub max_mult: usize,
    /// Prune by the remaining-weight bound and use the incremental check.
    /// When false every Berge-C4-free multiset is visited and each is
    /// checked with the full detector.
    pub pruned: bool,
    pub allow_large: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            max_mult: 3,
            pruned: true,
            allow_large: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchResult {
    pub n: usize,
    pub best_weight: i64,
    pub witness: Hypergraph,
    pub nodes_explored: u64,
    pub exhaustive: bool,
}

/// All subsets of `0..n` of size >= 4 as bitmasks, by size then
/// lexicographically on the sorted vertex list.
pub fn candidate_universe(n: usize) -> Vec<u64> {
    let mut sets: Vec<u64> = (0u64..1 << n).filter(|m| m.count_ones() >= 4).collect();
    sets.sort_by_key(|&m| (m.count_ones(), vertices_of(m)));
    sets
}

pub fn vertices_of(mask: u64) -> Vec<Vertex> {
    (0..64).filter(|&v| mask & (1 << v) != 0).collect()
}

/// Hyperedges chosen so far, with, for every vertex pair, the set of chosen
/// hyperedges covering it (bit `i` = hyperedge `i`).
#[derive(Clone, Debug)]
pub struct SearchState {
    n: usize,
    masks: Vec<u64>,
    cover: Vec<u64>,
}

impl SearchState {
    pub fn new(n: usize) -> Self {
        assert!(n <= 64, "bitmask state holds at most 64 vertices");
        Self {
            n,
            masks: Vec::new(),
            cover: vec![0; n * n],
        }
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    fn pairs(&self, mask: u64) -> impl Iterator<Item = (usize, usize)> {
        let vs = vertices_of(mask);
        let n = self.n;
        (0..vs.len()).flat_map(move |i| {
            let vs = vs.clone();
            (i + 1..vs.len()).map(move |j| (vs[i], vs[j])).filter(move |&(a, b)| a < n && b < n)
        })
    }

    pub fn push(&mut self, mask: u64) {
        let bit = 1u64 << self.masks.len();
        assert!(self.masks.len() < 64, "bitmask state holds at most 64 hyperedges");
        for (a, b) in self.pairs(mask).collect::<Vec<_>>() {
            self.cover[a * self.n + b] |= bit;
            self.cover[b * self.n + a] |= bit;
        }
        self.masks.push(mask);
    }

    pub fn pop(&mut self) -> Option<u64> {
        let mask = self.masks.pop()?;
        let keep = !(1u64 << self.masks.len());
        for (a, b) in self.pairs(mask).collect::<Vec<_>>() {
            self.cover[a * self.n + b] &= keep;
            self.cover[b * self.n + a] &= keep;
        }
        Some(mask)
    }

    fn covering(&self, a: usize, b: usize) -> u64 {
        self.cover[a * self.n + b]
    }

    pub fn to_hypergraph(&self) -> Hypergraph {
        Hypergraph::new(self.n, self.masks.iter().map(|&m| vertices_of(m)).collect()).expect("masks fit in n")
    }
}

/// Whether three sets of hyperedges admit distinct representatives (Hall's
/// condition for three sets).
fn three_distinct(a: u64, b: u64, c: u64) -> bool {
    let ones = |m: u64| m.count_ones();
    a != 0
        && b != 0
        && c != 0
        && ones(a | b) >= 2
        && ones(a | c) >= 2
        && ones(b | c) >= 2
        && ones(a | b | c) >= 3
}

/// Whether adding `new` to `state` creates a Berge-C4. Only cycles through the
/// new hyperedge are examined, so `state` must itself be Berge-C4-free.
pub fn incremental_c4_check(state: &SearchState, new: u64) -> bool {
    if state.len() < 3 {
        return false;
    }
    let n = state.n;
    let vs = vertices_of(new);
    // Cycle a -[new]- b - c - d - a with a < b.
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            for c in 0..n {
                if c == a || c == b {
                    continue;
                }
                let bc = state.covering(b, c);
                if bc == 0 {
                    continue;
                }
                for d in 0..n {
                    if d == a || d == b || d == c {
                        continue;
                    }
                    if three_distinct(bc, state.covering(c, d), state.covering(d, a)) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

struct Searcher<'a> {
    universe: &'a [u64],
    weights: Vec<i64>,
    /// `suffix[i]`: weight of every candidate from `i` on at full
    /// multiplicity.
    suffix: Vec<i64>,
    options: &'a SearchOptions,
    state: SearchState,
    chosen: Vec<usize>,
    best: i64,
    best_seq: Vec<usize>,
    nodes: u64,
}

impl<'a> Searcher<'a> {
    fn new(n: usize, universe: &'a [u64], options: &'a SearchOptions) -> Self {
        let weights: Vec<i64> = universe.iter().map(|m| m.count_ones() as i64 - 3).collect();
        let mut suffix = vec![0; universe.len() + 1];
        for i in (0..universe.len()).rev() {
            suffix[i] = suffix[i + 1] + options.max_mult as i64 * weights[i];
        }
        Self {
            universe,
            weights,
            suffix,
            options,
            state: SearchState::new(n),
            chosen: Vec::new(),
            best: 0,
            best_seq: Vec::new(),
            nodes: 0,
        }
    }

    fn admits(&mut self, candidate: usize) -> bool {
        let mask = self.universe[candidate];
        if self.options.pruned {
            !incremental_c4_check(&self.state, mask)
        } else {
            let mut h = self.state.to_hypergraph();
            h.push(vertices_of(mask)).expect("mask fits in n");
            is_berge_c4_free(&h)
        }
    }

    fn push(&mut self, candidate: usize) {
        self.state.push(self.universe[candidate]);
        self.chosen.push(candidate);
    }

    fn pop(&mut self) {
        self.state.pop();
        self.chosen.pop();
    }

    fn dfs(&mut self, from: usize, weight: i64) {
        self.nodes += 1;
        if weight > self.best {
            self.best = weight;
            self.best_seq = self.chosen.clone();
        }
        for i in from..self.universe.len() {
            let used = self.chosen.iter().rev().take_while(|&&c| c == i).count();
            if used >= self.options.max_mult {
                continue;
            }
            if self.options.pruned && weight + self.suffix[i] - used as i64 * self.weights[i] <= self.best {
                break;
            }
            if !self.admits(i) {
                continue;
            }
            self.push(i);
            self.dfs(i, weight + self.weights[i]);
            self.pop();
        }
    }
}

/// Exact optimum for `n` vertices. The first level is split across the
/// rayon pool; each subtree keeps its own incumbent, so the result, the
/// witness and the node count do not depend on the worker count.
pub fn max_weight_exact(n: usize, options: &SearchOptions) -> Result<SearchResult> {
    if n > MAX_VERTICES || (!GUARD.contains(&n) && !options.allow_large) {
        return Err(Error::SearchGuard(n));
    }
    let universe = candidate_universe(n);

    let subtrees: Vec<(i64, Vec<usize>, u64)> = (0..universe.len())
        .into_par_iter()
        .filter(|_| options.max_mult > 0)
        .map(|first| {
            let mut s = Searcher::new(n, &universe, options);
            s.push(first);
            s.dfs(first, s.weights[first]);
            (s.best, s.best_seq, s.nodes)
        })
        .collect();

    let mut best = 0;
    let mut best_seq = Vec::new();
    let mut nodes = 1; // the empty multiset
    for (weight, seq, count) in subtrees {
        nodes += count;
        if weight > best {
            best = weight;
            best_seq = seq;
        }
    }
    let witness = Hypergraph::new(n, best_seq.iter().map(|&i| vertices_of(universe[i])).collect())?;
    debug_assert_eq!(witness.weight(), best);
    Ok(SearchResult {
        n,
        best_weight: best,
        witness,
        nodes_explored: nodes,
        exhaustive: true,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsRow {
    pub n: usize,
    pub best_weight: i64,
    pub upper: f64,
    pub lower: f64,
}

pub fn compare_to_bounds(result: &SearchResult) -> BoundsRow {
    let b = theoretical_bounds(result.n);
    BoundsRow {
        n: result.n,
        best_weight: result.best_weight,
        upper: b.upper,
        lower: b.lower,
    }
}

/// One line of the JSON-lines results file.
#[derive(Clone, Debug, Serialize)]
pub struct SearchRecord {
    pub n: usize,
    pub best_weight: i64,
    pub witness: Hypergraph,
    pub nodes_explored: u64,
    pub wall_time_secs: f64,
    pub max_mult: usize,
    pub pruned: bool,
}

pub fn timed_search(n: usize, options: &SearchOptions) -> Result<(SearchResult, SearchRecord)> {
    let started = Instant::now();
    let result = max_weight_exact(n, options)?;
    let record = SearchRecord {
        n,
        best_weight: result.best_weight,
        witness: result.witness.clone(),
        nodes_explored: result.nodes_explored,
        wall_time_secs: started.elapsed().as_secs_f64(),
        max_mult: options.max_mult,
        pruned: options.pruned,
    };
    Ok((result, record))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::berge::{find_berge_cycle, naive_berge_oracle};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn universe_order() {
        let u = candidate_universe(5);
        assert_eq!(u.len(), 6);
        assert_eq!(vertices_of(u[0]), vec![0, 1, 2, 3]);
        assert_eq!(vertices_of(u[4]), vec![1, 2, 3, 4]);
        assert_eq!(vertices_of(u[5]), vec![0, 1, 2, 3, 4]);
        assert_eq!(candidate_universe(6).len(), 22);
    }

    #[test]
    fn n4_by_naive_enumeration() {
        // Multiplicities 0..=3 of the only 4-subset; 4 copies already fail.
        let mut best = 0;
        for copies in 0..=4 {
            let h = Hypergraph::new(4, vec![vec![0, 1, 2, 3]; copies]).unwrap();
            if naive_berge_oracle(&h, 4).unwrap().is_none() {
                best = best.max(h.weight());
            }
        }
        assert_eq!(best, 3);

        let r = max_weight_exact(4, &SearchOptions::default()).unwrap();
        assert_eq!(r.best_weight, 3);
        assert_eq!(r.witness.hyperedges(), &[vec![0, 1, 2, 3], vec![0, 1, 2, 3], vec![0, 1, 2, 3]]);
        assert!(r.exhaustive);
    }

    #[test]
    fn n4_single_multiplicity() {
        let opts = SearchOptions {
            max_mult: 1,
            ..SearchOptions::default()
        };
        assert_eq!(max_weight_exact(4, &opts).unwrap().best_weight, 1);
    }

    #[test]
    fn pruned_matches_unpruned_n5() {
        let pruned = max_weight_exact(5, &SearchOptions::default()).unwrap();
        let unpruned = max_weight_exact(
            5,
            &SearchOptions {
                pruned: false,
                ..SearchOptions::default()
            },
        )
        .unwrap();
        assert_eq!(pruned.best_weight, unpruned.best_weight);
        assert_eq!(pruned.witness, unpruned.witness);
        assert!(unpruned.nodes_explored >= pruned.nodes_explored);
        assert!(is_berge_c4_free(&pruned.witness));
        assert!(naive_berge_oracle(&pruned.witness, 4).unwrap().is_none());
    }

    #[test]
    fn best_weight_is_monotone_in_n() {
        let values: Vec<i64> = (4..=6)
            .map(|n| max_weight_exact(n, &SearchOptions::default()).unwrap().best_weight)
            .collect();
        assert!(values.windows(2).all(|w| w[0] <= w[1]), "{values:?}");
    }

    #[test]
    fn guard() {
        assert!(matches!(max_weight_exact(3, &SearchOptions::default()), Err(Error::SearchGuard(3))));
        assert!(matches!(max_weight_exact(8, &SearchOptions::default()), Err(Error::SearchGuard(8))));
        let small = SearchOptions {
            allow_large: true,
            ..SearchOptions::default()
        };
        assert_eq!(max_weight_exact(3, &small).unwrap().best_weight, 0);
    }

    #[test]
    fn incremental_examples() {
        let mut s = SearchState::new(8);
        let full = 0b1111u64;
        for _ in 0..3 {
            assert!(!incremental_c4_check(&s, full));
            s.push(full);
        }
        assert!(incremental_c4_check(&s, full));
        assert!(!incremental_c4_check(&s, 0b1111_0000));
        s.pop();
        assert!(!incremental_c4_check(&s, full));
    }

    #[test]
    fn incremental_matches_full_recheck() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(4..=7);
            let mut state = SearchState::new(n);
            for _ in 0..12 {
                let mask = loop {
                    let m = rng.gen_range(0u64..1 << n);
                    if m.count_ones() >= 2 {
                        break m;
                    }
                };
                let fast = incremental_c4_check(&state, mask);
                let mut h = state.to_hypergraph();
                h.push(vertices_of(mask)).unwrap();
                let full = find_berge_cycle(&h, 4).unwrap().is_some();
                assert_eq!(fast, full, "{h:?}");
                if !fast {
                    state.push(mask);
                }
            }
        }
    }

    #[test]
    fn bounds_rows() {
        let r = max_weight_exact(4, &SearchOptions::default()).unwrap();
        let row = compare_to_bounds(&r);
        assert_eq!((row.n, row.best_weight), (4, 3));
        assert!((row.upper - 4.0).abs() < 1e-12 && (row.lower - 1.633).abs() < 1e-3);

        let zero = SearchResult {
            n: 0,
            best_weight: 0,
            witness: Hypergraph::empty(0),
            nodes_explored: 0,
            exhaustive: true,
        };
        assert_eq!(
            compare_to_bounds(&zero),
            BoundsRow {
                n: 0,
                best_weight: 0,
                upper: 0.0,
                lower: 0.0
            }
        );
    }
}
