//! Berge cycle detection.
//!
//! A Berge-Ck is a cyclic sequence `v1, h1, v2, h2, ..., vk, hk` of distinct
//! vertices and distinct hyperedges with `{vi, vi+1} ⊆ hi` (indices mod k).
//! The detector enumerates vertex cycles in the shadow graph and, for each,
//! asks whether the k consecutive pairs have a system of distinct covering
//! hyperedges.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Graph, HyperedgeId, Hypergraph, Vertex};

/// Largest vertex and hyperedge count accepted by [`naive_berge_oracle`].
pub const ORACLE_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BergeCycleWitness {
    pub vertices: Vec<Vertex>,
    pub hyperedges: Vec<HyperedgeId>,
}

impl BergeCycleWitness {
    /// Checks the witness against `h` from scratch: equal lengths, distinct
    /// vertices, distinct hyperedges, and every consecutive pair covered.
    pub fn is_valid_for(&self, h: &Hypergraph) -> bool {
        let k = self.vertices.len();
        if k < 2 || self.hyperedges.len() != k {
            return false;
        }
        if self.vertices.iter().any(|&v| v >= h.n()) || self.hyperedges.iter().any(|&e| e >= h.len()) {
            return false;
        }
        if !all_distinct(&self.vertices) || !all_distinct(&self.hyperedges) {
            return false;
        }
        (0..k).all(|i| {
            let e = self.hyperedges[i];
            h.contains(e, self.vertices[i]) && h.contains(e, self.vertices[(i + 1) % k])
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("witness serialization cannot fail")
    }
}

impl fmt::Display for BergeCycleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, e) in self.vertices.iter().zip(&self.hyperedges) {
            write!(f, "{v} -[h{e}]- ")?;
        }
        match self.vertices.first() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "<empty>"),
        }
    }
}

fn all_distinct(xs: &[usize]) -> bool {
    let mut sorted = xs.to_vec();
    sorted.sort_unstable();
    sorted.windows(2).all(|w| w[0] != w[1])
}

/// Picks pairwise distinct representatives, one from each slot, by
/// backtracking over the most constrained slot first. Returns them in slot
/// order.
pub(crate) fn distinct_representatives(slots: &[&[HyperedgeId]]) -> Option<Vec<HyperedgeId>> {
    let mut order: Vec<usize> = (0..slots.len()).collect();
    order.sort_by_key(|&i| slots[i].len());
    let mut chosen = vec![usize::MAX; slots.len()];

    fn go(depth: usize, order: &[usize], slots: &[&[HyperedgeId]], chosen: &mut [HyperedgeId]) -> bool {
        let Some(&slot) = order.get(depth) else {
            return true;
        };
        for &e in slots[slot] {
            if order[..depth].iter().any(|&s| chosen[s] == e) {
                continue;
            }
            chosen[slot] = e;
            if go(depth + 1, order, slots, chosen) {
                return true;
            }
        }
        chosen[slot] = usize::MAX;
        false
    }

    go(0, &order, slots, &mut chosen).then_some(chosen)
}

/// Shadow graph plus, for each shadow edge, the hyperedges covering it.
struct CoverIndex {
    shadow: Graph,
    cover: HashMap<(Vertex, Vertex), Vec<HyperedgeId>>,
}

impl CoverIndex {
    fn new(h: &Hypergraph, skip: Option<HyperedgeId>) -> Self {
        let mut shadow = Graph::new(h.n());
        let mut cover: HashMap<(Vertex, Vertex), Vec<HyperedgeId>> = HashMap::new();
        for (id, e) in h.hyperedges().iter().enumerate() {
            if Some(id) == skip {
                continue;
            }
            for (i, &x) in e.iter().enumerate() {
                for &y in &e[i + 1..] {
                    shadow.add_edge(x, y).expect("hyperedge vertices are valid");
                    cover.entry((x, y)).or_default().push(id);
                }
            }
        }
        Self { shadow, cover }
    }

    fn covering(&self, x: Vertex, y: Vertex) -> &[HyperedgeId] {
        self.cover
            .get(&(x.min(y), x.max(y)))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }
}

/// Finds a Berge-Ck in `h`, or `None` if it is Berge-Ck-free.
///
/// Vertex cycles are enumerated once each: the first vertex is the minimum of
/// the cycle and the second is smaller than the last. The outer loop over the
/// first vertex may run in parallel; the witness returned is always the one
/// with the smallest first vertex, so the result does not depend on the
/// thread count.
pub fn find_berge_cycle(h: &Hypergraph, k: usize) -> Result<Option<BergeCycleWitness>> {
    if k < 2 {
        return Err(Error::CycleLength(k));
    }
    if k > h.n() || k > h.len() {
        return Ok(None);
    }
    let index = CoverIndex::new(h, None);
    Ok((0..h.n())
        .into_par_iter()
        .find_map_first(|start| cycles_from(&index, start, k)))
}

fn cycles_from(index: &CoverIndex, start: Vertex, k: usize) -> Option<BergeCycleWitness> {
    let mut path = vec![start];
    extend_path(index, &mut path, k)
}

fn extend_path(index: &CoverIndex, path: &mut Vec<Vertex>, k: usize) -> Option<BergeCycleWitness> {
    let start = path[0];
    let last = *path.last().unwrap();
    if path.len() == k {
        if !index.shadow.has_edge(last, start) || (k > 2 && path[1] > last) {
            return None;
        }
        let slots: Vec<&[HyperedgeId]> = (0..k).map(|i| index.covering(path[i], path[(i + 1) % k])).collect();
        return distinct_representatives(&slots).map(|hyperedges| BergeCycleWitness {
            vertices: path.clone(),
            hyperedges,
        });
    }
    for &next in index.shadow.neighbors(last).range(start + 1..) {
        if path.contains(&next) {
            continue;
        }
        path.push(next);
        let found = extend_path(index, path, k);
        path.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

pub fn is_berge_c4_free(h: &Hypergraph) -> bool {
    find_berge_cycle(h, 4).expect("k = 4 is a valid cycle length").is_none()
}

/// Finds a Berge-C4 that uses hyperedge `id`. The other three hyperedges may
/// be any hyperedges of `h` other than `id`.
pub fn find_berge_c4_through(h: &Hypergraph, id: HyperedgeId) -> Option<BergeCycleWitness> {
    if h.len() < 4 || h.n() < 4 {
        return None;
    }
    let index = CoverIndex::new(h, Some(id));
    let e = h.hyperedge(id);
    // The cycle is a -[id]- b - c - d - a with a < b.
    for (i, &a) in e.iter().enumerate() {
        for &b in &e[i + 1..] {
            for &c in index.shadow.neighbors(b) {
                if c == a {
                    continue;
                }
                for &d in index.shadow.neighbors(c) {
                    if d == a || d == b || !index.shadow.has_edge(d, a) {
                        continue;
                    }
                    let slots = [index.covering(b, c), index.covering(c, d), index.covering(d, a)];
                    if let Some(rest) = distinct_representatives(&slots) {
                        return Some(BergeCycleWitness {
                            vertices: vec![a, b, c, d],
                            hyperedges: vec![id, rest[0], rest[1], rest[2]],
                        });
                    }
                }
            }
        }
    }
    None
}

/// Exhaustive test oracle: every ordered k-tuple of distinct vertices against
/// every ordered k-tuple of distinct hyperedges (with prefix pruning).
pub fn naive_berge_oracle(h: &Hypergraph, k: usize) -> Result<Option<BergeCycleWitness>> {
    if k < 2 {
        return Err(Error::CycleLength(k));
    }
    if h.n() > ORACLE_LIMIT || h.len() > ORACLE_LIMIT {
        return Err(Error::OracleLimit {
            vertices: h.n(),
            hyperedges: h.len(),
            limit: ORACLE_LIMIT,
        });
    }
    let mut vertices = Vec::with_capacity(k);
    Ok(vertex_tuples(h, k, &mut vertices))
}

fn vertex_tuples(h: &Hypergraph, k: usize, vertices: &mut Vec<Vertex>) -> Option<BergeCycleWitness> {
    if vertices.len() == k {
        let mut edges = Vec::with_capacity(k);
        return edge_tuples(h, vertices, &mut edges).then(|| BergeCycleWitness {
            vertices: vertices.clone(),
            hyperedges: edges,
        });
    }
    for v in 0..h.n() {
        if vertices.contains(&v) {
            continue;
        }
        vertices.push(v);
        let found = vertex_tuples(h, k, vertices);
        vertices.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

fn edge_tuples(h: &Hypergraph, vertices: &[Vertex], edges: &mut Vec<HyperedgeId>) -> bool {
    let k = vertices.len();
    let i = edges.len();
    if i == k {
        return true;
    }
    let (a, b) = (vertices[i], vertices[(i + 1) % k]);
    for e in 0..h.len() {
        if edges.contains(&e) || !h.contains(e, a) || !h.contains(e, b) {
            continue;
        }
        edges.push(e);
        if edge_tuples(h, vertices, edges) {
            return true;
        }
        edges.pop();
    }
    false
}

/// A 4-cycle `[a, x, b, y]` of `g` (in cyclic order), found as the first pair
/// `a < b` with two common neighbours.
pub fn find_c4_in_graph(g: &Graph) -> Option<[Vertex; 4]> {
    for a in 0..g.n() {
        for b in a + 1..g.n() {
            let mut common = g.neighbors(a).intersection(g.neighbors(b));
            if let (Some(&x), Some(&y)) = (common.next(), common.next()) {
                return Some([a, x, b, y]);
            }
        }
    }
    None
}

pub fn find_triangle(g: &Graph) -> Option<[Vertex; 3]> {
    for (a, b) in g.edges() {
        if let Some(&c) = g.neighbors(a).intersection(g.neighbors(b)).next() {
            return Some([a, b, c]);
        }
    }
    None
}
