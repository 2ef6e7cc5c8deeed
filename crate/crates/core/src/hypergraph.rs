//! Hypergraphs, simple graphs, coloured multigraphs, bipartite graphs and
//! digraphs, together with the elementary statistics shared by the rest of
//! the crate.
//!
//! Vertices are dense indices `0..n`. A hyperedge is identified by its
//! position in the hyperedge list, so two identical vertex sets at different
//! positions are different hyperedges.

use std::collections::{BTreeSet, VecDeque};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type HyperedgeId = usize;

/// A multi-hypergraph on `n` vertices. Every hyperedge is stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph")]
pub struct Hypergraph {
    n: usize,
    hyperedges: Vec<Vec<Vertex>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHypergraph {
    n: usize,
    hyperedges: Vec<Vec<Vertex>>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Error;

    fn try_from(raw: RawHypergraph) -> Result<Self> {
        Hypergraph::new(raw.n, raw.hyperedges)
    }
}

fn normalize_hyperedge(n: usize, id: HyperedgeId, mut edge: Vec<Vertex>) -> Result<Vec<Vertex>> {
    edge.sort_unstable();
    for w in edge.windows(2) {
        if w[0] == w[1] {
            return Err(Error::RepeatedVertex {
                hyperedge: id,
                vertex: w[0],
            });
        }
    }
    if let Some(&last) = edge.last() {
        if last >= n {
            return Err(Error::HyperedgeVertexOutOfRange {
                hyperedge: id,
                vertex: last,
                n,
            });
        }
    }
    Ok(edge)
}

impl Hypergraph {
    pub fn new(n: usize, hyperedges: Vec<Vec<Vertex>>) -> Result<Self> {
        let hyperedges = hyperedges
            .into_iter()
            .enumerate()
            .map(|(id, e)| normalize_hyperedge(n, id, e))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n, hyperedges })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            hyperedges: Vec::new(),
        }
    }

    /// Appends a hyperedge and returns its id.
    pub fn push(&mut self, edge: Vec<Vertex>) -> Result<HyperedgeId> {
        let id = self.hyperedges.len();
        let edge = normalize_hyperedge(self.n, id, edge)?;
        self.hyperedges.push(edge);
        Ok(id)
    }

    pub fn pop(&mut self) -> Option<Vec<Vertex>> {
        self.hyperedges.pop()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.hyperedges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperedges.is_empty()
    }

    pub fn hyperedges(&self) -> &[Vec<Vertex>] {
        &self.hyperedges
    }

    pub fn hyperedge(&self, id: HyperedgeId) -> &[Vertex] {
        &self.hyperedges[id]
    }

    pub fn contains(&self, id: HyperedgeId, v: Vertex) -> bool {
        self.hyperedges[id].binary_search(&v).is_ok()
    }

    /// Ids of all hyperedges containing both `x` and `y`, ascending.
    pub fn covering(&self, x: Vertex, y: Vertex) -> Vec<HyperedgeId> {
        (0..self.hyperedges.len())
            .filter(|&id| self.contains(id, x) && self.contains(id, y))
            .collect()
    }

    /// Sum over all hyperedges of `|h| - 3`. Negative contributions are kept.
    pub fn weight(&self) -> i64 {
        self.hyperedges.iter().map(|h| h.len() as i64 - 3).sum()
    }

    /// The 2-shadow: `xy` is an edge iff some hyperedge contains both.
    pub fn shadow(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for h in &self.hyperedges {
            for (i, &x) in h.iter().enumerate() {
                for &y in &h[i + 1..] {
                    g.insert(x, y);
                }
            }
        }
        g
    }

    /// Canonical compact JSON: fixed field order, sorted hyperedges, one
    /// trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("hypergraph serialization cannot fail");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json())?;
        Ok(())
    }
}

/// Sum of `|h| - 3` over all hyperedges.
pub fn weight(h: &Hypergraph) -> i64 {
    h.weight()
}

/// A simple undirected graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<BTreeSet<Vertex>>,
    edge_count: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RawGraph {
            n: self.n,
            edges: self.edges().collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawGraph::deserialize(deserializer)?;
        Graph::from_edges(raw.n, raw.edges).map_err(serde::de::Error::custom)
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            adj: vec![BTreeSet::new(); n],
            edge_count: 0,
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `uv`; returns whether it was new.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::Loop(u, v));
        }
        Ok(self.insert(u, v))
    }

    fn insert(&mut self, u: Vertex, v: Vertex) -> bool {
        debug_assert!(u != v && u < self.n && v < self.n);
        let fresh = self.adj[u].insert(v);
        if fresh {
            self.adj[v].insert(u);
            self.edge_count += 1;
        }
        fresh
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.range(u + 1..).map(move |&v| (u, v)))
    }

    /// Subgraph induced on `vertices`; vertex ids are preserved.
    pub fn induced(&self, vertices: &BTreeSet<Vertex>) -> Graph {
        let mut g = Graph::new(self.n);
        for &u in vertices {
            for &v in self.adj[u].range(u + 1..) {
                if vertices.contains(&v) {
                    g.insert(u, v);
                }
            }
        }
        g
    }

    /// Edges of `self` that are not edges of `other`.
    pub fn difference(&self, other: &Graph) -> Graph {
        let mut g = Graph::new(self.n);
        for (u, v) in self.edges() {
            if !other.has_edge(u, v) {
                g.insert(u, v);
            }
        }
        g
    }

    /// First and second neighbourhood of `v`.
    pub fn neighborhoods(&self, v: Vertex) -> Result<(BTreeSet<Vertex>, BTreeSet<Vertex>)> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let first = self.adj[v].clone();
        let mut second = BTreeSet::new();
        for &x in &first {
            for &y in &self.adj[x] {
                if y != v && !first.contains(&y) {
                    second.insert(y);
                }
            }
        }
        Ok((first, second))
    }

    /// Breadth-first distances from `v` (`None` when unreachable).
    pub fn distances(&self, v: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::from([v]);
        dist[v] = Some(0);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn degree_stats(&self) -> Result<DegreeStats> {
        if self.n == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(DegreeStats {
            degrees: self.adj.iter().map(BTreeSet::len).collect(),
            average: 2.0 * self.edge_count as f64 / self.n as f64,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeStats {
    pub degrees: Vec<usize>,
    pub average: f64,
}

pub fn neighborhoods(g: &Graph, v: Vertex) -> Result<(BTreeSet<Vertex>, BTreeSet<Vertex>)> {
    g.neighborhoods(v)
}

pub fn shadow(h: &Hypergraph) -> Graph {
    h.shadow()
}

pub fn degree_stats(g: &Graph) -> Result<DegreeStats> {
    g.degree_stats()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoredEdge {
    pub u: Vertex,
    pub v: Vertex,
    pub color: HyperedgeId,
}

impl ColoredEdge {
    pub fn other(&self, x: Vertex) -> Vertex {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// Multigraph whose edges carry the id of the hyperedge they were embedded
/// in. Parallel edges are allowed only with distinct colours.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredGraph {
    n: usize,
    edges: BTreeSet<ColoredEdge>,
    incident: Vec<Vec<ColoredEdge>>,
}

impl Serialize for ColoredGraph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw {
            n: usize,
            edges: Vec<(Vertex, Vertex, HyperedgeId)>,
        }
        Raw {
            n: self.n,
            edges: self.edges.iter().map(|e| (e.u, e.v, e.color)).collect(),
        }
        .serialize(serializer)
    }
}

impl ColoredGraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            edges: BTreeSet::new(),
            incident: vec![Vec::new(); n],
        }
    }

    /// Adds the coloured edge; returns false if `(uv, color)` was present.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex, color: HyperedgeId) -> Result<bool> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::Loop(u, v));
        }
        let e = ColoredEdge {
            u: u.min(v),
            v: u.max(v),
            color,
        };
        if !self.edges.insert(e) {
            return Ok(false);
        }
        self.incident[e.u].push(e);
        self.incident[e.v].push(e);
        Ok(true)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = &ColoredEdge> {
        self.edges.iter()
    }

    pub fn incident(&self, x: Vertex) -> &[ColoredEdge] {
        &self.incident[x]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex, color: HyperedgeId) -> bool {
        self.edges.contains(&ColoredEdge {
            u: u.min(v),
            v: u.max(v),
            color,
        })
    }

    /// All colours on the pair `xy`, ascending.
    pub fn colors_between(&self, x: Vertex, y: Vertex) -> Vec<HyperedgeId> {
        let (u, v) = (x.min(y), x.max(y));
        self.edges
            .range(ColoredEdge { u, v, color: 0 }..=ColoredEdge { u, v, color: usize::MAX })
            .map(|e| e.color)
            .collect()
    }

    /// The simple graph underlying the multigraph.
    pub fn projection(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for e in &self.edges {
            g.insert(e.u, e.v);
        }
        g
    }

    pub fn neighborhoods(&self, v: Vertex) -> Result<(BTreeSet<Vertex>, BTreeSet<Vertex>)> {
        self.projection().neighborhoods(v)
    }

    /// Checks that every coloured edge lies inside the hyperedge named by its
    /// colour; returns the offending edges.
    pub fn edges_outside_colors(&self, h: &Hypergraph) -> Vec<ColoredEdge> {
        self.edges
            .iter()
            .filter(|e| e.color >= h.len() || !h.contains(e.color, e.u) || !h.contains(e.color, e.v))
            .copied()
            .collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("graph serialization cannot fail");
        s.push('\n');
        s
    }
}

/// Bipartite graph with explicit parts; edges are `(left, right)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BipartiteGraph {
    left: BTreeSet<Vertex>,
    right: BTreeSet<Vertex>,
    edges: BTreeSet<(Vertex, Vertex)>,
}

impl BipartiteGraph {
    pub fn new(left: BTreeSet<Vertex>, right: BTreeSet<Vertex>) -> Result<Self> {
        if let Some(&shared) = left.intersection(&right).next() {
            return Err(Error::PartsOverlap(shared));
        }
        Ok(Self {
            left,
            right,
            edges: BTreeSet::new(),
        })
    }

    /// Panics if `l`/`r` are not in the left/right part.
    pub fn add_edge(&mut self, l: Vertex, r: Vertex) -> bool {
        assert!(self.left.contains(&l) && self.right.contains(&r), "edge {l}-{r} does not cross the parts");
        self.edges.insert((l, r))
    }

    pub fn left(&self) -> &BTreeSet<Vertex> {
        &self.left
    }

    pub fn right(&self) -> &BTreeSet<Vertex> {
        &self.right
    }

    pub fn edges(&self) -> &BTreeSet<(Vertex, Vertex)> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, l: Vertex, r: Vertex) -> bool {
        self.edges.contains(&(l, r))
    }

    pub fn right_degree(&self, r: Vertex) -> usize {
        self.edges.iter().filter(|&&(_, y)| y == r).count()
    }

    /// The same graph as a simple graph on `n` vertices.
    pub fn to_graph(&self, n: usize) -> Result<Graph> {
        Graph::from_edges(n, self.edges.iter().copied())
    }
}

/// Simple directed graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Digraph {
    n: usize,
    arcs: BTreeSet<(Vertex, Vertex)>,
    #[serde(skip)]
    reversed: BTreeSet<(Vertex, Vertex)>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            ..Self::default()
        }
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut d = Self::new(n);
        for (u, v) in arcs {
            d.add_arc(u, v)?;
        }
        Ok(d)
    }

    pub fn add_arc(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::Loop(u, v));
        }
        self.reversed.insert((v, u));
        Ok(self.arcs.insert((u, v)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &BTreeSet<(Vertex, Vertex)> {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.arcs.contains(&(u, v))
    }

    pub fn out_neighbors(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.arcs.range((u, 0)..(u + 1, 0)).map(|&(_, v)| v)
    }

    pub fn in_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.reversed.range((v, 0)..(v + 1, 0)).map(|&(_, u)| u)
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.in_neighbors(v).count()
    }

    /// Every arc reversed.
    pub fn reverse(&self) -> Digraph {
        Digraph {
            n: self.n,
            arcs: self.reversed.clone(),
            reversed: self.arcs.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h(n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::new(n, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    #[test]
    fn weight_examples() {
        assert_eq!(Hypergraph::empty(0).weight(), 0);
        assert_eq!(h(4, &[&[0, 1, 2, 3]]).weight(), 1);
        assert_eq!(h(3, &[&[0, 1]]).weight(), -1);
    }

    #[test]
    fn rejects_bad_hyperedges() {
        assert!(matches!(
            Hypergraph::new(3, vec![vec![0, 3]]),
            Err(Error::HyperedgeVertexOutOfRange { hyperedge: 0, vertex: 3, n: 3 })
        ));
        assert!(matches!(
            Hypergraph::new(3, vec![vec![0, 1], vec![2, 1, 2]]),
            Err(Error::RepeatedVertex { hyperedge: 1, vertex: 2 })
        ));
    }

    #[test]
    fn duplicates_keep_distinct_ids() {
        let hg = h(4, &[&[3, 2, 1, 0], &[0, 1, 2, 3]]);
        assert_eq!(hg.len(), 2);
        assert_eq!(hg.hyperedge(0), hg.hyperedge(1));
        assert_eq!(hg.covering(0, 3), vec![0, 1]);
    }

    #[test]
    fn neighborhoods_examples() {
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let (n1, n2) = path.neighborhoods(0).unwrap();
        assert_eq!(n1, BTreeSet::from([1]));
        assert_eq!(n2, BTreeSet::from([2]));

        let isolated = Graph::new(2);
        let (n1, n2) = isolated.neighborhoods(1).unwrap();
        assert!(n1.is_empty() && n2.is_empty());

        assert!(matches!(path.neighborhoods(3), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn shadow_examples() {
        let tri = h(3, &[&[0, 1, 2]]).shadow();
        assert_eq!(tri.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
        let two = h(4, &[&[0, 1], &[2, 3]]).shadow();
        assert_eq!(two.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn degree_stats_examples() {
        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(tri.degree_stats().unwrap().average, 2.0);
        let single = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(single.degree_stats().unwrap().average, 1.0);
        assert!(matches!(Graph::new(0).degree_stats(), Err(Error::EmptyGraph)));
    }

    #[test]
    fn graph_rejects_loops() {
        assert!(matches!(Graph::from_edges(2, [(1, 1)]), Err(Error::Loop(1, 1))));
    }

    #[test]
    fn colored_graph_parallel_edges() {
        let mut cg = ColoredGraph::new(3);
        assert!(cg.add_edge(1, 0, 0).unwrap());
        assert!(cg.add_edge(0, 1, 1).unwrap());
        assert!(!cg.add_edge(0, 1, 1).unwrap());
        assert_eq!(cg.edge_count(), 2);
        assert_eq!(cg.colors_between(1, 0), vec![0, 1]);
        assert_eq!(cg.projection().edge_count(), 1);
        assert_eq!(cg.to_json(), "{\"n\":3,\"edges\":[[0,1,0],[0,1,1]]}\n");
    }

    #[test]
    fn json_round_trip_is_canonical() {
        let text = r#"{"n":5,"hyperedges":[[3,1,0],[4,2]]}"#;
        let hg = Hypergraph::from_json(text).unwrap();
        assert_eq!(hg.to_json(), "{\"n\":5,\"hyperedges\":[[0,1,3],[2,4]]}\n");
        assert_eq!(Hypergraph::from_json(&hg.to_json()).unwrap(), hg);

        let g: Graph = serde_json::from_str(r#"{"n":3,"edges":[[2,0],[0,1]]}"#).unwrap();
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"n":3,"edges":[[0,1],[0,2]]}"#);
    }

    #[test]
    fn json_errors_carry_position() {
        let msg = Hypergraph::from_json("{\"n\":3,\n\"hyperedges\":[[0,1],[0,7]]}").unwrap_err().to_string();
        assert!(msg.contains("hyperedges[1]") && msg.contains("out of range"), "{msg}");
        let msg = Hypergraph::from_json("{\"n\":3,\n\"hyperedges\":[[0,1],]}").unwrap_err().to_string();
        assert!(msg.contains("line 2"), "{msg}");
        let msg = Hypergraph::from_json("{\"n\":3,\"edges\":[]}").unwrap_err().to_string();
        assert!(msg.contains("edges"), "{msg}");
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..3 * n).prop_map(move |pairs| {
                Graph::from_edges(n, pairs.into_iter().filter(|(u, v)| u != v)).unwrap()
            })
        })
    }

    fn arb_hypergraph(max_n: usize) -> impl Strategy<Value = Hypergraph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::btree_set(0..n, 0..=n), 0..6)
                .prop_map(move |sets| Hypergraph::new(n, sets.into_iter().map(|s| s.into_iter().collect()).collect()).unwrap())
        })
    }

    proptest! {
        #[test]
        fn neighborhoods_match_bfs_layers(g in arb_graph(10), seed in 0usize..10) {
            let v = seed % g.n();
            let (n1, n2) = g.neighborhoods(v).unwrap();
            let dist = g.distances(v);
            let layer = |d| (0..g.n()).filter(|&u| dist[u] == Some(d)).collect::<BTreeSet<_>>();
            prop_assert_eq!(&n1, &layer(1));
            prop_assert_eq!(&n2, &layer(2));
            prop_assert!(n1.is_disjoint(&n2));
            prop_assert!(!n1.contains(&v) && !n2.contains(&v));
        }

        #[test]
        fn shadow_matches_pair_scan(hg in arb_hypergraph(8)) {
            let s = hg.shadow();
            for x in 0..hg.n() {
                for y in 0..hg.n() {
                    let covered = x != y && hg.hyperedges().iter().any(|e| e.contains(&x) && e.contains(&y));
                    prop_assert_eq!(s.has_edge(x, y), covered);
                }
            }
        }

        #[test]
        fn shadow_is_monotone(hg in arb_hypergraph(8), extra in proptest::collection::btree_set(0usize..8, 0..5)) {
            let mut bigger = hg.clone();
            bigger.push(extra.into_iter().filter(|&v| v < hg.n()).collect()).unwrap();
            let (small, large) = (hg.shadow(), bigger.shadow());
            prop_assert!(small.edges().all(|(u, v)| large.has_edge(u, v)));
        }

        #[test]
        fn weight_matches_clamped_sum_when_sizes_at_least_three(sizes in proptest::collection::vec(3usize..9, 0..8)) {
            let edges = sizes.iter().map(|&s| (0..s).collect()).collect();
            let hg = Hypergraph::new(9, edges).unwrap();
            let clamped: i64 = sizes.iter().map(|&s| (s as i64 - 3).max(0)).sum();
            prop_assert_eq!(hg.weight(), clamped);
        }
    }
}
