//! Edge embedding of a hypergraph into a coloured graph, and the per-vertex
//! auxiliary objects built on top of it.
//!
//! Each hyperedge `h` receives `|h| - 3` edges placed on its own vertices as
//! vertex-disjoint triangles and single edges, each coloured by the id of
//! `h`. For a fixed centre `v` the module then builds, on the simple
//! projection of the coloured graph:
//!
//! * `G`: the projection induced on the first neighbourhood `N1(v)`;
//! * `G_aux`: `xy` for `x, y ∈ N1(v)` sharing a neighbour in `N2(v)`;
//! * `G'_aux`: `G_aux` minus `G`;
//! * `B`: the 2-paths `v x y` with `y ∈ N2(v)`, as a bipartite graph;
//! * `B'`: the `B` edges whose `N2` endpoint has a second `B` neighbour;
//! * `D`: a digraph on six neighbours of `v` with distinct colours.
//!
//! [`verify_lemma_suite`] checks the structural facts these objects satisfy
//! whenever the hypergraph is Berge-C4-free.

use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::berge::{distinct_representatives, find_berge_cycle};
use crate::error::{Error, Result};
use crate::hypergraph::{BipartiteGraph, ColoredGraph, Digraph, Graph, HyperedgeId, Hypergraph, Vertex};
use crate::subgraph::{contains_kst, contains_pattern, Pattern};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub triangles: Vec<[Vertex; 3]>,
    pub single_edges: Vec<[Vertex; 2]>,
}

impl Decomposition {
    pub fn edge_count(&self) -> usize {
        3 * self.triangles.len() + self.single_edges.len()
    }

    pub fn vertex_count(&self) -> usize {
        3 * self.triangles.len() + 2 * self.single_edges.len()
    }

    /// Triangle edges first, then the single edges.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for &[a, b, c] in &self.triangles {
            out.extend([(a, b), (a, c), (b, c)]);
        }
        out.extend(self.single_edges.iter().map(|&[a, b]| (a, b)));
        out
    }

    /// Whether this is a valid decomposition for the hyperedge `h`: all
    /// vertices from `h`, pairwise disjoint pieces, `max(0, |h| - 3)` edges.
    pub fn is_valid_for(&self, h: &[Vertex]) -> bool {
        let used: Vec<Vertex> = self
            .triangles
            .iter()
            .flatten()
            .chain(self.single_edges.iter().flatten())
            .copied()
            .collect();
        let distinct: BTreeSet<Vertex> = used.iter().copied().collect();
        distinct.len() == used.len()
            && used.iter().all(|v| h.contains(v))
            && self.edge_count() == h.len().saturating_sub(3)
            && self.vertex_count() <= h.len()
    }
}

/// Deterministic decomposition: `t = max(0, ⌈(|h| - 6) / 3⌉)` triangles on
/// the smallest `3t` vertices, then `|h| - 3 - 3t` single edges on the next
/// vertices in pairs.
pub fn decompose_hyperedge(h: &[Vertex]) -> Decomposition {
    let size = h.len();
    if size <= 3 {
        return Decomposition::default();
    }
    let mut sorted = h.to_vec();
    sorted.sort_unstable();
    let triangles = size.saturating_sub(6).div_ceil(3);
    let singles = size - 3 - 3 * triangles;
    let (tri, rest) = sorted.split_at(3 * triangles);
    Decomposition {
        triangles: tri.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect(),
        single_edges: rest.chunks_exact(2).take(singles).map(|c| [c[0], c[1]]).collect(),
    }
}

pub fn build_embedded_graph(h: &Hypergraph) -> ColoredGraph {
    embed_with(h, decompose_hyperedge).expect("the default decomposition is always valid")
}

/// Embeds with a caller-supplied decomposition rule; rejects decompositions
/// that break the disjoint-pieces contract.
pub fn embed_with(h: &Hypergraph, decompose: impl Fn(&[Vertex]) -> Decomposition) -> Result<ColoredGraph> {
    let mut cg = ColoredGraph::new(h.n());
    for (id, e) in h.hyperedges().iter().enumerate() {
        let d = decompose(e);
        if !d.is_valid_for(e) {
            return Err(Error::InvalidDecomposition(id));
        }
        for (x, y) in d.edges() {
            cg.add_edge(x, y, id)?;
        }
    }
    Ok(cg)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// Every coloured edge lies inside the hyperedge of its colour.
    EdgesInsideColors,
    /// At most two edges of one colour at a vertex.
    ColorDegreeAtMostTwo,
    /// Two same-coloured edges `xy`, `xz` force `yz` in that colour.
    TriangleClosure,
    /// The simple projection has no `K_{2,7}`.
    K27Free,
    /// Max degree of `G` is at most 6.
    GMaxDegreeAtMostSix,
    /// `|G| <= 3 d(v)`.
    GEdgesAtMostThreeD,
    /// `|G_aux| <= |G'_aux| + 3 d(v)`.
    GAuxAtMostPrimePlusThreeD,
    /// `G'_aux` has no `K_{5,5}`.
    K55Free,
    /// `|G'_aux| < d(v)^{9/5}`.
    GAuxPrimeBelowPowerBound,
    /// Every `xy` in `G'_aux` has `x ∈ h_y` or `y ∈ h_x`.
    AuxEdgeInclusion,
    /// Each `N2(v)` vertex meets at most one edge of `B \ B'`.
    BOutsidePrimeAtMostOne,
    /// `|B| + 2|G|` equals the number of 2-paths leaving `v`.
    TwoPathCount,
    /// The digraph on six distinctly coloured neighbours avoids F1 and F2.
    DigraphPatternFree,
}

impl Check {
    pub const ALL: [Check; 13] = [
        Check::EdgesInsideColors,
        Check::ColorDegreeAtMostTwo,
        Check::TriangleClosure,
        Check::K27Free,
        Check::GMaxDegreeAtMostSix,
        Check::GEdgesAtMostThreeD,
        Check::GAuxAtMostPrimePlusThreeD,
        Check::K55Free,
        Check::GAuxPrimeBelowPowerBound,
        Check::AuxEdgeInclusion,
        Check::BOutsidePrimeAtMostOne,
        Check::TwoPathCount,
        Check::DigraphPatternFree,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub check: Check,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<Vertex>,
    pub detail: String,
}

/// Scans every vertex and colour for the local structure the embedding
/// guarantees. An empty result means the coloured graph passes.
pub fn verify_observation1(cg: &ColoredGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    for x in 0..cg.n() {
        let mut by_color: BTreeMap<HyperedgeId, Vec<Vertex>> = BTreeMap::new();
        for e in cg.incident(x) {
            by_color.entry(e.color).or_default().push(e.other(x));
        }
        for (color, ends) in by_color {
            if ends.len() > 2 {
                out.push(Violation {
                    check: Check::ColorDegreeAtMostTwo,
                    vertex: Some(x),
                    detail: format!("{} edges of colour {color} at vertex {x}: {ends:?}", ends.len()),
                });
            }
            for (i, &y) in ends.iter().enumerate() {
                for &z in &ends[i + 1..] {
                    if !cg.has_edge(y, z, color) {
                        out.push(Violation {
                            check: Check::TriangleClosure,
                            vertex: Some(x),
                            detail: format!("{x}-{y} and {x}-{z} have colour {color} but {y}-{z} does not"),
                        });
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct AuxBundle {
    pub v: Vertex,
    pub n1: BTreeSet<Vertex>,
    pub n2: BTreeSet<Vertex>,
    pub g: Graph,
    pub g_aux: Graph,
    pub g_aux_prime: Graph,
    pub b: BipartiteGraph,
    pub b_prime: BipartiteGraph,
    pub d: Option<Digraph>,
}

impl AuxBundle {
    pub fn degree(&self) -> usize {
        self.n1.len()
    }
}

/// Builds the auxiliary objects for centre `v` on the simple projection of
/// `cg`. `D` is left empty; see [`build_d`].
pub fn build_aux_bundle(h: &Hypergraph, cg: &ColoredGraph, v: Vertex) -> Result<AuxBundle> {
    if v >= h.n() || v >= cg.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: h.n().min(cg.n()) });
    }
    Ok(bundle_on(&cg.projection(), v))
}

fn bundle_on(p: &Graph, v: Vertex) -> AuxBundle {
    let (n1, n2) = p.neighborhoods(v).expect("centre is in range");
    let g = p.induced(&n1);

    let mut g_aux = Graph::new(p.n());
    let mut b = BipartiteGraph::new(n1.clone(), n2.clone()).expect("neighbourhood layers are disjoint");
    for &w in &n2 {
        let legs: Vec<Vertex> = p.neighbors(w).intersection(&n1).copied().collect();
        for (i, &x) in legs.iter().enumerate() {
            b.add_edge(x, w);
            for &y in &legs[i + 1..] {
                g_aux.add_edge(x, y).expect("distinct neighbours");
            }
        }
    }
    let g_aux_prime = g_aux.difference(&g);

    let mut b_prime = BipartiteGraph::new(n1.clone(), n2.clone()).expect("neighbourhood layers are disjoint");
    for &(x, y) in b.edges() {
        if n1.iter().any(|&z| z != x && b.has_edge(z, y)) {
            b_prime.add_edge(x, y);
        }
    }

    AuxBundle {
        v,
        n1,
        n2,
        g,
        g_aux,
        g_aux_prime,
        b,
        b_prime,
        d: None,
    }
}

/// Picks, for each listed neighbour `u` of `v`, the colour of a `vu` edge so
/// that all picked colours are distinct.
pub fn center_colors(cg: &ColoredGraph, v: Vertex, vertices: &[Vertex]) -> Result<Vec<HyperedgeId>> {
    let options: Vec<Vec<HyperedgeId>> = vertices
        .iter()
        .map(|&u| {
            let c = cg.colors_between(v, u);
            if c.is_empty() {
                Err(Error::NotNeighbour { center: v, vertex: u })
            } else {
                Ok(c)
            }
        })
        .collect::<Result<_>>()?;
    let slots: Vec<&[HyperedgeId]> = options.iter().map(Vec::as_slice).collect();
    distinct_representatives(&slots).ok_or_else(|| {
        // Report a pair whose colour lists overlap.
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if let Some(&color) = options[i].iter().find(|c| options[j].contains(c)) {
                    return Error::SharedColor {
                        first: vertices[i],
                        second: vertices[j],
                        color,
                    };
                }
            }
        }
        unreachable!("distinct representatives fail only when some lists overlap")
    })
}

/// Digraph on the six vertices of `a ∪ bt` (original ids kept): `u → w` iff
/// `u` and `w` are in different triples and `u` lies in the colour of `vw`.
pub fn build_d(h: &Hypergraph, cg: &ColoredGraph, v: Vertex, a: [Vertex; 3], bt: [Vertex; 3]) -> Result<Digraph> {
    if v >= h.n() || v >= cg.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: h.n() });
    }
    let six: Vec<Vertex> = a.iter().chain(&bt).copied().collect();
    if let Some(&bad) = six.iter().find(|&&u| u >= h.n()) {
        return Err(Error::VertexOutOfRange { vertex: bad, n: h.n() });
    }
    let distinct: BTreeSet<Vertex> = six.iter().copied().collect();
    if distinct.len() != 6 || distinct.contains(&v) {
        return Err(Error::TriplesOverlap);
    }
    let colors = center_colors(cg, v, &six)?;
    let mut d = Digraph::new(h.n());
    for (i, &u) in six.iter().enumerate() {
        for (j, &w) in six.iter().enumerate() {
            if (i < 3) != (j < 3) && h.contains(colors[j], u) {
                d.add_arc(u, w)?;
            }
        }
    }
    Ok(d)
}

/// Six neighbours of `v`, scanned in ascending order, that admit pairwise
/// distinct colours (greedy, smallest colour first).
fn distinctly_colored_neighbors(cg: &ColoredGraph, v: Vertex, n1: &BTreeSet<Vertex>) -> Option<([Vertex; 3], [Vertex; 3])> {
    let mut used = BTreeSet::new();
    let mut picked = Vec::with_capacity(6);
    for &u in n1 {
        if let Some(c) = cg.colors_between(v, u).into_iter().find(|c| !used.contains(c)) {
            used.insert(c);
            picked.push(u);
            if picked.len() == 6 {
                return Some(([picked[0], picked[1], picked[2]], [picked[3], picked[4], picked[5]]));
            }
        }
    }
    None
}

#[derive(Clone, Debug, Default)]
pub struct LemmaOptions {
    /// Check only this many vertices, sampled with `seed`.
    pub sample: Option<usize>,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VertexAudit {
    pub v: Vertex,
    pub degree: usize,
    pub n2: usize,
    pub g: usize,
    pub g_aux: usize,
    pub g_aux_prime: usize,
    pub b: usize,
    pub b_prime: usize,
    pub two_paths: usize,
    pub power_bound: f64,
    pub digraph_arcs: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub check: Check,
    pub passed: bool,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaReport {
    pub n: usize,
    pub hyperedges: usize,
    pub weight: i64,
    pub colored_edges: usize,
    pub vertices_checked: Vec<Vertex>,
    pub checks: Vec<CheckSummary>,
    pub violations: Vec<Violation>,
    pub audits: Vec<VertexAudit>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Builds the coloured graph and runs every check on it.
pub fn verify_lemma_suite(h: &Hypergraph, options: &LemmaOptions) -> Result<LemmaReport> {
    let cg = build_embedded_graph(h);
    verify_lemma_suite_with(h, &cg, options)
}

/// Runs every check on a caller-supplied coloured graph for `h`. Refuses
/// inputs that contain a Berge-C4.
pub fn verify_lemma_suite_with(h: &Hypergraph, cg: &ColoredGraph, options: &LemmaOptions) -> Result<LemmaReport> {
    if let Some(w) = find_berge_cycle(h, 4)? {
        return Err(Error::NotBergeC4Free(w));
    }
    let vertices = select_vertices(h.n(), options)?;
    let p = cg.projection();

    let mut violations: Vec<Violation> = cg
        .edges_outside_colors(h)
        .into_iter()
        .map(|e| Violation {
            check: Check::EdgesInsideColors,
            vertex: None,
            detail: format!("edge {}-{} has colour {} but is not inside it", e.u, e.v, e.color),
        })
        .collect();
    violations.extend(verify_observation1(cg));
    if let Some(k) = contains_kst(&p, 2, 7)? {
        violations.push(Violation {
            check: Check::K27Free,
            vertex: None,
            detail: format!("K_(2,7) with parts {:?} and {:?}", k.small, k.large),
        });
    }

    let per_vertex: Vec<(VertexAudit, Vec<Violation>)> = vertices
        .par_iter()
        .map(|&v| audit_vertex(h, cg, &p, v))
        .collect::<Result<_>>()?;

    let mut audits = Vec::with_capacity(per_vertex.len());
    for (audit, found) in per_vertex {
        audits.push(audit);
        violations.extend(found);
    }

    let checks = Check::ALL
        .iter()
        .map(|&check| {
            let failures = violations.iter().filter(|x| x.check == check).count();
            CheckSummary {
                check,
                passed: failures == 0,
                failures,
            }
        })
        .collect();

    Ok(LemmaReport {
        n: h.n(),
        hyperedges: h.len(),
        weight: h.weight(),
        colored_edges: cg.edge_count(),
        vertices_checked: vertices,
        checks,
        violations,
        audits,
    })
}

fn select_vertices(n: usize, options: &LemmaOptions) -> Result<Vec<Vertex>> {
    match options.sample {
        None => Ok((0..n).collect()),
        Some(s) if s > n => Err(Error::SampleTooLarge { sample: s, n }),
        Some(s) => {
            let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
            let mut picked = rand::seq::index::sample(&mut rng, n, s).into_vec();
            picked.sort_unstable();
            Ok(picked)
        }
    }
}

fn audit_vertex(h: &Hypergraph, cg: &ColoredGraph, p: &Graph, v: Vertex) -> Result<(VertexAudit, Vec<Violation>)> {
    let mut bundle = bundle_on(p, v);
    let d = bundle.degree();
    let mut out = Vec::new();
    let mut fail = |check: Check, detail: String| {
        out.push(Violation {
            check,
            vertex: Some(v),
            detail,
        })
    };

    let max_g_degree = bundle.n1.iter().map(|&x| bundle.g.degree(x)).max().unwrap_or(0);
    if max_g_degree > 6 {
        fail(Check::GMaxDegreeAtMostSix, format!("G has a vertex of degree {max_g_degree}"));
    }
    let g_edges = bundle.g.edge_count();
    if g_edges > 3 * d {
        fail(Check::GEdgesAtMostThreeD, format!("|G| = {g_edges} > 3 * {d}"));
    }
    let (aux, aux_prime) = (bundle.g_aux.edge_count(), bundle.g_aux_prime.edge_count());
    if aux > aux_prime + 3 * d {
        fail(
            Check::GAuxAtMostPrimePlusThreeD,
            format!("|G_aux| = {aux} > {aux_prime} + 3 * {d}"),
        );
    }
    if let Some(k) = contains_kst(&bundle.g_aux_prime, 5, 5)? {
        fail(
            Check::K55Free,
            format!("K_(5,5) in G'_aux with parts {:?} and {:?}", k.small, k.large),
        );
    }
    let power_bound = (d as f64).powf(1.8);
    if d >= 1 && aux_prime as f64 >= power_bound {
        fail(
            Check::GAuxPrimeBelowPowerBound,
            format!("|G'_aux| = {aux_prime} >= d^(9/5) = {power_bound:.3}"),
        );
    }

    for (x, y) in bundle.g_aux_prime.edges() {
        let (cx, cy) = (cg.colors_between(v, x), cg.colors_between(v, y));
        let included = cx.iter().any(|&hx| {
            cy.iter()
                .any(|&hy| hx != hy && (h.contains(hy, x) || h.contains(hx, y)))
        });
        if !included {
            fail(
                Check::AuxEdgeInclusion,
                format!("G'_aux edge {x}-{y}: colours {cx:?} / {cy:?} admit no inclusion"),
            );
        }
    }

    for &w in &bundle.n2 {
        let outside = bundle
            .b
            .edges()
            .iter()
            .filter(|&&(x, y)| y == w && !bundle.b_prime.has_edge(x, y))
            .count();
        if outside > 1 {
            fail(
                Check::BOutsidePrimeAtMostOne,
                format!("N2 vertex {w} meets {outside} edges of B minus B'"),
            );
        }
    }

    let two_paths: usize = bundle.n1.iter().map(|&x| p.degree(x) - 1).sum();
    let (b_edges, b_prime_edges) = (bundle.b.edge_count(), bundle.b_prime.edge_count());
    if b_edges + 2 * g_edges != two_paths {
        fail(
            Check::TwoPathCount,
            format!("|B| + 2|G| = {} but there are {two_paths} 2-paths", b_edges + 2 * g_edges),
        );
    }

    if let Some((a, bt)) = distinctly_colored_neighbors(cg, v, &bundle.n1) {
        let digraph = build_d(h, cg, v, a, bt)?;
        for pattern in [Pattern::F1, Pattern::F2] {
            if let Some(map) = contains_pattern(&digraph, &pattern) {
                fail(
                    Check::DigraphPatternFree,
                    format!("{} embeds as {map:?} in D on {a:?} / {bt:?}", pattern.name),
                );
            }
        }
        bundle.d = Some(digraph);
    }

    let audit = VertexAudit {
        v,
        degree: d,
        n2: bundle.n2.len(),
        g: g_edges,
        g_aux: aux,
        g_aux_prime: aux_prime,
        b: b_edges,
        b_prime: b_prime_edges,
        two_paths,
        power_bound,
        digraph_arcs: bundle.d.as_ref().map(Digraph::arc_count),
    };
    Ok((audit, out))
}
