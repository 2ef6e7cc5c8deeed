//! The lower-bound family: point-line incidence graphs of projective planes
//! over prime fields, blown up threefold into 6-uniform hypergraphs.

use serde::Serialize;

use crate::berge::{find_c4_in_graph, find_triangle};
use crate::error::{Error, Result};
use crate::hypergraph::{BipartiteGraph, Graph, Hypergraph, Vertex};

/// Printed next to every asymptotic comparator.
pub const ASYMPTOTIC_NOTE: &str = "asymptotic — o(1) terms dropped";

pub fn is_prime(q: usize) -> bool {
    if q < 2 {
        return false;
    }
    (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Incidence structure of the projective plane of prime order `q`. Points
/// are vertices `0..N`, lines are `N..2N`, with `N = q² + q + 1`.
#[derive(Clone, Debug, Serialize)]
pub struct PlaneIncidence {
    pub q: usize,
    pub points: Vec<[usize; 3]>,
    pub lines: Vec<[usize; 3]>,
    pub incidence: BipartiteGraph,
}

impl PlaneIncidence {
    pub fn order(&self) -> usize {
        self.points.len()
    }

    pub fn graph(&self) -> Graph {
        self.incidence
            .to_graph(2 * self.order())
            .expect("incidence edges are in range")
    }
}

/// Nonzero triples over `Z/q` whose first nonzero coordinate is 1, in
/// lexicographic order.
fn normalized_triples(q: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(q * q + q + 1);
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                let t = [a, b, c];
                if t.iter().find(|&&x| x != 0) == Some(&1) {
                    out.push(t);
                }
            }
        }
    }
    out
}

pub fn projective_plane_incidence(q: usize) -> Result<PlaneIncidence> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let points = normalized_triples(q);
    let lines = points.clone();
    let size = points.len();
    let mut incidence = BipartiteGraph::new((0..size).collect(), (size..2 * size).collect())?;
    for (i, p) in points.iter().enumerate() {
        for (j, l) in lines.iter().enumerate() {
            if (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q == 0 {
                incidence.add_edge(i, size + j);
            }
        }
    }
    Ok(PlaneIncidence {
        q,
        points,
        lines,
        incidence,
    })
}

/// Replaces vertex `u` by copies `r·u .. r·u + r - 1`; each edge `uv` becomes
/// the hyperedge of all `2r` copies. Hyperedges follow the lexicographic
/// edge order of `g`.
pub fn blow_up(g: &Graph, r: usize) -> Hypergraph {
    assert!(r >= 1, "blow-up factor must be positive");
    let copies = |u: Vertex| r * u..r * u + r;
    let edges = g.edges().map(|(u, v)| copies(u).chain(copies(v)).collect()).collect();
    Hypergraph::new(r * g.n(), edges).expect("copies are in range and distinct")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum BlowupCertificate {
    /// `g` has neither triangles nor 4-cycles, so its threefold blow-up is
    /// Berge-C4-free.
    Certified { vertices: usize, edges: usize, reason: String },
    /// The blow-up contains a Berge-C4.
    ContainsC4 { cycle: [Vertex; 4] },
    /// Not certified. The blow-up may or may not be Berge-C4-free.
    ContainsTriangle { cycle: [Vertex; 3] },
}

impl BlowupCertificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, BlowupCertificate::Certified { .. })
    }
}

/// Certifies `blow_up(g, 3)` Berge-C4-free from the structure of `g`.
///
/// A Berge-C4 in the blow-up projects to a closed walk `a b c d` in `g`. Four
/// distinct projections give a C4 in `g`, three give a triangle, and two force
/// two of the four hyperedges to be the hyperedge of the same edge of `g`.
pub fn certify_blowup_free(g: &Graph) -> BlowupCertificate {
    if let Some(cycle) = find_c4_in_graph(g) {
        return BlowupCertificate::ContainsC4 { cycle };
    }
    if let Some(cycle) = find_triangle(g) {
        return BlowupCertificate::ContainsTriangle { cycle };
    }
    BlowupCertificate::Certified {
        vertices: g.n(),
        edges: g.edge_count(),
        reason: "graph is C4-free and triangle-free; a Berge-C4 in the blow-up would project to a C4, a \
                 triangle, or reuse the hyperedge of a single edge"
            .to_string(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LowerBoundConstruction {
    pub q: usize,
    pub hypergraph: Hypergraph,
    pub weight: i64,
    pub ratio: f64,
}

/// Smallest vertex count a plane of order `q` needs after blow-up.
pub fn construction_size(q: usize) -> usize {
    6 * (q * q + q + 1)
}

/// Largest prime `q` with `6(q² + q + 1) <= n`, blown up and padded with
/// isolated vertices to exactly `n` vertices.
pub fn lower_bound_construction(n: usize) -> Result<LowerBoundConstruction> {
    let q = (2..)
        .take_while(|&q| construction_size(q) <= n)
        .filter(|&q| is_prime(q))
        .last()
        .ok_or(Error::ConstructionTooSmall(n))?;
    padded_construction(q, n)
}

/// The construction for prime order `q`, without padding.
pub fn plane_construction(q: usize) -> Result<LowerBoundConstruction> {
    padded_construction(q, construction_size(q))
}

fn padded_construction(q: usize, n: usize) -> Result<LowerBoundConstruction> {
    let plane = projective_plane_incidence(q)?;
    let blown = blow_up(&plane.graph(), 3);
    let hypergraph = Hypergraph::new(n, blown.hyperedges().to_vec())?;
    let weight = hypergraph.weight();
    Ok(LowerBoundConstruction {
        q,
        ratio: weight as f64 / (n as f64).powf(1.5),
        weight,
        hypergraph,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Bounds {
    pub upper: f64,
    pub lower: f64,
}

/// Leading terms `n^{3/2} / 2` and `n^{3/2} / (2√6)`.
pub fn theoretical_bounds(n: usize) -> Bounds {
    let scale = (n as f64).powf(1.5);
    Bounds {
        upper: 0.5 * scale,
        lower: scale / (2.0 * 6f64.sqrt()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::berge::is_berge_c4_free;

    /// Every pair of vertices shares at most one neighbour.
    fn pair_scan_c4_free(g: &Graph) -> bool {
        (0..g.n()).all(|a| (a + 1..g.n()).all(|b| g.neighbors(a).intersection(g.neighbors(b)).count() <= 1))
    }

    /// Some triangle shares a vertex with an edge outside it.
    fn triangle_touches_other_edge(g: &Graph) -> bool {
        let n = g.n();
        (0..n).any(|a| {
            (a + 1..n).any(|b| {
                (b + 1..n).any(|c| {
                    g.has_edge(a, b)
                        && g.has_edge(b, c)
                        && g.has_edge(a, c)
                        && [a, b, c].iter().any(|&x| g.degree(x) > 2)
                })
            })
        })
    }

    #[test]
    fn primality() {
        let primes: Vec<usize> = (0..30).filter(|&q| is_prime(q)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn fano_incidence_is_heawood() {
        let plane = projective_plane_incidence(2).unwrap();
        assert_eq!(plane.order(), 7);
        let g = plane.graph();
        assert_eq!(g.n(), 14);
        assert_eq!(g.edge_count(), 21);
        assert!((0..14).all(|v| g.degree(v) == 3));
        assert!(pair_scan_c4_free(&g));
        assert_eq!(find_c4_in_graph(&g), None);
        assert_eq!(g.degree_stats().unwrap().average, 3.0);
    }

    #[test]
    fn order_three_plane() {
        let g = projective_plane_incidence(3).unwrap().graph();
        assert_eq!((g.n(), g.edge_count()), (26, 52));
        assert!((0..26).all(|v| g.degree(v) == 4));
        assert!(pair_scan_c4_free(&g));
    }

    #[test]
    fn rejects_non_primes() {
        for q in [0, 1, 4, 6, 9] {
            assert!(matches!(projective_plane_incidence(q), Err(Error::NotPrime(_))));
        }
    }

    #[test]
    fn blow_up_examples() {
        let edge = Graph::from_edges(2, [(0, 1)]).unwrap();
        let h = blow_up(&edge, 3);
        assert_eq!(h.hyperedges(), &[vec![0, 1, 2, 3, 4, 5]]);
        assert_eq!(h.weight(), 3);

        let heawood = projective_plane_incidence(2).unwrap().graph();
        let h = blow_up(&heawood, 3);
        assert_eq!((h.n(), h.len(), h.weight()), (42, 21, 63));
        assert!(h.hyperedges().iter().all(|e| e.len() == 6));

        let identity = blow_up(&heawood, 1);
        assert_eq!(
            identity.hyperedges().to_vec(),
            heawood.edges().map(|(u, v)| vec![u, v]).collect::<Vec<_>>()
        );
    }

    #[test]
    fn certificates() {
        let heawood = projective_plane_incidence(2).unwrap().graph();
        assert!(certify_blowup_free(&heawood).is_certified());

        let k22 = Graph::from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert!(matches!(certify_blowup_free(&k22), BlowupCertificate::ContainsC4 { .. }));
        assert!(!is_berge_c4_free(&blow_up(&k22, 3)));

        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(
            certify_blowup_free(&tri),
            BlowupCertificate::ContainsTriangle { cycle: [0, 1, 2] }
        );
        // Three hyperedges cannot carry a Berge-C4; a pendant edge completes one.
        assert!(is_berge_c4_free(&blow_up(&tri, 3)));
        let paw = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert!(!certify_blowup_free(&paw).is_certified());
        assert!(!is_berge_c4_free(&blow_up(&paw, 3)));
    }

    #[test]
    fn certificate_agrees_with_detector_on_small_graphs() {
        // Every graph on 5 vertices.
        let pairs: Vec<(usize, usize)> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        for mask in 0u32..1 << pairs.len() {
            let g = Graph::from_edges(5, pairs.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &e)| e)).unwrap();
            let free = is_berge_c4_free(&blow_up(&g, 3));
            match certify_blowup_free(&g) {
                BlowupCertificate::Certified { .. } => assert!(free, "mask {mask}"),
                BlowupCertificate::ContainsC4 { .. } => assert!(!free, "mask {mask}"),
                BlowupCertificate::ContainsTriangle { .. } => {
                    assert_eq!(free, g.edge_count() == 3 || !triangle_touches_other_edge(&g), "mask {mask}")
                }
            }
        }
    }

    #[test]
    fn lower_bound_examples() {
        let c = lower_bound_construction(42).unwrap();
        assert_eq!((c.q, c.weight), (2, 63));
        assert!((c.ratio - 63.0 / 42f64.powf(1.5)).abs() < 1e-12);
        assert!((c.ratio - 0.2315).abs() < 1e-4);

        let c = lower_bound_construction(50).unwrap();
        assert_eq!((c.q, c.weight, c.hypergraph.n()), (2, 63, 50));

        let c = lower_bound_construction(798).unwrap();
        assert_eq!((c.q, c.weight), (11, 4788));
        assert_eq!(c.weight, 3 * 133 * 12);

        assert!(matches!(lower_bound_construction(41), Err(Error::ConstructionTooSmall(41))));
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(theoretical_bounds(0), Bounds { upper: 0.0, lower: 0.0 });
        let b = theoretical_bounds(4);
        assert!((b.upper - 4.0).abs() < 1e-12);
        assert!((b.lower - 8.0 / (2.0 * 6f64.sqrt())).abs() < 1e-12);
        assert!((b.lower - 1.633).abs() < 1e-3);
        let b = theoretical_bounds(798);
        assert!((b.upper - 11271.3086).abs() < 1e-3);
        assert!((b.lower - 4601.4925).abs() < 1e-3);
        let b = theoretical_bounds(42);
        assert!((b.upper - 136.0956).abs() < 1e-3);
        assert!((b.lower - 55.5608).abs() < 1e-3);
    }
}
