//! Forbidden-pattern detectors: complete bipartite `K_{s,t}` in simple graphs
//! and the two small directed patterns F1, F2 in digraphs.
//!
//! Containment is always non-induced.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{Digraph, Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Biclique {
    pub small: Vec<Vertex>,
    pub large: Vec<Vertex>,
}

impl Biclique {
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let small: BTreeSet<_> = self.small.iter().collect();
        let large: BTreeSet<_> = self.large.iter().collect();
        small.len() == self.small.len()
            && large.len() == self.large.len()
            && small.is_disjoint(&large)
            && self
                .small
                .iter()
                .all(|&x| self.large.iter().all(|&y| g.has_edge(x, y)))
    }
}

/// Looks for a `K_{s,t}`: `s` vertices whose common neighbourhood has at
/// least `t` members. Only `s`-subsets of vertices of degree `>= t` are
/// enumerated, in lexicographic order; the first hit is returned.
pub fn contains_kst(g: &Graph, s: usize, t: usize) -> Result<Option<Biclique>> {
    if s == 0 || s > t {
        return Err(Error::BicliqueShape { s, t });
    }
    let candidates: Vec<Vertex> = (0..g.n()).filter(|&v| g.degree(v) >= t).collect();
    let mut chosen = Vec::with_capacity(s);
    Ok(grow(g, &candidates, 0, s, t, &mut chosen, None))
}

fn grow(
    g: &Graph,
    candidates: &[Vertex],
    from: usize,
    s: usize,
    t: usize,
    chosen: &mut Vec<Vertex>,
    common: Option<&BTreeSet<Vertex>>,
) -> Option<Biclique> {
    if chosen.len() == s {
        // No loops, so a chosen vertex never lies in its own neighbourhood
        // and the common neighbourhood is automatically disjoint from it.
        let common = common.expect("s >= 1");
        return Some(Biclique {
            small: chosen.clone(),
            large: common.iter().take(t).copied().collect(),
        });
    }
    let remaining = s - chosen.len();
    for i in from..candidates.len() {
        if candidates.len() - i < remaining {
            break;
        }
        let v = candidates[i];
        let next: BTreeSet<Vertex> = match common {
            None => g.neighbors(v).clone(),
            Some(c) => c.intersection(g.neighbors(v)).copied().collect(),
        };
        if next.len() < t {
            continue;
        }
        chosen.push(v);
        let found = grow(g, candidates, i + 1, s, t, chosen, Some(&next));
        chosen.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// A small directed pattern on abstract vertices `0..size`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pattern {
    pub name: &'static str,
    pub labels: &'static [&'static str],
    pub arcs: &'static [(usize, usize)],
}

impl Pattern {
    /// `y→x, z→x, w→z` on `x, y, z, w`.
    pub const F1: Pattern = Pattern {
        name: "F1",
        labels: &["x", "y", "z", "w"],
        arcs: &[(1, 0), (2, 0), (3, 2)],
    };

    /// `y→x, z→x, z→w, u→w` on `x, y, z, w, u`.
    pub const F2: Pattern = Pattern {
        name: "F2",
        labels: &["x", "y", "z", "w", "u"],
        arcs: &[(1, 0), (2, 0), (2, 3), (4, 3)],
    };

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn as_digraph(&self) -> Digraph {
        Digraph::from_arcs(self.size(), self.arcs.iter().copied()).expect("pattern arcs are valid")
    }

    /// Checks that `map` is injective and sends every pattern arc onto an arc
    /// of `d`.
    pub fn is_embedding(&self, d: &Digraph, map: &[Vertex]) -> bool {
        map.len() == self.size()
            && map.iter().collect::<BTreeSet<_>>().len() == map.len()
            && map.iter().all(|&v| v < d.n())
            && self.arcs.iter().all(|&(a, b)| d.has_arc(map[a], map[b]))
    }

    /// Vertex order in which every vertex after the first touches an
    /// earlier one (the patterns are weakly connected).
    fn search_order(&self) -> Vec<usize> {
        let mut order = vec![0];
        while order.len() < self.size() {
            let next = (0..self.size())
                .find(|v| {
                    !order.contains(v)
                        && self
                            .arcs
                            .iter()
                            .any(|&(a, b)| (a == *v && order.contains(&b)) || (b == *v && order.contains(&a)))
                })
                .expect("pattern must be weakly connected");
            order.push(next);
        }
        order
    }
}

/// Finds an injective map from the pattern's vertices into `d` that carries
/// every pattern arc onto an arc of `d`. `map[i]` is the image of pattern
/// vertex `i`.
pub fn contains_pattern(d: &Digraph, p: &Pattern) -> Option<Vec<Vertex>> {
    let order = p.search_order();
    let mut map = vec![usize::MAX; p.size()];
    let active: Vec<Vertex> = (0..d.n())
        .filter(|&v| d.out_neighbors(v).next().is_some() || d.in_neighbors(v).next().is_some())
        .collect();
    place(d, p, &order, 0, &mut map, &active).then_some(map)
}

fn place(d: &Digraph, p: &Pattern, order: &[usize], depth: usize, map: &mut [Vertex], active: &[Vertex]) -> bool {
    let Some(&pv) = order.get(depth) else {
        return true;
    };
    let placed = &order[..depth];
    let candidates: Vec<Vertex> = match p.arcs.iter().find_map(|&(a, b)| {
        if a == pv && placed.contains(&b) {
            Some(d.in_neighbors(map[b]).collect())
        } else if b == pv && placed.contains(&a) {
            Some(d.out_neighbors(map[a]).collect())
        } else {
            None
        }
    }) {
        Some(c) => c,
        None => active.to_vec(),
    };
    for v in candidates {
        if placed.iter().any(|&q| map[q] == v) {
            continue;
        }
        let consistent = p.arcs.iter().all(|&(a, b)| {
            let ends_placed = (a == pv || placed.contains(&a)) && (b == pv || placed.contains(&b));
            if !ends_placed {
                return true;
            }
            let img = |x: usize| if x == pv { v } else { map[x] };
            d.has_arc(img(a), img(b))
        });
        if !consistent {
            continue;
        }
        map[pv] = v;
        if place(d, p, order, depth + 1, map, active) {
            return true;
        }
    }
    map[pv] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::from_edges(a + b, (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y)))).unwrap()
    }

    #[test]
    fn finds_k27() {
        let g = complete_bipartite(2, 7);
        let w = contains_kst(&g, 2, 7).unwrap().unwrap();
        assert_eq!(w.small, vec![0, 1]);
        assert!(w.is_valid_for(&g));
    }

    #[test]
    fn star_has_no_k27() {
        let star = complete_bipartite(1, 7);
        assert_eq!(contains_kst(&star, 2, 7).unwrap(), None);
        assert!(contains_kst(&star, 1, 7).unwrap().is_some());
    }

    #[test]
    fn rejects_bad_shapes() {
        let g = Graph::new(3);
        assert!(matches!(contains_kst(&g, 0, 2), Err(Error::BicliqueShape { .. })));
        assert!(matches!(contains_kst(&g, 3, 2), Err(Error::BicliqueShape { .. })));
    }

    #[test]
    fn f1_in_itself() {
        let d = Pattern::F1.as_digraph();
        assert_eq!(contains_pattern(&d, &Pattern::F1), Some(vec![0, 1, 2, 3]));
        assert!(contains_pattern(&d.reverse(), &Pattern::F1).is_none());
        let d2 = Pattern::F2.as_digraph();
        let m = contains_pattern(&d2, &Pattern::F2).unwrap();
        assert!(Pattern::F2.is_embedding(&d2, &m));
    }

    #[test]
    fn f1_needs_in_degree_two() {
        // A directed path has every in-degree <= 1.
        let path = Digraph::from_arcs(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert!(contains_pattern(&path, &Pattern::F1).is_none());
        assert!(contains_pattern(&path, &Pattern::F2).is_none());
    }

    fn brute_kst(g: &Graph, s: usize, t: usize) -> bool {
        let n = g.n();
        (0u32..1 << n).filter(|m| m.count_ones() as usize == s).any(|sm| {
            let common = (0..n)
                .filter(|&y| sm & (1 << y) == 0 && (0..n).all(|x| sm & (1 << x) == 0 || g.has_edge(x, y)))
                .count();
            common >= t
        })
    }

    fn brute_pattern(d: &Digraph, p: &Pattern) -> bool {
        fn go(d: &Digraph, p: &Pattern, map: &mut Vec<usize>) -> bool {
            if map.len() == p.size() {
                return p.is_embedding(d, map);
            }
            for v in 0..d.n() {
                if !map.contains(&v) {
                    map.push(v);
                    if go(d, p, map) {
                        return true;
                    }
                    map.pop();
                }
            }
            false
        }
        go(d, p, &mut Vec::new())
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (2usize..=12, 0.0f64..1.0).prop_flat_map(|(n, _)| {
            proptest::collection::vec(proptest::bool::weighted(0.5), n * (n - 1) / 2).prop_map(move |bits| {
                let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
            })
        })
    }

    fn arb_tournament() -> impl Strategy<Value = Digraph> {
        (2usize..=8).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |dirs| {
                let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                Digraph::from_arcs(n, pairs.zip(dirs).map(|((u, v), fwd)| if fwd { (u, v) } else { (v, u) })).unwrap()
            })
        })
    }

    fn arb_sparse_digraph() -> impl Strategy<Value = Digraph> {
        (2usize..=7).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..2 * n)
                .prop_map(move |arcs| Digraph::from_arcs(n, arcs.into_iter().filter(|(u, v)| u != v)).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn kst_matches_brute_force(g in arb_graph(), s in 1usize..=3, extra in 0usize..3) {
            let t = s + extra;
            let found = contains_kst(&g, s, t).unwrap();
            prop_assert_eq!(found.is_some(), brute_kst(&g, s, t));
            if let Some(w) = found {
                prop_assert!(w.is_valid_for(&g));
                prop_assert_eq!((w.small.len(), w.large.len()), (s, t));
            }
        }

        #[test]
        fn kst_is_monotone(g in arb_graph(), u in 0usize..12, v in 0usize..12) {
            if contains_kst(&g, 2, 2).unwrap().is_some() && u < g.n() && v < g.n() && u != v {
                let mut h = g.clone();
                h.add_edge(u, v).unwrap();
                prop_assert!(contains_kst(&h, 2, 2).unwrap().is_some());
            }
        }

        #[test]
        fn patterns_match_brute_force_on_tournaments(d in arb_tournament()) {
            for p in [Pattern::F1, Pattern::F2] {
                let found = contains_pattern(&d, &p);
                prop_assert_eq!(found.is_some(), brute_pattern(&d, &p));
                if let Some(m) = found {
                    prop_assert!(p.is_embedding(&d, &m));
                }
            }
        }

        #[test]
        fn patterns_match_brute_force_on_sparse_digraphs(d in arb_sparse_digraph()) {
            for p in [Pattern::F1, Pattern::F2] {
                let found = contains_pattern(&d, &p);
                prop_assert_eq!(found.is_some(), brute_pattern(&d, &p));
            }
            if contains_pattern(&d, &Pattern::F1).is_some() {
                prop_assert!((0..d.n()).any(|v| d.in_degree(v) >= 2));
            }
        }
    }
}
