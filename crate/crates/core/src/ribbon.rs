//! Ribbon graphs, the Bernardi tour and the atlases built from it.

use std::collections::VecDeque;

use crate::atlas::{Atlas, Polarity};
use crate::error::{Error, Result};
use crate::fourientation::{EdgeState, Fourientation};
use crate::graph::Graph;
use crate::matroid::{Basis, RepresentedMatroid};

/// End of an edge: tag 0 is the tail, tag 1 the head.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge {
    pub edge: usize,
    pub end: u8,
}

impl HalfEdge {
    pub fn new(edge: usize, end: u8) -> Self {
        HalfEdge { edge, end }
    }

    pub fn opposite(self) -> Self {
        HalfEdge {
            edge: self.edge,
            end: 1 - self.end,
        }
    }
}

/// A graph with a cyclic order of half-edges around each vertex and a
/// root half-edge at the root vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonGraph {
    graph: Graph,
    rotations: Vec<Vec<HalfEdge>>,
    root_vertex: usize,
    root: HalfEdge,
    // successor[edge][end]
    successor: Vec<[HalfEdge; 2]>,
}

impl RibbonGraph {
    pub fn new(
        graph: Graph,
        rotations: Vec<Vec<HalfEdge>>,
        root_vertex: usize,
        root: HalfEdge,
    ) -> Result<Self> {
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        let nv = graph.vertex_count();
        if rotations.len() != nv {
            return Err(Error::InvalidRibbon(format!(
                "expected rotations for {nv} vertices, got {}",
                rotations.len()
            )));
        }
        let at = |h: HalfEdge| {
            let (t, hd) = graph.endpoints(h.edge);
            if h.end == 0 {
                t
            } else {
                hd
            }
        };
        let mut seen = vec![[false; 2]; graph.edge_count()];
        let placeholder = HalfEdge::new(0, 0);
        let mut successor = vec![[placeholder; 2]; graph.edge_count()];
        for (v, rot) in rotations.iter().enumerate() {
            for (i, &h) in rot.iter().enumerate() {
                if h.edge >= graph.edge_count() || h.end > 1 {
                    return Err(Error::InvalidRibbon(format!(
                        "half-edge ({}, {}) does not exist",
                        h.edge + 1,
                        h.end
                    )));
                }
                if at(h) != v {
                    return Err(Error::InvalidRibbon(format!(
                        "half-edge ({}, {}) is not at vertex {}",
                        h.edge + 1,
                        h.end,
                        v + 1
                    )));
                }
                if std::mem::replace(&mut seen[h.edge][h.end as usize], true) {
                    return Err(Error::InvalidRibbon(format!(
                        "half-edge ({}, {}) listed twice",
                        h.edge + 1,
                        h.end
                    )));
                }
                successor[h.edge][h.end as usize] = rot[(i + 1) % rot.len()];
            }
        }
        if let Some(e) = seen.iter().position(|s| !s[0] || !s[1]) {
            return Err(Error::InvalidRibbon(format!(
                "edge {} is missing a half-edge",
                e + 1
            )));
        }
        if root.edge >= graph.edge_count() || root.end > 1 || at(root) != root_vertex {
            return Err(Error::InvalidRibbon(
                "root half-edge is not incident to the root vertex".into(),
            ));
        }
        Ok(RibbonGraph {
            graph,
            rotations,
            root_vertex,
            root,
            successor,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotations(&self) -> &[Vec<HalfEdge>] {
        &self.rotations
    }

    pub fn root_vertex(&self) -> usize {
        self.root_vertex
    }

    pub fn root(&self) -> HalfEdge {
        self.root
    }

    fn next_at_vertex(&self, h: HalfEdge) -> HalfEdge {
        self.successor[h.edge][h.end as usize]
    }

    /// End tag at which each edge is first cut during the tour around `tree`
    /// (`None` for tree edges).
    pub fn first_cuts(&self, tree: &Basis) -> Vec<Option<u8>> {
        let mut cut = vec![None; self.graph.edge_count()];
        let mut h = self.root;
        // Each half-edge is visited once, so the walk has length 2|E|.
        for _ in 0..2 * self.graph.edge_count() {
            let next = if tree.contains(h.edge) {
                self.next_at_vertex(h.opposite())
            } else {
                cut[h.edge].get_or_insert(h.end);
                self.next_at_vertex(h)
            };
            h = next;
            if h == self.root {
                break;
            }
        }
        debug_assert_eq!(h, self.root);
        cut
    }
}

/// External atlas orienting each external edge toward the endpoint where
/// the Bernardi tour first cuts it.
pub fn bernardi_external_atlas(m: &RepresentedMatroid, rg: &RibbonGraph) -> Result<Atlas> {
    if m.graph() != Some(rg.graph()) {
        return Err(Error::InvalidRibbon(
            "ribbon graph does not match the matroid's graph".into(),
        ));
    }
    let mut entries = Vec::with_capacity(m.bases().len());
    for b in m.bases() {
        let cuts = rg.first_cuts(b);
        let mut f = Fourientation::filled(m.n(), EdgeState::Bi);
        for e in b.complement(m.n()) {
            let end = cuts[e].ok_or_else(|| {
                Error::InvalidRibbon(format!("tour never cuts edge {}", e + 1))
            })?;
            f.set(e, if end == 1 { EdgeState::Plus } else { EdgeState::Minus });
        }
        entries.push((b.clone(), f));
    }
    Atlas::new(m, Polarity::External, entries)
}

/// Internal atlas orienting each tree edge away from `q`.
pub fn away_from_root_internal_atlas(m: &RepresentedMatroid, q: usize) -> Result<Atlas> {
    let g = m.graph().ok_or(Error::NotGraphic)?;
    if q >= g.vertex_count() {
        return Err(Error::VertexOutOfRange {
            vertex: q + 1,
            count: g.vertex_count(),
        });
    }
    let mut entries = Vec::with_capacity(m.bases().len());
    for b in m.bases() {
        let mut adj = vec![Vec::new(); g.vertex_count()];
        for &e in b.edges() {
            let (t, h) = g.endpoints(e);
            adj[t].push((e, h));
            adj[h].push((e, t));
        }
        let mut f = Fourientation::filled(m.n(), EdgeState::Bi);
        let mut seen = vec![false; g.vertex_count()];
        seen[q] = true;
        let mut queue = VecDeque::from([q]);
        while let Some(v) = queue.pop_front() {
            for &(e, w) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    let (t, _) = g.endpoints(e);
                    f.set(e, if t == v { EdgeState::Plus } else { EdgeState::Minus });
                    queue.push_back(w);
                }
            }
        }
        entries.push((b.clone(), f));
    }
    Atlas::new(m, Polarity::Internal, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas;
    use EdgeState::*;

    fn h(edge: usize, end: u8) -> HalfEdge {
        HalfEdge::new(edge, end)
    }

    /// Two parallel edges from q and a loop at the other vertex.
    fn fig5() -> (RepresentedMatroid, RibbonGraph) {
        let g = Graph::new(2, vec![(0, 1), (0, 1), (1, 1)]).unwrap();
        let m = RepresentedMatroid::from_graph(&g).unwrap();
        let rg = RibbonGraph::new(
            g,
            vec![vec![h(0, 0), h(1, 0)], vec![h(0, 1), h(2, 0), h(1, 1), h(2, 1)]],
            0,
            h(0, 0),
        )
        .unwrap();
        (m, rg)
    }

    #[test]
    fn fig5_atlas_entries() {
        let (m, rg) = fig5();
        let a = bernardi_external_atlas(&m, &rg).unwrap();
        assert_eq!(a.get(&Basis::new(vec![0])).unwrap().states(), &[Bi, Plus, Minus]);
        assert_eq!(a.get(&Basis::new(vec![1])).unwrap().states(), &[Minus, Bi, Plus]);
        assert!(atlas::is_dissecting(&m, &a));
        assert!(!atlas::is_triangulating(&m, &a));
    }

    #[test]
    fn away_from_q() {
        let g = Graph::new(2, vec![(0, 1)]).unwrap();
        let m = RepresentedMatroid::from_graph(&g).unwrap();
        let a = away_from_root_internal_atlas(&m, 0).unwrap();
        assert_eq!(a.get(&Basis::new(vec![0])).unwrap().states(), &[Plus]);
        let a = away_from_root_internal_atlas(&m, 1).unwrap();
        assert_eq!(a.get(&Basis::new(vec![0])).unwrap().states(), &[Minus]);
    }

    #[test]
    fn ribbon_validation() {
        let g = Graph::new(2, vec![(0, 1)]).unwrap();
        let bad = RibbonGraph::new(g.clone(), vec![vec![h(0, 1)], vec![h(0, 0)]], 0, h(0, 1));
        assert!(matches!(bad, Err(Error::InvalidRibbon(_))));
        let bad_root = RibbonGraph::new(g, vec![vec![h(0, 0)], vec![h(0, 1)]], 0, h(0, 1));
        assert!(matches!(bad_root, Err(Error::InvalidRibbon(_))));
    }
}
