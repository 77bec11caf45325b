use crate::error::{Error, Result};

/// A finite multigraph with a reference orientation on each edge.
///
/// Vertices are `0..vertex_count`; edge `i` points from `edges[i].0` (tail)
/// to `edges[i].1` (head). Loops and parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(t, h) in &edges {
            for v in [t, h] {
                if v >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: v + 1,
                        count: vertex_count,
                    });
                }
            }
        }
        Ok(Graph {
            vertex_count,
            edges,
        })
    }

    /// Builds a graph from 1-based `(tail, head)` pairs.
    pub fn from_one_based(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut zero = Vec::with_capacity(edges.len());
        for &(t, h) in edges {
            if t == 0 || h == 0 {
                return Err(Error::VertexOutOfRange {
                    vertex: 0,
                    count: vertex_count,
                });
            }
            zero.push((t - 1, h - 1));
        }
        Graph::new(vertex_count, zero)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, edge: usize) -> (usize, usize) {
        self.edges[edge]
    }

    pub fn is_loop(&self, edge: usize) -> bool {
        let (t, h) = self.edges[edge];
        t == h
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return false;
        }
        let mut dsu = Dsu::new(self.vertex_count);
        for &(t, h) in &self.edges {
            dsu.union(t, h);
        }
        let root = dsu.find(0);
        (1..self.vertex_count).all(|v| dsu.find(v) == root)
    }

    /// True when the given edges form a spanning tree.
    pub fn is_spanning_tree(&self, edges: &[usize]) -> bool {
        if edges.len() + 1 != self.vertex_count {
            return false;
        }
        let mut dsu = Dsu::new(self.vertex_count);
        edges.iter().all(|&e| {
            let (t, h) = self.edges[e];
            dsu.union(t, h)
        })
    }

    /// Signed edge-vertex incidence: +1 at the head, -1 at the tail.
    pub fn incidence_matrix(&self) -> Vec<Vec<i64>> {
        let mut rows = vec![vec![0i64; self.edges.len()]; self.vertex_count];
        for (i, &(t, h)) in self.edges.iter().enumerate() {
            if t != h {
                rows[h][i] += 1;
                rows[t][i] -= 1;
            }
        }
        rows
    }
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
