//! Immutable simple graphs on at most 64 vertices with bit-set adjacency.

use std::fmt;

use thiserror::Error;

/// Vertex ids are dense integers in `[0, n)`.
pub type Vertex = usize;

/// Index into [`Graph::edges`].
pub type EdgeId = usize;

/// Largest supported vertex count (one `u64` adjacency word per vertex).
pub const MAX_VERTICES: usize = 64;

const NO_EDGE: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has {0} vertices; at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("instance too large: {n} vertices exceeds the enumeration limit {limit}")]
    InstanceTooLarge { n: usize, limit: usize },
}

/// A simple undirected graph.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted lexicographically, so
/// edge ids are canonical for a given edge set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    edges: Vec<(Vertex, Vertex)>,
    edge_index: Vec<u32>,
}

impl Graph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj = vec![0u64; n];
        let mut list = Vec::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if adj[u] >> v & 1 == 1 {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
            list.push((u, v));
        }
        list.sort_unstable();
        let mut edge_index = vec![NO_EDGE; n * n];
        for (id, &(u, v)) in list.iter().enumerate() {
            edge_index[u * n + v] = id as u32;
            edge_index[v * n + u] = id as u32;
        }
        Ok(Graph {
            n,
            adj,
            edges: list,
            edge_index,
        })
    }

    /// Builds a graph from adjacency words. Bits outside `[0, n)` and loops
    /// are rejected; asymmetric input is symmetrised.
    pub fn from_adjacency(adj: &[u64]) -> Result<Self, GraphError> {
        let n = adj.len();
        let mut edges = Vec::new();
        for (u, &row) in adj.iter().enumerate() {
            let mut bits = row;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
                if v == u {
                    return Err(GraphError::Loop(u));
                }
                let mirrored = adj[v] >> u & 1 == 1;
                if u < v || !mirrored {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n, edges)
    }

    pub fn empty(n: usize) -> Result<Self, GraphError> {
        Graph::new(n, std::iter::empty())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> (Vertex, Vertex) {
        self.edges[id]
    }

    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        if u >= self.n || v >= self.n {
            return None;
        }
        match self.edge_index[u * self.n + v] {
            NO_EDGE => None,
            id => Some(id as EdgeId),
        }
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Neighbor bit-set of `v`.
    pub fn neighbor_mask(&self, v: Vertex) -> u64 {
        self.adj[v]
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn neighbors(&self, v: Vertex) -> Bits {
        Bits(self.adj[v])
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Bit-set of the vertices of degree exactly `d` (the set `V_d`).
    pub fn degree_class(&self, d: usize) -> u64 {
        (0..self.n)
            .filter(|&v| self.degree(v) == d)
            .fold(0, |acc, v| acc | 1 << v)
    }

    /// Neighbors of `v` that have degree exactly `d` (the set `N_d(v)`).
    pub fn neighbors_of_degree(&self, v: Vertex, d: usize) -> u64 {
        self.adj[v] & self.degree_class(d)
    }

    /// Mask with one bit per vertex.
    pub fn vertex_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Number of edges with both ends in `set`.
    pub fn edges_within(&self, set: u64) -> usize {
        Bits(set)
            .map(|v| (self.adj[v] & set).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Induced subgraph on `vertices` (relabelled in the given order).
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]));
        Graph::new(vertices.len(), edges).expect("induced subgraph of a simple graph is simple")
    }

    /// The subgraph induced by the vertices of maximum degree, together with
    /// the map from its vertex ids back to ids of `self`.
    pub fn core(&self) -> (Graph, Vec<Vertex>) {
        let delta = self.max_degree();
        let ids: Vec<Vertex> = (0..self.n).filter(|&v| self.degree(v) == delta).collect();
        (self.induced(&ids), ids)
    }

    /// Maximum degree of the core, `Δ(G_Δ)`.
    pub fn core_max_degree(&self) -> usize {
        let class = self.degree_class(self.max_degree());
        Bits(class)
            .map(|v| (self.adj[v] & class).count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn without_edge(&self, id: EdgeId) -> Graph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != id)
            .map(|(_, &e)| e);
        Graph::new(self.n, edges).expect("edge deletion keeps the graph simple")
    }

    pub fn with_edge(&self, u: Vertex, v: Vertex) -> Result<Graph, GraphError> {
        Graph::new(self.n, self.edges.iter().copied().chain([(u, v)]))
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn permuted(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let edges = self.edges.iter().map(|&(u, v)| (perm[u], perm[v]));
        Graph::new(self.n, edges).expect("permutation keeps the graph simple")
    }

    /// Reachability from vertex 0. Graphs on at most one vertex are connected.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let all = self.vertex_mask();
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0u64;
            for v in Bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == all
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// Iterator over the set bits of a `u64`, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

/// Small named graphs used throughout tests and fixtures.
pub mod named {
    use super::{Graph, Vertex};

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).unwrap()
    }

    /// `K_5` with the edge `{3, 4}` deleted.
    pub fn k5_minus() -> Graph {
        let edges = complete(5)
            .edges()
            .iter()
            .copied()
            .filter(|&e| e != (3, 4))
            .collect::<Vec<_>>();
        Graph::new(5, edges).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let edges = (0..n).map(|i| (i, (i + 1) % n));
        Graph::new(n, edges).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        let edges = (1..n).map(|i| (i - 1, i));
        Graph::new(n, edges).unwrap()
    }

    pub fn star(leaves: usize) -> Graph {
        Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Graph::new(a + b, edges).unwrap()
    }

    /// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i+5`.
    pub fn petersen() -> Graph {
        let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::new(10, edges).unwrap()
    }

    /// The Petersen graph with vertex 9 deleted.
    pub fn petersen_minus_vertex() -> Graph {
        let p = petersen();
        let keep: Vec<Vertex> = (0..9).collect();
        p.induced(&keep)
    }

    pub fn disjoint_triangles() -> Graph {
        Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn rejects_loops_and_duplicates() {
        assert_eq!(Graph::new(3, [(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::new(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
        assert_eq!(Graph::empty(65), Err(GraphError::TooManyVertices(65)));
    }

    #[test]
    fn max_degree_examples() {
        assert_eq!(k5_minus().max_degree(), 4);
        assert_eq!(Graph::empty(1).unwrap().max_degree(), 0);
        assert_eq!(cycle(5).max_degree(), 2);
    }

    #[test]
    fn core_of_k5_minus_is_triangle() {
        let (core, ids) = k5_minus().core();
        assert_eq!(ids, vec![0, 1, 2]);
        assert_eq!(core.m(), 3);
        assert!((0..3).all(|v| core.degree(v) == 2));
    }

    #[test]
    fn core_of_regular_graph_is_itself() {
        let g = petersen();
        let (core, ids) = g.core();
        assert_eq!(core, g);
        assert_eq!(ids, (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn core_of_petersen_minus_is_six_cycle() {
        let g = petersen_minus_vertex();
        let (core, ids) = g.core();
        // Neighbors 4, 6, 7 of the deleted vertex drop to degree 2.
        assert_eq!(ids, vec![0, 1, 2, 3, 5, 8]);
        assert_eq!(core.m(), 6);
        assert!(core.is_connected());
        assert!((0..6).all(|v| core.degree(v) == 2));
    }

    #[test]
    fn connectivity() {
        assert!(cycle(5).is_connected());
        assert!(!disjoint_triangles().is_connected());
        assert!(k5_minus().is_connected());
        assert!(Graph::empty(1).unwrap().is_connected());
        assert!(Graph::empty(0).unwrap().is_connected());
        assert!(!Graph::empty(2).unwrap().is_connected());
    }

    #[test]
    fn handshake_and_edge_ids() {
        for g in [k5_minus(), petersen(), petersen_minus_vertex(), cycle(7)] {
            assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.m());
            for (id, &(u, v)) in g.edges().iter().enumerate() {
                assert_eq!(g.edge_id(u, v), Some(id));
                assert_eq!(g.edge_id(v, u), Some(id));
            }
        }
    }

    #[test]
    fn core_id_map_round_trip() {
        let g = petersen_minus_vertex();
        let (core, ids) = g.core();
        for &(a, b) in core.edges() {
            assert!(g.adjacent(ids[a], ids[b]));
        }
        // The core here is 2-regular, so its own core is itself.
        let (core2, ids2) = core.core();
        assert_eq!(core2, core);
        let composed: Vec<_> = ids2.iter().map(|&i| ids[i]).collect();
        assert_eq!(composed, ids);
    }
}
