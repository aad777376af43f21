use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..n`.
///
/// File formats and CLI output use 1-based labels; everything in the library
/// is 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    /// 1-based endpoints
    edges: Vec<(usize, usize)>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;
    fn try_from(r: GraphRepr) -> Result<Self> {
        let mut edges = Vec::with_capacity(r.edges.len());
        for (u, v) in r.edges {
            if u == 0 || v == 0 {
                return Err(Error::Graph(format!("vertex labels are 1-based, got {{{u}, {v}}}")));
            }
            edges.push((u - 1, v - 1));
        }
        Graph::new(r.n, edges)
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr { n: g.n, edges: g.edges.iter().map(|&(u, v)| (u + 1, v + 1)).collect() }
    }
}

impl Graph {
    /// Builds a graph from 0-based edges, rejecting loops, duplicates (in
    /// either orientation) and endpoints outside `0..n`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Graph("vertex count must be positive".into()));
        }
        let mut adj = vec![false; n * n];
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Graph(format!("edge {{{}, {}}} has an endpoint outside 1..={n}", u + 1, v + 1)));
            }
            if u == v {
                return Err(Error::Graph(format!("loop at vertex {}", u + 1)));
            }
            if adj[u * n + v] {
                return Err(Error::Graph(format!("duplicate edge {{{}, {}}}", u + 1, v + 1)));
            }
            adj[u * n + v] = true;
            adj[v * n + u] = true;
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        Ok(Graph { n, edges: list, adj })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Graph::new(n, [])
    }

    pub fn complete(n: usize) -> Result<Self> {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    /// Decodes a graph from a bitmask over the pairs `(i, j)`, `i < j`, in
    /// lexicographic order. Used for exhaustive sweeps.
    pub fn from_pair_mask(n: usize, mask: u64) -> Result<Self> {
        let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, pairs.enumerate().filter(|(bit, _)| mask >> bit & 1 == 1).map(|(_, p)| p))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as sorted `(u, v)` with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    /// Number of edges with both endpoints in `subset`.
    pub fn edges_within(&self, subset: &[usize]) -> usize {
        let mut count = 0;
        for (a, &u) in subset.iter().enumerate() {
            for &v in &subset[a + 1..] {
                if self.has_edge(u, v) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Density of a vertex subset: spanned edges over `C(|S|, 2)`.
    pub fn density(&self, subset: &[usize]) -> f64 {
        let s = subset.len();
        if s < 2 {
            return 0.0;
        }
        self.edges_within(subset) as f64 / (s * (s - 1) / 2) as f64
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::Input("permutation length differs from n".into()));
        }
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        Graph::new(self.n, self.edges.iter().copied().chain([(u, v)]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_edges() {
        assert!(matches!(Graph::new(3, [(0, 0)]), Err(Error::Graph(_))));
        assert!(matches!(Graph::new(3, [(0, 3)]), Err(Error::Graph(_))));
        assert!(matches!(Graph::new(3, [(0, 1), (1, 0)]), Err(Error::Graph(_))));
        assert!(Graph::new(0, []).is_err());
    }

    #[test]
    fn density_of_subsets() {
        let g = Graph::new(4, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(g.density(&[0, 1, 2]), 1.0);
        assert_eq!(g.density(&[0, 1, 3]), 1.0 / 3.0);
        assert_eq!(g.density(&[3]), 0.0);
    }

    #[test]
    fn pair_mask_decoding() {
        let g = Graph::from_pair_mask(4, 0b100001).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (2, 3)]);
        assert_eq!(Graph::from_pair_mask(4, 0b111111).unwrap(), Graph::complete(4).unwrap());
    }

    #[test]
    fn serde_uses_one_based_labels() {
        let g = Graph::new(3, [(0, 2)]).unwrap();
        let v = serde_json_like(&g);
        assert_eq!(v, (3, vec![(1, 3)]));
    }

    fn serde_json_like(g: &Graph) -> (usize, Vec<(usize, usize)>) {
        let r = GraphRepr::from(g.clone());
        (r.n, r.edges)
    }
}
