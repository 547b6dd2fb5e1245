//! Immutable simple undirected graphs over dense vertex ids `0..n`.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::alpha::Alpha;
use crate::error::{Error, Result};

pub type Vertex = usize;

/// A simple undirected graph. Neighbour lists are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

/// Minimum, average and maximum degree. The average is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeStats {
    pub min_deg: usize,
    pub avg_deg: BigRational,
    pub max_deg: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], edge_count: 0 }
    }

    /// Builds a graph, rejecting self-loops, duplicate edges and out-of-range ids.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
            edge_count += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!("duplicate edge {{{}, {}}}", u.min(w[0]), u.max(w[0]))));
            }
        }
        Ok(Graph { adj, edge_count })
    }

    /// Like [`Graph::from_edges`] but silently merges duplicates.
    pub(crate) fn from_edges_dedup<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            debug_assert!(u != v && u < n && v < n);
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut twice = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        Graph { adj, edge_count: twice / 2 }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.adj.len() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.adj.len() })
        }
    }

    /// Number of common neighbours; `codegree(u, u)` is `deg(u)`.
    pub fn codegree(&self, u: Vertex, v: Vertex) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(sorted_intersection_len(&self.adj[u], &self.adj[v]))
    }

    pub fn degree_stats(&self) -> Result<DegreeStats> {
        let n = self.vertex_count();
        if n == 0 {
            return Err(Error::invalid("degree statistics of an empty vertex set"));
        }
        Ok(DegreeStats {
            min_deg: self.min_degree(),
            avg_deg: BigRational::new(BigInt::from(2 * self.edge_count), BigInt::from(n)),
            max_deg: self.max_degree(),
        })
    }

    /// `e(G) / n^{3/2}`, carried exactly (see [`Alpha`]).
    pub fn edge_density_alpha(&self) -> Result<Alpha> {
        Alpha::edge_density(self.edge_count as u64, self.vertex_count() as u64)
    }

    /// Subgraph induced on `keep`, relabelled `0..keep.len()` in the given order.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> Subgraph {
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let edges = keep.iter().enumerate().flat_map(|(i, &v)| {
            let new_id = &new_id;
            self.adj[v]
                .iter()
                .filter_map(move |&w| (new_id[w] != usize::MAX && new_id[w] > i).then_some((i, new_id[w])))
        });
        let graph = Graph::from_edges_dedup(keep.len(), edges);
        Subgraph { graph, original: keep.to_vec() }
    }

    /// Repeatedly deletes vertices whose current degree is below `threshold`.
    ///
    /// The threshold is fixed for the whole run. The survivors are returned as
    /// an induced subgraph in ascending original-id order.
    pub fn peel_min_degree(&self, threshold: &BigRational) -> Subgraph {
        let n = self.vertex_count();
        // deg < threshold  <=>  deg < ceil(threshold) for integer degrees
        let cutoff = threshold.ceil().to_integer();
        let below = |d: usize| BigInt::from(d) < cutoff;
        let mut deg: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut removed = vec![false; n];
        let mut queue: VecDeque<Vertex> = (0..n).filter(|&v| below(deg[v])).collect();
        for &v in &queue {
            removed[v] = true;
        }
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !removed[w] {
                    deg[w] -= 1;
                    if below(deg[w]) {
                        removed[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        let keep: Vec<Vertex> = (0..n).filter(|&v| !removed[v]).collect();
        self.induced_subgraph(&keep)
    }

    pub(crate) fn bit_rows(&self) -> BitAdjacency {
        BitAdjacency::new(self)
    }
}

/// A subgraph together with the original id of each of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    pub original: Vec<Vertex>,
}

impl Subgraph {
    pub fn is_empty(&self) -> bool {
        self.graph.vertex_count() == 0
    }
}

pub(crate) fn sorted_intersection_len(a: &[Vertex], b: &[Vertex]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// Dense bitset rows; O(1) adjacency and word-parallel codegrees.
#[derive(Clone, Debug)]
pub(crate) struct BitAdjacency {
    words: usize,
    bits: Vec<u64>,
}

impl BitAdjacency {
    pub(crate) fn new(g: &Graph) -> Self {
        let mut b = BitAdjacency::with_size(g.vertex_count());
        for (u, v) in g.edges() {
            b.set(u, v, true);
        }
        b
    }

    pub(crate) fn with_size(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitAdjacency { words, bits: vec![0; words * n] }
    }

    #[inline]
    pub(crate) fn row(&self, u: Vertex) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    #[inline]
    pub(crate) fn has(&self, u: Vertex, v: Vertex) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub(crate) fn set(&mut self, u: Vertex, v: Vertex, on: bool) {
        for (a, b) in [(u, v), (v, u)] {
            let w = &mut self.bits[a * self.words + b / 64];
            if on {
                *w |= 1 << (b % 64);
            } else {
                *w &= !(1 << (b % 64));
            }
        }
    }

    /// Common neighbours of `u` and `v`; for `u == v` this is the degree.
    #[inline]
    pub(crate) fn codegree(&self, u: Vertex, v: Vertex) -> usize {
        self.row(u).iter().zip(self.row(v)).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }
}
