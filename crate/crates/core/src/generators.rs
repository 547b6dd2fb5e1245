//! Graph families: paths, grids, products, tensor powers, polarity graphs,
//! blowups and seeded random graphs.
//!
//! Labelling conventions:
//! - Cartesian products are row-major: `(u, v)` gets id `u * n_H + v`.
//! - Grids `[t]^d` use the same convention, so the last coordinate varies fastest.
//! - Tensor tuples are ordered lexicographically, first coordinate most significant.
//! - Blowups label clone `c` of vertex `v` as `v * r + c`.

use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Largest vertex count any generator will materialize.
pub const DEFAULT_VERTEX_CAP: usize = 1 << 22;

pub fn make_path(t: usize) -> Result<Graph> {
    if t == 0 {
        return Err(Error::invalid("path needs at least one vertex"));
    }
    Graph::from_edges(t, (1..t).map(|i| (i - 1, i)))
}

pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid("cycle needs at least three vertices"));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete_graph(n: usize) -> Graph {
    Graph::from_edges_dedup(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// `K_{1,leaves}` with centre 0.
pub fn star_graph(leaves: usize) -> Graph {
    Graph::from_edges_dedup(leaves + 1, (1..=leaves).map(|v| (0, v)))
}

pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph> {
    let (ng, nh) = (g.vertex_count(), h.vertex_count());
    if ng == 0 || nh == 0 {
        return Err(Error::invalid("cartesian product of an empty graph"));
    }
    let n = ng.checked_mul(nh).ok_or_else(|| Error::resource("product vertex count overflows"))?;
    let id = |u: Vertex, v: Vertex| u * nh + v;
    let mut edges = Vec::with_capacity(ng * h.edge_count() + nh * g.edge_count());
    for u in 0..ng {
        for (a, b) in h.edges() {
            edges.push((id(u, a), id(u, b)));
        }
    }
    for (a, b) in g.edges() {
        for v in 0..nh {
            edges.push((id(a, v), id(b, v)));
        }
    }
    Ok(Graph::from_edges_dedup(n, edges))
}

pub fn make_grid(t: usize, d: usize) -> Result<Graph> {
    make_grid_with_cap(t, d, DEFAULT_VERTEX_CAP)
}

/// The `d`-dimensional grid `[t]^d`, i.e. the `d`-fold Cartesian power of `P_t`.
pub fn make_grid_with_cap(t: usize, d: usize, cap: usize) -> Result<Graph> {
    if t == 0 || d == 0 {
        return Err(Error::invalid("grid needs t >= 1 and d >= 1"));
    }
    match t.checked_pow(d as u32) {
        Some(n) if n <= cap => {}
        _ => return Err(Error::resource(format!("grid {t}^{d} exceeds the vertex cap {cap}"))),
    }
    let path = make_path(t)?;
    let mut g = path.clone();
    for _ in 1..d {
        g = cartesian_product(&g, &path)?;
    }
    Ok(g)
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|p| p * p <= q).all(|p| !q.is_multiple_of(p))
}

/// Points of `PG(2, q)` as normalized vectors (first nonzero coordinate 1),
/// in lexicographic order.
pub fn projective_points(q: u64) -> Vec<[u64; 3]> {
    let mut pts = vec![[0, 0, 1]];
    pts.extend((0..q).map(|b| [0, 1, b]));
    pts.extend((0..q).flat_map(|a| (0..q).map(move |b| [1, a, b])));
    pts
}

/// The orthogonal-polarity graph on the points of `PG(2, q)`.
///
/// Points `u ≠ v` are adjacent iff `u·v ≡ 0 (mod q)`. Absolute points
/// (`u·u ≡ 0`) lose their loop and end up with degree `q`; all other points
/// have degree `q + 1`. The result is C4-free.
pub fn polarity_graph(q: u64) -> Result<Graph> {
    if !is_prime(q) {
        return Err(Error::invalid(format!("polarity graph needs a prime q, got {q}")));
    }
    let pts = projective_points(q);
    let dot = |a: &[u64; 3], b: &[u64; 3]| (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]) % q;
    let mut edges = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if dot(&pts[i], &pts[j]) == 0 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(pts.len(), edges)
}

/// Replaces every vertex by `r` independent clones joined along original edges.
pub fn blowup(g: &Graph, r: usize) -> Result<Graph> {
    if r == 0 {
        return Err(Error::invalid("blowup factor must be at least 1"));
    }
    let n = g
        .vertex_count()
        .checked_mul(r)
        .filter(|&n| n <= DEFAULT_VERTEX_CAP)
        .ok_or_else(|| Error::resource("blowup exceeds the vertex cap"))?;
    let mut edges = Vec::with_capacity(g.edge_count() * r * r);
    for (u, v) in g.edges() {
        for a in 0..r {
            for b in 0..r {
                edges.push((u * r + a, v * r + b));
            }
        }
    }
    Ok(Graph::from_edges_dedup(n, edges))
}

/// `G(n, p)` from a ChaCha8 stream seeded with `seed`.
///
/// Pairs `u < v` are visited in lexicographic order; each consumes one
/// `u64` draw `x` and is kept iff `(x >> 11) * 2^-53 < p`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("probability must lie in [0, 1], got {p}")));
    }
    if n > DEFAULT_VERTEX_CAP {
        return Err(Error::resource("random graph exceeds the vertex cap"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let x = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            if x < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// A vertex of `G^k`: one base vertex per coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorVertex(pub Vec<Vertex>);

impl TensorVertex {
    pub fn new(coords: Vec<Vertex>) -> Self {
        TensorVertex(coords)
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Vertex] {
        &self.0
    }
}

impl From<Vertex> for TensorVertex {
    fn from(v: Vertex) -> Self {
        TensorVertex(vec![v])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorMode {
    Explicit,
    Implicit,
}

/// The `k`-th tensor power of a base graph.
///
/// Adjacency, degrees and codegrees are always answered by the coordinate
/// rules; explicit mode additionally materializes `G^k` as a [`Graph`] with
/// lexicographic tuple ids.
#[derive(Clone, Debug)]
pub struct TensorPowerView {
    base: Graph,
    k: usize,
    explicit: Option<Graph>,
}

pub fn tensor_power(g: &Graph, k: usize, mode: TensorMode) -> Result<TensorPowerView> {
    tensor_power_with_cap(g, k, mode, DEFAULT_VERTEX_CAP)
}

pub fn tensor_power_with_cap(g: &Graph, k: usize, mode: TensorMode, cap: usize) -> Result<TensorPowerView> {
    if k == 0 {
        return Err(Error::invalid("tensor power needs k >= 1"));
    }
    let n = g.vertex_count() as u128;
    let total = u32::try_from(k)
        .ok()
        .and_then(|k| n.checked_pow(k))
        .filter(|&v| v < (1u128 << 120))
        .ok_or_else(|| Error::resource(format!("n^k overflows for n = {n}, k = {k}")))?;
    let mut view = TensorPowerView { base: g.clone(), k, explicit: None };
    if mode == TensorMode::Explicit {
        if total > cap as u128 {
            return Err(Error::resource(format!("explicit G^{k} on {n}^{k} vertices exceeds cap {cap}")));
        }
        view.explicit = Some(view.materialize());
    }
    Ok(view)
}

impl TensorPowerView {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn power(&self) -> usize {
        self.k
    }

    pub fn mode(&self) -> TensorMode {
        if self.explicit.is_some() {
            TensorMode::Explicit
        } else {
            TensorMode::Implicit
        }
    }

    pub fn explicit_graph(&self) -> Option<&Graph> {
        self.explicit.as_ref()
    }

    pub fn vertex_count(&self) -> u128 {
        (self.base.vertex_count() as u128).pow(self.k as u32)
    }

    pub fn check(&self, v: &TensorVertex) -> Result<()> {
        if v.k() != self.k {
            return Err(Error::invalid(format!("tensor vertex has {} coordinates, expected {}", v.k(), self.k)));
        }
        let n = self.base.vertex_count();
        match v.0.iter().find(|&&c| c >= n) {
            Some(&c) => Err(Error::VertexOutOfRange { vertex: c, n }),
            None => Ok(()),
        }
    }

    /// Lexicographic id of a tuple.
    pub fn index_of(&self, v: &TensorVertex) -> usize {
        let n = self.base.vertex_count();
        v.0.iter().fold(0, |acc, &c| acc * n + c)
    }

    pub fn vertex_at(&self, mut idx: usize) -> TensorVertex {
        let n = self.base.vertex_count();
        let mut coords = vec![0; self.k];
        for slot in coords.iter_mut().rev() {
            *slot = idx % n;
            idx /= n;
        }
        TensorVertex(coords)
    }

    pub fn is_adjacent(&self, a: &TensorVertex, b: &TensorVertex) -> bool {
        a.0.iter().zip(&b.0).all(|(&u, &v)| self.base.has_edge(u, v))
    }

    pub fn degree(&self, v: &TensorVertex) -> u128 {
        v.0.iter().map(|&c| self.base.degree(c) as u128).product()
    }

    pub fn codegree(&self, a: &TensorVertex, b: &TensorVertex) -> u128 {
        a.0.iter()
            .zip(&b.0)
            .map(|(&u, &v)| {
                crate::graph::sorted_intersection_len(self.base.neighbors(u), self.base.neighbors(v)) as u128
            })
            .product()
    }

    pub fn max_degree(&self) -> u128 {
        (self.base.max_degree() as u128).pow(self.k as u32)
    }

    /// Neighbours of `v` in lexicographic order.
    pub fn neighbors(&self, v: &TensorVertex) -> Vec<TensorVertex> {
        let lists: Vec<&[Vertex]> = v.0.iter().map(|&c| self.base.neighbors(c)).collect();
        cartesian_lists(&lists).into_iter().map(TensorVertex).collect()
    }

    fn materialize(&self) -> Graph {
        let total = self.vertex_count() as usize;
        let mut edges = Vec::new();
        for i in 0..total {
            let v = self.vertex_at(i);
            for w in self.neighbors(&v) {
                let j = self.index_of(&w);
                if j > i {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges_dedup(total, edges)
    }
}

/// All tuples picking one entry from each list, in lexicographic order.
pub(crate) fn cartesian_lists<T: Copy>(lists: &[&[T]]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::with_capacity(lists.len())];
    for list in lists {
        let mut next = Vec::with_capacity(out.len() * list.len());
        for prefix in &out {
            for &x in *list {
                let mut p = prefix.clone();
                p.push(x);
                next.push(p);
            }
        }
        out = next;
    }
    out
}
