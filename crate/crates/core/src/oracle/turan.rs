//! Exact small Turán numbers by vertex augmentation over isomorphism classes.
//!
//! Every `H`-free graph on `v` vertices arises from an `H`-free graph on
//! `v − 1` vertices by adding one vertex, so the layers of `H`-free classes
//! can be grown one vertex at a time, keeping one canonical code per class.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::canonical::{canonical_code, decode, MAX_VERTICES};
use super::subgraph::{contains_subgraph, SearchBudget};
use crate::error::{Error, Result};
use crate::generators::complete_graph;
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuranResult {
    pub n: usize,
    /// `ex(n, H)` when `exact`, otherwise a lower bound.
    pub value: usize,
    pub exact: bool,
    /// An `H`-free graph with `value` edges.
    pub witness: Graph,
    /// Number of `H`-free isomorphism classes on `v` vertices, `v = 0, 1, …`,
    /// for every completed layer.
    pub layer_sizes: Vec<usize>,
}

fn h_free(g: &Graph, h: &Graph) -> bool {
    contains_subgraph(g, h, &SearchBudget::unlimited()).expect("unlimited search").is_none()
}

/// `ex(n, H)` with a witness. A `budget` that runs out yields a lower bound
/// with `exact = false`.
pub fn turan_number(n: usize, h: &Graph, budget: Option<Duration>) -> Result<TuranResult> {
    if h.vertex_count() > n {
        let witness = complete_graph(n);
        return Ok(TuranResult { n, value: witness.edge_count(), exact: true, witness, layer_sizes: Vec::new() });
    }
    if h.edge_count() == 0 {
        return Err(Error::invalid("every graph on enough vertices contains an edgeless H"));
    }
    if n > MAX_VERTICES {
        return Err(Error::resource(format!("exhaustive search supports n <= {MAX_VERTICES}")));
    }
    let deadline = budget.map(|d| Instant::now() + d);
    let out_of_time = || deadline.is_some_and(|d| Instant::now() >= d);

    let mut layer: Vec<u64> = vec![0];
    let mut layer_sizes = vec![1];
    for v in 1..=n {
        let prev = v - 1;
        let expanded: Vec<Option<Vec<u64>>> = layer
            .par_iter()
            .map(|&code| {
                if out_of_time() {
                    return None;
                }
                let base = decode(code, prev);
                let base_edges: Vec<(usize, usize)> = base.edges().collect();
                let mut out = Vec::new();
                for mask in 0u32..(1 << prev) {
                    let mut edges = base_edges.clone();
                    edges.extend((0..prev).filter(|&u| mask >> u & 1 == 1).map(|u| (u, prev)));
                    let g = Graph::from_edges(v, edges).expect("augmentation is simple");
                    if h_free(&g, h) {
                        out.push(canonical_code(&g));
                    }
                }
                out.sort_unstable();
                out.dedup();
                Some(out)
            })
            .collect();
        if expanded.iter().any(Option::is_none) {
            return Ok(partial(n, prev, &layer, layer_sizes));
        }
        let mut next: Vec<u64> = expanded.into_iter().flatten().flatten().collect();
        next.sort_unstable();
        next.dedup();
        layer = next;
        layer_sizes.push(layer.len());
    }
    let value = layer.iter().map(|c| c.count_ones() as usize).max().unwrap_or(0);
    let best = *layer.iter().filter(|c| c.count_ones() as usize == value).min().unwrap();
    let witness = decode(best, n);
    assert!(h_free(&witness, h), "extremal witness must be H-free");
    Ok(TuranResult { n, value, exact: true, witness, layer_sizes })
}

/// Best graph of the last complete layer, padded with isolated vertices.
fn partial(n: usize, v: usize, layer: &[u64], layer_sizes: Vec<usize>) -> TuranResult {
    let value = layer.iter().map(|c| c.count_ones() as usize).max().unwrap_or(0);
    let best = layer.iter().copied().filter(|c| c.count_ones() as usize == value).min().unwrap_or(0);
    let small = decode(best, v);
    let witness = Graph::from_edges(n, small.edges()).expect("padding keeps the graph simple");
    TuranResult { n, value, exact: false, witness, layer_sizes }
}

/// Enumerate-and-filter over all `2^{n(n−1)/2}` labelled graphs.
pub fn turan_number_naive(n: usize, h: &Graph) -> Result<usize> {
    if n > 7 {
        return Err(Error::resource("naive Turán search is limited to n <= 7"));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let best = (0u64..1 << pairs.len())
        .into_par_iter()
        .filter(|m| {
            let g = Graph::from_edges(n, pairs.iter().enumerate().filter(|(b, _)| m >> b & 1 == 1).map(|(_, &e)| e))
                .unwrap();
            h_free(&g, h)
        })
        .map(|m| m.count_ones() as usize)
        .max();
    best.ok_or_else(|| Error::invalid("no H-free graph exists"))
}
