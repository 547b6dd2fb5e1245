//! The blowup lower bound: a `(t−1)`-blowup of a C4-free polarity graph
//! contains no `t × t` grid.

use crate::error::Result;
use crate::generators::{blowup, cycle_graph, make_grid, polarity_graph};
use crate::io::Report;

use super::subgraph::{contains_subgraph, SearchBudget};

#[derive(Clone, Debug, PartialEq)]
pub struct LowerBoundReport {
    pub q: u64,
    pub t: usize,
    pub base_vertices: usize,
    pub base_edges: usize,
    pub base_c4_free: bool,
    pub blowup_n: usize,
    pub blowup_edges: usize,
    /// `None` when the grid search ran out of budget.
    pub ft_free: Option<bool>,
    /// `e / (t^{1/2} n^{3/2})` of the blowup.
    pub c_achieved: f64,
}

impl LowerBoundReport {
    pub fn to_report(&self) -> Report {
        let mut r = Report::new();
        r.push("q", self.q)
            .push("t", self.t)
            .push("base_n", self.base_vertices)
            .push("base_edges", self.base_edges)
            .push("base_c4_free", self.base_c4_free)
            .push("blowup_n", self.blowup_n)
            .push("blowup_edges", self.blowup_edges)
            .push("ft_free", self.ft_free.map_or("unchecked".to_string(), |b| b.to_string()))
            .push("c_achieved", format!("{:.6}", self.c_achieved));
        r
    }
}

/// Builds the polarity graph for prime `q`, blows it up by `t − 1` and checks
/// both freeness claims with the subgraph oracle.
pub fn verify_lower_bound_construction(q: u64, t: usize, budget: &SearchBudget) -> Result<LowerBoundReport> {
    let base = polarity_graph(q)?;
    let c4 = cycle_graph(4)?;
    let base_c4_free = contains_subgraph(&base, &c4, &SearchBudget::unlimited())?.is_none();
    let blown = blowup(&base, t.saturating_sub(1).max(1))?;
    let grid = make_grid(t, 2)?;
    let ft_free = match contains_subgraph(&blown, &grid, budget) {
        Ok(found) => Some(found.is_none()),
        Err(crate::Error::Resource(_)) => None,
        Err(e) => return Err(e),
    };
    let n = blown.vertex_count() as f64;
    let c_achieved = blown.edge_count() as f64 / ((t as f64).sqrt() * n.powf(1.5));
    Ok(LowerBoundReport {
        q,
        t,
        base_vertices: base.vertex_count(),
        base_edges: base.edge_count(),
        base_c4_free,
        blowup_n: blown.vertex_count(),
        blowup_edges: blown.edge_count(),
        ft_free,
        c_achieved,
    })
}
