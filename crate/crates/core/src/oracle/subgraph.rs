//! Exact (not necessarily induced) subgraph search by backtracking.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::graph::{BitAdjacency, Graph, Vertex};

/// Limits for one search. `None` means unlimited.
#[derive(Clone, Copy, Debug, Default)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub deadline: Option<Instant>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget { max_nodes: Some(max_nodes), deadline: None }
    }

    pub fn until(deadline: Instant) -> Self {
        SearchBudget { max_nodes: None, deadline: Some(deadline) }
    }
}

/// Whether `map` sends `h` injectively into `g` along edges.
pub fn is_subgraph_map(g: &Graph, h: &Graph, map: &[Vertex]) -> bool {
    if map.len() != h.vertex_count() || map.iter().any(|&v| v >= g.vertex_count()) {
        return false;
    }
    let mut seen = map.to_vec();
    seen.sort_unstable();
    seen.windows(2).all(|w| w[0] != w[1]) && h.edges().all(|(a, b)| g.has_edge(map[a], map[b]))
}

/// Search order for `h`: a lowest-degree vertex first, then repeatedly the
/// vertex with the most already-ordered neighbours (ties: higher degree, then
/// lower id).
fn search_order(h: &Graph) -> Vec<Vertex> {
    let n = h.vertex_count();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = if order.is_empty() {
            (0..n).min_by_key(|&v| (h.degree(v), v)).unwrap()
        } else {
            (0..n).filter(|&v| !placed[v]).max_by_key(|&v| (links[v], h.degree(v), std::cmp::Reverse(v))).unwrap()
        };
        placed[next] = true;
        order.push(next);
        for &w in h.neighbors(next) {
            links[w] += 1;
        }
    }
    order
}

/// Looks for a copy of `h` in `g`. Returns `map` with `map[v]` the image of
/// `h`-vertex `v`, or `None` after an exhaustive search.
pub fn contains_subgraph(g: &Graph, h: &Graph, budget: &SearchBudget) -> Result<Option<Vec<Vertex>>> {
    let (ng, nh) = (g.vertex_count(), h.vertex_count());
    if nh == 0 {
        return Ok(Some(Vec::new()));
    }
    if nh > ng || h.edge_count() > g.edge_count() {
        return Ok(None);
    }
    let order = search_order(h);
    let mut pos = vec![0; nh];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let back: Vec<Vec<usize>> = order
        .iter()
        .enumerate()
        .map(|(i, &v)| h.neighbors(v).iter().map(|&w| pos[w]).filter(|&p| p < i).collect())
        .collect();
    let need: Vec<usize> = order.iter().map(|&v| h.degree(v)).collect();

    let mut s = Search {
        g,
        bits: g.bit_rows(),
        words: ng.div_ceil(64).max(1),
        back,
        need,
        image: vec![usize::MAX; nh],
        used: vec![0u64; ng.div_ceil(64).max(1)],
        nodes: 0,
        budget: *budget,
    };
    if !s.extend(0)? {
        return Ok(None);
    }
    let mut map = vec![0; nh];
    for (i, &v) in order.iter().enumerate() {
        map[v] = s.image[i];
    }
    assert!(is_subgraph_map(g, h, &map), "subgraph search produced an invalid witness");
    Ok(Some(map))
}

struct Search<'a> {
    g: &'a Graph,
    bits: BitAdjacency,
    words: usize,
    back: Vec<Vec<usize>>,
    need: Vec<usize>,
    image: Vec<Vertex>,
    used: Vec<u64>,
    nodes: u64,
    budget: SearchBudget,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.budget.max_nodes.is_some_and(|m| self.nodes > m) {
            return Err(Error::resource(format!("subgraph search exceeded {} nodes", self.nodes - 1)));
        }
        if self.nodes.is_multiple_of(1024) && self.budget.deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(Error::resource("subgraph search ran out of time"));
        }
        Ok(())
    }

    fn extend(&mut self, i: usize) -> Result<bool> {
        if i == self.image.len() {
            return Ok(true);
        }
        self.tick()?;
        let mut cand: Vec<u64> = match self.back[i].first() {
            Some(&p) => self.bits.row(self.image[p]).to_vec(),
            None => {
                let mut all = vec![u64::MAX; self.words];
                let n = self.g.vertex_count();
                if !n.is_multiple_of(64) {
                    all[self.words - 1] = (1u64 << (n % 64)) - 1;
                }
                all
            }
        };
        for &p in self.back[i].iter().skip(1) {
            for (c, r) in cand.iter_mut().zip(self.bits.row(self.image[p])) {
                *c &= r;
            }
        }
        for (c, u) in cand.iter_mut().zip(&self.used) {
            *c &= !u;
        }
        for (wi, word) in cand.into_iter().enumerate() {
            let mut word = word;
            while word != 0 {
                let v = wi * 64 + word.trailing_zeros() as usize;
                word &= word - 1;
                if self.g.degree(v) < self.need[i] {
                    continue;
                }
                self.image[i] = v;
                self.used[v / 64] |= 1 << (v % 64);
                let found = self.extend(i + 1)?;
                self.used[v / 64] &= !(1 << (v % 64));
                if found {
                    return Ok(true);
                }
            }
        }
        self.image[i] = usize::MAX;
        Ok(false)
    }
}
