//! Canonical codes for graphs on at most 11 vertices.
//!
//! Vertices are first split into cells by colour refinement (an
//! isomorphism-invariant ordered partition); the code is the largest adjacency
//! bit string over all labellings that respect the cell order. Placement is
//! depth-first with prefix pruning.

use crate::graph::{Graph, Vertex};

pub(crate) const MAX_VERTICES: usize = 11;

/// Ordered cells of the stable colouring.
fn refine(g: &Graph) -> Vec<Vec<Vertex>> {
    let n = g.vertex_count();
    let mut colour: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut classes = usize::MAX;
    loop {
        let mut sig: Vec<(usize, Vec<usize>, Vertex)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| colour[w]).collect();
                nb.sort_unstable();
                (colour[v], nb, v)
            })
            .collect();
        sig.sort();
        let mut next = vec![0; n];
        let mut rank = 0;
        for i in 0..n {
            if i > 0 && (sig[i].0 != sig[i - 1].0 || sig[i].1 != sig[i - 1].1) {
                rank += 1;
            }
            next[sig[i].2] = rank;
        }
        let count = if n == 0 { 0 } else { rank + 1 };
        colour = next;
        if count == classes {
            break;
        }
        classes = count;
    }
    let mut cells = vec![Vec::new(); classes];
    for v in 0..n {
        cells[colour[v]].push(v);
    }
    cells
}

pub(crate) fn canonical_code(g: &Graph) -> u64 {
    let n = g.vertex_count();
    assert!(n <= MAX_VERTICES, "canonical codes support at most {MAX_VERTICES} vertices");
    let cells = refine(g);
    let cell_of_pos: Vec<usize> =
        cells.iter().enumerate().flat_map(|(c, cell)| std::iter::repeat_n(c, cell.len())).collect();
    let total_bits = n * n.saturating_sub(1) / 2;
    let mut state = Place {
        g,
        cells: &cells,
        cell_of_pos,
        placed: Vec::with_capacity(n),
        used: vec![false; n],
        best: None,
        total_bits,
    };
    state.go(0, 0);
    state.best.unwrap_or(0)
}

struct Place<'a> {
    g: &'a Graph,
    cells: &'a [Vec<Vertex>],
    cell_of_pos: Vec<usize>,
    placed: Vec<Vertex>,
    used: Vec<bool>,
    best: Option<u64>,
    total_bits: usize,
}

impl Place<'_> {
    fn go(&mut self, pos: usize, code: u64) {
        let n = self.g.vertex_count();
        let bits_so_far = pos * pos.saturating_sub(1) / 2;
        if let Some(best) = self.best {
            let prefix = best >> (self.total_bits - bits_so_far);
            if code < prefix {
                return;
            }
        }
        if pos == n {
            if self.best.is_none_or(|b| code > b) {
                self.best = Some(code);
            }
            return;
        }
        let cells = self.cells;
        for &v in &cells[self.cell_of_pos[pos]] {
            if self.used[v] {
                continue;
            }
            let mut c = code;
            for &u in &self.placed {
                c = c << 1 | u64::from(self.g.has_edge(u, v));
            }
            self.used[v] = true;
            self.placed.push(v);
            self.go(pos + 1, c);
            self.placed.pop();
            self.used[v] = false;
        }
    }
}

pub(crate) fn decode(code: u64, n: usize) -> Graph {
    let total_bits = n * n.saturating_sub(1) / 2;
    let mut edges = Vec::new();
    let mut bit = total_bits;
    for j in 1..n {
        for i in 0..j {
            bit -= 1;
            if code >> bit & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).expect("decoded code is a simple graph")
}
