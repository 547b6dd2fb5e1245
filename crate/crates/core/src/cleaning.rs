//! Host preparation: degree-class regularization, the two-type deletion
//! procedure, and the combined host certification.
//!
//! The deletion procedure works with the input density `α = e / n^{3/2}` and
//! three integer cut-offs derived from it exactly (see [`CleaningThresholds`]).
//! While some vertex has degree in `[1, ¼αn^{1/2}]` all its edges are removed
//! (type 1). Otherwise, if for some edge `uv` fewer than `⅛αn^{1/2}` neighbours
//! `w` of `u` satisfy `d(v, w) ≥ α²/32`, the edge is removed (type 2). `w = v`
//! is admissible, with `d(v, v) = deg(v)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::alpha::{ratio, Alpha};
use crate::error::{Error, Result};
use crate::graph::{BitAdjacency, Graph, Subgraph, Vertex};

/// Max-degree constant of the host conditions.
pub const HOST_K: u64 = 12000;

/// Almost-regularity constant `20 · 2^{1/ε² + 1}` for regularization with
/// exponent `ε`. For `ε = 1/2` this is 640.
pub fn regularization_constant(eps: f64) -> f64 {
    20.0 * 2f64.powf(1.0 / (eps * eps) + 1.0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regularized {
    pub subgraph: Subgraph,
    /// `Δ(H) / δ(H)` of the output.
    pub ratio: BigRational,
    /// The chosen degree class is `[2^class, 2^{class+1})`.
    pub class: u32,
}

/// Keeps the edges incident to the most edge-rich dyadic degree class, then
/// drops isolated vertices.
///
/// Every edge touches at most two of the `⌈log₂ n⌉` classes, so the chosen
/// class keeps at least `e / ⌈log₂ n⌉` edges.
pub fn regularize(g: &Graph) -> Result<Regularized> {
    if g.edge_count() == 0 {
        return Err(Error::invalid("cannot regularize an edgeless graph"));
    }
    let class_of = |v: Vertex| usize::BITS - 1 - g.degree(v).leading_zeros();
    let classes = class_of((0..g.vertex_count()).max_by_key(|&v| g.degree(v)).unwrap()) + 1;
    let mut counts = vec![0usize; classes as usize];
    for (u, v) in g.edges() {
        let (a, b) = (class_of(u), class_of(v));
        counts[a as usize] += 1;
        if b != a {
            counts[b as usize] += 1;
        }
    }
    let best = (0..classes).max_by_key(|&c| (counts[c as usize], std::cmp::Reverse(c))).unwrap();
    let kept: Vec<(Vertex, Vertex)> = g.edges().filter(|&(u, v)| class_of(u) == best || class_of(v) == best).collect();
    let mut touched = vec![false; g.vertex_count()];
    for &(u, v) in &kept {
        touched[u] = true;
        touched[v] = true;
    }
    let original: Vec<Vertex> = (0..g.vertex_count()).filter(|&v| touched[v]).collect();
    let mut new_id = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in original.iter().enumerate() {
        new_id[v] = i;
    }
    let graph = Graph::from_edges(original.len(), kept.iter().map(|&(u, v)| (new_id[u], new_id[v])))?;
    let ratio = BigRational::new(BigInt::from(graph.max_degree()), BigInt::from(graph.min_degree()));
    Ok(Regularized { subgraph: Subgraph { graph, original }, ratio, class: best })
}

/// Integer cut-offs used by [`clean_subgraph`], all derived exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CleaningThresholds {
    /// Type 1 applies to vertices of degree `1..=type1_max_degree` (`⌊¼αn^{1/2}⌋`).
    pub type1_max_degree: u64,
    /// An edge survives when `u` has at least this many good neighbours (`⌈⅛αn^{1/2}⌉`).
    pub required_neighbours: u64,
    /// A neighbour `w` is good when `d(v, w)` reaches this value (`⌈α²/32⌉`).
    pub min_codegree: u64,
}

impl CleaningThresholds {
    pub fn new(alpha: &Alpha, n: usize) -> Self {
        let n = n as u64;
        let type1 = alpha.scale(&ratio(1, 4)).times_sqrt(n).floor_u64();
        let required = alpha.scale(&ratio(1, 8)).times_sqrt(n).ceil_u64();
        let codeg = alpha.square() / BigRational::from_integer(32.into());
        let min_codegree = Alpha::from_rational(&codeg).expect("nonnegative").ceil_u64();
        CleaningThresholds { type1_max_degree: type1, required_neighbours: required, min_codegree }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Deletion {
    /// All edges at `vertex` were removed; `edges_removed ≥ 1`.
    Type1 { vertex: Vertex, edges_removed: usize },
    /// The edge `uv` was removed because `u` lacked good neighbours towards `v`.
    Type2 { u: Vertex, v: Vertex },
}

/// Ordered log of a cleaning run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CleaningReport {
    pub deletions: Vec<Deletion>,
    pub input_alpha: Alpha,
    pub input_edges: usize,
    pub output_edges: usize,
    pub thresholds: CleaningThresholds,
}

impl CleaningReport {
    pub fn type1_deletions(&self) -> impl Iterator<Item = (Vertex, usize)> + '_ {
        self.deletions.iter().filter_map(|d| match *d {
            Deletion::Type1 { vertex, edges_removed } => Some((vertex, edges_removed)),
            _ => None,
        })
    }

    pub fn type2_deletions(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.deletions.iter().filter_map(|d| match *d {
            Deletion::Type2 { u, v } => Some((u, v)),
            _ => None,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.deletions.is_empty()
    }

    /// Applies the log to `g`, checking each recorded step is applicable.
    pub fn replay(&self, g: &Graph) -> Result<Graph> {
        let mut w = Working::new(g);
        for d in &self.deletions {
            match *d {
                Deletion::Type1 { vertex, edges_removed } => {
                    if vertex >= w.n || w.deg[vertex] != edges_removed || edges_removed == 0 {
                        return Err(Error::invalid(format!("type-1 deletion at {vertex} does not replay")));
                    }
                    w.remove_vertex_edges(vertex);
                }
                Deletion::Type2 { u, v } => {
                    if u >= w.n || v >= w.n || !w.bits.has(u, v) {
                        return Err(Error::invalid(format!("type-2 deletion of {u} {v} does not replay")));
                    }
                    w.remove_edge(u, v);
                }
            }
        }
        Ok(w.into_graph())
    }

    /// One line per deletion: `T1 v` or `T2 u v`.
    pub fn to_text(&self) -> String {
        self.deletions
            .iter()
            .map(|d| match d {
                Deletion::Type1 { vertex, .. } => format!("T1 {vertex}\n"),
                Deletion::Type2 { u, v } => format!("T2 {u} {v}\n"),
            })
            .collect()
    }
}

/// How to choose among several applicable deletions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeletionOrder {
    /// Lowest vertex id for type 1, lexicographically smallest ordered edge for type 2.
    Canonical,
    /// Uniformly random among the applicable candidates of the current type.
    Shuffled(u64),
}

struct Working {
    n: usize,
    bits: BitAdjacency,
    deg: Vec<usize>,
}

impl Working {
    fn new(g: &Graph) -> Self {
        Working { n: g.vertex_count(), bits: g.bit_rows(), deg: (0..g.vertex_count()).map(|v| g.degree(v)).collect() }
    }

    fn neighbours(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.bits.row(u).iter().enumerate().flat_map(|(wi, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(wi * 64 + b)
            })
        })
    }

    fn remove_edge(&mut self, u: Vertex, v: Vertex) {
        self.bits.set(u, v, false);
        self.deg[u] -= 1;
        self.deg[v] -= 1;
    }

    fn remove_vertex_edges(&mut self, u: Vertex) -> usize {
        let nbrs: Vec<Vertex> = self.neighbours(u).collect();
        for &w in &nbrs {
            self.remove_edge(u, w);
        }
        nbrs.len()
    }

    /// Whether `u` has fewer than `required` neighbours `w` with `d(v, w) ≥ min_codegree`.
    fn type2_fails(&self, u: Vertex, v: Vertex, th: &CleaningThresholds) -> bool {
        let required = th.required_neighbours as usize;
        if self.deg[u] < required {
            return true;
        }
        let mut good = 0;
        let mut left = self.deg[u];
        for w in self.neighbours(u) {
            if self.bits.codegree(v, w) as u64 >= th.min_codegree {
                good += 1;
                if good >= required {
                    return false;
                }
            }
            left -= 1;
            if good + left < required {
                return true;
            }
        }
        good < required
    }

    fn into_graph(self) -> Graph {
        let edges: Vec<(Vertex, Vertex)> =
            (0..self.n).flat_map(|u| self.neighbours(u).filter(move |&v| v > u).map(move |v| (u, v))).collect();
        Graph::from_edges_dedup(self.n, edges)
    }
}

pub fn clean_subgraph(g: &Graph) -> Result<(Graph, CleaningReport)> {
    clean_subgraph_with_order(g, DeletionOrder::Canonical)
}

pub fn clean_subgraph_with_order(g: &Graph, order: DeletionOrder) -> Result<(Graph, CleaningReport)> {
    if g.vertex_count() == 0 {
        return Err(Error::invalid("cannot clean a graph with no vertices"));
    }
    let alpha = g.edge_density_alpha()?;
    let th = CleaningThresholds::new(&alpha, g.vertex_count());
    let mut rng = match order {
        DeletionOrder::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        DeletionOrder::Canonical => None,
    };
    let mut w = Working::new(g);
    let mut log = Vec::new();
    loop {
        let is_type1 = |v: Vertex| w.deg[v] >= 1 && w.deg[v] as u64 <= th.type1_max_degree;
        let pick1 = match rng.as_mut() {
            None => (0..w.n).find(|&v| is_type1(v)),
            Some(rng) => (0..w.n).filter(|&v| is_type1(v)).collect::<Vec<_>>().choose(rng).copied(),
        };
        if let Some(v) = pick1 {
            let removed = w.remove_vertex_edges(v);
            log.push(Deletion::Type1 { vertex: v, edges_removed: removed });
            continue;
        }
        let pick2 = {
            let mut ordered = (0..w.n).flat_map(|u| w.neighbours(u).map(move |v| (u, v)));
            match rng.as_mut() {
                None => ordered.find(|&(u, v)| w.type2_fails(u, v, &th)),
                Some(rng) => {
                    ordered.filter(|&(u, v)| w.type2_fails(u, v, &th)).collect::<Vec<_>>().choose(rng).copied()
                }
            }
        };
        match pick2 {
            Some((u, v)) => {
                w.remove_edge(u, v);
                log.push(Deletion::Type2 { u, v });
            }
            None => break,
        }
    }
    let out = w.into_graph();
    let report = CleaningReport {
        deletions: log,
        input_alpha: alpha,
        input_edges: g.edge_count(),
        output_edges: out.edge_count(),
        thresholds: th,
    };
    Ok((out, report))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HostCondition {
    /// `e ≥ α n^{3/2}`
    EdgeCount,
    /// `Δ ≤ K α n^{1/2}`
    MaxDegree,
    /// every ordered edge `(u, v)` has `≥ α n^{1/2}` neighbours `w` of `u` with `d(v, w) ≥ α`
    Codegree,
}

impl fmt::Display for HostCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HostCondition::EdgeCount => "a",
            HostCondition::MaxDegree => "b",
            HostCondition::Codegree => "c",
        })
    }
}

/// Outcome of checking the three host conditions for a given `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HostCheck {
    pub alpha: Alpha,
    pub edge_count_ok: bool,
    pub max_degree_ok: bool,
    /// First vertex (lowest id) whose degree is too large.
    pub max_degree_witness: Option<Vertex>,
    pub codegree_ok: bool,
    /// Lexicographically first failing ordered edge.
    pub codegree_witness: Option<(Vertex, Vertex)>,
}

impl HostCheck {
    pub fn all_hold(&self) -> bool {
        self.edge_count_ok && self.max_degree_ok && self.codegree_ok
    }

    pub fn first_violation(&self) -> Option<HostCondition> {
        if !self.edge_count_ok {
            Some(HostCondition::EdgeCount)
        } else if !self.max_degree_ok {
            Some(HostCondition::MaxDegree)
        } else if !self.codegree_ok {
            Some(HostCondition::Codegree)
        } else {
            None
        }
    }
}

pub fn check_host_conditions(g: &Graph, alpha: &Alpha) -> Result<HostCheck> {
    if alpha.is_zero() {
        return Err(Error::invalid("host conditions need alpha > 0"));
    }
    let n = g.vertex_count();
    let m = n as u64;
    // (a): e² ≥ α² n³
    let e = BigInt::from(g.edge_count());
    let edge_count_ok =
        BigRational::from_integer(&e * &e) >= alpha.square() * BigRational::from_integer(BigInt::from(m).pow(3));
    // (b)
    let max_deg = alpha.scale(&BigRational::from_integer(HOST_K.into())).times_sqrt(m).floor_u64();
    let max_degree_witness = (0..n).find(|&v| g.degree(v) as u64 > max_deg);
    // (c)
    let required = alpha.times_sqrt(m).ceil_u64();
    let min_codeg = alpha.ceil_u64();
    let bits = g.bit_rows();
    let mut codegree_witness: Option<(Vertex, Vertex)> = None;
    let mut row = vec![0usize; n];
    for v in 0..n {
        if g.degree(v) == 0 {
            continue;
        }
        for (w, slot) in row.iter_mut().enumerate() {
            *slot = bits.codegree(v, w);
        }
        for &u in g.neighbors(v) {
            if codegree_witness.is_some_and(|best| best <= (u, v)) {
                continue;
            }
            let good = g.neighbors(u).iter().filter(|&&w| row[w] as u64 >= min_codeg).count() as u64;
            if good < required {
                codegree_witness = Some((u, v));
            }
        }
    }
    Ok(HostCheck {
        alpha: alpha.clone(),
        edge_count_ok,
        max_degree_ok: max_degree_witness.is_none(),
        max_degree_witness,
        codegree_ok: codegree_witness.is_none(),
        codegree_witness,
    })
}

/// Which candidate density was certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaSource {
    /// `α′ = e(H) / m^{3/2}` of the cleaned host.
    Density,
    /// `α′ = α₀ / 8` with `α₀` the density of the regularized graph.
    EighthOfRegularized,
}

/// How the achieved constants compare with the textbook chain
/// `α₀ ≥ ⅖α`, `Δ/δ ≤ 640`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantChain {
    pub input_alpha: Alpha,
    pub regularized_alpha: Alpha,
    pub regularity: BigRational,
    pub alpha0_at_least_two_fifths: bool,
    pub regularity_within_640: bool,
}

impl ConstantChain {
    pub fn textbook_chain_holds(&self) -> bool {
        self.alpha0_at_least_two_fifths && self.regularity_within_640
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreparedHost {
    pub graph: Graph,
    /// Original id (in the input graph) of each host vertex.
    pub original: Vec<Vertex>,
    pub alpha_prime: Alpha,
    pub alpha_source: AlphaSource,
    pub k_constant: u64,
    pub m: usize,
    pub chain: ConstantChain,
    pub cleaning: CleaningReport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HostFailure {
    Regularize(Error),
    Conditions(Box<HostCheck>),
}

impl fmt::Display for HostFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HostFailure::Regularize(e) => write!(f, "regularization failed: {e}"),
            HostFailure::Conditions(check) => {
                let cond = check.first_violation().expect("failure has a violated condition");
                write!(f, "host condition ({cond}) fails for alpha' = {}", check.alpha)?;
                match cond {
                    HostCondition::MaxDegree => write!(f, " at vertex {}", check.max_degree_witness.unwrap()),
                    HostCondition::Codegree => {
                        let (u, v) = check.codegree_witness.unwrap();
                        write!(f, " at edge ({u}, {v})")
                    }
                    HostCondition::EdgeCount => Ok(()),
                }
            }
        }
    }
}

impl std::error::Error for HostFailure {}

/// Regularizes, cleans and certifies a host graph.
///
/// Two values of `α′` are tried, largest first: the density of the cleaned
/// graph and one eighth of the regularized density. The first one for which
/// all three host conditions hold is returned.
pub fn prepare_host(g: &Graph) -> Result<PreparedHost, HostFailure> {
    let input_alpha = g.edge_density_alpha().map_err(HostFailure::Regularize)?;
    let reg = regularize(g).map_err(HostFailure::Regularize)?;
    let h0 = &reg.subgraph.graph;
    let m = h0.vertex_count();
    let alpha0 = h0.edge_density_alpha().map_err(HostFailure::Regularize)?;
    let (host, cleaning) = clean_subgraph(h0).map_err(HostFailure::Regularize)?;

    let chain = ConstantChain {
        alpha0_at_least_two_fifths: alpha0 >= input_alpha.scale(&ratio(2, 5)),
        regularity_within_640: reg.ratio <= ratio(640, 1),
        input_alpha,
        regularized_alpha: alpha0.clone(),
        regularity: reg.ratio.clone(),
    };

    let density = host.edge_density_alpha().map_err(HostFailure::Regularize)?;
    let eighth = alpha0.scale(&ratio(1, 8));
    let mut last = None;
    for (candidate, source) in [(density, AlphaSource::Density), (eighth, AlphaSource::EighthOfRegularized)] {
        if candidate.is_zero() {
            continue;
        }
        let check = check_host_conditions(&host, &candidate).map_err(HostFailure::Regularize)?;
        if check.all_hold() {
            return Ok(PreparedHost {
                graph: host,
                original: reg.subgraph.original,
                alpha_prime: candidate,
                alpha_source: source,
                k_constant: HOST_K,
                m,
                chain,
                cleaning,
            });
        }
        last = Some(check);
    }
    match last {
        Some(check) => Err(HostFailure::Conditions(Box::new(check))),
        None => Err(HostFailure::Regularize(Error::invalid("cleaned host is edgeless"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_graph, cycle_graph, make_grid, make_path, random_graph, star_graph};

    #[test]
    fn constant_640() {
        assert_eq!(regularization_constant(0.5), 640.0);
    }

    #[test]
    fn regularize_examples() {
        let c4 = cycle_graph(4).unwrap();
        let r = regularize(&c4).unwrap();
        assert_eq!(r.subgraph.graph, c4);
        assert_eq!(r.ratio, ratio(1, 1));

        let s = star_graph(8);
        let r = regularize(&s).unwrap();
        assert!(r.subgraph.graph.edge_count() >= 1);
        assert_eq!(r.subgraph.graph, s);
        assert_eq!(r.ratio, ratio(8, 1));

        let k5 = complete_graph(5);
        let r = regularize(&k5).unwrap();
        assert_eq!((r.subgraph.graph.clone(), r.ratio), (k5, ratio(1, 1)));

        assert!(regularize(&Graph::empty(3)).is_err());
    }

    #[test]
    fn regularize_keeps_a_log_fraction() {
        for seed in 0..20 {
            let g = random_graph(40, 0.15, seed).unwrap();
            if g.edge_count() == 0 {
                continue;
            }
            let r = regularize(&g).unwrap();
            let logn = (g.vertex_count() as f64).log2().ceil() as usize;
            assert!(2 * logn * r.subgraph.graph.edge_count() >= g.edge_count());
            assert!(r.subgraph.graph.min_degree() >= 1);
        }
    }

    #[test]
    fn thresholds_for_c4() {
        let a = Alpha::from_ratio(1, 2).unwrap();
        let th = CleaningThresholds::new(&a, 4);
        // ¼·½·2 = ¼, ⅛·½·2 = ⅛, (¼)/32
        assert_eq!(th, CleaningThresholds { type1_max_degree: 0, required_neighbours: 1, min_codegree: 1 });
    }

    #[test]
    fn clean_examples() {
        let c4 = cycle_graph(4).unwrap();
        let (h, rep) = clean_subgraph(&c4).unwrap();
        assert_eq!(h, c4);
        assert!(rep.is_empty());

        let e = Graph::empty(5);
        let (h, rep) = clean_subgraph(&e).unwrap();
        assert_eq!(h, e);
        assert!(rep.is_empty());

        let s = star_graph(5);
        let (h, rep) = clean_subgraph(&s).unwrap();
        assert_eq!(h, s);
        assert!(rep.is_empty());
    }

    #[test]
    fn clean_removes_sparse_appendage() {
        // dense block K12 on 0..12 plus a pendant path 12-13-14
        let mut edges: Vec<_> = complete_graph(12).edges().collect();
        edges.extend([(0, 12), (12, 13), (13, 14)]);
        let g = Graph::from_edges(15, edges).unwrap();
        let (h, rep) = clean_subgraph(&g).unwrap();
        assert_eq!(h.edge_count(), 66);
        assert!(rep.type1_deletions().count() >= 1);
        assert_eq!(rep.replay(&g).unwrap(), h);
        assert!(rep.to_text().starts_with("T1 "));
    }

    #[test]
    fn replay_rejects_foreign_log() {
        let g = complete_graph(4);
        let rep = CleaningReport {
            deletions: vec![Deletion::Type2 { u: 0, v: 0 }],
            input_alpha: Alpha::zero(),
            input_edges: 6,
            output_edges: 5,
            thresholds: CleaningThresholds::new(&Alpha::zero(), 4),
        };
        assert!(rep.replay(&g).is_err());
    }

    #[test]
    fn host_check_examples() {
        let c4 = cycle_graph(4).unwrap();
        assert!(check_host_conditions(&c4, &Alpha::from_ratio(1, 2).unwrap()).unwrap().all_hold());
        let too_big = check_host_conditions(&c4, &Alpha::from_ratio(3, 5).unwrap()).unwrap();
        assert_eq!(too_big.first_violation(), Some(HostCondition::EdgeCount));
        assert!(check_host_conditions(&c4, &Alpha::zero()).is_err());
    }

    #[test]
    fn host_check_on_k260() {
        let g = complete_graph(260);
        let a = g.edge_density_alpha().unwrap();
        assert!((a.to_f64() - 8.0313).abs() < 1e-3);
        assert!(check_host_conditions(&g, &a).unwrap().all_hold());
    }

    #[test]
    fn tree_fails_codegree_condition_at_alpha_above_one() {
        let p = make_path(10).unwrap();
        let check = check_host_conditions(&p, &Alpha::from_ratio(3, 2).unwrap()).unwrap();
        assert!(!check.codegree_ok);
        assert_eq!(check.codegree_witness, Some((0, 1)));
    }

    #[test]
    fn prepare_complete_graph() {
        let k8 = complete_graph(8);
        let host = prepare_host(&k8).unwrap();
        assert_eq!(host.graph, k8);
        assert_eq!(host.alpha_prime, k8.edge_density_alpha().unwrap());
        assert_eq!(host.alpha_source, AlphaSource::Density);
        assert!(host.chain.textbook_chain_holds());
    }

    #[test]
    fn prepare_grid_and_tree() {
        let f3 = make_grid(3, 2).unwrap();
        let host = prepare_host(&f3).unwrap();
        assert_eq!(host.graph, f3);
        // trees pass at their own tiny density: every threshold is below 1
        let tree = make_path(12).unwrap();
        let host = prepare_host(&tree).unwrap();
        assert!(host.alpha_prime.to_f64() < 1.0);
        assert!(matches!(prepare_host(&Graph::empty(4)), Err(HostFailure::Regularize(_))));
    }
}
