//! Embedding `T □ P_t` through the tensor-power auxiliary graph.
//!
//! Pipeline: [`prepare_host`] certifies the host, [`harvest_good_ladders`]
//! fixes the caps `s_i` and the ladder family, the auxiliary graph joins the
//! two sides of every ladder, peeling keeps a core of minimum degree at least
//! half the average degree, and the tree is embedded greedily into the core
//! while keeping per-coordinate collisions between images within a budget.
//! A coordinate in which all `rt` base vertices are distinct then spells out a
//! copy of `T □ P_t` in the host.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::alpha::Alpha;
use crate::cleaning::{prepare_host, HostFailure, HOST_K};
use crate::error::{Error, Result};
use crate::generators::{tensor_power, TensorMode, TensorPowerView, TensorVertex};
use crate::graph::{Graph, Vertex};
use crate::ladders::{harvest_good_ladders, Codegrees, HarvestOptions, HarvestResult};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5e_ed0f_2024;

/// Default cap on partial ladders carried between harvest steps.
pub const DEFAULT_WORKING_CAP: usize = 250_000;

/// Reference values of the existence argument: `log₂ α` for
/// `α = (16K)^{r²t³}` and the least `k` with `2^k > k · 4t²r · log₂ n`.
#[derive(Clone, Debug, PartialEq)]
pub struct TheoremParameters {
    pub r: usize,
    pub t: usize,
    pub n: u64,
    pub alpha_log2: f64,
    pub k_min: u32,
}

pub fn theorem_parameters(r: usize, t: usize, n: u64) -> Result<TheoremParameters> {
    if r < 2 || t < 2 || n < 2 {
        return Err(Error::invalid("theorem parameters need r >= 2, t >= 2, n >= 2"));
    }
    let alpha_log2 = (r * r * t * t * t) as f64 * (16.0 * HOST_K as f64).log2();
    let rhs = |k: u32| k as f64 * 4.0 * (t * t * r) as f64 * (n as f64).log2();
    let k_min = (1u32..).find(|&k| k >= 1024 || 2f64.powi(k as i32) > rhs(k)).unwrap();
    Ok(TheoremParameters { r, t, n, alpha_log2, k_min })
}

/// A tree with a 1-degenerate vertex order: every vertex after the first has
/// exactly one earlier neighbour, `parent[p]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeOrder {
    pub order: Vec<Vertex>,
    /// `parent[p]` is the position in `order` of the earlier neighbour of `order[p]`.
    pub parent: Vec<Option<usize>>,
}

/// Checks that `tree` is a tree on at least two vertices and orders it by
/// repeatedly removing the lowest-id leaf, then reversing.
pub fn validate_tree(tree: &Graph) -> Result<TreeOrder> {
    let r = tree.vertex_count();
    if r < 2 {
        return Err(Error::invalid("the tree needs at least two vertices"));
    }
    if tree.edge_count() != r - 1 {
        return Err(Error::invalid(format!("a tree on {r} vertices has {} edges, got {}", r - 1, tree.edge_count())));
    }
    let mut deg: Vec<usize> = (0..r).map(|v| tree.degree(v)).collect();
    let mut removed = vec![false; r];
    let mut order = Vec::with_capacity(r);
    for _ in 0..r - 1 {
        let leaf = (0..r)
            .find(|&v| !removed[v] && deg[v] == 1)
            .ok_or_else(|| Error::invalid("the tree graph is not connected"))?;
        removed[leaf] = true;
        order.push(leaf);
        for &w in tree.neighbors(leaf) {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    order.push((0..r).find(|&v| !removed[v]).unwrap());
    order.reverse();
    let mut pos = vec![0; r];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    let parent = order
        .iter()
        .enumerate()
        .map(|(p, &v)| {
            let earlier: Vec<usize> = tree.neighbors(v).iter().map(|&w| pos[w]).filter(|&q| q < p).collect();
            debug_assert!(p == 0 || earlier.len() == 1);
            earlier.first().copied()
        })
        .collect();
    Ok(TreeOrder { order, parent })
}

/// Vertices are `t`-paths of `G^k` (per-coordinate distinct), stored flat as
/// `t · k` base coordinates and sorted lexicographically; edges join the two
/// sides of a ladder.
#[derive(Clone, Debug)]
pub struct AuxiliaryGraph {
    pub t: usize,
    pub k: usize,
    pub vertices: Vec<Vec<Vertex>>,
    pub graph: Graph,
    /// Ladders (or ordered pairs, when sampled) that produced an edge.
    pub ladders_used: u128,
    /// Built from a vertex sample rather than a materialized harvest.
    pub sampled: bool,
}

impl AuxiliaryGraph {
    pub fn vertex(&self, id: usize) -> Vec<TensorVertex> {
        self.vertices[id].chunks(self.k).map(|c| TensorVertex(c.to_vec())).collect()
    }

    fn entry(&self, id: usize, i: usize, j: usize) -> Vertex {
        self.vertices[id][i * self.k + j]
    }
}

fn from_sides(
    t: usize,
    k: usize,
    sides: Vec<Vec<Vertex>>,
    pairs: Vec<(usize, usize)>,
    used: u128,
    sampled: bool,
) -> AuxiliaryGraph {
    let graph = Graph::from_edges_dedup(sides.len(), pairs.into_iter().filter(|(a, b)| a != b));
    AuxiliaryGraph { t, k, vertices: sides, graph, ladders_used: used, sampled }
}

/// Joins the `x`-side and `y`-side of every materialized harvested ladder.
pub fn build_auxiliary_graph(view: &TensorPowerView, harvest: &HarvestResult) -> Result<AuxiliaryGraph> {
    let ladders =
        harvest.ladders.as_ref().ok_or_else(|| Error::invalid("auxiliary graph needs a materialized harvest"))?;
    if ladders.is_empty() {
        return Err(Error::invalid("auxiliary graph of an empty harvest"));
    }
    let (t, k) = (harvest.spec.t, view.power());
    let side = |l: &crate::ladders::Ladder, off: usize| -> Vec<Vertex> {
        (0..t).flat_map(|i| l.entry(2 * i + off).to_vec()).collect()
    };
    let mut sides: Vec<Vec<Vertex>> = ladders.iter().flat_map(|l| [side(l, 0), side(l, 1)]).collect();
    sides.par_sort_unstable();
    sides.dedup();
    let id = |s: &Vec<Vertex>| sides.binary_search(s).unwrap();
    let pairs: Vec<(usize, usize)> = ladders.iter().map(|l| (id(&side(l, 0)), id(&side(l, 1)))).collect();
    Ok(from_sides(t, k, sides.clone(), pairs, ladders.len() as u128, false))
}

/// Fast membership test for the harvested family: a good ladder whose tensor
/// codegrees sit in the harvested buckets `(s_i/2, s_i]`.
struct FamilyCheck<'a> {
    g: &'a Graph,
    cd: Codegrees,
    t: usize,
    k: usize,
    min_codeg: u32,
    s: Vec<u128>,
}

impl FamilyCheck<'_> {
    /// Whether `(a₁, b₁, a₂, b₂, …)` is in the family; `a` and `b` are
    /// per-coordinate distinct paths.
    fn interleaved(&self, a: &[Vertex], b: &[Vertex]) -> bool {
        let (t, k) = (self.t, self.k);
        for j in 0..k {
            for i in 0..t {
                let ai = a[i * k + j];
                if !self.cd.adjacent(ai, b[i * k + j]) {
                    return false;
                }
                if (0..t).any(|l| b[l * k + j] == ai) {
                    return false;
                }
            }
        }
        for i in 0..t - 1 {
            let mut d = 1u128;
            for j in 0..k {
                let c = self.cd.get(a[(i + 1) * k + j], b[i * k + j]);
                if c < self.min_codeg {
                    return false;
                }
                d *= c as u128;
            }
            if d > self.s[i] || 2 * d <= self.s[i] {
                return false;
            }
        }
        true
    }

    fn is_side(&self, a: &[Vertex]) -> bool {
        let (t, k) = (self.t, self.k);
        (0..k).all(|j| {
            (0..t).all(|i| (0..i).all(|l| a[l * k + j] != a[i * k + j]))
                && (1..t).all(|i| self.g.has_edge(a[(i - 1) * k + j], a[i * k + j]))
        })
    }
}

/// Auxiliary graph induced on a seeded sample of `t`-paths of `G^k`, with
/// edges given by membership of either interleaving in the harvested family.
///
/// Used when the harvested family is too large to materialize.
pub fn build_sampled_auxiliary_graph(
    view: &TensorPowerView,
    harvest: &HarvestResult,
    sample_size: usize,
    seed: u64,
) -> Result<AuxiliaryGraph> {
    let g = view.base();
    let (t, k) = (harvest.spec.t, view.power());
    let n = g.vertex_count();
    if n == 0 || g.edge_count() == 0 {
        return Err(Error::invalid("auxiliary graph of an edgeless host"));
    }
    let check = FamilyCheck {
        g,
        cd: Codegrees::new(g),
        t,
        k,
        min_codeg: harvest.spec.alpha.ceil_u64().min(u32::MAX as u64) as u32,
        s: harvest.s_values(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sides = Vec::with_capacity(sample_size);
    let attempts = sample_size.saturating_mul(50).max(1000);
    for _ in 0..attempts {
        if sides.len() == sample_size {
            break;
        }
        // random walk without repeated entries in any coordinate
        let mut path: Vec<Vertex> = (0..k).map(|_| rng.gen_range(0..n)).collect();
        let mut ok = true;
        for i in 1..t {
            for j in 0..k {
                let prev = path[(i - 1) * k + j];
                let nb = g.neighbors(prev);
                if nb.is_empty() {
                    ok = false;
                    break;
                }
                path.push(nb[rng.gen_range(0..nb.len())]);
            }
            if !ok {
                break;
            }
        }
        if ok && check.is_side(&path) {
            sides.push(path);
        }
    }
    sides.sort_unstable();
    sides.dedup();
    if sides.is_empty() {
        return Err(Error::invalid("no t-paths found to sample"));
    }
    let m = sides.len();
    let pairs: Vec<(usize, usize)> = (0..m)
        .into_par_iter()
        .flat_map_iter(|a| {
            let sides = &sides;
            let check = &check;
            (a + 1..m).filter_map(move |b| {
                (check.interleaved(&sides[a], &sides[b]) || check.interleaved(&sides[b], &sides[a])).then_some((a, b))
            })
        })
        .collect();
    let used = pairs.len() as u128;
    Ok(from_sides(t, k, sides, pairs, used, true))
}

/// Caller-chosen parameters; the existence argument's own `α` and `k` are far
/// too large to run.
#[derive(Clone, Debug)]
pub struct WorkingParams {
    pub k: usize,
    pub alpha: Alpha,
    /// Maximum number of coordinates in which two images may agree; defaults
    /// to `⌊k / (rt)²⌋`.
    pub collision_budget: Option<usize>,
    pub seed: u64,
    /// Materialize the harvest when it has at most this many ladders;
    /// otherwise sample the auxiliary graph.
    pub materialize_limit: u128,
    /// Number of sampled `t`-paths for the sampled auxiliary graph.
    pub aux_sample: usize,
    /// Passed to the harvest, see [`HarvestOptions::working_cap`]. A sampled
    /// harvest always leads to the sampled auxiliary graph.
    pub working_cap: Option<usize>,
    /// How many start vertices the greedy step may try.
    pub start_attempts: usize,
}

impl WorkingParams {
    pub fn new(k: usize, alpha: Alpha) -> Self {
        WorkingParams {
            k,
            alpha,
            collision_budget: None,
            seed: DEFAULT_SEED,
            materialize_limit: 1_000_000,
            aux_sample: 2500,
            working_cap: Some(DEFAULT_WORKING_CAP),
            start_attempts: 32,
        }
    }
}

pub fn default_collision_budget(k: usize, r: usize, t: usize) -> usize {
    k / ((r * t) * (r * t))
}

/// `assignment[p][i]` is the host vertex playing `(w_p, i)`, with `p` a tree
/// vertex id and `i` a path position (both 0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub t: usize,
    /// Coordinate of `G^k` (0-based) the copy was read from.
    pub coordinate: usize,
    pub assignment: Vec<Vec<Vertex>>,
}

impl Embedding {
    /// Lines `p i v`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (p, row) in self.assignment.iter().enumerate() {
            for (i, v) in row.iter().enumerate() {
                s.push_str(&format!("{p} {i} {v}\n"));
            }
        }
        s
    }
}

/// Checks an embedding of `T □ P_t` directly against `g`.
pub fn verify_embedding(g: &Graph, tree: &Graph, t: usize, emb: &Embedding) -> bool {
    let r = tree.vertex_count();
    if emb.t != t || emb.assignment.len() != r || emb.assignment.iter().any(|row| row.len() != t) {
        return false;
    }
    let n = g.vertex_count();
    let mut all: Vec<Vertex> = emb.assignment.iter().flatten().copied().collect();
    if all.iter().any(|&v| v >= n) {
        return false;
    }
    all.sort_unstable();
    if all.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    let rows = &emb.assignment;
    rows.iter().all(|row| row.windows(2).all(|w| g.has_edge(w[0], w[1])))
        && tree.edges().all(|(p, z)| (0..t).all(|i| g.has_edge(rows[p][i], rows[z][i])))
}

#[derive(Clone, Debug, PartialEq)]
pub struct EmbedDiagnostics {
    pub host_vertices: usize,
    pub host_edges: usize,
    pub host_alpha: Alpha,
    pub s_values: Vec<u128>,
    pub harvest_count: u128,
    pub harvest_sampled: bool,
    pub aux_sampled: bool,
    pub aux_vertices: usize,
    pub aux_edges: usize,
    /// `|E(𝒢)| / |V(𝒢)|`, half the average degree.
    pub peel_threshold: BigRational,
    pub core_vertices: usize,
    pub core_min_degree: usize,
    /// `δ(𝓗) ≥ ½ d̄(𝒢)` on the materialized auxiliary graph.
    pub min_degree_audit: bool,
    /// `log₂(n^k Δ^{k(t−1)})`, the bound on the full path count.
    pub full_vertex_bound_log2: f64,
    pub collision_budget: usize,
    /// Index of the start vertex that succeeded.
    pub start_attempt: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EmbedOutcome {
    pub embedding: Embedding,
    /// The chosen auxiliary vertex of each tree vertex, as `t` tensor
    /// vertices over input-graph ids.
    pub images: Vec<Vec<TensorVertex>>,
    pub diagnostics: EmbedDiagnostics,
}

#[derive(Clone, Debug, PartialEq)]
pub enum EmbedFailure {
    InvalidInput(Error),
    Host(HostFailure),
    Harvest(Error),
    Auxiliary(Error),
    EmptyCore {
        aux_vertices: usize,
        aux_edges: usize,
    },
    /// Greedy step found no suitable neighbour (for the last start tried).
    NoSuitableNeighbour {
        tree_position: usize,
        partial: Vec<usize>,
        unsuitable: usize,
        core_min_degree: usize,
    },
    /// Every coordinate has a repeated base vertex (for the last start tried).
    NoDistinctCoordinate {
        images: Vec<usize>,
    },
    Verification,
}

impl EmbedFailure {
    pub fn stage(&self) -> &'static str {
        match self {
            EmbedFailure::InvalidInput(_) => "input",
            EmbedFailure::Host(_) => "prepare_host",
            EmbedFailure::Harvest(_) => "harvest",
            EmbedFailure::Auxiliary(_) => "auxiliary",
            EmbedFailure::EmptyCore { .. } => "peel",
            EmbedFailure::NoSuitableNeighbour { .. } => "greedy",
            EmbedFailure::NoDistinctCoordinate { .. } => "coordinate",
            EmbedFailure::Verification => "verify",
        }
    }

    /// Invalid input or exhausted resources, as opposed to "nothing found".
    pub fn is_error(&self) -> bool {
        match self {
            EmbedFailure::InvalidInput(_) | EmbedFailure::Verification => true,
            EmbedFailure::Harvest(e) | EmbedFailure::Auxiliary(e) => {
                matches!(e, Error::Resource(_) | Error::InvalidArgument(_) | Error::Precondition(_))
            }
            _ => false,
        }
    }
}

impl fmt::Display for EmbedFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} stage failed: ", self.stage())?;
        match self {
            EmbedFailure::InvalidInput(e) | EmbedFailure::Harvest(e) | EmbedFailure::Auxiliary(e) => write!(f, "{e}"),
            EmbedFailure::Host(h) => write!(f, "{h}"),
            EmbedFailure::EmptyCore { aux_vertices, aux_edges } => {
                write!(f, "peeling emptied the auxiliary graph ({aux_vertices} vertices, {aux_edges} edges)")
            }
            EmbedFailure::NoSuitableNeighbour { tree_position, unsuitable, core_min_degree, .. } => write!(
                f,
                "no suitable neighbour for tree position {tree_position} ({unsuitable} unsuitable, core min degree {core_min_degree})"
            ),
            EmbedFailure::NoDistinctCoordinate { .. } => write!(f, "no coordinate with all images distinct"),
            EmbedFailure::Verification => write!(f, "embedding failed self-verification"),
        }
    }
}

impl std::error::Error for EmbedFailure {}

/// Finds a copy of `T □ P_t` in `g` by the tensor-power argument at working
/// parameters.
pub fn embed_tree_product(
    g: &Graph,
    tree: &Graph,
    t: usize,
    params: &WorkingParams,
) -> Result<EmbedOutcome, EmbedFailure> {
    let order = validate_tree(tree).map_err(EmbedFailure::InvalidInput)?;
    if t < 2 {
        return Err(EmbedFailure::InvalidInput(Error::invalid("t must be at least 2")));
    }
    if params.k == 0 || params.alpha.is_zero() {
        return Err(EmbedFailure::InvalidInput(Error::invalid("k and alpha must be positive")));
    }
    let r = tree.vertex_count();
    let host = prepare_host(g).map_err(EmbedFailure::Host)?;
    let view = tensor_power(&host.graph, params.k, TensorMode::Implicit).map_err(EmbedFailure::InvalidInput)?;

    let mut opts = HarvestOptions {
        materialize: false,
        working_cap: params.working_cap,
        seed: params.seed,
        enforce_alpha_guard: false,
        ..Default::default()
    };
    let counted = harvest_good_ladders(&view, t, &params.alpha, &opts).map_err(EmbedFailure::Harvest)?;
    let (harvest, aux) = if !counted.sampled && counted.count <= params.materialize_limit {
        opts.materialize = true;
        let h = harvest_good_ladders(&view, t, &params.alpha, &opts).map_err(EmbedFailure::Harvest)?;
        let aux = build_auxiliary_graph(&view, &h).map_err(EmbedFailure::Auxiliary)?;
        (h, aux)
    } else {
        let aux = build_sampled_auxiliary_graph(&view, &counted, params.aux_sample, params.seed)
            .map_err(EmbedFailure::Auxiliary)?;
        (counted, aux)
    };

    let (aux_v, aux_e) = (aux.graph.vertex_count(), aux.graph.edge_count());
    if aux_e == 0 {
        return Err(EmbedFailure::EmptyCore { aux_vertices: aux_v, aux_edges: aux_e });
    }
    let threshold = BigRational::new(BigInt::from(aux_e), BigInt::from(aux_v));
    let core = aux.graph.peel_min_degree(&threshold);
    if core.is_empty() {
        return Err(EmbedFailure::EmptyCore { aux_vertices: aux_v, aux_edges: aux_e });
    }
    let core_min_degree = core.graph.min_degree();
    let budget = params.collision_budget.unwrap_or_else(|| default_collision_budget(params.k, r, t));

    let mut last_failure = None;
    let attempts = params.start_attempts.max(1).min(core.graph.vertex_count());
    for start in 0..attempts {
        match greedy(&aux, &core.graph, &core.original, &order, start, budget) {
            Ok((images, coordinate)) => {
                let to_input = |v: Vertex| host.original[v];
                let mut assignment = vec![Vec::new(); r];
                let mut lifted = vec![Vec::new(); r];
                for (p, &img) in images.iter().enumerate() {
                    let id = core.original[img];
                    let w = order.order[p];
                    assignment[w] = (0..t).map(|i| to_input(aux.entry(id, i, coordinate))).collect();
                    lifted[w] = aux
                        .vertex(id)
                        .into_iter()
                        .map(|tv| TensorVertex(tv.0.into_iter().map(to_input).collect()))
                        .collect();
                }
                let embedding = Embedding { t, coordinate, assignment };
                if !verify_embedding(g, tree, t, &embedding) {
                    return Err(EmbedFailure::Verification);
                }
                let n = host.graph.vertex_count() as f64;
                let delta = host.graph.max_degree().max(1) as f64;
                let kf = params.k as f64;
                let diagnostics = EmbedDiagnostics {
                    host_vertices: host.graph.vertex_count(),
                    host_edges: host.graph.edge_count(),
                    host_alpha: host.alpha_prime.clone(),
                    s_values: harvest.s_values(),
                    harvest_count: harvest.count,
                    harvest_sampled: harvest.sampled,
                    aux_sampled: aux.sampled,
                    aux_vertices: aux_v,
                    aux_edges: aux_e,
                    min_degree_audit: BigRational::from_integer(BigInt::from(core_min_degree)) >= threshold,
                    peel_threshold: threshold,
                    core_vertices: core.graph.vertex_count(),
                    core_min_degree,
                    full_vertex_bound_log2: kf * n.log2() + kf * (t as f64 - 1.0) * delta.log2(),
                    collision_budget: budget,
                    start_attempt: start,
                };
                return Ok(EmbedOutcome { embedding, images: lifted, diagnostics });
            }
            Err(f) => last_failure = Some(f),
        }
    }
    Err(last_failure.expect("at least one start attempt"))
}

/// Greedy collision-bounded embedding of the tree into the core, starting
/// from core vertex `start`. Returns core ids per tree position and the
/// first all-distinct coordinate.
fn greedy(
    aux: &AuxiliaryGraph,
    core: &Graph,
    core_to_aux: &[usize],
    order: &TreeOrder,
    start: usize,
    budget: usize,
) -> Result<(Vec<usize>, usize), EmbedFailure> {
    let (t, k) = (aux.t, aux.k);
    let collisions = |a: usize, l: usize, b: usize, i: usize| {
        let (a, b) = (core_to_aux[a], core_to_aux[b]);
        (0..k).filter(|&j| aux.entry(a, l, j) == aux.entry(b, i, j)).count()
    };
    let mut images = vec![start];
    for p in 1..order.order.len() {
        let z = order.parent[p].expect("non-root has a parent");
        let suitable = |c: usize| {
            !images.contains(&c)
                && images.iter().all(|&q| (0..t).all(|l| (0..t).all(|i| collisions(c, l, q, i) <= budget)))
        };
        match core.neighbors(images[z]).iter().copied().find(|&c| suitable(c)) {
            Some(c) => images.push(c),
            None => {
                return Err(EmbedFailure::NoSuitableNeighbour {
                    tree_position: p,
                    partial: images.iter().map(|&c| core_to_aux[c]).collect(),
                    unsuitable: core.degree(images[z]),
                    core_min_degree: core.min_degree(),
                })
            }
        }
    }
    let distinct = |j: usize| {
        let mut vals: Vec<Vertex> =
            images.iter().flat_map(|&c| (0..t).map(move |i| aux.entry(core_to_aux[c], i, j))).collect();
        vals.sort_unstable();
        vals.windows(2).all(|w| w[0] != w[1])
    };
    match (0..k).find(|&j| distinct(j)) {
        Some(j) => Ok((images, j)),
        None => Err(EmbedFailure::NoDistinctCoordinate { images: images.iter().map(|&c| core_to_aux[c]).collect() }),
    }
}

impl EmbedDiagnostics {
    pub fn harvest_count_f64(&self) -> f64 {
        self.harvest_count.to_f64().unwrap_or(f64::INFINITY)
    }
}
