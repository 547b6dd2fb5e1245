//! `t`-ladders in tensor powers.
//!
//! A `t`-ladder is a `2t`-tuple `(x₁, y₁, …, x_t, y_t)` with `x_i x_{i+1}`,
//! `y_i y_{i+1}` and `x_i y_i` edges: a homomorphic image of the `2 × t` grid.
//! It is `(s₁, …, s_{t−1})`-good in `G^k` if every tensor codegree
//! `d(x_{i+1}, y_i)` is at most `s_i`, every per-coordinate codegree
//! `d_G(x_{i+1}(j), y_i(j))` is at least `α`, and in every coordinate the `2t`
//! entries are distinct.
//!
//! Positions are 0-based throughout: `x(0)` is `x₁`, and `s[i]` caps
//! `d(x(i+1), y(i))`.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::alpha::Alpha;
use crate::error::{Error, Result};
use crate::generators::{TensorPowerView, TensorVertex};
use crate::graph::{BitAdjacency, Graph, Vertex};

/// A `t`-ladder in `G^k`, stored flat: entry `p` occupies `coords[p*k..(p+1)*k]`
/// and entries alternate `x₁, y₁, x₂, y₂, …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ladder {
    k: usize,
    coords: Vec<Vertex>,
}

impl Ladder {
    pub fn new(entries: &[TensorVertex]) -> Result<Self> {
        let k = entries.first().map(TensorVertex::k).unwrap_or(0);
        if entries.is_empty() || !entries.len().is_multiple_of(2) {
            return Err(Error::invalid("a ladder needs a positive even number of entries"));
        }
        if k == 0 || entries.iter().any(|e| e.k() != k) {
            return Err(Error::invalid("ladder entries must share the same positive k"));
        }
        Ok(Ladder { k, coords: entries.iter().flat_map(|e| e.0.iter().copied()).collect() })
    }

    /// A ladder in `G` itself (`k = 1`).
    pub fn from_base(vertices: &[Vertex]) -> Result<Self> {
        Self::from_flat(1, vertices.to_vec())
    }

    pub fn from_flat(k: usize, coords: Vec<Vertex>) -> Result<Self> {
        if k == 0 || coords.is_empty() || !coords.len().is_multiple_of(2 * k) {
            return Err(Error::invalid("flat ladder length must be a positive multiple of 2k"));
        }
        Ok(Ladder { k, coords })
    }

    pub fn t(&self) -> usize {
        self.coords.len() / (2 * self.k)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Entry `p` in the interleaved order `x₁, y₁, x₂, …`.
    pub fn entry(&self, p: usize) -> &[Vertex] {
        &self.coords[p * self.k..(p + 1) * self.k]
    }

    pub fn x(&self, i: usize) -> &[Vertex] {
        self.entry(2 * i)
    }

    pub fn y(&self, i: usize) -> &[Vertex] {
        self.entry(2 * i + 1)
    }

    pub fn entries(&self) -> Vec<TensorVertex> {
        self.coords.chunks(self.k).map(|c| TensorVertex(c.to_vec())).collect()
    }

    pub fn flat(&self) -> &[Vertex] {
        &self.coords
    }

    /// Whether the ladder edge pattern holds in `G^k`.
    pub fn is_ladder(&self, view: &TensorPowerView) -> bool {
        let g = view.base();
        let adj = |a: &[Vertex], b: &[Vertex]| a.iter().zip(b).all(|(&u, &v)| g.has_edge(u, v));
        let t = self.t();
        (0..t).all(|i| adj(self.x(i), self.y(i)))
            && (0..t - 1).all(|i| adj(self.x(i), self.x(i + 1)) && adj(self.y(i), self.y(i + 1)))
    }
}

/// `(y_t, x_t, y_{t−1}, x_{t−1}, …, y₁, x₁)`.
pub fn reverse_ladder(l: &Ladder) -> Ladder {
    let coords = (0..2 * l.t()).rev().flat_map(|p| l.entry(p).iter().copied()).collect();
    Ladder { k: l.k, coords }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodLadderSpec {
    pub t: usize,
    pub k: usize,
    pub alpha: Alpha,
    /// `s[i]` caps `d(x(i+1), y(i))`; length `t − 1`.
    pub s: Vec<BigRational>,
}

impl GoodLadderSpec {
    pub fn new(t: usize, k: usize, alpha: Alpha, s: Vec<BigRational>) -> Result<Self> {
        if t == 0 || k == 0 {
            return Err(Error::invalid("t and k must be positive"));
        }
        if s.len() + 1 != t {
            return Err(Error::invalid(format!("expected {} s-values, got {}", t - 1, s.len())));
        }
        if alpha.is_zero() {
            return Err(Error::invalid("alpha must be positive"));
        }
        if s.iter().any(|v| *v < BigRational::one()) {
            return Err(Error::invalid("every s value must be at least 1"));
        }
        Ok(GoodLadderSpec { t, k, alpha, s })
    }

    /// Convenience for integer caps.
    pub fn with_integer_caps(t: usize, k: usize, alpha: Alpha, s: &[u128]) -> Result<Self> {
        Self::new(t, k, alpha, s.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
    }

    /// The ladder spec met by reversed ladders.
    pub fn reversed(&self) -> Self {
        let mut s = self.s.clone();
        s.reverse();
        GoodLadderSpec { s, ..self.clone() }
    }

    pub fn s_product(&self) -> BigRational {
        self.s.iter().fold(BigRational::one(), |acc, v| acc * v)
    }

    fn caps(&self) -> Vec<BigInt> {
        self.s.iter().map(|v| v.floor().to_integer()).collect()
    }
}

fn distinct_per_coordinate(l: &Ladder) -> bool {
    let mut seen = Vec::with_capacity(2 * l.t());
    (0..l.k).all(|j| {
        seen.clear();
        seen.extend((0..2 * l.t()).map(|p| l.entry(p)[j]));
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    })
}

pub fn is_good_ladder(view: &TensorPowerView, l: &Ladder, spec: &GoodLadderSpec) -> Result<bool> {
    if l.k != view.power() || spec.k != view.power() {
        return Err(Error::invalid(format!("ladder has k = {}, spec k = {}, view k = {}", l.k, spec.k, view.power())));
    }
    if l.t() != spec.t {
        return Err(Error::invalid(format!("ladder has t = {}, spec t = {}", l.t(), spec.t)));
    }
    let n = view.base().vertex_count();
    if let Some(&v) = l.coords.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    if !l.is_ladder(view) || !distinct_per_coordinate(l) {
        return Ok(false);
    }
    let g = view.base();
    let min_codeg = spec.alpha.ceil_u64() as usize;
    let caps = spec.caps();
    for (i, cap) in caps.iter().enumerate() {
        let (x, y) = (l.x(i + 1), l.y(i));
        let mut product = BigUint::one();
        for j in 0..l.k {
            let d = g.codegree(x[j], y[j])?;
            if d < min_codeg {
                return Ok(false);
            }
            product *= d;
        }
        if BigInt::from(product) > *cap {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of (not necessarily injective) `t`-ladders in `g`.
///
/// Dynamic programme over the last rung `(x, y)`:
/// `f_{i+1}(x', y') = [x'y' ∈ E] · Σ_{x ~ x', y ~ y'} f_i(x, y)`.
pub fn count_ladders(g: &Graph, t: usize) -> Result<u128> {
    if t == 0 {
        return Err(Error::invalid("t must be at least 1"));
    }
    let n = g.vertex_count();
    let overflow = || Error::resource("ladder count overflows u128");
    let mut f = vec![0u128; n * n];
    for (u, v) in g.edges() {
        f[u * n + v] = 1;
        f[v * n + u] = 1;
    }
    let mut h = vec![0u128; n * n];
    for _ in 1..t {
        // h(x', y) = Σ_{x ~ x'} f(x, y)
        for xp in 0..n {
            for y in 0..n {
                let mut acc = 0u128;
                for &x in g.neighbors(xp) {
                    acc = acc.checked_add(f[x * n + y]).ok_or_else(overflow)?;
                }
                h[xp * n + y] = acc;
            }
        }
        let mut next = vec![0u128; n * n];
        for (xp, yp) in g.edges() {
            for (a, b) in [(xp, yp), (yp, xp)] {
                let mut acc = 0u128;
                for &y in g.neighbors(b) {
                    acc = acc.checked_add(h[a * n + y]).ok_or_else(overflow)?;
                }
                next[a * n + b] = acc;
            }
        }
        f = next;
    }
    f.iter().try_fold(0u128, |acc, &v| acc.checked_add(v).ok_or_else(overflow))
}

/// Number of `t`-ladders in `G^k`, via `count(G^k) = count(G)^k`.
pub fn count_ladders_tensor(g: &Graph, k: usize, t: usize) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    Ok(num_traits::pow(BigUint::from(count_ladders(g, t)?), k))
}

/// Brute-force enumeration of `t`-ladders of `g`, in lexicographic tuple order.
///
/// `budget` caps the number of search nodes.
pub fn enumerate_ladders(g: &Graph, t: usize, distinct: bool, budget: u64) -> Result<Vec<Ladder>> {
    let mut out = Vec::new();
    brute_force(g, t, distinct, budget, &mut |tuple| {
        out.push(Ladder { k: 1, coords: tuple.to_vec() });
    })?;
    Ok(out)
}

/// Like [`enumerate_ladders`] but only counts.
pub fn count_ladders_brute(g: &Graph, t: usize, distinct: bool, budget: u64) -> Result<u128> {
    let mut count = 0u128;
    brute_force(g, t, distinct, budget, &mut |_| count += 1)?;
    Ok(count)
}

fn brute_force(g: &Graph, t: usize, distinct: bool, budget: u64, emit: &mut dyn FnMut(&[Vertex])) -> Result<()> {
    if t == 0 {
        return Err(Error::invalid("t must be at least 1"));
    }
    struct Search<'a> {
        g: &'a Graph,
        len: usize,
        distinct: bool,
        nodes: u64,
        budget: u64,
        tuple: Vec<Vertex>,
    }
    impl Search<'_> {
        fn go(&mut self, emit: &mut dyn FnMut(&[Vertex])) -> Result<()> {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::resource(format!("ladder enumeration exceeded {} nodes", self.budget)));
            }
            let p = self.tuple.len();
            if p == self.len {
                emit(&self.tuple);
                return Ok(());
            }
            // x_i: neighbour of x_{i−1}; y_i: neighbour of x_i and y_{i−1}
            let candidates: Vec<Vertex> = match (p, p % 2) {
                (0, _) => (0..self.g.vertex_count()).collect(),
                (_, 1) => {
                    let x = self.tuple[p - 1];
                    self.g
                        .neighbors(x)
                        .iter()
                        .copied()
                        .filter(|&y| p < 2 || self.g.has_edge(y, self.tuple[p - 2]))
                        .collect()
                }
                _ => self.g.neighbors(self.tuple[p - 2]).to_vec(),
            };
            for v in candidates {
                if self.distinct && self.tuple.contains(&v) {
                    continue;
                }
                self.tuple.push(v);
                self.go(emit)?;
                self.tuple.pop();
            }
            Ok(())
        }
    }
    let mut s = Search { g, len: 2 * t, distinct, nodes: 0, budget, tuple: Vec::with_capacity(2 * t) };
    s.go(emit)
}

/// Exact codegrees of the base graph, tabulated when small.
pub(crate) struct Codegrees {
    n: usize,
    table: Option<Vec<u32>>,
    bits: BitAdjacency,
}

impl Codegrees {
    pub(crate) fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let bits = g.bit_rows();
        let table = (n <= 2048).then(|| {
            let mut t = vec![0u32; n * n];
            for u in 0..n {
                for v in u..n {
                    let d = bits.codegree(u, v) as u32;
                    t[u * n + v] = d;
                    t[v * n + u] = d;
                }
            }
            t
        });
        Codegrees { n, table, bits }
    }

    #[inline]
    pub(crate) fn get(&self, u: usize, v: usize) -> u32 {
        match &self.table {
            Some(t) => t[u * self.n + v],
            None => self.bits.codegree(u, v) as u32,
        }
    }

    #[inline]
    pub(crate) fn adjacent(&self, u: usize, v: usize) -> bool {
        self.bits.has(u, v)
    }
}

#[derive(Clone, Debug)]
pub struct HarvestOptions {
    /// Keep the final ladders rather than only counting them.
    pub materialize: bool,
    /// When set, working sets larger than this are replaced by a seeded
    /// uniform sample of this size before each extension.
    pub working_cap: Option<usize>,
    pub seed: u64,
    /// Reject `α < 4t`. The half-bound on fresh choices relies on it.
    pub enforce_alpha_guard: bool,
    /// Hard limit on stored partial tuples.
    pub max_tuples: usize,
}

impl Default for HarvestOptions {
    fn default() -> Self {
        HarvestOptions {
            materialize: false,
            working_cap: None,
            seed: 0,
            enforce_alpha_guard: true,
            max_tuples: 20_000_000,
        }
    }
}

/// One extension step of the harvest (producing `s[step]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarvestStep {
    pub step: usize,
    /// Partial tuples `(x₁, …, y_i, x_{i+1})` before bucketing.
    pub tuples_before: u128,
    /// Upper end of the chosen bucket `(s/2, s]`.
    pub bucket_upper: u128,
    pub retained: u128,
    /// `retained · ⌈log₂ n^k⌉ ≥ tuples_before`.
    pub min_fraction_met: bool,
    /// Partial ladders whose fresh `x` choices fall below `(½αn^{1/2})^k`.
    pub x_half_bound_violations: u64,
    /// Extended tuples whose fresh `y` choices fall below `2^{−k} d(x_{i+1}, y_i)`.
    pub y_half_bound_violations: u64,
    /// Ladders produced by this step before any sampling.
    pub produced: u128,
    /// Whether the working set entering this step was sampled.
    pub sampled: bool,
}

impl HarvestStep {
    pub fn fraction(&self) -> f64 {
        self.retained as f64 / self.tuples_before as f64
    }
}

#[derive(Clone, Debug)]
pub struct HarvestResult {
    pub spec: GoodLadderSpec,
    pub count: u128,
    pub ladders: Option<Vec<Ladder>>,
    pub step_log: Vec<HarvestStep>,
    /// Some working set was subsampled; `count` then refers to the sample.
    pub sampled: bool,
    pub alpha_guard_met: bool,
    pub n: usize,
}

impl HarvestResult {
    pub fn s_values(&self) -> Vec<u128> {
        self.spec.s.iter().map(|v| v.to_integer().to_u128().unwrap_or(u128::MAX)).collect()
    }

    /// Per step: whether `s_i ≥ α`.
    pub fn s_at_least_alpha(&self) -> Vec<bool> {
        self.s_values().iter().map(|&s| self.spec.alpha.le_int(s)).collect()
    }

    /// Per step: whether `s_i ≥ α^k`.
    pub fn s_at_least_alpha_k(&self) -> Vec<bool> {
        let ak = self.spec.alpha.pow(self.spec.k as u32);
        self.s_values().iter().map(|&s| ak.le_int(s)).collect()
    }

    /// `log₂` of `α^{tk} n^{(t/2+1)k} ∏ s_i / (4^{k+1} log₂ n^k)^{t−1}`.
    pub fn lower_bound_log2(&self) -> f64 {
        let (t, k, n) = (self.spec.t as f64, self.spec.k as f64, self.n as f64);
        let s: f64 = self.s_values().iter().map(|&s| (s as f64).log2()).sum();
        let denom = 2.0 * (k + 1.0) + (k * n.log2()).log2();
        t * k * self.spec.alpha.to_f64().log2() + (t / 2.0 + 1.0) * k * n.log2() + s - (t - 1.0) * denom
    }

    pub fn lower_bound(&self) -> f64 {
        self.lower_bound_log2().exp2()
    }

    pub fn meets_lower_bound(&self) -> bool {
        self.count > 0 && (self.count as f64).log2() >= self.lower_bound_log2()
    }

    pub fn pigeonhole_ok(&self) -> bool {
        self.step_log.iter().all(|s| s.min_fraction_met)
    }
}

fn ceil_log2(v: u128) -> u32 {
    debug_assert!(v >= 1);
    128 - (v - 1).leading_zeros()
}

/// Calls `f` for every tuple of the Cartesian product of `lists`.
fn for_each_product(lists: &[Vec<u32>], f: &mut dyn FnMut(&[u32])) {
    if lists.iter().any(Vec::is_empty) {
        return;
    }
    let mut idx = vec![0usize; lists.len()];
    let mut cur: Vec<u32> = lists.iter().map(|l| l[0]).collect();
    loop {
        f(&cur);
        let mut j = lists.len();
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < lists[j].len() {
                cur[j] = lists[j][idx[j]];
                break;
            }
            idx[j] = 0;
            cur[j] = lists[j][0];
        }
    }
}

/// Partial tuples per parallel work item.
const HARVEST_BLOCK: usize = 1024;

struct HarvestCtx<'a> {
    g: &'a Graph,
    cd: Codegrees,
    k: usize,
    min_codeg: u32,
}

impl HarvestCtx<'_> {
    /// Coordinate `j` of every entry of a partial tuple.
    fn used<'b>(&self, tuple: &'b [u32], j: usize) -> impl Iterator<Item = u32> + 'b {
        tuple.iter().skip(j).step_by(self.k).copied()
    }

    /// Fresh `x` candidates per coordinate for extending a partial ladder.
    fn x_candidates(&self, tuple: &[u32]) -> Vec<Vec<u32>> {
        let k = self.k;
        let len = tuple.len() / k;
        let (xl, yl) = (&tuple[(len - 2) * k..(len - 1) * k], &tuple[(len - 1) * k..]);
        (0..k)
            .map(|j| {
                let y = yl[j] as usize;
                self.g
                    .neighbors(xl[j] as usize)
                    .iter()
                    .filter(|&&w| self.cd.get(w, y) >= self.min_codeg)
                    .map(|&w| w as u32)
                    .filter(|&w| !(0..len).any(|p| tuple[p * k + j] == w))
                    .collect()
            })
            .collect()
    }
}

/// Builds good ladders in `G^k` rung by rung, choosing each `s_i` by dyadic
/// pigeonholing on `d(x_{i+1}, y_i)`.
///
/// The host is expected to satisfy the three host conditions for `alpha`;
/// with `α ≥ 4t` (enforced unless relaxed in `opts`) each step keeps at least
/// half of the raw choices as fresh ones.
pub fn harvest_good_ladders(
    view: &TensorPowerView,
    t: usize,
    alpha: &Alpha,
    opts: &HarvestOptions,
) -> Result<HarvestResult> {
    if t == 0 {
        return Err(Error::invalid("t must be at least 1"));
    }
    if alpha.is_zero() {
        return Err(Error::invalid("alpha must be positive"));
    }
    let alpha_guard_met = alpha.cmp_int(4 * t as u128) != Ordering::Less;
    if opts.enforce_alpha_guard && !alpha_guard_met {
        return Err(Error::Precondition(format!("harvest needs alpha >= 4t = {}, got {alpha}", 4 * t)));
    }
    let g = view.base();
    let n = g.vertex_count();
    let k = view.power();
    if n > u32::MAX as usize {
        return Err(Error::resource("base graph too large"));
    }
    let ctx = HarvestCtx { g, cd: Codegrees::new(g), k, min_codeg: alpha.ceil_u64().min(u32::MAX as u64) as u32 };
    let log_nk = ceil_log2(view.vertex_count().max(2));
    let x_half = alpha.scale(&crate::alpha::ratio(1, 2)).times_sqrt(n as u64).pow(k as u32).ceil();
    let x_half = x_half.to_u128().unwrap_or(u128::MAX);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut sampled_any = false;

    // 1-ladders: ordered adjacent pairs of G^k.
    let mut work: Vec<u32> = Vec::new();
    let pair_count = view.vertex_count();
    let mut ones = 0u128;
    {
        let lists_for = |x: &[u32]| -> Vec<Vec<u32>> {
            x.iter().map(|&c| g.neighbors(c as usize).iter().map(|&w| w as u32).collect()).collect()
        };
        let mut x = vec![0u32; k];
        for idx in 0..pair_count {
            let mut rest = idx;
            for slot in x.iter_mut().rev() {
                *slot = (rest % n as u128) as u32;
                rest /= n as u128;
            }
            let lists = lists_for(&x);
            let mut overflow = false;
            for_each_product(&lists, &mut |y| {
                ones += 1;
                if work.len() / (2 * k) >= opts.max_tuples {
                    overflow = true;
                    return;
                }
                work.extend_from_slice(&x);
                work.extend_from_slice(y);
            });
            if overflow && (t > 1 || opts.materialize) {
                return Err(Error::resource(format!("harvest exceeded {} stored tuples", opts.max_tuples)));
            }
        }
    }
    if ones == 0 {
        return Err(Error::NoExtension { step: 0, stage: "y" });
    }

    let mut s_values = Vec::new();
    let mut steps = Vec::new();
    let mut count = ones;
    for step in 0..t.saturating_sub(1) {
        let stride = 2 * (step + 1) * k;
        let mut sampled = false;
        if let Some(cap) = opts.working_cap {
            let len = work.len() / stride;
            if len > cap {
                let mut keep = rand::seq::index::sample(&mut rng, len, cap).into_vec();
                keep.sort_unstable();
                let mut next = Vec::with_capacity(cap * stride);
                for i in keep {
                    next.extend_from_slice(&work[i * stride..(i + 1) * stride]);
                }
                work = next;
                sampled = true;
                sampled_any = true;
            }
        }

        // pass 1: histogram of d(x_{i+1}, y_i) over fresh extensions
        let buckets = 129usize;
        let block = stride * HARVEST_BLOCK;
        let (hist, x_viol) = work
            .par_chunks(block)
            .map(|chunk| {
                let mut h = vec![0u128; buckets];
                let mut viol = 0u64;
                for tuple in chunk.chunks(stride) {
                    let lists = ctx.x_candidates(tuple);
                    let fresh: u128 = lists.iter().map(|l| l.len() as u128).product();
                    viol += u64::from(fresh < x_half);
                    let y = &tuple[stride - k..];
                    for_each_product(&lists, &mut |x| {
                        let d: u128 = (0..k).map(|j| ctx.cd.get(x[j] as usize, y[j] as usize) as u128).product();
                        h[ceil_log2(d) as usize] += 1;
                    });
                }
                (h, viol)
            })
            .reduce(
                || (vec![0u128; buckets], 0),
                |(mut a, va), (b, vb)| {
                    a.iter_mut().zip(&b).for_each(|(p, q)| *p += q);
                    (a, va + vb)
                },
            );
        let before: u128 = hist.iter().sum();
        if before == 0 {
            return Err(Error::NoExtension { step: step + 1, stage: "x" });
        }
        // largest bucket; ties go to the larger s
        let chosen = (0..buckets).max_by_key(|&b| (hist[b], b)).unwrap();
        let retained = hist[chosen];
        let s = 1u128 << chosen;
        let last = step + 2 == t;
        let store = !last || opts.materialize;

        // pass 2: fresh y over the chosen bucket; blocks keep the input order
        let parts: Vec<(Vec<u32>, u128, u64)> = work
            .par_chunks(block)
            .map(|chunk| {
                let mut out = Vec::new();
                let mut produced = 0u128;
                let mut viol = 0u64;
                let mut fresh_lists: Vec<Vec<u32>> = vec![Vec::new(); k];
                for tuple in chunk.chunks(stride) {
                    let lists = ctx.x_candidates(tuple);
                    let y = &tuple[stride - k..];
                    for_each_product(&lists, &mut |x| {
                        let d: u128 = (0..k).map(|j| ctx.cd.get(x[j] as usize, y[j] as usize) as u128).product();
                        if ceil_log2(d) as usize != chosen {
                            return;
                        }
                        let mut fresh = 1u128;
                        for j in 0..k {
                            let (xj, yj) = (x[j] as usize, y[j] as usize);
                            if store {
                                let used = |w: u32| w == x[j] || ctx.used(tuple, j).any(|u| u == w);
                                let list = &mut fresh_lists[j];
                                list.clear();
                                list.extend(
                                    g.neighbors(xj)
                                        .iter()
                                        .filter(|&&w| ctx.cd.adjacent(w, yj))
                                        .map(|&w| w as u32)
                                        .filter(|&w| !used(w)),
                                );
                                fresh *= list.len() as u128;
                            } else {
                                // only the size matters
                                let taken = ctx
                                    .used(tuple, j)
                                    .filter(|&u| ctx.cd.adjacent(u as usize, xj) && ctx.cd.adjacent(u as usize, yj))
                                    .count();
                                fresh *= (ctx.cd.get(xj, yj) as usize - taken) as u128;
                            }
                        }
                        if fresh << k < d {
                            viol += 1;
                        }
                        produced += fresh;
                        if store {
                            for_each_product(&fresh_lists, &mut |yn| {
                                out.extend_from_slice(tuple);
                                out.extend_from_slice(x);
                                out.extend_from_slice(yn);
                            });
                        }
                    });
                }
                (out, produced, viol)
            })
            .collect();
        let produced: u128 = parts.iter().map(|p| p.1).sum();
        let y_viol: u64 = parts.iter().map(|p| p.2).sum();
        if store {
            let total: usize = parts.iter().map(|p| p.0.len()).sum();
            if total / (stride + 2 * k) > opts.max_tuples {
                return Err(Error::resource(format!("harvest exceeded {} stored tuples", opts.max_tuples)));
            }
            let mut next = Vec::with_capacity(total);
            for (chunk, _, _) in parts {
                next.extend_from_slice(&chunk);
            }
            work = next;
        } else {
            work.clear();
        }
        steps.push(HarvestStep {
            step: step + 1,
            tuples_before: before,
            bucket_upper: s,
            retained,
            min_fraction_met: retained * log_nk as u128 >= before,
            x_half_bound_violations: x_viol,
            y_half_bound_violations: y_viol,
            produced,
            sampled,
        });
        s_values.push(BigRational::from_integer(BigInt::from(s)));
        count = produced;
        if produced == 0 {
            return Err(Error::NoExtension { step: step + 1, stage: "y" });
        }
    }

    let spec = GoodLadderSpec { t, k, alpha: alpha.clone(), s: s_values };
    let ladders = opts.materialize.then(|| {
        let stride = 2 * t * k;
        work.chunks(stride).map(|c| Ladder { k, coords: c.iter().map(|&v| v as usize).collect() }).collect::<Vec<_>>()
    });
    if let Some(l) = &ladders {
        count = l.len() as u128;
    }
    Ok(HarvestResult { spec, count, ladders, step_log: steps, sampled: sampled_any, alpha_guard_met, n })
}

/// Which side of the ladder is held fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixedSide {
    /// `x₁, …, x_t` fixed; the `y` side is counted.
    X,
    /// `y₁, …, y_t` fixed; the `x` side is counted.
    Y,
}

/// Counts good-ladder completions of a fixed side by exhaustive search.
///
/// The free side's entry at `position` (0-based) is pinned to `pins[(j, u)]`
/// on each listed coordinate `j` (0-based). `budget` caps search nodes.
pub fn count_constrained_extensions(
    view: &TensorPowerView,
    spec: &GoodLadderSpec,
    fixed: &[TensorVertex],
    side: FixedSide,
    position: usize,
    pins: &[(usize, Vertex)],
    budget: u64,
) -> Result<u128> {
    let (t, k) = (spec.t, spec.k);
    if fixed.len() != t {
        return Err(Error::invalid(format!("expected {t} fixed vertices, got {}", fixed.len())));
    }
    if position >= t {
        return Err(Error::invalid(format!("position {position} outside 0..{t}")));
    }
    if k != view.power() {
        return Err(Error::invalid("spec and view disagree on k"));
    }
    for v in fixed {
        view.check(v)?;
    }
    for &(j, u) in pins {
        if j >= k {
            return Err(Error::invalid(format!("pinned coordinate {j} outside 0..{k}")));
        }
        if u >= view.base().vertex_count() {
            return Err(Error::VertexOutOfRange { vertex: u, n: view.base().vertex_count() });
        }
    }
    match side {
        FixedSide::X => count_y_side(view, spec, fixed, position, pins, budget),
        FixedSide::Y => {
            // reversal maps y_i to x'_{t−1−i} and the ladder spec to its reverse
            let rev: Vec<TensorVertex> = fixed.iter().rev().cloned().collect();
            count_y_side(view, &spec.reversed(), &rev, t - 1 - position, pins, budget)
        }
    }
}

/// View, spec, fixed side, position, pins, minimum codegree and caps.
type ExtensionCtx<'a> =
    (&'a TensorPowerView, &'a GoodLadderSpec, &'a [TensorVertex], usize, &'a [(usize, Vertex)], usize, &'a [BigInt]);

fn count_y_side(
    view: &TensorPowerView,
    spec: &GoodLadderSpec,
    xs: &[TensorVertex],
    position: usize,
    pins: &[(usize, Vertex)],
    budget: u64,
) -> Result<u128> {
    let min_codeg = spec.alpha.ceil_u64() as usize;
    let caps = spec.caps();
    let mut ys: Vec<Vec<Vertex>> = Vec::with_capacity(spec.t);
    let mut nodes = 0u64;
    let mut count = 0u128;

    fn rec(
        i: usize,
        ctx: &ExtensionCtx<'_>,
        ys: &mut Vec<Vec<Vertex>>,
        nodes: &mut u64,
        budget: u64,
        count: &mut u128,
    ) -> Result<()> {
        let (view, spec, xs, position, pins, min_codeg, caps) = *ctx;
        let g = view.base();
        let (t, k) = (spec.t, spec.k);
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::resource(format!("extension search exceeded {budget} nodes")));
        }
        if i == t {
            let mut entries = Vec::with_capacity(2 * t);
            for (x, y) in xs.iter().zip(ys.iter()) {
                entries.push(x.clone());
                entries.push(TensorVertex(y.clone()));
            }
            if is_good_ladder(view, &Ladder::new(&entries)?, spec)? {
                *count += 1;
            }
            return Ok(());
        }
        let lists: Vec<Vec<u32>> = (0..k)
            .map(|j| {
                let xi = xs[i].0[j];
                g.neighbors(xi)
                    .iter()
                    .copied()
                    .filter(|&w| i == 0 || g.has_edge(w, ys[i - 1][j]))
                    .filter(|&w| i + 1 == t || g.codegree(xs[i + 1].0[j], w).unwrap() >= min_codeg)
                    .filter(|&w| xs.iter().all(|x| x.0[j] != w) && ys.iter().all(|y| y[j] != w))
                    .filter(|&w| i != position || pins.iter().all(|&(pj, u)| pj != j || u == w))
                    .map(|w| w as u32)
                    .collect()
            })
            .collect();
        let mut result = Ok(());
        for_each_product(&lists, &mut |y| {
            if result.is_err() {
                return;
            }
            let y: Vec<Vertex> = y.iter().map(|&v| v as usize).collect();
            if i + 1 < t {
                let d: BigUint = (0..k).map(|j| BigUint::from(g.codegree(xs[i + 1].0[j], y[j]).unwrap())).product();
                if BigInt::from(d) > caps[i] {
                    return;
                }
            }
            ys.push(y);
            result = rec(i + 1, ctx, ys, nodes, budget, count);
            ys.pop();
        });
        result
    }

    let ctx = (view, spec, xs, position, pins, min_codeg, caps.as_slice());
    rec(0, &ctx, &mut ys, &mut nodes, budget, &mut count)?;
    Ok(count)
}

/// Whether `count ≤ Δ(G)^k ∏ s_i α^{−|J|}`, compared exactly.
pub fn extension_bound_holds(view: &TensorPowerView, spec: &GoodLadderSpec, count: u128, pinned: usize) -> bool {
    let delta_k = BigRational::from_integer(BigInt::from(view.max_degree()));
    let rhs = delta_k * spec.s_product();
    let c = BigRational::from_integer(BigInt::from(count));
    let lhs_sq = &c * &c * num_traits::pow(spec.alpha.square().clone(), pinned);
    lhs_sq <= &rhs * &rhs
}

/// `Δ(G)^k ∏ s_i α^{−|J|}` as a float, for reporting.
pub fn extension_bound(view: &TensorPowerView, spec: &GoodLadderSpec, pinned: usize) -> f64 {
    let rhs = BigRational::from_integer(BigInt::from(view.max_degree())) * spec.s_product();
    rhs.to_f64().unwrap_or(f64::INFINITY) / spec.alpha.to_f64().powi(pinned as i32)
}

impl HarvestResult {
    pub fn is_empty(&self) -> bool {
        self.count.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_graph, cycle_graph, make_path, tensor_power, TensorMode};

    fn base_view(g: &Graph) -> TensorPowerView {
        tensor_power(g, 1, TensorMode::Implicit).unwrap()
    }

    #[test]
    fn counts_on_small_graphs() {
        let c4 = cycle_graph(4).unwrap();
        assert_eq!(count_ladders(&c4, 1).unwrap(), 8);
        assert_eq!(count_ladders(&c4, 2).unwrap(), 32);
        assert_eq!(count_ladders_brute(&c4, 2, false, 1 << 20).unwrap(), 32);
        let k2 = make_path(2).unwrap();
        assert_eq!(count_ladders(&k2, 2).unwrap(), 2);
        assert_eq!(count_ladders_tensor(&c4, 2, 2).unwrap(), BigUint::from(1024u32));
        assert_eq!(count_ladders_tensor(&Graph::empty(3), 3, 2).unwrap(), BigUint::zero());
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let c4 = cycle_graph(4).unwrap();
        let all = enumerate_ladders(&c4, 2, false, 1 << 20).unwrap();
        assert_eq!(all.len(), 32);
        assert!(all.windows(2).all(|w| w[0].flat() < w[1].flat()));
        let k2 = make_path(2).unwrap();
        let l = enumerate_ladders(&k2, 2, false, 1000).unwrap();
        assert_eq!(l[0].flat(), &[0, 1, 1, 0]);
        assert!(enumerate_ladders(&complete_graph(6), 3, false, 10).is_err());
    }

    #[test]
    fn good_ladder_examples() {
        let k6 = complete_graph(6);
        let v = base_view(&k6);
        let l = Ladder::from_base(&[0, 1, 2, 3]).unwrap();
        let spec = GoodLadderSpec::with_integer_caps(2, 1, Alpha::from_integer(1), &[6]).unwrap();
        assert!(is_good_ladder(&v, &l, &spec).unwrap());
        let tight = GoodLadderSpec::with_integer_caps(2, 1, Alpha::from_integer(1), &[3]).unwrap();
        assert!(!is_good_ladder(&v, &l, &tight).unwrap());
        let repeated = Ladder::from_base(&[0, 1, 2, 0]).unwrap();
        assert!(!is_good_ladder(&v, &repeated, &spec).unwrap());
        let v2 = tensor_power(&k6, 2, TensorMode::Implicit).unwrap();
        assert!(is_good_ladder(&v2, &l, &spec).is_err());
    }

    #[test]
    fn reversal() {
        let l = Ladder::from_base(&[0, 1, 2, 3, 4, 5]).unwrap();
        let r = reverse_ladder(&l);
        assert_eq!(r.flat(), &[5, 4, 3, 2, 1, 0]);
        assert_eq!(reverse_ladder(&r), l);
        let one = Ladder::from_base(&[3, 7]).unwrap();
        assert_eq!(reverse_ladder(&one).flat(), &[7, 3]);
    }

    #[test]
    fn k6_extension_example() {
        let k6 = complete_graph(6);
        let v = base_view(&k6);
        let spec = GoodLadderSpec::with_integer_caps(2, 1, Alpha::from_integer(2), &[4]).unwrap();
        let fixed = [TensorVertex::from(0), TensorVertex::from(1)];
        let c = count_constrained_extensions(&v, &spec, &fixed, FixedSide::X, 1, &[(0, 5)], 1 << 20).unwrap();
        assert_eq!(c, 3);
        assert!(extension_bound_holds(&v, &spec, c, 1));
        assert_eq!(extension_bound(&v, &spec, 1), 10.0);
        let free = count_constrained_extensions(&v, &spec, &fixed, FixedSide::X, 1, &[], 1 << 20).unwrap();
        assert_eq!(free, 4 * 3);
    }

    #[test]
    fn harvest_base_case_and_guard() {
        let c4 = cycle_graph(4).unwrap();
        let v = base_view(&c4);
        let half = Alpha::from_ratio(1, 2).unwrap();
        assert!(matches!(harvest_good_ladders(&v, 2, &half, &HarvestOptions::default()), Err(Error::Precondition(_))));
        let r = harvest_good_ladders(&v, 1, &Alpha::from_integer(4), &HarvestOptions::default()).unwrap();
        assert_eq!(r.count, 8);
        let v2 = tensor_power(&c4, 2, TensorMode::Implicit).unwrap();
        let r = harvest_good_ladders(&v2, 1, &Alpha::from_integer(4), &HarvestOptions::default()).unwrap();
        assert_eq!(r.count, 64);
    }

    #[test]
    fn harvest_in_k12_is_sound() {
        let g = complete_graph(12);
        let v = base_view(&g);
        let opts = HarvestOptions { materialize: true, ..Default::default() };
        let r = harvest_good_ladders(&v, 2, &Alpha::from_integer(8), &opts).unwrap();
        assert_eq!(r.s_values(), vec![16]);
        assert_eq!(r.count, 12 * 11 * 10 * 9);
        let ladders = r.ladders.as_ref().unwrap();
        assert!(ladders.iter().all(|l| is_good_ladder(&v, l, &r.spec).unwrap()));
        assert!(r.pigeonhole_ok());
        let counted = harvest_good_ladders(&v, 2, &Alpha::from_integer(8), &HarvestOptions::default()).unwrap();
        assert_eq!(counted.count, r.count);
    }

    #[test]
    fn harvest_fails_on_trees() {
        let p = make_path(6).unwrap();
        let v = base_view(&p);
        let opts = HarvestOptions { enforce_alpha_guard: false, ..Default::default() };
        let err = harvest_good_ladders(&v, 2, &Alpha::from_integer(1), &opts).unwrap_err();
        assert!(matches!(err, Error::NoExtension { step: 1, .. }));
    }

    #[test]
    fn product_iteration() {
        let mut seen = Vec::new();
        for_each_product(&[vec![1, 2], vec![3, 4, 5]], &mut |p| seen.push(p.to_vec()));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![1, 4]);
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(258), 9);
        assert_eq!(ceil_log2(256), 8);
    }
}
