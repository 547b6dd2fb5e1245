//! The `gridturan` command line.
//!
//! Every subcommand prints either a canonical edge list or `key=value` lines
//! on standard output, and diagnostics on standard error. Exit codes: 0 for
//! success, 1 when nothing was found (no embedding, or a Turán search that
//! ran out of time), 2 for errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::alpha::Alpha;
use crate::cleaning::{clean_subgraph, prepare_host};
use crate::embedder::{embed_tree_product, theorem_parameters, WorkingParams, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::generators::{
    blowup, complete_graph, cycle_graph, make_grid, make_path, polarity_graph, random_graph, star_graph, tensor_power,
    TensorMode,
};
use crate::graph::Graph;
use crate::io::{parse_graph, write_graph, Report};
use crate::ladders::{harvest_good_ladders, is_good_ladder, HarvestOptions};
use crate::oracle::{
    diagonal_crossing, turan_number, verify_lower_bound_construction, DiagonalAssignment, SearchBudget,
};

#[derive(Parser, Debug)]
#[command(name = "gridturan", version, about = "Grids, tensor powers and T x P_t embeddings")]
pub struct Cli {
    /// Worker threads; outputs do not depend on this
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a graph as a canonical edge list
    Gen(GenArgs),
    /// Run the two-type deletion procedure on a graph
    Clean(CleanArgs),
    /// Harvest good ladders in a tensor power
    Ladders(LaddersArgs),
    /// Embed T x P_t into a host graph
    Embed(EmbedArgs),
    /// Exact small Turán numbers
    Turan(TuranArgs),
    /// Check the diagonal-crossing property
    Diagonals(DiagonalsArgs),
    /// Check the blown-up polarity graph lower bound
    #[command(name = "verify-lb")]
    VerifyLb(VerifyLbArgs),
    /// Print the reference parameters of the existence argument
    Params(ParamsArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Path,
    Cycle,
    Complete,
    Star,
    Grid,
    Polarity,
    Blowup,
    Random,
    Tensor,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long = "type", value_enum)]
    pub kind: GenKind,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Blowup factor
    #[arg(long)]
    pub r: Option<usize>,
    /// Tensor power
    #[arg(long)]
    pub k: Option<usize>,
    /// Base graph for blowup and tensor
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CleanArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Cleaned graph; standard output when absent
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Deletion log, one `T1 v` or `T2 u v` per line
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Also regularize and certify the host conditions; prints key=value lines
    #[arg(long)]
    pub prepare: bool,
}

#[derive(Args, Debug)]
pub struct LaddersArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub t: usize,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// A number (`8`, `8.05`, `1/2`) or `auto` for the edge density
    #[arg(long, default_value = "auto")]
    pub alpha: String,
    #[arg(long)]
    pub count_only: bool,
    /// Writes the discovered s-values, one per line
    #[arg(long)]
    pub spec_out: Option<PathBuf>,
    /// Allow alpha below 4t
    #[arg(long)]
    pub relax_alpha_guard: bool,
    /// Sample working sets down to this size
    #[arg(long)]
    pub cap: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct EmbedArgs {
    #[arg(long)]
    pub host: PathBuf,
    /// Edge-list file, or `P<r>` for a path on r vertices
    #[arg(long)]
    pub tree: String,
    #[arg(long)]
    pub t: usize,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value = "2")]
    pub alpha: String,
    /// Collision budget; defaults to floor(k / (rt)^2)
    #[arg(long)]
    pub budget: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Harvest working cap; 0 disables sampling (default 250000)
    #[arg(long)]
    pub cap: Option<usize>,
    /// Start vertices the greedy step may try
    #[arg(long, default_value_t = 32)]
    pub starts: usize,
    /// Writes the embedding as lines `p i v`
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TuranArgs {
    #[arg(long)]
    pub n: usize,
    /// Edge-list file, or one of `K<m>`, `C<m>`, `P<m>`, `F<t>`
    #[arg(long)]
    pub forbidden: String,
    /// Seconds
    #[arg(long)]
    pub budget: Option<f64>,
    /// Writes the extremal witness
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DiagonalsArgs {
    #[arg(long)]
    pub t: usize,
    #[arg(long, conflicts_with = "assignment", required_unless_present = "assignment")]
    pub exhaustive: bool,
    /// Row-major, `1` for `/` and `0` for `\`
    #[arg(long)]
    pub assignment: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyLbArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub t: usize,
    /// Seconds for the grid search
    #[arg(long)]
    pub budget: Option<f64>,
}

#[derive(Args, Debug)]
pub struct ParamsArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub n: u64,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let go = |out: &mut dyn Write, err: &mut dyn Write| match dispatch(&cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error[{}]: {e}", e.code());
            2
        }
    };
    match cli.threads {
        Some(threads) => match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => {
                let (mut o, mut e) = (Vec::new(), Vec::new());
                let code = pool.install(|| go(&mut o, &mut e));
                let _ = out.write_all(&o);
                let _ = err.write_all(&e);
                code
            }
            Err(e) => {
                let _ = writeln!(err, "error[invalid-argument]: {e}");
                2
            }
        },
        None => go(out, err),
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))?;
    parse_graph(&text)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(|e| Error::invalid(format!("writing output: {e}")))
}

fn need<T: Copy>(v: Option<T>, flag: &str, kind: &str) -> Result<T> {
    v.ok_or_else(|| Error::invalid(format!("--{flag} is required for {kind}")))
}

/// `K<m>`, `C<m>`, `P<m>`, `F<t>` or a file.
fn named_or_file(spec: &str) -> Result<Graph> {
    let mut chars = spec.chars();
    let head = chars.next();
    if let (Some(head), Ok(m)) = (head, chars.as_str().parse::<usize>()) {
        match head {
            'K' => return Ok(complete_graph(m)),
            'C' => return cycle_graph(m),
            'P' => return make_path(m),
            'F' => return make_grid(m, 2),
            _ => {}
        }
    }
    read_graph(Path::new(spec))
}

fn seconds(v: Option<f64>) -> Result<Option<Duration>> {
    v.map(|s| Duration::try_from_secs_f64(s).map_err(|_| Error::invalid(format!("invalid budget {s}")))).transpose()
}

fn dispatch(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Gen(a) => gen(a, out),
        Command::Clean(a) => clean(a, out, err),
        Command::Ladders(a) => ladders(a, out),
        Command::Embed(a) => embed(a, out, err),
        Command::Turan(a) => turan(a, out),
        Command::Diagonals(a) => diagonals(a, out),
        Command::VerifyLb(a) => {
            let budget = match seconds(a.budget)? {
                Some(d) => SearchBudget::until(std::time::Instant::now() + d),
                None => SearchBudget::unlimited(),
            };
            let r = verify_lower_bound_construction(a.q, a.t, &budget)?;
            emit(out, &r.to_report().to_string())?;
            Ok(0)
        }
        Command::Params(a) => {
            let p = theorem_parameters(a.r, a.t, a.n)?;
            let mut r = Report::new();
            r.push("r", p.r).push("t", p.t).push("n", p.n).push("alpha_log2", format!("{:.4}", p.alpha_log2));
            r.push("k_min", p.k_min);
            emit(out, &r.to_string())?;
            Ok(0)
        }
    }
}

fn gen(a: &GenArgs, out: &mut dyn Write) -> Result<i32> {
    let kind = format!("{:?}", a.kind).to_lowercase();
    let g = match a.kind {
        GenKind::Path => make_path(need(a.n, "n", &kind)?)?,
        GenKind::Cycle => cycle_graph(need(a.n, "n", &kind)?)?,
        GenKind::Complete => complete_graph(need(a.n, "n", &kind)?),
        GenKind::Star => star_graph(need(a.n, "n", &kind)?),
        GenKind::Grid => make_grid(need(a.t, "t", &kind)?, a.d)?,
        GenKind::Polarity => polarity_graph(need(a.q, "q", &kind)?)?,
        GenKind::Random => random_graph(need(a.n, "n", &kind)?, need(a.p, "p", &kind)?, a.seed)?,
        GenKind::Blowup => {
            let base = read_graph(a.input.as_deref().ok_or_else(|| Error::invalid("--input is required for blowup"))?)?;
            blowup(&base, need(a.r, "r", &kind)?)?
        }
        GenKind::Tensor => {
            let base = read_graph(a.input.as_deref().ok_or_else(|| Error::invalid("--input is required for tensor"))?)?;
            let view = tensor_power(&base, need(a.k, "k", &kind)?, TensorMode::Explicit)?;
            view.explicit_graph().expect("explicit mode").clone()
        }
    };
    let text = write_graph(&g);
    match &a.output {
        Some(p) => write_file(p, &text)?,
        None => emit(out, &text)?,
    }
    Ok(0)
}

fn clean(a: &CleanArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let g = read_graph(&a.input)?;
    let (h, rep) = clean_subgraph(&g)?;
    if let Some(p) = &a.report {
        write_file(p, &rep.to_text())?;
    }
    let mut summary = Report::new();
    summary
        .push("n", g.vertex_count())
        .push("input_edges", rep.input_edges)
        .push("output_edges", rep.output_edges)
        .push("type1_deletions", rep.type1_deletions().count())
        .push("type2_deletions", rep.type2_deletions().count())
        .push("input_alpha", format!("{:.6}", rep.input_alpha.to_f64()));
    if a.prepare {
        match prepare_host(&g) {
            Ok(host) => {
                summary
                    .push("host_certified", true)
                    .push("host_m", host.m)
                    .push("host_edges", host.graph.edge_count())
                    .push("alpha_prime", format!("{:.6}", host.alpha_prime.to_f64()))
                    .push("alpha_source", format!("{:?}", host.alpha_source).to_lowercase())
                    .push(
                        "regularity",
                        format!("{:.6}", num_traits::ToPrimitive::to_f64(&host.chain.regularity).unwrap_or(f64::NAN)),
                    )
                    .push("textbook_chain", host.chain.textbook_chain_holds());
            }
            Err(f) => {
                summary.push("host_certified", false).push("host_failure", f.to_string());
            }
        }
    }
    let text = write_graph(&h);
    match &a.output {
        Some(p) => {
            write_file(p, &text)?;
            emit(out, &summary.to_string())?;
        }
        None => {
            emit(out, &text)?;
            let _ = write!(err, "{summary}");
        }
    }
    Ok(0)
}

fn parse_alpha(s: &str, g: &Graph) -> Result<Alpha> {
    if s == "auto" {
        g.edge_density_alpha()
    } else {
        s.parse()
    }
}

fn ladders(a: &LaddersArgs, out: &mut dyn Write) -> Result<i32> {
    let g = read_graph(&a.input)?;
    let alpha = parse_alpha(&a.alpha, &g)?;
    let view = tensor_power(&g, a.k, TensorMode::Implicit)?;
    let opts = HarvestOptions {
        materialize: !a.count_only,
        working_cap: a.cap,
        seed: a.seed,
        enforce_alpha_guard: !a.relax_alpha_guard,
        ..Default::default()
    };
    let h = harvest_good_ladders(&view, a.t, &alpha, &opts)?;
    let mut r = Report::new();
    r.push("t", a.t).push("k", a.k).push("alpha", format!("{:.6}", alpha.to_f64()));
    for (i, s) in h.s_values().iter().enumerate() {
        r.push(format!("s_{}", i + 1), s);
    }
    r.push("count", h.count)
        .push("lower_bound_log2", format!("{:.6}", h.lower_bound_log2()))
        .push("meets_lower_bound", h.meets_lower_bound())
        .push("pigeonhole_ok", h.pigeonhole_ok())
        .push("alpha_guard_met", h.alpha_guard_met)
        .push("sampled", h.sampled);
    for step in &h.step_log {
        r.push(format!("step_{}_retained", step.step), step.retained)
            .push(format!("step_{}_before", step.step), step.tuples_before)
            .push(format!("step_{}_x_half_violations", step.step), step.x_half_bound_violations)
            .push(format!("step_{}_y_half_violations", step.step), step.y_half_bound_violations);
    }
    if let Some(ls) = &h.ladders {
        let mut all_good = true;
        for l in ls {
            all_good &= is_good_ladder(&view, l, &h.spec)?;
        }
        r.push("all_good", all_good);
    }
    if let Some(p) = &a.spec_out {
        let text: String = h.s_values().iter().map(|s| format!("{s}\n")).collect();
        write_file(p, &text)?;
    }
    emit(out, &r.to_string())?;
    Ok(0)
}

fn embed(a: &EmbedArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let g = read_graph(&a.host)?;
    let tree = named_or_file(&a.tree)?;
    let mut params = WorkingParams::new(a.k, a.alpha.parse()?);
    params.collision_budget = a.budget;
    params.seed = a.seed;
    if let Some(cap) = a.cap {
        params.working_cap = (cap > 0).then_some(cap);
    }
    params.start_attempts = a.starts;
    let mut r = Report::new();
    match embed_tree_product(&g, &tree, a.t, &params) {
        Ok(o) => {
            let d = &o.diagnostics;
            r.push("found", true)
                .push("coordinate", o.embedding.coordinate)
                .push("r", tree.vertex_count())
                .push("t", a.t)
                .push("k", a.k)
                .push("collision_budget", d.collision_budget)
                .push("harvest_count", d.harvest_count)
                .push("aux_vertices", d.aux_vertices)
                .push("aux_edges", d.aux_edges)
                .push("aux_sampled", d.aux_sampled)
                .push("core_vertices", d.core_vertices)
                .push("core_min_degree", d.core_min_degree)
                .push("start_attempt", d.start_attempt);
            for (i, s) in d.s_values.iter().enumerate() {
                r.push(format!("s_{}", i + 1), s);
            }
            for (p, row) in o.embedding.assignment.iter().enumerate() {
                for (i, v) in row.iter().enumerate() {
                    r.push(format!("x.{p}.{i}"), v);
                }
            }
            if let Some(path) = &a.output {
                write_file(path, &o.embedding.to_text())?;
            }
            emit(out, &r.to_string())?;
            Ok(0)
        }
        Err(f) => {
            r.push("found", false).push("stage", f.stage());
            emit(out, &r.to_string())?;
            let _ = writeln!(err, "{f}");
            Ok(if f.is_error() { 2 } else { 1 })
        }
    }
}

fn turan(a: &TuranArgs, out: &mut dyn Write) -> Result<i32> {
    let h = named_or_file(&a.forbidden)?;
    let res = turan_number(a.n, &h, seconds(a.budget)?)?;
    let mut r = Report::new();
    r.push("n", res.n).push("value", res.value).push("exact", res.exact);
    let sizes: Vec<String> = res.layer_sizes.iter().map(ToString::to_string).collect();
    r.push("layer_sizes", sizes.join(","));
    if let Some(p) = &a.output {
        write_file(p, &write_graph(&res.witness))?;
    }
    emit(out, &r.to_string())?;
    Ok(if res.exact { 0 } else { 1 })
}

fn diagonals(a: &DiagonalsArgs, out: &mut dyn Write) -> Result<i32> {
    let mut r = Report::new();
    r.push("t", a.t);
    if let Some(bits) = &a.assignment {
        let assign = DiagonalAssignment::from_bitstring(a.t, bits)?;
        let p = diagonal_crossing(&assign);
        let pts: Vec<String> = p.points.iter().map(|(x, y)| format!("{x}:{y}")).collect();
        r.push("direction", p.direction).push("length", p.points.len()).push("path", pts.join(","));
    } else {
        if a.t < 2 || a.t > 8 {
            return Err(Error::invalid("exhaustive mode supports 2 <= t <= 8"));
        }
        let squares = (a.t - 1) * (a.t - 1);
        let mut min_len = usize::MAX;
        let mut left_right = 0u64;
        for mask in 0..1u64 << squares {
            let p = diagonal_crossing(&DiagonalAssignment::from_mask(a.t, mask)?);
            min_len = min_len.min(p.points.len());
            left_right += u64::from(p.direction == crate::oracle::CrossingDirection::LeftRight);
        }
        r.push("assignments", 1u64 << squares)
            .push("all_crossed", true)
            .push("left_right", left_right)
            .push("min_length", min_len);
    }
    emit(out, &r.to_string())?;
    Ok(0)
}
