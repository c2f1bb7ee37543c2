//! `cyclen`: build, verify and audit graphs whose cycles have pairwise
//! distinct lengths.
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 verification ran
//! and found two cycles of the same length, 3 verification ran, lengths are
//! distinct, but some length is not a multiple of `--m-divisor`.

mod report;

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclen::bounds::{bounds_row, optimize_ratio};
use cyclen::constructions::{audit_theorem5, audit_theorem6, Audit};
use cyclen::graph::{materialize, read_edge_list, write_edge_list, DEFAULT_VERTEX_CAP};
use cyclen::oracle::{oracle_max_edges, DEFAULT_N_MAX, HARD_N_MAX};
use cyclen::scalar::display12;
use cyclen::spectrum::{verify_graph, DEFAULT_CYCLE_CAP};
use cyclen::{
    build_theorem5, build_theorem6, verify, ConstructionPlan, Counts, Graph, Params5, Params6,
    Rational, VerificationReport, VerifyMode,
};
use serde::Serialize;

use report::{Format, Sink};

#[derive(Debug, Parser)]
#[command(
    name = "cyclen",
    version,
    about = "Graphs whose cycles have pairwise distinct lengths"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report (or edge list, for `construct`) here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Omit the provenance header and CSV column names.
    #[arg(long, global = true)]
    no_header: bool,
    /// Refuse to materialize graphs with more vertices than this.
    #[arg(long, global = true, default_value_t = DEFAULT_VERTEX_CAP,
          value_parser = clap::value_parser!(u64).range(1..))]
    vertex_cap: u64,
    /// Abort exact enumeration after this many cycles.
    #[arg(long, global = true, default_value_t = DEFAULT_CYCLE_CAP, value_parser = positive_usize)]
    cycle_cap: usize,
    /// Worker threads for parallel stages.
    #[arg(long, global = true, env = "THREADS", value_parser = positive_usize)]
    threads: Option<usize>,
    /// Timing and warnings on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Materialize a construction and write it as an edge list.
    Construct {
        kind: PlanKind,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Check that all cycle lengths are distinct.
    Verify(SourceArgs),
    /// List every cycle length with its multiplicity and source blocks.
    Spectrum(SourceArgs),
    /// Reconcile built vertex, edge and cycle-space counts with the closed forms.
    Audit {
        kind: PlanKind,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Tabulate lower and upper bounds on the extremal edge count.
    Bounds {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n_from: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n_to: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        step: u64,
    },
    /// Search integer parameter triples for a large limiting ratio.
    Optimize {
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        #[arg(long, default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        scale: u64,
    },
    /// Exhaustive maximum edge count for small orders.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        /// Largest order the search may be asked for.
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        n_max: usize,
        /// Write the witness graph here as an edge list.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PlanKind {
    Theorem5,
    Theorem6,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Structural,
    Exact,
}

#[derive(Debug, Args)]
struct ParamArgs {
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    s1: Option<u64>,
    #[arg(long)]
    s2: Option<u64>,
    #[arg(long)]
    t: Option<u64>,
    /// Canonical index; implies `t = 1260r + 169`.
    #[arg(long, conflicts_with = "t")]
    r: Option<u64>,
    /// Graph order; defaults to the smallest the construction allows.
    #[arg(long)]
    n: Option<u64>,
}

#[derive(Debug, Args)]
struct SourceArgs {
    #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
    plan: Option<PlanKind>,
    /// Edge-list file to check instead of a construction.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[command(flatten)]
    params: ParamArgs,
    /// Defaults to structural for plans and exact for graph files.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Also require every length to be a multiple of this.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    m_divisor: Option<u64>,
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

enum Recipe {
    T5(Params5),
    T6(Params6),
}

impl Recipe {
    fn from_args(kind: PlanKind, a: &ParamArgs) -> Result<Recipe> {
        match kind {
            PlanKind::Theorem5 => {
                if a.r.is_some() {
                    bail!("--r applies to theorem6 only");
                }
                let (Some(m), Some(k), Some(s1), Some(s2), Some(t)) = (a.m, a.k, a.s1, a.s2, a.t)
                else {
                    bail!("theorem5 needs --m, --k, --s1, --s2 and --t");
                };
                let p = Params5::new(m, k, s1, s2, t);
                Ok(Recipe::T5(match a.n {
                    Some(n) => p.with_n(n),
                    None => p,
                }))
            }
            PlanKind::Theorem6 => {
                if a.m.is_some() || a.k.is_some() || a.s1.is_some() || a.s2.is_some() {
                    bail!("--m, --k, --s1 and --s2 apply to theorem5 only");
                }
                let p = match (a.r, a.t) {
                    (Some(r), None) => Params6::from_r(r),
                    (None, Some(t)) => Params6::new(t),
                    _ => bail!("theorem6 needs exactly one of --r and --t"),
                };
                Ok(Recipe::T6(match a.n {
                    Some(n) => p.with_n(n),
                    None => p,
                }))
            }
        }
    }

    fn label(&self) -> String {
        match self {
            Recipe::T5(p) => p.label(),
            Recipe::T6(p) => p.label(),
        }
    }

    fn build(&self) -> Result<ConstructionPlan> {
        Ok(match self {
            Recipe::T5(p) => build_theorem5(p)?,
            Recipe::T6(p) => build_theorem6(p)?,
        })
    }

    fn audit(&self) -> Result<Audit> {
        Ok(match self {
            Recipe::T5(p) => audit_theorem5(p)?,
            Recipe::T6(p) => audit_theorem6(p)?,
        })
    }
}

struct Ctx {
    format: Format,
    out: Option<PathBuf>,
    header: bool,
    vertex_cap: u64,
    cycle_cap: usize,
    verbose: bool,
}

impl Ctx {
    fn sink(&self) -> Result<Sink> {
        Sink::open(self.out.as_deref(), self.format, self.header)
            .with_context(|| format!("cannot open {}", display_path(self.out.as_deref())))
    }

    fn note(&self, msg: impl AsRef<str>) {
        if self.verbose {
            eprintln!("cyclen: {}", msg.as_ref());
        }
    }
}

fn display_path(p: Option<&Path>) -> String {
    p.map_or_else(|| "stdout".into(), |p| p.display().to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("cannot configure the thread pool")?;
    }
    let ctx = Ctx {
        format: cli.format,
        out: cli.out,
        header: !cli.no_header,
        vertex_cap: cli.vertex_cap,
        cycle_cap: cli.cycle_cap,
        verbose: cli.verbose > 0,
    };
    let start = Instant::now();
    let code = match cli.command {
        Command::Construct { kind, params } => construct(&ctx, Recipe::from_args(kind, &params)?)?,
        Command::Verify(src) => verify_cmd(&ctx, &src)?,
        Command::Spectrum(src) => spectrum_cmd(&ctx, &src)?,
        Command::Audit { kind, params } => audit_cmd(&ctx, Recipe::from_args(kind, &params)?)?,
        Command::Bounds { n_from, n_to, step } => bounds_cmd(&ctx, n_from, n_to, step)?,
        Command::Optimize { budget, scale } => optimize_cmd(&ctx, budget, scale)?,
        Command::Oracle {
            n,
            m,
            n_max,
            witness,
        } => oracle_cmd(&ctx, n, m, n_max, witness.as_deref())?,
    };
    ctx.note(format!("finished in {:?}", start.elapsed()));
    Ok(code)
}

fn construct(ctx: &Ctx, recipe: Recipe) -> Result<u8> {
    let plan = recipe.build()?;
    for w in plan.warnings() {
        ctx.note(format!("warning: {w}"));
    }
    let m = materialize(&plan, ctx.vertex_cap)?;
    let mut out: Box<dyn Write> = match &ctx.out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    };
    if ctx.header {
        writeln!(out, "c cyclen {} construct", env!("CARGO_PKG_VERSION"))?;
        writeln!(out, "c plan: {}", plan.label())?;
        writeln!(out, "c blocks: {}", plan.blocks().len())?;
    }
    write_edge_list(&m.graph, &mut out)?;
    out.flush()?;
    ctx.note(format!(
        "{} vertices, {} edges",
        m.graph.vertex_count(),
        m.graph.edge_count()
    ));
    Ok(0)
}

fn load_graph(path: &Path) -> Result<Graph> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    read_edge_list(BufReader::new(file)).with_context(|| format!("cannot parse {}", path.display()))
}

/// Runs the verifier for either source; returns the report and the echoed parameters.
fn run_source(
    ctx: &Ctx,
    src: &SourceArgs,
) -> Result<(VerificationReport, Vec<(&'static str, String)>)> {
    let mut echo = Vec::new();
    let report = if let Some(path) = &src.graph {
        if src.mode == Some(Mode::Structural) {
            bail!("structural mode needs a construction; graph files are checked exactly");
        }
        let p = &src.params;
        if [p.m, p.k, p.s1, p.s2, p.t, p.r, p.n]
            .iter()
            .any(Option::is_some)
        {
            bail!("construction parameters cannot be combined with --graph");
        }
        let graph = load_graph(path)?;
        echo.push(("graph", path.display().to_string()));
        echo.push(("mode", "exact".into()));
        verify_graph(&graph, ctx.cycle_cap, src.m_divisor)?
    } else {
        let kind = src.plan.expect("clap requires --plan or --graph");
        let recipe = Recipe::from_args(kind, &src.params)?;
        let mode = match src.mode.unwrap_or(Mode::Structural) {
            Mode::Structural => VerifyMode::Structural,
            Mode::Exact => VerifyMode::Exact {
                vertex_cap: ctx.vertex_cap,
                cycle_cap: ctx.cycle_cap,
            },
        };
        echo.push(("plan", recipe.label()));
        echo.push(("mode", mode.name().into()));
        let plan = recipe.build()?;
        verify(&plan, mode, src.m_divisor)?
    };
    if let Some(m) = src.m_divisor {
        echo.push(("m_divisor", m.to_string()));
    }
    for w in &report.warnings {
        ctx.note(format!("warning: {w}"));
    }
    Ok((report, echo))
}

#[derive(Serialize)]
struct VerifySummary<'a> {
    kind: &'static str,
    label: &'a str,
    mode: &'a str,
    counts: Counts,
    cycles: usize,
    predicted: Option<usize>,
    distinct: bool,
    collisions: usize,
    all_multiples: Option<bool>,
    status: &'static str,
    summary: String,
    warnings: &'a [String],
}

#[derive(Serialize)]
struct Tagged<'a, T: Serialize> {
    kind: &'static str,
    #[serde(flatten)]
    value: &'a T,
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn verify_cmd(ctx: &Ctx, src: &SourceArgs) -> Result<u8> {
    let (report, echo) = run_source(ctx, src)?;
    let status = if report.passed() { "PASS" } else { "FAIL" };
    let mut sink = ctx.sink()?;
    sink.header("verify", &echo)?;
    sink.columns(&["field", "value"])?;
    let summary = VerifySummary {
        kind: "summary",
        label: &report.label,
        mode: report.mode,
        counts: report.counts,
        cycles: report.cycle_count(),
        predicted: report.predicted_count,
        distinct: report.distinct,
        collisions: report.collisions.len(),
        all_multiples: report.divisibility.as_ref().map(|d| d.all_multiples),
        status,
        summary: report.summary(),
        warnings: &report.warnings,
    };
    if sink.format == Format::JsonLines {
        sink.record(&[], &summary)?;
    } else {
        let mut fields = vec![
            ("label", report.label.clone()),
            ("mode", report.mode.to_string()),
            ("vertices", report.counts.vertices.to_string()),
            ("edges", report.counts.edges.to_string()),
            ("cyclomatic", report.counts.cyclomatic.to_string()),
            ("cycles", report.cycle_count().to_string()),
        ];
        if let Some(p) = report.predicted_count {
            fields.push(("predicted", p.to_string()));
        }
        fields.push(("status", status.to_string()));
        fields.push(("summary", summary.summary.clone()));
        for w in &report.warnings {
            fields.push(("warning", w.clone()));
        }
        for (k, v) in fields {
            sink.record(&[k.to_string(), csv_field(&v, sink.format)], &())?;
        }
    }
    for c in &report.collisions {
        let cells = [
            "collision".to_string(),
            format!(
                "length={} count={} blocks={}",
                c.length,
                c.count,
                join(&c.blocks, ";")
            ),
        ];
        sink.record(
            &cells,
            &Tagged {
                kind: "collision",
                value: c,
            },
        )?;
    }
    if let Some(d) = report.divisibility.as_ref().filter(|d| !d.all_multiples) {
        let cells = [
            "not_multiple".to_string(),
            format!("m={} lengths={}", d.m, join(&d.offending, ";")),
        ];
        sink.record(
            &cells,
            &Tagged {
                kind: "divisibility",
                value: d,
            },
        )?;
    }
    for mm in &report.prediction_mismatches {
        let cells = [
            "prediction_mismatch".to_string(),
            csv_field(&format!("{mm:?}"), sink.format),
        ];
        sink.record(
            &cells,
            &Tagged {
                kind: "prediction_mismatch",
                value: mm,
            },
        )?;
    }
    if let Some(audit) = &report.audit {
        write_audit_rows(&mut sink, audit)?;
    }
    sink.finish()?;
    Ok(if !report.distinct {
        2
    } else if !report.passed() {
        3
    } else {
        0
    })
}

/// Quotes a CSV value containing separators.
fn csv_field(v: &str, format: Format) -> String {
    if format == Format::Csv && (v.contains(',') || v.contains('"')) {
        format!("\"{}\"", v.replace('"', "\"\""))
    } else {
        v.to_string()
    }
}

fn spectrum_cmd(ctx: &Ctx, src: &SourceArgs) -> Result<u8> {
    let (report, echo) = run_source(ctx, src)?;
    let mut sink = ctx.sink()?;
    sink.header("spectrum", &echo)?;
    sink.columns(&["length", "count", "block"])?;
    for g in report.spectrum.grouped() {
        let cells = [
            g.length.to_string(),
            g.count.to_string(),
            join(&g.blocks, ";"),
        ];
        sink.record(&cells, &g)?;
    }
    sink.finish()?;
    Ok(0)
}

#[derive(Serialize)]
struct AuditLine {
    kind: &'static str,
    quantity: String,
    construction: String,
    claimed: String,
    difference: String,
}

fn write_audit_rows(sink: &mut Sink, audit: &Audit) -> Result<()> {
    for row in &audit.rows {
        let line = AuditLine {
            kind: "audit",
            quantity: row.quantity.clone(),
            construction: row.construction.to_string(),
            claimed: row.claimed.to_string(),
            difference: row.difference().to_string(),
        };
        let cells = [
            "audit".to_string(),
            line.quantity.clone(),
            line.construction.clone(),
            line.claimed.clone(),
            line.difference.clone(),
        ];
        sink.record(&cells, &line)?;
    }
    for f in &audit.findings {
        let cells = ["finding".to_string(), csv_field(f, sink.format)];
        sink.record(
            &cells,
            &Tagged {
                kind: "finding",
                value: &serde_json::json!({ "text": f }),
            },
        )?;
    }
    Ok(())
}

fn audit_cmd(ctx: &Ctx, recipe: Recipe) -> Result<u8> {
    let audit = recipe.audit()?;
    let mut sink = ctx.sink()?;
    sink.header("audit", &[("plan", recipe.label())])?;
    sink.columns(&["kind", "quantity", "construction", "claimed", "difference"])?;
    write_audit_rows(&mut sink, &audit)?;
    sink.finish()?;
    Ok(0)
}

#[derive(Serialize)]
struct BoundsLine {
    n: u64,
    shi_lower: Option<u64>,
    lai2017_r: Option<u64>,
    lai2017: Option<String>,
    theorem6_r: Option<u64>,
    theorem6: Option<String>,
    /// `floor` of the rational upper end of the enclosure.
    boros_upper: String,
    boros_enclosure: [String; 2],
}

fn bounds_cmd(ctx: &Ctx, n_from: u64, n_to: u64, step: u64) -> Result<u8> {
    if n_from > n_to {
        bail!("--n-from {n_from} exceeds --n-to {n_to}");
    }
    let mut sink = ctx.sink()?;
    sink.header(
        "bounds",
        &[
            ("n_from", n_from.to_string()),
            ("n_to", n_to.to_string()),
            ("step", step.to_string()),
        ],
    )?;
    sink.columns(&["n", "shi_lower", "lai2017", "theorem6", "boros_upper"])?;
    // Edge counts are integers: lower bounds round up, upper bounds down.
    let ceil =
        |b: &Option<(u64, Rational)>| b.as_ref().map(|(_, v)| v.ceil().to_integer().to_string());
    for n in (n_from..=n_to).step_by(usize::try_from(step).unwrap_or(usize::MAX)) {
        let row = bounds_row(n);
        let line = BoundsLine {
            n,
            shi_lower: row.shi_lower,
            lai2017_r: row.lai2017.as_ref().map(|b| b.0),
            lai2017: ceil(&row.lai2017),
            theorem6_r: row.theorem6.as_ref().map(|b| b.0),
            theorem6: ceil(&row.theorem6),
            boros_upper: row.boros_upper.upper.floor().to_integer().to_string(),
            boros_enclosure: [
                row.boros_upper.lower.to_string(),
                row.boros_upper.upper.to_string(),
            ],
        };
        let opt = |v: &Option<String>| v.clone().unwrap_or_default();
        let cells = [
            n.to_string(),
            row.shi_lower.map(|v| v.to_string()).unwrap_or_default(),
            opt(&line.lai2017),
            opt(&line.theorem6),
            line.boros_upper.clone(),
        ];
        sink.record(&cells, &line)?;
    }
    sink.finish()?;
    Ok(0)
}

#[derive(Serialize)]
struct OptimizeLine {
    k: u64,
    s1: u64,
    s2: u64,
    ratio: String,
    ratio_decimal: String,
    feasible: bool,
}

fn optimize_cmd(ctx: &Ctx, budget: u64, scale: u64) -> Result<u8> {
    let best = optimize_ratio(budget, scale);
    let line = OptimizeLine {
        k: best.k,
        s1: best.s1,
        s2: best.s2,
        ratio: best.ratio.to_string(),
        ratio_decimal: display12(&best.ratio),
        feasible: best.feasible,
    };
    let mut sink = ctx.sink()?;
    sink.header(
        "optimize",
        &[("budget", budget.to_string()), ("scale", scale.to_string())],
    )?;
    sink.columns(&["k", "s1", "s2", "ratio", "ratio_decimal", "feasible"])?;
    let cells = [
        line.k.to_string(),
        line.s1.to_string(),
        line.s2.to_string(),
        line.ratio.clone(),
        line.ratio_decimal.clone(),
        line.feasible.to_string(),
    ];
    sink.record(&cells, &line)?;
    sink.finish()?;
    Ok(0)
}

#[derive(Serialize)]
struct OracleLine {
    n: usize,
    m: u64,
    max_edges: usize,
    nodes: u64,
    witness: Vec<(usize, usize)>,
}

fn oracle_cmd(ctx: &Ctx, n: usize, m: u64, n_max: usize, witness: Option<&Path>) -> Result<u8> {
    if n_max > HARD_N_MAX {
        bail!("--n-max is limited to {HARD_N_MAX}");
    }
    let r = oracle_max_edges(n, m, n_max)?;
    ctx.note(format!(
        "{} search nodes in {:?}",
        r.stats.nodes, r.stats.elapsed
    ));
    if let Some(path) = witness {
        let file =
            File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
        let mut w = BufWriter::new(file);
        write_edge_list(&r.witness, &mut w)?;
        w.flush()?;
    }
    let mut sink = ctx.sink()?;
    sink.header("oracle", &[("n", n.to_string()), ("m", m.to_string())])?;
    sink.columns(&["n", "m", "max_edges"])?;
    let line = OracleLine {
        n,
        m,
        max_edges: r.max_edges,
        nodes: r.stats.nodes,
        witness: r.witness.edges().to_vec(),
    };
    let cells = [n.to_string(), m.to_string(), r.max_edges.to_string()];
    sink.record(&cells, &line)?;
    sink.finish()?;
    Ok(0)
}
