//! The `entropic` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use entropic::acceptance::{run_all, AcceptanceConfig, Budget};
use entropic::conjectures::{
    probe_alpha_independence, probe_fourier_decomposition, probe_product_states, probe_rrs_sufficiency,
    DEFAULT_THRESHOLD,
};
use entropic::entropy::{ensure_dual_pair, RenyiOrder};
use entropic::equality::{
    check_equality_state, find_equality_supports, fourier_equality_states, overlap_data, scan_shape, SupportScan,
};
use entropic::format::{fmt_sig, points_csv, round_sig, state_pairs, to_json};
use entropic::frontier::{
    combined_frontier, d2_exact_curve, min_halpha_given_hbeta, englert_curve, extremality_residual, reduce_2x2_to_rotation,
    sample_diagram, FrontierCurve, MinimizeOptions, QUBIT_CURVE_POINTS,
};
use entropic::numerics::{Strategy, C64};
use entropic::observables::{AbelianGroup, ObservablePair, UnitarySpec};

/// Failures, split by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] entropic::Error),
    #[error("selftest failed: criterion {id} ({name})")]
    Selftest { id: u8, name: &'static str },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(e) if e.is_numerical() => 2,
            CliError::Core(_) => 1,
            CliError::Selftest { .. } => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Parser, Debug)]
#[command(name = "entropic", version, about = "Entropic uncertainty diagrams and minimal-entropy curves")]
pub struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// fourier:<d>, group:<n1>x<n2>[x...], c6, example3, random:<seed>:<d> or file:<path>
    #[arg(long, global = true, default_value = "fourier:2")]
    unitary: String,
    /// Rényi order of the first measurement (decimal, a/b or inf).
    #[arg(long, global = true, default_value = "1")]
    alpha: String,
    /// Rényi order of the second measurement; defaults to the dual of alpha.
    #[arg(long, global = true)]
    beta: Option<String>,
    #[arg(long, global = true, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// haar, real, rrs, basis-mix or basis-mix:<t>
    #[arg(long, global = true, default_value = "haar")]
    strategy: String,
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Accept file-loaded matrices that fail the unitarity check.
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Largest overlap modulus and the Maassen-Uffink bound.
    Mu,
    /// Sampled entropy pairs.
    Diagram,
    /// Lower-left boundary of a sampled diagram, optionally refined by optimization.
    Frontier {
        /// Add an optimized sweep over this many target entropies.
        #[arg(long)]
        optimize: Option<usize>,
        #[arg(long, default_value_t = 16)]
        restarts: usize,
        /// Minimize the first entropy at this single value of the second.
        #[arg(long)]
        target: Option<f64>,
        /// Iteration budget per restart.
        #[arg(long, default_value_t = 10_000)]
        max_iter: usize,
    },
    /// Equality in the Maassen-Uffink bound.
    Equality {
        #[command(subcommand)]
        command: EqualityCommand,
    },
    /// Phase-stationarity residual of a state under the cyclic Fourier matrix.
    Extremality {
        #[arg(long)]
        state: String,
    },
    /// Exact curve of minimal entropies for a 2x2 unitary.
    D2 {
        #[arg(long, default_value_t = QUBIT_CURVE_POINTS)]
        points: usize,
    },
    /// The one-parameter candidate family against the cyclic Fourier matrix.
    Englert {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 1001)]
        points: usize,
    },
    /// Numerical probe of one of the four conjectures.
    Conjecture {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
        id: u8,
        /// Second factor for probe 1.
        #[arg(long)]
        unitary2: Option<String>,
        /// Factor dimensions for probe 2, e.g. 2x3.
        #[arg(long)]
        dims: Option<String>,
        /// Dimension for probe 4.
        #[arg(long)]
        dim: Option<usize>,
        /// Other dual pairs for probe 3, e.g. 3/4:3/2,2:2/3.
        #[arg(long)]
        pairs: Option<String>,
        #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
        threshold: f64,
    },
    /// Runs the acceptance suite.
    Selftest {
        /// Reduced budgets.
        #[arg(long)]
        quick: bool,
        /// Directory for archived raw results.
        #[arg(long)]
        archive: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum EqualityCommand {
    /// Searches support pairs for equality states.
    Scan {
        /// Restrict to one shape |sX|x|sY|, e.g. 3x2.
        #[arg(long)]
        shape: Option<String>,
    },
    /// Equality states of a finite abelian group's Fourier matrix.
    Fourier {
        /// Cyclic factor orders, e.g. 4 or 2x3.
        #[arg(long)]
        group: String,
    },
    /// Decides whether a state attains the bound.
    Check {
        #[arg(long)]
        state: String,
    },
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = e.print();
                return if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { 1 } else { 0 };
            }
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("invalid arguments");
            eprintln!("{line}");
            return 1;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

struct Ctx<'a> {
    c: &'a Common,
}

impl Ctx<'_> {
    fn unitary(&self) -> CliResult<ObservablePair> {
        parse_unitary(&self.c.unitary, self.c.force)
    }

    fn orders(&self) -> CliResult<(RenyiOrder, RenyiOrder)> {
        let alpha: RenyiOrder = self.c.alpha.parse()?;
        let beta = match &self.c.beta {
            Some(b) => b.parse()?,
            None => alpha.dual(),
        };
        ensure_dual_pair(alpha, beta)?;
        Ok((alpha, beta))
    }

    fn strategy(&self) -> CliResult<Strategy> {
        Ok(self.c.strategy.parse()?)
    }

    fn emit(&self, text: &str) -> CliResult<()> {
        let write = |w: &mut dyn Write| w.write_all(text.as_bytes()).and_then(|_| if text.ends_with('\n') { Ok(()) } else { w.write_all(b"\n") });
        match &self.c.out {
            Some(path) => {
                let mut f = std::fs::File::create(path).map_err(|e| entropic::Error::Io(format!("{}: {e}", path.display())))?;
                write(&mut f).map_err(|e| entropic::Error::Io(format!("{}: {e}", path.display())))?;
            }
            None => {
                let stdout = std::io::stdout();
                let mut lock = stdout.lock();
                match write(&mut lock) {
                    Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(entropic::Error::Io(e.to_string()).into()),
                    _ => {}
                }
            }
        }
        Ok(())
    }

    fn format(&self, default: Format) -> Format {
        self.c.format.unwrap_or(default)
    }
}

fn parse_unitary(text: &str, force: bool) -> CliResult<ObservablePair> {
    let spec: UnitarySpec = text.parse()?;
    Ok(spec.resolve(force)?)
}

/// A state as JSON `[[re, im], ...]` or as comma-separated real amplitudes.
pub fn parse_state(text: &str) -> CliResult<Vec<C64>> {
    let text = text.trim();
    if text.starts_with('[') {
        let pairs: Vec<[f64; 2]> = serde_json::from_str(text).map_err(|e| usage(format!("bad state: {e}")))?;
        return Ok(pairs.into_iter().map(|[re, im]| C64::new(re, im)).collect());
    }
    text.split(',')
        .map(|t| t.trim().parse::<f64>().map(|x| C64::new(x, 0.0)).map_err(|_| usage(format!("bad amplitude `{t}`"))))
        .collect()
}

fn parse_dims(text: &str) -> CliResult<Vec<usize>> {
    text.split('x')
        .map(|t| t.trim().parse::<usize>().map_err(|_| usage(format!("bad dimensions `{text}`"))))
        .collect()
}

fn parse_pairs(text: &str) -> CliResult<Vec<(RenyiOrder, RenyiOrder)>> {
    text.split(',')
        .map(|p| {
            let (a, b) = p.split_once(':').ok_or_else(|| usage(format!("bad order pair `{p}`, expected a:b")))?;
            Ok((a.parse()?, b.parse()?))
        })
        .collect()
}

fn execute(cli: &Cli) -> CliResult<()> {
    if let Some(n) = cli.common.threads {
        if n == 0 {
            return Err(usage("--threads must be at least 1"));
        }
        // Ignored if a pool already exists; results do not depend on it.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    if cli.common.samples == 0 {
        return Err(usage("--samples must be at least 1"));
    }
    let ctx = Ctx { c: &cli.common };
    match &cli.command {
        Command::Mu => mu(&ctx),
        Command::Diagram => diagram(&ctx),
        Command::Frontier {
            optimize,
            restarts,
            target,
            max_iter,
        } => frontier(&ctx, *optimize, *restarts, *target, *max_iter),
        Command::Equality { command } => match command {
            EqualityCommand::Scan { shape } => equality_scan(&ctx, shape.as_deref()),
            EqualityCommand::Fourier { group } => equality_fourier(&ctx, group),
            EqualityCommand::Check { state } => equality_check(&ctx, state),
        },
        Command::Extremality { state } => extremality(&ctx, state),
        Command::D2 { points } => d2(&ctx, *points),
        Command::Englert { dim, points } => englert(&ctx, *dim, *points),
        Command::Conjecture {
            id,
            unitary2,
            dims,
            dim,
            pairs,
            threshold,
        } => conjecture(&ctx, *id, unitary2.as_deref(), dims.as_deref(), *dim, pairs.as_deref(), *threshold),
        Command::Selftest { quick, archive } => selftest(&ctx, *quick, archive.as_ref()),
    }
}

fn mu(ctx: &Ctx) -> CliResult<()> {
    let w = ctx.unitary()?;
    let o = overlap_data(&w);
    let text = match ctx.c.format {
        Some(Format::Json) => to_json(&json!({
            "unitary": w.label(),
            "d": w.dim(),
            "c": round_sig(o.c),
            "bound_bits": round_sig(o.mu_bound_bits),
            "support_product": o.support_product(),
        })),
        Some(Format::Csv) => format!("unitary,d,c,bound_bits\n{},{},{},{}\n", w.label(), w.dim(), fmt_sig(o.c), fmt_sig(o.mu_bound_bits)),
        None => format!(
            "unitary {}\nc = {}\nbound = {} bits\n",
            w.label(),
            fmt_sig(o.c),
            format_bits(o.mu_bound_bits)
        ),
    };
    ctx.emit(&text)
}

/// Twelve significant digits, always with a decimal point.
fn format_bits(x: f64) -> String {
    let s = fmt_sig(x);
    if s.contains('.') || s.contains('e') || !x.is_finite() {
        s
    } else {
        format!("{s}.0")
    }
}

fn diagram(ctx: &Ctx) -> CliResult<()> {
    let w = ctx.unitary()?;
    let (alpha, beta) = ctx.orders()?;
    let s = sample_diagram(&w, alpha, beta, ctx.c.samples, ctx.strategy()?, ctx.c.seed)?;
    if s.meta.real_scope_warning {
        eprintln!("warning: real sampling of a complex matrix covers only part of the diagram");
    }
    let text = match ctx.format(Format::Csv) {
        Format::Csv => points_csv(&s.points),
        Format::Json => to_json(&json!({
            "meta": s.meta,
            "points": s.points.iter().map(|p| [round_sig(p.hx), round_sig(p.hy)]).collect::<Vec<_>>(),
        })),
    };
    ctx.emit(&text)
}

fn curve_output(ctx: &Ctx, curve: &FrontierCurve, alpha: RenyiOrder, beta: RenyiOrder, label: &str) -> CliResult<()> {
    let text = match ctx.format(Format::Json) {
        Format::Csv => points_csv(&curve.points),
        Format::Json => curve.to_json(alpha, beta, label),
    };
    ctx.emit(&text)
}

fn frontier(ctx: &Ctx, optimize: Option<usize>, restarts: usize, target: Option<f64>, max_iter: usize) -> CliResult<()> {
    let w = ctx.unitary()?;
    let (alpha, beta) = ctx.orders()?;
    if restarts == 0 || max_iter == 0 {
        return Err(usage("--restarts and --max-iter must be at least 1"));
    }
    let mut opts = MinimizeOptions {
        restarts,
        max_iter,
        seed: ctx.c.seed,
        cross_check_samples: 0,
        ..Default::default()
    };
    if let Some(delta) = target {
        opts.cross_check_samples = ctx.c.samples;
        if let Some(tol) = ctx.c.tol {
            opts.ctol = tol;
        }
        let m = min_halpha_given_hbeta(&w, alpha, beta, delta, &opts)?;
        let mut doc = serde_json::to_value(&m).expect("plain data serializes");
        doc["witness"] = json!(state_pairs(&m.witness));
        doc["unitary"] = json!(w.label());
        doc["alpha"] = json!(alpha);
        doc["beta"] = json!(beta);
        return ctx.emit(&to_json(&doc));
    }
    let sweep = optimize.map(|n| (n, &opts));
    let curve = combined_frontier(&w, alpha, beta, ctx.c.samples, ctx.strategy()?, ctx.c.seed, sweep)?;
    curve_output(ctx, &curve, alpha, beta, w.label())
}

fn parse_shape(text: &str) -> CliResult<(usize, usize)> {
    match parse_dims(text)?.as_slice() {
        &[a, b] => Ok((a, b)),
        _ => Err(usage(format!("bad shape `{text}`, expected AxB"))),
    }
}

fn equality_scan(ctx: &Ctx, shape: Option<&str>) -> CliResult<()> {
    let w = ctx.unitary()?;
    let tol = ctx.c.tol.unwrap_or(1e-8);
    let scan = match shape {
        Some(s) => SupportScan {
            overlap: overlap_data(&w),
            shapes: vec![scan_shape(&w, parse_shape(s)?, tol)?],
        },
        None => find_equality_supports(&w, tol)?,
    };
    let text = match ctx.c.format {
        Some(Format::Json) => to_json(&scan),
        Some(Format::Csv) => {
            let mut out = String::from("sX,sY,deficit\n");
            for h in scan.hits() {
                out.push_str(&format!("{},{},{}\n", join(&h.supports.sx), join(&h.supports.sy), fmt_sig(h.report.deficit)));
            }
            out
        }
        None => {
            let mut out = String::new();
            for h in scan.hits() {
                out.push_str(&format!(
                    "sX = {{{}}}  sY = {{{}}}  deficit {}\n",
                    h.supports.sx.iter().map(usize::to_string).collect::<Vec<_>>().join(","),
                    h.supports.sy.iter().map(usize::to_string).collect::<Vec<_>>().join(","),
                    fmt_sig(h.report.deficit)
                ));
            }
            out.push_str(&format!("{} equality supports among {} candidates\n", scan.hit_count(), scan.candidates()));
            out
        }
    };
    ctx.emit(&text)
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn equality_fourier(ctx: &Ctx, group: &str) -> CliResult<()> {
    let g = AbelianGroup::new(parse_dims(group)?)?;
    let classes = fourier_equality_states(&g)?;
    let text = match ctx.c.format {
        Some(Format::Csv) => {
            let mut out = String::from("subgroup,h_x,h_y\n");
            for c in &classes {
                out.push_str(&format!("{},{},{}\n", join(&c.subgroup.elements()), fmt_sig(c.point.hx), fmt_sig(c.point.hy)));
            }
            out
        }
        Some(Format::Json) => {
            let doc: Vec<Value> = classes
                .iter()
                .map(|c| {
                    json!({
                        "subgroup": c.subgroup.elements(),
                        "point": [round_sig(c.point.hx), round_sig(c.point.hy)],
                        "states": c.states.iter().map(|s| state_pairs(s)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            to_json(&json!({ "group": g.to_string(), "classes": doc }))
        }
        None => {
            let mut out = format!("group {} ({} subgroups)\n", g, classes.len());
            for c in &classes {
                out.push_str(&format!(
                    "L = {{{}}}  point ({}, {})  {} states\n",
                    c.subgroup.elements().iter().map(usize::to_string).collect::<Vec<_>>().join(","),
                    fmt_sig(c.point.hx),
                    fmt_sig(c.point.hy),
                    c.states.len()
                ));
            }
            out
        }
    };
    ctx.emit(&text)
}

fn equality_check(ctx: &Ctx, state: &str) -> CliResult<()> {
    let w = ctx.unitary()?;
    let (alpha, beta) = ctx.orders()?;
    let psi = parse_state(state)?;
    let report = check_equality_state(&w, &psi, alpha, beta, ctx.c.tol.unwrap_or(1e-8))?;
    ctx.emit(&to_json(&report))
}

fn extremality(ctx: &Ctx, state: &str) -> CliResult<()> {
    let (alpha, _) = ctx.orders()?;
    let psi = parse_state(state)?;
    let r = extremality_residual(&psi, alpha)?;
    let text = match ctx.format(Format::Json) {
        Format::Json => to_json(&json!({
            "alpha": alpha,
            "residual": r.r.iter().map(|&x| round_sig(x)).collect::<Vec<_>>(),
            "max_abs": round_sig(r.max_abs),
        })),
        Format::Csv => {
            let mut out = String::from("k,r\n");
            for (k, x) in r.r.iter().enumerate() {
                out.push_str(&format!("{k},{}\n", fmt_sig(*x)));
            }
            out
        }
    };
    ctx.emit(&text)
}

fn d2(ctx: &Ctx, points: usize) -> CliResult<()> {
    let w = ctx.unitary()?;
    let (alpha, beta) = ctx.orders()?;
    let phi = reduce_2x2_to_rotation(&w)?;
    let curve = d2_exact_curve(&w, alpha, beta, points)?;
    if ctx.format(Format::Json) == Format::Json {
        let mut doc: Value = serde_json::from_str(&curve.to_json(alpha, beta, w.label())).expect("valid JSON");
        doc["phi"] = json!(round_sig(phi));
        return ctx.emit(&to_json(&doc));
    }
    curve_output(ctx, &curve, alpha, beta, w.label())
}

fn englert(ctx: &Ctx, dim: usize, points: usize) -> CliResult<()> {
    let (alpha, beta) = ctx.orders()?;
    let e = englert_curve(dim, alpha, beta, points)?;
    let label = format!("englert:{dim}");
    match ctx.format(Format::Json) {
        Format::Csv => ctx.emit(&points_csv(&e.sweep.iter().map(|&(_, p)| p).collect::<Vec<_>>())),
        Format::Json => {
            let mut doc: Value = serde_json::from_str(&e.curve.to_json(alpha, beta, &label)).expect("valid JSON");
            doc["mu_equality_points"] = json!(e
                .equality_points
                .iter()
                .map(|p| [round_sig(p.hx), round_sig(p.hy)])
                .collect::<Vec<_>>());
            ctx.emit(&to_json(&doc))
        }
    }
}

fn conjecture(
    ctx: &Ctx,
    id: u8,
    unitary2: Option<&str>,
    dims: Option<&str>,
    dim: Option<usize>,
    pairs: Option<&str>,
    threshold: f64,
) -> CliResult<()> {
    let (alpha, beta) = ctx.orders()?;
    let (n, seed) = (ctx.c.samples, ctx.c.seed);
    let report = match id {
        1 => {
            let w1 = ctx.unitary()?;
            let w2 = match unitary2 {
                Some(s) => parse_unitary(s, ctx.c.force)?,
                None => w1.clone(),
            };
            probe_product_states(&w1, &w2, alpha, beta, n, seed, threshold)?
        }
        2 => {
            let d = parse_dims(dims.ok_or_else(|| usage("conjecture 2 needs --dims <d1>x<d2>"))?)?;
            let &[d1, d2] = d.as_slice() else {
                return Err(usage("--dims takes exactly two factors"));
            };
            probe_fourier_decomposition(d1, d2, alpha, beta, n, seed, threshold)?
        }
        3 => {
            let others = parse_pairs(pairs.unwrap_or("3/4:3/2"))?;
            probe_alpha_independence(&ctx.unitary()?, (alpha, beta), &others, n, seed, threshold)?
        }
        _ => {
            let d = dim.ok_or_else(|| usage("conjecture 4 needs --dim <d>"))?;
            probe_rrs_sufficiency(d, alpha, beta, n, seed, threshold)?
        }
    };
    ctx.emit(&report.to_json())
}

fn selftest(ctx: &Ctx, quick: bool, archive: Option<&PathBuf>) -> CliResult<()> {
    let config = AcceptanceConfig::new(if quick { Budget::Quick } else { Budget::Full });
    let results = run_all(&config);
    let mut out = String::new();
    for r in &results {
        out.push_str(&r.line());
        out.push('\n');
    }
    let passed = results.iter().filter(|r| r.passed).count();
    out.push_str(&format!("{passed}/{} criteria passed\n", results.len()));
    if let Some(dir) = archive {
        std::fs::create_dir_all(dir).map_err(|e| entropic::Error::Io(format!("{}: {e}", dir.display())))?;
        let path = dir.join("selftest.json");
        std::fs::write(&path, to_json(&results)).map_err(|e| entropic::Error::Io(format!("{}: {e}", path.display())))?;
    }
    ctx.emit(&out)?;
    match results.iter().find(|r| !r.passed) {
        Some(r) => Err(CliError::Selftest { id: r.id, name: r.name }),
        None => Ok(()),
    }
}
