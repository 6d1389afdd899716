use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use polya::closed_forms::{rect_center_torsion, rect_f, rect_lambda1, rect_torsion};
use polya::geometry::{Rectangle, Triangle};
use polya::harness::{replay_all, replay_case_with, sweep_with, write_csv, Config, SweepGrid, Verdict};
use polya::pde_oracle::{spectral, Shape};
use polya::polycert::{build_lemma_polynomial, certify_nonpositive, parse_rational, LemmaName, RationalPoly};
use polya::Error;

#[derive(Parser)]
#[command(name = "polya-verify", version, about = "Torsion-eigenvalue product checks for triangles and rectangles")]
struct Cli {
    /// TOML file overriding run parameters.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// lambda_1, T, max u and F for one shape, as JSON.
    Compute(ComputeArgs),
    /// Oracle sweep over the reference chart, written as CSV.
    Sweep(SweepArgs),
    /// Certify P <= 0 on (0, dx] for a polynomial given as JSON coefficients.
    Certify(CertifyArgs),
    /// Replay the case analysis.
    Replay(ReplayArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeKind {
    Triangle,
    Rect,
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(long, value_enum)]
    shape: ShapeKind,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    /// Finest FEM level.
    #[arg(long)]
    level: Option<u32>,
    /// Series terms for rectangles.
    #[arg(long)]
    terms: Option<usize>,
    /// Also run the FEM oracle on a rectangle.
    #[arg(long)]
    fem: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Grid size as NAxNB.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    bmin: Option<f64>,
    #[arg(long)]
    bmax: Option<f64>,
    #[arg(long)]
    level: Option<u32>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "source")]
struct PolySource {
    /// JSON array of "p/q" coefficients, constant term first.
    #[arg(long)]
    poly: Option<PathBuf>,
    /// One of the built-in lemma polynomials.
    #[arg(long)]
    lemma: Option<String>,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    source: PolySource,
    /// Right end of the interval, e.g. 285/1000.
    #[arg(long)]
    dx: Option<String>,
    #[arg(long, default_value_t = polya::polycert::DEFAULT_MAX_DEPTH)]
    depth: u32,
    /// Write the certificate here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "which")]
struct CaseSelect {
    #[arg(long)]
    case: Option<String>,
    #[arg(long)]
    all: bool,
}

#[derive(Args)]
struct ReplayArgs {
    #[command(flatten)]
    which: CaseSelect,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::DepthExhausted(w) = &e {
                eprintln!(
                    "witness: ({}, {}] reduced constant {}{}",
                    w.lo,
                    w.hi,
                    w.reduced_constant,
                    if w.positive_at_left_end { ", positive at the left end" } else { "" }
                );
                return ExitCode::from(2);
            }
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> polya::Result<ExitCode> {
    let cfg = match &cli.config {
        Some(p) => Config::from_file(p)?,
        None => Config::default(),
    };
    match cli.cmd {
        Cmd::Compute(args) => compute(args, &cfg),
        Cmd::Sweep(args) => sweep(args, cfg),
        Cmd::Certify(args) => certify(args),
        Cmd::Replay(args) => replay(args, &cfg),
    }
}

fn emit(value: &serde_json::Value, out: Option<&PathBuf>) -> polya::Result<()> {
    match out {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            serde_json::to_writer_pretty(&mut w, value)?;
            writeln!(w)?;
        }
        None => {
            let mut w = io::stdout().lock();
            serde_json::to_writer_pretty(&mut w, value)?;
            writeln!(w)?;
        }
    }
    Ok(())
}

fn compute(args: ComputeArgs, cfg: &Config) -> polya::Result<ExitCode> {
    let level = args.level.unwrap_or(cfg.level);
    let terms = args.terms.unwrap_or(cfg.terms);
    let value = match args.shape {
        ShapeKind::Triangle => {
            let t = Triangle::new(args.a, args.b)?;
            let class = t.classify()?;
            let r = spectral(&Shape::Triangle(t), level)?;
            json!({
                "shape": "triangle",
                "a": args.a,
                "b": args.b,
                "class": class.to_string(),
                "level": level,
                "lambda1": r.lambda1,
                "T": r.torsion,
                "torsion_max": r.torsion_max,
                "F": r.f,
                "error_gauge": r.error_gauge,
            })
        }
        ShapeKind::Rect => {
            let rect = Rectangle::new(args.a, args.b)?;
            let t = rect_torsion(&rect, terms)?;
            let f = rect_f(&rect, terms)?;
            let mut v = json!({
                "shape": "rect",
                "a": args.a,
                "b": args.b,
                "terms": terms,
                "lambda1": rect_lambda1(&rect),
                "T": t.value,
                "T_tail_bound": t.tail_bound,
                "torsion_max": rect_center_torsion(&rect, terms)?.value,
                "F": f.value,
                "F_tail_bound": f.tail_bound,
            });
            if args.fem {
                let r = spectral(&Shape::Rectangle(rect), level)?;
                v["fem"] = json!({"level": level, "lambda1": r.lambda1, "T": r.torsion, "F": r.f, "error_gauge": r.error_gauge});
            }
            v
        }
    };
    emit(&value, None)?;
    Ok(ExitCode::SUCCESS)
}

fn parse_grid(s: &str) -> polya::Result<(usize, usize)> {
    let bad = || Error::Parse(format!("grid `{s}` is not of the form NAxNB"));
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn sweep(args: SweepArgs, mut cfg: Config) -> polya::Result<ExitCode> {
    if let Some(g) = &args.grid {
        (cfg.na, cfg.nb) = parse_grid(g)?;
    }
    cfg.b_min = args.bmin.unwrap_or(cfg.b_min);
    cfg.b_max = args.bmax.unwrap_or(cfg.b_max);
    cfg.level = args.level.unwrap_or(cfg.level);
    let rows = sweep_with(&SweepGrid::from_config(&cfg), &cfg)?;
    write_csv(&rows, BufWriter::new(File::create(&args.out)?))?;
    let failed = rows.iter().filter(|r| r.error.is_some()).count();
    let violations = rows.iter().filter(|r| !r.bound_violations(1e-3).is_empty()).count();
    eprintln!(
        "{} rows written to {}; {failed} oracle failures, {violations} rows with bound violations beyond 1e-3",
        rows.len(),
        args.out.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn certify(args: CertifyArgs) -> polya::Result<ExitCode> {
    let (poly, default_dx) = match (&args.source.poly, &args.source.lemma) {
        (Some(path), _) => (RationalPoly::from_json(&std::fs::read_to_string(path)?)?, None),
        (None, Some(name)) => {
            let n: LemmaName = name.parse()?;
            (build_lemma_polynomial(n), n.target_dx())
        }
        (None, None) => unreachable!("clap requires a source"),
    };
    let dx = match (&args.dx, default_dx) {
        (Some(s), _) => parse_rational(s)?,
        (None, Some(d)) => d,
        (None, None) => return Err(Error::Parse("--dx is required for this polynomial".into())),
    };
    let cert = certify_nonpositive(&poly, &dx, args.depth)?;
    eprintln!("certified on (0, {dx}] with {} pieces, depth {}", cert.pieces.len(), cert.depth);
    emit(&cert.to_json(), args.out.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

fn replay(args: ReplayArgs, cfg: &Config) -> polya::Result<ExitCode> {
    let reports = match &args.which.case {
        Some(id) => vec![replay_case_with(id, cfg)?],
        None => replay_all(cfg)?,
    };
    for r in &reports {
        eprintln!("{:<20} {:?}", r.case_id, r.verdict);
    }
    emit(&serde_json::to_value(&reports)?, args.out.as_ref())?;
    Ok(if reports.iter().any(|r| r.verdict == Verdict::Failed) {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    })
}
