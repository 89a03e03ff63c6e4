//! `hartop`: basis enumeration, symbol algebra, finite-section export,
//! and the verification suite, with machine-readable reports.
//!
//! Exit codes: 0 all requested work succeeded (and every check
//! passed), 1 a verification check failed, 2 usage or input error,
//! 3 output I/O failure.

use clap::{Args, Parser, Subcommand};
use hartop::coeff::{coeff, rat_from_str, rat_int, rat_to_string, Coeff};
use hartop::lattice::{enumerate_window, to_polydisc, HardyKind, MultiIndex, SpaceKind};
use hartop::numerics::{self, ExportFormat};
use hartop::operators::{OperatorExpr, WindowMatrix};
use hartop::symbol::LaurentSymbol;
use hartop::verify::{run_selected, CheckReport, SuiteConfig, CHECK_NAMES};
use hartop::{Error, Result};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "hartop", version, about = "Exact Hardy-space operators on the Hartogs triangle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List window basis exponents with their polydisc images
    Basis(BasisArgs),
    /// Symbol algebra on serialized Laurent polynomials
    Symbol(SymbolArgs),
    /// Export a Toeplitz window compression
    Matrix(MatrixArgs),
    /// Run verification checks
    Verify(VerifyArgs),
}

#[derive(Args)]
struct BasisArgs {
    /// Dimension (at least 2)
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Hardy space: triangle or polydisc
    #[arg(long, default_value = "triangle")]
    space: String,
    /// Window bounds m1,m2,...,mn
    #[arg(long)]
    window: Option<String>,
}

#[derive(Args)]
struct SymbolArgs {
    /// One of: add, mul, conj, pushforward, pullback, classify
    op: String,
    /// Input symbol files
    files: Vec<PathBuf>,
    /// Write the result here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MatrixArgs {
    /// Input symbol file
    file: PathBuf,
    /// Cross-check dimension against the file
    #[arg(long)]
    n: Option<usize>,
    /// Hardy space: triangle or polydisc
    #[arg(long, default_value = "triangle")]
    space: String,
    /// Window bounds m1,m2,...,mn
    #[arg(long)]
    window: Option<String>,
    /// Output format: mm (MatrixMarket) or csv
    #[arg(long, default_value = "mm")]
    format: String,
    /// Emit exact rational entries
    #[arg(long, conflicts_with = "float")]
    exact: bool,
    /// Emit correctly rounded double entries (default)
    #[arg(long)]
    float: bool,
    /// Output file; a ".labels" sidecar is written next to it
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Check name from the roster, or "all"
    #[arg(default_value = "all")]
    check: String,
    /// Dimension (at least 2)
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Window bounds m1,m2,...,mn (default 6,6 at n=2, else 4 per coordinate)
    #[arg(long)]
    window: Option<String>,
    /// Seed for randomized trials
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Number of randomized trials per randomized check
    #[arg(long, default_value_t = 100)]
    trials: u32,
    /// Shift depth for power checks
    #[arg(long, default_value_t = 5)]
    kmax: u32,
    /// Geometric ratio for the left-inverse family, "re" or "re,im" rationals
    #[arg(long, default_value = "1/2")]
    lambda: String,
    /// Exponent for the left-inverse family, g1,g2,...,gn
    #[arg(long)]
    gamma: Option<String>,
    /// Largest truncation order for the left-inverse family
    #[arg(long, default_value_t = 8)]
    order: u32,
    /// Report format: text or json
    #[arg(long, default_value = "text")]
    format: String,
    /// Deterministic output: declaration order, no timestamp field
    #[arg(long)]
    deterministic: bool,
    /// Write reports here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = Cli::parse();
    if let Ok(threads) = std::env::var("HARTOP_THREADS") {
        let parsed: std::result::Result<usize, _> = threads.parse();
        match parsed {
            Ok(t) if t >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
            }
            _ => {
                eprintln!("error: HARTOP_THREADS must be a positive integer");
                return 2;
            }
        }
    }
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for_error(&e)
        }
    }
}

fn exit_code_for_error(e: &Error) -> i32 {
    match e {
        Error::Io(_) => 3,
        _ => 2,
    }
}

fn exit_code_for_reports(reports: &[CheckReport]) -> i32 {
    if reports.iter().all(|r| r.passed()) {
        0
    } else {
        1
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Basis(args) => cmd_basis(args),
        Command::Symbol(args) => cmd_symbol(args),
        Command::Matrix(args) => cmd_matrix(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn parse_space(name: &str, n: usize) -> Result<SpaceKind> {
    match name {
        "triangle" => SpaceKind::triangle(n),
        "polydisc" => SpaceKind::polydisc(n),
        other => Err(Error::Domain(format!(
            "unknown space {other:?}, expected triangle or polydisc"
        ))),
    }
}

fn parse_index(text: &str, n: usize, what: &str) -> Result<MultiIndex> {
    let entries: std::result::Result<Vec<i64>, _> =
        text.split(',').map(|t| t.trim().parse()).collect();
    let entries =
        entries.map_err(|_| Error::Domain(format!("{what} must be comma-separated integers")))?;
    if entries.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: entries.len(),
        });
    }
    MultiIndex::new(entries)
}

fn parse_window(text: Option<&str>, n: usize) -> Result<MultiIndex> {
    let m = match text {
        Some(t) => parse_index(t, n, "window")?,
        None => MultiIndex::new(vec![if n == 2 { 6 } else { 4 }; n])?,
    };
    if !m.is_nonnegative() {
        return Err(Error::Domain("window bounds must be nonnegative".to_string()));
    }
    Ok(m)
}

fn parse_lambda(text: &str) -> Result<Coeff> {
    let mut parts = text.splitn(2, ',');
    let re = rat_from_str(parts.next().unwrap_or("0").trim())?;
    let im = match parts.next() {
        Some(t) => rat_from_str(t.trim())?,
        None => rat_int(0),
    };
    Ok(coeff(re, im))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_basis(args: BasisArgs) -> Result<i32> {
    let space = parse_space(&args.space, args.n)?;
    let m = parse_window(args.window.as_deref(), args.n)?;
    let mut out = String::new();
    for alpha in enumerate_window(&m, space)? {
        match space.kind() {
            HardyKind::Triangle => {
                let _ = writeln!(out, "{alpha} -> {}", to_polydisc(&alpha)?);
            }
            HardyKind::Polydisc => {
                let _ = writeln!(out, "{alpha}");
            }
        }
    }
    print!("{out}");
    Ok(0)
}

fn read_symbol(path: &Path) -> Result<LaurentSymbol> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
    LaurentSymbol::parse(&text)
}

fn cmd_symbol(args: SymbolArgs) -> Result<i32> {
    let arity = match args.op.as_str() {
        "add" | "mul" => 2,
        "conj" | "pushforward" | "pullback" | "classify" => 1,
        other => return Err(Error::Domain(format!("unknown symbol operation {other:?}"))),
    };
    if args.files.len() != arity {
        return Err(Error::Domain(format!(
            "operation {} takes {arity} file(s), got {}",
            args.op,
            args.files.len()
        )));
    }
    let first = read_symbol(&args.files[0])?;
    let text = match args.op.as_str() {
        "add" => format!("{}\n", first.add(&read_symbol(&args.files[1])?)?.serialize()),
        "mul" => format!(
            "{}\n",
            first.multiply(&read_symbol(&args.files[1])?)?.serialize()
        ),
        "conj" => format!("{}\n", first.conjugate().serialize()),
        "pushforward" => format!("{}\n", first.pushforward().serialize()),
        "pullback" => format!("{}\n", first.pullback().serialize()),
        "classify" => {
            let class = first.classify();
            format!(
                "polydisc_analytic={} triangle_analytic={} triangle_hardy={} inner_monomial={}\n",
                class.polydisc_analytic,
                class.triangle_analytic,
                class.triangle_hardy,
                class.inner_monomial
            )
        }
        _ => unreachable!("arity check covers the operation set"),
    };
    emit(&text, args.out.as_deref())?;
    Ok(0)
}

/// Exact variants of the two export bodies, with rational literals in
/// place of doubles; the layout matches the float renderings line for
/// line.
fn render_exact(matrix: &WindowMatrix, format: ExportFormat) -> String {
    let mut out = String::new();
    let dim = matrix.dim();
    match format {
        ExportFormat::MatrixMarket => {
            out.push_str("%%MatrixMarket matrix coordinate complex general\n");
            let nonzeros: Vec<(usize, usize)> = (0..dim)
                .flat_map(|r| (0..dim).map(move |c| (r, c)))
                .filter(|&(r, c)| !hartop::coeff::coeff_is_zero(matrix.entry(r, c)))
                .collect();
            let _ = writeln!(out, "{dim} {dim} {}", nonzeros.len());
            for (r, c) in nonzeros {
                let e = matrix.entry(r, c);
                let _ = writeln!(
                    out,
                    "{} {} {} {}",
                    r + 1,
                    c + 1,
                    rat_to_string(&e.re),
                    rat_to_string(&e.im)
                );
            }
        }
        ExportFormat::Csv => {
            for r in 0..dim {
                let line: Vec<String> = (0..dim)
                    .map(|c| {
                        let e = matrix.entry(r, c);
                        let im = rat_to_string(&e.im);
                        let sign = if im.starts_with('-') { "" } else { "+" };
                        format!("{}{}{}i", rat_to_string(&e.re), sign, im)
                    })
                    .collect();
                let _ = writeln!(out, "{}", line.join(","));
            }
        }
    }
    out
}

fn cmd_matrix(args: MatrixArgs) -> Result<i32> {
    let symbol = read_symbol(&args.file)?;
    let n = symbol.n();
    if let Some(expected) = args.n {
        if expected != n {
            return Err(Error::DimensionMismatch { expected, got: n });
        }
    }
    let space = parse_space(&args.space, n)?;
    let m = parse_window(args.window.as_deref(), n)?;
    let format = match args.format.as_str() {
        "mm" | "matrixmarket" => ExportFormat::MatrixMarket,
        "csv" => ExportFormat::Csv,
        other => {
            return Err(Error::Domain(format!(
                "unknown matrix format {other:?}, expected mm or csv"
            )))
        }
    };
    let expr = OperatorExpr::toeplitz(symbol, space)?;
    if args.exact {
        let exact = expr.window_matrix(&m)?;
        std::fs::write(&args.out, render_exact(&exact, format))?;
        let mut sidecar = args.out.as_os_str().to_owned();
        sidecar.push(".labels");
        let mut labels = String::new();
        for (i, label) in exact.labels().iter().enumerate() {
            let _ = writeln!(labels, "{}: {label}", i + 1);
        }
        std::fs::write(&sidecar, labels)?;
    } else {
        let dense = numerics::to_float_matrix(&expr, &m)?;
        if dense.has_overflow() {
            eprintln!("warning: entries outside double range were recorded as infinities");
        }
        numerics::export(&dense, format, &args.out)?;
    }
    Ok(0)
}

fn render_reports(reports: &[CheckReport], format: &str, deterministic: bool) -> Result<String> {
    let mut out = String::new();
    match format {
        "json" => {
            for report in reports {
                if deterministic {
                    let _ = writeln!(out, "{}", report.to_json());
                } else {
                    let mut value: serde_json::Value = serde_json::from_str(&report.to_json())
                        .expect("reports serialize to valid JSON");
                    let stamp = std::time::SystemTime::now()
                        .duration_since(std::time::UNIX_EPOCH)
                        .map(|d| d.as_secs())
                        .unwrap_or(0);
                    value["timestamp"] = serde_json::json!(stamp);
                    let _ = writeln!(out, "{value}");
                }
            }
        }
        "text" => {
            for report in reports {
                let _ = writeln!(out, "{report}");
            }
        }
        other => {
            return Err(Error::Domain(format!(
                "unknown report format {other:?}, expected text or json"
            )))
        }
    }
    Ok(out)
}

fn cmd_verify(args: VerifyArgs) -> Result<i32> {
    let mut config = SuiteConfig::new(args.n)?;
    config.window = parse_window(args.window.as_deref(), args.n)?;
    config.seed = args.seed;
    if args.trials < 1 {
        return Err(Error::Domain("trials must be at least 1".to_string()));
    }
    config.trials = args.trials;
    config.kmax = args.kmax;
    config.lambda = parse_lambda(&args.lambda)?;
    if let Some(gamma) = args.gamma.as_deref() {
        config.gamma = parse_index(gamma, args.n, "gamma")?;
    }
    config.order = args.order;
    let names: Vec<&str> = if args.check == "all" {
        CHECK_NAMES.to_vec()
    } else {
        vec![args.check.as_str()]
    };
    let reports = run_selected(&config, &names)?;
    let text = render_reports(&reports, &args.format, args.deterministic)?;
    emit(&text, args.out.as_deref())?;
    Ok(exit_code_for_reports(&reports))
}
