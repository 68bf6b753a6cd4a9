//! `hermite`: coefficient tables, Taylor operators, spectral analysis, mask
//! factorization, Hermite subdivision and remainder checks.
//!
//! Exit codes: 0 success, 1 property checked and false, 2 input error,
//! 3 mathematical hypothesis violated.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use hermite_core::algebra::{format_rational, Rational};
use hermite_core::combinatorics::{gregory_g, p_cauchy, stirling1_signed, stirling1_unsigned, stirling2};
use hermite_core::factorization::{factor_chain, factor_order, verify, FactorizationResult, Method};
use hermite_core::format::{mask_from_json, mask_to_json, seq_from_json, seq_to_json, system_from_json, system_to_json};
use hermite_core::operators::{augmented_taylor, taylor, TaylorVariant};
use hermite_core::remainder::{interpret_check, AnalyticFn};
use hermite_core::spectral::{mask_construct, mask_construct_with, spectral_check, spectral_poly, spectral_solve};
use hermite_core::subdivision::{hermite_iterate, step_scaled};
use hermite_core::Error;

#[derive(Parser)]
#[command(name = "hermite", version, about = "Exact Taylor-operator factorizations of Hermite subdivision masks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stirling numbers, G_n^k and p-Cauchy numbers.
    #[command(subcommand)]
    Coeffs(CoeffsCmd),
    /// Print Taylor operators.
    #[command(subcommand)]
    Op(OpCmd),
    /// Check or solve spectral conditions.
    #[command(subcommand)]
    Spectral(SpectralCmd),
    /// Factor a mask through the augmented Taylor operator.
    Factor(FactorArgs),
    /// Iterate the Hermite scheme.
    Subdivide(SubdivideArgs),
    /// Compare augmented Taylor output with remainder terms.
    #[command(subcommand)]
    Remainder(RemainderCmd),
    /// Generate masks.
    #[command(subcommand)]
    Mask(MaskCmd),
}

#[derive(Subcommand)]
enum CoeffsCmd {
    /// G_n^k: a single value with --n/--k, or a table with --n-max/--k-max.
    Gregory(GregoryArgs),
    /// Stirling numbers of the first or second kind.
    Stirling(StirlingArgs),
    /// p-Cauchy numbers C_{n,p} = n! (p+1)! G_n^{p+1}.
    Pcauchy(PcauchyArgs),
}

#[derive(Args)]
struct GregoryArgs {
    #[arg(long, requires = "k")]
    n: Option<usize>,
    #[arg(long, requires = "n")]
    k: Option<usize>,
    #[arg(long, default_value_t = 6)]
    n_max: usize,
    #[arg(long, default_value_t = 4)]
    k_max: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum StirlingKind {
    First,
    FirstSigned,
    Second,
}

#[derive(Args)]
struct StirlingArgs {
    #[arg(long, value_enum, default_value = "second")]
    kind: StirlingKind,
    #[arg(long, requires = "m")]
    n: Option<usize>,
    #[arg(long, requires = "n")]
    m: Option<usize>,
    #[arg(long, default_value_t = 8)]
    n_max: usize,
}

#[derive(Args)]
struct PcauchyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: usize,
}

#[derive(Subcommand)]
enum OpCmd {
    Taylor(TaylorArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Incomplete,
    Complete,
    Prime,
    Augmented,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpFormat {
    Delta,
    Symbol,
}

#[derive(Args)]
struct TaylorArgs {
    #[arg(long)]
    d: usize,
    /// Order of the augmented operator.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum)]
    variant: Variant,
    #[arg(long, value_enum, default_value = "delta")]
    format: OpFormat,
}

#[derive(Subcommand)]
enum SpectralCmd {
    /// Per-order report of the spectral condition.
    Check(SpectralCheckArgs),
    /// Solve for spectral polynomials up to an order.
    Solve(SpectralSolveArgs),
}

#[derive(Args)]
struct SpectralCheckArgs {
    #[arg(long)]
    mask: PathBuf,
    #[arg(long)]
    order: usize,
    /// Check these polynomials instead of solving for them.
    #[arg(long)]
    system: Option<PathBuf>,
}

#[derive(Args)]
struct SpectralSolveArgs {
    #[arg(long)]
    mask: PathBuf,
    #[arg(long)]
    order: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Direct,
    Chain,
}

#[derive(Args)]
struct FactorArgs {
    #[arg(long)]
    mask: PathBuf,
    #[arg(long)]
    order: usize,
    #[arg(long, value_enum, default_value = "direct")]
    method: MethodArg,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Re-read the emitted mask and re-check the factorization identity.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct SubdivideArgs {
    #[arg(long)]
    mask: PathBuf,
    #[arg(long)]
    data: PathBuf,
    #[arg(long)]
    levels: usize,
    /// Scale entry k by 2^(-k·levels), giving the stationary iterate.
    #[arg(long)]
    normalized: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum RemainderCmd {
    Check(RemainderArgs),
}

#[derive(Args)]
struct RemainderArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    n: usize,
    /// exp, sin, or poly:c0,c1,... (ascending coefficients).
    #[arg(long)]
    function: String,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    x0: f64,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Subcommand)]
enum MaskCmd {
    Construct(ConstructArgs),
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    order: usize,
    /// Inclusive support LO:HI.
    #[arg(long, allow_hyphen_values = true)]
    support: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Pick free parameters at random from this seed instead of zero.
    #[arg(long)]
    seed: Option<u64>,
}

/// Failure with its exit code.
enum Failure {
    Input(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_hypothesis_violation() {
            Failure::Math(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type CmdResult = Result<bool, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn coeffs(cmd: CoeffsCmd) -> CmdResult {
    match cmd {
        CoeffsCmd::Gregory(a) => {
            if let (Some(n), Some(k)) = (a.n, a.k) {
                if k == 0 {
                    return Err(Failure::Input("k must be at least 1".into()));
                }
                println!("{}", format_rational(&gregory_g(n, k)));
            } else {
                let header: Vec<String> = (1..=a.k_max).map(|k| format!("k={k}")).collect();
                println!("n\t{}", header.join("\t"));
                for n in 0..=a.n_max {
                    let row: Vec<String> =
                        (1..=a.k_max).map(|k| format_rational(&gregory_g(n, k))).collect();
                    println!("{n}\t{}", row.join("\t"));
                }
            }
        }
        CoeffsCmd::Stirling(a) => {
            let value = |n, m| match a.kind {
                StirlingKind::First => stirling1_unsigned(n, m),
                StirlingKind::FirstSigned => stirling1_signed(n, m),
                StirlingKind::Second => stirling2(n, m),
            };
            if let (Some(n), Some(m)) = (a.n, a.m) {
                println!("{}", value(n, m));
            } else {
                let header: Vec<String> = (0..=a.n_max).map(|m| format!("m={m}")).collect();
                println!("n\t{}", header.join("\t"));
                for n in 0..=a.n_max {
                    let row: Vec<String> = (0..=a.n_max).map(|m| value(n, m).to_string()).collect();
                    println!("{n}\t{}", row.join("\t"));
                }
            }
        }
        CoeffsCmd::Pcauchy(a) => println!("{}", format_rational(&p_cauchy(a.n, a.p))),
    }
    Ok(true)
}

fn op_taylor(a: TaylorArgs) -> CmdResult {
    let op = match a.variant {
        Variant::Incomplete => taylor(a.d, TaylorVariant::Incomplete),
        Variant::Complete => taylor(a.d, TaylorVariant::Complete),
        Variant::Prime => taylor(a.d, TaylorVariant::Prime),
        Variant::Augmented => {
            let n = a
                .n
                .ok_or_else(|| Failure::Input("--n is required for the augmented variant".into()))?;
            augmented_taylor(a.d, n)?
        }
    };
    let text = match a.format {
        OpFormat::Delta => op
            .format_delta()
            .ok_or_else(|| Failure::Input("operator has no Δ form".into()))?,
        OpFormat::Symbol => op.format_symbol(),
    };
    println!("{text}");
    Ok(true)
}

fn spectral(cmd: SpectralCmd) -> CmdResult {
    match cmd {
        SpectralCmd::Check(a) => {
            let mask = mask_from_json(&read(&a.mask)?)?;
            println!("k\tholds\tp_k");
            let mut all = true;
            if let Some(path) = a.system {
                let sys = system_from_json(&read(&path)?)?;
                if sys.order() < a.order {
                    return Err(Failure::Input(format!(
                        "system has order {}, requested {}",
                        sys.order(),
                        a.order
                    )));
                }
                let report = spectral_check(&mask, &sys)?;
                for (k, (holds, p)) in report.iter().zip(sys.polys()).take(a.order + 1).enumerate() {
                    println!("{k}\t{holds}\t{p}");
                    all &= holds;
                }
            } else {
                for k in 0..=a.order {
                    match spectral_poly(&mask, k)? {
                        Some(p) => println!("{k}\ttrue\t{p}"),
                        None => {
                            println!("{k}\tfalse\t-");
                            all = false;
                        }
                    }
                }
            }
            Ok(all)
        }
        SpectralCmd::Solve(a) => {
            let mask = mask_from_json(&read(&a.mask)?)?;
            let outcome = spectral_solve(&mask, a.order)?;
            println!("k\tp_k");
            if let Some(sys) = &outcome.system {
                for (k, p) in sys.polys().iter().enumerate() {
                    println!("{k}\t{p}");
                }
                if let Some(out) = &a.out {
                    write(out, &system_to_json(sys))?;
                }
            }
            if let Some(k) = outcome.failed_at {
                eprintln!("spectral condition fails at order {k}");
            }
            Ok(outcome.failed_at.is_none())
        }
    }
}

fn factor(a: FactorArgs) -> CmdResult {
    let mask = mask_from_json(&read(&a.mask)?)?;
    if a.order < mask.d() {
        return Err(Failure::Input(format!(
            "order {} is below d = {}",
            a.order,
            mask.d()
        )));
    }
    let results: Vec<FactorizationResult> = match a.method {
        MethodArg::Direct => vec![factor_order(&mask, a.order, Method::Direct)?],
        MethodArg::Chain => factor_chain(&mask, a.order)?,
    };
    println!("order\tverified\tdim_E1\tdim_E2\tsupport");
    for r in &results {
        let support = r
            .factor
            .support()
            .map_or_else(|| "-".to_string(), |(lo, hi)| format!("{lo}:{hi}"));
        println!(
            "{}\t{}\t{}\t{}\t{support}",
            r.order,
            r.verified,
            r.eigen_1.len(),
            r.eigen_2.len()
        );
    }
    let last = results.last().expect("at least one result");
    let text = mask_to_json(&last.factor);
    emit(a.out.as_deref(), &text)?;
    if a.verify {
        let reread = match &a.out {
            Some(p) => mask_from_json(&read(p)?)?,
            None => mask_from_json(&text)?,
        };
        if !verify(&mask, &reread, &last.op, last.order)? {
            return Err(Failure::Math(format!(
                "emitted factor fails the identity at order {}",
                last.order
            )));
        }
    }
    if results.iter().any(|r| !r.verified) {
        return Err(Failure::Math("factorization identity does not hold".into()));
    }
    Ok(true)
}

fn subdivide(a: SubdivideArgs) -> CmdResult {
    let mask = mask_from_json(&read(&a.mask)?)?;
    let data = seq_from_json(&read(&a.data)?)?;
    let mut out = hermite_iterate(&mask, &data, a.levels)?;
    if a.normalized {
        out = step_scaled(&out, a.levels)?;
    }
    emit(a.out.as_deref(), &seq_to_json(&out))?;
    Ok(true)
}

fn remainder(cmd: RemainderCmd) -> CmdResult {
    let RemainderCmd::Check(a) = cmd;
    if a.tol.is_nan() || a.tol <= 0.0 {
        return Err(Failure::Input(format!("tolerance must be positive, got {}", a.tol)));
    }
    let f: AnalyticFn = a.function.parse()?;
    let report = interpret_check(&f, a.d, a.n, a.x0, a.tol)?;
    println!("row\toperator\tremainder\tdiscrepancy");
    for r in &report.rows {
        println!(
            "{}\t{:.15e}\t{:.15e}\t{:.3e}",
            r.row, r.operator_value, r.remainder_value, r.discrepancy
        );
    }
    Ok(report.max_discrepancy() <= 10.0 * a.tol)
}

fn parse_support(s: &str) -> Result<(i64, i64), Failure> {
    let bad = || Failure::Input(format!("support must be LO:HI, got {s:?}"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if hi < lo {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn mask_cmd(cmd: MaskCmd) -> CmdResult {
    let MaskCmd::Construct(a) = cmd;
    if a.d == 0 {
        return Err(Failure::Input("d must be at least 1".into()));
    }
    let (lo, hi) = parse_support(&a.support)?;
    let mask = match a.seed {
        None => mask_construct(a.d, a.order, lo, hi)?,
        Some(seed) => {
            let mut rng = StdRng::seed_from_u64(seed);
            mask_construct_with(a.d, a.order, lo, hi, &mut || {
                Rational::new(rng.gen_range(-8i64..=8).into(), rng.gen_range(1i64..=8).into())
            })?
        }
    };
    emit(a.out.as_deref(), &mask_to_json(&mask))?;
    Ok(true)
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Coeffs(c) => coeffs(c),
        Command::Op(OpCmd::Taylor(a)) => op_taylor(a),
        Command::Spectral(c) => spectral(c),
        Command::Factor(a) => factor(a),
        Command::Subdivide(a) => subdivide(a),
        Command::Remainder(c) => remainder(c),
        Command::Mask(c) => mask_cmd(c),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
