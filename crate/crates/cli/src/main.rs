//! Command-line front end: every library operation behind one subcommand,
//! with CSV or JSON emission to stdout or a file.
//!
//! Exit codes: 0 success, 1 runtime failure (precision shortfall, domain
//! error), 2 usage error. Output for fixed flags is deterministic; the
//! thread count never changes results.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;
use weyl_lab::counting::{
    count_direct, count_lattice, error_series, fit_error_series, radial_check,
};
use weyl_lab::exact::Rational;
use weyl_lab::lowrank::{
    exponent_pair_calc, psi_majorants, r3_average_fit, so2_count, so3_count, sonin_sum,
    t_split, ExponentPair,
};
use weyl_lab::modular::{mean_square_stat, partial_sum_stat, theta_coeffs};
use weyl_lab::poly::MultiPoly;
use weyl_lab::shells::{
    average_compare, equidist_error, jump_check, r4_extremal_ratio, rep_table,
    shell_sum_form, shell_sums, Parity,
};
use weyl_lab::weights::GroupParams;

#[derive(Parser)]
#[command(
    name = "weyl-lab",
    version,
    about = "Exact spectral counting for SO(N) and its lattice-point laboratory"
)]
struct Cli {
    /// Working precision in decimal digits (≥ 20); WEYL_LAB_DIGITS overrides
    /// the default of 80.
    #[arg(long, global = true)]
    digits: Option<u32>,

    /// Worker threads (default: all cores). Never changes results.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Output path (default: stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ParityArg {
    All,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::All => Parity::All,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Lattice,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Laplace spectrum of SO(N): eigenvalues with multiplicities.
    Spectrum {
        /// Group name such as "SO4" (case-insensitive).
        #[arg(long)]
        group: String,
        #[arg(long)]
        lambda_max: i64,
    },
    /// The counting function N(λ) by either or both routes.
    Count {
        /// Group name such as "SO4" (case-insensitive).
        #[arg(long)]
        group: String,
        #[arg(long)]
        lambda: i64,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Representation numbers r_n(k), or shell sums of a polynomial.
    Shells {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k_max: i64,
        #[arg(long, value_enum, default_value_t = ParityArg::All)]
        parity: ParityArg,
        /// Sum this polynomial over each shell instead of counting points.
        #[arg(long)]
        poly: Option<String>,
        /// Diagonal lattice scalings "a1,a2,...": shells of Q(x) = Σ (a_i·x_i)².
        #[arg(long)]
        diag: Option<String>,
    },
    /// Theta-series coefficient statistics for a harmonic polynomial.
    Theta {
        #[arg(long)]
        n: usize,
        /// Polynomial in x1…xn, e.g. "x1^4 - 6 x1^2 x2^2 + x2^4".
        #[arg(long)]
        poly: String,
        #[arg(long)]
        k_max: i64,
    },
    /// Harmonic decomposition of a homogeneous polynomial.
    Harmonic {
        #[arg(long)]
        n: usize,
        /// Polynomial in x1…xn, e.g. "x1^4 - 6 x1^2 x2^2 + x2^4".
        #[arg(long)]
        poly: String,
    },
    /// Error series N(λ) − smooth(λ) with its envelope fit.
    WeylError {
        /// Group name such as "SO4" (case-insensitive).
        #[arg(long)]
        group: String,
        #[arg(long)]
        lambda_max: i64,
        #[arg(long, default_value_t = 1)]
        step: i64,
    },
    /// Verify the radial decomposition against weighted shell sums.
    RadialCheck {
        /// Group name such as "SO4" (case-insensitive).
        #[arg(long)]
        group: String,
        #[arg(long)]
        k_max: i64,
    },
    /// Ball lattice counts against the volume main term.
    Average {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r_max: i64,
        #[arg(long, value_enum, default_value_t = ParityArg::All)]
        parity: ParityArg,
    },
    /// Normalized equidistribution errors of shell averages.
    Equidist {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k_max: i64,
        /// Polynomial in x1…xn, e.g. "x1^4 - 6 x1^2 x2^2 + x2^4".
        #[arg(long)]
        poly: String,
    },
    /// Minimum normalized shell count over a range.
    Jumps {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k_min: i64,
        #[arg(long)]
        k_max: i64,
        #[arg(long, value_enum, default_value_t = ParityArg::All)]
        parity: ParityArg,
    },
    /// Extremal r₄ ratios at products of the first j odd primes, j = 3…
    R4Extremal {
        /// Largest number of odd primes in the product.
        #[arg(long, default_value_t = 3)]
        primes: usize,
    },
    /// Closed-form counting for SO(2) and SO(3).
    SoLow {
        /// Group name such as "SO4" (case-insensitive).
        #[arg(long)]
        group: String,
        #[arg(long)]
        lambda_max: i64,
        #[arg(long, default_value_t = 1)]
        step: i64,
    },
    /// The Sonin-style summation identity on one interval, exactly.
    Sonin {
        /// Polynomial in x1, e.g. "1 + 2 x1".
        #[arg(long)]
        poly: String,
        /// Left endpoint, a rational "p/q" or integer.
        #[arg(long)]
        a: String,
        /// Right endpoint, a rational "p/q" or integer.
        #[arg(long)]
        b: String,
    },
    /// The T1/T2/T3 split of the SO(4) count.
    TSplit {
        #[arg(long)]
        lambda: i64,
    },
    /// Vaaler majorant/minorant coefficient profile.
    Psi {
        /// Number of oscillating terms; rows cover h = 0…M.
        #[arg(long = "M")]
        m: usize,
    },
    /// Exponent-pair arithmetic: (α, β) → M and T2 exponents, Weyl deficit.
    ExponentPair {
        /// Starting exponent α, a rational "p/q".
        #[arg(long)]
        alpha: String,
        /// Starting exponent β, a rational "p/q".
        #[arg(long)]
        beta: String,
    },
    /// Envelope fits for averaged r₃ errors, both parities.
    R3Fit {
        #[arg(long)]
        r_max: i64,
    },
}

enum CliError {
    Usage(String),
    Runtime(String),
}

impl From<weyl_lab::error::Error> for CliError {
    fn from(e: weyl_lab::error::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Runtime(format!("i/o error: {e}"))
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_group(s: &str) -> Result<GroupParams, CliError> {
    let t = s.trim().to_ascii_uppercase();
    let rest = t
        .strip_prefix("SO")
        .ok_or_else(|| usage(format!("group must look like SO<N>, got {s:?}")))?;
    let n: i64 = rest
        .parse()
        .map_err(|_| usage(format!("group must look like SO<N>, got {s:?}")))?;
    GroupParams::new(n).map_err(|e| usage(e.to_string()))
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let bad = || usage(format!("expected a rational p/q or integer, got {s:?}"));
    let t = s.trim();
    if let Some((num, den)) = t.split_once('/') {
        let p: i64 = num.trim().parse().map_err(|_| bad())?;
        let q: i64 = den.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(usage("rational denominator must be nonzero"));
        }
        Ok(Rational::new(BigInt::from(p), BigInt::from(q)))
    } else {
        let p: i64 = t.parse().map_err(|_| bad())?;
        Ok(Rational::from_integer(BigInt::from(p)))
    }
}

fn parse_poly(expr: &str, n: usize) -> Result<MultiPoly, CliError> {
    MultiPoly::parse(expr, n).map_err(|e| usage(e.to_string()))
}

fn parse_diag(s: &str, n: usize) -> Result<Vec<i64>, CliError> {
    let coeffs: Result<Vec<i64>, _> = s.split(',').map(|t| t.trim().parse()).collect();
    let coeffs =
        coeffs.map_err(|_| usage(format!("diagonal must be integers \"a1,a2,...\", got {s:?}")))?;
    if coeffs.len() != n {
        return Err(usage(format!(
            "diagonal has {} entries but n = {n}",
            coeffs.len()
        )));
    }
    if coeffs.iter().any(|&a| a <= 0) {
        return Err(usage("diagonal coefficients must be positive"));
    }
    Ok(coeffs)
}

fn resolve_digits(flag: Option<u32>) -> Result<u32, CliError> {
    let digits = match flag {
        Some(d) => d,
        None => match std::env::var("WEYL_LAB_DIGITS") {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| usage(format!("WEYL_LAB_DIGITS must be an integer, got {v:?}")))?,
            Err(_) => 80,
        },
    };
    if digits < 20 {
        return Err(usage(format!("digits must be at least 20, got {digits}")));
    }
    Ok(digits)
}

struct Emitter {
    format: Format,
    sink: BufWriter<Box<dyn Write>>,
}

impl Emitter {
    fn new(format: Format, out: Option<&PathBuf>) -> Result<Self, CliError> {
        let raw: Box<dyn Write> = match out {
            Some(path) => Box::new(File::create(path)?),
            None => Box::new(io::stdout()),
        };
        Ok(Emitter {
            format,
            sink: BufWriter::new(raw),
        })
    }

    fn line(&mut self, s: &str) -> Result<(), CliError> {
        self.sink.write_all(s.as_bytes())?;
        self.sink.write_all(b"\n")?;
        Ok(())
    }

    /// CSV header + rows, or a JSON array of objects with the same fields.
    fn table(&mut self, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
        match self.format {
            Format::Csv => {
                self.line(&header.join(","))?;
                for row in rows {
                    self.line(&row.join(","))?;
                }
            }
            Format::Json => {
                let objects: Vec<serde_json::Value> = rows
                    .iter()
                    .map(|row| {
                        let mut map = serde_json::Map::new();
                        for (key, value) in header.iter().zip(row) {
                            map.insert((*key).to_string(), reinterpret(value));
                        }
                        serde_json::Value::Object(map)
                    })
                    .collect();
                let text = serde_json::to_string_pretty(&objects)
                    .map_err(|e| CliError::Runtime(e.to_string()))?;
                self.line(&text)?;
            }
        }
        Ok(())
    }

    fn object(&mut self, value: serde_json::Value) -> Result<(), CliError> {
        match self.format {
            Format::Csv => {
                let map = value.as_object().expect("object emission");
                let header: Vec<&str> = map.keys().map(String::as_str).collect();
                let row: Vec<String> = map.values().map(plain).collect();
                self.table(&header, &[row])
            }
            Format::Json => {
                let text = serde_json::to_string_pretty(&value)
                    .map_err(|e| CliError::Runtime(e.to_string()))?;
                self.line(&text)
            }
        }
    }

    fn finish(mut self) -> Result<(), CliError> {
        self.sink.flush()?;
        Ok(())
    }
}

/// Keep small integers numeric in JSON; everything else stays a string.
fn reinterpret(value: &str) -> serde_json::Value {
    if let Ok(v) = value.parse::<i64>() {
        return json!(v);
    }
    json!(value)
}

fn plain(value: &serde_json::Value) -> String {
    match value {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Clap exits 0 for --help/--version and 2 for usage errors.
            e.exit();
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let digits = resolve_digits(cli.digits)?;
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(usage("threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Runtime(e.to_string()))?;
    }
    let mut emit = Emitter::new(cli.format, cli.out.as_ref())?;
    dispatch(cli.command, digits, &mut emit)?;
    emit.finish()
}

fn dispatch(command: Command, digits: u32, emit: &mut Emitter) -> Result<(), CliError> {
    match command {
        Command::Spectrum { group, lambda_max } => {
            let g = parse_group(&group)?;
            require(lambda_max >= 0, "lambda-max must be nonnegative")?;
            let rows: Vec<Vec<String>> = g
                .enumerate_spectrum(lambda_max)
                .into_iter()
                .map(|(lambda, mult)| vec![lambda.to_string(), mult.to_string()])
                .collect();
            emit.table(&["lambda", "mult"], &rows)
        }
        Command::Count {
            group,
            lambda,
            method,
        } => {
            let g = parse_group(&group)?;
            require(lambda >= 0, "lambda must be nonnegative")?;
            let mut rows = Vec::new();
            if matches!(method, Method::Direct | Method::Both) {
                rows.push(vec!["direct".to_string(), count_direct(&g, lambda).to_string()]);
            }
            if matches!(method, Method::Lattice | Method::Both) {
                rows.push(vec![
                    "lattice".to_string(),
                    count_lattice(&g, lambda).to_string(),
                ]);
            }
            emit.table(&["method", "count"], &rows)
        }
        Command::Shells {
            n,
            k_max,
            parity,
            poly,
            diag,
        } => {
            require(n >= 1, "n must be at least 1")?;
            require(k_max >= 0, "k-max must be nonnegative")?;
            let parity = Parity::from(parity);
            let rows: Vec<Vec<String>> = match (poly, diag) {
                (None, None) => {
                    let table = rep_table(n, k_max, parity);
                    (0..=k_max)
                        .map(|k| vec![k.to_string(), table.value(k).to_string()])
                        .collect()
                }
                (poly, diag) => {
                    let p = match poly {
                        Some(expr) => parse_poly(&expr, n)?,
                        None => MultiPoly::constant(n, Rational::from_integer(BigInt::from(1))),
                    };
                    match diag {
                        None => shell_sums(n, k_max, parity, &p)
                            .into_iter()
                            .enumerate()
                            .map(|(k, v)| vec![k.to_string(), v.to_string()])
                            .collect(),
                        Some(spec) => {
                            require(
                                parity == Parity::All,
                                "diagonal forms are supported for all-parity sums only",
                            )?;
                            let a = parse_diag(&spec, n)?;
                            (0..=k_max)
                                .map(|k| {
                                    vec![k.to_string(), shell_sum_form(&a, k, &p).to_string()]
                                })
                                .collect()
                        }
                    }
                }
            };
            emit.table(&["k", "value"], &rows)
        }
        Command::Theta { n, poly, k_max } => {
            require(n >= 1, "n must be at least 1")?;
            require(k_max >= 4, "k-max must be at least 4")?;
            let p = parse_poly(&poly, n)?;
            let coeffs = theta_coeffs(n, &p, k_max)?;
            let partial = partial_sum_stat(&coeffs, digits);
            let square = mean_square_stat(&coeffs, digits);
            match emit.format {
                Format::Csv => {
                    let rows: Vec<Vec<String>> = partial
                        .iter()
                        .zip(&square)
                        .map(|(p_row, s_row)| {
                            vec![
                                p_row.cap.to_string(),
                                p_row.value.to_sci_string(digits),
                                s_row.value.to_sci_string(digits),
                            ]
                        })
                        .collect();
                    emit.table(&["K", "partial_sum", "mean_square"], &rows)
                }
                Format::Json => {
                    let values: Vec<f64> = square.iter().map(|row| row.value.to_f64()).collect();
                    let band_min = values.iter().cloned().fold(f64::MAX, f64::min);
                    let band_max = values.iter().cloned().fold(f64::MIN, f64::max);
                    emit.object(json!({
                        "weight": coeffs.weight.to_string(),
                        "band_min": band_min,
                        "band_max": band_max,
                    }))
                }
            }
        }
        Command::Harmonic { n, poly } => {
            require(n >= 1, "n must be at least 1")?;
            let p = parse_poly(&poly, n)?;
            // Components are (l, H) with P = Σ ‖x‖^{2l}·H and H harmonic.
            let rows: Vec<Vec<String>> = p
                .harmonic_decompose()?
                .into_iter()
                .map(|(power, component)| vec![power.to_string(), component.to_string()])
                .collect();
            emit.table(&["power", "component"], &rows)
        }
        Command::WeylError {
            group,
            lambda_max,
            step,
        } => {
            let g = parse_group(&group)?;
            require(step >= 1, "step must be at least 1")?;
            require(lambda_max >= step, "lambda-max must be at least step")?;
            let series = error_series(&g, lambda_max, step, digits)?;
            match emit.format {
                Format::Csv => {
                    let rows: Vec<Vec<String>> = series
                        .rows
                        .iter()
                        .map(|row| {
                            vec![
                                row.lambda.to_string(),
                                row.count.to_string(),
                                row.smooth.to_sci_string(digits),
                                row.error.to_sci_string(digits),
                            ]
                        })
                        .collect();
                    emit.table(&["lambda", "count", "smooth", "error"], &rows)
                }
                Format::Json => {
                    let fit = fit_error_series(&series)?;
                    emit.object(json!({
                        "slope": fit.slope,
                        "intercept": fit.intercept,
                        "windows": fit.windows,
                    }))
                }
            }
        }
        Command::RadialCheck { group, k_max } => {
            let g = parse_group(&group)?;
            require(k_max >= 1, "k-max must be at least 1")?;
            let components = radial_check(&g, k_max);
            emit.object(json!({
                "group": format!("SO{}", g.big_n),
                "k_max": k_max,
                "components": components,
                "exact": true,
            }))
        }
        Command::Average { n, r_max, parity } => {
            require(n >= 1, "n must be at least 1")?;
            require(r_max >= 1, "r-max must be at least 1")?;
            let rows: Vec<Vec<String>> = average_compare(n, r_max, parity.into(), digits)
                .into_iter()
                .map(|row| {
                    vec![
                        row.r.to_string(),
                        row.count.to_string(),
                        row.main.to_sci_string(digits),
                        row.diff.to_sci_string(digits),
                    ]
                })
                .collect();
            emit.table(&["r", "count", "main", "diff"], &rows)
        }
        Command::Equidist { n, k_max, poly } => {
            require(n >= 1, "n must be at least 1")?;
            require(k_max >= 0, "k-max must be nonnegative")?;
            let p = parse_poly(&poly, n)?;
            let mut rows = Vec::new();
            for k in 1..=k_max {
                match equidist_error(n, k, &p) {
                    Ok(err) => rows.push(vec![k.to_string(), err.to_string()]),
                    Err(weyl_lab::error::Error::EmptyShell(_)) => continue,
                    Err(e) => return Err(e.into()),
                }
            }
            emit.table(&["k", "error"], &rows)
        }
        Command::Jumps {
            n,
            k_min,
            k_max,
            parity,
        } => {
            require(k_min >= 1 && k_min <= k_max, "need 1 ≤ k-min ≤ k-max")?;
            let (ratio, argmin) = jump_check(n, k_min, k_max, parity.into())?;
            emit.object(json!({
                "min_ratio": ratio,
                "argmin_k": argmin,
            }))
        }
        Command::R4Extremal { primes } => {
            require(primes >= 3, "primes must be at least 3 (log log k needs room)")?;
            require(
                digits <= 100,
                "r4-extremal supports at most 100 digits (constant tables)",
            )?;
            let rows: Vec<Vec<String>> = (3..=primes)
                .map(|j| {
                    let (k, r4, ratio, reference) = r4_extremal_ratio(j, digits);
                    vec![
                        j.to_string(),
                        k.to_string(),
                        r4.to_string(),
                        ratio.to_sig_string(digits),
                        reference.to_sig_string(digits),
                    ]
                })
                .collect();
            emit.table(&["j", "k", "r4", "ratio", "reference"], &rows)
        }
        Command::SoLow {
            group,
            lambda_max,
            step,
        } => {
            let g = parse_group(&group)?;
            require(
                g.big_n == 2 || g.big_n == 3,
                "so-low covers SO2 and SO3 only",
            )?;
            require(step >= 1, "step must be at least 1")?;
            require(lambda_max >= 0, "lambda-max must be nonnegative")?;
            let count = |lambda: i64| -> BigInt {
                if g.big_n == 2 {
                    so2_count(lambda)
                } else {
                    so3_count(lambda)
                }
            };
            let rows: Vec<Vec<String>> = (0..=lambda_max)
                .step_by(step as usize)
                .map(|lambda| vec![lambda.to_string(), count(lambda).to_string()])
                .collect();
            emit.table(&["lambda", "count"], &rows)
        }
        Command::Sonin { poly, a, b } => {
            let p = parse_poly(&poly, 1)?;
            let a = parse_rational(&a)?;
            let b = parse_rational(&b)?;
            require(a <= b, "need a ≤ b")?;
            let (lhs, rhs) = sonin_sum(&p, &a, &b);
            let equal = lhs == rhs;
            emit.object(json!({
                "lhs": lhs.to_string(),
                "rhs": rhs.to_string(),
                "equal": equal,
            }))
        }
        Command::TSplit { lambda } => {
            require(lambda >= 0, "lambda must be nonnegative")?;
            let split = t_split(lambda, digits);
            let sum = split.t1.add(&split.t2).add(&split.t3);
            let residual = sum
                .sub(&weyl_lab::precision::BigFixed::from_bigint(&split.count, digits))
                .abs();
            emit.object(json!({
                "lambda": lambda,
                "t1": split.t1.to_sci_string(digits),
                "t2": split.t2.to_sci_string(digits),
                "t3": split.t3.to_sci_string(digits),
                "count": split.count.to_string(),
                "residual": residual.to_sci_string(6),
            }))
        }
        Command::Psi { m } => {
            require(m >= 1, "M must be at least 1")?;
            let (plus, minus) = psi_majorants(m, digits);
            let mut rows = vec![vec![
                "0".to_string(),
                format!("{}", plus.a0()),
                format!("{}", minus.a0()),
            ]];
            for h in 1..=m {
                rows.push(vec![
                    h.to_string(),
                    plus.coeff_abs_f64(h).to_string(),
                    minus.coeff_abs_f64(h).to_string(),
                ]);
            }
            emit.table(&["h", "plus", "minus"], &rows)
        }
        Command::ExponentPair { alpha, beta } => {
            let pair = ExponentPair {
                alpha: parse_rational(&alpha)?,
                beta: parse_rational(&beta)?,
            };
            require(
                !num_traits::Signed::is_negative(pair.alpha.numer()),
                "alpha must be nonnegative",
            )?;
            let result = exponent_pair_calc(&pair);
            match emit.format {
                Format::Csv => emit.line(&format!(
                    "{} {} {}",
                    result.m_exponent, result.t2_exponent, result.weyl_deficit
                )),
                Format::Json => emit.object(json!({
                    "m_exponent": result.m_exponent.to_string(),
                    "t2_exponent": result.t2_exponent.to_string(),
                    "weyl_deficit": result.weyl_deficit.to_string(),
                    "degenerate": result.degenerate,
                })),
            }
        }
        Command::R3Fit { r_max } => {
            let fit = r3_average_fit(r_max)?;
            let render = |f: &weyl_lab::fit::EnvelopeFit| {
                vec![
                    f.slope.to_string(),
                    f.intercept.to_string(),
                    f.windows.to_string(),
                ]
            };
            let mut rows = Vec::new();
            let mut all = vec!["all".to_string()];
            all.extend(render(&fit.all));
            rows.push(all);
            let mut odd = vec!["odd".to_string()];
            odd.extend(render(&fit.odd));
            rows.push(odd);
            emit.table(&["parity", "slope", "intercept", "windows"], &rows)
        }
    }
}

fn require(condition: bool, msg: &str) -> Result<(), CliError> {
    if condition {
        Ok(())
    } else {
        Err(usage(msg))
    }
}
