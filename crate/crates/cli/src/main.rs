//! Batch front-end for the certification library: runs sweeps, emits
//! table/CSV/JSON reports, and signals violations through exit codes so CI
//! can consume the tool directly.
//!
//! Exit codes: 0 — every assertion holds; 1 — at least one certified bound
//! or identity is violated; 2 — usage or parameter error.
//!
//! Output is byte-deterministic given the configuration and seed,
//! regardless of `--workers`: work is distributed across a thread pool and
//! merged back in parameter order.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use steincert::rat::{parse_rat, rat, rat_i, Rat};
use steincert::report::{self, Precision, SteinCheckRow};
use steincert::stein::{
    binhat_flip_kernel, characterization_residual, pair_identity_check, perturbed_copy,
    tail_and_correction_estimates, test_family,
};
use steincert::{binhat_dist, binhat_params, hyp, narayana, pb, CertStatus};

#[derive(Parser)]
#[command(
    name = "steincert",
    version,
    about = "Exact certification of symmetric-binomial approximation bounds",
    propagate_version = true
)]
struct Cli {
    /// Report format.
    #[arg(
        long,
        global = true,
        value_enum,
        default_value_t = FormatOpt::Table,
        env = "STEINCERT_FORMAT"
    )]
    format: FormatOpt,

    /// How rational quantities are rendered (the arithmetic itself is
    /// always exact).
    #[arg(
        long,
        global = true,
        value_enum,
        default_value_t = PrecisionOpt::Exact,
        env = "STEINCERT_PRECISION"
    )]
    precision: PrecisionOpt,

    /// Seed for random test functions and random probability vectors.
    #[arg(long, global = true, default_value_t = 0, env = "STEINCERT_SEED")]
    seed: u64,

    /// Worker threads (0 = one per CPU). Does not affect the output bytes.
    #[arg(long, global = true, default_value_t = 0, env = "STEINCERT_WORKERS")]
    workers: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatOpt {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PrecisionOpt {
    Exact,
    Float64,
}

impl From<PrecisionOpt> for Precision {
    fn from(p: PrecisionOpt) -> Self {
        match p {
            PrecisionOpt::Exact => Precision::Exact,
            PrecisionOpt::Float64 => Precision::Float64,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Certify the Narayana family: exact tv against the movement bound
    /// and the 12/n cap, plus moment, reversibility and normal-distance
    /// checks, one row per n.
    NarayanaVerify {
        /// Inclusive range "LO:HI" with 2 <= LO <= HI.
        #[arg(long = "n-range", value_name = "LO:HI")]
        n_range: String,
    },
    /// Certify indicator sums (independent, possibly non-identical
    /// success probabilities), one row per probability vector.
    PbVerify {
        /// Inline comma-separated exact probabilities, e.g. "1/2,1/3,2/5".
        #[arg(long, value_name = "LIST")]
        p: Option<String>,
        /// JSON file holding one probability vector (array of "a/b"
        /// strings) or several (array of such arrays).
        #[arg(long = "p-file", value_name = "FILE")]
        p_file: Option<PathBuf>,
        /// Certify COUNT seeded random vectors instead (2..=50 entries
        /// each, variance above the degenerate regime).
        #[arg(long, value_name = "COUNT")]
        random: Option<usize>,
    },
    /// Certify sampling-without-replacement counts: one (N, n, m) triple
    /// or the exhaustive admissible grid up to N-max.
    HypVerify {
        /// Population size (requires --n and --m; N >= 4).
        #[arg(long = "N", value_name = "POPULATION")]
        big_n: Option<u64>,
        /// Sample size (1 <= n < N).
        #[arg(long = "n", value_name = "SAMPLE")]
        n: Option<u64>,
        /// Marked-item count (1 <= m < N).
        #[arg(long = "m", value_name = "MARKED")]
        m: Option<u64>,
        /// Sweep every admissible (N, n, m) with 4 <= N <= N-max.
        #[arg(long, conflicts_with_all = ["big_n", "n", "m"])]
        sweep: bool,
        /// Upper end of the sweep (requires --sweep).
        #[arg(long = "N-max", value_name = "MAX", requires = "sweep")]
        n_max: Option<u64>,
    },
    /// Check the characterizing operator of the matched binomial target
    /// at one (mu, sigma^2): zero residual over the test family, exact
    /// pair identities, and the tail/correction estimate chains.
    SteinCheck {
        /// Target mean, as "a/b" or an integer.
        #[arg(long, value_name = "RAT")]
        mu: String,
        /// Target variance, as "a/b" or an integer (must be positive).
        #[arg(long, value_name = "RAT")]
        sigma2: String,
        /// Number of seeded random test functions (on top of the
        /// monomials of degree <= 6).
        #[arg(long, default_value_t = 50, value_name = "COUNT")]
        trials: usize,
        /// Negative-control mode: perturb the target law and require a
        /// nonzero residual instead.
        #[arg(long)]
        perturb: bool,
    },
}

/// A parameter or usage problem: reported on stderr, exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

/// One fully rendered report, independent of the output format.
struct Report {
    command: &'static str,
    grid: String,
    header: Vec<&'static str>,
    records: Vec<Vec<String>>,
    json_rows: Vec<Value>,
    /// True iff every assertion in every row holds.
    pass: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let precision = Precision::from(cli.precision);
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.workers)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: worker pool: {e}");
            return ExitCode::from(2);
        }
    };

    let report = pool.install(|| match &cli.command {
        Command::NarayanaVerify { n_range } => run_narayana(n_range, precision),
        Command::PbVerify { p, p_file, random } => {
            run_pb(p.as_deref(), p_file.as_deref(), *random, cli.seed, precision)
        }
        Command::HypVerify {
            big_n,
            n,
            m,
            sweep,
            n_max,
        } => run_hyp(*big_n, *n, *m, *sweep, *n_max, precision),
        Command::SteinCheck {
            mu,
            sigma2,
            trials,
            perturb,
        } => run_stein_check(mu, sigma2, *trials, *perturb, cli.seed, precision),
    });

    match report {
        Ok(report) => {
            render(&report, cli.format, precision, cli.seed);
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn render(report: &Report, format: FormatOpt, precision: Precision, seed: u64) {
    let version = env!("CARGO_PKG_VERSION");
    match format {
        FormatOpt::Table => {
            println!(
                "{}",
                report::meta_line(report.command, version, precision, seed, &report.grid)
            );
            let mut widths: Vec<usize> = report.header.iter().map(|h| h.len()).collect();
            for rec in &report.records {
                for (i, cell) in rec.iter().enumerate() {
                    widths[i] = widths[i].max(cell.len());
                }
            }
            println!("{}", pad_row(&as_strings(&report.header), &widths));
            for rec in &report.records {
                println!("{}", pad_row(rec, &widths));
            }
        }
        FormatOpt::Csv => {
            println!(
                "{}",
                report::meta_line(report.command, version, precision, seed, &report.grid)
            );
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&report.header).expect("csv header");
            for rec in &report.records {
                w.write_record(rec).expect("csv record");
            }
            let bytes = w.into_inner().expect("csv buffer");
            print!("{}", String::from_utf8(bytes).expect("csv utf8"));
        }
        FormatOpt::Json => {
            let doc = json!({
                "meta": report::meta_json(report.command, version, precision, seed, &report.grid),
                "rows": report.json_rows,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
    }
}

fn as_strings(header: &[&'static str]) -> Vec<String> {
    header.iter().map(|h| h.to_string()).collect()
}

/// Left-aligns each cell to its column width; the last cell is left bare
/// so lines carry no trailing spaces.
fn pad_row(cells: &[String], widths: &[usize]) -> String {
    let mut out = String::new();
    for (i, cell) in cells.iter().enumerate() {
        if i + 1 == cells.len() {
            out.push_str(cell);
        } else {
            out.push_str(&format!("{cell:<w$}  ", w = widths[i]));
        }
    }
    out
}

fn run_narayana(n_range: &str, precision: Precision) -> Result<Report, UsageError> {
    let (lo, hi) = parse_range(n_range)?;
    if lo < 2 {
        return Err(UsageError(format!(
            "--n-range starts at {lo}, but the smallest admissible size is 2"
        )));
    }
    let rows = (lo..=hi)
        .into_par_iter()
        .map(|n| narayana::full_row(n))
        .collect::<Result<Vec<_>, _>>()?;
    let pass = rows.iter().all(|r| {
        r.status == CertStatus::Holds
            && r.cap_holds
            && r.moments_ok
            && r.reversibility_ok
            && r.lambda_ok
            && r.kolmogorov <= r.kolmogorov_cap
    });
    Ok(Report {
        command: "narayana-verify",
        grid: format!("n={lo}..{hi}"),
        header: report::narayana_csv_header(),
        records: rows
            .iter()
            .map(|r| report::narayana_csv_record(r, precision))
            .collect(),
        json_rows: rows
            .iter()
            .map(|r| report::narayana_json(r, precision))
            .collect(),
        pass,
    })
}

fn run_pb(
    inline: Option<&str>,
    p_file: Option<&std::path::Path>,
    random: Option<usize>,
    seed: u64,
    precision: Precision,
) -> Result<Report, UsageError> {
    let sources = inline.is_some() as u8 + p_file.is_some() as u8 + random.is_some() as u8;
    if sources != 1 {
        return Err(UsageError(
            "choose exactly one probability source: --p, --p-file or --random".into(),
        ));
    }

    let (vectors, grid) = if let Some(list) = inline {
        (vec![parse_prob_list(list)?], "p=inline".to_string())
    } else if let Some(path) = p_file {
        let text = fs::read_to_string(path)
            .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
        (parse_prob_file(&text)?, format!("p-file={}", path.display()))
    } else {
        let count = random.unwrap();
        if count == 0 {
            return Err(UsageError("--random needs a positive count".into()));
        }
        (pb::random_p_sequences(seed, count), format!("random={count}"))
    };

    // Certification needs a genuinely random sum; reject vectors whose
    // indicators are all deterministic before fanning out.
    for (i, p) in vectors.iter().enumerate() {
        let (_, sigma2) = pb::mean_var(p);
        if sigma2 == rat_i(0) {
            return Err(UsageError(format!(
                "vector {i}: every entry is 0 or 1, so the sum has zero variance"
            )));
        }
    }

    let rows = vectors
        .par_iter()
        .map(|p| pb::certify(p))
        .collect::<Result<Vec<_>, _>>()?;
    let pass = rows.iter().all(|r| r.report.holds() && r.bounds_match);
    Ok(Report {
        command: "pb-verify",
        grid,
        header: report::pb_csv_header(),
        records: rows
            .iter()
            .enumerate()
            .map(|(i, r)| report::pb_csv_record(i, r, precision))
            .collect(),
        json_rows: rows
            .iter()
            .enumerate()
            .map(|(i, r)| report::pb_json(i, r, precision))
            .collect(),
        pass,
    })
}

fn run_hyp(
    big_n: Option<u64>,
    n: Option<u64>,
    m: Option<u64>,
    sweep: bool,
    n_max: Option<u64>,
    precision: Precision,
) -> Result<Report, UsageError> {
    let (triples, grid) = if sweep {
        let max = n_max.ok_or_else(|| UsageError("--sweep needs --N-max".into()))?;
        if max < 4 {
            return Err(UsageError(
                "--N-max is below 4, the smallest population the bound covers".into(),
            ));
        }
        (hyp::sweep_grid(max), format!("N=4..{max}"))
    } else {
        let (big_n, n, m) = match (big_n, n, m) {
            (Some(big_n), Some(n), Some(m)) => (big_n, n, m),
            _ => {
                return Err(UsageError(
                    "give --N, --n and --m together, or use --sweep --N-max".into(),
                ))
            }
        };
        if big_n < 4 {
            return Err(UsageError(format!(
                "N={big_n} is below 4, the smallest population the bound covers"
            )));
        }
        if n == 0 || n >= big_n || m == 0 || m >= big_n {
            return Err(UsageError(format!(
                "inadmissible triple (N={big_n}, n={n}, m={m}): need 1 <= n < N and 1 <= m < N"
            )));
        }
        (vec![(big_n, n, m)], format!("N={big_n},n={n},m={m}"))
    };

    let rows = triples
        .par_iter()
        .map(|&(big_n, n, m)| hyp::certify(big_n, n, m))
        .collect::<Result<Vec<_>, _>>()?;
    let pass = rows.iter().all(|r| {
        r.report.holds()
            && matches!(
                r.display_status,
                CertStatus::Holds | CertStatus::HoldsVacuously
            )
            && r.pair_le_display
    });
    Ok(Report {
        command: "hyp-verify",
        grid,
        header: report::hyp_csv_header(),
        records: rows
            .iter()
            .map(|r| report::hyp_csv_record(r, precision))
            .collect(),
        json_rows: rows.iter().map(|r| report::hyp_json(r, precision)).collect(),
        pass,
    })
}

fn run_stein_check(
    mu: &str,
    sigma2: &str,
    trials: usize,
    perturb: bool,
    seed: u64,
    precision: Precision,
) -> Result<Report, UsageError> {
    let mu = parse_rat(mu)?;
    let sigma2 = parse_rat(sigma2)?;
    let params = binhat_params(&mu, &sigma2)?;
    let dist = binhat_dist(&params)
        .map_err(|e| UsageError(format!("no matched target at this variance: {e}")))?;
    let fns = test_family(seed, trials, dist.lo() - 1, dist.hi() + 1);
    let zero = rat_i(0);

    let (residual, ok) = if perturb {
        let residual = characterization_residual(&perturbed_copy(&dist), &params, &fns);
        let ok = residual > zero;
        if !ok {
            eprintln!("note: the perturbed control was not detected (residual 0)");
        }
        (residual, ok)
    } else {
        let residual = characterization_residual(&dist, &params, &fns);
        // The target's own exchangeable pair: resample one of the n
        // underlying coin flips, drift coefficient 1/n.
        let kernel = binhat_flip_kernel(&params)?;
        let lambda = rat(1, params.n as i64);
        let identity_defect = pair_identity_check(&kernel, &dist, &params.mu, &lambda, &fns)?;
        // The tail/correction chains compare a law against parameters
        // matching its own exact moments; the target's realized variance
        // differs from the requested one by the rounding remainder.
        let est_params = binhat_params(&dist.mean(), &dist.variance())?;
        let estimates = tail_and_correction_estimates(&dist, &est_params)?;
        let ok = residual == zero && identity_defect == zero && estimates.all_applicable_hold();
        if residual != zero {
            eprintln!("note: nonzero operator residual on the target law");
        }
        if identity_defect != zero {
            eprintln!("note: nonzero pair-identity defect");
        }
        if !estimates.all_applicable_hold() {
            eprintln!("note: an applicable tail/correction estimate fails");
        }
        (residual, ok)
    };

    let row = SteinCheckRow {
        params,
        residual,
        fn_count: fns.len(),
        perturbed: perturb,
        ok,
    };
    let grid = format!(
        "mu={mu},sigma2={sigma2},trials={trials}{}",
        if perturb { ",perturb" } else { "" }
    );
    Ok(Report {
        command: "stein-check",
        grid,
        header: report::stein_csv_header(),
        records: vec![report::stein_csv_record(&row, precision)],
        json_rows: vec![report::stein_json(&row, precision)],
        pass: row.ok,
    })
}

/// Parses "LO:HI" into an inclusive non-empty range.
fn parse_range(s: &str) -> Result<(u64, u64), UsageError> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| UsageError(format!("\"{s}\": expected LO:HI")))?;
    let lo: u64 = a
        .trim()
        .parse()
        .map_err(|_| UsageError(format!("\"{a}\": bad range start")))?;
    let hi: u64 = b
        .trim()
        .parse()
        .map_err(|_| UsageError(format!("\"{b}\": bad range end")))?;
    if lo > hi {
        return Err(UsageError(format!("empty range {lo}:{hi}")));
    }
    Ok((lo, hi))
}

fn parse_prob(s: &str) -> Result<Rat, UsageError> {
    let r = parse_rat(s)?;
    if r < rat_i(0) || r > rat_i(1) {
        return Err(UsageError(format!(
            "\"{s}\": probabilities must lie in [0, 1]"
        )));
    }
    Ok(r)
}

fn parse_prob_list(list: &str) -> Result<Vec<Rat>, UsageError> {
    let items: Vec<&str> = list.split(',').collect();
    if items.iter().all(|s| s.trim().is_empty()) {
        return Err(UsageError("--p got an empty list".into()));
    }
    items.into_iter().map(parse_prob).collect()
}

/// Accepts a JSON array of "a/b" strings (one vector) or an array of such
/// arrays (several vectors).
fn parse_prob_file(text: &str) -> Result<Vec<Vec<Rat>>, UsageError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| UsageError(format!("probability file: {e}")))?;
    let outer = value
        .as_array()
        .ok_or_else(|| UsageError("probability file: expected a JSON array".into()))?;
    if outer.is_empty() {
        return Err(UsageError("probability file: empty array".into()));
    }
    let parse_vector = |entries: &[Value]| -> Result<Vec<Rat>, UsageError> {
        if entries.is_empty() {
            return Err(UsageError("probability file: empty vector".into()));
        }
        entries
            .iter()
            .map(|v| {
                v.as_str()
                    .ok_or_else(|| {
                        UsageError(
                            "probability file: entries must be \"a/b\" strings".into(),
                        )
                    })
                    .and_then(parse_prob)
            })
            .collect()
    };
    if outer.iter().all(|v| v.is_array()) {
        outer
            .iter()
            .map(|v| parse_vector(v.as_array().expect("checked")))
            .collect()
    } else {
        Ok(vec![parse_vector(outer)?])
    }
}
