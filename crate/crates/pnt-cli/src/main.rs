//! pnt: prime counts, primorial decompositions, log-family evaluation,
//! estimator checks, and convergence tables from one binary.
//!
//! Numeric arguments parse as plain decimal or `1e<k>`. Results go to
//! stdout; timing lines go to stderr so piped output stays byte-stable.
//! Exit codes: 0 success, 1 failure or check violation, 2 usage error.

use std::ops::RangeInclusive;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;

use pnt_core::exactnum::{parse_natural, parse_ratio};
use pnt_core::log_family::{
    eval_prime_family, eval_primorial_family, LogFamily, PrimeLogVariant, PrimorialLogVariant,
};
use pnt_core::pnt_report::{build_table, deviation_report, render, ColumnId, ReportFormat};
use pnt_core::primorial::{enumerate_totatives, primorial};
use pnt_core::representation::{decompose, SuccessionKind};
use pnt_core::theorem_checks::{
    check_bertrand, check_squeeze_brackets, check_suzuki, mertens_ratio,
};
use pnt_core::totative_estimator::estimator_bundle;
use pnt_core::{Config, CountMethod, Natural, PrimeEngine, Ratio};

#[derive(Parser)]
#[command(name = "pnt", version, about = "Prime counting and primorial-scale asymptotics")]
struct Cli {
    #[command(flatten)]
    limits: Limits,
    #[command(subcommand)]
    command: Command,
}

/// Resource limits. Flags win over their environment fallbacks.
#[derive(Args)]
struct Limits {
    /// Largest x the segmented sieve may stream
    #[arg(long, global = true, env = "PNT_SIEVE_THRESHOLD", value_name = "N", value_parser = index_arg)]
    sieve_threshold: Option<u64>,

    /// Largest x the combinatorial counter accepts
    #[arg(long, global = true, env = "PNT_COMBINATORIAL_THRESHOLD", value_name = "N", value_parser = index_arg)]
    combinatorial_threshold: Option<u64>,

    /// Numbers per sieve segment
    #[arg(long, global = true, env = "PNT_SEGMENT_SIZE", value_name = "N", value_parser = index_arg)]
    segment_size: Option<u64>,

    /// Largest primorial whose totatives may be listed
    #[arg(long, global = true, env = "PNT_TOTATIVE_ENUMERATION_BOUND", value_name = "N", value_parser = index_arg)]
    totative_bound: Option<u64>,
}

impl Limits {
    fn to_config(&self) -> Result<Config, String> {
        let defaults = Config::default();
        let config = Config {
            sieve_threshold: self.sieve_threshold.unwrap_or(defaults.sieve_threshold),
            combinatorial_threshold: self
                .combinatorial_threshold
                .unwrap_or(defaults.combinatorial_threshold),
            segment_size: match self.segment_size {
                Some(s) => usize::try_from(s)
                    .map_err(|_| "segment size does not fit this platform".to_string())?,
                None => defaults.segment_size,
            },
            totative_enumeration_bound: self
                .totative_bound
                .unwrap_or(defaults.totative_enumeration_bound),
        };
        if config.sieve_threshold == 0
            || config.combinatorial_threshold == 0
            || config.segment_size == 0
            || config.totative_enumeration_bound == 0
        {
            return Err("limits must be positive".into());
        }
        if config.sieve_threshold > config.combinatorial_threshold {
            return Err(format!(
                "sieve threshold {} must not exceed combinatorial threshold {}",
                config.sieve_threshold, config.combinatorial_threshold
            ));
        }
        Ok(config)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Count primes p <= x
    Pi {
        /// Upper bound, decimal or 1e<k>
        #[arg(value_parser = natural_arg)]
        x: Natural,
        /// auto, sieve, combinatorial, or checkpoint
        #[arg(long, default_value = "auto", value_parser = method_arg)]
        method: CountMethod,
    },
    /// Product of the first n primes
    Primorial {
        #[arg(value_parser = index_arg)]
        n: u64,
    },
    /// Totatives of the n-th primorial, one per line
    Totatives {
        #[arg(value_parser = index_arg)]
        n: u64,
    },
    /// Decompose x as a_n * s with a_n <= x < a_next along a succession
    Represent {
        #[arg(value_parser = natural_arg)]
        x: Natural,
        /// prime or primorial
        #[arg(long, default_value = "primorial", value_parser = succession_arg)]
        succession: SuccessionKind,
    },
    /// All eleven log-variant values at x, one per line
    Logs {
        #[arg(value_parser = natural_arg)]
        x: Natural,
        /// Parameter for the parametric variant of both families
        #[arg(long, default_value = "1", value_parser = ratio_arg)]
        a: Ratio,
    },
    /// The totative estimator chain at x
    Totstar {
        #[arg(value_parser = natural_arg)]
        x: Natural,
    },
    /// Finite verification scans; nonzero exit on any violation
    #[command(subcommand)]
    Check(CheckCommand),
    /// Convergence table of pi(10^k) ratios
    Table {
        /// Exponent range for x = 10^k, as a..b or a single k
        #[arg(long, default_value = "1..25", value_parser = rows_arg)]
        rows: RangeInclusive<u32>,
        /// all or a comma-separated list of column ids
        #[arg(long, default_value = "all", value_parser = columns_arg)]
        columns: ColumnSet,
        /// Succession family for the star column: primorial or prime
        #[arg(long, default_value = "primorial", value_parser = family_arg)]
        family: LogFamily,
        /// csv or md
        #[arg(long, default_value = "csv", value_parser = format_arg)]
        format: ReportFormat,
        /// Compare computed columns against the bundled reference values
        #[arg(long)]
        deviations: bool,
    },
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Gap bound p_{n+1} <= 2 p_n - 1 and its two-step log form, n = 1..max_n
    Bertrand {
        #[arg(long, value_parser = index_arg)]
        max_n: u64,
    },
    /// Threshold past which p_{n+1}^m stays below the primorial #(n)
    Suzuki {
        #[arg(long, value_parser = index_arg)]
        m: u64,
        #[arg(long, value_parser = index_arg)]
        limit: u64,
    },
    /// Prime product over p/(p-1) against e^gamma ln x
    Mertens {
        #[arg(long, value_parser = natural_arg)]
        x: Natural,
    },
    /// Log-family brackets and the rational squeeze on random samples
    Squeeze {
        #[arg(long, value_parser = index_arg)]
        samples: u64,
        #[arg(long, value_parser = natural_arg)]
        x_max: Natural,
        #[arg(long, default_value_t = 1, value_parser = index_arg)]
        seed: u64,
    },
}

#[derive(Clone)]
struct ColumnSet(Vec<ColumnId>);

fn natural_arg(s: &str) -> Result<Natural, String> {
    parse_natural(s).map_err(|e| e.to_string())
}

fn index_arg(s: &str) -> Result<u64, String> {
    let n = parse_natural(s).map_err(|e| e.to_string())?;
    n.to_u64()
        .ok_or_else(|| format!("{s} does not fit in 64 bits"))
}

fn ratio_arg(s: &str) -> Result<Ratio, String> {
    parse_ratio(s).map_err(|e| e.to_string())
}

fn method_arg(s: &str) -> Result<CountMethod, String> {
    s.parse().map_err(|e: pnt_core::Error| e.to_string())
}

fn succession_arg(s: &str) -> Result<SuccessionKind, String> {
    s.parse().map_err(|e: pnt_core::Error| e.to_string())
}

fn family_arg(s: &str) -> Result<LogFamily, String> {
    s.parse().map_err(|e: pnt_core::Error| e.to_string())
}

fn format_arg(s: &str) -> Result<ReportFormat, String> {
    s.parse().map_err(|e: pnt_core::Error| e.to_string())
}

fn columns_arg(s: &str) -> Result<ColumnSet, String> {
    if s == "all" {
        return Ok(ColumnSet(ColumnId::ALL.to_vec()));
    }
    s.split(',')
        .map(|id| id.trim().parse::<ColumnId>().map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()
        .map(ColumnSet)
}

fn rows_arg(s: &str) -> Result<RangeInclusive<u32>, String> {
    let exponent =
        |t: &str| t.parse::<u32>().map_err(|_| format!("bad exponent {t:?} in row range"));
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            Ok(exponent(a)?..=exponent(b)?)
        }
        None => {
            let k = exponent(s)?;
            Ok(k..=k)
        }
    }
}

/// Twelve significant digits, plain decimal.
fn sig12(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).clamp(0, 17) as usize;
    format!("{v:.decimals$}")
}

fn ratio_pq(r: &Ratio) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match cli.limits.to_config() {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match run(cli.command, config) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command, config: Config) -> pnt_core::Result<ExitCode> {
    let engine = PrimeEngine::new(config);
    let started = Instant::now();
    match command {
        Command::Pi { x, method } => {
            println!("{}", engine.count_primes(&x, method)?);
            eprintln!("elapsed {:.3}s", started.elapsed().as_secs_f64());
        }
        Command::Primorial { n } => {
            println!("{}", primorial(&engine, n)?);
        }
        Command::Totatives { n } => {
            let set = enumerate_totatives(&engine, n)?;
            let mut out = String::new();
            for m in &set.members {
                out.push_str(&m.to_string());
                out.push('\n');
            }
            print!("{out}");
        }
        Command::Represent { x, succession } => {
            let rep = decompose(&engine, &x, succession)?;
            let index = rep
                .index
                .map_or_else(|| "?".to_string(), |n| n.to_string());
            println!(
                "n={index} a_n={} a_next={} r={} s={}",
                rep.lower,
                rep.upper,
                ratio_pq(&rep.remainder),
                ratio_pq(&rep.scale)
            );
        }
        Command::Logs { x, a } => {
            // the first prime cell has nothing below it, so the variants
            // that look back from there have no value to print
            let prime_defined = x > Natural::from(2u32);
            for v in PrimeLogVariant::FIXED {
                let defined = prime_defined
                    || !matches!(v, PrimeLogVariant::Minus | PrimeLogVariant::StarBlend);
                if defined {
                    println!("prime {} {}", v.name(), sig12(eval_prime_family(&engine, &x, &v)?));
                } else {
                    println!("prime {} undefined", v.name());
                }
            }
            if prime_defined {
                let v = PrimeLogVariant::Parametric(a.clone());
                println!("prime parametric {}", sig12(eval_prime_family(&engine, &x, &v)?));
            } else {
                println!("prime parametric undefined");
            }
            for v in PrimorialLogVariant::FIXED {
                println!(
                    "primorial {} {}",
                    v.name(),
                    sig12(eval_primorial_family(&engine, &x, &v)?)
                );
            }
            let v = PrimorialLogVariant::Parametric(a);
            println!(
                "primorial parametric {}",
                sig12(eval_primorial_family(&engine, &x, &v)?)
            );
        }
        Command::Totstar { x } => {
            let b = estimator_bundle(&engine, &x)?;
            println!("x {}", b.x);
            println!("t_star {}", b.t_star);
            println!("tot_star {}", b.tot_star);
            println!("y {}", b.y_val);
            println!("f {}", sig12(b.f_val));
            println!("g {}", sig12(b.g_val));
            println!("f_circ {}", sig12(b.f_circ));
            println!("g_circ {}", sig12(b.g_circ));
            println!("h_circ {}", sig12(b.h_circ));
        }
        Command::Check(check) => {
            let report = match check {
                CheckCommand::Bertrand { max_n } => check_bertrand(&engine, max_n)?,
                CheckCommand::Suzuki { m, limit } => check_suzuki(&engine, m, limit)?,
                CheckCommand::Mertens { x } => {
                    println!("mertens_ratio {}", sig12(mertens_ratio(&engine, &x)?));
                    eprintln!("elapsed {:.3}s", started.elapsed().as_secs_f64());
                    return Ok(ExitCode::SUCCESS);
                }
                CheckCommand::Squeeze {
                    samples,
                    x_max,
                    seed,
                } => check_squeeze_brackets(&engine, samples, &x_max, seed)?,
            };
            println!("{report}");
            eprintln!("elapsed {:.3}s", report.elapsed.as_secs_f64());
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Table {
            rows,
            columns,
            family,
            format,
            deviations,
        } => {
            if deviations {
                print!("{}", deviation_report(&engine, &columns.0)?);
            } else {
                let table = build_table(&engine, rows, &columns.0, family)?;
                print!("{}", render(&table, format));
            }
            eprintln!("elapsed {:.3}s", started.elapsed().as_secs_f64());
        }
    }
    Ok(ExitCode::SUCCESS)
}
