//! `regint`: evaluate, enumerate, sweep and verify from the command line.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use regint::asymptotics::{
    all_constants, default_checkpoints, estimate_e, partial_sums_chunked, MainTerms,
};
use regint::csv;
use regint::extremal::{maximal_order_sequence, minimal_order_sequence_with, ExponentRule};
use regint::sieve::{ArithmeticTable, MAX_SIEVE};
use regint::verify::run_verification_on;
use regint::Error;

#[derive(Parser, Debug)]
#[command(name = "regint", version, about = "Regular integers modulo n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one function: `eval rho N`, `eval weak-order A N`, ...
    Eval {
        #[arg(value_enum)]
        function: Function,
        /// `N`, or `A N` for weak-order
        #[arg(required = true, num_args = 1..=2, allow_negative_numbers = true)]
        args: Vec<String>,
    },
    /// List the regular residues in [1, N] as CSV.
    Enumerate {
        n: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sieve n, spf, phi, rho for n <= MAX_N.
    Sieve {
        max_n: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Partial sums and error terms at checkpoints up to --max-x.
    Sums {
        #[arg(long, default_value_t = 1_000_000)]
        max_x: u64,
        /// Comma-separated checkpoints; defaults to powers of ten and 1000*2^j.
        #[arg(long, value_delimiter = ',')]
        checkpoints: Option<Vec<u64>>,
        #[arg(long, default_value_t = 100_000)]
        cutoff: u64,
        #[arg(short, long, default_value_t = 30)]
        k: u32,
        #[arg(long, default_value_t = 60)]
        nu_max: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Euler-product constants with their brackets.
    Constants {
        #[arg(long, default_value_t = 100_000)]
        cutoff: u64,
        #[arg(short, long, default_value_t = 30)]
        k: u32,
        #[arg(long, default_value_t = 60)]
        nu_max: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Normalized rho along the extremal test sequences.
    Extremal {
        #[arg(long, value_enum, default_value_t = Kind::Minimal)]
        kind: Kind,
        /// Exponent rule for --kind minimal.
        #[arg(long, value_enum, default_value_t = Exponents::Cubed)]
        exponents: Exponents,
        /// Comma-separated ascending prime bounds.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "1000,10000,100000,1000000"
        )]
        y: Vec<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the self-verification suites up to N_MAX.
    Verify {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
        /// Corrupt rho(N) in the sieved table before checking.
        #[arg(long, value_name = "N")]
        inject_fault: Option<u64>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Function {
    Rho,
    Phi,
    S,
    WeakOrder,
    UnitaryDivisors,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    Minimal,
    Maximal,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Exponents {
    Cubed,
    AboveSquare,
}

enum Failure {
    Usage(String),
    Verification,
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn output(path: Option<&PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            Failure::Runtime(format!("cannot create {}: {e}", p.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn parse_int<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, Failure> {
    s.parse()
        .map_err(|_| Failure::Usage(format!("invalid {what}: {s:?}")))
}

fn eval(function: Function, args: &[String]) -> Result<String, Failure> {
    let expected = if matches!(function, Function::WeakOrder) {
        2
    } else {
        1
    };
    if args.len() != expected {
        return Err(Failure::Usage(format!(
            "{function:?} takes {expected} argument(s), got {}",
            args.len()
        )));
    }
    let n: u64 = parse_int(args.last().unwrap(), "n")?;
    Ok(match function {
        Function::Rho => regint::rho(n)?.to_string(),
        Function::Phi => regint::euler_phi(n)?.to_string(),
        Function::S => regint::regular_sum(n)?.to_string(),
        Function::WeakOrder => {
            let a: i128 = parse_int(&args[0], "a")?;
            match regint::weak_order(a, n)? {
                Some(k) => k.to_string(),
                None => "none".to_string(),
            }
        }
        Function::UnitaryDivisors => regint::unitary_divisors(n)?
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(","),
    })
}

fn build_table(max_n: u64) -> Result<ArithmeticTable, Failure> {
    if max_n == 0 || max_n > MAX_SIEVE {
        return Err(Failure::Usage(format!(
            "bound must lie in [1, {MAX_SIEVE}]"
        )));
    }
    Ok(ArithmeticTable::build(max_n)?)
}

/// Fixed so that the merged sums, and hence the CSV, do not depend on the machine.
const SUM_CHUNKS: usize = 8;

fn sums(
    max_x: u64,
    checkpoints: Option<Vec<u64>>,
    cutoff: u64,
    k: u32,
    nu_max: u32,
) -> Result<Vec<regint::PartialSumRow>, Failure> {
    let requested = match checkpoints {
        Some(mut c) => {
            if c.iter().any(|&x| x == 0 || x > max_x) {
                return Err(Failure::Usage(format!(
                    "checkpoints must lie in [1, {max_x}]"
                )));
            }
            c.sort_unstable();
            c.dedup();
            c
        }
        None => default_checkpoints(max_x),
    };
    let table = build_table(max_x)?;
    let terms = MainTerms::from_constants(cutoff, k, nu_max)?;

    // E is fitted on the full default ladder, whatever was requested
    let mut all = default_checkpoints(max_x);
    all.extend_from_slice(&requested);
    all.sort_unstable();
    all.dedup();
    let rows = partial_sums_chunked(&table, &all, &terms, SUM_CHUNKS)?;
    let e = estimate_e(&rows, terms.d, (max_x / 10).max(1)).map_or(0.0, |est| est.e);
    let terms = terms.with_e(e);

    Ok(rows
        .into_iter()
        .filter(|r| requested.binary_search(&r.x).is_ok())
        .map(|mut r| {
            r.apply_main_terms(&terms);
            r
        })
        .collect())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Eval { function, args } => {
            println!("{}", eval(function, &args)?);
        }
        Command::Enumerate { n, out } => {
            let reg = regint::enumerate_regular(n)?;
            let mut w = output(out.as_ref())?;
            writeln!(w, "a")?;
            for a in reg {
                writeln!(w, "{a}")?;
            }
            w.flush()?;
        }
        Command::Sieve { max_n, out } => {
            let table = build_table(max_n)?;
            let mut w = output(out.as_ref())?;
            csv::write_sieve(&mut w, &table)?;
            w.flush()?;
        }
        Command::Sums {
            max_x,
            checkpoints,
            cutoff,
            k,
            nu_max,
            out,
        } => {
            let rows = sums(max_x, checkpoints, cutoff, k, nu_max)?;
            let mut w = output(out.as_ref())?;
            csv::write_sums(&mut w, &rows)?;
            w.flush()?;
        }
        Command::Constants {
            cutoff,
            k,
            nu_max,
            out,
        } => {
            let constants = all_constants(cutoff, k, nu_max)?;
            let mut w = output(out.as_ref())?;
            csv::write_constants(&mut w, &constants)?;
            w.flush()?;
        }
        Command::Extremal {
            kind,
            exponents,
            y,
            out,
        } => {
            let samples = match kind {
                Kind::Maximal => maximal_order_sequence(&y)?,
                Kind::Minimal => {
                    let rule = match exponents {
                        Exponents::Cubed => ExponentRule::Cubed,
                        Exponents::AboveSquare => ExponentRule::PowerAboveSquare,
                    };
                    minimal_order_sequence_with(&y, rule)?
                }
            };
            let mut w = output(out.as_ref())?;
            csv::write_extremal(&mut w, &samples)?;
            w.flush()?;
        }
        Command::Verify {
            n_max,
            inject_fault,
        } => {
            let mut table = build_table(n_max)?;
            if let Some(n) = inject_fault {
                if n == 0 || n > n_max {
                    return Err(Failure::Usage(format!(
                        "fault position must lie in [1, {n_max}]"
                    )));
                }
                table = table.with_corrupted_rho(n);
            }
            let report = run_verification_on(&table, n_max)?;
            println!("{report}");
            if !report.passed() {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
