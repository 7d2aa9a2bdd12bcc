mod commands;
mod report;

use clap::{Args, Parser, Subcommand};
use cmperiods::{Error, PrecisionContext};
use report::Outcome;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "cmperiods", version, about = "High-precision checks of CM period identities")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Target decimal digits.
    #[arg(long, global = true, default_value_t = 120)]
    prec: u32,
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the report to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduced forms and class number of discriminant -D.
    Class {
        #[arg(long)]
        d: u64,
    },
    /// Chowla-Selberg identity for discriminant -D.
    VerifyCs {
        #[arg(long)]
        d: u64,
    },
    /// Kronecker limit formula per class (all classes unless --class is given).
    Kronecker {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        class: Option<usize>,
    },
    /// Product of the elliptic period integrals over the classes of -P.
    Periods {
        #[arg(long)]
        p: u64,
    },
    /// Faltings height of A(P) from periods and from L(ε, s).
    Faltings {
        #[arg(long)]
        p: u64,
    },
    /// CM type and period certificates of the Fermat quotient C(r,s,t).
    Fermat {
        #[arg(long)]
        p: u64,
        #[arg(long, value_parser = triple::<u64>, value_name = "R,S,T")]
        rst: (u64, u64, u64),
    },
    /// Hecke character value ψ_M on the ideal of a form.
    Hecke {
        #[arg(long)]
        p: u64,
        #[arg(long, value_parser = triple::<i64>, value_name = "A,B,C", allow_hyphen_values = true)]
        form: (i64, i64, i64),
    },
    /// Recognize a decimal as a small rational (or rational·√P).
    Recognize {
        #[arg(long, allow_hyphen_values = true)]
        value: String,
        #[arg(long)]
        sqrtp: Option<u64>,
    },
    /// Run the invariant battery up to discriminant N.
    Suite {
        #[arg(long)]
        max_d: u64,
    },
}

fn triple<T: std::str::FromStr>(s: &str) -> Result<(T, T, T), String> {
    let parts: Vec<T> = s
        .split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| format!("{x:?} is not a valid integer")))
        .collect::<Result<_, _>>()?;
    match parts.as_slice() {
        [_, _, _] => {
            let mut it = parts.into_iter();
            Ok((it.next().unwrap(), it.next().unwrap(), it.next().unwrap()))
        }
        _ => Err(format!("expected three comma-separated integers, got {s:?}")),
    }
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Class { .. } => "class",
            Command::VerifyCs { .. } => "verify-cs",
            Command::Kronecker { .. } => "kronecker",
            Command::Periods { .. } => "periods",
            Command::Faltings { .. } => "faltings",
            Command::Fermat { .. } => "fermat",
            Command::Hecke { .. } => "hecke",
            Command::Recognize { .. } => "recognize",
            Command::Suite { .. } => "suite",
        }
    }
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PRECISION: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.global.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(EXIT_USAGE);
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().expect("thread pool initialized once");
    }
    let ctx = match PrecisionContext::with_target(cli.global.prec) {
        Ok(ctx) => ctx,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let mut outcome = Outcome::new(cli.command.name(), cli.global.prec);
    let result = commands::run(&cli.command, &ctx, &mut outcome);
    let code = match &result {
        Ok(()) if outcome.all_pass() => 0,
        Ok(()) => EXIT_FAIL,
        Err(Error::Precision { .. }) => EXIT_PRECISION,
        Err(Error::Consistency(_)) => EXIT_FAIL,
        Err(_) => EXIT_USAGE,
    };
    if let Err(e) = &result {
        eprintln!("error: {e}");
        if !matches!(e, Error::Precision { .. } | Error::Consistency(_)) {
            return ExitCode::from(code);
        }
    }
    let text = if cli.global.json { outcome.to_json() } else { outcome.to_table() };
    match &cli.global.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_USAGE);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code)
}
