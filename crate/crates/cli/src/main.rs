use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kwflow::arith::format_rational;
use kwflow::families::{family_coeffs, FAMILIES};
use kwflow::registry::{self, Config, IndexRange, IDENTITIES};
use kwflow::report::Status;
use kwflow::virasoro::fixture::parse_fixture;
use serde_json::json;

/// Exact formal-series coefficients and order-by-order identity checks.
#[derive(Parser)]
#[command(name = "kwflow", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficients of a named family.
    Coeffs {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(FAMILIES))]
        family: String,
        #[arg(long, env = "KWFLOW_ORDER", default_value_t = registry::DEFAULT_ORDER,
              value_parser = order_in_range)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an identity (or `all`), one JSON line per report.
    Verify {
        identity: String,
        #[arg(long, env = "KWFLOW_ORDER", default_value_t = registry::DEFAULT_ORDER,
              value_parser = order_in_range)]
        order: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Corpus weight for the operator identities.
        #[arg(long, default_value_t = 9)]
        weight: u32,
        /// Index range `A..B` for the operator identities.
        #[arg(long, default_value = "-5..5", allow_hyphen_values = true)]
        range: IndexRange,
        /// `F_K` fixture for kw-constraints.
        #[arg(long)]
        fixture: Option<PathBuf>,
        /// Inject each identity's documented single-coefficient fault.
        #[arg(long)]
        perturb: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn order_in_range(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("not a nonnegative integer: {s}"))?;
    if (1..=200).contains(&n) {
        Ok(n)
    } else {
        Err(format!("order must be in 1..=200, got {n}"))
    }
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Coeffs { family, order, format, out } => coeffs(&family, order, format, out),
        Command::Verify { identity, order, seed, weight, range, fixture, perturb } => {
            let fixture = match fixture.map(|p| fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display()))) {
                None => None,
                Some(Err(e)) => return usage(e),
                Some(Ok(text)) => match parse_fixture(&text) {
                    Ok(f) => Some(f),
                    Err(e) => return usage(e),
                },
            };
            let config = Config { order, seed, weight, range, fixture, perturb };
            verify(&identity, &config)
        }
    }
}

fn coeffs(family: &str, order: usize, format: Format, out: Option<PathBuf>) -> ExitCode {
    let values = match family_coeffs(family, order) {
        Ok(v) => v,
        Err(e) => return usage(e),
    };
    let text = match format {
        Format::Json => {
            let coeffs: Vec<_> =
                values.iter().map(|(i, v)| json!({"index": i, "value": format_rational(v)})).collect();
            json!({"family": family, "order": order, "coeffs": coeffs}).to_string() + "\n"
        }
        Format::Csv => {
            let mut s = String::from("index,value\n");
            for (i, v) in &values {
                s += &format!("{i},{}\n", format_rational(v));
            }
            s
        }
    };
    let written = match out {
        Some(path) => fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => usage(e),
    }
}

fn verify(identity: &str, config: &Config) -> ExitCode {
    let names: Vec<&str> = if identity == "all" { IDENTITIES.to_vec() } else { vec![identity] };
    let reports = match registry::run_many(&names, config) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    let mut stdout = std::io::stdout().lock();
    let (mut pass, mut fail, mut skipped) = (0, 0, 0);
    for r in &reports {
        let _ = writeln!(stdout, "{}", r.to_json_line());
        match r.status {
            Status::Pass => pass += 1,
            Status::Fail => fail += 1,
            Status::Skipped => skipped += 1,
        }
    }
    eprintln!("{pass} passed, {fail} failed, {skipped} skipped");
    if fail > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
