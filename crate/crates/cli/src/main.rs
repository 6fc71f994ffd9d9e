//! Command-line front end: sequence values, series coefficients, identity
//! verification, the rational enumeration, and OEIS b-file export.
//!
//! Exit codes: 0 when everything requested passed, 1 when a verification
//! check failed, 2 on usage errors (including unknown identity ids).

use std::collections::HashSet;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;
use serde_json::json;

use sterntwist::identities::run_identity;
use sterntwist::{
    g_series, h_series, rational_at, stern, stern_series, twisted, twisted_series, u_series,
    IdentityId, Report,
};

#[derive(Parser)]
#[command(name = "sterntwist", version, about = "Stern's diatomic sequence, its twist, and their generating-function identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeqKind {
    /// Stern sequence s(n)
    S,
    /// Twisted Stern sequence t(n)
    T,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesKind {
    /// Coefficients of S(z): s(0), s(1), ...
    S,
    /// Coefficients of T(z): t(0), t(1), ...
    T,
    /// Coefficients of U(z) = (sum t(3+n) z^n) / S(z)
    U,
    /// Coefficients of G(z) = (sum (s(2+n) - s(1+n)) z^n) / S(z)
    G,
    /// Coefficients of H(z) = -(sum (t(2+n) + t(1+n)) z^n) / S(z)
    H,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum Format {
    #[default]
    Plain,
    Json,
    /// OEIS b-file lines `n a(n)` (series subcommand only)
    Bfile,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate s(n) or t(n); n may be decimal or 0x-prefixed hex of any size
    Value {
        seq: SeqKind,
        n: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print the first N coefficients of a named series
    Series {
        series: SeriesKind,
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check generating-function identities; ids default to the whole catalog
    Verify {
        /// Identity ids (or `all`)
        ids: Vec<String>,
        /// Largest e (k for lemma_3_1) to check parametrized identities at
        #[arg(long, default_value_t = 4)]
        emax: u32,
        /// Truncation order for the series comparisons
        #[arg(long, default_value_t = 1024)]
        order: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print the rational enumeration s(n+1)/s(n) for n = 1..count
    Rationals {
        count: u64,
        /// Also verify the printed values are reduced and pairwise distinct
        #[arg(long)]
        check_distinct: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// OEIS b-file lines `n a(n)` for the inclusive index range [start, end]
    Bfile {
        seq: SeqKind,
        start: String,
        end: String,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

/// Ok(true) = success, Ok(false) = a verification check failed (exit 1),
/// Err = usage error (exit 2).
fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Value { seq, n, format } => run_value(seq, &n, format),
        Command::Series {
            series,
            order,
            format,
        } => run_series(series, order, format),
        Command::Verify {
            ids,
            emax,
            order,
            format,
        } => run_verify(&ids, emax, order, format),
        Command::Rationals {
            count,
            check_distinct,
            format,
        } => run_rationals(count, check_distinct, format),
        Command::Bfile { seq, start, end } => run_bfile(seq, &start, &end),
    }
}

fn parse_nat(s: &str) -> Result<BigUint, String> {
    let (digits, radix) = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => (hex, 16),
        None => (s, 10),
    };
    BigUint::parse_bytes(digits.as_bytes(), radix)
        .ok_or_else(|| format!("`{s}` is not a natural number (decimal or 0x-hex)"))
}

fn reject_bfile(format: Format) -> Result<(), String> {
    if format == Format::Bfile {
        return Err("the bfile format applies to the series subcommand; use the bfile subcommand for sequence values".into());
    }
    Ok(())
}

fn run_value(seq: SeqKind, n: &str, format: Format) -> Result<bool, String> {
    reject_bfile(format)?;
    let n = parse_nat(n)?;
    let (name, value) = match seq {
        SeqKind::S => ("s", stern(&n).to_string()),
        SeqKind::T => ("t", twisted(&n).to_string()),
    };
    match format {
        Format::Plain => println!("{value}"),
        Format::Json => println!(
            "{}",
            json!({ "seq": name, "n": n.to_string(), "value": value })
        ),
        Format::Bfile => unreachable!(),
    }
    Ok(true)
}

fn series_coeffs(kind: SeriesKind, order: usize) -> (&'static str, Vec<BigInt>) {
    match kind {
        SeriesKind::S => ("s", stern_series(order).coeffs().to_vec()),
        SeriesKind::T => ("t", twisted_series(order).coeffs().to_vec()),
        SeriesKind::U => ("u", u_series(order).coeffs().to_vec()),
        SeriesKind::G => ("g", g_series(order).coeffs().to_vec()),
        SeriesKind::H => ("h", h_series(order).coeffs().to_vec()),
    }
}

fn run_series(kind: SeriesKind, order: usize, format: Format) -> Result<bool, String> {
    if order == 0 {
        return Err("--order must be at least 1".into());
    }
    let (name, coeffs) = series_coeffs(kind, order);
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match format {
        Format::Plain => {
            let line: Vec<String> = coeffs.iter().map(BigInt::to_string).collect();
            writeln!(out, "{}", line.join(" ")).map_err(|e| e.to_string())?;
        }
        Format::Json => {
            let strings: Vec<String> = coeffs.iter().map(BigInt::to_string).collect();
            writeln!(
                out,
                "{}",
                json!({ "series": name, "order": order, "coeffs": strings })
            )
            .map_err(|e| e.to_string())?;
        }
        Format::Bfile => {
            for (k, c) in coeffs.iter().enumerate() {
                writeln!(out, "{k} {c}").map_err(|e| e.to_string())?;
            }
        }
    }
    Ok(true)
}

fn param_label(id: IdentityId) -> char {
    if id == IdentityId::Lemma31 {
        'k'
    } else {
        'e'
    }
}

fn plain_report_line(r: &Report) -> String {
    let param = match r.param {
        Some(p) => format!("{}={p}", param_label(r.id)),
        None => "-".into(),
    };
    let order = match r.order {
        Some(n) => format!("order={n}"),
        None => "order=-".into(),
    };
    let mut line = format!(
        "{:<12} {:<5} {:<12} effective={:<6} {}",
        r.id, param, order, r.effective_order, r.status
    );
    if let Some(m) = &r.mismatch {
        line.push_str(&format!(
            " mismatch at index {}: lhs={} rhs={}",
            m.index, m.lhs, m.rhs
        ));
    }
    line
}

fn report_json(r: &Report) -> serde_json::Value {
    json!({
        "id": r.id.name(),
        "param": r.param,
        "order": r.order,
        "status": r.status.to_string(),
        "effective_order": r.effective_order,
        "mismatch": r.mismatch.as_ref().map(|m| json!({
            "index": m.index,
            "lhs": m.lhs.to_string(),
            "rhs": m.rhs.to_string(),
        })),
    })
}

fn run_verify(ids: &[String], emax: u32, order: usize, format: Format) -> Result<bool, String> {
    reject_bfile(format)?;
    if order == 0 {
        return Err("--order must be at least 1".into());
    }
    if emax > 20 {
        return Err("--emax beyond 20 is not supported (sequence ranges of length 3*2^e outgrow memory)".into());
    }
    let selected: Vec<IdentityId> = if ids.is_empty() || ids.iter().any(|s| s == "all") {
        IdentityId::ALL.to_vec()
    } else {
        ids.iter()
            .map(|s| {
                s.parse::<IdentityId>().map_err(|e| {
                    let known: Vec<&str> = IdentityId::ALL.iter().map(|id| id.name()).collect();
                    format!("{e}; usage: verify [{} | all]", known.join(" | "))
                })
            })
            .collect::<Result<_, _>>()?
    };

    // one cell per (identity, parameter), in catalog order then by parameter
    let mut cells: Vec<(IdentityId, Option<u32>)> = Vec::new();
    for id in selected {
        match id.param_range(emax) {
            None => cells.push((id, None)),
            Some(range) => cells.extend(range.map(|e| (id, Some(e)))),
        }
    }
    cells.sort();
    cells.dedup();

    let reports: Vec<Report> = cells
        .into_par_iter()
        .map(|(id, param)| run_identity(id, param.unwrap_or(0), order))
        .collect();

    let all_passed = reports.iter().all(Report::passed);
    match format {
        Format::Plain => {
            for r in &reports {
                println!("{}", plain_report_line(r));
            }
        }
        Format::Json => {
            let values: Vec<serde_json::Value> = reports.iter().map(report_json).collect();
            println!("{}", serde_json::Value::Array(values));
        }
        Format::Bfile => unreachable!(),
    }
    Ok(all_passed)
}

fn run_rationals(count: u64, check_distinct: bool, format: Format) -> Result<bool, String> {
    reject_bfile(format)?;
    if count == 0 {
        return Err("count must be at least 1".into());
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut seen = HashSet::new();
    let mut json_items = Vec::new();
    for n in 1..=count {
        let r = rational_at(&BigUint::from(n)).expect("n >= 1");
        if check_distinct {
            if r.num.gcd(&r.den) != BigUint::one() {
                return Err(format!("value {r} at n={n} is not reduced"));
            }
            if !seen.insert((r.num.clone(), r.den.clone())) {
                return Err(format!("value {r} repeats at n={n}"));
            }
        }
        match format {
            Format::Plain => writeln!(out, "{r}").map_err(|e| e.to_string())?,
            Format::Json => json_items.push(r.to_string()),
            Format::Bfile => unreachable!(),
        }
    }
    if format == Format::Json {
        writeln!(out, "{}", json!({ "count": count, "rationals": json_items }))
            .map_err(|e| e.to_string())?;
    }
    Ok(true)
}

fn run_bfile(seq: SeqKind, start: &str, end: &str) -> Result<bool, String> {
    let start = parse_nat(start)?;
    let end = parse_nat(end)?;
    if start > end {
        return Err(format!("inverted range: {start} > {end}"));
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut n = start;
    loop {
        match seq {
            SeqKind::S => writeln!(out, "{n} {}", stern(&n)),
            SeqKind::T => writeln!(out, "{n} {}", twisted(&n)),
        }
        .map_err(|e| e.to_string())?;
        if n == end {
            break;
        }
        n += 1u32;
    }
    Ok(true)
}
