//! `gdyck`: command-line front end for the grand-dyck library.
//!
//! Exit codes: 0 on success, 2 on usage or input errors, 3 when a
//! comparison or verification finds a mismatch.

mod table;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use grand_dyck::bijections::{factorize_pair, factors_to_json, gdp_to_pair, pair_to_gdp};
use grand_dyck::combinatorics::{
    count_item3, count_item4, count_item5, munarini_term, simplex_cells, u_count, v_count, BigCount,
};
use grand_dyck::compositions::CompositionPair;
use grand_dyck::paths::{
    enumerate_dyck_capped, enumerate_grand_dyck_capped, histogram_capped, parse_path, Cell,
    GrandDyckPath, DEFAULT_CAP,
};
use grand_dyck::series::{
    catalan_series, expand_comps_above, expand_f, expand_irreducible_gf, expand_no_low_peaks,
};
use grand_dyck::verify::{run_verify, Formulas};

use table::Table;

#[derive(Parser)]
#[command(name = "gdyck", version, about = "Grand-Dyck path statistics, series and bijections")]
struct Cli {
    /// Output format for tables and reports.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,

    /// Override the enumeration cap on semilength.
    #[arg(long, global = true)]
    cap: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Size, low peaks, components above ground and total components of a path.
    Stats { path: String },
    /// List every Grand-Dyck (or Dyck) path of a semilength.
    Enumerate {
        n: usize,
        #[arg(long)]
        dyck: bool,
    },
    /// Exhaustive (i, j, k) histogram at one semilength.
    Histogram {
        n: usize,
        /// Add the closed-form value and a match flag to each row.
        #[arg(long)]
        compare: bool,
    },
    /// Run every verification suite up to a semilength.
    Verify {
        n_max: usize,
        /// Include per-suite wall-clock times (makes output nondeterministic).
        #[arg(long)]
        timings: bool,
        /// Replace u(2,1,1,2) by a wrong value to exercise the harness.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Expand a generating function as a truncated series.
    Series { which: SeriesName, order: usize },
    /// Map an irreducible composition pair to a path, or back.
    Bijection {
        text: String,
        #[arg(long, value_enum, default_value_t = Direction::Forward)]
        direction: Direction,
        /// Also print the polyomino factorization of the pair.
        #[arg(long)]
        factors: bool,
    },
    /// Closed-form counts, optionally next to brute-force values.
    Counts {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=5))]
        item: u8,
        n: usize,
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesName {
    #[value(name = "F", alias = "f")]
    F,
    NoLowPeaks,
    CompsAbove,
    Irreducible,
    Catalan,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    Forward,
    Inverse,
}

struct Failure {
    code: u8,
    message: String,
}

fn input_error(e: impl ToString) -> Failure {
    Failure {
        code: 2,
        message: e.to_string(),
    }
}

fn mismatch(message: &str) -> Failure {
    Failure {
        code: 3,
        message: message.to_string(),
    }
}

fn big(v: &BigCount) -> Value {
    Value::String(v.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err((out, failure)) => {
            print!("{out}");
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

/// Returns the text for standard output; on failure, whatever output was
/// produced before the failure is still printed.
fn run(cli: &Cli) -> Result<String, (String, Failure)> {
    let cap = match cli.cap {
        Some(c) => {
            eprintln!("warning: enumeration cap overridden to {c}");
            c
        }
        None => DEFAULT_CAP,
    };
    let fmt = cli.format;
    let early = |f: Failure| (String::new(), f);
    match &cli.command {
        Command::Stats { path } => stats(path, fmt).map_err(early),
        Command::Enumerate { n, dyck } => enumerate(*n, *dyck, cap, fmt).map_err(early),
        Command::Histogram { n, compare } => histogram(*n, *compare, cap, fmt),
        Command::Verify {
            n_max,
            timings,
            inject_fault,
        } => verify(*n_max, *timings, *inject_fault, cap, fmt),
        Command::Series { which, order } => series(*which, *order, fmt).map_err(early),
        Command::Bijection {
            text,
            direction,
            factors,
        } => bijection(text, *direction, *factors).map_err(early),
        Command::Counts { item, n, oracle } => counts(*item, *n, *oracle, cap, fmt),
    }
}

fn stats(text: &str, fmt: Format) -> Result<String, Failure> {
    let p = parse_path(text).map_err(input_error)?;
    let s = p.stats();
    let signs: Vec<_> = p.components().iter().map(|c| c.sign).collect();
    Ok(match fmt {
        Format::Json => {
            let values = [json!(s.n), json!(s.i), json!(s.j), json!(s.k), json!(signs)];
            format!("{}\n", table::object(&["n", "i", "j", "k", "components"], &values))
        }
        Format::Csv => format!("n,i,j,k\n{},{},{},{}\n", s.n, s.i, s.j, s.k),
    })
}

fn enumerate(n: usize, dyck: bool, cap: usize, fmt: Format) -> Result<String, Failure> {
    let paths: Vec<String> = if dyck {
        enumerate_dyck_capped(n, cap).map_err(input_error)?.map(|d| d.to_string()).collect()
    } else {
        enumerate_grand_dyck_capped(n, cap)
            .map_err(input_error)?
            .map(|p| p.to_string())
            .collect()
    };
    let mut t = Table::new(&["path"]);
    for p in paths {
        t.push(vec![Value::String(p)]);
    }
    Ok(match fmt {
        Format::Json => {
            let list: Vec<_> = t.rows.iter().map(|r| r[0].clone()).collect();
            format!("{}\n", serde_json::to_string(&list).unwrap())
        }
        Format::Csv => t.to_csv(),
    })
}

fn histogram(n: usize, compare: bool, cap: usize, fmt: Format) -> Result<String, (String, Failure)> {
    let hist = histogram_capped(n, cap).map_err(|e| (String::new(), input_error(e)))?;
    let mut cells: Vec<Cell> = hist.cells.keys().copied().collect();
    let columns: &[&str] = if compare {
        for c in simplex_cells(n) {
            if !hist.cells.contains_key(&c) && u_count(n, c.i, c.j, c.k) > BigUint::default() {
                cells.push(c);
            }
        }
        cells.sort();
        &["i", "j", "k", "count", "formula", "match"]
    } else {
        &["i", "j", "k", "count"]
    };
    let mut t = Table::new(columns);
    let mut all_match = true;
    for c in cells {
        let count = BigUint::from(hist.get(c));
        let mut row = vec![json!(c.i), json!(c.j), json!(c.k), big(&count)];
        if compare {
            let formula = u_count(n, c.i, c.j, c.k);
            all_match &= formula == count;
            row.extend([big(&formula), json!(formula == count)]);
        }
        t.push(row);
    }
    let out = t.render(fmt == Format::Json);
    if all_match {
        Ok(out)
    } else {
        Err((out, mismatch("closed form disagrees with the histogram")))
    }
}

fn verify(n_max: usize, timings: bool, inject: bool, cap: usize, fmt: Format) -> Result<String, (String, Failure)> {
    fn faulty(n: usize, i: usize, j: usize, k: usize) -> BigCount {
        let v = u_count(n, i, j, k);
        if (n, i, j, k) == (2, 1, 1, 2) {
            v + 1u32
        } else {
            v
        }
    }
    let formulas = if inject {
        Formulas { u_count: faulty }
    } else {
        Formulas::default()
    };
    let report = run_verify(n_max, cap, &formulas).map_err(|e| (String::new(), input_error(e)))?;
    let out = match fmt {
        Format::Json => format!("{}\n", report.to_json(timings)),
        Format::Csv => {
            let mut cols = vec!["suite", "cells_checked", "failures"];
            if timings {
                cols.push("elapsed_ms");
            }
            let mut t = Table::new(&cols);
            for s in &report.suites {
                let mut row = vec![json!(s.name), json!(s.cells_checked), json!(s.failures)];
                if timings {
                    row.push(json!(s.elapsed_ms as u64));
                }
                t.push(row);
            }
            t.to_csv()
        }
    };
    if report.passed() {
        Ok(out)
    } else {
        let first = report
            .suites
            .iter()
            .find_map(|s| s.messages.first().map(|m| format!("{}: {m}", s.name)))
            .unwrap_or_default();
        Err((out, mismatch(&format!("verification failed; {first}"))))
    }
}

fn series(which: SeriesName, order: usize, fmt: Format) -> Result<String, Failure> {
    let s = match which {
        SeriesName::F => expand_f(order),
        SeriesName::NoLowPeaks => expand_no_low_peaks(order),
        SeriesName::CompsAbove => expand_comps_above(order),
        SeriesName::Irreducible => expand_irreducible_gf(order),
        SeriesName::Catalan => Ok(catalan_series(order)),
    }
    .map_err(input_error)?;
    Ok(match fmt {
        Format::Json => format!("{}\n", s.to_json()),
        Format::Csv => s.to_csv(),
    })
}

fn bijection(text: &str, direction: Direction, factors: bool) -> Result<String, Failure> {
    match direction {
        Direction::Forward => {
            let pair: CompositionPair = text.parse().map_err(input_error)?;
            let path = pair_to_gdp(&pair).map_err(input_error)?;
            if factors {
                let f = factorize_pair(&pair).map_err(input_error)?;
                Ok(format!(
                    "{{\"pair\":{},\"path\":{},\"factors\":{}}}\n",
                    json!(pair.to_string()),
                    json!(path.to_string()),
                    factors_to_json(&f)
                ))
            } else {
                Ok(format!("{path}\n"))
            }
        }
        Direction::Inverse => {
            let path: GrandDyckPath = text.parse().map_err(input_error)?;
            let pair = gdp_to_pair(&path).map_err(input_error)?;
            Ok(format!("{pair}\n"))
        }
    }
}

fn counts(item: u8, n: usize, oracle: bool, cap: usize, fmt: Format) -> Result<String, (String, Failure)> {
    let brute: Option<Vec<GrandDyckPath>> = if oracle {
        Some(
            enumerate_grand_dyck_capped(n, cap)
                .map_err(|e| (String::new(), input_error(e)))?
                .collect(),
        )
    } else {
        None
    };
    let count_paths = |pred: &dyn Fn(&GrandDyckPath) -> bool| {
        brute
            .as_ref()
            .map(|ps| BigUint::from(ps.iter().filter(|p| pred(p)).count()))
    };

    let two_index = matches!(item, 2 | 4);
    let mut cols = if two_index { vec!["j", "k", "count"] } else { vec!["j", "count"] };
    if oracle {
        cols.extend(["oracle", "match"]);
    }
    let mut t = Table::new(&cols);
    let mut all_match = true;
    let mut push = |idx: Vec<Value>, value: BigCount, brute: Option<BigUint>| {
        let mut row = idx;
        row.push(big(&value));
        if let Some(b) = brute {
            all_match &= b == value;
            row.extend([big(&b), json!(b == value)]);
        }
        t.push(row);
    };
    match item {
        1 | 5 => {
            for j in 0..=n / 2 {
                let (value, b) = if item == 1 {
                    (munarini_term(n, j), count_paths(&|p| p.low_peaks() == 0 && p.stats().j == j))
                } else {
                    (count_item5(n, j), count_paths(&|p| p.big_components_above() == j))
                };
                push(vec![json!(j)], value, b);
            }
        }
        3 => {
            for j in 0..=n {
                push(vec![json!(j)], count_item3(n, j), count_paths(&|p| p.stats().j == j));
            }
        }
        _ => {
            for j in 0..=n {
                for k in j..=n {
                    let same = |p: &GrandDyckPath| {
                        let s = p.stats();
                        s.j == j && s.k == k
                    };
                    if item == 2 {
                        if n > 0 && j + k >= 2 * n {
                            continue;
                        }
                        let v = v_count(n, j, k).expect("j + k < 2n");
                        push(vec![json!(j), json!(k)], v, count_paths(&|p| p.low_peaks() == 0 && same(p)));
                    } else {
                        push(vec![json!(j), json!(k)], count_item4(n, j, k), count_paths(&same));
                    }
                }
            }
        }
    }
    let out = t.render(fmt == Format::Json);
    if all_match {
        Ok(out)
    } else {
        Err((out, mismatch("closed form disagrees with brute force")))
    }
}
