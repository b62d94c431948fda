//! `idom` — exact Italian domination numbers for products of directed
//! cycles.
//!
//! Human-readable output uses 1-based coordinates, the usual mathematical
//! convention; files (labeling grids, edge lists) are 0-based throughout.
//!
//! Exit codes are a stable scripting contract: 0 success, 1 usage or input
//! error, 2 solver cap refusal, 3 certificate invalid.

use std::fs;
use std::path::PathBuf;
use std::process;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use idom_core::constructions::{certificate_for, closed_form_gamma};
use idom_core::idf::{self, BoundReport};
use idom_core::solver::{solve_instance, solve_profile_dp};
use idom_core::{Error, ProductInstance, ProductKind, SolverConfig};

mod table;

use table::{Format, Row, RowData};

const EXIT_USAGE: i32 = 1;
const EXIT_CAP: i32 = 2;
const EXIT_INVALID_CERT: i32 = 3;

#[derive(Parser)]
#[command(
    name = "idom",
    version,
    about = "Exact Italian domination numbers of directed cycles and their cartesian/strong products"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest digraph order brute force will enumerate (3^order labelings)
    #[arg(long, global = true, default_value_t = 16, value_name = "ORDER")]
    max_brute: usize,

    /// Largest column height for the transfer DP (3^rows states)
    #[arg(long, global = true, default_value_t = 6, value_name = "ROWS")]
    max_dp_rows: usize,

    /// Worker threads for solver internals (default: all cores)
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Cartesian,
    Strong,
}

impl From<KindArg> for ProductKind {
    fn from(kind: KindArg) -> Self {
        match kind {
            KindArg::Cartesian => ProductKind::Cartesian,
            KindArg::Strong => ProductKind::Strong,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute gamma_I for one cycle product
    Compute {
        kind: KindArg,
        m: usize,
        n: usize,
        /// Also write the product digraph's edge list to this path
        #[arg(long, value_name = "PATH")]
        dump_graph: Option<PathBuf>,
    },
    /// Verify a labeling grid file against an instance
    Certify {
        file: PathBuf,
        kind: KindArg,
        m: usize,
        n: usize,
    },
    /// Solve a rectangle of instances and print a table
    Table {
        kind: KindArg,
        /// First-factor range, inclusive: `2..6` or a single value
        m_range: String,
        /// Second-factor range, inclusive: `3..8` or a single value
        n_range: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compare DP values of cartesian 4 x n (odd n) against 2n + 2
    Conjecture {
        /// Largest odd n to check, starting from 3
        n_max: usize,
    },
    /// Write the known-optimal construction for a covered instance
    EmitCertificate {
        kind: KindArg,
        m: usize,
        n: usize,
        /// Write to a file instead of stdout
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Write a product digraph as an edge list (first line order, then `u v` per arc)
    DumpGraph {
        kind: KindArg,
        m: usize,
        n: usize,
        /// Write to a file instead of stdout
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::CapExceeded { .. } | Error::SolversRefused(_) => EXIT_CAP,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            let _ = e.print();
            process::exit(EXIT_USAGE);
        }
    };
    if let Some(threads) = cli.threads {
        // may already be initialized when embedded in tests; that's fine
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    if let Err(failure) = run(&cli) {
        eprintln!("error: {}", failure.message);
        process::exit(failure.code);
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let config = SolverConfig {
        max_brute_order: cli.max_brute,
        max_dp_rows: cli.max_dp_rows,
        ..SolverConfig::default()
    };
    match &cli.command {
        Command::Compute {
            kind,
            m,
            n,
            dump_graph,
        } => compute((*kind).into(), *m, *n, dump_graph.as_deref(), &config),
        Command::Certify { file, kind, m, n } => certify(file, (*kind).into(), *m, *n),
        Command::Table {
            kind,
            m_range,
            n_range,
            format,
        } => table_cmd((*kind).into(), m_range, n_range, *format, &config),
        Command::Conjecture { n_max } => conjecture(*n_max, &config),
        Command::EmitCertificate { kind, m, n, output } => {
            emit_certificate((*kind).into(), *m, *n, output.as_deref())
        }
        Command::DumpGraph { kind, m, n, output } => {
            dump_graph((*kind).into(), *m, *n, output.as_deref())
        }
    }
}

fn solve_row(inst: &ProductInstance, config: &SolverConfig) -> Result<RowData, Error> {
    let started = Instant::now();
    let result = solve_instance(inst, config)?;
    let elapsed_ms = started.elapsed().as_millis();
    let closed = closed_form_gamma(inst);
    let bounds = BoundReport::for_instance(inst, closed);
    Ok(RowData {
        gamma: result.gamma,
        method: result.method,
        lower: bounds.lower,
        upper: bounds.upper,
        closed_form_match: closed == Some(result.gamma),
        elapsed_ms,
    })
}

fn compute(
    kind: ProductKind,
    m: usize,
    n: usize,
    dump: Option<&std::path::Path>,
    config: &SolverConfig,
) -> Result<(), Failure> {
    let inst = ProductInstance::new(kind, m, n)?;
    if let Some(path) = dump {
        write_file(path, &inst.digraph().to_edge_list())?;
    }
    let data = solve_row(&inst, config)?;
    let row = Row {
        kind,
        m,
        n,
        outcome: Ok(data),
    };
    print!("{}", table::render_text(std::slice::from_ref(&row)));
    Ok(())
}

fn certify(file: &std::path::Path, kind: ProductKind, m: usize, n: usize) -> Result<(), Failure> {
    let inst = ProductInstance::new(kind, m, n)?;
    let text = fs::read_to_string(file)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", file.display())))?;
    let labeling = idf::parse_grid(&text, m, n)?;
    let weight = labeling.weight();
    let profile = idf::column_profile(&inst, &labeling)?;
    let columns = profile
        .column_weights()
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    match idf::first_undominated(&inst.digraph(), &labeling)? {
        None => {
            println!("VALID");
            println!("weight: {weight}");
            println!("columns: {columns}");
            Ok(())
        }
        Some(v) => {
            let (i, j) = inst.coords(v);
            println!("INVALID");
            println!("weight: {weight}");
            println!("columns: {columns}");
            println!(
                "first undominated vertex: ({}, {}) in 1-based coordinates (grid row {i}, column {j})",
                i + 1,
                j + 1
            );
            Err(Failure {
                code: EXIT_INVALID_CERT,
                message: format!("labeling is not an Italian dominating function on {inst}"),
            })
        }
    }
}

/// Inclusive range syntax: `a..b`, or a single value `a`.
fn parse_range(text: &str) -> Result<std::ops::RangeInclusive<usize>, Failure> {
    let bad = || Failure::usage(format!("invalid range {text:?} (expected `a..b` or `a`)"));
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        Ok(lo..=hi)
    } else {
        let v: usize = text.trim().parse().map_err(|_| bad())?;
        Ok(v..=v)
    }
}

fn table_cmd(
    kind: ProductKind,
    m_range: &str,
    n_range: &str,
    format: Format,
    config: &SolverConfig,
) -> Result<(), Failure> {
    let ms = parse_range(m_range)?;
    let ns = parse_range(n_range)?;
    let mut rows = Vec::new();
    let mut refused = 0usize;
    for m in ms {
        for n in ns.clone() {
            let outcome = ProductInstance::new(kind, m, n)
                .and_then(|inst| solve_row(&inst, config))
                .map_err(|e| {
                    refused += 1;
                    e.to_string()
                });
            rows.push(Row {
                kind,
                m,
                n,
                outcome,
            });
        }
    }
    let rendered = match format {
        Format::Text => table::render_text(&rows),
        Format::Csv => table::render_csv(&rows),
        Format::Json => table::render_json(&rows),
    };
    print!("{rendered}");
    if refused > 0 {
        return Err(Failure {
            code: EXIT_CAP,
            message: format!("{refused} instance(s) could not be solved (annotated per row)"),
        });
    }
    Ok(())
}

fn conjecture(n_max: usize, config: &SolverConfig) -> Result<(), Failure> {
    if n_max.is_multiple_of(2) {
        return Err(Failure::usage(format!("n-max must be odd, got {n_max}")));
    }
    println!("testing: gamma_I(cartesian 4xn) = 2n + 2 for odd n, n <= {n_max}");
    if n_max < 3 {
        println!("no odd n in [3, {n_max}]: nothing to check");
        return Ok(());
    }
    if config.max_dp_rows < 4 {
        return Err(Failure {
            code: EXIT_CAP,
            message: "the conjecture explorer needs --max-dp-rows >= 4".into(),
        });
    }
    for n in (3..=n_max).step_by(2) {
        let inst = ProductInstance::new(ProductKind::Cartesian, 4, n)?;
        let result = solve_profile_dp(&inst, config)?;
        let conjectured = 2 * n as u32 + 2;
        let verdict = if result.gamma == conjectured {
            "SUPPORTED"
        } else {
            "REFUTED"
        };
        println!(
            "n={n:>3}  dp_gamma={:>4}  conjectured={:>4}  {verdict}",
            result.gamma, conjectured
        );
    }
    println!("finite check only: values reported, nothing proved");
    Ok(())
}

fn emit_certificate(
    kind: ProductKind,
    m: usize,
    n: usize,
    output: Option<&std::path::Path>,
) -> Result<(), Failure> {
    let inst = ProductInstance::new(kind, m, n)?;
    match certificate_for(&inst)? {
        Some(cert) => {
            write_out(output, &cert.emit())?;
            Ok(())
        }
        None => Err(Failure::usage(format!(
            "no closed-form construction covers {inst}; `compute` may still solve it exactly"
        ))),
    }
}

fn dump_graph(
    kind: ProductKind,
    m: usize,
    n: usize,
    output: Option<&std::path::Path>,
) -> Result<(), Failure> {
    let inst = ProductInstance::new(kind, m, n)?;
    write_out(output, &inst.digraph().to_edge_list())
}

fn write_out(path: Option<&std::path::Path>, content: &str) -> Result<(), Failure> {
    match path {
        Some(path) => write_file(path, content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn write_file(path: &std::path::Path, content: &str) -> Result<(), Failure> {
    fs::write(path, content)
        .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}
