//! `bimagic` — generate, verify, transform, and audit universal bimagic
//! squares over complete digit-string sets.
//!
//! Exit codes: 0 on success/pass, 1 when a property fails (a report is
//! still emitted), when a digit is unmappable, or when a search or budget
//! gives out; 2 on usage or parse errors.

mod doc;
mod report;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bimagic::{
    closed_form_targets_crosscheck, full_report, generate_with, mirror, oracle_search, rotate180,
    Alphabet, BlockShape, Error, OracleProperty, DEFAULT_ORACLE_BUDGET,
};
use doc::GridDocument;

#[derive(Parser)]
#[command(
    name = "bimagic",
    version,
    about = "Universal bimagic squares over complete digit-string sets",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search for a square and write its grid document.
    Generate {
        /// Square order: 8, 16, or 9.
        #[arg(long)]
        order: usize,
        /// Search seed; equal seeds reproduce the square byte-for-byte.
        #[arg(long)]
        seed: u64,
        /// Block tiling RxC (default: 2x4, 4x4, 3x3 by order).
        #[arg(long)]
        blocks: Option<String>,
        /// Output path (default: stdout).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a grid document and report every property.
    Verify {
        /// Input path, or `-` for stdin.
        input: String,
        /// Override the document's block tiling (RxC).
        #[arg(long)]
        blocks: Option<String>,
        /// Emit the report as JSON with stable key order.
        #[arg(long)]
        json: bool,
        /// Show all violations instead of the first 16 per property.
        #[arg(short, long)]
        verbose: bool,
    },
    /// Apply a digit-wise transform and write the image document.
    Transform {
        /// Input path, or `-` for stdin.
        input: String,
        /// Which transform to apply.
        #[arg(long)]
        op: TransformOp,
        /// Output path (default: stdout).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the forced sum constants for an order and audit the
    /// published values.
    Sums {
        /// Square order: 8, 16, or 9.
        #[arg(long)]
        order: usize,
    },
    /// Exhaustively decide a property at a small order (≤ 4).
    Oracle {
        /// Square order, at most 4.
        #[arg(long)]
        order: usize,
        /// Alphabet digits, e.g. `01` or `012`.
        #[arg(long)]
        alphabet: String,
        /// Entry width; the alphabet and width must yield order² strings.
        #[arg(long)]
        width: usize,
        /// Property to decide.
        #[arg(long)]
        property: PropertyOp,
        /// Node budget before the search gives up (inconclusively).
        #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
        budget: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TransformOp {
    Rotate180,
    Mirror,
}

#[derive(Clone, Copy, ValueEnum)]
enum PropertyOp {
    Completeness,
    Magic,
    Bimagic,
}

/// A command abort: message plus which exit code it deserves.
enum CliError {
    /// Bad invocation or unreadable/invalid input: exit 2.
    Usage(String),
    /// A legitimate run that must report failure: exit 1.
    Failure(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => m,
        }
    }
}

/// Library errors split by blame: malformed requests are usage errors,
/// honest negative outcomes are failures.
fn classify(e: Error) -> CliError {
    match e {
        Error::SearchExhausted { .. }
        | Error::UnmappableDigit { .. }
        | Error::UnmappableCell { .. }
        | Error::CrosscheckMismatch { .. } => CliError::Failure(e.to_string()),
        _ => CliError::Usage(e.to_string()),
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Usage(format!("reading stdin: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("reading {path}: {e}")))
    }
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Usage(format!("writing {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_document(path: &str) -> Result<GridDocument, CliError> {
    let text = read_input(path)?;
    doc::parse(&text).map_err(|e| CliError::Usage(e.to_string()))
}

fn blocks_flag(order: usize, flag: Option<&String>) -> Result<Option<BlockShape>, CliError> {
    flag.map(|spec| doc::parse_block_spec(order, spec).map_err(CliError::Usage))
        .transpose()
}

fn cmd_generate(
    order: usize,
    seed: u64,
    blocks: Option<String>,
    output: Option<PathBuf>,
) -> Result<ExitCode, CliError> {
    if !matches!(order, 8 | 16 | 9) {
        return Err(CliError::Usage(format!(
            "unsupported order {order}: construction covers orders 8, 16, and 9"
        )));
    }
    let block = match blocks_flag(order, blocks.as_ref())? {
        Some(b) => b,
        None => BlockShape::default_for(order).expect("supported orders have default tilings"),
    };
    let grid = generate_with(order, seed, block).map_err(classify)?;
    let document = GridDocument {
        grid,
        blocks: Some(block),
        seed: Some(seed),
        provenance: None,
    };
    write_output(output.as_ref(), &doc::serialize(&document))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    input: &str,
    blocks: Option<String>,
    json: bool,
    verbose: bool,
) -> Result<ExitCode, CliError> {
    let document = parse_document(input)?;
    let order = document.grid.order();
    let block = match blocks_flag(order, blocks.as_ref())? {
        Some(b) => Some(b),
        None => document.blocks.or_else(|| BlockShape::default_for(order)),
    };
    let report = full_report(&document.grid, block);
    let pass = report.passes();
    let rendered = report::report_document(&report, verbose);
    let text = if json {
        let mut s = serde_json::to_string_pretty(&rendered)
            .expect("report serialization cannot fail");
        s.push('\n');
        s
    } else {
        report::render_text(&rendered)
    };
    print!("{text}");
    Ok(if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_transform(
    input: &str,
    op: TransformOp,
    output: Option<PathBuf>,
) -> Result<ExitCode, CliError> {
    let document = parse_document(input)?;
    let (transformed, label) = match op {
        TransformOp::Rotate180 => (rotate180(&document.grid), "rotate180"),
        TransformOp::Mirror => (mirror(&document.grid), "mirror"),
    };
    let image = transformed.map_err(classify)?;
    let out = GridDocument {
        grid: image.grid,
        blocks: document.blocks,
        seed: document.seed,
        provenance: Some(label.to_string()),
    };
    write_output(output.as_ref(), &doc::serialize(&out))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_sums(order: usize) -> Result<ExitCode, CliError> {
    let check = closed_form_targets_crosscheck(order).map_err(classify)?;
    println!("order {order}");
    println!("S1 = {}", check.brute.s1);
    println!("S2 = {}", check.brute.s2);
    println!("cross-check: brute-force and positional formula agree");
    for record in &check.records {
        if record.agrees {
            println!("published {} {}: match", record.constant, record.printed);
        } else {
            println!(
                "published {} {}: erratum (computed {})",
                record.constant, record.printed, record.computed
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(
    order: usize,
    alphabet: &str,
    width: usize,
    property: PropertyOp,
    budget: u64,
) -> Result<ExitCode, CliError> {
    let digits: Vec<u8> = alphabet
        .chars()
        .map(|ch| {
            ch.to_digit(10).map(|d| d as u8).ok_or_else(|| {
                CliError::Usage(format!("alphabet character `{ch}` is not a decimal digit"))
            })
        })
        .collect::<Result<_, _>>()?;
    let alphabet = Alphabet::new(&digits).map_err(classify)?;
    let property = match property {
        PropertyOp::Completeness => OracleProperty::Completeness,
        PropertyOp::Magic => OracleProperty::Magic,
        PropertyOp::Bimagic => OracleProperty::Bimagic,
    };
    let outcome =
        oracle_search(order, &alphabet, width, property, budget).map_err(classify)?;
    println!(
        "oracle: order {order}, alphabet {alphabet}, width {width}, property {}",
        property.name()
    );
    if let Some(t) = &outcome.targets {
        println!("targets: S1={} S2={}", t.s1, t.s2);
    }
    println!("nodes visited: {}", outcome.nodes);
    println!(
        "exhaustive: {}",
        if outcome.exhaustive { "yes" } else { "no" }
    );
    if let Some(note) = &outcome.note {
        println!("note: {note}");
    }
    println!(
        "arrangements found: {} ({} retained)",
        outcome.total_found,
        outcome.solutions.len()
    );
    if outcome.exhaustive && outcome.total_found == 0 {
        println!("verdict: {} is infeasible at this shape", property.name());
    }
    if let Some(first) = outcome.solutions.first() {
        println!("first solution:");
        for r in 0..first.order() {
            let cells: Vec<String> = first.row(r).iter().map(|e| e.to_string()).collect();
            println!("{}", cells.join(" "));
        }
    }
    Ok(if outcome.exhaustive {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Generate {
            order,
            seed,
            blocks,
            output,
        } => cmd_generate(order, seed, blocks, output),
        Command::Verify {
            input,
            blocks,
            json,
            verbose,
        } => cmd_verify(&input, blocks, json, verbose),
        Command::Transform { input, op, output } => cmd_transform(&input, op, output),
        Command::Sums { order } => cmd_sums(order),
        Command::Oracle {
            order,
            alphabet,
            width,
            property,
            budget,
        } => cmd_oracle(order, &alphabet, width, property, budget),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}
