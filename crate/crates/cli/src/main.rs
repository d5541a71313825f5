mod engine;
mod error;
mod input;

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use cartmatch::signature::CartesianSignature;
use cartmatch::single::{search_counted, SearchCounters};
use cartmatch::suffixtree::CartesianSuffixTree;
use cartmatch::testkit::{seed_from_env, InstanceGenerator};
use clap::{Args, Parser, Subcommand};

use crate::engine::{Engine, Hit};
use crate::error::CliError;
use crate::input::{read_pattern_list, Column, SeriesFile};

/// Cartesian tree matching over integer series.
///
/// Positions are 1-indexed. Exit codes: 0 success, 1 usage error,
/// 2 I/O or parse error, 3 corrupted index, 4 engines disagree (--verify).
#[derive(Debug, Parser)]
#[command(name = "cartmatch", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the parent-distance representation of a series.
    Pd {
        input: PathBuf,
        #[command(flatten)]
        column: ColumnArg,
    },
    /// Find every window whose Cartesian tree equals a pattern's.
    Match(MatchArgs),
    /// Build or query a persisted Cartesian suffix tree.
    #[command(subcommand)]
    Index(IndexCommand),
    /// Print the pop-count signature, its companion distances and bit string.
    Signature {
        input: PathBuf,
        #[command(flatten)]
        column: ColumnArg,
    },
    /// Time a single-pattern search and report operation counters.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct ColumnArg {
    /// Read the text as CSV and take this column (1-based number or header name).
    #[arg(long)]
    column: Option<Column>,
}

#[derive(Debug, Args)]
struct MatchArgs {
    text: PathBuf,
    /// File holding one pattern; it gets id 1.
    pattern: Option<PathBuf>,
    /// File with one pattern per line; ids continue after PATTERN.
    #[arg(long, value_name = "FILE")]
    multi: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Engine::Kmp)]
    engine: Engine,
    /// Emit a JSON array of {position, pattern} objects.
    #[arg(long)]
    json: bool,
    /// Run every engine concurrently and fail if their results differ.
    #[arg(long)]
    verify: bool,
    #[command(flatten)]
    column: ColumnArg,
}

#[derive(Debug, Subcommand)]
enum IndexCommand {
    /// Build the index of TEXT and write it to INDEX.
    Build {
        text: PathBuf,
        index: PathBuf,
        #[command(flatten)]
        column: ColumnArg,
    },
    /// Print every occurrence of PATTERN, one position per line.
    Query { index: PathBuf, pattern: PathBuf },
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(required_unless_present = "random_text")]
    text: Option<PathBuf>,
    #[arg(required_unless_present = "random_pattern")]
    pattern: Option<PathBuf>,
    /// Generate a random text of this length instead of reading one.
    #[arg(long, value_name = "N")]
    random_text: Option<usize>,
    /// Generate a random pattern of this length instead of reading one.
    #[arg(long, value_name = "M")]
    random_pattern: Option<usize>,
    /// Alphabet size for generated inputs (seeded by CARTMATCH_SEED).
    #[arg(long, default_value_t = 100)]
    alphabet: u32,
    /// Also print operation counters and check them against the linear bounds.
    #[arg(long)]
    counters: bool,
    #[command(flatten)]
    column: ColumnArg,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out).and_then(|()| out.flush().map_err(|e| CliError::io(Path::new("<stdout>"), e)));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            drop(out);
            eprintln!("cartmatch: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Result<(), CliError> {
    match command {
        Command::Pd { input, column } => {
            let values = SeriesFile::new(input, column.column).read_all()?;
            writeln_out(out, &cartmatch::parent_distance(&values).to_string())
        }
        Command::Signature { input, column } => {
            let values = SeriesFile::new(input, column.column).read_all()?;
            if values.is_empty() {
                return Err(CliError::Usage("signature of an empty series".into()));
            }
            let sig = CartesianSignature::of(&values);
            writeln_out(out, &format!("L {}", join(sig.pops())))?;
            writeln_out(out, &format!("D {}", join(sig.distances())))?;
            writeln_out(out, &format!("bits {}", sig.bits()))
        }
        Command::Match(args) => cmd_match(args, out),
        Command::Index(IndexCommand::Build { text, index, column }) => {
            let values = SeriesFile::new(text, column.column).read_all()?;
            let tree = CartesianSuffixTree::build(&values);
            fs::write(&index, tree.to_bytes()).map_err(|e| CliError::io(&index, e))
        }
        Command::Index(IndexCommand::Query { index, pattern }) => {
            let bytes = fs::read(&index).map_err(|e| CliError::io(&index, e))?;
            let tree = CartesianSuffixTree::from_bytes(&bytes).map_err(|source| CliError::CorruptIndex {
                path: index.clone(),
                source,
            })?;
            let pattern = SeriesFile::new(pattern, None).read_all()?;
            for position in tree.query(&pattern)? {
                writeln_out(out, &position.to_string())?;
            }
            Ok(())
        }
        Command::Bench(args) => cmd_bench(args, out),
    }
}

fn writeln_out(out: &mut impl Write, line: &str) -> Result<(), CliError> {
    writeln!(out, "{line}").map_err(|e| CliError::io(Path::new("<stdout>"), e))
}

fn join(values: impl IntoIterator<Item = usize>) -> String {
    values.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn cmd_match(args: MatchArgs, out: &mut impl Write) -> Result<(), CliError> {
    let mut patterns = Vec::new();
    if let Some(path) = &args.pattern {
        patterns.push(SeriesFile::new(path, None).read_all()?);
    }
    if let Some(path) = &args.multi {
        patterns.extend(read_pattern_list(path)?);
    }
    if patterns.is_empty() {
        return Err(CliError::Usage("no pattern given (PATTERN or --multi)".into()));
    }
    if patterns.iter().any(Vec::is_empty) {
        return Err(CliError::Usage("empty pattern".into()));
    }
    let text = SeriesFile::new(&args.text, args.column.column);

    let hits = if args.verify {
        let values = text.read_all()?;
        verify(&values, &patterns)?
    } else {
        engine::run(args.engine, text.values()?, &patterns)?
    };

    if args.json {
        let json = serde_json::to_string(&hits).expect("hits serialize");
        writeln_out(out, &json)
    } else {
        for Hit { position, pattern } in hits {
            writeln_out(out, &format!("{position}\t{pattern}"))?;
        }
        Ok(())
    }
}

fn verify(text: &[i64], patterns: &[Vec<i64>]) -> Result<Vec<Hit>, CliError> {
    let results: Vec<Result<Vec<Hit>, CliError>> = std::thread::scope(|s| {
        let handles: Vec<_> = Engine::ALL
            .iter()
            .map(|&engine| s.spawn(move || engine::run(engine, text.iter().map(|&c| Ok(c)), patterns)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("engine thread panicked")).collect()
    });
    let mut results = results.into_iter().collect::<Result<Vec<_>, _>>()?.into_iter();
    let reference = results.next().expect("at least one engine");
    for (engine, hits) in Engine::ALL[1..].iter().zip(results) {
        if hits != reference {
            return Err(CliError::Disagreement(format!(
                "{engine:?} found {} hits, kmp found {}",
                hits.len(),
                reference.len()
            )));
        }
    }
    Ok(reference)
}

fn cmd_bench(args: BenchArgs, out: &mut impl Write) -> Result<(), CliError> {
    let mut gen = InstanceGenerator::new(seed_from_env(0x5eed), args.alphabet.max(1), 0, 0);
    let text = match (args.random_text, &args.text) {
        (Some(n), _) => gen.string_of_len(n),
        (None, Some(path)) => SeriesFile::new(path, args.column.column).read_all()?,
        (None, None) => unreachable!("clap requires TEXT or --random-text"),
    };
    let pattern = match (args.random_pattern, &args.pattern) {
        (Some(m), _) => gen.string_of_len(m),
        (None, Some(path)) => SeriesFile::new(path, None).read_all()?,
        (None, None) => unreachable!("clap requires PATTERN or --random-pattern"),
    };

    let start = Instant::now();
    let (hits, c) = search_counted(text.iter().copied(), &pattern)?;
    let elapsed = start.elapsed();

    let (n, m) = (text.len(), pattern.len());
    let mut report = vec![
        ("n", n.to_string()),
        ("m", m.to_string()),
        ("matches", hits.len().to_string()),
        ("time_ms", format!("{:.3}", elapsed.as_secs_f64() * 1e3)),
    ];
    if args.counters {
        report.extend([
            ("comparisons", c.comparisons.to_string()),
            ("pushes", c.pushes.to_string()),
            ("pops", c.pops().to_string()),
            ("failure_links", c.failure_links.to_string()),
            ("max_deque", c.max_deque.to_string()),
            ("linear_bounds", if within_bounds(&c, n, m) { "ok" } else { "violated" }.to_string()),
        ]);
    }
    for (key, value) in report {
        writeln_out(out, &format!("{key}\t{value}"))?;
    }
    Ok(())
}

fn within_bounds(c: &SearchCounters, n: usize, m: usize) -> bool {
    let n = n as u64;
    c.pushes == n && c.pops() <= n && c.failure_links <= n && c.max_deque <= m
}
