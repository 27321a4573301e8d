//! Command-line front end: streams `.smi`-style line corpora through the
//! codec, diagnostic, and benchmark pipelines.
//!
//! Exit codes: 0 success, 1 hard error (first per-line failure without
//! `--keep-going`, or any whole-run failure), 2 usage error.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use molcodec::analysis::{dependency_profile, validate_pairs};
use molcodec::bench::{evaluate, load_corpus, sample, train_ngram, BenchmarkReport};
use molcodec::codecs::{decode, encode};
use molcodec::fragmenter::{find_cut_bonds, CutRule};
use molcodec::molgraph::{canonical_smiles, Dialect};

#[derive(Parser)]
#[command(name = "molcodec", version, about = "Fragment codecs, diagnostics, and generation benchmarks for molecular strings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode SMILES lines into a fragment dialect.
    Encode(EncodeArgs),
    /// Decode dialect lines back to canonical SMILES.
    Decode(LineArgs),
    /// Emit a paired-symbol diagnostic per line, as JSON lines.
    Validate(LineArgs),
    /// Emit dependency-span statistics per line, as JSON lines.
    Profile(LineArgs),
    /// Train an n-gram model on a corpus and sample strings from it.
    Sample(SampleArgs),
    /// Score a generated set against a training corpus.
    Bench(BenchArgs),
}

fn dialect_arg(s: &str) -> Result<Dialect, String> {
    Dialect::from_name(s).ok_or_else(|| format!("'{s}' (expected smiles, tsis, tsid, or safe)"))
}

#[derive(Args)]
struct LineArgs {
    /// String dialect to interpret input lines as.
    #[arg(long, value_parser = dialect_arg)]
    dialect: Dialect,
    /// Input file, one record per line, optional tab-separated id.
    #[arg(long = "in")]
    input: PathBuf,
    /// Output file (standard output when omitted).
    #[arg(long = "out")]
    output: Option<PathBuf>,
    /// On a per-line failure, print a diagnostic to the error stream, emit a
    /// blank output line, and continue instead of exiting.
    #[arg(long)]
    keep_going: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FragmenterKind {
    /// Cut every acyclic single bond that touches a ring and leaves a heavy
    /// atom on both sides.
    Exocyclic,
    /// Cut exactly the bonds listed in --cuts.
    Explicit,
}

#[derive(Args)]
struct EncodeArgs {
    #[command(flatten)]
    io: LineArgs,
    /// Cut-selection rule.
    #[arg(long, value_enum, default_value = "exocyclic")]
    fragmenter: FragmenterKind,
    /// Explicit cut bonds as atom-index pairs, e.g. "3-4,7-8".
    #[arg(long)]
    cuts: Option<String>,
}

#[derive(Args)]
struct SampleArgs {
    /// Dialect of the training corpus (and of the sampled strings).
    #[arg(long, value_parser = dialect_arg)]
    dialect: Dialect,
    /// Training corpus, one record per line.
    #[arg(long = "in")]
    input: PathBuf,
    /// Output file (standard output when omitted).
    #[arg(long = "out")]
    output: Option<PathBuf>,
    /// n-gram order (context length plus one).
    #[arg(long, default_value_t = 5)]
    order: usize,
    /// Number of strings to sample.
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Token budget per sampled string.
    #[arg(long, default_value_t = 200)]
    max_len: usize,
    /// Random seed; identical invocations are byte-identical.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Tsv,
}

#[derive(Args)]
struct BenchArgs {
    /// Dialect of both corpora.
    #[arg(long, value_parser = dialect_arg)]
    dialect: Dialect,
    /// Training corpus, one record per line.
    #[arg(long)]
    train: PathBuf,
    /// Generated strings, one per line.
    #[arg(long)]
    gen: PathBuf,
    /// Output file (standard output when omitted).
    #[arg(long = "out")]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: ReportFormat,
}

pub fn run(argv: &[String]) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Encode(args) => cmd_encode(args),
        Command::Decode(args) => {
            let dialect = args.dialect;
            for_each_line(&args, |record| {
                decode(record, dialect)
                    .map(|g| canonical_smiles(&g))
                    .map_err(|e| e.to_string())
            })
        }
        Command::Validate(args) => {
            let dialect = args.dialect;
            for_each_line(&args, |record| {
                serde_json::to_string(&validate_pairs(record, dialect)).map_err(|e| e.to_string())
            })
        }
        Command::Profile(args) => {
            let dialect = args.dialect;
            for_each_line(&args, |record| {
                serde_json::to_string(&dependency_profile(record, dialect))
                    .map_err(|e| e.to_string())
            })
        }
        Command::Sample(args) => cmd_sample(args),
        Command::Bench(args) => cmd_bench(args),
    }
}

fn cmd_encode(args: EncodeArgs) -> Result<i32, String> {
    let rule = match args.fragmenter {
        FragmenterKind::Exocyclic => CutRule::ExocyclicSingle,
        FragmenterKind::Explicit => {
            let Some(spec) = &args.cuts else {
                eprintln!("error: --fragmenter explicit requires --cuts");
                return Ok(2);
            };
            CutRule::Explicit(parse_cut_list(spec)?)
        }
    };
    let dialect = args.io.dialect;
    for_each_line(&args.io, |record| {
        let g = molcodec::molgraph::parse_smiles(record, false).map_err(|e| e.to_string())?;
        let cuts = find_cut_bonds(&g, &rule).map_err(|e| e.to_string())?;
        encode(&g, &cuts, dialect)
            .map(|enc| enc.text)
            .map_err(|e| e.to_string())
    })
}

fn cmd_sample(args: SampleArgs) -> Result<i32, String> {
    let corpus = load_corpus(&args.input, args.dialect).map_err(|e| e.to_string())?;
    let model = train_ngram(&corpus, args.order, 0.0).map_err(|e| e.to_string())?;
    let mut out = open_output(&args.output)?;
    for line in sample(&model, args.n, args.max_len, args.seed) {
        writeln!(out, "{line}").map_err(|e| e.to_string())?;
    }
    out.flush().map_err(|e| e.to_string())?;
    Ok(0)
}

fn cmd_bench(args: BenchArgs) -> Result<i32, String> {
    let train = load_corpus(&args.train, args.dialect).map_err(|e| e.to_string())?;
    let gen = read_records(&args.gen)?;
    let report = evaluate(&gen, &train, args.dialect).map_err(|e| e.to_string())?;
    let mut out = open_output(&args.output)?;
    match args.format {
        ReportFormat::Json => {
            writeln!(out, "{}", serde_json::to_string(&report).map_err(|e| e.to_string())?)
        }
        ReportFormat::Tsv => write_tsv(&mut out, &report),
    }
    .map_err(|e| e.to_string())?;
    out.flush().map_err(|e| e.to_string())?;
    Ok(0)
}

/// Table-shaped report: the kld column carries the aggregate exp(-mean KLD)
/// score; the fcd column is not computed here and is rendered as "n/a".
fn write_tsv(out: &mut dyn Write, r: &BenchmarkReport) -> io::Result<()> {
    writeln!(out, "valid\tunique\tnovelty\tkld\tfcd\tnov_over_uni")?;
    writeln!(
        out,
        "{:.4}\t{:.4}\t{:.4}\t{:.4}\tn/a\t{:.4}",
        r.valid, r.unique, r.novelty, r.aggregate_score, r.nov_over_uni
    )
}

/// Stream records through `f`, one output line per input line. Blank records
/// pass through as blank lines. A failing record stops the run with exit
/// code 1 unless `--keep-going`, which logs it and emits a blank line.
fn for_each_line(
    args: &LineArgs,
    mut f: impl FnMut(&str) -> Result<String, String>,
) -> Result<i32, String> {
    let file =
        File::open(&args.input).map_err(|e| format!("{}: {e}", args.input.display()))?;
    let mut out = open_output(&args.output)?;
    let mut exit = 0;
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| format!("{}: {e}", args.input.display()))?;
        let record = line.split('\t').next().unwrap_or("").trim();
        if record.is_empty() {
            writeln!(out).map_err(|e| e.to_string())?;
            continue;
        }
        match f(record) {
            Ok(text) => writeln!(out, "{text}").map_err(|e| e.to_string())?,
            Err(e) if args.keep_going => {
                eprintln!("line {}: {e}", idx + 1);
                writeln!(out).map_err(|e| e.to_string())?;
            }
            Err(e) => {
                eprintln!("line {}: {e}", idx + 1);
                exit = 1;
                break;
            }
        }
    }
    out.flush().map_err(|e| e.to_string())?;
    Ok(exit)
}

fn read_records(path: &Path) -> Result<Vec<String>, String> {
    let file = File::open(path).map_err(|e| format!("{}: {e}", path.display()))?;
    BufReader::new(file)
        .lines()
        .map(|line| {
            line.map(|l| l.split('\t').next().unwrap_or("").trim().to_string())
                .map_err(|e| format!("{}: {e}", path.display()))
        })
        .collect()
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, String> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| format!("{}: {e}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn parse_cut_list(spec: &str) -> Result<Vec<(usize, usize)>, String> {
    spec.split(',')
        .map(|pair| {
            let (a, b) = pair
                .split_once('-')
                .ok_or_else(|| format!("bad cut '{pair}' (expected A-B)"))?;
            let a = a.trim().parse().map_err(|_| format!("bad atom index '{a}'"))?;
            let b = b.trim().parse().map_err(|_| format!("bad atom index '{b}'"))?;
            Ok((a, b))
        })
        .collect()
}
