use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hsum::continuation::{evaluate_with_error, format_complex, parse_complex};
use hsum::db::{
    builtin_corpus, format_identity, format_left, load_corpus, load_records, serialize_corpus, to_structured,
    CorpusFile,
};
use hsum::identity::{
    compose_trilinear, verify_identity, Deriver, IdentityRecord, SamplePlan, DEFAULT_DERIVE_DIGITS, DEFAULT_SEED,
};
use hsum::shuffle::render_linear;
use hsum::{build_basis, parse_index_list, stuffle_product, EvalContext, HsumError};

#[derive(Parser, Debug)]
#[command(name = "hsum", version, about = "Harmonic sums on the complex plane and their reflection identities")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Print the resolved configuration to stderr before running.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate S_v(z), continued from the even integers.
    Eval {
        /// Comma-separated indices, e.g. "-2,-1".
        #[arg(short, long, allow_hyphen_values = true)]
        indices: String,
        /// Complex argument, e.g. "0.3+0.7i".
        #[arg(short, long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = 30)]
        digits: u32,
    },
    /// Check every identity of a corpus at random points.
    Verify {
        #[command(flatten)]
        corpus: CorpusArg,
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 30)]
        digits: u32,
        /// Verify the reflected records instead.
        #[arg(long)]
        reflected: bool,
    },
    /// Derive S_a(z) S_b(-1-z) from sampled values.
    Derive {
        /// Indices of the sum at z.
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        /// Indices of the sum at -1-z.
        #[arg(long, allow_hyphen_values = true)]
        right: String,
        #[arg(long, default_value_t = DEFAULT_DERIVE_DIGITS)]
        digits: u32,
        #[arg(long, default_value_t = 250)]
        points: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Quasi-shuffle product S_a S_b as a sum of single sums.
    Shuffle {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Swap z and -1-z in every record of a file.
    Reflect { file: PathBuf },
    /// S_a(z) S_b(-1-z) S_c(-1-z) from the bilinear corpus.
    Compose {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[command(flatten)]
        corpus: CorpusArg,
        /// Points for the numerical check of the result; 0 skips it.
        #[arg(long, default_value_t = 10)]
        points: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 30)]
        digits: u32,
    },
    /// List the basis sums of one weight.
    Basis {
        #[arg(long)]
        weight: u32,
        /// Print only the number of sums.
        #[arg(long)]
        count: bool,
    },
}

#[derive(Args, Debug)]
struct CorpusArg {
    /// Identity file; the built-in weight-4 corpus when absent.
    #[arg(long, env = "HSUM_CORPUS")]
    corpus: Option<PathBuf>,
}

impl CorpusArg {
    fn load(&self) -> hsum::Result<CorpusFile> {
        match &self.corpus {
            Some(p) => load_corpus(p),
            None => Ok(builtin_corpus()),
        }
    }
}

fn exit_code(e: &HsumError) -> u8 {
    use HsumError::*;
    match e {
        VerificationFailed { .. } => 1,
        InvalidIndex(_) | WeightOutOfRange(_) | Syntax { .. } | UnknownSymbol { .. } | Validation(_) | Io(_) | Json(_) => 2,
        PoleProximity { .. } | PrecisionExhausted { .. } | InvalidContext(_) => 3,
        ReconstructionFailed { .. } | IllConditioned(_) | MissingBilinear(_) => 4,
    }
}

#[derive(Serialize)]
struct EvalJson {
    digits: u32,
    error_bound: f64,
    im: String,
    indices: Vec<i32>,
    re: String,
    z: String,
}

#[derive(Serialize)]
struct VerifyJson {
    left: String,
    max_residual: f64,
    passed: bool,
}

#[derive(Serialize)]
struct VerifySummary {
    failed: usize,
    points: usize,
    records: Vec<VerifyJson>,
    seed: u64,
    tolerance: f64,
}

fn print_json<T: Serialize>(v: &T) -> hsum::Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn print_records(file: &CorpusFile, format: Format) -> hsum::Result<()> {
    match format {
        Format::Text => print!("{}", serialize_corpus(file)),
        Format::Structured => print!("{}", to_structured(file)?),
    }
    Ok(())
}

fn run(cli: &Cli) -> hsum::Result<u8> {
    match &cli.command {
        Command::Eval { indices, z, digits } => {
            let v = parse_index_list(indices)?;
            let ctx = EvalContext::new(*digits)?;
            let zc = parse_complex(z, ctx.prec())?;
            let ev = evaluate_with_error(&v, &zc, &ctx)?;
            let digits = *digits as usize;
            match cli.format {
                Format::Text => {
                    println!("{}", format_complex(&ev.value, digits));
                    println!("error bound {:.1e}", ev.error_bound);
                }
                Format::Structured => print_json(&EvalJson {
                    digits: digits as u32,
                    error_bound: ev.error_bound,
                    im: ev.value.imag().to_string_radix(10, Some(digits)),
                    indices: v.indices().to_vec(),
                    re: ev.value.real().to_string_radix(10, Some(digits)),
                    z: z.clone(),
                })?,
            }
            Ok(0)
        }
        Command::Verify { corpus, points, tol, seed, digits, reflected } => {
            let mut file = corpus.load()?;
            if *reflected {
                file = file.reflected();
            }
            let ctx = EvalContext::new(*digits)?;
            let mut rows = Vec::new();
            for r in &file.records {
                let rep = verify_identity(r, *points, *tol, *seed, &ctx)?;
                if cli.format == Format::Text {
                    println!("{} {:.2e} {}", if rep.passed { "pass" } else { "FAIL" }, rep.max_residual, format_left(r.left()));
                }
                rows.push(VerifyJson { left: format_left(r.left()), max_residual: rep.max_residual, passed: rep.passed });
            }
            let failed = rows.iter().filter(|r| !r.passed).count();
            match cli.format {
                Format::Text => println!("{}/{} passed", rows.len() - failed, rows.len()),
                Format::Structured => print_json(&VerifySummary {
                    failed,
                    points: *points,
                    records: rows,
                    seed: *seed,
                    tolerance: *tol,
                })?,
            }
            Ok(if failed == 0 { 0 } else { 1 })
        }
        Command::Derive { left, right, digits, points, seed } => {
            let a = parse_index_list(left)?;
            let b = parse_index_list(right)?;
            let ctx = EvalContext::new(*digits)?;
            let deriver = Deriver::new(a.weight() + b.weight(), SamplePlan::new(*points, *seed), &ctx)?;
            if cli.verbose {
                eprintln!(
                    "condition {:.3e}, rank {} of {}, coefficient tolerance {:.1e}",
                    deriver.condition(),
                    deriver.rank(),
                    deriver.columns().len(),
                    deriver.coefficient_tolerance()
                );
            }
            let d = deriver.derive(&a, &b)?;
            if cli.verbose {
                eprintln!("fit residual {:.1e}, fresh-point residual {:.1e}", d.fit_residual, d.fresh_residual);
            }
            emit_record(d.record, cli.format)?;
            Ok(0)
        }
        Command::Shuffle { a, b } => {
            let e = stuffle_product(&parse_index_list(a)?, &parse_index_list(b)?);
            println!("{}", render_linear(&e));
            Ok(0)
        }
        Command::Reflect { file } => {
            let f = load_records(file)?;
            print_records(&f.reflected(), cli.format)?;
            Ok(0)
        }
        Command::Compose { a, b, c, corpus, points, tol, seed, digits } => {
            let file = corpus.load()?;
            let id = compose_trilinear(&parse_index_list(a)?, &parse_index_list(b)?, &parse_index_list(c)?, &file)?;
            let mut code = 0;
            if *points > 0 {
                let ctx = EvalContext::new(*digits)?;
                let rep = verify_identity(&id, *points, *tol, *seed, &ctx)?;
                if cli.verbose || !rep.passed {
                    eprintln!("max residual {:.2e} at {} points", rep.max_residual, points);
                }
                if !rep.passed {
                    code = 1;
                }
            }
            emit_record(id, cli.format)?;
            Ok(code)
        }
        Command::Basis { weight, count } => {
            let basis = build_basis(*weight)?;
            if *count {
                println!("{}", basis.len());
            } else {
                for v in basis {
                    println!("{v}");
                }
            }
            Ok(0)
        }
    }
}

fn emit_record(id: IdentityRecord, format: Format) -> hsum::Result<()> {
    match format {
        Format::Text => println!("{}", format_identity(&id)),
        Format::Structured => {
            let weight = id.weight();
            print!("{}", to_structured(&CorpusFile::new(weight, vec![id]))?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.verbose {
        eprintln!("{cli:?}");
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
