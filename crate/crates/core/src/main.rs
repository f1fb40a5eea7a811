use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use rpotent::analysis::{analyze, AnalysisOptions};
use rpotent::decomposition::InvariantSubsetWitness;
use rpotent::generators::{generate, GeneratorKind, GeneratorSpec};
use rpotent::matrix::parse_matrix;
use rpotent::potency::DEFAULT_POTENCY_CAP;
use rpotent::semigroup::{
    pattern_closure, semigroup_rank_floor_check, EquivalenceReport, RankFloorReport, ZeroProductWitness,
    CLOSURE_CAP_ENV, DEFAULT_CLOSURE_CAP,
};
use rpotent::spectral::{DEFAULT_MAX_ITER, DEFAULT_TOLERANCE};
use rpotent::verify::{run_claim, VerifyOptions, CLAIMS, DEFAULT_SEED, DEFAULT_TRIALS};
use rpotent::{Error, RMatrix};

/// Decomposability and structure of nonnegative r-potent matrices.
#[derive(Parser)]
#[command(name = "rpotent", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Potency, decomposability, block structure and spectral facts of one matrix.
    Analyze(AnalyzeArgs),
    /// Write a generated r-potent matrix with a provenance header.
    Generate(GenerateArgs),
    /// Run the seeded property suite for a claim id.
    Verify(VerifyArgs),
    /// Close a set of generators and test the semigroup for decomposability.
    Semigroup(SemigroupArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Matrix file, JSON or CSV.
    file: PathBuf,
    /// Exponent to test; defaults to the minimal potency.
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
    /// Largest exponent tried when searching for the minimal potency.
    #[arg(long, default_value_t = DEFAULT_POTENCY_CAP)]
    potency_cap: u32,
}

#[derive(Args)]
struct GenerateArgs {
    /// cycle, rank_one_idempotent, block_diagonal, kronecker (kron), triangular_family, permutation, conjugated
    #[arg(long)]
    kind: GeneratorKind,
    #[arg(long)]
    len: Option<usize>,
    /// Size, or maximum dimension for the rank-targeted kinds.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Claim id, e.g. 3.2; `list` prints them all.
    #[arg(long)]
    theorem: String,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SemigroupArgs {
    /// Generator matrix files.
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Exponent for the rank-floor check.
    #[arg(long)]
    r: Option<u32>,
    #[arg(long, env = CLOSURE_CAP_ENV, default_value_t = DEFAULT_CLOSURE_CAP)]
    cap: usize,
}

enum Failure {
    /// Property violation or withheld verdict.
    Property,
    Input(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Truncated { .. } => Failure::Property,
            e => Failure::Input(e),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.into())
    }
}

fn read_matrix(path: &Path) -> Result<RMatrix, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(Error::Parse(format!("{}: {}", path.display(), e))))?;
    parse_matrix(&text).map_err(|e| Failure::Input(Error::Parse(format!("{}: {}", path.display(), e))))
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json<T: Serialize>(value: &T) {
    emit(&(serde_json::to_string_pretty(value).expect("plain data serializes") + "\n"));
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    let a = read_matrix(&args.file)?;
    let opts = AnalysisOptions {
        r: args.r,
        potency_cap: args.potency_cap,
        tolerance: args.tol,
        max_iter: args.max_iter,
    };
    let bundle = analyze(&a, &opts)?;
    if args.json {
        print_json(&bundle);
    } else {
        emit(&bundle.to_string());
    }
    if bundle.has_violation() {
        Err(Failure::Property)
    } else {
        Ok(())
    }
}

fn cmd_generate(args: GenerateArgs) -> Result<(), Failure> {
    let spec = GeneratorSpec {
        kind: args.kind,
        len: args.len,
        n: args.n,
        r: args.r,
        rank: args.rank,
        seed: args.seed,
    };
    let g = generate(&spec)?;
    let text = g.to_json_string();
    match args.output {
        Some(path) => fs::write(path, text + "\n")?,
        None => emit(&(text + "\n")),
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    if args.theorem == "list" {
        for (id, name) in CLAIMS {
            emit(&format!("{}  {}\n", id, name));
        }
        return Ok(());
    }
    let opts = VerifyOptions {
        trials: args.trials,
        seed: args.seed,
        n: args.n,
    };
    let report = run_claim(&args.theorem, &opts)?;
    if args.json {
        print_json(&report);
    } else {
        emit(&report.to_string());
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Property)
    }
}

#[derive(Serialize)]
struct SemigroupOutput {
    generators: usize,
    n: usize,
    closure_size: usize,
    truncated: bool,
    cap: usize,
    decomposable: Option<bool>,
    equivalences: Option<EquivalenceReport>,
    zero_product_pair: Option<ZeroProductWitness>,
    witness: Option<InvariantSubsetWitness>,
    rank_floor: Option<RankFloorReport>,
    notes: Vec<String>,
}

fn cmd_semigroup(args: SemigroupArgs) -> Result<(), Failure> {
    let gens = args.files.iter().map(|p| read_matrix(p)).collect::<Result<Vec<_>, _>>()?;
    let pats: Vec<_> = gens.iter().map(RMatrix::pattern).collect();
    let s = pattern_closure(&pats, args.cap)?;
    let mut out = SemigroupOutput {
        generators: gens.len(),
        n: s.n,
        closure_size: s.len(),
        truncated: s.truncated,
        cap: s.cap,
        decomposable: None,
        equivalences: None,
        zero_product_pair: None,
        witness: None,
        rank_floor: None,
        notes: Vec::new(),
    };
    if s.truncated {
        out.notes.push(format!("closure reached the cap of {} members; verdict withheld", s.cap));
        print_json(&out);
        return Err(Failure::Property);
    }
    let eq = rpotent::semigroup::equivalence_report(&s)?;
    out.decomposable = Some(eq.witness.is_some());
    out.witness = eq.witness.clone();
    out.zero_product_pair = rpotent::semigroup::zero_product_witness(&s)?;
    let mut violation = !eq.agree;
    out.equivalences = Some(eq);
    if let Some(r) = args.r {
        match semigroup_rank_floor_check(&gens, r, args.cap) {
            Ok(rep) => {
                violation |= !rep.holds;
                out.rank_floor = Some(rep);
            }
            Err(Error::Truncated { cap }) => {
                out.notes.push(format!("rational closure reached the cap of {}; rank floor withheld", cap));
                violation = true;
            }
            Err(e) => return Err(Failure::Input(e)),
        }
    }
    print_json(&out);
    if violation {
        Err(Failure::Property)
    } else {
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(a) => cmd_analyze(a),
        Command::Generate(a) => cmd_generate(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Semigroup(a) => cmd_semigroup(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Property) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
