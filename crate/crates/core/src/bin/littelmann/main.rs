use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use littelmann::crystal::{decompose_weights, generate_crystal, highest_path, Limits};
use littelmann::extremal::{criterion_roots, is_extremal, satisfies_criterion, CriterionReport};
use littelmann::figure::{decomposition_svg, path_svg};
use littelmann::oracle::tensor_decompose_oracle;
use littelmann::prv::{
    build_witness, classic_prv_set, enumerate_prv, verify_witness, EnumerateOptions, PrvCase, PrvInstance, PrvWitness,
};
use littelmann::{Error, Path, RealRoot, RootSystem, VerifyMode, Weight, WeightMultiset};

#[derive(Parser)]
#[command(name = "littelmann", version, about = "Littelmann paths, crystals and PRV components")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Built-in type such as A2, G2, B3, A1~ or C2^(1).
    #[arg(long = "type", global = true, conflicts_with = "matrix_file")]
    type_name: Option<String>,
    /// JSON file `{"name": ..., "cartan": [[...]]}`.
    #[arg(long, global = true)]
    matrix_file: Option<PathBuf>,
    #[arg(long, global = true)]
    max_nodes: Option<usize>,
    #[arg(long, global = true)]
    max_depth: Option<usize>,
    /// Root height cutoff; required for non-finite types.
    #[arg(long, global = true)]
    root_height: Option<u32>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Tsv,
    Dot,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose V(mu) (x) V(nu) with the path model.
    Decompose {
        #[arg(long, allow_hyphen_values = true)]
        mu: Weight,
        #[arg(long, allow_hyphen_values = true)]
        nu: Weight,
        /// Also run the character oracle and fail on any difference.
        #[arg(long)]
        oracle: bool,
    },
    /// Generate B(pi) from a straight dominant path or a path file.
    Crystal {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "path")]
        lambda: Option<Weight>,
        #[arg(long)]
        path: Option<PathBuf>,
        /// Shorthand for `--format dot`.
        #[arg(long)]
        dot: bool,
    },
    /// Criterion report and brute-force extremality of a path or witness.
    Extremal {
        #[arg(long)]
        path: PathBuf,
    },
    /// Build and verify a generalized PRV witness, or enumerate them.
    Prv {
        #[arg(long, allow_hyphen_values = true)]
        mu: Weight,
        #[arg(long, allow_hyphen_values = true)]
        nu: Weight,
        #[arg(long)]
        enumerate: bool,
        #[arg(long)]
        check_oracle: bool,
        /// Dot-separated reflection labels; `e` is the identity.
        #[arg(long, default_value = "e")]
        v: String,
        #[arg(long, default_value = "e")]
        w: String,
        /// Root coordinates of beta; repeat for an orthogonal family.
        #[arg(long, allow_hyphen_values = true)]
        beta: Vec<Weight>,
        #[arg(long)]
        k: Vec<i64>,
        #[arg(long, value_enum)]
        case: Option<CaseArg>,
        /// Enumerate orthogonal families too.
        #[arg(long)]
        multi: bool,
        #[arg(long, default_value_t = 2)]
        max_p: usize,
        /// Keep every witness instead of one per lambda.
        #[arg(long)]
        all: bool,
    },
    /// Rank-2 SVG of a path or of a decomposition support.
    Figure {
        #[arg(long, conflicts_with = "decompose")]
        path: Option<PathBuf>,
        #[arg(long)]
        decompose: bool,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<Weight>,
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<Weight>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    SimpleBeta,
    VSide,
    WSide,
}

/// Exit 1 for verification failures, 2 for anything the user supplied.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::VerificationFailed(_) | Error::WitnessMismatch => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn verification(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.jobs {
        if rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
            eprintln!("warning: thread pool already initialized");
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn root_system(g: &Global) -> CliResult<RootSystem> {
    match (&g.type_name, &g.matrix_file) {
        (Some(name), None) => Ok(RootSystem::builtin(name)?),
        (None, Some(file)) => Ok(RootSystem::from_json(&fs::read_to_string(file)?)?),
        _ => Err(usage("exactly one of --type or --matrix-file is required")),
    }
}

fn limits(g: &Global, rs: &RootSystem) -> CliResult<Limits> {
    let l = Limits { max_nodes: g.max_nodes, max_depth: g.max_depth, weight_height_bound: None };
    if !rs.is_finite() && l.is_unbounded() {
        return Err(usage("non-finite types need --max-nodes or --max-depth"));
    }
    Ok(l)
}

fn emit(g: &Global, text: &str) -> CliResult<()> {
    match &g.output {
        Some(file) => fs::write(file, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                out.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serialization is infallible")
}

fn read_path(rs: &RootSystem, file: &PathBuf) -> CliResult<Path> {
    Ok(Path::from_json(&fs::read_to_string(file)?, rs.rank())?)
}

fn run(cli: &Cli) -> CliResult<()> {
    let g = &cli.global;
    let rs = root_system(g)?;
    match &cli.command {
        Command::Decompose { mu, nu, oracle } => cmd_decompose(g, &rs, mu, nu, *oracle),
        Command::Crystal { lambda, path, dot } => cmd_crystal(g, &rs, lambda.as_ref(), path.as_ref(), *dot),
        Command::Extremal { path } => cmd_extremal(g, &rs, path),
        Command::Prv { mu, nu, enumerate, check_oracle, v, w, beta, k, case, multi, max_p, all } => {
            if *enumerate {
                let opts = EnumerateOptions { multi: *multi, max_p: *max_p, dedupe: !*all, check_oracle: *check_oracle };
                cmd_prv_enumerate(g, &rs, mu, nu, opts)
            } else {
                cmd_prv_single(g, &rs, mu, nu, v, w, beta, k, *case, *check_oracle)
            }
        }
        Command::Figure { path, decompose, mu, nu } => {
            if *decompose {
                let (Some(mu), Some(nu)) = (mu, nu) else {
                    return Err(usage("--decompose needs --mu and --nu"));
                };
                cmd_figure_decompose(g, &rs, mu, nu)
            } else {
                let file = path.as_ref().ok_or_else(|| usage("figure needs --path or --decompose"))?;
                if rs.rank() != 2 {
                    return Err(usage(format!("figures are rank 2 only, got rank {}", rs.rank())));
                }
                emit(g, &path_svg(&rs, &read_path(&rs, file)?)?)
            }
        }
    }
}

#[derive(Serialize)]
struct DecomposeDoc<'a> {
    truncated: bool,
    components: Vec<(&'a Weight, u64)>,
}

fn cmd_decompose(g: &Global, rs: &RootSystem, mu: &Weight, nu: &Weight, oracle: bool) -> CliResult<()> {
    let lim = limits(g, rs)?;
    let d = decompose_weights(rs, mu, nu, lim)?;
    if d.truncated {
        eprintln!("warning: crystal generation hit the limits; the decomposition is partial");
    }
    let text = match g.format.unwrap_or(Format::Text) {
        Format::Text => d.components.to_string(),
        Format::Tsv => d.components.to_tsv(),
        Format::Json => to_json(&DecomposeDoc { truncated: d.truncated, components: d.components.iter().collect() }),
        _ => return Err(usage("decompose supports --format text, json or tsv")),
    };
    emit(g, &text)?;
    if oracle {
        let expected = tensor_decompose_oracle(rs, mu, nu)?;
        if expected != d.components {
            return Err(verification(format!("path model {} differs from oracle {}", d.components, expected)));
        }
        eprintln!("oracle: identical ({} components)", expected.len());
    }
    Ok(())
}

fn cmd_crystal(g: &Global, rs: &RootSystem, lambda: Option<&Weight>, path: Option<&PathBuf>, dot: bool) -> CliResult<()> {
    let pi = match (lambda, path) {
        (Some(l), None) => {
            rs.check_rank(l.rank())?;
            Path::straight_int(l)
        }
        (None, Some(file)) => read_path(rs, file)?,
        _ => return Err(usage("crystal needs --lambda or --path")),
    };
    let b = generate_crystal(rs, &pi, limits(g, rs)?)?;
    if b.is_truncated() {
        eprintln!("warning: crystal truncated at {} nodes", b.len());
    }
    let format = if dot { Format::Dot } else { g.format.unwrap_or(Format::Json) };
    let text = match format {
        Format::Dot => b.to_dot(rs),
        Format::Json => b.to_json(rs),
        Format::Tsv => b.character().weights.to_tsv(),
        Format::Text => b.character().weights.to_string(),
        Format::Svg => return Err(usage("crystal supports dot, json, tsv or text")),
    };
    emit(g, &text)
}

#[derive(Serialize)]
struct ExtremalDoc {
    criterion: CriterionReport,
    extremal: bool,
    dominating_element: String,
    highest_weight: String,
}

fn cmd_extremal(g: &Global, rs: &RootSystem, file: &PathBuf) -> CliResult<()> {
    let text = fs::read_to_string(file)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(Error::from)?;
    let pi = if value.get("witness_path").is_some() {
        PrvWitness::from_json(rs, &text)?.witness_path
    } else {
        Path::from_json_value(&value, rs.rank())?
    };
    let roots = criterion_roots(rs, g.root_height)?;
    let criterion = satisfies_criterion(rs, &pi, &roots)?;
    let (extremal, w) = is_extremal(rs, &pi)?;
    let (top, _) = highest_path(rs, &pi)?;
    let passed = criterion.passed;
    let doc = ExtremalDoc {
        criterion,
        extremal,
        dominating_element: rs.format_word(w.word()),
        highest_weight: top.endpoint().to_string(),
    };
    emit(g, &to_json(&doc))?;
    if passed && !extremal {
        return Err(verification("criterion passed but the path is not extremal"));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_prv_single(
    g: &Global,
    rs: &RootSystem,
    mu: &Weight,
    nu: &Weight,
    v: &str,
    w: &str,
    betas: &[Weight],
    ks: &[i64],
    case: Option<CaseArg>,
    check_oracle: bool,
) -> CliResult<()> {
    if betas.len() != ks.len() {
        return Err(usage(format!("{} --beta values but {} --k values", betas.len(), ks.len())));
    }
    let v = rs.reduce_word(&rs.parse_word(v)?)?;
    let w = rs.reduce_word(&rs.parse_word(w)?)?;
    let betas: Vec<RealRoot> = betas.iter().map(|b| rs.real_root(b.coords())).collect::<Result<_, _>>()?;
    let simple_after = |x| {
        let inv = rs.inverse(x);
        betas.iter().all(|b| rs.weyl_apply_root(&inv, b).simple_index().is_some())
    };
    let case = match case {
        Some(CaseArg::SimpleBeta) => PrvCase::SimpleBeta,
        Some(CaseArg::VSide) => PrvCase::VSide,
        Some(CaseArg::WSide) => PrvCase::WSide,
        None if simple_after(&v) => PrvCase::VSide,
        None if simple_after(&w) => PrvCase::WSide,
        None => PrvCase::SimpleBeta,
    };
    let inst = PrvInstance { mu: mu.clone(), nu: nu.clone(), v, w, betas, ks: ks.to_vec(), case };
    let mut wit = build_witness(rs, &inst, g.root_height)?;
    wit = verify_witness(rs, &wit, VerifyMode::Criterion)?;
    wit = verify_witness(rs, &wit, VerifyMode::Bruteforce)?;
    if check_oracle {
        wit = verify_witness(rs, &wit, VerifyMode::Oracle)?;
    }
    emit(g, &wit.to_json())?;
    eprintln!("lambda = {}: witness confirmed ({})", wit.lambda, wit.criterion.verdict);
    Ok(())
}

fn cmd_prv_enumerate(g: &Global, rs: &RootSystem, mu: &Weight, nu: &Weight, opts: EnumerateOptions) -> CliResult<()> {
    let wits = enumerate_prv(rs, mu, nu, opts)?;
    let text = match g.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&wits),
        Format::Text | Format::Tsv => wits
            .iter()
            .map(|w| {
                let betas: Vec<String> = w.instance.betas.iter().map(|b| Weight(b.root_coords.clone()).to_string()).collect();
                let ks: Vec<String> = w.instance.ks.iter().map(i64::to_string).collect();
                let case = serde_json::to_value(w.instance.case).expect("unit variant");
                format!("{}\t{}\t{}\t{}\n", w.lambda, case.as_str().unwrap_or_default(), betas.join(";"), ks.join(";"))
            })
            .collect(),
        _ => return Err(usage("prv --enumerate supports json, text or tsv")),
    };
    emit(g, &text)?;
    let unconfirmed: Vec<String> =
        wits.iter().filter(|w| w.oracle_confirmed == Some(false)).map(|w| w.lambda.to_string()).collect();
    if !unconfirmed.is_empty() {
        return Err(verification(format!("not confirmed by the oracle: {}", unconfirmed.join(" "))));
    }
    eprintln!("{} witnesses", wits.len());
    Ok(())
}

fn cmd_figure_decompose(g: &Global, rs: &RootSystem, mu: &Weight, nu: &Weight) -> CliResult<()> {
    if rs.rank() != 2 {
        return Err(usage(format!("figures are rank 2 only, got rank {}", rs.rank())));
    }
    let d: WeightMultiset = decompose_weights(rs, mu, nu, limits(g, rs)?)?.complete()?;
    let classic = classic_prv_set(rs, mu, nu)?;
    let wits = enumerate_prv(rs, mu, nu, EnumerateOptions::default())?;
    emit(g, &decomposition_svg(rs, &d, &classic, &wits)?)
}
