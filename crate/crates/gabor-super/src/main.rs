//! Batch front end: reads signals, windows, weights, and shift
//! operators as JSON, runs the library, and emits JSON or CSV.
//!
//! Exit codes: 0 success, 1 usage or input/output trouble, 2 domain
//! errors (bad lattices, non-frames, mismatched shapes, singular
//! operators), 3 convergence or accuracy failures.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::Serialize;

use gabor_super::amalgam::{Exponent, Weight};
use gabor_super::duality::{
    dual_window_full, frame_bounds, truncation_error_profile, DualMethod,
};
use gabor_super::error::Error;
use gabor_super::gabor::{analyze, synthesize, GaborLattice};
use gabor_super::json::{
    BoundsJson, CoeffJson, CorrelationDumpJson, DualMetaJson, JanssenDumpJson, ShiftOpJson,
    SignalJson, WeightJson,
};
use gabor_super::shiftalg::spectral_invert;
use gabor_super::signal::{random_signal, VectorSignal};
use gabor_super::walnut::{correlations, janssen_coeffs, walnut_apply, wexler_raz_check};

#[derive(Parser)]
#[command(
    name = "gabor-super",
    about = "Gabor frames for vector-valued signals: duals, bounds, structured applies, and shift-algebra inversion",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the canonical dual window and report frame diagnostics
    Dual(DualArgs),
    /// Coefficients of a signal against a window
    Analyze(AnalyzeArgs),
    /// Rebuild a signal from coefficients and a synthesis window
    Synthesize(SynthesizeArgs),
    /// Sharp frame bounds of a window
    Bounds(BoundsArgs),
    /// Bracket biorthogonality check for a window pair
    Wr(WrArgs),
    /// Apply the structured frame operator; optionally dump its tables
    Walnut(WalnutArgs),
    /// Reconstruction error over growing truncation boxes
    Convergence(ConvergenceArgs),
    /// Invert a shift operator inside the algebra and report decay
    Spectral(SpectralArgs),
    /// Encode several signals through one vector window and decode them
    Mux(MuxArgs),
    /// Time the structured apply against the dense apply over a size sweep
    Bench(BenchArgs),
}

#[derive(Args)]
struct LatticeArgs {
    /// Time step (must divide the signal length)
    #[arg(long)]
    a: usize,
    /// Frequency step (must divide the signal length)
    #[arg(long)]
    b: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct DualArgs {
    /// Window signal JSON
    #[arg(long)]
    window: PathBuf,
    #[command(flatten)]
    lattice: LatticeArgs,
    /// Solver tolerance
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Write the dual window JSON here (metadata always goes to stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Input signal JSON
    #[arg(long)]
    input: PathBuf,
    /// Window signal JSON
    #[arg(long)]
    window: PathBuf,
    #[command(flatten)]
    lattice: LatticeArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SynthesizeArgs {
    /// Coefficient JSON (carries the lattice)
    #[arg(long)]
    input: PathBuf,
    /// Synthesis window signal JSON
    #[arg(long)]
    window: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    window: PathBuf,
    #[command(flatten)]
    lattice: LatticeArgs,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WrArgs {
    #[arg(long)]
    window: PathBuf,
    /// Candidate dual window signal JSON
    #[arg(long = "dual-window")]
    dual_window: PathBuf,
    #[command(flatten)]
    lattice: LatticeArgs,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WalnutArgs {
    /// Signal to run through the operator; optional when only dumping
    #[arg(long)]
    input: Option<PathBuf>,
    /// Analysis window signal JSON
    #[arg(long)]
    window: PathBuf,
    /// Synthesis window signal JSON (defaults to the analysis window)
    #[arg(long = "dual-window")]
    dual_window: Option<PathBuf>,
    #[command(flatten)]
    lattice: LatticeArgs,
    /// Include the correlation family and bracket table in the output
    #[arg(long)]
    dump: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConvergenceArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    window: PathBuf,
    #[arg(long = "dual-window")]
    dual_window: PathBuf,
    #[command(flatten)]
    lattice: LatticeArgs,
    /// Inner exponent of the error norm
    #[arg(long, default_value = "2")]
    p: String,
    /// Outer exponent of the error norm
    #[arg(long, default_value = "2")]
    q: String,
    /// Weight: "constant", "polynomial:<s>", or a weight JSON path
    #[arg(long, default_value = "constant")]
    weight: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpectralArgs {
    /// Shift-operator JSON
    #[arg(long)]
    input: PathBuf,
    /// Weight: "constant", "polynomial:<s>", or a weight JSON path
    #[arg(long, default_value = "constant")]
    weight: String,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// json: inverse + condition + decay; csv: the decay profile alone
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MuxArgs {
    /// Channel signal JSONs, comma separated, one per channel
    #[arg(long, value_delimiter = ',', required = true)]
    input: Vec<PathBuf>,
    /// Vector window with one channel per input
    #[arg(long)]
    window: PathBuf,
    #[command(flatten)]
    lattice: LatticeArgs,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Frequency step shared across the sweep
    #[arg(long, default_value_t = 16)]
    b: usize,
    /// Sizes to time, comma separated
    #[arg(long, value_delimiter = ',', default_values_t = vec![256usize, 1024, 4096])]
    sizes: Vec<usize>,
    /// Timed repetitions per size (median is reported)
    #[arg(long, default_value_t = 20)]
    runs: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Io(String),
    Domain(Error),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Domain(Error::NoConvergence { .. }) | Failure::Domain(Error::Tolerance { .. }) => 3,
            Failure::Domain(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Io(m) => m.clone(),
            Failure::Domain(e) => e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            // clap renders help to stdout and errors to stderr by itself
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Dual(args) => cmd_dual(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Synthesize(args) => cmd_synthesize(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Wr(args) => cmd_wr(args),
        Command::Walnut(args) => cmd_walnut(args),
        Command::Convergence(args) => cmd_convergence(args),
        Command::Spectral(args) => cmd_spectral(args),
        Command::Mux(args) => cmd_mux(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Io(format!("cannot parse {}: {e}", path.display())))
}

fn read_signal(path: &Path) -> Result<VectorSignal, Failure> {
    let json: SignalJson = read_json(path)?;
    json.to_signal().map_err(Failure::Domain)
}

fn emit(out: Option<&Path>, content: &str) -> CmdResult {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn to_json_text<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    text.push('\n');
    text
}

fn parse_weight(arg: &str, len: usize) -> Result<Weight, Failure> {
    match arg {
        "constant" => Ok(Weight::constant(len)),
        s if s.starts_with("polynomial:") => {
            let exponent: f64 = s["polynomial:".len()..]
                .parse()
                .map_err(|_| Failure::Io(format!("unrecognized weight '{s}'")))?;
            Weight::polynomial(len, exponent).map_err(Failure::Domain)
        }
        path => {
            let json: WeightJson = read_json(Path::new(path))?;
            let w = json.to_weight().map_err(Failure::Domain)?;
            if w.len() != len {
                return Err(Failure::Domain(Error::WeightLengthMismatch {
                    got: w.len(),
                    expected: len,
                }));
            }
            Ok(w)
        }
    }
}

fn parse_exponent(s: &str) -> Result<Exponent, Failure> {
    Exponent::parse(s).map_err(Failure::Domain)
}

fn lattice_for(args: &LatticeArgs, len: usize) -> Result<GaborLattice, Failure> {
    GaborLattice::new(args.a, args.b, len).map_err(Failure::Domain)
}

#[derive(Serialize)]
struct DualOutput {
    meta: DualMetaJson,
    window: SignalJson,
}

fn cmd_dual(args: DualArgs) -> CmdResult {
    let g = read_signal(&args.window)?;
    let lat = lattice_for(&args.lattice, g.len())?;
    let outcome = dual_window_full(&g, lat, args.tol, DualMethod::ConjugateGradient)?;
    let wr = wexler_raz_check(&g, &outcome.window, lat, args.tol.max(1e-10))?;
    let window = SignalJson::from_signal(&outcome.window);
    let meta = DualMetaJson {
        lower: outcome.bounds.lower,
        upper: outcome.bounds.upper,
        cond: outcome.bounds.condition(),
        cg_iters: outcome.iters,
        wr_max_dev: wr.max_dev,
    };
    if let Some(path) = &args.out {
        emit(Some(path), &to_json_text(&window))?;
        print!("{}", to_json_text(&meta));
        Ok(())
    } else {
        print!("{}", to_json_text(&DualOutput { meta, window }));
        Ok(())
    }
}

fn cmd_analyze(args: AnalyzeArgs) -> CmdResult {
    let f = read_signal(&args.input)?;
    let g = read_signal(&args.window)?;
    let lat = lattice_for(&args.lattice, f.len())?;
    let c = analyze(&f, &g, lat)?;
    let text = match args.format {
        Format::Json => to_json_text(&CoeffJson::from_coeffs(&c)),
        Format::Csv => {
            let mut csv = String::from("k,m,re,im\n");
            for k in 0..lat.n_time() {
                for m in 0..lat.n_freq() {
                    let z = c.at(k, m);
                    let _ = writeln!(csv, "{k},{m},{:.17e},{:.17e}", z.re, z.im);
                }
            }
            csv
        }
    };
    emit(args.out.as_deref(), &text)
}

fn cmd_synthesize(args: SynthesizeArgs) -> CmdResult {
    let coeffs: CoeffJson = read_json(&args.input)?;
    let c = coeffs.to_coeffs().map_err(Failure::Domain)?;
    let g = read_signal(&args.window)?;
    let f = synthesize(&c, &g, c.lattice())?;
    emit(args.out.as_deref(), &to_json_text(&SignalJson::from_signal(&f)))
}

fn cmd_bounds(args: BoundsArgs) -> CmdResult {
    let g = read_signal(&args.window)?;
    let lat = lattice_for(&args.lattice, g.len())?;
    let bounds = frame_bounds(&g, lat, args.tol)?;
    let json = BoundsJson {
        lower: bounds.lower,
        upper: bounds.upper,
        cond: bounds.condition(),
        is_frame: bounds.is_frame,
    };
    emit(args.out.as_deref(), &to_json_text(&json))
}

#[derive(Serialize)]
struct WrOutput {
    max_dev: f64,
    pass: bool,
}

fn cmd_wr(args: WrArgs) -> CmdResult {
    let g = read_signal(&args.window)?;
    let gamma = read_signal(&args.dual_window)?;
    let lat = lattice_for(&args.lattice, g.len())?;
    let chk = wexler_raz_check(&g, &gamma, lat, args.tol)?;
    emit(
        args.out.as_deref(),
        &to_json_text(&WrOutput {
            max_dev: chk.max_dev,
            pass: chk.pass,
        }),
    )
}

#[derive(Serialize)]
struct WalnutOutput {
    #[serde(skip_serializing_if = "Option::is_none")]
    output: Option<SignalJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    correlations: Option<CorrelationDumpJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    janssen: Option<JanssenDumpJson>,
}

fn cmd_walnut(args: WalnutArgs) -> CmdResult {
    let g = read_signal(&args.window)?;
    let gamma = match &args.dual_window {
        Some(path) => read_signal(path)?,
        None => g.clone(),
    };
    let lat = lattice_for(&args.lattice, g.len())?;
    let fam = correlations(&g, &gamma, lat)?;
    let output = match &args.input {
        Some(path) => {
            let f = read_signal(path)?;
            Some(SignalJson::from_signal(&walnut_apply(&fam, &f)?))
        }
        None => None,
    };
    let (corr, janssen) = if args.dump {
        let table = janssen_coeffs(&g, &gamma, lat)?;
        (
            Some(CorrelationDumpJson::from_family(&fam)),
            Some(JanssenDumpJson::from_table(&table)),
        )
    } else {
        (None, None)
    };
    if output.is_none() && !args.dump {
        return Err(Failure::Io(
            "nothing to do: pass --input to apply the operator or --dump for the tables".into(),
        ));
    }
    emit(
        args.out.as_deref(),
        &to_json_text(&WalnutOutput {
            output,
            correlations: corr,
            janssen,
        }),
    )
}

#[derive(Serialize)]
struct ConvergenceRow {
    k_radius: usize,
    m_radius: usize,
    err: f64,
}

fn cmd_convergence(args: ConvergenceArgs) -> CmdResult {
    let f = read_signal(&args.input)?;
    let g = read_signal(&args.window)?;
    let gamma = read_signal(&args.dual_window)?;
    let lat = lattice_for(&args.lattice, f.len())?;
    let p = parse_exponent(&args.p)?;
    let q = parse_exponent(&args.q)?;
    let v = parse_weight(&args.weight, f.len())?;
    let profile = truncation_error_profile(&f, &g, &gamma, lat, p, q, &v)?;
    let text = match args.format {
        Format::Csv => {
            let mut csv = String::from("K,N,err\n");
            for e in &profile.entries {
                let _ = writeln!(csv, "{},{},{:.17e}", e.k_radius, e.m_radius, e.err);
            }
            csv
        }
        Format::Json => {
            let rows: Vec<ConvergenceRow> = profile
                .entries
                .iter()
                .map(|e| ConvergenceRow {
                    k_radius: e.k_radius,
                    m_radius: e.m_radius,
                    err: e.err,
                })
                .collect();
            to_json_text(&rows)
        }
    };
    emit(args.out.as_deref(), &text)
}

#[derive(Serialize)]
struct DecayRow {
    x: usize,
    dist: usize,
    sym_norm: f64,
    weight: f64,
}

#[derive(Serialize)]
struct SpectralOutput {
    cond: f64,
    roundtrip: f64,
    decay: Vec<DecayRow>,
    inverse: ShiftOpJson,
}

fn cmd_spectral(args: SpectralArgs) -> CmdResult {
    let json: ShiftOpJson = read_json(&args.input)?;
    let op = json.to_operator().map_err(Failure::Domain)?;
    let w = parse_weight(&args.weight, op.len())?;
    let inv = spectral_invert(&op, &w, args.tol)?;
    let text = match args.format {
        Format::Json => to_json_text(&SpectralOutput {
            cond: inv.condition,
            roundtrip: inv.roundtrip,
            decay: inv
                .decay
                .iter()
                .map(|d| DecayRow {
                    x: d.shift,
                    dist: d.dist,
                    sym_norm: d.sym_norm,
                    weight: d.weight,
                })
                .collect(),
            inverse: ShiftOpJson::from_operator(&inv.inverse),
        }),
        Format::Csv => {
            let mut csv = String::from("x,sym_norm,weight\n");
            for d in &inv.decay {
                let _ = writeln!(csv, "{},{:.17e},{:.17e}", d.shift, d.sym_norm, d.weight);
            }
            csv
        }
    };
    emit(args.out.as_deref(), &text)
}

#[derive(Serialize)]
struct MuxOutput {
    recovered: Vec<SignalJson>,
    max_err: Vec<f64>,
}

fn cmd_mux(args: MuxArgs) -> CmdResult {
    let channels: Vec<VectorSignal> = args
        .input
        .iter()
        .map(|p| read_signal(p))
        .collect::<Result<_, _>>()?;
    let g = read_signal(&args.window)?;
    if g.channels() != channels.len() {
        return Err(Failure::Domain(Error::ChannelMismatch {
            expected: g.channels(),
            got: channels.len(),
        }));
    }
    for f in &channels {
        if f.channels() != 1 {
            return Err(Failure::Domain(Error::ChannelMismatch {
                expected: 1,
                got: f.channels(),
            }));
        }
    }
    let f = VectorSignal::from_channels(&channels)?;
    let lat = lattice_for(&args.lattice, f.len())?;
    // one scalar coefficient sequence carries all channels; the dual of
    // the vector window untangles them
    let c = analyze(&f, &g, lat)?;
    let dual = dual_window_full(&g, lat, args.tol, DualMethod::ConjugateGradient)?;
    let recovered = synthesize(&c, &dual.window, lat)?;
    let mut out_signals = Vec::with_capacity(channels.len());
    let mut max_err = Vec::with_capacity(channels.len());
    for (i, original) in channels.iter().enumerate() {
        let rec = recovered.channel(i);
        max_err.push(rec.sub(original)?.max_abs());
        out_signals.push(SignalJson::from_signal(&rec));
    }
    emit(
        args.out.as_deref(),
        &to_json_text(&MuxOutput {
            recovered: out_signals,
            max_err,
        }),
    )
}

fn median_ns(samples: &mut [u128]) -> u128 {
    samples.sort_unstable();
    samples[samples.len() / 2]
}

fn cmd_bench(args: BenchArgs) -> CmdResult {
    let mut csv = String::from("L,t_walnut_ns,t_dense_ns\n");
    for &len in &args.sizes {
        if len % args.b != 0 || len % 64 != 0 {
            return Err(Failure::Domain(Error::InvalidLattice {
                a: len / 64,
                b: args.b,
                len,
            }));
        }
        let a = len / 64;
        let lat = GaborLattice::new(a, args.b, len).map_err(Failure::Domain)?;
        let g = gabor_super::signal::gaussian_window(len, 0.5, len as f64 / 4.0);
        let fam = correlations(&g, &g, lat)?;
        let dense = fam.to_dense();
        let f = random_signal(len, 1, args.seed);
        // warm both paths once so allocation noise stays out of the medians
        let mut sink = walnut_apply(&fam, &f)?;
        sink = dense.apply(&sink)?;
        let mut t_w = Vec::with_capacity(args.runs);
        let mut t_d = Vec::with_capacity(args.runs);
        for _ in 0..args.runs {
            let start = Instant::now();
            sink = walnut_apply(&fam, &sink)?;
            t_w.push(start.elapsed().as_nanos());
            let start = Instant::now();
            sink = dense.apply(&sink)?;
            t_d.push(start.elapsed().as_nanos());
            // renormalize so repeated applications cannot overflow
            let scale = 1.0 / sink.norm().max(1e-300);
            sink = sink.scale(Complex64::new(scale, 0.0));
        }
        let _ = writeln!(csv, "{},{},{}", len, median_ns(&mut t_w), median_ns(&mut t_d));
    }
    emit(args.out.as_deref(), &csv)
}
