//! `lcst`: generate signals, run transforms and convolutions, verify, bench, export.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lcst_core::bench::{bench_sweep, write_csv, BenchConfig};
use lcst_core::convolution::{
    convolve_with, lambda_weight, mustard_as_eight, mustard_convolve, odot, otimes, star_n_as_eight,
    star_n_direct_with, star_n_with, ConvMethod, EightTermReading,
};
use lcst_core::grid::{delta, gaussian_packet, random_field, Field, Grid};
use lcst_core::io::{export_csv, read_field, write_field, AnyField, SliceSpec};
use lcst_core::verify::{run_all, Suite, VerifyConfig};
use lcst_core::{
    ConstantsMode, Error, FrParams, FrequencyGrid, GaussianPacket, LcParams, Multivector, Path,
    SpaceTimeGrid, Transform, TwoSidedParams,
};

/// Determinant tolerance for matrices typed on the command line.
const DET_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "lcst", version, about = "Space-time linear canonical transforms on sampled 4-D signals")]
struct Cli {
    /// Worker threads: a positive integer or `auto`. Defaults to $LCST_THREADS, then auto.
    #[arg(long, global = true)]
    threads: Option<String>,

    /// Log verbosity (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a test signal as STCF.
    Gen(GenArgs),
    /// Forward or inverse transform of an STCF file.
    Transform(TransformArgs),
    /// Convolve two STCF files.
    Convolve(ConvolveArgs),
    /// Run the numerical checks and write a JSON report.
    Verify(VerifyArgs),
    /// Time the direct and fast paths over a size sweep.
    Bench(BenchArgs),
    /// Convert STCF to CSV, optionally fixing some axes.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GenKind {
    Gaussian,
    Delta,
    Random,
}

#[derive(Debug, Args)]
struct GenArgs {
    /// Samples per axis: one value or four (t,x1,x2,x3).
    #[arg(long, value_delimiter = ',', required = true)]
    dims: Vec<usize>,
    /// Spacing per axis: one value or four.
    #[arg(long, value_delimiter = ',', default_values_t = [0.5])]
    spacing: Vec<f64>,
    /// Coordinates of the first sample; defaults to a grid centered on zero.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    origin: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value = "gaussian")]
    kind: GenKind,
    /// Gaussian center: one value or four.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [0.0])]
    center: Vec<f64>,
    /// Gaussian widths: one value or four.
    #[arg(long, value_delimiter = ',', default_values_t = [1.0])]
    width: Vec<f64>,
    /// Sixteen blade coefficients of the amplitude; defaults to the scalar 1.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    amplitude: Option<Vec<f64>>,
    /// Temporal modulation frequency (left factor exp(e_t ω t)).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    temporal_freq: f64,
    /// Spatial modulation wave vector (right factor exp(i3 k·x)).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [0.0, 0.0, 0.0])]
    spatial_freq: Vec<f64>,
    /// Sample index of the delta.
    #[arg(long, value_delimiter = ',', default_values_t = [0, 0, 0, 0])]
    at: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TransformKind {
    Sft,
    Frsft,
    Lcst,
    Lcst2,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Corrected,
    Verbatim,
}

impl From<ModeArg> for ConstantsMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Corrected => ConstantsMode::Corrected,
            ModeArg::Verbatim => ConstantsMode::Verbatim,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PathArg {
    Direct,
    Fast,
}

impl From<PathArg> for Path {
    fn from(p: PathArg) -> Self {
        match p {
            PathArg::Direct => Path::Direct,
            PathArg::Fast => Path::Fast,
        }
    }
}

#[derive(Debug, Args)]
struct TransformArgs {
    #[arg(long, value_enum)]
    kind: TransformKind,
    /// Matrix entries a,b,c,d (lcst) or a1,b1,c1,d1,a2,b2,c2,d2 (lcst2).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "alpha")]
    params: Option<Vec<f64>>,
    /// Fractional angle for frsft.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, value_enum, default_value = "fast")]
    path: PathArg,
    #[arg(long)]
    inverse: bool,
    #[arg(long, value_enum, default_value = "corrected")]
    mode: ModeArg,
    /// For --inverse: take the output lattice from this STCF file instead of
    /// the centered lattice conjugate to the input.
    #[arg(long)]
    grid_like: Option<PathBuf>,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConvKind {
    Standard,
    Mustard,
    Odot,
    Otimes,
    Starn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConvMethodArg {
    /// Spectral evaluation (mustard, starn).
    Spectral,
    /// Direct sum (standard) or direct integral (starn).
    Direct,
    /// Circular convolution through the FFT (standard).
    Fft,
    /// Sum of eight split convolutions (mustard, starn).
    Eight,
}

#[derive(Debug, Args)]
struct ConvolveArgs {
    #[arg(long, value_enum)]
    kind: ConvKind,
    /// a,b,c,d for odot/otimes; eight entries for starn.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    params: Option<Vec<f64>>,
    /// Defaults to fft for standard and spectral otherwise.
    #[arg(long, value_enum)]
    method: Option<ConvMethodArg>,
    #[arg(long, value_enum, default_value = "corrected")]
    mode: ModeArg,
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, value_enum, default_value = "corrected")]
    mode: ModeArg,
    #[arg(long, default_value_t = VerifyConfig::default().seed)]
    seed: u64,
    /// JSON report destination; stdout when absent.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_enum, default_value = "lcst")]
    kind: TransformKind,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    params: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', default_values_t = [4, 8, 12, 16])]
    dims_sweep: Vec<usize>,
    #[arg(long, value_delimiter = ',', value_enum, default_values_t = [PathArg::Direct, PathArg::Fast])]
    paths: Vec<PathArg>,
    /// Timings are the minimum over this many runs.
    #[arg(long, default_value_t = 3)]
    repeat: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExportArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Axes to fix, e.g. `t=0,x3=0`.
    #[arg(long, value_delimiter = ',')]
    slice: Vec<String>,
}

/// Failure classes with their exit codes.
#[derive(Debug)]
enum Failure {
    Check(String),
    Usage(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Self::Check(_) => 1,
            Self::Usage(_) => 2,
            Self::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Self::Check(m) | Self::Usage(m) | Self::Io(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let m = e.to_string();
        match e {
            Error::Domain(_) | Error::Shape(_) | Error::Unsupported(_) | Error::TooLarge(_) => Self::Usage(m),
            Error::Format { .. } | Error::Csv(_) | Error::Json(_) | Error::Io(_) => Self::Io(m),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self::Io(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn usage(m: impl Into<String>) -> Failure {
    Failure::Usage(m.into())
}

fn four<T: Copy>(name: &str, v: &[T]) -> CliResult<[T; 4]> {
    match v {
        [x] => Ok([*x; 4]),
        [a, b, c, d] => Ok([*a, *b, *c, *d]),
        _ => Err(usage(format!("--{name} takes one value or four, got {}", v.len()))),
    }
}

fn lc(v: &[f64]) -> CliResult<LcParams> {
    Ok(LcParams::with_tolerance(v[0], v[1], v[2], v[3], DET_TOLERANCE)?)
}

fn lc_params(v: Option<&[f64]>) -> CliResult<LcParams> {
    match v {
        Some(v) if v.len() == 4 => lc(v),
        Some(v) => Err(usage(format!("--params takes a,b,c,d, got {} values", v.len()))),
        None => Err(usage("--params a,b,c,d is required")),
    }
}

fn two_sided_params(v: Option<&[f64]>) -> CliResult<TwoSidedParams> {
    match v {
        Some(v) if v.len() == 8 => Ok(TwoSidedParams::new(lc(&v[..4])?, lc(&v[4..])?)?),
        Some(v) => Err(usage(format!("--params takes eight entries A1,B1,C1,D1,A2,B2,C2,D2, got {}", v.len()))),
        None => Err(usage("--params with eight entries is required")),
    }
}

fn build_transform(kind: TransformKind, params: Option<&[f64]>, alpha: Option<f64>, mode: ConstantsMode) -> CliResult<Transform> {
    let no_params = |what: &str| -> CliResult<()> {
        if params.is_some() {
            return Err(usage(format!("--params is not used by {what}")));
        }
        Ok(())
    };
    if alpha.is_some() && kind != TransformKind::Frsft {
        return Err(usage("--alpha applies only to --kind frsft"));
    }
    Ok(match kind {
        TransformKind::Sft => {
            no_params("sft")?;
            Transform::Sft
        }
        TransformKind::Frsft => {
            no_params("frsft; use --alpha")?;
            let alpha = alpha.ok_or_else(|| usage("--kind frsft needs --alpha"))?;
            Transform::Frsft { params: FrParams::new(alpha)?, mode }
        }
        TransformKind::Lcst => Transform::Lcst { params: lc_params(params)? },
        TransformKind::Lcst2 => Transform::TwoSided { params: two_sided_params(params)?, mode },
    })
}

fn with_path(e: Error, path: &std::path::Path) -> Failure {
    match Failure::from(e) {
        Failure::Io(m) => Failure::Io(format!("{}: {m}", path.display())),
        f => f,
    }
}

fn read(path: &std::path::Path) -> CliResult<AnyField> {
    read_field(path).map_err(|e| with_path(e, path))
}

fn create(path: &std::path::Path) -> CliResult<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write_out<D: lcst_core::grid::Domain>(f: &Field<D>, out: &std::path::Path) -> CliResult<()> {
    if !f.is_finite() {
        log::warn!("output contains non-finite values");
    }
    write_field(f, out).map_err(|e| with_path(e, out))
}

fn cmd_gen(a: &GenArgs) -> CliResult<()> {
    let dims = four("dims", &a.dims)?;
    if dims.contains(&0) {
        return Err(usage("--dims must be positive"));
    }
    let spacing = four("spacing", &a.spacing)?;
    let g = match &a.origin {
        Some(o) => SpaceTimeGrid::new(dims, spacing, four("origin", o)?)?,
        None => SpaceTimeGrid::centered(dims, spacing)?,
    };
    let f = match a.kind {
        GenKind::Gaussian => {
            let mut p = GaussianPacket::scalar(four("center", &a.center)?, four("width", &a.width)?);
            if let Some(amp) = &a.amplitude {
                let c: [f64; 16] = amp
                    .as_slice()
                    .try_into()
                    .map_err(|_| usage(format!("--amplitude takes 16 coefficients, got {}", amp.len())))?;
                p = p.with_amplitude(Multivector(c));
            }
            let k: [f64; 3] = a
                .spatial_freq
                .as_slice()
                .try_into()
                .map_err(|_| usage("--spatial-freq takes three values"))?;
            p = p.with_modulation(a.temporal_freq, k);
            gaussian_packet(&g, &p)?
        }
        GenKind::Delta => {
            let at = four("at", &a.at)?;
            delta(&g, at, Multivector::one())?
        }
        GenKind::Random => random_field(&g, &mut ChaCha8Rng::seed_from_u64(a.seed)),
    };
    write_out(&f, &a.out)
}

/// Output lattice for the `b = 0` LCST: temporal axis conjugate, spatial
/// axes rescaled by `1/d` so `d·w` lands on the input lattice.
fn b_zero_grid(g: &SpaceTimeGrid, p: &LcParams) -> CliResult<FrequencyGrid> {
    if p.d <= 0.0 {
        return Err(usage(format!("b = 0 needs d > 0, got d = {}", p.d)));
    }
    let n = g.dims();
    let (dx, o) = (g.spacing(), g.origin());
    let wt = std::f64::consts::TAU / (n[0] as f64 * dx[0]);
    let spacing = [wt, dx[1] / p.d, dx[2] / p.d, dx[3] / p.d];
    let origin = [-((n[0] / 2) as f64) * wt, o[1] / p.d, o[2] / p.d, o[3] / p.d];
    Ok(Grid::new(n, spacing, origin)?)
}

fn cmd_transform(a: &TransformArgs) -> CliResult<()> {
    let mode = a.mode.into();
    let t = build_transform(a.kind, a.params.as_deref(), a.alpha, mode)?;
    let path: Path = a.path.into();
    if let Transform::Lcst { params } = &t {
        if params.b == 0.0 && matches!(path, Path::Fast) {
            return Err(usage(
                "b = 0 takes the degenerate branch (temporal SFT plus a pointwise spatial map); \
                 it has no DFT structure, use --path direct",
            ));
        }
    }
    if a.grid_like.is_some() && !a.inverse {
        return Err(usage("--grid-like applies only with --inverse"));
    }
    let input = read(&a.input)?;
    if a.inverse {
        let s = input.into_spectrum()?;
        let xg: SpaceTimeGrid = match &a.grid_like {
            Some(p) => match read(p)? {
                AnyField::SpaceTime(f) => *f.grid(),
                AnyField::Frequency(f) => f.grid().relabel(),
            },
            None => {
                // The conjugate relation is symmetric, so the lattice
                // conjugate to the spectrum's is the canonical one.
                let probe: SpaceTimeGrid = s.grid().relabel();
                t.conjugate_grid(&probe)?.relabel()
            }
        };
        write_out(&t.inverse(&s, &xg, path)?, &a.out)
    } else {
        let f = input.into_signal()?;
        let wg = match &t {
            Transform::Lcst { params } if params.b == 0.0 => b_zero_grid(f.grid(), params)?,
            _ => t.conjugate_grid(f.grid())?,
        };
        write_out(&t.forward(&f, &wg, path)?, &a.out)
    }
}

fn cmd_convolve(a: &ConvolveArgs) -> CliResult<()> {
    let (fa, fb) = (read(&a.a)?, read(&a.b)?);
    let method = a.method;
    let bad_method = |m: ConvMethodArg| usage(format!("--method {m:?} does not apply to --kind {:?}", a.kind).to_lowercase());
    let params = a.params.as_deref();
    if a.kind != ConvKind::Standard && a.kind != ConvKind::Mustard {
        if params.is_none() {
            return Err(usage(format!("--kind {:?} needs --params", a.kind).to_lowercase()));
        }
    } else if params.is_some() {
        return Err(usage("--params is not used by standard or mustard convolution"));
    }
    match a.kind {
        ConvKind::Standard => {
            let m = match method.unwrap_or(ConvMethodArg::Fft) {
                ConvMethodArg::Fft => ConvMethod::Fft,
                ConvMethodArg::Direct => ConvMethod::Direct,
                m => return Err(bad_method(m)),
            };
            match (fa, fb) {
                (AnyField::SpaceTime(x), AnyField::SpaceTime(y)) => write_out(&convolve_with(&x, &y, m)?, &a.out),
                (AnyField::Frequency(x), AnyField::Frequency(y)) => write_out(&convolve_with(&x, &y, m)?, &a.out),
                _ => Err(usage("--a and --b must both be signals or both be spectra")),
            }
        }
        ConvKind::Mustard => {
            let (x, y) = (fa.into_signal()?, fb.into_signal()?);
            let h = match method.unwrap_or(ConvMethodArg::Spectral) {
                ConvMethodArg::Spectral => mustard_convolve(&x, &y)?,
                ConvMethodArg::Eight => mustard_as_eight(&x, &y, EightTermReading::default())?,
                m => return Err(bad_method(m)),
            };
            write_out(&h, &a.out)
        }
        ConvKind::Odot => {
            if let Some(m) = method.filter(|m| *m != ConvMethodArg::Spectral) {
                return Err(bad_method(m));
            }
            let p = lc_params(params)?;
            write_out(&odot(&fa.into_signal()?, &fb.into_signal()?, &p)?, &a.out)
        }
        ConvKind::Otimes => {
            if let Some(m) = method.filter(|m| *m != ConvMethodArg::Spectral) {
                return Err(bad_method(m));
            }
            let p = lc_params(params)?;
            write_out(&otimes(&fa.into_spectrum()?, &fb.into_spectrum()?, &p)?, &a.out)
        }
        ConvKind::Starn => {
            let p = two_sided_params(params)?;
            let (x, y) = (fa.into_signal()?, fb.into_signal()?);
            let lambda = lambda_weight(&p)?;
            let mode = a.mode.into();
            let h = match method.unwrap_or(ConvMethodArg::Spectral) {
                ConvMethodArg::Spectral => star_n_with(&x, &y, &lambda, mode, Path::Fast)?,
                ConvMethodArg::Direct => star_n_direct_with(&x, &y, &lambda, mode)?,
                ConvMethodArg::Eight => {
                    let h = star_n_as_eight(&x, &y, &p, EightTermReading::default())?;
                    let spectral = star_n_with(&x, &y, &lambda, mode, Path::Fast)?;
                    let coeffs = |f: &Field<lcst_core::grid::SpaceTime>| -> Vec<f64> {
                        f.data().iter().flat_map(|m| m.0).collect()
                    };
                    let (s, e) = (coeffs(&spectral), coeffs(&h));
                    let denom: f64 = e.iter().map(|v| v * v).sum();
                    if denom > 0.0 {
                        let kappa = s.iter().zip(&e).map(|(a, b)| a * b).sum::<f64>() / denom;
                        eprintln!("spectral form = κ · eight-term form with κ ≈ {kappa:.12}");
                    }
                    h
                }
                m => return Err(bad_method(m)),
            };
            write_out(&h, &a.out)
        }
    }
}

fn cmd_verify(a: &VerifyArgs) -> CliResult<bool> {
    let suite: Suite = a.suite.parse()?;
    let cfg = VerifyConfig { suite, mode: a.mode.into(), seed: a.seed };
    let outcome = run_all(&cfg)?;
    let json = outcome.to_json()?;
    match &a.report {
        Some(p) => std::fs::write(p, json.as_bytes()).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?,
        None => println!("{json}"),
    }
    let c = &outcome.summary.counts;
    eprintln!(
        "verify: {} checks, {} pass, {} fail, {} expected deviations",
        c.total, c.pass, c.fail, c.expected_deviation
    );
    for d in &outcome.summary.expected_deviations {
        eprintln!("  expected deviation: {} (residual {:.3e})", d.check_name, d.residual);
    }
    for f in &outcome.summary.failures {
        eprintln!("  FAIL: {f}");
    }
    Ok(outcome.exit_code() == 0)
}

fn cmd_bench(a: &BenchArgs) -> CliResult<()> {
    if a.kind != TransformKind::Lcst && a.kind != TransformKind::Lcst2 {
        return Err(usage("bench supports --kind lcst or lcst2"));
    }
    let transform = match (a.kind, a.params.as_deref()) {
        (TransformKind::Lcst, None) => Transform::Lcst { params: LcParams::new(2.0, 1.0, 1.0, 1.0)? },
        (TransformKind::Lcst2, None) => Transform::TwoSided {
            params: TwoSidedParams::new(LcParams::new(1.0, 0.5, 0.0, 1.0)?, LcParams::new(2.0, 1.0, 1.0, 1.0)?)?,
            mode: ConstantsMode::Corrected,
        },
        (k, p) => build_transform(k, p, None, ConstantsMode::Corrected)?,
    };
    let mut paths: Vec<Path> = a.paths.iter().map(|&p| p.into()).collect();
    paths.dedup();
    let cfg = BenchConfig { repeats: a.repeat.max(1), seed: a.seed, paths, ..BenchConfig::new(transform, a.dims_sweep.clone()) };
    let rows = bench_sweep(&cfg)?;
    match &a.out {
        Some(p) => write_csv(&rows, create(p)?)?,
        None => write_csv(&rows, io::stdout().lock())?,
    }
    Ok(())
}

fn cmd_export(a: &ExportArgs) -> CliResult<()> {
    let slices = a.slice.iter().map(|s| s.parse::<SliceSpec>()).collect::<Result<Vec<_>, _>>()?;
    let mut out = create(&a.out)?;
    let rows = match read(&a.input)? {
        AnyField::SpaceTime(f) => export_csv(&f, &mut out, &slices)?,
        AnyField::Frequency(f) => export_csv(&f, &mut out, &slices)?,
    };
    out.flush()?;
    log::info!("exported {rows} rows");
    Ok(())
}

fn configure_threads(flag: Option<&str>) -> CliResult<()> {
    let env = std::env::var("LCST_THREADS").ok();
    let (value, source) = match (flag, env.as_deref()) {
        (Some(f), _) => (f, "--threads"),
        (None, Some(e)) => (e, "LCST_THREADS"),
        (None, None) => return Ok(()),
    };
    let n = match value.trim() {
        "auto" => 0,
        v => match v.parse::<usize>() {
            Ok(n) if n > 0 => n,
            _ => return Err(usage(format!("{source} must be a positive integer or `auto`, got `{v}`"))),
        },
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| usage(format!("cannot configure thread pool: {e}")))
}

fn run(cli: &Cli) -> CliResult<()> {
    configure_threads(cli.threads.as_deref())?;
    match &cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Transform(a) => cmd_transform(a),
        Command::Convolve(a) => cmd_convolve(a),
        Command::Verify(a) => {
            if cmd_verify(a)? {
                Ok(())
            } else {
                Err(Failure::Check("one or more checks failed".into()))
            }
        }
        Command::Bench(a) => cmd_bench(a),
        Command::Export(a) => cmd_export(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("lcst: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
