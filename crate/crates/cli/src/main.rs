use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use dissjacobi::inverse::{block_recover, mixed_recover, reconstruct_from_spectrum, BlockData, MixedData};
use dissjacobi::io::{from_json, ConversionRepr, MatrixRepr, Wire};
use dissjacobi::jacobi::{kernel_psd_check, spectrum_report, FiniteJacobi, JacobiClass, Spectrum};
use dissjacobi::livsic::{model_from_spectrum, triangular_to_jacobi};
use dissjacobi::semiinf::{
    chebyshev_eig, chebyshev_matrix, eigenvalue_near, moments, tan_moments, top_eigenvalues, volterra_jacobi,
    volterra_real_eig, ChebyshevVariant, VolterraParams,
};
use dissjacobi::verify::{self, Suite, SuiteParams};
use dissjacobi::{Error, ErrorKind, Tolerances};

mod render;

use render::Format;

#[derive(Parser, Debug)]
#[command(name = "dissjacobi", version, about = "Direct and inverse spectral problems for dissipative Jacobi matrices")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Output format; sweeps default to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for randomised suites.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// JSON file with `tolerances`, `format` and `seed`; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(flatten)]
    tol: TolArgs,
}

#[derive(Args, Debug, Default)]
struct TolArgs {
    #[arg(long = "tol-trim", global = true)]
    trim: Option<f64>,
    #[arg(long = "tol-real", global = true)]
    real: Option<f64>,
    #[arg(long = "tol-interp", global = true)]
    interp: Option<f64>,
    #[arg(long = "tol-roundtrip", global = true)]
    roundtrip: Option<f64>,
    #[arg(long = "tol-cluster", global = true)]
    cluster: Option<f64>,
    #[arg(long = "tol-chain", global = true)]
    chain: Option<f64>,
    #[arg(long = "tol-spec", global = true)]
    spec: Option<f64>,
    #[arg(long = "tol-rec", global = true)]
    rec: Option<f64>,
    #[arg(long = "tol-peel", global = true)]
    peel: Option<f64>,
    #[arg(long = "tol-chainrel", global = true)]
    chainrel: Option<f64>,
    #[arg(long = "tol-asym", global = true)]
    asym: Option<f64>,
    #[arg(long = "tol-a2-min", global = true)]
    a2_min: Option<f64>,
    #[arg(long = "tol-psd", global = true)]
    psd: Option<f64>,
    #[arg(long = "tol-pole", global = true)]
    pole: Option<f64>,
    #[arg(long = "tol-node", global = true)]
    node: Option<f64>,
    #[arg(long = "tol-unitary", global = true)]
    unitary: Option<f64>,
    #[arg(long = "tol-conv", global = true)]
    conv: Option<f64>,
    #[arg(long = "tol-mom", global = true)]
    mom: Option<f64>,
    #[arg(long = "tol-eig", global = true)]
    eig: Option<f64>,
}

impl TolArgs {
    fn apply(&self, t: &mut Tolerances) -> Result<(), Error> {
        let pairs = [
            ("trim", self.trim),
            ("real", self.real),
            ("interp", self.interp),
            ("roundtrip", self.roundtrip),
            ("cluster", self.cluster),
            ("chain", self.chain),
            ("spec", self.spec),
            ("rec", self.rec),
            ("peel", self.peel),
            ("chainrel", self.chainrel),
            ("asym", self.asym),
            ("a2_min", self.a2_min),
            ("psd", self.psd),
            ("pole", self.pole),
            ("node", self.node),
            ("unitary", self.unitary),
            ("conv", self.conv),
            ("mom", self.mom),
            ("eig", self.eig),
        ];
        for (name, v) in pairs {
            if let Some(v) = v {
                t.set(name, v)?;
            }
        }
        Ok(())
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Eigenvalues of a matrix file, with diagnostics on stderr.
    Spectrum { file: PathBuf },
    /// Rebuild the matrix from a spectrum file.
    Reconstruct {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Peel)]
        method: Method,
    },
    /// Recover the tail from a known prefix and part of the spectrum.
    Mixed { file: PathBuf },
    /// Recover a matrix with one vanishing coupling.
    Block { file: PathBuf },
    /// Volterra truncation: real-part eigenvalues and moments against closed forms.
    Volterra {
        #[arg(long)]
        l: f64,
        #[arg(long = "N")]
        n: usize,
        /// Also run every size 25, 50, 100, ... below N.
        #[arg(long)]
        sweep: bool,
    },
    /// Chebyshev-type matrices: the non-real eigenvalue against its truncation.
    Chebyshev {
        #[arg(long, value_enum, default_value_t = Variant::Standard)]
        variant: Variant,
        #[arg(long)]
        l: f64,
        #[arg(long = "N", default_value_t = 200)]
        n: usize,
        #[arg(long)]
        sweep: bool,
    },
    /// Randomised invariant suites; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Peel,
    Livsic,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Variant {
    Standard,
    Modified,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Roundtrip,
    Green,
    Symmetric,
    Volterra,
    Chebyshev,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Roundtrip => Suite::Roundtrip,
            SuiteArg::Green => Suite::Green,
            SuiteArg::Symmetric => Suite::Symmetric,
            SuiteArg::Volterra => Suite::Volterra,
            SuiteArg::Chebyshev => Suite::Chebyshev,
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    tolerances: Option<Tolerances>,
    format: Option<Format>,
    seed: Option<u64>,
}

/// Resolved tolerances, format and seed.
struct RunConfig {
    tol: Tolerances,
    format: Option<Format>,
    seed: u64,
}

impl RunConfig {
    fn resolve(r: &RunArgs) -> Result<Self, Error> {
        let file: ConfigFile = match &r.config {
            Some(p) => serde_json::from_str(&read_input(p)?)?,
            None => ConfigFile::default(),
        };
        let mut tol = file.tolerances.unwrap_or_default();
        tol.validate()?;
        r.tol.apply(&mut tol)?;
        Ok(Self { tol, format: r.format.or(file.format), seed: r.seed.or(file.seed).unwrap_or(0) })
    }
}

/// One line of a closed-form comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    #[serde(rename = "N")]
    pub n: usize,
    pub quantity: String,
    pub predicted: f64,
    pub computed: f64,
    pub abs_error: f64,
}

impl Row {
    fn new(n: usize, quantity: impl Into<String>, predicted: f64, computed: f64) -> Self {
        Self { n, quantity: quantity.into(), predicted, computed, abs_error: (predicted - computed).abs() }
    }
}

/// Output of `reconstruct --method both`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BothRepr {
    pub peel: MatrixRepr,
    pub livsic: ConversionRepr,
    pub max_entry_difference: f64,
}

#[derive(Serialize)]
struct SpectrumDiagnostics {
    im_sum_residual: f64,
    im_sum_ok: bool,
    cluster_ambiguity: bool,
    dense_path: bool,
    kernel_psd: Option<bool>,
    kernel_min_eigenvalue: Option<f64>,
}

/// What a subcommand produced, before rendering.
pub enum Output {
    Matrix(FiniteJacobi),
    Spectrum(Spectrum),
    Conversion(ConversionRepr),
    Both(BothRepr),
    Rows(Vec<Row>),
    Report(verify::SuiteReport),
}

fn read_input(p: &Path) -> Result<String, Error> {
    let mut s = String::new();
    let r = if p == Path::new("-") {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(p).map(|t| s = t)
    };
    r.map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
    Ok(s)
}

fn load<T: Wire>(p: &Path) -> Result<T, Error> {
    from_json(&read_input(p)?)
}

fn entry_difference(x: &FiniteJacobi, y: &FiniteJacobi) -> f64 {
    let b = (1..=x.n()).map(|k| (x.b(k) - y.b(k)).norm());
    let a = (1..x.n()).map(|k| (x.a(k) - y.a(k)).abs());
    b.chain(a).fold(0.0, f64::max)
}

fn cmd_spectrum(file: &Path, tol: &Tolerances) -> Result<Output, Error> {
    let j: FiniteJacobi = load(file)?;
    let rep = spectrum_report(&j, tol)?;
    let im_sum_ok = rep.im_sum_residual <= tol.spec * j.b1().im.max(1.0);
    if rep.cluster_ambiguity {
        log::warn!("clustering is close to its threshold; multiplicities may be unstable");
    }
    if !im_sum_ok {
        log::warn!("sum of Im z misses Im b1 by {:.3e}", rep.im_sum_residual);
    }
    let kernel = if j.class() == JacobiClass::Dissipative {
        let r = j.norm().max(1.0);
        let samples: Vec<C64> = (0..6).map(|k| C64::new(r * (k as f64 - 2.5) / 2.5, -r * (1.0 + 0.3 * k as f64))).collect();
        kernel_psd_check(&j, &samples, tol).ok()
    } else {
        None
    };
    let diag = SpectrumDiagnostics {
        im_sum_residual: rep.im_sum_residual,
        im_sum_ok,
        cluster_ambiguity: rep.cluster_ambiguity,
        dense_path: rep.dense,
        kernel_psd: kernel.as_ref().map(|k| k.psd),
        kernel_min_eigenvalue: kernel.as_ref().map(|k| k.min_eigenvalue),
    };
    eprintln!("{}", serde_json::json!({ "diagnostics": diag }));
    Ok(Output::Spectrum(rep.spectrum.sorted()))
}

fn cmd_reconstruct(file: &Path, method: Method, tol: &Tolerances) -> Result<Output, Error> {
    let s: Spectrum = load(file)?;
    s.require_upper()?;
    let livsic = || triangular_to_jacobi(&model_from_spectrum(&s)?, tol);
    Ok(match method {
        Method::Peel => Output::Matrix(reconstruct_from_spectrum(&s, tol)?),
        Method::Livsic => Output::Conversion(livsic()?.to_repr()),
        Method::Both => {
            let p = reconstruct_from_spectrum(&s, tol)?;
            let c = livsic()?;
            let d = entry_difference(&p, &c.jacobi);
            if d > tol.roundtrip {
                log::warn!("peel and Livsic reconstructions differ by {d:.3e}");
            }
            Output::Both(BothRepr { peel: p.to_repr(), livsic: c.to_repr(), max_entry_difference: d })
        }
    })
}

/// Sizes `25, 50, 100, ...` below `n`, then `n` itself.
fn sweep_sizes(n: usize, sweep: bool) -> Vec<usize> {
    let mut out = vec![];
    if sweep {
        let mut m = 25;
        while m < n {
            out.push(m);
            m *= 2;
        }
    }
    out.push(n);
    out
}

fn cmd_volterra(l: f64, n: usize, sweep: bool) -> Result<Output, Error> {
    VolterraParams::new(l, n)?;
    let mut rows = vec![];
    for m in sweep_sizes(n, sweep) {
        let j = volterra_jacobi(VolterraParams::new(l, m)?);
        let top = top_eigenvalues(&j.real_part(), 3)?;
        for (k, x) in top.iter().enumerate() {
            rows.push(Row::new(m, format!("real_eig_{k}"), volterra_real_eig(l, k as i64), *x));
        }
        let order = 4.min(2 * m - 2);
        let got = moments(&j, order)?.gammas;
        let want = tan_moments(l, order);
        for k in (2..=order).step_by(2) {
            rows.push(Row::new(m, format!("gamma_{k}"), want[k], got[k]));
        }
    }
    Ok(Output::Rows(rows))
}

fn cmd_chebyshev(v: Variant, l: f64, n: usize, sweep: bool, tol: &Tolerances) -> Result<Output, Error> {
    if !(l > 0.0 && l.is_finite()) || n < 2 {
        return Err(Error::InvalidMatrix(format!("need l > 0 and N >= 2, got l = {l}, N = {n}")));
    }
    let v = match v {
        Variant::Standard => ChebyshevVariant::Standard,
        Variant::Modified => ChebyshevVariant::Modified,
    };
    let Some(z) = chebyshev_eig(v, l, tol) else {
        log::info!("no non-real eigenvalue for l = {l}");
        return Ok(Output::Rows(vec![]));
    };
    let mut rows = vec![];
    for m in sweep_sizes(n, sweep) {
        let w = eigenvalue_near(&chebyshev_matrix(v, l, m)?, z, tol)?;
        rows.push(Row::new(m, "eig_re", z.re, w.re));
        rows.push(Row::new(m, "eig_im", z.im, w.im));
    }
    Ok(Output::Rows(rows))
}

fn run(cli: &Cli, cfg: &RunConfig) -> Result<(Output, bool), Error> {
    let tol = &cfg.tol;
    let out = match &cli.cmd {
        Cmd::Spectrum { file } => cmd_spectrum(file, tol)?,
        Cmd::Reconstruct { file, method } => cmd_reconstruct(file, *method, tol)?,
        Cmd::Mixed { file } => Output::Matrix(mixed_recover(&load::<MixedData>(file)?, tol)?),
        Cmd::Block { file } => Output::Matrix(block_recover(&load::<BlockData>(file)?, tol)?),
        Cmd::Volterra { l, n, sweep } => cmd_volterra(*l, *n, *sweep)?,
        Cmd::Chebyshev { variant, l, n, sweep } => cmd_chebyshev(*variant, *l, *n, *sweep, tol)?,
        Cmd::Verify { suite, n, trials } => {
            let rep = verify::run((*suite).into(), SuiteParams { n: *n, trials: *trials, seed: cfg.seed }, tol)?;
            let ok = rep.all_pass();
            return Ok((Output::Report(rep), ok));
        }
    };
    Ok((out, true))
}

fn fail(kind: &str, message: String, code: u8) -> ExitCode {
    eprintln!("{}", serde_json::json!({ "error": { "kind": kind, "message": message } }));
    ExitCode::from(code)
}

fn fail_with(e: &Error) -> ExitCode {
    match e.kind() {
        ErrorKind::Parse => fail("parse", e.to_string(), 2),
        ErrorKind::Domain => fail("domain", e.to_string(), 3),
        ErrorKind::Numerical => fail("numerical", e.to_string(), 4),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("DISSJACOBI_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            return fail("parse", msg.trim().trim_start_matches("error: ").to_string(), 2);
        }
    };
    let cfg = match RunConfig::resolve(&cli.run) {
        Ok(c) => c,
        Err(e) => return fail_with(&e),
    };
    let sweep = matches!(cli.cmd, Cmd::Volterra { .. } | Cmd::Chebyshev { .. });
    let format = cfg.format.unwrap_or(if sweep { Format::Csv } else { Format::Json });
    match run(&cli, &cfg) {
        Ok((out, ok)) => match render::render(&out, format) {
            Ok(text) => {
                print!("{text}");
                if ok {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(e) => fail_with(&e),
        },
        Err(e) => fail_with(&e),
    }
}
