//! Randomised invariant suites behind `dissjacobi verify`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::inverse::{reconstruct_from_charfunction, reconstruct_from_spectrum};
use crate::jacobi::{spectrum, Eig, FiniteJacobi, Spectrum};
use crate::livsic::{check_conversion, model_from_spectrum, triangular_to_jacobi};
use crate::mfunc::{green_residual, CharFunction};
use crate::semiinf::{self, ChebyshevVariant, PerturbedVolterra, VolterraParams};

type C64 = Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Roundtrip,
    Green,
    Symmetric,
    Volterra,
    Chebyshev,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "roundtrip" => Suite::Roundtrip,
            "green" => Suite::Green,
            "symmetric" => Suite::Symmetric,
            "volterra" => Suite::Volterra,
            "chebyshev" => Suite::Chebyshev,
            _ => return Err(Error::Parse(format!("unknown suite {s}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub check: String,
    pub worst: f64,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub rows: Vec<CheckRow>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    fn push(&mut self, check: &str, worst: f64, bound: f64) {
        self.rows.push(CheckRow { check: check.into(), worst, bound, pass: worst <= bound });
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteParams {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
}

/// Strictly dissipative matrix with `Re b1, b_k` in `[-1, 1]`,
/// `Im b1` in `[0.2, 2]` and `a_k` in `[0.3, 1.5]`.
pub fn random_jacobi<R: Rng>(rng: &mut R, n: usize) -> FiniteJacobi {
    let b1 = C64::new(rng.random_range(-1.0..1.0), rng.random_range(0.2..2.0));
    let b = (1..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let a = (1..n).map(|_| rng.random_range(0.3..1.5)).collect();
    FiniteJacobi::new(b1, b, a).expect("entries drawn inside the class")
}

/// Spectrum of size `n` invariant under `z -> -conj(z)`: mirror pairs off
/// the imaginary axis plus points on it.
pub fn random_symmetric_spectrum<R: Rng>(rng: &mut R, n: usize) -> Spectrum {
    let pairs = rng.random_range(0..=n / 2);
    let mut entries = Vec::with_capacity(n);
    for _ in 0..pairs {
        let z = C64::new(rng.random_range(0.2..2.0), rng.random_range(0.2..2.0));
        entries.push(Eig { z, mult: 1 });
        entries.push(Eig { z: -z.conj(), mult: 1 });
    }
    for _ in 0..n - 2 * pairs {
        entries.push(Eig { z: C64::new(0.0, rng.random_range(0.2..3.0)), mult: 1 });
    }
    Spectrum { entries }
}

fn entry_diff(x: &FiniteJacobi, y: &FiniteJacobi) -> f64 {
    let b = (1..=x.n()).map(|k| (x.b(k) - y.b(k)).norm());
    let a = (1..x.n()).map(|k| (x.a(k) - y.a(k)).abs());
    b.chain(a).fold(0.0, f64::max)
}

fn sizes(n: usize, lo: usize) -> std::ops::RangeInclusive<usize> {
    lo.min(n)..=n
}

pub fn run(suite: Suite, p: SuiteParams, tol: &Tolerances) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut rep = SuiteReport { suite, rows: Vec::new() };
    match suite {
        Suite::Roundtrip => {
            let (mut rec, mut im, mut liv, mut chr, mut conv) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
            for t in 0..p.trials {
                let n = *sizes(p.n, 2).start() + t % sizes(p.n, 2).count();
                let j = random_jacobi(&mut rng, n);
                let s = spectrum(&j, tol)?;
                let r = reconstruct_from_spectrum(&s, tol)?;
                rec = rec.max(entry_diff(&r, &j));
                im = im.max((j.b1().im - s.im_sum()).abs());
                let c = triangular_to_jacobi(&model_from_spectrum(&s)?, tol)?;
                liv = liv.max(entry_diff(&c.jacobi, &r));
                let chk = check_conversion(&model_from_spectrum(&s)?, &c);
                conv = conv.max(chk.intertwine / chk.scale).max(chk.unitary);
                let w = reconstruct_from_charfunction(&CharFunction::new(s)?, tol)?;
                chr = chr.max(entry_diff(&w, &r));
            }
            rep.push("reconstruct(spectrum(J)) = J", rec, tol.roundtrip);
            rep.push("Im b1 = sum Im z", im, 1e-9);
            rep.push("livsic conversion = peel", liv, tol.roundtrip);
            rep.push("U unitary and UJ = AU", conv, tol.conv);
            rep.push("characteristic-function route = peel", chr, tol.roundtrip);
        }
        Suite::Green => {
            let mut worst: f64 = 0.0;
            for t in 0..p.trials {
                let n = *sizes(p.n, 3).start() + t % sizes(p.n, 3).count();
                let j = random_jacobi(&mut rng, n);
                for e in spectrum(&j, tol)?.entries {
                    worst = worst.max(green_residual(&j, e.z, e.mult, tol)?);
                }
            }
            rep.push("1/m_-(z, k+1) = a_k^2 m_+(z, k) at eigenvalues", worst, tol.roundtrip);
        }
        Suite::Symmetric => {
            let mut worst: f64 = 0.0;
            for t in 0..p.trials {
                let n = *sizes(p.n, 1).start() + t % sizes(p.n, 1).count();
                let s = random_symmetric_spectrum(&mut rng, n);
                let j = reconstruct_from_spectrum(&s, tol)?;
                let d = (2..=n).map(|k| j.b(k).norm()).fold(j.b1().re.abs(), f64::max);
                worst = worst.max(d);
            }
            rep.push("symmetric spectrum gives zero real diagonal", worst, 1e-7);
        }
        Suite::Volterra => volterra_suite(&mut rep, p, tol)?,
        Suite::Chebyshev => chebyshev_suite(&mut rep, p, tol)?,
    }
    Ok(rep)
}

fn volterra_suite(rep: &mut SuiteReport, p: SuiteParams, tol: &Tolerances) -> Result<()> {
    let n = p.n.max(2);
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let (mut ent, mut mom, mut tan, mut tr) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..p.trials.max(1) {
        let l = rng.random_range(0.2..3.0);
        let j = semiinf::volterra_jacobi(VolterraParams::new(l, n)?);
        for k in 1..n {
            ent = ent.max((j.a(k) - l / (((2 * k - 1) * (2 * k + 1)) as f64).sqrt()).abs());
        }
        let order = 2 * n - 2;
        let g = semiinf::moments(&j, order)?;
        let t = semiinf::tan_moments(l, order);
        let scale = t.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        mom = mom.max(g.gammas.iter().zip(&t).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max) / scale);
        let tp = C64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        if let Ok(zs) = semiinf::perturbed_volterra_eigs(tp, l, -20..=20) {
            tan = zs.iter().map(|z| semiinf::tan_residual(*z, l, tp)).fold(tan, f64::max);
            tr = tr.max(semiinf::truncated_trace_residual(PerturbedVolterra { t: tp, l, n }, tol)?.abs());
        }
    }
    rep.push("a_k = l / sqrt((2k-1)(2k+1))", ent, 0.0);
    rep.push("moments = tan series", mom, tol.mom);
    rep.push("tan(l/z_k) = l/t", tan, tol.eig);
    rep.push("sum Im eig(J_t) = Im t", tr, 1e-9);
    let top = semiinf::top_eigenvalues(&semiinf::volterra_real_part(VolterraParams::new(1.0, n)?), 1)?;
    rep.push("top eigenvalue of H -> 2/pi", (top[0] - semiinf::volterra_real_eig(1.0, 0)).abs(), 1e-3);
    Ok(())
}

fn chebyshev_suite(rep: &mut SuiteReport, p: SuiteParams, tol: &Tolerances) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let (mut std_res, mut mod_res, mut absent) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..p.trials.max(1) {
        let l = rng.random_range(0.51..4.0);
        let z = semiinf::chebyshev_eig(ChebyshevVariant::Standard, l, tol).ok_or(Error::NoConvergence(0))?;
        std_res = std_res.max(semiinf::chebyshev_residual(ChebyshevVariant::Standard, l, z));
        let l = rng.random_range(1.01..4.0);
        let z = semiinf::chebyshev_eig(ChebyshevVariant::Modified, l, tol).ok_or(Error::NoConvergence(0))?;
        mod_res = mod_res.max(semiinf::chebyshev_residual(ChebyshevVariant::Modified, l, z));
        let l = rng.random_range(0.01..0.5);
        if semiinf::chebyshev_eig(ChebyshevVariant::Standard, l, tol).is_some() {
            absent = 1.0;
        }
        if semiinf::chebyshev_eig(ChebyshevVariant::Modified, 2.0 * l, tol).is_some() {
            absent = 1.0;
        }
    }
    rep.push("standard eigenvalue equation", std_res, tol.eig);
    rep.push("modified eigenvalue equation", mod_res, tol.eig);
    rep.push("no eigenvalue below threshold", absent, 0.0);
    let n = p.n.max(2);
    let j = semiinf::chebyshev_matrix(ChebyshevVariant::Standard, 1.0, n)?;
    let target = C64::new(0.0, 0.75);
    let z = semiinf::eigenvalue_near(&j, target, tol)?;
    rep.push("truncated J_1 eigenvalue -> 0.75i", (z - target).norm(), 1e-3);
    Ok(())
}
