//! Truncations of semi-infinite examples: the Volterra operator, its rank-one
//! perturbations and the Chebyshev-type matrices.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::jacobi::FiniteJacobi;
use crate::linalg::{det, eigenvalues, symmetric_tridiagonal_eigenvalues, CMatrix};

type C64 = Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolterraParams {
    pub l: f64,
    pub n: usize,
}

impl VolterraParams {
    pub fn new(l: f64, n: usize) -> Result<Self> {
        if !(l > 0.0 && l.is_finite()) || n < 2 {
            return Err(Error::InvalidMatrix(format!("need l > 0 and N >= 2, got l = {l}, N = {n}")));
        }
        Ok(Self { l, n })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerturbedVolterra {
    pub t: C64,
    pub l: f64,
    pub n: usize,
}

fn volterra_a(l: f64, n: usize) -> Vec<f64> {
    (1..n).map(|k| l / (((2 * k - 1) * (2 * k + 1)) as f64).sqrt()).collect()
}

/// `b_1 = il`, `b_k = 0`, `a_k = l / sqrt((2k-1)(2k+1))`.
pub fn volterra_jacobi(p: VolterraParams) -> FiniteJacobi {
    FiniteJacobi::new(C64::new(0.0, p.l), vec![0.0; p.n - 1], volterra_a(p.l, p.n)).expect("valid by construction")
}

/// The real part `H` of the truncated Volterra matrix.
pub fn volterra_real_part(p: VolterraParams) -> FiniteJacobi {
    volterra_jacobi(p).real_part()
}

/// `2l / ((2k+1) pi)`.
pub fn volterra_real_eig(l: f64, k: i64) -> f64 {
    2.0 * l / ((2 * k + 1) as f64 * std::f64::consts::PI)
}

/// The `k_max` largest eigenvalues of the real part, `k = 0, 1, ...`.
pub fn volterra_real_eigs(p: VolterraParams, k_max: usize) -> Vec<f64> {
    (0..k_max as i64).map(|k| volterra_real_eig(p.l, k)).collect()
}

/// The `count` largest eigenvalues of a self-adjoint truncation, descending.
pub fn top_eigenvalues(h: &FiniteJacobi, count: usize) -> Result<Vec<f64>> {
    let diag: Vec<f64> = (1..=h.n()).map(|k| h.b(k).re).collect();
    let mut ev = symmetric_tridiagonal_eigenvalues(&diag, h.a_all())?;
    ev.sort_by(|x, y| y.total_cmp(x));
    ev.truncate(count);
    Ok(ev)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentSequence {
    pub gammas: Vec<f64>,
}

/// `gamma_k = (H^k d_1, d_1)` for `k = 0..=order`, `H` the real part of `j`.
/// Only `order <= 2N - 2` agrees with the untruncated matrix.
pub fn moments(j: &FiniteJacobi, order: usize) -> Result<MomentSequence> {
    let n = j.n();
    if order > 2 * n - 2 {
        return Err(Error::TruncationTooSmall { size: n, order });
    }
    let h = j.real_part();
    let mut v = vec![0.0; n];
    v[0] = 1.0;
    let mut gammas = vec![1.0];
    // gamma_{2m} = |H^m d_1|^2 and gamma_{2m+1} = (H H^m d_1, H^m d_1)
    let apply = |v: &[f64]| -> Vec<f64> {
        (0..n)
            .map(|i| {
                let k = i + 1;
                let mut s = h.b(k).re * v[i];
                if i > 0 {
                    s += h.a(k - 1) * v[i - 1];
                }
                if i + 1 < n {
                    s += h.a(k) * v[i + 1];
                }
                s
            })
            .collect()
    };
    while gammas.len() <= order {
        let w = apply(&v);
        if gammas.len() % 2 == 1 {
            gammas.push(w.iter().zip(&v).map(|(x, y)| x * y).sum());
        } else {
            v = w;
            gammas.push(v.iter().map(|x| x * x).sum());
        }
    }
    Ok(MomentSequence { gammas })
}

/// Even Bernoulli numbers `B_0, B_2, ..., B_{2m}` by the Akiyama-Tanigawa
/// algorithm.
pub fn bernoulli_even(m: usize) -> Vec<BigRational> {
    let top = 2 * m;
    let mut row: Vec<BigRational> = Vec::with_capacity(top + 1);
    let mut out = Vec::with_capacity(m + 1);
    for k in 0..=top {
        row.push(BigRational::new(BigInt::one(), BigInt::from(k + 1)));
        for j in (1..=k).rev() {
            let d = &row[j - 1] - &row[j];
            row[j - 1] = d * BigRational::from_integer(BigInt::from(j));
        }
        if k % 2 == 0 {
            out.push(row[0].clone());
        }
    }
    out
}

/// Coefficients `T_k` of `tan x = sum_k T_k x^(2k-1)`, for `k = 1..=m`.
pub fn tan_coefficients(m: usize) -> Vec<BigRational> {
    let b = bernoulli_even(m);
    let mut fact = BigInt::one();
    let mut out = Vec::with_capacity(m);
    for k in 1..=m {
        fact *= BigInt::from((2 * k - 1) * (2 * k));
        let p = BigInt::one() << (2 * k);
        let num = &p * (&p - BigInt::one());
        let t = BigRational::new(num, fact.clone()) * &b[k];
        out.push(if k % 2 == 1 { t } else { -t });
    }
    out
}

/// Moments of the Volterra real part from `-(1/l) tan(l/z) = -sum gamma_k / z^(k+1)`:
/// `gamma_{2k} = T_{k+1} l^{2k}`, odd moments zero.
pub fn tan_moments(l: f64, order: usize) -> Vec<f64> {
    let t = tan_coefficients(order / 2 + 1);
    (0..=order)
        .map(|k| if k % 2 == 1 { 0.0 } else { t[k / 2].to_f64().unwrap_or(f64::NAN) * l.powi(k as i32) })
        .collect()
}

fn hankel_det(g: &[f64], k: usize, skip: Option<usize>) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let cols: Vec<usize> = match skip {
        None => (0..k).collect(),
        Some(s) => (0..=k).filter(|&c| c != s).collect(),
    };
    let m = CMatrix::from_fn(k, k, |i, j| C64::new(g[i + cols[j]], 0.0));
    det(&m).re
}

/// `a_k = sqrt(h_{k-1} h_{k+1} / h_k^2)` and `b_1 + ... + b_k = h~_k / h_k`
/// from Hankel determinants of the moments.
pub fn hankel_entries(ms: &MomentSequence, k: usize) -> Result<(f64, f64)> {
    let g = &ms.gammas;
    if k == 0 || g.len() < 2 * k + 1 {
        return Err(Error::TruncationTooSmall { size: g.len(), order: 2 * k });
    }
    let h: Vec<f64> = (0..=k + 1).map(|i| hankel_det(g, i, None)).collect();
    for (i, hi) in h.iter().enumerate() {
        if !(*hi > 0.0) {
            return Err(Error::SingularHankel(i));
        }
    }
    let a = (h[k - 1] * h[k + 1] / (h[k] * h[k])).sqrt();
    let bsum = hankel_det(g, k, Some(k - 1)) / h[k];
    Ok((a, bsum))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChebyshevVariant {
    Standard,
    Modified,
}

/// Truncation of `J_l` (all `a = 1/2`) or of its modified form with
/// `a_1 = 1/sqrt 2`.
pub fn chebyshev_matrix(v: ChebyshevVariant, l: f64, n: usize) -> Result<FiniteJacobi> {
    let mut a = vec![0.5; n.saturating_sub(1)];
    if v == ChebyshevVariant::Modified && n > 1 {
        a[0] = std::f64::consts::FRAC_1_SQRT_2;
    }
    FiniteJacobi::new(C64::new(0.0, l), vec![0.0; n.saturating_sub(1)], a)
}

/// `sqrt(z^2 - 1)` on the branch that behaves like `z` at infinity.
pub fn herglotz_sqrt(z: C64) -> C64 {
    (z - 1.0).sqrt() * (z + 1.0).sqrt()
}

/// Residual of the eigenvalue equation: `sqrt(z^2-1) - z = i/(2l)` for the
/// standard matrix, `sqrt(z^2-1) = il` for the modified one.
pub fn chebyshev_residual(v: ChebyshevVariant, l: f64, z: C64) -> f64 {
    let s = herglotz_sqrt(z);
    match v {
        ChebyshevVariant::Standard => (s - z - C64::new(0.0, 0.5 / l)).norm(),
        ChebyshevVariant::Modified => (s - C64::new(0.0, l)).norm(),
    }
}

/// The non-real eigenvalue of the semi-infinite matrix, if any:
/// `i(4l^2-1)/(4l)` for `l > 1/2` and `i sqrt(l^2-1)` for `l > 1`.
pub fn chebyshev_eig(v: ChebyshevVariant, l: f64, tol: &Tolerances) -> Option<C64> {
    let z = match v {
        ChebyshevVariant::Standard if l > 0.5 => C64::new(0.0, (4.0 * l * l - 1.0) / (4.0 * l)),
        ChebyshevVariant::Modified if l > 1.0 => C64::new(0.0, (l * l - 1.0).sqrt()),
        _ => return None,
    };
    let r = chebyshev_residual(v, l, z);
    if r > tol.eig * z.norm().max(1.0) {
        log::warn!("eigenvalue {z} misses its equation by {r:.3e}");
    }
    Some(z)
}

/// `det(J - z) / det(J_[2,N] - z)` and its derivative by the backward
/// continued fraction.
fn top_fraction(j: &FiniteJacobi, z: C64) -> (C64, C64) {
    let n = j.n();
    let mut g = j.b(n) - z;
    let mut dg = -C64::one();
    for k in (1..n).rev() {
        let a2 = j.a(k) * j.a(k);
        let q = a2 / g;
        dg = -C64::one() + q * dg / g;
        g = j.b(k) - z - q;
    }
    (g, dg)
}

/// Newton iteration for the eigenvalue of a truncation near `z0`.
pub fn eigenvalue_near(j: &FiniteJacobi, z0: C64, tol: &Tolerances) -> Result<C64> {
    let mut z = z0;
    for _ in 0..tol.max_iter {
        let (g, dg) = top_fraction(j, z);
        if !(g.norm().is_finite() && dg.norm() > 0.0) {
            break;
        }
        let step = g / dg;
        z -= step;
        if step.norm() <= 4.0 * f64::EPSILON * z.norm().max(1.0) {
            return Ok(z);
        }
    }
    Err(Error::NoConvergence(tol.max_iter))
}

fn check_t(t: C64, l: f64) -> Result<()> {
    let il = C64::new(0.0, l);
    if (t - il).norm() <= f64::EPSILON * l || (t + il).norm() <= f64::EPSILON * l {
        return Err(Error::ExcludedParameter(t));
    }
    Ok(())
}

/// `z_k = 2l / (arg q + 2 pi k - i ln|q|)`, `q = (t + il)/(t - il)`, for
/// each `k` in `ks`. Roots of `tan(l/z) = l/t`.
pub fn perturbed_volterra_eigs(t: C64, l: f64, ks: std::ops::RangeInclusive<i64>) -> Result<Vec<C64>> {
    check_t(t, l)?;
    let il = C64::new(0.0, l);
    let q = (t + il) / (t - il);
    let (x, y) = (q.norm().ln(), q.arg());
    Ok(ks
        .filter_map(|k| {
            let d = C64::new(y + 2.0 * std::f64::consts::PI * k as f64, -x);
            (d.norm() > 0.0).then(|| 2.0 * l / d)
        })
        .collect())
}

/// `|tan(l/z) - l/t|`, relative to `|l/t|`.
pub fn tan_residual(z: C64, l: f64, t: C64) -> f64 {
    let rhs = l / t;
    ((l / z).tan() - rhs).norm() / rhs.norm().max(1.0)
}

/// The truncated `J_t` as a dense matrix; `Im t` may have either sign.
pub fn perturbed_volterra_matrix(pv: PerturbedVolterra) -> Result<CMatrix> {
    check_t(pv.t, pv.l)?;
    let a = volterra_a(pv.l, pv.n);
    Ok(CMatrix::from_fn(pv.n, pv.n, |i, j| {
        if i == 0 && j == 0 {
            pv.t
        } else if i + 1 == j {
            C64::new(a[i], 0.0)
        } else if j + 1 == i {
            C64::new(a[j], 0.0)
        } else {
            C64::zero()
        }
    }))
}

/// `sum Im z - Im t` over the eigenvalues of the truncated `J_t`.
pub fn truncated_trace_residual(pv: PerturbedVolterra, tol: &Tolerances) -> Result<f64> {
    let m = perturbed_volterra_matrix(pv)?;
    let ev = eigenvalues(&m, tol.max_iter)?;
    Ok(ev.iter().map(|z| z.im).sum::<f64>() - pv.t.im)
}
