//! Weyl, characteristic and m-functions, their fractional-linear relations
//! and the continued-fraction peel.

use num_complex::Complex64;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::jacobi::{FiniteJacobi, Spectrum};
use crate::poly::{quotient_derivatives, raw_roots, ComplexPoly, Rational};

type C64 = Complex64;

/// `((J - z)^{-1} delta_1, delta_1)`.
pub fn weyl_m(j: &FiniteJacobi, z: C64, tol: &Tolerances) -> Result<C64> {
    j.weyl(z, tol)
}

/// Blaschke product `W(z) = prod ((z - conj z_k) / (z - z_k))^mult`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharFunction {
    pub spectrum: Spectrum,
    /// `sum mult * Im z_k`.
    pub c: f64,
}

impl CharFunction {
    pub fn new(spectrum: Spectrum) -> Result<Self> {
        spectrum.require_upper()?;
        if spectrum.is_empty() {
            return Err(Error::InconsistentData("empty spectrum".into()));
        }
        let c = spectrum.im_sum();
        Ok(Self { spectrum, c })
    }

    pub fn eval(&self, z: C64, tol: &Tolerances) -> Result<C64> {
        char_w(&self.spectrum, z, tol)
    }

    /// Numerator and denominator of `W`: `prod (z - conj z_k)` and `prod (z - z_k)`.
    pub fn polys(&self) -> (ComplexPoly, ComplexPoly) {
        let zs = self.spectrum.expanded();
        let conj: Vec<C64> = zs.iter().map(|z| z.conj()).collect();
        (ComplexPoly::from_roots(&conj), ComplexPoly::from_roots(&zs))
    }
}

/// Evaluates the Blaschke product of a spectrum.
pub fn char_w(s: &Spectrum, z: C64, tol: &Tolerances) -> Result<C64> {
    let mut w = C64::one();
    for e in &s.entries {
        let d = z - e.z;
        if d.norm() <= tol.pole * e.z.norm().max(1.0) {
            return Err(Error::OnSpectrum(z));
        }
        w *= ((z - e.z.conj()) / d).powu(e.mult as u32);
    }
    Ok(w)
}

/// Cayley-type transform `V = i (W - 1) / (W + 1)`.
pub fn cayley_v(w: C64, tol: &Tolerances) -> Result<C64> {
    let d = w + 1.0;
    if d.norm() <= tol.pole * w.norm().max(1.0) {
        return Err(Error::PoleAt(d));
    }
    Ok(C64::i() * (w - 1.0) / d)
}

/// `m_J = (i / 2c) (W - 1)`.
pub fn m_j_from_w(w: C64, c: f64) -> C64 {
    C64::new(0.0, 1.0 / (2.0 * c)) * (w - 1.0)
}

/// Weyl function of the real part: `m_{J_R} = (i / c) (W - 1) / (W + 1)`.
pub fn m_real_from_w(w: C64, c: f64, tol: &Tolerances) -> Result<C64> {
    Ok(cayley_v(w, tol)? / c)
}

/// `m_J = i m_R / (i - c m_R)`.
pub fn m_j_from_m_real(m_r: C64, c: f64) -> C64 {
    C64::i() * m_r / (C64::i() - c * m_r)
}

/// `m_R = i m_J / (i + c m_J)`.
pub fn m_real_from_m_j(m_j: C64, c: f64) -> C64 {
    C64::i() * m_j / (C64::i() + c * m_j)
}

/// Continued-fraction data `b1; a1^2, b2; a2^2, b3; ...`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JFraction {
    pub b1: C64,
    /// Pairs `(a_k^2, b_{k+1})`.
    pub chain: Vec<(f64, f64)>,
}

impl JFraction {
    pub fn n(&self) -> usize {
        self.chain.len() + 1
    }

    pub fn from_jacobi(j: &FiniteJacobi) -> Self {
        Self {
            b1: j.b1(),
            chain: j.a_all().iter().zip(j.b_rest()).map(|(a, b)| (a * a, *b)).collect(),
        }
    }

    pub fn to_jacobi(&self) -> Result<FiniteJacobi> {
        if let Some(&(a2, _)) = self.chain.iter().find(|(a2, _)| !(*a2 > 0.0)) {
            return Err(Error::NotHerglotzLike { step: 0, value: a2 });
        }
        FiniteJacobi::any(
            self.b1,
            self.chain.iter().map(|p| p.1).collect(),
            self.chain.iter().map(|p| p.0.sqrt()).collect(),
        )
    }
}

/// All m-functions of a matrix as exact rational functions.
///
/// `m_+(., k)` is the Weyl function of `J_[k+1, n]` for `k = 0..n-1`;
/// `m_-(., k)` is the Weyl function of `J_[1, k-1]` at its last basis
/// vector for `k = 2..n+1`.
#[derive(Clone, Debug)]
pub struct MFunctionChain {
    pub jacobi: FiniteJacobi,
    plus: Vec<Rational>,
    minus: Vec<Rational>,
}

impl MFunctionChain {
    pub fn m_plus(&self, k: usize) -> &Rational {
        &self.plus[k]
    }

    pub fn m_minus(&self, k: usize) -> &Rational {
        &self.minus[k - 2]
    }

    /// `1 / m_-(., k)` as a rational function.
    pub fn inv_m_minus(&self, k: usize) -> Rational {
        let m = &self.minus[k - 2];
        Rational::new(m.den.clone(), m.num.clone()).expect("m_- has a nonzero numerator")
    }

    /// Largest residual of `a_k^2 m_+(z,k) + 1/m_+(z,k-1) = b_k - z`,
    /// `k = 1..n-1`, at `z`, relative to `max(1, |z|, |J|)`.
    pub fn connect_residual(&self, z: C64) -> f64 {
        let j = &self.jacobi;
        let scale = z.norm().max(j.norm()).max(1.0);
        (1..j.n())
            .map(|k| {
                let a2 = j.a(k) * j.a(k);
                let lhs = self.plus[k].eval(z) * a2 + C64::one() / self.plus[k - 1].eval(z);
                (lhs - (j.b(k) - z)).norm() / scale
            })
            .fold(0.0, f64::max)
    }
}

/// Builds every `m_+` and `m_-` from ratios of principal-minor determinants.
pub fn mchain(j: &FiniteJacobi) -> MFunctionChain {
    let n = j.n();
    let plus = (0..n)
        .map(|k| {
            Rational::new(j.minor_charpoly(k + 2, n).scale(-C64::one()), j.minor_charpoly(k + 1, n))
                .expect("monic minors")
        })
        .collect();
    let minus = (2..=n + 1)
        .map(|k| {
            Rational::new(j.minor_charpoly(1, k - 2).scale(-C64::one()), j.minor_charpoly(1, k - 1))
                .expect("monic minors")
        })
        .collect();
    MFunctionChain { jacobi: j.clone(), plus, minus }
}

/// Largest relative difference between the derivatives of order `0..l` of
/// `1/m_-(., k+1)` and of `a_k^2 m_+(., k)` at the eigenvalue `z0` of
/// multiplicity `l`, over `k = 1..n-1`.
pub fn green_residual(j: &FiniteJacobi, z0: C64, l: usize, tol: &Tolerances) -> Result<f64> {
    let n = j.n();
    let mut worst: f64 = 0.0;
    for k in 1..n {
        let (head, head_prev, hs) = j.minor_taylor(1, k, z0, l - 1);
        let neg: Vec<C64> = head.iter().map(|c| -c).collect();
        let lhs = quotient_derivatives(&neg, &head_prev, hs, z0, l - 1, tol)?;
        let (tail, tail_next, ts) = j.tail_minor_taylor(k + 1, z0, l - 1);
        let a2 = j.a(k) * j.a(k);
        let neg: Vec<C64> = tail_next.iter().map(|c| -c * a2).collect();
        let rhs = quotient_derivatives(&neg, &tail, ts, z0, l - 1, tol)?;
        let scale = lhs.iter().chain(&rhs).map(|v| v.norm()).fold(1.0, f64::max);
        let r = lhs.iter().zip(&rhs).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        worst = worst.max(r / scale);
    }
    Ok(worst)
}

/// Weyl function of `J` as an exact rational function.
pub fn weyl_rational(j: &FiniteJacobi) -> Rational {
    Rational::new(j.minor_charpoly(2, j.n()).scale(-C64::one()), j.minor_charpoly(1, j.n()))
        .expect("monic minors")
}

/// Peels `m = -1/(z - b_1 + a_1^2 m_1(z))` step by step by polynomial
/// division, with complex diagonal entries allowed.
///
/// Returns `(b_k, a_k^2)` sequences; `a2.len() == b.len() - 1`.
pub fn peel_complex(m: &Rational, n: usize, tol: &Tolerances) -> Result<(Vec<C64>, Vec<f64>)> {
    if m.den.degree() != n || m.num.degree() + 1 != n {
        return Err(Error::DegreeMismatch { expected: n, found: m.den.degree() });
    }
    let lim = m.z_limit();
    if (lim + 1.0).norm() > tol.asym {
        return Err(Error::InconsistentData(format!("lim z m(z) = {lim}, expected -1")));
    }
    // den monic of degree k, num of degree k-1 with leading coefficient -1
    let mut num = m.num.scale(C64::new(-1.0, 0.0) / m.num.lead());
    let mut den = m.den.clone();
    let mut bs = Vec::with_capacity(n);
    let mut a2s = Vec::with_capacity(n.saturating_sub(1));
    for step in 1..=n {
        if den.degree() == 1 {
            bs.push(-den.coeff(0));
            break;
        }
        let (q, r) = den.div_rem(&num);
        // q = b - z
        bs.push(q.coeff(0));
        let r = r.trimmed(0.0);
        let a2c = -r.lead();
        let scale = den.max_abs().max(1.0);
        let deg_ok = r.degree() + 2 == den.degree();
        if !deg_ok || a2c.norm() <= tol.a2_min * scale {
            return Err(Error::NotHerglotzLike { step, value: a2c.re });
        }
        if a2c.im.abs() > tol.peel.sqrt() * a2c.norm() || a2c.re <= 0.0 {
            return Err(Error::NotHerglotzLike { step, value: a2c.re });
        }
        let a2 = a2c.re;
        a2s.push(a2);
        let next_num = r.scale(C64::new(1.0 / a2, 0.0));
        den = num.scale(-C64::one());
        num = next_num;
    }
    if bs.len() != n {
        return Err(Error::DegreeMismatch { expected: n, found: bs.len() });
    }
    Ok((bs, a2s))
}

/// Affine shift and scale that centre the poles of `m` near the unit disc.
fn peel_frame(m: &Rational) -> (f64, f64) {
    let n = m.den.degree();
    if n == 0 {
        return (0.0, 1.0);
    }
    let mu = -m.den.coeff(n - 1).re / n as f64;
    let shifted = m.den.substitute_affine(C64::new(mu, 0.0), 1.0);
    // Fujiwara-type bound on the root magnitudes of the shifted polynomial
    let sigma = (0..n)
        .map(|k| shifted.coeff(k).norm().powf(1.0 / (n - k) as f64))
        .fold(0.0, f64::max);
    let sigma = if sigma > 0.0 && sigma.is_finite() { sigma } else { 1.0 };
    (mu, sigma)
}

/// Peel in the variable `w = (z - mu) / sigma`, mapping the entries back.
pub fn peel_scaled(m: &Rational, n: usize, tol: &Tolerances) -> Result<(Vec<C64>, Vec<f64>)> {
    let (mu, sigma) = peel_frame(m);
    // sigma * m(mu + sigma w) is the Weyl function of (J - mu) / sigma
    let num = m.num.substitute_affine(C64::new(mu, 0.0), sigma).scale(C64::new(sigma, 0.0));
    let den = m.den.substitute_affine(C64::new(mu, 0.0), sigma);
    let scaled = Rational::new(num, den)?;
    let (b, a2) = peel_complex(&scaled, n, tol)?;
    Ok((
        b.into_iter().map(|x| x * sigma + mu).collect(),
        a2.into_iter().map(|x| x * sigma * sigma).collect(),
    ))
}

/// Continued-fraction expansion of a rational Weyl function of an `n x n`
/// matrix.
///
/// `b_1` may be complex; `b_2, ..., b_n` must come out real within
/// `tol.peel`. The result is checked by rebuilding the matrix and comparing
/// its Weyl function with `m` at `2n` sample points.
pub fn jfraction_peel(m: &Rational, n: usize, tol: &Tolerances) -> Result<JFraction> {
    if let Some(jf) = real_part_peel(m, n, tol) {
        if rebuild_error(m, &jf, n, tol)? <= tol.peel.sqrt() {
            return Ok(jf);
        }
    }
    let (b, a2) = peel_scaled(m, n, tol)?;
    let scale = b.iter().map(|x| x.norm()).chain(a2.iter().map(|x| x.sqrt())).fold(1.0, f64::max);
    for (k, bk) in b.iter().enumerate().skip(1) {
        if bk.im.abs() > tol.peel * scale {
            return Err(Error::InconsistentData(format!("b_{} has imaginary part {:.3e}", k + 1, bk.im)));
        }
    }
    let jf = JFraction { b1: b[0], chain: a2.iter().zip(&b[1..]).map(|(a, bb)| (*a, bb.re)).collect() };
    let worst = rebuild_error(m, &jf, n, tol)?;
    if worst > tol.peel.sqrt() {
        return Err(Error::InconsistentData(format!("peeled chain reproduces m only to {worst:.3e}")));
    }
    Ok(jf)
}

/// Relative mismatch between `m` and the Weyl function of `jf` on a circle
/// in the lower half-plane, away from the spectrum.
fn rebuild_error(m: &Rational, jf: &JFraction, n: usize, tol: &Tolerances) -> Result<f64> {
    let j = jf.to_jacobi()?;
    let scale = std::iter::once(jf.b1.norm())
        .chain(jf.chain.iter().flat_map(|&(a2, b)| [a2.sqrt(), b.abs()]))
        .fold(1.0, f64::max);
    let mut worst: f64 = 0.0;
    for s in 0..2 * n {
        let ang = std::f64::consts::PI * (s as f64 + 0.5) / (2 * n) as f64;
        let z = C64::from_polar(2.0 * scale + 1.0, -ang);
        let want = m.eval(z);
        let got = j.weyl(z, tol)?;
        worst = worst.max((want - got).norm() / want.norm().max(1e-300));
    }
    Ok(worst)
}

/// Peel through the real part: with `c = Im b_1` read off the `1/z^2` term,
/// `m_R = N / (D - i c N)` has real simple poles and positive residues, and
/// Lanczos on its spectral measure is backward stable where division is not.
fn real_part_peel(m: &Rational, n: usize, tol: &Tolerances) -> Option<JFraction> {
    if n < 2 || m.den.degree() != n {
        return None;
    }
    let d = m.den.coeff(n - 1);
    let b1 = -(m.num.coeff(n - 2) - m.num.coeff(n - 1) * d);
    let c = b1.im;
    let den = m.den.sub(&m.num.scale(C64::new(0.0, c)));
    let r = Rational::new(m.num.clone(), den).ok()?.to_real(tol.peel.sqrt()).ok()?;
    let (w, b, a) = lanczos_peel(&r, n, tol)?;
    if (w - 1.0).abs() > tol.peel.sqrt() {
        return None;
    }
    Some(JFraction {
        b1: C64::new(b[0], c),
        chain: a.iter().zip(&b[1..]).map(|(a, b)| (a * a, *b)).collect(),
    })
}

/// `Phi(z) = sum w_i / (x_i - z)` with real simple poles and positive
/// weights is the scaled Weyl function of a real Jacobi block; Lanczos on
/// `diag(x)` started from `sqrt(w)` rebuilds it. `None` when `Phi` is not of
/// that shape.
pub fn lanczos_peel(phi: &Rational, r: usize, tol: &Tolerances) -> Option<(f64, Vec<f64>, Vec<f64>)> {
    let raw = raw_roots(&phi.den, tol.max_iter).ok()?;
    let span = raw.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if raw.iter().any(|z| z.im.abs() > tol.peel.sqrt() * span) {
        return None;
    }
    let mut x: Vec<f64> = raw.iter().map(|z| z.re).collect();
    x.sort_by(|p, q| p.total_cmp(q));
    if x.windows(2).any(|w| w[1] - w[0] <= tol.node * span) {
        return None;
    }
    let dden = phi.den.derivative();
    let mut w = Vec::with_capacity(r);
    for &xi in &x {
        let z = C64::new(xi, 0.0);
        let v = -(phi.num.eval(z) / dden.eval(z)).re;
        if !(v > 0.0) {
            return None;
        }
        w.push(v);
    }
    let a2: f64 = w.iter().sum();
    let mut q: Vec<Vec<f64>> = vec![w.iter().map(|v| (v / a2).sqrt()).collect()];
    let (mut b, mut a) = (Vec::with_capacity(r), Vec::with_capacity(r - 1));
    for k in 0..r {
        let qk = &q[k];
        let mut v: Vec<f64> = x.iter().zip(qk).map(|(xi, qi)| xi * qi).collect();
        b.push(v.iter().zip(qk).map(|(p, q)| p * q).sum());
        if k + 1 == r {
            break;
        }
        // full reorthogonalisation, twice
        for _ in 0..2 {
            for qj in &q {
                let c: f64 = v.iter().zip(qj).map(|(p, q)| p * q).sum();
                v.iter_mut().zip(qj).for_each(|(p, q)| *p -= c * q);
            }
        }
        let beta = v.iter().map(|p| p * p).sum::<f64>().sqrt();
        if !(beta > tol.a2_min * span) {
            return None;
        }
        a.push(beta);
        q.push(v.iter().map(|p| p / beta).collect());
    }
    Some((a2, b, a))
}

/// Whether `m(-z) = -m(z)`; for odd inputs the peeled diagonal must vanish.
pub fn odd_mfunction_check(m: &Rational, tol: &Tolerances) -> Result<bool> {
    let n = m.den.degree();
    let bad = |p: &ComplexPoly, parity: usize| -> f64 {
        let s = p.max_abs().max(f64::MIN_POSITIVE);
        p.coeffs()
            .iter()
            .enumerate()
            .filter(|(k, _)| k % 2 != parity % 2)
            .map(|(_, c)| c.norm() / s)
            .fold(0.0, f64::max)
    };
    let odd = bad(&m.den, n) <= tol.peel && bad(&m.num, n + 1) <= tol.peel;
    if odd {
        let jf = jfraction_peel(m, n, tol)?;
        let worst = std::iter::once(jf.b1.norm())
            .chain(jf.chain.iter().map(|p| p.1.abs()))
            .fold(0.0, f64::max);
        let scale = jf.chain.iter().map(|p| p.0.sqrt()).fold(1.0, f64::max);
        if worst > tol.peel * scale {
            return Err(Error::InconsistentData(format!("odd m-function peeled to b = {worst:.3e}")));
        }
    }
    Ok(odd)
}
