//! Finite tri-diagonal matrices with a complex corner entry, their
//! orthogonal polynomials, spectra and root chains.

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::poly::{self, ComplexPoly};

type C64 = Complex64;

/// Which family a matrix belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum JacobiClass {
    /// `Im b1 > 0`, every `a_k > 0`.
    Dissipative,
    /// `Im b1 > 0`, exactly one `a_p = 0`.
    Extended,
    /// `b1` real, every `a_k > 0`.
    SelfAdjoint,
}

/// Tri-diagonal matrix with diagonal `b1, b2, ..., bn` and symmetric
/// off-diagonal `a1, ..., a_{n-1}`; only `b1` may be non-real.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteJacobi {
    b1: C64,
    b: Vec<f64>,
    a: Vec<f64>,
    class: JacobiClass,
}

impl FiniteJacobi {
    /// Strict dissipative matrix: `Im b1 > 0`, all `a_k > 0`.
    pub fn new(b1: C64, b: Vec<f64>, a: Vec<f64>) -> Result<Self> {
        let j = Self::checked(b1, b, a)?;
        match j.class {
            JacobiClass::Dissipative => Ok(j),
            _ => Err(Error::InvalidMatrix("expected Im b1 > 0 and every a_k > 0".into())),
        }
    }

    /// Matrix of the extended class: `Im b1 > 0` and exactly one `a_p = 0`.
    pub fn extended(b1: C64, b: Vec<f64>, a: Vec<f64>) -> Result<Self> {
        let j = Self::checked(b1, b, a)?;
        match j.class {
            JacobiClass::Extended => Ok(j),
            _ => Err(Error::InvalidMatrix("expected Im b1 > 0 and exactly one a_p = 0".into())),
        }
    }

    /// Real symmetric Jacobi matrix, all `a_k > 0`.
    pub fn self_adjoint(b: Vec<f64>, a: Vec<f64>) -> Result<Self> {
        let Some((&b1, rest)) = b.split_first() else {
            return Err(Error::InvalidMatrix("matrix must have n >= 1".into()));
        };
        let j = Self::checked(C64::new(b1, 0.0), rest.to_vec(), a)?;
        match j.class {
            JacobiClass::SelfAdjoint => Ok(j),
            _ => Err(Error::InvalidMatrix("expected every a_k > 0".into())),
        }
    }

    /// Accepts any of the three classes.
    pub fn any(b1: C64, b: Vec<f64>, a: Vec<f64>) -> Result<Self> {
        Self::checked(b1, b, a)
    }

    fn checked(b1: C64, b: Vec<f64>, a: Vec<f64>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::InvalidMatrix(format!(
                "need n-1 = {} off-diagonal entries, got {}",
                b.len(),
                a.len()
            )));
        }
        if !(b1.re.is_finite() && b1.im.is_finite())
            || b.iter().chain(&a).any(|x| !x.is_finite())
        {
            return Err(Error::InvalidMatrix("entries must be finite".into()));
        }
        if a.iter().any(|&x| x < 0.0) {
            return Err(Error::InvalidMatrix("off-diagonal entries must be nonnegative".into()));
        }
        let zeros = a.iter().filter(|&&x| x == 0.0).count();
        let class = if b1.im > 0.0 {
            match zeros {
                0 => JacobiClass::Dissipative,
                1 => JacobiClass::Extended,
                _ => return Err(Error::InvalidMatrix("at most one a_p may vanish".into())),
            }
        } else if b1.im == 0.0 && zeros == 0 {
            JacobiClass::SelfAdjoint
        } else {
            return Err(Error::InvalidMatrix("Im b1 must be positive, or zero for a self-adjoint matrix".into()));
        };
        Ok(Self { b1, b, a, class })
    }

    pub fn n(&self) -> usize {
        self.b.len() + 1
    }

    pub fn class(&self) -> JacobiClass {
        self.class
    }

    pub fn b1(&self) -> C64 {
        self.b1
    }

    /// `b2..bn`.
    pub fn b_rest(&self) -> &[f64] {
        &self.b
    }

    /// `a1..a_{n-1}`.
    pub fn a_all(&self) -> &[f64] {
        &self.a
    }

    /// Diagonal entry `b_k`, 1-based.
    pub fn b(&self, k: usize) -> C64 {
        if k == 1 {
            self.b1
        } else {
            C64::new(self.b[k - 2], 0.0)
        }
    }

    /// Off-diagonal entry `a_k`, 1-based, with `a_0 = a_n = 1`.
    pub fn a(&self, k: usize) -> f64 {
        if k == 0 || k == self.n() {
            1.0
        } else {
            self.a[k - 1]
        }
    }

    /// Real part `H = (J + J*)/2`.
    pub fn real_part(&self) -> FiniteJacobi {
        Self { b1: C64::new(self.b1.re, 0.0), b: self.b.clone(), a: self.a.clone(), class: self.real_class() }
    }

    fn real_class(&self) -> JacobiClass {
        if self.a.iter().all(|&x| x > 0.0) {
            JacobiClass::SelfAdjoint
        } else {
            self.class
        }
    }

    /// Principal block `J_[lo, hi]`, 1-based inclusive; `None` when empty.
    pub fn block(&self, lo: usize, hi: usize) -> Option<FiniteJacobi> {
        if lo > hi || hi > self.n() || lo == 0 {
            return None;
        }
        let b1 = self.b(lo);
        let b: Vec<f64> = (lo + 1..=hi).map(|k| self.b[k - 2]).collect();
        let a: Vec<f64> = (lo..hi).map(|k| self.a[k - 1]).collect();
        let class = if b1.im > 0.0 {
            if a.iter().all(|&x| x > 0.0) { JacobiClass::Dissipative } else { JacobiClass::Extended }
        } else {
            JacobiClass::SelfAdjoint
        };
        Some(Self { b1, b, a, class })
    }

    /// Same matrix with the basis order reversed. Only meaningful for real
    /// matrices.
    pub fn flipped(&self) -> Result<FiniteJacobi> {
        let mut diag: Vec<f64> = (1..=self.n()).map(|k| self.b(k).re).collect();
        diag.reverse();
        let mut a = self.a.clone();
        a.reverse();
        if self.b1.im != 0.0 {
            return Err(Error::InvalidMatrix("only real matrices can be flipped".into()));
        }
        Self::self_adjoint(diag, a)
    }

    pub fn dense(&self) -> CMatrix {
        let n = self.n();
        CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                self.b(i + 1)
            } else if i + 1 == j || j + 1 == i {
                C64::new(self.a(i.min(j) + 1), 0.0)
            } else {
                C64::zero()
            }
        })
    }

    /// Row-sum norm, a cheap bound on the operator norm.
    pub fn norm(&self) -> f64 {
        (1..=self.n())
            .map(|k| self.b(k).norm() + if k > 1 { self.a(k - 1) } else { 0.0 } + if k < self.n() { self.a(k) } else { 0.0 })
            .fold(0.0, f64::max)
    }

    /// `(J - zI)^{-1}_{11}` by backward continued fraction.
    ///
    /// Works for every class, including a zero coupling.
    pub fn weyl(&self, z: C64, tol: &Tolerances) -> Result<C64> {
        let n = self.n();
        // d_k = det(J_[k,n] - z) / det(J_[k+1,n] - z); None encodes infinity
        let mut d: Option<C64> = Some(self.b(n) - z);
        for k in (1..n).rev() {
            let a2 = self.a(k) * self.a(k);
            let next = match d {
                None => self.b(k) - z,
                Some(v) if v == C64::zero() => {
                    if a2 == 0.0 {
                        self.b(k) - z
                    } else {
                        d = None;
                        continue;
                    }
                }
                Some(v) => self.b(k) - z - a2 / v,
            };
            d = Some(next);
        }
        let scale = self.norm().max(z.norm()).max(1.0);
        match d {
            None => Ok(C64::zero()),
            Some(v) if v.norm() <= tol.pole * scale => Err(Error::OnSpectrum(z)),
            Some(v) => Ok(C64::one() / v),
        }
    }

    /// Taylor coefficients at `z0`, up to `order`, of `det(zI - J_[lo, hi])`
    /// and of `det(zI - J_[lo, hi-1])`, by the three-term recursion, together
    /// with the magnitude scale of the last evaluation.
    pub fn minor_taylor(&self, lo: usize, hi: usize, z0: C64, order: usize) -> (Vec<C64>, Vec<C64>, f64) {
        let steps: Vec<(C64, f64)> = (lo..=hi)
            .map(|k| (self.b(k), if k == lo { 0.0 } else { self.a(k - 1) * self.a(k - 1) }))
            .collect();
        minor_recursion(&steps, z0, order)
    }

    /// As [`FiniteJacobi::minor_taylor`] for `det(zI - J_[lo, n])` and
    /// `det(zI - J_[lo+1, n])`, running the recursion upwards from `n`.
    pub fn tail_minor_taylor(&self, lo: usize, z0: C64, order: usize) -> (Vec<C64>, Vec<C64>, f64) {
        let n = self.n();
        let steps: Vec<(C64, f64)> = (lo..=n)
            .rev()
            .map(|k| (self.b(k), if k == n { 0.0 } else { self.a(k) * self.a(k) }))
            .collect();
        minor_recursion(&steps, z0, order)
    }

    /// `det(zI - J_[lo, hi])` as a monic polynomial; the empty block gives 1.
    pub fn minor_charpoly(&self, lo: usize, hi: usize) -> ComplexPoly {
        if lo > hi {
            return ComplexPoly::one();
        }
        let z = ComplexPoly::from_real(&[0.0, 1.0]);
        let mut prev = ComplexPoly::one();
        let mut cur = z.sub(&ComplexPoly::constant(self.b(lo)));
        for k in lo + 1..=hi {
            let a2 = self.a(k - 1) * self.a(k - 1);
            let next = z
                .sub(&ComplexPoly::constant(self.b(k)))
                .mul(&cur)
                .sub(&prev.scale(C64::new(a2, 0.0)));
            prev = cur;
            cur = next;
        }
        cur
    }
}

/// Values `P_1(z), ..., P_{n+1}(z)` of the orthogonal polynomials
/// `a_k P_{k+1} = (z - b_k) P_k - a_{k-1} P_{k-1}`, `P_0 = 0`, `P_1 = 1`,
/// with `a_0 = a_n = 1`.
pub fn orthopoly(j: &FiniteJacobi, z: C64) -> Vec<C64> {
    let n = j.n();
    let mut out = Vec::with_capacity(n + 1);
    let mut prev = C64::zero();
    let mut cur = C64::one();
    out.push(cur);
    for k in 1..=n {
        let next = ((z - j.b(k)) * cur - j.a(k - 1) * prev) / j.a(k);
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}

fn minor_recursion(steps: &[(C64, f64)], z0: C64, order: usize) -> (Vec<C64>, Vec<C64>, f64) {
    let m = order + 1;
    let mut one = vec![C64::zero(); m];
    one[0] = C64::one();
    if steps.is_empty() {
        return (one, vec![C64::zero(); m], 1.0);
    }
    let (mut prev, mut cur) = (vec![C64::zero(); m], one);
    let (mut sprev, mut scur) = (0.0, 1.0);
    for &(b, a2) in steps {
        let shift = z0 - b;
        let mut next = vec![C64::zero(); m];
        for p in 0..m {
            let mut v = shift * cur[p] - a2 * prev[p];
            if p > 0 {
                v += cur[p - 1];
            }
            next[p] = v;
        }
        let snext = shift.norm() * scur + a2 * sprev + scur;
        prev = cur;
        cur = next;
        sprev = scur;
        scur = snext;
    }
    (cur, prev, scur)
}

/// Polynomials `P_1, ..., P_{n+1}` as coefficient vectors.
pub fn orthopoly_coeffs(j: &FiniteJacobi) -> Vec<ComplexPoly> {
    let n = j.n();
    let z = ComplexPoly::from_real(&[0.0, 1.0]);
    let mut out = Vec::with_capacity(n + 1);
    let mut prev = ComplexPoly::zero();
    let mut cur = ComplexPoly::one();
    out.push(cur.clone());
    for k in 1..=n {
        let next = z
            .sub(&ComplexPoly::constant(j.b(k)))
            .mul(&cur)
            .sub(&prev.scale(C64::new(j.a(k - 1), 0.0)))
            .scale(C64::new(1.0 / j.a(k), 0.0));
        prev = cur;
        cur = next;
        out.push(cur.clone());
    }
    out
}

/// Monic `det(zI - J)`, built by the three-term recursion on coefficients.
pub fn charpoly(j: &FiniteJacobi) -> ComplexPoly {
    j.minor_charpoly(1, j.n())
}

/// One eigenvalue with its algebraic multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Eig {
    pub z: C64,
    pub mult: usize,
}

/// Multiset of eigenvalues.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Spectrum {
    pub entries: Vec<Eig>,
}

impl Spectrum {
    /// Builds a spectrum, merging entries closer than `10 * cluster`
    /// (relative to `max(1, |z|)`) into one entry of higher multiplicity.
    pub fn new(entries: Vec<Eig>, tol: &Tolerances) -> Result<Self> {
        let mut out: Vec<Eig> = Vec::new();
        for e in entries {
            if e.mult == 0 {
                return Err(Error::InconsistentData("multiplicities must be positive".into()));
            }
            if !(e.z.re.is_finite() && e.z.im.is_finite()) {
                return Err(Error::InconsistentData("eigenvalues must be finite".into()));
            }
            let near = out
                .iter_mut()
                .find(|o| (o.z - e.z).norm() <= 10.0 * tol.cluster * o.z.norm().max(e.z.norm()).max(1.0));
            match near {
                Some(o) => {
                    log::warn!("merging close eigenvalues {} and {}", o.z, e.z);
                    let m = o.mult + e.mult;
                    o.z = (o.z * o.mult as f64 + e.z * e.mult as f64) / m as f64;
                    o.mult = m;
                }
                None => out.push(e),
            }
        }
        Ok(Self { entries: out })
    }

    /// Spectrum from eigenvalues listed with repetition.
    pub fn from_list(zs: &[C64], tol: &Tolerances) -> Result<Self> {
        Self::new(zs.iter().map(|&z| Eig { z, mult: 1 }).collect(), tol)
    }

    /// Total multiplicity.
    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.mult).sum()
    }

    /// `sum mult * Im z`.
    pub fn im_sum(&self) -> f64 {
        self.entries.iter().map(|e| e.mult as f64 * e.z.im).sum()
    }

    /// Eigenvalues repeated by multiplicity, in entry order.
    pub fn expanded(&self) -> Vec<C64> {
        self.entries.iter().flat_map(|e| std::iter::repeat_n(e.z, e.mult)).collect()
    }

    /// Fails unless every eigenvalue lies in the open upper half-plane.
    pub fn require_upper(&self) -> Result<()> {
        match self.entries.iter().find(|e| !(e.z.im > 0.0)) {
            Some(e) => Err(Error::NonUpperHalfPlane(e.z)),
            None => Ok(()),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries sorted by real then imaginary part.
    pub fn sorted(&self) -> Spectrum {
        let mut e = self.entries.clone();
        e.sort_by(|x, y| x.z.re.total_cmp(&y.z.re).then(x.z.im.total_cmp(&y.z.im)));
        Spectrum { entries: e }
    }
}

/// Spectrum with diagnostics.
#[derive(Clone, Debug)]
pub struct SpectrumReport {
    pub spectrum: Spectrum,
    /// Set when clustering decisions were close to their threshold.
    pub cluster_ambiguity: bool,
    /// `|sum mult Im z - Im b1|`.
    pub im_sum_residual: f64,
    /// True when the dense QR path was used instead of the characteristic polynomial.
    pub dense: bool,
}

/// Eigenvalues with algebraic multiplicities.
pub fn spectrum(j: &FiniteJacobi, tol: &Tolerances) -> Result<Spectrum> {
    Ok(spectrum_report(j, tol)?.spectrum)
}

pub fn spectrum_report(j: &FiniteJacobi, tol: &Tolerances) -> Result<SpectrumReport> {
    let n = j.n();
    let p = charpoly(j);
    let dense = n > tol.dense_crossover;
    let raw = if dense {
        linalg::eigenvalues(&j.dense(), tol.max_iter)?
    } else {
        poly::raw_roots(&p, tol.max_iter)?
    };
    let (roots, ambiguous) = poly::cluster_roots(&p, &raw, tol.cluster);
    if ambiguous {
        log::warn!("root clustering is close to its threshold");
    }
    let spectrum = Spectrum {
        entries: roots
            .into_iter()
            .map(|r| Eig { z: if r.mult == 1 { polish(j, r.z) } else { r.z }, mult: r.mult })
            .collect(),
    };
    let im_sum_residual = (spectrum.im_sum() - j.b1().im).abs();
    if j.class() == JacobiClass::Dissipative && im_sum_residual > tol.spec * j.b1().im.max(1.0) {
        log::warn!("sum of Im z differs from Im b1 by {im_sum_residual:.3e}");
    }
    Ok(SpectrumReport { spectrum, cluster_ambiguity: ambiguous, im_sum_residual, dense })
}

/// `det(zI - J)` and its derivative by the three-term recursion.
fn det_and_derivative(j: &FiniteJacobi, z: C64) -> (C64, C64) {
    let (mut p0, mut d0) = (C64::one(), C64::zero());
    let (mut p1, mut d1) = (z - j.b(1), C64::one());
    for k in 2..=j.n() {
        let a2 = j.a(k - 1) * j.a(k - 1);
        let p2 = (z - j.b(k)) * p1 - a2 * p0;
        let d2 = p1 + (z - j.b(k)) * d1 - a2 * d0;
        (p0, d0, p1, d1) = (p1, d1, p2, d2);
    }
    (p1, d1)
}

/// Newton refinement of a simple eigenvalue; steps that do not reduce the
/// determinant are rejected.
fn polish(j: &FiniteJacobi, mut z: C64) -> C64 {
    let (mut f, mut df) = det_and_derivative(j, z);
    for _ in 0..4 {
        if df == C64::zero() || f == C64::zero() {
            break;
        }
        let cand = z - f / df;
        let (g, dg) = det_and_derivative(j, cand);
        if g.norm() >= f.norm() {
            break;
        }
        (z, f, df) = (cand, g, dg);
    }
    z
}

/// Jordan chain `e_0, ..., e_{l-1}` at an eigenvalue.
#[derive(Clone, Debug)]
pub struct RootChain {
    pub eigenvalue: C64,
    pub vectors: Vec<Vec<C64>>,
    /// Largest of `|(J - z0) e_0|` and `|(J - z0) e_{k+1} - e_k|`, relative to
    /// `max(1, |J|) * max |e_k|`.
    pub residual: f64,
}

/// Root chain from derivatives of the orthogonal polynomials,
/// `e_k[j] = P_j^(k)(z0) / k!`.
pub fn root_chain(j: &FiniteJacobi, z0: C64, l: usize, tol: &Tolerances) -> Result<RootChain> {
    if l == 0 {
        return Err(Error::NotAnEigenvalue(z0));
    }
    if j.a_all().iter().any(|&x| x == 0.0) {
        return Err(Error::InvalidMatrix("root chains need every a_k > 0".into()));
    }
    let spec = spectrum(j, tol)?;
    let hit = spec.entries.iter().any(|e| {
        e.mult >= l && (e.z - z0).norm() <= 10.0 * tol.cluster.sqrt() * e.z.norm().max(1.0)
    });
    if !hit {
        return Err(Error::NotAnEigenvalue(z0));
    }
    let n = j.n();
    // t[k][m] = Taylor coefficient m of P_k at z0
    let mut t = vec![vec![C64::zero(); l]; n + 2];
    t[1][0] = C64::one();
    for k in 1..=n {
        for m in 0..l {
            let mut v = (z0 - j.b(k)) * t[k][m] - j.a(k - 1) * t[k - 1][m];
            if m > 0 {
                v += t[k][m - 1];
            }
            t[k + 1][m] = v / j.a(k);
        }
    }
    let vectors: Vec<Vec<C64>> = (0..l).map(|m| (1..=n).map(|k| t[k][m]).collect()).collect();
    let dense = j.dense();
    let mut res: f64 = 0.0;
    let scale_e = vectors.iter().map(|v| linalg::norm2(v)).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    for m in 0..l {
        let mut r = dense.matvec(&vectors[m]);
        for (ri, ei) in r.iter_mut().zip(&vectors[m]) {
            *ri -= z0 * ei;
        }
        if m > 0 {
            for (ri, pi) in r.iter_mut().zip(&vectors[m - 1]) {
                *ri -= pi;
            }
        }
        res = res.max(linalg::norm2(&r));
    }
    let residual = res / (j.norm().max(1.0) * scale_e);
    if residual > tol.chain {
        return Err(Error::NotAnEigenvalue(z0));
    }
    Ok(RootChain { eigenvalue: z0, vectors, residual })
}

/// Characteristic function `W(z) = 1 - 2i Im(b1) m_J(z)` of a matrix.
pub fn char_function_of(j: &FiniteJacobi, z: C64, tol: &Tolerances) -> Result<C64> {
    let m = j.weyl(z, tol)?;
    Ok(C64::one() - C64::new(0.0, 2.0 * j.b1().im) * m)
}

/// Outcome of the kernel positivity check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelCheck {
    pub psd: bool,
    pub min_eigenvalue: f64,
}

/// Gram matrix of `(1 - W(z) conj W(w)) / (i (z - conj w))` at lower
/// half-plane samples; it must be positive semidefinite.
pub fn kernel_psd_check(j: &FiniteJacobi, samples: &[C64], tol: &Tolerances) -> Result<KernelCheck> {
    for (i, s) in samples.iter().enumerate() {
        if !(s.im < 0.0) {
            return Err(Error::SampleOnSpectrum(*s));
        }
        if samples[..i].iter().any(|t| (t - s).norm() <= tol.node * s.norm().max(1.0)) {
            return Err(Error::InconsistentData("kernel samples must be distinct".into()));
        }
    }
    let w: Vec<C64> = samples
        .iter()
        .map(|&s| char_function_of(j, s, tol).map_err(|_| Error::SampleOnSpectrum(s)))
        .collect::<Result<_>>()?;
    let k = samples.len();
    let g = CMatrix::from_fn(k, k, |r, c| {
        (C64::one() - w[r] * w[c].conj()) / (C64::i() * (samples[r] - samples[c].conj()))
    });
    // symmetrise away round-off before the eigen solve
    let h = CMatrix::from_fn(k, k, |r, c| (g[(r, c)] + g[(c, r)].conj()) * 0.5);
    let eig = linalg::eigenvalues(&h, tol.max_iter)?;
    let min = eig.iter().map(|e| e.re).fold(f64::INFINITY, f64::min);
    let scale = h.max_abs().max(1.0);
    Ok(KernelCheck { psd: min > -tol.psd * scale, min_eigenvalue: min })
}

/// Dimension of the Krylov space of `a` started at `g`.
///
/// Counted by Arnoldi with modified Gram-Schmidt; a step whose residual falls
/// below `tol * |a| * |g|` ends the count.
pub fn krylov_rank(a: &CMatrix, g: &[C64], tol: f64) -> usize {
    let n = g.len();
    let gn = linalg::norm2(g);
    if gn == 0.0 {
        return 0;
    }
    let scale = a.frobenius().max(1.0);
    let mut basis: Vec<Vec<C64>> = vec![g.iter().map(|x| x / gn).collect()];
    while basis.len() < n {
        let mut v = a.matvec(basis.last().unwrap());
        for _ in 0..2 {
            for q in &basis {
                let h = linalg::dot(&v, q);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= h * qi;
                }
            }
        }
        let nv = linalg::norm2(&v);
        if nv <= tol * scale {
            break;
        }
        basis.push(v.iter().map(|x| x / nv).collect());
    }
    basis.len()
}

/// Rank of the Krylov span of `delta_1`; equals `n` exactly when the matrix
/// is prime, and `p` when `a_p = 0`.
pub fn primeness_check(j: &FiniteJacobi, tol: &Tolerances) -> usize {
    let mut g = vec![C64::zero(); j.n()];
    g[0] = C64::one();
    krylov_rank(&j.dense(), &g, tol.rec.sqrt() * 1e-2)
}

/// `-(a_1...a_k / (k-1)!) Im P_{k+1}^{(k-1)}(0)`; equals `Im b1` for every
/// `1 <= k <= n`.
pub fn trace_invariant(j: &FiniteJacobi, k: usize) -> Result<f64> {
    if k == 0 || k > j.n() {
        return Err(Error::InvalidMatrix(format!("k = {k} outside 1..={}", j.n())));
    }
    let polys = orthopoly_coeffs(j);
    let p = &polys[k];
    let prod: f64 = (1..=k).map(|i| j.a(i)).product();
    // P^{(k-1)}(0) / (k-1)! is the coefficient of z^{k-1}
    Ok(-prod * p.coeff(k - 1).im)
}
