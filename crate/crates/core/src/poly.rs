//! Polynomial and rational-function arithmetic over complex coefficients.
//!
//! Every inverse algorithm in the crate works on exact coefficient
//! representations rather than black-box evaluators, so this module carries
//! long division, composition with affine maps, Taylor expansion at a point,
//! companion-matrix root finding with multiplicity clustering and Hermite
//! rational interpolation.

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

type C64 = Complex64;

/// Polynomial with ascending-degree complex coefficients.
///
/// The zero polynomial is stored as a single zero coefficient and reports
/// degree 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoly {
    coeffs: Vec<C64>,
}

impl ComplexPoly {
    /// Builds a polynomial, dropping exactly-zero leading coefficients.
    pub fn new(coeffs: Vec<C64>) -> Self {
        let mut p = Self { coeffs };
        p.trim_exact();
        p
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![C64::zero()] }
    }

    pub fn one() -> Self {
        Self::constant(C64::one())
    }

    pub fn constant(c: C64) -> Self {
        Self::new(vec![c])
    }

    /// `z - root`.
    pub fn linear(root: C64) -> Self {
        Self::new(vec![-root, C64::one()])
    }

    /// Monic product `prod (z - r)`.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a C64>) -> Self {
        roots.into_iter().fold(Self::one(), |acc, r| acc.mul(&Self::linear(*r)))
    }

    fn trim_exact(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(C64::zero());
        }
    }

    /// Drops leading coefficients below `tol * max|c|`.
    pub fn trimmed(&self, tol: f64) -> Self {
        let scale = self.max_abs();
        let mut c = self.coeffs.clone();
        while c.len() > 1 && c.last().is_some_and(|x| x.norm() <= tol * scale) {
            c.pop();
        }
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn lead(&self) -> C64 {
        *self.coeffs.last().unwrap()
    }

    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs.get(k).copied().unwrap_or_else(C64::zero)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::zero(), |acc, &c| acc * z + c)
    }

    /// `sum |c_k| |z|^k`, the natural scale of round-off in `eval(z)`.
    pub fn eval_abs(&self, z: C64) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![C64::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    pub fn monic(&self) -> Self {
        self.scale(C64::one() / self.lead())
    }

    /// `p(-z)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| if k % 2 == 1 { -c } else { c })
                .collect(),
        )
    }

    /// Largest imaginary part relative to the coefficient norm.
    pub fn imag_residue(&self) -> f64 {
        let s = self.max_abs();
        if s == 0.0 {
            return 0.0;
        }
        self.coeffs.iter().map(|c| c.im.abs()).fold(0.0, f64::max) / s
    }

    /// Coefficients with imaginary parts discarded.
    pub fn real_part(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| C64::new(c.re, 0.0)).collect())
    }

    /// Euclidean division `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree();
        if self.degree() < dd {
            return (Self::zero(), self.clone());
        }
        let lead = d.lead();
        let mut r = self.coeffs.clone();
        let mut q = vec![C64::zero(); self.degree() - dd + 1];
        for k in (0..q.len()).rev() {
            let f = r[k + dd] / lead;
            q[k] = f;
            for (j, &c) in d.coeffs.iter().enumerate() {
                r[k + j] -= f * c;
            }
            r[k + dd] = C64::zero();
        }
        r.truncate(dd.max(1));
        (Self::new(q), Self::new(r))
    }

    /// `p((z - shift) / scale)` as a polynomial in `z`.
    pub fn compose_affine(&self, shift: C64, scale: f64) -> Self {
        let inner = Self::new(vec![-shift / scale, C64::new(1.0 / scale, 0.0)]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, &c| acc.mul(&inner).add(&Self::constant(c)))
    }

    /// `p(shift + scale * w)` as a polynomial in `w`.
    pub fn substitute_affine(&self, shift: C64, scale: f64) -> Self {
        let inner = Self::new(vec![shift, C64::new(scale, 0.0)]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, &c| acc.mul(&inner).add(&Self::constant(c)))
    }

    /// Taylor coefficients `p^(k)(z0) / k!` for `k = 0..=degree`.
    pub fn taylor_coeffs(&self, z0: C64) -> Vec<C64> {
        // repeated synthetic division
        let mut c = self.coeffs.clone();
        let n = c.len();
        for k in 0..n {
            for j in (k..n - 1).rev() {
                let t = c[j + 1] * z0;
                c[j] += t;
            }
        }
        c
    }
}

/// Rational function `num / den` with complex coefficients.
///
/// The m-functions of self-adjoint blocks have real coefficients; those of
/// blocks that contain the complex corner entry do not, so realness is a
/// checked property rather than part of the type.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rational {
    pub num: ComplexPoly,
    pub den: ComplexPoly,
}

impl Rational {
    /// Builds `num / den` with a monic denominator.
    pub fn new(num: ComplexPoly, den: ComplexPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidMatrix("rational function with zero denominator".into()));
        }
        let l = den.lead();
        Ok(Self { num: num.scale(C64::one() / l), den: den.monic() })
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.num.eval(z) / self.den.eval(z)
    }

    /// Largest relative imaginary residue over numerator and denominator.
    pub fn imag_residue(&self) -> f64 {
        self.num.imag_residue().max(self.den.imag_residue())
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.imag_residue() <= tol
    }

    /// Copy with imaginary coefficient parts dropped after checking they are
    /// below `tol`.
    pub fn to_real(&self, tol: f64) -> Result<Self> {
        let r = self.imag_residue();
        if r > tol {
            return Err(Error::NonRealResult(r));
        }
        Ok(Self { num: self.num.real_part(), den: self.den.real_part() })
    }

    /// `lim_{z -> inf} z * f(z)`; zero when `deg num < deg den - 1`.
    pub fn z_limit(&self) -> C64 {
        let d = self.den.degree();
        if d == 0 {
            return C64::zero();
        }
        self.num.coeff(d - 1) / self.den.lead()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { num: self.num.scale(s), den: self.den.clone() }
    }

    /// Derivatives `f^(p)(z0)` for `p = 0..=order`.
    pub fn taylor_at(&self, z0: C64, order: usize, tol: &Tolerances) -> Result<Vec<C64>> {
        let scale = self.den.eval_abs(z0).max(f64::MIN_POSITIVE);
        quotient_derivatives(&self.num.taylor_coeffs(z0), &self.den.taylor_coeffs(z0), scale, z0, order, tol)
    }

    /// `f(-z)`, normalised.
    pub fn reflect(&self) -> Self {
        Self::new(self.num.reflect(), self.den.reflect()).expect("reflection keeps the denominator nonzero")
    }
}

/// Derivatives `p!` times the Taylor coefficients of `num / den`, given the
/// Taylor coefficients of both at `z0`. `scale` is the magnitude against
/// which a vanishing denominator is judged.
pub fn quotient_derivatives(
    ncoef: &[C64],
    dcoef: &[C64],
    scale: f64,
    z0: C64,
    order: usize,
    tol: &Tolerances,
) -> Result<Vec<C64>> {
    if dcoef.is_empty() || dcoef[0].norm() <= tol.pole * scale {
        return Err(Error::PoleAtPoint(z0));
    }
    let mut q = vec![C64::zero(); order + 1];
    let mut fact = 1.0;
    let mut out = Vec::with_capacity(order + 1);
    for p in 0..=order {
        let mut s = ncoef.get(p).copied().unwrap_or_else(C64::zero);
        for j in 1..=p {
            if let Some(d) = dcoef.get(j) {
                s -= d * q[p - j];
            }
        }
        q[p] = s / dcoef[0];
        if p > 0 {
            fact *= p as f64;
        }
        out.push(q[p] * fact);
    }
    Ok(out)
}

/// Derivatives `f^(p)(z0)`, `p = 0..=order`, of a rational function.
pub fn taylor_at(f: &Rational, z0: C64, order: usize, tol: &Tolerances) -> Result<Vec<C64>> {
    f.taylor_at(z0, order, tol)
}

/// A root with its clustered multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub z: C64,
    pub mult: usize,
}

/// Result of root finding with clustering diagnostics.
#[derive(Clone, Debug)]
pub struct RootReport {
    pub roots: Vec<Root>,
    /// Unclustered eigenvalues of the companion matrix.
    pub raw: Vec<C64>,
    /// Set when some cluster decision was within a factor of two of its
    /// acceptance threshold.
    pub ambiguous: bool,
}

/// Roots of `p`, clustered into multiplicities.
pub fn roots(p: &ComplexPoly, tol: &Tolerances) -> Result<Vec<Root>> {
    Ok(roots_with_report(p, tol)?.roots)
}

pub fn roots_with_report(p: &ComplexPoly, tol: &Tolerances) -> Result<RootReport> {
    let p = p.trimmed(tol.trim * 1e-6);
    let n = p.degree();
    if n == 0 {
        return Err(Error::DegreeZero);
    }
    let raw = raw_roots(&p, tol.max_iter)?;
    let (roots, ambiguous) = cluster_roots(&p, &raw, tol.cluster);
    Ok(RootReport { roots, raw, ambiguous })
}

/// Eigenvalues of the balanced companion matrix of `p`.
pub fn raw_roots(p: &ComplexPoly, max_iter: usize) -> Result<Vec<C64>> {
    let n = p.degree();
    if n == 0 {
        return Err(Error::DegreeZero);
    }
    let m = p.monic();
    if n == 1 {
        return Ok(vec![-m.coeff(0)]);
    }
    let mut comp = CMatrix::zeros(n, n);
    for j in 0..n {
        comp[(0, j)] = -m.coeff(n - 1 - j);
    }
    for i in 1..n {
        comp[(i, i - 1)] = C64::one();
    }
    linalg::eigenvalues(&comp, max_iter)
}

struct Cluster {
    members: Vec<C64>,
}

impl Cluster {
    fn centroid(&self) -> C64 {
        self.members.iter().sum::<C64>() / self.members.len() as f64
    }

    fn radius(&self, c: C64) -> f64 {
        self.members.iter().map(|z| (z - c).norm()).fold(0.0, f64::max)
    }
}

/// Backward-error radius within which `m` computed roots are
/// indistinguishable from one root of multiplicity `m` at `c`.
fn multiple_root_radius(p: &ComplexPoly, c: C64, m: usize) -> f64 {
    let t = p.taylor_coeffs(c);
    let tm = t.get(m).map(|x| x.norm()).unwrap_or(0.0);
    if tm == 0.0 {
        return 0.0;
    }
    let backward = 1e3 * f64::EPSILON * p.eval_abs(c);
    (backward / tm).powf(1.0 / m as f64)
}

/// Groups computed roots into multiplicities.
///
/// Roots closer than `cluster_tol * max(1, |z|)` are merged first. Remaining
/// groups are merged agglomeratively while the merged group fits inside the
/// perturbation radius of a multiple root at its centroid.
pub fn cluster_roots(p: &ComplexPoly, raw: &[C64], cluster_tol: f64) -> (Vec<Root>, bool) {
    let mut clusters: Vec<Cluster> = Vec::new();
    for &z in raw {
        let hit = clusters.iter().position(|c| {
            c.members.iter().any(|w| (w - z).norm() <= cluster_tol * w.norm().max(z.norm()).max(1.0))
        });
        match hit {
            Some(i) => clusters[i].members.push(z),
            None => clusters.push(Cluster { members: vec![z] }),
        }
    }
    // fix up chains that single-pass linkage may have split
    let mut merged = true;
    while merged {
        merged = false;
        'outer: for i in 0..clusters.len() {
            for j in i + 1..clusters.len() {
                let close = clusters[i].members.iter().any(|a| {
                    clusters[j]
                        .members
                        .iter()
                        .any(|b| (a - b).norm() <= cluster_tol * a.norm().max(b.norm()).max(1.0))
                });
                if close {
                    let m = clusters.remove(j);
                    clusters[i].members.extend(m.members);
                    merged = true;
                    break 'outer;
                }
            }
        }
    }
    let mut ambiguous = false;
    loop {
        let mut best: Option<(usize, usize, f64)> = None;
        for i in 0..clusters.len() {
            for j in i + 1..clusters.len() {
                let mut members = clusters[i].members.clone();
                members.extend(clusters[j].members.iter().copied());
                let cand = Cluster { members };
                let c = cand.centroid();
                let rho = cand.radius(c);
                let lim = multiple_root_radius(p, c, cand.members.len());
                let ratio = if lim > 0.0 { rho / lim } else { f64::INFINITY };
                if best.is_none_or(|b| ratio < b.2) {
                    best = Some((i, j, ratio));
                }
            }
        }
        match best {
            Some((i, j, ratio)) if ratio <= 1.0 => {
                if ratio > 0.5 {
                    ambiguous = true;
                }
                let m = clusters.remove(j);
                clusters[i].members.extend(m.members);
            }
            Some((_, _, ratio)) => {
                if ratio < 2.0 {
                    ambiguous = true;
                }
                break;
            }
            None => break,
        }
    }
    let mut roots: Vec<Root> =
        clusters.iter().map(|c| Root { z: c.centroid(), mult: c.members.len() }).collect();
    roots.sort_by(|a, b| a.z.re.total_cmp(&b.z.re).then(a.z.im.total_cmp(&b.z.im)));
    (roots, ambiguous)
}

/// One interpolation node with prescribed derivative values
/// `f(z), f'(z), ..., f^(l-1)(z)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HermiteNode {
    pub z: C64,
    pub values: Vec<C64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HermiteData {
    pub nodes: Vec<HermiteNode>,
}

impl HermiteData {
    pub fn total_multiplicity(&self) -> usize {
        self.nodes.iter().map(|n| n.values.len()).sum()
    }
}

/// Hermite interpolant together with solver diagnostics.
#[derive(Clone, Debug)]
pub struct HermiteFit {
    pub rational: Rational,
    /// Condition estimate of the linearised system in the scaled variable.
    pub cond: f64,
    /// Largest interpolation residual, relative to `max(1, |v|)`.
    pub residual: f64,
}

/// Rational interpolant `L_num / L_den` (monic denominator) matching the
/// prescribed derivative values.
///
/// The conditions are linearised as `d^p/dz^p [L_num - T_j L_den](z_j) = 0`,
/// `p < l_j`, where `T_j` is the Taylor polynomial of the data at `z_j`.
/// With `self_conjugate` the unknown coefficients are real, so every
/// non-real node also fixes the conjugate values at the mirrored node; each
/// non-real condition then contributes two real equations and each real node
/// one. The system is solved in the affine variable `(z - mu) / sigma`
/// centred on the nodes.
pub fn hermite_rational(
    data: &HermiteData,
    deg_num: usize,
    deg_den: usize,
    self_conjugate: bool,
    tol: &Tolerances,
) -> Result<HermiteFit> {
    let nodes = &data.nodes;
    if nodes.is_empty() || nodes.iter().any(|n| n.values.is_empty()) {
        return Err(Error::DegreeMismatch { expected: deg_num + deg_den + 1, found: 0 });
    }
    let scale = nodes.iter().map(|n| n.z.norm()).fold(1.0, f64::max);
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if (nodes[i].z - nodes[j].z).norm() <= tol.node * scale {
                return Err(Error::InconsistentData("interpolation nodes coincide".into()));
            }
        }
    }
    let is_real_node = |z: C64| z.im.abs() <= tol.node * scale;
    let unknowns = deg_num + 1 + deg_den;
    let equations: usize = nodes
        .iter()
        .map(|n| if self_conjugate && !is_real_node(n.z) { 2 * n.values.len() } else { n.values.len() })
        .sum();
    if equations != unknowns {
        return Err(Error::DegreeMismatch { expected: unknowns, found: equations });
    }

    let mu = if self_conjugate {
        C64::new(nodes.iter().map(|n| n.z.re).sum::<f64>() / nodes.len() as f64, 0.0)
    } else {
        nodes.iter().map(|n| n.z).sum::<C64>() / nodes.len() as f64
    };
    let sigma = nodes.iter().map(|n| (n.z - mu).norm()).fold(0.0, f64::max);
    let sigma = if sigma > 0.0 { sigma } else { 1.0 };

    let binom = |n: usize, k: usize| -> f64 {
        if k > n {
            return 0.0;
        }
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    };
    // Taylor coefficient q of w^k at w0
    let mono = |k: usize, q: usize, w0: C64| -> C64 {
        if q > k {
            C64::zero()
        } else {
            w0.powu((k - q) as u32) * binom(k, q)
        }
    };

    let mut rows: Vec<Vec<C64>> = Vec::with_capacity(unknowns);
    let mut rhs: Vec<C64> = Vec::with_capacity(unknowns);
    for node in nodes {
        let w0 = (node.z - mu) / sigma;
        // Taylor coefficients of the data in the scaled variable
        let mut fact = 1.0;
        let tay: Vec<C64> = node
            .values
            .iter()
            .enumerate()
            .map(|(p, v)| {
                if p > 0 {
                    fact *= p as f64;
                }
                v * sigma.powi(p as i32) / fact
            })
            .collect();
        for p in 0..node.values.len() {
            let mut row = vec![C64::zero(); unknowns];
            for (k, slot) in row.iter_mut().enumerate().take(deg_num + 1) {
                *slot = mono(k, p, w0);
            }
            for k in 0..deg_den {
                let mut s = C64::zero();
                for q in 0..=p {
                    s += tay[p - q] * mono(k, q, w0);
                }
                row[deg_num + 1 + k] = -s;
            }
            let mut r = C64::zero();
            for q in 0..=p {
                r += tay[p - q] * mono(deg_den, q, w0);
            }
            if self_conjugate {
                rows.push(row.iter().map(|c| C64::new(c.re, 0.0)).collect());
                rhs.push(C64::new(r.re, 0.0));
                if !is_real_node(node.z) {
                    rows.push(row.iter().map(|c| C64::new(c.im, 0.0)).collect());
                    rhs.push(C64::new(r.im, 0.0));
                }
            } else {
                rows.push(row);
                rhs.push(r);
            }
        }
    }
    let a = CMatrix::from_fn(unknowns, unknowns, |i, j| rows[i][j]);
    let sol = linalg::qr_pivot_solve(&a, &rhs, 1e-13)?;
    let x = sol.x;
    let num_w = ComplexPoly::new(x[..=deg_num].to_vec());
    let mut den_c = x[deg_num + 1..].to_vec();
    den_c.push(C64::one());
    let den_w = ComplexPoly::new(den_c);
    // back to z: multiply through by sigma^deg_den so the denominator stays monic
    let s = C64::new(sigma.powi(deg_den as i32), 0.0);
    let num = num_w.compose_affine(mu, sigma).scale(s);
    let den = den_w.compose_affine(mu, sigma).scale(s);
    let mut rational = Rational::new(num, den)?;
    if self_conjugate {
        rational = Rational { num: rational.num.real_part(), den: rational.den.real_part() };
    }

    let mut residual: f64 = 0.0;
    for node in nodes {
        let got = rational.taylor_at(node.z, node.values.len() - 1, tol).map_err(|_| {
            Error::InconsistentData(format!("interpolant has a pole at node {}", node.z))
        })?;
        for (g, v) in got.iter().zip(&node.values) {
            let target = if self_conjugate && is_real_node(node.z) { C64::new(v.re, 0.0) } else { *v };
            residual = residual.max((g - target).norm() / v.norm().max(1.0));
        }
        if self_conjugate && is_real_node(node.z) {
            let im = node.values.iter().map(|v| v.im.abs() / v.norm().max(1.0)).fold(0.0, f64::max);
            if im > tol.real.max(tol.interp) {
                return Err(Error::NonRealResult(im));
            }
        }
    }
    if residual > tol.interp {
        return Err(Error::InconsistentData(format!(
            "interpolation residual {residual:.3e} exceeds tolerance (cond {:.3e})",
            sol.cond
        )));
    }
    Ok(HermiteFit { rational, cond: sol.cond, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn roots_of_z2_plus_1() {
        let r = roots(&ComplexPoly::from_real(&[1.0, 0.0, 1.0]), &tol()).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0].z - c(0.0, -1.0)).norm() < 1e-14);
        assert!((r[1].z - c(0.0, 1.0)).norm() < 1e-14);
        assert!(r.iter().all(|x| x.mult == 1));
    }

    #[test]
    fn roots_of_linear() {
        let r = roots(&ComplexPoly::from_real(&[-5.0, 1.0]), &tol()).unwrap();
        assert_eq!(r, vec![Root { z: c(5.0, 0.0), mult: 1 }]);
    }

    #[test]
    fn double_root_is_clustered() {
        // (z - i)^2 (z - 2i) = z^3 - 4i z^2 - 5 z + 2i, expanded by hand
        let p = ComplexPoly::new(vec![c(0.0, 2.0), c(-5.0, 0.0), c(0.0, -4.0), c(1.0, 0.0)]);
        assert_eq!(p, ComplexPoly::from_roots(&[c(0.0, 1.0), c(0.0, 1.0), c(0.0, 2.0)]));
        let r = roots(&p, &tol()).unwrap();
        assert_eq!(r.len(), 2);
        let i1 = r.iter().find(|x| x.mult == 2).unwrap();
        let i2 = r.iter().find(|x| x.mult == 1).unwrap();
        assert!((i1.z - c(0.0, 1.0)).norm() < 1e-10);
        assert!((i2.z - c(0.0, 2.0)).norm() < 1e-10);
    }

    #[test]
    fn fivefold_root_is_clustered() {
        let z0 = c(0.3, 1.0);
        let p = ComplexPoly::from_roots(&[z0; 5]);
        let r = roots(&p, &tol()).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].mult, 5);
        assert!((r[0].z - z0).norm() < 1e-10);
    }

    #[test]
    fn constant_has_no_roots() {
        assert_eq!(roots(&ComplexPoly::constant(c(3.0, 0.0)), &tol()), Err(Error::DegreeZero));
    }

    #[test]
    fn div_rem_reconstructs_dividend() {
        let a = ComplexPoly::new(vec![c(1.0, 2.0), c(0.0, -1.0), c(3.0, 0.0), c(0.5, 0.5)]);
        let b = ComplexPoly::new(vec![c(2.0, 0.0), c(1.0, 1.0)]);
        let (q, r) = a.div_rem(&b);
        assert!(r.degree() < b.degree());
        let back = q.mul(&b).add(&r);
        for k in 0..4 {
            assert!((back.coeff(k) - a.coeff(k)).norm() < 1e-14);
        }
    }

    #[test]
    fn affine_compose_and_substitute_are_inverse() {
        let p = ComplexPoly::new(vec![c(1.0, 0.0), c(-2.0, 1.0), c(0.0, 3.0), c(1.0, 0.0)]);
        let q = p.substitute_affine(c(0.5, 0.0), 2.0).compose_affine(c(0.5, 0.0), 2.0);
        for k in 0..4 {
            assert!((q.coeff(k) - p.coeff(k)).norm() < 1e-13);
        }
    }

    #[test]
    fn taylor_of_reciprocal() {
        let f = Rational::new(ComplexPoly::one(), ComplexPoly::from_real(&[0.0, 1.0])).unwrap();
        let d = f.taylor_at(c(1.0, 0.0), 1, &tol()).unwrap();
        assert!((d[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((d[1] - c(-1.0, 0.0)).norm() < 1e-15);
        assert!(matches!(f.taylor_at(C64::zero(), 0, &tol()), Err(Error::PoleAtPoint(_))));
    }

    #[test]
    fn taylor_of_constant() {
        let f = Rational::new(ComplexPoly::constant(c(5.0, 0.0)), ComplexPoly::one()).unwrap();
        let d = f.taylor_at(c(0.3, -2.0), 3, &tol()).unwrap();
        assert_eq!(d, vec![c(5.0, 0.0), C64::zero(), C64::zero(), C64::zero()]);
    }

    #[test]
    fn taylor_value_matches_direct_evaluation() {
        let f = Rational::new(
            ComplexPoly::from_real(&[1.0, 0.0, -2.0]),
            ComplexPoly::from_real(&[0.0, -10.0, 0.0, 2.0]),
        )
        .unwrap();
        let z = c(0.0, 3.0);
        let direct = (c(1.0, 0.0) - 2.0 * z * z) / (2.0 * z * z * z - 10.0 * z);
        let d = f.taylor_at(z, 0, &tol()).unwrap();
        assert!((d[0] - direct).norm() < 1e-15);
    }

    #[test]
    fn taylor_derivatives_match_finite_differences() {
        let f = Rational::new(
            ComplexPoly::new(vec![c(1.0, 1.0), c(0.5, 0.0), c(-1.0, 0.2)]),
            ComplexPoly::new(vec![c(2.0, 0.0), c(0.0, 1.0), c(1.0, 0.0), c(0.3, 0.0)]),
        )
        .unwrap();
        let z0 = c(0.4, 0.7);
        let d = f.taylor_at(z0, 2, &tol()).unwrap();
        let h = 1e-4;
        let fd1 = (f.eval(z0 + h) - f.eval(z0 - h)) / (2.0 * h);
        let fd2 = (f.eval(z0 + h) - 2.0 * f.eval(z0) + f.eval(z0 - h)) / (h * h);
        assert!((d[1] - fd1).norm() < 1e-6);
        assert!((d[2] - fd2).norm() < 1e-5);
    }

    #[test]
    fn hermite_single_conjugate_pair() {
        // samples of Phi(z) = -1/(2z) at z = 2i
        let v = c(0.0, 0.25);
        let data = HermiteData { nodes: vec![HermiteNode { z: c(0.0, 2.0), values: vec![v] }] };
        let fit = hermite_rational(&data, 0, 1, true, &tol()).unwrap();
        assert!((fit.rational.num.coeff(0) - c(-0.5, 0.0)).norm() < 1e-14);
        assert!(fit.rational.den.coeff(0).norm() < 1e-14);
        assert!((fit.rational.z_limit() - c(-0.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn hermite_underdetermined_data_is_rejected() {
        let data = HermiteData { nodes: vec![HermiteNode { z: C64::zero(), values: vec![C64::zero()] }] };
        // one real condition cannot fix two unknowns
        assert!(matches!(
            hermite_rational(&data, 0, 1, true, &tol()),
            Err(Error::DegreeMismatch { expected: 2, found: 1 })
        ));
        let data = HermiteData {
            nodes: vec![
                HermiteNode { z: C64::zero(), values: vec![C64::zero()] },
                HermiteNode { z: c(1.0, 0.0), values: vec![C64::zero()] },
            ],
        };
        // the denominator is left free
        assert!(matches!(hermite_rational(&data, 0, 1, true, &tol()), Err(Error::SingularSystem { .. })));
    }

    #[test]
    fn hermite_recovers_conjugate_samples() {
        let exact = Rational::new(ComplexPoly::from_real(&[-1.0]), ComplexPoly::from_real(&[2.0, 0.0, 1.0])).unwrap();
        let data = HermiteData {
            nodes: vec![
                HermiteNode { z: c(0.0, 1.0), values: vec![exact.eval(c(0.0, 1.0))] },
                HermiteNode { z: c(1.0, 1.0), values: vec![exact.eval(c(1.0, 1.0))] },
            ],
        };
        let fit = hermite_rational(&data, 1, 2, true, &tol()).unwrap();
        for k in 0..3 {
            assert!((fit.rational.den.coeff(k) - exact.den.coeff(k)).norm() < 1e-10);
        }
        assert!(fit.rational.num.coeff(1).norm() < 1e-10);
    }

    #[test]
    fn hermite_with_derivative_data() {
        let exact = Rational::new(
            ComplexPoly::from_real(&[0.3, -1.0]),
            ComplexPoly::from_real(&[1.0, 0.5, 2.0, 1.0]),
        )
        .unwrap();
        let z1 = c(0.2, 0.8);
        let data = HermiteData {
            nodes: vec![
                HermiteNode { z: z1, values: exact.taylor_at(z1, 1, &tol()).unwrap() },
                HermiteNode { z: c(-1.0, 2.0), values: vec![exact.eval(c(-1.0, 2.0))] },
            ],
        };
        let fit = hermite_rational(&data, 2, 3, true, &tol()).unwrap();
        for k in 0..4 {
            assert!((fit.rational.den.coeff(k) - exact.den.coeff(k)).norm() < 1e-9);
        }
        assert!(fit.rational.imag_residue() == 0.0);
    }
}
