//! Livsic triangular models and their conversion to Jacobi form.

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::jacobi::{FiniteJacobi, Spectrum};
use crate::linalg::{dot, norm2, CMatrix};

type C64 = Complex64;

/// Upper-triangular model with eigenvalues `alpha_k + i beta_k^2 / 2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangularModel {
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
}

impl TriangularModel {
    pub fn new(alphas: Vec<f64>, betas: Vec<f64>) -> Result<Self> {
        if alphas.len() != betas.len() || alphas.is_empty() {
            return Err(Error::InconsistentCounts(format!(
                "{} alphas and {} betas",
                alphas.len(),
                betas.len()
            )));
        }
        if let Some(k) = betas.iter().position(|b| !(*b > 0.0)) {
            return Err(Error::NonUpperHalfPlane(C64::new(alphas[k], betas[k] * betas[k] / 2.0)));
        }
        Ok(Self { alphas, betas })
    }

    pub fn n(&self) -> usize {
        self.alphas.len()
    }

    pub fn eigenvalues(&self) -> Vec<C64> {
        self.alphas.iter().zip(&self.betas).map(|(a, b)| C64::new(*a, b * b / 2.0)).collect()
    }

    /// The channel vector `(beta_1, ..., beta_n)`.
    pub fn channel(&self) -> Vec<C64> {
        self.betas.iter().map(|b| C64::new(*b, 0.0)).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConversionResult {
    pub jacobi: FiniteJacobi,
    pub u: CMatrix,
}

/// Residuals of `U* U = I`, `U J = A U` and `U g = g_hat`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConversionCheck {
    pub unitary: f64,
    pub intertwine: f64,
    pub channel: f64,
    pub scale: f64,
}

impl ConversionCheck {
    pub fn passes(&self, tol: &Tolerances) -> bool {
        self.unitary < tol.unitary && self.intertwine < tol.conv * self.scale && self.channel < tol.conv * self.scale
    }
}

pub fn model_from_spectrum(s: &Spectrum) -> Result<TriangularModel> {
    s.require_upper()?;
    let z = s.expanded();
    TriangularModel::new(z.iter().map(|z| z.re).collect(), z.iter().map(|z| (2.0 * z.im).sqrt()).collect())
}

pub fn triangular_matrix(m: &TriangularModel) -> CMatrix {
    let z = m.eigenvalues();
    CMatrix::from_fn(m.n(), m.n(), |j, k| match j.cmp(&k) {
        std::cmp::Ordering::Equal => z[j],
        std::cmp::Ordering::Less => C64::new(0.0, m.betas[j] * m.betas[k]),
        std::cmp::Ordering::Greater => C64::zero(),
    })
}

pub fn check_conversion(m: &TriangularModel, r: &ConversionResult) -> ConversionCheck {
    let n = m.n();
    let a = triangular_matrix(m);
    let u = &r.u;
    let unitary = u.adjoint().matmul(u).sub(&CMatrix::identity(n)).max_abs();
    let intertwine = u.matmul(&r.jacobi.dense()).sub(&a.matmul(u)).max_abs();
    let g0 = (2.0 * r.jacobi.b1().im).sqrt();
    let channel = u
        .column(0)
        .iter()
        .zip(m.channel())
        .map(|(x, h)| (x * g0 - h).norm())
        .fold(0.0, f64::max);
    ConversionCheck { unitary, intertwine, channel, scale: a.max_abs().max(1.0) }
}

/// The Jacobi matrix unitarily equivalent to the model, with `U J = A U`
/// and `U g = g_hat`.
///
/// Entries are found by matching `(J^m g, J^(m-1) g)` and `|J^m g|` against
/// the same quantities for the model. If that loses too much accuracy the
/// conversion is redone by Lanczos with full reorthogonalisation.
pub fn triangular_to_jacobi(m: &TriangularModel, tol: &Tolerances) -> Result<ConversionResult> {
    match krylov_matching(m, tol) {
        Ok(r) if check_conversion(m, &r).passes(tol) => return Ok(r),
        Ok(r) => log::debug!("moment matching lost accuracy: {:?}", check_conversion(m, &r)),
        Err(e) => log::debug!("moment matching failed: {e}"),
    }
    lanczos(m, tol)
}

fn breakdown(step: usize, a2: f64, scale: f64, tol: &Tolerances) -> Result<()> {
    if a2 < tol.a2_min * scale {
        Err(Error::NumericalBreakdown { step, value: a2 })
    } else {
        Ok(())
    }
}

fn krylov_matching(m: &TriangularModel, tol: &Tolerances) -> Result<ConversionResult> {
    let n = m.n();
    let am = triangular_matrix(m);
    let ghat = m.channel();
    let gnorm = norm2(&ghat);
    let mut u = CMatrix::zeros(n, n);
    u.set_column(0, &ghat.iter().map(|h| h / gnorm).collect::<Vec<_>>());

    let mut b: Vec<C64> = Vec::with_capacity(n);
    let mut a: Vec<f64> = Vec::with_capacity(n - 1);
    // x = J^(m-1) g in the Jacobi basis, y = A^(m-1) g_hat, common scaling
    let mut x = vec![C64::zero(); n];
    x[0] = C64::new(gnorm, 0.0);
    let mut y = ghat.clone();
    for step in 0..n {
        let y_new = am.matvec(&y);
        let mut x_new = vec![C64::zero(); n];
        for k in 0..step {
            let mut v = b[k] * x[k] + a[k] * x[k + 1];
            if k > 0 {
                v += a[k - 1] * x[k - 1];
            }
            x_new[k] = v;
        }
        let carry = if step > 0 { a[step - 1] * x[step - 1] } else { C64::zero() };
        let known: C64 = (0..step).map(|k| x_new[k] * x[k].conj()).sum::<C64>() + carry * x[step].conj();
        let bm = (dot(&y_new, &y) - known) / x[step].norm_sqr();
        let bm = if step == 0 { bm } else { C64::new(bm.re, 0.0) };
        b.push(bm);
        x_new[step] = carry + bm * x[step];
        if step + 1 == n {
            break;
        }
        let ny2 = y_new.iter().map(|v| v.norm_sqr()).sum::<f64>();
        let head: f64 = x_new[..=step].iter().map(|v| v.norm_sqr()).sum();
        let a2 = (ny2 - head) / x[step].norm_sqr();
        breakdown(step + 1, a2, ny2 / x[step].norm_sqr(), tol)?;
        let am_k = a2.sqrt();
        a.push(am_k);
        x_new[step + 1] = am_k * x[step];
        let mut col = y_new.clone();
        for k in 0..=step {
            let uk = u.column(k);
            col.iter_mut().zip(&uk).for_each(|(c, v)| *c -= x_new[k] * v);
        }
        let col: Vec<C64> = col.iter().map(|c| c / x_new[step + 1]).collect();
        u.set_column(step + 1, &col);
        let s = ny2.sqrt();
        x = x_new.iter().map(|v| v / s).collect();
        y = y_new.iter().map(|v| v / s).collect();
    }
    let un = u.column(n - 1);
    if n > 1 {
        b[n - 1] = C64::new(dot(&am.matvec(&un), &un).re, 0.0);
    }
    let jacobi = FiniteJacobi::new(b[0], b[1..].iter().map(|v| v.re).collect(), a)?;
    Ok(ConversionResult { jacobi, u })
}

fn lanczos(m: &TriangularModel, tol: &Tolerances) -> Result<ConversionResult> {
    let n = m.n();
    let am = triangular_matrix(m);
    let ghat = m.channel();
    let gnorm = norm2(&ghat);
    let mut cols: Vec<Vec<C64>> = vec![ghat.iter().map(|h| h / gnorm).collect()];
    let mut b: Vec<C64> = Vec::with_capacity(n);
    let mut a: Vec<f64> = Vec::with_capacity(n - 1);
    for step in 0..n {
        let uk = &cols[step];
        let mut w = am.matvec(uk);
        let bk = dot(&w, uk);
        b.push(if step == 0 { bk } else { C64::new(bk.re, 0.0) });
        if step + 1 == n {
            break;
        }
        for _ in 0..2 {
            for q in &cols {
                let c = dot(&w, q);
                w.iter_mut().zip(q).for_each(|(p, q)| *p -= c * q);
            }
        }
        let nw = norm2(&w);
        breakdown(step + 1, nw * nw, am.max_abs().max(1.0).powi(2), tol)?;
        a.push(nw);
        cols.push(w.iter().map(|p| p / nw).collect());
    }
    let u = CMatrix::from_fn(n, n, |i, j| cols[j][i]);
    let jacobi = FiniteJacobi::new(b[0], b[1..].iter().map(|v| v.re).collect(), a)?;
    Ok(ConversionResult { jacobi, u })
}
