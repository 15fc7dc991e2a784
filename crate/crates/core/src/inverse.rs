//! Inverse problems: reconstruction from eigenvalues, from the
//! characteristic function, and from mixed spectral data.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::jacobi::{charpoly, FiniteJacobi, JacobiClass, Spectrum};
use crate::mfunc::{jfraction_peel, lanczos_peel, CharFunction};
use crate::poly::{hermite_rational, quotient_derivatives, ComplexPoly, HermiteData, HermiteNode, Rational};

type C64 = Complex64;

/// Known prefix of a dissipative matrix plus some of its eigenvalues.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedData {
    pub n: usize,
    /// Leading block `J_[1, n-r]`, i.e. `b_1, a_1, ..., a_{n-r-1}, b_{n-r}`.
    pub prefix: FiniteJacobi,
    /// Known eigenvalues, total multiplicity `r`.
    pub spectrum: Spectrum,
}

/// Data for a matrix that splits as `J_11 (+) J_22` with `a_p = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockData {
    pub n: usize,
    pub p: usize,
    /// Non-real eigenvalues, total multiplicity `p`.
    pub nonreal_spectrum: Spectrum,
    /// Distinct real eigenvalues (of `J_22`).
    pub real_eigs: Vec<f64>,
    /// `c_{2p+j+1}, ..., c_{2n-1}` in the interleaved order
    /// `c_{2k-1} = b_k`, `c_{2k} = a_k`.
    pub known_tail: Vec<f64>,
}

/// Interleaved sequence `b_1, a_1, b_2, ..., a_{n-1}, b_n` of a real matrix.
pub fn c_sequence(j: &FiniteJacobi) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * j.n() - 1);
    for k in 1..=j.n() {
        out.push(j.b(k).re);
        if k < j.n() {
            out.push(j.a(k));
        }
    }
    out
}

/// Splits an interleaved prefix `b_1, a_1, ...` into diagonal and
/// off-diagonal parts.
fn split_c(c: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let b = c.iter().step_by(2).copied().collect();
    let a = c.iter().skip(1).step_by(2).copied().collect();
    (b, a)
}

/// Affine frame `(mu, sigma)` that centres a set of points.
fn frame(zs: &[C64]) -> (f64, f64) {
    let mu = zs.iter().map(|z| z.re).sum::<f64>() / zs.len() as f64;
    let sigma = zs.iter().map(|z| (z - mu).norm()).fold(0.0, f64::max);
    (mu, if sigma > 0.0 { sigma } else { 1.0 })
}

/// The unique dissipative Jacobi matrix with the given eigenvalues.
///
/// The Weyl function of the real part, `(i/c) (W - 1) / (W + 1)` with the
/// Blaschke product `W`, is expanded into a continued fraction; the
/// imaginary part `c = sum mult Im z` is then put back on `b_1`.
pub fn reconstruct_from_spectrum(s: &Spectrum, tol: &Tolerances) -> Result<FiniteJacobi> {
    s.require_upper()?;
    let zs = s.expanded();
    let n = zs.len();
    if n == 0 {
        return Err(Error::InconsistentData("empty spectrum".into()));
    }
    if n == 1 {
        return FiniteJacobi::new(zs[0], vec![], vec![]);
    }
    let (mu, sigma) = frame(&zs);
    let w: Vec<C64> = zs.iter().map(|z| (z - mu) / sigma).collect();
    let c = w.iter().map(|z| z.im).sum::<f64>();
    let p = ComplexPoly::from_roots(&w);
    let pbar = ComplexPoly::from_roots(&w.iter().map(|z| z.conj()).collect::<Vec<_>>());
    let num = pbar.sub(&p).scale(C64::new(0.0, 1.0 / c));
    let den = pbar.add(&p);
    let m = Rational::new(num, den)?.to_real(tol.real)?;
    let jf = jfraction_peel(&m, n, tol)?;
    if jf.b1.im.abs() > tol.peel * jf.b1.norm().max(1.0) {
        return Err(Error::NonRealResult(jf.b1.im));
    }
    let b1 = C64::new(mu + sigma * jf.b1.re, s.im_sum());
    let b = jf.chain.iter().map(|(_, b)| mu + sigma * b).collect();
    let a = jf.chain.iter().map(|(a2, _)| sigma * a2.sqrt()).collect();
    FiniteJacobi::new(b1, b, a)
}

/// Reconstruction from `M(z) = (i/beta) (W(z) - 1)`, `beta = 2c`, which is
/// the Weyl function of the dissipative matrix itself.
pub fn reconstruct_from_charfunction(w: &CharFunction, tol: &Tolerances) -> Result<FiniteJacobi> {
    let zs = w.spectrum.expanded();
    let n = zs.len();
    if n == 1 {
        return FiniteJacobi::new(zs[0], vec![], vec![]);
    }
    let (mu, sigma) = frame(&zs);
    let scaled: Vec<C64> = zs.iter().map(|z| (z - mu) / sigma).collect();
    let c: f64 = scaled.iter().map(|z| z.im).sum();
    let p = ComplexPoly::from_roots(&scaled);
    let pbar = ComplexPoly::from_roots(&scaled.iter().map(|z| z.conj()).collect::<Vec<_>>());
    let m = Rational::new(pbar.sub(&p).scale(C64::new(0.0, 1.0 / (2.0 * c))), p)?;
    let jf = jfraction_peel(&m, n, tol)?;
    let b1 = jf.b1 * sigma + mu;
    if (b1.im - w.c).abs() > tol.peel.sqrt() * w.c.max(1.0) {
        return Err(Error::InconsistentData(format!("Im b1 = {} but the spectrum gives {}", b1.im, w.c)));
    }
    FiniteJacobi::new(
        b1,
        jf.chain.iter().map(|(_, b)| mu + sigma * b).collect(),
        jf.chain.iter().map(|(a2, _)| sigma * a2.sqrt()).collect(),
    )
}

/// Largest `|det(zI - J)|` at the given eigenvalues, relative to the natural
/// round-off scale of the evaluation.
fn eigen_residual(j: &FiniteJacobi, zs: &[C64]) -> f64 {
    let p = charpoly(j);
    zs.iter()
        .map(|&z| p.eval(z).norm() / p.eval_abs(z).max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max)
}

fn shared_eigenvalue(z: C64) -> Error {
    Error::NoConsistentMatrix(format!("{z} is also an eigenvalue of the known block"))
}

/// Hermite data for `1/m_-(., k+1) = -det(z - J_[1,k]) / det(z - J_[1,k-1])`
/// of the leading block `head = J_[1,k]`, evaluated by the recursion.
fn inv_m_minus_data(head: &FiniteJacobi, nodes: &[(C64, usize)], tol: &Tolerances) -> Result<HermiteData> {
    let k = head.n();
    let nodes = nodes
        .iter()
        .map(|&(z, l)| {
            let (chi_k, chi_km1, scale) = head.minor_taylor(1, k, z, l - 1);
            let neg: Vec<C64> = chi_k.iter().map(|c| -c).collect();
            let values = quotient_derivatives(&neg, &chi_km1, scale, z, l - 1, tol).map_err(|_| shared_eigenvalue(z))?;
            Ok(HermiteNode { z, values })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HermiteData { nodes })
}

/// Hermite data for `w(z) = z + a_k^2 m_-(., k+1)` where `m_-(., k+1)` is
/// the Weyl function of `head = J_[1,k]` at its last basis vector.
fn shifted_m_minus_data(head: Option<&FiniteJacobi>, ak2: f64, nodes: &[(C64, usize)], tol: &Tolerances) -> Result<HermiteData> {
    let nodes = nodes
        .iter()
        .map(|&(z, l)| {
            let mut values = match head {
                None => vec![C64::zero(); l],
                Some(h) => {
                    let (chi_k, chi_km1, scale) = h.minor_taylor(1, h.n(), z, l - 1);
                    let neg: Vec<C64> = chi_km1.iter().map(|c| -c * ak2).collect();
                    quotient_derivatives(&neg, &chi_k, scale, z, l - 1, tol).map_err(|_| shared_eigenvalue(z))?
                }
            };
            values[0] += z;
            if l > 1 {
                values[1] += C64::one();
            }
            Ok(HermiteNode { z, values })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HermiteData { nodes })
}

/// Splits `Phi = a^2 m_+` into `a^2` and the continued fraction of `m_+`.
fn peel_tail(phi: &Rational, r: usize, tol: &Tolerances) -> Result<(f64, Vec<f64>, Vec<f64>)> {
    let a2 = -phi.num.coeff(r - 1).re;
    let scale = phi.num.max_abs().max(1.0);
    if !(a2 > tol.a2_min * scale) {
        return Err(Error::NotHerglotzLike { step: 0, value: a2 });
    }
    if let Some(t) = lanczos_peel(phi, r, tol) {
        return Ok(t);
    }
    let m_plus = Rational::new(phi.num.scale(C64::new(1.0 / a2, 0.0)), phi.den.clone())?;
    let jf = jfraction_peel(&m_plus, r, tol)?;
    if jf.b1.im.abs() > tol.peel * jf.b1.norm().max(1.0) {
        return Err(Error::NonRealResult(jf.b1.im));
    }
    let mut b = vec![jf.b1.re];
    b.extend(jf.chain.iter().map(|p| p.1));
    let a = jf.chain.iter().map(|p| p.0.sqrt()).collect();
    Ok((a2, b, a))
}

/// Recovers `a_{n-r}, b_{n-r+1}, ..., b_n` from the leading block and `r`
/// eigenvalues counted with multiplicity.
///
/// `Phi = a_{n-r}^2 m_+(., n-r)` is the real rational function of type
/// `(r-1)/r` that Hermite-interpolates `1/m_-(., n-r+1)` at the known
/// eigenvalues.
pub fn mixed_recover(d: &MixedData, tol: &Tolerances) -> Result<FiniteJacobi> {
    d.spectrum.require_upper()?;
    let r = d.spectrum.total();
    let k = d.prefix.n();
    if r == 0 || k + r != d.n {
        return Err(Error::InconsistentCounts(format!(
            "prefix of size {k} plus {r} eigenvalues does not give n = {}",
            d.n
        )));
    }
    if d.prefix.class() != JacobiClass::Dissipative {
        return Err(Error::InvalidMatrix("prefix must be strictly dissipative".into()));
    }
    let nodes: Vec<(C64, usize)> = d.spectrum.entries.iter().map(|e| (e.z, e.mult)).collect();
    let data = inv_m_minus_data(&d.prefix, &nodes, tol)?;
    let fit = hermite_rational(&data, r - 1, r, true, tol)?;
    log::debug!("mixed recovery: Hermite system cond {:.3e}", fit.cond);
    let (a2, tail_b, tail_a) = peel_tail(&fit.rational, r, tol)?;
    let mut b: Vec<f64> = d.prefix.b_rest().to_vec();
    b.extend(&tail_b);
    let mut a: Vec<f64> = d.prefix.a_all().to_vec();
    a.push(a2.sqrt());
    a.extend(&tail_a);
    let j = FiniteJacobi::new(d.prefix.b1(), b, a)?;
    let res = eigen_residual(&j, &d.spectrum.expanded());
    if res > tol.roundtrip {
        return Err(Error::InconsistentData(format!("recovered matrix misses the data by {res:.3e}")));
    }
    Ok(j)
}

/// Self-adjoint mixed recovery: the interleaved prefix
/// `c_1, ..., c_{2n-1-j}` and `j` distinct real eigenvalues determine the
/// rest of the matrix.
pub fn sa_mixed_recover(prefix: &[f64], eigs: &[f64], n: usize, tol: &Tolerances) -> Result<FiniteJacobi> {
    let j = eigs.len();
    if n == 0 || j > 2 * n - 1 || prefix.len() + j != 2 * n - 1 {
        return Err(Error::InconsistentCounts(format!(
            "{} known entries and {j} eigenvalues do not fix a {n} x {n} matrix",
            prefix.len()
        )));
    }
    if prefix.iter().skip(1).step_by(2).any(|&a| !(a > 0.0)) {
        return Err(Error::InvalidMatrix("off-diagonal entries must be positive".into()));
    }
    for (i, x) in eigs.iter().enumerate() {
        if eigs[..i].iter().any(|y| (x - y).abs() <= tol.node * x.abs().max(1.0)) {
            return Err(Error::InconsistentData("eigenvalues must be distinct".into()));
        }
    }
    if j == 0 {
        let (b, a) = split_c(prefix);
        return FiniteJacobi::self_adjoint(b, a);
    }
    let r = j / 2;
    let (pb, pa) = split_c(prefix);
    let nodes: Vec<(C64, usize)> = eigs.iter().map(|&x| (C64::new(x, 0.0), 1)).collect();
    let inconsistent = |e: Error| match e {
        Error::SingularSystem { .. } => e,
        other => Error::NoConsistentMatrix(other.to_string()),
    };

    let (b_all, a_all) = if j % 2 == 0 {
        // prefix ends with b_k, k = n - r
        let head = FiniteJacobi::self_adjoint(pb.clone(), pa.clone())?;
        let data = inv_m_minus_data(&head, &nodes, tol)?;
        let fit = hermite_rational(&data, r - 1, r, true, tol).map_err(inconsistent)?;
        let (a2, tb, ta) = peel_tail(&fit.rational, r, tol).map_err(inconsistent)?;
        let mut b = pb;
        b.extend(tb);
        let mut a = pa;
        a.push(a2.sqrt());
        a.extend(ta);
        (b, a)
    } else {
        // prefix ends with a_k, k = n - r - 1; fit b_{k+1} - a_{k+1}^2 m_+(., k+1)
        let k = pb.len();
        let data = if k == 0 {
            shifted_m_minus_data(None, 0.0, &nodes, tol)?
        } else {
            let head = FiniteJacobi::self_adjoint(pb.clone(), pa[..k - 1].to_vec())?;
            shifted_m_minus_data(Some(&head), pa[k - 1] * pa[k - 1], &nodes, tol)?
        };
        let fit = hermite_rational(&data, r, r, true, tol).map_err(inconsistent)?;
        let psi = fit.rational;
        let bk1 = psi.num.coeff(r).re;
        let mut b = pb;
        b.push(bk1);
        let mut a = pa;
        if r > 0 {
            // L_{r-1} = b L_r - K_r
            let l_prev = psi.den.scale(C64::new(bk1, 0.0)).sub(&psi.num);
            let l_prev = ComplexPoly::new(l_prev.coeffs()[..r].to_vec());
            let phi = Rational::new(l_prev, psi.den.clone())?;
            let (a2, tb, ta) = peel_tail(&phi, r, tol).map_err(inconsistent)?;
            a.push(a2.sqrt());
            a.extend(ta);
            b.extend(tb);
        }
        (b, a)
    };
    let out = FiniteJacobi::self_adjoint(b_all, a_all).map_err(|e| Error::NoConsistentMatrix(e.to_string()))?;
    let zs: Vec<C64> = eigs.iter().map(|&x| C64::new(x, 0.0)).collect();
    let res = eigen_residual(&out, &zs);
    if res > tol.roundtrip {
        return Err(Error::InconsistentData(format!("recovered matrix misses the eigenvalues by {res:.3e}")));
    }
    Ok(out)
}

/// Recovers a matrix with `a_p = 0` from its `p` non-real eigenvalues, `j`
/// real eigenvalues and the trailing entries `c_{2p+j+1}, ..., c_{2n-1}`.
pub fn block_recover(d: &BlockData, tol: &Tolerances) -> Result<FiniteJacobi> {
    let (n, p, j) = (d.n, d.p, d.real_eigs.len());
    if p == 0 || p >= n {
        return Err(Error::InconsistentCounts(format!("need 1 <= p < n, got p = {p}, n = {n}")));
    }
    let m = n - p;
    if d.nonreal_spectrum.total() != p {
        return Err(Error::InconsistentCounts(format!(
            "{} non-real eigenvalues for a block of size {p}",
            d.nonreal_spectrum.total()
        )));
    }
    if j > m || d.known_tail.len() + 2 * p + j != 2 * n - 1 {
        return Err(Error::InconsistentCounts(format!(
            "{j} real eigenvalues and {} tail entries do not fix a block of size {m}",
            d.known_tail.len()
        )));
    }
    let j11 = reconstruct_from_spectrum(&d.nonreal_spectrum, tol)?;
    // the known entries form a suffix of J_22; reversing the basis makes it a prefix
    let flipped_prefix: Vec<f64> = d.known_tail.iter().rev().copied().collect();
    let j22 = sa_mixed_recover(&flipped_prefix, &d.real_eigs, m, tol)?.flipped()?;
    let mut b = j11.b_rest().to_vec();
    b.extend((1..=m).map(|k| j22.b(k).re));
    let mut a = j11.a_all().to_vec();
    a.push(0.0);
    a.extend(j22.a_all());
    FiniteJacobi::extended(j11.b1(), b, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::{spectrum, Eig};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn spec(entries: &[(C64, usize)]) -> Spectrum {
        Spectrum { entries: entries.iter().map(|&(z, mult)| Eig { z, mult }).collect() }
    }

    fn close(x: &FiniteJacobi, y: &FiniteJacobi, eps: f64) -> bool {
        x.n() == y.n()
            && (1..=x.n()).all(|k| (x.b(k) - y.b(k)).norm() < eps)
            && (1..x.n()).all(|k| (x.a(k) - y.a(k)).abs() < eps)
    }

    fn paper3() -> FiniteJacobi {
        FiniteJacobi::new(c(0.0, 4.0), vec![0.0, 0.0], vec![3.0 / 2f64.sqrt(), 1.0 / 2f64.sqrt()]).unwrap()
    }

    #[test]
    fn reconstruct_paper_example() {
        let j = reconstruct_from_spectrum(&spec(&[(c(0.0, 1.0), 2), (c(0.0, 2.0), 1)]), &tol()).unwrap();
        assert!(close(&j, &paper3(), 1e-10));
    }

    #[test]
    fn reconstruct_small_cases() {
        let j = reconstruct_from_spectrum(&spec(&[(c(0.0, 1.0), 2)]), &tol()).unwrap();
        assert!(close(&j, &FiniteJacobi::new(c(0.0, 2.0), vec![0.0], vec![1.0]).unwrap(), 1e-12));
        let j = reconstruct_from_spectrum(&spec(&[(c(0.4, 0.3), 1)]), &tol()).unwrap();
        assert_eq!(j.b1(), c(0.4, 0.3));
        let j = reconstruct_from_spectrum(&spec(&[(c(-1.0, 1.0), 1), (c(1.0, 1.0), 1)]), &tol()).unwrap();
        let want = FiniteJacobi::new(c(0.0, 2.0), vec![0.0], vec![2f64.sqrt()]).unwrap();
        assert!(close(&j, &want, 1e-12));
        assert!(matches!(
            reconstruct_from_spectrum(&spec(&[(c(0.0, -1.0), 1)]), &tol()),
            Err(Error::NonUpperHalfPlane(_))
        ));
    }

    #[test]
    fn reconstruct_fivefold() {
        let j = reconstruct_from_spectrum(&spec(&[(c(0.0, 1.0), 5)]), &tol()).unwrap();
        // a_1^2 = 8 from the continued fraction of m_5
        let want = [2.0 * 2f64.sqrt(), 7f64.sqrt() / 5f64.sqrt(), 4.0 / 35f64.sqrt(), 1.0 / 7f64.sqrt()];
        assert!((j.b1() - c(0.0, 5.0)).norm() < 1e-10);
        for (k, w) in want.iter().enumerate() {
            assert!((j.a(k + 1) - w).abs() < 1e-10);
        }
    }

    #[test]
    fn charfunction_route_agrees() {
        for s in [
            spec(&[(c(0.0, 1.0), 1)]),
            spec(&[(c(0.0, 1.0), 2), (c(0.0, 2.0), 1)]),
            spec(&[(c(-1.0, 1.0), 1), (c(1.0, 1.0), 1)]),
            spec(&[(c(0.3, 0.5), 1), (c(-1.2, 2.0), 2), (c(2.0, 0.1), 1)]),
        ] {
            let a = reconstruct_from_spectrum(&s, &tol()).unwrap();
            let b = reconstruct_from_charfunction(&CharFunction::new(s).unwrap(), &tol()).unwrap();
            assert!(close(&a, &b, 1e-9), "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn mixed_recover_paper_tail() {
        let prefix = paper3().block(1, 2).unwrap();
        let d = MixedData { n: 3, prefix, spectrum: spec(&[(c(0.0, 2.0), 1)]) };
        let j = mixed_recover(&d, &tol()).unwrap();
        assert!(close(&j, &paper3(), 1e-10));
    }

    #[test]
    fn mixed_recover_two_by_two() {
        let prefix = FiniteJacobi::new(c(0.0, 2.0), vec![], vec![]).unwrap();
        let d = MixedData { n: 2, prefix, spectrum: spec(&[(c(0.0, 1.0), 1)]) };
        let j = mixed_recover(&d, &tol()).unwrap();
        assert!((j.a(1) - 1.0).abs() < 1e-12);
        assert!(j.b(2).norm() < 1e-12);
    }

    #[test]
    fn sa_mixed_two_by_two_closed_form() {
        let (b1, a1, lam) = (0.7, 1.3, -0.4);
        let j = sa_mixed_recover(&[b1, a1], &[lam], 2, &tol()).unwrap();
        assert!((j.b(2).re - (lam + a1 * a1 / (b1 - lam))).abs() < 1e-12);
    }

    #[test]
    fn sa_mixed_generate_hide_recover() {
        let src = FiniteJacobi::self_adjoint(vec![0.3, -0.5, 1.1, 0.2], vec![0.9, 0.6, 1.4]).unwrap();
        let eig = spectrum(&src, &tol()).unwrap();
        let mut lams: Vec<f64> = eig.entries.iter().map(|e| e.z.re).collect();
        lams.sort_by(f64::total_cmp);
        let cs = c_sequence(&src);
        for j in 1..=4 {
            let got = sa_mixed_recover(&cs[..7 - j], &lams[..j], 4, &tol()).unwrap();
            assert!(close(&got, &src, 1e-8), "j = {j}: {got:?}");
        }
    }

    #[test]
    fn sa_mixed_rejects_shared_eigenvalue() {
        // prefix block [[0.7]] has eigenvalue 0.7; even case with r = 1 needs 1/m_- there
        let r = sa_mixed_recover(&[0.7, 1.0, 0.0], &[0.7, 2.0], 3, &tol());
        assert!(matches!(r, Err(Error::NoConsistentMatrix(_))), "{r:?}");
    }

    #[test]
    fn block_examples() {
        let d = BlockData {
            n: 2,
            p: 1,
            nonreal_spectrum: spec(&[(c(0.0, 3.0), 1)]),
            real_eigs: vec![7.0],
            known_tail: vec![],
        };
        let j = block_recover(&d, &tol()).unwrap();
        assert!((j.b1() - c(0.0, 3.0)).norm() < 1e-14);
        assert!((j.b(2).re - 7.0).abs() < 1e-14);
        assert_eq!(j.a(1), 0.0);
        let bad = BlockData { known_tail: vec![1.0], ..d };
        assert!(matches!(block_recover(&bad, &tol()), Err(Error::InconsistentCounts(_))));
    }

    #[test]
    fn block_generate_hide_recover() {
        let j22 = FiniteJacobi::self_adjoint(vec![0.4, -0.8], vec![1.2]).unwrap();
        let eig: Vec<f64> = spectrum(&j22, &tol()).unwrap().entries.iter().map(|e| e.z.re).collect();
        let cs = c_sequence(&j22);
        let d = BlockData {
            n: 4,
            p: 2,
            nonreal_spectrum: spec(&[(c(0.0, 1.0), 2)]),
            real_eigs: eig.clone(),
            known_tail: cs[2..].to_vec(),
        };
        let got = block_recover(&d, &tol()).unwrap();
        assert_eq!(got.class(), JacobiClass::Extended);
        assert!((got.b(3).re - 0.4).abs() < 1e-9 && (got.b(4).re + 0.8).abs() < 1e-9);
        assert!((got.a(3) - 1.2).abs() < 1e-9);
        assert!((got.a(1) - 1.0).abs() < 1e-9);
    }
}
