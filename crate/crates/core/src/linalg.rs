//! Dense complex matrices on top of nalgebra, plus the few helpers the
//! spectral algorithms want in their own terms.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

type C64 = Complex64;

/// Dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix(pub DMatrix<C64>);

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        Self(DMatrix::from_fn(rows, cols, f))
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.0.is_square()
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        self.0.column(j).iter().copied().collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[C64]) {
        for (i, x) in v.iter().enumerate() {
            self.0[(i, j)] = *x;
        }
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        (&self.0 * nalgebra::DVector::from_column_slice(v)).iter().copied().collect()
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.0.norm()
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, ij: (usize, usize)) -> &C64 {
        &self.0[ij]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, ij: (usize, usize)) -> &mut C64 {
        &mut self.0[ij]
    }
}

pub fn dot(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

pub fn norm2(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Diagonal similarity scaling by powers of two that equalises row and
/// column norms. Preserves the zero pattern, so Hessenberg stays Hessenberg.
pub fn balance(a: &mut CMatrix) {
    let n = a.rows();
    let radix = 2.0_f64;
    let sqrdx = radix * radix;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].l1_norm();
                    r += a[(i, j)].l1_norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut g = r / radix;
            let mut f = 1.0;
            while c < g {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while c > g {
                f /= radix;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let g = 1.0 / f;
                for j in 0..n {
                    a[(i, j)] *= g;
                }
                for j in 0..n {
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

/// Eigenvalues of a general square complex matrix: balancing, then the
/// complex Schur form.
pub fn eigenvalues(a: &CMatrix, max_iter_per_eig: usize) -> Result<Vec<C64>> {
    assert!(a.is_square());
    let n = a.rows();
    if n == 0 {
        return Ok(vec![]);
    }
    let mut h = a.clone();
    balance(&mut h);
    let schur = nalgebra::Schur::try_new(h.0, f64::EPSILON, max_iter_per_eig * n)
        .ok_or(Error::NoConvergence(max_iter_per_eig * n))?;
    let t = schur.unpack().1;
    Ok((0..n).map(|i| t[(i, i)]).collect())
}

pub fn det(a: &CMatrix) -> C64 {
    a.0.clone().lu().determinant()
}

/// Outcome of a column-pivoted least-squares solve.
#[derive(Clone, Debug)]
pub struct PivotedSolve {
    pub x: Vec<C64>,
    /// Numerical rank at the requested threshold.
    pub rank: usize,
    /// `|R_00| / |R_kk|` over the trailing diagonal of `R`.
    pub cond: f64,
}

/// Solves the square system `A x = b` by QR with column pivoting. Fails with
/// `SingularSystem` when the numerical rank, judged by
/// `|R_kk| > rank_tol * |R_00|`, is below `n`.
pub fn qr_pivot_solve(a: &CMatrix, b: &[C64], rank_tol: f64) -> Result<PivotedSolve> {
    assert!(a.is_square());
    let n = a.rows();
    if n == 0 {
        return Ok(PivotedSolve { x: vec![], rank: 0, cond: 1.0 });
    }
    let qr = a.0.clone().col_piv_qr();
    let r = qr.r();
    let r00 = r[(0, 0)].norm();
    let rank = (0..n).take_while(|&k| r00 > 0.0 && r[(k, k)].norm() > rank_tol * r00).count();
    let rmin = r[(n - 1, n - 1)].norm();
    let cond = if rmin == 0.0 { f64::INFINITY } else { r00 / rmin };
    if rank < n {
        return Err(Error::SingularSystem { rank, size: n, cond });
    }
    let x = qr
        .solve(&nalgebra::DVector::from_column_slice(b))
        .ok_or(Error::SingularSystem { rank, size: n, cond })?;
    Ok(PivotedSolve { x: x.iter().copied().collect(), rank, cond })
}

/// All eigenvalues of a real symmetric tridiagonal matrix, sorted ascending.
pub fn symmetric_tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    assert!(off.len() + 1 == n || n == 0);
    let m = DMatrix::<f64>::from_fn(n, n, |i, j| {
        if i == j {
            diag[i]
        } else if i.abs_diff(j) == 1 {
            off[i.min(j)]
        } else {
            0.0
        }
    });
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}
