use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical tolerances shared by every operation.
///
/// Relative tolerances are multiplied by the natural scale of the quantity
/// they guard (coefficient norm, matrix norm, `max(1, |z|)`); the doc on each
/// field says which one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Trailing coefficients below `trim * max|c|` are dropped.
    pub trim: f64,
    /// Imaginary residue allowed on coefficients declared real, relative to the coefficient norm.
    pub real: f64,
    /// Residual of Hermite interpolation conditions.
    pub interp: f64,
    /// Reconstruction round trips (spectrum and entries).
    pub roundtrip: f64,
    /// Root clustering radius, times `max(1, |z|)`.
    pub cluster: f64,
    /// Root chain residual, times the matrix norm.
    pub chain: f64,
    /// Spectral sum checks, times `max(1, Im b1)`.
    pub spec: f64,
    /// Three-term recursion residual, times the local scale.
    pub rec: f64,
    /// Continued-fraction peel: rebuilt entries and vanishing imaginary parts.
    pub peel: f64,
    /// Relations between neighbouring m-functions.
    pub chainrel: f64,
    /// Normalisation `lim z m(z) = -1`.
    pub asym: f64,
    /// Smallest admissible `a_k^2` before a peel is declared degenerate.
    pub a2_min: f64,
    /// Negative eigenvalues of a kernel Gram matrix tolerated as round-off.
    pub psd: f64,
    /// Minimum distance from a pole before evaluation is refused.
    pub pole: f64,
    /// Minimum distance between interpolation nodes.
    pub node: f64,
    /// `U^* U - I` in the triangular-to-Jacobi conversion.
    pub unitary: f64,
    /// `U J - J_tri U`, times the norm of the triangular matrix.
    pub conv: f64,
    /// Moment and Hankel checks.
    pub mom: f64,
    /// Defining equations of closed-form eigenvalues.
    pub eig: f64,
    /// Size above which the spectrum is computed from the dense matrix instead of the characteristic polynomial.
    pub dense_crossover: usize,
    /// QR sweeps allowed per eigenvalue.
    pub max_iter: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            trim: 1e-10,
            real: 1e-10,
            interp: 1e-8,
            roundtrip: 1e-6,
            cluster: 1e-6,
            chain: 1e-7,
            spec: 1e-8,
            rec: 1e-12,
            peel: 1e-8,
            chainrel: 1e-8,
            asym: 1e-6,
            a2_min: 1e-12,
            psd: 1e-10,
            pole: 1e-12,
            node: 1e-10,
            unitary: 1e-8,
            conv: 1e-7,
            mom: 1e-10,
            eig: 1e-10,
            dense_crossover: 24,
            max_iter: 60,
        }
    }
}

impl Tolerances {
    /// Rejects non-positive or non-finite tolerances.
    pub fn validate(&self) -> Result<()> {
        let fields = [
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
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Parse(format!("tolerance {name} must be positive, got {v}")));
            }
        }
        if self.max_iter == 0 {
            return Err(Error::Parse("max_iter must be positive".into()));
        }
        Ok(())
    }

    /// Sets a tolerance by its field name; used by `--tol-<name>` flags.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        let slot = match name {
            "trim" => &mut self.trim,
            "real" => &mut self.real,
            "interp" => &mut self.interp,
            "roundtrip" => &mut self.roundtrip,
            "cluster" => &mut self.cluster,
            "chain" => &mut self.chain,
            "spec" => &mut self.spec,
            "rec" => &mut self.rec,
            "peel" => &mut self.peel,
            "chainrel" => &mut self.chainrel,
            "asym" => &mut self.asym,
            "a2_min" | "a2-min" => &mut self.a2_min,
            "psd" => &mut self.psd,
            "pole" => &mut self.pole,
            "node" => &mut self.node,
            "unitary" => &mut self.unitary,
            "conv" => &mut self.conv,
            "mom" => &mut self.mom,
            "eig" => &mut self.eig,
            other => return Err(Error::Parse(format!("unknown tolerance `{other}`"))),
        };
        *slot = value;
        self.validate()
    }
}
