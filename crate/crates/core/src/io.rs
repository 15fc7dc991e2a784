//! JSON file formats. Complex numbers are `[re, im]` pairs throughout.

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inverse::{BlockData, MixedData};
use crate::jacobi::{Eig, FiniteJacobi, Spectrum};
use crate::linalg::CMatrix;
use crate::livsic::{ConversionResult, TriangularModel};
use crate::mfunc::JFraction;

type C64 = Complex64;

/// A type with a JSON representation.
pub trait Wire: Sized {
    type Repr: Serialize + DeserializeOwned;
    fn to_repr(&self) -> Self::Repr;
    fn from_repr(r: Self::Repr) -> Result<Self>;
}

pub fn to_json<T: Wire>(x: &T) -> String {
    serde_json::to_string_pretty(&x.to_repr()).expect("plain data serialises")
}

pub fn to_value<T: Wire>(x: &T) -> serde_json::Value {
    serde_json::to_value(x.to_repr()).expect("plain data serialises")
}

pub fn from_json<T: Wire>(s: &str) -> Result<T> {
    T::from_repr(serde_json::from_str(s)?)
}

pub fn from_value<T: Wire>(v: serde_json::Value) -> Result<T> {
    T::from_repr(serde_json::from_value(v)?)
}

fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

fn unpair(p: [f64; 2]) -> C64 {
    C64::new(p[0], p[1])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixRepr {
    pub n: usize,
    pub b1: [f64; 2],
    pub b: Vec<f64>,
    pub a: Vec<f64>,
}

impl Wire for FiniteJacobi {
    type Repr = MatrixRepr;
    fn to_repr(&self) -> MatrixRepr {
        MatrixRepr { n: self.n(), b1: pair(self.b1()), b: self.b_rest().to_vec(), a: self.a_all().to_vec() }
    }
    fn from_repr(r: MatrixRepr) -> Result<Self> {
        if r.n == 0 || r.b.len() + 1 != r.n || r.a.len() + 1 != r.n {
            return Err(Error::Parse(format!(
                "n = {} needs {} entries in b and a, got {} and {}",
                r.n,
                r.n.saturating_sub(1),
                r.b.len(),
                r.a.len()
            )));
        }
        FiniteJacobi::any(unpair(r.b1), r.b, r.a)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EigRepr {
    pub z: [f64; 2],
    pub mult: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumRepr {
    pub eigs: Vec<EigRepr>,
}

impl Wire for Spectrum {
    type Repr = SpectrumRepr;
    fn to_repr(&self) -> SpectrumRepr {
        SpectrumRepr { eigs: self.entries.iter().map(|e| EigRepr { z: pair(e.z), mult: e.mult }).collect() }
    }
    fn from_repr(r: SpectrumRepr) -> Result<Self> {
        let entries = r
            .eigs
            .into_iter()
            .map(|e| {
                if e.mult == 0 || !(e.z[0].is_finite() && e.z[1].is_finite()) {
                    return Err(Error::Parse(format!("bad eigenvalue entry {:?} x {}", e.z, e.mult)));
                }
                Ok(Eig { z: unpair(e.z), mult: e.mult })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Spectrum { entries })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JFractionRepr {
    pub b1: [f64; 2],
    pub chain: Vec<[f64; 2]>,
}

impl Wire for JFraction {
    type Repr = JFractionRepr;
    fn to_repr(&self) -> JFractionRepr {
        JFractionRepr { b1: pair(self.b1), chain: self.chain.iter().map(|&(a2, b)| [a2, b]).collect() }
    }
    fn from_repr(r: JFractionRepr) -> Result<Self> {
        Ok(JFraction { b1: unpair(r.b1), chain: r.chain.into_iter().map(|[a2, b]| (a2, b)).collect() })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixedRepr {
    pub n: usize,
    pub prefix: MatrixRepr,
    pub spectrum: SpectrumRepr,
}

impl Wire for MixedData {
    type Repr = MixedRepr;
    fn to_repr(&self) -> MixedRepr {
        MixedRepr { n: self.n, prefix: self.prefix.to_repr(), spectrum: self.spectrum.to_repr() }
    }
    fn from_repr(r: MixedRepr) -> Result<Self> {
        Ok(MixedData { n: r.n, prefix: FiniteJacobi::from_repr(r.prefix)?, spectrum: Spectrum::from_repr(r.spectrum)? })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockRepr {
    pub n: usize,
    pub p: usize,
    pub nonreal_spectrum: SpectrumRepr,
    pub real_eigs: Vec<f64>,
    pub known_tail: Vec<f64>,
}

impl Wire for BlockData {
    type Repr = BlockRepr;
    fn to_repr(&self) -> BlockRepr {
        BlockRepr {
            n: self.n,
            p: self.p,
            nonreal_spectrum: self.nonreal_spectrum.to_repr(),
            real_eigs: self.real_eigs.clone(),
            known_tail: self.known_tail.clone(),
        }
    }
    fn from_repr(r: BlockRepr) -> Result<Self> {
        Ok(BlockData {
            n: r.n,
            p: r.p,
            nonreal_spectrum: Spectrum::from_repr(r.nonreal_spectrum)?,
            real_eigs: r.real_eigs,
            known_tail: r.known_tail,
        })
    }
}

impl Wire for TriangularModel {
    type Repr = TriangularModel;
    fn to_repr(&self) -> TriangularModel {
        self.clone()
    }
    fn from_repr(r: TriangularModel) -> Result<Self> {
        TriangularModel::new(r.alphas, r.betas)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConversionRepr {
    pub jacobi: MatrixRepr,
    pub u: Vec<Vec<[f64; 2]>>,
}

impl Wire for ConversionResult {
    type Repr = ConversionRepr;
    fn to_repr(&self) -> ConversionRepr {
        ConversionRepr { jacobi: self.jacobi.to_repr(), u: self.u.to_repr() }
    }
    fn from_repr(r: ConversionRepr) -> Result<Self> {
        let u = CMatrix::from_repr(r.u)?;
        let jacobi = FiniteJacobi::from_repr(r.jacobi)?;
        if u.rows() != jacobi.n() || u.cols() != jacobi.n() {
            return Err(Error::Parse(format!("U is {}x{} but J has size {}", u.rows(), u.cols(), jacobi.n())));
        }
        Ok(ConversionResult { jacobi, u })
    }
}

/// Row-major nested arrays of `[re, im]`.
impl Wire for CMatrix {
    type Repr = Vec<Vec<[f64; 2]>>;
    fn to_repr(&self) -> Self::Repr {
        (0..self.rows()).map(|i| (0..self.cols()).map(|j| pair(self[(i, j)])).collect()).collect()
    }
    fn from_repr(r: Self::Repr) -> Result<Self> {
        let rows = r.len();
        let cols = r.first().map_or(0, |x| x.len());
        if r.iter().any(|x| x.len() != cols) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        Ok(CMatrix::from_fn(rows, cols, |i, j| unpair(r[i][j])))
    }
}
