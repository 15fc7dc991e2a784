//! Direct and inverse spectral analysis of dissipative Jacobi matrices.

pub mod config;
pub mod error;
pub mod linalg;
pub mod livsic;
pub mod mfunc;
pub mod inverse;
pub mod io;
pub mod jacobi;
pub mod poly;
pub mod semiinf;
pub mod verify;

pub use config::Tolerances;
pub use error::{Error, ErrorKind, Result};
