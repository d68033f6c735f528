//! Spectral and phase-surface analysis of octupolar tensors.
//!
//! An octupolar tensor is a fully symmetric, traceless, third-order tensor on
//! three-dimensional space. Its cubic form restricted to the unit sphere (the
//! octupolar potential) has either four or three maxima in the generic case.
//! This crate provides:
//!
//! * [`tensor3`]: storage, rotation and contraction of symmetric order-3 tensors;
//! * [`octupolar`]: the three-parameter normal form `A(alpha0, beta3, alpha2)`;
//! * [`resultants`]: Macaulay resultants, the closed-form `Res(Ax²)` and the
//!   E-characteristic polynomial, plus univariate real-root isolation;
//! * [`spectra`]: Z-eigenpairs by dense multistart, projected-Hessian
//!   classification and maxima counting;
//! * [`surfaces`]: the dome and separatrix surfaces over the parameter disk;
//! * [`cli`]: the command-line front end used by the `octupolar` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must fail these checks

pub mod cli;
pub mod error;
pub mod octupolar;
pub mod resultants;
pub mod spectra;
pub mod surfaces;
pub mod tensor3;

pub use error::{Error, Result};
pub use octupolar::{OctupolarParams, PolarPoint};
pub use resultants::UnivariatePoly;
pub use spectra::{SolverConfig, ZEigenpair};
pub use tensor3::{Rotation3, SymTensor3};
