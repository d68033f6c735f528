//! The E-characteristic polynomial of the reduced tensor.
//!
//! `φ(λ)` is the resultant of the homogenized eigen-system as a function of
//! `λ`. It has degree 14, contains only even powers and is divisible by
//! `λ² − 1`. It is reconstructed from Macaulay determinant ratios sampled at
//! Chebyshev nodes on `[−2, 2]`.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use super::macaulay::{build_macaulay, eigen_system};
use super::poly::UnivariatePoly;
use crate::error::{Error, Result};
use crate::octupolar::{build_tensor, OctupolarParams};
use crate::tensor3::SymTensor3;

pub const ECHAR_DEGREE: usize = 14;
const N_SAMPLES: usize = 40;
const HALF_WIDTH: f64 = 2.0;
const WEIGHT_POWER: i32 = 7;
const PERTURB_RADIUS: f64 = 0.5;
const PERTURB_SAMPLES: usize = 48;
/// Weighted fit residual gate, relative to the largest weighted sample.
const FIT_GATE: f64 = 1e-7;

/// A fitted E-characteristic polynomial with its diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct EcharFit {
    /// `φ(λ)`, degree 14, odd coefficients set to zero.
    pub phi: UnivariatePoly,
    /// `φ(λ) / (λ² − 1) = Σ c_{2i} λ^{2i}`, degree 12.
    pub reduced: UnivariatePoly,
    /// Raw fitted coefficients before the odd ones were zeroed.
    pub raw: Vec<f64>,
    /// `max |odd coefficient| / max |coefficient|` of the raw fit.
    pub odd_ratio: f64,
    /// `max |remainder| / max |coefficient|` of the division by `λ² − 1`.
    pub remainder_ratio: f64,
    /// Number of samples whose extraneous factor was singular and which
    /// were evaluated by perturbation.
    pub perturbed_samples: usize,
}

/// `φ(λ)` at one point, sign-normalized so that `φ = (λ² − 1) Σ c_{2i} λ^{2i}`
/// with `c0 = Res(Tx²)²`. Returns whether the perturbation path was used.
pub fn echar_value(t: &SymTensor3, lambda: f64) -> Result<(f64, bool)> {
    let sys = build_macaulay(&eigen_system(t, lambda))?;
    let (value, perturbed) = match sys.determinant_ratio() {
        Ok(v) => (v, false),
        Err(Error::Degenerate(_)) => (sys.perturbed_ratio(PERTURB_RADIUS, PERTURB_SAMPLES), true),
        Err(e) => return Err(e),
    };
    Ok((-value, perturbed))
}

pub fn echar_nodes() -> Vec<f64> {
    (0..N_SAMPLES)
        .map(|k| HALF_WIDTH * (std::f64::consts::PI * (k as f64 + 0.5) / N_SAMPLES as f64).cos())
        .collect()
}

pub fn echar_fit_tensor(t: &SymTensor3) -> Result<EcharFit> {
    let nodes = echar_nodes();
    let samples: Vec<Result<(f64, bool)>> = nodes.par_iter().map(|&l| echar_value(t, l)).collect();
    let mut lambdas = Vec::new();
    let mut values = Vec::new();
    let mut perturbed_samples = 0;
    for (&l, s) in nodes.iter().zip(samples) {
        let (v, pert) = s?;
        if v.is_finite() {
            lambdas.push(l);
            values.push(v);
            perturbed_samples += pert as usize;
        }
    }
    if lambdas.len() < 8 {
        return Err(Error::Numerical(format!(
            "only {} usable samples",
            lambdas.len()
        )));
    }

    let n = lambdas.len();
    let cols = ECHAR_DEGREE + 1;
    let weights: Vec<f64> = lambdas
        .iter()
        .map(|l| (1.0 + l * l).powi(-WEIGHT_POWER))
        .collect();
    let a = DMatrix::from_fn(n, cols, |i, k| {
        weights[i] * (lambdas[i] / HALF_WIDTH).powi(k as i32)
    });
    let b = DVector::from_fn(n, |i, _| weights[i] * values[i]);
    let svd = a.clone().svd(true, true);
    let sol = svd
        .solve(&b, 1e-14)
        .map_err(|e| Error::Numerical(format!("least squares failed: {e}")))?;

    let residual = (&a * &sol - &b).amax();
    let scale = b.amax();
    if !(residual <= FIT_GATE * scale.max(f64::MIN_POSITIVE)) && scale > 0.0 {
        return Err(Error::Numerical(format!(
            "fit residual {:.2e} exceeds gate",
            residual / scale
        )));
    }

    let raw: Vec<f64> = sol
        .iter()
        .enumerate()
        .map(|(k, c)| c / HALF_WIDTH.powi(k as i32))
        .collect();
    let max = raw.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    let odd_max = raw
        .iter()
        .skip(1)
        .step_by(2)
        .fold(0.0_f64, |m, c| m.max(c.abs()));
    let odd_ratio = if max > 0.0 { odd_max / max } else { 0.0 };

    let even: Vec<f64> = raw
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 0 { c } else { 0.0 })
        .collect();
    let phi = UnivariatePoly::new(even);
    let (reduced, rem) = phi.div_rem(&UnivariatePoly::new(vec![-1.0, 0.0, 1.0]));
    let remainder_ratio = if max > 0.0 {
        rem.max_abs_coeff() / max
    } else {
        0.0
    };

    Ok(EcharFit {
        phi,
        reduced,
        raw,
        odd_ratio,
        remainder_ratio,
        perturbed_samples,
    })
}

pub fn echar_fit(p: &OctupolarParams) -> Result<EcharFit> {
    echar_fit_tensor(&build_tensor(p)?)
}

/// The E-characteristic polynomial `φ(λ)` of `A(alpha0, beta3, alpha2)`.
pub fn echar_poly(p: &OctupolarParams) -> Result<UnivariatePoly> {
    Ok(echar_fit(p)?.phi)
}
