//! The octupolar parameterization.
//!
//! Every octupolar tensor can be rotated so that a global maximizer of its
//! potential sits at the north pole `(0, 0, 1)` and the `x1³` coefficient
//! vanishes. After scaling the north-pole value to 1, three parameters remain:
//! `alpha0 = a123`, `beta3 = a113` and `alpha2 = a222 >= 0`.

use std::f64::consts::PI;

use nalgebra::Vector3;

use crate::error::{Error, Result};
use crate::spectra::{z_eigenpairs, SolverConfig};
use crate::tensor3::{Rotation3, SymTensor3};

/// Reduced parameters `(alpha0, beta3, alpha2)`; the north-pole value `alpha3`
/// is normalized to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OctupolarParams {
    pub alpha0: f64,
    pub beta3: f64,
    pub alpha2: f64,
}

impl OctupolarParams {
    pub const fn new(alpha0: f64, beta3: f64, alpha2: f64) -> Self {
        Self {
            alpha0,
            beta3,
            alpha2,
        }
    }

    /// The tetrahedral point `(0, -1/2, sqrt(2)/2)`.
    pub fn apex() -> Self {
        Self::new(0.0, -0.5, std::f64::consts::FRAC_1_SQRT_2)
    }

    /// `(alpha0, beta3, alpha2) -> (-alpha0, beta3, -alpha2)`, the image under
    /// the reflection `x2 -> -x2`.
    pub fn mirrored(&self) -> Self {
        Self::new(-self.alpha0, self.beta3, -self.alpha2)
    }

    /// The octupolar potential of `A(alpha0, beta3, alpha2)` at `x`.
    pub fn potential(&self, x: &Vector3<f64>) -> f64 {
        let Self {
            alpha0: a0,
            beta3: b3,
            alpha2: a2,
        } = *self;
        let (x1, x2, x3) = (x[0], x[1], x[2]);
        a2 * x2.powi(3) + x3.powi(3) + 6.0 * a0 * x1 * x2 * x3 + 3.0 * b3 * x1 * x1 * x3
            - 3.0 * a2 * x1 * x1 * x2
            - 3.0 * (1.0 + b3) * x2 * x2 * x3
    }
}

/// The seven independent entries of a general traceless tensor.
///
/// `alpha_i = a_iii`, `alpha0 = a123`, `beta1 = a122`, `beta2 = a233`,
/// `beta3 = a113`; the remaining entries follow from tracelessness.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GeneralParams {
    pub alpha0: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub beta3: f64,
}

/// Polar coordinates on the base disk: `alpha0 = rho cos chi`,
/// `beta3 = -1/2 + rho sin chi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    pub rho: f64,
    pub chi: f64,
}

impl PolarPoint {
    pub fn new(rho: f64, chi: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&rho) {
            return Err(Error::Parameter(format!("rho = {rho} is outside [0, 1/2]")));
        }
        if !chi.is_finite() {
            return Err(Error::Parameter(format!("chi = {chi} is not finite")));
        }
        Ok(Self { rho, chi })
    }
}

pub fn build_tensor(p: &OctupolarParams) -> Result<SymTensor3> {
    let OctupolarParams {
        alpha0,
        beta3,
        alpha2,
    } = *p;
    if !(alpha2 >= 0.0) {
        return Err(Error::Parameter(format!(
            "alpha2 = {alpha2} must be nonnegative"
        )));
    }
    if !(alpha0.is_finite() && beta3.is_finite() && alpha2.is_finite()) {
        return Err(Error::Parameter("non-finite parameter".into()));
    }
    SymTensor3::from_sparse([
        ([0, 0, 1], -alpha2),
        ([0, 0, 2], beta3),
        ([0, 1, 2], alpha0),
        ([1, 1, 1], alpha2),
        ([1, 1, 2], -1.0 - beta3),
        ([2, 2, 2], 1.0),
    ])
}

pub fn build_general(g: &GeneralParams) -> SymTensor3 {
    let GeneralParams {
        alpha0,
        alpha1,
        alpha2,
        alpha3,
        beta1,
        beta2,
        beta3,
    } = *g;
    SymTensor3::from_components([
        alpha1,
        -alpha2 - beta2,
        beta3,
        beta1,
        alpha0,
        -alpha1 - beta1,
        alpha2,
        -alpha3 - beta3,
        beta2,
        alpha3,
    ])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Admissibility {
    pub inside: bool,
    pub margin: f64,
}

/// Whether the north pole is a local maximum: `3 - 4 alpha0² - 4 beta3² - 4 beta3 >= 0`.
pub fn admissible(alpha0: f64, beta3: f64) -> Admissibility {
    let margin = 3.0 - 4.0 * alpha0 * alpha0 - 4.0 * beta3 * beta3 - 4.0 * beta3;
    Admissibility {
        inside: margin >= 0.0,
        margin,
    }
}

pub fn polar_to_params(pt: &PolarPoint) -> (f64, f64) {
    let (s, c) = pt.chi.sin_cos();
    (pt.rho * c, -0.5 + pt.rho * s)
}

/// Inverse of [`polar_to_params`], with `chi` in `(-pi, pi]` and `chi = 0` at
/// the disk center. `rho` is not clamped to the base disk.
pub fn params_to_polar(alpha0: f64, beta3: f64) -> (f64, f64) {
    let dy = beta3 + 0.5;
    let rho = alpha0.hypot(dy);
    if rho == 0.0 {
        return (0.0, 0.0);
    }
    let mut chi = dy.atan2(alpha0);
    if chi <= -PI {
        chi += 2.0 * PI;
    }
    (rho, chi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalFormStatus {
    Regular,
    /// The normalized parameters sit on the admissibility circle, where the
    /// north pole is only a degenerate maximum.
    Boundary,
    /// The input is the zero tensor.
    DegenerateZero,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalForm {
    pub q: Rotation3,
    pub scale: f64,
    pub params: OctupolarParams,
    pub status: NormalFormStatus,
}

/// Rotates and scales a traceless tensor into `A(alpha0, beta3, alpha2)`.
///
/// `rotate(t, q) / scale` equals `build_tensor(params)` within `tol`. The
/// maximizer sent to the north pole is the lexicographically largest among
/// the global maximizers, and the in-plane angle is the smallest nonnegative
/// one giving `a111 = 0` and `a222 >= 0`.
pub fn normal_form(t: &SymTensor3, tol: f64) -> Result<NormalForm> {
    normal_form_with(t, tol, &SolverConfig::default())
}

pub fn normal_form_with(t: &SymTensor3, tol: f64, cfg: &SolverConfig) -> Result<NormalForm> {
    let size = t.max_abs();
    if size <= tol {
        return Ok(NormalForm {
            q: Rotation3::identity(),
            scale: 0.0,
            params: OctupolarParams::new(0.0, 0.0, 0.0),
            status: NormalFormStatus::DegenerateZero,
        });
    }
    if !t.is_traceless(tol.max(1e-12 * size)) {
        return Err(Error::Parameter("tensor is not traceless".into()));
    }

    let pairs = z_eigenpairs(t, cfg)?;
    let lambda_max = pairs[0].lambda;
    let tie = 1e-9 * lambda_max.abs().max(1.0);
    let top = pairs
        .iter()
        .filter(|p| p.lambda >= lambda_max - tie)
        .map(|p| p.x)
        .max_by(|a, b| {
            a.iter()
                .zip(b.iter())
                .map(|(u, v)| u.total_cmp(v))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .expect("at least one eigenpair");

    let r1 = frame_with_pole(&top);
    let t1 = t.rotate(&r1);

    // With the pole critical, the equatorial restriction is
    // a111 cos 3θ - a222 sin 3θ.
    let delta = t1.get(1, 1, 1).atan2(t1.get(0, 0, 0));
    let psi = (delta - PI / 2.0).rem_euclid(2.0 * PI) / 3.0;
    let q = Rotation3::about_z(psi).then_after(&r1);
    let t2 = t.rotate(&q);

    let scale = t2.get(2, 2, 2);
    let params = OctupolarParams::new(
        t2.get(0, 1, 2) / scale,
        t2.get(0, 0, 2) / scale,
        (t2.get(1, 1, 1) / scale).max(0.0),
    );
    let reduced = build_tensor(&params)?;
    let normalized = t2.scaled(1.0 / scale);
    let err = normalized
        .components()
        .iter()
        .zip(reduced.components())
        .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
    if err > tol.max(1e-9) {
        return Err(Error::Numerical(format!(
            "normal form mismatch {err:.3e} exceeds tolerance"
        )));
    }

    let status = if admissible(params.alpha0, params.beta3).margin.abs() <= 1e-8 {
        NormalFormStatus::Boundary
    } else {
        NormalFormStatus::Regular
    };
    Ok(NormalForm {
        q,
        scale,
        params,
        status,
    })
}

/// Proper rotation whose third row is `pole`, so the rotated tensor has the
/// pole direction at `(0, 0, 1)`.
fn frame_with_pole(pole: &Vector3<f64>) -> Rotation3 {
    let k = pole.iamin();
    let mut e = Vector3::zeros();
    e[k] = 1.0;
    let u = (e - pole * pole.dot(&e)).normalize();
    let v = pole.cross(&u);
    let m = nalgebra::Matrix3::from_rows(&[u.transpose(), v.transpose(), pole.transpose()]);
    Rotation3::new(m, 1e-9).expect("orthonormal frame")
}
