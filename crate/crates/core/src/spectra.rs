//! Real Z-eigenpairs and critical-point classification on the unit sphere.
//!
//! The critical points of `x ↦ Tx³` on the sphere are the solutions of
//! `Tx² = λx`, `‖x‖ = 1`. They are found by Newton refinement from a dense
//! Fibonacci lattice of starting directions; the result depends only on the
//! [`SolverConfig`], not on thread scheduling.

use nalgebra::{Matrix2, Matrix3, Matrix4, SymmetricEigen, Vector3, Vector4};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::octupolar::{build_tensor, OctupolarParams};
use crate::tensor3::{Rotation3, SymTensor3};

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Number of lattice starting points on the sphere.
    pub n_seeds: usize,
    /// Seed for the random rotation applied to the lattice.
    pub seed: u64,
    /// Acceptance bound on `‖Tx² − λx‖`, relative to `max(1, max|t_ijk|)`.
    pub residual_tol: f64,
    pub step_tol: f64,
    pub max_iter: usize,
    /// Two eigenvectors closer than this angle (radians) are merged.
    pub dedup_angle: f64,
    /// `|μ| <= class_tol * max(1, |λ|)` marks a degenerate critical point.
    pub class_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            n_seeds: 2000,
            seed: 0,
            residual_tol: 1e-10,
            step_tol: 1e-13,
            max_iter: 100,
            dedup_angle: 1e-6,
            class_tol: 1e-7,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CriticalKind {
    Maximum,
    Minimum,
    Saddle,
    Degenerate,
}

impl CriticalKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Maximum => "maximum",
            Self::Minimum => "minimum",
            Self::Saddle => "saddle",
            Self::Degenerate => "degenerate",
        }
    }
}

/// A critical point of the potential: `Tx² = λx` with `x` a unit vector.
///
/// `mu2 >= mu3` are the projected-Hessian eigenvalues on the tangent plane
/// (the third eigenvalue, along `x`, is always 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZEigenpair {
    pub lambda: f64,
    pub x: Vector3<f64>,
    pub mu2: f64,
    pub mu3: f64,
    pub kind: CriticalKind,
}

/// Fibonacci lattice of `n` nearly uniform points on the unit sphere.
pub fn fibonacci_sphere(n: usize) -> Vec<Vector3<f64>> {
    let golden = std::f64::consts::PI * (1.0 + 5f64.sqrt());
    (0..n)
        .map(|k| {
            let i = k as f64 + 0.5;
            let polar = (1.0 - 2.0 * i / n as f64).acos();
            let azimuth = golden * i;
            let (sp, cp) = polar.sin_cos();
            let (sa, ca) = azimuth.sin_cos();
            Vector3::new(ca * sp, sa * sp, cp)
        })
        .collect()
}

struct Refined {
    lambda: f64,
    x: Vector3<f64>,
    residual: f64,
}

fn refine(t: &SymTensor3, start: Vector3<f64>, cfg: &SolverConfig) -> Refined {
    let mut x = start.normalize();
    for _ in 0..cfg.max_iter {
        let ax = t.contract1(&x);
        let ax2 = ax * x;
        let lambda = x.dot(&ax2);
        let mut jac = Matrix4::zeros();
        jac.fixed_view_mut::<3, 3>(0, 0)
            .copy_from(&(ax * 2.0 - Matrix3::identity() * lambda));
        jac.fixed_view_mut::<3, 1>(0, 3).copy_from(&-x);
        jac.fixed_view_mut::<1, 3>(3, 0).copy_from(&x.transpose());
        let r = ax2 - x * lambda;
        let rhs = -Vector4::new(r[0], r[1], r[2], 0.5 * (x.norm_squared() - 1.0));
        let Some(dz) = jac.lu().solve(&rhs) else {
            break;
        };
        let dx = Vector3::new(dz[0], dz[1], dz[2]);
        if !dx.iter().all(|v| v.is_finite()) {
            break;
        }
        x = (x + dx).normalize();
        if dx.norm() <= cfg.step_tol {
            break;
        }
    }
    let ax2 = t.contract2(&x);
    let lambda = x.dot(&ax2);
    Refined {
        lambda,
        x,
        residual: (ax2 - x * lambda).norm(),
    }
}

/// `λ(I + xxᵀ) − 2(Tx)`, the Lagrangian Hessian projected onto the sphere.
pub fn projected_hessian(t: &SymTensor3, x: &Vector3<f64>, lambda: f64) -> Matrix3<f64> {
    (Matrix3::identity() + x * x.transpose()) * lambda - t.contract1(x) * 2.0
}

/// Eigenvalues `(mu2, mu3)`, `mu2 >= mu3`, of the projected Hessian restricted
/// to the tangent plane at `x`.
pub fn tangent_eigenvalues(t: &SymTensor3, x: &Vector3<f64>, lambda: f64) -> (f64, f64) {
    let h = projected_hessian(t, x, lambda);
    let k = x.iamin();
    let mut e = Vector3::zeros();
    e[k] = 1.0;
    let u = (e - x * x.dot(&e)).normalize();
    let v = x.cross(&u);
    let hu = h * u;
    let hv = h * v;
    let m = Matrix2::new(u.dot(&hu), u.dot(&hv), v.dot(&hu), v.dot(&hv));
    let eig = SymmetricEigen::new(m).eigenvalues;
    (eig.max(), eig.min())
}

pub fn classify(mu2: f64, mu3: f64, lambda: f64, class_tol: f64) -> CriticalKind {
    let tol = class_tol * lambda.abs().max(1.0);
    if mu2.abs().min(mu3.abs()) <= tol {
        CriticalKind::Degenerate
    } else if mu3 > 0.0 {
        CriticalKind::Maximum
    } else if mu2 < 0.0 {
        CriticalKind::Minimum
    } else {
        CriticalKind::Saddle
    }
}

/// Flips `(λ, x)` to its antipodal image when needed so that `λ >= 0`; at
/// `λ ≈ 0` the first clearly nonzero coordinate of `x` is made positive.
fn canonical(lambda: f64, x: Vector3<f64>, zero_tol: f64) -> (f64, Vector3<f64>) {
    let flip = if lambda.abs() > zero_tol {
        lambda < 0.0
    } else {
        x.iter().find(|c| c.abs() > 1e-6).is_some_and(|c| *c < 0.0)
    };
    if flip {
        (-lambda, -x)
    } else {
        (lambda, x)
    }
}

/// All real Z-eigenpairs with `λ >= 0`, sorted by `λ` descending.
///
/// Because the potential is odd, `(−λ, −x)` is an eigenpair whenever
/// `(λ, x)` is; only the representative with `λ >= 0` is returned.
pub fn z_eigenpairs(t: &SymTensor3, cfg: &SolverConfig) -> Result<Vec<ZEigenpair>> {
    if cfg.n_seeds == 0 {
        return Err(Error::Parameter("n_seeds must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let spin = Rotation3::random_proper(&mut rng);
    let seeds: Vec<_> = fibonacci_sphere(cfg.n_seeds)
        .iter()
        .map(|s| spin.apply(s))
        .collect();

    let size = t.max_abs().max(1.0);
    let res_tol = cfg.residual_tol * size;
    let refined: Vec<Refined> = seeds.par_iter().map(|&s| refine(t, s, cfg)).collect();

    let cos_tol = cfg.dedup_angle.cos();
    let mut kept: Vec<(f64, Vector3<f64>)> = Vec::new();
    for r in refined.into_iter().filter(|r| r.residual <= res_tol) {
        let (lambda, x) = canonical(r.lambda, r.x, 1e-9 * size);
        if kept.iter().any(|(_, y)| x.dot(y) >= cos_tol) {
            continue;
        }
        kept.push((lambda, x));
    }
    if kept.is_empty() {
        return Err(Error::Numerical("no starting point converged".into()));
    }

    let mut pairs: Vec<ZEigenpair> = kept
        .into_iter()
        .map(|(lambda, x)| {
            let (mu2, mu3) = tangent_eigenvalues(t, &x, lambda);
            ZEigenpair {
                lambda,
                x,
                mu2,
                mu3,
                kind: classify(mu2, mu3, lambda, cfg.class_tol),
            }
        })
        .collect();
    pairs.sort_by(|a, b| b.lambda.total_cmp(&a.lambda));
    Ok(pairs)
}

/// `σ = 7λ² − 4 xᵀSx` for the reduced tensor, where `S` is built from the
/// parameters; at a critical point it equals `mu2 · mu3`.
pub fn sigma_invariant(p: &OctupolarParams, x: &Vector3<f64>, lambda: f64) -> f64 {
    let OctupolarParams {
        alpha0: a0,
        beta3: b3,
        alpha2: a2,
    } = *p;
    let (x1, x2, x3) = (x[0], x[1], x[2]);
    let quad = (a0 * a0 + a2 * a2 + b3 * b3) * x1 * x1
        + (a0 * a0 + a2 * a2 + (b3 + 1.0).powi(2)) * x2 * x2
        + (a0 * a0 + b3 * b3 + b3 + 1.0) * x3 * x3
        - 2.0 * a0 * x1 * x2
        - 2.0 * a0 * a2 * x1 * x3
        - a2 * (2.0 * b3 + 1.0) * x2 * x3;
    7.0 * lambda * lambda - 4.0 * quad
}

/// Number of local maxima of the potential with positive value.
///
/// Fails with [`Error::Degenerate`] if any positive-λ critical point is
/// degenerate, since the count is then not structurally stable.
pub fn count_maxima(p: &OctupolarParams, cfg: &SolverConfig) -> Result<usize> {
    let t = build_tensor(p)?;
    count_maxima_of(&t, cfg)
}

pub fn count_maxima_of(t: &SymTensor3, cfg: &SolverConfig) -> Result<usize> {
    let zero = 1e-9 * t.max_abs().max(1.0);
    let pairs = z_eigenpairs(t, cfg)?;
    let positive = pairs.iter().filter(|p| p.lambda > zero);
    let mut n = 0;
    for p in positive {
        match p.kind {
            CriticalKind::Degenerate => {
                return Err(Error::Degenerate(format!(
                    "degenerate critical point at lambda = {:.6}",
                    p.lambda
                )))
            }
            CriticalKind::Maximum => n += 1,
            _ => {}
        }
    }
    Ok(n)
}
