use nalgebra::{Complex, DMatrix, Schur};

use crate::error::{Error, Result};

/// Real polynomial in one variable, coefficients in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct UnivariatePoly {
    coeffs: Vec<f64>,
}

impl UnivariatePoly {
    /// Trailing (highest-order) exact zeros are dropped.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0.0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    /// `scale · Π (x − r)`.
    pub fn from_roots(scale: f64, roots: &[f64]) -> Self {
        let mut p = Self::new(vec![scale]);
        for &r in roots {
            p = p.mul(&Self::new(vec![-r, 1.0]));
        }
        p
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    /// Drops leading coefficients with `|a| <= tol · max|a|`.
    pub fn trimmed(&self, tol: f64) -> Self {
        let cut = tol * self.max_abs_coeff();
        let mut coeffs = self.coeffs.clone();
        while coeffs.len() > 1 && coeffs.last().unwrap().abs() <= cut {
            coeffs.pop();
        }
        Self::new(coeffs)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex<f64>) -> Complex<f64> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::new(vec![0.0]);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    /// The same polynomial with every coefficient replaced by its magnitude.
    pub fn abs_coeffs(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.abs()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division; `divisor` must have a nonzero leading coefficient.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dn = divisor.degree();
        let lead = divisor.coeffs[dn];
        assert!(lead != 0.0, "division by the zero polynomial");
        if self.degree() < dn {
            return (Self::new(vec![0.0]), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0.0; self.degree() - dn + 1];
        for k in (0..quot.len()).rev() {
            let q = rem[k + dn] / lead;
            quot[k] = q;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= q * d;
            }
        }
        rem.truncate(dn.max(1));
        (Self::new(quot), Self::new(rem))
    }

    /// `q(x) = p(x + shift)`.
    pub fn translated(&self, shift: f64) -> Self {
        if shift == 0.0 {
            return self.clone();
        }
        let step = Self::new(vec![shift, 1.0]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::new(vec![0.0]), |acc, &c| {
                let mut next = acc.mul(&step);
                next.coeffs[0] += c;
                next
            })
    }

    /// Substitutes `x = y²` when only even powers are present, returning the
    /// polynomial in `y²`. Odd coefficients are ignored.
    pub fn even_part_in_square(&self) -> Self {
        Self::new(self.coeffs.iter().step_by(2).copied().collect())
    }
}

/// A real root with its estimated multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealRoot {
    pub value: f64,
    pub multiplicity: usize,
}

/// Real roots of `q` in `[lo, hi]`, sorted ascending.
///
/// `tol` is the relative accuracy of the coefficients. Roots come from the
/// eigenvalues of the balanced companion matrix. Clusters of `m` eigenvalues
/// that are consistent with an `m`-fold root (all derivatives below order `m`
/// small at the polished center) are merged into one root of multiplicity
/// `m`; remaining real eigenvalues are Newton-polished.
pub fn poly_real_roots(q: &UnivariatePoly, lo: f64, hi: f64, tol: f64) -> Result<Vec<RealRoot>> {
    if !(lo < hi) {
        return Err(Error::Parameter(format!("empty interval [{lo}, {hi}]")));
    }
    if q.is_zero() {
        return Err(Error::Construction("identically zero polynomial".into()));
    }
    let tol = tol.max(1e-15);
    let p = q.trimmed(1e-14);
    let slack = 1e-9 * (hi - lo).max(1.0);

    let zeros_at_origin = p.coeffs.iter().take_while(|&&c| c == 0.0).count();
    let reduced = UnivariatePoly::new(p.coeffs[zeros_at_origin..].to_vec());

    let mut out = Vec::new();
    if zeros_at_origin > 0 && lo - slack <= 0.0 && 0.0 <= hi + slack {
        out.push(RealRoot {
            value: 0.0,
            multiplicity: zeros_at_origin,
        });
    }
    if reduced.degree() > 0 {
        for r in cluster_roots(&reduced, tol)? {
            if r.value >= lo - slack && r.value <= hi + slack {
                out.push(RealRoot {
                    value: r.value.clamp(lo, hi),
                    ..r
                });
            }
        }
    }
    out.sort_by(|a, b| a.value.total_cmp(&b.value));
    Ok(out)
}

fn companion_eigenvalues(p: &UnivariatePoly) -> Result<Vec<Complex<f64>>> {
    // The unshifted-start QR iteration can stall on spectra that are
    // symmetric about the origin; a translated copy breaks the symmetry.
    for attempt in 0..8 {
        let shift = 0.1 * attempt as f64 * 0.618_033_988_749_895;
        if let Some(eig) = try_companion_eigenvalues(&p.translated(shift)) {
            return Ok(eig.into_iter().map(|z| z + shift).collect());
        }
    }
    Err(Error::Numerical(
        "companion eigenvalue iteration did not converge".into(),
    ))
}

fn try_companion_eigenvalues(p: &UnivariatePoly) -> Option<Vec<Complex<f64>>> {
    let n = p.degree();
    let lead = p.coeffs[n];
    let mut c = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        c[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        c[(i, n - 1)] = -p.coeffs[i] / lead;
    }
    balance(&mut c);
    let schur = Schur::try_new(c, f64::EPSILON, 200 * n.max(1))?;
    Some(schur.complex_eigenvalues().iter().copied().collect())
}

/// Diagonal similarity scaling by powers of two so that row and column
/// norms are comparable.
fn balance(a: &mut DMatrix<f64>) {
    const RADIX: f64 = 2.0;
    let n = a.nrows();
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let (mut c, mut r) = (0.0, 0.0);
            for j in (0..n).filter(|&j| j != i) {
                c += a[(j, i)].abs();
                r += a[(i, j)].abs();
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= RADIX * RADIX;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= RADIX * RADIX;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                a.row_mut(i).scale_mut(1.0 / f);
                a.column_mut(i).scale_mut(f);
            }
        }
    }
}

/// `|p^(j)(x)|` is compared against this scale when judging smallness.
fn derivative_scale(abs_derivs: &[UnivariatePoly], j: usize, x: f64) -> f64 {
    abs_derivs[j].eval(x.abs()).max(f64::MIN_POSITIVE)
}

fn newton(p: &UnivariatePoly, dp: &UnivariatePoly, mut x: f64, max_move: f64) -> f64 {
    let x0 = x;
    for _ in 0..50 {
        let d = dp.eval(x);
        if d == 0.0 || !d.is_finite() {
            break;
        }
        let step = p.eval(x) / d;
        let next = x - step;
        if !next.is_finite() || (next - x0).abs() > max_move {
            break;
        }
        x = next;
        if step.abs() <= 1e-16 * x.abs().max(1e-300) {
            break;
        }
    }
    x
}

fn cluster_roots(p: &UnivariatePoly, tol: f64) -> Result<Vec<RealRoot>> {
    let n = p.degree();
    let eig = companion_eigenvalues(p)?;
    let derivs: Vec<UnivariatePoly> = (0..=n).map(|j| p.nth_derivative(j)).collect();
    let abs_derivs: Vec<UnivariatePoly> =
        (0..=n).map(|j| p.abs_coeffs().nth_derivative(j)).collect();
    let small = |j: usize, m: usize, x: f64| {
        let bound =
            100.0 * tol.powf((m - j) as f64 / m as f64) * derivative_scale(&abs_derivs, j, x);
        derivs[j].eval(x).abs() <= bound
    };

    let mut used = vec![false; eig.len()];
    let mut roots = Vec::new();

    let mut order: Vec<usize> = (0..eig.len()).collect();
    order.sort_by(|&a, &b| {
        eig[a]
            .re
            .total_cmp(&eig[b].re)
            .then(eig[a].im.total_cmp(&eig[b].im))
    });

    for m in (2..=n).rev() {
        for &i in &order {
            if used[i] {
                continue;
            }
            let z = eig[i];
            let mut near: Vec<usize> = (0..eig.len()).filter(|&k| !used[k]).collect();
            if near.len() < m {
                break;
            }
            near.sort_by(|&a, &b| (eig[a] - z).norm().total_cmp(&(eig[b] - z).norm()));
            near.truncate(m);
            let center = near.iter().map(|&k| eig[k]).sum::<Complex<f64>>() / m as f64;
            let radius = 10.0 * tol.powf(1.0 / m as f64) * center.norm().max(1.0);
            if near.iter().any(|&k| (eig[k] - center).norm() > radius) || center.im.abs() > radius {
                continue;
            }
            let x = newton(&derivs[m - 1], &derivs[m], center.re, radius);
            if (0..m).all(|j| small(j, m, x)) {
                for &k in &near {
                    used[k] = true;
                }
                roots.push(RealRoot {
                    value: x,
                    multiplicity: m,
                });
            }
        }
    }

    for &i in &order {
        if used[i] {
            continue;
        }
        let z = eig[i];
        let scale = z.norm().max(1.0);
        if z.im.abs() > 1e-7 * scale {
            continue;
        }
        let x = newton(&derivs[0], &derivs[1], z.re, 1e-3 * scale);
        if z.im.abs() > 1e-10 * scale && !small(0, 1, x) {
            continue;
        }
        roots.push(RealRoot {
            value: x,
            multiplicity: 1,
        });
    }
    Ok(roots)
}
