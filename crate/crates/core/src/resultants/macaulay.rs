//! Macaulay matrices for square systems of homogeneous quadratics.
//!
//! For `n` quadratics in `n` variables the matrix lives in degree
//! `d = n + 1`. A degree-`d` monomial `m` belongs to the set `S_i` for the
//! first `i` with `x_i² | m`; its row holds the coefficients of
//! `(m / x_i²) · F_i`. Because `d = n + 1`, every monomial is divisible by
//! at least one square. The monomials divisible by two or more squares
//! ("non-reduced") index the extraneous-factor submatrix `D′`, and
//! `det D = ±Res · det D′`.

use nalgebra::{Complex, DMatrix};

use crate::error::{Error, Result};
use crate::tensor3::SymTensor3;

/// A homogeneous quadratic in `n` variables.
#[derive(Debug, Clone, PartialEq)]
pub struct HomQuadratic {
    n_vars: usize,
    terms: Vec<(Vec<u32>, f64)>,
}

impl HomQuadratic {
    /// Terms are `(exponents, coefficient)`; repeated monomials are summed.
    pub fn new(n_vars: usize, terms: Vec<(Vec<u32>, f64)>) -> Result<Self> {
        let mut merged: Vec<(Vec<u32>, f64)> = Vec::new();
        for (e, c) in terms {
            if e.len() != n_vars {
                return Err(Error::Construction(format!(
                    "monomial {e:?} does not have {n_vars} exponents"
                )));
            }
            if e.iter().sum::<u32>() != 2 {
                return Err(Error::Construction(format!(
                    "monomial {e:?} is not of degree 2"
                )));
            }
            match merged.iter_mut().find(|(f, _)| *f == e) {
                Some((_, acc)) => *acc += c,
                None => merged.push((e, c)),
            }
        }
        Ok(Self {
            n_vars,
            terms: merged,
        })
    }

    /// `x_i · x_j` with unit coefficient (`x_i²` when `i == j`).
    pub fn product(n_vars: usize, i: usize, j: usize, coeff: f64) -> (Vec<u32>, f64) {
        let mut e = vec![0; n_vars];
        e[i] += 1;
        e[j] += 1;
        (e, coeff)
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn terms(&self) -> &[(Vec<u32>, f64)] {
        &self.terms
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                c * e
                    .iter()
                    .zip(x)
                    .map(|(&k, v)| v.powi(k as i32))
                    .product::<f64>()
            })
            .sum()
    }
}

#[derive(Debug, Clone)]
pub struct MacaulaySystem {
    pub equations: Vec<HomQuadratic>,
    pub degree: u32,
    /// All degree-`degree` monomials in row/column order.
    pub monomials: Vec<Vec<u32>>,
    /// `partition[r]` is the equation index whose set contains monomial `r`.
    pub partition: Vec<usize>,
    pub d: DMatrix<f64>,
    /// Row/column indices of the non-reduced monomials.
    pub non_reduced: Vec<usize>,
}

/// Degree-`d` monomials in `n` variables, lexicographically descending.
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, n: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == n - 1 {
            cur.push(rem);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=rem).rev() {
            cur.push(e);
            rec(i + 1, n, rem - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

pub fn build_macaulay(equations: &[HomQuadratic]) -> Result<MacaulaySystem> {
    let n = equations.len();
    if !(n == 3 || n == 4) {
        return Err(Error::Construction(format!(
            "expected 3 or 4 equations, got {n}"
        )));
    }
    if let Some(f) = equations.iter().find(|f| f.n_vars != n) {
        return Err(Error::Construction(format!(
            "equation in {} variables for a system of {n}",
            f.n_vars
        )));
    }
    let degree = n as u32 + 1;
    let monomials = monomials(n, degree);
    let index = |m: &[u32]| {
        monomials
            .iter()
            .position(|k| k.as_slice() == m)
            .expect("monomial")
    };
    let size = monomials.len();
    let mut d = DMatrix::zeros(size, size);
    let mut partition = Vec::with_capacity(size);
    for (row, m) in monomials.iter().enumerate() {
        let i = m
            .iter()
            .position(|&e| e >= 2)
            .expect("degree n+1 monomial has a square");
        partition.push(i);
        let mut base = m.clone();
        base[i] -= 2;
        for (e, c) in &equations[i].terms {
            let target: Vec<u32> = base.iter().zip(e).map(|(a, b)| a + b).collect();
            d[(row, index(&target))] += c;
        }
    }
    let non_reduced = monomials
        .iter()
        .enumerate()
        .filter(|(_, m)| m.iter().filter(|&&e| e >= 2).count() >= 2)
        .map(|(r, _)| r)
        .collect();
    Ok(MacaulaySystem {
        equations: equations.to_vec(),
        degree,
        monomials,
        partition,
        d,
        non_reduced,
    })
}

/// `|det M| / Π ‖row‖`, between 0 and 1 (Hadamard's inequality).
fn hadamard_ratio(m: &DMatrix<f64>, det: f64) -> f64 {
    let log_rows: f64 = m.row_iter().map(|r| r.norm().ln()).sum();
    if !log_rows.is_finite() {
        return 0.0;
    }
    (det.abs().ln() - log_rows).exp()
}

/// Below this Hadamard ratio `D′` is treated as singular.
pub const DEGENERACY_RATIO: f64 = 1e-10;

impl MacaulaySystem {
    pub fn size(&self) -> usize {
        self.monomials.len()
    }

    pub fn d_prime(&self) -> DMatrix<f64> {
        self.d
            .select_rows(&self.non_reduced)
            .select_columns(&self.non_reduced)
    }

    /// Determinant of `D′` and its Hadamard ratio.
    pub fn d_prime_conditioning(&self) -> (f64, f64) {
        let dp = self.d_prime();
        let det = dp.clone().lu().determinant();
        (det, hadamard_ratio(&dp, det))
    }

    /// `det D / det D′`.
    ///
    /// Fails with [`Error::Degenerate`] when `D′` is numerically singular.
    pub fn determinant_ratio(&self) -> Result<f64> {
        let (det_p, ratio) = self.d_prime_conditioning();
        if !(ratio > DEGENERACY_RATIO) {
            return Err(Error::Degenerate(format!(
                "extraneous factor is singular (Hadamard ratio {ratio:.2e})"
            )));
        }
        Ok(self.d.clone().lu().determinant() / det_p)
    }

    /// `det D / det D′` for the system `F_i + ε x_i²`, evaluated at `ε = 0`.
    ///
    /// Adding `ε x_i²` to `F_i` adds `ε` to every diagonal entry of `D`, so
    /// the perturbed ratio is `det(D + εI) / det(D′ + εI)`. This is the
    /// resultant of the perturbed system, a polynomial in `ε` of degree at
    /// most `n · 2^(n−1)`, so its value at 0 is the mean over more than that
    /// many points on a circle of radius `radius`.
    pub fn perturbed_ratio(&self, radius: f64, samples: usize) -> f64 {
        let d = self.d.map(|v| Complex::new(v, 0.0));
        let dp = self.d_prime().map(|v| Complex::new(v, 0.0));
        let mut acc = Complex::new(0.0, 0.0);
        for k in 0..samples {
            let angle = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / samples as f64;
            let eps = Complex::from_polar(radius, angle);
            let shift = |m: &DMatrix<Complex<f64>>| {
                let mut m = m.clone();
                for i in 0..m.nrows() {
                    m[(i, i)] += eps;
                }
                m.lu().determinant()
            };
            acc += shift(&d) / shift(&dp);
        }
        (acc / samples as f64).re
    }
}

/// `det D / det D′` for the given system.
pub fn resultant_via_macaulay(equations: &[HomQuadratic]) -> Result<f64> {
    build_macaulay(equations)?.determinant_ratio()
}

/// The three components of `Tx²` as quadratics in `(x1, x2, x3)`, in the
/// order `(Tx²)_2, (Tx²)_3, (Tx²)_1`.
///
/// With this order the equation attached to `S_1` is the one that, for the
/// reduced tensor, contains `x2²`.
pub fn ax2_system(t: &SymTensor3) -> [HomQuadratic; 3] {
    [1, 2, 0].map(|i| component_quadratic(t, i, 3, 0))
}

/// `(Tx²)_i` as a quadratic in `n_vars` variables, the tensor variables
/// starting at position `offset`.
fn component_quadratic(t: &SymTensor3, i: usize, n_vars: usize, offset: usize) -> HomQuadratic {
    let mut terms = Vec::new();
    for j in 0..3 {
        for k in j..3 {
            let mult = if j == k { 1.0 } else { 2.0 };
            let c = mult * t.get(i, j, k);
            if c != 0.0 {
                terms.push(HomQuadratic::product(n_vars, offset + j, offset + k, c));
            }
        }
    }
    HomQuadratic::new(n_vars, terms).expect("quadratic terms")
}

/// The homogenized eigen-system in `(x0, x1, x2, x3)`:
/// `x1² + x2² + x3² − x0²` followed by `(Tx²)_i − λ x0 x_i` for `i = 2, 3, 1`.
pub fn eigen_system(t: &SymTensor3, lambda: f64) -> [HomQuadratic; 4] {
    let sphere = HomQuadratic::new(
        4,
        vec![
            HomQuadratic::product(4, 1, 1, 1.0),
            HomQuadratic::product(4, 2, 2, 1.0),
            HomQuadratic::product(4, 3, 3, 1.0),
            HomQuadratic::product(4, 0, 0, -1.0),
        ],
    )
    .expect("sphere");
    let eq = |i: usize| {
        let mut f = component_quadratic(t, i, 4, 1);
        f.terms.push(HomQuadratic::product(4, 0, i + 1, -lambda));
        HomQuadratic::new(4, f.terms).expect("quadratic terms")
    };
    [sphere, eq(1), eq(2), eq(0)]
}
