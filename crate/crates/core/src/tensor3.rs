//! Symmetric third-order tensors on three-dimensional space.
//!
//! A [`SymTensor3`] stores only its 10 unique components, indexed by sorted
//! index triples `(i, j, k)` with `i <= j <= k`. Every accessor is
//! permutation-transparent, so `get(2, 1, 0) == get(0, 1, 2)`. Indices are
//! zero-based throughout: the component usually written `a_123` is
//! `get(0, 1, 2)`.

use nalgebra::{Matrix3, Vector3};
use rand::Rng;

use crate::error::{Error, Result};

/// Canonical sorted triples, in storage order.
pub const UNIQUE_TRIPLES: [[usize; 3]; 10] = [
    [0, 0, 0],
    [0, 0, 1],
    [0, 0, 2],
    [0, 1, 1],
    [0, 1, 2],
    [0, 2, 2],
    [1, 1, 1],
    [1, 1, 2],
    [1, 2, 2],
    [2, 2, 2],
];

/// Storage slot of an arbitrary (unsorted) index triple.
#[inline]
fn slot(i: usize, j: usize, k: usize) -> usize {
    let mut t = [i, j, k];
    t.sort_unstable();
    match t {
        [0, 0, 0] => 0,
        [0, 0, 1] => 1,
        [0, 0, 2] => 2,
        [0, 1, 1] => 3,
        [0, 1, 2] => 4,
        [0, 2, 2] => 5,
        [1, 1, 1] => 6,
        [1, 1, 2] => 7,
        [1, 2, 2] => 8,
        [2, 2, 2] => 9,
        _ => panic!("tensor index out of range: ({i}, {j}, {k})"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymTensor3 {
    unique: [f64; 10],
}

impl Default for SymTensor3 {
    fn default() -> Self {
        Self::zeros()
    }
}

impl SymTensor3 {
    pub fn zeros() -> Self {
        Self { unique: [0.0; 10] }
    }

    /// Builds a tensor from its components in [`UNIQUE_TRIPLES`] order.
    pub fn from_components(unique: [f64; 10]) -> Self {
        Self { unique }
    }

    /// Builds a tensor from exactly one value per sorted triple.
    ///
    /// Keys must be sorted (`i <= j <= k`), in range, and each of the ten
    /// triples must appear exactly once.
    pub fn from_unique<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ([usize; 3], f64)>,
    {
        let mut unique = [0.0; 10];
        let mut seen = [false; 10];
        for (key, value) in entries {
            let [i, j, k] = key;
            if i > 2 || j > 2 || k > 2 {
                return Err(Error::Construction(format!(
                    "index out of range in {key:?}"
                )));
            }
            if !(i <= j && j <= k) {
                return Err(Error::Construction(format!("unsorted key {key:?}")));
            }
            let s = slot(i, j, k);
            if seen[s] {
                return Err(Error::Construction(format!("duplicate key {key:?}")));
            }
            seen[s] = true;
            unique[s] = value;
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::Construction(format!(
                "missing key {:?}",
                UNIQUE_TRIPLES[missing]
            )));
        }
        Ok(Self { unique })
    }

    /// Builds a tensor from a sparse list of sorted-triple entries; absent
    /// entries are zero. Duplicates are rejected.
    pub fn from_sparse<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ([usize; 3], f64)>,
    {
        let given: Vec<_> = entries.into_iter().collect();
        let mut full: Vec<([usize; 3], f64)> = given.clone();
        for t in UNIQUE_TRIPLES {
            if !given.iter().any(|(k, _)| *k == t) {
                full.push((t, 0.0));
            }
        }
        Self::from_unique(full)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.unique[slot(i, j, k)]
    }

    pub fn components(&self) -> &[f64; 10] {
        &self.unique
    }

    pub fn max_abs(&self) -> f64 {
        self.unique.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut unique = self.unique;
        unique.iter_mut().for_each(|v| *v *= factor);
        Self { unique }
    }

    /// `v_j = sum_i a_iij`: the three slice traces.
    pub fn traces(&self) -> Vector3<f64> {
        Vector3::from_fn(|j, _| (0..3).map(|i| self.get(i, i, j)).sum())
    }

    pub fn is_traceless(&self, tol: f64) -> bool {
        self.traces().amax() <= tol
    }

    /// `[T Q³]_{abc} = sum_{ijk} t_ijk q_ai q_bj q_ck`.
    ///
    /// With this convention the potential transforms as
    /// `rotated.contract3(y) == self.contract3(Qᵀ y)`.
    pub fn rotate(&self, q: &Rotation3) -> Self {
        let m = q.matrix();
        let mut unique = [0.0; 10];
        for (s, &[a, b, c]) in UNIQUE_TRIPLES.iter().enumerate() {
            let mut acc = 0.0;
            for i in 0..3 {
                let qa = m[(a, i)];
                if qa == 0.0 {
                    continue;
                }
                for j in 0..3 {
                    let qb = m[(b, j)];
                    if qb == 0.0 {
                        continue;
                    }
                    for k in 0..3 {
                        acc += self.get(i, j, k) * qa * qb * m[(c, k)];
                    }
                }
            }
            unique[s] = acc;
        }
        Self { unique }
    }

    /// `(Ax)_ij = sum_k a_ijk x_k`.
    pub fn contract1(&self, x: &Vector3<f64>) -> Matrix3<f64> {
        Matrix3::from_fn(|i, j| (0..3).map(|k| self.get(i, j, k) * x[k]).sum())
    }

    /// `(Ax²)_i = sum_jk a_ijk x_j x_k`.
    pub fn contract2(&self, x: &Vector3<f64>) -> Vector3<f64> {
        self.contract1(x) * x
    }

    /// The cubic form `Ax³ = sum_ijk a_ijk x_i x_j x_k`.
    pub fn contract3(&self, x: &Vector3<f64>) -> f64 {
        x.dot(&self.contract2(x))
    }
}

/// An orthogonal 3×3 matrix (rotation or reflection).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation3(Matrix3<f64>);

impl Rotation3 {
    /// Wraps `m` after checking `‖mᵀm − I‖_max <= tol`.
    pub fn new(m: Matrix3<f64>, tol: f64) -> Result<Self> {
        let deviation = (m.transpose() * m - Matrix3::identity()).amax();
        if !(deviation <= tol) {
            return Err(Error::NotOrthogonal { deviation });
        }
        Ok(Self(m))
    }

    pub fn identity() -> Self {
        Self(Matrix3::identity())
    }

    /// Rotation by `angle` about the third axis.
    pub fn about_z(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self(Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0))
    }

    pub fn diagonal_reflection(signs: [f64; 3]) -> Self {
        Self(Matrix3::from_diagonal(&Vector3::from(signs)))
    }

    /// Random orthogonal matrix: Gram–Schmidt on a uniform random 3×3 matrix.
    /// Roughly half of the results are reflections.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let m = Matrix3::from_fn(|_, _| rng.gen_range(-1.0..1.0));
            let c0: Vector3<f64> = m.column(0).into();
            let c1: Vector3<f64> = m.column(1).into();
            let c2: Vector3<f64> = m.column(2).into();
            let Some(u0) = c0.try_normalize(1e-6) else {
                continue;
            };
            let Some(u1) = (c1 - u0 * u0.dot(&c1)).try_normalize(1e-6) else {
                continue;
            };
            let Some(u2) = (c2 - u0 * u0.dot(&c2) - u1 * u1.dot(&c2)).try_normalize(1e-6) else {
                continue;
            };
            return Self(Matrix3::from_columns(&[u0, u1, u2]));
        }
    }

    /// Random proper rotation (determinant +1).
    pub fn random_proper<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let q = Self::random(rng);
        if q.det() < 0.0 {
            Self(-q.0)
        } else {
            q
        }
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    pub fn det(&self) -> f64 {
        self.0.determinant()
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    /// `self · other`: applying `other` first, then `self`.
    pub fn then_after(&self, other: &Rotation3) -> Self {
        Self(self.0 * other.0)
    }

    pub fn apply(&self, x: &Vector3<f64>) -> Vector3<f64> {
        self.0 * x
    }
}
