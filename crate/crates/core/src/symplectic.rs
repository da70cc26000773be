//! Fixed-size symmetric matrix utilities for two-mode covariance matrices.
//!
//! Ordering of the phase-space vector is `(x1, p1, x2, p2)` and the vacuum
//! covariance matrix is the identity, so a physical state has all symplectic
//! eigenvalues `>= 1`.

use std::ops::{Add, Mul, Sub};

use nalgebra::{Matrix2, Matrix4, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default tolerance on the minimum eigenvalue for positive semidefiniteness.
pub const DEFAULT_PSD_TOL: f64 = 1e-10;

/// A real symmetric 4x4 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymMat4(Matrix4<f64>);

impl SymMat4 {
    /// Wraps `m`, symmetrizing it as `(m + mᵀ)/2`.
    pub fn new(m: Matrix4<f64>) -> Self {
        Self((m + m.transpose()) * 0.5)
    }

    pub fn from_rows(rows: [[f64; 4]; 4]) -> Self {
        Self::new(Matrix4::from_fn(|i, j| rows[i][j]))
    }

    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    pub fn zeros() -> Self {
        Self(Matrix4::zeros())
    }

    pub fn from_diagonal(d: [f64; 4]) -> Self {
        Self(Matrix4::from_diagonal(&d.into()))
    }

    /// Assembles `[[A, C], [Cᵀ, B]]` from its 2x2 blocks. `A` and `B` are symmetrized.
    pub fn from_blocks(a: &Matrix2<f64>, b: &Matrix2<f64>, c: &Matrix2<f64>) -> Self {
        let mut m = Matrix4::zeros();
        m.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
        m.fixed_view_mut::<2, 2>(2, 2).copy_from(b);
        m.fixed_view_mut::<2, 2>(0, 2).copy_from(c);
        m.fixed_view_mut::<2, 2>(2, 0).copy_from(&c.transpose());
        Self::new(m)
    }

    /// Top-left block, the reduced covariance matrix of mode A.
    pub fn block_a(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 0).into_owned()
    }

    /// Bottom-right block, the reduced covariance matrix of mode B.
    pub fn block_b(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(2, 2).into_owned()
    }

    /// Top-right correlation block.
    pub fn block_c(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 2).into_owned()
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn rows(&self) -> [[f64; 4]; 4] {
        let mut out = [[0.0; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.0[(i, j)];
            }
        }
        out
    }

    /// Congruence `S · self · Sᵀ`.
    pub fn congruence(&self, s: &Matrix4<f64>) -> Self {
        Self::new(s * self.0 * s.transpose())
    }

    pub fn scale(&self, k: f64) -> Self {
        Self(self.0 * k)
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let mut ev: [f64; 4] = SymmetricEigen::new(self.0).eigenvalues.into();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.0 - other.0).amax()
    }
}

impl Add for SymMat4 {
    type Output = SymMat4;
    fn add(self, rhs: SymMat4) -> SymMat4 {
        SymMat4(self.0 + rhs.0)
    }
}

impl Sub for SymMat4 {
    type Output = SymMat4;
    fn sub(self, rhs: SymMat4) -> SymMat4 {
        SymMat4(self.0 - rhs.0)
    }
}

impl Mul<f64> for SymMat4 {
    type Output = SymMat4;
    fn mul(self, k: f64) -> SymMat4 {
        self.scale(k)
    }
}

impl From<SymMat4> for Matrix4<f64> {
    fn from(m: SymMat4) -> Self {
        m.0
    }
}

/// Single-mode symplectic form `[[0, 1], [-1, 0]]`.
pub fn single_mode_form() -> Matrix2<f64> {
    Matrix2::new(0.0, 1.0, -1.0, 0.0)
}

/// Two-mode symplectic form `J = J₂ ⊕ J₂`.
pub fn symplectic_form() -> Matrix4<f64> {
    let mut j = Matrix4::zeros();
    j[(0, 1)] = 1.0;
    j[(1, 0)] = -1.0;
    j[(2, 3)] = 1.0;
    j[(3, 2)] = -1.0;
    j
}

/// Symplectic eigenvalues of a two-mode covariance matrix, ascending.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SympSpectrum {
    pub mu_minus: f64,
    pub mu_plus: f64,
}

impl SympSpectrum {
    pub fn new(x: f64, y: f64) -> Self {
        if x <= y {
            Self { mu_minus: x, mu_plus: y }
        } else {
            Self { mu_minus: y, mu_plus: x }
        }
    }

    /// Componentwise `self >= other - tol`.
    pub fn dominates(&self, other: &SympSpectrum, tol: f64) -> bool {
        self.mu_minus >= other.mu_minus - tol && self.mu_plus >= other.mu_plus - tol
    }
}

/// True iff the minimum eigenvalue of `m` is `>= -tol`.
pub fn is_psd(m: &SymMat4, tol: f64) -> bool {
    m.min_eigenvalue() >= -tol
}

/// Loewner order: true iff `m1 - m2` is positive semidefinite within `tol`.
pub fn loewner_ge(m1: &SymMat4, m2: &SymMat4, tol: f64) -> bool {
    is_psd(&(*m1 - *m2), tol)
}

/// Loewner comparison for 2x2 symmetric matrices.
pub(crate) fn loewner_ge2(m1: &Matrix2<f64>, m2: &Matrix2<f64>, tol: f64) -> bool {
    min_eigenvalue2(&(m1 - m2)) >= -tol
}

pub(crate) fn min_eigenvalue2(m: &Matrix2<f64>) -> f64 {
    let (a, b, d) = (m[(0, 0)], 0.5 * (m[(0, 1)] + m[(1, 0)]), m[(1, 1)]);
    let half_tr = 0.5 * (a + d);
    let r = (0.25 * (a - d) * (a - d) + b * b).sqrt();
    half_tr - r
}

/// Partial transposition `T_B m T_B` with `T_B = I₂ ⊕ diag(1, -1)`.
pub fn partial_transpose(m: &SymMat4) -> SymMat4 {
    let mut out = m.0;
    for k in 0..4 {
        if k != 3 {
            out[(k, 3)] = -out[(k, 3)];
            out[(3, k)] = -out[(3, k)];
        }
    }
    SymMat4(out)
}

/// Symplectic spectrum from the moduli of the eigenvalues of `iJm`.
///
/// Computed as the square roots of the eigenvalues of `KᵀK`, `K = m^{1/2} J m^{1/2}`,
/// which is similar to `-(Jm)²` and symmetric, so only a symmetric
/// eigensolver is needed. Each `μ²` appears twice.
pub fn symplectic_spectrum(m: &SymMat4) -> Result<SympSpectrum> {
    let eig = SymmetricEigen::new(m.0);
    let min_ev = eig.eigenvalues.min();
    if !(min_ev > DEFAULT_PSD_TOL) {
        return Err(Error::NonPositiveMatrix { min_eigenvalue: min_ev });
    }
    let sqrt_diag = Matrix4::from_diagonal(&eig.eigenvalues.map(f64::sqrt));
    let root = eig.eigenvectors * sqrt_diag * eig.eigenvectors.transpose();
    let k = root * symplectic_form() * root;
    let p = k.transpose() * k;
    let mut sq: [f64; 4] = SymmetricEigen::new((p + p.transpose()) * 0.5)
        .eigenvalues
        .into();
    sq.sort_by(f64::total_cmp);
    let lo = (0.5 * (sq[0] + sq[1])).max(0.0).sqrt();
    let hi = (0.5 * (sq[2] + sq[3])).max(0.0).sqrt();
    Ok(SympSpectrum::new(lo, hi))
}
