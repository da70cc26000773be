//! Two-mode Gaussian states described by their covariance matrix.

use nalgebra::{Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symplectic::{
    partial_transpose, single_mode_form, symplectic_spectrum, SymMat4, SympSpectrum, DEFAULT_PSD_TOL,
};

/// Covariance matrix `[[A, C], [Cᵀ, B]]` of a two-mode Gaussian state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovMat {
    matrix: SymMat4,
}

impl CovMat {
    /// Wraps a symmetric matrix without checking physicality.
    pub fn new(matrix: SymMat4) -> Self {
        Self { matrix }
    }

    /// Wraps `matrix`, failing unless it satisfies the uncertainty relation.
    pub fn physical(matrix: SymMat4, tol: f64) -> Result<Self> {
        let v = Self::new(matrix);
        v.require_physical(tol)?;
        Ok(v)
    }

    pub fn from_rows(rows: [[f64; 4]; 4]) -> Self {
        Self::new(SymMat4::from_rows(rows))
    }

    pub fn from_blocks(a: &Matrix2<f64>, b: &Matrix2<f64>, c: &Matrix2<f64>) -> Self {
        Self::new(SymMat4::from_blocks(a, b, c))
    }

    pub fn vacuum() -> Self {
        Self::new(SymMat4::identity())
    }

    /// Symmetric state in standard form with `A = B = m I₂` and `C = diag(c1, c2)`.
    pub fn symmetric(m: f64, c1: f64, c2: f64) -> Self {
        Self::from_blocks(
            &Matrix2::identity().scale(m),
            &Matrix2::identity().scale(m),
            &Matrix2::new(c1, 0.0, 0.0, c2),
        )
    }

    /// Pure two-mode squeezed vacuum with squeezing `r`.
    pub fn two_mode_squeezed(r: f64) -> Self {
        let (ch, sh) = ((2.0 * r).cosh(), (2.0 * r).sinh());
        Self::symmetric(ch, sh, -sh)
    }

    pub fn matrix(&self) -> &SymMat4 {
        &self.matrix
    }

    pub fn block_a(&self) -> Matrix2<f64> {
        self.matrix.block_a()
    }

    pub fn block_b(&self) -> Matrix2<f64> {
        self.matrix.block_b()
    }

    pub fn block_c(&self) -> Matrix2<f64> {
        self.matrix.block_c()
    }

    /// Largest entrywise difference between the two local blocks.
    pub fn asymmetry(&self) -> f64 {
        (self.block_a() - self.block_b()).amax()
    }

    /// Exchanges the roles of the two modes.
    pub fn swap_modes(&self) -> Self {
        Self::from_blocks(&self.block_b(), &self.block_a(), &self.block_c().transpose())
    }

    pub fn partial_transpose(&self) -> Self {
        Self::new(partial_transpose(&self.matrix))
    }

    /// Applies `S v Sᵀ`.
    pub fn transform(&self, s: &Matrix4<f64>) -> Self {
        Self::new(self.matrix.congruence(s))
    }

    pub fn invariants(&self) -> Invariants {
        invariants(self)
    }

    pub(crate) fn require_physical(&self, tol: f64) -> Result<()> {
        // The eigenvalue route stays accurate for nearly pure states, where the
        // invariant formula loses half its digits to the inner square root.
        match symplectic_spectrum(&self.matrix) {
            Ok(s) if s.mu_minus >= 1.0 - tol => Ok(()),
            Ok(s) => Err(Error::NonPhysicalState { mu_minus: s.mu_minus }),
            Err(_) => Err(Error::NonPhysicalState {
                mu_minus: self.invariants().spectrum().mu_minus,
            }),
        }
    }
}

/// Local symplectic invariants of a two-mode covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Invariants {
    #[serde(rename = "I1")]
    pub i1: f64,
    #[serde(rename = "I2")]
    pub i2: f64,
    #[serde(rename = "I3")]
    pub i3: f64,
    #[serde(rename = "I4")]
    pub i4: f64,
}

impl Invariants {
    pub fn new(i1: f64, i2: f64, i3: f64, i4: f64) -> Self {
        Self { i1, i2, i3, i4 }
    }

    /// Symplectic eigenvalues from the invariants.
    pub fn spectrum(&self) -> SympSpectrum {
        self.closed_form(self.i3)
    }

    /// Symplectic eigenvalues of the partial transpose (`I3 -> -I3`).
    pub fn ppt_spectrum(&self) -> SympSpectrum {
        self.closed_form(-self.i3)
    }

    fn closed_form(&self, i3: f64) -> SympSpectrum {
        let half_sum = 0.5 * (self.i1 + self.i2);
        let half_diff = 0.5 * (self.i1 - self.i2);
        let disc = half_diff * half_diff + (self.i1 + self.i2) * i3 + self.i4;
        // Negative only through rounding for positive definite input.
        let root = disc.max(0.0).sqrt();
        let base = half_sum + i3;
        SympSpectrum::new((base - root).max(0.0).sqrt(), (base + root).max(0.0).sqrt())
    }

    /// `det V = I1 I2 + I3² - I4`.
    pub fn determinant(&self) -> f64 {
        self.i1 * self.i2 + self.i3 * self.i3 - self.i4
    }
}

/// Computes `I1 = det A`, `I2 = det B`, `I3 = det C`, `I4 = Tr(A J C J B J Cᵀ J)`.
pub fn invariants(v: &CovMat) -> Invariants {
    let (a, b, c) = (v.block_a(), v.block_b(), v.block_c());
    let j = single_mode_form();
    let i4 = (a * j * c * j * b * j * c.transpose() * j).trace();
    Invariants::new(a.determinant(), b.determinant(), c.determinant(), i4)
}

/// Standard-form parameters: `A = a I₂`, `B = b I₂`, `C = diag(c1, c2)` with `c1 >= |c2|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StandardForm {
    pub a: f64,
    pub b: f64,
    pub c1: f64,
    pub c2: f64,
}

impl StandardForm {
    pub fn new(a: f64, b: f64, c1: f64, c2: f64) -> Result<Self> {
        if ![a, b, c1, c2].iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidStandardForm("non-finite parameter".into()));
        }
        if a <= 0.0 || b <= 0.0 {
            return Err(Error::InvalidStandardForm(format!(
                "local parameters must be positive (a = {a}, b = {b})"
            )));
        }
        if c1 < c2.abs() {
            return Err(Error::InvalidStandardForm(format!(
                "expected c1 >= |c2| (c1 = {c1}, c2 = {c2})"
            )));
        }
        Ok(Self { a, b, c1, c2 })
    }

    /// Solves `a² = I1`, `b² = I2`, `c1 c2 = I3`, `ab(c1² + c2²) = I4`.
    ///
    /// `sign(c2) = sign(I3)`; for `I3 = 0`, `c2 = 0`.
    pub fn from_invariants(inv: &Invariants, tol: f64) -> Result<Self> {
        if ![inv.i1, inv.i2, inv.i3, inv.i4].iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidStandardForm("non-finite invariant".into()));
        }
        if inv.i1 <= 0.0 || inv.i2 <= 0.0 {
            return Err(Error::InvalidStandardForm(format!(
                "I1 and I2 must be positive (I1 = {}, I2 = {})",
                inv.i1, inv.i2
            )));
        }
        let a = inv.i1.sqrt();
        let b = inv.i2.sqrt();
        let sum_sq = inv.i4 / (a * b);
        let bound = 2.0 * inv.i3.abs();
        if sum_sq < bound - tol {
            return Err(Error::DegenerateInvariants { ratio: sum_sq, bound });
        }
        let plus = (sum_sq + 2.0 * inv.i3).max(0.0).sqrt();
        let minus = (sum_sq - 2.0 * inv.i3).max(0.0).sqrt();
        let (c1, c2) = if inv.i3 == 0.0 {
            (sum_sq.max(0.0).sqrt(), 0.0)
        } else {
            (0.5 * (plus + minus), 0.5 * (plus - minus))
        };
        Ok(Self { a, b, c1, c2 })
    }

    pub fn covariance(&self) -> CovMat {
        CovMat::from_blocks(
            &Matrix2::identity().scale(self.a),
            &Matrix2::identity().scale(self.b),
            &Matrix2::new(self.c1, 0.0, 0.0, self.c2),
        )
    }

    pub fn invariants(&self) -> Invariants {
        Invariants::new(
            self.a * self.a,
            self.b * self.b,
            self.c1 * self.c2,
            self.a * self.b * (self.c1 * self.c1 + self.c2 * self.c2),
        )
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (self.a - self.b).abs() <= tol
    }
}

/// Reduces `v` to standard form.
///
/// The local blocks are brought to `a I₂`, `b I₂` by `S = det(X)^{1/4} X^{-1/2}`
/// and `(c1, c2)` are then the signed singular values of the transformed
/// correlation block. This satisfies the invariant relations
/// (`a² = I1`, `c1 c2 = I3`, `ab(c1² + c2²) = I4`) without taking square roots
/// of nearly cancelling discriminants, which matters for (nearly) pure states.
pub fn standard_form(v: &CovMat) -> Result<StandardForm> {
    let (a_blk, b_blk, c_blk) = (v.block_a(), v.block_b(), v.block_c());
    let (sa, a) = normalizer(&a_blk)?;
    let (sb, b) = normalizer(&b_blk)?;
    let c = sa * c_blk * sb.transpose();
    let sv = c.svd(false, false).singular_values;
    let (hi, lo) = (sv[0].max(sv[1]), sv[0].min(sv[1]));
    let c2 = if c.determinant() < 0.0 { -lo } else { lo };
    StandardForm::new(a, b, hi, c2)
}

/// Returns `S` with `det S = 1` and `S X Sᵀ = √det(X) I₂`, plus `√det(X)`.
fn normalizer(x: &Matrix2<f64>) -> Result<(Matrix2<f64>, f64)> {
    let eig = nalgebra::SymmetricEigen::new((x + x.transpose()) * 0.5);
    let min_eigenvalue = eig.eigenvalues.min();
    if !(min_eigenvalue > 0.0) {
        return Err(Error::NonPositiveMatrix { min_eigenvalue });
    }
    let det = eig.eigenvalues[0] * eig.eigenvalues[1];
    let scale = det.sqrt();
    let inv_sqrt = eig.eigenvectors
        * Matrix2::from_diagonal(&eig.eigenvalues.map(|l| (scale / l).sqrt()))
        * eig.eigenvectors.transpose();
    Ok((inv_sqrt, scale))
}

/// Slack allowed on `I4/(ab) >= 2|I3|` before declaring the invariants degenerate.
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-9;

/// Symplectic eigenvalues through the invariant closed form.
pub fn symplectic_eigenvalues(v: &CovMat) -> Result<SympSpectrum> {
    require_positive(v)?;
    Ok(invariants(v).spectrum())
}

/// Symplectic eigenvalues of the partially transposed covariance matrix.
pub fn ppt_eigenvalues(v: &CovMat) -> Result<SympSpectrum> {
    require_positive(v)?;
    Ok(invariants(v).ppt_spectrum())
}

fn require_positive(v: &CovMat) -> Result<()> {
    let min_eigenvalue = v.matrix().min_eigenvalue();
    if min_eigenvalue > DEFAULT_PSD_TOL {
        Ok(())
    } else {
        Err(Error::NonPositiveMatrix { min_eigenvalue })
    }
}

/// Positive definite with `μ₋ >= 1 - tol`.
pub fn is_physical(v: &CovMat, tol: f64) -> bool {
    v.require_physical(tol).is_ok()
}

/// PPT criterion: entangled iff the smallest partially transposed symplectic
/// eigenvalue is below one.
pub fn is_entangled(v: &CovMat, tol: f64) -> Result<bool> {
    v.require_physical(tol)?;
    Ok(invariants(v).ppt_spectrum().mu_minus < 1.0 - tol)
}

/// Which local block fills both diagonal slots of a symmetric reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    A,
    B,
    Midpoint,
}

/// Symmetric state `[[M, C], [Cᵀ, M]]` sharing the correlation block of `v`.
pub fn reduced_symmetric(v: &CovMat, which: Side) -> CovMat {
    let m = match which {
        Side::A => v.block_a(),
        Side::B => v.block_b(),
        Side::Midpoint => (v.block_a() + v.block_b()) * 0.5,
    };
    CovMat::from_blocks(&m, &m, &v.block_c())
}

/// Single-mode symplectic `R(θ) diag(eˢ, e⁻ˢ) R(φ)`.
pub fn single_mode_symplectic(theta: f64, squeeze: f64, phi: f64) -> Matrix2<f64> {
    rotation(theta) * Matrix2::new(squeeze.exp(), 0.0, 0.0, (-squeeze).exp()) * rotation(phi)
}

pub(crate) fn rotation(t: f64) -> Matrix2<f64> {
    let (s, c) = t.sin_cos();
    Matrix2::new(c, -s, s, c)
}

/// Block-diagonal `S_A ⊕ S_B`.
pub fn local_symplectic(sa: &Matrix2<f64>, sb: &Matrix2<f64>) -> Matrix4<f64> {
    let mut s = Matrix4::zeros();
    s.fixed_view_mut::<2, 2>(0, 0).copy_from(sa);
    s.fixed_view_mut::<2, 2>(2, 2).copy_from(sb);
    s
}
