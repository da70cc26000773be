//! Numerical Gaussian entanglement of formation.
//!
//! GeoF is the minimum entanglement entropy over pure two-mode Gaussian
//! covariance matrices `Γ` with `Γ <= V`. The input is first reduced to
//! standard form, then searched in two stages:
//!
//! 1. pure states without position-momentum correlations, `Γ = Γ_x ⊕ Γ_x⁻¹`
//!    (in `(x1, x2, p1, p2)` ordering). Feasibility becomes the 2x2 interval
//!    `V_p⁻¹ <= Γ_x <= V_x`, which is convex, and every trial point is pulled
//!    radially back into it so the search only ever reports feasible states;
//! 2. the general family `Γ = L T(r) T(r)ᵀ Lᵀ`, with `T(r)` a two-mode squeezer
//!    and `L = S_A ⊕ S_B` local symplectics, explored by a seeded multistart
//!    Nelder-Mead. For fixed `L` the smallest feasible `r` is found by a grid
//!    scan followed by bisection, so this stage is feasible by construction too.
//!
//! Stage 2 is opt-in (`starts > 0`); on random states it has not improved on
//! stage 1. The smaller of the candidates is returned.

use nalgebra::{Cholesky, Matrix2, Matrix4, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::eof::{f_value, EntanglementValue};
use crate::error::{Error, Result};
use crate::optimize::NelderMead;
use crate::state::{
    is_entangled, ppt_eigenvalues, rotation, single_mode_symplectic, standard_form, CovMat,
    StandardForm,
};
use crate::symplectic::{
    loewner_ge, min_eigenvalue2, symplectic_spectrum, SymMat4, DEFAULT_PSD_TOL,
};

pub const DEFAULT_GEOF_TOL: f64 = 1e-6;
pub const DEFAULT_GEOF_BUDGET: usize = 100_000;
/// Purity check on the reported minimizer.
const PURITY_TOL: f64 = 1e-8;
const R_GRID: usize = 48;
const QUADRATURE_NM: NelderMead = NelderMead { max_evals: 20_000, f_tol: 1e-16, x_tol: 1e-11 };

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeofOptions {
    /// Stop refining once a restart improves the value by less than this.
    pub tol: f64,
    /// Maximum number of objective evaluations over all stages.
    pub budget: usize,
    /// Starting points for the general local-symplectic search; 0 skips it.
    pub starts: usize,
    pub seed: u64,
    pub psd_tol: f64,
    pub physical_tol: f64,
}

impl GeofOptions {
    /// Also runs the general local-symplectic stage (about 400x slower).
    pub fn thorough() -> Self {
        Self { starts: 6, ..Self::default() }
    }
}

impl Default for GeofOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_GEOF_TOL,
            budget: DEFAULT_GEOF_BUDGET,
            starts: 0,
            seed: 0x5eed,
            psd_tol: DEFAULT_PSD_TOL,
            physical_tol: crate::DEFAULT_PHYSICAL_TOL,
        }
    }
}

/// Which family produced the minimizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parametrization {
    /// `argmin_parameters = [g11, g12, g22]`, the entries of `Γ_x`.
    Quadrature,
    /// `argmin_parameters = [θ_A, s_A, θ_B, s_B, ψ, r]`.
    LocalSqueezer,
    /// The input is pure; the minimizer is the state itself.
    Pure,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeofResult {
    pub value: EntanglementValue,
    pub parametrization: Parametrization,
    pub argmin_parameters: Vec<f64>,
    /// Standard form the search ran in.
    pub standard_form: StandardForm,
    /// The pure minimizer `Γ_p`, expressed in the standard-form frame.
    #[serde(skip)]
    pub pure_cm: Option<SymMat4>,
    pub feasible: bool,
    pub converged: bool,
    /// Objective evaluations used.
    pub iterations: usize,
}

impl GeofResult {
    /// Converts an unconverged result into `BudgetExhausted`.
    pub fn require_converged(self, budget: usize) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::BudgetExhausted { budget, best: self.value.nats() })
        }
    }
}

/// GeoF with default options.
pub fn geof(v: &CovMat) -> Result<GeofResult> {
    geof_with(v, &GeofOptions::default())
}

pub fn geof_with(v: &CovMat, opts: &GeofOptions) -> Result<GeofResult> {
    v.require_physical(opts.physical_tol)?;
    let sf = standard_form(v)?;
    let target = sf.covariance();
    let entangled = is_entangled(&target, opts.physical_tol)?;
    let spectrum = symplectic_spectrum(target.matrix())?;

    if (spectrum.mu_plus - 1.0).abs() < PURITY_TOL && (spectrum.mu_minus - 1.0).abs() < PURITY_TOL
    {
        let value = if entangled {
            f_value(ppt_eigenvalues(&target)?.mu_minus)?
        } else {
            EntanglementValue::ZERO
        };
        return Ok(GeofResult {
            value,
            parametrization: Parametrization::Pure,
            argmin_parameters: vec![],
            standard_form: sf,
            pure_cm: Some(*target.matrix()),
            feasible: true,
            converged: true,
            iterations: 0,
        });
    }

    let mut budget = Budget::new(opts.budget);
    let quad = QuadratureSearch::new(&sf, opts.psd_tol).run(opts, &mut budget);
    let mut best = Candidate {
        r: quad.squeezing(),
        parametrization: Parametrization::Quadrature,
        params: quad.params.clone(),
        pure_cm: quad.pure_cm,
        converged: quad.converged,
    };

    if entangled && opts.starts > 0 && budget.remaining() > 0 {
        let local = LocalSearch::new(&target).run(opts, &mut budget);
        if let Some(local) = local {
            if local.r < best.r {
                best = local;
            }
        }
    }

    let feasible = loewner_ge(target.matrix(), &best.pure_cm, opts.psd_tol)
        && symplectic_spectrum(&best.pure_cm)
            .map(|s| (s.mu_minus - 1.0).abs() < PURITY_TOL && (s.mu_plus - 1.0).abs() < PURITY_TOL)
            .unwrap_or(false);

    let value = if entangled {
        f_value((-2.0 * best.r).exp())?
    } else {
        EntanglementValue::ZERO
    };

    Ok(GeofResult {
        value,
        parametrization: best.parametrization,
        argmin_parameters: best.params,
        standard_form: sf,
        pure_cm: Some(best.pure_cm),
        feasible,
        converged: best.converged && !budget.exhausted(),
        iterations: budget.used,
    })
}

struct Budget {
    limit: usize,
    used: usize,
}

impl Budget {
    fn new(limit: usize) -> Self {
        Self { limit, used: 0 }
    }

    fn remaining(&self) -> usize {
        self.limit.saturating_sub(self.used)
    }

    fn exhausted(&self) -> bool {
        self.used >= self.limit
    }
}

struct Candidate {
    /// Two-mode squeezing of the pure minimizer; entanglement is monotone in it.
    r: f64,
    parametrization: Parametrization,
    params: Vec<f64>,
    pure_cm: SymMat4,
    converged: bool,
}

/// Stage 1: x-p uncorrelated pure states, `Γ_x` ranging over `V_p⁻¹ <= Γ_x <= V_x`.
struct QuadratureSearch {
    center: Matrix2<f64>,
    half_width_inv_sqrt: Matrix2<f64>,
    half_width_sqrt: Matrix2<f64>,
}

struct QuadratureOutcome {
    params: Vec<f64>,
    /// `Γ12² / det Γ_x`, equal to `cosh²(2r) - 1`.
    q: f64,
    pure_cm: SymMat4,
    converged: bool,
}

impl QuadratureOutcome {
    fn squeezing(&self) -> f64 {
        0.5 * (1.0 + self.q).sqrt().acosh()
    }
}

impl QuadratureSearch {
    fn new(sf: &StandardForm, psd_tol: f64) -> Self {
        let vx = Matrix2::new(sf.a, sf.c1, sf.c1, sf.b);
        let vp = Matrix2::new(sf.a, sf.c2, sf.c2, sf.b);
        let vp_inv = vp.try_inverse().expect("physical state has invertible V_p");
        // Regularized so a state with a unit symplectic eigenvalue keeps a usable interior.
        let eps = psd_tol.min(1e-12) * (1.0 + vx.trace());
        let half = (vx - vp_inv) * 0.5 + Matrix2::identity() * eps;
        let eig = SymmetricEigen::new(half);
        let d = eig.eigenvalues.map(|x| x.max(eps));
        let root = eig.eigenvectors
            * Matrix2::from_diagonal(&d.map(f64::sqrt))
            * eig.eigenvectors.transpose();
        let inv_root = eig.eigenvectors
            * Matrix2::from_diagonal(&d.map(|x| x.sqrt().recip()))
            * eig.eigenvectors.transpose();
        Self {
            center: (vx + vp_inv) * 0.5,
            half_width_inv_sqrt: inv_root,
            half_width_sqrt: root,
        }
    }

    /// Pulls a trial `Γ_x` back into the feasible interval along the ray from
    /// the center. Returns the feasible point and the overshoot factor.
    fn project(&self, p: &[f64]) -> (Matrix2<f64>, f64) {
        let trial = Matrix2::new(p[0], p[1], p[1], p[2]);
        let e = trial - self.center;
        let k = self.half_width_inv_sqrt * e * self.half_width_inv_sqrt;
        let radius = spectral_radius2(&k);
        let scale = if radius > 1.0 { radius.recip() } else { 1.0 };
        (self.center + e * scale, radius)
    }

    fn merit(&self, p: &[f64]) -> f64 {
        let (g, radius) = self.project(p);
        let det = g.determinant();
        if !(det > 0.0) {
            return f64::INFINITY;
        }
        g[(0, 1)] * g[(0, 1)] / det + 1e-3 * (radius - 1.0).max(0.0)
    }

    fn run(&self, opts: &GeofOptions, budget: &mut Budget) -> QuadratureOutcome {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let scale = self.half_width_sqrt.amax().max(1e-6);
        let mut starts: Vec<Matrix2<f64>> = vec![self.center];
        for (u11, u12, u22) in [(0.6, 0.0, -0.6), (-0.6, 0.0, 0.6), (0.0, 0.6, 0.0)] {
            let u = Matrix2::new(u11, u12, u12, u22);
            starts.push(self.center + self.half_width_sqrt * u * self.half_width_sqrt);
        }
        for _ in 0..2 {
            let u11: f64 = rng.gen_range(-0.8..0.8);
            let u12: f64 = rng.gen_range(-0.8..0.8);
            let u22: f64 = rng.gen_range(-0.8..0.8);
            let u = Matrix2::new(u11, u12, u12, u22);
            starts.push(self.center + self.half_width_sqrt * u * self.half_width_sqrt);
        }

        let mut best: Option<(Vec<f64>, f64, bool)> = None;
        for s in starts {
            if budget.remaining() == 0 {
                break;
            }
            let x0 = [s[(0, 0)], s[(0, 1)], s[(1, 1)]];
            let (x, value, converged) =
                refine(|p| self.merit(p), &x0, 0.3 * scale, opts.tol, &QUADRATURE_NM, budget);
            if best.as_ref().map_or(true, |b| value < b.1) {
                best = Some((x, value, converged));
            }
        }
        let (x, _, converged) = best.unwrap_or((vec![self.center[(0, 0)], self.center[(0, 1)], self.center[(1, 1)]], 0.0, false));
        let (g, _) = self.project(&x);
        let q = (g[(0, 1)] * g[(0, 1)] / g.determinant()).max(0.0);
        QuadratureOutcome {
            params: vec![g[(0, 0)], g[(0, 1)], g[(1, 1)]],
            q,
            pure_cm: quadrature_pure_cm(&g),
            converged,
        }
    }
}

/// Nelder-Mead with restarts until a restart gains less than `tol`.
fn refine<F>(
    objective: F,
    x0: &[f64],
    step: f64,
    tol: f64,
    local: &NelderMead,
    budget: &mut Budget,
) -> (Vec<f64>, f64, bool)
where
    F: Fn(&[f64]) -> f64,
{
    let mut x = x0.to_vec();
    let mut value = f64::INFINITY;
    let mut step = step;
    let mut converged = false;
    for _ in 0..8 {
        if budget.remaining() == 0 {
            converged = false;
            break;
        }
        let nm = NelderMead { max_evals: local.max_evals.min(budget.remaining()), ..local.clone() };
        let m = nm.minimize(&objective, &x, &vec![step; x.len()]);
        budget.used += m.evaluations;
        let gain = value - m.value;
        if m.value < value {
            x = m.x;
            value = m.value;
        }
        converged = m.converged;
        if !m.converged || gain.abs() < tol * 1e-3 {
            break;
        }
        step = (step * 0.1).max(1e-6);
    }
    (x, value, converged)
}

fn spectral_radius2(k: &Matrix2<f64>) -> f64 {
    let lo = min_eigenvalue2(k);
    let hi = k.trace() - lo;
    lo.abs().max(hi.abs())
}

/// `Γ_x ⊕ Γ_x⁻¹` rearranged into `(x1, p1, x2, p2)` ordering.
fn quadrature_pure_cm(gx: &Matrix2<f64>) -> SymMat4 {
    let gp = gx.try_inverse().unwrap_or_else(Matrix2::identity);
    SymMat4::from_rows([
        [gx[(0, 0)], 0.0, gx[(0, 1)], 0.0],
        [0.0, gp[(0, 0)], 0.0, gp[(0, 1)]],
        [gx[(1, 0)], 0.0, gx[(1, 1)], 0.0],
        [0.0, gp[(1, 0)], 0.0, gp[(1, 1)]],
    ])
}

/// Stage 2: `Γ = L T(r) T(r)ᵀ Lᵀ` over local symplectics `L` and squeezing `r`.
struct LocalSearch {
    v: Matrix4<f64>,
    r_max: f64,
}

enum Crossing {
    Feasible(f64),
    Infeasible { violation: f64 },
}

impl LocalSearch {
    fn new(target: &CovMat) -> Self {
        // A pure state with squeezing r has trace >= 4 cosh 2r.
        let r_max = 0.5 * (target.matrix().trace() / 4.0).max(1.0).acosh() + 1e-9;
        Self { v: *target.matrix().matrix(), r_max }
    }

    fn local(p: &[f64]) -> (Matrix4<f64>, Matrix4<f64>) {
        let sa = single_mode_symplectic(p[0], p[1], 0.0);
        let sb = single_mode_symplectic(p[2], p[3], p[4]);
        let sa_inv = Matrix2::new((-p[1]).exp(), 0.0, 0.0, p[1].exp()) * rotation(-p[0]);
        let sb_inv =
            rotation(-p[4]) * Matrix2::new((-p[3]).exp(), 0.0, 0.0, p[3].exp()) * rotation(-p[2]);
        (
            crate::state::local_symplectic(&sa, &sb),
            crate::state::local_symplectic(&sa_inv, &sb_inv),
        )
    }

    fn tmsv(r: f64) -> Matrix4<f64> {
        *CovMat::two_mode_squeezed(r).matrix().matrix()
    }

    fn feasible_at(&self, w: &Matrix4<f64>, r: f64) -> bool {
        let m = w - Self::tmsv(r);
        Cholesky::new(m).is_some()
    }

    /// Smallest `r` with `W >= T(r)T(r)ᵀ`, where `W = L⁻¹ V L⁻ᵀ`.
    fn first_crossing(&self, p: &[f64]) -> Crossing {
        let (_, inv) = Self::local(p);
        let w = inv * self.v * inv.transpose();
        let step = self.r_max / (R_GRID - 1) as f64;
        if self.feasible_at(&w, 0.0) {
            return Crossing::Feasible(0.0);
        }
        for i in 1..R_GRID {
            let r = step * i as f64;
            if self.feasible_at(&w, r) {
                let (mut lo, mut hi) = (r - step, r);
                for _ in 0..60 {
                    let mid = 0.5 * (lo + hi);
                    if self.feasible_at(&w, mid) {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                    if hi - lo < 1e-15 {
                        break;
                    }
                }
                return Crossing::Feasible(hi);
            }
        }
        let violation = (0..R_GRID)
            .map(|i| {
                let m = w - Self::tmsv(step * i as f64);
                -SymmetricEigen::new(m).eigenvalues.min()
            })
            .fold(f64::INFINITY, f64::min);
        Crossing::Infeasible { violation }
    }

    fn merit(&self, p: &[f64]) -> f64 {
        match self.first_crossing(p) {
            Crossing::Feasible(r) => r,
            Crossing::Infeasible { violation } => self.r_max + 1.0 + violation,
        }
    }

    fn run(&self, opts: &GeofOptions, budget: &mut Budget) -> Option<Candidate> {
        use std::f64::consts::PI;
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x9e37_79b9_7f4a_7c15);
        let mut best: Option<(Vec<f64>, f64, bool)> = None;
        for k in 0..opts.starts {
            if budget.remaining() == 0 {
                break;
            }
            let x0: Vec<f64> = if k == 0 {
                vec![0.0; 5]
            } else {
                vec![
                    rng.gen_range(-PI..PI),
                    rng.gen_range(-0.6..0.6),
                    rng.gen_range(-PI..PI),
                    rng.gen_range(-0.6..0.6),
                    rng.gen_range(-PI..PI),
                ]
            };
            let nm = NelderMead { max_evals: 4_000, f_tol: 1e-3 * opts.tol, x_tol: 1e-7 };
            let (x, value, converged) = refine(|p| self.merit(p), &x0, 0.4, opts.tol, &nm, budget);
            if value <= self.r_max && best.as_ref().map_or(true, |b| value < b.1) {
                best = Some((x, value, converged));
            }
        }
        let (x, r, converged) = best?;
        let (l, _) = Self::local(&x);
        let pure_cm = SymMat4::new(l * Self::tmsv(r) * l.transpose());
        let mut params = x;
        params.push(r);
        Some(Candidate {
            r,
            parametrization: Parametrization::LocalSqueezer,
            params,
            pure_cm,
            converged,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eof::eof_symmetric;
    use approx::assert_abs_diff_eq;

    #[test]
    fn separable_state_is_zero() {
        let v = StandardForm::new(2.0, 2.5, 0.3, -0.2).unwrap().covariance();
        let g = geof(&v).unwrap();
        assert_eq!(g.value, EntanglementValue::ZERO);
        assert!(g.feasible);
    }

    #[test]
    fn symmetric_state_matches_closed_form() {
        let s = 0.2f64.sqrt();
        let v = CovMat::symmetric(1.2, s, -s);
        let g = geof(&v).unwrap();
        assert!(g.feasible && g.converged);
        assert_abs_diff_eq!(
            g.value.nats(),
            eof_symmetric(&v).unwrap().nats(),
            epsilon = 1e-6
        );
    }

    #[test]
    fn pure_state_is_its_own_minimizer() {
        let r = 0.6;
        let g = geof(&CovMat::two_mode_squeezed(r)).unwrap();
        assert_eq!(g.parametrization, Parametrization::Pure);
        assert_abs_diff_eq!(
            g.value.nats(),
            crate::eof::f((-2.0 * r).exp()).unwrap(),
            epsilon = 1e-9
        );
    }

    #[test]
    fn minimizer_is_pure_and_dominated() {
        let v = StandardForm::new(1.3, 1.8, 0.9, -0.7).unwrap().covariance();
        let g = geof(&v).unwrap();
        let p = g.pure_cm.unwrap();
        assert!(g.feasible);
        assert!(loewner_ge(v.matrix(), &p, 1e-10));
        let s = symplectic_spectrum(&p).unwrap();
        assert_abs_diff_eq!(s.mu_minus, 1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(s.mu_plus, 1.0, epsilon = 1e-8);
    }

    #[test]
    fn local_stage_agrees_with_quadrature_stage() {
        let sf = StandardForm::new(1.4, 1.9, 1.0, -0.8).unwrap();
        let v = sf.covariance();
        let opts = GeofOptions::default();
        let mut budget = Budget::new(opts.budget);
        let quad = QuadratureSearch::new(&sf, opts.psd_tol).run(&opts, &mut budget);
        let local = LocalSearch::new(&v)
            .run(&GeofOptions { starts: 8, ..opts }, &mut budget)
            .unwrap();
        let eq = f_value((-2.0 * quad.squeezing()).exp()).unwrap().nats();
        let el = f_value((-2.0 * local.r).exp()).unwrap().nats();
        assert_abs_diff_eq!(eq, el, epsilon = 1e-6);
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let v = StandardForm::new(1.4, 1.9, 1.0, -0.8).unwrap().covariance();
        let g = geof_with(&v, &GeofOptions { budget: 20, ..GeofOptions::default() }).unwrap();
        assert!(!g.converged);
        assert!(matches!(
            g.require_converged(20),
            Err(Error::BudgetExhausted { budget: 20, .. })
        ));
    }

    #[test]
    fn unphysical_input_rejected() {
        let v = StandardForm::new(1.0, 1.0, 0.4, -0.4).unwrap().covariance();
        assert!(matches!(geof(&v), Err(Error::NonPhysicalState { .. })));
    }
}
