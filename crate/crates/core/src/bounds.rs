//! EoF bounds from classical-noise decompositions `V = V₀ + Δ`, `Δ >= 0`.
//!
//! With `B >= A` the symmetric states built from the local blocks give
//!
//! ```text
//! EoF(ρ_BB) <= EoF(σ) <= EoF(ρ_AB) <= EoF(ρ_AA)
//! ```
//!
//! where `σ` uses the midpoint block `(A + B)/2`. `ρ_AA` may be unphysical, in
//! which case a symmetric state with a scaled correlation block is searched
//! instead.

use nalgebra::Matrix2;
use serde::{Deserialize, Serialize};

use crate::eof::{eeof_with_tol, eof_symmetric_with_tol, f_value, EntanglementValue};
use crate::error::{Error, Result};
use crate::geof::{geof_with, GeofOptions, GeofResult};
use crate::state::{
    is_entangled, is_physical, reduced_symmetric, standard_form, CovMat, Side, StandardForm,
};
use crate::symplectic::{loewner_ge2, SymMat4, DEFAULT_PSD_TOL};

/// Tolerance for comparing entanglement values against each other.
pub const DEFAULT_BOUND_TOL: f64 = 1e-9;
pub const DEFAULT_SEARCH_STEPS: usize = 400;

/// Frame in which the local blocks are compared and the natural bound states
/// (`ρ_BB`, `ρ_AA`, and the difference state) are built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Frame {
    /// Standard form: blocks `a I₂`, `b I₂` are always comparable.
    #[default]
    StandardForm,
    /// Blocks exactly as given; fails with `IncomparableBlocks` when neither
    /// `A >= B` nor `B >= A`.
    Raw,
    /// Raw blocks when comparable, standard form otherwise.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundOptions {
    pub psd_tol: f64,
    pub bound_tol: f64,
    pub physical_tol: f64,
    pub frame: Frame,
    pub search_steps: usize,
    /// Run the GeoF oracle as part of the report.
    pub geof: Option<GeofOptions>,
    /// Also evaluate the `M = B - A` upper bound.
    pub difference_bound: bool,
}

impl Default for BoundOptions {
    fn default() -> Self {
        Self {
            psd_tol: DEFAULT_PSD_TOL,
            bound_tol: DEFAULT_BOUND_TOL,
            physical_tol: crate::DEFAULT_PHYSICAL_TOL,
            frame: Frame::default(),
            search_steps: DEFAULT_SEARCH_STEPS,
            geof: Some(GeofOptions::default()),
            difference_bound: false,
        }
    }
}

impl BoundOptions {
    pub fn without_geof(self) -> Self {
        Self { geof: None, ..self }
    }
}

/// A positive semidefinite noise matrix `Δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseMatrix {
    delta: SymMat4,
}

impl NoiseMatrix {
    pub fn new(delta: SymMat4, tol: f64) -> Result<Self> {
        let min_eigenvalue = delta.min_eigenvalue();
        if min_eigenvalue < -tol {
            return Err(Error::NotPsd { min_eigenvalue });
        }
        Ok(Self { delta })
    }

    pub fn delta(&self) -> &SymMat4 {
        &self.delta
    }
}

/// `Δ = v - target` if it is positive semidefinite, certifying
/// `EoF(v) <= EoF(target)`.
pub fn noise_decomposition(v: &CovMat, target: &CovMat, tol: f64) -> Result<NoiseMatrix> {
    NoiseMatrix::new(*v.matrix() - *target.matrix(), tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameUsed {
    Raw,
    StandardForm,
}

/// The state relabelled so that `B >= A`, in the frame the bounds are built in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Oriented {
    pub cm: CovMat,
    pub frame: FrameUsed,
    /// Whether the two modes were exchanged.
    pub swapped: bool,
}

pub fn orient(v: &CovMat, frame: Frame, tol: f64) -> Result<Oriented> {
    if matches!(frame, Frame::Raw | Frame::Auto) {
        let (a, b) = (v.block_a(), v.block_b());
        if loewner_ge2(&b, &a, tol) {
            return Ok(Oriented { cm: *v, frame: FrameUsed::Raw, swapped: false });
        }
        if loewner_ge2(&a, &b, tol) {
            return Ok(Oriented { cm: v.swap_modes(), frame: FrameUsed::Raw, swapped: true });
        }
        if frame == Frame::Raw {
            return Err(Error::IncomparableBlocks);
        }
    }
    let sf = standard_form(v)?;
    let swapped = sf.a > sf.b;
    let sf = if swapped { StandardForm { a: sf.b, b: sf.a, ..sf } } else { sf };
    Ok(Oriented { cm: sf.covariance(), frame: FrameUsed::StandardForm, swapped })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NaturalBounds {
    /// `EoF(ρ_BB)` from the larger block.
    pub lower: EntanglementValue,
    /// `EoF(ρ_AA)` from the smaller block; absent when `ρ_AA` is unphysical.
    pub upper: Option<EntanglementValue>,
    pub upper_state_physical: bool,
    pub frame: FrameUsed,
    pub swapped: bool,
}

pub fn natural_bounds(v: &CovMat, opts: &BoundOptions) -> Result<NaturalBounds> {
    v.require_physical(opts.physical_tol)?;
    let o = orient(v, opts.frame, opts.psd_tol)?;
    let bb = reduced_symmetric(&o.cm, Side::B);
    let aa = reduced_symmetric(&o.cm, Side::A);
    let lower = symmetric_eof(&bb, opts)?;
    let upper_state_physical = is_physical(&aa, opts.physical_tol);
    let upper = if upper_state_physical { Some(symmetric_eof(&aa, opts)?) } else { None };
    Ok(NaturalBounds { lower, upper, upper_state_physical, frame: o.frame, swapped: o.swapped })
}

fn symmetric_eof(v: &CovMat, opts: &BoundOptions) -> Result<EntanglementValue> {
    eof_symmetric_with_tol(v, f64::INFINITY, opts.physical_tol)
}

/// EoF of the midpoint state `σ` with `M = (A + B)/2`.
///
/// Always built in standard form, whatever `opts.frame` says: with a
/// non-symmetric correlation block the raw midpoint state can be unphysical or
/// exceed the EoF of `v`.
pub fn sigma_lower_bound(v: &CovMat, opts: &BoundOptions) -> Result<EntanglementValue> {
    v.require_physical(opts.physical_tol)?;
    symmetric_eof(&sigma_state(v)?, opts)
}

fn sigma_state(v: &CovMat) -> Result<CovMat> {
    Ok(reduced_symmetric(&oriented_standard_form(v)?.covariance(), Side::Midpoint))
}

/// Best feasible member of the family `V' = [[m I, tC], [tC, m I]]` found on a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchedBound {
    pub value: EntanglementValue,
    pub m: f64,
    pub t: f64,
}

impl SearchedBound {
    pub fn covariance(&self, sf: &StandardForm) -> CovMat {
        CovMat::symmetric(self.m, self.t * sf.c1, self.t * sf.c2)
    }
}

/// Tightest symmetric upper bound with a scaled correlation block.
///
/// Works in the oriented standard form (`a <= b`). For each `t = k/steps` the
/// largest `m` with `V - V' >= 0` is used, since the symmetric EoF decreases in
/// `m`; that `m` solves `(a - m)(b - m) = (1 - t)² c1²`. Points where `V'` is
/// unphysical are skipped. `t` grids for `steps` and `2·steps` are nested, so
/// refining never worsens the result.
pub fn searched_upper_bound(
    v: &CovMat,
    steps: usize,
    opts: &BoundOptions,
) -> Result<Option<SearchedBound>> {
    v.require_physical(opts.physical_tol)?;
    let sf = oriented_standard_form(v)?;
    let (a, b, c1, c2) = (sf.a, sf.b, sf.c1, sf.c2);
    let steps = steps.max(1);
    let mut best: Option<SearchedBound> = None;
    for k in 1..=steps {
        let t = k as f64 / steps as f64;
        let kc = (1.0 - t) * c1;
        let m = if k == steps {
            a
        } else {
            0.5 * ((a + b) - ((a - b) * (a - b) + 4.0 * kc * kc).sqrt())
        };
        let (x1, x2) = (t * c1, t * c2);
        if !(m > x1) || (m - x1) * (m - x2) < (1.0 - opts.physical_tol).powi(2) {
            continue;
        }
        let nu = ((m - x1) * (m + x2)).max(0.0).sqrt();
        let value = if nu > 0.0 { f_value(nu)? } else { continue };
        if best.map_or(true, |bst| value.nats() < bst.value.nats()) {
            best = Some(SearchedBound { value, m, t });
        }
    }
    Ok(best)
}

fn oriented_standard_form(v: &CovMat) -> Result<StandardForm> {
    let sf = standard_form(v)?;
    Ok(if sf.a > sf.b { StandardForm { a: sf.b, b: sf.a, ..sf } } else { sf })
}

/// Upper bound from `M = B - A`, valid when `B - A <= A` and `ρ_MM` is physical.
pub fn difference_upper_bound(v: &CovMat, opts: &BoundOptions) -> Result<Option<EntanglementValue>> {
    v.require_physical(opts.physical_tol)?;
    let o = orient(v, opts.frame, opts.psd_tol)?;
    let (a, b) = (o.cm.block_a(), o.cm.block_b());
    let m: Matrix2<f64> = b - a;
    if !loewner_ge2(&a, &m, opts.psd_tol) {
        return Ok(None);
    }
    let mm = CovMat::from_blocks(&m, &m, &o.cm.block_c());
    if !is_physical(&mm, opts.physical_tol) {
        return Ok(None);
    }
    symmetric_eof(&mm, opts).map(Some)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalityFlags {
    pub frame: FrameUsed,
    pub swapped: bool,
    /// `ρ_BB`, the lower natural bound state.
    pub lower_state_physical: bool,
    pub sigma_state_physical: bool,
    /// `ρ_AA`, the upper natural bound state.
    pub upper_state_physical: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HierarchyCheck {
    pub holds: bool,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub lower_natural: EntanglementValue,
    pub lower_sigma: EntanglementValue,
    pub upper_natural: Option<EntanglementValue>,
    pub upper_searched: Option<EntanglementValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper_difference: Option<EntanglementValue>,
    pub eeof: EntanglementValue,
    pub geof: Option<GeofResult>,
    pub entangled: bool,
    pub flags: PhysicalityFlags,
    pub hierarchy: HierarchyCheck,
}

impl BoundReport {
    pub fn geof_value(&self) -> Option<EntanglementValue> {
        self.geof.as_ref().map(|g| g.value)
    }

    /// The tightest available upper bound.
    pub fn best_upper(&self) -> Option<EntanglementValue> {
        match (self.upper_natural, self.upper_searched) {
            (Some(x), Some(y)) => Some(if x.nats() <= y.nats() { x } else { y }),
            (x, y) => x.or(y),
        }
    }
}

/// Assembles every bound for `v` and checks
/// `lower_natural <= lower_sigma <= geof <= upper bounds`.
pub fn bound_report(v: &CovMat, opts: &BoundOptions) -> Result<BoundReport> {
    v.require_physical(opts.physical_tol)?;
    let entangled = is_entangled(v, opts.physical_tol)?;
    let natural = natural_bounds(v, opts)?;
    let o = orient(v, opts.frame, opts.psd_tol)?;
    let sigma_state = sigma_state(v)?;
    let lower_sigma = symmetric_eof(&sigma_state, opts)?;
    let upper_searched = searched_upper_bound(v, opts.search_steps, opts)?.map(|s| s.value);
    let upper_difference = if opts.difference_bound {
        difference_upper_bound(v, opts)?
    } else {
        None
    };
    let eeof = eeof_with_tol(v, opts.physical_tol)?;
    let geof = match &opts.geof {
        Some(g) => Some(geof_with(v, g)?),
        None => None,
    };

    let flags = PhysicalityFlags {
        frame: natural.frame,
        swapped: natural.swapped,
        lower_state_physical: is_physical(&reduced_symmetric(&o.cm, Side::B), opts.physical_tol),
        sigma_state_physical: is_physical(&sigma_state, opts.physical_tol),
        upper_state_physical: natural.upper_state_physical,
    };

    let mut report = BoundReport {
        lower_natural: natural.lower,
        lower_sigma,
        upper_natural: natural.upper,
        upper_searched,
        upper_difference,
        eeof,
        geof,
        entangled,
        flags,
        hierarchy: HierarchyCheck { holds: true, violations: vec![] },
    };
    report.hierarchy = check_hierarchy(&report, opts);
    Ok(report)
}

fn check_hierarchy(r: &BoundReport, opts: &BoundOptions) -> HierarchyCheck {
    let mut violations = Vec::new();
    let mut check = |name: &str, lo: f64, hi: f64, tol: f64| {
        if lo > hi + tol {
            violations.push(format!("{name}: {lo:.12e} > {hi:.12e}"));
        }
    };
    let tol = opts.bound_tol;
    let lower = r.lower_natural.nats();
    let sigma = r.lower_sigma.nats();
    let uppers = [("upper_natural", r.upper_natural), ("upper_searched", r.upper_searched), ("upper_difference", r.upper_difference)];
    // the natural bounds only nest with σ when built in the same frame
    if r.flags.frame == FrameUsed::StandardForm {
        check("lower_natural <= lower_sigma", lower, sigma, tol);
    }
    for (name, up) in uppers {
        if let Some(up) = up {
            check(&format!("lower_natural <= {name}"), lower, up.nats(), tol);
            check(&format!("lower_sigma <= {name}"), sigma, up.nats(), tol);
        }
    }
    if let (Some(g), Some(gopts)) = (&r.geof, &opts.geof) {
        let gv = g.value.nats();
        let gtol = gopts.tol;
        check("lower_natural <= geof", lower, gv, gtol);
        check("lower_sigma <= geof", sigma, gv, gtol);
        for (name, up) in uppers {
            if let Some(up) = up {
                check(&format!("geof <= {name}"), gv, up.nats(), gtol);
            }
        }
    }
    HierarchyCheck { holds: violations.is_empty(), violations }
}
