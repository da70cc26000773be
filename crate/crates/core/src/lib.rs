//! Bounds on the entanglement of formation (EoF) of two-mode Gaussian states.
//!
//! States are 4x4 covariance matrices in `(x1, p1, x2, p2)` ordering with the
//! vacuum normalized to the identity. Adding classical Gaussian noise cannot
//! increase the EoF, so any physical state `V₀` with `V - V₀ >= 0` gives an
//! upper bound and any physical `V₁` with `V₁ - V >= 0` a lower bound. Using
//! symmetric states, whose EoF is known in closed form, yields a computable
//! sandwich:
//!
//! ```
//! use gauss_eof::{bound_report, BoundOptions, StandardForm};
//!
//! let v = StandardForm::new(1.2, 1.4, 0.45, -0.45)?.covariance();
//! let r = bound_report(&v, &BoundOptions::default())?;
//! let geof = r.geof_value().unwrap().nats();
//! assert!(r.lower_sigma.nats() <= geof + 1e-6);
//! assert!(geof <= r.upper_natural.unwrap().nats() + 1e-6);
//! # Ok::<(), gauss_eof::Error>(())
//! ```

pub mod bounds;
pub mod cli;
pub mod eof;
pub mod error;
pub mod geof;
pub mod optimize;
pub mod sampling;
pub mod state;
pub mod symplectic;

pub use bounds::{
    bound_report, natural_bounds, noise_decomposition, searched_upper_bound, sigma_lower_bound,
    BoundOptions, BoundReport, Frame,
};
pub use eof::{eeof, eof_symmetric, f, EntanglementValue, Units};
pub use error::{Error, Result};
pub use geof::{geof, geof_with, GeofOptions, GeofResult};
pub use state::{
    invariants, is_entangled, is_physical, ppt_eigenvalues, reduced_symmetric, standard_form,
    symplectic_eigenvalues, CovMat, Invariants, Side, StandardForm,
};
pub use symplectic::{is_psd, loewner_ge, symplectic_spectrum, SymMat4, SympSpectrum};

/// Slack allowed below 1 for the smallest symplectic eigenvalue.
pub const DEFAULT_PHYSICAL_TOL: f64 = 1e-10;
