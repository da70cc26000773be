//! Seeded random states for tests, examples and scans.

use nalgebra::{Matrix2, Matrix4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::state::{
    is_entangled, is_physical, local_symplectic, reduced_symmetric, single_mode_symplectic,
    CovMat, Side, StandardForm,
};
use crate::symplectic::SymMat4;

const MAX_REJECTIONS: usize = 100_000;

/// Draws standard forms with `a, b ∈ [1, max_local]`, `c1 ∈ [0, √(ab))` and
/// `c2 ∈ [-c1, c1]`, rejecting unphysical draws.
#[derive(Debug, Clone)]
pub struct StateSampler {
    rng: ChaCha8Rng,
    pub max_local: f64,
    pub tol: f64,
}

impl StateSampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), max_local: 3.0, tol: 1e-9 }
    }

    pub fn with_max_local(mut self, max_local: f64) -> Self {
        assert!(max_local > 1.0);
        self.max_local = max_local;
        self
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn draw(&mut self, symmetric: bool) -> StandardForm {
        let a = self.rng.gen_range(1.0..self.max_local);
        let b = if symmetric { a } else { self.rng.gen_range(1.0..self.max_local) };
        let c1 = self.rng.gen_range(0.0..(a * b).sqrt());
        let c2 = self.rng.gen_range(-c1..=c1);
        StandardForm { a, b, c1, c2 }
    }

    fn sample_where(&mut self, symmetric: bool, accept: impl Fn(&CovMat) -> bool) -> StandardForm {
        for _ in 0..MAX_REJECTIONS {
            let s = self.draw(symmetric);
            let v = s.covariance();
            if is_physical(&v, self.tol) && accept(&v) {
                return s;
            }
        }
        panic!("sampler rejected {MAX_REJECTIONS} draws in a row");
    }

    pub fn standard_form(&mut self) -> StandardForm {
        self.sample_where(false, |_| true)
    }

    pub fn physical(&mut self) -> CovMat {
        self.standard_form().covariance()
    }

    pub fn symmetric(&mut self) -> CovMat {
        self.sample_where(true, |_| true).covariance()
    }

    pub fn entangled(&mut self) -> CovMat {
        let tol = self.tol;
        self.sample_where(false, |v| is_entangled(v, tol).unwrap_or(false)).covariance()
    }

    /// Entangled states whose smaller-block reduction is physical (`a <= b`).
    pub fn entangled_with_physical_upper(&mut self) -> CovMat {
        let tol = self.tol;
        let s = self.sample_where(false, |v| {
            let smaller = if v.block_a()[(0, 0)] <= v.block_b()[(0, 0)] { Side::A } else { Side::B };
            is_entangled(v, tol).unwrap_or(false)
                && is_physical(&reduced_symmetric(v, smaller), tol)
        });
        if s.a <= s.b { s } else { StandardForm { a: s.b, b: s.a, ..s } }.covariance()
    }

    pub fn single_mode_symplectic(&mut self) -> Matrix2<f64> {
        let theta = self.rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        let phi = self.rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        let s = self.rng.gen_range(-0.8..0.8);
        single_mode_symplectic(theta, s, phi)
    }

    pub fn local_symplectic(&mut self) -> Matrix4<f64> {
        let (sa, sb) = (self.single_mode_symplectic(), self.single_mode_symplectic());
        local_symplectic(&sa, &sb)
    }

    /// Random positive semidefinite matrix `G Gᵀ · scale`, possibly rank deficient.
    pub fn psd(&mut self, scale: f64) -> SymMat4 {
        let rank = self.rng.gen_range(1..=4);
        let mut g = Matrix4::zeros();
        for i in 0..4 {
            for j in 0..rank {
                g[(i, j)] = self.rng.gen_range(-1.0..1.0);
            }
        }
        SymMat4::new(g * g.transpose() * scale)
    }
}
