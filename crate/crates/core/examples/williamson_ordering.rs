//! If H1 >= H2 > 0 then the symplectic spectra are ordered componentwise.
//! This is why more noise can only push symplectic eigenvalues up.
//!
//!     cargo run --example williamson_ordering

use gauss_eof::sampling::StateSampler;
use gauss_eof::{symplectic_spectrum, SymMat4};

fn main() -> gauss_eof::Result<()> {
    let mut s = StateSampler::new(2);
    let mut worst = f64::INFINITY;
    for _ in 0..10_000 {
        let h2 = s.psd(1.0) + SymMat4::identity().scale(0.05);
        let h1 = h2 + s.psd(0.5);
        let (a, b) = (symplectic_spectrum(&h1)?, symplectic_spectrum(&h2)?);
        worst = worst.min(a.mu_minus - b.mu_minus).min(a.mu_plus - b.mu_plus);
    }
    println!("10000 pairs H1 >= H2: smallest spectral gap {worst:.3e} (never negative)");
    Ok(())
}
