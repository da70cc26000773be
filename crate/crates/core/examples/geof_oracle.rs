//! Numerical Gaussian EoF: minimal entanglement of a pure Gaussian state
//! lying below V in the Loewner order.
//!
//!     cargo run --release --example geof_oracle

use std::time::Instant;

use gauss_eof::{eof_symmetric, geof, geof_with, CovMat, GeofOptions, StandardForm, SymMat4};

fn main() -> gauss_eof::Result<()> {
    let sym = CovMat::symmetric(1.4, 0.9, -0.7);
    let g = geof(&sym)?;
    println!("symmetric: GeoF {:.9}  closed form {:.9}", g.value.nats(), eof_symmetric(&sym)?.nats());

    let v = StandardForm::new(1.3, 1.9, 0.9, -0.7)?.covariance();
    let t = Instant::now();
    let g = geof(&v)?;
    println!(
        "\nnon-symmetric: GeoF {:.9} via {:?} in {} evaluations, {:.2?}",
        g.value.nats(),
        g.parametrization,
        g.iterations,
        t.elapsed()
    );
    let p = g.pure_cm.expect("minimizer");
    let slack: SymMat4 = *v.matrix() - p;
    println!("V - Gamma min eigenvalue {:.2e} (feasible: {})", slack.min_eigenvalue(), g.feasible);

    // the general local-symplectic family is available but much slower
    let t = Instant::now();
    let h = geof_with(&v, &GeofOptions::thorough())?;
    println!("thorough:      GeoF {:.9} via {:?}, {:.2?}", h.value.nats(), h.parametrization, t.elapsed());
    Ok(())
}
