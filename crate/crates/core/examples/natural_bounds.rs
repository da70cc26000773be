//! Lower and upper bounds from the symmetric states built on each local block.
//!
//!     cargo run --example natural_bounds

use gauss_eof::bounds::{natural_bounds, noise_decomposition, BoundOptions};
use gauss_eof::{reduced_symmetric, Side, StandardForm};

fn main() -> gauss_eof::Result<()> {
    let opts = BoundOptions::default();
    for (a, b, c1, c2) in [(1.2, 1.4, 0.45, -0.45), (1.3, 2.0, 0.8, -0.6), (1.1, 2.0, 0.6, -0.3)] {
        let v = StandardForm::new(a, b, c1, c2)?.covariance();
        let nb = natural_bounds(&v, &opts)?;
        let upper = nb.upper.map_or("unphysical".to_string(), |u| format!("{:.6}", u.nats()));
        println!("a={a} b={b} c=({c1},{c2}):  {:.6} <= EoF <= {upper}", nb.lower.nats());
    }

    // the bounds are certified by explicit noise matrices
    let v = StandardForm::new(1.3, 2.0, 0.8, -0.6)?.covariance();
    let lower = reduced_symmetric(&v, Side::B);
    let upper = reduced_symmetric(&v, Side::A);
    let d_lo = noise_decomposition(&lower, &v, 1e-10)?;
    let d_up = noise_decomposition(&v, &upper, 1e-10)?;
    println!("\nrho_BB = V + D1, min eig D1 = {:.3}", d_lo.delta().min_eigenvalue());
    println!("V = rho_AA + D2, min eig D2 = {:.3}", d_up.delta().min_eigenvalue());
    Ok(())
}
