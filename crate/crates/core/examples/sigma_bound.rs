//! The midpoint state sigma, M = (A + B)/2, is a tighter lower bound than
//! rho_BB but is not obtained from a noise decomposition of V.
//!
//!     cargo run --example sigma_bound

use gauss_eof::bounds::{natural_bounds, sigma_lower_bound, BoundOptions};
use gauss_eof::sampling::StateSampler;
use gauss_eof::{geof, StandardForm};

fn main() -> gauss_eof::Result<()> {
    let opts = BoundOptions::default();
    let v = StandardForm::new(1.2, 1.4, 0.45, -0.45)?.covariance();
    let nb = natural_bounds(&v, &opts)?;
    let sigma = sigma_lower_bound(&v, &opts)?;
    println!("rho_BB {:.6}  sigma {:.6}  GeoF {:.6}", nb.lower.nats(), sigma.nats(), geof(&v)?.value.nats());

    let mut sampler = StateSampler::new(11);
    let (mut gain, n) = (0.0, 200);
    for _ in 0..n {
        let v = sampler.entangled();
        gain += sigma_lower_bound(&v, &opts)?.nats() - natural_bounds(&v, &opts)?.lower.nats();
    }
    println!("mean improvement of sigma over rho_BB on {n} random states: {:.4} nats", gain / n as f64);
    Ok(())
}
