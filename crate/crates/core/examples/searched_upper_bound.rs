//! When rho_AA is unphysical the natural upper bound is lost; a symmetric
//! state with shrunken diagonal and scaled correlations may still fit below V.
//!
//!     cargo run --example searched_upper_bound

use gauss_eof::bounds::{natural_bounds, searched_upper_bound, BoundOptions};
use gauss_eof::{geof, StandardForm};

fn main() -> gauss_eof::Result<()> {
    let opts = BoundOptions::default();
    for (a, b, c1, c2) in [(1.2, 1.6, 0.6, -0.4), (1.2, 2.0, 0.7, -0.6), (1.3, 1.9, 0.9, -0.6)] {
        let v = StandardForm::new(a, b, c1, c2)?.covariance();
        let nb = natural_bounds(&v, &opts)?;
        let g = geof(&v)?.value.nats();
        print!("a={a} b={b} c=({c1},{c2}): rho_AA physical {}, GeoF {g:.6}, ", nb.upper_state_physical);
        match searched_upper_bound(&v, 400, &opts)? {
            Some(s) => println!("searched bound {:.6} at m={:.4}, t={:.4}", s.value.nats(), s.m, s.t),
            None => println!("no feasible symmetric state"),
        }
    }
    Ok(())
}
