//! Adding Gaussian classical noise never increases EeoF or GeoF.
//!
//!     cargo run --release --example noise_monotonicity

use gauss_eof::sampling::StateSampler;
use gauss_eof::{eeof, geof, is_physical, CovMat};

fn main() -> gauss_eof::Result<()> {
    let mut s = StateSampler::new(5);
    let v = s.entangled();
    let delta = s.psd(0.02);
    println!("{:>4} {:>12} {:>12}", "k", "EeoF", "GeoF");
    for k in 0..8 {
        let w = CovMat::new(*v.matrix() + delta.scale(k as f64));
        if !is_physical(&w, 1e-10) {
            break;
        }
        println!("{k:>4} {:>12.6} {:>12.6}", eeof(&w)?.nats(), geof(&w)?.value.nats());
    }
    Ok(())
}
