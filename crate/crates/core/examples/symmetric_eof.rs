//! Closed-form EoF of symmetric states, and the EeoF estimator on a
//! non-symmetric one.
//!
//!     cargo run --example symmetric_eof

use gauss_eof::{eeof, eof_symmetric, ppt_eigenvalues, CovMat, StandardForm};

fn main() -> gauss_eof::Result<()> {
    println!("{:>6} {:>12} {:>12}", "r", "nu~-", "EoF [nats]");
    for r in [0.0, 0.1, 0.35, 0.7, 1.0] {
        let v = CovMat::two_mode_squeezed(r);
        let nu = ppt_eigenvalues(&v)?.mu_minus;
        println!("{r:>6.2} {nu:>12.6} {:>12.6}", eof_symmetric(&v)?.nats());
    }

    // symmetric thermal-like state with unequal correlations
    let v = CovMat::symmetric(1.6, 1.1, -0.9);
    println!("\nsymmetric m=1.6, c=(1.1,-0.9): EoF = {:.6} bits", eof_symmetric(&v)?.bits());

    // the closed form refuses non-symmetric input; EeoF applies it anyway
    let w = StandardForm::new(1.2, 1.6, 0.6, -0.5)?.covariance();
    println!("non-symmetric: eof_symmetric -> {}", eof_symmetric(&w).unwrap_err());
    println!("non-symmetric: EeoF = {:.6} nats (an estimate, not a bound)", eeof(&w)?.nats());
    Ok(())
}
