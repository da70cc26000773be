//! Acceptance suite: nine criteria at full sample sizes, one PASS/FAIL line each.
//! Runs without the libtest harness so the summary is always printed.

use std::process::{Command, ExitCode};
use std::time::Instant;

use clap::Parser;
use gauss_eof::bounds::{bound_report, BoundOptions};
use gauss_eof::cli::{self, Cli, RowStatus, ScanSpec};
use gauss_eof::eof::f;
use gauss_eof::sampling::StateSampler;
use gauss_eof::state::{is_entangled, ppt_eigenvalues};
use gauss_eof::symplectic::{partial_transpose, symplectic_spectrum, SymMat4};
use gauss_eof::{eeof, eof_symmetric, geof, CovMat};

const GEOF_TOL: f64 = 1e-6;
const BOUND_TOL: f64 = 1e-9;

type Outcome = Result<String, String>;

fn closed_form_agreement() -> Outcome {
    let mut s = StateSampler::new(101);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let v = s.symmetric();
        let e = eof_symmetric(&v).map_err(|e| e.to_string())?.nats();
        let by_invariants = f(v.invariants().ppt_spectrum().mu_minus).unwrap();
        let general = symplectic_spectrum(&partial_transpose(v.matrix())).unwrap().mu_minus;
        let by_spectrum = f(general).unwrap();
        worst = worst.max((e - by_invariants).abs()).max((e - by_spectrum).abs());
    }
    let detail = format!("10^4 symmetric states, max deviation {worst:.2e}");
    if worst <= 1e-10 { Ok(detail) } else { Err(detail) }
}

fn symmetric_collapse() -> Outcome {
    let mut s = StateSampler::new(102);
    let opts = BoundOptions::default();
    let mut worst = 0.0f64;
    let mut n = 0;
    while n < 1000 {
        let v = s.symmetric();
        if !is_entangled(&v, 1e-9).unwrap() {
            continue;
        }
        n += 1;
        let r = bound_report(&v, &opts).map_err(|e| e.to_string())?;
        let e = eof_symmetric(&v).unwrap().nats();
        let upper = r.upper_natural.ok_or("upper natural bound missing")?.nats();
        for x in [r.lower_natural.nats(), r.lower_sigma.nats(), upper, r.geof_value().unwrap().nats(), r.eeof.nats()] {
            worst = worst.max((x - e).abs());
        }
    }
    let detail = format!("10^3 symmetric entangled states, max spread {worst:.2e}");
    if worst <= GEOF_TOL { Ok(detail) } else { Err(detail) }
}

fn bound_sandwich() -> Outcome {
    let mut s = StateSampler::new(103);
    let opts = BoundOptions::default();
    let (mut violations, mut tightest) = (0, f64::INFINITY);
    for _ in 0..1000 {
        let v = s.entangled_with_physical_upper();
        let r = bound_report(&v, &opts).map_err(|e| e.to_string())?;
        let g = r.geof.as_ref().unwrap();
        if !g.feasible || !g.converged {
            violations += 1;
            continue;
        }
        let (lo, sig, gv) = (r.lower_natural.nats(), r.lower_sigma.nats(), g.value.nats());
        let up = r.upper_natural.unwrap().nats();
        let ok = lo <= sig + BOUND_TOL && sig <= gv + GEOF_TOL && gv <= up + GEOF_TOL;
        if !ok {
            violations += 1;
        }
        tightest = tightest.min((gv - sig).min(up - gv));
    }
    let detail = format!("10^3 states, {violations} violations, smallest margin {tightest:.2e}");
    if violations == 0 { Ok(detail) } else { Err(detail) }
}

fn noise_monotonicity() -> Outcome {
    let mut s = StateSampler::new(104);
    let (mut bad_eeof, mut bad_geof, mut worst) = (0, 0, f64::NEG_INFINITY);
    for k in 0..1000 {
        let v = if k % 4 == 3 { s.physical() } else { s.entangled() };
        let scale = 10f64.powf(-3.0 + 2.5 * (k as f64 / 1000.0));
        let w = CovMat::new(*v.matrix() + s.psd(scale));
        let (e0, e1) = (eeof(&v).unwrap().nats(), eeof(&w).map_err(|e| e.to_string())?.nats());
        if e1 > e0 + 1e-12 {
            bad_eeof += 1;
        }
        let (g0, g1) = (geof(&v).unwrap().value.nats(), geof(&w).unwrap().value.nats());
        if g1 > g0 + 2e-6 {
            bad_geof += 1;
        }
        worst = worst.max(g1 - g0);
    }
    let detail = format!(
        "10^3 pairs, EeoF increases {bad_eeof}, GeoF increases {bad_geof}, max GeoF change {worst:.2e}"
    );
    if bad_eeof + bad_geof == 0 { Ok(detail) } else { Err(detail) }
}

fn williamson_ordering() -> Outcome {
    let mut s = StateSampler::new(105);
    let mut worst = f64::INFINITY;
    for _ in 0..10_000 {
        let h2 = s.psd(1.0) + SymMat4::identity().scale(0.01);
        let h1 = h2 + s.psd(0.3);
        let (a, b) = (symplectic_spectrum(&h1).unwrap(), symplectic_spectrum(&h2).unwrap());
        worst = worst.min(a.mu_minus - b.mu_minus).min(a.mu_plus - b.mu_plus);
    }
    let detail = format!("10^4 pairs, smallest componentwise gap {worst:.2e}");
    if worst >= -1e-9 { Ok(detail) } else { Err(detail) }
}

fn ppt_consistency() -> Outcome {
    let mut s = StateSampler::new(106);
    let (mut disagree, mut borderline) = (0, 0);
    for _ in 0..10_000 {
        let v = s.physical();
        let mu = v.invariants().ppt_spectrum().mu_minus;
        if (mu - 1.0).abs() < 1e-9 {
            borderline += 1;
            continue;
        }
        let general = ppt_eigenvalues(&v).unwrap().mu_minus;
        let flag = is_entangled(&v, 1e-10).unwrap();
        if flag != (mu < 1.0) || flag != (general < 1.0) {
            disagree += 1;
        }
    }
    let detail = format!("10^4 states, {disagree} disagreements, {borderline} borderline excluded");
    if disagree == 0 { Ok(detail) } else { Err(detail) }
}

fn invariant_scan() -> Outcome {
    let cli = Cli::parse_from(["gauss-eof", "scan"]);
    let spec = ScanSpec::default();
    let rows = cli::scan(&spec, &cli.common).map_err(|e| e.to_string())?;
    let (mut checked, mut diagonal, mut bad) = (0, 0, Vec::new());
    for r in &rows {
        if matches!(r.status, RowStatus::Unphysical | RowStatus::Degenerate) {
            continue;
        }
        if r.status != RowStatus::Ok {
            bad.push(format!("({}, {}) {}", r.i1, r.i2, r.status.as_str()));
            continue;
        }
        let (lo, sig, g) = (r.eof_lower_natural.unwrap(), r.eof_sigma.unwrap(), r.geof.unwrap());
        if r.entangled == Some(true) {
            if let Some(up) = r.eof_upper_natural {
                checked += 1;
                if !(lo <= sig + BOUND_TOL && sig <= g + GEOF_TOL && g <= up + GEOF_TOL) {
                    bad.push(format!("({}, {}) sandwich", r.i1, r.i2));
                }
            }
        }
        if r.i1 == r.i2 {
            diagonal += 1;
            let up = r.eof_upper_natural.unwrap_or(f64::NAN);
            let spread = [sig, g, up, r.eeof.unwrap()].iter().map(|x| (x - lo).abs()).fold(0.0, f64::max);
            if !(spread <= GEOF_TOL) {
                bad.push(format!("({}, {}) diagonal spread {spread:.2e}", r.i1, r.i2));
            }
        }
    }
    let detail = format!(
        "{} grid points, {checked} entangled sandwiches, {diagonal} diagonal points, {} failures{}",
        rows.len(),
        bad.len(),
        bad.first().map(|b| format!(" (first: {b})")).unwrap_or_default()
    );
    if bad.is_empty() && checked > 0 && diagonal > 0 { Ok(detail) } else { Err(detail) }
}

fn f_spot_values() -> Outcome {
    let mut problems = Vec::new();
    if f(1.0).unwrap() != 0.0 {
        problems.push("f(1) != 0".to_string());
    }
    let expected = 1.125 * 1.125f64.ln() - 0.125 * 0.125f64.ln();
    let d = (f(0.5).unwrap() - expected).abs();
    if d > 1e-12 {
        problems.push(format!("f(0.5) off by {d:.2e}"));
    }
    let n = 10_000;
    let values: Vec<f64> = (1..=n).map(|k| f(k as f64 / (n + 1) as f64).unwrap()).collect();
    let non_decreasing = values.windows(2).filter(|w| !(w[1] < w[0])).count();
    if non_decreasing > 0 {
        problems.push(format!("{non_decreasing} non-decreasing steps"));
    }
    if problems.is_empty() {
        Ok(format!("f(0.5) error {d:.1e}, strictly decreasing on {n} points"))
    } else {
        Err(problems.join("; "))
    }
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for k in 0..2 {
        let path = dir.path().join(format!("scan{k}.csv"));
        let status = Command::new(env!("CARGO_BIN_EXE_gauss-eof"))
            .args(["scan", "--seed", "42", "--output"])
            .arg(&path)
            .status()
            .map_err(|e| e.to_string())?;
        if !status.success() {
            return Err(format!("scan exited with {status}"));
        }
        outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    let detail = format!("two default scans, {} bytes each", outputs[0].len());
    if outputs[0] == outputs[1] { Ok(detail) } else { Err(format!("outputs differ; {detail}")) }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("closed-form agreement", closed_form_agreement),
        ("symmetric collapse", symmetric_collapse),
        ("bound sandwich", bound_sandwich),
        ("monotonicity under noise", noise_monotonicity),
        ("Williamson ordering", williamson_ordering),
        ("PPT criterion consistency", ppt_consistency),
        ("invariant-plane scan", invariant_scan),
        ("f spot values", f_spot_values),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {secs:.1}s)", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail}; {secs:.1}s)", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
