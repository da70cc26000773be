//! Bounds along the I1 = I2 diagonal and one off-diagonal line of the
//! (I1, I2) plane with I3 = -0.2 and I4 = 2|I3| sqrt(I1 I2). The `scan`
//! subcommand writes the full grid as CSV.
//!
//!     cargo run --release --example invariant_scan

use gauss_eof::cli::{scan_row, GridRange, I4Rule, NamedI4, RowStatus, ScanSpec};
use gauss_eof::{BoundOptions, Units};

fn main() {
    let spec = ScanSpec {
        i1: GridRange { min: 1.0, max: 2.5, steps: 7 },
        i4: I4Rule::Named(NamedI4::Balanced),
        ..ScanSpec::default()
    };
    let opts = BoundOptions::default();
    println!("{:>6} {:>6} {:>10} {:>10} {:>10} {:>10}  status", "I1", "I2", "lower", "sigma", "GeoF", "upper");
    for i1 in spec.i1.points() {
        for i2 in [i1, i1 + 0.5] {
            let row = scan_row(i1, i2, &spec, &opts, Units::Nats);
            let show = |x: Option<f64>| x.map_or("-".into(), |x| format!("{x:.6}"));
            println!(
                "{i1:>6.3} {i2:>6.3} {:>10} {:>10} {:>10} {:>10}  {}",
                show(row.eof_lower_natural),
                show(row.eof_sigma),
                show(row.geof),
                show(row.eof_upper_natural),
                row.status.as_str()
            );
            assert_ne!(row.status, RowStatus::HierarchyViolation);
        }
    }
}
