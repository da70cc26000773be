//! The JSON report produced by `gauss-eof analyze`, built in-process.
//!
//!     cargo run --example analyze_document

use clap::Parser;
use gauss_eof::cli::{analyze, Cli, StateInputDocument};

fn main() -> gauss_eof::Result<()> {
    let cli = Cli::parse_from(["gauss-eof", "analyze", "--units", "bits"]);
    let doc = StateInputDocument::parse(r#"{"invariants": {"I1": 1.44, "I2": 2.25, "I3": -0.2, "I4": 0.72}}"#)?;
    let report = analyze(&doc, &cli.common)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    Ok(())
}
