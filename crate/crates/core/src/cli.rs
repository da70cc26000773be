//! Command-line front end: `analyze` one state, `scan` an invariant grid.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::bounds::{bound_report, BoundOptions, Frame, HierarchyCheck, PhysicalityFlags};
use crate::eof::{EntanglementValue, Units};
use crate::error::Error;
use crate::geof::{GeofOptions, Parametrization};
use crate::state::{
    is_physical, ppt_eigenvalues, standard_form, symplectic_eigenvalues, CovMat, Invariants,
    StandardForm, DEFAULT_DEGENERACY_TOL,
};
use crate::symplectic::{SympSpectrum, SymMat4};

pub const SEED_ENV: &str = "GAUSS_EOF_SEED";
const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Parser)]
#[command(name = "gauss-eof", version, about = "Entanglement-of-formation bounds for two-mode Gaussian states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report invariants, spectra and every bound for one state (JSON).
    Analyze,
    /// Evaluate bounds on an (I1, I2) grid (CSV).
    Scan(ScanArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// State document (analyze) or scan specification (scan), JSON.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Output file; stdout if omitted.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = crate::symplectic::DEFAULT_PSD_TOL)]
    pub tol_psd: f64,
    #[arg(long, global = true, default_value_t = crate::bounds::DEFAULT_BOUND_TOL)]
    pub tol_bound: f64,
    #[arg(long, global = true, default_value_t = crate::geof::DEFAULT_GEOF_TOL)]
    pub geof_tol: f64,
    #[arg(long, global = true, default_value_t = crate::geof::DEFAULT_GEOF_BUDGET)]
    pub geof_budget: usize,
    /// Starts for the general local-symplectic GeoF stage (0 = reduced stage only).
    #[arg(long, global = true, default_value_t = 0)]
    pub geof_starts: usize,
    #[arg(long, global = true, env = SEED_ENV)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value = "nats")]
    pub units: UnitsArg,
    /// Skip the GeoF oracle.
    #[arg(long, global = true)]
    pub no_geof: bool,
    #[arg(long, global = true, value_enum, default_value = "standard-form")]
    pub frame: FrameArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum UnitsArg {
    Nats,
    Bits,
}

impl From<UnitsArg> for Units {
    fn from(u: UnitsArg) -> Self {
        match u {
            UnitsArg::Nats => Units::Nats,
            UnitsArg::Bits => Units::Bits,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FrameArg {
    StandardForm,
    Raw,
    Auto,
}

impl From<FrameArg> for Frame {
    fn from(f: FrameArg) -> Self {
        match f {
            FrameArg::StandardForm => Frame::StandardForm,
            FrameArg::Raw => Frame::Raw,
            FrameArg::Auto => Frame::Auto,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    /// I1 range as `min,max,steps`.
    #[arg(long, value_parser = parse_range)]
    pub i1: Option<GridRange>,
    /// I2 range as `min,max,steps`.
    #[arg(long, value_parser = parse_range)]
    pub i2: Option<GridRange>,
    #[arg(long, allow_hyphen_values = true)]
    pub i3: Option<f64>,
    /// A number, or `balanced` for I4 = 2|I3|√(I1·I2).
    #[arg(long, value_parser = parse_i4)]
    pub i4: Option<I4Rule>,
    /// Only the I1 = I2 diagonal (uses the I1 range).
    #[arg(long)]
    pub diagonal: bool,
}

impl CommonArgs {
    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    pub fn bound_options(&self) -> BoundOptions {
        let geof = (!self.no_geof).then(|| GeofOptions {
            tol: self.geof_tol,
            budget: self.geof_budget,
            starts: self.geof_starts,
            seed: self.seed(),
            psd_tol: self.tol_psd,
            ..GeofOptions::default()
        });
        BoundOptions {
            psd_tol: self.tol_psd,
            bound_tol: self.tol_bound,
            frame: self.frame.into(),
            geof,
            ..BoundOptions::default()
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(Error::Parse(_) | Error::InvalidScan(_)) => 2,
            CliError::Lib(
                Error::NonPhysicalState { .. }
                | Error::NonPositiveMatrix { .. }
                | Error::DegenerateInvariants { .. }
                | Error::InvalidStandardForm(_),
            ) => 3,
            CliError::Lib(Error::BudgetExhausted { .. }) => 4,
            _ => 1,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.display().to_string(), source }
}

// ---------------------------------------------------------------- input

/// One of three mutually exclusive ways to specify a state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum StateInputDocument {
    /// Row-major 4x4 covariance matrix in `(x1, p1, x2, p2)` ordering.
    Matrix([[f64; 4]; 4]),
    StandardForm(StandardFormInput),
    Invariants(InvariantsInput),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StandardFormInput {
    pub a: f64,
    pub b: f64,
    pub c1: f64,
    pub c2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantsInput {
    #[serde(rename = "I1")]
    pub i1: f64,
    #[serde(rename = "I2")]
    pub i2: f64,
    #[serde(rename = "I3")]
    pub i3: f64,
    #[serde(rename = "I4")]
    pub i4: f64,
}

impl StateInputDocument {
    pub fn parse(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            StateInputDocument::Matrix(_) => "matrix",
            StateInputDocument::StandardForm(_) => "standard_form",
            StateInputDocument::Invariants(_) => "invariants",
        }
    }

    /// Resolves to a physical covariance matrix.
    pub fn resolve(&self, physical_tol: f64) -> Result<CovMat, Error> {
        let v = match self {
            StateInputDocument::Matrix(rows) => {
                let m = nalgebra::Matrix4::from_fn(|i, j| rows[i][j]);
                if m.iter().any(|x| !x.is_finite()) {
                    return Err(Error::Parse("matrix has non-finite entries".into()));
                }
                let asym = (m - m.transpose()).amax();
                if asym > 1e-12 * m.amax().max(1.0) {
                    return Err(Error::Parse(format!("matrix is not symmetric (|M - Mᵀ| = {asym:.3e})")));
                }
                CovMat::new(SymMat4::new(m))
            }
            StateInputDocument::StandardForm(s) => StandardForm::new(s.a, s.b, s.c1, s.c2)?.covariance(),
            StateInputDocument::Invariants(i) => {
                let inv = Invariants::new(i.i1, i.i2, i.i3, i.i4);
                StandardForm::from_invariants(&inv, DEFAULT_DEGENERACY_TOL)?.covariance()
            }
        };
        v.require_physical(physical_tol)?;
        Ok(v)
    }
}

// ---------------------------------------------------------------- analyze

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyzeReport {
    pub input: &'static str,
    pub covariance: [[f64; 4]; 4],
    pub invariants: Invariants,
    pub standard_form: StandardForm,
    pub spectrum: SympSpectrum,
    pub ppt_spectrum: SympSpectrum,
    pub entangled: bool,
    pub units: Units,
    pub bounds: BoundValues,
    pub flags: PhysicalityFlags,
    pub hierarchy: HierarchyCheck,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geof: Option<GeofSummary>,
}

/// Entanglement values converted to the requested units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundValues {
    pub lower_natural: f64,
    pub lower_sigma: f64,
    pub upper_natural: Option<f64>,
    pub upper_searched: Option<f64>,
    pub eeof: f64,
    pub geof: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeofSummary {
    pub parametrization: Parametrization,
    pub argmin_parameters: Vec<f64>,
    pub feasible: bool,
    pub converged: bool,
    pub iterations: usize,
}

pub fn analyze(doc: &StateInputDocument, args: &CommonArgs) -> Result<AnalyzeReport, Error> {
    let opts = args.bound_options();
    let v = doc.resolve(opts.physical_tol)?;
    let report = bound_report(&v, &opts)?;
    if let (Some(g), Some(gopts)) = (&report.geof, &opts.geof) {
        g.clone().require_converged(gopts.budget)?;
    }
    let units: Units = args.units.into();
    let u = |x: EntanglementValue| x.in_units(units);
    Ok(AnalyzeReport {
        input: doc.kind(),
        covariance: v.matrix().rows(),
        invariants: v.invariants(),
        standard_form: standard_form(&v)?,
        spectrum: symplectic_eigenvalues(&v)?,
        ppt_spectrum: ppt_eigenvalues(&v)?,
        entangled: report.entangled,
        units,
        bounds: BoundValues {
            lower_natural: u(report.lower_natural),
            lower_sigma: u(report.lower_sigma),
            upper_natural: report.upper_natural.map(u),
            upper_searched: report.upper_searched.map(u),
            eeof: u(report.eeof),
            geof: report.geof_value().map(u),
        },
        flags: report.flags,
        hierarchy: report.hierarchy.clone(),
        geof: report.geof.map(|g| GeofSummary {
            parametrization: g.parametrization,
            argmin_parameters: g.argmin_parameters,
            feasible: g.feasible,
            converged: g.converged,
            iterations: g.iterations,
        }),
    })
}

// ---------------------------------------------------------------- scan

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridRange {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl GridRange {
    pub fn points(&self) -> Vec<f64> {
        match self.steps {
            0 => vec![],
            1 => vec![self.min],
            n => (0..n)
                .map(|k| self.min + (self.max - self.min) * k as f64 / (n - 1) as f64)
                .collect(),
        }
    }
}

fn parse_range(s: &str) -> Result<GridRange, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [min, max, steps] = parts.as_slice() else {
        return Err("expected min,max,steps".into());
    };
    Ok(GridRange {
        min: min.parse().map_err(|e| format!("min: {e}"))?,
        max: max.parse().map_err(|e| format!("max: {e}"))?,
        steps: steps.parse().map_err(|e| format!("steps: {e}"))?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum I4Rule {
    Literal(f64),
    Named(NamedI4),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedI4 {
    /// `I4 = 2|I3|√(I1·I2)`, i.e. `c1 = |c2|`.
    Balanced,
}

impl I4Rule {
    pub fn evaluate(&self, i1: f64, i2: f64, i3: f64) -> f64 {
        match self {
            I4Rule::Literal(x) => *x,
            I4Rule::Named(NamedI4::Balanced) => 2.0 * i3.abs() * (i1 * i2).sqrt(),
        }
    }
}

fn parse_i4(s: &str) -> Result<I4Rule, String> {
    if s == "balanced" {
        return Ok(I4Rule::Named(NamedI4::Balanced));
    }
    s.parse().map(I4Rule::Literal).map_err(|_| format!("expected a number or `balanced`, got {s:?}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScanToggles {
    pub sigma: bool,
    pub geof: bool,
    pub eeof: bool,
    pub upper: bool,
}

impl Default for ScanToggles {
    fn default() -> Self {
        Self { sigma: true, geof: true, eeof: true, upper: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScanSpec {
    pub i1: GridRange,
    pub i2: GridRange,
    pub i3: f64,
    pub i4: I4Rule,
    /// Only evaluate `I1 = I2` (over the `i1` range).
    pub diagonal: bool,
    pub compute: ScanToggles,
}

impl Default for ScanSpec {
    fn default() -> Self {
        let range = GridRange { min: 1.0, max: 4.0, steps: 40 };
        Self {
            i1: range,
            i2: range,
            i3: -0.2,
            i4: I4Rule::Named(NamedI4::Balanced),
            diagonal: false,
            compute: ScanToggles::default(),
        }
    }
}

impl ScanSpec {
    pub fn parse(text: &str) -> Result<Self, Error> {
        let spec: Self = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), Error> {
        for (name, r) in [("i1", self.i1), ("i2", self.i2)] {
            if r.steps == 0 {
                return Err(Error::InvalidScan(format!("{name}: empty grid")));
            }
            if !(r.min.is_finite() && r.max.is_finite()) || r.min > r.max {
                return Err(Error::InvalidScan(format!("{name}: need finite min <= max")));
            }
        }
        if !self.i3.is_finite() {
            return Err(Error::InvalidScan("i3 must be finite".into()));
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<(f64, f64)> {
        if self.diagonal {
            return self.i1.points().into_iter().map(|x| (x, x)).collect();
        }
        let i2 = self.i2.points();
        self.i1.points().into_iter().flat_map(|x| i2.iter().map(move |&y| (x, y))).collect()
    }

    fn with_overrides(mut self, args: &ScanArgs) -> Self {
        if let Some(r) = args.i1 {
            self.i1 = r;
        }
        if let Some(r) = args.i2 {
            self.i2 = r;
        }
        if let Some(x) = args.i3 {
            self.i3 = x;
        }
        if let Some(rule) = args.i4 {
            self.i4 = rule;
        }
        self.diagonal |= args.diagonal;
        self
    }
}

pub const SCAN_HEADER: [&str; 13] = [
    "I1",
    "I2",
    "I3",
    "I4",
    "mu_tilde_minus",
    "entangled",
    "eof_lower_natural",
    "eof_sigma",
    "geof",
    "eeof",
    "eof_upper_natural",
    "physical_upper_flag",
    "status",
];

/// Row marker. Every row either passes the bound hierarchy (`ok`) or says why not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    /// The invariants admit no real standard form.
    Degenerate,
    Unphysical,
    /// GeoF did not converge within the budget; the value is best-so-far.
    GeofUnconverged,
    HierarchyViolation,
}

impl RowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::Degenerate => "skip:degenerate",
            RowStatus::Unphysical => "skip:unphysical",
            RowStatus::GeofUnconverged => "geof_unconverged",
            RowStatus::HierarchyViolation => "hierarchy_violation",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    pub i4: f64,
    pub mu_tilde_minus: Option<f64>,
    pub entangled: Option<bool>,
    pub eof_lower_natural: Option<f64>,
    pub eof_sigma: Option<f64>,
    pub geof: Option<f64>,
    pub eeof: Option<f64>,
    pub eof_upper_natural: Option<f64>,
    pub physical_upper_flag: Option<bool>,
    pub status: RowStatus,
}

impl ScanRow {
    fn skipped(i1: f64, i2: f64, i3: f64, i4: f64, status: RowStatus) -> Self {
        Self {
            i1,
            i2,
            i3,
            i4,
            mu_tilde_minus: None,
            entangled: None,
            eof_lower_natural: None,
            eof_sigma: None,
            geof: None,
            eeof: None,
            eof_upper_natural: None,
            physical_upper_flag: None,
            status,
        }
    }

    pub fn to_csv(&self) -> String {
        let num = |x: Option<f64>| x.map(format_g12).unwrap_or_default();
        let flag = |x: Option<bool>| x.map(|b| b.to_string()).unwrap_or_default();
        let fields = [
            format_g12(self.i1),
            format_g12(self.i2),
            format_g12(self.i3),
            format_g12(self.i4),
            num(self.mu_tilde_minus),
            flag(self.entangled),
            num(self.eof_lower_natural),
            num(self.eof_sigma),
            num(self.geof),
            num(self.eeof),
            num(self.eof_upper_natural),
            flag(self.physical_upper_flag),
            self.status.as_str().to_string(),
        ];
        fields.join(",")
    }
}

pub fn scan_row(i1: f64, i2: f64, spec: &ScanSpec, opts: &BoundOptions, units: Units) -> ScanRow {
    let i3 = spec.i3;
    let i4 = spec.i4.evaluate(i1, i2, i3);
    let inv = Invariants::new(i1, i2, i3, i4);
    let Ok(sf) = StandardForm::from_invariants(&inv, DEFAULT_DEGENERACY_TOL) else {
        return ScanRow::skipped(i1, i2, i3, i4, RowStatus::Degenerate);
    };
    let v = sf.covariance();
    if !is_physical(&v, opts.physical_tol) {
        return ScanRow::skipped(i1, i2, i3, i4, RowStatus::Unphysical);
    }
    let mut opts = *opts;
    if !spec.compute.geof {
        opts.geof = None;
    }
    let report = match bound_report(&v, &opts) {
        Ok(r) => r,
        Err(_) => return ScanRow::skipped(i1, i2, i3, i4, RowStatus::Unphysical),
    };
    let u = |x: EntanglementValue| x.in_units(units);
    let status = if report.geof.as_ref().is_some_and(|g| !g.converged) {
        RowStatus::GeofUnconverged
    } else if !report.hierarchy.holds {
        RowStatus::HierarchyViolation
    } else {
        RowStatus::Ok
    };
    ScanRow {
        i1,
        i2,
        i3,
        i4,
        mu_tilde_minus: Some(inv.ppt_spectrum().mu_minus),
        entangled: Some(report.entangled),
        eof_lower_natural: Some(u(report.lower_natural)),
        eof_sigma: spec.compute.sigma.then(|| u(report.lower_sigma)),
        geof: report.geof_value().map(u),
        eeof: spec.compute.eeof.then(|| u(report.eeof)),
        eof_upper_natural: if spec.compute.upper { report.upper_natural.map(u) } else { None },
        physical_upper_flag: Some(report.flags.upper_state_physical),
        status,
    }
}

pub fn scan(spec: &ScanSpec, args: &CommonArgs) -> Result<Vec<ScanRow>, Error> {
    spec.validate()?;
    let opts = args.bound_options();
    let units = args.units.into();
    Ok(spec.grid().into_iter().map(|(i1, i2)| scan_row(i1, i2, spec, &opts, units)).collect())
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = SCAN_HEADER.join(",");
    out.push('\n');
    for row in rows {
        let _ = writeln!(out, "{}", row.to_csv());
    }
    out
}

/// `printf("%.12g")`.
pub fn format_g12(x: f64) -> String {
    const P: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -4 || exp >= P {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        trim_zeros(&format!("{:.*}", (P - 1 - exp) as usize, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

// ---------------------------------------------------------------- driver

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(io_err(path))
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text).map_err(io_err(path)),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let common = &cli.common;
    match &cli.command {
        Command::Analyze => {
            let text = match &common.input {
                Some(path) => read(path)?,
                None => io::read_to_string(io::stdin())
                    .map_err(|source| CliError::Io { path: "<stdin>".into(), source })?,
            };
            let doc = StateInputDocument::parse(&text)?;
            let report = analyze(&doc, common)?;
            let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
            json.push('\n');
            emit(&json, common.output.as_deref())
        }
        Command::Scan(args) => {
            let spec = match &common.input {
                Some(path) => ScanSpec::parse(&read(path)?)?,
                None => ScanSpec::default(),
            }
            .with_overrides(args);
            let rows = scan(&spec, common)?;
            emit(&scan_csv(&rows), common.output.as_deref())?;
            if let Some(row) = rows.iter().find(|r| r.status == RowStatus::GeofUnconverged) {
                return Err(Error::BudgetExhausted {
                    budget: common.geof_budget,
                    best: row.geof.unwrap_or(f64::NAN),
                }
                .into());
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g12_formatting() {
        assert_eq!(format_g12(0.0), "0");
        assert_eq!(format_g12(1.0), "1");
        assert_eq!(format_g12(-0.2), "-0.2");
        assert_eq!(format_g12(0.1 + 0.2), "0.3");
        assert_eq!(format_g12(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_g12(123456.789), "123456.789");
        assert_eq!(format_g12(1.5e-7), "1.5e-07");
        assert_eq!(format_g12(0.0001), "0.0001");
        assert_eq!(format_g12(2.5e13), "2.5e+13");
        assert_eq!(format_g12(999999999999.5), "1e+12");
    }

    #[test]
    fn input_documents() {
        let doc = StateInputDocument::parse(r#"{"standard_form": {"a":1, "b":1, "c1":0, "c2":0}}"#).unwrap();
        assert_eq!(doc.resolve(1e-10).unwrap(), CovMat::vacuum());
        let doc = StateInputDocument::parse(r#"{"invariants": {"I1":1.44, "I2":1.44, "I3":-0.2, "I4":0.576}}"#)
            .unwrap();
        assert!(doc.resolve(1e-10).is_ok());
        let doc = StateInputDocument::parse(
            r#"{"matrix": [[2,0,0.5,0],[0,2,0,-0.5],[0.5,0,2,0],[0,-0.5,0,2]]}"#,
        )
        .unwrap();
        assert!(doc.resolve(1e-10).is_ok());
    }

    #[test]
    fn malformed_documents() {
        for text in [
            r#"{"standard_form": {"a":1, "b":1, "c1":0}}"#,
            r#"{"standard_form": {"a":1, "b":1, "c1":0, "c2":0, "d":1}}"#,
            r#"{"standard_form": {"a":1,"b":1,"c1":0,"c2":0}, "invariants": {"I1":1,"I2":1,"I3":0,"I4":0}}"#,
            r#"{"matrix": [[1,0,0],[0,1,0],[0,0,1]]}"#,
            r#"not json"#,
        ] {
            assert!(matches!(StateInputDocument::parse(text), Err(Error::Parse(_))), "{text}");
        }
        let doc = StateInputDocument::parse(
            r#"{"matrix": [[1,0.1,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]}"#,
        )
        .unwrap();
        assert!(matches!(doc.resolve(1e-10), Err(Error::Parse(_))));
    }

    #[test]
    fn scan_spec_defaults_and_validation() {
        let spec = ScanSpec::parse("{}").unwrap();
        assert_eq!(spec, ScanSpec::default());
        assert_eq!(spec.grid().len(), 1600);
        let spec = ScanSpec::parse(r#"{"i4": 0.3, "diagonal": true}"#).unwrap();
        assert_eq!(spec.i4, I4Rule::Literal(0.3));
        assert_eq!(spec.grid().len(), 40);
        assert!(matches!(
            ScanSpec::parse(r#"{"i1": {"min": 1, "max": 2, "steps": 0}}"#),
            Err(Error::InvalidScan(_))
        ));
        assert!(matches!(ScanSpec::parse(r#"{"bogus": 1}"#), Err(Error::Parse(_))));
    }

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("1,4,40").unwrap(), GridRange { min: 1.0, max: 4.0, steps: 40 });
        assert!(parse_range("1,4").is_err());
        assert_eq!(GridRange { min: 1.0, max: 2.0, steps: 3 }.points(), vec![1.0, 1.5, 2.0]);
        assert_eq!(parse_i4("balanced").unwrap(), I4Rule::Named(NamedI4::Balanced));
        assert!(parse_i4("x").is_err());
    }
}
