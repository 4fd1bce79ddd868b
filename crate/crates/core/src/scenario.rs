//! Batch evaluation: scenario tables, sweeps and max-depth curves.
//!
//! Scenario tables are CSV with the columns
//! `name, alpha, beta, epsilon, gamma, gamma0, depth, p_succ, unit, d_gsee`
//! (an optional `gsee` column names a catalog model instead of `alpha, beta`).
//! A blank `d_gsee` means the GSEE depth is derived as `1/(eps * gamma^beta)`.
//!
//! Sweep tables start with a block of `# key = value` lines describing the
//! base scenario, followed by a CSV body:
//!
//! ```text
//! # alpha = 0
//! # beta = 1
//! # epsilon = 1e-3
//! # depth = 3
//! label,gamma,gamma0        (or label,ratio / value / gamma0 for curves)
//! ```
//!
//! Rows are independent: a bad row is reported and the rest still run.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::criteria::{
    max_depth, max_depth_for_gsee_depth, max_depth_strict, verdict_simplified_from_ratio,
    verdict_with_gsee_depth, verdict_with_reps, Verdict, DEFAULT_NEGLIGIBILITY,
};
use crate::error::{Error, Result};
use crate::format::{sig6, sig6_opt};
use crate::runtime_model::{Accuracy, DepthUnit, GseeModel, GspCandidate, Reference};
use crate::warning::{join_codes, Warning};

/// One row of a scenario table with every field optional, as read.
#[derive(Debug, Clone, Default, PartialEq, Deserialize, Serialize)]
pub struct ScenarioRecord {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub gsee: Option<String>,
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub beta: Option<f64>,
    #[serde(default)]
    pub epsilon: Option<f64>,
    #[serde(default)]
    pub gamma: Option<f64>,
    #[serde(default)]
    pub gamma0: Option<f64>,
    #[serde(default)]
    pub depth: Option<f64>,
    #[serde(default)]
    pub p_succ: Option<f64>,
    #[serde(default)]
    pub unit: Option<String>,
    #[serde(default)]
    pub d_gsee: Option<f64>,
}

impl ScenarioRecord {
    fn model(&self) -> Result<GseeModel> {
        let unit = self.unit()?;
        match (&self.gsee, self.alpha, self.beta) {
            (Some(name), None, None) => Ok(GseeModel::from_catalog(name)?.with_unit(unit)),
            (Some(_), _, _) => Err(Error::parse(0, "give either `gsee` or `alpha`/`beta`, not both")),
            (None, Some(a), Some(b)) => GseeModel::new("custom", a, b, unit),
            (None, _, _) => Err(Error::parse(0, "missing `alpha`/`beta` (or `gsee`)")),
        }
    }

    fn unit(&self) -> Result<DepthUnit> {
        match self.unit.as_deref().map(str::trim) {
            None | Some("") => Ok(DepthUnit::default()),
            Some(u) => u.parse(),
        }
    }

    fn required(&self, field: &'static str, v: Option<f64>) -> Result<f64> {
        v.ok_or_else(|| Error::parse(0, format!("missing `{field}`")))
    }

    fn set(&mut self, variable: SweepVariable, value: f64) {
        match variable {
            SweepVariable::Gamma => self.gamma = Some(value),
            SweepVariable::Gamma0 => self.gamma0 = Some(value),
            SweepVariable::Depth => self.depth = Some(value),
            SweepVariable::Epsilon => self.epsilon = Some(value),
            SweepVariable::PSucc => self.p_succ = Some(value),
            SweepVariable::BondLabel => {}
        }
    }
}

/// A fully validated criteria-evaluation instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub gsee: GseeModel,
    pub candidate: GspCandidate,
    pub reference: Reference,
    /// Absent only when `d_gsee_override` is given.
    pub accuracy: Option<Accuracy>,
    pub d_gsee_override: Option<f64>,
}

impl TryFrom<&ScenarioRecord> for Scenario {
    type Error = Error;

    fn try_from(rec: &ScenarioRecord) -> Result<Self> {
        let gsee = rec.model()?;
        let gamma = rec.required("gamma", rec.gamma)?;
        let gamma0 = rec.required("gamma0", rec.gamma0)?;
        let depth = rec.required("depth", rec.depth)?;
        let name = rec.name.clone().unwrap_or_default();
        let candidate = GspCandidate::new(name.clone(), depth, gamma, gsee.depth_unit().clone())?
            .with_p_succ(rec.p_succ.unwrap_or(1.0))?;
        let reference = Reference::new(gamma0)?;
        let accuracy = rec.epsilon.map(Accuracy::new).transpose()?;
        if let Some(d) = rec.d_gsee {
            if !(d.is_finite() && d > 0.0) {
                return Err(Error::domain("d_gsee", d, "must be finite and > 0"));
            }
        }
        if accuracy.is_none() && rec.d_gsee.is_none() {
            return Err(Error::parse(0, "need `epsilon` or `d_gsee`"));
        }
        Ok(Scenario {
            name,
            gsee,
            candidate,
            reference,
            accuracy,
            d_gsee_override: rec.d_gsee,
        })
    }
}

impl Scenario {
    /// Repetition-aware verdict (general criterion when `P_succ = 1`).
    pub fn verdict(&self) -> Result<Verdict> {
        match (self.d_gsee_override, &self.accuracy) {
            (Some(d), _) => verdict_with_gsee_depth(&self.gsee, &self.candidate, &self.reference, d),
            (None, Some(acc)) => verdict_with_reps(&self.gsee, &self.candidate, &self.reference, acc),
            (None, None) => unreachable!("validated on construction"),
        }
    }

    pub fn max_depth(&self) -> Result<crate::criteria::DepthBound> {
        let (gamma, p) = (self.candidate.gamma(), self.candidate.p_succ());
        match (self.d_gsee_override, &self.accuracy) {
            (Some(d), _) => max_depth_for_gsee_depth(&self.gsee, gamma, &self.reference, d, p),
            (None, Some(acc)) => max_depth(&self.gsee, gamma, &self.reference, acc, p),
            (None, None) => unreachable!("validated on construction"),
        }
    }

    pub fn evaluate(&self, value: impl Into<String>) -> Result<ReportRow> {
        let v = self.verdict()?;
        let bound = self.max_depth()?;
        let mut warnings = v.warnings.clone();
        for w in bound.warnings {
            if !warnings.contains(&w) {
                warnings.push(w);
            }
        }
        Ok(ReportRow {
            name: self.name.clone(),
            value: value.into(),
            lhs: v.lhs,
            rhs: v.rhs,
            margin: v.margin,
            accepted: v.accepted,
            max_depth: Some(bound.value),
            runtime: v.detail.runtime,
            runtime_ref: v.detail.runtime_ref,
            warnings,
        })
    }
}

/// One line of a report.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub name: String,
    /// Swept value or row label; empty for plain scenario tables.
    pub value: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub accepted: bool,
    pub max_depth: Option<f64>,
    pub runtime: Option<f64>,
    pub runtime_ref: Option<f64>,
    pub warnings: Vec<Warning>,
}

pub const REPORT_HEADER: [&str; 10] = [
    "name",
    "value",
    "lhs",
    "rhs",
    "margin",
    "accepted",
    "max_depth",
    "runtime",
    "runtime_ref",
    "warnings",
];

impl ReportRow {
    pub fn csv_fields(&self) -> [String; 10] {
        [
            self.name.clone(),
            self.value.clone(),
            sig6(self.lhs),
            sig6(self.rhs),
            sig6(self.margin),
            self.accepted.to_string(),
            sig6_opt(self.max_depth),
            sig6_opt(self.runtime),
            sig6_opt(self.runtime_ref),
            join_codes(&self.warnings),
        ]
    }
}

/// Rows that evaluated plus per-row failures.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub rows: Vec<ReportRow>,
    pub errors: Vec<Error>,
}

impl Report {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(REPORT_HEADER).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.csv_fields()).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    /// Two columns `value,max_depth` for plotting.
    pub fn to_plot(&self) -> String {
        let mut out = String::from("x,d_max\n");
        for row in &self.rows {
            let _ = writeln!(out, "{},{}", row.value, sig6_opt(row.max_depth));
        }
        out
    }
}

fn row_error(row: usize, e: Error) -> Error {
    Error::Row {
        row,
        source: Box::new(e),
    }
}

fn csv_reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes())
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    Error::parse(line, e.to_string())
}

/// Evaluates every row of a scenario table.
pub fn run_scenarios(table: &str) -> Result<Report> {
    let mut reader = csv_reader(table);
    let headers = reader.headers().map_err(csv_error)?.clone();
    for required in ["name", "gamma", "gamma0", "depth"] {
        if !headers.iter().any(|h| h == required) {
            return Err(Error::parse(
                1,
                format!("scenario table is missing the `{required}` column"),
            ));
        }
    }
    let mut report = Report::default();
    for (i, rec) in reader.deserialize::<ScenarioRecord>().enumerate() {
        let row = i + 1;
        let result = rec
            .map_err(csv_error)
            .and_then(|rec| Scenario::try_from(&rec))
            .and_then(|s| s.evaluate(""));
        match result {
            Ok(r) => report.rows.push(r),
            Err(e) => report.errors.push(row_error(row, e)),
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    Gamma,
    Gamma0,
    Depth,
    Epsilon,
    PSucc,
    BondLabel,
}

impl FromStr for SweepVariable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "gamma" => SweepVariable::Gamma,
            "gamma0" => SweepVariable::Gamma0,
            "depth" => SweepVariable::Depth,
            "epsilon" => SweepVariable::Epsilon,
            "p-succ" | "p_succ" => SweepVariable::PSucc,
            "bond-label" | "label" => SweepVariable::BondLabel,
            other => return Err(Error::parse(0, format!("unknown sweep variable `{other}`"))),
        })
    }
}

impl SweepVariable {
    /// Column name of the variable in scenario and sweep tables.
    pub fn column(&self) -> &'static str {
        match self {
            SweepVariable::Gamma => "gamma",
            SweepVariable::Gamma0 => "gamma0",
            SweepVariable::Depth => "depth",
            SweepVariable::Epsilon => "epsilon",
            SweepVariable::PSucc => "p_succ",
            SweepVariable::BondLabel => "label",
        }
    }
}

/// Overlap data for a labelled row: either both amplitudes or only their
/// ratio `gamma/gamma0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LabeledOverlaps {
    Pair { gamma: f64, gamma0: f64 },
    Ratio(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledRow {
    pub label: String,
    pub overlaps: LabeledOverlaps,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    Values(Vec<f64>),
    Labeled(Vec<LabeledRow>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub grid: Grid,
    /// Base scenario; the swept field is overwritten per grid point.
    pub base: ScenarioRecord,
    /// Threshold for the small-depth criterion used by ratio-only rows.
    pub negligibility: f64,
}

impl SweepSpec {
    pub fn values(variable: SweepVariable, grid: Vec<f64>, base: ScenarioRecord) -> Self {
        SweepSpec {
            variable,
            grid: Grid::Values(grid),
            base,
            negligibility: DEFAULT_NEGLIGIBILITY,
        }
    }

    pub fn labeled(rows: Vec<LabeledRow>, base: ScenarioRecord) -> Self {
        SweepSpec {
            variable: SweepVariable::BondLabel,
            grid: Grid::Labeled(rows),
            base,
            negligibility: DEFAULT_NEGLIGIBILITY,
        }
    }
}

/// Evaluates a sweep; rows come back in grid order.
pub fn sweep(spec: &SweepSpec) -> Result<Report> {
    let mut report = Report::default();
    let name = spec.base.name.clone().unwrap_or_default();
    match &spec.grid {
        Grid::Values(values) => {
            if values.is_empty() {
                return Err(Error::parse(0, "sweep grid is empty"));
            }
            if spec.variable == SweepVariable::BondLabel {
                return Err(Error::parse(0, "bond-label sweeps need labelled rows"));
            }
            for (i, &v) in values.iter().enumerate() {
                let mut rec = spec.base.clone();
                rec.set(spec.variable, v);
                match Scenario::try_from(&rec).and_then(|s| s.evaluate(v.to_string())) {
                    Ok(r) => report.rows.push(r),
                    Err(e) => report.errors.push(row_error(i + 1, e)),
                }
            }
        }
        Grid::Labeled(rows) => {
            if rows.is_empty() {
                return Err(Error::parse(0, "sweep grid is empty"));
            }
            for (i, row) in rows.iter().enumerate() {
                match labeled_row(spec, &name, row) {
                    Ok(r) => report.rows.push(r),
                    Err(e) => report.errors.push(row_error(i + 1, e)),
                }
            }
        }
    }
    Ok(report)
}

fn labeled_row(spec: &SweepSpec, name: &str, row: &LabeledRow) -> Result<ReportRow> {
    match row.overlaps {
        LabeledOverlaps::Pair { gamma, gamma0 } => {
            let mut rec = spec.base.clone();
            rec.gamma = Some(gamma);
            rec.gamma0 = Some(gamma0);
            Scenario::try_from(&rec)?.evaluate(row.label.clone())
        }
        LabeledOverlaps::Ratio(ratio) => {
            let base = &spec.base;
            let model = base.model()?;
            let depth = base.required("depth", base.depth)?;
            // With gamma <= 1, D * gamma^beta * eps <= D * eps.
            let depth_ratio = match (base.d_gsee, base.epsilon) {
                (Some(d), _) => depth / d,
                (None, Some(eps)) => depth * Accuracy::new(eps)?.epsilon(),
                (None, None) => return Err(Error::parse(0, "need `epsilon` or `d_gsee`")),
            };
            let v = verdict_simplified_from_ratio(&model, ratio, depth_ratio, spec.negligibility)?;
            Ok(ReportRow {
                name: name.to_string(),
                value: row.label.clone(),
                lhs: v.lhs,
                rhs: v.rhs,
                margin: v.margin,
                accepted: v.accepted,
                max_depth: None,
                runtime: None,
                runtime_ref: None,
                warnings: v.warnings,
            })
        }
    }
}

/// A point of a max-depth curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub gamma0: f64,
    pub d_max: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Curve {
    pub points: Vec<CurvePoint>,
    pub errors: Vec<Error>,
}

impl Curve {
    /// Two columns `gamma0,d_max`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("gamma0,d_max\n");
        for p in &self.points {
            let _ = writeln!(out, "{},{}", p.gamma0, sig6(p.d_max));
        }
        out
    }
}

/// `D_max(gamma0) = ((gamma - gamma0)/gamma0) * d_gsee` over a grid.
pub fn max_depth_curve(gamma: f64, d_gsee: f64, gamma0_grid: &[f64]) -> Curve {
    let mut curve = Curve::default();
    for (i, &g0) in gamma0_grid.iter().enumerate() {
        let point = if g0 > gamma {
            Err(Error::domain(
                "gamma0",
                g0,
                "must not exceed gamma on a max-depth curve",
            ))
        } else {
            max_depth_strict(gamma, g0, d_gsee).map(|b| CurvePoint {
                gamma0: g0,
                d_max: b.value,
            })
        };
        match point {
            Ok(p) => curve.points.push(p),
            Err(e) => curve.errors.push(row_error(i + 1, e)),
        }
    }
    curve
}

/// A parsed sweep table.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepTable {
    Sweep(Box<SweepSpec>),
    Curve {
        gamma: f64,
        d_gsee: f64,
        gamma0_grid: Vec<f64>,
    },
}

/// Output of any table the engine accepts.
#[derive(Debug, Clone, PartialEq)]
pub enum TableOutput {
    Report(Report),
    Curve(Curve),
}

impl SweepTable {
    pub fn run(&self) -> Result<TableOutput> {
        match self {
            SweepTable::Sweep(spec) => Ok(TableOutput::Report(sweep(spec)?)),
            SweepTable::Curve {
                gamma,
                d_gsee,
                gamma0_grid,
            } => Ok(TableOutput::Curve(max_depth_curve(*gamma, *d_gsee, gamma0_grid))),
        }
    }
}

/// `(line, key, value)` from a `# key = value` header line.
type MetaEntry = (usize, String, String);

/// Splits the leading `# key = value` block from the CSV body. Other
/// comment lines are skipped.
fn split_metadata(text: &str) -> Result<(Vec<MetaEntry>, String)> {
    let mut meta = Vec::new();
    let mut body = String::new();
    let mut in_header = true;
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if in_header {
            if trimmed.is_empty() {
                continue;
            }
            if let Some(c) = trimmed.strip_prefix('#') {
                if let Some((k, v)) = c.split_once('=') {
                    let k = k.trim();
                    let is_key = !k.is_empty() && k.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '_');
                    if is_key {
                        meta.push((i + 1, k.to_string(), v.trim().to_string()));
                    }
                }
                continue;
            }
            in_header = false;
        }
        body.push_str(line);
        body.push('\n');
    }
    Ok((meta, body))
}

/// True when the text starts with a `# key = value` block.
pub fn is_sweep_table(text: &str) -> bool {
    split_metadata(text).map(|(m, _)| !m.is_empty()).unwrap_or(false)
}

pub fn parse_sweep_table(text: &str) -> Result<SweepTable> {
    let (meta, body) = split_metadata(text)?;
    let mut base = ScenarioRecord::default();
    let mut kind = "verdict".to_string();
    let mut variable = SweepVariable::BondLabel;
    let mut negligibility = DEFAULT_NEGLIGIBILITY;
    for (line, key, value) in &meta {
        let num = || -> Result<f64> {
            value
                .parse()
                .map_err(|_| Error::parse(*line, format!("`{key}` needs a number, found `{value}`")))
        };
        match key.as_str() {
            "kind" => kind = value.clone(),
            "variable" => variable = value.parse().map_err(|e: Error| e.at_line(*line))?,
            "negligibility" => negligibility = num()?,
            "name" => base.name = Some(value.clone()),
            "gsee" => base.gsee = Some(value.clone()),
            "unit" => base.unit = Some(value.clone()),
            "alpha" => base.alpha = Some(num()?),
            "beta" => base.beta = Some(num()?),
            "epsilon" => base.epsilon = Some(num()?),
            "gamma" => base.gamma = Some(num()?),
            "gamma0" => base.gamma0 = Some(num()?),
            "depth" => base.depth = Some(num()?),
            "p_succ" => base.p_succ = Some(num()?),
            "d_gsee" => base.d_gsee = Some(num()?),
            other => return Err(Error::parse(*line, format!("unknown metadata key `{other}`"))),
        }
    }

    let mut reader = csv_reader(&body);
    let headers = reader.headers().map_err(csv_error)?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let records: Vec<csv::StringRecord> = reader
        .records()
        .collect::<std::result::Result<_, _>>()
        .map_err(csv_error)?;
    let field_f64 = |rec: &csv::StringRecord, idx: usize, name: &str, row: usize| -> Result<f64> {
        let raw = rec.get(idx).unwrap_or("");
        raw.parse()
            .map_err(|_| row_error(row, Error::parse(0, format!("`{name}` is not a number: `{raw}`"))))
    };

    match kind.as_str() {
        "max-depth-curve" => {
            let gamma = base.required("gamma", base.gamma)?;
            let d_gsee = base.required("d_gsee", base.d_gsee)?;
            let idx = col("gamma0").ok_or_else(|| Error::parse(0, "curve table needs a `gamma0` column"))?;
            let grid = records
                .iter()
                .enumerate()
                .map(|(i, r)| field_f64(r, idx, "gamma0", i + 1))
                .collect::<Result<Vec<_>>>()?;
            Ok(SweepTable::Curve {
                gamma,
                d_gsee,
                gamma0_grid: grid,
            })
        }
        "verdict" => {
            let mut spec = if variable == SweepVariable::BondLabel {
                let label =
                    col("label").ok_or_else(|| Error::parse(0, "sweep table needs a `label` column"))?;
                let pair = col("gamma").zip(col("gamma0"));
                let ratio = col("ratio");
                let mut rows = Vec::new();
                for (i, r) in records.iter().enumerate() {
                    let overlaps = match (pair, ratio) {
                        (Some((g, g0)), _) => LabeledOverlaps::Pair {
                            gamma: field_f64(r, g, "gamma", i + 1)?,
                            gamma0: field_f64(r, g0, "gamma0", i + 1)?,
                        },
                        (None, Some(q)) => LabeledOverlaps::Ratio(field_f64(r, q, "ratio", i + 1)?),
                        (None, None) => {
                            return Err(Error::parse(
                                0,
                                "sweep table needs `gamma,gamma0` or `ratio` columns",
                            ))
                        }
                    };
                    rows.push(LabeledRow {
                        label: r.get(label).unwrap_or("").to_string(),
                        overlaps,
                    });
                }
                SweepSpec::labeled(rows, base)
            } else {
                let idx = col("value").or_else(|| col(variable.column())).ok_or_else(|| {
                    Error::parse(
                        0,
                        format!("sweep table needs a `value` or `{}` column", variable.column()),
                    )
                })?;
                let grid = records
                    .iter()
                    .enumerate()
                    .map(|(i, r)| field_f64(r, idx, "value", i + 1))
                    .collect::<Result<Vec<_>>>()?;
                SweepSpec::values(variable, grid, base)
            };
            spec.negligibility = negligibility;
            Ok(SweepTable::Sweep(Box::new(spec)))
        }
        other => Err(Error::parse(0, format!("unknown table kind `{other}`"))),
    }
}

/// Runs either a sweep table or a plain scenario table.
pub fn run_table(text: &str) -> Result<TableOutput> {
    if is_sweep_table(text) {
        parse_sweep_table(text)?.run()
    } else {
        Ok(TableOutput::Report(run_scenarios(text)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const HEADER: &str = "name,alpha,beta,epsilon,gamma,gamma0,depth,p_succ,unit,d_gsee\n";

    #[test]
    fn n2_rows() {
        let table = format!(
            "{HEADER}n2_spa,0,1,1e-3,0.85,0.72,3,1,circuit-layers,\n\
             n2_booster,0,1,,1,0.72,1000,0.5,controlled-evolutions,2e4\n\
             tie,0,1,1e-3,0.72,0.72,0,,,\n"
        );
        let report = run_scenarios(&table).unwrap();
        assert!(report.errors.is_empty(), "{:?}", report.errors);
        let [spa, booster, tie] = &report.rows[..] else {
            panic!()
        };
        assert!(spa.accepted);
        assert!((spa.rhs - 1.18).abs() < 0.005);
        assert!(booster.accepted);
        assert_relative_eq!(booster.lhs, 1.1, max_relative = 1e-12);
        assert!(!tie.accepted);
        assert_eq!(tie.margin, 0.0);
    }

    #[test]
    fn bad_rows_do_not_abort() {
        let table = format!(
            "{HEADER}ok,0,1,1e-3,0.9,0.7,1,,,\n\
             bad,0,1,1e-3,1.5,0.7,1,,,\n\
             unit,0,1,1e-3,0.9,0.7,1,,furlongs,\n\
             ok2,2,2,1e-3,0.9,0.7,1,,,\n"
        );
        let report = run_scenarios(&table).unwrap();
        assert_eq!(report.rows.len(), 2);
        assert_eq!(report.errors.len(), 2);
        assert!(matches!(report.errors[0], Error::Row { row: 2, .. }));
        assert!(matches!(report.errors[1], Error::Row { row: 3, .. }));
    }

    #[test]
    fn catalog_column() {
        let table = "name,gsee,epsilon,gamma,gamma0,depth\nq,qpe,1e-3,0.9,0.7,10\n";
        let report = run_scenarios(table).unwrap();
        assert_eq!(report.rows.len(), 1);
        assert_relative_eq!(report.rows[0].rhs, (0.9f64 / 0.7).powi(4), max_relative = 1e-12);
    }

    #[test]
    fn report_csv_is_stable() {
        let table = format!("{HEADER}n2_spa,0,1,1e-3,0.85,0.72,3,1,circuit-layers,\n");
        let a = run_scenarios(&table).unwrap().to_csv();
        let b = run_scenarios(&table).unwrap().to_csv();
        assert_eq!(a, b);
        let mut lines = a.lines();
        assert_eq!(lines.next().unwrap(), REPORT_HEADER.join(","));
        assert_eq!(
            lines.next().unwrap(),
            "n2_spa,,1.00255,1.18056,0.178006,true,212.418,1179.47,1388.89,"
        );
    }

    #[test]
    fn single_point_sweep_matches_table() {
        let base = ScenarioRecord {
            name: Some("s".into()),
            alpha: Some(2.0),
            beta: Some(1.0),
            epsilon: Some(1e-3),
            gamma: Some(0.8),
            depth: Some(50.0),
            ..Default::default()
        };
        let swept = sweep(&SweepSpec::values(SweepVariable::Gamma0, vec![0.6], base.clone())).unwrap();
        let mut rec = base;
        rec.gamma0 = Some(0.6);
        let direct = Scenario::try_from(&rec).unwrap().evaluate("0.6").unwrap();
        assert_eq!(swept.rows, vec![direct]);
    }

    #[test]
    fn h2_ratio_rows() {
        let text = "# name = h2\n# alpha = 0\n# beta = 1\n# epsilon = 1e-3\n# depth = 3\nlabel,ratio\nd=0.5,1.005\nd=2.6,1.5\n";
        let TableOutput::Report(r) = run_table(text).unwrap() else {
            panic!()
        };
        assert_eq!(r.rows.len(), 2);
        assert_eq!(r.rows[0].value, "d=0.5");
        assert_eq!(r.rows[0].rhs, 1.005);
        assert_eq!(r.rows[1].rhs, 1.5);
        assert!(r.rows.iter().all(|row| row.accepted));
    }

    #[test]
    fn ratio_rows_refuse_large_depth() {
        let text = "# alpha = 0\n# beta = 1\n# epsilon = 1e-3\n# depth = 100\nlabel,ratio\na,1.2\n";
        let TableOutput::Report(r) = run_table(text).unwrap() else {
            panic!()
        };
        assert!(r.rows.is_empty());
        assert_eq!(r.errors.len(), 1);
    }

    #[test]
    fn curve_examples() {
        let c = max_depth_curve(1.0, 1.8e7, &[0.5, 1.0, 1.2]);
        assert_eq!(c.points[0].d_max, 1.8e7);
        assert_eq!(c.points[1].d_max, 0.0);
        assert_eq!(c.errors.len(), 1);
    }

    #[test]
    fn value_sweep_table() {
        let text = "# alpha = 0\n# beta = 1\n# epsilon = 1e-3\n# gamma = 0.9\n# depth = 100\n# variable = gamma0\nvalue\n0.9\n0.8\n0.7\n";
        let TableOutput::Report(r) = run_table(text).unwrap() else {
            panic!()
        };
        let flags: Vec<bool> = r.rows.iter().map(|x| x.accepted).collect();
        assert_eq!(flags, vec![false, true, true]);
    }

    #[test]
    fn bundled_fixtures_dispatch() {
        for name in crate::fixtures::NAMES {
            let out = run_table(crate::fixtures::fixture(name).unwrap()).unwrap();
            match out {
                TableOutput::Report(r) => assert!(r.errors.is_empty() && !r.rows.is_empty(), "{name}"),
                TableOutput::Curve(c) => assert_eq!((c.points.len(), c.errors.len()), (9, 0)),
            }
        }
    }

    #[test]
    fn unknown_metadata_rejected() {
        assert!(parse_sweep_table("# colour = red\nlabel,ratio\n").is_err());
    }
}
