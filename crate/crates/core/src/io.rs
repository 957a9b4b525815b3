//! On-disk formats: JSON space/product/process files and CSV output.
//!
//! A space file carries an attribute set, an algebra, a sampled
//! universe, a degree table per sample (given directly as rows or as
//! piecewise-linear anchors per attribute), optional negation
//! overrides, named vague variables and an axiom profile. Loading
//! materializes everything; interpolation anchors are expanded to rows
//! before any checking happens.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, AlgebraTriple, Degree, Negation, TConorm, TNorm};
use crate::expr::{AttributeSet, ExprError, UniverseInfo};
use crate::partition::{PartitionError, PartitionProcess, VaguePartition};
use crate::space::{AxiomProfile, MembershipSpace};
use crate::variables::{VagueVariable, VariableError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}: {field}: {message}")]
    Invalid {
        path: String,
        field: String,
        message: String,
    },
}

impl IoError {
    fn invalid(path: &str, field: impl Into<String>, message: impl fmt::Display) -> IoError {
        IoError::Invalid {
            path: path.to_string(),
            field: field.into(),
            message: message.to_string(),
        }
    }
}

/// The `algebra` object of a space file. The t-conorm may be omitted;
/// it then defaults to the dual of the t-norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub tnorm: TNorm,
    pub negation: Negation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tconorm: Option<TConorm>,
}

impl AlgebraSpec {
    pub fn resolve(&self) -> Result<AlgebraTriple, AlgebraError> {
        let tconorm = self.tconorm.unwrap_or_else(|| self.tnorm.dual());
        AlgebraTriple::new(self.tnorm, tconorm, self.negation)
    }
}

/// The `universe` field: explicit samples or an inclusive range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum UniverseSpec {
    Samples(Vec<f64>),
    Range { min: f64, max: f64, step: f64 },
}

impl UniverseSpec {
    pub fn materialize(&self, path: &str) -> Result<Vec<f64>, IoError> {
        match self {
            UniverseSpec::Samples(samples) => {
                if samples.is_empty() {
                    return Err(IoError::invalid(path, "universe", "sample list is empty"));
                }
                Ok(samples.clone())
            }
            UniverseSpec::Range { min, max, step } => {
                if !(step.is_finite() && *step > 0.0) {
                    return Err(IoError::invalid(
                        path,
                        "universe.step",
                        format!("step must be positive and finite, got {step}"),
                    ));
                }
                if !(min.is_finite() && max.is_finite()) || min > max {
                    return Err(IoError::invalid(
                        path,
                        "universe",
                        format!("bad range [{min}, {max}]"),
                    ));
                }
                let mut samples = Vec::new();
                let slack = step * 1e-9;
                let mut i = 0u64;
                loop {
                    let x = min + i as f64 * step;
                    if x > max + slack {
                        break;
                    }
                    samples.push(x.min(*max));
                    i += 1;
                }
                Ok(samples)
            }
        }
    }

    pub fn bounds(&self) -> Option<(f64, f64)> {
        match self {
            UniverseSpec::Samples(samples) => {
                let min = samples.iter().copied().fold(f64::INFINITY, f64::min);
                let max = samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                samples.first().map(|_| (min, max))
            }
            UniverseSpec::Range { min, max, .. } => Some((*min, *max)),
        }
    }
}

/// One explicit degree row: a universe sample and its table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureRow {
    pub x: f64,
    pub degrees: BTreeMap<String, f64>,
}

/// A degree assignment: explicit per-sample rows, or interpolation
/// anchors `[x, degree]` per attribute (linear between anchors, constant
/// outside them, clamped to the unit interval).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureSpec {
    Rows(Vec<MeasureRow>),
    Anchors(BTreeMap<String, Vec<(f64, f64)>>),
}

impl MeasureSpec {
    /// Expands to one table per universe sample. `total` demands a
    /// degree for every attribute (measures); partial tables are fine
    /// for negation overrides.
    fn materialize(
        &self,
        path: &str,
        field: &str,
        universe: &[f64],
        omega: &AttributeSet,
        total: bool,
    ) -> Result<Vec<BTreeMap<String, f64>>, IoError> {
        match self {
            MeasureSpec::Rows(rows) => {
                let mut by_x: BTreeMap<u64, (f64, &MeasureRow)> = BTreeMap::new();
                for (i, row) in rows.iter().enumerate() {
                    for (name, value) in &row.degrees {
                        if !omega.contains(name) {
                            return Err(IoError::invalid(
                                path,
                                format!("{field}.rows[{i}].degrees"),
                                format!("unknown attribute `{name}`"),
                            ));
                        }
                        check_degree(
                            path,
                            &format!("{field}.rows[{i}].degrees[\"{name}\"]"),
                            *value,
                        )?;
                    }
                    if !universe.contains(&row.x) {
                        return Err(IoError::invalid(
                            path,
                            format!("{field}.rows[{i}].x"),
                            format!("x = {} is not a universe sample", row.x),
                        ));
                    }
                    if by_x.insert((row.x + 0.0).to_bits(), (row.x, row)).is_some() {
                        return Err(IoError::invalid(
                            path,
                            format!("{field}.rows[{i}].x"),
                            format!("duplicate sample x = {}", row.x),
                        ));
                    }
                }
                universe
                    .iter()
                    .map(|x| {
                        let (_, row) = by_x.get(&(x + 0.0).to_bits()).ok_or_else(|| {
                            IoError::invalid(
                                path,
                                format!("{field}.rows"),
                                format!("no row for universe sample x = {x}"),
                            )
                        })?;
                        if total {
                            for name in omega.names() {
                                if !row.degrees.contains_key(name) {
                                    return Err(IoError::invalid(
                                        path,
                                        format!("{field}.rows"),
                                        format!("x = {x}: no degree for attribute `{name}`"),
                                    ));
                                }
                            }
                        }
                        Ok(row.degrees.clone())
                    })
                    .collect()
            }
            MeasureSpec::Anchors(anchors) => {
                for (name, points) in anchors {
                    if !omega.contains(name) {
                        return Err(IoError::invalid(
                            path,
                            format!("{field}.anchors"),
                            format!("unknown attribute `{name}`"),
                        ));
                    }
                    if points.is_empty() {
                        return Err(IoError::invalid(
                            path,
                            format!("{field}.anchors[\"{name}\"]"),
                            "anchor list is empty",
                        ));
                    }
                    for (i, (x, degree)) in points.iter().enumerate() {
                        if !x.is_finite() {
                            return Err(IoError::invalid(
                                path,
                                format!("{field}.anchors[\"{name}\"][{i}]"),
                                format!("anchor position {x} is not finite"),
                            ));
                        }
                        check_degree(path, &format!("{field}.anchors[\"{name}\"][{i}]"), *degree)?;
                    }
                }
                if total {
                    for name in omega.names() {
                        if !anchors.contains_key(name) {
                            return Err(IoError::invalid(
                                path,
                                format!("{field}.anchors"),
                                format!("no anchors for attribute `{name}`"),
                            ));
                        }
                    }
                }
                Ok(universe
                    .iter()
                    .map(|&x| {
                        anchors
                            .iter()
                            .map(|(name, points)| (name.clone(), interpolate(points, x)))
                            .collect()
                    })
                    .collect())
            }
        }
    }
}

fn check_degree(path: &str, field: &str, value: f64) -> Result<(), IoError> {
    Degree::new(value)
        .map(|_| ())
        .map_err(|e| IoError::invalid(path, field, e))
}

/// Linear interpolation over sorted anchors, constant beyond the ends,
/// clamped to the unit interval.
fn interpolate(points: &[(f64, f64)], x: f64) -> f64 {
    let mut sorted: Vec<(f64, f64)> = points.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    if x <= sorted[0].0 {
        return sorted[0].1;
    }
    if x >= sorted[sorted.len() - 1].0 {
        return sorted[sorted.len() - 1].1;
    }
    for w in sorted.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        if x >= x0 && x <= x1 {
            if x1 == x0 {
                return y1;
            }
            let t = (x - x0) / (x1 - x0);
            return (y0 + t * (y1 - y0)).clamp(0.0, 1.0);
        }
    }
    sorted[sorted.len() - 1].1
}

/// A space (or partition) file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub name: String,
    pub omega: Vec<String>,
    pub algebra: AlgebraSpec,
    pub universe: UniverseSpec,
    pub measures: MeasureSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub negation_overrides: Option<MeasureSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub variables: BTreeMap<String, BTreeMap<String, f64>>,
    #[serde(default)]
    pub profile: AxiomProfile,
}

/// A product file: an ordered bundle of space files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductFile {
    pub name: String,
    pub components: Vec<SpaceFile>,
}

/// One step of a process file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProcessStep {
    pub t: TimeLabel,
    pub measures: MeasureSpec,
}

/// A process step label: a number or free text.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TimeLabel {
    Number(f64),
    Text(String),
}

impl fmt::Display for TimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimeLabel::Number(n) => n.fmt(f),
            TimeLabel::Text(s) => s.fmt(f),
        }
    }
}

/// A partition process file: shared attribute set, algebra and
/// universe, one measure table per step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProcessFile {
    pub name: String,
    pub omega: Vec<String>,
    pub algebra: AlgebraSpec,
    pub universe: UniverseSpec,
    pub steps: Vec<ProcessStep>,
    #[serde(default)]
    pub profile: AxiomProfile,
}

/// A fully materialized space file: the partition, its variables and
/// the requested profile.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedSpace {
    pub name: String,
    pub partition: VaguePartition,
    pub variables: BTreeMap<String, VagueVariable>,
    pub profile: AxiomProfile,
}

impl LoadedSpace {
    /// The single space of a one-sample file, if it is one.
    pub fn single_space(&self) -> Option<&MembershipSpace> {
        if self.partition.len() == 1 {
            Some(&self.partition.spaces()[0])
        } else {
            None
        }
    }
}

/// A materialized process file.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedProcess {
    pub name: String,
    pub process: PartitionProcess,
    pub profile: AxiomProfile,
}

/// Any of the three document kinds, sniffed by their distinguishing
/// fields (`components` for products, `steps` for processes).
#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Space(Box<LoadedSpace>),
    Product {
        name: String,
        components: Vec<LoadedSpace>,
    },
    Process(Box<LoadedProcess>),
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, IoError> {
    let display = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| IoError::Read {
        path: display.clone(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| IoError::Json {
        path: display,
        source,
    })
}

fn omega_from(path: &str, names: &[String], info: UniverseInfo) -> Result<AttributeSet, IoError> {
    let set = AttributeSet::new(names.iter().cloned())
        .map_err(|e: ExprError| IoError::invalid(path, "omega", e))?;
    Ok(set.with_info(info))
}

fn materialize_space(path: &str, file: &SpaceFile) -> Result<LoadedSpace, IoError> {
    let info = UniverseInfo {
        concept: None,
        attribute: Some(file.name.clone()),
        bounds: file.universe.bounds(),
    };
    let omega = omega_from(path, &file.omega, info)?;
    let algebra = file
        .algebra
        .resolve()
        .map_err(|e| IoError::invalid(path, "algebra", e))?;
    let universe = file.universe.materialize(path)?;
    let tables = file
        .measures
        .materialize(path, "measures", &universe, &omega, true)?;
    let rows: Vec<(f64, BTreeMap<String, f64>)> = universe.iter().copied().zip(tables).collect();
    let overrides = match &file.negation_overrides {
        None => BTreeMap::new(),
        Some(spec) => {
            let tables = spec.materialize(path, "negation_overrides", &universe, &omega, false)?;
            tables.into_iter().enumerate().collect()
        }
    };
    let partition = VaguePartition::with_overrides(omega.clone(), algebra, rows, &overrides)
        .map_err(|e: PartitionError| IoError::invalid(path, "measures", e))?;
    let mut variables = BTreeMap::new();
    for (name, table) in &file.variables {
        for attribute in table.keys() {
            if !omega.contains(attribute) {
                return Err(IoError::invalid(
                    path,
                    format!("variables[\"{name}\"]"),
                    format!("unknown attribute `{attribute}`"),
                ));
            }
        }
        for attribute in omega.names() {
            if !table.contains_key(attribute) {
                return Err(IoError::invalid(
                    path,
                    format!("variables[\"{name}\"]"),
                    format!("no value for attribute `{attribute}`"),
                ));
            }
        }
        let variable =
            VagueVariable::new(name.clone(), table.clone()).map_err(|e: VariableError| {
                IoError::invalid(path, format!("variables[\"{name}\"]"), e)
            })?;
        variables.insert(name.clone(), variable);
    }
    Ok(LoadedSpace {
        name: file.name.clone(),
        partition,
        variables,
        profile: file.profile,
    })
}

fn materialize_process(path: &str, file: &ProcessFile) -> Result<LoadedProcess, IoError> {
    if file.steps.is_empty() {
        return Err(IoError::invalid(path, "steps", "process has no steps"));
    }
    let info = UniverseInfo {
        concept: None,
        attribute: Some(file.name.clone()),
        bounds: file.universe.bounds(),
    };
    let omega = omega_from(path, &file.omega, info)?;
    let algebra = file
        .algebra
        .resolve()
        .map_err(|e| IoError::invalid(path, "algebra", e))?;
    let universe = file.universe.materialize(path)?;
    let mut steps = Vec::with_capacity(file.steps.len());
    for (i, step) in file.steps.iter().enumerate() {
        let field = format!("steps[{i}].measures");
        let tables = step
            .measures
            .materialize(path, &field, &universe, &omega, true)?;
        let rows: Vec<(f64, BTreeMap<String, f64>)> =
            universe.iter().copied().zip(tables).collect();
        let partition = VaguePartition::new(omega.clone(), algebra, rows)
            .map_err(|e| IoError::invalid(path, &field, e))?;
        steps.push((step.t.to_string(), partition));
    }
    let process = PartitionProcess::new(steps).map_err(|e| IoError::invalid(path, "steps", e))?;
    Ok(LoadedProcess {
        name: file.name.clone(),
        process,
        profile: file.profile,
    })
}

/// Loads and materializes a space file.
pub fn load_space(path: impl AsRef<Path>) -> Result<LoadedSpace, IoError> {
    let path = path.as_ref();
    let file: SpaceFile = read_json(path)?;
    materialize_space(&path.display().to_string(), &file)
}

/// Loads a space file without materializing it.
pub fn load_space_model(path: impl AsRef<Path>) -> Result<SpaceFile, IoError> {
    read_json(path.as_ref())
}

/// Loads and materializes every component of a product file.
pub fn load_product(path: impl AsRef<Path>) -> Result<(String, Vec<LoadedSpace>), IoError> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let file: ProductFile = read_json(path)?;
    if file.components.is_empty() {
        return Err(IoError::invalid(
            &display,
            "components",
            "product has no components",
        ));
    }
    let components = file
        .components
        .iter()
        .map(|component| materialize_space(&display, component))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((file.name, components))
}

/// Loads and materializes a process file.
pub fn load_process(path: impl AsRef<Path>) -> Result<LoadedProcess, IoError> {
    let path = path.as_ref();
    let file: ProcessFile = read_json(path)?;
    materialize_process(&path.display().to_string(), &file)
}

/// Loads any document kind, deciding by shape.
pub fn load_document(path: impl AsRef<Path>) -> Result<Document, IoError> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let value: serde_json::Value = read_json(path)?;
    let from_value = |value: serde_json::Value| -> Result<Document, IoError> {
        if value.get("components").is_some() {
            let file: ProductFile =
                serde_json::from_value(value).map_err(|source| IoError::Json {
                    path: display.clone(),
                    source,
                })?;
            let components = file
                .components
                .iter()
                .map(|c| materialize_space(&display, c))
                .collect::<Result<Vec<_>, _>>()?;
            if components.is_empty() {
                return Err(IoError::invalid(
                    &display,
                    "components",
                    "product has no components",
                ));
            }
            Ok(Document::Product {
                name: file.name,
                components,
            })
        } else if value.get("steps").is_some() {
            let file: ProcessFile =
                serde_json::from_value(value).map_err(|source| IoError::Json {
                    path: display.clone(),
                    source,
                })?;
            Ok(Document::Process(Box::new(materialize_process(
                &display, &file,
            )?)))
        } else {
            let file: SpaceFile =
                serde_json::from_value(value).map_err(|source| IoError::Json {
                    path: display.clone(),
                    source,
                })?;
            Ok(Document::Space(Box::new(materialize_space(
                &display, &file,
            )?)))
        }
    };
    from_value(value)
}

/// Pretty-prints a file model exactly as it would be saved.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String, IoError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|source| IoError::Json {
        path: "<memory>".to_string(),
        source,
    })?;
    text.push('\n');
    Ok(text)
}

fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<(), IoError> {
    let display = path.display().to_string();
    let text = to_json_string(value)?;
    fs::write(path, text).map_err(|source| IoError::Write {
        path: display,
        source,
    })
}

/// Writes a space file; loading it back yields the same materialized
/// rows.
pub fn save_space(file: &SpaceFile, path: impl AsRef<Path>) -> Result<(), IoError> {
    write_json(file, path.as_ref())
}

pub fn save_product(file: &ProductFile, path: impl AsRef<Path>) -> Result<(), IoError> {
    write_json(file, path.as_ref())
}

pub fn save_process(file: &ProcessFile, path: impl AsRef<Path>) -> Result<(), IoError> {
    write_json(file, path.as_ref())
}

/// Formats `v` with `sig` significant digits in plain decimal notation.
/// Infinities become `inf`/`-inf`; zero is printed at full width.
pub fn format_sig(v: f64, sig: usize) -> String {
    debug_assert!(sig > 0);
    if v.is_nan() {
        return "nan".to_string();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if v == 0.0 {
        return format!("{:.*}", sig - 1, 0.0);
    }
    let exponent = v.abs().log10().floor() as i32;
    let decimals = (sig as i32 - 1 - exponent).max(0) as usize;
    format!("{v:.decimals$}")
}

/// CSV rows `x,mu` for a fuzzy set, header included.
pub fn write_fuzzy_set_csv<W: Write>(
    out: &mut W,
    fuzzy_set: &crate::partition::FuzzySet,
    sig: usize,
) -> std::io::Result<()> {
    writeln!(out, "x,mu")?;
    for (x, mu) in &fuzzy_set.samples {
        writeln!(
            out,
            "{},{}",
            format_sig(*x, sig),
            format_sig(mu.value(), sig)
        )?;
    }
    Ok(())
}

/// CSV rows `threshold,degree` for a CDF curve, header included.
pub fn write_cdf_csv<W: Write>(
    out: &mut W,
    curve: &crate::variables::CdfCurve,
    sig: usize,
) -> std::io::Result<()> {
    writeln!(out, "threshold,degree")?;
    for (t, degree) in curve.points() {
        writeln!(
            out,
            "{},{}",
            format_sig(*t, sig),
            format_sig(degree.value(), sig)
        )?;
    }
    Ok(())
}

/// CSV rows `t,x,mu` for an object trajectory, header included.
pub fn write_trajectory_csv<W: Write>(
    out: &mut W,
    trajectory: &[(String, crate::partition::FuzzySet)],
    sig: usize,
) -> std::io::Result<()> {
    writeln!(out, "t,x,mu")?;
    for (label, fuzzy_set) in trajectory {
        for (x, mu) in &fuzzy_set.samples {
            writeln!(
                out,
                "{},{},{}",
                label,
                format_sig(*x, sig),
                format_sig(mu.value(), sig)
            )?;
        }
    }
    Ok(())
}
