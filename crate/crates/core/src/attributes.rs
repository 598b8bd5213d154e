//! Demographic attribute schemas, proportional assignment and the
//! per-attribute distance functions.
//!
//! A profile stores one level index per attribute. Categorical levels are
//! compared by identity; ordinal and numerical levels carry a numeric value
//! and are compared by `|a - b| / rho`.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttributeKind {
    Categorical,
    Ordinal,
    Numerical,
}

impl AttributeKind {
    pub fn is_numeric(self) -> bool {
        !matches!(self, AttributeKind::Categorical)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Level {
    pub label: String,
    /// Rank or value; meaningless for categorical levels.
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttributeSchema {
    pub name: String,
    pub kind: AttributeKind,
    pub levels: Vec<Level>,
    pub proportions: Vec<f64>,
    /// Maximum possible difference between two values (ordinal/numerical).
    pub rho: f64,
    pub weight: f64,
}

impl AttributeSchema {
    pub fn categorical<S: AsRef<str>>(name: &str, labels: &[S], proportions: &[f64]) -> Result<Self> {
        let levels = labels
            .iter()
            .enumerate()
            .map(|(i, l)| Level {
                label: l.as_ref().to_string(),
                value: i as f64,
            })
            .collect();
        let schema = AttributeSchema {
            name: name.to_string(),
            kind: AttributeKind::Categorical,
            levels,
            proportions: proportions.to_vec(),
            rho: 1.0,
            weight: 1.0,
        };
        schema.validate()?;
        Ok(schema)
    }

    /// Ordinal or numerical attribute over the given values. `rho` defaults
    /// to the span of the values (or 1 when there is a single value).
    pub fn numeric(
        name: &str,
        kind: AttributeKind,
        values: &[f64],
        proportions: &[f64],
        rho: Option<f64>,
    ) -> Result<Self> {
        if !kind.is_numeric() {
            return Err(Error::schema(name, "numeric constructor used for a categorical kind"));
        }
        let levels = values
            .iter()
            .map(|&v| Level {
                label: format_number(v),
                value: v,
            })
            .collect();
        let schema = AttributeSchema {
            name: name.to_string(),
            kind,
            levels,
            proportions: proportions.to_vec(),
            rho: rho.unwrap_or_else(|| default_rho(values)),
            weight: 1.0,
        };
        schema.validate()?;
        Ok(schema)
    }

    pub fn with_weight(mut self, weight: f64) -> Result<Self> {
        self.weight = weight;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |reason: String| Err(Error::schema(&self.name, reason));
        if self.name.is_empty() || self.name.contains([',', '\n', '\r', '"']) {
            return fail("attribute names must be non-empty and free of commas, quotes and newlines".into());
        }
        if self.levels.is_empty() {
            return fail("at least one level is required".into());
        }
        let mut seen = HashSet::new();
        for level in &self.levels {
            if level.label.is_empty() || level.label.contains([',', '\n', '\r', '"']) {
                return fail(format!("invalid level label `{}`", level.label));
            }
            if !seen.insert(level.label.as_str()) {
                return fail(format!("duplicate level `{}`", level.label));
            }
            if !level.value.is_finite() {
                return fail(format!("level `{}` has a non-finite value", level.label));
            }
        }
        if self.proportions.len() != self.levels.len() {
            return fail(format!(
                "{} proportions given for {} levels",
                self.proportions.len(),
                self.levels.len()
            ));
        }
        if self.proportions.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return fail("proportions must be finite and nonnegative".into());
        }
        if self.proportions.iter().sum::<f64>() <= 0.0 {
            return fail("proportions must have a positive total".into());
        }
        if !self.weight.is_finite() || self.weight < 0.0 {
            return fail("weight must be finite and nonnegative".into());
        }
        if self.kind.is_numeric() {
            if !self.rho.is_finite() || self.rho <= 0.0 {
                return fail("rho must be positive".into());
            }
            let (lo, hi) = value_span(self.levels.iter().map(|l| l.value));
            if hi - lo > self.rho {
                return fail(format!("rho {} is smaller than the value span {}", self.rho, hi - lo));
            }
        }
        Ok(())
    }

    pub fn level_index(&self, label: &str) -> Option<usize> {
        self.levels.iter().position(|l| l.label == label)
    }

    /// Unweighted distance in `[0, 1]` between two level indices.
    pub fn distance(&self, a: usize, b: usize) -> f64 {
        match self.kind {
            AttributeKind::Categorical => categorical_distance(&a, &b),
            AttributeKind::Ordinal | AttributeKind::Numerical => {
                let (x, y) = (self.levels[a].value, self.levels[b].value);
                (x - y).abs() / self.rho
            }
        }
    }
}

fn value_span(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

fn default_rho(values: &[f64]) -> f64 {
    let (lo, hi) = value_span(values.iter().copied());
    if hi > lo {
        hi - lo
    } else {
        1.0
    }
}

pub(crate) fn format_number(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

/// One node's attribute values, as level indices in schema order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NodeProfile {
    pub values: Vec<usize>,
}

impl NodeProfile {
    pub fn new(values: Vec<usize>) -> Self {
        NodeProfile { values }
    }

    pub fn conforms_to(&self, schemas: &[AttributeSchema]) -> bool {
        self.values.len() == schemas.len() && self.values.iter().zip(schemas).all(|(&v, s)| v < s.levels.len())
    }
}

pub fn validate_schemas(schemas: &[AttributeSchema]) -> Result<()> {
    if schemas.is_empty() {
        return Err(Error::schema("<schema>", "at least one attribute is required"));
    }
    let mut names = HashSet::new();
    for s in schemas {
        s.validate()?;
        if !names.insert(s.name.as_str()) {
            return Err(Error::schema(&s.name, "duplicate attribute name"));
        }
    }
    Ok(())
}

/// Draws every attribute of every node independently, with replacement, in
/// proportion to the schema's weights. Nodes are drawn in id order and
/// attributes in schema order.
pub fn assign_profiles<R: Rng + ?Sized>(
    schemas: &[AttributeSchema],
    n: usize,
    rng: &mut R,
) -> Result<Vec<NodeProfile>> {
    if n == 0 {
        return Err(Error::InvalidArgument("at least one node is required".into()));
    }
    validate_schemas(schemas)?;
    let samplers = schemas
        .iter()
        .map(|s| {
            WeightedIndex::new(&s.proportions).map_err(|e| Error::schema(&s.name, format!("bad proportions: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((0..n)
        .map(|_| NodeProfile::new(samplers.iter().map(|w| w.sample(rng)).collect()))
        .collect())
}

pub fn categorical_distance<T: PartialEq + ?Sized>(a: &T, b: &T) -> f64 {
    if a == b {
        0.0
    } else {
        1.0
    }
}

/// `|a - b| / rho` for ranks.
pub fn ordinal_distance(a: f64, b: f64, rho: f64) -> Result<f64> {
    if rho <= 0.0 || !rho.is_finite() {
        return Err(Error::InvalidArgument(format!("rho must be positive, got {rho}")));
    }
    Ok((a - b).abs() / rho)
}

/// Same normalized difference as [`ordinal_distance`], for numeric values.
pub fn numerical_distance(a: f64, b: f64, rho: f64) -> Result<f64> {
    ordinal_distance(a, b, rho)
}

/// Weight-normalized mean of per-attribute distances, in `[0, 1]`.
pub fn demographic_distance(p: &NodeProfile, q: &NodeProfile, schemas: &[AttributeSchema]) -> Result<f64> {
    if !p.conforms_to(schemas) || !q.conforms_to(schemas) {
        return Err(Error::InvalidArgument("profile does not conform to schema".into()));
    }
    let total_weight: f64 = schemas.iter().map(|s| s.weight).sum();
    if total_weight <= 0.0 {
        return Err(Error::InvalidArgument("all attribute weights are zero".into()));
    }
    Ok(weighted_distance_sum(p, q, schemas) / total_weight)
}

/// Unnormalized `sum_k w_k * d_k`; callers divide by the weight total.
pub(crate) fn weighted_distance_sum(p: &NodeProfile, q: &NodeProfile, schemas: &[AttributeSchema]) -> f64 {
    schemas
        .iter()
        .zip(p.values.iter().zip(&q.values))
        .map(|(s, (&a, &b))| s.weight * s.distance(a, b))
        .sum()
}

// ---------------------------------------------------------------------------
// Schema file (TOML)

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct SchemaFile {
    #[serde(default)]
    pub attribute: Vec<AttributeSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct AttributeSpec {
    pub name: String,
    pub kind: AttributeKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<toml::Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proportions: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
}

impl AttributeSpec {
    pub fn into_schema(self) -> Result<AttributeSchema> {
        let name = self.name;
        let levels: Vec<Level> = match (self.levels, self.min, self.max) {
            (Some(values), None, None) => values
                .into_iter()
                .enumerate()
                .map(|(i, v)| match v {
                    toml::Value::String(s) => Ok(Level {
                        label: s,
                        value: i as f64,
                    }),
                    toml::Value::Integer(x) => Ok(Level {
                        label: x.to_string(),
                        value: x as f64,
                    }),
                    toml::Value::Float(x) => Ok(Level {
                        label: format_number(x),
                        value: x,
                    }),
                    other => Err(Error::schema(&name, format!("unsupported level value {other}"))),
                })
                .collect::<Result<_>>()?,
            (None, Some(lo), Some(hi)) => {
                if self.kind == AttributeKind::Categorical {
                    return Err(Error::schema(&name, "min/max ranges need an ordinal or numerical kind"));
                }
                if lo > hi {
                    return Err(Error::schema(&name, "min exceeds max"));
                }
                (lo..=hi)
                    .map(|x| Level {
                        label: x.to_string(),
                        value: x as f64,
                    })
                    .collect()
            }
            _ => return Err(Error::schema(&name, "give either `levels` or both `min` and `max`")),
        };
        if self.kind == AttributeKind::Numerical && levels.iter().any(|l| l.label.parse::<f64>().is_err()) {
            return Err(Error::schema(&name, "numerical levels must be numbers"));
        }
        let proportions = self.proportions.unwrap_or_else(|| vec![1.0; levels.len()]);
        let rho = if self.kind.is_numeric() {
            match self.rho {
                Some(r) => r,
                None => {
                    let values: Vec<f64> = levels.iter().map(|l| l.value).collect();
                    default_rho(&values)
                }
            }
        } else {
            1.0
        };
        let schema = AttributeSchema {
            name,
            kind: self.kind,
            levels,
            proportions,
            rho,
            weight: self.weight.unwrap_or(1.0),
        };
        schema.validate()?;
        Ok(schema)
    }

    pub fn from_schema(s: &AttributeSchema) -> Self {
        let levels = s
            .levels
            .iter()
            .map(|l| {
                if s.kind.is_numeric() && l.label == format_number(l.value) {
                    if l.value.fract() == 0.0 {
                        toml::Value::Integer(l.value as i64)
                    } else {
                        toml::Value::Float(l.value)
                    }
                } else {
                    toml::Value::String(l.label.clone())
                }
            })
            .collect();
        AttributeSpec {
            name: s.name.clone(),
            kind: s.kind,
            levels: Some(levels),
            min: None,
            max: None,
            proportions: Some(s.proportions.clone()),
            rho: s.kind.is_numeric().then_some(s.rho),
            weight: Some(s.weight),
        }
    }
}

pub(crate) fn specs_into_schemas(specs: Vec<AttributeSpec>) -> Result<Vec<AttributeSchema>> {
    let schemas = specs
        .into_iter()
        .map(AttributeSpec::into_schema)
        .collect::<Result<Vec<_>>>()?;
    validate_schemas(&schemas)?;
    Ok(schemas)
}

pub fn parse_schemas(text: &str, origin: &Path) -> Result<Vec<AttributeSchema>> {
    let file: SchemaFile = toml::from_str(text).map_err(|e| Error::Toml {
        path: origin.to_path_buf(),
        source: e,
    })?;
    specs_into_schemas(file.attribute)
}

pub fn load_schemas(path: impl AsRef<Path>) -> Result<Vec<AttributeSchema>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_schemas(&text, path)
}

pub fn schemas_to_toml(schemas: &[AttributeSchema]) -> String {
    let file = SchemaFile {
        attribute: schemas.iter().map(AttributeSpec::from_schema).collect(),
    };
    toml::to_string(&file).expect("schema serialization cannot fail")
}

pub fn save_schemas(schemas: &[AttributeSchema], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, schemas_to_toml(schemas)).map_err(|e| Error::io(path, e))
}

// ---------------------------------------------------------------------------
// Profiles file: header of attribute names, then one row of labels per node.

pub fn write_profiles<W: Write>(
    profiles: &[NodeProfile],
    schemas: &[AttributeSchema],
    mut out: W,
) -> std::io::Result<()> {
    let header: Vec<&str> = schemas.iter().map(|s| s.name.as_str()).collect();
    writeln!(out, "{}", header.join(","))?;
    let mut line = String::new();
    for p in profiles {
        line.clear();
        for (k, (&v, s)) in p.values.iter().zip(schemas).enumerate() {
            if k > 0 {
                line.push(',');
            }
            let _ = write!(line, "{}", s.levels[v].label);
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

pub fn save_profiles(profiles: &[NodeProfile], schemas: &[AttributeSchema], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut buf = Vec::new();
    write_profiles(profiles, schemas, &mut buf).map_err(|e| Error::io(path, e))?;
    fs::write(path, buf).map_err(|e| Error::io(path, e))
}

pub fn read_profiles<R: Read>(input: R, schemas: &[AttributeSchema], origin: &Path) -> Result<Vec<NodeProfile>> {
    let mut lines = BufReader::new(input).lines();
    let header = match lines.next() {
        Some(h) => h.map_err(|e| Error::io(origin, e))?,
        None => return Err(Error::parse(origin, 1, "missing header row")),
    };
    let names: Vec<&str> = header.split(',').collect();
    let expected: Vec<&str> = schemas.iter().map(|s| s.name.as_str()).collect();
    if names != expected {
        return Err(Error::parse(
            origin,
            1,
            format!("header {names:?} does not match schema attributes {expected:?}"),
        ));
    }
    let mut profiles = Vec::new();
    for (idx, line) in lines.enumerate() {
        let lineno = idx + 2;
        let line = line.map_err(|e| Error::io(origin, e))?;
        if line.is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != schemas.len() {
            return Err(Error::parse(
                origin,
                lineno,
                format!("expected {} fields, found {}", schemas.len(), cells.len()),
            ));
        }
        let values = cells
            .iter()
            .zip(schemas)
            .map(|(cell, s)| {
                s.level_index(cell)
                    .ok_or_else(|| Error::parse(origin, lineno, format!("`{cell}` is not a level of `{}`", s.name)))
            })
            .collect::<Result<Vec<_>>>()?;
        profiles.push(NodeProfile::new(values));
    }
    Ok(profiles)
}

pub fn load_profiles(path: impl AsRef<Path>, schemas: &[AttributeSchema]) -> Result<Vec<NodeProfile>> {
    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_profiles(file, schemas, path)
}
