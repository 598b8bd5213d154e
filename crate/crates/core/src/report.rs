//! The metrics report and its two text encodings, plus side-by-side
//! comparison of two reports.
//!
//! Key/value form: one `key = value` per line, undefined values written as
//! `NA`. CSV form: a header row and one value row with the same keys in the
//! same order. Key order is fixed: `schema_version`, `nodes`, `edges`,
//! `density`, `avg_degree`, `clustering_coefficient`, `mean_local_clustering`,
//! `avg_geodesic_distance`, `degree_assortativity`, `powerlaw_alpha`,
//! `powerlaw_xmin`, then `homophily.<attribute>` in schema order.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::attributes::{AttributeSchema, NodeProfile};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metrics;

pub const SCHEMA_VERSION: u32 = 1;
pub const NA: &str = "NA";

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub nodes: usize,
    pub edges: usize,
    pub density: Option<f64>,
    pub avg_degree: Option<f64>,
    pub clustering_coefficient: Option<f64>,
    pub mean_local_clustering: Option<f64>,
    pub avg_geodesic_distance: Option<f64>,
    pub degree_assortativity: Option<f64>,
    pub powerlaw_alpha: Option<f64>,
    pub powerlaw_xmin: Option<usize>,
    /// Per attribute, in schema order. Empty when no attributes were given.
    pub homophily: Vec<(String, Option<f64>)>,
}

impl MetricsReport {
    pub fn compute(g: &Graph, attributes: Option<(&[NodeProfile], &[AttributeSchema])>) -> Result<Self> {
        let fit = metrics::degree_powerlaw(g);
        let homophily = match attributes {
            Some((profiles, schemas)) => schemas
                .iter()
                .enumerate()
                .map(|(k, s)| Ok((s.name.clone(), metrics::attribute_homophily(g, profiles, s, k)?)))
                .collect::<Result<Vec<_>>>()?,
            None => Vec::new(),
        };
        Ok(MetricsReport {
            nodes: g.node_count(),
            edges: g.edge_count(),
            density: metrics::density(g).ok(),
            avg_degree: metrics::avg_degree(g),
            clustering_coefficient: metrics::clustering_coefficient(g),
            mean_local_clustering: metrics::mean_local_clustering(g),
            avg_geodesic_distance: metrics::avg_geodesic_distance(g),
            degree_assortativity: metrics::degree_assortativity(g),
            powerlaw_alpha: fit.map(|f| f.alpha),
            powerlaw_xmin: fit.map(|f| f.xmin),
            homophily,
        })
    }

    /// `(key, value)` pairs in the documented order; `None` = undefined.
    pub fn entries(&self) -> Vec<(String, Option<f64>)> {
        let mut out = vec![
            ("schema_version".to_string(), Some(SCHEMA_VERSION as f64)),
            ("nodes".to_string(), Some(self.nodes as f64)),
            ("edges".to_string(), Some(self.edges as f64)),
            ("density".to_string(), self.density),
            ("avg_degree".to_string(), self.avg_degree),
            ("clustering_coefficient".to_string(), self.clustering_coefficient),
            ("mean_local_clustering".to_string(), self.mean_local_clustering),
            ("avg_geodesic_distance".to_string(), self.avg_geodesic_distance),
            ("degree_assortativity".to_string(), self.degree_assortativity),
            ("powerlaw_alpha".to_string(), self.powerlaw_alpha),
            ("powerlaw_xmin".to_string(), self.powerlaw_xmin.map(|x| x as f64)),
        ];
        out.extend(self.homophily.iter().map(|(name, v)| (format!("homophily.{name}"), *v)));
        out
    }

    /// Looks up a value by report key; the outer `None` means "no such key".
    pub fn get(&self, key: &str) -> Option<Option<f64>> {
        self.entries().into_iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn to_kv(&self) -> String {
        let mut s = String::new();
        for (k, v) in self.entries() {
            let _ = writeln!(s, "{k} = {}", format_value(v));
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let entries = self.entries();
        let header: Vec<&str> = entries.iter().map(|(k, _)| k.as_str()).collect();
        let values: Vec<String> = entries.iter().map(|(_, v)| format_value(*v)).collect();
        format!("{}\n{}\n", header.join(","), values.join(","))
    }

    pub fn save(&self, path: impl AsRef<Path>, format: ReportFormat) -> Result<()> {
        let path = path.as_ref();
        let text = match format {
            ReportFormat::Kv => self.to_kv(),
            ReportFormat::Csv => self.to_csv(),
        };
        fs::write(path, text).map_err(|e| Error::io(path, e))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Kv,
    Csv,
}

pub fn format_value(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x}"),
        None => NA.to_string(),
    }
}

fn parse_value(s: &str) -> Option<Option<f64>> {
    if s == NA {
        Some(None)
    } else {
        s.parse::<f64>().ok().map(Some)
    }
}

/// A report read back from disk: ordered keys with optional values. Reading
/// is format-agnostic so reports can be compared regardless of origin.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportTable {
    pub entries: Vec<(String, Option<f64>)>,
}

impl ReportTable {
    pub fn get(&self, key: &str) -> Option<Option<f64>> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }

    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let first = text.lines().next().unwrap_or("");
        let entries = if first.contains(" = ") || first.contains('=') {
            let mut entries = Vec::new();
            for (idx, line) in text.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let (k, v) = line
                    .split_once('=')
                    .ok_or_else(|| Error::parse(origin, idx + 1, "expected `key = value`"))?;
                let value = parse_value(v.trim())
                    .ok_or_else(|| Error::parse(origin, idx + 1, format!("invalid value `{}`", v.trim())))?;
                entries.push((k.trim().to_string(), value));
            }
            entries
        } else {
            let mut lines = text.lines().filter(|l| !l.trim().is_empty());
            let header = lines.next().ok_or_else(|| Error::parse(origin, 1, "empty report"))?;
            let row = lines
                .next()
                .ok_or_else(|| Error::parse(origin, 2, "missing value row"))?;
            let keys: Vec<&str> = header.split(',').collect();
            let vals: Vec<&str> = row.split(',').collect();
            if keys.len() != vals.len() {
                return Err(Error::parse(origin, 2, "header and value row differ in length"));
            }
            keys.iter()
                .zip(&vals)
                .map(|(k, v)| {
                    parse_value(v.trim())
                        .map(|val| (k.trim().to_string(), val))
                        .ok_or_else(|| Error::parse(origin, 2, format!("invalid value `{v}`")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        match entries.iter().find(|(k, _)| k == "schema_version") {
            Some((_, Some(v))) if *v >= 1.0 => {}
            _ => return Err(Error::parse(origin, 1, "missing schema_version")),
        }
        Ok(ReportTable { entries })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        ReportTable::parse(&text, path)
    }
}

impl From<&MetricsReport> for ReportTable {
    fn from(r: &MetricsReport) -> Self {
        ReportTable { entries: r.entries() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub metric: String,
    pub a: Option<f64>,
    pub b: Option<f64>,
    /// `b - a`; undefined if either side is.
    pub delta: Option<f64>,
    /// `(b - a) / |a|`; undefined if either side is or `a == 0`.
    pub relative: Option<f64>,
}

/// Side-by-side comparison over the union of keys (order of `a`, then keys
/// only present in `b`). Fails when the schema versions differ.
pub fn compare(a: &ReportTable, b: &ReportTable) -> Result<Vec<ComparisonRow>> {
    let va = a.get("schema_version").flatten();
    let vb = b.get("schema_version").flatten();
    if va != vb {
        return Err(Error::SchemaMismatch(format!(
            "schema_version {} vs {}",
            format_value(va),
            format_value(vb)
        )));
    }
    let mut keys: Vec<&str> = a.entries.iter().map(|(k, _)| k.as_str()).collect();
    for (k, _) in &b.entries {
        if !keys.contains(&k.as_str()) {
            keys.push(k);
        }
    }
    Ok(keys
        .into_iter()
        .filter(|k| *k != "schema_version")
        .map(|k| {
            let x = a.get(k).flatten();
            let y = b.get(k).flatten();
            let delta = x.zip(y).map(|(x, y)| y - x);
            let relative = x.zip(delta).and_then(|(x, d)| (x != 0.0).then(|| d / x.abs()));
            ComparisonRow {
                metric: k.to_string(),
                a: x,
                b: y,
                delta,
                relative,
            }
        })
        .collect())
}

pub fn comparison_csv(rows: &[ComparisonRow]) -> String {
    let mut s = String::from("metric,a,b,delta,relative_delta\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            r.metric,
            format_value(r.a),
            format_value(r.b),
            format_value(r.delta),
            format_value(r.relative)
        );
    }
    s
}

pub fn comparison_table(rows: &[ComparisonRow]) -> String {
    let cell = |v: Option<f64>| v.map_or_else(|| NA.to_string(), |x| format!("{x:.6}"));
    let width = rows.iter().map(|r| r.metric.len()).max().unwrap_or(6).max(6);
    let mut s = format!(
        "{:<width$}  {:>14}  {:>14}  {:>14}  {:>14}\n",
        "metric", "a", "b", "delta", "relative"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:<width$}  {:>14}  {:>14}  {:>14}  {:>14}",
            r.metric,
            cell(r.a),
            cell(r.b),
            cell(r.delta),
            cell(r.relative)
        );
    }
    s
}
