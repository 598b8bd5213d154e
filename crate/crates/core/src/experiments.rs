//! Parameter sweeps and run-to-run stability.
//!
//! A sweep runs every cell of the cartesian product of the varied parameters
//! `replicates` times. Replicate seeds are derived from the base seed, the
//! cell index and the replicate index, so cells are independent and can run
//! in parallel; results are gathered back in grid order.
//!
//! Sweep CSV columns: `row`, one column per varied parameter, `replicate`,
//! then for each metric `<metric>` and `<metric>_sd`. Run rows (`row=run`)
//! leave `_sd` empty; each cell is followed by an aggregate row
//! (`row=aggregate`, empty replicate) holding the mean over defined values and
//! the sample standard deviation.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;

use crate::attributes::{AttributeSchema, NodeProfile};
use crate::config::load_config;
use crate::error::{Error, Result};
use crate::generator::{generate, GenerationConfig};
use crate::graph::Graph;
use crate::metrics;
use crate::report::format_value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parameter {
    Nodes,
    MinEdges,
    MaxEdges,
    TriadFormation,
    TriadLinkage,
    LinkageCount,
    Gamma,
    Threshold,
    Alpha,
    Beta,
    WeightPa,
    WeightFof,
}

impl Parameter {
    pub const ALL: [Parameter; 12] = [
        Parameter::Nodes,
        Parameter::MinEdges,
        Parameter::MaxEdges,
        Parameter::TriadFormation,
        Parameter::TriadLinkage,
        Parameter::LinkageCount,
        Parameter::Gamma,
        Parameter::Threshold,
        Parameter::Alpha,
        Parameter::Beta,
        Parameter::WeightPa,
        Parameter::WeightFof,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Parameter::Nodes => "nodes",
            Parameter::MinEdges => "min_edges",
            Parameter::MaxEdges => "max_edges",
            Parameter::TriadFormation => "p_triad_formation",
            Parameter::TriadLinkage => "p_triad_linkage",
            Parameter::LinkageCount => "linkage_count",
            Parameter::Gamma => "gamma",
            Parameter::Threshold => "threshold",
            Parameter::Alpha => "alpha",
            Parameter::Beta => "beta",
            Parameter::WeightPa => "w_pa",
            Parameter::WeightFof => "w_fof",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        let alias = match name {
            "n" => "nodes",
            "m_o" => "min_edges",
            "m_f" => "max_edges",
            "L" => "linkage_count",
            other => other,
        };
        Parameter::ALL
            .into_iter()
            .find(|p| p.name() == alias)
            .ok_or_else(|| Error::UnknownParameter(name.to_string()))
    }

    pub fn apply(self, config: &mut GenerationConfig, value: f64) -> Result<()> {
        let count = || {
            if value >= 0.0 && value.fract() == 0.0 {
                Ok(value as usize)
            } else {
                Err(Error::InvalidConfig(format!(
                    "{} needs a nonnegative integer, got {value}",
                    self.name()
                )))
            }
        };
        match self {
            Parameter::Nodes => config.nodes = count()?,
            Parameter::MinEdges => config.min_edges = count()?,
            Parameter::MaxEdges => config.max_edges = count()?,
            Parameter::TriadFormation => config.p_triad_formation = value,
            Parameter::TriadLinkage => config.p_triad_linkage = value,
            Parameter::LinkageCount => config.linkage_count = count()?,
            Parameter::Gamma => config.gamma = value,
            Parameter::Threshold => config.threshold = value,
            Parameter::Alpha => config.similarity.alpha = value,
            Parameter::Beta => config.similarity.beta = value,
            Parameter::WeightPa => config.similarity.w_pa = value,
            Parameter::WeightFof => config.similarity.w_fof = value,
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Metric {
    Density,
    AvgDegree,
    Clustering,
    MeanLocalClustering,
    Geodesic,
    Assortativity,
    PowerlawAlpha,
    PowerlawXmin,
    /// Homophily of one attribute, by name.
    Homophily(String),
    /// Mean homophily over attributes where it is defined.
    HomophilyMean,
}

impl Metric {
    pub fn parse(name: &str) -> Result<Self> {
        Ok(match name {
            "density" => Metric::Density,
            "avg_degree" => Metric::AvgDegree,
            "clustering_coefficient" => Metric::Clustering,
            "mean_local_clustering" => Metric::MeanLocalClustering,
            "avg_geodesic_distance" => Metric::Geodesic,
            "degree_assortativity" => Metric::Assortativity,
            "powerlaw_alpha" => Metric::PowerlawAlpha,
            "powerlaw_xmin" => Metric::PowerlawXmin,
            "homophily_mean" => Metric::HomophilyMean,
            other => match other.strip_prefix("homophily.") {
                Some(attr) if !attr.is_empty() => Metric::Homophily(attr.to_string()),
                _ => return Err(Error::UnknownMetric(other.to_string())),
            },
        })
    }

    pub fn name(&self) -> String {
        match self {
            Metric::Density => "density".into(),
            Metric::AvgDegree => "avg_degree".into(),
            Metric::Clustering => "clustering_coefficient".into(),
            Metric::MeanLocalClustering => "mean_local_clustering".into(),
            Metric::Geodesic => "avg_geodesic_distance".into(),
            Metric::Assortativity => "degree_assortativity".into(),
            Metric::PowerlawAlpha => "powerlaw_alpha".into(),
            Metric::PowerlawXmin => "powerlaw_xmin".into(),
            Metric::Homophily(a) => format!("homophily.{a}"),
            Metric::HomophilyMean => "homophily_mean".into(),
        }
    }

    pub fn evaluate(&self, g: &Graph, profiles: &[NodeProfile], schemas: &[AttributeSchema]) -> Result<Option<f64>> {
        Ok(match self {
            Metric::Density => metrics::density(g).ok(),
            Metric::AvgDegree => metrics::avg_degree(g),
            Metric::Clustering => metrics::clustering_coefficient(g),
            Metric::MeanLocalClustering => metrics::mean_local_clustering(g),
            Metric::Geodesic => metrics::avg_geodesic_distance(g),
            Metric::Assortativity => metrics::degree_assortativity(g),
            Metric::PowerlawAlpha => metrics::degree_powerlaw(g).map(|f| f.alpha),
            Metric::PowerlawXmin => metrics::degree_powerlaw(g).map(|f| f.xmin as f64),
            Metric::Homophily(attr) => {
                let k = schemas
                    .iter()
                    .position(|s| &s.name == attr)
                    .ok_or_else(|| Error::UnknownMetric(self.name()))?;
                metrics::attribute_homophily(g, profiles, &schemas[k], k)?
            }
            Metric::HomophilyMean => {
                let values = schemas
                    .iter()
                    .enumerate()
                    .map(|(k, s)| metrics::attribute_homophily(g, profiles, s, k))
                    .collect::<Result<Vec<_>>>()?;
                mean(&values)
            }
        })
    }
}

/// Splitmix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for replicate `replicate` of cell `cell`.
pub fn derive_seed(base: u64, cell: u64, replicate: u64) -> u64 {
    mix(mix(mix(base) ^ cell) ^ replicate.wrapping_mul(0xD6E8_FEB8_6659_FD93))
}

/// Mean over defined values.
pub fn mean(values: &[Option<f64>]) -> Option<f64> {
    let defined: Vec<f64> = values.iter().flatten().copied().collect();
    (!defined.is_empty()).then(|| defined.iter().sum::<f64>() / defined.len() as f64)
}

/// Sample standard deviation over defined values (needs two of them).
pub fn std_dev(values: &[Option<f64>]) -> Option<f64> {
    let defined: Vec<f64> = values.iter().flatten().copied().collect();
    if defined.len() < 2 {
        return None;
    }
    let m = defined.iter().sum::<f64>() / defined.len() as f64;
    let ss: f64 = defined.iter().map(|x| (x - m).powi(2)).sum();
    Some((ss / (defined.len() - 1) as f64).sqrt())
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub base: GenerationConfig,
    pub varied: Vec<(Parameter, Vec<f64>)>,
    pub replicates: usize,
    pub metrics: Vec<Metric>,
}

impl SweepSpec {
    pub fn new(base: GenerationConfig, replicates: usize, metrics: Vec<Metric>) -> Self {
        SweepSpec {
            base,
            varied: Vec::new(),
            replicates,
            metrics,
        }
    }

    pub fn vary(mut self, parameter: Parameter, values: Vec<f64>) -> Self {
        self.varied.push((parameter, values));
        self
    }

    /// Cells of the grid in row-major order (last parameter varies fastest).
    pub fn cells(&self) -> Vec<Vec<f64>> {
        let mut cells = vec![Vec::new()];
        for (_, values) in &self.varied {
            cells = cells
                .into_iter()
                .flat_map(|prefix| {
                    values.iter().map(move |&v| {
                        let mut c = prefix.clone();
                        c.push(v);
                        c
                    })
                })
                .collect();
        }
        cells
    }

    pub fn validate(&self) -> Result<()> {
        if self.replicates < 1 {
            return Err(Error::InvalidConfig("replicates must be at least 1".into()));
        }
        if self.metrics.is_empty() {
            return Err(Error::InvalidConfig("at least one metric is required".into()));
        }
        for (i, (p, values)) in self.varied.iter().enumerate() {
            if values.is_empty() {
                return Err(Error::InvalidConfig(format!("no values given for {}", p.name())));
            }
            if self.varied[..i].iter().any(|(q, _)| q == p) {
                return Err(Error::InvalidConfig(format!("{} is varied twice", p.name())));
            }
        }
        for cell in self.cells() {
            self.config_for(&cell, 0, 0)?.validate()?;
        }
        for m in &self.metrics {
            if let Metric::Homophily(attr) = m {
                if !self.base.schemas.iter().any(|s| &s.name == attr) {
                    return Err(Error::UnknownMetric(m.name()));
                }
            }
        }
        Ok(())
    }

    fn config_for(&self, cell: &[f64], cell_index: usize, replicate: usize) -> Result<GenerationConfig> {
        let mut c = self.base.clone();
        for ((p, _), &v) in self.varied.iter().zip(cell) {
            p.apply(&mut c, v)?;
        }
        c.seed = derive_seed(self.base.seed, cell_index as u64, replicate as u64);
        Ok(c)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub values: Vec<f64>,
    /// `runs[replicate][metric]`
    pub runs: Vec<Vec<Option<f64>>>,
}

impl CellResult {
    pub fn metric_values(&self, metric: usize) -> Vec<Option<f64>> {
        self.runs.iter().map(|r| r[metric]).collect()
    }

    pub fn mean(&self, metric: usize) -> Option<f64> {
        mean(&self.metric_values(metric))
    }

    pub fn std_dev(&self, metric: usize) -> Option<f64> {
        std_dev(&self.metric_values(metric))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub parameters: Vec<Parameter>,
    pub metrics: Vec<Metric>,
    pub cells: Vec<CellResult>,
}

fn run_one(config: &GenerationConfig, metrics: &[Metric]) -> Result<Vec<Option<f64>>> {
    let out = generate(config)?;
    metrics
        .iter()
        .map(|m| m.evaluate(&out.graph, &out.profiles, &config.schemas))
        .collect()
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let cells = spec.cells();
    let jobs: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|c| (0..spec.replicates).map(move |r| (c, r)))
        .collect();
    let results = jobs
        .par_iter()
        .map(|&(c, r)| run_one(&spec.config_for(&cells[c], c, r)?, &spec.metrics))
        .collect::<Result<Vec<_>>>()?;
    let mut results = results.into_iter();
    let cells = cells
        .into_iter()
        .map(|values| CellResult {
            values,
            runs: results.by_ref().take(spec.replicates).collect(),
        })
        .collect();
    Ok(SweepResult {
        parameters: spec.varied.iter().map(|(p, _)| *p).collect(),
        metrics: spec.metrics.clone(),
        cells,
    })
}

impl SweepResult {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("row");
        for p in &self.parameters {
            let _ = write!(s, ",{}", p.name());
        }
        s.push_str(",replicate");
        for m in &self.metrics {
            let _ = write!(s, ",{0},{0}_sd", m.name());
        }
        s.push('\n');
        for cell in &self.cells {
            let params: String = cell.values.iter().map(|v| format!(",{v}")).collect();
            for (r, run) in cell.runs.iter().enumerate() {
                let _ = write!(s, "run{params},{r}");
                for v in run {
                    let _ = write!(s, ",{},", format_value(*v));
                }
                s.push('\n');
            }
            let _ = write!(s, "aggregate{params},");
            for k in 0..self.metrics.len() {
                let _ = write!(s, ",{},{}", format_value(cell.mean(k)), format_value(cell.std_dev(k)));
            }
            s.push('\n');
        }
        s
    }

    pub fn metric_index(&self, metric: &Metric) -> Option<usize> {
        self.metrics.iter().position(|m| m == metric)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityRow {
    pub metric: Metric,
    pub mean: Option<f64>,
    pub std_dev: Option<f64>,
}

/// Metrics reported by [`stability`].
pub fn stability_metrics() -> Vec<Metric> {
    vec![
        Metric::Density,
        Metric::PowerlawAlpha,
        Metric::Geodesic,
        Metric::Clustering,
        Metric::Assortativity,
    ]
}

/// Runs `config` `runs` times with derived seeds and reports the mean and
/// sample standard deviation of each metric.
pub fn stability(config: &GenerationConfig, runs: usize) -> Result<Vec<StabilityRow>> {
    if runs < 2 {
        return Err(Error::InvalidArgument(format!(
            "stability needs at least 2 runs, got {runs}"
        )));
    }
    let spec = SweepSpec::new(config.clone(), runs, stability_metrics());
    let result = run_sweep(&spec)?;
    let cell = &result.cells[0];
    Ok(result
        .metrics
        .iter()
        .enumerate()
        .map(|(k, m)| StabilityRow {
            metric: m.clone(),
            mean: cell.mean(k),
            std_dev: cell.std_dev(k),
        })
        .collect())
}

pub fn stability_csv(rows: &[StabilityRow]) -> String {
    let mut s = String::from("metric,mean,std_dev\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{}",
            r.metric.name(),
            format_value(r.mean),
            format_value(r.std_dev)
        );
    }
    s
}

// ---------------------------------------------------------------------------
// Sweep file (TOML)
//
// config = "base.toml"
// replicates = 10
// metrics = ["degree_assortativity"]
//
// [[vary]]
// parameter = "gamma"
// values = [-2, -1, 0, 1, 2]

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepFile {
    config: PathBuf,
    #[serde(default = "ten")]
    replicates: usize,
    metrics: Vec<String>,
    #[serde(default)]
    vary: Vec<VaryEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct VaryEntry {
    parameter: String,
    values: Vec<f64>,
}

fn ten() -> usize {
    10
}

pub fn load_sweep(path: impl AsRef<Path>) -> Result<SweepSpec> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let file: SweepFile = toml::from_str(&text).map_err(|e| Error::Toml {
        path: path.to_path_buf(),
        source: e,
    })?;
    let base = load_config(path.parent().unwrap_or_else(|| Path::new(".")).join(&file.config))?;
    let metrics = file
        .metrics
        .iter()
        .map(|m| Metric::parse(m))
        .collect::<Result<Vec<_>>>()?;
    let mut spec = SweepSpec::new(base, file.replicates, metrics);
    for v in file.vary {
        spec = spec.vary(Parameter::parse(&v.parameter)?, v.values);
    }
    spec.validate()?;
    Ok(spec)
}
