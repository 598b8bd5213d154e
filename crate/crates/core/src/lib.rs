//! Synthetic social network generation from socio-demographic attribute
//! distributions and structural parameters, plus the metrics used to compare
//! generated networks with observed ones.
//!
//! ```
//! use socgen::{generate, AttributeSchema, GenerationConfig, MetricsReport};
//!
//! let schemas = vec![AttributeSchema::categorical("gender", &["F", "M"], &[0.5, 0.5]).unwrap()];
//! let mut config = GenerationConfig::new(200, 2, 10, schemas);
//! config.p_triad_formation = 0.5;
//! config.seed = 42;
//! let out = generate(&config).unwrap();
//! let report = MetricsReport::compute(&out.graph, Some((&out.profiles, &config.schemas))).unwrap();
//! assert_eq!(report.nodes, 200);
//! ```

pub mod attributes;
pub mod config;
pub mod error;
pub mod experiments;
pub mod fixtures;
pub mod generator;
pub mod graph;
pub mod ingestion;
pub mod metrics;
pub mod powerlaw;
pub mod report;
pub mod similarity;

pub use attributes::{assign_profiles, demographic_distance, AttributeKind, AttributeSchema, NodeProfile};
pub use config::{config_to_toml, load_config, parse_config};
pub use error::{Error, Result};
pub use experiments::{run_sweep, stability, Metric, Parameter, SweepResult, SweepSpec};
pub use generator::{generate, EdgeOrigin, Generated, GenerationConfig, GenerationTrace};
pub use graph::{Graph, NodeId};
pub use ingestion::{load_dataset, DatasetBundle, IngestOptions};
pub use powerlaw::{powerlaw_fit, PowerLawFit};
pub use report::{compare, MetricsReport, ReportFormat, ReportTable};
pub use similarity::{combined_score, SimilarityParams};
