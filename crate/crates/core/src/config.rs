//! Generation config files (TOML).
//!
//! ```toml
//! nodes = 769            # alias: n
//! min_edges = 2          # alias: m_o
//! max_edges = 43         # alias: m_f
//! p_triad_formation = 1.0
//! p_triad_linkage = 1.0
//! linkage_count = 1      # alias: L
//! gamma = 0.0
//! threshold = 0.5
//! seed = 7
//! schema = "schema.toml" # relative to this file; or inline [[attribute]] tables
//!
//! [similarity]
//! alpha = 1.0
//! beta = 1.0
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::attributes::{load_schemas, specs_into_schemas, AttributeSpec};
use crate::error::{Error, Result};
use crate::generator::GenerationConfig;
use crate::similarity::SimilarityParams;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(alias = "n")]
    nodes: usize,
    #[serde(alias = "m_o")]
    min_edges: usize,
    #[serde(alias = "m_f")]
    max_edges: usize,
    #[serde(default)]
    p_triad_formation: f64,
    #[serde(default)]
    p_triad_linkage: f64,
    #[serde(default, alias = "L")]
    linkage_count: usize,
    #[serde(default)]
    gamma: f64,
    #[serde(default = "default_threshold")]
    threshold: f64,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    similarity: Option<SimilarityParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    schema: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    attribute: Vec<AttributeSpec>,
}

fn default_threshold() -> f64 {
    0.5
}

/// Parses a config. A `schema` path is resolved against `base_dir`.
pub fn parse_config(text: &str, origin: &Path, base_dir: &Path) -> Result<GenerationConfig> {
    let file: ConfigFile = toml::from_str(text).map_err(|e| Error::Toml {
        path: origin.to_path_buf(),
        source: e,
    })?;
    let schemas = match (file.schema, file.attribute.is_empty()) {
        (Some(path), true) => load_schemas(base_dir.join(path))?,
        (None, false) => specs_into_schemas(file.attribute)?,
        (Some(_), false) => {
            return Err(Error::InvalidConfig(
                "give either a `schema` file or inline [[attribute]] tables, not both".into(),
            ))
        }
        (None, true) => return Err(Error::InvalidConfig("no attribute schema given".into())),
    };
    let config = GenerationConfig {
        nodes: file.nodes,
        min_edges: file.min_edges,
        max_edges: file.max_edges,
        p_triad_formation: file.p_triad_formation,
        p_triad_linkage: file.p_triad_linkage,
        linkage_count: file.linkage_count,
        gamma: file.gamma,
        threshold: file.threshold,
        similarity: file.similarity.unwrap_or_default(),
        schemas,
        seed: file.seed,
    };
    config.validate()?;
    Ok(config)
}

pub fn load_config(path: impl AsRef<Path>) -> Result<GenerationConfig> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    parse_config(&text, path, base)
}

/// Self-contained TOML for a config, with the schema inlined.
pub fn config_to_toml(config: &GenerationConfig) -> String {
    let file = ConfigFile {
        nodes: config.nodes,
        min_edges: config.min_edges,
        max_edges: config.max_edges,
        p_triad_formation: config.p_triad_formation,
        p_triad_linkage: config.p_triad_linkage,
        linkage_count: config.linkage_count,
        gamma: config.gamma,
        threshold: config.threshold,
        seed: config.seed,
        similarity: Some(config.similarity),
        schema: None,
        attribute: config.schemas.iter().map(AttributeSpec::from_schema).collect(),
    };
    toml::to_string(&file).expect("config serialization cannot fail")
}
