use std::io;
use std::path::PathBuf;

use thiserror::Error;

use crate::graph::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop on node {0}")]
    SelfLoop(NodeId),

    #[error("unknown node id {id} (graph has {node_count} nodes)")]
    UnknownNode { id: NodeId, node_count: usize },

    #[error("graph is empty")]
    EmptyGraph,

    #[error("invalid attribute schema `{name}`: {reason}")]
    InvalidSchema { name: String, reason: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{path}:{line}: {reason}")]
    Parse { path: PathBuf, line: usize, reason: String },

    #[error("invalid dataset: {0}")]
    Dataset(String),

    #[error("unknown sweep parameter `{0}`")]
    UnknownParameter(String),

    #[error("unknown metric `{0}`")]
    UnknownMetric(String),

    #[error("report schema mismatch: {0}")]
    SchemaMismatch(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("{path}: {source}")]
    Toml {
        path: PathBuf,
        #[source]
        source: toml::de::Error,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, reason: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            reason: reason.into(),
        }
    }

    pub(crate) fn schema(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidSchema {
            name: name.into(),
            reason: reason.into(),
        }
    }
}
