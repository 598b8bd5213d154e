//! Structural distances (preferential attachment, friend-of-a-friend) and the
//! combined link-propensity score.
//!
//! Every term here is a distance in `[0, 1]` where 0 means "most similar".
//! [`combined_score`] folds them into a similarity, `1 - weighted distance`,
//! so that threshold gating and proportional sampling both read high = likely.

use serde::{Deserialize, Serialize};

use crate::attributes::{demographic_distance, AttributeSchema, NodeProfile};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimilarityParams {
    /// Weight of the demographic term.
    #[serde(default = "one")]
    pub alpha: f64,
    /// Weight of the structural term.
    #[serde(default = "one")]
    pub beta: f64,
    #[serde(default = "one")]
    pub w_pa: f64,
    #[serde(default = "one")]
    pub w_fof: f64,
}

fn one() -> f64 {
    1.0
}

impl Default for SimilarityParams {
    fn default() -> Self {
        SimilarityParams {
            alpha: 1.0,
            beta: 1.0,
            w_pa: 1.0,
            w_fof: 1.0,
        }
    }
}

impl SimilarityParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let p = SimilarityParams {
            alpha,
            beta,
            ..Default::default()
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.alpha, self.beta, self.w_pa, self.w_fof];
        if all.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::InvalidConfig(
                "alpha, beta and structural weights must be finite and nonnegative".into(),
            ));
        }
        if self.alpha + self.beta <= 0.0 {
            return Err(Error::InvalidConfig("alpha + beta must be positive".into()));
        }
        if self.beta > 0.0 && self.w_pa + self.w_fof <= 0.0 {
            return Err(Error::InvalidConfig(
                "structural weights must not all be zero when beta > 0".into(),
            ));
        }
        Ok(())
    }

    /// Weight-normalized mean of the two structural distances.
    pub fn structural_distance(&self, pa: f64, fof: f64) -> f64 {
        let total = self.w_pa + self.w_fof;
        if total == 0.0 {
            return 0.0;
        }
        (self.w_pa * pa + self.w_fof * fof) / total
    }

    /// `1 - (alpha * demographic + beta * structural) / (alpha + beta)`.
    pub fn score(&self, demographic: f64, structural: f64) -> f64 {
        let distance = (self.alpha * demographic + self.beta * structural) / (self.alpha + self.beta);
        (1.0 - distance).clamp(0.0, 1.0)
    }
}

/// `1 - degree / max_degree`; 1 for every node while the graph has no edges.
pub fn pa_term(degree: usize, max_degree: usize) -> f64 {
    if max_degree == 0 {
        1.0
    } else {
        1.0 - degree as f64 / max_degree as f64
    }
}

/// `1 - common / min(deg_i, deg_j)`; 1 when either node has no neighbors.
pub fn fof_term(common: usize, degree_i: usize, degree_j: usize) -> f64 {
    let denom = degree_i.min(degree_j);
    if denom == 0 {
        1.0
    } else {
        1.0 - common as f64 / denom as f64
    }
}

pub fn pa_distance(g: &Graph, i: NodeId) -> Result<f64> {
    let max = g.max_degree()?;
    if i >= g.node_count() {
        return Err(Error::UnknownNode {
            id: i,
            node_count: g.node_count(),
        });
    }
    Ok(pa_term(g.degree(i), max))
}

pub fn fof_distance(g: &Graph, i: NodeId, j: NodeId) -> Result<f64> {
    let common = g.common_neighbors(i, j)?;
    Ok(fof_term(common, g.degree(i), g.degree(j)))
}

/// Link propensity of the new node `i` towards the existing node `j`, in
/// `[0, 1]` with 1 = maximally attractive. The preferential-attachment term is
/// evaluated on `j` only.
pub fn combined_score(
    g: &Graph,
    i: NodeId,
    j: NodeId,
    profiles: &[NodeProfile],
    schemas: &[AttributeSchema],
    params: &SimilarityParams,
) -> Result<f64> {
    params.validate()?;
    let demographic = if params.alpha > 0.0 {
        let (p, q) = match (profiles.get(i), profiles.get(j)) {
            (Some(p), Some(q)) => (p, q),
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "no profile for node {}",
                    if profiles.get(i).is_none() { i } else { j }
                )))
            }
        };
        demographic_distance(p, q, schemas)?
    } else {
        0.0
    };
    let structural = if params.beta > 0.0 {
        params.structural_distance(pa_distance(g, j)?, fof_distance(g, i, j)?)
    } else {
        0.0
    };
    Ok(params.score(demographic, structural))
}
