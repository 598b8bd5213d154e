//! Structural statistics used to compare networks: density, clustering,
//! geodesic distance, degree assortativity, attribute homophily and the
//! degree distribution. Cases where a statistic is undefined come back as
//! `None` rather than a sentinel number.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::attributes::{AttributeKind, AttributeSchema, NodeProfile};
use crate::error::{Error, Result};
use crate::graph::{sorted_intersection_len, Graph, NodeId};
use crate::powerlaw::{powerlaw_fit, PowerLawFit};

pub fn density(g: &Graph) -> Result<f64> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "density needs at least 2 nodes, got {n}"
        )));
    }
    Ok(2.0 * g.edge_count() as f64 / (n as f64 * (n as f64 - 1.0)))
}

pub fn avg_degree(g: &Graph) -> Option<f64> {
    (g.node_count() > 0).then(|| 2.0 * g.edge_count() as f64 / g.node_count() as f64)
}

/// Triangles through each node.
fn triangles_per_node(g: &Graph) -> Vec<usize> {
    (0..g.node_count())
        .map(|i| {
            let nbrs = g.neighbors(i);
            // count each triangle {i, j, k} with j < k once
            nbrs.iter()
                .map(|&j| {
                    let after_j = &g.neighbors(j)[g.neighbors(j).partition_point(|&k| k <= j)..];
                    sorted_intersection_len(nbrs, after_j)
                })
                .sum()
        })
        .collect()
}

/// Global transitivity: `3 * triangles / connected triples`.
pub fn clustering_coefficient(g: &Graph) -> Option<f64> {
    let triples: usize = (0..g.node_count())
        .map(|i| {
            let d = g.degree(i);
            d * d.saturating_sub(1) / 2
        })
        .sum();
    if triples == 0 {
        return None;
    }
    let closed: usize = triangles_per_node(g).iter().sum();
    // each triangle is counted once at each of its three corners
    Some(closed as f64 / triples as f64)
}

/// Mean of local clustering over nodes with degree >= 2.
pub fn mean_local_clustering(g: &Graph) -> Option<f64> {
    let tri = triangles_per_node(g);
    let locals: Vec<f64> = (0..g.node_count())
        .filter(|&i| g.degree(i) >= 2)
        .map(|i| {
            let d = g.degree(i) as f64;
            2.0 * tri[i] as f64 / (d * (d - 1.0))
        })
        .collect();
    (!locals.is_empty()).then(|| locals.iter().sum::<f64>() / locals.len() as f64)
}

/// Connected components as `component[node]` labels, numbered by smallest
/// member id.
pub fn components(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    let mut queue = VecDeque::new();
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = next;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if label[w] == usize::MAX {
                    label[w] = next;
                    queue.push_back(w);
                }
            }
        }
        next += 1;
    }
    label
}

/// Nodes of the largest connected component (ties go to the component with
/// the smallest node id).
pub fn largest_component(g: &Graph) -> Vec<NodeId> {
    let label = components(g);
    let count = label.iter().copied().max().map_or(0, |m| m + 1);
    let mut sizes = vec![0usize; count];
    for &l in &label {
        sizes[l] += 1;
    }
    let Some(best) = (0..count).max_by(|&a, &b| sizes[a].cmp(&sizes[b]).then(b.cmp(&a))) else {
        return Vec::new();
    };
    (0..g.node_count()).filter(|&i| label[i] == best).collect()
}

fn bfs_distance_sum(g: &Graph, source: NodeId, dist: &mut [u32], queue: &mut VecDeque<NodeId>) -> u64 {
    dist.fill(u32::MAX);
    dist[source] = 0;
    queue.clear();
    queue.push_back(source);
    let mut total = 0u64;
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        total += du as u64;
        for &w in g.neighbors(u) {
            if dist[w] == u32::MAX {
                dist[w] = du + 1;
                queue.push_back(w);
            }
        }
    }
    total
}

/// Mean shortest-path length over ordered pairs of distinct nodes in the
/// largest connected component. `None` for graphs without edges.
pub fn avg_geodesic_distance(g: &Graph) -> Option<f64> {
    if g.edge_count() == 0 {
        return None;
    }
    let lcc = largest_component(g);
    let s = lcc.len() as u64;
    let total: u64 = lcc
        .par_iter()
        .map_init(
            || (vec![u32::MAX; g.node_count()], VecDeque::new()),
            |(dist, queue), &src| bfs_distance_sum(g, src, dist, queue),
        )
        .sum();
    Some(total as f64 / (s * (s - 1)) as f64)
}

/// Pearson correlation of `(x, y)` pairs given as running sums over both
/// orientations of every edge. `None` when either side has zero variance.
fn pearson_symmetric(pairs: impl Iterator<Item = (f64, f64)>) -> Option<f64> {
    let (mut count, mut sum, mut sum_sq, mut sum_xy) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for (x, y) in pairs {
        // both orientations: (x, y) and (y, x) share marginals
        count += 2.0;
        sum += x + y;
        sum_sq += x * x + y * y;
        sum_xy += 2.0 * x * y;
    }
    if count == 0.0 {
        return None;
    }
    let mean = sum / count;
    let var = sum_sq / count - mean * mean;
    let cov = sum_xy / count - mean * mean;
    // relative tolerance guards against rounding noise on regular graphs
    if var <= 1e-12 * (sum_sq / count).max(1.0) {
        return None;
    }
    Some((cov / var).clamp(-1.0, 1.0))
}

/// Newman's degree assortativity: Pearson correlation of the degrees at the
/// two ends of each edge, counting both orientations.
pub fn degree_assortativity(g: &Graph) -> Option<f64> {
    pearson_symmetric(g.edges().map(|(i, j)| (g.degree(i) as f64, g.degree(j) as f64)))
}

/// Attribute assortativity for schema attribute `attribute`: the mixing-matrix
/// coefficient for categorical attributes, the Pearson coefficient of the
/// endpoint values for ordinal and numerical ones.
pub fn attribute_homophily(
    g: &Graph,
    profiles: &[NodeProfile],
    schema: &AttributeSchema,
    attribute: usize,
) -> Result<Option<f64>> {
    if profiles.len() != g.node_count() {
        return Err(Error::InvalidArgument(format!(
            "{} profiles for {} nodes",
            profiles.len(),
            g.node_count()
        )));
    }
    let level = |i: NodeId| -> Result<usize> {
        match profiles[i].values.get(attribute) {
            Some(&v) if v < schema.levels.len() => Ok(v),
            _ => Err(Error::InvalidArgument(format!(
                "node {i} has no valid value for `{}`",
                schema.name
            ))),
        }
    };
    if g.edge_count() == 0 {
        return Ok(None);
    }
    match schema.kind {
        AttributeKind::Categorical => {
            let k = schema.levels.len();
            let mut mixing = vec![0.0f64; k * k];
            for (i, j) in g.edges() {
                let (a, b) = (level(i)?, level(j)?);
                mixing[a * k + b] += 1.0;
                mixing[b * k + a] += 1.0;
            }
            Ok(categorical_assortativity(&mixing, k))
        }
        AttributeKind::Ordinal | AttributeKind::Numerical => {
            let pairs = g
                .edges()
                .map(|(i, j)| Ok((schema.levels[level(i)?].value, schema.levels[level(j)?].value)))
                .collect::<Result<Vec<_>>>()?;
            Ok(pearson_symmetric(pairs.into_iter()))
        }
    }
}

/// `(tr e - sum a_i b_i) / (1 - sum a_i b_i)` for a `k x k` mixing count
/// matrix, normalized internally.
fn categorical_assortativity(mixing: &[f64], k: usize) -> Option<f64> {
    let total: f64 = mixing.iter().sum();
    if total == 0.0 {
        return None;
    }
    let trace: f64 = (0..k).map(|i| mixing[i * k + i]).sum::<f64>() / total;
    let ab: f64 = (0..k)
        .map(|i| {
            let a: f64 = mixing[i * k..(i + 1) * k].iter().sum::<f64>() / total;
            let b: f64 = (0..k).map(|r| mixing[r * k + i]).sum::<f64>() / total;
            a * b
        })
        .sum();
    if 1.0 - ab <= 1e-12 {
        return None;
    }
    Some(((trace - ab) / (1.0 - ab)).clamp(-1.0, 1.0))
}

/// `(degree, node count)` pairs in increasing degree order.
pub fn degree_histogram(g: &Graph) -> Vec<(usize, usize)> {
    let mut hist = std::collections::BTreeMap::new();
    for i in 0..g.node_count() {
        *hist.entry(g.degree(i)).or_insert(0usize) += 1;
    }
    hist.into_iter().collect()
}

pub fn write_degree_histogram<W: std::io::Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "degree,count")?;
    for (d, c) in degree_histogram(g) {
        writeln!(out, "{d},{c}")?;
    }
    Ok(())
}

pub fn degree_powerlaw(g: &Graph) -> Option<PowerLawFit> {
    powerlaw_fit(&g.degrees())
}
