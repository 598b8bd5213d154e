//! Growth algorithm: a seed triad, then one iteration per remaining node in
//! id order. Each iteration draws an edge budget `m` uniformly from
//! `[min_edges, max_edges]` and repeats three steps until `m` edges were
//! added or a full pass adds nothing:
//!
//! 1. similarity linking: connect the new node to an existing node drawn in
//!    proportion to its combined score, among nodes scoring above the
//!    threshold;
//! 2. triad formation: with probability `p_triad_formation`, connect the new
//!    node to a neighbor of the node chosen in step 1, weighted by
//!    `degree^gamma`;
//! 3. triad linkage: with probability `p_triad_linkage`, `linkage_count`
//!    times close a random wedge elsewhere in the network.
//!
//! Every edge created in any step counts toward the budget.
//!
//! Random draws happen in this fixed order, all from one ChaCha8 stream
//! seeded with `seed`: attribute assignment (node-major, schema order), then
//! per iteration the budget, and per pass: one uniform for similarity
//! sampling when the eligible set is non-empty; if step 1 linked and budget
//! remains, the triad-formation coin, then one uniform when its candidate set
//! is non-empty; if budget remains, the triad-linkage coin and, per linkage,
//! node and neighbor picks for each attempt.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::attributes::{assign_profiles, validate_schemas, weighted_distance_sum, AttributeSchema, NodeProfile};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::similarity::{fof_term, pa_term, SimilarityParams};

#[derive(Debug, Clone, PartialEq)]
pub struct GenerationConfig {
    pub nodes: usize,
    pub min_edges: usize,
    pub max_edges: usize,
    pub p_triad_formation: f64,
    pub p_triad_linkage: f64,
    pub linkage_count: usize,
    /// Degree exponent for triad formation; negative favors low-degree
    /// neighbors (assortative), positive favors hubs (disassortative).
    pub gamma: f64,
    pub threshold: f64,
    pub similarity: SimilarityParams,
    pub schemas: Vec<AttributeSchema>,
    pub seed: u64,
}

impl GenerationConfig {
    /// Config with neutral defaults for everything but size and budget.
    pub fn new(nodes: usize, min_edges: usize, max_edges: usize, schemas: Vec<AttributeSchema>) -> Self {
        GenerationConfig {
            nodes,
            min_edges,
            max_edges,
            p_triad_formation: 0.0,
            p_triad_linkage: 0.0,
            linkage_count: 0,
            gamma: 0.0,
            threshold: 0.5,
            similarity: SimilarityParams::default(),
            schemas,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.nodes < 3 {
            return bad(format!("nodes must be at least 3, got {}", self.nodes));
        }
        if self.min_edges < 1 || self.min_edges > self.max_edges {
            return bad(format!(
                "need 1 <= min_edges <= max_edges, got min_edges={} max_edges={}",
                self.min_edges, self.max_edges
            ));
        }
        if self.max_edges >= self.nodes {
            return bad(format!(
                "max_edges ({}) must be smaller than nodes ({})",
                self.max_edges, self.nodes
            ));
        }
        for (name, p) in [
            ("p_triad_formation", self.p_triad_formation),
            ("p_triad_linkage", self.p_triad_linkage),
            ("threshold", self.threshold),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("{name} must lie in [0, 1], got {p}"));
            }
        }
        if !self.gamma.is_finite() {
            return bad("gamma must be finite".into());
        }
        self.similarity.validate()?;
        validate_schemas(&self.schemas)?;
        if self.similarity.alpha > 0.0 && self.schemas.iter().map(|s| s.weight).sum::<f64>() <= 0.0 {
            return bad("alpha > 0 requires at least one attribute with positive weight".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeOrigin {
    Similarity,
    TriadFormation,
    TriadLinkage,
}

impl EdgeOrigin {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeOrigin::Similarity => "similarity",
            EdgeOrigin::TriadFormation => "triad_formation",
            EdgeOrigin::TriadLinkage => "triad_linkage",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "similarity" => Some(EdgeOrigin::Similarity),
            "triad_formation" => Some(EdgeOrigin::TriadFormation),
            "triad_linkage" => Some(EdgeOrigin::TriadLinkage),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeRecord {
    /// Node whose iteration created the edge.
    pub iteration: NodeId,
    pub origin: EdgeOrigin,
    pub source: NodeId,
    pub target: NodeId,
}

/// Which step created each non-seed edge, in creation order, plus the edge
/// budget drawn for each iteration.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GenerationTrace {
    pub edges: Vec<EdgeRecord>,
    /// `budgets[k]` belongs to node `k + 3`.
    pub budgets: Vec<usize>,
}

impl GenerationTrace {
    pub fn write_csv<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "iteration,step,source,target")?;
        for e in &self.edges {
            writeln!(out, "{},{},{},{}", e.iteration, e.origin.as_str(), e.source, e.target)?;
        }
        Ok(())
    }

    pub fn count(&self, origin: EdgeOrigin) -> usize {
        self.edges.iter().filter(|e| e.origin == origin).count()
    }
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub graph: Graph,
    pub profiles: Vec<NodeProfile>,
    pub trace: GenerationTrace,
}

pub fn generate(config: &GenerationConfig) -> Result<Generated> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let profiles = assign_profiles(&config.schemas, config.nodes, &mut rng)?;
    let mut builder = Builder::new(config, &profiles);
    for v in 3..config.nodes {
        builder.iterate(v, &mut rng);
    }
    let (graph, trace) = (builder.graph, builder.trace);
    Ok(Generated { graph, profiles, trace })
}

/// Draws from `candidates` with probability proportional to `scores`,
/// restricted to scores strictly above `threshold`.
pub(crate) fn sample_above_threshold<R: Rng + ?Sized>(
    candidates: &[NodeId],
    scores: &[f64],
    threshold: f64,
    rng: &mut R,
) -> Option<NodeId> {
    let total: f64 = scores.iter().filter(|&&s| s > threshold).sum();
    if total <= 0.0 {
        return None;
    }
    let target = rng.gen::<f64>() * total;
    let mut acc = 0.0;
    let mut last = None;
    for (&c, &s) in candidates.iter().zip(scores) {
        if s > threshold {
            acc += s;
            last = Some(c);
            if target < acc {
                return Some(c);
            }
        }
    }
    last
}

/// Draws from `pool` with probability proportional to `degree^gamma`.
pub(crate) fn sample_by_degree<R: Rng + ?Sized>(g: &Graph, pool: &[NodeId], gamma: f64, rng: &mut R) -> Option<NodeId> {
    if pool.is_empty() {
        return None;
    }
    let weight = |w: NodeId| {
        let d = g.degree(w);
        debug_assert!(d > 0, "triad-formation candidates always have a neighbor");
        (d as f64).powf(gamma)
    };
    let total: f64 = pool.iter().map(|&w| weight(w)).sum();
    let target = rng.gen::<f64>() * total;
    let mut acc = 0.0;
    for &w in pool {
        acc += weight(w);
        if target < acc {
            return Some(w);
        }
    }
    pool.last().copied()
}

/// Candidates for triad formation: neighbors of `anchor` that are neither `n`
/// nor already adjacent to `n`.
fn triad_pool(g: &Graph, n: NodeId, anchor: NodeId, out: &mut Vec<NodeId>) {
    out.clear();
    out.extend(
        g.neighbors(anchor)
            .iter()
            .copied()
            .filter(|&w| w != n && !g.has_edge(n, w)),
    );
}

/// Picks a random node from `eligible` (all of degree >= 2) and two of its
/// neighbors; returns the pair if they are not yet connected. Retries with a
/// fresh node up to `max_attempts` times.
fn find_open_wedge<R: Rng + ?Sized>(
    g: &Graph,
    eligible: &[NodeId],
    max_attempts: usize,
    rng: &mut R,
) -> Option<(NodeId, NodeId)> {
    if eligible.is_empty() {
        return None;
    }
    for _ in 0..max_attempts {
        let center = eligible[rng.gen_range(0..eligible.len())];
        let nbrs = g.neighbors(center);
        let a = rng.gen_range(0..nbrs.len());
        let mut b = rng.gen_range(0..nbrs.len() - 1);
        if b >= a {
            b += 1;
        }
        let (x, y) = (nbrs[a], nbrs[b]);
        if !g.has_edge(x, y) {
            return Some((x, y));
        }
    }
    None
}

/// Similarity linking for node `n`: among `candidates` scoring above
/// `threshold`, pick one in proportion to its score and connect it to `n`.
/// `scores[k]` is the combined score of `(n, candidates[k])`.
pub fn similarity_link_step<R: Rng + ?Sized>(
    g: &mut Graph,
    n: NodeId,
    candidates: &[NodeId],
    scores: &[f64],
    threshold: f64,
    rng: &mut R,
) -> Result<Option<NodeId>> {
    if candidates.len() != scores.len() {
        return Err(Error::InvalidArgument("candidates and scores differ in length".into()));
    }
    match sample_above_threshold(candidates, scores, threshold, rng) {
        Some(v) => {
            g.add_edge(n, v)?;
            Ok(Some(v))
        }
        None => Ok(None),
    }
}

/// Triad formation for node `n` around `anchor`. With probability
/// `probability`, connects `n` to a neighbor `w` of `anchor` not yet adjacent
/// to `n`, drawn with weight `degree(w)^gamma`.
pub fn triad_formation_step<R: Rng + ?Sized>(
    g: &mut Graph,
    n: NodeId,
    anchor: NodeId,
    gamma: f64,
    probability: f64,
    rng: &mut R,
) -> Result<Option<NodeId>> {
    if n >= g.node_count() || anchor >= g.node_count() {
        return Err(Error::UnknownNode {
            id: n.max(anchor),
            node_count: g.node_count(),
        });
    }
    if rng.gen::<f64>() >= probability {
        return Ok(None);
    }
    let mut pool = Vec::new();
    triad_pool(g, n, anchor, &mut pool);
    match sample_by_degree(g, &pool, gamma, rng) {
        Some(w) => {
            g.add_edge(n, w)?;
            Ok(Some(w))
        }
        None => Ok(None),
    }
}

/// Triad linkage: with probability `probability`, closes up to `count` open
/// wedges centered on random nodes of degree >= 2. Each closure gives up
/// after `node_count` failed picks. Returns the number of edges added.
pub fn triad_linkage_step<R: Rng + ?Sized>(g: &mut Graph, count: usize, probability: f64, rng: &mut R) -> usize {
    if rng.gen::<f64>() >= probability {
        return 0;
    }
    let eligible: Vec<NodeId> = (0..g.node_count()).filter(|&i| g.degree(i) >= 2).collect();
    let mut added = 0;
    for _ in 0..count {
        if let Some((x, y)) = find_open_wedge(g, &eligible, g.node_count(), rng) {
            g.add_edge(x, y).expect("wedge endpoints are valid and distinct");
            added += 1;
        }
    }
    added
}

/// Incremental state for one generation run. Per iteration it caches the
/// demographic distance of every existing node to the new node and the number
/// of neighbors each existing node shares with it, so that scoring a pass is a
/// linear scan.
struct Builder<'a> {
    config: &'a GenerationConfig,
    profiles: &'a [NodeProfile],
    graph: Graph,
    trace: GenerationTrace,
    max_degree: usize,
    /// Nodes with degree >= 2; degrees never shrink so this only grows.
    eligible: Vec<NodeId>,
    demographic: Vec<f64>,
    common: Vec<usize>,
    candidates: Vec<NodeId>,
    scores: Vec<f64>,
    pool: Vec<NodeId>,
    weight_total: f64,
}

impl<'a> Builder<'a> {
    fn new(config: &'a GenerationConfig, profiles: &'a [NodeProfile]) -> Self {
        let n = config.nodes;
        let mut graph = Graph::with_nodes(n);
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            graph.add_edge(a, b).expect("seed triad");
        }
        Builder {
            config,
            profiles,
            graph,
            trace: GenerationTrace::default(),
            max_degree: 2,
            eligible: vec![0, 1, 2],
            demographic: vec![0.0; n],
            common: vec![0; n],
            candidates: Vec::with_capacity(n),
            scores: Vec::with_capacity(n),
            pool: Vec::new(),
            weight_total: config.schemas.iter().map(|s| s.weight).sum(),
        }
    }

    fn iterate(&mut self, v: NodeId, rng: &mut ChaCha8Rng) {
        let cfg = self.config;
        let budget = rng.gen_range(cfg.min_edges..=cfg.max_edges);
        self.trace.budgets.push(budget);

        let alpha = cfg.similarity.alpha;
        for u in 0..v {
            self.demographic[u] = if alpha > 0.0 {
                weighted_distance_sum(&self.profiles[v], &self.profiles[u], &cfg.schemas) / self.weight_total
            } else {
                0.0
            };
            self.common[u] = 0;
        }

        let mut added = 0;
        while added < budget {
            let before = added;

            let anchor = self.similarity_pass(v, rng);
            if let Some(u) = anchor {
                self.record(v, EdgeOrigin::Similarity, v, u);
                added += 1;
            }

            if let Some(anchor) = anchor {
                if added < budget && rng.gen::<f64>() < cfg.p_triad_formation {
                    let mut pool = std::mem::take(&mut self.pool);
                    triad_pool(&self.graph, v, anchor, &mut pool);
                    if let Some(w) = sample_by_degree(&self.graph, &pool, cfg.gamma, rng) {
                        self.record(v, EdgeOrigin::TriadFormation, v, w);
                        added += 1;
                    }
                    self.pool = pool;
                }
            }

            if added < budget && rng.gen::<f64>() < cfg.p_triad_linkage {
                for _ in 0..cfg.linkage_count {
                    if added >= budget {
                        break;
                    }
                    let attempts = v + 1;
                    if let Some((x, y)) = find_open_wedge(&self.graph, &self.eligible, attempts, rng) {
                        self.record(v, EdgeOrigin::TriadLinkage, x, y);
                        added += 1;
                    }
                }
            }

            if added == before {
                break;
            }
        }
    }

    /// Scores every existing non-neighbor of `v`, samples one and links it.
    fn similarity_pass(&mut self, v: NodeId, rng: &mut ChaCha8Rng) -> Option<NodeId> {
        let params = &self.config.similarity;
        let deg_v = self.graph.degree(v);
        self.candidates.clear();
        self.scores.clear();
        for u in 0..v {
            if deg_v > 0 && self.graph.has_edge(v, u) {
                continue;
            }
            let structural = if params.beta > 0.0 {
                let deg_u = self.graph.degree(u);
                params.structural_distance(pa_term(deg_u, self.max_degree), fof_term(self.common[u], deg_v, deg_u))
            } else {
                0.0
            };
            self.candidates.push(u);
            self.scores.push(params.score(self.demographic[u], structural));
        }
        let chosen = sample_above_threshold(&self.candidates, &self.scores, self.config.threshold, rng)?;
        Some(chosen)
    }

    /// Adds an edge created during `iteration` and updates the caches.
    fn record(&mut self, iteration: NodeId, origin: EdgeOrigin, a: NodeId, b: NodeId) {
        let created = self.graph.add_edge(a, b).expect("generator only adds valid edges");
        debug_assert!(created);
        self.trace.edges.push(EdgeRecord {
            iteration,
            origin,
            source: a,
            target: b,
        });
        for x in [a, b] {
            let d = self.graph.degree(x);
            self.max_degree = self.max_degree.max(d);
            if d == 2 {
                self.eligible.push(x);
            }
        }
        let v = iteration;
        if a == v || b == v {
            let other = if a == v { b } else { a };
            for &x in self.graph.neighbors(other) {
                if x != v {
                    self.common[x] += 1;
                }
            }
        } else {
            if self.graph.has_edge(v, a) {
                self.common[b] += 1;
            }
            if self.graph.has_edge(v, b) {
                self.common[a] += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attributes::AttributeKind;
    use crate::similarity::combined_score;

    fn schemas() -> Vec<AttributeSchema> {
        vec![
            AttributeSchema::categorical("c", &["A", "B", "C"], &[1.0; 3]).unwrap(),
            AttributeSchema::numeric(
                "x",
                AttributeKind::Numerical,
                &[1.0, 2.0, 3.0, 4.0, 5.0],
                &[1.0; 5],
                None,
            )
            .unwrap(),
        ]
    }

    fn config(n: usize) -> GenerationConfig {
        let mut c = GenerationConfig::new(n, 2, 6, schemas());
        c.p_triad_formation = 0.7;
        c.p_triad_linkage = 0.5;
        c.linkage_count = 2;
        c.seed = 17;
        c
    }

    #[test]
    fn three_nodes_give_a_triangle() {
        let mut c = GenerationConfig::new(3, 1, 2, schemas());
        c.p_triad_formation = 1.0;
        let out = generate(&c).unwrap();
        assert_eq!(out.graph.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
        assert!(out.trace.edges.is_empty());
    }

    #[test]
    fn config_validation() {
        let mut c = config(10);
        c.min_edges = 5;
        c.max_edges = 4;
        assert!(generate(&c).is_err());
        let mut c = config(10);
        c.max_edges = 10;
        assert!(generate(&c).is_err());
        let mut c = config(10);
        c.min_edges = 0;
        assert!(generate(&c).is_err());
        let mut c = config(2);
        c.max_edges = 1;
        c.min_edges = 1;
        assert!(generate(&c).is_err());
        let mut c = config(10);
        c.p_triad_linkage = 1.5;
        assert!(generate(&c).is_err());
        let mut c = config(10);
        c.threshold = -0.1;
        assert!(generate(&c).is_err());
        let mut c = config(10);
        c.schemas.clear();
        assert!(generate(&c).is_err());
    }

    #[test]
    fn deterministic_for_a_seed() {
        let a = generate(&config(200)).unwrap();
        let b = generate(&config(200)).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.trace, b.trace);
        let mut other = config(200);
        other.seed = 18;
        assert_ne!(generate(&other).unwrap().graph, a.graph);
    }

    #[test]
    fn trace_partitions_non_seed_edges_and_respects_budgets() {
        let out = generate(&config(300)).unwrap();
        assert_eq!(out.trace.edges.len() + 3, out.graph.edge_count());
        for e in &out.trace.edges {
            assert!(out.graph.has_edge(e.source, e.target));
        }
        let mut per_iteration = vec![0usize; 300];
        for e in &out.trace.edges {
            per_iteration[e.iteration] += 1;
        }
        for (k, &m) in out.trace.budgets.iter().enumerate() {
            assert!((2..=6).contains(&m));
            assert!(per_iteration[k + 3] <= m);
        }
        // iterations are processed in id order
        assert!(out.trace.edges.windows(2).all(|w| w[0].iteration <= w[1].iteration));
    }

    #[test]
    fn high_threshold_leaves_nodes_isolated() {
        // Every node gets a distinct numeric value, so no pair is demographically identical.
        let values: Vec<f64> = (0..50).map(f64::from).collect();
        let mut proportions = vec![0.0; 50];
        proportions[7] = 1.0;
        let s = vec![AttributeSchema::numeric("x", AttributeKind::Numerical, &values, &vec![1.0; 50], None).unwrap()];
        let mut c = GenerationConfig::new(30, 1, 3, s);
        c.threshold = 1.0;
        c.similarity = SimilarityParams::new(1.0, 0.0).unwrap();
        let out = generate(&c).unwrap();
        assert_eq!(out.graph.edge_count(), 3);
        assert!((3..30).all(|v| out.graph.degree(v) == 0));
    }

    /// Replays the trace and checks that every similarity edge scored above
    /// the threshold when it was created, recomputing the score from scratch
    /// with `combined_score`.
    #[test]
    fn similarity_edges_exceed_threshold_on_replay() {
        let mut c = config(150);
        c.p_triad_formation = 0.0;
        c.p_triad_linkage = 0.0;
        c.similarity = SimilarityParams::new(1.0, 0.0).unwrap();
        let out = generate(&c).unwrap();
        let mut g = Graph::with_nodes(150);
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            g.add_edge(a, b).unwrap();
        }
        for e in &out.trace.edges {
            assert_eq!(e.origin, EdgeOrigin::Similarity);
            assert_eq!(e.source, e.iteration);
            let s = combined_score(&g, e.source, e.target, &out.profiles, &c.schemas, &c.similarity).unwrap();
            assert!(s > c.threshold, "score {s}");
            g.add_edge(e.source, e.target).unwrap();
        }
    }

    /// The cached scores the generator samples from must equal scores
    /// recomputed from the current graph, including structural terms.
    #[test]
    fn cached_scores_match_recomputation() {
        let c = config(120);
        let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
        let profiles = assign_profiles(&c.schemas, c.nodes, &mut rng).unwrap();
        let mut b = Builder::new(&c, &profiles);
        for v in 3..c.nodes {
            b.iterate(v, &mut rng);
            // Score a further pass of iteration `v` without linking anything.
            let mut probe = ChaCha8Rng::seed_from_u64(0);
            b.similarity_pass(v, &mut probe);
            assert_eq!(b.candidates.len(), v - b.graph.degree(v));
            for (&u, &s) in b.candidates.iter().zip(&b.scores) {
                let fresh = combined_score(&b.graph, v, u, &profiles, &c.schemas, &c.similarity).unwrap();
                assert!((fresh - s).abs() < 1e-12, "node {v}->{u}: cached {s} fresh {fresh}");
            }
        }
    }

    #[test]
    fn common_neighbor_cache_tracks_graph() {
        let c = config(150);
        let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
        let profiles = assign_profiles(&c.schemas, c.nodes, &mut rng).unwrap();
        let mut b = Builder::new(&c, &profiles);
        for v in 3..c.nodes {
            b.iterate(v, &mut rng);
            for u in 0..v {
                assert_eq!(b.common[u], b.graph.common_neighbors(v, u).unwrap(), "v={v} u={u}");
            }
            assert_eq!(b.max_degree, b.graph.max_degree().unwrap());
            let mut eligible = b.eligible.clone();
            eligible.sort_unstable();
            let expected: Vec<_> = (0..c.nodes).filter(|&i| b.graph.degree(i) >= 2).collect();
            assert_eq!(eligible, expected);
        }
    }

    #[test]
    fn similarity_step_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut g = Graph::with_nodes(4);
        assert_eq!(
            similarity_link_step(&mut g, 3, &[0, 1], &[0.2, 0.5], 0.5, &mut rng).unwrap(),
            None
        );
        assert_eq!(g.edge_count(), 0);
        assert_eq!(
            similarity_link_step(&mut g, 3, &[0, 1], &[0.2, 0.9], 0.5, &mut rng).unwrap(),
            Some(1)
        );
        assert!(g.has_edge(3, 1));
        assert!(similarity_link_step(&mut g, 3, &[0], &[0.2, 0.9], 0.5, &mut rng).is_err());
    }

    #[test]
    fn triad_formation_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // anchor 1 has neighbors {0, 2}; node 3 is connected to 1 and 2.
        let mut g = Graph::with_nodes(4);
        for (a, b) in [(0, 1), (1, 2), (1, 3), (2, 3)] {
            g.add_edge(a, b).unwrap();
        }
        assert_eq!(triad_formation_step(&mut g, 3, 1, 0.0, 1.0, &mut rng).unwrap(), Some(0));
        // now tau is empty
        assert_eq!(triad_formation_step(&mut g, 3, 1, 0.0, 1.0, &mut rng).unwrap(), None);
        let mut h = Graph::with_nodes(4);
        h.add_edge(0, 1).unwrap();
        h.add_edge(1, 2).unwrap();
        h.add_edge(1, 3).unwrap();
        assert_eq!(triad_formation_step(&mut h, 3, 1, 0.0, 0.0, &mut rng).unwrap(), None);
    }

    #[test]
    fn triad_linkage_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut tri = Graph::with_nodes(3);
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            tri.add_edge(a, b).unwrap();
        }
        assert_eq!(triad_linkage_step(&mut tri, 1, 1.0, &mut rng), 0);
        assert_eq!(tri.edge_count(), 3);

        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut star = Graph::with_nodes(4);
            for leaf in 1..4 {
                star.add_edge(0, leaf).unwrap();
            }
            assert_eq!(triad_linkage_step(&mut star, 1, 1.0, &mut rng), 1);
            assert_eq!(star.edge_count(), 4);
            // exactly one leaf-leaf edge, hence exactly one triangle
            let leaf_edges = star.edges().filter(|&(a, _)| a != 0).count();
            assert_eq!(leaf_edges, 1);
        }

        let mut star = Graph::with_nodes(4);
        for leaf in 1..4 {
            star.add_edge(0, leaf).unwrap();
        }
        assert_eq!(triad_linkage_step(&mut star, 3, 0.0, &mut rng), 0);
    }
}
