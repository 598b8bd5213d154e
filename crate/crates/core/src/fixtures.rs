//! Reference configurations used by the experiment harness and the
//! acceptance suite.

use crate::attributes::{AttributeKind, AttributeSchema};
use crate::generator::GenerationConfig;

/// One row of the reference parameter table for the ten college networks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkPreset {
    pub name: &'static str,
    pub nodes: usize,
    pub min_edges: usize,
    pub max_edges: usize,
    pub p_triad_formation: f64,
    pub p_triad_linkage: f64,
    pub linkage_count: usize,
}

pub const TABLE_ONE: [NetworkPreset; 10] = [
    preset("caltech", 769, 2, 43, 1.0, 1.0, 1),
    preset("reed", 962, 2, 43, 0.5, 0.5, 1),
    preset("haverford", 1446, 10, 80, 0.6, 0.7, 1),
    preset("simmons", 1518, 2, 43, 0.9, 0.7, 2),
    preset("swarthmore", 1659, 2, 72, 0.9, 0.6, 2),
    preset("hamilton", 2314, 2, 82, 0.9, 1.0, 1),
    preset("oberlin", 2920, 2, 61, 0.5, 0.7, 1),
    preset("middlebury", 3075, 2, 81, 0.9, 0.9, 1),
    preset("wesleyan", 3593, 2, 77, 0.9, 0.6, 2),
    preset("american", 6386, 2, 68, 0.9, 0.7, 2),
];

const fn preset(
    name: &'static str,
    nodes: usize,
    min_edges: usize,
    max_edges: usize,
    p_triad_formation: f64,
    p_triad_linkage: f64,
    linkage_count: usize,
) -> NetworkPreset {
    NetworkPreset {
        name,
        nodes,
        min_edges,
        max_edges,
        p_triad_formation,
        p_triad_linkage,
        linkage_count,
    }
}

pub fn preset_by_name(name: &str) -> Option<&'static NetworkPreset> {
    TABLE_ONE.iter().find(|p| p.name.eq_ignore_ascii_case(name))
}

impl NetworkPreset {
    /// Generation config with `gamma = 0`, `threshold = 0.5`, `alpha = beta = 1`
    /// and the college schema.
    pub fn config(&self, seed: u64) -> GenerationConfig {
        let mut c = GenerationConfig::new(self.nodes, self.min_edges, self.max_edges, college_schemas());
        c.p_triad_formation = self.p_triad_formation;
        c.p_triad_linkage = self.p_triad_linkage;
        c.linkage_count = self.linkage_count;
        c.seed = seed;
        c
    }
}

/// Synthetic stand-in for the four college-network attributes: gender, class
/// year, major and residence, with a share of unknown values.
pub fn college_schemas() -> Vec<AttributeSchema> {
    let gender = AttributeSchema::categorical("gender", &["unknown", "female", "male"], &[0.06, 0.47, 0.47])
        .expect("valid schema");
    let years = [2004.0, 2005.0, 2006.0, 2007.0, 2008.0, 2009.0];
    let year = AttributeSchema::numeric(
        "year",
        AttributeKind::Numerical,
        &years,
        &[0.12, 0.16, 0.18, 0.18, 0.18, 0.18],
        None,
    )
    .expect("valid schema");
    let majors: Vec<String> = std::iter::once("unknown".to_string())
        .chain((1..=12).map(|k| format!("m{k}")))
        .collect();
    let mut major_props = vec![0.16];
    major_props.extend((1..=12).map(|k| 1.0 / k as f64));
    let major = AttributeSchema::categorical("major", &majors, &major_props).expect("valid schema");
    let dorms: Vec<String> = std::iter::once("unknown".to_string())
        .chain((1..=8).map(|k| format!("h{k}")))
        .collect();
    let mut dorm_props = vec![0.2];
    dorm_props.extend([0.14, 0.12, 0.1, 0.1, 0.09, 0.09, 0.08, 0.08]);
    let dorm = AttributeSchema::categorical("dorm", &dorms, &dorm_props).expect("valid schema");
    vec![gender, year, major, dorm]
}

/// Homophily fixture: five equiproportioned numerical values 1 to 5 and three
/// equiproportioned categories A, B, C.
pub fn homophily_schemas() -> Vec<AttributeSchema> {
    vec![
        AttributeSchema::numeric(
            "value",
            AttributeKind::Numerical,
            &[1.0, 2.0, 3.0, 4.0, 5.0],
            &[1.0; 5],
            None,
        )
        .expect("valid schema"),
        AttributeSchema::categorical("group", &["A", "B", "C"], &[1.0; 3]).expect("valid schema"),
    ]
}

/// Base for the clustering sweeps: n = 1000 on [`homophily_schemas`],
/// budget 2 to 10, `alpha = 1`, `beta = 0.25`, `threshold = 0.5`, no triad
/// steps. Sweep `p_triad_formation`, or set `p_triad_linkage = 1` and sweep
/// `linkage_count`.
pub fn clustering_fixture(seed: u64) -> GenerationConfig {
    let mut c = GenerationConfig::new(1000, 2, 10, homophily_schemas());
    c.similarity.beta = 0.25;
    c.seed = seed;
    c
}

/// Base for the degree-assortativity sweep over `gamma`: n = 1000 on
/// [`homophily_schemas`], budget 2 to 10, `alpha = beta = 1`,
/// `threshold = 0.5`, `p_triad_formation = 1`, no triad linkage.
pub fn assortativity_fixture(seed: u64) -> GenerationConfig {
    let mut c = GenerationConfig::new(1000, 2, 10, homophily_schemas());
    c.p_triad_formation = 1.0;
    c.seed = seed;
    c
}

/// Base for the homophily sweep over `alpha`: n = 1000 on
/// [`homophily_schemas`], budget 2 to 10, `beta = 1`, `threshold = 0`,
/// `p_triad_formation = 0.5`, no triad linkage.
pub fn homophily_fixture(seed: u64) -> GenerationConfig {
    let mut c = GenerationConfig::new(1000, 2, 10, homophily_schemas());
    c.threshold = 0.0;
    c.p_triad_formation = 0.5;
    c.seed = seed;
    c
}
