//! Acceptance suite: one check per criterion, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the summary always prints. Pass
//! criterion numbers to run a subset: `cargo test --test acceptance -- 3 5`.
#![allow(clippy::needless_range_loop)]

use std::collections::HashMap;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Zeta};
use rayon::prelude::*;

use socgen::attributes::{AttributeKind, AttributeSchema, NodeProfile};
use socgen::experiments::{run_sweep, stability, Metric, Parameter, SweepSpec};
use socgen::fixtures::{assortativity_fixture, clustering_fixture, homophily_fixture, TABLE_ONE};
use socgen::generator::{generate, similarity_link_step, triad_formation_step};
use socgen::graph::Graph;
use socgen::metrics;
use socgen::powerlaw::powerlaw_fit;

const REPLICATES: usize = 10;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn fmt_means(values: &[f64]) -> String {
    let parts: Vec<String> = values.iter().map(|v| format!("{v:.4}")).collect();
    format!("[{}]", parts.join(", "))
}

fn non_decreasing(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[1] >= w[0])
}

fn non_increasing(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[1] <= w[0])
}

fn sweep_means(spec: &SweepSpec, metric: usize) -> Vec<f64> {
    let result = run_sweep(spec).expect("sweep runs");
    result
        .cells
        .iter()
        .map(|c| c.mean(metric).expect("metric defined in every cell"))
        .collect()
}

// 1 -------------------------------------------------------------------------

fn scale_free_band() -> Outcome {
    let jobs: Vec<(usize, u64)> = (0..TABLE_ONE.len())
        .flat_map(|p| (0..REPLICATES as u64).map(move |s| (p, s)))
        .collect();
    let alphas: Vec<Option<f64>> = jobs
        .par_iter()
        .map(|&(p, seed)| {
            let out = generate(&TABLE_ONE[p].config(1000 + seed)).expect("generation succeeds");
            metrics::degree_powerlaw(&out.graph).map(|f| f.alpha)
        })
        .collect();
    let mut passed = true;
    let mut worst = usize::MAX;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (p, preset) in TABLE_ONE.iter().enumerate() {
        let runs = &alphas[p * REPLICATES..(p + 1) * REPLICATES];
        let inside = runs
            .iter()
            .filter(|a| a.is_some_and(|a| (1.8..=3.2).contains(&a)))
            .count();
        for a in runs.iter().flatten() {
            lo = lo.min(*a);
            hi = hi.max(*a);
        }
        if inside < 9 {
            passed = false;
            eprintln!("  {}: only {inside}/10 runs in band", preset.name);
        }
        worst = worst.min(inside);
    }
    outcome(
        passed,
        format!("fewest in-band runs per config {worst}/10 (need 9); fitted alpha range [{lo:.3}, {hi:.3}]"),
    )
}

// 2 -------------------------------------------------------------------------

fn run_stability() -> Outcome {
    let rows = stability(&TABLE_ONE[0].config(2024), REPLICATES).expect("stability runs");
    let sd = |m: Metric| {
        rows.iter()
            .find(|r| r.metric == m)
            .and_then(|r| r.std_dev)
            .expect("std defined")
    };
    let (cc, geo, assort) = (sd(Metric::Clustering), sd(Metric::Geodesic), sd(Metric::Assortativity));
    outcome(
        cc <= 0.02 && geo <= 0.05 && assort <= 0.05,
        format!("caltech sd: cc {cc:.4} (<= 0.02), geodesic {geo:.4} (<= 0.05), assortativity {assort:.4} (<= 0.05)"),
    )
}

// 3 -------------------------------------------------------------------------

fn clustering_control() -> Outcome {
    let formation = SweepSpec::new(clustering_fixture(31), REPLICATES, vec![Metric::Clustering])
        .vary(Parameter::TriadFormation, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    let f = sweep_means(&formation, 0);
    let mut base = clustering_fixture(32);
    base.p_triad_linkage = 1.0;
    let linkage = SweepSpec::new(base, REPLICATES, vec![Metric::Clustering])
        .vary(Parameter::LinkageCount, vec![0.0, 1.0, 2.0, 3.0]);
    let l = sweep_means(&linkage, 0);
    let f_gain = f[4] - f[0];
    let l_gain = l[1] - l[0];
    outcome(
        non_decreasing(&f) && non_decreasing(&l) && f_gain >= 0.05 && l_gain >= 0.05,
        format!(
            "P(T_f) 0..1 mean cc {} (gain {f_gain:.4}); L 0..3 mean cc {} (gain L=0->1 {l_gain:.4}); need monotone, gains >= 0.05",
            fmt_means(&f),
            fmt_means(&l)
        ),
    )
}

// 4 -------------------------------------------------------------------------

fn assortativity_control() -> Outcome {
    let spec = SweepSpec::new(assortativity_fixture(41), REPLICATES, vec![Metric::Assortativity])
        .vary(Parameter::Gamma, vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
    let r = sweep_means(&spec, 0);
    outcome(
        r[0] > 0.0 && r[4] < 0.0 && non_increasing(&r),
        format!(
            "gamma -2..2 mean r {}; need r(-2) > 0, r(2) < 0, non-increasing",
            fmt_means(&r)
        ),
    )
}

// 5 -------------------------------------------------------------------------

fn homophily_control() -> Outcome {
    let attrs = ["value", "group"];
    let metrics_list: Vec<Metric> = attrs.iter().map(|a| Metric::Homophily(a.to_string())).collect();
    let alpha = SweepSpec::new(homophily_fixture(51), REPLICATES, metrics_list.clone())
        .vary(Parameter::Alpha, vec![0.0, 0.5, 1.0, 2.0]);
    let alpha_result = run_sweep(&alpha).expect("sweep runs");
    let mut passed = true;
    let mut detail = Vec::new();
    for (k, attr) in attrs.iter().enumerate() {
        let means: Vec<f64> = alpha_result.cells.iter().map(|c| c.mean(k).unwrap()).collect();
        passed &= non_decreasing(&means);
        detail.push(format!("{attr} over alpha 0,0.5,1,2 {}", fmt_means(&means)));
    }
    let mut structural = homophily_fixture(52);
    structural.similarity.alpha = 0.1;
    structural.similarity.beta = 10.0;
    let mut demographic = homophily_fixture(52);
    demographic.similarity.alpha = 10.0;
    demographic.similarity.beta = 0.1;
    let low = run_sweep(&SweepSpec::new(structural, REPLICATES, metrics_list.clone())).unwrap();
    let high = run_sweep(&SweepSpec::new(demographic, REPLICATES, metrics_list)).unwrap();
    for (k, attr) in attrs.iter().enumerate() {
        let (l, h) = (low.cells[0].mean(k).unwrap(), high.cells[0].mean(k).unwrap());
        passed &= l < h;
        detail.push(format!("{attr} beta>>alpha {l:.4} < alpha>>beta {h:.4}"));
    }
    outcome(passed, detail.join("; "))
}

// 6 -------------------------------------------------------------------------

fn oracle_density(n: usize, adj: &[Vec<bool>]) -> Option<f64> {
    if n < 2 {
        return None;
    }
    let mut m = 0;
    for i in 0..n {
        for j in i + 1..n {
            m += adj[i][j] as usize;
        }
    }
    Some(2.0 * m as f64 / (n * (n - 1)) as f64)
}

fn oracle_transitivity(n: usize, adj: &[Vec<bool>]) -> Option<f64> {
    let (mut closed, mut triples) = (0usize, 0usize);
    for center in 0..n {
        for a in 0..n {
            for b in a + 1..n {
                if a != center && b != center && adj[center][a] && adj[center][b] {
                    triples += 1;
                    closed += adj[a][b] as usize;
                }
            }
        }
    }
    (triples > 0).then(|| closed as f64 / triples as f64)
}

fn oracle_geodesic(n: usize, adj: &[Vec<bool>]) -> Option<f64> {
    const INF: usize = usize::MAX / 4;
    let mut d = vec![vec![INF; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for j in 0..n {
            if adj[i][j] {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    // Largest component; ties go to the one holding the smallest node.
    let mut best: Vec<usize> = Vec::new();
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let comp: Vec<usize> = (0..n).filter(|&t| d[s][t] < INF).collect();
        for &t in &comp {
            seen[t] = true;
        }
        if comp.len() > best.len() {
            best = comp;
        }
    }
    if best.len() < 2 {
        return None;
    }
    let mut total = 0usize;
    for &i in &best {
        for &j in &best {
            if i != j {
                total += d[i][j];
            }
        }
    }
    Some(total as f64 / (best.len() * (best.len() - 1)) as f64)
}

fn oriented_pairs(n: usize, adj: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if adj[i][j] {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let k = xs.len() as f64;
    if xs.is_empty() {
        return None;
    }
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let cov: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let vx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let vy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    (vx > 1e-12 && vy > 1e-12).then(|| cov / (vx * vy).sqrt())
}

fn oracle_assortativity(n: usize, adj: &[Vec<bool>]) -> Option<f64> {
    let deg: Vec<f64> = (0..n).map(|i| adj[i].iter().filter(|&&e| e).count() as f64).collect();
    let pairs = oriented_pairs(n, adj);
    let xs: Vec<f64> = pairs.iter().map(|&(i, _)| deg[i]).collect();
    let ys: Vec<f64> = pairs.iter().map(|&(_, j)| deg[j]).collect();
    pearson(&xs, &ys)
}

fn oracle_numerical(n: usize, adj: &[Vec<bool>], values: &[f64]) -> Option<f64> {
    let pairs = oriented_pairs(n, adj);
    let xs: Vec<f64> = pairs.iter().map(|&(i, _)| values[i]).collect();
    let ys: Vec<f64> = pairs.iter().map(|&(_, j)| values[j]).collect();
    pearson(&xs, &ys)
}

fn oracle_categorical(n: usize, adj: &[Vec<bool>], cats: &[usize], k: usize) -> Option<f64> {
    let pairs = oriented_pairs(n, adj);
    if pairs.is_empty() {
        return None;
    }
    let mut e = vec![vec![0.0; k]; k];
    for &(i, j) in &pairs {
        e[cats[i]][cats[j]] += 1.0 / pairs.len() as f64;
    }
    let trace: f64 = (0..k).map(|c| e[c][c]).sum();
    let ab: f64 = (0..k)
        .map(|c| {
            let a: f64 = e[c].iter().sum();
            let b: f64 = (0..k).map(|r| e[r][c]).sum();
            a * b
        })
        .sum();
    (1.0 - ab > 1e-12).then(|| (trace - ab) / (1.0 - ab))
}

fn agree(name: &str, got: Option<f64>, want: Option<f64>, failures: &mut HashMap<String, usize>) {
    let ok = match (got, want) {
        (Some(a), Some(b)) => (a - b).abs() <= 1e-9,
        (None, None) => true,
        _ => false,
    };
    if !ok {
        *failures.entry(name.to_string()).or_default() += 1;
        if failures[name] == 1 {
            eprintln!("  {name}: got {got:?}, oracle {want:?}");
        }
    }
}

fn metric_oracles() -> Outcome {
    let numeric = AttributeSchema::numeric(
        "x",
        AttributeKind::Numerical,
        &[1.0, 2.0, 3.0, 4.0, 5.0],
        &[1.0; 5],
        None,
    )
    .unwrap();
    let categorical = AttributeSchema::categorical("c", &["A", "B", "C"], &[1.0; 3]).unwrap();
    let schemas = [numeric, categorical];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures: HashMap<String, usize> = HashMap::new();
    let trials = 200;
    for _ in 0..trials {
        let n = rng.gen_range(2..=30);
        let p: f64 = rng.gen_range(0.02..0.6);
        let mut g = Graph::with_nodes(n);
        let mut adj = vec![vec![false; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen::<f64>() < p {
                    g.add_edge(i, j).unwrap();
                    adj[i][j] = true;
                    adj[j][i] = true;
                }
            }
        }
        let profiles: Vec<NodeProfile> = (0..n)
            .map(|_| NodeProfile::new(vec![rng.gen_range(0..5), rng.gen_range(0..3)]))
            .collect();
        let values: Vec<f64> = profiles.iter().map(|p| schemas[0].levels[p.values[0]].value).collect();
        let cats: Vec<usize> = profiles.iter().map(|p| p.values[1]).collect();

        agree(
            "density",
            metrics::density(&g).ok(),
            oracle_density(n, &adj),
            &mut failures,
        );
        agree(
            "transitivity",
            metrics::clustering_coefficient(&g),
            oracle_transitivity(n, &adj),
            &mut failures,
        );
        agree(
            "geodesic",
            metrics::avg_geodesic_distance(&g),
            oracle_geodesic(n, &adj),
            &mut failures,
        );
        agree(
            "assortativity",
            metrics::degree_assortativity(&g),
            oracle_assortativity(n, &adj),
            &mut failures,
        );
        agree(
            "homophily.numerical",
            metrics::attribute_homophily(&g, &profiles, &schemas[0], 0).unwrap(),
            oracle_numerical(n, &adj, &values),
            &mut failures,
        );
        agree(
            "homophily.categorical",
            metrics::attribute_homophily(&g, &profiles, &schemas[1], 1).unwrap(),
            oracle_categorical(n, &adj, &cats, 3),
            &mut failures,
        );
    }
    let total: usize = failures.values().sum();
    outcome(
        total == 0,
        format!("{trials} random graphs (n <= 30), 6 metrics each, {total} disagreements beyond 1e-9"),
    )
}

// 7 -------------------------------------------------------------------------

fn powerlaw_consistency() -> Outcome {
    let mut passed = true;
    let mut detail = Vec::new();
    for (k, &alpha) in [2.0, 2.5, 3.0].iter().enumerate() {
        let dist = Zeta::new(alpha).unwrap();
        let mut worst: f64 = 0.0;
        let mut xmin_hits = 0;
        for trial in 0..10u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(700 + 10 * k as u64 + trial);
            let sample: Vec<usize> = (0..100_000).map(|_| dist.sample(&mut rng) as usize).collect();
            let fit = powerlaw_fit(&sample).expect("fit defined");
            worst = worst.max((fit.alpha - alpha).abs());
            xmin_hits += (fit.xmin == 1) as usize;
        }
        passed &= worst <= 0.1 && xmin_hits >= 8;
        detail.push(format!("alpha {alpha}: max |err| {worst:.4}, xmin=1 in {xmin_hits}/10"));
    }
    outcome(passed, detail.join("; "))
}

// 8 -------------------------------------------------------------------------

fn frequencies(counts: &HashMap<usize, usize>, trials: usize, node: usize) -> f64 {
    counts.get(&node).copied().unwrap_or(0) as f64 / trials as f64
}

fn sampling_frequencies() -> Outcome {
    const TRIALS: usize = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut detail = Vec::new();
    let mut passed = true;

    // Similarity step: new node 4, candidates 0..3 scoring 0.9, 0.6, 0.4, 0.2, th 0.5.
    let mut base = Graph::with_nodes(5);
    for (a, b) in [(0, 1), (1, 2), (2, 3)] {
        base.add_edge(a, b).unwrap();
    }
    let mut counts = HashMap::new();
    for _ in 0..TRIALS {
        let mut g = base.clone();
        let chosen = similarity_link_step(&mut g, 4, &[0, 1, 2, 3], &[0.9, 0.6, 0.4, 0.2], 0.5, &mut rng)
            .unwrap()
            .expect("eligible set is non-empty");
        *counts.entry(chosen).or_insert(0) += 1;
    }
    let (p0, p1) = (frequencies(&counts, TRIALS, 0), frequencies(&counts, TRIALS, 1));
    passed &= (p0 - 0.6).abs() <= 0.02 && (p1 - 0.4).abs() <= 0.02 && counts.len() == 2;
    detail.push(format!("similarity 0.9/0.6: {p0:.4}/{p1:.4} (0.6/0.4)"));

    // Triad formation, 5 nodes: new node 4 linked to anchor 0; tau = {1, 2} with
    // degrees 2 and 3, gamma 1.
    let mut five = Graph::with_nodes(5);
    for (a, b) in [(0, 4), (0, 1), (0, 2), (1, 2), (2, 3)] {
        five.add_edge(a, b).unwrap();
    }
    // Triad formation, degrees 2 and 4 need a sixth node: new node 5 linked to anchor 0;
    // tau = {1, 2}, node 2 also adjacent to 3 and 4.
    let mut six = Graph::with_nodes(6);
    for (a, b) in [(0, 5), (0, 1), (0, 2), (1, 2), (2, 3), (2, 4)] {
        six.add_edge(a, b).unwrap();
    }
    for (g0, n, expected) in [(&five, 4, [0.4, 0.6]), (&six, 5, [1.0 / 3.0, 2.0 / 3.0])] {
        let mut counts = HashMap::new();
        for _ in 0..TRIALS {
            let mut g = g0.clone();
            let chosen = triad_formation_step(&mut g, n, 0, 1.0, 1.0, &mut rng)
                .unwrap()
                .expect("tau is non-empty");
            *counts.entry(chosen).or_insert(0) += 1;
        }
        let (p1, p2) = (frequencies(&counts, TRIALS, 1), frequencies(&counts, TRIALS, 2));
        passed &= (p1 - expected[0]).abs() <= 0.02 && (p2 - expected[1]).abs() <= 0.02 && counts.len() == 2;
        detail.push(format!(
            "triad {} nodes, deg {}/{}: {p1:.4}/{p2:.4} ({:.4}/{:.4})",
            g0.node_count(),
            g0.degree(1),
            g0.degree(2),
            expected[0],
            expected[1]
        ));
    }
    outcome(passed, detail.join("; "))
}

// 9 -------------------------------------------------------------------------

fn socgen(args: &[&str]) {
    let status = Command::new(env!("CARGO_BIN_EXE_socgen"))
        .args(args)
        .stderr(std::process::Stdio::null())
        .status()
        .expect("run socgen");
    assert!(status.success(), "socgen {args:?} failed");
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let path = |name: &str| d.join(name).to_str().unwrap().to_string();
    for run in ["a", "b"] {
        socgen(&["generate", "--preset", "caltech", "--seed", "9", "--out", &path(run)]);
    }
    let edges_same = fs::read(d.join("a.edges")).unwrap() == fs::read(d.join("b.edges")).unwrap();

    let config = d.join("base.toml");
    fs::write(&config, socgen::config::config_to_toml(&assortativity_fixture(3))).unwrap();
    fs::write(
        d.join("sweep.toml"),
        "config = \"base.toml\"\nreplicates = 3\nmetrics = [\"degree_assortativity\", \"homophily.group\"]\n\n\
         [[vary]]\nparameter = \"gamma\"\nvalues = [-2, 0, 2]\n",
    )
    .unwrap();
    for run in ["a", "b"] {
        socgen(&[
            "sweep",
            "--config",
            &path("sweep.toml"),
            "--out",
            &path(&format!("{run}.csv")),
        ]);
    }
    let sweep_a = fs::read(d.join("a.csv")).unwrap();
    let sweep_same = sweep_a == fs::read(d.join("b.csv")).unwrap();
    let rows = String::from_utf8_lossy(&sweep_a).lines().count();
    outcome(
        edges_same && sweep_same && rows == 1 + 9 + 3,
        format!("edge lists identical: {edges_same}; sweep CSV identical: {sweep_same} ({rows} lines)"),
    )
}

// ---------------------------------------------------------------------------

type Check = fn() -> Outcome;

fn main() -> ExitCode {
    let criteria: [(u32, &str, Check); 9] = [
        (1, "scale-free band", scale_free_band),
        (2, "run stability", run_stability),
        (3, "clustering control", clustering_control),
        (4, "assortativity control", assortativity_control),
        (5, "homophily control", homophily_control),
        (6, "metric oracle equivalence", metric_oracles),
        (7, "power-law MLE consistency", powerlaw_consistency),
        (8, "similarity-sampling correctness", sampling_frequencies),
        (9, "determinism", determinism),
    ];
    let args: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let selected: Vec<u32> = args.iter().filter_map(|a| a.parse().ok()).collect();
    if !args.is_empty() && selected.is_empty() && !args.iter().any(|a| "acceptance".contains(a.as_str())) {
        println!("acceptance: filter {args:?} selects no criteria");
        return ExitCode::SUCCESS;
    }
    let mut failed = 0;
    let mut ran = 0;
    for (id, name, check) in criteria {
        if !selected.is_empty() && !selected.contains(&id) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        let verdict = if result.passed { "PASS" } else { "FAIL" };
        println!(
            "[{verdict}] {id}. {name} ({:.1}s): {}",
            start.elapsed().as_secs_f64(),
            result.detail
        );
        failed += !result.passed as usize;
    }
    println!("acceptance: {} of {ran} criteria passed", ran - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
