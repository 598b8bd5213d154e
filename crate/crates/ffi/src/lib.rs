//! C ABI for socgen.
//!
//! Graphs are opaque `SgGraph` handles created by `sg_generate_*` or
//! `sg_graph_load_edge_list` and released with `sg_graph_free`. Fallible
//! functions return an `SgStatus`; on failure `sg_last_error` describes the
//! most recent error on the calling thread. Strings returned by the library
//! are released with `sg_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use socgen::attributes::{AttributeSchema, NodeProfile};
use socgen::config::parse_config;
use socgen::error::Error;
use socgen::fixtures::preset_by_name;
use socgen::generator::generate;
use socgen::graph::Graph;
use socgen::report::MetricsReport;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidConfig = 3,
    InvalidArgument = 4,
    Io = 5,
    Parse = 6,
    Internal = 7,
}

/// A generated or loaded network, with node attributes when generated.
pub struct SgGraph {
    graph: Graph,
    attributes: Option<(Vec<NodeProfile>, Vec<AttributeSchema>)>,
}

/// Metrics of a graph. A `has_*` flag of false means the value is undefined
/// and the field holds 0.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SgMetrics {
    pub nodes: usize,
    pub edges: usize,
    pub has_density: bool,
    pub density: f64,
    pub has_avg_degree: bool,
    pub avg_degree: f64,
    pub has_clustering_coefficient: bool,
    pub clustering_coefficient: f64,
    pub has_avg_geodesic_distance: bool,
    pub avg_geodesic_distance: f64,
    pub has_degree_assortativity: bool,
    pub degree_assortativity: f64,
    pub has_powerlaw: bool,
    pub powerlaw_alpha: f64,
    pub powerlaw_xmin: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SgStatus {
    match e {
        Error::Io { .. } => SgStatus::Io,
        Error::Parse { .. } | Error::Toml { .. } | Error::Dataset(_) => SgStatus::Parse,
        Error::InvalidConfig(_) | Error::InvalidSchema { .. } => SgStatus::InvalidConfig,
        _ => SgStatus::InvalidArgument,
    }
}

fn fail(status: SgStatus, message: &str) -> SgStatus {
    set_last_error(message);
    status
}

/// Runs `f`, turning errors and panics into a status and last-error message.
fn guard(f: impl FnOnce() -> Result<(), SgStatus>) -> SgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SgStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(SgStatus::Internal, "internal panic"),
    }
}

fn check(e: Error) -> SgStatus {
    fail(status_of(&e), &e.to_string())
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, SgStatus> {
    if s.is_null() {
        return Err(fail(SgStatus::NullPointer, &format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(SgStatus::InvalidUtf8, &format!("{what} is not valid UTF-8")))
}

fn null_out(what: &str) -> SgStatus {
    fail(SgStatus::NullPointer, &format!("{what} is null"))
}

fn store(out: *mut *mut SgGraph, graph: SgGraph) {
    // SAFETY: callers check `out` for null first.
    unsafe { *out = Box::into_raw(Box::new(graph)) };
}

fn generated(config: &socgen::GenerationConfig) -> Result<SgGraph, SgStatus> {
    let g = generate(config).map_err(check)?;
    Ok(SgGraph {
        graph: g.graph,
        attributes: Some((g.profiles, config.schemas.clone())),
    })
}

/// Message for the most recent failure on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Generates a network from a TOML config with an inline `[[attribute]]`
/// schema (a `schema` path resolves against the working directory).
///
/// # Safety
/// `config_toml` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_generate_toml(config_toml: *const c_char, out: *mut *mut SgGraph) -> SgStatus {
    guard(|| {
        let text = read_str(config_toml, "config_toml")?;
        if out.is_null() {
            return Err(null_out("out"));
        }
        let config = parse_config(text, Path::new("<config>"), Path::new(".")).map_err(check)?;
        store(out, generated(&config)?);
        Ok(())
    })
}

/// Generates one of the built-in reference networks, e.g. `"caltech"`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_generate_preset(name: *const c_char, seed: u64, out: *mut *mut SgGraph) -> SgStatus {
    guard(|| {
        let name = read_str(name, "name")?;
        if out.is_null() {
            return Err(null_out("out"));
        }
        let preset =
            preset_by_name(name).ok_or_else(|| fail(SgStatus::InvalidArgument, &format!("unknown preset `{name}`")))?;
        store(out, generated(&preset.config(seed))?);
        Ok(())
    })
}

/// Loads an edge list. `node_count` of 0 infers the count from the largest id.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_load_edge_list(
    path: *const c_char,
    node_count: usize,
    out: *mut *mut SgGraph,
) -> SgStatus {
    guard(|| {
        let path = read_str(path, "path")?;
        if out.is_null() {
            return Err(null_out("out"));
        }
        let n = (node_count > 0).then_some(node_count);
        let graph = Graph::load_edge_list(path, n).map_err(check)?;
        store(
            out,
            SgGraph {
                graph,
                attributes: None,
            },
        );
        Ok(())
    })
}

/// Writes the edge list (`i<TAB>j`, i < j, sorted).
///
/// # Safety
/// `graph` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_write_edge_list(graph: *const SgGraph, path: *const c_char) -> SgStatus {
    guard(|| {
        let g = graph.as_ref().ok_or_else(|| null_out("graph"))?;
        let path = read_str(path, "path")?;
        g.graph.save_edge_list(path).map_err(check)
    })
}

/// Node count; 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_node_count(graph: *const SgGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.graph.node_count())
}

/// Edge count; 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_edge_count(graph: *const SgGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.graph.edge_count())
}

/// Degree of `node`.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_degree(graph: *const SgGraph, node: usize, out: *mut usize) -> SgStatus {
    guard(|| {
        let g = graph.as_ref().ok_or_else(|| null_out("graph"))?;
        let out = out.as_mut().ok_or_else(|| null_out("out"))?;
        if node >= g.graph.node_count() {
            return Err(fail(
                SgStatus::InvalidArgument,
                &format!("node {node} out of range (graph has {} nodes)", g.graph.node_count()),
            ));
        }
        *out = g.graph.degree(node);
        Ok(())
    })
}

fn report_of(g: &SgGraph) -> Result<MetricsReport, SgStatus> {
    let attributes = g.attributes.as_ref().map(|(p, s)| (p.as_slice(), s.as_slice()));
    MetricsReport::compute(&g.graph, attributes).map_err(check)
}

/// Computes the structural metrics.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_metrics(graph: *const SgGraph, out: *mut SgMetrics) -> SgStatus {
    guard(|| {
        let g = graph.as_ref().ok_or_else(|| null_out("graph"))?;
        let out = out.as_mut().ok_or_else(|| null_out("out"))?;
        let r = report_of(g)?;
        let split = |v: Option<f64>| (v.is_some(), v.unwrap_or(0.0));
        let mut m = SgMetrics {
            nodes: r.nodes,
            edges: r.edges,
            ..SgMetrics::default()
        };
        (m.has_density, m.density) = split(r.density);
        (m.has_avg_degree, m.avg_degree) = split(r.avg_degree);
        (m.has_clustering_coefficient, m.clustering_coefficient) = split(r.clustering_coefficient);
        (m.has_avg_geodesic_distance, m.avg_geodesic_distance) = split(r.avg_geodesic_distance);
        (m.has_degree_assortativity, m.degree_assortativity) = split(r.degree_assortativity);
        (m.has_powerlaw, m.powerlaw_alpha) = split(r.powerlaw_alpha);
        m.powerlaw_xmin = r.powerlaw_xmin.unwrap_or(0);
        *out = m;
        Ok(())
    })
}

/// Full key/value report, including homophily for generated graphs. Release
/// the string with `sg_string_free`.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_report(graph: *const SgGraph, out: *mut *mut c_char) -> SgStatus {
    guard(|| {
        let g = graph.as_ref().ok_or_else(|| null_out("graph"))?;
        if out.is_null() {
            return Err(null_out("out"));
        }
        let text = report_of(g)?.to_kv();
        let c = CString::new(text).map_err(|_| fail(SgStatus::Internal, "report contains NUL"))?;
        *out = c.into_raw();
        Ok(())
    })
}

/// Releases a graph handle. Null is ignored.
///
/// # Safety
/// `graph` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sg_graph_free(graph: *mut SgGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
