//! Loading real networks with node attributes (Facebook100-style) into a
//! graph plus profiles, and deriving attribute proportions from them.
//!
//! Inputs are an edge list (any whitespace or comma between the two ids, `#`
//! comments allowed) and an attribute CSV `id,attr1,attr2,...` with a header.
//! Node ids are renumbered densely in attribute-file row order. Empty, `0` and
//! `unknown` cells are missing values: categorical attributes get an explicit
//! `unknown` level, numerical attributes take the column's most frequent
//! known value.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::Path;

use crate::attributes::{format_number, AttributeKind, AttributeSchema, Level, NodeProfile};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const UNKNOWN: &str = "unknown";

/// Attribute names treated as numerical unless overridden.
pub const DEFAULT_NUMERICAL: &[&str] = &["year", "class_year", "age"];

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetBundle {
    pub name: String,
    pub graph: Graph,
    pub profiles: Vec<NodeProfile>,
    /// Derived schemas; proportions hold raw level counts.
    pub schemas: Vec<AttributeSchema>,
}

#[derive(Debug, Clone)]
pub struct IngestOptions {
    pub numerical: Vec<String>,
}

impl Default for IngestOptions {
    fn default() -> Self {
        IngestOptions {
            numerical: DEFAULT_NUMERICAL.iter().map(|s| s.to_string()).collect(),
        }
    }
}

fn is_missing(cell: &str) -> bool {
    cell.is_empty() || cell == "0" || cell.eq_ignore_ascii_case(UNKNOWN) || cell.eq_ignore_ascii_case("na")
}

struct AttributeTable {
    names: Vec<String>,
    ids: Vec<i64>,
    rows: Vec<Vec<String>>,
}

fn parse_attribute_csv(text: &str, origin: &Path) -> Result<AttributeTable> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::parse(origin, 1, "missing header row"))?;
    let cols: Vec<String> = header.split(',').map(|c| c.trim().to_string()).collect();
    if cols.len() < 2 || !cols[0].eq_ignore_ascii_case("id") {
        return Err(Error::parse(
            origin,
            1,
            "header must be `id,attr1,...` with at least one attribute",
        ));
    }
    let names = cols[1..].to_vec();
    let mut ids = Vec::new();
    let mut rows = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        if cells.len() != cols.len() {
            return Err(Error::parse(
                origin,
                lineno,
                format!("expected {} fields, found {}", cols.len(), cells.len()),
            ));
        }
        let id = cells[0]
            .parse::<i64>()
            .map_err(|_| Error::parse(origin, lineno, format!("non-integer id `{}`", cells[0])))?;
        ids.push(id);
        rows.push(cells[1..].iter().map(|s| s.to_string()).collect());
    }
    Ok(AttributeTable { names, ids, rows })
}

fn sort_labels(labels: &mut [String]) {
    if labels.iter().all(|l| l.parse::<i64>().is_ok()) {
        labels.sort_by_key(|l| l.parse::<i64>().unwrap());
    } else {
        labels.sort();
    }
}

/// Builds one attribute's schema (proportions = counts) and per-node level
/// indices from its raw column.
fn derive_attribute(name: &str, column: &[&str], numerical: bool) -> Result<(AttributeSchema, Vec<usize>)> {
    if numerical {
        let mut known = Vec::with_capacity(column.len());
        for cell in column {
            if is_missing(cell) {
                known.push(None);
            } else {
                let v = cell
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::Dataset(format!("`{name}`: `{cell}` is not numeric")))?;
                known.push(Some(v));
            }
        }
        let mut counts: BTreeMap<u64, (f64, usize)> = BTreeMap::new();
        for v in known.iter().flatten() {
            // order by value: map f64 to a totally ordered key
            let key = order_key(*v);
            counts.entry(key).or_insert((*v, 0)).1 += 1;
        }
        let mode = counts
            .values()
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.total_cmp(&a.0)))
            .map(|&(v, _)| v)
            .ok_or_else(|| Error::Dataset(format!("numerical attribute `{name}` has no known values")))?;
        let filled: Vec<f64> = known.iter().map(|v| v.unwrap_or(mode)).collect();
        let mut counts: BTreeMap<u64, (f64, usize)> = BTreeMap::new();
        for &v in &filled {
            counts.entry(order_key(v)).or_insert((v, 0)).1 += 1;
        }
        let values: Vec<f64> = counts.values().map(|&(v, _)| v).collect();
        let proportions: Vec<f64> = counts.values().map(|&(_, c)| c as f64).collect();
        let schema = AttributeSchema::numeric(name, AttributeKind::Numerical, &values, &proportions, None)?;
        let index: HashMap<u64, usize> = counts.keys().enumerate().map(|(i, &k)| (k, i)).collect();
        let levels = filled.iter().map(|&v| index[&order_key(v)]).collect();
        Ok((schema, levels))
    } else {
        let cells: Vec<&str> = column
            .iter()
            .map(|&c| if is_missing(c) { UNKNOWN } else { c })
            .collect();
        let mut labels: Vec<String> = cells
            .iter()
            .filter(|&&c| c != UNKNOWN)
            .map(|c| c.to_string())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        sort_labels(&mut labels);
        if cells.contains(&UNKNOWN) {
            labels.insert(0, UNKNOWN.to_string());
        }
        let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let level_of: Vec<usize> = cells.iter().map(|c| index[c]).collect();
        let mut counts = vec![0.0; labels.len()];
        for &l in &level_of {
            counts[l] += 1.0;
        }
        let schema = AttributeSchema {
            name: name.to_string(),
            kind: AttributeKind::Categorical,
            levels: labels
                .into_iter()
                .enumerate()
                .map(|(i, label)| Level { label, value: i as f64 })
                .collect(),
            proportions: counts,
            rho: 1.0,
            weight: 1.0,
        };
        schema.validate()?;
        Ok((schema, level_of))
    }
}

fn order_key(v: f64) -> u64 {
    let bits = v.to_bits();
    if bits >> 63 == 1 {
        !bits
    } else {
        bits | (1 << 63)
    }
}

pub fn parse_dataset(
    name: &str,
    edges: &str,
    attributes: &str,
    options: &IngestOptions,
    edge_origin: &Path,
    attribute_origin: &Path,
) -> Result<DatasetBundle> {
    let table = parse_attribute_csv(attributes, attribute_origin)?;
    let mut dense: HashMap<i64, usize> = HashMap::with_capacity(table.ids.len());
    for (i, &id) in table.ids.iter().enumerate() {
        if dense.insert(id, i).is_some() {
            return Err(Error::Dataset(format!("duplicate id {id} in attribute file")));
        }
    }
    let n = table.ids.len();
    let mut graph = Graph::with_nodes(n);
    for (idx, line) in edges.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .collect();
        if parts.len() != 2 {
            return Err(Error::parse(edge_origin, lineno, "expected two node ids"));
        }
        let mut ends = [0usize; 2];
        for (slot, p) in ends.iter_mut().zip(&parts) {
            let raw = p
                .parse::<i64>()
                .map_err(|_| Error::parse(edge_origin, lineno, format!("non-integer id `{p}`")))?;
            *slot = *dense.get(&raw).ok_or_else(|| {
                Error::Dataset(format!(
                    "{}:{lineno}: node {raw} is not in the attribute file",
                    edge_origin.display()
                ))
            })?;
        }
        if ends[0] != ends[1] {
            graph.add_edge(ends[0], ends[1])?;
        }
    }
    let mut schemas = Vec::with_capacity(table.names.len());
    let mut columns = Vec::with_capacity(table.names.len());
    for (k, attr) in table.names.iter().enumerate() {
        let column: Vec<&str> = table.rows.iter().map(|r| r[k].as_str()).collect();
        let numerical = options.numerical.iter().any(|x| x == attr);
        let (schema, levels) = derive_attribute(attr, &column, numerical)?;
        schemas.push(schema);
        columns.push(levels);
    }
    crate::attributes::validate_schemas(&schemas)?;
    let profiles = (0..n)
        .map(|i| NodeProfile::new(columns.iter().map(|c| c[i]).collect()))
        .collect();
    Ok(DatasetBundle {
        name: name.to_string(),
        graph,
        profiles,
        schemas,
    })
}

pub fn load_dataset(
    edge_path: impl AsRef<Path>,
    attribute_path: impl AsRef<Path>,
    options: &IngestOptions,
) -> Result<DatasetBundle> {
    let (ep, ap) = (edge_path.as_ref(), attribute_path.as_ref());
    let edges = fs::read_to_string(ep).map_err(|e| Error::io(ep, e))?;
    let attrs = fs::read_to_string(ap).map_err(|e| Error::io(ap, e))?;
    let name = ep
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse_dataset(&name, &edges, &attrs, options, ep, ap)
}

/// Schemas with proportions normalized to empirical frequencies.
pub fn extract_proportions(bundle: &DatasetBundle) -> Result<Vec<AttributeSchema>> {
    if bundle.profiles.is_empty() {
        return Err(Error::Dataset("bundle has no nodes".into()));
    }
    let n = bundle.profiles.len() as f64;
    Ok(bundle
        .schemas
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let mut counts = vec![0usize; s.levels.len()];
            for p in &bundle.profiles {
                counts[p.values[k]] += 1;
            }
            AttributeSchema {
                proportions: counts.iter().map(|&c| c as f64 / n).collect(),
                ..s.clone()
            }
        })
        .collect())
}

/// Attribute CSV in the ingestion format, ids `0..n`.
pub fn attributes_csv(bundle: &DatasetBundle) -> String {
    let mut s = String::from("id");
    for schema in &bundle.schemas {
        s.push(',');
        s.push_str(&schema.name);
    }
    s.push('\n');
    for (i, p) in bundle.profiles.iter().enumerate() {
        s.push_str(&i.to_string());
        for (schema, &v) in bundle.schemas.iter().zip(&p.values) {
            s.push(',');
            let level = &schema.levels[v];
            if schema.kind.is_numeric() {
                s.push_str(&format_number(level.value));
            } else {
                s.push_str(&level.label);
            }
        }
        s.push('\n');
    }
    s
}

pub fn save_dataset(
    bundle: &DatasetBundle,
    edge_path: impl AsRef<Path>,
    attribute_path: impl AsRef<Path>,
) -> Result<()> {
    bundle.graph.save_edge_list(edge_path)?;
    let ap = attribute_path.as_ref();
    fs::write(ap, attributes_csv(bundle)).map_err(|e| Error::io(ap, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(edges: &str, attrs: &str) -> Result<DatasetBundle> {
        parse_dataset(
            "t",
            edges,
            attrs,
            &IngestOptions::default(),
            Path::new("e"),
            Path::new("a"),
        )
    }

    #[test]
    fn triangle_bundle() {
        let b = parse("10 20\n20 30\n10\t30\n", "id,gender\n10,1\n20,2\n30,1\n").unwrap();
        assert_eq!(b.graph.node_count(), 3);
        assert_eq!(b.graph.edge_count(), 3);
        assert_eq!(b.profiles.len(), 3);
    }

    #[test]
    fn unknown_edge_endpoint_is_an_error() {
        assert!(matches!(parse("1 4\n", "id,g\n1,a\n2,b\n"), Err(Error::Dataset(_))));
        assert!(parse("1 x\n", "id,g\n1,a\n2,b\n").is_err());
        assert!(parse("1 2\n", "id,g\n1,a,b\n2,b\n").is_err());
        assert!(parse("1 2\n", "id,g\nx,a\n2,b\n").is_err());
        assert!(parse("1 2\n", "id,g\n1,a\n1,b\n").is_err());
    }

    #[test]
    fn zero_coded_gender_gets_unknown_level() {
        let b = parse("", "id,gender\n1,0\n2,1\n3,2\n4,2\n").unwrap();
        let g = &b.schemas[0];
        assert_eq!(g.kind, AttributeKind::Categorical);
        let labels: Vec<&str> = g.levels.iter().map(|l| l.label.as_str()).collect();
        assert_eq!(labels, vec!["unknown", "1", "2"]);
        assert_eq!(g.proportions, vec![1.0, 1.0, 2.0]);
    }

    #[test]
    fn proportions_from_worked_example() {
        let attrs = "id,school,age\n1,s1,18\n2,s1,18\n3,s2,18\n4,s2,19\n5,s3,19\n6,s3,19\n7,s3,20\n";
        let b = parse("", attrs).unwrap();
        let s = extract_proportions(&b).unwrap();
        let close = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12);
        assert!(close(&s[0].proportions, &[2.0 / 7.0, 2.0 / 7.0, 3.0 / 7.0]));
        assert_eq!(s[1].kind, AttributeKind::Numerical);
        assert!(close(&s[1].proportions, &[3.0 / 7.0, 3.0 / 7.0, 1.0 / 7.0]));
        assert_eq!(s[1].rho, 2.0);
        for schema in &s {
            assert!((schema.proportions.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
        let single = parse("", "id,x\n1,a\n2,a\n").unwrap();
        assert_eq!(extract_proportions(&single).unwrap()[0].proportions, vec![1.0]);
    }

    #[test]
    fn numerical_missing_values_take_the_mode() {
        let b = parse("", "id,year\n1,2008\n2,0\n3,2008\n4,2009\n").unwrap();
        let s = &b.schemas[0];
        assert_eq!(
            s.levels.iter().map(|l| l.value).collect::<Vec<_>>(),
            vec![2008.0, 2009.0]
        );
        assert_eq!(s.proportions, vec![3.0, 1.0]);
        assert_eq!(s.rho, 1.0);
        assert!(parse("", "id,year\n1,abc\n").is_err());
    }

    #[test]
    fn empty_bundle_has_no_proportions() {
        assert!(parse("", "id,g\n").is_err());
        let b = DatasetBundle {
            name: "empty".into(),
            graph: Graph::new(),
            profiles: Vec::new(),
            schemas: Vec::new(),
        };
        assert!(extract_proportions(&b).is_err());
    }

    #[test]
    fn serialize_round_trip() {
        let attrs = "id,gender,year,dorm\n5,0,2008,12\n9,2,0,12\n11,1,2009,\n40,2,2007,13\n";
        let b = parse("5 9\n9 11\n11 5\n40 5\n5 9\n", attrs).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let (e, a) = (dir.path().join("t.edges"), dir.path().join("t.csv"));
        save_dataset(&b, &e, &a).unwrap();
        let back = load_dataset(&e, &a, &IngestOptions::default()).unwrap();
        assert_eq!(back, b);
    }
}
