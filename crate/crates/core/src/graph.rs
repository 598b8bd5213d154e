//! Undirected simple graph with dense, growth-ordered node ids.
//!
//! Neighbor lists are kept sorted so that common-neighbor counts are a merge
//! of two sorted slices. The on-disk format is a plain edge list: one
//! `i<TAB>j` pair per line with `i < j`, decimal ids, LF endings, no header.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

pub type NodeId = usize;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    edge_count: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph with `n` isolated nodes.
    pub fn with_nodes(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn add_node(&mut self) -> NodeId {
        self.adjacency.push(Vec::new());
        self.adjacency.len() - 1
    }

    fn check(&self, id: NodeId) -> Result<()> {
        if id < self.adjacency.len() {
            Ok(())
        } else {
            Err(Error::UnknownNode {
                id,
                node_count: self.adjacency.len(),
            })
        }
    }

    /// Adds the undirected edge `{i, j}`. Returns `false` without touching the
    /// graph when the edge already exists.
    pub fn add_edge(&mut self, i: NodeId, j: NodeId) -> Result<bool> {
        self.check(i)?;
        self.check(j)?;
        if i == j {
            return Err(Error::SelfLoop(i));
        }
        let pos_i = match self.adjacency[i].binary_search(&j) {
            Ok(_) => return Ok(false),
            Err(pos) => pos,
        };
        self.adjacency[i].insert(pos_i, j);
        let pos_j = self.adjacency[j]
            .binary_search(&i)
            .expect_err("adjacency lists out of sync");
        self.adjacency[j].insert(pos_j, i);
        self.edge_count += 1;
        Ok(true)
    }

    pub fn has_edge(&self, i: NodeId, j: NodeId) -> bool {
        self.adjacency.get(i).is_some_and(|nbrs| nbrs.binary_search(&j).is_ok())
    }

    /// Sorted neighbor ids of `i`. Panics on an unknown id.
    pub fn neighbors(&self, i: NodeId) -> &[NodeId] {
        &self.adjacency[i]
    }

    /// Degree of `i`. Panics on an unknown id.
    pub fn degree(&self, i: NodeId) -> usize {
        self.adjacency[i].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    /// Number of nodes adjacent to both `i` and `j`.
    pub fn common_neighbors(&self, i: NodeId, j: NodeId) -> Result<usize> {
        self.check(i)?;
        self.check(j)?;
        Ok(sorted_intersection_len(&self.adjacency[i], &self.adjacency[j]))
    }

    pub fn max_degree(&self) -> Result<usize> {
        self.adjacency.iter().map(Vec::len).max().ok_or(Error::EmptyGraph)
    }

    /// Edges as `(i, j)` with `i < j`, ordered by `i` then `j`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(i, nbrs)| {
            let start = nbrs.partition_point(|&j| j <= i);
            nbrs[start..].iter().map(move |&j| (i, j))
        })
    }

    pub fn write_edge_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (i, j) in self.edges() {
            writeln!(out, "{i}\t{j}")?;
        }
        Ok(())
    }

    pub fn save_edge_list(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut out = BufWriter::new(file);
        self.write_edge_list(&mut out)
            .and_then(|_| out.flush())
            .map_err(|e| Error::io(path, e))
    }

    /// Parses the edge-list format. Without `node_count` the graph gets
    /// `max id + 1` nodes; pass it explicitly to keep trailing isolated nodes.
    pub fn read_edge_list<R: Read>(input: R, node_count: Option<usize>, origin: &Path) -> Result<Graph> {
        let mut pairs = Vec::new();
        let mut max_id = None;
        for (lineno, line) in BufReader::new(input).lines().enumerate() {
            let line = line.map_err(|e| Error::io(origin, e))?;
            let lineno = lineno + 1;
            if line.is_empty() {
                continue;
            }
            let (a, b) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(origin, lineno, "expected `i<TAB>j`"))?;
            let parse = |s: &str| {
                s.parse::<NodeId>()
                    .map_err(|_| Error::parse(origin, lineno, format!("invalid node id `{s}`")))
            };
            let (i, j) = (parse(a)?, parse(b)?);
            if i >= j {
                return Err(Error::parse(origin, lineno, "edge must satisfy i < j"));
            }
            max_id = max_id.max(Some(j));
            pairs.push((i, j, lineno));
        }
        let inferred = max_id.map_or(0, |m| m + 1);
        let n = match node_count {
            Some(n) if n < inferred => {
                return Err(Error::InvalidArgument(format!(
                    "{}: edge list references node {} but only {n} nodes were declared",
                    origin.display(),
                    inferred - 1
                )))
            }
            Some(n) => n,
            None => inferred,
        };
        let mut g = Graph::with_nodes(n);
        for (i, j, lineno) in pairs {
            if !g.add_edge(i, j)? {
                return Err(Error::parse(origin, lineno, format!("duplicate edge {i}-{j}")));
            }
        }
        Ok(g)
    }

    pub fn load_edge_list(path: impl AsRef<Path>, node_count: Option<usize>) -> Result<Graph> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        Graph::read_edge_list(file, node_count, path)
    }
}

pub(crate) fn sorted_intersection_len(a: &[NodeId], b: &[NodeId]) -> usize {
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    // Galloping pays off when one list is much longer (hubs).
    if short.len() * 16 < long.len() {
        return short.iter().filter(|x| long.binary_search(x).is_ok()).count();
    }
    let (mut x, mut y, mut count) = (0, 0, 0);
    while x < short.len() && y < long.len() {
        match short[x].cmp(&long[y]) {
            std::cmp::Ordering::Less => x += 1,
            std::cmp::Ordering::Greater => y += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                x += 1;
                y += 1;
            }
        }
    }
    count
}
