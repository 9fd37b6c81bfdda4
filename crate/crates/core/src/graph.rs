//! Undirected binary graphs in compressed sparse row form.
//!
//! Nodes carry an external label (whatever token appeared in the input) and a
//! dense internal id in `0..n`. Internal ids are assigned in order of first
//! appearance, so re-serializing a graph with [`Graph::write_edge_list`] and
//! loading it again reproduces the same ids.
//!
//! Parallel edges collapse into one. Self-loops are kept: a node with a loop
//! lists itself once among its neighbors and so counts once towards its own
//! degree.

use std::collections::{HashMap, VecDeque};
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
    labels: Vec<String>,
    index: HashMap<String, usize>,
    num_edges: usize,
    num_loops: usize,
}

impl Graph {
    /// Builds a graph on nodes `0..n` labelled by their decimal ids.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let labels = (0..n).map(|v| v.to_string()).collect();
        Graph::from_labeled_edges(labels, edges)
    }

    /// Builds a graph whose node `v` carries `labels[v]`.
    pub fn from_labeled_edges(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Graph> {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (v, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), v).is_some() {
                return Err(Error::validation(format!("duplicate node label {label:?}")));
            }
        }

        let mut lists: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            for node in [u, v] {
                if node >= n {
                    return Err(Error::NodeOutOfRange { node, num_nodes: n });
                }
            }
            lists[u].push(v);
            if u != v {
                lists[v].push(u);
            }
        }

        let mut offsets = Vec::with_capacity(n + 1);
        let mut neighbors = Vec::new();
        let mut num_loops = 0;
        offsets.push(0);
        for (v, mut list) in lists.into_iter().enumerate() {
            list.sort_unstable();
            list.dedup();
            if list.binary_search(&v).is_ok() {
                num_loops += 1;
            }
            neighbors.extend_from_slice(&list);
            offsets.push(neighbors.len());
        }
        let num_edges = (neighbors.len() + num_loops) / 2;

        Ok(Graph {
            offsets,
            neighbors,
            labels,
            index,
            num_edges,
            num_loops,
        })
    }

    pub fn num_nodes(&self) -> usize {
        self.labels.len()
    }

    /// Number of undirected edges, self-loops included.
    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn num_self_loops(&self) -> usize {
        self.num_loops
    }

    /// Sorted neighbor list of `v`. Panics if `v` is out of range.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        if v >= self.num_nodes() {
            return Err(Error::NodeOutOfRange {
                node: v,
                num_nodes: self.num_nodes(),
            });
        }
        Ok(self.offsets[v + 1] - self.offsets[v])
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.num_nodes() && v < self.num_nodes() && self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_id(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Each undirected edge once, as `(u, v)` with `u <= v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.num_nodes()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v >= u)
                .map(move |v| (u, v))
        })
    }

    pub fn is_connected(&self) -> bool {
        let n = self.num_nodes();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        reached == n
    }

    /// Writes the graph as an edge list that [`load_edge_list`] maps back onto
    /// the same internal ids.
    ///
    /// Nodes without any incident edge cannot be expressed in this format and
    /// are dropped.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let n = self.num_nodes();
        let mut introduced = vec![false; n];
        let mut written: Vec<(usize, usize)> = Vec::new();
        // Emit, in id order, one edge that makes each node appear right after
        // its predecessors.
        for k in 0..n {
            if introduced[k] {
                continue;
            }
            let nbrs = self.neighbors(k);
            let edge = if let Some(&j) = nbrs.iter().find(|&&j| j < k && introduced[j]) {
                Some((j, k))
            } else if nbrs.binary_search(&k).is_ok() {
                Some((k, k))
            } else if nbrs.binary_search(&(k + 1)).is_ok() {
                Some((k, k + 1))
            } else {
                None
            };
            if let Some((a, b)) = edge {
                writeln!(out, "{} {}", self.labels[a], self.labels[b])?;
                introduced[a] = true;
                introduced[b] = true;
                written.push((a.min(b), a.max(b)));
            }
        }
        written.sort_unstable();
        for (u, v) in self.edges() {
            if written.binary_search(&(u, v)).is_err() {
                writeln!(out, "{} {}", self.labels[u], self.labels[v])?;
            }
        }
        Ok(())
    }
}

/// Parses a whitespace-separated edge list.
///
/// Blank lines and lines starting with `#` are skipped. Every other line must
/// hold exactly two node labels.
pub fn load_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();

    let mut intern = |label: &str| -> usize {
        if let Some(&id) = index.get(label) {
            return id;
        }
        let id = labels.len();
        labels.push(label.to_owned());
        index.insert(label.to_owned(), id);
        id
    };

    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::parse(
                lineno + 1,
                format!("expected two node labels, found {} token(s)", tokens.len()),
            ));
        }
        let u = intern(tokens[0]);
        let v = intern(tokens[1]);
        edges.push((u, v));
    }

    Graph::from_labeled_edges(labels, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn parse(text: &str) -> Result<Graph> {
        load_edge_list(text.as_bytes())
    }

    #[test]
    fn running_example_shape() {
        let g = fixtures::running_example();
        assert_eq!(g.num_nodes(), 11);
        assert_eq!(g.num_edges(), 10);
        assert_eq!(g.label(0), "1");
        assert_eq!(g.node_id("11"), Some(10));
    }

    #[test]
    fn empty_input_is_empty_graph() {
        let g = parse("").unwrap();
        assert_eq!(g.num_nodes(), 0);
        assert_eq!(g.num_edges(), 0);
        let g = parse("# only a comment\n\n").unwrap();
        assert_eq!(g.num_nodes(), 0);
    }

    #[test]
    fn both_orientations_merge() {
        let g = parse("a b\nb a\na b\n").unwrap();
        assert_eq!(g.num_nodes(), 2);
        assert_eq!(g.num_edges(), 1);
        assert_eq!(g.neighbors(0), &[1]);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        match parse("1 2\n# c\n3 4 5\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse("7\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn degrees() {
        let g = fixtures::running_example();
        let id = |l: &str| g.node_id(l).unwrap();
        assert_eq!(g.degree(id("2")).unwrap(), 4);
        assert_eq!(g.degree(id("5")).unwrap(), 1);
        assert!(matches!(g.degree(11), Err(Error::NodeOutOfRange { .. })));

        let isolated = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(isolated.degree(2).unwrap(), 0);
    }

    #[test]
    fn self_loop_counts_once() {
        let g = parse("x x\nx y\n").unwrap();
        assert_eq!(g.num_edges(), 2);
        assert_eq!(g.num_self_loops(), 1);
        assert_eq!(g.degree(0).unwrap(), 2);
        let total: usize = (0..g.num_nodes()).map(|v| g.degree(v).unwrap()).sum();
        assert_eq!(total, 2 * g.num_edges() - g.num_self_loops());
    }

    #[test]
    fn rewrite_keeps_ids() {
        let text = "0 1\n2 3\n0 3\n5 5\n1 4\n";
        let g = parse(text).unwrap();
        let mut buf = Vec::new();
        g.write_edge_list(&mut buf).unwrap();
        let h = load_edge_list(buf.as_slice()).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn connectivity() {
        assert!(fixtures::running_example().is_connected());
        assert!(!Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap().is_connected());
    }
}
