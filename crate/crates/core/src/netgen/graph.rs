use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Immutable undirected simple graph stored as sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(node_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::spec("graph needs at least one node"));
        }
        let mut adjacency = vec![Vec::new(); node_count];
        for &(u, v) in edges {
            if u >= node_count || v >= node_count {
                return Err(Error::spec(format!("edge ({u}, {v}) out of range 0..{node_count}")));
            }
            if u == v {
                return Err(Error::spec(format!("self-loop at node {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (i, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::spec(format!("duplicate edge at node {i}")));
            }
        }
        Ok(Graph { adjacency })
    }

    /// Wraps adjacency lists that the caller guarantees are symmetric, simple
    /// and sorted.
    pub(crate) fn from_adjacency_unchecked(adjacency: Vec<Vec<usize>>) -> Self {
        let g = Graph { adjacency };
        debug_assert!(g.validate().is_ok());
        g
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn mean_degree(&self) -> f64 {
        2.0 * self.edge_count() as f64 / self.node_count() as f64
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Checks symmetry, simplicity, sortedness and id range.
    pub fn validate(&self) -> Result<()> {
        let n = self.node_count();
        for (u, list) in self.adjacency.iter().enumerate() {
            for w in list.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::spec(format!("adjacency of {u} not strictly sorted")));
                }
            }
            for &v in list {
                if v >= n {
                    return Err(Error::spec(format!("neighbor {v} of {u} out of range")));
                }
                if v == u {
                    return Err(Error::spec(format!("self-loop at {u}")));
                }
                if self.adjacency[v].binary_search(&u).is_err() {
                    return Err(Error::spec(format!("edge {u}->{v} has no reverse")));
                }
            }
        }
        Ok(())
    }

    /// Breadth-first distances from `source`; `usize::MAX` marks unreachable nodes.
    pub fn bfs_distances(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.node_count()];
        let mut queue = VecDeque::with_capacity(self.node_count());
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let next = dist[u] + 1;
            for &v in &self.adjacency[u] {
                if dist[v] == usize::MAX {
                    dist[v] = next;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn component_count(&self) -> usize {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut stack = Vec::new();
        let mut components = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            stack.push(start);
            while let Some(u) = stack.pop() {
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Serializes as the edge-list text format: a `# nodes=<n>` header then one
    /// `u v` line per edge in sorted order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(12 * self.edge_count() + 16);
        writeln!(out, "# nodes={}", self.node_count()).unwrap();
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    /// Parses the edge-list format. Other `#` lines are treated as comments.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut nodes = None;
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(n) = comment.trim().strip_prefix("nodes=") {
                    let n = n
                        .trim()
                        .parse::<usize>()
                        .map_err(|e| Error::Parse(format!("line {}: bad node count: {e}", lineno + 1)))?;
                    nodes = Some(n);
                }
                continue;
            }
            let mut parts = line.split_whitespace();
            let mut next = || -> Result<usize> {
                parts
                    .next()
                    .ok_or_else(|| Error::Parse(format!("line {}: expected `u v`", lineno + 1)))?
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))
            };
            let u = next()?;
            let v = next()?;
            edges.push((u, v));
        }
        let n = nodes.ok_or_else(|| Error::Parse("missing `# nodes=<n>` header".into()))?;
        Graph::from_edges(n, &edges)
    }
}
