//! Validated simple connected graphs, fixed-length path enumeration, and the
//! degree-sequence census that every invariant computation reduces to.
//!
//! Paths are undirected: `v0 v1 .. vh` and its reverse are the same path. The
//! enumerator emits each path once, in the orientation whose first endpoint
//! has the smaller vertex index.

use std::cell::Cell;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Default cap on depth-first node expansions.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Cap on the number of node expansions an exhaustive search may perform.
/// Running out is reported as [`Error::BudgetExceeded`], never as a truncated result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget(u64::MAX)
    }
}

/// A simple, undirected, connected graph with 0-based vertex labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Validates an edge list and builds the graph. Neighbor lists come out sorted.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewVertices);
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { vertex: u });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, nbrs) in adjacency.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if let Some(w) = nbrs.windows(2).find(|w| w[0] == w[1]) {
                let v = w[0];
                return Err(Error::DuplicateEdge {
                    u: u.min(v),
                    v: u.max(v),
                });
            }
        }
        let graph = Graph { adjacency };
        if let Some(vertex) = graph.first_unreachable() {
            return Err(Error::Disconnected { vertex });
        }
        Ok(graph)
    }

    fn first_unreachable(&self) -> Option<usize> {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &w in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().position(|&s| !s)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.adjacency[v].len() as u32
    }

    pub fn degrees(&self) -> Vec<u32> {
        (0..self.vertex_count()).map(|v| self.degree(v)).collect()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// Parses the edge-list text format: a header line `n e`, then `e` lines
    /// `u v`. Anything after `#` on a line is ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header line `n e`".into(),
        })?;
        let (n, e) = parse_pair(line, header)?;
        let mut edges = Vec::with_capacity(e);
        for (line, body) in lines {
            if edges.len() == e {
                return Err(Error::Parse {
                    line,
                    message: format!("more than the declared {e} edges"),
                });
            }
            edges.push(parse_pair(line, body)?);
        }
        if edges.len() != e {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                message: format!("expected {e} edges, found {}", edges.len()),
            });
        }
        Graph::new(n, &edges)
    }

    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.vertex_count(), edges.len());
        for (u, v) in edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges)
    }

    /// Star `K_{1,leaves}` with the center at vertex 0.
    pub fn star(leaves: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::new(leaves + 1, &edges)
    }
}

fn parse_pair(line: usize, body: &str) -> Result<(usize, usize)> {
    let mut it = body.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = it.next().ok_or_else(|| Error::Parse {
            line,
            message: format!("missing {what}"),
        })?;
        tok.parse().map_err(|_| Error::Parse {
            line,
            message: format!("`{tok}` is not a non-negative integer"),
        })
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if it.next().is_some() {
        return Err(Error::Parse {
            line,
            message: "expected exactly two fields".into(),
        });
    }
    Ok((a, b))
}

/// Degree sequence of a path in canonical orientation: the lexicographically
/// smaller of the sequence and its reverse.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathClass(Vec<u32>);

impl PathClass {
    pub fn canonical(mut degrees: Vec<u32>) -> Self {
        assert!(
            !degrees.is_empty(),
            "a path class needs at least one degree"
        );
        let reversed: Vec<u32> = degrees.iter().rev().copied().collect();
        if reversed < degrees {
            degrees = reversed;
        }
        PathClass(degrees)
    }

    pub fn degrees(&self) -> &[u32] {
        &self.0
    }

    /// Path length `h` (one less than the number of degrees).
    pub fn order(&self) -> usize {
        self.0.len() - 1
    }
}

impl fmt::Display for PathClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Number of length-`h` paths per canonical degree sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    order: usize,
    entries: BTreeMap<PathClass, u64>,
}

impl Census {
    pub fn new(order: usize) -> Self {
        Census {
            order,
            entries: BTreeMap::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Adds `count` paths with the given degree sequence (any orientation).
    /// Zero counts are dropped so that censuses compare structurally.
    pub fn add(&mut self, degrees: Vec<u32>, count: u64) {
        assert_eq!(
            degrees.len(),
            self.order + 1,
            "degree sequence length does not match census order {}",
            self.order
        );
        if count == 0 {
            return;
        }
        *self
            .entries
            .entry(PathClass::canonical(degrees))
            .or_insert(0) += count;
    }

    /// Count for a degree sequence given in either orientation.
    pub fn get(&self, degrees: &[u32]) -> u64 {
        if degrees.len() != self.order + 1 {
            return 0;
        }
        let key = PathClass::canonical(degrees.to_vec());
        self.entries.get(&key).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<PathClass, u64> {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PathClass, u64)> {
        self.entries.iter().map(|(k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total number of paths, `P_h(G)`.
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }
}

struct Walker<'g, F> {
    graph: &'g Graph,
    max_len: usize,
    path: Vec<usize>,
    on_path: Vec<bool>,
    expansions: u64,
    cap: u64,
    visit: F,
}

impl<F: FnMut(&[usize])> Walker<'_, F> {
    fn new(graph: &Graph, max_len: usize, budget: Budget, visit: F) -> Walker<'_, F> {
        Walker {
            graph,
            max_len,
            path: Vec::with_capacity(max_len + 1),
            on_path: vec![false; graph.vertex_count()],
            expansions: 0,
            cap: budget.0,
            visit,
        }
    }

    fn run(&mut self) -> Result<()> {
        for start in 0..self.graph.vertex_count() {
            self.push(start)?;
            self.descend()?;
            self.pop();
        }
        Ok(())
    }

    fn push(&mut self, v: usize) -> Result<()> {
        self.expansions += 1;
        if self.expansions > self.cap {
            return Err(Error::BudgetExceeded { cap: self.cap });
        }
        self.path.push(v);
        self.on_path[v] = true;
        Ok(())
    }

    fn pop(&mut self) {
        if let Some(v) = self.path.pop() {
            self.on_path[v] = false;
        }
    }

    // Every prefix is handed to the visitor, so each undirected path of
    // length >= 1 is seen twice (once per orientation).
    fn descend(&mut self) -> Result<()> {
        (self.visit)(&self.path);
        if self.path.len() > self.max_len {
            return Ok(());
        }
        let graph = self.graph;
        let last = *self
            .path
            .last()
            .expect("path is never empty while descending");
        for &w in graph.neighbors(last) {
            if !self.on_path[w] {
                self.push(w)?;
                self.descend()?;
                self.pop();
            }
        }
        Ok(())
    }
}

fn is_canonical_orientation(path: &[usize]) -> bool {
    path.len() == 1 || path[0] < path[path.len() - 1]
}

/// Calls `visit` once for every undirected path of length at most `max_len`,
/// in canonical orientation.
pub fn for_each_path<F: FnMut(&[usize])>(
    graph: &Graph,
    max_len: usize,
    budget: Budget,
    mut visit: F,
) -> Result<()> {
    let mut walker = Walker::new(graph, max_len, budget, |p: &[usize]| {
        if is_canonical_orientation(p) {
            visit(p)
        }
    });
    walker.run()
}

/// All paths of length exactly `h`, each undirected path once.
pub fn enumerate_paths(graph: &Graph, h: usize, budget: Budget) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for_each_path(graph, h, budget, |p| {
        if p.len() == h + 1 {
            out.push(p.to_vec());
        }
    })?;
    Ok(out)
}

pub fn path_census(graph: &Graph, h: usize, budget: Budget) -> Result<Census> {
    let mut census = Census::new(h);
    for_each_path(graph, h, budget, |p| {
        if p.len() == h + 1 {
            census.add(p.iter().map(|&v| graph.degree(v)).collect(), 1);
        }
    })?;
    Ok(census)
}

/// Censuses for every order `0..=h_max` from a single traversal.
pub fn path_censuses(graph: &Graph, h_max: usize, budget: Budget) -> Result<Vec<Census>> {
    let mut censuses: Vec<Census> = (0..=h_max).map(Census::new).collect();
    for_each_path(graph, h_max, budget, |p| {
        censuses[p.len() - 1].add(p.iter().map(|&v| graph.degree(v)).collect(), 1);
    })?;
    Ok(censuses)
}

/// Length of a longest path, by exhaustive search.
pub fn longest_path_length(graph: &Graph, budget: Budget) -> Result<usize> {
    let n = graph.vertex_count();
    let best = Cell::new(0);
    let mut walker = Walker::new(graph, n - 1, budget, |p: &[usize]| {
        best.set(best.get().max(p.len() - 1));
    });
    for start in 0..n {
        walker.push(start)?;
        walker.descend()?;
        walker.pop();
        // a Hamiltonian path cannot be beaten
        if best.get() == n - 1 {
            break;
        }
    }
    Ok(best.get())
}
