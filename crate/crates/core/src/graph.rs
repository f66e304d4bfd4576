//! Undirected simple graphs, the DIMACS-like text format, and the two
//! forbidden-subgraph witnesses (holes and pans) with their checkers.

use std::collections::BTreeSet;
use std::fmt;

use sha2::{Digest, Sha256};
use thiserror::Error;

/// Above this vertex count the bit matrix is skipped and adjacency falls
/// back to binary search in the sorted neighbor lists.
const MATRIX_LIMIT: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed header: {text}")]
    Header { line: usize, text: String },
    #[error("line {line}: edge before `p edge` header")]
    MissingHeader { line: usize },
    #[error("line {line}: second `p` header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: malformed edge line: {text}")]
    Edge { line: usize, text: String },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    OutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },
    #[error("line {line}: unknown line type: {text}")]
    Unknown { line: usize, text: String },
    #[error("missing `p edge` header")]
    NoHeader,
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCount { declared: usize, found: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    OutOfRange { vertex: usize, n: usize },
}

/// Immutable undirected simple graph on vertices `0..n`.
#[derive(Clone)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    matrix: Option<Vec<u64>>,
    words: usize,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph, rejecting loops, parallel edges and bad indices.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Self::from_sorted_adjacency(adj))
    }

    /// Trusted constructor: lists must be sorted, symmetric and loop-free.
    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        let n = adj.len();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        let words = n.div_ceil(64);
        let matrix = (n <= MATRIX_LIMIT).then(|| {
            let mut bits = vec![0u64; n * words];
            for (u, list) in adj.iter().enumerate() {
                for &v in list {
                    bits[u * words + v / 64] |= 1 << (v % 64);
                }
            }
            bits
        });
        Graph {
            adj,
            matrix,
            words,
            m,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_adjacency(vec![Vec::new(); n])
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        match &self.matrix {
            Some(bits) => bits[u * self.words + v / 64] >> (v % 64) & 1 == 1,
            None => self.adj[u].binary_search(&v).is_ok(),
        }
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is
    /// `vertices[i]` of `self`. Duplicates in `vertices` are ignored.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut map: Vec<usize> = vertices.to_vec();
        map.sort_unstable();
        map.dedup();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let adj = map
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect::<Vec<_>>()
            })
            .collect();
        (Graph::from_sorted_adjacency(adj), map)
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && self.adjacent(u, v)))
    }

    /// Vertices adjacent to every other vertex.
    pub fn universal_vertices(&self) -> Vec<usize> {
        let n = self.n();
        (0..n).filter(|&v| self.degree(v) + 1 == n).collect()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Canonical text form: header then edges in lexicographic order, 1-based.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            out.push_str(&format!("e {} {}\n", u + 1, v + 1));
        }
        out
    }

    /// Hex SHA-256 of the canonical serialization.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_dimacs().as_bytes()))
    }
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        let mut parts = trimmed.split_whitespace();
        match parts.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(ParseError::DuplicateHeader { line });
                }
                let rest: Vec<&str> = parts.collect();
                let parsed = match rest.as_slice() {
                    [kind, n, m] if *kind == "edge" || *kind == "col" => {
                        n.parse::<usize>().ok().zip(m.parse::<usize>().ok())
                    }
                    _ => None,
                };
                header = Some(parsed.ok_or_else(|| ParseError::Header {
                    line,
                    text: trimmed.to_string(),
                })?);
            }
            Some("e") => {
                let (n, _) = header.ok_or(ParseError::MissingHeader { line })?;
                let rest: Vec<&str> = parts.collect();
                let (u, v) = match rest.as_slice() {
                    [a, b] => a
                        .parse::<usize>()
                        .ok()
                        .zip(b.parse::<usize>().ok())
                        .ok_or_else(|| ParseError::Edge {
                            line,
                            text: trimmed.to_string(),
                        })?,
                    _ => {
                        return Err(ParseError::Edge {
                            line,
                            text: trimmed.to_string(),
                        })
                    }
                };
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(ParseError::OutOfRange { line, vertex: w, n });
                    }
                }
                if u == v {
                    return Err(ParseError::SelfLoop { line, vertex: u });
                }
                let key = (u.min(v), u.max(v));
                if !seen.insert(key) {
                    return Err(ParseError::DuplicateEdge {
                        line,
                        u: key.0,
                        v: key.1,
                    });
                }
                edges.push((u - 1, v - 1));
            }
            Some(_) => {
                return Err(ParseError::Unknown {
                    line,
                    text: trimmed.to_string(),
                })
            }
        }
    }
    let (n, m) = header.ok_or(ParseError::NoHeader)?;
    if m != edges.len() {
        return Err(ParseError::EdgeCount {
            declared: m,
            found: edges.len(),
        });
    }
    Ok(Graph::from_edges(n, &edges).expect("edges validated while parsing"))
}

/// A chordless cycle on at least four vertices, in cyclic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hole(pub Vec<usize>);

impl Hole {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn is_even(&self) -> bool {
        self.0.len().is_multiple_of(2)
    }

    fn relabel(&self, map: &[usize]) -> Hole {
        Hole(self.0.iter().map(|&v| map[v]).collect())
    }
}

/// A hole plus a vertex with exactly one neighbor on it. The edge
/// `handle`-`attach` is the handle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pan {
    pub hole: Hole,
    pub handle: usize,
    pub attach: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Witness {
    Pan(Pan),
    EvenHole(Hole),
}

impl Witness {
    /// Maps vertex ids through `map` (subgraph index -> host index).
    pub fn relabel(&self, map: &[usize]) -> Witness {
        match self {
            Witness::Pan(p) => Witness::Pan(Pan {
                hole: p.hole.relabel(map),
                handle: map[p.handle],
                attach: map[p.attach],
            }),
            Witness::EvenHole(h) => Witness::EvenHole(h.relabel(map)),
        }
    }

    pub fn verify(&self, g: &Graph) -> bool {
        match self {
            Witness::Pan(p) => verify_pan(g, p),
            Witness::EvenHole(h) => h.is_even() && verify_hole(g, h),
        }
    }

    pub fn is_pan(&self) -> bool {
        matches!(self, Witness::Pan(_))
    }
}

pub fn verify_hole(g: &Graph, hole: &Hole) -> bool {
    let c = &hole.0;
    let k = c.len();
    if k < 4 || c.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let distinct: BTreeSet<_> = c.iter().collect();
    if distinct.len() != k {
        return false;
    }
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if g.adjacent(c[i], c[j]) != consecutive {
                return false;
            }
        }
    }
    true
}

pub fn verify_pan(g: &Graph, pan: &Pan) -> bool {
    if !verify_hole(g, &pan.hole) || pan.handle >= g.n() {
        return false;
    }
    let c = &pan.hole.0;
    if c.contains(&pan.handle) || !c.contains(&pan.attach) {
        return false;
    }
    c.iter()
        .all(|&v| g.adjacent(pan.handle, v) == (v == pan.attach))
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Graph;

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    /// Cycle on `0..k` plus a hub `k` adjacent to all of it.
    pub fn wheel(k: usize) -> Graph {
        let mut edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        edges.extend((0..k).map(|i| (i, k)));
        Graph::from_edges(k + 1, &edges).unwrap()
    }

    /// `base` plus one new vertex adjacent to `attach`.
    pub fn with_vertex(base: &Graph, attach: &[usize]) -> Graph {
        let x = base.n();
        let mut edges: Vec<_> = base.edges().collect();
        edges.extend(attach.iter().map(|&v| (v, x)));
        Graph::from_edges(x + 1, &edges).unwrap()
    }
}
