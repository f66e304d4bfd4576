//! Clique-cutset decomposition, chordality certificates and the
//! hole/pan finders that work directly on atoms.
//!
//! Decomposition follows the MCS-M route: a minimal elimination ordering
//! is computed together with the vertices that generate minimal
//! separators, and every generator whose higher neighborhood in the
//! triangulation is a clique of the graph splits off one atom. Each
//! split removes at least one vertex for good, so a connected graph on
//! `n >= 2` vertices yields at most `n - 1` atoms.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Graph, Hole, Pan, Witness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("graph has {0} components; decompose each component separately")]
    Disconnected(usize),
    #[error("vertex set {0:?} is a clique cutset of the supposed atom")]
    CliqueCutset(Vec<usize>),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeNode {
    Leaf {
        vertices: Vec<usize>,
    },
    Split {
        cutset: Vec<usize>,
        left: usize,
        right: usize,
    },
}

/// Binary decomposition tree stored as an arena; `root` indexes `nodes`.
/// Vertex ids refer to the decomposed graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionTree {
    pub nodes: Vec<TreeNode>,
    pub root: usize,
}

impl DecompositionTree {
    pub fn single(vertices: Vec<usize>) -> Self {
        DecompositionTree {
            nodes: vec![TreeNode::Leaf { vertices }],
            root: 0,
        }
    }

    /// Leaf vertex sets, left to right.
    pub fn leaves(&self) -> Vec<&[usize]> {
        let mut out = Vec::new();
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            match &self.nodes[id] {
                TreeNode::Leaf { vertices } => out.push(vertices.as_slice()),
                TreeNode::Split { left, right, .. } => {
                    stack.push(*right);
                    stack.push(*left);
                }
            }
        }
        out
    }

    /// Vertex set covered by the subtree rooted at `id`, sorted.
    pub fn vertex_set(&self, id: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![id];
        while let Some(id) = stack.pop() {
            match &self.nodes[id] {
                TreeNode::Leaf { vertices } => out.extend_from_slice(vertices),
                TreeNode::Split { left, right, .. } => {
                    stack.push(*left);
                    stack.push(*right);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn relabel(&self, map: &[usize]) -> DecompositionTree {
        let remap = |s: &Vec<usize>| {
            let mut v: Vec<usize> = s.iter().map(|&x| map[x]).collect();
            v.sort_unstable();
            v
        };
        DecompositionTree {
            nodes: self
                .nodes
                .iter()
                .map(|node| match node {
                    TreeNode::Leaf { vertices } => TreeNode::Leaf {
                        vertices: remap(vertices),
                    },
                    TreeNode::Split {
                        cutset,
                        left,
                        right,
                    } => TreeNode::Split {
                        cutset: remap(cutset),
                        left: *left,
                        right: *right,
                    },
                })
                .collect(),
            root: self.root,
        }
    }

    /// DOT rendering; vertex ids are printed 1-based.
    pub fn to_dot(&self) -> String {
        let fmt_set = |s: &[usize]| {
            s.iter()
                .map(|v| (v + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let mut out = String::from("graph decomposition {\n  node [shape=box];\n");
        for (id, node) in self.nodes.iter().enumerate() {
            match node {
                TreeNode::Leaf { vertices } => {
                    out.push_str(&format!(
                        "  n{id} [label=\"atom {{{}}}\"];\n",
                        fmt_set(vertices)
                    ));
                }
                TreeNode::Split {
                    cutset,
                    left,
                    right,
                } => {
                    out.push_str(&format!(
                        "  n{id} [label=\"cutset {{{}}}\", shape=ellipse];\n  n{id} -- n{left};\n  n{id} -- n{right};\n",
                        fmt_set(cutset)
                    ));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Minimal elimination ordering from MCS-M.
pub(crate) struct MinimalOrdering {
    /// `elimination[0]` is eliminated first.
    pub elimination: Vec<usize>,
    /// Neighbors in the triangulation that are eliminated later.
    pub higher: Vec<Vec<usize>>,
    /// Vertices whose `higher` set is a minimal separator.
    pub generator: Vec<bool>,
}

pub(crate) fn mcs_m(g: &Graph) -> MinimalOrdering {
    let n = g.n();
    let mut label = vec![0usize; n];
    let mut numbered = vec![false; n];
    let mut higher: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut generator = vec![false; n];
    let mut sequence = Vec::with_capacity(n);
    let mut prev: Option<usize> = None;

    // Scratch for the minimax search: key = max interior label + 1 (0 when adjacent).
    let mut key = vec![usize::MAX; n];
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); n + 2];
    let mut touched = Vec::new();
    let mut reached = Vec::new();

    for _ in 0..n {
        let x = (0..n)
            .filter(|&v| !numbered[v])
            .max_by(|&a, &b| label[a].cmp(&label[b]).then(b.cmp(&a)))
            .expect("an unnumbered vertex remains");
        if prev.is_some_and(|p| label[x] <= p) {
            generator[x] = true;
        }
        prev = Some(label[x]);
        numbered[x] = true;
        sequence.push(x);

        for &u in g.neighbors(x) {
            if !numbered[u] && key[u] == usize::MAX {
                key[u] = 0;
                touched.push(u);
                buckets[0].push(u);
            }
        }
        let mut level = 0;
        while level < buckets.len() {
            let Some(w) = buckets[level].pop() else {
                level += 1;
                continue;
            };
            if key[w] != level {
                continue;
            }
            if level <= label[w] {
                reached.push(w);
            }
            let through = level.max(label[w] + 1);
            for &u in g.neighbors(w) {
                if !numbered[u] && through < key[u] {
                    if key[u] == usize::MAX {
                        touched.push(u);
                    }
                    key[u] = through;
                    buckets[through].push(u);
                }
            }
        }
        for &u in &reached {
            label[u] += 1;
            higher[u].push(x);
        }
        reached.clear();
        for &u in &touched {
            key[u] = usize::MAX;
        }
        touched.clear();
    }
    sequence.reverse();
    for list in &mut higher {
        list.sort_unstable();
    }
    MinimalOrdering {
        elimination: sequence,
        higher,
        generator,
    }
}

/// Splits a connected graph into atoms along clique minimal separators.
pub fn decompose(g: &Graph) -> Result<DecompositionTree, DecompositionError> {
    let comps = g.components().len();
    if comps > 1 {
        return Err(DecompositionError::Disconnected(comps));
    }
    let n = g.n();
    if n <= 1 {
        return Ok(DecompositionTree::single((0..n).collect()));
    }
    let order = mcs_m(g);
    let mut alive = vec![true; n];
    let mut alive_count = n;
    let mut in_sep = vec![false; n];
    let mut splits: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();

    for &x in &order.elimination {
        if !order.generator[x] || !alive[x] {
            continue;
        }
        let sep = &order.higher[x];
        if !g.is_clique(sep) {
            continue;
        }
        for &s in sep {
            in_sep[s] = true;
        }
        // Component of G' - S containing x.
        let mut comp = vec![x];
        let mut seen = vec![false; n];
        seen[x] = true;
        let mut head = 0;
        while head < comp.len() {
            let u = comp[head];
            head += 1;
            for &w in g.neighbors(u) {
                if alive[w] && !in_sep[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        let sep_alive = sep.iter().filter(|&&s| alive[s]).count();
        if sep_alive == sep.len() && comp.len() + sep.len() < alive_count {
            let mut atom: Vec<usize> = comp.iter().chain(sep.iter()).copied().collect();
            atom.sort_unstable();
            for &u in &comp {
                alive[u] = false;
            }
            alive_count -= comp.len();
            splits.push((sep.clone(), atom));
        }
        for &s in sep {
            in_sep[s] = false;
        }
    }

    let rest: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let mut nodes = Vec::with_capacity(2 * splits.len() + 1);
    nodes.push(TreeNode::Leaf { vertices: rest });
    let mut right = 0;
    for (cutset, atom) in splits.into_iter().rev() {
        nodes.push(TreeNode::Leaf { vertices: atom });
        let left = nodes.len() - 1;
        nodes.push(TreeNode::Split {
            cutset,
            left,
            right,
        });
        right = nodes.len() - 1;
    }
    Ok(DecompositionTree { nodes, root: right })
}

/// A clique whose removal disconnects `g`, if any.
pub fn find_clique_cutset(g: &Graph) -> Result<Option<Vec<usize>>, DecompositionError> {
    let tree = decompose(g)?;
    Ok(match &tree.nodes[tree.root] {
        TreeNode::Split { cutset, .. } => Some(cutset.clone()),
        TreeNode::Leaf { .. } => None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChordalityCertificate {
    /// Perfect elimination ordering, first eliminated first.
    Peo(Vec<usize>),
    Hole(Hole),
}

/// Maximum cardinality search; returns the visit sequence.
fn mcs(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut done = vec![false; n];
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for v in (0..n).rev() {
        buckets[0].push(v);
    }
    let mut top = 0;
    let mut seq = Vec::with_capacity(n);
    while seq.len() < n {
        let v = loop {
            match buckets[top].pop() {
                Some(v) if !done[v] && weight[v] == top => break v,
                Some(_) => continue,
                None => top -= 1,
            }
        };
        done[v] = true;
        seq.push(v);
        for &u in g.neighbors(v) {
            if !done[u] {
                weight[u] += 1;
                buckets[weight[u]].push(u);
                top = top.max(weight[u]);
            }
        }
    }
    seq
}

/// Either a perfect elimination ordering or a hole of `g`.
pub fn chordality_certificate(g: &Graph) -> ChordalityCertificate {
    let n = g.n();
    let mut seq = mcs(g);
    seq.reverse();
    let mut pos = vec![0usize; n];
    for (i, &v) in seq.iter().enumerate() {
        pos[v] = i;
    }
    let mut mark = vec![usize::MAX; n];
    for &v in &seq {
        let later: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| pos[u] > pos[v])
            .collect();
        let Some(&parent) = later.iter().min_by_key(|&&u| pos[u]) else {
            continue;
        };
        for &u in g.neighbors(parent) {
            mark[u] = parent;
        }
        if let Some(&w) = later.iter().find(|&&w| w != parent && mark[w] != parent) {
            if let Some(hole) = hole_from_pair(g, v, parent, w) {
                return ChordalityCertificate::Hole(hole);
            }
            return ChordalityCertificate::Hole(
                (0..n)
                    .find_map(|u| hole_at(g, u))
                    .expect("a graph without a PEO has a hole"),
            );
        }
    }
    ChordalityCertificate::Peo(seq)
}

/// `v` plus a shortest `x`-`y` path avoiding the rest of `N[v]`.
fn hole_from_pair(g: &Graph, v: usize, x: usize, y: usize) -> Option<Hole> {
    let n = g.n();
    let mut blocked = vec![false; n];
    blocked[v] = true;
    for &u in g.neighbors(v) {
        blocked[u] = u != x && u != y;
    }
    let path = shortest_path(g, x, y, |u| !blocked[u])?;
    let mut cycle = vec![v];
    cycle.extend(path);
    Some(Hole(cycle))
}

/// BFS shortest path from `s` to `t` through vertices accepted by `allow`
/// (endpoints are always allowed). Shortest paths are induced.
pub(crate) fn shortest_path(
    g: &Graph,
    s: usize,
    t: usize,
    allow: impl Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    parent[s] = s;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        if u == t {
            break;
        }
        for &w in g.neighbors(u) {
            if parent[w] == usize::MAX && (w == t || allow(w)) {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    if parent[t] == usize::MAX {
        return None;
    }
    let mut path = vec![t];
    let mut cur = t;
    while cur != s {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    Some(path)
}

/// Components of `G - N[v]` paired with their attachment sets in `N(v)`.
fn attachments(g: &Graph, v: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = g.n();
    let mut state = vec![0u8; n]; // 0 free, 1 closed neighborhood
    state[v] = 1;
    for &u in g.neighbors(v) {
        state[u] = 1;
    }
    let mut comp_of = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if state[s] != 0 || comp_of[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp_of[s] = id;
        let mut comp = vec![s];
        let mut attach = Vec::new();
        let mut head = 0;
        let mut attached = vec![false; 0];
        attached.resize(n, false);
        while head < comp.len() {
            let u = comp[head];
            head += 1;
            for &w in g.neighbors(u) {
                if state[w] == 1 {
                    if !attached[w] {
                        attached[w] = true;
                        attach.push(w);
                    }
                } else if comp_of[w] == usize::MAX {
                    comp_of[w] = id;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        attach.sort_unstable();
        out.push((comp, attach));
    }
    out
}

pub(crate) fn non_adjacent_pair(g: &Graph, set: &[usize]) -> Option<(usize, usize)> {
    for (i, &x) in set.iter().enumerate() {
        if let Some(&y) = set[i + 1..].iter().find(|&&y| !g.adjacent(x, y)) {
            return Some((x, y));
        }
    }
    None
}

fn hole_through_component(g: &Graph, v: usize, comp: &[usize], x: usize, y: usize) -> Hole {
    let mut inside = vec![false; g.n()];
    for &c in comp {
        inside[c] = true;
    }
    let path = shortest_path(g, x, y, |u| inside[u]).expect("x and y both attach to the component");
    let mut cycle = vec![v];
    cycle.extend(path);
    Hole(cycle)
}

/// A hole through `v` in any graph, if one exists.
pub(crate) fn hole_at(g: &Graph, v: usize) -> Option<Hole> {
    attachments(g, v).into_iter().find_map(|(comp, attach)| {
        non_adjacent_pair(g, &attach).map(|(x, y)| hole_through_component(g, v, &comp, x, y))
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HoleOrUniversal {
    Hole(Hole),
    Universal,
}

/// In an atom every vertex is universal or lies on a hole.
pub fn hole_through_vertex(atom: &Graph, v: usize) -> Result<HoleOrUniversal, DecompositionError> {
    if v >= atom.n() {
        return Err(DecompositionError::VertexOutOfRange(v));
    }
    match attachments(atom, v).into_iter().next() {
        None => Ok(HoleOrUniversal::Universal),
        Some((comp, attach)) => match non_adjacent_pair(atom, &attach) {
            Some((x, y)) => Ok(HoleOrUniversal::Hole(hole_through_component(
                atom, v, &comp, x, y,
            ))),
            None => Err(DecompositionError::CliqueCutset(attach)),
        },
    }
}

/// A hole through `v` found atom by atom, if one exists.
fn hole_containing(g: &Graph, v: usize) -> Option<Hole> {
    let comp = g
        .components()
        .into_iter()
        .find(|c| c.binary_search(&v).is_ok())?;
    let (h, map) = g.induced_subgraph(&comp);
    let local_v = map.binary_search(&v).ok()?;
    let tree = decompose(&h).ok()?;
    for leaf in tree.leaves() {
        let Ok(idx) = leaf.binary_search(&local_v) else {
            continue;
        };
        let (atom, atom_map) = h.induced_subgraph(leaf);
        if let Ok(HoleOrUniversal::Hole(hole)) = hole_through_vertex(&atom, idx) {
            return Some(Hole(hole.0.iter().map(|&u| map[atom_map[u]]).collect()));
        }
    }
    None
}

/// Pan search edge by edge: `b` is a handle at `a` iff `a` lies on a hole
/// of `G - (N(b) - {a})`.
pub fn find_pan_global(g: &Graph) -> Option<Pan> {
    for (u, v) in g.edges() {
        for (attach, handle) in [(u, v), (v, u)] {
            let keep: Vec<usize> = (0..g.n())
                .filter(|&w| w == attach || !g.adjacent(handle, w))
                .collect();
            let (h, map) = g.induced_subgraph(&keep);
            let local = map.binary_search(&attach).expect("attach is kept");
            if let Some(hole) = hole_containing(&h, local) {
                let pan = Pan {
                    hole: Hole(hole.0.iter().map(|&w| map[w]).collect()),
                    handle,
                    attach,
                };
                debug_assert!(Witness::Pan(pan.clone()).verify(g));
                return Some(pan);
            }
        }
    }
    None
}
