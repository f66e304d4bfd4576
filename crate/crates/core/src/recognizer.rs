//! Certifying recognition: per-atom test, straddling-pan check,
//! certificate assembly, and an independent certificate checker.

use std::collections::VecDeque;

use thiserror::Error;

use crate::buoy::{
    classify_outside, domination_orders, enlarge, incomparable_even_hole, pan_in_buoy, Buoy,
    BuoyError, DominationOrder, OutsideType, Step,
};
use crate::decomposition::{
    chordality_certificate, decompose, ChordalityCertificate, DecompositionError,
    DecompositionTree, TreeNode,
};
use crate::graph::{Graph, Hole, Witness};
use crate::par;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecognizeError {
    #[error("input is not an atom: {0:?} is a clique cutset")]
    NotAnAtom(Vec<usize>),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error(transparent)]
    Buoy(#[from] BuoyError),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AtomCertificate {
    Clique(Vec<usize>),
    Structured {
        bags: Vec<Vec<usize>>,
        /// Vertices universal to the atom, outside the buoy.
        universal: Vec<usize>,
        /// Per-bag inclusion orders, dominant vertex last.
        orders: Vec<Vec<usize>>,
        /// `pair_clique[i]`: bags `i` and `i+1` form a clique.
        pair_clique: Vec<bool>,
    },
}

impl AtomCertificate {
    pub fn relabel(&self, map: &[usize]) -> AtomCertificate {
        let set = |s: &Vec<usize>| {
            let mut v: Vec<usize> = s.iter().map(|&x| map[x]).collect();
            v.sort_unstable();
            v
        };
        let seq = |s: &Vec<usize>| s.iter().map(|&x| map[x]).collect::<Vec<_>>();
        match self {
            AtomCertificate::Clique(c) => AtomCertificate::Clique(set(c)),
            AtomCertificate::Structured {
                bags,
                universal,
                orders,
                pair_clique,
            } => AtomCertificate::Structured {
                bags: bags.iter().map(set).collect(),
                universal: set(universal),
                orders: orders.iter().map(seq).collect(),
                pair_clique: pair_clique.clone(),
            },
        }
    }

    pub fn is_clique(&self) -> bool {
        matches!(self, AtomCertificate::Clique(_))
    }
}

/// Partition of the outside neighbors of an atom.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Neighborhood {
    /// `classes[i]`: vertices whose buoy neighbors are exactly bags `i`, `i+1`.
    pub classes: Vec<Vec<usize>>,
    /// Neighbors that only see the universal clique.
    pub null: Vec<usize>,
}

impl Neighborhood {
    fn relabel(&self, map: &[usize]) -> Neighborhood {
        let set = |s: &Vec<usize>| {
            let mut v: Vec<usize> = s.iter().map(|&x| map[x]).collect();
            v.sort_unstable();
            v
        };
        Neighborhood {
            classes: self.classes.iter().map(set).collect(),
            null: set(&self.null),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.null.is_empty() && self.classes.iter().all(Vec::is_empty)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomEntry {
    pub vertices: Vec<usize>,
    pub certificate: AtomCertificate,
    pub neighborhood: Neighborhood,
}

/// One decomposition tree per connected component; `atoms` lists the
/// leaves of every tree in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateTree {
    pub n: usize,
    pub components: Vec<DecompositionTree>,
    pub atoms: Vec<AtomEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Free(CertificateTree),
    Forbidden(Witness),
}

impl Verdict {
    pub fn is_free(&self) -> bool {
        matches!(self, Verdict::Free(_))
    }
}

fn relabel_step(step: Step<AtomCertificate>, map: &[usize]) -> Step<AtomCertificate> {
    match step {
        Step::Done(c) => Step::Done(c.relabel(map)),
        Step::Found(w) => Step::Found(w.relabel(map)),
    }
}

/// Certificate or witness for a graph without clique cutsets.
pub fn test_atom(atom: &Graph) -> Result<Step<AtomCertificate>, RecognizeError> {
    let n = atom.n();
    let hole = match chordality_certificate(atom) {
        ChordalityCertificate::Peo(_) => {
            let all: Vec<usize> = (0..n).collect();
            if atom.is_clique(&all) {
                return Ok(Step::Done(AtomCertificate::Clique(all)));
            }
            return Err(RecognizeError::Internal(
                "chordal atom is not a clique".into(),
            ));
        }
        ChordalityCertificate::Hole(h) if h.is_even() => {
            return Ok(Step::Found(Witness::EvenHole(h)))
        }
        ChordalityCertificate::Hole(h) => h,
    };
    let universal = atom.universal_vertices();
    let rest: Vec<usize> = (0..n)
        .filter(|v| universal.binary_search(v).is_err())
        .collect();
    let (g, map) = atom.induced_subgraph(&rest);
    let mut local = vec![usize::MAX; n];
    for (i, &v) in map.iter().enumerate() {
        local[v] = i;
    }
    let hole = Hole(hole.0.iter().map(|&v| local[v]).collect());
    let step = test_stripped(&g, &hole)?;
    Ok(match relabel_step(step, &map) {
        Step::Done(AtomCertificate::Structured {
            bags,
            orders,
            pair_clique,
            ..
        }) => Step::Done(AtomCertificate::Structured {
            bags,
            universal,
            orders,
            pair_clique,
        }),
        other => other,
    })
}

/// Test on the atom without its universal vertices, starting from an odd hole.
fn test_stripped(g: &Graph, hole: &Hole) -> Result<Step<AtomCertificate>, RecognizeError> {
    let mut b = Buoy::from_hole(g.n(), hole);
    // Two calls suffice on a free atom. A type-3 leftover after them means
    // the atom is not free, and further calls run until a witness appears.
    let mut calls = 2;
    let (dom, classes, class_of, full, far) = 'grow: loop {
        let before = b.vertex_count();
        for _ in 0..calls {
            b = match enlarge(g, &b)? {
                Step::Done(e) => e,
                Step::Found(w) => return Ok(Step::Found(w)),
            };
        }
        if calls == 1 && b.vertex_count() == before {
            return Err(RecognizeError::Internal(
                "type-3 vertex left at the enlargement fixpoint".into(),
            ));
        }
        calls = 1;
        let dom = match domination_orders(g, &b) {
            Ok(d) => d,
            Err(p) => return Ok(Step::Found(incomparable_even_hole(g, &b, p.x, p.y, p.bag)?)),
        };
        let mut classes: Vec<Vec<usize>> = vec![Vec::new(); b.len()];
        let mut class_of = vec![usize::MAX; g.n()];
        let mut full = Vec::new();
        let mut far = Vec::new();
        for x in (0..g.n()).filter(|&x| !b.contains(x)) {
            if !g.neighbors(x).iter().any(|&u| b.contains(u)) {
                far.push(x);
                continue;
            }
            match classify_outside(g, &b, &dom, x)? {
                Step::Found(w) => return Ok(Step::Found(w)),
                Step::Done(OutsideType::Type2(i)) => {
                    classes[i].push(x);
                    class_of[x] = i;
                }
                Step::Done(OutsideType::Full) => full.push(x),
                Step::Done(OutsideType::Type3(_)) => continue 'grow,
            }
        }
        break (dom, classes, class_of, full, far);
    };
    let l = b.len();
    if let Some(w) = loose_pair_hole(g, &b, &dom, &classes) {
        return Ok(Step::Found(w));
    }
    if let Some((u, w)) = crate::decomposition::non_adjacent_pair(g, &full) {
        let (h0, h2) = (dom.dominant(0), dom.dominant(2));
        return Ok(Step::Found(Witness::EvenHole(Hole(vec![u, h0, w, h2]))));
    }
    if classes.iter().all(Vec::is_empty) {
        if !far.is_empty() {
            return Err(RecognizeError::NotAnAtom(full));
        }
        if !full.is_empty() {
            return Err(RecognizeError::Internal(
                "buoy-complete vertices are universal".into(),
            ));
        }
    } else {
        return match leftover_even_hole(g, &b, &dom, &class_of, &far) {
            Some(w) => Ok(Step::Found(w)),
            None => {
                let i = (0..l)
                    .find(|&i| !classes[i].is_empty())
                    .expect("some class is non-empty");
                let mut cut: Vec<usize> = b
                    .bag(i as isize)
                    .iter()
                    .chain(b.bag(i as isize + 1))
                    .chain(&full)
                    .copied()
                    .collect();
                cut.sort_unstable();
                Err(RecognizeError::NotAnAtom(cut))
            }
        };
    }
    if let Some(w) = pan_in_buoy(g, &b, &dom)? {
        return Ok(Step::Found(w));
    }
    let pair_clique = crate::buoy::clique_pattern(g, &b).pair_clique;
    Ok(Step::Done(AtomCertificate::Structured {
        bags: b.bags().to_vec(),
        universal: Vec::new(),
        orders: dom.orders,
        pair_clique,
    }))
}

/// A vertex complete to bags `i`, `i+1` that do not form a clique closes an
/// even hole with the dominant vertices of the other bags.
fn loose_pair_hole(
    g: &Graph,
    b: &Buoy,
    dom: &DominationOrder,
    classes: &[Vec<usize>],
) -> Option<Witness> {
    let l = b.len();
    for (i, class) in classes.iter().enumerate() {
        let Some(&a) = class.first() else { continue };
        let next = b.bag(i as isize + 1);
        let Some((u, v)) = b
            .bag(i as isize)
            .iter()
            .find_map(|&u| next.iter().find(|&&v| !g.adjacent(u, v)).map(|&v| (u, v)))
        else {
            continue;
        };
        let mut cycle = vec![a, u];
        cycle.extend((1..l - 1).map(|k| dom.dominant((i + l - k) % l)));
        cycle.push(v);
        let w = Witness::EvenHole(Hole(cycle));
        if w.verify(g) {
            return Some(w);
        }
    }
    None
}

/// A path between two different outside classes through buoy-null
/// vertices closes, with one of the two arcs around the buoy, into an
/// even hole.
fn leftover_even_hole(
    g: &Graph,
    b: &Buoy,
    dom: &DominationOrder,
    class_of: &[usize],
    far: &[usize],
) -> Option<Witness> {
    let n = g.n();
    let l = b.len();
    let mut is_far = vec![false; n];
    for &r in far {
        is_far[r] = true;
    }
    // Multi-source BFS from every classified vertex through far vertices.
    let mut source = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for v in 0..n {
        if class_of[v] != usize::MAX {
            source[v] = v;
            queue.push_back(v);
        }
    }
    let mut meet = None;
    'bfs: while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if class_of[w] == usize::MAX && !is_far[w] {
                continue;
            }
            if source[w] == usize::MAX {
                source[w] = source[u];
                parent[w] = u;
                queue.push_back(w);
            } else if class_of[source[w]] != class_of[source[u]] {
                meet = Some((u, w));
                break 'bfs;
            }
        }
    }
    let (u, w) = meet?;
    let chain = |mut v: usize| {
        let mut out = vec![v];
        while parent[v] != usize::MAX {
            v = parent[v];
            out.push(v);
        }
        out
    };
    let mut walk = chain(u);
    walk.reverse();
    walk.extend(chain(w));
    let path = shortcut(g, &walk);
    let (a, a2) = (path[0], *path.last().unwrap());
    let (i, j) = (class_of[a], class_of[a2]);
    // Around the buoy from bag j+1 forward to bag i, or from bag j
    // backward to bag i+1.
    let forward: Vec<usize> = (0..(i + l - j) % l)
        .map(|k| dom.dominant((j + 1 + k) % l))
        .collect();
    let backward: Vec<usize> = (0..(j + l - i) % l)
        .map(|k| dom.dominant((j + l - k) % l))
        .collect();
    for arc in [forward, backward] {
        if (path.len() + arc.len()).is_multiple_of(2) {
            let mut cycle = path.clone();
            cycle.extend(arc);
            let wit = Witness::EvenHole(Hole(cycle));
            if wit.verify(g) {
                return Some(wit);
            }
        }
    }
    None
}

/// Induced subpath with the same endpoints.
fn shortcut(g: &Graph, walk: &[usize]) -> Vec<usize> {
    let mut out = vec![walk[0]];
    let mut idx = 0;
    while idx + 1 < walk.len() {
        let cur = walk[idx];
        let next = (idx + 1..walk.len())
            .rev()
            .find(|&k| g.adjacent(cur, walk[k]))
            .expect("walk is connected");
        out.push(walk[next]);
        idx = next;
    }
    out
}

/// Checks that no hole of the atom has a vertex outside it with exactly
/// one neighbor on the hole, and partitions the outside neighbors.
pub fn straddling_pan_check(
    g: &Graph,
    atom: &[usize],
    cert: &AtomCertificate,
) -> Result<Step<Neighborhood>, RecognizeError> {
    let AtomCertificate::Structured { bags, orders, .. } = cert else {
        return Ok(Step::Done(Neighborhood::default()));
    };
    let b = Buoy::new(g.n(), bags.clone()).map_err(|e| RecognizeError::Internal(e.to_string()))?;
    let dom = DominationOrder {
        orders: orders.clone(),
    };
    let mut in_atom = vec![false; g.n()];
    for &v in atom {
        in_atom[v] = true;
    }
    let mut seen = vec![false; g.n()];
    let mut outside = Vec::new();
    for &v in atom {
        for &x in g.neighbors(v) {
            if !in_atom[x] && !seen[x] {
                seen[x] = true;
                outside.push(x);
            }
        }
    }
    outside.sort_unstable();
    let mut out = Neighborhood {
        classes: vec![Vec::new(); b.len()],
        null: Vec::new(),
    };
    for x in outside {
        if !g.neighbors(x).iter().any(|&u| b.contains(u)) {
            out.null.push(x);
            continue;
        }
        match classify_outside(g, &b, &dom, x)? {
            Step::Found(w) => return Ok(Step::Found(w)),
            Step::Done(OutsideType::Type2(i)) => out.classes[i].push(x),
            Step::Done(t) => {
                return Err(RecognizeError::Internal(format!(
                    "outside vertex {x} of a maximal atom classified {t:?}"
                )))
            }
        }
    }
    if let Some(w) = loose_pair_hole(g, &b, &dom, &out.classes) {
        return Ok(Step::Found(w));
    }
    Ok(Step::Done(out))
}

struct Job {
    component: usize,
    leaf: Vec<usize>,
}

/// Decides whether `g` is (pan, even hole)-free, with atoms tested on the
/// rayon pool when the `parallel` feature is on.
pub fn recognize(g: &Graph) -> Result<Verdict, RecognizeError> {
    recognize_impl(g, true)
}

/// Same as [`recognize`] on the calling thread only.
pub fn recognize_sequential(g: &Graph) -> Result<Verdict, RecognizeError> {
    recognize_impl(g, false)
}

/// Recognizes every graph of a batch, one graph per task.
pub fn recognize_batch(graphs: &[Graph]) -> Vec<Result<Verdict, RecognizeError>> {
    par::map(graphs, recognize_sequential)
}

pub fn recognize_batch_sequential(graphs: &[Graph]) -> Vec<Result<Verdict, RecognizeError>> {
    par::map_sequential(graphs, recognize_sequential)
}

fn recognize_impl(g: &Graph, parallel: bool) -> Result<Verdict, RecognizeError> {
    let comps = g.components();
    let mut subgraphs = Vec::with_capacity(comps.len());
    let mut trees = Vec::with_capacity(comps.len());
    let mut jobs = Vec::new();
    for (c, comp) in comps.iter().enumerate() {
        let (h, map) = g.induced_subgraph(comp);
        let tree = decompose(&h)?;
        for leaf in tree.leaves() {
            jobs.push(Job {
                component: c,
                leaf: leaf.to_vec(),
            });
        }
        trees.push(tree);
        subgraphs.push((h, map));
    }
    let run = |job: &Job| -> Result<Step<(AtomCertificate, Neighborhood)>, RecognizeError> {
        let (h, _) = &subgraphs[job.component];
        let (atom, atom_map) = h.induced_subgraph(&job.leaf);
        let cert = match test_atom(&atom)? {
            Step::Found(w) => return Ok(Step::Found(w.relabel(&atom_map))),
            Step::Done(c) => c.relabel(&atom_map),
        };
        Ok(match straddling_pan_check(h, &job.leaf, &cert)? {
            Step::Found(w) => Step::Found(w),
            Step::Done(nb) => Step::Done((cert, nb)),
        })
    };
    let results = if parallel {
        par::map(&jobs, run)
    } else {
        par::map_sequential(&jobs, run)
    };
    let mut atoms = Vec::with_capacity(jobs.len());
    for (job, res) in jobs.iter().zip(results) {
        let map = &subgraphs[job.component].1;
        match res? {
            Step::Found(w) => return Ok(Verdict::Forbidden(w.relabel(map))),
            Step::Done((cert, nb)) => atoms.push(AtomEntry {
                vertices: job.leaf.iter().map(|&v| map[v]).collect(),
                certificate: cert.relabel(map),
                neighborhood: nb.relabel(map),
            }),
        }
    }
    let components = trees
        .iter()
        .zip(&subgraphs)
        .map(|(t, (_, map))| t.relabel(map))
        .collect();
    Ok(Verdict::Free(CertificateTree {
        n: g.n(),
        components,
        atoms,
    }))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("certificate is for {0} vertices, graph has {1}")]
    Order(usize, usize),
    #[error("component trees do not partition the vertices into components")]
    Components,
    #[error("malformed decomposition tree: {0}")]
    Tree(String),
    #[error("component with {vertices} vertices has {atoms} atoms")]
    TooManyAtoms { vertices: usize, atoms: usize },
    #[error("atom {0}: {1}")]
    Atom(usize, String),
}

/// True iff `cert` certifies that `g` is (pan, even hole)-free.
pub fn verify_certificate(g: &Graph, cert: &CertificateTree) -> bool {
    check_certificate(g, cert).is_ok()
}

/// Checks a certificate against the graph using adjacency queries only.
pub fn check_certificate(g: &Graph, cert: &CertificateTree) -> Result<(), CertificateError> {
    let n = g.n();
    if cert.n != n {
        return Err(CertificateError::Order(cert.n, n));
    }
    let mut comp_of = vec![usize::MAX; n];
    let mut leaf_sets: Vec<Vec<usize>> = Vec::new();
    for (c, tree) in cert.components.iter().enumerate() {
        let vs = tree_vertices(tree)?;
        for &v in &vs {
            if v >= n || comp_of[v] != usize::MAX {
                return Err(CertificateError::Components);
            }
            comp_of[v] = c;
        }
        if !connected(g, &vs) {
            return Err(CertificateError::Components);
        }
        check_tree(g, tree)?;
        let leaves = tree_leaves(tree);
        if leaves.len() > 1.max(vs.len().saturating_sub(1)) {
            return Err(CertificateError::TooManyAtoms {
                vertices: vs.len(),
                atoms: leaves.len(),
            });
        }
        leaf_sets.extend(leaves);
    }
    if comp_of.contains(&usize::MAX) {
        return Err(CertificateError::Components);
    }
    for (u, v) in g.edges() {
        if comp_of[u] != comp_of[v] {
            return Err(CertificateError::Components);
        }
    }
    if leaf_sets.len() != cert.atoms.len() {
        return Err(CertificateError::Tree(
            "leaf count differs from atom count".into(),
        ));
    }
    for (k, (leaf, entry)) in leaf_sets.iter().zip(&cert.atoms).enumerate() {
        let mut vs = entry.vertices.clone();
        vs.sort_unstable();
        if &vs != leaf {
            return Err(CertificateError::Atom(
                k,
                "vertex set differs from its leaf".into(),
            ));
        }
        check_atom(g, leaf, entry).map_err(|e| CertificateError::Atom(k, e))?;
    }
    Ok(())
}

fn tree_leaves(tree: &DecompositionTree) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack = vec![tree.root];
    while let Some(id) = stack.pop() {
        match &tree.nodes[id] {
            TreeNode::Leaf { vertices } => {
                let mut v = vertices.clone();
                v.sort_unstable();
                out.push(v);
            }
            TreeNode::Split { left, right, .. } => {
                stack.push(*right);
                stack.push(*left);
            }
        }
    }
    out
}

fn tree_vertices(tree: &DecompositionTree) -> Result<Vec<usize>, CertificateError> {
    if tree.root >= tree.nodes.len() {
        return Err(CertificateError::Tree("root out of range".into()));
    }
    let mut out: Vec<usize> = tree_leaves_checked(tree, tree.root)?
        .into_iter()
        .flatten()
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Leaves below `id`, rejecting cycles and shared children.
fn tree_leaves_checked(
    tree: &DecompositionTree,
    id: usize,
) -> Result<Vec<Vec<usize>>, CertificateError> {
    let mut visited = vec![false; tree.nodes.len()];
    let mut out = Vec::new();
    let mut stack = vec![id];
    while let Some(id) = stack.pop() {
        if id >= tree.nodes.len() || visited[id] {
            return Err(CertificateError::Tree("node reused or out of range".into()));
        }
        visited[id] = true;
        match &tree.nodes[id] {
            TreeNode::Leaf { vertices } => out.push(vertices.clone()),
            TreeNode::Split { left, right, .. } => {
                stack.push(*left);
                stack.push(*right);
            }
        }
    }
    Ok(out)
}

fn sorted_union(parts: Vec<Vec<usize>>) -> Vec<usize> {
    let mut out: Vec<usize> = parts.into_iter().flatten().collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn check_tree(g: &Graph, tree: &DecompositionTree) -> Result<(), CertificateError> {
    let err = |s: &str| Err(CertificateError::Tree(s.into()));
    for node in &tree.nodes {
        let TreeNode::Split {
            cutset,
            left,
            right,
        } = node
        else {
            continue;
        };
        let v1 = sorted_union(tree_leaves_checked(tree, *left)?);
        let v2 = sorted_union(tree_leaves_checked(tree, *right)?);
        let mut s = cutset.clone();
        s.sort_unstable();
        let inter: Vec<usize> = v1
            .iter()
            .copied()
            .filter(|v| v2.binary_search(v).is_ok())
            .collect();
        if inter != s {
            return err("cutset is not the intersection of its sides");
        }
        for (a, &x) in s.iter().enumerate() {
            if s[a + 1..].iter().any(|&y| !g.adjacent(x, y)) {
                return err("cutset is not a clique");
            }
        }
        if v1.len() <= s.len() || v2.len() <= s.len() {
            return err("a side of a split adds nothing to the cutset");
        }
        for &x in &v1 {
            if s.binary_search(&x).is_ok() {
                continue;
            }
            for &y in g.neighbors(x) {
                if v1.binary_search(&y).is_err() && v2.binary_search(&y).is_ok() {
                    return err("edge crosses the cutset");
                }
            }
        }
    }
    Ok(())
}

fn connected(g: &Graph, vs: &[usize]) -> bool {
    if vs.is_empty() {
        return false;
    }
    let mut seen = vec![false; g.n()];
    seen[vs[0]] = true;
    let mut stack = vec![vs[0]];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if !seen[w] && vs.binary_search(&w).is_ok() {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == vs.len()
}

fn check_atom(g: &Graph, leaf: &[usize], entry: &AtomEntry) -> Result<(), String> {
    let is_clique = |s: &[usize]| {
        s.iter()
            .enumerate()
            .all(|(a, &x)| s[a + 1..].iter().all(|&y| g.adjacent(x, y)))
    };
    let (bags, universal, orders, pair_clique) = match &entry.certificate {
        AtomCertificate::Clique(c) => {
            let mut c = c.clone();
            c.sort_unstable();
            if c != leaf {
                return Err("clique certificate does not cover the atom".into());
            }
            if !is_clique(&c) {
                return Err("clique certificate is not a clique".into());
            }
            return Ok(());
        }
        AtomCertificate::Structured {
            bags,
            universal,
            orders,
            pair_clique,
        } => (bags, universal, orders, pair_clique),
    };
    let l = bags.len();
    if l < 5 || l % 2 == 0 {
        return Err(format!("buoy has {l} bags"));
    }
    let mut bag_of = std::collections::HashMap::new();
    for (i, bag) in bags.iter().enumerate() {
        if bag.is_empty() {
            return Err(format!("bag {i} is empty"));
        }
        for &v in bag {
            if bag_of.insert(v, i).is_some() {
                return Err(format!("vertex {v} in two bags"));
            }
        }
        if !is_clique(bag) {
            return Err(format!("bag {i} is not a clique"));
        }
    }
    let mut cover: Vec<usize> = bags.iter().flatten().chain(universal).copied().collect();
    cover.sort_unstable();
    let len_before = cover.len();
    cover.dedup();
    if cover.len() != len_before || cover != leaf {
        return Err("bags and universal clique do not partition the atom".into());
    }
    for &k in universal {
        if leaf.iter().any(|&v| v != k && !g.adjacent(k, v)) {
            return Err(format!("vertex {k} is not universal in the atom"));
        }
    }
    let near = |v: usize, j: usize| -> Vec<usize> {
        g.neighbors(v)
            .iter()
            .copied()
            .filter(|u| bag_of.get(u) == Some(&j))
            .collect()
    };
    for (i, bag) in bags.iter().enumerate() {
        for &v in bag {
            if near(v, (i + 1) % l).is_empty() || near(v, (i + l - 1) % l).is_empty() {
                return Err(format!("vertex {v} misses a neighboring bag"));
            }
            for &u in g.neighbors(v) {
                if let Some(&j) = bag_of.get(&u) {
                    let d = (i + l - j) % l;
                    if d > 1 && d < l - 1 {
                        return Err(format!("edge {v}-{u} skips a bag"));
                    }
                }
            }
        }
    }
    if orders.len() != l || pair_clique.len() != l {
        return Err("orders or clique flags have the wrong length".into());
    }
    for (i, order) in orders.iter().enumerate() {
        let mut o = order.clone();
        o.sort_unstable();
        if o != bags[i] {
            return Err(format!("order {i} is not a permutation of its bag"));
        }
        for w in order.windows(2) {
            for j in [(i + 1) % l, (i + l - 1) % l] {
                let hi = near(w[1], j);
                if near(w[0], j).iter().any(|u| !hi.contains(u)) {
                    return Err(format!("order {i}: {} does not dominate {}", w[1], w[0]));
                }
            }
        }
    }
    for i in 0..l {
        let next = &bags[(i + 1) % l];
        let complete = bags[i]
            .iter()
            .all(|&v| next.iter().all(|&u| g.adjacent(u, v)));
        if complete != pair_clique[i] {
            return Err(format!("clique flag {i} is wrong"));
        }
    }
    for i in 0..l {
        if !pair_clique[(i + l - 1) % l] && !pair_clique[i] {
            return Err(format!("bag {i} has non-clique unions on both sides"));
        }
    }
    // Outside neighbors: classes see exactly two consecutive bags, the null
    // class sees no bag.
    let nb = &entry.neighborhood;
    if nb.classes.len() != l {
        return Err("neighborhood class count differs from bag count".into());
    }
    let mut listed: Vec<usize> = nb
        .classes
        .iter()
        .flatten()
        .chain(&nb.null)
        .copied()
        .collect();
    listed.sort_unstable();
    let listed_len = listed.len();
    listed.dedup();
    if listed.len() != listed_len {
        return Err("a neighbor appears in two classes".into());
    }
    let mut actual: Vec<usize> = leaf
        .iter()
        .flat_map(|&v| g.neighbors(v).iter().copied())
        .filter(|u| leaf.binary_search(u).is_err())
        .collect();
    actual.sort_unstable();
    actual.dedup();
    if actual != listed {
        return Err("neighborhood partition does not match the outside neighbors".into());
    }
    for (i, class) in nb.classes.iter().enumerate() {
        let want: usize = bags[i].len() + bags[(i + 1) % l].len();
        for &x in class {
            let seen: Vec<usize> = g
                .neighbors(x)
                .iter()
                .copied()
                .filter(|u| bag_of.contains_key(u))
                .collect();
            let ok = seen.len() == want
                && seen.iter().all(|u| {
                    let j = bag_of[u];
                    j == i || j == (i + 1) % l
                });
            if !ok {
                return Err(format!(
                    "neighbor {x} is not exactly complete to bags {i} and {}",
                    (i + 1) % l
                ));
            }
            if !pair_clique[i] {
                return Err(format!(
                    "neighbor {x} is complete to the non-clique pair at bag {i}"
                ));
            }
        }
    }
    for &x in &nb.null {
        if g.neighbors(x).iter().any(|u| bag_of.contains_key(u)) {
            return Err(format!("null neighbor {x} sees the buoy"));
        }
    }
    Ok(())
}
