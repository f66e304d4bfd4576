//! Minimum coloring and small-width tree decompositions of free graphs,
//! driven by a verified certificate.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::arcs::{bag_partition, buoy_to_unit_arcs, ArcError, Q};
use crate::buoy::Buoy;
use crate::decomposition::{DecompositionTree, TreeNode};
use crate::graph::Graph;
use crate::par;
use crate::recognizer::{check_certificate, AtomCertificate, CertificateError, CertificateTree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChromaticError {
    #[error("invalid certificate: {0}")]
    Certificate(#[from] CertificateError),
    #[error(transparent)]
    Arcs(#[from] ArcError),
    #[error("cutset vertex {0} is missing from a coloring")]
    Uncolored(usize),
    #[error("cutset colors are not injective")]
    CutsetNotInjective,
    #[error("malformed buoy in certificate: {0}")]
    Buoy(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Coloring {
    /// Colors start at 1.
    pub colors: BTreeMap<usize, usize>,
}

impl Coloring {
    pub fn palette(&self) -> usize {
        self.colors.values().copied().max().unwrap_or(0)
    }

    pub fn color(&self, v: usize) -> Option<usize> {
        self.colors.get(&v).copied()
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        g.edges()
            .all(|(u, v)| match (self.color(u), self.color(v)) {
                (Some(a), Some(b)) => a != b,
                _ => true,
            })
            && self.colors.values().all(|&c| c >= 1)
    }
}

/// Identifies `c2` with `c1` on the clique `cutset`: c2's colors are
/// renamed to match c1 there and filled with the smallest unused colors
/// elsewhere.
pub fn merge_colorings(
    c1: &Coloring,
    c2: &Coloring,
    cutset: &[usize],
) -> Result<Coloring, ChromaticError> {
    let mut rename: HashMap<usize, usize> = HashMap::new();
    for &v in cutset {
        let a = c1.color(v).ok_or(ChromaticError::Uncolored(v))?;
        let b = c2.color(v).ok_or(ChromaticError::Uncolored(v))?;
        if rename.insert(b, a).is_some_and(|prev| prev != a) {
            return Err(ChromaticError::CutsetNotInjective);
        }
    }
    let mut taken: Vec<usize> = rename.values().copied().collect();
    taken.sort_unstable();
    if taken.windows(2).any(|w| w[0] == w[1]) {
        return Err(ChromaticError::CutsetNotInjective);
    }
    let mut out = c1.clone();
    let mut rest: Vec<usize> = c2
        .colors
        .values()
        .copied()
        .filter(|c| !rename.contains_key(c))
        .collect();
    rest.sort_unstable();
    rest.dedup();
    let mut next = 1;
    for c in rest {
        while taken.binary_search(&next).is_ok() {
            next += 1;
        }
        rename.insert(c, next);
        next += 1;
    }
    for (&v, &c) in &c2.colors {
        out.colors.entry(v).or_insert(rename[&c]);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    /// Tree edges between bag indices.
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(1)
            .saturating_sub(1)
    }

    fn path(bags: Vec<Vec<usize>>) -> Self {
        let edges = (1..bags.len()).map(|k| (k - 1, k)).collect();
        TreeDecomposition { bags, edges }
    }

    /// Disjoint union joined by one edge, so the result stays a tree.
    fn attach(&mut self, other: TreeDecomposition, here: usize, there: usize) {
        let off = self.bags.len();
        self.bags.extend(other.bags);
        self.edges
            .extend(other.edges.into_iter().map(|(a, b)| (a + off, b + off)));
        if off > 0 {
            self.edges.push((here, there + off));
        }
    }

    /// DOT rendering with 1-based vertex labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph td {\n  node [shape=box];\n");
        for (k, bag) in self.bags.iter().enumerate() {
            let label: Vec<String> = bag.iter().map(|v| (v + 1).to_string()).collect();
            let _ = writeln!(out, "  b{k} [label=\"{}\"];", label.join(" "));
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "  b{a} -- b{b};");
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TdError {
    #[error("bag graph is not a tree")]
    NotATree,
    #[error("vertex {0} is in no bag")]
    Missing(usize),
    #[error("edge {0}-{1} is in no bag")]
    Uncovered(usize, usize),
    #[error("bags containing vertex {0} are not connected")]
    Disconnected(usize),
    #[error("bag names vertex {0}, out of range")]
    OutOfRange(usize),
}

/// Checks the three tree decomposition axioms and returns the width.
pub fn validate_tree_decomposition(g: &Graph, td: &TreeDecomposition) -> Result<usize, TdError> {
    let k = td.bags.len();
    if k == 0 {
        return if g.n() == 0 {
            Ok(0)
        } else {
            Err(TdError::Missing(0))
        };
    }
    if td.edges.len() != k - 1 {
        return Err(TdError::NotATree);
    }
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in &td.edges {
        if a >= k || b >= k || a == b {
            return Err(TdError::NotATree);
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let reach = |start: usize, keep: &dyn Fn(usize) -> bool| {
        let mut seen = vec![false; k];
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] && keep(y) {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count
    };
    if reach(0, &|_| true) != k {
        return Err(TdError::NotATree);
    }
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    let mut sets = Vec::with_capacity(k);
    for (idx, bag) in td.bags.iter().enumerate() {
        let mut s = bag.clone();
        s.sort_unstable();
        s.dedup();
        for &v in &s {
            if v >= g.n() {
                return Err(TdError::OutOfRange(v));
            }
            holders[v].push(idx);
        }
        sets.push(s);
    }
    for (v, hs) in holders.iter().enumerate() {
        let Some(&first) = hs.first() else {
            return Err(TdError::Missing(v));
        };
        if reach(first, &|b| sets[b].binary_search(&v).is_ok()) != hs.len() {
            return Err(TdError::Disconnected(v));
        }
    }
    for (u, v) in g.edges() {
        if !holders[u]
            .iter()
            .any(|&b| sets[b].binary_search(&v).is_ok())
        {
            return Err(TdError::Uncovered(u, v));
        }
    }
    Ok(td.width())
}

fn buoy_of(g: &Graph, bags: &[Vec<usize>]) -> Result<Buoy, ChromaticError> {
    Buoy::new(g.n(), bags.to_vec()).map_err(|e| ChromaticError::Buoy(e.to_string()))
}

/// Path decomposition of a buoy: the unit-arc model is cut at the point of
/// the smallest bag and unrolled, and that bag joins every node.
pub fn buoy_tree_decomposition(g: &Graph, b: &Buoy) -> Result<TreeDecomposition, ChromaticError> {
    let rep = buoy_to_unit_arcs(g, b)?;
    let l = b.len();
    let small = (0..l)
        .min_by_key(|&i| (b.bag(i as isize).len(), i))
        .expect("buoy has bags");
    let arcs = &rep.arcs;
    let anchor = rep.sectors[small];
    let c = rep.circumference;
    let off = |p: Q| {
        let x = p - anchor;
        x - c * (x / c).floor()
    };
    let mut points: Vec<Q> = arcs
        .values()
        .flat_map(|a| [off(a.start), off(a.end)])
        .collect();
    points.push(Q::from_integer(0));
    points.sort_unstable();
    points.dedup();
    let base: Vec<usize> = b.bag(small as isize).to_vec();
    let bags = points
        .into_iter()
        .map(|p| {
            let mut bag: Vec<usize> = arcs
                .iter()
                .filter(|(_, a)| off(a.start) <= p && p <= off(a.start) + a.length(c))
                .map(|(&v, _)| v)
                .chain(base.iter().copied())
                .collect();
            bag.sort_unstable();
            bag.dedup();
            bag
        })
        .collect();
    Ok(TreeDecomposition::path(bags))
}

/// Clique number of a buoy: the largest union of a class-closed part of
/// one bag and its common neighborhood in the next bag.
pub fn buoy_clique_number(g: &Graph, b: &Buoy) -> Result<usize, ChromaticError> {
    let part = bag_partition(g, b)?;
    let l = b.len();
    let mut best = 0;
    for i in 0..l {
        let classes = &part.classes[i];
        let mut above = 0;
        for j in (0..classes.len()).rev() {
            above += classes[j].len();
            let common = b.neighbors_in(g, classes[j][0], i as isize + 1).count();
            best = best.max(above + common);
        }
        best = best.max(b.bag(i as isize + 1).len());
    }
    Ok(best)
}

/// Clique number of a certified graph, read off the atoms.
pub fn clique_number(g: &Graph, cert: &CertificateTree) -> Result<usize, ChromaticError> {
    let mut best = 0;
    for atom in &cert.atoms {
        best = best.max(match &atom.certificate {
            AtomCertificate::Clique(c) => c.len(),
            AtomCertificate::Structured {
                bags, universal, ..
            } => universal.len() + buoy_clique_number(g, &buoy_of(g, bags)?)?,
        });
    }
    Ok(best)
}

#[derive(Clone, Copy)]
enum Op {
    Introduce(usize),
    Forget(usize),
}

#[derive(Clone, Copy)]
enum Choice {
    Join(usize),
    New,
    Keep,
}

/// Exact coloring over a path decomposition with at most `palette` colors.
/// States are partitions of the current bag into color classes.
fn color_along_path(
    g: &Graph,
    bags: &[Vec<usize>],
    palette: usize,
) -> Option<BTreeMap<usize, usize>> {
    let mut ops = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    for bag in bags.iter().chain(std::iter::once(&Vec::new())) {
        for &v in &cur {
            if bag.binary_search(&v).is_err() {
                ops.push(Op::Forget(v));
            }
        }
        for &v in bag {
            if cur.binary_search(&v).is_err() {
                ops.push(Op::Introduce(v));
            }
        }
        cur = bag.clone();
    }
    type State = Vec<Vec<usize>>;
    let mut layer: Vec<State> = vec![Vec::new()];
    let mut history: Vec<Vec<(usize, Choice)>> = Vec::with_capacity(ops.len());
    for op in &ops {
        let mut index: HashMap<State, usize> = HashMap::new();
        let mut next: Vec<State> = Vec::new();
        let mut back = Vec::new();
        let mut push = |s: State,
                        from: usize,
                        ch: Choice,
                        next: &mut Vec<State>,
                        back: &mut Vec<(usize, Choice)>| {
            if !index.contains_key(&s) {
                index.insert(s.clone(), next.len());
                next.push(s);
                back.push((from, ch));
            }
        };
        for (k, state) in layer.iter().enumerate() {
            match *op {
                Op::Forget(v) => {
                    let mut s: State = state
                        .iter()
                        .map(|blk| blk.iter().copied().filter(|&x| x != v).collect::<Vec<_>>())
                        .filter(|blk| !blk.is_empty())
                        .collect();
                    s.sort();
                    push(s, k, Choice::Keep, &mut next, &mut back);
                }
                Op::Introduce(v) => {
                    for (bi, blk) in state.iter().enumerate() {
                        if blk.iter().all(|&x| !g.adjacent(x, v)) {
                            let mut s = state.clone();
                            let pos = s[bi].binary_search(&v).unwrap_or_else(|p| p);
                            s[bi].insert(pos, v);
                            s.sort();
                            push(s, k, Choice::Join(blk[0]), &mut next, &mut back);
                        }
                    }
                    if state.len() < palette {
                        let mut s = state.clone();
                        s.push(vec![v]);
                        s.sort();
                        push(s, k, Choice::New, &mut next, &mut back);
                    }
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        layer = next;
        history.push(back);
    }
    // Walk back to recover the choices, then replay them with colors.
    let mut choices = vec![Choice::Keep; ops.len()];
    let mut at = 0;
    for (step, back) in history.iter().enumerate().rev() {
        let (from, ch) = back[at];
        choices[step] = ch;
        at = from;
    }
    let mut live: BTreeMap<usize, usize> = BTreeMap::new();
    let mut out = BTreeMap::new();
    for (op, ch) in ops.iter().zip(choices) {
        match (*op, ch) {
            (Op::Forget(v), _) => {
                live.remove(&v);
            }
            (Op::Introduce(v), Choice::Join(rep)) => {
                let c = live[&rep];
                live.insert(v, c);
                out.insert(v, c);
            }
            (Op::Introduce(v), _) => {
                let c = (1..)
                    .find(|c| !live.values().any(|x| x == c))
                    .expect("palette has room");
                live.insert(v, c);
                out.insert(v, c);
            }
        }
    }
    Some(out)
}

/// Minimum coloring of one certified atom: K takes colors 1..=|K| and the
/// buoy is colored exactly above them.
pub fn color_atom(g: &Graph, cert: &AtomCertificate) -> Result<Coloring, ChromaticError> {
    match cert {
        AtomCertificate::Clique(c) => Ok(Coloring {
            colors: c.iter().enumerate().map(|(k, &v)| (v, k + 1)).collect(),
        }),
        AtomCertificate::Structured {
            bags, universal, ..
        } => {
            let b = buoy_of(g, bags)?;
            let td = buoy_tree_decomposition(g, &b)?;
            let mut palette = buoy_clique_number(g, &b)?;
            let colors = loop {
                if let Some(c) = color_along_path(g, &td.bags, palette) {
                    break c;
                }
                palette += 1;
            };
            let k = universal.len();
            let mut out: BTreeMap<usize, usize> = universal
                .iter()
                .enumerate()
                .map(|(i, &v)| (v, i + 1))
                .collect();
            out.extend(colors.into_iter().map(|(v, c)| (v, c + k)));
            Ok(Coloring { colors: out })
        }
    }
}

fn fold_tree<T>(
    tree: &DecompositionTree,
    next_atom: &mut impl Iterator<Item = T>,
    merge: &mut impl FnMut(T, T, &[usize]) -> Result<T, ChromaticError>,
) -> Result<T, ChromaticError> {
    fn go<T>(
        tree: &DecompositionTree,
        id: usize,
        next_atom: &mut impl Iterator<Item = T>,
        merge: &mut impl FnMut(T, T, &[usize]) -> Result<T, ChromaticError>,
    ) -> Result<T, ChromaticError> {
        match &tree.nodes[id] {
            TreeNode::Leaf { .. } => Ok(next_atom.next().expect("one atom per leaf")),
            TreeNode::Split {
                cutset,
                left,
                right,
            } => {
                let a = go(tree, *left, next_atom, merge)?;
                let b = go(tree, *right, next_atom, merge)?;
                merge(a, b, cutset)
            }
        }
    }
    go(tree, tree.root, next_atom, merge)
}

/// Minimum coloring of a certified free graph.
pub fn color_free_graph(g: &Graph, cert: &CertificateTree) -> Result<Coloring, ChromaticError> {
    check_certificate(g, cert)?;
    let parts = par::map(&cert.atoms, |a| color_atom(g, &a.certificate));
    let mut parts = parts
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?
        .into_iter();
    let mut out = Coloring::default();
    for tree in &cert.components {
        let c = fold_tree(tree, &mut parts, &mut |a, b, s| merge_colorings(&a, &b, s))?;
        out = merge_colorings(&out, &c, &[])?;
    }
    Ok(out)
}

fn atom_tree_decomposition(
    g: &Graph,
    cert: &AtomCertificate,
) -> Result<TreeDecomposition, ChromaticError> {
    match cert {
        AtomCertificate::Clique(c) => Ok(TreeDecomposition {
            bags: vec![c.clone()],
            edges: Vec::new(),
        }),
        AtomCertificate::Structured {
            bags, universal, ..
        } => {
            let mut td = buoy_tree_decomposition(g, &buoy_of(g, bags)?)?;
            for bag in &mut td.bags {
                bag.extend(universal);
                bag.sort_unstable();
            }
            Ok(td)
        }
    }
}

/// Tree decomposition of a certified free graph; atoms are glued at bags
/// holding the clique cutset.
pub fn tree_decomposition_free_graph(
    g: &Graph,
    cert: &CertificateTree,
) -> Result<TreeDecomposition, ChromaticError> {
    check_certificate(g, cert)?;
    let parts = par::map(&cert.atoms, |a| atom_tree_decomposition(g, &a.certificate));
    let mut parts = parts
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?
        .into_iter();
    let holding = |td: &TreeDecomposition, s: &[usize]| {
        td.bags
            .iter()
            .position(|bag| s.iter().all(|v| bag.binary_search(v).is_ok()))
            .expect("a clique lies in some bag")
    };
    let mut out = TreeDecomposition::default();
    for tree in &cert.components {
        let td = fold_tree(
            tree,
            &mut parts,
            &mut |mut a: TreeDecomposition, b: TreeDecomposition, s: &[usize]| {
                let (here, there) = (holding(&a, s), holding(&b, s));
                a.attach(b, here, there);
                Ok(a)
            },
        )?;
        out.attach(td, 0, 0);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::oracle::{
        blown_up_c5, blown_up_cycle, brute_chromatic, brute_clique_number, gen_random_buoy, Family,
        GeneratorSpec,
    };
    use crate::recognizer::{recognize, Verdict};

    fn cert(g: &Graph) -> CertificateTree {
        match recognize(g).unwrap() {
            Verdict::Free(c) => c,
            Verdict::Forbidden(w) => panic!("{w:?}"),
        }
    }

    fn palette(g: &Graph) -> usize {
        let c = color_free_graph(g, &cert(g)).unwrap();
        assert!(c.is_proper(g));
        assert_eq!(c.colors.len(), g.n());
        c.palette()
    }

    fn width(g: &Graph) -> usize {
        let td = tree_decomposition_free_graph(g, &cert(g)).unwrap();
        validate_tree_decomposition(g, &td).unwrap()
    }

    fn two_triangles() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn small_colorings() {
        assert_eq!(palette(&cycle(5)), 3);
        assert_eq!(palette(&wheel(5)), 4);
        assert_eq!(brute_chromatic(&wheel(5)).unwrap().0, 4);
        let g = blown_up_c5(2);
        assert_eq!(palette(&g), 5);
        assert_eq!(brute_chromatic(&g).unwrap().0, 5);
        assert_eq!(palette(&two_triangles()), 3);
        assert_eq!(palette(&with_vertex(&cycle(5), &[0, 1])), 3);
        assert_eq!(palette(&Graph::empty(3)), 1);
        assert_eq!(palette(&Graph::empty(0)), 0);
    }

    #[test]
    fn atom_colorings() {
        let k4 = complete(4);
        assert_eq!(
            color_atom(&k4, &AtomCertificate::Clique(vec![0, 1, 2, 3]))
                .unwrap()
                .palette(),
            4
        );
        let c5 = AtomCertificate::Structured {
            bags: (0..5).map(|i| vec![i]).collect(),
            universal: vec![],
            orders: (0..5).map(|i| vec![i]).collect(),
            pair_clique: vec![true; 5],
        };
        assert_eq!(color_atom(&cycle(5), &c5).unwrap().palette(), 3);
        let AtomCertificate::Structured {
            bags,
            orders,
            pair_clique,
            ..
        } = c5
        else {
            unreachable!()
        };
        let w5 = AtomCertificate::Structured {
            bags,
            universal: vec![5],
            orders,
            pair_clique,
        };
        let c = color_atom(&wheel(5), &w5).unwrap();
        assert_eq!(c.palette(), 4);
        assert!(c.is_proper(&wheel(5)));
    }

    #[test]
    fn merging() {
        let a = Coloring {
            colors: [(0, 1), (1, 2), (2, 3)].into(),
        };
        let b = Coloring {
            colors: [(1, 1), (2, 2), (3, 3)].into(),
        };
        let m = merge_colorings(&a, &b, &[1, 2]).unwrap();
        assert_eq!(m.palette(), 3);
        assert!(m.is_proper(&two_triangles()));
        let pendant = Coloring {
            colors: [(0, 2), (5, 1)].into(),
        };
        let c5 = Coloring {
            colors: [(0, 1), (1, 2), (2, 1), (3, 2), (4, 3)].into(),
        };
        let m = merge_colorings(&c5, &pendant, &[0]).unwrap();
        assert_eq!(m.palette(), 3);
        assert!(m.is_proper(&with_vertex(&cycle(5), &[0])));
        let m = merge_colorings(
            &c5,
            &Coloring {
                colors: [(7, 1), (8, 2), (9, 3), (10, 4)].into(),
            },
            &[],
        )
        .unwrap();
        assert_eq!(m.palette(), 4);
        let bad = Coloring {
            colors: [(1, 1), (2, 1)].into(),
        };
        assert_eq!(
            merge_colorings(&a, &bad, &[1, 2]),
            Err(ChromaticError::CutsetNotInjective)
        );
    }

    #[test]
    fn buoy_decompositions() {
        let g = cycle(5);
        let b = Buoy::new(5, (0..5).map(|i| vec![i]).collect()).unwrap();
        let td = buoy_tree_decomposition(&g, &b).unwrap();
        assert_eq!(validate_tree_decomposition(&g, &td).unwrap(), 2);
        for k in 1..=3 {
            let g = blown_up_c5(k);
            let b = Buoy::new(
                g.n(),
                (0..5).map(|i| (i * k..i * k + k).collect()).collect(),
            )
            .unwrap();
            let td = buoy_tree_decomposition(&g, &b).unwrap();
            assert_eq!(validate_tree_decomposition(&g, &td).unwrap(), 3 * k - 1);
            assert_eq!(buoy_clique_number(&g, &b).unwrap(), 2 * k);
        }
        for seed in 0..300u64 {
            let gb = gen_random_buoy(5 + 2 * (seed % 3) as usize, 1 + (seed % 4) as usize, seed);
            if gb.graph.n() > 20 {
                continue;
            }
            let b = Buoy::new(gb.graph.n(), gb.bags.clone()).unwrap();
            let td = buoy_tree_decomposition(&gb.graph, &b).unwrap();
            let w = validate_tree_decomposition(&gb.graph, &td).unwrap();
            let omega = brute_clique_number(&gb.graph).unwrap();
            assert_eq!(buoy_clique_number(&gb.graph, &b).unwrap(), omega);
            assert!(
                2 * (w + 1) <= 3 * omega,
                "seed {seed}: width {w}, omega {omega}"
            );
        }
    }

    #[test]
    fn free_graph_decompositions() {
        assert_eq!(width(&two_triangles()), 2);
        assert_eq!(width(&wheel(5)), 3);
        let g = blown_up_c5(2);
        assert_eq!(width(&g), 5);
        assert_eq!(clique_number(&g, &cert(&g)).unwrap(), 4);
        let g = blown_up_cycle(7, 3);
        assert_eq!(width(&g) + 1, 9);
    }

    #[test]
    fn validator() {
        let g = cycle(6);
        let single = TreeDecomposition {
            bags: vec![(0..6).collect()],
            edges: vec![],
        };
        assert_eq!(validate_tree_decomposition(&g, &single), Ok(5));
        let path = TreeDecomposition {
            bags: vec![vec![0, 1, 2], vec![0, 2, 3, 4, 5]],
            edges: vec![(0, 1)],
        };
        assert_eq!(validate_tree_decomposition(&g, &path), Ok(4));
        let holey = TreeDecomposition {
            bags: vec![vec![0, 1, 2], vec![2, 3, 4, 5]],
            edges: vec![(0, 1)],
        };
        assert_eq!(
            validate_tree_decomposition(&g, &holey),
            Err(TdError::Uncovered(0, 5))
        );
        let split = TreeDecomposition {
            bags: vec![vec![0, 1], vec![1, 2, 3, 4, 5], vec![5, 0]],
            edges: vec![(0, 1), (1, 2)],
        };
        assert_eq!(
            validate_tree_decomposition(&g, &split),
            Err(TdError::Disconnected(0))
        );
    }

    #[test]
    fn generated_free_graphs_match_oracle() {
        for seed in 0..200u64 {
            let spec = GeneratorSpec {
                family: Family::FreeGraph {
                    atoms: 1 + (seed % 4) as usize,
                    max_ell: 7,
                    max_bag: 2,
                    max_universal: 2,
                },
                seed,
            };
            let g = spec.generate();
            if g.n() > 14 {
                continue;
            }
            let c = cert(&g);
            let chi = palette(&g);
            let omega = clique_number(&g, &c).unwrap();
            assert_eq!(chi, brute_chromatic(&g).unwrap().0, "seed {seed}");
            assert_eq!(omega, brute_clique_number(&g).unwrap());
            let w = width(&g);
            assert!(chi <= w + 1);
            assert!(2 * chi <= 3 * omega && 2 * (w + 1) <= 3 * omega);
        }
    }
}
