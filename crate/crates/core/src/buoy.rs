//! Buoys: validation, domination orders, skeletons, outside-vertex
//! classification and ENLARGE. Every failed structural check produces a
//! pan or an even hole of the host graph.

use thiserror::Error;

use crate::graph::{Graph, Hole, Pan, Witness};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuoyViolation {
    #[error("a buoy needs at least five bags, got {len}")]
    TooShort { len: usize },
    #[error("bag {bag} is empty")]
    EmptyBag { bag: usize },
    #[error("vertex {vertex} is out of range")]
    OutOfRange { vertex: usize },
    #[error("vertex {vertex} appears in two bags")]
    Overlap { vertex: usize },
    #[error("bag {bag} is not a clique: {u} and {v} are not adjacent")]
    NotClique { bag: usize, u: usize, v: usize },
    #[error("vertex {vertex} has no neighbor in bag {bag}")]
    MissingNeighbor { vertex: usize, bag: usize },
    #[error("edge {u}-{v} joins non-consecutive bags")]
    StrayEdge { u: usize, v: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuoyError {
    #[error("operation needs an odd number of bags, got {0}")]
    EvenLength(usize),
    #[error("path does not run through consecutive bags along edges")]
    InvalidPath,
    #[error("vertices {0} and {1} are comparable")]
    Comparable(usize, usize),
    #[error("no domination violation between {0} and {1}")]
    NoViolation(usize, usize),
    #[error("vertex {0} is not outside the buoy")]
    NotOutside(usize),
    #[error("vertex {0} has no neighbor in the buoy")]
    NoBuoyNeighbor(usize),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// Result of a check that either passes with a value or exhibits a
/// forbidden subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step<T> {
    Done(T),
    Found(Witness),
}

/// Cyclic sequence of disjoint bags inside a host graph on `n` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Buoy {
    bags: Vec<Vec<usize>>,
    bag_of: Vec<usize>,
}

impl Buoy {
    pub fn new(n: usize, mut bags: Vec<Vec<usize>>) -> Result<Self, BuoyViolation> {
        let mut bag_of = vec![NONE; n];
        for (i, bag) in bags.iter_mut().enumerate() {
            bag.sort_unstable();
            for &v in bag.iter() {
                if v >= n {
                    return Err(BuoyViolation::OutOfRange { vertex: v });
                }
                if bag_of[v] != NONE {
                    return Err(BuoyViolation::Overlap { vertex: v });
                }
                bag_of[v] = i;
            }
        }
        Ok(Buoy { bags, bag_of })
    }

    /// Singleton bags along a hole.
    pub fn from_hole(n: usize, hole: &Hole) -> Self {
        Buoy::new(n, hole.0.iter().map(|&v| vec![v]).collect()).expect("hole vertices are distinct")
    }

    /// Number of bags.
    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn host_order(&self) -> usize {
        self.bag_of.len()
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn index(&self, i: isize) -> usize {
        i.rem_euclid(self.bags.len() as isize) as usize
    }

    /// Bag `i` with the index taken cyclically.
    pub fn bag(&self, i: isize) -> &[usize] {
        &self.bags[self.index(i)]
    }

    pub fn bag_of(&self, v: usize) -> Option<usize> {
        self.bag_of.get(v).copied().filter(|&i| i != NONE)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bag_of(v).is_some()
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.bags.iter().flatten().copied().collect();
        vs.sort_unstable();
        vs
    }

    pub fn vertex_count(&self) -> usize {
        self.bags.iter().map(Vec::len).sum()
    }

    /// Same buoy traversed the other way: bag `k` becomes bag `-k`.
    pub fn reversed(&self) -> Buoy {
        let l = self.len();
        let bags = (0..l).map(|k| self.bags[(l - k) % l].clone()).collect();
        Buoy::new(self.host_order(), bags).expect("bags stay disjoint")
    }

    /// Copy with `v` added to bag `i`.
    pub fn with_vertex(&self, v: usize, i: usize) -> Buoy {
        let mut out = self.clone();
        let bag = &mut out.bags[i];
        let pos = bag.binary_search(&v).unwrap_or_else(|p| p);
        bag.insert(pos, v);
        out.bag_of[v] = i;
        out
    }

    /// Neighbors of `v` inside bag `j`.
    pub fn neighbors_in<'a>(
        &'a self,
        g: &'a Graph,
        v: usize,
        j: isize,
    ) -> impl Iterator<Item = usize> + 'a {
        let j = self.index(j);
        g.neighbors(v)
            .iter()
            .copied()
            .filter(move |&u| self.bag_of[u] == j)
    }

    fn require_odd(&self) -> Result<(), BuoyError> {
        if self.len().is_multiple_of(2) {
            Err(BuoyError::EvenLength(self.len()))
        } else {
            Ok(())
        }
    }
}

pub fn validate_buoy(g: &Graph, b: &Buoy) -> Result<(), BuoyViolation> {
    let l = b.len();
    if l < 5 {
        return Err(BuoyViolation::TooShort { len: l });
    }
    if b.host_order() != g.n() {
        return Err(BuoyViolation::OutOfRange {
            vertex: b.host_order().max(g.n()) - 1,
        });
    }
    for (i, bag) in b.bags.iter().enumerate() {
        if bag.is_empty() {
            return Err(BuoyViolation::EmptyBag { bag: i });
        }
    }
    for (i, bag) in b.bags.iter().enumerate() {
        for (a, &u) in bag.iter().enumerate() {
            if let Some(&v) = bag[a + 1..].iter().find(|&&v| !g.adjacent(u, v)) {
                return Err(BuoyViolation::NotClique { bag: i, u, v });
            }
        }
    }
    for (i, bag) in b.bags.iter().enumerate() {
        for &v in bag {
            for side in [1isize, -1] {
                let j = b.index(i as isize + side);
                if b.neighbors_in(g, v, j as isize).next().is_none() {
                    return Err(BuoyViolation::MissingNeighbor { vertex: v, bag: j });
                }
            }
            for &u in g.neighbors(v) {
                if let Some(j) = b.bag_of(u) {
                    let d = (i + l - j) % l;
                    if d > 1 && d < l - 1 {
                        return Err(BuoyViolation::StrayEdge {
                            u: v.min(u),
                            v: v.max(u),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Per-bag orders by neighborhood inclusion inside the buoy; the last
/// vertex of each order is dominant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationOrder {
    pub orders: Vec<Vec<usize>>,
}

impl DominationOrder {
    pub fn dominant(&self, i: usize) -> usize {
        *self.orders[i].last().expect("bags are non-empty")
    }

    pub fn minimum(&self, i: usize) -> usize {
        self.orders[i][0]
    }

    /// Orders matching [`Buoy::reversed`].
    pub fn reversed(&self) -> DominationOrder {
        let l = self.orders.len();
        DominationOrder {
            orders: (0..l).map(|k| self.orders[(l - k) % l].clone()).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IncomparablePair {
    pub x: usize,
    pub y: usize,
    pub bag: usize,
}

/// Sorts each bag by degree into the neighboring bags and checks that
/// consecutive neighborhoods are nested.
pub fn domination_orders(g: &Graph, b: &Buoy) -> Result<DominationOrder, IncomparablePair> {
    let mut mark = vec![NONE; g.n()];
    let mut orders = Vec::with_capacity(b.len());
    for (i, bag) in b.bags.iter().enumerate() {
        let side = |v: usize| {
            b.neighbors_in(g, v, i as isize - 1)
                .chain(b.neighbors_in(g, v, i as isize + 1))
        };
        let mut order = bag.clone();
        order.sort_by_key(|&v| (side(v).count(), v));
        for w in order.windows(2) {
            let (u, v) = (w[0], w[1]);
            for x in side(v) {
                mark[x] = v;
            }
            if side(u).any(|x| mark[x] != v) {
                return Err(IncomparablePair { x: u, y: v, bag: i });
            }
        }
        orders.push(order);
    }
    Ok(DominationOrder { orders })
}

/// A hole with one vertex per bag; `by_bag[i]` lies in bag `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    pub by_bag: Vec<usize>,
}

impl Skeleton {
    pub fn hole(&self) -> Hole {
        Hole(self.by_bag.clone())
    }
}

fn checked(g: &Graph, w: Witness) -> Result<Witness, BuoyError> {
    if w.verify(g) {
        Ok(w)
    } else {
        Err(BuoyError::Internal(format!(
            "constructed witness does not verify: {w:?}"
        )))
    }
}

fn pan(hole: Vec<usize>, handle: usize, attach: usize) -> Witness {
    Witness::Pan(Pan {
        hole: Hole(hole),
        handle,
        attach,
    })
}

/// Extends `path` (one vertex per consecutive bag, increasing indices)
/// to a skeleton containing its first `min(k, l-1)` vertices, or finds an
/// even hole.
pub fn skeleton_through_path(
    g: &Graph,
    b: &Buoy,
    path: &[usize],
) -> Result<Step<Skeleton>, BuoyError> {
    b.require_odd()?;
    let l = b.len();
    let Some(&first) = path.first() else {
        return Err(BuoyError::InvalidPath);
    };
    let start = b.bag_of(first).ok_or(BuoyError::InvalidPath)?;
    if path.len() > l {
        return Err(BuoyError::InvalidPath);
    }
    for (j, &v) in path.iter().enumerate() {
        if b.bag_of(v) != Some((start + j) % l) || (j > 0 && !g.adjacent(path[j - 1], v)) {
            return Err(BuoyError::InvalidPath);
        }
    }
    let mut seq = path.to_vec();
    while seq.len() < l {
        let last = *seq.last().unwrap();
        let next = b
            .neighbors_in(g, last, (start + seq.len()) as isize)
            .next()
            .ok_or(BuoyError::InvalidPath)?;
        seq.push(next);
    }
    let to_skeleton = |seq: Vec<usize>| {
        let mut by_bag = vec![0; l];
        for (j, v) in seq.into_iter().enumerate() {
            by_bag[(start + j) % l] = v;
        }
        Skeleton { by_bag }
    };
    if g.adjacent(seq[0], seq[l - 1]) {
        return Ok(Step::Done(to_skeleton(seq)));
    }
    let y = b
        .neighbors_in(g, seq[0], start as isize - 1)
        .next()
        .ok_or(BuoyError::InvalidPath)?;
    if !g.adjacent(y, seq[l - 2]) {
        let mut cycle = seq;
        cycle.push(y);
        return checked(g, Witness::EvenHole(Hole(cycle))).map(Step::Found);
    }
    seq[l - 1] = y;
    Ok(Step::Done(to_skeleton(seq)))
}

/// Skeleton through a path running towards decreasing bag indices.
fn skeleton_backwards(g: &Graph, b: &Buoy, path: &[usize]) -> Result<Step<Skeleton>, BuoyError> {
    let l = b.len();
    Ok(match skeleton_through_path(g, &b.reversed(), path)? {
        Step::Done(s) => Step::Done(Skeleton {
            by_bag: (0..l).map(|i| s.by_bag[(l - i) % l]).collect(),
        }),
        found => found,
    })
}

/// Dominant vertices everywhere except along `path`, which starts in bag
/// `start` and runs forward. Dominance makes the result a hole.
fn dominant_cycle(b: &Buoy, dom: &DominationOrder, start: usize, path: &[usize]) -> Vec<usize> {
    let l = b.len();
    let mut out = path.to_vec();
    for k in path.len()..l {
        out.push(dom.dominant((start + k) % l));
    }
    out
}

/// Even hole from two incomparable vertices of one bag.
pub fn incomparable_even_hole(
    g: &Graph,
    b: &Buoy,
    x: usize,
    y: usize,
    i: usize,
) -> Result<Witness, BuoyError> {
    b.require_odd()?;
    let l = b.len();
    let private = |p: usize, q: usize, side: isize| {
        b.neighbors_in(g, p, i as isize + side)
            .find(|&c| !g.adjacent(q, c))
    };
    let px = [private(x, y, 1), private(x, y, -1)];
    let py = [private(y, x, 1), private(y, x, -1)];
    for s in 0..2 {
        if let (Some(a), Some(a2)) = (px[s], py[s]) {
            return checked(g, Witness::EvenHole(Hole(vec![x, a, a2, y])));
        }
    }
    let (x, y, a, bv) = match (px, py) {
        ([Some(a), _], [_, Some(bv)]) => (x, y, a, bv),
        ([_, Some(bv)], [Some(a), _]) => (y, x, a, bv),
        _ => return Err(BuoyError::Comparable(x, y)),
    };
    let s1 = match skeleton_through_path(g, b, &[x, a])? {
        Step::Done(s) => s,
        Step::Found(w) => return Ok(w),
    };
    let s2 = match skeleton_backwards(g, b, &[y, bv])? {
        Step::Done(s) => s,
        Step::Found(w) => return Ok(w),
    };
    let at = |s: &Skeleton, k: usize| s.by_bag[(i + k) % l];
    for j in 1..l - 1 {
        if g.adjacent(at(&s1, j), at(&s2, j + 1)) {
            let mut cycle = vec![y, x];
            cycle.extend((1..=j).map(|k| at(&s1, k)));
            cycle.extend((j + 1..l).map(|k| at(&s2, k)));
            let w = Witness::EvenHole(Hole(cycle));
            if w.verify(g) {
                return Ok(w);
            }
        }
    }
    for j in 1..l - 1 {
        let (aj, bj, bj1, aj1) = (at(&s1, j), at(&s2, j), at(&s2, j + 1), at(&s1, j + 1));
        if !g.adjacent(bj, aj1) {
            let w = Witness::EvenHole(Hole(vec![aj, bj, bj1, aj1]));
            if w.verify(g) {
                return Ok(w);
            }
        }
    }
    let mut cycle = vec![x, at(&s1, 1), at(&s1, 2)];
    cycle.extend((2..l - 1).map(|k| at(&s2, k)));
    cycle.push(at(&s1, l - 1));
    checked(g, Witness::EvenHole(Hole(cycle)))
}

/// `a` sees `c` in bag `i+1` and `d` in bag `i-1`, `bv` sees neither:
/// a skeleton through `d, a, c` plus `bv` is a pan.
pub fn domination_violation_witness(
    g: &Graph,
    b: &Buoy,
    a: usize,
    bv: usize,
    i: usize,
) -> Result<Witness, BuoyError> {
    b.require_odd()?;
    let miss = |side: isize| {
        b.neighbors_in(g, a, i as isize + side)
            .find(|&c| !g.adjacent(bv, c))
    };
    let (Some(c), Some(d)) = (miss(1), miss(-1)) else {
        return Err(BuoyError::NoViolation(a, bv));
    };
    match skeleton_through_path(g, b, &[d, a, c])? {
        Step::Found(w) => Ok(w),
        Step::Done(s) => checked(g, pan(s.by_bag, bv, a)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliquePattern {
    /// `pair_clique[i]`: bags `i` and `i+1` together form a clique.
    pub pair_clique: Vec<bool>,
    /// Indices `i` where neither bags `i-1, i` nor `i, i+1` form a clique.
    pub violations: Vec<usize>,
}

pub fn clique_pattern(g: &Graph, b: &Buoy) -> CliquePattern {
    let l = b.len();
    let pair_clique: Vec<bool> = (0..l)
        .map(|i| {
            let next = b.bag(i as isize + 1).len();
            b.bags[i]
                .iter()
                .all(|&v| b.neighbors_in(g, v, i as isize + 1).count() == next)
        })
        .collect();
    let violations = (0..l)
        .filter(|&i| !pair_clique[(i + l - 1) % l] && !pair_clique[i])
        .collect();
    CliquePattern {
        pair_clique,
        violations,
    }
}

/// A pan inside the buoy exists iff some bag has non-clique unions on
/// both sides.
pub fn pan_in_buoy(
    g: &Graph,
    b: &Buoy,
    dom: &DominationOrder,
) -> Result<Option<Witness>, BuoyError> {
    b.require_odd()?;
    match clique_pattern(g, b).violations.first() {
        None => Ok(None),
        Some(&i) => {
            domination_violation_witness(g, b, dom.dominant(i), dom.minimum(i), i).map(Some)
        }
    }
}

/// Checks a vertex outside an odd hole against the allowed contact
/// patterns: two or three consecutive neighbors, or all of the hole.
pub fn check_vertex_against_hole(
    g: &Graph,
    hole: &[usize],
    x: usize,
) -> Result<Option<Witness>, BuoyError> {
    let l = hole.len();
    if hole.contains(&x) {
        return Err(BuoyError::NotOutside(x));
    }
    let hit: Vec<bool> = hole.iter().map(|&v| g.adjacent(x, v)).collect();
    let pos: Vec<usize> = (0..l).filter(|&p| hit[p]).collect();
    let at = |p: usize| hole[p % l];
    match pos.len() {
        0 => return Err(BuoyError::NoBuoyNeighbor(x)),
        1 => return checked(g, pan(hole.to_vec(), x, hole[pos[0]])).map(Some),
        k if k == l => return Ok(None),
        _ => {}
    }
    // Odd gap between consecutive neighbors closes an even hole.
    for (idx, &p) in pos.iter().enumerate() {
        let q = pos[(idx + 1) % pos.len()];
        let gap = (q + l - p) % l - 1;
        if gap % 2 == 1 && gap < l - 2 {
            let mut cycle = vec![x];
            cycle.extend((p..=p + gap + 1).map(at));
            return checked(g, Witness::EvenHole(Hole(cycle))).map(Some);
        }
    }
    // A neighbor whose hole neighbors both miss x.
    for (idx, &p) in pos.iter().enumerate() {
        if !hit[(p + 1) % l] && !hit[(p + l - 1) % l] {
            let q = pos[(idx + 1) % pos.len()];
            let k = (q + l - p) % l;
            let mut cycle = vec![x];
            cycle.extend((p..=p + k).map(at));
            return checked(g, pan(cycle, at(p + l - 1), at(p))).map(Some);
        }
    }
    let runs = (0..l).filter(|&p| hit[p] && !hit[(p + 1) % l]).count();
    if runs == 1 && pos.len() <= 3 {
        return Ok(None);
    }
    // At least five neighbors and not complete: p ends a run, k starts the
    // next one, and some t strictly between k+1 and p-1 is the handle.
    let p = (0..l)
        .find(|&p| hit[p] && !hit[(p + 1) % l])
        .expect("x misses some hole vertex");
    let k = (1..l)
        .map(|s| (p + s) % l)
        .find(|&q| hit[q])
        .expect("x has two runs of neighbors");
    let span = (p + l - k) % l;
    let t = (2..span.saturating_sub(1))
        .map(|s| (k + s) % l)
        .find(|&q| hit[q]);
    match t {
        Some(t) => {
            let len = (k + l - p) % l;
            let mut cycle = vec![x];
            cycle.extend((p..=p + len).map(at));
            checked(g, pan(cycle, hole[t], x)).map(Some)
        }
        None => Err(BuoyError::Internal(format!(
            "no contact pattern matched for {x}"
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutsideType {
    /// Neighbors exactly in bags `i` and `i+1`, complete to both.
    Type2(usize),
    /// Neighbors in bags `i-1, i, i+1`, complete to bag `i`.
    Type3(usize),
    /// Complete to the buoy.
    Full,
}

/// Classifies an outside vertex with neighbors in the buoy.
pub fn classify_outside(
    g: &Graph,
    b: &Buoy,
    dom: &DominationOrder,
    x: usize,
) -> Result<Step<OutsideType>, BuoyError> {
    b.require_odd()?;
    if b.contains(x) {
        return Err(BuoyError::NotOutside(x));
    }
    let l = b.len();
    let mut first: Vec<usize> = vec![NONE; l];
    let mut count = vec![0usize; l];
    for &u in g.neighbors(x) {
        if let Some(i) = b.bag_of(u) {
            if first[i] == NONE {
                first[i] = u;
            }
            count[i] += 1;
        }
    }
    let labeled = |i: isize| first[b.index(i)] != NONE;
    let labels: Vec<usize> = (0..l).filter(|&i| first[i] != NONE).collect();
    if labels.is_empty() {
        return Err(BuoyError::NoBuoyNeighbor(x));
    }
    let found = |w: Result<Witness, BuoyError>| w.map(Step::Found);

    if labels.len() == l {
        if let Some(i) = (0..l).find(|&i| count[i] < b.bags[i].len()) {
            return found(middle_incomplete(g, b, dom, x, i));
        }
        return Ok(Step::Done(OutsideType::Full));
    }

    // A label with no labeled neighbor bag.
    if let Some(&i) = labels
        .iter()
        .find(|&&i| !labeled(i as isize - 1) && !labeled(i as isize + 1))
    {
        let bi = first[i];
        let prev = b
            .neighbors_in(g, bi, i as isize - 1)
            .next()
            .ok_or(BuoyError::InvalidPath)?;
        let next = b
            .neighbors_in(g, bi, i as isize + 1)
            .next()
            .ok_or(BuoyError::InvalidPath)?;
        let skel = match skeleton_through_path(g, b, &[prev, bi, next])? {
            Step::Found(w) => return Ok(Step::Found(w)),
            Step::Done(s) => s,
        };
        return match check_vertex_against_hole(g, &skel.by_bag, x)? {
            Some(w) => Ok(Step::Found(w)),
            None => Err(BuoyError::Internal(format!(
                "isolated label of {x} left no witness"
            ))),
        };
    }

    // Gaps between consecutive labels: (from, to, bags strictly between).
    let gaps: Vec<(usize, usize, usize)> = labels
        .iter()
        .enumerate()
        .map(|(idx, &i)| {
            let j = labels[(idx + 1) % labels.len()];
            (i, j, (j + l - i) % l - 1)
        })
        .filter(|&(_, _, between)| between > 0)
        .collect();

    // An odd number of unlabeled bags between two labels.
    for &(i, j, between) in &gaps {
        if between % 2 == 1 && between < l - 2 {
            let mut cycle = vec![x, first[i]];
            cycle.extend((1..=between).map(|k| dom.dominant((i + k) % l)));
            cycle.push(first[j]);
            return found(checked(g, Witness::EvenHole(Hole(cycle))));
        }
    }

    let single_run = gaps.len() == 1;
    let run_len = l - gaps.iter().map(|g| g.2).sum::<usize>();
    if !(single_run && run_len <= 3) {
        // Too many labels: walk around the far side of the first gap.
        let (i, j, _) = gaps[0];
        let far: usize = (i + l - j) % l; // bags from j to i going forward
        let mut path = vec![first[(j + 1) % l]];
        path.extend((2..far - 1).map(|k| dom.dominant((j + k) % l)));
        path.push(first[(i + l - 1) % l]);
        let interior = &path[1..path.len() - 1];
        return found(match interior.iter().find(|&&p| g.adjacent(x, p)) {
            Some(&p) => {
                let between = (j + l - i) % l;
                let mut cycle = vec![x, first[i]];
                cycle.extend((1..between).map(|k| dom.dominant((i + k) % l)));
                cycle.push(first[j]);
                checked(g, pan(cycle, p, x))
            }
            None => {
                let mut cycle = vec![x];
                cycle.extend(path);
                checked(g, Witness::EvenHole(Hole(cycle)))
            }
        });
    }

    let (_, j, _) = gaps[0];
    let start = j; // first bag of the run
    if run_len == 3 {
        let mid = (start + 1) % l;
        if count[mid] < b.bags[mid].len() {
            return found(middle_incomplete(g, b, dom, x, mid));
        }
        return Ok(Step::Done(OutsideType::Type3(mid)));
    }
    type_two(g, b, dom, x, start, first[start], first[(start + 1) % l])
}

/// Type-2 vertex on bags `i, i+1`: its neighborhood must be all of both bags.
fn type_two(
    g: &Graph,
    b: &Buoy,
    dom: &DominationOrder,
    x: usize,
    i: usize,
    ai: usize,
    ai1: usize,
) -> Result<Step<OutsideType>, BuoyError> {
    let l = b.len();
    let (ii, i1) = (i as isize, (i + 1) % l);
    if !g.adjacent(ai, ai1) {
        let mut cycle = vec![ai, x, ai1];
        cycle.extend((2..l).map(|k| dom.dominant((i + k) % l)));
        return checked(g, Witness::EvenHole(Hole(cycle))).map(Step::Found);
    }
    let di1 = dom.dominant(i1);
    if !g.adjacent(x, di1) {
        let cycle = dominant_cycle(b, dom, i, &[ai, di1]);
        return checked(g, pan(cycle, x, ai)).map(Step::Found);
    }
    if let Some(&bi) = b.bag(ii).iter().find(|&&v| !g.adjacent(x, v)) {
        // di1, bi, then dominants backwards around the buoy.
        let rb = b.reversed();
        let rd = dom.reversed();
        let cycle = dominant_cycle(&rb, &rd, (l - i1) % l, &[di1, bi]);
        return checked(g, pan(cycle, x, di1)).map(Step::Found);
    }
    let di = dom.dominant(i);
    if let Some(&bi1) = b.bag(ii + 1).iter().find(|&&v| !g.adjacent(x, v)) {
        let cycle = dominant_cycle(b, dom, i, &[di, bi1]);
        return checked(g, pan(cycle, x, di)).map(Step::Found);
    }
    Ok(Step::Done(OutsideType::Type2(i)))
}

/// `x` has neighbors in bags `i-1` and `i+1` but misses a vertex of bag `i`.
fn middle_incomplete(
    g: &Graph,
    b: &Buoy,
    dom: &DominationOrder,
    x: usize,
    i: usize,
) -> Result<Witness, BuoyError> {
    let bi = *b.bags[i]
        .iter()
        .find(|&&v| !g.adjacent(x, v))
        .ok_or(BuoyError::Internal("x is complete".into()))?;
    let common = |side: isize| {
        b.neighbors_in(g, x, i as isize + side)
            .find(|&c| g.adjacent(bi, c))
    };
    match (common(-1), common(1)) {
        (Some(p), Some(q)) => checked(g, Witness::EvenHole(Hole(vec![x, p, bi, q]))),
        (None, None) => {
            let ap = b
                .neighbors_in(g, x, i as isize - 1)
                .next()
                .ok_or(BuoyError::NoBuoyNeighbor(x))?;
            let aq = b
                .neighbors_in(g, x, i as isize + 1)
                .next()
                .ok_or(BuoyError::NoBuoyNeighbor(x))?;
            let bp = b
                .neighbors_in(g, bi, i as isize - 1)
                .next()
                .ok_or(BuoyError::InvalidPath)?;
            let bq = b
                .neighbors_in(g, bi, i as isize + 1)
                .next()
                .ok_or(BuoyError::InvalidPath)?;
            checked(g, Witness::EvenHole(Hole(vec![x, ap, bp, bi, bq, aq])))
        }
        (Some(_), None) => one_sided(g, b, dom, x, i, bi),
        (None, Some(_)) => {
            let l = b.len();
            one_sided(g, &b.reversed(), &dom.reversed(), x, (l - i) % l, bi)
        }
    }
}

/// Case where `x` and `bi` share a neighbor in bag `i-1` only.
fn one_sided(
    g: &Graph,
    b: &Buoy,
    dom: &DominationOrder,
    x: usize,
    i: usize,
    bi: usize,
) -> Result<Witness, BuoyError> {
    let ii = i as isize;
    let a_prev = b
        .neighbors_in(g, x, ii - 1)
        .find(|&c| g.adjacent(bi, c))
        .ok_or(BuoyError::Internal("no common neighbor".into()))?;
    let a_next = b
        .neighbors_in(g, x, ii + 1)
        .next()
        .ok_or(BuoyError::NoBuoyNeighbor(x))?;
    let b_next = b
        .neighbors_in(g, bi, ii + 1)
        .next()
        .ok_or(BuoyError::InvalidPath)?;
    let di = dom.dominant(i);
    if !g.adjacent(x, di) {
        return checked(g, Witness::EvenHole(Hole(vec![x, a_prev, di, a_next])));
    }
    let d_back2 = dom.dominant(b.index(ii - 2));
    let try_hole = |cycle: &[usize]| -> Result<Option<Witness>, BuoyError> {
        if cycle.contains(&x) {
            return Ok(None);
        }
        check_vertex_against_hole(g, cycle, x)
    };
    if !g.adjacent(x, d_back2) {
        let skel = match skeleton_through_path(g, b, &[d_back2, a_prev, bi])? {
            Step::Found(w) => return Ok(w),
            Step::Done(s) => s,
        };
        if let Some(w) = try_hole(&skel.by_bag)? {
            return Ok(w);
        }
        return Err(BuoyError::Internal(
            "skeleton through d, a, b left no witness".into(),
        ));
    }
    let mut skel = match skeleton_through_path(g, b, &[d_back2, a_prev, di, b_next])? {
        Step::Found(w) => return Ok(w),
        Step::Done(s) => s,
    };
    skel.by_bag[b.index(ii + 2)] = dom.dominant(b.index(ii + 2));
    if let Some(w) = try_hole(&skel.by_bag)? {
        return Ok(w);
    }
    skel.by_bag[b.index(ii + 1)] = a_next;
    if let Some(w) = try_hole(&skel.by_bag)? {
        return Ok(w);
    }
    Err(BuoyError::Internal(
        "one-sided middle case left no witness".into(),
    ))
}

/// One enlargement pass: labels are taken against the input buoy, and every
/// type-3 vertex joins its middle bag.
pub fn enlarge(g: &Graph, b: &Buoy) -> Result<Step<Buoy>, BuoyError> {
    b.require_odd()?;
    let dom = match domination_orders(g, b) {
        Ok(d) => d,
        Err(p) => return incomparable_even_hole(g, b, p.x, p.y, p.bag).map(Step::Found),
    };
    let mut touched = vec![false; g.n()];
    let mut outside = Vec::new();
    for v in b.vertices() {
        for &u in g.neighbors(v) {
            if !b.contains(u) && !touched[u] {
                touched[u] = true;
                outside.push(u);
            }
        }
    }
    outside.sort_unstable();
    let mut absorbed = Vec::new();
    for x in outside {
        match classify_outside(g, b, &dom, x)? {
            Step::Found(w) => return Ok(Step::Found(w)),
            Step::Done(OutsideType::Type3(i)) => absorbed.push((x, i)),
            Step::Done(_) => {}
        }
    }
    let mut out = b.clone();
    for &(x, i) in &absorbed {
        out = out.with_vertex(x, i);
    }
    if validate_buoy(g, &out).is_ok() {
        return Ok(Step::Done(out));
    }
    // Two type-3 vertices clash: absorb one at a time so the clash shows up
    // as a witness when the second is classified.
    let mut out = b.clone();
    for (x, _) in absorbed {
        let dom = match domination_orders(g, &out) {
            Ok(d) => d,
            Err(p) => return incomparable_even_hole(g, &out, p.x, p.y, p.bag).map(Step::Found),
        };
        match classify_outside(g, &out, &dom, x)? {
            Step::Found(w) => return Ok(Step::Found(w)),
            Step::Done(OutsideType::Type3(i)) => out = out.with_vertex(x, i),
            Step::Done(_) => {}
        }
    }
    validate_buoy(g, &out)
        .map_err(|v| BuoyError::Internal(format!("enlarged buoy is invalid: {v}")))?;
    Ok(Step::Done(out))
}
