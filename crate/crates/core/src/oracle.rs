//! Brute-force ground truth and seeded instance generators.
//!
//! Nothing here calls into the recognition pipeline; the oracles only
//! read adjacency from [`Graph`].

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Hole, Pan};

pub const HOLE_LIMIT: usize = 16;
pub const CHROMATIC_LIMIT: usize = 16;
pub const CLIQUE_LIMIT: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{what} oracle is limited to {limit} vertices, got {n}")]
    TooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
    },
}

fn guard(what: &'static str, g: &Graph, limit: usize) -> Result<(), OracleError> {
    if g.n() > limit {
        Err(OracleError::TooLarge {
            what,
            n: g.n(),
            limit,
        })
    } else {
        Ok(())
    }
}

/// Calls `visit` on every hole once (smallest vertex first, second vertex
/// smaller than the last). Stops early when `visit` returns true.
fn for_each_hole(g: &Graph, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    fn extend(
        g: &Graph,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let s = path[0];
        let last = *path.last().unwrap();
        let k = path.len();
        for &w in g.neighbors(last) {
            if w <= s || on_path[w] {
                continue;
            }
            if path[1..k - 1].iter().any(|&p| g.adjacent(p, w)) {
                continue;
            }
            if g.adjacent(s, w) {
                if k >= 3 && path[1] < w {
                    path.push(w);
                    let stop = visit(path);
                    path.pop();
                    if stop {
                        return true;
                    }
                }
                continue;
            }
            on_path[w] = true;
            path.push(w);
            let stop = extend(g, path, on_path, visit);
            path.pop();
            on_path[w] = false;
            if stop {
                return true;
            }
        }
        false
    }
    let mut on_path = vec![false; g.n()];
    for s in 0..g.n() {
        for &a in g.neighbors(s) {
            if a <= s {
                continue;
            }
            let mut path = vec![s, a];
            on_path[s] = true;
            on_path[a] = true;
            let stop = extend(g, &mut path, &mut on_path, &mut visit);
            on_path[s] = false;
            on_path[a] = false;
            if stop {
                return true;
            }
        }
    }
    false
}

/// Every hole of `g`, each listed once.
pub fn brute_holes(g: &Graph) -> Result<Vec<Hole>, OracleError> {
    guard("hole", g, HOLE_LIMIT)?;
    let mut out = Vec::new();
    for_each_hole(g, |h| {
        out.push(Hole(h.to_vec()));
        false
    });
    Ok(out)
}

pub fn brute_even_hole(g: &Graph) -> Result<Option<Hole>, OracleError> {
    guard("even-hole", g, HOLE_LIMIT)?;
    let mut found = None;
    for_each_hole(g, |h| {
        if h.len() % 2 == 0 {
            found = Some(Hole(h.to_vec()));
            true
        } else {
            false
        }
    });
    Ok(found)
}

pub fn brute_pan(g: &Graph) -> Result<Option<Pan>, OracleError> {
    guard("pan", g, HOLE_LIMIT)?;
    let mut found = None;
    let mut on = vec![false; g.n()];
    for_each_hole(g, |h| {
        for &v in h {
            on[v] = true;
        }
        for x in 0..g.n() {
            if on[x] {
                continue;
            }
            let mut hits = g.neighbors(x).iter().filter(|&&u| on[u]);
            if let (Some(&a), None) = (hits.next(), hits.next()) {
                found = Some(Pan {
                    hole: Hole(h.to_vec()),
                    handle: x,
                    attach: a,
                });
                break;
            }
        }
        for &v in h {
            on[v] = false;
        }
        found.is_some()
    });
    Ok(found)
}

/// True when `g` has neither a pan nor an even hole.
pub fn brute_is_free(g: &Graph) -> Result<bool, OracleError> {
    Ok(brute_even_hole(g)?.is_none() && brute_pan(g)?.is_none())
}

/// Exact chromatic number and a coloring with colors `1..=chi`.
pub fn brute_chromatic(g: &Graph) -> Result<(usize, Vec<usize>), OracleError> {
    guard("chromatic", g, CHROMATIC_LIMIT)?;
    let n = g.n();
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));

    fn search(
        g: &Graph,
        order: &[usize],
        idx: usize,
        k: usize,
        used: usize,
        colors: &mut [usize],
    ) -> bool {
        if idx == order.len() {
            return true;
        }
        let v = order[idx];
        let limit = k.min(used + 1);
        for c in 1..=limit {
            if g.neighbors(v).iter().all(|&u| colors[u] != c) {
                colors[v] = c;
                if search(g, order, idx + 1, k, used.max(c), colors) {
                    return true;
                }
            }
        }
        colors[v] = 0;
        false
    }

    let lower = brute_clique_number(g).unwrap_or(1).max(1);
    for k in lower..=n {
        let mut colors = vec![0; n];
        if search(g, &order, 0, k, 0, &mut colors) {
            return Ok((k, colors));
        }
    }
    unreachable!("n colors always suffice")
}

pub fn brute_clique_number(g: &Graph) -> Result<usize, OracleError> {
    guard("clique", g, CLIQUE_LIMIT)?;
    let n = g.n();
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect();
    fn grow(nbr: &[u32], cand: u32, size: usize, best: &mut usize) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        grow(nbr, cand & nbr[v], size + 1, best);
        grow(nbr, cand & !(1 << v), size, best);
    }
    let mut best = 0;
    let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    grow(&nbr, all, 0, &mut best);
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    RandomGraph {
        n: usize,
        p: f64,
    },
    RandomBuoy {
        ell: usize,
        max_bag: usize,
    },
    FreeGraph {
        atoms: usize,
        max_ell: usize,
        max_bag: usize,
        max_universal: usize,
    },
    NearMiss {
        atoms: usize,
        max_ell: usize,
        max_bag: usize,
        max_universal: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub family: Family,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn generate(&self) -> Graph {
        match self.family {
            Family::RandomGraph { n, p } => gen_random_graph(n, p, self.seed),
            Family::RandomBuoy { ell, max_bag } => gen_random_buoy(ell, max_bag, self.seed).graph,
            Family::FreeGraph { .. } => gen_free_graph(self),
            Family::NearMiss { .. } => gen_near_miss(self),
        }
    }
}

pub fn gen_random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("generated edges are valid")
}

/// A generated buoy together with its bags.
#[derive(Debug, Clone)]
pub struct GeneratedBuoy {
    pub graph: Graph,
    pub bags: Vec<Vec<usize>>,
    /// `pair_clique[i]`: bags `i` and `i+1` are complete to each other.
    pub pair_clique: Vec<bool>,
}

/// Edge list of an odd buoy on vertex ids `offset..` with no two
/// consecutive non-clique pairs and nested neighborhoods inside every
/// non-clique pair.
fn buoy_edges(
    rng: &mut ChaCha8Rng,
    ell: usize,
    max_bag: usize,
    offset: usize,
) -> (Vec<Vec<usize>>, Vec<bool>, Vec<(usize, usize)>) {
    assert!(
        ell >= 5 && ell % 2 == 1,
        "buoys are odd with at least five bags"
    );
    let max_bag = max_bag.max(1);
    let sizes: Vec<usize> = (0..ell).map(|_| rng.gen_range(1..=max_bag)).collect();
    let mut flags = vec![true; ell];
    if max_bag >= 2 {
        let start = rng.gen_range(0..ell);
        for step in 0..ell {
            let i = (start + step) % ell;
            let prev = (i + ell - 1) % ell;
            let next = (i + 1) % ell;
            if flags[prev] && flags[next] && rng.gen_bool(0.4) {
                flags[i] = false;
            }
        }
    }
    let mut sizes = sizes;
    for i in 0..ell {
        if !flags[i] {
            sizes[i] = sizes[i].max(2);
            sizes[(i + 1) % ell] = sizes[(i + 1) % ell].max(2);
        }
    }
    let mut bags = Vec::with_capacity(ell);
    let mut next_id = offset;
    for &s in &sizes {
        bags.push((next_id..next_id + s).collect::<Vec<usize>>());
        next_id += s;
    }
    let mut edges = Vec::new();
    for bag in &bags {
        for (a, &u) in bag.iter().enumerate() {
            for &v in &bag[a + 1..] {
                edges.push((u, v));
            }
        }
    }
    for i in 0..ell {
        let left = &bags[i];
        let right = &bags[(i + 1) % ell];
        if flags[i] {
            for &u in left {
                for &v in right {
                    edges.push((u, v));
                }
            }
            continue;
        }
        // left[j] sees the top reach[j] vertices of `right`; reach is
        // nondecreasing, ends at |right| and starts below it.
        let t = right.len();
        let mut reach: Vec<usize> = (0..left.len()).map(|_| rng.gen_range(1..=t)).collect();
        reach.sort_unstable();
        *reach.last_mut().unwrap() = t;
        if reach[0] == t {
            reach[0] = rng.gen_range(1..t);
        }
        for (j, &u) in left.iter().enumerate() {
            for &v in &right[t - reach[j]..] {
                edges.push((u, v));
            }
        }
    }
    (bags, flags, edges)
}

fn shuffled(n: usize, edges: &[(usize, usize)], rng: &mut ChaCha8Rng) -> (Graph, Vec<usize>) {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let relabeled: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
    (
        Graph::from_edges(n, &relabeled).expect("generated edges are valid"),
        perm,
    )
}

/// A (pan, even hole)-free buoy with `ell` bags of size at most `max_bag`.
pub fn gen_random_buoy(ell: usize, max_bag: usize, seed: u64) -> GeneratedBuoy {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (bags, flags, edges) = buoy_edges(&mut rng, ell, max_bag, 0);
    let n = bags.iter().map(Vec::len).sum();
    let (graph, perm) = shuffled(n, &edges, &mut rng);
    let bags = bags
        .into_iter()
        .map(|b| {
            let mut b: Vec<usize> = b.into_iter().map(|v| perm[v]).collect();
            b.sort_unstable();
            b
        })
        .collect();
    GeneratedBuoy {
        graph,
        bags,
        pair_clique: flags,
    }
}

/// Five-or-more bags of `k` vertices, consecutive bags complete.
pub fn blown_up_cycle(ell: usize, k: usize) -> Graph {
    let mut edges = Vec::new();
    let bag = |i: usize| (i % ell) * k..(i % ell) * k + k;
    for i in 0..ell {
        for u in bag(i) {
            for v in bag(i) {
                if u < v {
                    edges.push((u, v));
                }
            }
            for v in bag(i + 1) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(ell * k, &edges).expect("valid construction")
}

/// The tightness family: five bags of `k` vertices, consecutive bags complete.
pub fn blown_up_c5(k: usize) -> Graph {
    blown_up_cycle(5, k)
}

struct PlacedBuoy {
    bags: Vec<Vec<usize>>,
    flags: Vec<bool>,
}

fn free_graph_edges(
    rng: &mut ChaCha8Rng,
    atoms: usize,
    max_ell: usize,
    max_bag: usize,
    max_universal: usize,
) -> (usize, Vec<(usize, usize)>) {
    let max_ell = if max_ell < 5 { 5 } else { max_ell };
    let mut n = 0usize;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut buoys: Vec<PlacedBuoy> = Vec::new();
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    let mut member_of_buoy: Vec<Option<usize>> = Vec::new();

    for step in 0..atoms.max(1) {
        // Gluing clique: empty for the first atom.
        let glue: Vec<usize> = if step == 0 {
            Vec::new()
        } else {
            pick_glue(rng, &buoys, &cliques, &member_of_buoy)
        };
        let structured = rng.gen_bool(0.7);
        let universal_count = rng.gen_range(0..=max_universal);
        let mut new_vertices = Vec::new();
        if structured {
            let ell = 5 + 2 * rng.gen_range(0..=(max_ell - 5) / 2);
            let (bags, flags, buoy_e) = buoy_edges(rng, ell, max_bag, n);
            let buoy_vs: Vec<usize> = bags.iter().flatten().copied().collect();
            n += buoy_vs.len();
            edges.extend(buoy_e);
            let k_new: Vec<usize> = (n..n + universal_count).collect();
            n += universal_count;
            member_of_buoy.resize(n, None);
            for &v in &buoy_vs {
                member_of_buoy[v] = Some(buoys.len());
            }
            let join: Vec<usize> = glue.iter().chain(k_new.iter()).copied().collect();
            for (a, &u) in join.iter().enumerate() {
                for &w in &join[a + 1..] {
                    if k_new.contains(&u) || k_new.contains(&w) {
                        edges.push((u, w));
                    }
                }
                for &v in &buoy_vs {
                    edges.push((u, v));
                }
            }
            new_vertices.extend(buoy_vs);
            new_vertices.extend(k_new);
            buoys.push(PlacedBuoy { bags, flags });
        } else {
            let size = rng.gen_range(1..=max_bag.max(1) + 1);
            let fresh: Vec<usize> = (n..n + size).collect();
            n += size;
            member_of_buoy.resize(n, None);
            let clique: Vec<usize> = glue.iter().chain(fresh.iter()).copied().collect();
            for (a, &u) in clique.iter().enumerate() {
                for &w in &clique[a + 1..] {
                    if fresh.contains(&u) || fresh.contains(&w) {
                        edges.push((u, w));
                    }
                }
            }
            new_vertices.extend(fresh);
            cliques.push(clique);
        }
        let _ = new_vertices;
    }
    (n, edges)
}

/// A clique meeting every placed buoy in nothing or in a complete pair of
/// consecutive bags.
fn pick_glue(
    rng: &mut ChaCha8Rng,
    buoys: &[PlacedBuoy],
    cliques: &[Vec<usize>],
    member_of_buoy: &[Option<usize>],
) -> Vec<usize> {
    let from_clique = !cliques.is_empty() && (buoys.is_empty() || rng.gen_bool(0.4));
    if from_clique {
        let c = &cliques[rng.gen_range(0..cliques.len())];
        // Drop buoy vertices so the glue stays away from every buoy.
        let pool: Vec<usize> = c
            .iter()
            .copied()
            .filter(|&v| member_of_buoy[v].is_none())
            .collect();
        if !pool.is_empty() {
            let take = rng.gen_range(1..=pool.len());
            let mut chosen: Vec<usize> = pool.choose_multiple(rng, take).copied().collect();
            chosen.sort_unstable();
            return chosen;
        }
    }
    if !buoys.is_empty() {
        let b = &buoys[rng.gen_range(0..buoys.len())];
        let ell = b.bags.len();
        let candidates: Vec<usize> = (0..ell).filter(|&i| b.flags[i]).collect();
        let i = candidates[rng.gen_range(0..candidates.len())];
        let mut glue: Vec<usize> = b.bags[i]
            .iter()
            .chain(b.bags[(i + 1) % ell].iter())
            .copied()
            .collect();
        glue.sort_unstable();
        return glue;
    }
    let c = &cliques[0];
    vec![c[rng.gen_range(0..c.len())]]
}

fn free_params(spec: &GeneratorSpec) -> (usize, usize, usize, usize) {
    match spec.family {
        Family::FreeGraph {
            atoms,
            max_ell,
            max_bag,
            max_universal,
        }
        | Family::NearMiss {
            atoms,
            max_ell,
            max_bag,
            max_universal,
        } => (atoms, max_ell, max_bag, max_universal),
        _ => (3, 7, 3, 1),
    }
}

/// A (pan, even hole)-free graph glued from random atoms along cliques.
pub fn gen_free_graph(spec: &GeneratorSpec) -> Graph {
    let (atoms, max_ell, max_bag, max_universal) = free_params(spec);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (n, edges) = free_graph_edges(&mut rng, atoms, max_ell, max_bag, max_universal);
    shuffled(n, &edges, &mut rng).0
}

/// A free graph with one vertex pair toggled.
pub fn gen_near_miss(spec: &GeneratorSpec) -> Graph {
    let base = gen_free_graph(spec);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ 0x6e65_6172_6d69_7373);
    let n = base.n();
    if n < 2 {
        return base;
    }
    let u = rng.gen_range(0..n);
    let mut v = rng.gen_range(0..n - 1);
    if v >= u {
        v += 1;
    }
    let mut edges: Vec<(usize, usize)> = base
        .edges()
        .filter(|&(a, b)| (a, b) != (u.min(v), u.max(v)))
        .collect();
    if !base.adjacent(u, v) {
        edges.push((u, v));
    }
    Graph::from_edges(n, &edges).expect("valid toggle")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::{verify_hole, verify_pan};

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, &e).unwrap()
    }

    #[test]
    fn hole_oracle_examples() {
        assert_eq!(brute_even_hole(&cycle(6)).unwrap().unwrap().len(), 6);
        assert_eq!(brute_even_hole(&cycle(5)).unwrap(), None);
        let h = brute_even_hole(&petersen()).unwrap().unwrap();
        assert!(verify_hole(&petersen(), &h) && h.len().is_multiple_of(2));
        assert_eq!(brute_holes(&cycle(7)).unwrap().len(), 1);
        assert_eq!(brute_holes(&complete(5)).unwrap().len(), 0);
        assert!(brute_even_hole(&Graph::empty(17)).is_err());
    }

    #[test]
    fn pan_oracle_examples() {
        let g = with_vertex(&cycle(5), &[0]);
        let p = brute_pan(&g).unwrap().unwrap();
        assert!(verify_pan(&g, &p));
        assert_eq!(brute_pan(&cycle(6)).unwrap(), None);
        let claw = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(brute_pan(&claw).unwrap(), None);
    }

    #[test]
    fn coloring_oracle_examples() {
        assert_eq!(brute_chromatic(&cycle(5)).unwrap().0, 3);
        assert_eq!(brute_chromatic(&complete(4)).unwrap().0, 4);
        assert_eq!(brute_chromatic(&blown_up_c5(2)).unwrap().0, 5);
        assert_eq!(brute_chromatic(&wheel(5)).unwrap().0, 4);
        let (k, colors) = brute_chromatic(&petersen()).unwrap();
        assert_eq!(k, 3);
        for (u, v) in petersen().edges() {
            assert_ne!(colors[u], colors[v]);
        }
    }

    #[test]
    fn clique_oracle_examples() {
        assert_eq!(brute_clique_number(&cycle(5)).unwrap(), 2);
        assert_eq!(brute_clique_number(&blown_up_c5(2)).unwrap(), 4);
        assert_eq!(brute_clique_number(&complete(4)).unwrap(), 4);
        assert!(brute_clique_number(&Graph::empty(21)).is_err());
    }

    #[test]
    fn holes_match_exhaustive_subsets() {
        // every chordless cycle found by subset enumeration is found by DFS
        for seed in 0..40 {
            let g = gen_random_graph(8, 0.45, seed);
            let mut dfs: Vec<Vec<usize>> = brute_holes(&g)
                .unwrap()
                .into_iter()
                .map(|h| {
                    let mut v = h.0;
                    v.sort();
                    v
                })
                .collect();
            dfs.sort();
            let mut subsets = Vec::new();
            for mask in 0u32..(1 << 8) {
                let s: Vec<usize> = (0..8).filter(|&v| mask >> v & 1 == 1).collect();
                if s.len() < 4 {
                    continue;
                }
                let (h, _) = g.induced_subgraph(&s);
                if h.is_connected() && (0..h.n()).all(|v| h.degree(v) == 2) {
                    subsets.push(s);
                }
            }
            subsets.sort();
            assert_eq!(dfs, subsets, "seed {seed}");
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let spec = GeneratorSpec {
            family: Family::FreeGraph {
                atoms: 4,
                max_ell: 7,
                max_bag: 3,
                max_universal: 2,
            },
            seed: 17,
        };
        assert_eq!(spec.generate().to_dimacs(), spec.generate().to_dimacs());
        let b1 = gen_random_buoy(7, 3, 5);
        let b2 = gen_random_buoy(7, 3, 5);
        assert_eq!(b1.graph, b2.graph);
        assert_eq!(b1.bags, b2.bags);
    }

    #[test]
    fn singleton_buoy_is_c5() {
        let b = gen_random_buoy(5, 1, 3);
        assert_eq!(b.graph.m(), 5);
        assert!((0..5).all(|v| b.graph.degree(v) == 2));
    }

    #[test]
    fn generated_free_graphs_are_free() {
        for seed in 0..60 {
            let spec = GeneratorSpec {
                family: Family::FreeGraph {
                    atoms: 2,
                    max_ell: 7,
                    max_bag: 2,
                    max_universal: 1,
                },
                seed,
            };
            let g = spec.generate();
            if g.n() > HOLE_LIMIT {
                continue;
            }
            assert!(brute_is_free(&g).unwrap(), "seed {seed}: {}", g.to_dimacs());
        }
        for seed in 0..40 {
            let b = gen_random_buoy(5, 2, seed);
            if b.graph.n() <= HOLE_LIMIT {
                assert!(brute_is_free(&b.graph).unwrap(), "seed {seed}");
            }
        }
    }

    #[test]
    fn blown_up_c5_shape() {
        let g = blown_up_c5(2);
        assert_eq!(g.n(), 10);
        assert!(brute_is_free(&g).unwrap());
    }
}
