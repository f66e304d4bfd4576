//! Circular-arc models of buoys: a general one for C4-free hosts and a
//! unit one (every arc of length 2 + ε) for free hosts.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::Ratio;
use thiserror::Error;

use crate::buoy::{clique_pattern, Buoy};
use crate::graph::{Graph, Hole};

pub type Q = Ratio<i64>;

/// Sector length of each bag in the unit model.
pub fn epsilon() -> Q {
    Q::new(1, 2)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArcError {
    #[error("bag {bag} is not ordered by inclusion; C4 {hole:?}")]
    Square { bag: usize, hole: Hole },
    #[error("bag {bag} has non-clique unions on both sides")]
    CliquePattern { bag: usize },
}

/// Bags split into classes of equal neighborhood towards the next bag,
/// strictly increasing by inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BagPartition {
    /// `classes[i][j]`: class `j` of bag `i` with respect to bag `i+1`.
    pub classes: Vec<Vec<Vec<usize>>>,
    /// `mirrored[i][j]`: vertices of bag `i` whose lowest neighbor class in
    /// bag `i-1` is `j`; one entry per class of bag `i-1`, some possibly empty.
    pub mirrored: Vec<Vec<Vec<usize>>>,
    forward: BTreeMap<usize, usize>,
    backward: BTreeMap<usize, usize>,
}

impl BagPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Number of classes of bag `i`.
    pub fn t(&self, i: usize) -> usize {
        self.classes[i].len()
    }

    pub fn forward_class(&self, v: usize) -> Option<usize> {
        self.forward.get(&v).copied()
    }

    pub fn backward_class(&self, v: usize) -> Option<usize> {
        self.backward.get(&v).copied()
    }
}

pub fn bag_partition(g: &Graph, b: &Buoy) -> Result<BagPartition, ArcError> {
    let l = b.len();
    let mut classes = Vec::with_capacity(l);
    let mut forward = BTreeMap::new();
    for i in 0..l {
        let mut rows: Vec<(Vec<usize>, usize)> = b
            .bag(i as isize)
            .iter()
            .map(|&v| {
                let mut nb: Vec<usize> = b.neighbors_in(g, v, i as isize + 1).collect();
                nb.sort_unstable();
                (nb, v)
            })
            .collect();
        rows.sort_by(|a, c| a.0.len().cmp(&c.0.len()).then(a.1.cmp(&c.1)));
        let mut bag_classes: Vec<Vec<usize>> = Vec::new();
        for k in 0..rows.len() {
            let (nb, v) = &rows[k];
            if k > 0 {
                let (prev, x) = &rows[k - 1];
                if prev == nb {
                    bag_classes.last_mut().expect("previous class").push(*v);
                    forward.insert(*v, bag_classes.len() - 1);
                    continue;
                }
                if let Some(&u) = prev.iter().find(|u| nb.binary_search(u).is_err()) {
                    let w = *nb
                        .iter()
                        .find(|w| prev.binary_search(w).is_err())
                        .expect("larger set has an extra vertex");
                    return Err(ArcError::Square {
                        bag: i,
                        hole: Hole(vec![*x, u, w, *v]),
                    });
                }
            }
            bag_classes.push(vec![*v]);
            forward.insert(*v, bag_classes.len() - 1);
        }
        classes.push(bag_classes);
    }
    let mut mirrored = Vec::with_capacity(l);
    let mut backward = BTreeMap::new();
    for i in 0..l {
        let prev = (i + l - 1) % l;
        let mut out = vec![Vec::new(); classes[prev].len()];
        for &x in b.bag(i as isize) {
            let j = b
                .neighbors_in(g, x, prev as isize)
                .map(|u| forward[&u])
                .min()
                .expect("buoy neighbor axiom");
            out[j].push(x);
            backward.insert(x, j);
        }
        mirrored.push(out);
    }
    Ok(BagPartition {
        classes,
        mirrored,
        forward,
        backward,
    })
}

/// Closed arc running clockwise from `start` to `end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub start: Q,
    pub end: Q,
}

fn modulo(x: Q, c: Q) -> Q {
    x - c * (x / c).floor()
}

impl Arc {
    pub fn length(&self, circumference: Q) -> Q {
        modulo(self.end - self.start, circumference)
    }

    fn contains(&self, p: Q, circumference: Q) -> bool {
        modulo(p - self.start, circumference) <= self.length(circumference)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcRepresentation {
    pub circumference: Q,
    pub arcs: BTreeMap<usize, Arc>,
    pub unit: bool,
    /// Position of the point of each bag; only that bag's arcs cover it.
    pub sectors: Vec<Q>,
}

impl ArcRepresentation {
    pub fn intersect(&self, u: usize, v: usize) -> bool {
        let (a, b) = (self.arcs[&u], self.arcs[&v]);
        let c = self.circumference;
        a.contains(b.start, c) || b.contains(a.start, c)
    }

    /// All arcs share one length.
    pub fn is_unit(&self) -> bool {
        let mut lens = self.arcs.values().map(|a| a.length(self.circumference));
        match lens.next() {
            Some(first) => lens.all(|x| x == first),
            None => true,
        }
    }

    /// Concentric rendering, one ring per vertex.
    pub fn to_svg(&self) -> String {
        let c = *self.circumference.numer() as f64 / *self.circumference.denom() as f64;
        let rings = self.arcs.len().max(1) as f64;
        let size = 2.0 * (60.0 + 8.0 * rings) + 20.0;
        let mid = size / 2.0;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
        );
        let _ = writeln!(
            out,
            r#"<circle cx="{mid}" cy="{mid}" r="50" fill="none" stroke="gray"/>"#
        );
        let point = |q: Q, r: f64| {
            let t = *q.numer() as f64 / *q.denom() as f64 / c * std::f64::consts::TAU;
            (mid + r * t.sin(), mid - r * t.cos())
        };
        for (k, (v, arc)) in self.arcs.iter().enumerate() {
            let r = 60.0 + 8.0 * k as f64;
            let (x0, y0) = point(arc.start, r);
            let (x1, y1) = point(arc.end, r);
            let len = arc.length(self.circumference);
            let large = u8::from(*len.numer() as f64 / *len.denom() as f64 > c / 2.0);
            let _ = writeln!(
                out,
                r#"<path d="M {x0:.2} {y0:.2} A {r} {r} 0 {large} 1 {x1:.2} {y1:.2}" fill="none" stroke="hsl({},60%,45%)" stroke-width="3"><title>{}</title></path>"#,
                (k * 47) % 360,
                v + 1
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

/// Circular-arc model of a buoy in a C4-free host: bag `i` sits around
/// point `i` on a circle of circumference ℓ.
pub fn buoy_to_arcs(g: &Graph, b: &Buoy) -> Result<ArcRepresentation, ArcError> {
    let part = bag_partition(g, b)?;
    let l = b.len();
    let point =
        |i: usize, j: usize| Q::from_integer(i as i64) + Q::new(j as i64 + 1, part.t(i) as i64 + 1);
    let mut arcs = BTreeMap::new();
    for i in 0..l {
        let prev = (i + l - 1) % l;
        for &v in b.bag(i as isize) {
            let arc = Arc {
                start: point(prev, part.backward_class(v).expect("partitioned")),
                end: point(i, part.forward_class(v).expect("partitioned")),
            };
            arcs.insert(v, arc);
        }
    }
    let sectors = (0..l).map(|i| Q::from_integer(i as i64)).collect();
    let rep = ArcRepresentation {
        circumference: Q::from_integer(l as i64),
        arcs,
        unit: false,
        sectors,
    };
    Ok(ArcRepresentation {
        unit: rep.is_unit(),
        ..rep
    })
}

/// Unit circular-arc model of a buoy in a free host, every arc of
/// length 2 + ε.
pub fn buoy_to_unit_arcs(g: &Graph, b: &Buoy) -> Result<ArcRepresentation, ArcError> {
    let part = bag_partition(g, b)?;
    let l = b.len();
    let flags = clique_pattern(g, b).pair_clique;
    if let Some(i) = (0..l).find(|&i| !flags[(i + l - 1) % l] && !flags[i]) {
        return Err(ArcError::CliquePattern { bag: i });
    }
    let eps = epsilon();
    let conn = |i: usize| Q::from_integer(if flags[i] { 2 } else { 1 });
    // `start[i]` opens the sector of bag i, the connector follows it.
    let mut start = Vec::with_capacity(l);
    let mut pos = Q::from_integer(0);
    for i in 0..l {
        start.push(pos);
        pos += eps + conn(i);
    }
    let circumference = pos;
    let plus = |i: usize| start[i] + eps;
    let mid = |i: usize| plus(i) + conn(i) / 2;
    // Points of a non-clique connector span exactly one unit.
    let step = |i: usize, j: usize| Q::new(j as i64, part.t(i) as i64 - 1);
    let mut arcs = BTreeMap::new();
    for i in 0..l {
        let prev = (i + l - 1) % l;
        for &v in b.bag(i as isize) {
            let arc = if !flags[i] {
                let j = part.forward_class(v).expect("partitioned");
                Arc {
                    start: plus(prev) + step(i, j),
                    end: plus(i) + step(i, j),
                }
            } else if !flags[prev] {
                let j = part.backward_class(v).expect("partitioned");
                Arc {
                    start: plus(prev) + step(prev, j),
                    end: mid(i) + step(prev, j),
                }
            } else {
                Arc {
                    start: mid(prev),
                    end: mid(i),
                }
            };
            arcs.insert(
                v,
                Arc {
                    start: modulo(arc.start, circumference),
                    end: modulo(arc.end, circumference),
                },
            );
        }
    }
    let sectors = start.iter().map(|&s| s + eps / 2).collect();
    Ok(ArcRepresentation {
        circumference,
        arcs,
        unit: true,
        sectors,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("vertices {u} and {v}: adjacent = {adjacent}, arcs intersect = {intersect}")]
pub struct ArcMismatch {
    pub u: usize,
    pub v: usize,
    pub adjacent: bool,
    pub intersect: bool,
}

/// Checks that arc intersection equals adjacency on the represented
/// vertices, reporting the first mismatched pair, and that a unit
/// representation has equal lengths.
pub fn validate_arcs(g: &Graph, rep: &ArcRepresentation) -> Result<(), ArcMismatch> {
    let vs: Vec<usize> = rep.arcs.keys().copied().collect();
    for (a, &u) in vs.iter().enumerate() {
        for &v in &vs[a + 1..] {
            let (adjacent, intersect) = (g.adjacent(u, v), rep.intersect(u, v));
            if adjacent != intersect {
                return Err(ArcMismatch {
                    u,
                    v,
                    adjacent,
                    intersect,
                });
            }
        }
    }
    Ok(())
}
