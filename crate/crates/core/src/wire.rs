//! JSON documents for witnesses, certificates and the other artifacts.
//! Vertex ids are 1-based on the wire, as in the graph file format.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arcs::{Arc, ArcRepresentation, Q};
use crate::chromatic::{Coloring, TreeDecomposition};
use crate::decomposition::{DecompositionTree, TreeNode};
use crate::graph::{Hole, Pan, Witness};
use crate::recognizer::{AtomCertificate, AtomEntry, CertificateTree, Neighborhood, Verdict};

#[derive(Debug, Error)]
pub enum WireError {
    #[error("vertex id 0 is not valid; ids are 1-based")]
    ZeroId,
    #[error("bad vertex key {0:?}")]
    Key(String),
    #[error("bad rational {0:?}")]
    Rational(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn out(v: usize) -> usize {
    v + 1
}

fn outs(vs: &[usize]) -> Vec<usize> {
    vs.iter().map(|&v| v + 1).collect()
}

fn inn(v: usize) -> Result<usize, WireError> {
    v.checked_sub(1).ok_or(WireError::ZeroId)
}

fn key(s: &str) -> Result<usize, WireError> {
    inn(s.parse().map_err(|_| WireError::Key(s.to_string()))?)
}

fn inns(vs: &[usize]) -> Result<Vec<usize>, WireError> {
    vs.iter().map(|&v| inn(v)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum WitnessDoc {
    Pan {
        hole: Vec<usize>,
        handle: usize,
        attach: usize,
    },
    EvenHole {
        hole: Vec<usize>,
    },
}

impl WitnessDoc {
    pub fn from_witness(w: &Witness) -> Self {
        match w {
            Witness::Pan(p) => WitnessDoc::Pan {
                hole: outs(&p.hole.0),
                handle: out(p.handle),
                attach: out(p.attach),
            },
            Witness::EvenHole(h) => WitnessDoc::EvenHole { hole: outs(&h.0) },
        }
    }

    pub fn to_witness(&self) -> Result<Witness, WireError> {
        Ok(match self {
            WitnessDoc::Pan {
                hole,
                handle,
                attach,
            } => Witness::Pan(Pan {
                hole: Hole(inns(hole)?),
                handle: inn(*handle)?,
                attach: inn(*attach)?,
            }),
            WitnessDoc::EvenHole { hole } => Witness::EvenHole(Hole(inns(hole)?)),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NodeDoc {
    Leaf {
        leaf: Vec<usize>,
    },
    Split {
        cutset: Vec<usize>,
        left: usize,
        right: usize,
    },
}

/// Node indices are positions in `nodes` (0-based); vertex ids are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDoc {
    pub root: usize,
    pub nodes: Vec<NodeDoc>,
}

impl TreeDoc {
    pub fn from_tree(t: &DecompositionTree) -> Self {
        let nodes = t
            .nodes
            .iter()
            .map(|n| match n {
                TreeNode::Leaf { vertices } => NodeDoc::Leaf {
                    leaf: outs(vertices),
                },
                TreeNode::Split {
                    cutset,
                    left,
                    right,
                } => NodeDoc::Split {
                    cutset: outs(cutset),
                    left: *left,
                    right: *right,
                },
            })
            .collect();
        TreeDoc {
            root: t.root,
            nodes,
        }
    }

    pub fn to_tree(&self) -> Result<DecompositionTree, WireError> {
        let nodes = self
            .nodes
            .iter()
            .map(|n| {
                Ok(match n {
                    NodeDoc::Leaf { leaf } => TreeNode::Leaf {
                        vertices: inns(leaf)?,
                    },
                    NodeDoc::Split {
                        cutset,
                        left,
                        right,
                    } => TreeNode::Split {
                        cutset: inns(cutset)?,
                        left: *left,
                        right: *right,
                    },
                })
            })
            .collect::<Result<_, WireError>>()?;
        Ok(DecompositionTree {
            nodes,
            root: self.root,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AtomCertificateDoc {
    Clique {
        clique: Vec<usize>,
    },
    Structured {
        bags: Vec<Vec<usize>>,
        universal: Vec<usize>,
        orders: Vec<Vec<usize>>,
        pair_clique: Vec<bool>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomDoc {
    pub vertices: Vec<usize>,
    pub certificate: AtomCertificateDoc,
    /// `classes[i]` sees exactly bags i and i+1 (0-based bag indices).
    pub classes: Vec<Vec<usize>>,
    pub null: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub n: usize,
    pub components: Vec<TreeDoc>,
    pub atoms: Vec<AtomDoc>,
}

impl CertificateDoc {
    pub fn from_certificate(c: &CertificateTree) -> Self {
        let atoms = c
            .atoms
            .iter()
            .map(|a| AtomDoc {
                vertices: outs(&a.vertices),
                certificate: match &a.certificate {
                    AtomCertificate::Clique(k) => AtomCertificateDoc::Clique { clique: outs(k) },
                    AtomCertificate::Structured {
                        bags,
                        universal,
                        orders,
                        pair_clique,
                    } => AtomCertificateDoc::Structured {
                        bags: bags.iter().map(|b| outs(b)).collect(),
                        universal: outs(universal),
                        orders: orders.iter().map(|o| outs(o)).collect(),
                        pair_clique: pair_clique.clone(),
                    },
                },
                classes: a.neighborhood.classes.iter().map(|c| outs(c)).collect(),
                null: outs(&a.neighborhood.null),
            })
            .collect();
        CertificateDoc {
            n: c.n,
            components: c.components.iter().map(TreeDoc::from_tree).collect(),
            atoms,
        }
    }

    pub fn to_certificate(&self) -> Result<CertificateTree, WireError> {
        let many = |vs: &[Vec<usize>]| vs.iter().map(|v| inns(v)).collect::<Result<Vec<_>, _>>();
        let atoms = self
            .atoms
            .iter()
            .map(|a| {
                Ok(AtomEntry {
                    vertices: inns(&a.vertices)?,
                    certificate: match &a.certificate {
                        AtomCertificateDoc::Clique { clique } => {
                            AtomCertificate::Clique(inns(clique)?)
                        }
                        AtomCertificateDoc::Structured {
                            bags,
                            universal,
                            orders,
                            pair_clique,
                        } => AtomCertificate::Structured {
                            bags: many(bags)?,
                            universal: inns(universal)?,
                            orders: many(orders)?,
                            pair_clique: pair_clique.clone(),
                        },
                    },
                    neighborhood: Neighborhood {
                        classes: many(&a.classes)?,
                        null: inns(&a.null)?,
                    },
                })
            })
            .collect::<Result<_, WireError>>()?;
        let components = self
            .components
            .iter()
            .map(TreeDoc::to_tree)
            .collect::<Result<_, _>>()?;
        Ok(CertificateTree {
            n: self.n,
            components,
            atoms,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringDoc {
    pub palette: usize,
    /// Keyed by vertex id in decimal.
    pub colors: BTreeMap<String, usize>,
}

impl ColoringDoc {
    pub fn from_coloring(c: &Coloring) -> Self {
        ColoringDoc {
            palette: c.palette(),
            colors: c
                .colors
                .iter()
                .map(|(&v, &k)| (out(v).to_string(), k))
                .collect(),
        }
    }

    pub fn to_coloring(&self) -> Result<Coloring, WireError> {
        let colors = self
            .colors
            .iter()
            .map(|(v, &k)| Ok((key(v)?, k)))
            .collect::<Result<_, WireError>>()?;
        Ok(Coloring { colors })
    }
}

/// Bag indices in `edges` are 0-based positions in `bags`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecompositionDoc {
    pub width: usize,
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecompositionDoc {
    pub fn from_td(td: &TreeDecomposition) -> Self {
        TreeDecompositionDoc {
            width: td.width(),
            bags: td.bags.iter().map(|b| outs(b)).collect(),
            edges: td.edges.clone(),
        }
    }

    pub fn to_td(&self) -> Result<TreeDecomposition, WireError> {
        Ok(TreeDecomposition {
            bags: self
                .bags
                .iter()
                .map(|b| inns(b))
                .collect::<Result<_, _>>()?,
            edges: self.edges.clone(),
        })
    }
}

fn q_out(q: Q) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn q_in(s: &str) -> Result<Q, WireError> {
    let bad = || WireError::Rational(s.to_string());
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let (n, d): (i64, i64) = (
        n.trim().parse().map_err(|_| bad())?,
        d.trim().parse().map_err(|_| bad())?,
    );
    if d == 0 {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

/// Positions are exact rationals written `num/den`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcsDoc {
    pub circumference: String,
    pub unit: bool,
    /// Keyed by vertex id in decimal.
    pub arcs: BTreeMap<String, (String, String)>,
    pub sectors: Vec<String>,
}

impl ArcsDoc {
    pub fn from_arcs(rep: &ArcRepresentation) -> Self {
        ArcsDoc {
            circumference: q_out(rep.circumference),
            unit: rep.unit,
            arcs: rep
                .arcs
                .iter()
                .map(|(&v, a)| (out(v).to_string(), (q_out(a.start), q_out(a.end))))
                .collect(),
            sectors: rep.sectors.iter().map(|&q| q_out(q)).collect(),
        }
    }

    pub fn to_arcs(&self) -> Result<ArcRepresentation, WireError> {
        let arcs = self
            .arcs
            .iter()
            .map(|(v, (s, e))| {
                Ok((
                    key(v)?,
                    Arc {
                        start: q_in(s)?,
                        end: q_in(e)?,
                    },
                ))
            })
            .collect::<Result<_, WireError>>()?;
        Ok(ArcRepresentation {
            circumference: q_in(&self.circumference)?,
            arcs,
            unit: self.unit,
            sectors: self
                .sectors
                .iter()
                .map(|s| q_in(s))
                .collect::<Result<_, _>>()?,
        })
    }
}

/// Every document the tools emit, tagged so `verify` can tell them apart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "artifact", rename_all = "kebab-case")]
pub enum Artifact {
    Verdict {
        verdict: VerdictKind,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        witness: Option<WitnessDoc>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        certificate: Option<CertificateDoc>,
    },
    Witness(WitnessDoc),
    Certificate(CertificateDoc),
    Coloring(ColoringDoc),
    TreeDecomposition(TreeDecompositionDoc),
    Arcs(ArcsDoc),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictKind {
    Free,
    Forbidden,
}

impl Artifact {
    /// Verdict document; payloads are included on request.
    pub fn verdict(v: &Verdict, with_witness: bool, with_certificate: bool) -> Self {
        match v {
            Verdict::Free(c) => Artifact::Verdict {
                verdict: VerdictKind::Free,
                witness: None,
                certificate: with_certificate.then(|| CertificateDoc::from_certificate(c)),
            },
            Verdict::Forbidden(w) => Artifact::Verdict {
                verdict: VerdictKind::Forbidden,
                witness: with_witness.then(|| WitnessDoc::from_witness(w)),
                certificate: None,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("artifacts serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, WireError> {
        Ok(serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::buoy_to_unit_arcs;
    use crate::buoy::Buoy;
    use crate::chromatic::{color_free_graph, tree_decomposition_free_graph};
    use crate::graph::fixtures::*;
    use crate::graph::Graph;
    use crate::oracle::blown_up_c5;
    use crate::recognizer::{recognize, verify_certificate};

    fn roundtrip(a: &Artifact) -> Artifact {
        Artifact::from_json(&a.to_json()).unwrap()
    }

    #[test]
    fn certificate_roundtrip() {
        for g in [
            cycle(5),
            wheel(5),
            blown_up_c5(2),
            with_vertex(&cycle(5), &[0, 1]),
            Graph::empty(2),
        ] {
            let Verdict::Free(c) = recognize(&g).unwrap() else {
                panic!()
            };
            let a = Artifact::Certificate(CertificateDoc::from_certificate(&c));
            let Artifact::Certificate(doc) = roundtrip(&a) else {
                panic!()
            };
            let back = doc.to_certificate().unwrap();
            assert_eq!(back, c);
            assert!(verify_certificate(&g, &back));
        }
    }

    #[test]
    fn witness_is_one_based() {
        let w = Witness::EvenHole(Hole(vec![0, 1, 2, 3, 4, 5]));
        let a = Artifact::Witness(WitnessDoc::from_witness(&w));
        let text = a.to_json();
        assert!(text.contains("\"even-hole\""));
        let Artifact::Witness(d) = roundtrip(&a) else {
            panic!()
        };
        assert_eq!(
            d,
            WitnessDoc::EvenHole {
                hole: vec![1, 2, 3, 4, 5, 6]
            }
        );
        assert_eq!(d.to_witness().unwrap(), w);
        let zero = WitnessDoc::EvenHole {
            hole: vec![0, 1, 2, 3],
        };
        assert!(matches!(zero.to_witness(), Err(WireError::ZeroId)));
    }

    #[test]
    fn other_artifacts_roundtrip() {
        let g = blown_up_c5(2);
        let Verdict::Free(c) = recognize(&g).unwrap() else {
            panic!()
        };
        let col = color_free_graph(&g, &c).unwrap();
        let Artifact::Coloring(d) =
            roundtrip(&Artifact::Coloring(ColoringDoc::from_coloring(&col)))
        else {
            panic!()
        };
        assert_eq!(d.to_coloring().unwrap(), col);
        let td = tree_decomposition_free_graph(&g, &c).unwrap();
        let a = Artifact::TreeDecomposition(TreeDecompositionDoc::from_td(&td));
        let Artifact::TreeDecomposition(d) = roundtrip(&a) else {
            panic!()
        };
        assert_eq!(d.to_td().unwrap(), td);
        let b = Buoy::new(10, (0..5).map(|i| vec![2 * i, 2 * i + 1]).collect()).unwrap();
        let rep = buoy_to_unit_arcs(&g, &b).unwrap();
        let Artifact::Arcs(d) = roundtrip(&Artifact::Arcs(ArcsDoc::from_arcs(&rep))) else {
            panic!()
        };
        assert_eq!(d.to_arcs().unwrap(), rep);
        assert!(d
            .arcs
            .values()
            .all(|(s, e)| s.contains('/') && e.contains('/')));
    }

    #[test]
    fn verdict_document_shape() {
        let v = recognize(&cycle(6)).unwrap();
        let text = Artifact::verdict(&v, true, true).to_json();
        let json: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(json["verdict"], "forbidden");
        assert_eq!(json["witness"]["type"], "even-hole");
        assert!(json.get("certificate").is_none());
        assert!(q_in("3/0").is_err());
        assert_eq!(q_in("5").unwrap(), Q::from_integer(5));
    }
}
