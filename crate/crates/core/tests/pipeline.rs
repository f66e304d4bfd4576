use pef::arcs::{buoy_to_unit_arcs, validate_arcs};
use pef::buoy::Buoy;
use pef::chromatic::{
    color_free_graph, tree_decomposition_free_graph, validate_tree_decomposition,
};
use pef::oracle::{Family, GeneratorSpec};
use pef::recognizer::{
    check_certificate, recognize, recognize_batch, recognize_batch_sequential, AtomCertificate,
    Verdict,
};
use pef::wire::{ArcsDoc, Artifact, ColoringDoc, TreeDecompositionDoc};
use pef::{parse_graph, Graph};

fn generated(family: Family, seeds: std::ops::Range<u64>) -> Vec<Graph> {
    seeds
        .map(|seed| GeneratorSpec { family, seed }.generate())
        .collect()
}

fn free_family() -> Family {
    Family::FreeGraph {
        atoms: 5,
        max_ell: 13,
        max_bag: 4,
        max_universal: 2,
    }
}

#[test]
fn text_format_round_trip_preserves_verdicts() {
    for g in generated(free_family(), 0..40) {
        let back = parse_graph(&g.to_dimacs()).unwrap();
        assert_eq!(back.digest(), g.digest());
        assert!(recognize(&back).unwrap().is_free());
    }
}

#[test]
fn every_artifact_survives_json() {
    for g in generated(free_family(), 0..60) {
        let Verdict::Free(cert) = recognize(&g).unwrap() else {
            panic!("generated graph is forbidden")
        };
        let coloring = color_free_graph(&g, &cert).unwrap();
        let td = tree_decomposition_free_graph(&g, &cert).unwrap();
        let mut artifacts = vec![
            Artifact::verdict(&Verdict::Free(cert.clone()), true, true),
            Artifact::Coloring(ColoringDoc::from_coloring(&coloring)),
            Artifact::TreeDecomposition(TreeDecompositionDoc::from_td(&td)),
        ];
        for atom in &cert.atoms {
            if let AtomCertificate::Structured { bags, .. } = &atom.certificate {
                let b = Buoy::new(g.n(), bags.clone()).unwrap();
                artifacts.push(Artifact::Arcs(ArcsDoc::from_arcs(
                    &buoy_to_unit_arcs(&g, &b).unwrap(),
                )));
            }
        }
        for a in artifacts {
            let back = Artifact::from_json(&a.to_json()).unwrap();
            match back {
                Artifact::Verdict {
                    certificate: Some(c),
                    ..
                } => check_certificate(&g, &c.to_certificate().unwrap()).unwrap(),
                Artifact::Coloring(c) => assert!(c.to_coloring().unwrap().is_proper(&g)),
                Artifact::TreeDecomposition(t) => {
                    validate_tree_decomposition(&g, &t.to_td().unwrap()).unwrap();
                }
                Artifact::Arcs(r) => validate_arcs(&g, &r.to_arcs().unwrap()).unwrap(),
                other => panic!("unexpected artifact {other:?}"),
            }
        }
    }
}

#[test]
fn batch_modes_agree() {
    let mut graphs = generated(free_family(), 0..30);
    graphs.extend(generated(
        Family::NearMiss {
            atoms: 5,
            max_ell: 13,
            max_bag: 4,
            max_universal: 2,
        },
        0..30,
    ));
    let par = recognize_batch(&graphs);
    let seq = recognize_batch_sequential(&graphs);
    for ((g, p), s) in graphs.iter().zip(&par).zip(&seq) {
        let (p, s) = (p.as_ref().unwrap(), s.as_ref().unwrap());
        assert_eq!(p.is_free(), s.is_free());
        if let Verdict::Forbidden(w) = p {
            assert!(w.verify(g));
        }
    }
    assert!(seq.iter().any(|v| !v.as_ref().unwrap().is_free()));
}

#[test]
fn disjoint_union_is_certified_per_component() {
    let graphs = generated(free_family(), 0..3);
    let mut edges = Vec::new();
    let mut offset = 0;
    for g in &graphs {
        edges.extend(g.edges().map(|(u, v)| (u + offset, v + offset)));
        offset += g.n();
    }
    let union = Graph::from_edges(offset + 2, &edges).unwrap();
    let Verdict::Free(cert) = recognize(&union).unwrap() else {
        panic!("union is forbidden")
    };
    assert_eq!(cert.components.len(), graphs.len() + 2);
    check_certificate(&union, &cert).unwrap();
    let coloring = color_free_graph(&union, &cert).unwrap();
    assert!(coloring.is_proper(&union));
}
