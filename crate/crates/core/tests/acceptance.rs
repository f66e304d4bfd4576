//! Acceptance suite. Runs without the libtest harness so every criterion
//! prints exactly one line; the process exits non-zero if any fails.

use std::time::Instant;

use num_rational::Ratio;
use pef::arcs::{buoy_to_unit_arcs, epsilon, validate_arcs};
use pef::buoy::Buoy;
use pef::chromatic::{
    color_free_graph, tree_decomposition_free_graph, validate_tree_decomposition,
};
use pef::decomposition::find_pan_global;
use pef::oracle::{
    blown_up_c5, brute_chromatic, brute_clique_number, brute_even_hole, brute_pan, gen_random_buoy,
    gen_random_graph, Family, GeneratorSpec,
};
use pef::recognizer::{check_certificate, recognize, CertificateTree, Verdict};
use pef::{Graph, Witness};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(failures: &[String], detail: String) -> Outcome {
    match failures.first() {
        None => Outcome {
            passed: true,
            detail,
        },
        Some(first) => Outcome {
            passed: false,
            detail: format!("{} failures, first: {first}", failures.len()),
        },
    }
}

/// One recognized instance with its ground truth.
struct Instance {
    label: String,
    graph: Graph,
    verdict: Result<Verdict, String>,
    brute_pan: bool,
    brute_even_hole: bool,
    global_pan: bool,
}

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

fn random_instance(seed: u64) -> Graph {
    let n = 7 + (seed % 6) as usize;
    let p = [0.12, 0.2, 0.3, 0.45, 0.6, 0.75][(seed / 6 % 6) as usize];
    gen_random_graph(n, p, seed)
}

fn corpus() -> Vec<Instance> {
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    for n in 0..=6 {
        graphs.extend(
            all_graphs(n)
                .enumerate()
                .map(|(i, g)| (format!("all n={n} #{i}"), g)),
        );
    }
    graphs.extend((0..10_000u64).map(|s| (format!("random seed {s}"), random_instance(s))));
    pef::par::map(&graphs, |(label, g)| Instance {
        label: label.clone(),
        graph: g.clone(),
        verdict: recognize(g).map_err(|e| e.to_string()),
        brute_pan: brute_pan(g).unwrap().is_some(),
        brute_even_hole: brute_even_hole(g).unwrap().is_some(),
        global_pan: find_pan_global(g).is_some(),
    })
}

fn criterion_1(corpus: &[Instance]) -> Outcome {
    let mut failures = Vec::new();
    for inst in corpus {
        let expected = !inst.brute_pan && !inst.brute_even_hole;
        match &inst.verdict {
            Ok(v) if v.is_free() == expected => {}
            Ok(v) => failures.push(format!(
                "{}: free={} but oracle says {expected}",
                inst.label,
                v.is_free()
            )),
            Err(e) => failures.push(format!("{}: {e}", inst.label)),
        }
    }
    let free = corpus
        .iter()
        .filter(|i| matches!(i.verdict, Ok(Verdict::Free(_))))
        .count();
    outcome(
        &failures,
        format!("{} instances, {free} free", corpus.len()),
    )
}

fn criterion_2(corpus: &[Instance]) -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for inst in corpus {
        if let Ok(Verdict::Forbidden(w)) = &inst.verdict {
            count += 1;
            let even = match w {
                Witness::EvenHole(h) => h.is_even(),
                Witness::Pan(_) => true,
            };
            if !w.verify(&inst.graph) || !even {
                failures.push(format!("{}: {w:?}", inst.label));
            }
        }
    }
    outcome(&failures, format!("{count} witnesses verified"))
}

fn atom_bound(g: &Graph) -> usize {
    g.components()
        .iter()
        .map(|c| c.len().saturating_sub(1).max(1))
        .sum()
}

fn check_free(g: &Graph, c: &CertificateTree) -> Result<(), String> {
    check_certificate(g, c).map_err(|e| e.to_string())?;
    let limit = if g.is_connected() && g.n() >= 2 {
        g.n() - 1
    } else {
        atom_bound(g)
    };
    if c.atoms.len() > limit {
        return Err(format!("{} atoms exceed {limit}", c.atoms.len()));
    }
    Ok(())
}

fn criterion_3(corpus: &[Instance]) -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for inst in corpus {
        if let Ok(Verdict::Free(c)) = &inst.verdict {
            count += 1;
            if let Err(e) = check_free(&inst.graph, c) {
                failures.push(format!("{}: {e}", inst.label));
            }
        }
    }
    outcome(&failures, format!("{count} certificates verified"))
}

/// Generated free graphs with at most `max_n` vertices.
fn small_free_graphs(count: usize, max_n: usize) -> Vec<(u64, Graph)> {
    let mut out = Vec::new();
    let mut seed = 0;
    while out.len() < count {
        let family = Family::FreeGraph {
            atoms: 1 + (seed % 3) as usize,
            max_ell: [5, 7, 9][(seed / 3 % 3) as usize],
            max_bag: 1 + (seed / 9 % 3) as usize,
            max_universal: (seed / 27 % 3) as usize,
        };
        let g = GeneratorSpec { family, seed }.generate();
        if g.n() <= max_n {
            out.push((seed, g));
        }
        seed += 1;
    }
    out
}

fn certificate_of(g: &Graph) -> Result<CertificateTree, String> {
    match recognize(g).map_err(|e| e.to_string())? {
        Verdict::Free(c) => Ok(c),
        Verdict::Forbidden(w) => Err(format!("generated graph is forbidden: {w:?}")),
    }
}

fn criterion_4(graphs: &[(u64, Graph)]) -> Outcome {
    let results = pef::par::map(graphs, |(seed, g)| -> Result<(), String> {
        let c = certificate_of(g)?;
        let coloring = color_free_graph(g, &c).map_err(|e| e.to_string())?;
        let (chi, _) = brute_chromatic(g).map_err(|e| e.to_string())?;
        let omega = brute_clique_number(g).map_err(|e| e.to_string())?;
        if !coloring.is_proper(g) {
            return Err(format!("seed {seed}: improper coloring"));
        }
        if coloring.palette() != chi {
            return Err(format!(
                "seed {seed}: palette {} but chi {chi}",
                coloring.palette()
            ));
        }
        if 2 * coloring.palette() > 3 * omega {
            return Err(format!(
                "seed {seed}: palette {} above 1.5 * {omega}",
                coloring.palette()
            ));
        }
        Ok(())
    });
    let failures: Vec<String> = results.into_iter().filter_map(Result::err).collect();
    let max_n = graphs.iter().map(|(_, g)| g.n()).max().unwrap_or(0);
    outcome(&failures, format!("{} graphs, n <= {max_n}", graphs.len()))
}

fn td_width(g: &Graph) -> Result<(usize, usize), String> {
    let c = certificate_of(g)?;
    let td = tree_decomposition_free_graph(g, &c).map_err(|e| e.to_string())?;
    let width = validate_tree_decomposition(g, &td).map_err(|e| e.to_string())?;
    let omega = pef::chromatic::clique_number(g, &c).map_err(|e| e.to_string())?;
    Ok((width, omega))
}

fn criterion_5(graphs: &[(u64, Graph)]) -> Outcome {
    let mut failures = Vec::new();
    let larger: Vec<Graph> = (0..300u64)
        .map(|seed| {
            let family = Family::FreeGraph {
                atoms: 4,
                max_ell: 15,
                max_bag: 4,
                max_universal: 3,
            };
            GeneratorSpec { family, seed }.generate()
        })
        .collect();
    let all: Vec<&Graph> = graphs.iter().map(|(_, g)| g).chain(&larger).collect();
    for (i, r) in pef::par::map(&all, |g| td_width(g)).into_iter().enumerate() {
        match r {
            Ok((w, omega)) if 2 * (w + 1) <= 3 * omega => {}
            Ok((w, omega)) => failures.push(format!("graph {i}: width {w} with omega {omega}")),
            Err(e) => failures.push(format!("graph {i}: {e}")),
        }
    }
    for k in 1..=3 {
        match td_width(&blown_up_c5(k)) {
            Ok((w, omega)) if w == 3 * k - 1 && omega == 2 * k => {}
            other => failures.push(format!("blown-up C5, k={k}: {other:?}")),
        }
    }
    for n in (5..=21).step_by(2) {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        match td_width(&Graph::from_edges(n, &edges).unwrap()) {
            Ok((2, _)) => {}
            other => failures.push(format!("C{n}: {other:?}")),
        }
    }
    outcome(
        &failures,
        format!("{} graphs, blown-up C5 k=1..3, odd cycles 5..21", all.len()),
    )
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let length = Ratio::from_integer(2) + epsilon();
    for seed in 0..1000u64 {
        let ell = [5, 7, 9, 11, 13][(seed % 5) as usize];
        let gb = gen_random_buoy(ell, 1 + (seed / 5 % 4) as usize, seed);
        let b = Buoy::new(gb.graph.n(), gb.bags.clone()).unwrap();
        let result = buoy_to_unit_arcs(&gb.graph, &b)
            .map_err(|e| format!("{e:?}"))
            .and_then(|rep| {
                validate_arcs(&gb.graph, &rep).map_err(|m| format!("{m:?}"))?;
                let c = rep.circumference;
                match rep.arcs.values().find(|a| a.length(c) != length) {
                    Some(a) => Err(format!("arc of length {}", a.length(c))),
                    None if rep.arcs.len() != gb.graph.n() => Err("missing arcs".to_string()),
                    None => Ok(()),
                }
            });
        if let Err(e) = result {
            failures.push(format!("seed {seed}: {e}"));
        }
    }
    outcome(
        &failures,
        format!("1000 buoys, every arc of length {length}"),
    )
}

/// The global pan finder must find a pan exactly when one exists, and must
/// agree with the verdict route: a pan witness implies a pan, and a free
/// verdict implies none.
fn criterion_7(corpus: &[Instance]) -> Outcome {
    let mut failures = Vec::new();
    for inst in corpus {
        let agrees = match &inst.verdict {
            Ok(Verdict::Free(_)) => !inst.global_pan,
            Ok(Verdict::Forbidden(Witness::Pan(_))) => inst.global_pan,
            Ok(Verdict::Forbidden(Witness::EvenHole(_))) => true,
            Err(_) => false,
        };
        if !agrees || inst.global_pan != inst.brute_pan {
            failures.push(format!(
                "{}: global pan {} oracle pan {}",
                inst.label, inst.global_pan, inst.brute_pan
            ));
        }
    }
    let pans = corpus.iter().filter(|i| i.global_pan).count();
    outcome(
        &failures,
        format!("{} instances, {pans} with a pan", corpus.len()),
    )
}

fn peak_rss_kib() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

fn criterion_8() -> Outcome {
    let family = Family::FreeGraph {
        atoms: 95,
        max_ell: 15,
        max_bag: 5,
        max_universal: 3,
    };
    let g = (0..200u64)
        .map(|seed| GeneratorSpec { family, seed }.generate())
        .find(|g| (1900..=2100).contains(&g.n()) && (18_000..=22_000).contains(&g.m()))
        .expect("a generated graph near n = 2000, m = 20000");
    let start = Instant::now();
    let verdict = recognize(&g);
    let elapsed = start.elapsed();
    let free = matches!(verdict, Ok(Verdict::Free(_)));
    let rss = peak_rss_kib();
    let detail = format!(
        "n={} m={} in {:.3}s, peak rss {}",
        g.n(),
        g.m(),
        elapsed.as_secs_f64(),
        rss.map_or("unavailable".to_string(), |k| format!("{} MiB", k / 1024))
    );
    let failures: Vec<String> = [
        (!free).then(|| "graph not recognized as free".to_string()),
        (elapsed.as_secs_f64() >= 5.0).then(|| detail.clone()),
        rss.filter(|&k| k >= 1024 * 1024).map(|_| detail.clone()),
    ]
    .into_iter()
    .flatten()
    .collect();
    outcome(&failures, detail)
}

fn main() {
    // libtest flags such as --nocapture or a name filter are accepted and ignored.
    let start = Instant::now();
    let corpus = corpus();
    let small = small_free_graphs(1000, 14);
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        (
            "recognition matches the brute-force oracle",
            Box::new(|| criterion_1(&corpus)),
        ),
        (
            "every forbidden verdict carries a valid witness",
            Box::new(|| criterion_2(&corpus)),
        ),
        (
            "every free verdict carries a valid certificate",
            Box::new(|| criterion_3(&corpus)),
        ),
        (
            "colorings are minimum and within 1.5 omega",
            Box::new(|| criterion_4(&small)),
        ),
        (
            "tree decompositions validate and meet the width bound",
            Box::new(|| criterion_5(&small)),
        ),
        ("buoys have valid unit arc models", Box::new(criterion_6)),
        (
            "global pan finder agrees with the buoy route",
            Box::new(|| criterion_7(&corpus)),
        ),
        ("large free graph recognized quickly", Box::new(criterion_8)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        let status = if o.passed { "PASS" } else { "FAIL" };
        failed += usize::from(!o.passed);
        println!(
            "criterion {} {status}: {name} ({}; {:.1}s)",
            i + 1,
            o.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
