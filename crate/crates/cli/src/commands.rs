use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::time::Instant;

use pef::arcs::{buoy_to_unit_arcs, validate_arcs, ArcRepresentation};
use pef::buoy::Buoy;
use pef::chromatic::{
    clique_number, color_free_graph, tree_decomposition_free_graph, validate_tree_decomposition,
    Coloring,
};
use pef::oracle::{
    brute_chromatic, brute_clique_number, brute_even_hole, brute_is_free, brute_pan, Family,
    GeneratorSpec,
};
use pef::recognizer::{
    check_certificate, recognize as recognize_graph, AtomCertificate, CertificateTree, Verdict,
};
use pef::wire::{ArcsDoc, Artifact, ColoringDoc, TreeDecompositionDoc, VerdictKind, WitnessDoc};
use pef::{parse_graph, Graph, Witness};
use serde::{Deserialize, Serialize};

use crate::{Format, GenFamily, OracleQuery, Output};

const FREE: u8 = 0;
const FORBIDDEN: u8 = 1;
const INPUT_ERROR: u8 = 2;

#[derive(Debug, Serialize, Deserialize)]
pub struct InputInfo {
    pub path: String,
    pub digest: String,
    pub n: usize,
    pub m: usize,
}

/// What every command prints under `--format json`.
#[derive(Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub input: Option<InputInfo>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub summary: serde_json::Value,
    pub artifacts: Vec<Artifact>,
    pub timings_ms: BTreeMap<String, f64>,
}

impl RunReport {
    fn new(command: &str, path: &Path, g: &Graph) -> Self {
        RunReport {
            command: command.to_string(),
            input: Some(InputInfo {
                path: path.display().to_string(),
                digest: g.digest(),
                n: g.n(),
                m: g.m(),
            }),
            seed: None,
            summary: serde_json::Value::Null,
            artifacts: Vec::new(),
            timings_ms: BTreeMap::new(),
        }
    }

    fn time(&mut self, key: &str, since: Instant) {
        self.timings_ms
            .insert(key.to_string(), since.elapsed().as_secs_f64() * 1e3);
    }
}

fn load(path: &Path) -> Result<Graph, String> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| format!("stdin: {e}"))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    parse_graph(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json<T: Serialize>(value: &T) {
    emit(&(serde_json::to_string_pretty(value).expect("reports serialize") + "\n"));
}

fn roundtrip(a: &Artifact) -> Result<Artifact, String> {
    Artifact::from_json(&a.to_json()).map_err(|e| format!("round trip failed: {e}"))
}

/// Outcome of checking one artifact against a graph.
fn check_artifact(g: &Graph, a: &Artifact) -> Result<(), String> {
    match a {
        Artifact::Verdict {
            verdict,
            witness,
            certificate,
        } => {
            if let Some(w) = witness {
                check_artifact(g, &Artifact::Witness(w.clone()))?;
            }
            if let Some(c) = certificate {
                check_artifact(g, &Artifact::Certificate(c.clone()))?;
            }
            let forbidden = witness.is_some()
                || (certificate.is_none()
                    && !recognize_graph(g).map_err(|e| e.to_string())?.is_free());
            match (verdict, forbidden) {
                (VerdictKind::Free, false) | (VerdictKind::Forbidden, true) => Ok(()),
                _ => Err("verdict does not match its payload or a fresh recognition".into()),
            }
        }
        Artifact::Witness(w) => {
            let w = w.to_witness().map_err(|e| e.to_string())?;
            if w.verify(g) {
                Ok(())
            } else {
                Err(format!("witness does not verify: {w:?}"))
            }
        }
        Artifact::Certificate(c) => {
            let c = c.to_certificate().map_err(|e| e.to_string())?;
            check_certificate(g, &c).map_err(|e| e.to_string())
        }
        Artifact::Coloring(c) => {
            let c = c.to_coloring().map_err(|e| e.to_string())?;
            check_coloring(g, &c)
        }
        Artifact::TreeDecomposition(td) => {
            let td = td.to_td().map_err(|e| e.to_string())?;
            validate_tree_decomposition(g, &td)
                .map(|_| ())
                .map_err(|e| e.to_string())
        }
        Artifact::Arcs(doc) => {
            let rep = doc.to_arcs().map_err(|e| e.to_string())?;
            check_arcs(g, &rep)
        }
    }
}

fn check_coloring(g: &Graph, c: &Coloring) -> Result<(), String> {
    if let Some(v) = (0..g.n()).find(|v| c.color(*v).is_none()) {
        return Err(format!("vertex {} is uncolored", v + 1));
    }
    if let Some(&v) = c.colors.keys().find(|&&v| v >= g.n()) {
        return Err(format!("vertex {} is out of range", v + 1));
    }
    if c.colors.values().any(|&k| k == 0) {
        return Err("color 0 is not allowed".into());
    }
    match g.edges().find(|&(u, v)| c.color(u) == c.color(v)) {
        Some((u, v)) => Err(format!("edge {} {} is monochromatic", u + 1, v + 1)),
        None => Ok(()),
    }
}

fn check_arcs(g: &Graph, rep: &ArcRepresentation) -> Result<(), String> {
    if let Some(&v) = rep.arcs.keys().find(|&&v| v >= g.n()) {
        return Err(format!("vertex {} is out of range", v + 1));
    }
    validate_arcs(g, rep).map_err(|m| format!("vertices {} and {}: {m}", m.u + 1, m.v + 1))?;
    if rep.unit && !rep.is_unit() {
        return Err("arcs claimed unit have different lengths".into());
    }
    Ok(())
}

/// `--verify`: check the payload, then check it again after a JSON round trip.
fn self_check(g: &Graph, a: &Artifact) -> Result<(), String> {
    check_artifact(g, a)?;
    check_artifact(g, &roundtrip(a)?)
}

fn witness_dot(g: &Graph, w: &Witness) -> String {
    let mut vs: Vec<usize> = match w {
        Witness::Pan(p) => p.hole.0.iter().copied().chain([p.handle]).collect(),
        Witness::EvenHole(h) => h.0.clone(),
    };
    vs.sort_unstable();
    let mut out = String::from("graph witness {\n");
    for (a, &u) in vs.iter().enumerate() {
        for &v in &vs[a + 1..] {
            if g.adjacent(u, v) {
                let _ = writeln!(out, "  {} -- {};", u + 1, v + 1);
            }
        }
    }
    out.push_str("}\n");
    out
}

fn certificate_dot(c: &CertificateTree) -> String {
    c.components
        .iter()
        .map(|t| t.to_dot())
        .collect::<Vec<_>>()
        .join("\n")
}

fn unsupported(format: Format, command: &str) -> u8 {
    let name = match format {
        Format::Json => "json",
        Format::Dot => "dot",
        Format::Svg => "svg",
    };
    eprintln!("error: --format {name} is not available for {command}");
    INPUT_ERROR
}

struct Recognized {
    code: u8,
    report: RunReport,
    dot: String,
}

fn recognize_one(
    path: &Path,
    witness: bool,
    certificate: bool,
    verify: bool,
) -> Result<Recognized, String> {
    let g = load(path)?;
    let mut report = RunReport::new("recognize", path, &g);
    let start = Instant::now();
    let verdict = recognize_graph(&g).map_err(|e| format!("{}: {e}", path.display()))?;
    report.time("recognize", start);
    let (code, dot) = match &verdict {
        Verdict::Free(c) => {
            report.summary = serde_json::json!({ "verdict": "free", "atoms": c.atoms.len(), "components": c.components.len() });
            (FREE, certificate_dot(c))
        }
        Verdict::Forbidden(w) => {
            let kind = if w.is_pan() { "pan" } else { "even-hole" };
            report.summary = serde_json::json!({ "verdict": "forbidden", "witness": kind });
            (FORBIDDEN, witness_dot(&g, w))
        }
    };
    let artifact = Artifact::verdict(&verdict, witness || verify, certificate || verify);
    if verify {
        let start = Instant::now();
        self_check(&g, &artifact)
            .map_err(|e| format!("{}: self-check failed: {e}", path.display()))?;
        report.time("verify", start);
    }
    report
        .artifacts
        .push(Artifact::verdict(&verdict, witness, certificate));
    Ok(Recognized { code, report, dot })
}

pub fn recognize(paths: &[PathBuf], witness: bool, certificate: bool, out: &Output) -> u8 {
    if out.format == Format::Svg {
        return unsupported(out.format, "recognize");
    }
    let results = pef::par::map(paths, |p| {
        recognize_one(p, witness, certificate, out.verify)
    });
    let mut code = FREE;
    let mut reports = Vec::new();
    for r in results {
        match r {
            Ok(r) => {
                code = code.max(r.code);
                if out.format == Format::Dot {
                    emit(&r.dot);
                }
                reports.push(r.report);
            }
            Err(e) => {
                eprintln!("error: {e}");
                code = INPUT_ERROR;
            }
        }
    }
    if out.format == Format::Json {
        if paths.len() == 1 {
            if let Some(r) = reports.first() {
                print_json(r);
            }
        } else {
            print_json(&reports);
        }
    }
    code
}

/// Loads and recognizes; a forbidden graph prints its witness report and
/// yields the exit code.
fn free_input(command: &str, path: &Path) -> Result<(Graph, CertificateTree, RunReport), u8> {
    let g = load(path).map_err(|e| {
        eprintln!("error: {e}");
        INPUT_ERROR
    })?;
    let mut report = RunReport::new(command, path, &g);
    let start = Instant::now();
    let verdict = recognize_graph(&g).map_err(|e| {
        eprintln!("error: {e}");
        INPUT_ERROR
    })?;
    report.time("recognize", start);
    match verdict {
        Verdict::Free(c) => Ok((g, c, report)),
        Verdict::Forbidden(w) => {
            report.summary = serde_json::json!({ "verdict": "forbidden" });
            report
                .artifacts
                .push(Artifact::Witness(WitnessDoc::from_witness(&w)));
            print_json(&report);
            Err(FORBIDDEN)
        }
    }
}

fn finish(report: &RunReport, g: &Graph, verify: bool) -> u8 {
    if verify {
        for a in &report.artifacts {
            if let Err(e) = self_check(g, a) {
                eprintln!("error: self-check failed: {e}");
                return INPUT_ERROR;
            }
        }
    }
    print_json(report);
    FREE
}

pub fn color(path: &Path, out: &Output) -> u8 {
    if out.format == Format::Svg {
        return unsupported(out.format, "color");
    }
    let (g, cert, mut report) = match free_input("color", path) {
        Ok(x) => x,
        Err(code) => return code,
    };
    let start = Instant::now();
    let (coloring, omega) = match (color_free_graph(&g, &cert), clique_number(&g, &cert)) {
        (Ok(c), Ok(w)) => (c, w),
        (Err(e), _) | (_, Err(e)) => {
            eprintln!("error: {e}");
            return INPUT_ERROR;
        }
    };
    report.time("color", start);
    let chi = coloring.palette();
    report.summary = serde_json::json!({
        "verdict": "free",
        "chi": chi,
        "omega": omega,
        "chi_within_1_5_omega": 2 * chi <= 3 * omega,
    });
    report
        .artifacts
        .push(Artifact::Coloring(ColoringDoc::from_coloring(&coloring)));
    if out.format == Format::Dot {
        let mut dot = String::from("graph colored {\n");
        for (&v, &k) in &coloring.colors {
            let _ = writeln!(dot, "  {} [label=\"{}:{k}\"];", v + 1, v + 1);
        }
        for (u, v) in g.edges() {
            let _ = writeln!(dot, "  {} -- {};", u + 1, v + 1);
        }
        dot.push_str("}\n");
        emit(&dot);
        return FREE;
    }
    finish(&report, &g, out.verify)
}

pub fn treewidth(path: &Path, out: &Output) -> u8 {
    if out.format == Format::Svg {
        return unsupported(out.format, "treewidth");
    }
    let (g, cert, mut report) = match free_input("treewidth", path) {
        Ok(x) => x,
        Err(code) => return code,
    };
    let start = Instant::now();
    let (td, omega) = match (
        tree_decomposition_free_graph(&g, &cert),
        clique_number(&g, &cert),
    ) {
        (Ok(td), Ok(w)) => (td, w),
        (Err(e), _) | (_, Err(e)) => {
            eprintln!("error: {e}");
            return INPUT_ERROR;
        }
    };
    report.time("treewidth", start);
    let width = td.width();
    report.summary = serde_json::json!({
        "verdict": "free",
        "width": width,
        "omega": omega,
        "width_plus_one_within_1_5_omega": 2 * (width + 1) <= 3 * omega.max(1),
    });
    if out.format == Format::Dot {
        emit(&td.to_dot());
        return FREE;
    }
    report
        .artifacts
        .push(Artifact::TreeDecomposition(TreeDecompositionDoc::from_td(
            &td,
        )));
    finish(&report, &g, out.verify)
}

pub fn arcs(path: &Path, out: &Output) -> u8 {
    if out.format == Format::Dot {
        return unsupported(out.format, "arcs");
    }
    let (g, cert, mut report) = match free_input("arcs", path) {
        Ok(x) => x,
        Err(code) => return code,
    };
    let start = Instant::now();
    let mut reps = Vec::new();
    for atom in &cert.atoms {
        let AtomCertificate::Structured { bags, .. } = &atom.certificate else {
            continue;
        };
        let rep = Buoy::new(g.n(), bags.clone())
            .map_err(|e| e.to_string())
            .and_then(|b| buoy_to_unit_arcs(&g, &b).map_err(|e| e.to_string()));
        match rep {
            Ok(r) => reps.push(r),
            Err(e) => {
                eprintln!("error: {e}");
                return INPUT_ERROR;
            }
        }
    }
    report.time("arcs", start);
    if out.format == Format::Svg {
        match reps.first() {
            Some(r) => emit(&r.to_svg()),
            None => {
                emit("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"10\" height=\"10\"/>\n")
            }
        }
        return FREE;
    }
    report.summary = serde_json::json!({
        "verdict": "free",
        "buoys": reps.len(),
        "all_unit": reps.iter().all(|r| r.unit && r.is_unit()),
    });
    report
        .artifacts
        .extend(reps.iter().map(|r| Artifact::Arcs(ArcsDoc::from_arcs(r))));
    finish(&report, &g, out.verify)
}

pub fn verify(graph: &Path, artifact: &Path) -> u8 {
    let g = match load(graph) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return INPUT_ERROR;
        }
    };
    let text = match std::fs::read_to_string(artifact) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", artifact.display());
            return INPUT_ERROR;
        }
    };
    let artifacts = match Artifact::from_json(&text) {
        Ok(a) => vec![a],
        Err(_) => match serde_json::from_str::<RunReport>(&text) {
            Ok(r) => r.artifacts,
            Err(e) => {
                eprintln!(
                    "error: {}: not an artifact or report: {e}",
                    artifact.display()
                );
                return INPUT_ERROR;
            }
        },
    };
    if let Some(input) = serde_json::from_str::<RunReport>(&text)
        .ok()
        .and_then(|r| r.input)
    {
        if input.digest != g.digest() {
            print_json(
                &serde_json::json!({ "valid": false, "reason": "report was produced for a different graph" }),
            );
            return FORBIDDEN;
        }
    }
    for a in &artifacts {
        if let Err(reason) = check_artifact(&g, a) {
            print_json(&serde_json::json!({ "valid": false, "reason": reason }));
            return FORBIDDEN;
        }
    }
    print_json(&serde_json::json!({ "valid": true, "checked": artifacts.len() }));
    FREE
}

pub fn oracle(query: OracleQuery, path: &Path) -> u8 {
    let g = match load(path) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return INPUT_ERROR;
        }
    };
    let (name, result) = match query {
        OracleQuery::EvenHole => (
            "even-hole",
            brute_even_hole(&g).map(|h| {
                serde_json::json!(h.map(|h| WitnessDoc::from_witness(&Witness::EvenHole(h))))
            }),
        ),
        OracleQuery::Pan => (
            "pan",
            brute_pan(&g)
                .map(|p| serde_json::json!(p.map(|p| WitnessDoc::from_witness(&Witness::Pan(p))))),
        ),
        OracleQuery::Free => ("free", brute_is_free(&g).map(|f| serde_json::json!(f))),
        OracleQuery::Chromatic => (
            "chromatic",
            brute_chromatic(&g).map(|(k, colors)| {
                let coloring = Coloring {
                    colors: colors.into_iter().enumerate().collect(),
                };
                serde_json::json!({ "chi": k, "coloring": ColoringDoc::from_coloring(&coloring) })
            }),
        ),
        OracleQuery::Clique => (
            "clique",
            brute_clique_number(&g).map(|w| serde_json::json!(w)),
        ),
    };
    match result {
        Ok(r) => {
            print_json(
                &serde_json::json!({ "command": "oracle", "query": name, "digest": g.digest(), "result": r }),
            );
            FREE
        }
        Err(e) => {
            eprintln!("error: {e}");
            INPUT_ERROR
        }
    }
}

pub fn gen(family: GenFamily, seed: Option<u64>) -> u8 {
    let seed = match seed {
        Some(s) => s,
        None => match std::env::var("PEF_SEED") {
            Ok(s) => match s.trim().parse() {
                Ok(s) => s,
                Err(_) => {
                    eprintln!("error: PEF_SEED is not an unsigned integer: {s:?}");
                    return INPUT_ERROR;
                }
            },
            Err(_) => 0,
        },
    };
    let family = match family {
        GenFamily::RandomGraph { n, p } => Family::RandomGraph { n, p },
        GenFamily::RandomBuoy { ell, max_bag } => Family::RandomBuoy { ell, max_bag },
        GenFamily::FreeGraph {
            atoms,
            max_ell,
            max_bag,
            max_universal,
        } => Family::FreeGraph {
            atoms,
            max_ell,
            max_bag,
            max_universal,
        },
        GenFamily::NearMiss {
            atoms,
            max_ell,
            max_bag,
            max_universal,
        } => Family::NearMiss {
            atoms,
            max_ell,
            max_bag,
            max_universal,
        },
    };
    let spec = GeneratorSpec { family, seed };
    let g = spec.generate();
    let spec_json = serde_json::to_string(&spec).expect("spec serializes");
    emit(&format!(
        "c generator {spec_json}\nc seed {seed}\n{}",
        g.to_dimacs()
    ));
    FREE
}
