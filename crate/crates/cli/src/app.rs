//! Command dispatch. Everything writes into strings so the commands can be
//! driven from tests without spawning the binary.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use voltage_core::zregion::{CircleAnalysis, Status};
use voltage_core::{CircleSubgraph, DartGraph, EdgeChain, Elem, FaceChain, VoltageEmbedding, WalkSpec};

use crate::families::{face_chain, generate, Family};
use crate::format::{parse, InstanceFile};
use crate::fuzz::fuzz;
use crate::output::{graph_dot, json, zgraph_dot, ZGraphJson};
use crate::verify::{status_word, verify_instance, CHECKS};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_CHECK_FAILED: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "voltage", version, about = "Derived embeddings of voltage graph embeddings, checked exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Coset,
    Brute,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse an instance file and print its base surface.
    Validate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Build the derived embedding.
    Derive {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
    },
    /// Local groups, face lifting, coset counts and circle analysis.
    Analyze {
        file: PathBuf,
        /// Named face chain `I` for the coset counts.
        #[arg(long)]
        faces: Option<String>,
        /// Named circle to analyze.
        #[arg(long)]
        circle: Option<String>,
        /// Group element picking the derived component.
        #[arg(long)]
        component: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Total graph voltages, special claws, and the medial-of-derived check.
    Medial {
        file: PathBuf,
        /// Edge name whose special claw is printed; all edges by default.
        #[arg(long)]
        claw: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
    },
    /// The z-graph of the fiber over a circle.
    Zgraph {
        file: PathBuf,
        #[arg(long)]
        circle: String,
        #[arg(long)]
        component: Option<String>,
        #[arg(long, value_enum, default_value_t = Method::Coset)]
        method: Method,
        #[arg(long)]
        json: bool,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
    },
    /// Run every check on a file, or on `count` random instances.
    Verify {
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long)]
        json: bool,
        /// Include wall-clock times (makes the report nondeterministic).
        #[arg(long)]
        timing: bool,
    },
    /// Generate one of the example families: ex41 A B, ex42 N, ex43 N,
    /// ex44 K D, ex45 N.
    Example {
        family: String,
        params: Vec<usize>,
        #[arg(long)]
        json: bool,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
    },
}

#[derive(Debug, Default)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Validation(String),
    /// A check failed; the report still goes to stdout.
    Check(String),
}

type Res = Result<String, (Failure, String)>;

fn usage(msg: impl Into<String>) -> (Failure, String) {
    (Failure::Usage(msg.into()), String::new())
}

fn invalid(msg: impl ToString) -> (Failure, String) {
    (Failure::Validation(msg.to_string()), String::new())
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Output { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(stdout) => Output { code: EXIT_OK, stdout, stderr: String::new() },
        Err((Failure::Usage(m), stdout)) => Output { code: EXIT_USAGE, stdout, stderr: format!("error: {m}\n") },
        Err((Failure::Validation(m), stdout)) => {
            Output { code: EXIT_VALIDATION, stdout, stderr: format!("error: {m}\n") }
        }
        Err((Failure::Check(m), stdout)) => Output { code: EXIT_CHECK_FAILED, stdout, stderr: format!("FAILED: {m}\n") },
    }
}

fn load(path: &PathBuf) -> Result<InstanceFile, (Failure, String)> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn element(ve: &VoltageEmbedding, name: Option<&str>) -> Result<Elem, (Failure, String)> {
    match name {
        None => Ok(ve.group().identity()),
        Some(s) => ve.group().parse_element(s).ok_or_else(|| invalid(format!("`{s}` is not a group element"))),
    }
}

fn named_circle(file: &InstanceFile, name: &str) -> Result<CircleSubgraph, (Failure, String)> {
    let c = file.circles.iter().find(|c| c.name == name).ok_or_else(|| invalid(format!("no circle named `{name}`")))?;
    CircleSubgraph::new(file.ve.base(), EdgeChain::new(c.edges.iter().copied()), c.base).map_err(invalid)
}

fn dispatch(cmd: Command) -> Res {
    match cmd {
        Command::Validate { file, json: as_json } => validate(&load(&file)?, as_json),
        Command::Derive { file, json: as_json, dot } => derive(&load(&file)?, as_json, dot),
        Command::Analyze { file, faces, circle, component, seed, json: as_json } => {
            analyze(&load(&file)?, faces.as_deref(), circle.as_deref(), component.as_deref(), seed, as_json)
        }
        Command::Medial { file, claw, json: as_json, dot } => medial(&load(&file)?, claw.as_deref(), as_json, dot),
        Command::Zgraph { file, circle, component, method, json: as_json, dot } => {
            zgraph(&load(&file)?, &circle, component.as_deref(), method, as_json, dot)
        }
        Command::Verify { file: Some(file), seed, json: as_json, .. } => verify_file(&load(&file)?, seed, as_json),
        Command::Verify { file: None, seed, count, json: as_json, timing } => {
            let report = fuzz(seed, count, timing);
            let text = if as_json { json(&report) } else { report.text() };
            if report.failed() {
                Err((Failure::Check("fuzz run has failing checks".into()), text))
            } else {
                Ok(text)
            }
        }
        Command::Example { family, params, json: as_json, dot } => example(&family, &params, as_json, dot),
    }
}

fn surface_line(ve: &VoltageEmbedding) -> String {
    let g = ve.base();
    let r = g.genus_report();
    format!(
        "V={} E={} F={} χ={} {} genus={} group order {}",
        g.vertex_count(),
        g.edge_count(),
        g.faces().len(),
        r.euler_characteristic,
        if r.orientable { "orientable" } else { "nonorientable" },
        r.genus,
        ve.group().order()
    )
}

fn validate(file: &InstanceFile, as_json: bool) -> Res {
    let ve = &file.ve;
    let g = ve.base();
    if as_json {
        let r = g.genus_report();
        return Ok(json(&json!({
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
            "faces": g.faces().len(),
            "euler_characteristic": r.euler_characteristic,
            "orientable": r.orientable,
            "genus": r.genus,
            "group_order": ve.group().order(),
            "circles": file.circles.iter().map(|c| &c.name).collect::<Vec<_>>(),
            "face_chains": file.face_chains.iter().map(|c| &c.name).collect::<Vec<_>>(),
        })));
    }
    let mut out = format!("ok: {}\n", surface_line(ve));
    for c in &file.circles {
        let _ = writeln!(out, "circle {}: {} edge(s)", c.name, c.edges.len());
    }
    Ok(out)
}

fn derive(file: &InstanceFile, as_json: bool, dot: bool) -> Res {
    let ve = &file.ve;
    let d = ve.derive().map_err(invalid)?;
    let dg = d.graph();
    if dot {
        return Ok(graph_dot(dg, "derived"));
    }
    let pred = ve.face_lift_prediction();
    let r = dg.genus_report();
    let faces = dg.faces().len();
    let consistent = pred.face_count == faces && pred.euler_characteristic == r.euler_characteristic;
    let text = if as_json {
        json(&json!({
            "vertices": dg.vertex_count(),
            "edges": dg.edge_count(),
            "faces": faces,
            "euler_characteristic": r.euler_characteristic,
            "orientable": r.orientable,
            "components": d.component_count(),
            "predicted_faces_per_base_face": pred.per_face,
            "face_lifting": status_word(if consistent { Status::Confirmed } else { Status::Failed }),
        }))
    } else {
        format!(
            "derived: V={} E={} F={} χ={} {} components={}\nface lifting: predicted F={} χ={} ({})\n",
            dg.vertex_count(),
            dg.edge_count(),
            faces,
            r.euler_characteristic,
            if r.orientable { "orientable" } else { "nonorientable" },
            d.component_count(),
            pred.face_count,
            pred.euler_characteristic,
            status_word(if consistent { Status::Confirmed } else { Status::Failed })
        )
    };
    if consistent {
        Ok(text)
    } else {
        Err((Failure::Check("face lifting disagrees with traced faces".into()), text))
    }
}

fn names(ve: &VoltageEmbedding, set: &[Elem]) -> Vec<String> {
    set.iter().map(|&a| ve.group().name(a).to_string()).collect()
}

fn analyze(
    file: &InstanceFile,
    faces: Option<&str>,
    circle: Option<&str>,
    component: Option<&str>,
    seed: u64,
    as_json: bool,
) -> Res {
    let ve = &file.ve;
    let g = ve.base();
    let d = ve.derive().map_err(invalid)?;
    let mut failed = Vec::new();
    let mut doc = serde_json::Map::new();
    let mut out = format!("base: {}\n", surface_line(ve));

    let local: Vec<Vec<String>> = (0..g.vertex_count())
        .map(|v| ve.local_voltage_group(v).map(|s| names(ve, s.elements())))
        .collect::<Result<_, _>>()
        .map_err(invalid)?;
    let predicted = ve.group().order() / local[0].len();
    let observed = d.component_count();
    let _ = writeln!(out, "A(0) = {{{}}}", local[0].join(" "));
    let _ = writeln!(out, "components: predicted {predicted}, observed {observed}");
    if predicted != observed {
        failed.push("component count".to_string());
    }
    doc.insert("local_groups".into(), json!(local));
    doc.insert("components".into(), json!({"predicted": predicted, "observed": observed}));

    if let Some(name) = faces {
        let chain = face_chain(file, name).ok_or_else(|| invalid(format!("no face chain named `{name}`")))?;
        let (text, value, ok) = coset_section(ve, &d, &chain, seed)?;
        out.push_str(&text);
        doc.insert("coset_counts".into(), value);
        if !ok {
            failed.push("coset counts".into());
        }
    }

    if let Some(name) = circle {
        let c = named_circle(file, name)?;
        let a = element(ve, component)?;
        let an = CircleAnalysis::new(ve, &c, a).map_err(invalid)?;
        let _ = writeln!(
            out,
            "circle {name}: {:?}, ω={} of order {}, {} lifted circle(s) in the component",
            an.kind(),
            ve.group().name(an.omega()),
            an.omega_order(),
            an.fiber_circles().circles.len()
        );
        let reports = an.all_checks().map_err(invalid)?;
        let mut checks = Vec::new();
        for r in &reports {
            let _ = writeln!(out, "  {}: {}", r.check, status_word(r.status()));
            for f in r.failures() {
                let _ = writeln!(out, "    {}: {}", f.name, f.witness);
            }
            if r.status() == Status::Failed {
                failed.push(r.check.to_string());
            }
            checks.push(json!({"check": r.check, "status": status_word(r.status()), "note": r.note}));
        }
        doc.insert(
            "circle".into(),
            json!({
                "name": name,
                "kind": format!("{:?}", an.kind()),
                "omega": ve.group().name(an.omega()),
                "omega_order": an.omega_order(),
                "lifted_circles": an.fiber_circles().circles.len(),
                "checks": checks,
            }),
        );
    }

    let text = if as_json { json(&doc) } else { out };
    if failed.is_empty() {
        Ok(text)
    } else {
        Err((Failure::Check(failed.join(", ")), text))
    }
}

/// Coset counts for `I` with `y` the whole skeleton and `W` a closed walk
/// through a non-tree edge.
fn coset_section(
    ve: &VoltageEmbedding,
    d: &voltage_core::DerivedEmbedding,
    chain: &FaceChain,
    seed: u64,
) -> Result<(String, serde_json::Value, bool), (Failure, String)> {
    let g = ve.base();
    let skel = g.subcomplex_skeleton(&g.faces(), chain).map_err(invalid)?;
    let v = *skel.vertices.first().ok_or_else(|| invalid("S:I is empty"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let walk = crate::verify::closed_walk_in(g, skel.edges.edges(), v, &mut rng)
        .unwrap_or_else(|| WalkSpec::new(g, Vec::new()).expect("empty walk"));
    let counts = ve.coset_counts(d, v, chain, &skel.edges, &walk).map_err(invalid)?;
    let mut out = format!("coset counts at v={v}, W={:?}:\n", walk.darts().iter().map(|x| x.to_string()).collect::<Vec<_>>());
    let rows = [
        ("components of S^α", &counts.components),
        ("components of (S:I)^α per component", &counts.skeleton),
        ("components of (G:y)^α per (S:I)^α component", &counts.fiber),
        ("consecutive lift sets per (G:y)^α component", &counts.lifts),
    ];
    let mut value = Vec::new();
    for (label, c) in rows {
        let _ = writeln!(out, "  {label}: predicted {}, observed {:?}", c.predicted, c.observed);
        value.push(json!({"quantity": label, "predicted": c.predicted, "observed": c.observed}));
    }
    Ok((out, json!(value), counts.holds()))
}

fn medial(file: &InstanceFile, claw: Option<&str>, as_json: bool, dot: bool) -> Res {
    let ve = &file.ve;
    let g = ve.base();
    let tvg = ve.total_graph_with_voltages().map_err(invalid)?;
    if dot {
        return Ok(graph_dot(tvg.graph(), "total"));
    }
    let edges: Vec<usize> = match claw {
        Some(name) => vec![file.edge_index(name).ok_or_else(|| invalid(format!("no edge named `{name}`")))?],
        None => (0..g.edge_count()).collect(),
    };
    let medial_ok = ve.verify_medial_of_derived();
    let mut out = format!(
        "total graph: V={} E={}\nmedial of derived: {}\n",
        tvg.graph().vertex_count(),
        tvg.graph().edge_count(),
        match &medial_ok {
            Ok(()) => "confirmed".to_string(),
            Err(e) => format!("FAILED ({e})"),
        }
    );
    let mut failed = medial_ok.is_err();
    let mut claws = Vec::new();
    for e in edges {
        let c = tvg.special_claw(g, e).map_err(invalid)?;
        let m = tvg.claw_voltages(&c);
        let trivial = m.iter().flatten().all(|&x| x == ve.group().identity());
        let a_w = tvg.medial_local_group(c.w_tip).map_err(invalid)?;
        let a_v = ve.local_voltage_group(c.vertex).map_err(invalid)?;
        failed |= !trivial || a_w != a_v;
        let _ = writeln!(
            out,
            "claw {}: vertex {} hub {} tips w={} y={}; internal voltages {}; A′(w′) {} A(v)",
            file.edge_names[e],
            c.vertex,
            c.hub,
            c.w_tip,
            c.y_tip,
            if trivial { "trivial" } else { "NONTRIVIAL" },
            if a_w == a_v { "=" } else { "≠" }
        );
        claws.push(json!({
            "edge": file.edge_names[e],
            "vertex": c.vertex,
            "hub": c.hub,
            "w_tip": c.w_tip,
            "y_tip": c.y_tip,
            "trivial": trivial,
            "medial_local_group": names(ve, a_w.elements()),
            "local_group": names(ve, a_v.elements()),
        }));
    }
    let text = if as_json {
        json(&json!({
            "total_vertices": tvg.graph().vertex_count(),
            "total_edges": tvg.graph().edge_count(),
            "medial_of_derived": medial_ok.is_ok(),
            "claws": claws,
        }))
    } else {
        out
    };
    if failed {
        Err((Failure::Check("medial checks failed".into()), text))
    } else {
        Ok(text)
    }
}

fn zgraph(file: &InstanceFile, circle: &str, component: Option<&str>, method: Method, as_json: bool, dot: bool) -> Res {
    let ve = &file.ve;
    let c = named_circle(file, circle)?;
    let a = element(ve, component)?;
    let an = CircleAnalysis::new(ve, &c, a).map_err(invalid)?;
    let zg = match method {
        Method::Coset => an.zgraph_coset(),
        Method::Brute => an.zgraph_brute(),
    }
    .map_err(invalid)?;
    if dot {
        return Ok(zgraph_dot(&zg, ve.group()));
    }
    let j = ZGraphJson::new(&zg, ve.group());
    if as_json {
        return Ok(json(&j));
    }
    let mut out = format!(
        "z-graph over {circle} ({:?}): {} vertices, {} edges, {} loops\n",
        an.kind(),
        zg.vertex_count(),
        zg.edge_count(),
        zg.loop_count()
    );
    for (i, v) in j.vertices.iter().enumerate() {
        let _ = writeln!(out, "  v{i}: {v}");
    }
    for e in &j.edges {
        let _ = writeln!(out, "  v{} -- v{}: {}", e.ends[0].vertex, e.ends[1].vertex, e.label);
    }
    Ok(out)
}

fn verify_file(file: &InstanceFile, seed: u64, as_json: bool) -> Res {
    let ve = &file.ve;
    let circles = file
        .circles
        .iter()
        .map(|c| CircleSubgraph::new(ve.base(), EdgeChain::new(c.edges.iter().copied()), c.base))
        .collect::<Result<Vec<_>, _>>()
        .map_err(invalid)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = verify_instance(ve, &circles, &mut rng);
    let text = if as_json {
        json(&json!({"summary": surface_line(ve), "checks": t}))
    } else {
        let mut out = format!("{}\n", surface_line(ve));
        for name in CHECKS {
            let x = t.get(name);
            let _ = writeln!(
                out,
                "  {name}: {} (confirmed {}, vacuous {}, failed {})",
                status_word(x.status()),
                x.confirmed,
                x.vacuous,
                x.failed
            );
            if let Some(w) = &x.first_failure {
                let _ = writeln!(out, "    {w}");
            }
        }
        out
    };
    if t.any_failed() {
        Err((Failure::Check("instance has failing checks".into()), text))
    } else {
        Ok(text)
    }
}

fn example(name: &str, params: &[usize], as_json: bool, dot: bool) -> Res {
    let family = Family::parse(name, params).map_err(|e| usage(e.to_string()))?;
    let ex = generate(family).map_err(invalid)?;
    let r = &ex.record;
    let text = if dot {
        let an = CircleAnalysis::new(
            &ex.instance.ve,
            &CircleSubgraph::new(ex.instance.ve.base(), EdgeChain::new([ex.instance.circles[0].edges[0]]), 0)
                .map_err(invalid)?,
            ex.instance.ve.group().identity(),
        )
        .map_err(invalid)?;
        zgraph_dot(&an.zgraph_coset().map_err(invalid)?, ex.instance.ve.group())
    } else if as_json {
        json(&json!({"instance": ex.instance.print(), "record": r}))
    } else {
        let mut out = format!("# {}\n{}", r.family, ex.instance.print());
        for e in &r.expectations {
            let _ = writeln!(
                out,
                "# {}: expected {}, observed {:?} {}",
                e.quantity,
                e.expected,
                e.observed,
                if e.holds { "ok" } else { "MISMATCH" }
            );
        }
        for c in &r.failed_checks {
            let _ = writeln!(out, "# check {c} FAILED");
        }
        for d in &r.discrepancies {
            let _ = writeln!(out, "# discrepancy: {d}");
        }
        out
    };
    if r.holds() {
        Ok(text)
    } else {
        Err((Failure::Check(format!("{} does not match its signature", r.family)), text))
    }
}
