//! The line-oriented instance format.
//!
//! ```text
//! # comments and blank lines are ignored
//! group product cyclic 2 cyclic 3
//! vertices 1
//! edge x 0 0 sign=- voltage=1,0
//! edge y 0 0 sign=+ voltage=0,1
//! rotation 0: x+ y+ x- y-
//! circle z: x base=0
//! faces I: 0
//! ```
//!
//! `group table <n>` is followed by `n` lines of `n` indices each.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;
use voltage_core::{Dart, DartGraph, EmbeddedGraph, FiniteGroup, GroupSpec, Sign, VoltageEmbedding};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeDecl {
    pub name: String,
    pub tail: usize,
    pub head: usize,
    pub sign: Sign,
    pub voltage: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedCircle {
    pub name: String,
    pub edges: Vec<usize>,
    pub base: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedFaces {
    pub name: String,
    pub faces: Vec<usize>,
}

/// A parsed instance file. Holds the validated voltage embedding plus the
/// names needed to print it back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub ve: VoltageEmbedding,
    pub edge_names: Vec<String>,
    pub circles: Vec<NamedCircle>,
    pub face_chains: Vec<NamedFaces>,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_usize(line: usize, tok: &str, what: &str) -> Result<usize, ParseError> {
    tok.parse().or_else(|_| err(line, format!("expected {what}, found `{tok}`")))
}

struct Lines<'a> {
    inner: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
}

impl<'a> Lines<'a> {
    /// Next meaningful line, with its 1-based number.
    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (i, raw) in self.inner.by_ref() {
            let text = raw.split('#').next().unwrap_or("").trim();
            if !text.is_empty() {
                return Some((i + 1, text));
            }
        }
        None
    }
}

/// Parses the group spec starting at `toks`; table rows are pulled from
/// `lines` once the whole spec has been read.
fn parse_group_spec<'t>(line: usize, toks: &mut impl Iterator<Item = &'t str>) -> Result<GroupSpec, ParseError> {
    match toks.next() {
        Some("cyclic") => {
            let n = parse_usize(line, toks.next().unwrap_or(""), "group order")?;
            Ok(GroupSpec::Cyclic(n))
        }
        Some("table") => {
            let n = parse_usize(line, toks.next().unwrap_or(""), "table size")?;
            Ok(GroupSpec::Table(n))
        }
        Some("product") => {
            let a = parse_group_spec(line, toks)?;
            let b = parse_group_spec(line, toks)?;
            if matches!(a, GroupSpec::Table(_)) || matches!(b, GroupSpec::Table(_)) {
                return err(line, "table groups cannot be factors of a product");
            }
            Ok(GroupSpec::Product(Box::new(a), Box::new(b)))
        }
        Some(other) => err(line, format!("unknown group kind `{other}`")),
        None => err(line, "incomplete group spec"),
    }
}

fn build_group(line: usize, spec: &GroupSpec, lines: &mut Lines) -> Result<FiniteGroup, ParseError> {
    let wrap = |e: voltage_core::Error| ParseError { line, message: e.to_string() };
    match spec {
        GroupSpec::Cyclic(n) => FiniteGroup::cyclic(*n).map_err(wrap),
        GroupSpec::Product(a, b) => {
            let ga = build_group(line, a, lines)?;
            let gb = build_group(line, b, lines)?;
            FiniteGroup::direct_product(&ga, &gb).map_err(wrap)
        }
        GroupSpec::Table(n) => {
            let mut rows = Vec::with_capacity(*n);
            for _ in 0..*n {
                let Some((l, text)) = lines.next() else {
                    return err(line, format!("group table needs {n} rows"));
                };
                let row = text
                    .split_whitespace()
                    .map(|t| parse_usize(l, t, "table entry"))
                    .collect::<Result<Vec<_>, _>>()?;
                rows.push(row);
            }
            FiniteGroup::from_table(rows).map_err(wrap)
        }
    }
}

pub fn parse(text: &str) -> Result<InstanceFile, ParseError> {
    let mut lines = Lines { inner: text.lines().enumerate().peekable() };
    let mut group: Option<FiniteGroup> = None;
    let mut vertices: Option<(usize, usize)> = None;
    let mut edges: Vec<EdgeDecl> = Vec::new();
    let mut by_name: HashMap<String, usize> = HashMap::new();
    let mut rotations: Vec<Option<Vec<Dart>>> = Vec::new();
    let mut dart_line: HashMap<Dart, usize> = HashMap::new();
    let mut circles = Vec::new();
    let mut face_chains = Vec::new();

    while let Some((line, text)) = lines.next() {
        let (keyword, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
        let rest = rest.trim();
        match keyword {
            "group" => {
                if group.is_some() {
                    return err(line, "group declared twice");
                }
                let mut toks = rest.split_whitespace();
                let spec = parse_group_spec(line, &mut toks)?;
                if let Some(extra) = toks.next() {
                    return err(line, format!("unexpected `{extra}` after group spec"));
                }
                group = Some(build_group(line, &spec, &mut lines)?);
            }
            "vertices" => {
                if vertices.is_some() {
                    return err(line, "vertices declared twice");
                }
                let n = parse_usize(line, rest, "vertex count")?;
                if n == 0 {
                    return err(line, "need at least one vertex");
                }
                vertices = Some((n, line));
                rotations = vec![None; n];
            }
            "edge" => {
                let Some((n, _)) = vertices else {
                    return err(line, "edge before vertices");
                };
                if group.is_none() {
                    return err(line, "edge before group");
                }
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let [name, tail, head, sign, voltage] = toks[..] else {
                    return err(line, "expected `edge <name> <tail> <head> sign=<+|-> voltage=<element>`");
                };
                if !valid_name(name) {
                    return err(line, format!("invalid edge name `{name}`"));
                }
                if by_name.contains_key(name) {
                    return err(line, format!("edge `{name}` declared twice"));
                }
                let tail = parse_usize(line, tail, "tail vertex")?;
                let head = parse_usize(line, head, "head vertex")?;
                for v in [tail, head] {
                    if v >= n {
                        return err(line, format!("vertex {v} out of range (vertices {n})"));
                    }
                }
                let sign = match sign {
                    "sign=+" => Sign::Plus,
                    "sign=-" => Sign::Minus,
                    _ => return err(line, format!("expected sign=+ or sign=-, found `{sign}`")),
                };
                let Some(voltage) = voltage.strip_prefix("voltage=") else {
                    return err(line, format!("expected voltage=<element>, found `{voltage}`"));
                };
                if group.as_ref().unwrap().parse_element(voltage).is_none() {
                    return err(line, format!("`{voltage}` is not a group element"));
                }
                by_name.insert(name.to_string(), edges.len());
                edges.push(EdgeDecl { name: name.into(), tail, head, sign, voltage: voltage.into() });
            }
            "rotation" => {
                let Some((vs, darts)) = rest.split_once(':') else {
                    return err(line, "expected `rotation <v>: <darts>`");
                };
                let v = parse_usize(line, vs.trim(), "vertex")?;
                if v >= rotations.len() {
                    return err(line, format!("vertex {v} out of range"));
                }
                if rotations[v].is_some() {
                    return err(line, format!("rotation at vertex {v} given twice"));
                }
                let mut rot = Vec::new();
                for tok in darts.split_whitespace() {
                    let (name, positive) = if let Some(n) = tok.strip_suffix('+') {
                        (n, true)
                    } else if let Some(n) = tok.strip_suffix('-') {
                        (n, false)
                    } else {
                        return err(line, format!("dart `{tok}` must end in + or -"));
                    };
                    let Some(&e) = by_name.get(name) else {
                        return err(line, format!("unknown edge `{name}`"));
                    };
                    let d = Dart::new(e, positive);
                    let tail = if positive { edges[e].tail } else { edges[e].head };
                    if tail != v {
                        return err(line, format!("dart {tok} does not leave vertex {v}"));
                    }
                    if let Some(prev) = dart_line.insert(d, line) {
                        return err(line, format!("dart {tok} already listed on line {prev}"));
                    }
                    rot.push(d);
                }
                rotations[v] = Some(rot);
            }
            "circle" => {
                let Some((name, spec)) = rest.split_once(':') else {
                    return err(line, "expected `circle <name>: <edges> [base=<v>]`");
                };
                let mut edges_in = Vec::new();
                let mut base = None;
                for tok in spec.split_whitespace() {
                    if let Some(b) = tok.strip_prefix("base=") {
                        base = Some(parse_usize(line, b, "base vertex")?);
                    } else {
                        let Some(&e) = by_name.get(tok) else {
                            return err(line, format!("unknown edge `{tok}`"));
                        };
                        edges_in.push(e);
                    }
                }
                let base = base.unwrap_or_else(|| edges_in.iter().map(|&e| edges[e].tail.min(edges[e].head)).min().unwrap_or(0));
                circles.push(NamedCircle { name: name.trim().into(), edges: edges_in, base });
            }
            "faces" => {
                let Some((name, spec)) = rest.split_once(':') else {
                    return err(line, "expected `faces <name>: <indices>`");
                };
                let faces = spec
                    .split_whitespace()
                    .map(|t| parse_usize(line, t, "face index"))
                    .collect::<Result<Vec<_>, _>>()?;
                face_chains.push(NamedFaces { name: name.trim().into(), faces });
            }
            other => return err(line, format!("unknown declaration `{other}`")),
        }
    }

    let Some(group) = group else { return err(0, "missing group declaration") };
    let Some((n, vline)) = vertices else { return err(0, "missing vertices declaration") };
    for (e, decl) in edges.iter().enumerate() {
        for d in [Dart::positive(e), Dart::negative(e)] {
            if !dart_line.contains_key(&d) {
                let sign = if d.is_positive() { '+' } else { '-' };
                return err(vline, format!("dart {}{sign} missing from every rotation", decl.name));
            }
        }
    }
    let rotation: Vec<Vec<Dart>> = rotations.into_iter().map(Option::unwrap_or_default).collect();
    if let Some(v) = rotation.iter().position(Vec::is_empty) {
        return err(vline, format!("vertex {v} is isolated"));
    }
    let pairs: Vec<(usize, usize)> = edges.iter().map(|e| (e.tail, e.head)).collect();
    let signs = edges.iter().map(|e| e.sign).collect();
    let graph = EmbeddedGraph::new(n, &pairs, signs, rotation).map_err(|e| ParseError { line: vline, message: e.to_string() })?;
    let alpha: Vec<_> = edges.iter().map(|e| group.parse_element(&e.voltage).expect("checked")).collect();
    let ve = VoltageEmbedding::from_edge_voltages(graph, group, &alpha)
        .map_err(|e| ParseError { line: vline, message: e.to_string() })?;
    let faces = ve.base().faces().len();
    for fc in &face_chains {
        if let Some(&f) = fc.faces.iter().find(|&&f| f >= faces) {
            return err(0, format!("face chain {}: face {f} out of range ({faces} faces)", fc.name));
        }
    }
    Ok(InstanceFile { ve, edge_names: edges.into_iter().map(|e| e.name).collect(), circles, face_chains })
}

fn spec_text(spec: &GroupSpec) -> String {
    match spec {
        GroupSpec::Cyclic(n) => format!("cyclic {n}"),
        GroupSpec::Table(n) => format!("table {n}"),
        GroupSpec::Product(a, b) => format!("product {} {}", spec_text(a), spec_text(b)),
    }
}

fn table_rows(spec: &GroupSpec, group: &FiniteGroup, out: &mut String) {
    if let GroupSpec::Table(_) = spec {
        for a in group.elements() {
            let row: Vec<String> = group.row(a).map(|x| x.index().to_string()).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
    }
}

impl InstanceFile {
    pub fn from_embedding(ve: VoltageEmbedding) -> Self {
        let edge_names = (0..ve.base().edge_count()).map(|e| format!("e{e}")).collect();
        InstanceFile { ve, edge_names, circles: Vec::new(), face_chains: Vec::new() }
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edge_names.iter().position(|n| n == name)
    }

    pub fn dart_name(&self, d: Dart) -> String {
        format!("{}{}", self.edge_names[d.edge()], if d.is_positive() { '+' } else { '-' })
    }

    /// Canonical text.
    pub fn print(&self) -> String {
        let g = self.ve.base();
        let grp = self.ve.group();
        let mut out = String::new();
        let _ = writeln!(out, "group {}", spec_text(grp.spec()));
        table_rows(grp.spec(), grp, &mut out);
        let _ = writeln!(out, "vertices {}", g.vertex_count());
        for e in 0..g.edge_count() {
            let (t, h) = g.endpoints(e);
            let sign = if g.sign(e).is_plus() { '+' } else { '-' };
            let volt = grp.name(self.ve.alpha(Dart::positive(e)));
            let _ = writeln!(out, "edge {} {t} {h} sign={sign} voltage={volt}", self.edge_names[e]);
        }
        for v in 0..g.vertex_count() {
            let darts: Vec<String> = g.rotation(v).iter().map(|&d| self.dart_name(d)).collect();
            let _ = writeln!(out, "rotation {v}: {}", darts.join(" "));
        }
        for c in &self.circles {
            let names: Vec<&str> = c.edges.iter().map(|&e| self.edge_names[e].as_str()).collect();
            let _ = writeln!(out, "circle {}: {} base={}", c.name, names.join(" "), c.base);
        }
        for f in &self.face_chains {
            let idx: Vec<String> = f.faces.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "faces {}: {}", f.name, idx.join(" "));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use voltage_core::catalog;

    const P2: &str = "group cyclic 2\nvertices 1\nedge x 0 0 sign=- voltage=1\nrotation 0: x+ x-\n";

    #[test]
    fn minimal_loop_parses() {
        let f = parse(P2).unwrap();
        assert_eq!(f.ve.base().euler_characteristic(), 1);
        assert_eq!(f.print(), P2);
    }

    #[test]
    fn repeated_dart_reports_line() {
        let text = "group cyclic 2\nvertices 1\nedge x 0 0 sign=- voltage=1\n\nrotation 0: x+ x+\n";
        let e = parse(text).unwrap_err();
        assert_eq!(e.line, 5);
        assert!(e.message.contains("already listed"), "{e}");
    }

    #[test]
    fn unknown_dart_and_missing_rotation() {
        let e = parse("group cyclic 2\nvertices 1\nedge x 0 0 sign=+ voltage=0\nrotation 0: y+ x-\n").unwrap_err();
        assert_eq!(e.line, 4);
        let e = parse("group cyclic 2\nvertices 1\nedge x 0 0 sign=+ voltage=0\nrotation 0: x-\n").unwrap_err();
        assert!(e.message.contains("missing"), "{e}");
    }

    #[test]
    fn bad_voltage_rejected() {
        let e = parse("group cyclic 2\nvertices 1\nedge x 0 0 sign=+ voltage=5\nrotation 0: x+ x-\n").unwrap_err();
        assert_eq!(e.line, 3);
    }

    #[test]
    fn catalog_round_trips() {
        let groups = [
            FiniteGroup::cyclic(5).unwrap(),
            FiniteGroup::direct_product(&FiniteGroup::cyclic(2).unwrap(), &FiniteGroup::cyclic(3).unwrap()).unwrap(),
            FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]]).unwrap(),
        ];
        for base in catalog::all().into_iter().filter(|g| g.is_connected()) {
            for grp in &groups {
                let alpha: Vec<_> = (0..base.edge_count()).map(|e| voltage_core::Elem((e % grp.order()) as u32)).collect();
                let ve = VoltageEmbedding::from_edge_voltages(base.clone(), grp.clone(), &alpha).unwrap();
                let mut f = InstanceFile::from_embedding(ve);
                f.circles.push(NamedCircle { name: "z".into(), edges: vec![0], base: 0 });
                f.face_chains.push(NamedFaces { name: "I".into(), faces: vec![0] });
                let text = f.print();
                let back = parse(&text).unwrap();
                assert_eq!(back, f, "{text}");
                assert_eq!(back.print(), text);
            }
        }
    }
}
