//! DOT and JSON renderings.

use std::fmt::Write as _;

use serde::Serialize;
use voltage_core::zregion::{CosetTag, EndTag, ZEdgeLabel, ZGraph, ZVertexLabel};
use voltage_core::{Dart, DartGraph, Elem, EmbeddedGraph, FiniteGroup};

fn elems(group: &FiniteGroup, set: &[Elem]) -> String {
    let names: Vec<&str> = set.iter().map(|&a| group.name(a)).collect();
    format!("{{{}}}", names.join(" "))
}

pub fn vertex_label(group: &FiniteGroup, label: &ZVertexLabel) -> String {
    match label {
        ZVertexLabel::Region(r) => format!("region {r}"),
        ZVertexLabel::Coset(tag, set) => {
            let side = match tag {
                CosetTag::Inside => "I ",
                CosetTag::Outside => "I^c ",
                CosetTag::Plain => "",
            };
            format!("{side}{}", elems(group, set))
        }
        ZVertexLabel::TipSets { w, y } => format!("w {} y {}", elems(group, w), elems(group, y)),
    }
}

pub fn edge_label(group: &FiniteGroup, label: &ZEdgeLabel) -> String {
    match label {
        ZEdgeLabel::Circle(i) => format!("circle {i}"),
        ZEdgeLabel::Coset(set) => elems(group, set),
    }
}

fn end_tag(tag: EndTag) -> String {
    match tag {
        EndTag::Bank(side) => format!("{side:?}").to_lowercase(),
        EndTag::Inside => "inside".into(),
        EndTag::Outside => "outside".into(),
        EndTag::Untagged => String::new(),
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT multigraph, one line per vertex then one per edge, in
/// index order. Loops come out as self-edges.
pub fn zgraph_dot(zg: &ZGraph, group: &FiniteGroup) -> String {
    let mut out = String::from("graph zgraph {\n");
    for (i, v) in zg.vertices.iter().enumerate() {
        let _ = writeln!(out, "  v{i} [label={}];", quote(&vertex_label(group, v)));
    }
    for e in &zg.edges {
        let [a, b] = &e.ends;
        let _ = writeln!(out, "  v{} -- v{} [label={}];", a.vertex, b.vertex, quote(&edge_label(group, &e.label)));
    }
    out.push_str("}\n");
    out
}

/// DOT for an embedded graph; edges carry their sign, and the rotation at
/// each vertex goes in a tooltip.
pub fn graph_dot(g: &EmbeddedGraph, name: &str) -> String {
    let mut out = format!("graph {name} {{\n");
    for v in 0..g.vertex_count() {
        let rot: Vec<String> = g.rotation(v).iter().map(Dart::to_string).collect();
        let _ = writeln!(out, "  v{v} [tooltip={}];", quote(&rot.join(" ")));
    }
    for e in 0..g.edge_count() {
        let (t, h) = g.endpoints(e);
        let style = if g.sign(e).is_plus() { "solid" } else { "dashed" };
        let _ = writeln!(out, "  v{t} -- v{h} [label=\"{e}\", style={style}];");
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct ZEndJson {
    pub vertex: usize,
    pub tag: String,
    pub label: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ZEdgeJson {
    pub label: String,
    pub ends: [ZEndJson; 2],
}

#[derive(Debug, Clone, Serialize)]
pub struct ZGraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<ZEdgeJson>,
    pub loops: usize,
    pub regular_degree: Option<usize>,
    pub connected: bool,
    pub bipartite: bool,
}

impl ZGraphJson {
    pub fn new(zg: &ZGraph, group: &FiniteGroup) -> Self {
        let names = |set: &[Elem]| set.iter().map(|&a| group.name(a).to_string()).collect();
        ZGraphJson {
            vertices: zg.vertices.iter().map(|v| vertex_label(group, v)).collect(),
            edges: zg
                .edges
                .iter()
                .map(|e| ZEdgeJson {
                    label: edge_label(group, &e.label),
                    ends: e.ends.clone().map(|end| ZEndJson {
                        vertex: end.vertex,
                        tag: end_tag(end.tag),
                        label: names(&end.label),
                    }),
                })
                .collect(),
            loops: zg.loop_count(),
            regular_degree: zg.regular_degree(),
            connected: zg.is_connected(),
            bipartite: zg.is_bipartite(),
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use voltage_core::zregion::{ZEdge, ZEnd};

    fn end(vertex: usize) -> ZEnd {
        ZEnd { vertex, tag: EndTag::Untagged, label: Vec::new() }
    }

    #[test]
    fn bouquet_has_one_node_and_self_edges() {
        let zg = ZGraph {
            vertices: vec![ZVertexLabel::Region(0)],
            edges: (0..2).map(|i| ZEdge { label: ZEdgeLabel::Circle(i), ends: [end(0), end(0)] }).collect(),
        };
        let dot = zgraph_dot(&zg, &FiniteGroup::cyclic(2).unwrap());
        assert_eq!(dot.lines().filter(|l| l.contains("[label=\"region")).count(), 1);
        assert_eq!(dot.lines().filter(|l| l.contains("v0 -- v0")).count(), 2);
    }

    #[test]
    fn parallel_edges_each_get_a_line() {
        let n = 5;
        let zg = ZGraph {
            vertices: vec![ZVertexLabel::Region(0), ZVertexLabel::Region(1)],
            edges: (0..n).map(|i| ZEdge { label: ZEdgeLabel::Circle(i), ends: [end(0), end(1)] }).collect(),
        };
        let dot = zgraph_dot(&zg, &FiniteGroup::cyclic(2).unwrap());
        assert_eq!(dot.matches(" -- ").count(), n);
        let j = ZGraphJson::new(&zg, &FiniteGroup::cyclic(2).unwrap());
        assert!(j.bipartite && j.connected);
        assert_eq!(j.regular_degree, Some(n));
    }
}
