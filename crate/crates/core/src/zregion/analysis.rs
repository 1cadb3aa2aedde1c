//! Everything about one base circle `G:z` traversed by `W = d₁…d_k` from
//! `v`, looked at inside the component `S_v^a` of the derived surface.
//!
//! Tips: the claw at `d₁` has tips `w′` (corner right after `d₁`) and `y′`
//! (corner right before it). Over them sit the derived corners right after
//! and right before `d₁` lifted to `(v, b)`; a z-region contains `w′ᵇ`
//! exactly when it contains the first of those corners.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::report::{Assertion, CheckReport};
use super::{CosetTag, EndTag, ZEdge, ZEdgeLabel, ZEnd, ZGraph, ZVertexLabel};
use crate::error::{Error, Result};
use crate::group::{Elem, Subgroup};
use crate::medial::{CrossingFreeSplit, SpecialClaw, TotalVoltageGraph};
use crate::surface::{
    CircleSubgraph, Dart, DartGraph, EdgeChain, FaceChain, FaceSet, OrientationType, RegionPartition, Side,
};
use crate::voltage::{consecutive_lift_sets, DerivedEmbedding, VoltageEmbedding, WalkSpec};

/// Which coset construction applies to a base circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircleKind {
    /// Orientation-preserving and separating.
    Separating,
    Reversing,
    /// Orientation-preserving and nonseparating.
    Preserving,
}

/// One lifted circle `z_v^b`, covering the lifts `W^b, W^{bω}, …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedCircle {
    /// The left coset `b⟨ω⟩`, sorted.
    pub coset: Vec<Elem>,
    pub circle: CircleSubgraph,
    pub orientation: OrientationType,
}

/// The lifted circles inside one component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberCircleSet {
    pub circles: Vec<LiftedCircle>,
    /// `|A(v)| / |⟨ω⟩|`.
    pub predicted: usize,
}

/// The derived surface cut along every lifted circle, restricted to one
/// component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZRegions {
    pub partition: RegionPartition,
    /// Region ids inside the component, ascending.
    pub regions: Vec<usize>,
    /// Indices of the lifted circles inside the component. Partition circle
    /// `i` is lifted circle `i`.
    pub circles: Vec<usize>,
}

impl ZRegions {
    fn position(&self, region: usize) -> usize {
        self.regions.binary_search(&region).expect("region inside the component")
    }
}

#[derive(Debug, Clone)]
pub struct CircleAnalysis {
    ve: VoltageEmbedding,
    circle: CircleSubgraph,
    kind: CircleKind,
    base_faces: FaceSet,
    derived: DerivedEmbedding,
    derived_faces: FaceSet,
    component: Elem,
    in_component: Vec<bool>,
    omega: Elem,
    omega_group: Subgroup,
    local: Subgroup,
    fiber: Vec<Elem>,
    lifts: Vec<LiftedCircle>,
    claw: SpecialClaw,
    split: CrossingFreeSplit,
}

impl CircleAnalysis {
    /// Analyze `circle` in the component of `S^α` containing `(v, a)`,
    /// where `v` is the circle's base vertex.
    pub fn new(ve: &VoltageEmbedding, circle: &CircleSubgraph, a: Elem) -> Result<Self> {
        let g = ve.base();
        ve.group().check(a)?;
        if circle.edges().edges().iter().any(|&e| e >= g.edge_count()) {
            return Err(Error::Hypothesis("circle does not belong to the base graph".into()));
        }
        let v = circle.base_vertex();
        let walk = WalkSpec::new(g, circle.walk().to_vec())?;
        let omega = ve.net_voltage(&walk);
        let omega_group = ve.group().subgroup_generated(&[omega])?;
        let local = ve.local_voltage_group(v)?;
        let fiber = ve.group().left_coset(a, &local);
        let base_faces = g.faces();
        let kind = match circle.orientation_type(g) {
            OrientationType::Reversing => CircleKind::Reversing,
            OrientationType::Preserving if g.is_separating(&base_faces, circle)? => CircleKind::Separating,
            OrientationType::Preserving => CircleKind::Preserving,
        };

        let derived = ve.derive()?;
        let dg = derived.graph();
        let all: Vec<Elem> = ve.group().elements().collect();
        let mut lifts = Vec::new();
        for set in consecutive_lift_sets(&derived, &walk, &all)? {
            let edges = EdgeChain::new(set.darts.iter().map(|d| d.edge()));
            let lifted = CircleSubgraph::new(dg, edges, derived.vertex(v, set.elements[0]))?;
            let orientation = lifted.orientation_type(dg);
            lifts.push(LiftedCircle { coset: set.elements, circle: lifted, orientation });
        }
        let (comp, _) = dg.components();
        let home = comp[derived.vertex(v, a)];
        let in_component = comp.iter().map(|&c| c == home).collect();
        let derived_faces = dg.faces();

        let total = TotalVoltageGraph::new(ve)?;
        let claw = total.claw_at(g, circle.walk()[0]);
        let split = total.crossing_free_split(g, circle)?;
        Ok(CircleAnalysis {
            ve: ve.clone(),
            circle: circle.clone(),
            kind,
            base_faces,
            derived,
            derived_faces,
            component: a,
            in_component,
            omega,
            omega_group,
            local,
            fiber,
            lifts,
            claw,
            split,
        })
    }

    pub fn kind(&self) -> CircleKind {
        self.kind
    }

    pub fn derived(&self) -> &DerivedEmbedding {
        &self.derived
    }

    pub fn component(&self) -> Elem {
        self.component
    }

    pub fn omega(&self) -> Elem {
        self.omega
    }

    /// `|ω(W)|`.
    pub fn omega_order(&self) -> usize {
        self.omega_group.len()
    }

    /// `A(v)`.
    pub fn local_group(&self) -> &Subgroup {
        &self.local
    }

    /// `aA(v)`, the superscripts of the fiber over `v` in this component.
    pub fn fiber(&self) -> &[Elem] {
        &self.fiber
    }

    pub fn claw(&self) -> &SpecialClaw {
        &self.claw
    }

    /// Lifted circles over the whole derived surface.
    pub fn all_lifts(&self) -> &[LiftedCircle] {
        &self.lifts
    }

    fn lift_in_component(&self, l: &LiftedCircle) -> bool {
        self.in_component[l.circle.base_vertex()]
    }

    fn lifts_preserving(&self) -> bool {
        self.lifts.iter().all(|l| l.orientation == OrientationType::Preserving)
    }

    /// Derived corner over `w′ᵇ`.
    fn w_corner(&self, b: Elem) -> Dart {
        self.derived.lift_dart(self.circle.walk()[0], b)
    }

    /// Derived corner over `y′ᵇ`.
    fn y_corner(&self, b: Elem) -> Dart {
        self.derived.graph().pred(self.w_corner(b))
    }

    pub fn fiber_circles(&self) -> FiberCircleSet {
        FiberCircleSet {
            circles: self.lifts.iter().filter(|l| self.lift_in_component(l)).cloned().collect(),
            predicted: self.local.len() / self.omega_group.len(),
        }
    }

    /// Whether the lifts of an orientation-reversing circle preserve
    /// orientation, read off `|ω|`.
    pub fn lifts_orientation_preserving(&self) -> Result<bool> {
        if self.kind != CircleKind::Reversing {
            return Err(Error::Hypothesis("base circle preserves orientation; so do its lifts".into()));
        }
        Ok(self.omega_order() % 2 == 0)
    }

    /// `A⊻(w′, G:z)`.
    pub fn crossing_free_group(&self) -> Result<Subgroup> {
        self.split.crossing_free_group(self.claw.w_tip)
    }

    /// `A⊻(w′, y′, G:z)`.
    pub fn crossing_free_tip_set(&self) -> Result<Vec<Elem>> {
        self.split.crossing_free_tip_set(&self.claw)
    }

    pub fn zregions(&self) -> Result<ZRegions> {
        if !self.lifts_preserving() {
            return Err(Error::PropertyDelta(format!(
                "lifted circles reverse orientation (|ω| = {} is odd)",
                self.omega_order()
            )));
        }
        let circles: Vec<CircleSubgraph> = self.lifts.iter().map(|l| l.circle.clone()).collect();
        let dg = self.derived.graph();
        let partition = dg.cut_regions(&self.derived_faces, &circles)?;
        let mut regions: Vec<usize> = (0..dg.dart_count() as u32)
            .map(Dart)
            .filter(|&d| self.in_component[dg.tail(d)])
            .map(|d| partition.region_of_corner(d))
            .collect();
        regions.sort_unstable();
        regions.dedup();
        let circles = (0..self.lifts.len()).filter(|&i| self.lift_in_component(&self.lifts[i])).collect();
        Ok(ZRegions { partition, regions, circles })
    }

    /// `|A(v)| / |A⊻(w′, G:z)|`.
    pub fn predict_zregion_count(&self) -> Result<usize> {
        if self.kind == CircleKind::Separating {
            return Err(Error::Hypothesis("base circle is separating".into()));
        }
        if !self.lifts_preserving() {
            return Err(Error::Hypothesis("lifted circles reverse orientation".into()));
        }
        Ok(self.local.len() / self.crossing_free_group()?.len())
    }

    /// The faces of the base region on the east bank.
    pub fn inside_faces(&self) -> Result<FaceChain> {
        let g = self.ve.base();
        let cut = g.cut_regions(&self.base_faces, core::slice::from_ref(&self.circle))?;
        let east = cut.banks(0)[Side::East.index()];
        Ok(FaceChain::new((0..self.base_faces.len()).filter(|&f| cut.region_of_face(f) == east)))
    }

    fn side_groups(&self) -> Result<(FaceChain, Subgroup, Subgroup)> {
        let g = self.ve.base();
        let v = self.circle.base_vertex();
        let inside = self.inside_faces()?;
        let outside = inside.complement(self.base_faces.len());
        let s_in = g.subcomplex_skeleton(&self.base_faces, &inside)?;
        let s_out = g.subcomplex_skeleton(&self.base_faces, &outside)?;
        Ok((
            inside,
            self.ve.restricted_voltage_group(&s_in.edges, v)?,
            self.ve.restricted_voltage_group(&s_out.edges, v)?,
        ))
    }

    pub fn zgraph_coset(&self) -> Result<ZGraph> {
        match self.kind {
            CircleKind::Separating => self.zgraph_coset_separating(),
            CircleKind::Reversing => self.zgraph_coset_reversing(),
            CircleKind::Preserving => self.zgraph_coset_preserving(),
        }
    }

    /// Vertices are the left cosets of `A(v,S:I)` and `A(v,S:I^c)` in
    /// `aA(v)`, edges the left cosets of `⟨ω⟩`.
    pub fn zgraph_coset_separating(&self) -> Result<ZGraph> {
        if self.kind != CircleKind::Separating {
            return Err(Error::Hypothesis("base circle is not separating".into()));
        }
        let grp = self.ve.group();
        let (_, a_in, a_out) = self.side_groups()?;
        let inside = grp.left_cosets(&self.fiber, &a_in)?;
        let outside = grp.left_cosets(&self.fiber, &a_out)?;
        let mut vertices: Vec<ZVertexLabel> =
            inside.cosets.iter().map(|c| ZVertexLabel::Coset(CosetTag::Inside, c.clone())).collect();
        vertices.extend(outside.cosets.iter().map(|c| ZVertexLabel::Coset(CosetTag::Outside, c.clone())));
        let edges = grp
            .left_cosets(&self.fiber, &self.omega_group)?
            .cosets
            .into_iter()
            .map(|l| {
                let i = inside.coset_of(l[0]).expect("fiber element");
                let o = inside.len() + outside.coset_of(l[0]).expect("fiber element");
                ZEdge {
                    label: ZEdgeLabel::Coset(l),
                    ends: [
                        ZEnd { vertex: i, tag: EndTag::Inside, label: Vec::new() },
                        ZEnd { vertex: o, tag: EndTag::Outside, label: Vec::new() },
                    ],
                }
            })
            .collect();
        Ok(ZGraph { vertices, edges })
    }

    /// Vertices are the left cosets of `A⊻` in `aA(v)`; each `⟨ω⟩`-coset
    /// edge has its two `⟨ω²⟩`-cosets as ends.
    pub fn zgraph_coset_reversing(&self) -> Result<ZGraph> {
        if self.kind != CircleKind::Reversing {
            return Err(Error::Hypothesis("base circle preserves orientation".into()));
        }
        if self.omega_order() % 2 == 1 {
            return Err(Error::Hypothesis(format!("|ω| = {} is odd", self.omega_order())));
        }
        let grp = self.ve.group();
        let cosets = grp.left_cosets(&self.fiber, &self.crossing_free_group()?)?;
        let vertices = cosets.cosets.iter().map(|c| ZVertexLabel::Coset(CosetTag::Plain, c.clone())).collect();
        let square = grp.subgroup_generated(&[grp.mul(self.omega, self.omega)])?;
        let mut edges = Vec::new();
        for l in grp.left_cosets(&self.fiber, &self.omega_group)?.cosets {
            let halves = grp.left_cosets(&l, &square)?.cosets;
            let [first, second]: [Vec<Elem>; 2] = halves
                .try_into()
                .map_err(|_| Error::Mismatch("⟨ω²⟩ does not have index 2 in ⟨ω⟩".into()))?;
            let end = |h: Vec<Elem>| ZEnd {
                vertex: cosets.coset_of(h[0]).expect("fiber element"),
                tag: EndTag::Untagged,
                label: h,
            };
            edges.push(ZEdge { label: ZEdgeLabel::Coset(l), ends: [end(first), end(second)] });
        }
        Ok(ZGraph { vertices, edges })
    }

    /// Vertices are the tip sets `b·A⊻(w′, y′)`, kept apart as the tips
    /// over `w′` and those over `y′`; each `⟨ω⟩`-coset edge joins the vertex
    /// holding it among its `w′` tips to the one holding it among its `y′`
    /// tips.
    pub fn zgraph_coset_preserving(&self) -> Result<ZGraph> {
        if self.kind != CircleKind::Preserving {
            return Err(Error::Hypothesis("base circle is not orientation-preserving and nonseparating".into()));
        }
        let grp = self.ve.group();
        let [_, y0] = self.split.tip_fibers(&self.claw)?;
        let cosets = grp.left_cosets(&self.fiber, &self.crossing_free_group()?)?;
        let ys: Vec<Vec<Elem>> = cosets.cosets.iter().map(|c| grp.left_translate(c[0], &y0)).collect();
        let vertices = cosets
            .cosets
            .iter()
            .zip(&ys)
            .map(|(w, y)| ZVertexLabel::TipSets { w: w.clone(), y: y.clone() })
            .collect();
        let mut edges = Vec::new();
        for l in grp.left_cosets(&self.fiber, &self.omega_group)?.cosets {
            let east = cosets.coset_of(l[0]).expect("fiber element");
            let west = ys
                .iter()
                .position(|y| y.binary_search(&l[0]).is_ok())
                .ok_or_else(|| Error::Mismatch(format!("no tip set holds {} over y′", l[0])))?;
            edges.push(ZEdge {
                label: ZEdgeLabel::Coset(l),
                ends: [
                    ZEnd { vertex: east, tag: EndTag::Bank(Side::East), label: Vec::new() },
                    ZEnd { vertex: west, tag: EndTag::Bank(Side::West), label: Vec::new() },
                ],
            });
        }
        Ok(ZGraph { vertices, edges })
    }

    /// The z-graph read off the cut derived surface, labeled the way the
    /// matching coset construction labels it.
    pub fn zgraph_brute(&self) -> Result<ZGraph> {
        let zr = self.zregions()?;
        match self.kind {
            CircleKind::Separating => self.brute_separating(&zr),
            CircleKind::Reversing => Ok(self.brute_reversing(&zr)),
            CircleKind::Preserving => Ok(self.brute_preserving(&zr)),
        }
    }

    /// `b ↦ region` over the corners `corner(b)`, gathered per region.
    fn tips_by_region(&self, zr: &ZRegions, corner: impl Fn(Elem) -> Dart) -> Vec<Vec<Elem>> {
        let mut out = vec![Vec::new(); zr.regions.len()];
        for &b in &self.fiber {
            out[zr.position(zr.partition.region_of_corner(corner(b)))].push(b);
        }
        out
    }

    fn brute_separating(&self, zr: &ZRegions) -> Result<ZGraph> {
        let g = self.ve.base();
        let v = self.circle.base_vertex();
        let inside_faces = self.inside_faces()?;
        let mut inside = vec![Vec::new(); zr.regions.len()];
        let mut outside = vec![Vec::new(); zr.regions.len()];
        for &b in &self.fiber {
            for &d in g.rotation(v) {
                let r = zr.position(zr.partition.region_of_corner(self.derived.lift_dart(d, b)));
                let f = self.base_faces.face_of_corner(d);
                if inside_faces.faces().contains(&f) {
                    inside[r].push(b);
                } else {
                    outside[r].push(b);
                }
            }
        }
        let mut tags = Vec::with_capacity(zr.regions.len());
        let vertices = (0..zr.regions.len())
            .map(|r| {
                for s in [&mut inside[r], &mut outside[r]] {
                    s.sort_unstable();
                    s.dedup();
                }
                match (inside[r].is_empty(), outside[r].is_empty()) {
                    (false, true) => {
                        tags.push(EndTag::Inside);
                        ZVertexLabel::Coset(CosetTag::Inside, inside[r].clone())
                    }
                    (true, false) => {
                        tags.push(EndTag::Outside);
                        ZVertexLabel::Coset(CosetTag::Outside, outside[r].clone())
                    }
                    _ => {
                        tags.push(EndTag::Untagged);
                        ZVertexLabel::Region(zr.regions[r])
                    }
                }
            })
            .collect();
        let edges = zr
            .circles
            .iter()
            .map(|&i| {
                let ends = zr.partition.banks(i).map(|r| {
                    let vertex = zr.position(r);
                    ZEnd { vertex, tag: tags[vertex], label: Vec::new() }
                });
                ZEdge { label: ZEdgeLabel::Coset(self.lifts[i].coset.clone()), ends }
            })
            .collect();
        Ok(ZGraph { vertices, edges })
    }

    fn brute_reversing(&self, zr: &ZRegions) -> ZGraph {
        let vertices = self
            .tips_by_region(zr, |b| self.w_corner(b))
            .into_iter()
            .map(|w| ZVertexLabel::Coset(CosetTag::Plain, w))
            .collect();
        let edges = zr
            .circles
            .iter()
            .map(|&i| {
                let mut halves = [Vec::new(), Vec::new()];
                for &b in &self.lifts[i].coset {
                    let side = match zr.partition.corner_side(self.w_corner(b)) {
                        Some((j, s)) if j == i => s,
                        _ => Side::East,
                    };
                    halves[side.index()].push(b);
                }
                let banks = zr.partition.banks(i);
                let [east, west] = halves;
                let end = |side: Side, label: Vec<Elem>| ZEnd {
                    vertex: zr.position(banks[side.index()]),
                    tag: EndTag::Untagged,
                    label,
                };
                ZEdge {
                    label: ZEdgeLabel::Coset(self.lifts[i].coset.clone()),
                    ends: [end(Side::East, east), end(Side::West, west)],
                }
            })
            .collect();
        ZGraph { vertices, edges }
    }

    fn brute_preserving(&self, zr: &ZRegions) -> ZGraph {
        let ws = self.tips_by_region(zr, |b| self.w_corner(b));
        let ys = self.tips_by_region(zr, |b| self.y_corner(b));
        let vertices = ws.into_iter().zip(ys).map(|(w, y)| ZVertexLabel::TipSets { w, y }).collect();
        let edges = zr
            .circles
            .iter()
            .map(|&i| {
                let b = self.lifts[i].coset[0];
                let side = zr.partition.corner_side(self.w_corner(b)).map_or(Side::East, |(_, s)| s);
                let banks = zr.partition.banks(i);
                ZEdge {
                    label: ZEdgeLabel::Coset(self.lifts[i].coset.clone()),
                    ends: [
                        ZEnd {
                            vertex: zr.position(banks[side.index()]),
                            tag: EndTag::Bank(Side::East),
                            label: Vec::new(),
                        },
                        ZEnd {
                            vertex: zr.position(banks[side.opposite().index()]),
                            tag: EndTag::Bank(Side::West),
                            label: Vec::new(),
                        },
                    ],
                }
            })
            .collect();
        ZGraph { vertices, edges }
    }

    /// Lifted circles of the component whose removal disconnects it.
    fn separating_lifts(&self, zr: &ZRegions) -> Result<Vec<usize>> {
        let dg = self.derived.graph();
        let mut out = Vec::new();
        for &i in &zr.circles {
            if dg.is_separating(&self.derived_faces, &self.lifts[i].circle)? {
                out.push(i);
            }
        }
        Ok(out)
    }

    pub fn check_lifted_circle_count(&self) -> CheckReport {
        let fc = self.fiber_circles();
        let k = self.circle.len();
        let lengths_ok = fc.circles.iter().all(|l| l.circle.len() == k * self.omega_order());
        let mut used = vec![false; self.derived.graph().vertex_count()];
        let mut disjoint = true;
        for l in &fc.circles {
            for x in l.circle.vertices(self.derived.graph()) {
                disjoint &= !core::mem::replace(&mut used[x], true);
            }
        }
        CheckReport::new(
            "lifted circles",
            vec![
                Assertion::check(
                    "one circle per ⟨ω⟩-coset of the fiber",
                    fc.circles.len() == fc.predicted,
                    format!("predicted {}, found {}", fc.predicted, fc.circles.len()),
                ),
                Assertion::check("lift length k·|ω|", lengths_ok, format!("k = {k}, |ω| = {}", self.omega_order())),
                Assertion::check("pairwise vertex-disjoint", disjoint, String::new()),
            ],
        )
    }

    pub fn check_lifted_orientation(&self) -> CheckReport {
        const NAME: &str = "lifted circle orientation";
        if self.kind != CircleKind::Reversing {
            return CheckReport::vacuous(NAME, "base circle preserves orientation".into());
        }
        let even = self.omega_order() % 2 == 0;
        let observed = self.lifts_preserving();
        let sign_products_agree = self.lifts.iter().all(|l| {
            let product = crate::surface::Sign::product(
                l.circle.edges().edges().iter().map(|&e| self.derived.graph().sign(e)),
            );
            (product.is_plus()) == (l.orientation == OrientationType::Preserving)
        });
        CheckReport::new(
            NAME,
            vec![
                Assertion::check(
                    "|ω| even iff every lift preserves orientation",
                    even == observed,
                    format!("|ω| = {}, all lifts preserving: {observed}", self.omega_order()),
                ),
                Assertion::check("orientation type matches the sign product", sign_products_agree, String::new()),
            ],
        )
    }

    pub fn check_reversing_regions(&self) -> Result<CheckReport> {
        const NAME: &str = "regions over a reversing circle";
        if self.kind != CircleKind::Reversing {
            return Ok(CheckReport::vacuous(NAME, "base circle preserves orientation".into()));
        }
        if self.omega_order() % 2 == 1 {
            return Ok(CheckReport::vacuous(NAME, format!("|ω| = {} is odd", self.omega_order())));
        }
        let zr = self.zregions()?;
        let counts: Vec<usize> = self.tips_by_region(&zr, |b| self.w_corner(b)).iter().map(|t| t.len()).collect();
        let equal = counts.iter().all(|&c| c > 0 && c == counts[0]);
        let separating = if self.omega_group == self.local {
            Assertion::vacuous("lifts nonseparating", "⟨ω⟩ = A(v)".into())
        } else {
            let bad = self.separating_lifts(&zr)?;
            Assertion::check("lifts nonseparating", bad.is_empty(), format!("separating lifts {bad:?}"))
        };
        Ok(CheckReport::new(
            NAME,
            vec![
                Assertion::check("equal nonzero tip counts", equal, format!("tips per region {counts:?}")),
                Assertion::check(
                    "one or two regions",
                    (1..=2).contains(&zr.regions.len()),
                    format!("{} regions", zr.regions.len()),
                ),
                separating,
            ],
        ))
    }

    pub fn check_preserving_regions(&self) -> Result<CheckReport> {
        const NAME: &str = "regions over a preserving nonseparating circle";
        if self.kind != CircleKind::Preserving {
            return Ok(CheckReport::vacuous(NAME, "base circle is reversing or separating".into()));
        }
        let zr = self.zregions()?;
        let ws = self.tips_by_region(&zr, |b| self.w_corner(b));
        let ys = self.tips_by_region(&zr, |b| self.y_corner(b));
        let both = ws.iter().zip(&ys).all(|(w, y)| !w.is_empty() && !y.is_empty());
        let mut banks = vec![0usize; zr.regions.len()];
        for &i in &zr.circles {
            for r in zr.partition.banks(i) {
                banks[zr.position(r)] += 1;
            }
        }
        let even = if zr.regions.len() > 1 {
            Assertion::check(
                "even boundary circle count",
                banks.iter().all(|b| b % 2 == 0),
                format!("boundary circles per region {banks:?}"),
            )
        } else {
            Assertion::vacuous("even boundary circle count", "one region".into())
        };
        let bad = self.separating_lifts(&zr)?;
        Ok(CheckReport::new(
            NAME,
            vec![
                Assertion::check(
                    "every region meets both tip fibers",
                    both,
                    format!("w′ tips {:?}, y′ tips {:?}", ws.iter().map(Vec::len).collect::<Vec<_>>(), ys.iter().map(Vec::len).collect::<Vec<_>>()),
                ),
                even,
                Assertion::check("lifts nonseparating", bad.is_empty(), format!("separating lifts {bad:?}")),
            ],
        ))
    }

    pub fn check_region_count(&self) -> Result<CheckReport> {
        const NAME: &str = "region count from the crossing-free group";
        if self.kind == CircleKind::Separating {
            return Ok(CheckReport::vacuous(NAME, "base circle is separating".into()));
        }
        if !self.lifts_preserving() {
            return Ok(CheckReport::vacuous(NAME, "lifted circles reverse orientation".into()));
        }
        let predicted = self.predict_zregion_count()?;
        let observed = self.zregions()?.regions.len();
        Ok(CheckReport::new(
            NAME,
            vec![Assertion::check(
                "|A(v)| / |A⊻| regions",
                predicted == observed,
                format!("predicted {predicted}, found {observed}"),
            )],
        ))
    }

    pub fn check_coset_zgraph(&self) -> Result<CheckReport> {
        const NAME: &str = "coset z-graph";
        if !self.lifts_preserving() {
            return Ok(CheckReport::vacuous(NAME, "lifted circles reverse orientation".into()));
        }
        let brute = self.zgraph_brute()?;
        let mut assertions = vec![match self.zgraph_coset() {
            Ok(coset) => {
                let same = compare_zgraphs(&coset, &brute);
                Assertion::check(
                    "equal to the cut surface as labeled graphs",
                    same.is_ok(),
                    same.err().map(|e| format!("{e}")).unwrap_or_default(),
                )
            }
            Err(e) => Assertion::check("equal to the cut surface as labeled graphs", false, format!("{e}")),
        }];
        assertions.push(Assertion::check("connected", brute.is_connected(), String::new()));
        if self.kind == CircleKind::Separating {
            assertions.push(Assertion::check("bipartite", brute.is_bipartite(), String::new()));
        }
        Ok(CheckReport::new(NAME, assertions))
    }

    /// Every checker, in a fixed order.
    pub fn all_checks(&self) -> Result<Vec<CheckReport>> {
        Ok(vec![
            self.check_lifted_circle_count(),
            self.check_lifted_orientation(),
            self.check_reversing_regions()?,
            self.check_preserving_regions()?,
            self.check_region_count()?,
            self.check_coset_zgraph()?,
        ])
    }
}

/// Labeled equality of a coset z-graph with a brute-force one.
pub fn compare_zgraphs(coset: &ZGraph, brute: &ZGraph) -> Result<()> {
    let (cv, ce) = coset.canonical();
    let (bv, be) = brute.canonical();
    if cv != bv {
        return Err(Error::Mismatch(format!("vertex labels differ: {cv:?} vs {bv:?}")));
    }
    if ce != be {
        let only: Vec<_> = ce.iter().filter(|e| !be.contains(e)).collect();
        return Err(Error::Mismatch(format!("edges differ; coset side only: {only:?}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::FiniteGroup;
    use crate::surface::enumerate_circles;
    use crate::zregion::Status;

    fn analyze(base: crate::surface::EmbeddedGraph, n: usize, alpha: &[u32], edges: &[usize]) -> CircleAnalysis {
        let a: Vec<Elem> = alpha.iter().map(|&x| Elem(x)).collect();
        let ve = VoltageEmbedding::from_edge_voltages(base.clone(), FiniteGroup::cyclic(n).unwrap(), &a).unwrap();
        let c = CircleSubgraph::new(&base, EdgeChain::new(edges.iter().copied()), 0).unwrap();
        CircleAnalysis::new(&ve, &c, Elem(0)).unwrap()
    }

    #[test]
    fn projective_double_cover() {
        let an = analyze(catalog::projective_loop(), 2, &[1], &[0]);
        assert_eq!(an.kind(), CircleKind::Reversing);
        assert!(an.lifts_orientation_preserving().unwrap());
        // the equator of the sphere
        let zr = an.zregions().unwrap();
        assert_eq!(zr.regions.len(), 2);
        assert_eq!(an.predict_zregion_count().unwrap(), 2);
        let z = an.zgraph_coset().unwrap();
        assert_eq!((z.vertex_count(), z.edge_count(), z.loop_count()), (2, 1, 0));
        compare_zgraphs(&z, &an.zgraph_brute().unwrap()).unwrap();
    }

    #[test]
    fn odd_omega_blocks_cutting() {
        let an = analyze(catalog::projective_loop(), 3, &[1], &[0]);
        assert!(!an.lifts_orientation_preserving().unwrap());
        assert!(matches!(an.zregions(), Err(Error::PropertyDelta(_))));
        assert_eq!(an.check_reversing_regions().unwrap().status(), Status::Vacuous);
        assert_eq!(an.check_lifted_orientation().status(), Status::Confirmed);
    }

    #[test]
    fn torus_meridian() {
        // x lifts to n/|α(x)| circles; y carries the component around
        let an = analyze(catalog::torus_bouquet(), 4, &[2, 1], &[0]);
        assert_eq!(an.kind(), CircleKind::Preserving);
        assert_eq!(an.fiber_circles().circles.len(), 2);
        assert_eq!(an.predict_zregion_count().unwrap(), an.zregions().unwrap().regions.len());
        compare_zgraphs(&an.zgraph_coset().unwrap(), &an.zgraph_brute().unwrap()).unwrap();
    }

    #[test]
    fn theta_separating_identity() {
        let an = analyze(catalog::sphere_theta(), 3, &[0, 0, 0], &[0, 1]);
        assert_eq!(an.kind(), CircleKind::Separating);
        let z = an.zgraph_coset().unwrap();
        assert_eq!((z.vertex_count(), z.edge_count()), (2, 1));
        assert!(z.is_bipartite());
        compare_zgraphs(&z, &an.zgraph_brute().unwrap()).unwrap();
    }

    #[test]
    fn exhaustive_small_cases() {
        let mut confirmed = 0;
        for base in catalog::all() {
            let m = base.edge_count();
            for circle in enumerate_circles(&base).unwrap() {
                for n in [2usize, 4, 6] {
                    for code in 0..n.pow(m as u32) {
                        let alpha: Vec<u32> = (0..m).map(|i| ((code / n.pow(i as u32)) % n) as u32).collect();
                        let a: Vec<Elem> = alpha.iter().map(|&x| Elem(x)).collect();
                        let ve = VoltageEmbedding::from_edge_voltages(
                            base.clone(),
                            FiniteGroup::cyclic(n).unwrap(),
                            &a,
                        )
                        .unwrap();
                        let an = CircleAnalysis::new(&ve, &circle, Elem(0)).unwrap();
                        for r in an.all_checks().unwrap() {
                            assert_ne!(r.status(), Status::Failed, "{alpha:?} {:?} {r:?}", circle.edges());
                            confirmed += (r.status() == Status::Confirmed) as usize;
                        }
                    }
                }
            }
        }
        assert!(confirmed > 100);
    }
}
