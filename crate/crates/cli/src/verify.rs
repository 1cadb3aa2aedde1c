//! Every exact check the library offers, run against one voltage
//! embedding and tallied by check name.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use voltage_core::surface::enumerate_circles;
use voltage_core::voltage::product_lift;
use voltage_core::zregion::{CircleAnalysis, Status};
use voltage_core::{
    CircleSubgraph, Dart, DartGraph, EdgeChain, Elem, EmbeddedGraph, Error, FaceChain, UnionFind, VoltageEmbedding,
    WalkSpec,
};

pub const COMPONENT_RELATION: &str = "component relation";
pub const COSET_COUNTS: &str = "coset counts";
pub const FACE_LIFTING: &str = "face lifting";
pub const MEDIAL_OF_DERIVED: &str = "medial of derived";
pub const SPECIAL_CLAWS: &str = "special claws";
pub const LIFTED_CIRCLES: &str = "lifted circles";
pub const LIFTED_ORIENTATION: &str = "lifted circle orientation";
pub const REVERSING_REGIONS: &str = "regions over a reversing circle";
pub const PRESERVING_REGIONS: &str = "regions over a preserving nonseparating circle";
pub const REGION_COUNT: &str = "region count from the crossing-free group";
pub const COSET_ZGRAPH: &str = "coset z-graph";
pub const LOCAL_MODIFICATION: &str = "local voltage modification";
pub const SUBDIVISION: &str = "voltage subdivision";
pub const SIGN_SWITCH: &str = "local sign switch";
pub const PRODUCT_LIFT: &str = "product lift";

/// Report order.
pub const CHECKS: [&str; 15] = [
    COMPONENT_RELATION,
    COSET_COUNTS,
    FACE_LIFTING,
    MEDIAL_OF_DERIVED,
    SPECIAL_CLAWS,
    LIFTED_CIRCLES,
    LIFTED_ORIENTATION,
    REVERSING_REGIONS,
    PRESERVING_REGIONS,
    REGION_COUNT,
    COSET_ZGRAPH,
    LOCAL_MODIFICATION,
    SUBDIVISION,
    SIGN_SWITCH,
    PRODUCT_LIFT,
];

/// Most circles analyzed per instance when none are named.
pub const CIRCLES_PER_INSTANCE: usize = 3;
/// Most face chains `I` sampled per instance.
pub const FACE_CHAINS_PER_INSTANCE: usize = 4;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub confirmed: usize,
    pub vacuous: usize,
    pub failed: usize,
    /// Witness of the first failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl Tally {
    pub fn status(&self) -> Status {
        if self.failed > 0 {
            Status::Failed
        } else if self.confirmed > 0 {
            Status::Confirmed
        } else {
            Status::Vacuous
        }
    }

    pub fn add(&mut self, other: &Tally) {
        self.confirmed += other.confirmed;
        self.vacuous += other.vacuous;
        self.failed += other.failed;
        if self.first_failure.is_none() {
            self.first_failure.clone_from(&other.first_failure);
        }
    }
}

pub fn status_word(s: Status) -> &'static str {
    match s {
        Status::Confirmed => "confirmed",
        Status::Vacuous => "vacuous",
        Status::Failed => "FAILED",
    }
}

/// Tallies in [`CHECKS`] order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tallies(pub Vec<(&'static str, Tally)>);

impl Default for Tallies {
    fn default() -> Self {
        Tallies(CHECKS.iter().map(|&c| (c, Tally::default())).collect())
    }
}

impl Tallies {
    pub fn get(&self, name: &str) -> &Tally {
        &self.0.iter().find(|(n, _)| *n == name).expect("known check").1
    }

    fn slot(&mut self, name: &str) -> &mut Tally {
        &mut self.0.iter_mut().find(|(n, _)| *n == name).expect("known check").1
    }

    pub fn record(&mut self, name: &str, status: Status, witness: impl FnOnce() -> String) {
        let t = self.slot(name);
        match status {
            Status::Confirmed => t.confirmed += 1,
            Status::Vacuous => t.vacuous += 1,
            Status::Failed => {
                t.failed += 1;
                if t.first_failure.is_none() {
                    t.first_failure = Some(witness());
                }
            }
        }
    }

    fn check(&mut self, name: &str, holds: bool, witness: impl FnOnce() -> String) {
        self.record(name, if holds { Status::Confirmed } else { Status::Failed }, witness);
    }

    /// Hypothesis errors make a check vacuous; anything else fails it.
    fn outcome(&mut self, name: &str, result: voltage_core::Result<bool>, witness: impl FnOnce() -> String) {
        match result {
            Ok(holds) => self.check(name, holds, witness),
            Err(Error::Hypothesis(_) | Error::PropertyDelta(_) | Error::SizeCap { .. }) => {
                self.record(name, Status::Vacuous, String::new)
            }
            Err(e) => self.record(name, Status::Failed, || format!("{}: {e}", witness())),
        }
    }

    pub fn add(&mut self, other: &Tallies) {
        for (name, t) in &other.0 {
            self.slot(name).add(t);
        }
    }

    pub fn any_failed(&self) -> bool {
        self.0.iter().any(|(_, t)| t.failed > 0)
    }
}

/// Every check on one instance. `circles` are analyzed as given; when empty,
/// up to [`CIRCLES_PER_INSTANCE`] circles are drawn at random.
pub fn verify_instance<R: Rng>(ve: &VoltageEmbedding, circles: &[CircleSubgraph], rng: &mut R) -> Tallies {
    let mut t = Tallies::default();
    let derived = match ve.derive() {
        Ok(d) => d,
        Err(e) => {
            for name in CHECKS {
                t.record(name, Status::Failed, || format!("derive: {e}"));
            }
            return t;
        }
    };
    let g = ve.base();
    let grp = ve.group();
    let dg = derived.graph();

    let pred = ve.face_lift_prediction();
    let faces = dg.faces().len();
    let chi = dg.euler_characteristic();
    t.check(FACE_LIFTING, pred.face_count == faces && pred.euler_characteristic == chi, || {
        format!("predicted {} faces, χ {}; traced {faces}, χ {chi}", pred.face_count, pred.euler_characteristic)
    });

    let mut uf = UnionFind::new(dg.vertex_count());
    for e in 0..dg.edge_count() {
        let (a, b) = dg.endpoints(e);
        uf.union(a, b);
    }
    let elements: Vec<Elem> = grp.elements().collect();
    for v in 0..g.vertex_count() {
        let starts = [grp.identity(), *elements.choose(rng).expect("nonempty group")];
        for a in starts {
            for &b in &elements {
                let actual = uf.find(derived.vertex(v, a)) == uf.find(derived.vertex(v, b));
                t.outcome(COMPONENT_RELATION, ve.same_component(v, a, b).map(|p| p == actual), || {
                    format!("v={v} a={} b={}: union-find says {actual}", grp.name(a), grp.name(b))
                });
            }
        }
    }

    coset_count_samples(ve, &derived, rng, &mut t);

    t.outcome(MEDIAL_OF_DERIVED, ve.verify_medial_of_derived().map(|()| true), || "medial of derived".into());

    match ve.total_graph_with_voltages() {
        Ok(tvg) => {
            for e in 0..g.edge_count() {
                let result = tvg.special_claw(g, e).and_then(|claw| {
                    let trivial = tvg.claw_voltages(&claw).iter().flatten().all(|&x| x == grp.identity());
                    let same = tvg.medial_local_group(claw.w_tip)? == ve.local_voltage_group(claw.vertex)?;
                    Ok(trivial && same)
                });
                t.outcome(SPECIAL_CLAWS, result, || format!("claw of edge {e}"));
            }
        }
        Err(e) => t.record(SPECIAL_CLAWS, Status::Failed, || format!("total graph: {e}")),
    }

    let sampled;
    let circles = if circles.is_empty() {
        sampled = sample_circles(g, rng);
        &sampled[..]
    } else {
        circles
    };
    for circle in circles {
        let a = *elements.choose(rng).expect("nonempty group");
        circle_checks(ve, circle, a, &mut t);
    }

    invariance_checks(ve, &derived, rng, &mut t);
    t
}

/// Up to [`CIRCLES_PER_INSTANCE`] random circles, each with a random base
/// vertex on it.
pub fn sample_circles<R: Rng>(g: &EmbeddedGraph, rng: &mut R) -> Vec<CircleSubgraph> {
    let Ok(all) = enumerate_circles(g) else { return Vec::new() };
    let picked: Vec<&CircleSubgraph> = all.choose_multiple(rng, CIRCLES_PER_INSTANCE).collect();
    let mut out = Vec::new();
    for c in picked {
        let verts = c.vertices(g);
        let base = *verts.choose(rng).expect("circles have vertices");
        if let Ok(c) = CircleSubgraph::new(g, c.edges().clone(), base) {
            out.push(c);
        }
    }
    out
}

pub fn circle_checks(ve: &VoltageEmbedding, circle: &CircleSubgraph, a: Elem, t: &mut Tallies) {
    let describe = || format!("circle {:?} base {} component {}", circle.edges().edges(), circle.base_vertex(), a);
    let reports = CircleAnalysis::new(ve, circle, a).and_then(|an| an.all_checks());
    match reports {
        Ok(reports) => {
            for r in reports {
                t.record(r.check, r.status(), || {
                    let fails: Vec<String> = r.failures().map(|f| format!("{} ({})", f.name, f.witness)).collect();
                    format!("{}: {}", describe(), fails.join("; "))
                });
            }
        }
        Err(e) => {
            for name in [LIFTED_CIRCLES, LIFTED_ORIENTATION, REVERSING_REGIONS, PRESERVING_REGIONS, REGION_COUNT, COSET_ZGRAPH] {
                t.outcome(name, Err(e.clone()), describe);
            }
        }
    }
}

/// Spanning tree of the edges in `keep` reachable from `root`: the dart
/// reaching each vertex, if any.
fn tree_darts(g: &EmbeddedGraph, keep: &[bool], root: usize) -> Vec<Option<Dart>> {
    let by_tail = g.darts_by_tail();
    let mut parent = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    seen[root] = true;
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &d in &by_tail[u] {
            let h = g.head(d);
            if keep[d.edge()] && !seen[h] {
                seen[h] = true;
                parent[h] = Some(d);
                queue.push_back(h);
            }
        }
    }
    parent
}

fn path_from_root(g: &EmbeddedGraph, parent: &[Option<Dart>], mut u: usize) -> Vec<Dart> {
    let mut path = Vec::new();
    while let Some(d) = parent[u] {
        path.push(d);
        u = g.tail(d);
    }
    path.reverse();
    path
}

/// A closed walk at `v` inside the edge set `y`: the fundamental cycle of a
/// random non-tree edge, or an out-and-back along a tree edge if `y` is a
/// tree.
pub fn closed_walk_in<R: Rng>(g: &EmbeddedGraph, y: &[usize], v: usize, rng: &mut R) -> Option<WalkSpec> {
    let mask = EdgeChain::new(y.iter().copied()).mask(g.edge_count());
    let parent = tree_darts(g, &mask, v);
    let tree: Vec<usize> = parent.iter().flatten().map(|d| d.edge()).collect();
    let extra: Vec<usize> = y.iter().copied().filter(|e| !tree.contains(e)).collect();
    let darts = if let Some(&e) = extra.choose(rng) {
        let d = Dart::new(e, rng.gen_bool(0.5));
        let mut w = path_from_root(g, &parent, g.tail(d));
        w.push(d);
        w.extend(path_from_root(g, &parent, g.head(d)).iter().rev().map(|x| x.reversed()));
        if rng.gen_bool(0.25) {
            w.extend_from_slice(&w.clone());
        }
        w
    } else {
        let d = parent.iter().flatten().find(|d| g.tail(**d) == v).copied()?;
        vec![d, d.reversed()]
    };
    WalkSpec::new(g, darts).ok()
}

fn coset_count_samples<R: Rng>(
    ve: &VoltageEmbedding,
    derived: &voltage_core::DerivedEmbedding,
    rng: &mut R,
    t: &mut Tallies,
) {
    let g = ve.base();
    let faces = g.faces();
    let nf = faces.len();
    let mut chains: Vec<Vec<usize>> = vec![(0..nf).collect()];
    for _ in 0..2 * FACE_CHAINS_PER_INSTANCE {
        let mut pick: Vec<usize> = (0..nf).filter(|_| rng.gen_bool(0.5)).collect();
        if pick.is_empty() {
            pick.push(rng.gen_range(0..nf));
        }
        if !chains.contains(&pick) {
            chains.push(pick);
        }
    }
    let mut tried = 0;
    for chain in chains {
        if tried == FACE_CHAINS_PER_INSTANCE {
            break;
        }
        let chain = FaceChain::new(chain);
        let Ok(skel) = g.subcomplex_skeleton(&faces, &chain) else { continue };
        if !skel.connected || skel.edges.is_empty() {
            continue;
        }
        tried += 1;
        let v = *skel.vertices.choose(rng).expect("skeleton has edges");
        let full: Vec<usize> = skel.edges.edges().to_vec();
        let parent = tree_darts(g, &skel.edges.mask(g.edge_count()), v);
        let mut partial: Vec<usize> = parent.iter().flatten().map(|d| d.edge()).collect();
        if let Some(&e) = full.iter().filter(|e| !partial.contains(e)).collect::<Vec<_>>().choose(rng) {
            partial.push(*e);
        }
        for y in [full, partial] {
            if y.is_empty() {
                continue;
            }
            let Some(w) = closed_walk_in(g, &y, v, rng) else { continue };
            let y = EdgeChain::new(y);
            let result = ve.coset_counts(derived, v, &chain, &y, &w).map(|c| c.holds());
            t.outcome(COSET_COUNTS, result, || {
                let counts = ve.coset_counts(derived, v, &chain, &y, &w);
                format!("v={v} I={:?} y={:?} W={:?}: {counts:?}", chain.faces(), y.edges(), w.darts())
            });
        }
    }
}

fn invariance_checks<R: Rng>(
    ve: &VoltageEmbedding,
    derived: &voltage_core::DerivedEmbedding,
    rng: &mut R,
    t: &mut Tallies,
) {
    let g = ve.base();
    let grp = ve.group();
    let loop_free: Vec<usize> =
        (0..g.vertex_count()).filter(|&v| g.rotation(v).iter().all(|d| !g.is_loop(d.edge()))).collect();
    match loop_free.choose(rng) {
        Some(&v) => {
            let c = Elem(rng.gen_range(0..grp.order()) as u32);
            let result = ve.local_voltage_modification(v, c).and_then(|(m, witness)| {
                witness.check(derived.graph(), m.derive()?.graph())?;
                Ok(true)
            });
            t.outcome(LOCAL_MODIFICATION, result, || format!("vertex {v} by {}", grp.name(c)));
        }
        None => t.record(LOCAL_MODIFICATION, Status::Vacuous, String::new),
    }

    let e = rng.gen_range(0..g.edge_count());
    let result = ve.subdivide_voltage(e).and_then(|(s, witness, target)| {
        witness.check(s.derive()?.graph(), &target)?;
        Ok(true)
    });
    t.outcome(SUBDIVISION, result, || format!("edge {e}"));

    let v = rng.gen_range(0..g.vertex_count());
    let result = g.local_sign_switch(v).and_then(|switched| {
        let base_same = switched.euler_characteristic() == g.euler_characteristic()
            && switched.is_orientable() == g.is_orientable();
        let sv = VoltageEmbedding::new(switched, grp.clone(), ve.alphas().to_vec())?;
        let sd = sv.derive()?;
        let dg = derived.graph();
        let lifted_same = sd.graph().euler_characteristic() == dg.euler_characteristic()
            && sd.graph().is_orientable() == dg.is_orientable()
            && sd.component_count() == derived.component_count();
        Ok(base_same && lifted_same)
    });
    t.outcome(SIGN_SWITCH, result, || format!("vertex {v}"));

    let n = rng.gen_range(2..=3);
    let result = product_lift(ve, n).and_then(|p| Ok(p.derive()?.component_count() == n * derived.component_count()));
    t.outcome(PRODUCT_LIFT, result, || format!("times ℤ{n}: base components {}", derived.component_count()));
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use voltage_core::{catalog, FiniteGroup};

    #[test]
    fn catalog_instances_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for base in catalog::all().into_iter().filter(|g| g.is_connected()) {
            let grp = FiniteGroup::cyclic(4).unwrap();
            let alpha: Vec<Elem> = (0..base.edge_count()).map(|e| Elem((e as u32 + 1) % 4)).collect();
            let ve = VoltageEmbedding::from_edge_voltages(base, grp, &alpha).unwrap();
            let t = verify_instance(&ve, &[], &mut rng);
            assert!(!t.any_failed(), "{t:?}");
            assert_eq!(t.get(FACE_LIFTING).confirmed, 1);
            assert!(t.get(COSET_COUNTS).confirmed > 0);
        }
    }
}
