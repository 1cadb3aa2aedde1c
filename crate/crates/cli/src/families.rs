//! The five worked example families. Ex41 is built directly; the others
//! are found by searching one-vertex signed rotation systems with at most
//! three loops for one whose local groups match the family's signature.

use serde::Serialize;
use thiserror::Error;
use voltage_core::zregion::{compare_zgraphs, CircleAnalysis, CircleKind, Status};
use voltage_core::{
    CircleSubgraph, Dart, DartGraph, EdgeChain, Elem, EmbeddedGraph, FaceChain, FiniteGroup, Sign, Subgroup,
    VoltageEmbedding, WalkSpec,
};

use crate::format::{InstanceFile, NamedCircle, NamedFaces};
use crate::output::ZGraphJson;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("unknown family `{0}` (expected ex41, ex42, ex43, ex44 or ex45)")]
    Unknown(String),
    #[error("{family} takes {expected} parameter(s), got {got}")]
    Arity { family: &'static str, expected: usize, got: usize },
    #[error("{family}: {name}={value} outside {lo}..={hi}")]
    OutOfRange { family: &'static str, name: &'static str, value: usize, lo: usize, hi: usize },
    #[error("{0}: no embedding in the search space has the required signature")]
    SearchFailed(String),
    #[error(transparent)]
    Core(#[from] voltage_core::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Sphere, separating loop, `ℤ_{ab}`.
    Ex41 { a: usize, b: usize },
    /// Projective plane, `ℤ_2 × ℤ_n`, crossing-free group `⟨(0,1)⟩`.
    Ex42 { n: usize },
    /// Projective plane, `ℤ_2 × ℤ_n`, crossing-free group all of `A(v)`.
    Ex43 { n: usize },
    /// Torus, `ℤ_{kd}`, crossing-free group of order `k`.
    Ex44 { k: usize, d: usize },
    /// Torus, `ℤ_n`, crossing-free group all of `ℤ_n`.
    Ex45 { n: usize },
}

fn bounded(family: &'static str, name: &'static str, value: usize, lo: usize, hi: usize) -> Result<usize, FamilyError> {
    if (lo..=hi).contains(&value) {
        Ok(value)
    } else {
        Err(FamilyError::OutOfRange { family, name, value, lo, hi })
    }
}

impl Family {
    pub fn parse(name: &str, params: &[usize]) -> Result<Family, FamilyError> {
        let arity = |family: &'static str, expected: usize| {
            if params.len() == expected {
                Ok(())
            } else {
                Err(FamilyError::Arity { family, expected, got: params.len() })
            }
        };
        match name {
            "ex41" => {
                arity("ex41", 2)?;
                Ok(Family::Ex41 { a: bounded("ex41", "a", params[0], 1, 6)?, b: bounded("ex41", "b", params[1], 1, 6)? })
            }
            "ex42" => {
                arity("ex42", 1)?;
                Ok(Family::Ex42 { n: bounded("ex42", "n", params[0], 1, 12)? })
            }
            "ex43" => {
                arity("ex43", 1)?;
                Ok(Family::Ex43 { n: bounded("ex43", "n", params[0], 1, 12)? })
            }
            "ex44" => {
                arity("ex44", 2)?;
                Ok(Family::Ex44 { k: bounded("ex44", "k", params[0], 2, 4)?, d: bounded("ex44", "d", params[1], 1, 4)? })
            }
            "ex45" => {
                arity("ex45", 1)?;
                Ok(Family::Ex45 { n: bounded("ex45", "n", params[0], 1, 12)? })
            }
            other => Err(FamilyError::Unknown(other.into())),
        }
    }

    pub fn id(&self) -> String {
        match *self {
            Family::Ex41 { a, b } => format!("ex41({a},{b})"),
            Family::Ex42 { n } => format!("ex42({n})"),
            Family::Ex43 { n } => format!("ex43({n})"),
            Family::Ex44 { k, d } => format!("ex44({k},{d})"),
            Family::Ex45 { n } => format!("ex45({n})"),
        }
    }
}

/// One expected quantity next to the one computed by brute force.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Expectation {
    pub quantity: &'static str,
    pub expected: usize,
    pub observed: Vec<usize>,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyRecord {
    pub family: String,
    pub group_order: usize,
    pub expectations: Vec<Expectation>,
    /// Checker names that failed on this instance.
    pub failed_checks: Vec<&'static str>,
    pub zgraph: ZGraphJson,
    /// Places where the family's published description disagrees with
    /// what its own signature implies.
    pub discrepancies: Vec<String>,
}

impl FamilyRecord {
    pub fn holds(&self) -> bool {
        self.failed_checks.is_empty() && self.expectations.iter().all(|e| e.holds)
    }
}

#[derive(Debug, Clone)]
pub struct ExampleFamily {
    pub family: Family,
    pub instance: InstanceFile,
    pub record: FamilyRecord,
}

fn expect(quantity: &'static str, expected: usize, observed: Vec<usize>) -> Expectation {
    let holds = !observed.is_empty() && observed.iter().all(|&x| x == expected);
    Expectation { quantity, expected, observed, holds }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn order_of(n: usize, x: usize) -> usize {
    n / gcd(n, x % n)
}

fn loop_circle(g: &EmbeddedGraph, e: usize) -> Result<CircleSubgraph, FamilyError> {
    Ok(CircleSubgraph::new(g, EdgeChain::new([e]), 0)?)
}

pub fn generate(family: Family) -> Result<ExampleFamily, FamilyError> {
    match family {
        Family::Ex41 { a, b } => ex41(a, b),
        Family::Ex42 { n } | Family::Ex43 { n } => projective(family, n),
        Family::Ex44 { k, d } => torus(family, k * d, k),
        Family::Ex45 { n } => torus(family, n, n),
    }
}

/// Checker names that failed, and the analysis for further use.
fn run_checks(an: &CircleAnalysis) -> Result<Vec<&'static str>, FamilyError> {
    Ok(an.all_checks()?.into_iter().filter(|r| r.status() == Status::Failed).map(|r| r.check).collect())
}

fn zgraph_expectations(an: &CircleAnalysis, out: &mut Vec<Expectation>) -> Result<voltage_core::zregion::ZGraph, FamilyError> {
    let coset = an.zgraph_coset()?;
    let brute = an.zgraph_brute()?;
    out.push(expect("coset z-graph equals brute force", 1, vec![compare_zgraphs(&coset, &brute).is_ok() as usize]));
    Ok(coset)
}

/// One vertex carrying loops `x` (voltage `d`), `z` (voltage 0) and `y`
/// (voltage `c`) nested so that `z` separates `x` from `y` on the sphere.
fn ex41(a: usize, b: usize) -> Result<ExampleFamily, FamilyError> {
    let n = a * b;
    let lcm = n / gcd(a, b);
    let (c, d) = (lcm / a, lcm / b);
    let group = FiniteGroup::cyclic(n)?;
    let (x, z, y) = (0, 1, 2);
    let rotation = vec![vec![
        Dart::positive(x),
        Dart::negative(x),
        Dart::positive(z),
        Dart::positive(y),
        Dart::negative(y),
        Dart::negative(z),
    ]];
    let base = EmbeddedGraph::new(1, &[(0, 0); 3], vec![Sign::Plus; 3], rotation)?;
    let alpha = [Elem((d % n) as u32), Elem(0), Elem((c % n) as u32)];
    let ve = VoltageEmbedding::from_edge_voltages(base, group, &alpha)?;
    let g = ve.base();
    let circle = loop_circle(g, z)?;
    let an = CircleAnalysis::new(&ve, &circle, Elem(0))?;
    if an.kind() != CircleKind::Separating {
        return Err(FamilyError::SearchFailed(format!("ex41({a},{b})")));
    }

    // I is whichever side carries x
    let faces = g.faces();
    let mut inside = an.inside_faces()?;
    let skel = g.subcomplex_skeleton(&faces, &inside)?;
    if !skel.edges.contains(x) {
        inside = inside.complement(faces.len());
    }
    let outside = inside.complement(faces.len());
    let s_in = g.subcomplex_skeleton(&faces, &inside)?;
    let s_out = g.subcomplex_skeleton(&faces, &outside)?;
    let a_in = ve.restricted_voltage_group(&s_in.edges, 0)?;
    let a_out = ve.restricted_voltage_group(&s_out.edges, 0)?;
    let a_z = ve.restricted_voltage_group(&EdgeChain::new([z]), 0)?;

    let derived = ve.derive()?;
    let walk = WalkSpec::new(g, vec![Dart::positive(z)])?;
    let y_chain = EdgeChain::new([z]);
    let counts_in = ve.coset_counts(&derived, 0, &inside, &y_chain, &walk)?;
    let counts_out = ve.coset_counts(&derived, 0, &outside, &y_chain, &walk)?;
    let (od, oc) = (order_of(n, d), order_of(n, c));

    let mut ex = vec![
        expect("A(v,S:I) order", od, vec![a_in.len()]),
        expect("A(v,S:I^c) order", oc, vec![a_out.len()]),
        expect("A(v,G:z) order", 1, vec![a_z.len()]),
        expect("A(v,S:I) and A(v,S:I^c) generate A", n, vec![join_order(&ve, &a_in, &a_out)?]),
        expect("components of the derived surface", 1, counts_in.components.observed.clone()),
        expect("components of (S:I)^α per component", n / od, counts_in.skeleton.observed.clone()),
        expect("components of (S:I^c)^α per component", n / oc, counts_out.skeleton.observed.clone()),
        expect("circles per component of (S:I)^α", od, counts_in.fiber.observed.clone()),
        expect("circles per component of (S:I^c)^α", oc, counts_out.fiber.observed.clone()),
    ];
    let zg = zgraph_expectations(&an, &mut ex)?;
    ex.push(expect("z-graph vertices", n / od + n / oc, vec![zg.vertex_count()]));
    ex.push(expect("z-graph edges", n, vec![zg.edge_count()]));
    ex.push(expect("z-graph bipartite", 1, vec![zg.is_bipartite() as usize]));

    let mut instance = InstanceFile::from_embedding(ve.clone());
    instance.edge_names = vec!["x".into(), "z".into(), "y".into()];
    instance.circles.push(NamedCircle { name: "z".into(), edges: vec![z], base: 0 });
    instance.face_chains.push(NamedFaces { name: "I".into(), faces: inside.faces().to_vec() });
    let record = FamilyRecord {
        family: Family::Ex41 { a, b }.id(),
        group_order: n,
        expectations: ex,
        failed_checks: run_checks(&an)?,
        zgraph: ZGraphJson::new(&zg, ve.group()),
        discrepancies: Vec::new(),
    };
    Ok(ExampleFamily { family: Family::Ex41 { a, b }, instance, record })
}

fn join_order(ve: &VoltageEmbedding, a: &Subgroup, b: &Subgroup) -> Result<usize, FamilyError> {
    let gens: Vec<Elem> = a.elements().iter().chain(b.elements()).copied().collect();
    Ok(ve.group().subgroup_generated(&gens)?.len())
}

/// All orderings of `items`, in lexicographic order of positions.
fn permutations<T: Copy>(items: &[T]) -> Vec<Vec<T>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, first);
            out.push(p);
        }
    }
    out
}

/// Every one-vertex signed rotation system with `m` loops, loop 0 signed
/// `first_sign`, and the rotation starting at `0+`.
fn one_vertex_systems(m: usize, first_sign: Sign) -> Vec<EmbeddedGraph> {
    let others: Vec<Dart> = (1..2 * m as u32).map(Dart).collect();
    let mut out = Vec::new();
    for mask in 0..1usize << (m - 1) {
        let mut signs = vec![first_sign];
        signs.extend((1..m).map(|e| if mask >> (e - 1) & 1 == 1 { Sign::Minus } else { Sign::Plus }));
        for p in permutations(&others) {
            let mut rot = vec![Dart::positive(0)];
            rot.extend(p);
            if let Ok(g) = EmbeddedGraph::new(1, &vec![(0, 0); m], signs.clone(), vec![rot]) {
                out.push(g);
            }
        }
    }
    out
}

/// Assignments of `candidates` to loops `1..m`, loop 0 fixed to `first`.
fn voltage_choices(m: usize, first: Elem, candidates: &[Elem]) -> Vec<Vec<Elem>> {
    let mut out = vec![vec![first]];
    for _ in 1..m {
        out = out
            .into_iter()
            .flat_map(|p| {
                candidates.iter().map(move |&c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

struct Target {
    chi: i64,
    orientable: bool,
    kind: CircleKind,
    omega: Elem,
    candidates: Vec<Elem>,
    /// Required `A⊻`.
    crossing_free: Vec<Elem>,
}

fn search(target: &Target, group: &FiniteGroup, label: &str) -> Result<(VoltageEmbedding, CircleAnalysis), FamilyError> {
    let first_sign = if target.kind == CircleKind::Reversing { Sign::Minus } else { Sign::Plus };
    for m in 2..=3 {
        for g in one_vertex_systems(m, first_sign) {
            if g.euler_characteristic() != target.chi || g.is_orientable() != target.orientable {
                continue;
            }
            let circle = loop_circle(&g, 0)?;
            if target.kind != CircleKind::Reversing && g.is_separating(&g.faces(), &circle)? {
                continue;
            }
            for alpha in voltage_choices(m, target.omega, &target.candidates) {
                let ve = VoltageEmbedding::from_edge_voltages(g.clone(), group.clone(), &alpha)?;
                if ve.local_voltage_group(0)?.len() != group.order() {
                    continue;
                }
                let an = CircleAnalysis::new(&ve, &circle, group.identity())?;
                if an.kind() == target.kind && an.crossing_free_group()?.elements() == target.crossing_free {
                    return Ok((ve, an));
                }
            }
        }
    }
    Err(FamilyError::SearchFailed(label.into()))
}

fn loop_names(m: usize) -> Vec<String> {
    ["e", "f", "g"][..m].iter().map(|s| s.to_string()).collect()
}

fn finish(family: Family, ve: VoltageEmbedding, an: &CircleAnalysis, ex: Vec<Expectation>, zg: &voltage_core::zregion::ZGraph, discrepancies: Vec<String>) -> Result<ExampleFamily, FamilyError> {
    let mut instance = InstanceFile::from_embedding(ve.clone());
    instance.edge_names = loop_names(ve.base().edge_count());
    instance.circles.push(NamedCircle { name: "z".into(), edges: vec![0], base: 0 });
    let record = FamilyRecord {
        family: family.id(),
        group_order: ve.group().order(),
        expectations: ex,
        failed_checks: run_checks(an)?,
        zgraph: ZGraphJson::new(zg, ve.group()),
        discrepancies,
    };
    Ok(ExampleFamily { family, instance, record })
}

/// `ℤ_2 × ℤ_n` on the projective plane with `e` reversing, `ω(e) = (1,0)`.
fn projective(family: Family, n: usize) -> Result<ExampleFamily, FamilyError> {
    let group = FiniteGroup::direct_product(&FiniteGroup::cyclic(2)?, &FiniteGroup::cyclic(n)?)?;
    let el = |a: usize, b: usize| group.parse_element(&format!("{a},{}", b % n)).expect("in range");
    let candidates = vec![el(0, 0), el(1, 0), el(0, 1), el(1, 1)];
    let two_regions = matches!(family, Family::Ex42 { .. });
    let crossing_free = if two_regions {
        group.subgroup_generated(&[el(0, 1)])?.elements().to_vec()
    } else {
        group.elements().collect()
    };
    let target = Target { chi: 1, orientable: false, kind: CircleKind::Reversing, omega: el(1, 0), candidates, crossing_free };
    let (ve, an) = search(&target, &group, &family.id())?;

    let regions = an.zregions()?;
    let mut ex = vec![
        expect("A(v,G:z) order", 2, vec![ve.restricted_voltage_group(&EdgeChain::new([0]), 0)?.len()]),
        expect("lifted circles", n, vec![an.fiber_circles().circles.len()]),
        expect("z-regions", if two_regions { 2 } else { 1 }, vec![regions.regions.len(), an.predict_zregion_count()?]),
    ];
    let zg = zgraph_expectations(&an, &mut ex)?;
    if two_regions {
        ex.push(expect("z-graph vertices", 2, vec![zg.vertex_count()]));
        ex.push(expect("z-graph parallel edges", n, vec![zg.edges.iter().filter(|e| !e.is_loop()).count()]));
        ex.push(expect("z-graph loops", 0, vec![zg.loop_count()]));
    } else {
        ex.push(expect("z-graph vertices", 1, vec![zg.vertex_count()]));
        ex.push(expect("z-graph loops", n, vec![zg.loop_count()]));
        ex.push(expect("z-graph edges", n, vec![zg.edge_count()]));
    }
    finish(family, ve, &an, ex, &zg, Vec::new())
}

/// `ℤ_n` on the torus with `e` nonseparating, `ω(e) = 0`, and a crossing-
/// free group of order `k`.
fn torus(family: Family, n: usize, k: usize) -> Result<ExampleFamily, FamilyError> {
    let group = FiniteGroup::cyclic(n)?;
    let d = n / k;
    let mut candidates = vec![Elem(0), Elem(1 % n as u32), Elem((d % n) as u32)];
    candidates.dedup();
    let crossing_free = group.subgroup_generated(&[Elem((d % n) as u32)])?.elements().to_vec();
    let target = Target { chi: 0, orientable: true, kind: CircleKind::Preserving, omega: Elem(0), candidates, crossing_free };
    let (ve, an) = search(&target, &group, &family.id())?;

    let regions = an.zregions()?;
    // circle sides on each region's boundary
    let mut sides = vec![0usize; regions.regions.len()];
    for &i in &regions.circles {
        for r in regions.partition.banks(i) {
            sides[regions.regions.binary_search(&r).expect("bank inside the component")] += 1;
        }
    }
    let mut ex = vec![
        expect("A(v,G:z) order", 1, vec![ve.restricted_voltage_group(&EdgeChain::new([0]), 0)?.len()]),
        expect("crossing-free group order", k, vec![an.crossing_free_group()?.len()]),
        expect("lifted circles", n, vec![an.fiber_circles().circles.len()]),
    ];
    let mut discrepancies = Vec::new();
    match family {
        Family::Ex44 { .. } => {
            ex.push(expect("z-regions", d, vec![regions.regions.len(), an.predict_zregion_count()?]));
            ex.push(expect("circle sides bounding each z-region", 2 * k, sides));
        }
        _ => {
            let observed = regions.regions.len();
            ex.push(expect("z-regions", 1, vec![observed, an.predict_zregion_count()?]));
            discrepancies.push(format!(
                "the published text says two z-regions; |A(v)|/|A⊻| = {n}/{n} = 1 and the bouquet of {n} loops \
                 both give one, and brute force finds {observed}"
            ));
        }
    }
    let zg = zgraph_expectations(&an, &mut ex)?;
    match family {
        Family::Ex44 { .. } => {
            ex.push(expect("z-graph vertices", d, vec![zg.vertex_count()]));
            ex.push(expect("z-graph degree", 2 * k, zg.degrees()));
            ex.push(expect("z-graph connected", 1, vec![zg.is_connected() as usize]));
        }
        _ => {
            ex.push(expect("z-graph vertices", 1, vec![zg.vertex_count()]));
            ex.push(expect("z-graph loops", n, vec![zg.loop_count()]));
            ex.push(expect("z-graph edges", n, vec![zg.edge_count()]));
        }
    }
    finish(family, ve, &an, ex, &zg, discrepancies)
}

/// Face chain helper for callers that want `I` by name.
pub fn face_chain(file: &InstanceFile, name: &str) -> Option<FaceChain> {
    file.face_chains.iter().find(|f| f.name == name).map(|f| FaceChain::new(f.faces.iter().copied()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ex41_two_three() {
        let f = generate(Family::Ex41 { a: 2, b: 3 }).unwrap();
        assert_eq!(f.instance.ve.base().euler_characteristic(), 2);
        let get = |q: &str| f.record.expectations.iter().find(|e| e.quantity == q).unwrap().clone();
        assert_eq!(get("components of (S:I)^α per component").expected, 2);
        assert_eq!(get("circles per component of (S:I)^α").expected, 3);
        assert!(f.record.holds(), "{:#?}", f.record);
    }

    #[test]
    fn params_are_capped() {
        assert!(matches!(Family::parse("ex44", &[1, 2]), Err(FamilyError::OutOfRange { .. })));
        assert!(matches!(Family::parse("ex42", &[]), Err(FamilyError::Arity { .. })));
        assert!(matches!(Family::parse("ex46", &[1]), Err(FamilyError::Unknown(_))));
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(&[1, 2, 3, 4]).len(), 24);
    }
}
