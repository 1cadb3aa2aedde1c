//! Seeded random instances and the verification report over them.

use std::fmt::Write as _;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use voltage_core::{Dart, DartGraph, Elem, EmbeddedGraph, FiniteGroup, Sign, VoltageEmbedding};

use crate::format::{InstanceFile, NamedCircle};
use crate::verify::{sample_circles, status_word, verify_instance, Tallies, CHECKS};

pub const MAX_VERTICES: usize = 4;
pub const MAX_EDGES: usize = 8;
pub const MAX_CYCLIC: usize = 12;
pub const MAX_PRODUCT_FACTOR: usize = 6;

/// A connected signed rotation system with `V ≤ 4`, `E ≤ 8` and uniformly
/// random voltages over `ℤ_n` (`n ≤ 12`) or `ℤ_2 × ℤ_n` (`n ≤ 6`).
pub fn random_instance<R: Rng>(rng: &mut R) -> VoltageEmbedding {
    let nv = rng.gen_range(1..=MAX_VERTICES);
    let ne = rng.gen_range((nv - 1).max(1)..=MAX_EDGES);
    let mut edges = Vec::with_capacity(ne);
    for v in 1..nv {
        let u = rng.gen_range(0..v);
        edges.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
    }
    while edges.len() < ne {
        edges.push((rng.gen_range(0..nv), rng.gen_range(0..nv)));
    }
    edges.shuffle(rng);
    let signs: Vec<Sign> = (0..ne).map(|_| if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus }).collect();
    let mut rotation = vec![Vec::new(); nv];
    for (e, &(t, h)) in edges.iter().enumerate() {
        rotation[t].push(Dart::positive(e));
        rotation[h].push(Dart::negative(e));
    }
    for r in &mut rotation {
        r.shuffle(rng);
    }
    let group = if rng.gen_bool(0.5) {
        FiniteGroup::cyclic(rng.gen_range(1..=MAX_CYCLIC))
    } else {
        let z2 = FiniteGroup::cyclic(2).expect("order 2");
        FiniteGroup::direct_product(&z2, &FiniteGroup::cyclic(rng.gen_range(1..=MAX_PRODUCT_FACTOR)).expect("small"))
    }
    .expect("small groups");
    let alpha: Vec<Elem> = (0..ne).map(|_| Elem(rng.gen_range(0..group.order()) as u32)).collect();
    let base = EmbeddedGraph::new(nv, &edges, signs, rotation).expect("every dart placed once");
    VoltageEmbedding::from_edge_voltages(base, group, &alpha).expect("connected base")
}

/// Generator for instance `index`: the seed picks the key, the index the
/// stream, so instances are independent of how many came before.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceReport {
    pub index: u64,
    pub summary: String,
    pub checks: Tallies,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<f64>,
    /// Instance file reproducing a failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reproducer: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub count: u64,
    pub instances: Vec<InstanceReport>,
    pub totals: Tallies,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<f64>,
}

impl FuzzReport {
    pub fn failed(&self) -> bool {
        self.totals.any_failed()
    }

    /// Instances with at least one confirmed outcome of `check`.
    pub fn instances_confirming(&self, check: &str) -> usize {
        self.instances.iter().filter(|i| i.checks.get(check).confirmed > 0).count()
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "fuzz seed={} count={}", self.seed, self.count);
        for inst in &self.instances {
            let statuses: Vec<String> = inst
                .checks
                .0
                .iter()
                .filter(|(_, t)| t.status() != voltage_core::zregion::Status::Vacuous)
                .map(|(n, t)| format!("{n}={}", status_word(t.status())))
                .collect();
            let _ = write!(out, "instance {}: {} | {}", inst.index, inst.summary, statuses.join(", "));
            if let Some(ms) = inst.millis {
                let _ = write!(out, " | {ms:.1} ms");
            }
            out.push('\n');
            for (name, t) in &inst.checks.0 {
                if let Some(w) = &t.first_failure {
                    let _ = writeln!(out, "  {name} FAILED: {w}");
                }
            }
            if let Some(r) = &inst.reproducer {
                for line in r.lines() {
                    let _ = writeln!(out, "  | {line}");
                }
            }
        }
        out.push_str("totals:\n");
        for (name, t) in &self.totals.0 {
            let _ = writeln!(
                out,
                "  {name}: {} (confirmed {}, vacuous {}, failed {})",
                status_word(t.status()),
                t.confirmed,
                t.vacuous,
                t.failed
            );
        }
        if let Some(ms) = self.millis {
            let _ = writeln!(out, "elapsed: {ms:.1} ms");
        }
        let _ = writeln!(out, "result: {}", if self.failed() { "FAILED" } else { "ok" });
        out
    }
}

fn summary(ve: &VoltageEmbedding) -> String {
    let g = ve.base();
    format!(
        "V={} E={} F={} χ={} {} |A|={}",
        g.vertex_count(),
        g.edge_count(),
        g.faces().len(),
        g.euler_characteristic(),
        if g.is_orientable() { "orientable" } else { "nonorientable" },
        ve.group().order()
    )
}

pub fn run_instance(seed: u64, index: u64, timing: bool) -> InstanceReport {
    let start = Instant::now();
    let mut rng = instance_rng(seed, index);
    let ve = random_instance(&mut rng);
    let circles = sample_circles(ve.base(), &mut rng);
    let checks = verify_instance(&ve, &circles, &mut rng);
    let reproducer = checks.any_failed().then(|| {
        let mut file = InstanceFile::from_embedding(ve.clone());
        file.circles = circles
            .iter()
            .enumerate()
            .map(|(i, c)| NamedCircle { name: format!("z{i}"), edges: c.edges().edges().to_vec(), base: c.base_vertex() })
            .collect();
        format!("# fuzz seed {seed} instance {index}\n{}", file.print())
    });
    InstanceReport {
        index,
        summary: summary(&ve),
        checks,
        millis: timing.then(|| start.elapsed().as_secs_f64() * 1e3),
        reproducer,
    }
}

/// Runs `count` instances on all available cores. The report is ordered by
/// instance index and identical across runs unless `timing` is set.
pub fn fuzz(seed: u64, count: u64, timing: bool) -> FuzzReport {
    let start = Instant::now();
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()) as u64;
    let mut instances: Vec<InstanceReport> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|k| {
                s.spawn(move || {
                    (k..count).step_by(threads as usize).map(|i| run_instance(seed, i, timing)).collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    });
    instances.sort_by_key(|i| i.index);
    let mut totals = Tallies::default();
    for inst in &instances {
        totals.add(&inst.checks);
    }
    debug_assert_eq!(totals.0.len(), CHECKS.len());
    FuzzReport { seed, count, instances, totals, millis: timing.then(|| start.elapsed().as_secs_f64() * 1e3) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_respect_caps() {
        for i in 0..200 {
            let ve = random_instance(&mut instance_rng(3, i));
            let g = ve.base();
            assert!(g.vertex_count() <= MAX_VERTICES && g.edge_count() <= MAX_EDGES);
            assert!(g.is_connected());
            assert!(ve.group().order() <= MAX_CYCLIC);
        }
    }

    #[test]
    fn empty_run() {
        let r = fuzz(1, 0, false);
        assert!(r.instances.is_empty() && !r.failed());
    }

    #[test]
    fn same_seed_same_report() {
        assert_eq!(fuzz(5, 20, false).text(), fuzz(5, 20, false).text());
    }
}
