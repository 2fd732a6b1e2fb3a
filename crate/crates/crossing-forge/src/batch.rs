//! Bulk pipelines over many maps.
//!
//! Work items are independent, so sweeps run data-parallel with rayon when
//! the `parallel` feature (on by default) is enabled, and as a plain loop
//! otherwise. Results come back in input order either way; the two modes
//! are indistinguishable from the outside.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::bounds::best_crossing_lower_bound;
use crate::configs::{detect, ConfigKind};
use crate::discharging::{
    builtin_scheme, precondition_audit, run_scheme, verify, BUILTIN_SCHEME_NAMES,
};
use crate::generators::{build_family, tight_families};
use crate::planemap::{random_relabeling, CombinatorialMap};
use crate::ratio::fmt_ratio;

/// Outcome of one discharging scheme on one map, in comparable form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeOutcome {
    pub scheme: String,
    pub violations: usize,
    pub total_charge: String,
    /// Final margins grouped by face class, each group sorted.
    pub margins_by_class: Vec<(String, Vec<String>)>,
}

/// Label-free summary of the full pipeline on one drawing. Two isomorphic
/// maps (same drawing, different labels or document order) digest equally,
/// which is what relabeling sweeps check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineDigest {
    pub n: usize,
    pub m: usize,
    pub crossings: usize,
    pub max_crossings_per_edge: usize,
    pub census: Vec<(String, usize)>,
    pub audit_passed: bool,
    pub two_connected: bool,
    /// Configuration instances found, in kind order F25, F26, F36.
    pub config_counts: [usize; 3],
    pub schemes: Vec<SchemeOutcome>,
    pub best_bound: String,
}

/// Run audit, detection, every built-in scheme, and the bound evaluation.
pub fn pipeline_digest(map: &CombinatorialMap) -> PipelineDigest {
    let stats = map.stats();
    let census = map.face_census().into_iter().collect();
    let audit = precondition_audit(map);
    let config_counts = [
        detect(map, ConfigKind::F25).len(),
        detect(map, ConfigKind::F26).len(),
        detect(map, ConfigKind::F36).len(),
    ];
    let schemes = BUILTIN_SCHEME_NAMES
        .iter()
        .map(|name| {
            let scheme = builtin_scheme(name).expect("builtin");
            let (charges, _) = run_scheme(map, &scheme);
            let report = verify(map, &charges, name, &scheme.alpha);
            let mut margins: std::collections::BTreeMap<String, Vec<String>> = Default::default();
            for fc in &report.per_face {
                margins
                    .entry(fc.class.clone())
                    .or_default()
                    .push(fmt_ratio(&fc.margin));
            }
            for group in margins.values_mut() {
                group.sort();
            }
            SchemeOutcome {
                scheme: name.to_string(),
                violations: report.violations.len(),
                total_charge: fmt_ratio(&report.total_charge),
                margins_by_class: margins.into_iter().collect(),
            }
        })
        .collect();
    PipelineDigest {
        n: stats.real_vertices,
        m: stats.graph_edges,
        crossings: stats.crossings,
        max_crossings_per_edge: stats.max_crossings_per_edge,
        census,
        audit_passed: audit.all_passed,
        two_connected: audit.two_connected,
        config_counts,
        schemes,
        best_bound: fmt_ratio(&best_crossing_lower_bound(
            stats.real_vertices as u64,
            stats.graph_edges as u64,
        )),
    }
}

fn sweep_item(map: &CombinatorialMap, seed: u64, index: u64) -> PipelineDigest {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(index));
    let relabeled = random_relabeling(map, &mut rng)
        .validate()
        .expect("relabeling preserves validity");
    pipeline_digest(&relabeled)
}

/// Digest `count` random relabelings of `map`. Deterministic in `seed` and
/// independent of evaluation order: item i uses its own generator seeded
/// with `seed + i`.
pub fn relabel_sweep(map: &CombinatorialMap, count: usize, seed: u64) -> Vec<PipelineDigest> {
    run_indexed(count, |i| sweep_item(map, seed, i))
}

/// As `relabel_sweep`, but always on the current thread. Exists so the two
/// execution modes can be compared in one build.
pub fn relabel_sweep_sequential(
    map: &CombinatorialMap,
    count: usize,
    seed: u64,
) -> Vec<PipelineDigest> {
    (0..count as u64)
        .map(|i| sweep_item(map, seed, i))
        .collect()
}

/// Digest every built-in tight family, keyed by family name.
pub fn family_digests() -> Vec<(String, PipelineDigest)> {
    let families = tight_families();
    run_indexed(families.len(), |i| {
        let family = &families[i as usize];
        let map = build_family(family).expect("built-in family");
        (family.to_string(), pipeline_digest(&map))
    })
}

#[cfg(feature = "parallel")]
fn run_indexed<T: Send, F: Fn(u64) -> T + Sync + Send>(count: usize, f: F) -> Vec<T> {
    (0..count as u64).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_indexed<T, F: Fn(u64) -> T>(count: usize, f: F) -> Vec<T> {
    (0..count as u64).map(f).collect()
}
