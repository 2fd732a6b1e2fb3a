//! Exact-rational charge redistribution over the faces of a validated map.
//!
//! Every face starts with `|f| + |V(f)| - 4` charge, which sums to `4n - 8`
//! over the sphere. A scheme then moves charge between faces in synchronous
//! steps, and the verifier compares each face against `alpha * |V(f)|`.
//! Amounts are exact rationals throughout; serialized reports carry them as
//! `"p/q"` strings, never floats.

use std::collections::{BTreeMap, BTreeSet};

use num::Zero;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::planemap::{class_name, CombinatorialMap, FaceId, NodeKind, SkeletonInfo};
use crate::ratio::{fmt_ratio, int, ratio, Ratio};

/// Per-face charges after `step_index` steps (0 = initial assignment).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeVector {
    pub charges: Vec<Ratio>,
    pub step_index: usize,
}

impl ChargeVector {
    pub fn get(&self, f: FaceId) -> &Ratio {
        &self.charges[f.0 as usize]
    }

    pub fn total(&self) -> Ratio {
        self.charges.iter().sum()
    }
}

/// The amount a face must stay above: `alpha * |V(f)|`.
pub fn face_target(map: &CombinatorialMap, f: FaceId, alpha: &Ratio) -> Ratio {
    alpha * int(map.face_class(f).0 as i64)
}

/// `ch(f) = |f| + |V(f)| - 4` for every face; the total is `4n - 8`.
pub fn initial_charges(map: &CombinatorialMap) -> ChargeVector {
    let charges: Vec<Ratio> = map
        .face_ids()
        .map(|f| {
            let (reals, size) = map.face_class(f);
            int(size as i64 + reals as i64 - 4)
        })
        .collect();
    let out = ChargeVector {
        charges,
        step_index: 0,
    };
    if map.dart_count() > 0 {
        assert_eq!(
            out.total(),
            int(4 * map.real_count() as i64 - 8),
            "initial charge total must be 4n - 8"
        );
    }
    out
}

/// Predicate on a face, evaluated against a charge snapshot.
#[derive(Clone, Debug, PartialEq)]
pub enum FaceTest {
    Any,
    /// Exact class (realIncidences, size).
    Class(usize, usize),
    ClassIn(Vec<(usize, usize)>),
    /// Charge below `alpha * |V(f)|` in the reference snapshot.
    Demanding,
    DemandingClass(usize, usize),
}

impl FaceTest {
    fn passes(&self, map: &CombinatorialMap, f: FaceId, snapshot: &[Ratio], alpha: &Ratio) -> bool {
        let class = map.face_class(f);
        let demanding = || snapshot[f.0 as usize] < face_target(map, f, alpha);
        match self {
            FaceTest::Any => true,
            FaceTest::Class(r, s) => class == (*r, *s),
            FaceTest::ClassIn(list) => list.contains(&class),
            FaceTest::Demanding => demanding(),
            FaceTest::DemandingClass(r, s) => class == (*r, *s) && demanding(),
        }
    }
}

/// Which faces a rule pairs its subject with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeerSelector {
    /// Chain-settled face across each 0-edge slot (0-quadrilateral bands are
    /// skipped via their opposite sides).
    WedgeNeighbors,
    /// Face across each 1-edge slot.
    OneNeighbors,
    /// Face across each 0-edge slot, without chain skipping.
    ZeroNeighbors,
    /// Diagonal face at each crossing corner that shares no map edge there.
    VertexNeighbors,
    /// All other faces in the subject's skeleton region.
    SkeletonRegion,
}

/// How much moves, and in which direction relative to the subject.
#[derive(Clone, Debug, PartialEq)]
pub enum Amount {
    /// Subject receives this much across every qualifying peer slot.
    FixedPerPeer(Ratio),
    /// Subject pulls exactly its demand, split over qualifying peer slots.
    /// The donors pay even without excess; the verifier surfaces the damage.
    Demand,
    /// Subject donates its excess, split equally over distinct qualifying
    /// peers; `cap` limits the per-peer share and the subject keeps the rest.
    Excess { cap: Option<Ratio> },
    /// Subject forwards exactly what it received in the previous sub-phase,
    /// split equally over distinct qualifying peers.
    ForwardReceived,
}

#[derive(Clone, Debug)]
pub struct Rule {
    pub subject: FaceTest,
    pub peers: PeerSelector,
    pub peer_filter: FaceTest,
    pub amount: Amount,
}

/// One synchronous step. Multiple rules run as sub-phases: each reads the
/// charges left by the previous one, and conservation holds after each.
#[derive(Clone, Debug)]
pub struct Step {
    pub name: String,
    pub rules: Vec<Rule>,
}

#[derive(Clone, Debug)]
pub struct Scheme {
    pub name: String,
    pub alpha: Ratio,
    pub steps: Vec<Step>,
}

fn step(name: &str, rules: Vec<Rule>) -> Step {
    Step {
        name: name.into(),
        rules,
    }
}

fn two_planar_scheme(name: &str, alpha: Ratio, side: Ratio, wedge: Ratio) -> Scheme {
    Scheme {
        name: name.into(),
        alpha,
        steps: vec![
            step(
                "Step 1",
                vec![Rule {
                    subject: FaceTest::Class(0, 3),
                    peers: PeerSelector::WedgeNeighbors,
                    peer_filter: FaceTest::Any,
                    amount: Amount::FixedPerPeer(ratio(1, 3)),
                }],
            ),
            step(
                "Step 2",
                vec![Rule {
                    subject: FaceTest::Class(1, 3),
                    peers: PeerSelector::OneNeighbors,
                    peer_filter: FaceTest::Any,
                    amount: Amount::FixedPerPeer(side),
                }],
            ),
            step(
                "Step 3",
                vec![Rule {
                    subject: FaceTest::Class(1, 3),
                    peers: PeerSelector::WedgeNeighbors,
                    peer_filter: FaceTest::Any,
                    amount: Amount::FixedPerPeer(wedge),
                }],
            ),
            step(
                "Step 4",
                vec![Rule {
                    subject: FaceTest::Class(2, 4),
                    peers: PeerSelector::WedgeNeighbors,
                    peer_filter: FaceTest::Any,
                    amount: Amount::Excess { cap: None },
                }],
            ),
            step(
                "Step 5",
                vec![Rule {
                    subject: FaceTest::Class(2, 3),
                    peers: PeerSelector::SkeletonRegion,
                    peer_filter: FaceTest::Demanding,
                    amount: Amount::Excess { cap: None },
                }],
            ),
        ],
    }
}

/// Five-step scheme with target ratio 6/13, for 2-planar maps free of both
/// pentagon and hexagon configurations.
pub fn scheme_2p_13_3() -> Scheme {
    two_planar_scheme("2p-13/3", ratio(6, 13), ratio(1, 26), ratio(5, 13))
}

/// Variant with target ratio 4/9, for 2-planar maps free of the pentagon
/// configuration only.
pub fn scheme_2p_9_2() -> Scheme {
    two_planar_scheme("2p-9/2", ratio(4, 9), ratio(1, 18), ratio(1, 3))
}

/// Seven-step scheme with target ratio 2/5, for 3-planar maps free of the
/// crossed-hexagon configuration.
pub fn scheme_3p() -> Scheme {
    Scheme {
        name: "3p".into(),
        alpha: ratio(2, 5),
        steps: vec![
            step(
                "Step 1",
                vec![Rule {
                    subject: FaceTest::Class(0, 3),
                    peers: PeerSelector::ZeroNeighbors,
                    peer_filter: FaceTest::Class(2, 4),
                    amount: Amount::FixedPerPeer(int(1)),
                }],
            ),
            step(
                "Step 2",
                vec![Rule {
                    subject: FaceTest::DemandingClass(0, 3),
                    peers: PeerSelector::WedgeNeighbors,
                    peer_filter: FaceTest::Any,
                    amount: Amount::FixedPerPeer(ratio(1, 3)),
                }],
            ),
            step(
                "Step 3",
                vec![Rule {
                    subject: FaceTest::Class(2, 3),
                    peers: PeerSelector::OneNeighbors,
                    peer_filter: FaceTest::Class(1, 3),
                    amount: Amount::Excess { cap: None },
                }],
            ),
            step(
                "Step 4",
                vec![Rule {
                    subject: FaceTest::Class(1, 3),
                    peers: PeerSelector::WedgeNeighbors,
                    peer_filter: FaceTest::Any,
                    amount: Amount::Demand,
                }],
            ),
            step(
                "Step 5",
                vec![Rule {
                    subject: FaceTest::Any,
                    peers: PeerSelector::WedgeNeighbors,
                    peer_filter: FaceTest::Class(0, 5),
                    amount: Amount::Excess {
                        cap: Some(ratio(3, 10)),
                    },
                }],
            ),
            step(
                "Step 6",
                vec![
                    Rule {
                        subject: FaceTest::Any,
                        peers: PeerSelector::VertexNeighbors,
                        peer_filter: FaceTest::ClassIn(vec![(0, 4), (0, 5)]),
                        amount: Amount::Excess { cap: None },
                    },
                    Rule {
                        subject: FaceTest::Class(0, 4),
                        peers: PeerSelector::ZeroNeighbors,
                        peer_filter: FaceTest::Demanding,
                        amount: Amount::ForwardReceived,
                    },
                ],
            ),
            step(
                "Step 7",
                vec![Rule {
                    subject: FaceTest::Any,
                    peers: PeerSelector::SkeletonRegion,
                    peer_filter: FaceTest::Demanding,
                    amount: Amount::Excess { cap: None },
                }],
            ),
        ],
    }
}

pub const BUILTIN_SCHEME_NAMES: [&str; 3] = ["2p-13/3", "2p-9/2", "3p"];

pub fn builtin_scheme(name: &str) -> Option<Scheme> {
    match name {
        "2p-13/3" => Some(scheme_2p_13_3()),
        "2p-9/2" => Some(scheme_2p_9_2()),
        "3p" => Some(scheme_3p()),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transfer {
    pub from: FaceId,
    pub to: FaceId,
    pub amount: Ratio,
}

/// A transfer whose premise the analysed drawings never exhibit, recorded
/// when it happens anyway. Execution continues with the literal rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub step: usize,
    pub face: FaceId,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct StepRecord {
    /// 1-based, matching the step names.
    pub step: usize,
    pub name: String,
    /// Merged per (from, to) pair, sorted.
    pub transfers: Vec<Transfer>,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Clone, Debug)]
pub struct StepTrace {
    pub scheme: String,
    pub steps: Vec<StepRecord>,
}

impl StepTrace {
    pub fn diagnostics(&self) -> impl Iterator<Item = &Diagnostic> {
        self.steps.iter().flat_map(|s| s.diagnostics.iter())
    }
}

struct Peers {
    /// One entry per qualifying slot; distinctness is the caller's concern.
    faces: Vec<FaceId>,
    /// Slots whose wedge chain never settles.
    broken: Vec<String>,
}

fn peer_slots(
    map: &CombinatorialMap,
    skeleton: Option<&SkeletonInfo>,
    f: FaceId,
    selector: PeerSelector,
) -> Peers {
    let mut faces = Vec::new();
    let mut broken = Vec::new();
    match selector {
        PeerSelector::WedgeNeighbors => {
            for (d, chain) in map.wedge_slots(f) {
                if chain.cycle {
                    broken.push(format!(
                        "wedge chain at dart {} never leaves its 0-quadrilateral band",
                        map.dart_label(d)
                    ));
                } else {
                    faces.push(chain.face);
                }
            }
        }
        PeerSelector::OneNeighbors => {
            faces.extend(map.r_neighbors(f, 1).into_iter().map(|(_, g)| g));
        }
        PeerSelector::ZeroNeighbors => {
            faces.extend(map.r_neighbors(f, 0).into_iter().map(|(_, g)| g));
        }
        PeerSelector::VertexNeighbors => {
            faces.extend(map.vertex_neighbors(f).into_iter().map(|(_, g)| g));
        }
        PeerSelector::SkeletonRegion => {
            let sk = skeleton.expect("region rules need the skeleton");
            let region = sk.region_of(f);
            faces.extend(
                sk.regions[region as usize]
                    .faces
                    .iter()
                    .map(|&g| FaceId(g))
                    .filter(|&g| g != f),
            );
        }
    }
    Peers { faces, broken }
}

#[allow(clippy::too_many_arguments)]
fn apply_rule(
    map: &CombinatorialMap,
    alpha: &Ratio,
    rule: &Rule,
    snapshot: &[Ratio],
    skeleton: Option<&SkeletonInfo>,
    prev_phase: &[Transfer],
    step_no: usize,
    diagnostics: &mut Vec<Diagnostic>,
) -> Vec<Transfer> {
    let mut out: Vec<Transfer> = Vec::new();
    for f in map.face_ids() {
        if !rule.subject.passes(map, f, snapshot, alpha) {
            continue;
        }
        let peers = peer_slots(map, skeleton, f, rule.peers);
        for reason in peers.broken {
            diagnostics.push(Diagnostic {
                step: step_no,
                face: f,
                reason,
            });
        }
        let qualifying: Vec<FaceId> = peers
            .faces
            .into_iter()
            .filter(|&g| g != f && rule.peer_filter.passes(map, g, snapshot, alpha))
            .collect();
        match &rule.amount {
            Amount::FixedPerPeer(r) => {
                for g in qualifying {
                    out.push(Transfer {
                        from: g,
                        to: f,
                        amount: r.clone(),
                    });
                }
            }
            Amount::Demand => {
                let need = face_target(map, f, alpha) - &snapshot[f.0 as usize];
                if need <= Ratio::zero() {
                    continue;
                }
                if qualifying.is_empty() {
                    diagnostics.push(Diagnostic {
                        step: step_no,
                        face: f,
                        reason: format!("demand of {} has no supplier", fmt_ratio(&need)),
                    });
                    continue;
                }
                let share = need / int(qualifying.len() as i64);
                for g in qualifying {
                    out.push(Transfer {
                        from: g,
                        to: f,
                        amount: share.clone(),
                    });
                }
            }
            Amount::Excess { cap } => {
                let excess = &snapshot[f.0 as usize] - face_target(map, f, alpha);
                if excess <= Ratio::zero() {
                    continue;
                }
                let distinct: BTreeSet<FaceId> = qualifying.into_iter().collect();
                if distinct.is_empty() {
                    continue;
                }
                let mut share = &excess / int(distinct.len() as i64);
                if let Some(limit) = cap {
                    if share > *limit {
                        share = limit.clone();
                    }
                }
                for g in distinct {
                    out.push(Transfer {
                        from: f,
                        to: g,
                        amount: share.clone(),
                    });
                }
            }
            Amount::ForwardReceived => {
                let received: Ratio = prev_phase
                    .iter()
                    .filter(|t| t.to == f)
                    .map(|t| t.amount.clone())
                    .sum();
                if received.is_zero() {
                    continue;
                }
                let distinct: BTreeSet<FaceId> = qualifying.into_iter().collect();
                if distinct.is_empty() {
                    diagnostics.push(Diagnostic {
                        step: step_no,
                        face: f,
                        reason: format!(
                            "received {} but has nowhere demanding to forward it",
                            fmt_ratio(&received)
                        ),
                    });
                    continue;
                }
                let share = received / int(distinct.len() as i64);
                for g in distinct {
                    out.push(Transfer {
                        from: f,
                        to: g,
                        amount: share.clone(),
                    });
                }
            }
        }
    }
    // Fixed and demand transfers may overdraw their donors; that is exactly
    // the situation the verifier must surface, so record it. Excess-type
    // donors cannot overdraw by construction.
    if matches!(rule.amount, Amount::FixedPerPeer(_) | Amount::Demand) {
        let mut paid: BTreeMap<FaceId, Ratio> = BTreeMap::new();
        for t in &out {
            *paid.entry(t.from).or_insert_with(Ratio::zero) += &t.amount;
        }
        for (g, total) in paid {
            let left = &snapshot[g.0 as usize] - &total;
            let target = face_target(map, g, alpha);
            if left < target {
                diagnostics.push(Diagnostic {
                    step: step_no,
                    face: g,
                    reason: format!(
                        "paying {} leaves {}, below its target {}",
                        fmt_ratio(&total),
                        fmt_ratio(&left),
                        fmt_ratio(&target)
                    ),
                });
            }
        }
    }
    out
}

fn scheme_needs_skeleton(scheme: &Scheme) -> bool {
    scheme
        .steps
        .iter()
        .flat_map(|s| s.rules.iter())
        .any(|r| r.peers == PeerSelector::SkeletonRegion)
}

/// Run `scheme` on `map`. Each step reads the charges left by the previous
/// one; the total is asserted equal to `4n - 8` after every sub-phase.
pub fn run_scheme(map: &CombinatorialMap, scheme: &Scheme) -> (ChargeVector, StepTrace) {
    let init = initial_charges(map);
    let expected_total = init.total();
    let mut charges = init.charges;
    let skeleton = scheme_needs_skeleton(scheme).then(|| map.skeleton());
    let mut steps = Vec::new();
    for (si, s) in scheme.steps.iter().enumerate() {
        let step_no = si + 1;
        let mut diagnostics = Vec::new();
        let mut merged: BTreeMap<(FaceId, FaceId), Ratio> = BTreeMap::new();
        let mut prev_phase: Vec<Transfer> = Vec::new();
        for rule in &s.rules {
            let snapshot = charges.clone();
            let transfers = apply_rule(
                map,
                &scheme.alpha,
                rule,
                &snapshot,
                skeleton.as_ref(),
                &prev_phase,
                step_no,
                &mut diagnostics,
            );
            for t in &transfers {
                charges[t.from.0 as usize] -= &t.amount;
                charges[t.to.0 as usize] += &t.amount;
            }
            let total: Ratio = charges.iter().sum();
            assert_eq!(
                total, expected_total,
                "charge conservation broken in {}",
                s.name
            );
            for t in &transfers {
                if !t.amount.is_zero() {
                    *merged.entry((t.from, t.to)).or_insert_with(Ratio::zero) += &t.amount;
                }
            }
            prev_phase = transfers;
        }
        steps.push(StepRecord {
            step: step_no,
            name: s.name.clone(),
            transfers: merged
                .into_iter()
                .map(|((from, to), amount)| Transfer { from, to, amount })
                .collect(),
            diagnostics,
        });
    }
    (
        ChargeVector {
            charges,
            step_index: scheme.steps.len(),
        },
        StepTrace {
            scheme: scheme.name.clone(),
            steps,
        },
    )
}

#[derive(Clone, Debug)]
pub struct FaceCharge {
    pub face: FaceId,
    pub class: String,
    pub charge: Ratio,
    /// `charge - alpha * |V(f)|`; negative means the face is violating.
    pub margin: Ratio,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub scheme: String,
    pub alpha: Ratio,
    pub total_charge: Ratio,
    /// `(2 / alpha) * (n - 2)`, the edge bound certified when no face
    /// violates; absent for alpha = 0.
    pub derived_density_cap: Option<Ratio>,
    pub two_connected: bool,
    pub per_face: Vec<FaceCharge>,
    pub violations: Vec<FaceId>,
}

/// Compare final charges against `alpha * |V(f)|` per face.
pub fn verify(
    map: &CombinatorialMap,
    charges: &ChargeVector,
    scheme: &str,
    alpha: &Ratio,
) -> VerificationReport {
    let mut per_face = Vec::new();
    let mut violations = Vec::new();
    let mut target_total = Ratio::zero();
    for f in map.face_ids() {
        let (r, s) = map.face_class(f);
        let charge = charges.get(f).clone();
        let target = face_target(map, f, alpha);
        target_total += &target;
        let margin = &charge - &target;
        if margin < Ratio::zero() {
            violations.push(f);
        }
        per_face.push(FaceCharge {
            face: f,
            class: class_name(r, s),
            charge,
            margin,
        });
    }
    let total_charge = charges.total();
    // On density-tight inputs the margins sum to zero, so an empty violation
    // list forces exact satisfaction everywhere.
    if violations.is_empty() && target_total == total_charge {
        for fc in &per_face {
            assert!(
                fc.margin.is_zero(),
                "face {} should be exactly satisfied on a tight map",
                fc.face.0
            );
        }
    }
    let derived_density_cap =
        (*alpha > Ratio::zero()).then(|| int(2) / alpha * int(map.real_count() as i64 - 2));
    VerificationReport {
        scheme: scheme.into(),
        alpha: alpha.clone(),
        total_charge,
        derived_density_cap,
        two_connected: two_connected(map),
        per_face,
        violations,
    }
}

/// Graph-theoretic 2-connectivity of the real graph (at least 3 vertices,
/// connected, no cut vertex).
pub fn two_connected(map: &CombinatorialMap) -> bool {
    let reals: Vec<_> = map
        .node_ids()
        .filter(|&n| map.node_kind(n) == NodeKind::Real)
        .collect();
    if reals.len() < 3 {
        return false;
    }
    let index: BTreeMap<_, _> = reals.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let mut adj = vec![BTreeSet::new(); reals.len()];
    for e in map.edges() {
        let a = index[&e.endpoints[0]];
        let b = index[&e.endpoints[1]];
        adj[a].insert(b);
        adj[b].insert(a);
    }
    // Iterative lowpoint articulation scan from vertex 0.
    let n = reals.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut parent = vec![usize::MAX; n];
    let mut timer = 0usize;
    let mut root_children = 0usize;
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, adj[0].iter().copied().collect())];
    disc[0] = 0;
    low[0] = 0;
    timer += 1;
    while let Some((v, pending)) = stack.last_mut() {
        let v = *v;
        if let Some(w) = pending.pop() {
            if disc[w] == usize::MAX {
                parent[w] = v;
                disc[w] = timer;
                low[w] = timer;
                timer += 1;
                if v == 0 {
                    root_children += 1;
                }
                let next = adj[w].iter().copied().collect();
                stack.push((w, next));
            } else if w != parent[v] {
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if let Some(&(p, _)) = stack.last() {
                low[p] = low[p].min(low[v]);
                if p != 0 && low[v] >= disc[p] {
                    return false;
                }
            }
        }
    }
    if root_children > 1 {
        return false;
    }
    disc.iter().all(|&d| d != usize::MAX)
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditCheck {
    pub passed: bool,
    pub witnesses: Vec<String>,
}

impl AuditCheck {
    fn from_witnesses(witnesses: Vec<String>) -> Self {
        AuditCheck {
            passed: witnesses.is_empty(),
            witnesses,
        }
    }
}

/// Structural requirements the charge analysis relies on:
/// (a) no empty lenses, (b) all faces of size at least 3, (c) every wedge
/// chain of a 0-/1-triangle settles on a face of size at least 4 that is not
/// a 0-quadrilateral, (d) reals sharing a face boundary are joined by a
/// 2-edge of that boundary, and faces with more than two real incidences are
/// 3-triangles. The 2-connectivity flag travels separately.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PreconditionReport {
    pub no_empty_lenses: AuditCheck,
    pub min_face_size: AuditCheck,
    pub triangle_wedges: AuditCheck,
    pub cofacial_adjacency: AuditCheck,
    pub two_connected: bool,
    pub all_passed: bool,
}

pub fn precondition_audit(map: &CombinatorialMap) -> PreconditionReport {
    let mut lens = Vec::new();
    let mut size = Vec::new();
    let mut wedges = Vec::new();
    let mut cofacial = Vec::new();
    for f in map.face_ids() {
        let (r, s) = map.face_class(f);
        let name = || format!("face {} ({})", f.0, class_name(r, s));
        if s == 2 {
            lens.push(format!("{} is a lens", name()));
        }
        if s < 3 {
            size.push(format!("{} has fewer than 3 sides", name()));
        }
        if (r, s) == (0, 3) || (r, s) == (1, 3) {
            for (d, chain) in map.wedge_slots(f) {
                if chain.cycle {
                    wedges.push(format!(
                        "{}: wedge chain at dart {} never settles",
                        name(),
                        map.dart_label(d)
                    ));
                    continue;
                }
                let (gr, gs) = map.face_class(chain.face);
                if gs < 4 || (gr, gs) == (0, 4) {
                    wedges.push(format!(
                        "{}: wedge-neighbor is face {} ({})",
                        name(),
                        chain.face.0,
                        class_name(gr, gs)
                    ));
                }
            }
        }
        // Distinct reals on the walk, and the 2-edges joining them there.
        let mut reals_here = BTreeSet::new();
        let mut joined = BTreeSet::new();
        for &d in &map.face(f).darts {
            let u = map.origin(d);
            if map.node_kind(u) == NodeKind::Real {
                reals_here.insert(u);
            }
            let e = map.edge_of(d);
            let [a, b] = map.edge(e).endpoints;
            if map.edge(e).crossings.is_empty() {
                joined.insert((a.min(b), a.max(b)));
            }
        }
        let reals_list: Vec<_> = reals_here.iter().copied().collect();
        for (i, &u) in reals_list.iter().enumerate() {
            for &v in &reals_list[i + 1..] {
                if !joined.contains(&(u.min(v), u.max(v))) {
                    cofacial.push(format!(
                        "{}: reals {} and {} share the boundary without a joining edge",
                        name(),
                        map.node_label(u),
                        map.node_label(v)
                    ));
                }
            }
        }
        if r > 2 && (r, s) != (3, 3) {
            cofacial.push(format!(
                "{} has more than two real incidences without being a 3-triangle",
                name()
            ));
        }
    }
    let no_empty_lenses = AuditCheck::from_witnesses(lens);
    let min_face_size = AuditCheck::from_witnesses(size);
    let triangle_wedges = AuditCheck::from_witnesses(wedges);
    let cofacial_adjacency = AuditCheck::from_witnesses(cofacial);
    let all_passed = no_empty_lenses.passed
        && min_face_size.passed
        && triangle_wedges.passed
        && cofacial_adjacency.passed;
    PreconditionReport {
        no_empty_lenses,
        min_face_size,
        triangle_wedges,
        cofacial_adjacency,
        two_connected: two_connected(map),
        all_passed,
    }
}

impl Serialize for Transfer {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("from", &self.from.0)?;
        m.serialize_entry("to", &self.to.0)?;
        m.serialize_entry("amount", &fmt_ratio(&self.amount))?;
        m.end()
    }
}

impl Serialize for Diagnostic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("face", &self.face.0)?;
        m.serialize_entry("reason", &self.reason)?;
        m.end()
    }
}

impl Serialize for StepRecord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("step", &self.step)?;
        m.serialize_entry("name", &self.name)?;
        m.serialize_entry("transfers", &self.transfers)?;
        m.serialize_entry("diagnostics", &self.diagnostics)?;
        m.end()
    }
}

impl Serialize for StepTrace {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("scheme", &self.scheme)?;
        m.serialize_entry("steps", &self.steps)?;
        m.end()
    }
}

impl Serialize for FaceCharge {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("face", &self.face.0)?;
        m.serialize_entry("class", &self.class)?;
        m.serialize_entry("charge", &fmt_ratio(&self.charge))?;
        m.serialize_entry("margin", &fmt_ratio(&self.margin))?;
        m.end()
    }
}

impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(7))?;
        m.serialize_entry("scheme", &self.scheme)?;
        m.serialize_entry("alpha", &fmt_ratio(&self.alpha))?;
        m.serialize_entry("totalCharge", &fmt_ratio(&self.total_charge))?;
        m.serialize_entry(
            "derivedDensityCap",
            &self.derived_density_cap.as_ref().map(fmt_ratio),
        )?;
        m.serialize_entry("twoConnected", &self.two_connected)?;
        m.serialize_entry("perFace", &self.per_face)?;
        m.serialize_entry(
            "violations",
            &self.violations.iter().map(|f| f.0).collect::<Vec<_>>(),
        )?;
        m.end()
    }
}
