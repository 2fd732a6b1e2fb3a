//! Detection and removal of the three dense crossing configurations.
//!
//! Detection runs in three stages. A cheap face-signature pre-filter finds
//! anchor faces (a 0-pentagon whose wedge-neighbors are all 1-triangles,
//! the hexagon analogue, or a vertex-neighboring pair of 0-pentagons).
//! The candidate inner edges are then required to be crossing-clean: every
//! crossing on a candidate edge must be with another candidate edge, which
//! rules out look-alike patterns embedded in denser surroundings. Finally
//! the induced sub-map is checked for isomorphism (mirror allowed) against
//! the chord interior of the canonical template; the template match is
//! authoritative and also yields the boundary-cycle correspondence.

use crate::generators::{config_chords, gen_full_config, planarize_chords};
use crate::planemap::{
    find_isomorphism, remove_graph_edges, CombinatorialMap, DartId, EdgeId, FaceId, NodeId, RawMap,
};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConfigKind {
    /// Pentagon with all five 2-hop chords (5 inner edges, 5 crossings).
    F25,
    /// Hexagon with all six 2-hop chords (6 inner edges, 6 crossings).
    F26,
    /// Hexagon with six 2-hop chords and two long diagonals
    /// (8 inner edges, 11 crossings).
    F36,
}

impl ConfigKind {
    pub fn inner_edge_count(self) -> usize {
        match self {
            ConfigKind::F25 => 5,
            ConfigKind::F26 => 6,
            ConfigKind::F36 => 8,
        }
    }

    pub fn boundary_len(self) -> usize {
        match self {
            ConfigKind::F25 => 5,
            ConfigKind::F26 | ConfigKind::F36 => 6,
        }
    }

    /// The planarity class in which instances of this kind live.
    pub fn planarity(self) -> usize {
        match self {
            ConfigKind::F25 | ConfigKind::F26 => 2,
            ConfigKind::F36 => 3,
        }
    }
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConfigKind::F25 => "f25",
            ConfigKind::F26 => "f26",
            ConfigKind::F36 => "f36",
        })
    }
}

impl FromStr for ConfigKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "f25" => Ok(ConfigKind::F25),
            "f26" => Ok(ConfigKind::F26),
            "f36" => Ok(ConfigKind::F36),
            _ => Err(format!("unknown configuration {s:?}")),
        }
    }
}

/// One detected configuration occurrence.
#[derive(Clone, Debug)]
pub struct ConfigInstance {
    pub kind: ConfigKind,
    /// Inner edges, ascending by label.
    pub inner_edges: Vec<EdgeId>,
    /// Boundary vertices in template cyclic order.
    pub boundary_cycle: Vec<NodeId>,
    /// Boundary edges that exist in the drawing, keyed by cycle position.
    pub present_boundary_edges: Vec<(usize, EdgeId)>,
    /// The faces whose signature anchored the detection.
    pub anchor_faces: Vec<FaceId>,
    /// Template chord (in cycle-index space) -> inner edge.
    pub chord_images: Vec<((usize, usize), EdgeId)>,
}

impl ConfigInstance {
    pub fn inner_edge_labels(&self, map: &CombinatorialMap) -> Vec<String> {
        self.inner_edges
            .iter()
            .map(|e| map.edge(*e).label.clone())
            .collect()
    }

    /// The image of a template chord, by its cycle-index endpoints.
    pub fn chord_image(&self, chord: (usize, usize)) -> Option<EdgeId> {
        let norm = |(a, b): (usize, usize)| (a.min(b), a.max(b));
        self.chord_images
            .iter()
            .find(|(c, _)| norm(*c) == norm(chord))
            .map(|(_, e)| *e)
    }

    /// Missing boundary edges as unordered vertex pairs.
    pub fn absent_boundary_pairs(&self) -> Vec<(NodeId, NodeId)> {
        let present: BTreeSet<usize> = self
            .present_boundary_edges
            .iter()
            .map(|(i, _)| *i)
            .collect();
        let p = self.boundary_cycle.len();
        (0..p)
            .filter(|i| !present.contains(i))
            .map(|i| {
                let (u, v) = (self.boundary_cycle[i], self.boundary_cycle[(i + 1) % p]);
                (u.min(v), u.max(v))
            })
            .collect()
    }
}

/// Serializable view of an instance, with labels resolved.
pub struct InstanceReport<'a> {
    pub map: &'a CombinatorialMap,
    pub instance: &'a ConfigInstance,
}

impl Serialize for InstanceReport<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ConfigInstance", 4)?;
        st.serialize_field("kind", &self.instance.kind.to_string())?;
        st.serialize_field("innerEdges", &self.instance.inner_edge_labels(self.map))?;
        st.serialize_field(
            "boundaryCycle",
            &self
                .instance
                .boundary_cycle
                .iter()
                .map(|n| self.map.node_label(*n))
                .collect::<Vec<_>>(),
        )?;
        st.serialize_field(
            "presentBoundaryEdges",
            &self
                .instance
                .present_boundary_edges
                .iter()
                .map(|(_, e)| self.map.edge(*e).label.clone())
                .collect::<Vec<_>>(),
        )?;
        st.end()
    }
}

/// The standalone plane map of the configuration inside its boundary cycle.
pub fn canonical_template(kind: ConfigKind) -> CombinatorialMap {
    gen_full_config(kind)
}

/// The chord structure alone (boundary cycle absent), used for matching.
fn template_interior(kind: ConfigKind) -> CombinatorialMap {
    let (p, chords) = config_chords(kind);
    planarize_chords(p, &chords, false, "")
        .validate()
        .expect("template interiors are valid drawings")
}

/// Candidate anchors: faces (or face pairs) matching the signature.
fn anchors(map: &CombinatorialMap, kind: ConfigKind) -> Vec<Vec<FaceId>> {
    match kind {
        ConfigKind::F25 | ConfigKind::F26 => {
            let size = kind.boundary_len();
            map.face_ids()
                .filter(|&f| map.face_class(f) == (0, size))
                .filter(|&f| {
                    let slots = map.wedge_slots(f);
                    slots.len() == size
                        && slots
                            .iter()
                            .all(|(_, chain)| !chain.cycle && map.face_class(chain.face) == (1, 3))
                })
                .map(|f| vec![f])
                .collect()
        }
        ConfigKind::F36 => {
            let mut pairs = BTreeSet::new();
            for f in map.face_ids() {
                if map.face_class(f) != (0, 5) {
                    continue;
                }
                for (_, g) in map.vertex_neighbors(f) {
                    if g != f && map.face_class(g) == (0, 5) {
                        let (a, b) = (f.min(g), f.max(g));
                        pairs.insert((a, b));
                    }
                }
            }
            pairs.into_iter().map(|(a, b)| vec![a, b]).collect()
        }
    }
}

/// Distinct graph edges on the boundaries of the anchor faces.
fn candidate_edges(map: &CombinatorialMap, anchor: &[FaceId]) -> Vec<EdgeId> {
    let mut set = BTreeSet::new();
    for &f in anchor {
        for &d in &map.face(f).darts {
            set.insert(map.edge_of(d));
        }
    }
    set.into_iter().collect()
}

/// Every crossing on a candidate edge must be with another candidate edge.
fn crossing_clean(map: &CombinatorialMap, cands: &BTreeSet<EdgeId>) -> bool {
    cands.iter().all(|&e| {
        map.edge(e).crossings.iter().all(|&x| {
            map.rotation(x)
                .iter()
                .all(|&d| cands.contains(&map.edge_of(d)))
        })
    })
}

/// The sub-map induced by the candidate edges: their endpoints, their
/// crossings, host rotations filtered to candidate darts.
fn induced_submap(map: &CombinatorialMap, cands: &BTreeSet<EdgeId>) -> RawMap {
    let mut in_nodes: BTreeSet<NodeId> = BTreeSet::new();
    for &e in cands {
        let ed = map.edge(e);
        in_nodes.extend(ed.endpoints);
        in_nodes.extend(ed.crossings.iter().copied());
    }
    let mut nodes = Vec::new();
    let mut rotations = Vec::new();
    for &n in &in_nodes {
        nodes.push(crate::planemap::RawNode {
            label: map.node_label(n).to_string(),
            kind: map.node_kind(n),
        });
        rotations.push(
            map.rotation(n)
                .iter()
                .filter(|&&d| cands.contains(&map.edge_of(d)))
                .map(|&d| map.dart_label(d).to_string())
                .collect(),
        );
    }
    let mut twins = BTreeMap::new();
    for d in map.dart_ids() {
        let t = map.twin(d);
        if d < t && cands.contains(&map.edge_of(d)) {
            twins.insert(map.dart_label(d).to_string(), map.dart_label(t).to_string());
        }
    }
    RawMap {
        nodes,
        rotations,
        twins,
    }
}

/// Template-interior isomorphism; returns the template->induced dart map
/// and whether it needed mirroring.
fn match_template(
    template: &CombinatorialMap,
    induced: &CombinatorialMap,
) -> Option<(Vec<DartId>, bool)> {
    for mirrored in [false, true] {
        if let Some(iso) = find_isomorphism(template, induced, mirrored) {
            return Some((iso, mirrored));
        }
    }
    None
}

pub fn detect(map: &CombinatorialMap, kind: ConfigKind) -> Vec<ConfigInstance> {
    let template = template_interior(kind);
    let p = kind.boundary_len();
    let mut instances: Vec<ConfigInstance> = Vec::new();
    let mut seen_edge_sets: BTreeSet<Vec<EdgeId>> = BTreeSet::new();

    for anchor in anchors(map, kind) {
        let cand_vec = candidate_edges(map, &anchor);
        if cand_vec.len() != kind.inner_edge_count() {
            continue;
        }
        if seen_edge_sets.contains(&cand_vec) {
            continue;
        }
        let cands: BTreeSet<EdgeId> = cand_vec.iter().copied().collect();
        if !crossing_clean(map, &cands) {
            continue;
        }
        let induced = match induced_submap(map, &cands).validate() {
            Ok(m) => m,
            Err(_) => continue,
        };
        let Some((iso, _mirrored)) = match_template(&template, &induced) else {
            continue;
        };

        // Resolve the correspondence back into the host map.
        let host_dart = |td: DartId| -> DartId {
            let label = induced.dart_label(iso[td.0 as usize]);
            map.dart_by_label(label)
                .expect("induced darts come from the host")
        };
        let boundary_cycle: Vec<NodeId> = (0..p)
            .map(|k| {
                let tn = NodeId(k as u32);
                debug_assert_eq!(template.node_label(tn), k.to_string());
                let td = template.rotation(tn)[0];
                map.origin(host_dart(td))
            })
            .collect();
        let (_, chords) = config_chords(kind);
        let chord_images: Vec<((usize, usize), EdgeId)> = chords
            .iter()
            .map(|&(a, b)| {
                let te = template
                    .edge_ids()
                    .find(|&e| {
                        let ep = template.edge(e).endpoints;
                        let ea: usize = template.node_label(ep[0]).parse().expect("numeric label");
                        let eb: usize = template.node_label(ep[1]).parse().expect("numeric label");
                        (ea, eb) == (a, b) || (ea, eb) == (b, a)
                    })
                    .expect("template contains each chord once");
                let td = template.edge(te).strand[0];
                ((a, b), map.edge_of(host_dart(td)))
            })
            .collect();
        debug_assert_eq!(
            {
                let mut imgs: Vec<EdgeId> = chord_images.iter().map(|(_, e)| *e).collect();
                imgs.sort();
                imgs
            },
            cand_vec
        );

        let mut present_boundary_edges = Vec::new();
        for i in 0..p {
            let (u, v) = (boundary_cycle[i], boundary_cycle[(i + 1) % p]);
            let found = map.edge_ids().find(|&e| {
                let ep = map.edge(e).endpoints;
                (ep[0] == u && ep[1] == v) || (ep[0] == v && ep[1] == u)
            });
            if let Some(e) = found {
                present_boundary_edges.push((i, e));
            }
        }

        let mut inner_labels: Vec<(String, EdgeId)> = cand_vec
            .iter()
            .map(|&e| (map.edge(e).label.clone(), e))
            .collect();
        inner_labels.sort();
        seen_edge_sets.insert(cand_vec);
        instances.push(ConfigInstance {
            kind,
            inner_edges: inner_labels.into_iter().map(|(_, e)| e).collect(),
            boundary_cycle,
            present_boundary_edges,
            anchor_faces: anchor,
            chord_images,
        });
    }

    instances.sort_by_key(|i| i.inner_edges.clone());
    if map.is_k_planar(kind.planarity()) {
        let mut all: BTreeSet<EdgeId> = BTreeSet::new();
        for inst in &instances {
            for &e in &inst.inner_edges {
                assert!(
                    all.insert(e),
                    "instances of {kind} must be inner-edge-disjoint in a {}-planar map",
                    kind.planarity()
                );
            }
        }
        for inst in &instances {
            for &e in &inst.inner_edges {
                let c = map.edge(e).crossings.len();
                let cap = if kind == ConfigKind::F36 { 3 } else { 2 };
                assert!(
                    c <= cap,
                    "inner edge {} has {c} crossings",
                    map.edge(e).label
                );
            }
        }
    }
    instances
}

pub fn is_free(map: &CombinatorialMap, kind: ConfigKind) -> bool {
    detect(map, kind).is_empty()
}

/// Remove one inner edge per detected instance (the lexicographically
/// least edge label) and re-planarize. Returns the new map and the labels
/// of the removed edges.
pub fn break_configs(map: &CombinatorialMap, kind: ConfigKind) -> (CombinatorialMap, Vec<String>) {
    let instances = detect(map, kind);
    if instances.is_empty() {
        return (map.clone(), Vec::new());
    }
    let mut removed: Vec<(String, EdgeId)> = instances
        .iter()
        .map(|inst| {
            inst.inner_edges
                .iter()
                .map(|&e| (map.edge(e).label.clone(), e))
                .min()
                .expect("instances have inner edges")
        })
        .collect();
    removed.sort();
    let ids: Vec<EdgeId> = removed.iter().map(|(_, e)| *e).collect();
    let raw = remove_graph_edges(map, &ids).expect("inner edges of distinct instances never cross");
    let broken = raw
        .validate()
        .expect("removing whole graph edges preserves validity");
    (broken, removed.into_iter().map(|(l, _)| l).collect())
}
