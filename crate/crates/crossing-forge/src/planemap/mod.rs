//! Combinatorial maps of graph drawings.
//!
//! A drawing is represented by its planarization: every crossing is a
//! degree-4 node, every node carries a counterclockwise rotation of the
//! darts leaving it, and darts are paired by a twin involution. Faces are
//! the orbits of `next(d) = rot_prev(twin(d))`, which walks each face
//! boundary with the face on the left.

mod canonical;
mod json;
mod neighbors;
mod skeleton;
mod surgery;

pub use canonical::{
    are_isomorphic, canonical_form, canonical_form_mirrored, find_isomorphism, random_relabeling,
    relabeling_sweep_once,
};
pub use neighbors::{WedgeChain, WedgeOutcome};
pub use skeleton::{RegionInfo, SkeletonInfo};

use serde::Serialize;
use std::collections::BTreeMap;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NodeId(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DartId(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FaceId(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeId(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Real,
    Crossing,
}

/// Unvalidated map data, as read from JSON or assembled by a generator.
#[derive(Clone, Debug, Default)]
pub struct RawMap {
    pub nodes: Vec<RawNode>,
    /// Per node (same order as `nodes`): dart labels in counterclockwise order.
    pub rotations: Vec<Vec<String>>,
    /// Twin pairing; each unordered pair may appear in one or both directions.
    pub twins: BTreeMap<String, String>,
}

#[derive(Clone, Debug)]
pub struct RawNode {
    pub label: String,
    pub kind: NodeKind,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ValidationError {
    #[error("schema: {0}")]
    Schema(String),
    #[error("dart {dart}: twin pairing is not a fixed-point-free involution")]
    BrokenTwin { dart: String },
    #[error("crossing node {node} has degree {degree}, expected exactly 4")]
    BadCrossingDegree { node: String, degree: usize },
    #[error("map is not connected: node {node} is unreachable")]
    NotConnected { node: String },
    #[error("Euler check failed: V={v}, E={e}, F={f}; V-E+F must equal 2")]
    EulerViolation { v: usize, e: usize, f: usize },
    #[error("edge starting at {start} returns to its own endpoint")]
    LoopEdge { start: String },
    #[error("edge starting at {start} passes through crossing {crossing} twice")]
    SelfCrossingEdge { start: String, crossing: String },
}

#[derive(Clone, Debug)]
struct NodeData {
    label: String,
    kind: NodeKind,
    rotation: Vec<DartId>,
}

#[derive(Clone, Debug)]
struct DartData {
    label: String,
    origin: NodeId,
    twin: DartId,
    rot_next: DartId,
    rot_prev: DartId,
    pos_in_rotation: u32,
    face: FaceId,
    edge: EdgeId,
}

#[derive(Clone, Debug)]
pub struct FaceData {
    /// Boundary walk in face-successor order, starting at the least dart id.
    pub darts: Vec<DartId>,
    /// Number of boundary incidences at real vertices (with multiplicity).
    pub real_incidences: usize,
}

#[derive(Clone, Debug)]
pub struct EdgeData {
    pub label: String,
    pub endpoints: [NodeId; 2],
    /// Forward darts of the strand, from `endpoints[0]` to `endpoints[1]`.
    pub strand: Vec<DartId>,
    /// Crossings traversed, in strand order.
    pub crossings: Vec<NodeId>,
}

/// A validated planarization.
#[derive(Clone, Debug)]
pub struct CombinatorialMap {
    nodes: Vec<NodeData>,
    darts: Vec<DartData>,
    faces: Vec<FaceData>,
    edges: Vec<EdgeData>,
    real_count: usize,
    crossing_count: usize,
    dart_by_label: HashMap<String, DartId>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DrawingStats {
    pub real_vertices: usize,
    pub graph_edges: usize,
    pub crossings: usize,
    pub max_crossings_per_edge: usize,
    pub per_edge_crossings: BTreeMap<String, usize>,
}

impl RawMap {
    pub fn validate(&self) -> Result<CombinatorialMap, ValidationError> {
        if self.nodes.len() != self.rotations.len() {
            return Err(ValidationError::Schema(format!(
                "{} nodes but {} rotation lists",
                self.nodes.len(),
                self.rotations.len()
            )));
        }

        let mut nodes: Vec<NodeData> = Vec::with_capacity(self.nodes.len());
        let mut seen_nodes: HashMap<&str, ()> = HashMap::new();
        for n in &self.nodes {
            if seen_nodes.insert(&n.label, ()).is_some() {
                return Err(ValidationError::Schema(format!(
                    "duplicate node id {:?}",
                    n.label
                )));
            }
            nodes.push(NodeData {
                label: n.label.clone(),
                kind: n.kind,
                rotation: Vec::new(),
            });
        }

        // Intern darts in rotation order; every dart appears in exactly one rotation.
        let mut darts: Vec<DartData> = Vec::new();
        let mut dart_by_label: HashMap<String, DartId> = HashMap::new();
        for (ni, rot) in self.rotations.iter().enumerate() {
            for (pos, dl) in rot.iter().enumerate() {
                if dart_by_label.contains_key(dl) {
                    return Err(ValidationError::Schema(format!(
                        "dart {dl:?} appears in more than one rotation position"
                    )));
                }
                let id = DartId(darts.len() as u32);
                dart_by_label.insert(dl.clone(), id);
                darts.push(DartData {
                    label: dl.clone(),
                    origin: NodeId(ni as u32),
                    twin: id,
                    rot_next: id,
                    rot_prev: id,
                    pos_in_rotation: pos as u32,
                    face: FaceId(0),
                    edge: EdgeId(0),
                });
                nodes[ni].rotation.push(id);
            }
        }

        // Twin involution: accept entries in either or both directions,
        // reject conflicts, fixed points, and unpaired darts.
        let mut twin_of: Vec<Option<DartId>> = vec![None; darts.len()];
        for (a, b) in &self.twins {
            let (Some(&ia), Some(&ib)) = (dart_by_label.get(a), dart_by_label.get(b)) else {
                return Err(ValidationError::Schema(format!(
                    "twin entry {a:?} -> {b:?} references an unknown dart"
                )));
            };
            if ia == ib {
                return Err(ValidationError::BrokenTwin { dart: a.clone() });
            }
            for (x, y) in [(ia, ib), (ib, ia)] {
                match twin_of[x.0 as usize] {
                    None => twin_of[x.0 as usize] = Some(y),
                    Some(prev) if prev == y => {}
                    Some(_) => {
                        return Err(ValidationError::BrokenTwin {
                            dart: darts[x.0 as usize].label.clone(),
                        })
                    }
                }
            }
        }
        for (i, t) in twin_of.iter().enumerate() {
            match t {
                Some(t) => darts[i].twin = *t,
                None => {
                    return Err(ValidationError::BrokenTwin {
                        dart: darts[i].label.clone(),
                    })
                }
            }
        }

        for (ni, nd) in nodes.iter().enumerate() {
            if nd.kind == NodeKind::Crossing && nd.rotation.len() != 4 {
                return Err(ValidationError::BadCrossingDegree {
                    node: self.nodes[ni].label.clone(),
                    degree: nd.rotation.len(),
                });
            }
        }

        // Rotation successor/predecessor.
        for nd in &nodes {
            let k = nd.rotation.len();
            for (pos, &d) in nd.rotation.iter().enumerate() {
                darts[d.0 as usize].rot_next = nd.rotation[(pos + 1) % k];
                darts[d.0 as usize].rot_prev = nd.rotation[(pos + k - 1) % k];
            }
        }

        // Connectivity over nodes via darts.
        if !nodes.is_empty() {
            let mut seen = vec![false; nodes.len()];
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(ni) = stack.pop() {
                for &d in &nodes[ni].rotation {
                    let other = darts[darts[d.0 as usize].twin.0 as usize].origin.0 as usize;
                    if !seen[other] {
                        seen[other] = true;
                        stack.push(other);
                    }
                }
            }
            if let Some(ni) = seen.iter().position(|s| !s) {
                return Err(ValidationError::NotConnected {
                    node: nodes[ni].label.clone(),
                });
            }
        }

        // Face orbits of next(d) = rot_prev(twin(d)): faces lie on the left.
        let mut faces: Vec<FaceData> = Vec::new();
        let mut face_of: Vec<Option<FaceId>> = vec![None; darts.len()];
        for start in 0..darts.len() {
            if face_of[start].is_some() {
                continue;
            }
            let fid = FaceId(faces.len() as u32);
            let mut walk = Vec::new();
            let mut cur = DartId(start as u32);
            loop {
                if face_of[cur.0 as usize].is_some() {
                    // next() is a bijection, so an orbit can only re-enter at its start
                    debug_assert_eq!(cur.0 as usize, start);
                    break;
                }
                face_of[cur.0 as usize] = Some(fid);
                walk.push(cur);
                let twin = darts[cur.0 as usize].twin;
                cur = darts[twin.0 as usize].rot_prev;
            }
            let real_incidences = walk
                .iter()
                .filter(|d| nodes[darts[d.0 as usize].origin.0 as usize].kind == NodeKind::Real)
                .count();
            faces.push(FaceData {
                darts: walk,
                real_incidences,
            });
        }
        for (i, f) in face_of.iter().enumerate() {
            darts[i].face = f.expect("every dart lies on a face");
        }

        let v = nodes.len();
        let e = darts.len() / 2;
        let f = faces.len();
        if darts.is_empty() {
            if v > 1 {
                return Err(ValidationError::NotConnected {
                    node: nodes[1].label.clone(),
                });
            }
        } else if (v as i64) - (e as i64) + (f as i64) != 2 {
            return Err(ValidationError::EulerViolation { v, e, f });
        }

        // Recover graph edges by walking strands through crossings.
        let mut edges: Vec<EdgeData> = Vec::new();
        let mut edge_of: Vec<Option<EdgeId>> = vec![None; darts.len()];
        let mut pair_counts: HashMap<(String, String), usize> = HashMap::new();
        for start in 0..darts.len() {
            if edge_of[start].is_some()
                || nodes[darts[start].origin.0 as usize].kind != NodeKind::Real
            {
                continue;
            }
            let eid = EdgeId(edges.len() as u32);
            let start_node = darts[start].origin;
            let start_label = nodes[start_node.0 as usize].label.clone();
            let mut strand = Vec::new();
            let mut crossings = Vec::new();
            let mut cur = DartId(start as u32);
            let far;
            loop {
                strand.push(cur);
                edge_of[cur.0 as usize] = Some(eid);
                edge_of[darts[cur.0 as usize].twin.0 as usize] = Some(eid);
                let arrive = darts[cur.0 as usize].twin;
                let node = darts[arrive.0 as usize].origin;
                if nodes[node.0 as usize].kind == NodeKind::Real {
                    far = node;
                    break;
                }
                if crossings.contains(&node) {
                    return Err(ValidationError::SelfCrossingEdge {
                        start: start_label,
                        crossing: nodes[node.0 as usize].label.clone(),
                    });
                }
                crossings.push(node);
                let pos = darts[arrive.0 as usize].pos_in_rotation as usize;
                cur = nodes[node.0 as usize].rotation[(pos + 2) % 4];
                if edge_of[cur.0 as usize].is_some() {
                    return Err(ValidationError::SelfCrossingEdge {
                        start: start_label,
                        crossing: nodes[node.0 as usize].label.clone(),
                    });
                }
            }
            if far == start_node {
                return Err(ValidationError::LoopEdge { start: start_label });
            }
            let far_label = nodes[far.0 as usize].label.clone();
            let (a, b) = if start_label <= far_label {
                (start_label.clone(), far_label)
            } else {
                (far_label, start_label.clone())
            };
            let k = pair_counts.entry((a.clone(), b.clone())).or_insert(0);
            let label = format!("{a}~{b}#{k}");
            *k += 1;
            edges.push(EdgeData {
                label,
                endpoints: [start_node, far],
                strand,
                crossings,
            });
        }
        // A dart not reached by any strand lies on a closed curve with no
        // real endpoint; report it through the nearest error category.
        if let Some(i) = edge_of.iter().position(|e| e.is_none()) {
            return Err(ValidationError::LoopEdge {
                start: nodes[darts[i].origin.0 as usize].label.clone(),
            });
        }
        for (i, e) in edge_of.iter().enumerate() {
            darts[i].edge = e.expect("checked above");
        }

        let real_count = nodes.iter().filter(|n| n.kind == NodeKind::Real).count();
        let crossing_count = nodes.len() - real_count;
        Ok(CombinatorialMap {
            nodes,
            darts,
            faces,
            edges,
            real_count,
            crossing_count,
            dart_by_label,
        })
    }
}

impl CombinatorialMap {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }
    pub fn dart_count(&self) -> usize {
        self.darts.len()
    }
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
    pub fn real_count(&self) -> usize {
        self.real_count
    }
    pub fn crossing_count(&self) -> usize {
        self.crossing_count
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> {
        (0..self.nodes.len() as u32).map(NodeId)
    }
    pub fn dart_ids(&self) -> impl Iterator<Item = DartId> {
        (0..self.darts.len() as u32).map(DartId)
    }
    pub fn face_ids(&self) -> impl Iterator<Item = FaceId> {
        (0..self.faces.len() as u32).map(FaceId)
    }
    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn node_label(&self, n: NodeId) -> &str {
        &self.nodes[n.0 as usize].label
    }
    pub fn node_kind(&self, n: NodeId) -> NodeKind {
        self.nodes[n.0 as usize].kind
    }
    pub fn rotation(&self, n: NodeId) -> &[DartId] {
        &self.nodes[n.0 as usize].rotation
    }
    pub fn degree(&self, n: NodeId) -> usize {
        self.nodes[n.0 as usize].rotation.len()
    }

    pub fn dart_label(&self, d: DartId) -> &str {
        &self.darts[d.0 as usize].label
    }
    pub fn dart_by_label(&self, label: &str) -> Option<DartId> {
        self.dart_by_label.get(label).copied()
    }
    pub fn origin(&self, d: DartId) -> NodeId {
        self.darts[d.0 as usize].origin
    }
    pub fn twin(&self, d: DartId) -> DartId {
        self.darts[d.0 as usize].twin
    }
    /// Counterclockwise rotation successor at the origin.
    pub fn rot_next(&self, d: DartId) -> DartId {
        self.darts[d.0 as usize].rot_next
    }
    pub fn rot_prev(&self, d: DartId) -> DartId {
        self.darts[d.0 as usize].rot_prev
    }
    pub fn pos_in_rotation(&self, d: DartId) -> usize {
        self.darts[d.0 as usize].pos_in_rotation as usize
    }
    /// Face successor: walks the boundary with the face on the left.
    pub fn face_next(&self, d: DartId) -> DartId {
        self.rot_prev(self.twin(d))
    }
    pub fn face_of(&self, d: DartId) -> FaceId {
        self.darts[d.0 as usize].face
    }
    pub fn edge_of(&self, d: DartId) -> EdgeId {
        self.darts[d.0 as usize].edge
    }

    pub fn face(&self, f: FaceId) -> &FaceData {
        &self.faces[f.0 as usize]
    }
    pub fn faces(&self) -> &[FaceData] {
        &self.faces
    }
    pub fn edge(&self, e: EdgeId) -> &EdgeData {
        &self.edges[e.0 as usize]
    }
    pub fn edges(&self) -> &[EdgeData] {
        &self.edges
    }
    pub fn edge_by_label(&self, label: &str) -> Option<EdgeId> {
        self.edges
            .iter()
            .position(|e| e.label == label)
            .map(|i| EdgeId(i as u32))
    }

    /// Face size and real-incidence count: the `(reals, size)` class.
    pub fn face_class(&self, f: FaceId) -> (usize, usize) {
        let fd = &self.faces[f.0 as usize];
        (fd.real_incidences, fd.darts.len())
    }

    /// Number of real endpoints (0, 1, or 2) of the map edge carrying `d`.
    pub fn segment_class(&self, d: DartId) -> usize {
        let a = self.origin(d);
        let b = self.origin(self.twin(d));
        [a, b]
            .iter()
            .filter(|n| self.node_kind(**n) == NodeKind::Real)
            .count()
    }

    pub fn stats(&self) -> DrawingStats {
        let mut per_edge = BTreeMap::new();
        let mut max = 0usize;
        for e in &self.edges {
            let c = e.crossings.len();
            max = max.max(c);
            per_edge.insert(e.label.clone(), c);
        }
        DrawingStats {
            real_vertices: self.real_count,
            graph_edges: self.edges.len(),
            crossings: self.crossing_count,
            max_crossings_per_edge: max,
            per_edge_crossings: per_edge,
        }
    }

    pub fn is_k_planar(&self, k: usize) -> bool {
        self.edges.iter().all(|e| e.crossings.len() <= k)
    }

    /// Face class census keyed by names like `"1-triangle"` / `"0-12-gon"`.
    pub fn face_census(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for f in self.face_ids() {
            let (r, s) = self.face_class(f);
            *out.entry(class_name(r, s)).or_insert(0) += 1;
        }
        out
    }

    /// Export back to raw form (labels preserved).
    pub fn to_raw(&self) -> RawMap {
        let nodes = self
            .nodes
            .iter()
            .map(|n| RawNode {
                label: n.label.clone(),
                kind: n.kind,
            })
            .collect();
        let rotations = self
            .nodes
            .iter()
            .map(|n| {
                n.rotation
                    .iter()
                    .map(|d| self.darts[d.0 as usize].label.clone())
                    .collect()
            })
            .collect();
        let mut twins = BTreeMap::new();
        for d in self.dart_ids() {
            let t = self.twin(d);
            if d < t {
                twins.insert(
                    self.dart_label(d).to_string(),
                    self.dart_label(t).to_string(),
                );
            }
        }
        RawMap {
            nodes,
            rotations,
            twins,
        }
    }
}

pub fn class_name(reals: usize, size: usize) -> String {
    let shape = match size {
        1 => "monogon",
        2 => "bigon",
        3 => "triangle",
        4 => "quadrilateral",
        5 => "pentagon",
        6 => "hexagon",
        7 => "heptagon",
        8 => "octagon",
        _ => return format!("{reals}-{size}-gon"),
    };
    format!("{reals}-{shape}")
}

pub use json::{parse_drawing, serialize_drawing, ParseOptions};
pub use surgery::remove_graph_edges;

#[cfg(test)]
mod tests {
    use super::*;

    /// Two real vertices joined by two parallel crossing-free edges.
    fn bigon_raw() -> RawMap {
        RawMap {
            nodes: vec![
                RawNode {
                    label: "0".into(),
                    kind: NodeKind::Real,
                },
                RawNode {
                    label: "1".into(),
                    kind: NodeKind::Real,
                },
            ],
            rotations: vec![
                vec!["a0".into(), "b0".into()],
                vec!["a1".into(), "b1".into()],
            ],
            twins: [("a0", "a1"), ("b0", "b1")]
                .into_iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        }
    }

    #[test]
    fn bigon_validates_with_two_faces() {
        let m = bigon_raw().validate().unwrap();
        assert_eq!(m.node_count(), 2);
        assert_eq!(m.edge_count(), 2);
        assert_eq!(m.face_count(), 2);
        assert_eq!(m.face_class(FaceId(0)), (2, 2));
        assert_eq!(m.edge(EdgeId(0)).label, "0~1#0");
        assert_eq!(m.edge(EdgeId(1)).label, "0~1#1");
    }

    #[test]
    fn face_walk_keeps_face_on_left() {
        let m = bigon_raw().validate().unwrap();
        // next(d) = rot_prev(twin(d)); a0's twin a1 sits before b1 at node 1,
        // so the face of a0 continues with b1, i.e. the walk alternates sides.
        let a0 = m.dart_by_label("a0").unwrap();
        let b1 = m.dart_by_label("b1").unwrap();
        assert_eq!(m.face_next(a0), b1);
    }

    #[test]
    fn broken_twin_rejected() {
        let mut raw = bigon_raw();
        raw.twins.insert("a0".into(), "a0".into());
        assert!(matches!(
            raw.validate(),
            Err(ValidationError::BrokenTwin { .. })
        ));

        let mut raw = bigon_raw();
        raw.twins.remove("b0");
        assert!(matches!(
            raw.validate(),
            Err(ValidationError::BrokenTwin { .. })
        ));
    }

    #[test]
    fn crossing_degree_enforced() {
        let mut raw = bigon_raw();
        raw.nodes[1].kind = NodeKind::Crossing;
        match raw.validate() {
            Err(ValidationError::BadCrossingDegree { node, degree }) => {
                assert_eq!(node, "1");
                assert_eq!(degree, 2);
            }
            other => panic!("expected BadCrossingDegree, got {other:?}"),
        }
    }

    #[test]
    fn disconnected_rejected() {
        let mut raw = bigon_raw();
        raw.nodes.push(RawNode {
            label: "2".into(),
            kind: NodeKind::Real,
        });
        raw.rotations.push(vec![]);
        match raw.validate() {
            Err(ValidationError::NotConnected { node }) => assert_eq!(node, "2"),
            other => panic!("expected NotConnected, got {other:?}"),
        }
    }

    #[test]
    fn loop_edge_rejected() {
        // One vertex with an edge to itself.
        let raw = RawMap {
            nodes: vec![RawNode {
                label: "v".into(),
                kind: NodeKind::Real,
            }],
            rotations: vec![vec!["a".into(), "b".into()]],
            twins: [("a".to_string(), "b".to_string())].into_iter().collect(),
        };
        assert!(matches!(
            raw.validate(),
            Err(ValidationError::LoopEdge { .. })
        ));
    }

    #[test]
    fn stats_count_crossings_per_edge() {
        let m = bigon_raw().validate().unwrap();
        let s = m.stats();
        assert_eq!(s.real_vertices, 2);
        assert_eq!(s.graph_edges, 2);
        assert_eq!(s.crossings, 0);
        assert_eq!(s.max_crossings_per_edge, 0);
        assert!(m.is_k_planar(0));
    }
}
