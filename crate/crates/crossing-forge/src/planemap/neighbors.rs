//! Face-adjacency relations used by the discharging rules.
//!
//! Three relations live here:
//! * r-neighbors: the face across a boundary edge whose segment has exactly
//!   r real endpoints, reported once per boundary slot (a face adjacent
//!   along two edges appears twice);
//! * wedge-neighbors: the face reached across a 0-edge after skipping any
//!   run of 0-quadrilaterals via their opposite sides;
//! * vertex-neighbors: the diagonally opposite face at a crossing corner,
//!   qualified only when the two faces share none of the four map edges
//!   incident to that crossing.

use super::{CombinatorialMap, DartId, FaceId, NodeId, NodeKind};

/// Result of following one wedge chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeChain {
    /// The face the chain settles on.
    pub face: FaceId,
    /// 0-quadrilaterals skipped on the way, in order.
    pub skipped: Vec<FaceId>,
    /// True if the chain returned to an already-visited face instead of
    /// leaving the band of 0-quadrilaterals.
    pub cycle: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WedgeOutcome {
    Chain(WedgeChain),
    /// The slot's edge is not a 0-edge, so it has no wedge-neighbor.
    NotZeroEdge,
}

impl CombinatorialMap {
    /// Faces across each boundary slot of `f` whose edge has class `r`.
    pub fn r_neighbors(&self, f: FaceId, r: usize) -> Vec<(DartId, FaceId)> {
        self.face(f)
            .darts
            .iter()
            .filter(|&&d| self.segment_class(d) == r)
            .map(|&d| (d, self.face_of(self.twin(d))))
            .collect()
    }

    /// Boundary slots of `f` whose edge is a 0-edge, with their wedge chains.
    pub fn wedge_slots(&self, f: FaceId) -> Vec<(DartId, WedgeChain)> {
        self.face(f)
            .darts
            .iter()
            .filter(|&&d| self.segment_class(d) == 0)
            .map(|&d| match self.wedge_neighbor(d) {
                WedgeOutcome::Chain(c) => (d, c),
                WedgeOutcome::NotZeroEdge => unreachable!("filtered to 0-edges"),
            })
            .collect()
    }

    /// Follow the wedge chain across the 0-edge carried by `d`.
    pub fn wedge_neighbor(&self, d: DartId) -> WedgeOutcome {
        if self.segment_class(d) != 0 {
            return WedgeOutcome::NotZeroEdge;
        }
        let start = self.face_of(d);
        let mut skipped = Vec::new();
        let mut seen = vec![start];
        // Enter the neighbor via the twin dart, which lies on its boundary.
        let mut entry = self.twin(d);
        loop {
            let g = self.face_of(entry);
            if seen.contains(&g) {
                return WedgeOutcome::Chain(WedgeChain {
                    face: g,
                    skipped,
                    cycle: true,
                });
            }
            if self.face_class(g) != (0, 4) {
                return WedgeOutcome::Chain(WedgeChain {
                    face: g,
                    skipped,
                    cycle: false,
                });
            }
            seen.push(g);
            skipped.push(g);
            // Opposite side of the quadrilateral: two steps along its walk.
            let opposite = self.face_next(self.face_next(entry));
            entry = self.twin(opposite);
        }
    }

    /// Diagonal faces at the crossing corners of `f`: one entry per corner
    /// of `f` at a crossing, qualified as described in the module docs.
    pub fn vertex_neighbors(&self, f: FaceId) -> Vec<(NodeId, FaceId)> {
        let mut out = Vec::new();
        for &d in &self.face(f).darts {
            let c = self.origin(d);
            if self.node_kind(c) != NodeKind::Crossing {
                continue;
            }
            let rot = self.rotation(c);
            debug_assert_eq!(rot.len(), 4);
            let diag = rot[(self.pos_in_rotation(d) + 2) % 4];
            let g = self.face_of(diag);
            if g == f {
                continue;
            }
            // The four map edges at c; an edge lies on a face iff one of its
            // darts belongs to that face's orbit.
            let shares_edge = rot.iter().any(|&r| {
                let on = |h: FaceId| self.face_of(r) == h || self.face_of(self.twin(r)) == h;
                on(f) && on(g)
            });
            if !shares_edge {
                out.push((c, g));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planemap::{RawMap, RawNode};

    /// Two edges crossing once: 0~1 and 2~3 crossing at x.
    /// Rotation at x (ccw): toward 0, toward 2, toward 1, toward 3.
    fn plus_raw() -> RawMap {
        let nodes = vec![
            ("0", NodeKind::Real),
            ("1", NodeKind::Real),
            ("2", NodeKind::Real),
            ("3", NodeKind::Real),
            ("x", NodeKind::Crossing),
        ]
        .into_iter()
        .map(|(l, kind)| RawNode {
            label: l.into(),
            kind,
        })
        .collect();
        let rotations = vec![
            vec!["e0".into()],
            vec!["e1".into()],
            vec!["f0".into()],
            vec!["f1".into()],
            vec!["x0".into(), "x2".into(), "x1".into(), "x3".into()],
        ];
        let twins = [("e0", "x0"), ("e1", "x1"), ("f0", "x2"), ("f1", "x3")]
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        RawMap {
            nodes,
            rotations,
            twins,
        }
    }

    #[test]
    fn plus_gadget_has_one_face_through_the_leaves() {
        let m = plus_raw().validate().unwrap();
        assert_eq!(m.crossing_count(), 1);
        assert_eq!(m.edge_count(), 2);
        // Degree-1 leaves merge all four wedges into a single face.
        assert_eq!(m.face_count(), 1);
        // That face meets itself diagonally at the crossing, which never
        // qualifies as a vertex-neighbor.
        assert!(m.vertex_neighbors(FaceId(0)).is_empty());
    }

    #[test]
    fn wedge_requires_zero_edge() {
        let m = plus_raw().validate().unwrap();
        // Every segment here touches a real endpoint, so no 0-edges exist.
        for d in m.dart_ids() {
            assert_eq!(m.wedge_neighbor(d), WedgeOutcome::NotZeroEdge);
        }
    }
}
