//! Regions of the crossing-free skeleton.
//!
//! The skeleton keeps only graph edges with no crossings. Each skeleton
//! face is a union of planarization faces; we recover that quotient by
//! merging the two sides of every map edge that belongs to a crossed graph
//! edge. When the skeleton is connected, each region also gets the vertex
//! cycle of the skeleton face enclosing it.

use super::{CombinatorialMap, DartId, EdgeId, FaceId, NodeKind};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct RegionInfo {
    /// Planarization faces making up the region, ascending.
    pub faces: Vec<u32>,
    /// Vertex labels of the enclosing skeleton face walk, if the skeleton
    /// is connected and has at least one edge.
    pub boundary: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkeletonInfo {
    /// True when every real vertex is reachable through crossing-free edges.
    pub connected: bool,
    pub crossing_free_edges: Vec<String>,
    /// Region index per planarization face.
    pub region_of_face: Vec<u32>,
    pub regions: Vec<RegionInfo>,
}

impl SkeletonInfo {
    pub fn region_of(&self, f: FaceId) -> u32 {
        self.region_of_face[f.0 as usize]
    }
}

struct Dsu(Vec<u32>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n as u32).collect())
    }
    fn find(&mut self, x: u32) -> u32 {
        if self.0[x as usize] != x {
            let r = self.find(self.0[x as usize]);
            self.0[x as usize] = r;
        }
        self.0[x as usize]
    }
    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra as usize] = rb;
        }
    }
}

impl CombinatorialMap {
    pub fn skeleton(&self) -> SkeletonInfo {
        let crossed: Vec<bool> = self
            .edges()
            .iter()
            .map(|e| !e.crossings.is_empty())
            .collect();
        let crossing_free_edges: Vec<String> = self
            .edges()
            .iter()
            .filter(|e| e.crossings.is_empty())
            .map(|e| e.label.clone())
            .collect();

        // Merge faces across segments of crossed edges.
        let mut dsu = Dsu::new(self.face_count());
        for d in self.dart_ids() {
            if d < self.twin(d) && crossed[self.edge_of(d).0 as usize] {
                dsu.union(self.face_of(d).0, self.face_of(self.twin(d)).0);
            }
        }
        // Renumber regions in order of least face id.
        let mut region_index: Vec<Option<u32>> = vec![None; self.face_count()];
        let mut regions: Vec<RegionInfo> = Vec::new();
        let mut region_of_face = vec![0u32; self.face_count()];
        for f in 0..self.face_count() as u32 {
            let root = dsu.find(f);
            let idx = match region_index[root as usize] {
                Some(i) => i,
                None => {
                    let i = regions.len() as u32;
                    region_index[root as usize] = Some(i);
                    regions.push(RegionInfo {
                        faces: Vec::new(),
                        boundary: None,
                    });
                    i
                }
            };
            region_of_face[f as usize] = idx;
            regions[idx as usize].faces.push(f);
        }

        let connected = self.skeleton_connected(&crossed);
        if connected {
            self.fill_boundaries(&crossed, &region_of_face, &mut regions);
        }

        SkeletonInfo {
            connected,
            crossing_free_edges,
            region_of_face,
            regions,
        }
    }

    fn skeleton_connected(&self, crossed: &[bool]) -> bool {
        let reals: Vec<_> = self
            .node_ids()
            .filter(|&n| self.node_kind(n) == NodeKind::Real)
            .collect();
        if reals.len() <= 1 {
            return true;
        }
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![reals[0]];
        seen.insert(reals[0]);
        while let Some(n) = stack.pop() {
            for &d in self.rotation(n) {
                let e = self.edge_of(d);
                if crossed[e.0 as usize] {
                    continue;
                }
                let ed = self.edge(e);
                // n is one endpoint of this crossing-free edge; hop to the other.
                let other = if ed.endpoints[0] == n {
                    ed.endpoints[1]
                } else {
                    ed.endpoints[0]
                };
                if seen.insert(other) {
                    stack.push(other);
                }
            }
        }
        seen.len() == reals.len()
    }

    /// Walk each skeleton face (sub-rotation orbit over skeleton darts) and
    /// attach its vertex cycle to the region it encloses.
    fn fill_boundaries(
        &self,
        crossed: &[bool],
        region_of_face: &[u32],
        regions: &mut [RegionInfo],
    ) {
        let is_skel = |d: DartId| -> bool {
            let e: EdgeId = self.edge_of(d);
            !crossed[e.0 as usize] && {
                // Skeleton darts are the end segments at real vertices; for a
                // crossing-free edge both darts qualify.
                self.node_kind(self.origin(d)) == NodeKind::Real
            }
        };
        // Previous skeleton dart in ccw order before `d` at its origin.
        let skel_prev = |d: DartId| -> DartId {
            let rot = self.rotation(self.origin(d));
            let mut pos = self.pos_in_rotation(d);
            loop {
                pos = (pos + rot.len() - 1) % rot.len();
                if is_skel(rot[pos]) {
                    return rot[pos];
                }
            }
        };
        let mut visited = std::collections::HashSet::new();
        for d in self.dart_ids() {
            if !is_skel(d) || visited.contains(&d) {
                continue;
            }
            let mut walk_labels = Vec::new();
            let mut cur = d;
            loop {
                if !visited.insert(cur) {
                    break;
                }
                walk_labels.push(self.node_label(self.origin(cur)).to_string());
                cur = skel_prev(self.twin(cur));
            }
            // The planarization face left of `d` lies inside this skeleton face.
            let region = region_of_face[self.face_of(d).0 as usize] as usize;
            if regions[region].boundary.is_none() {
                regions[region].boundary = Some(walk_labels);
            }
        }
    }
}
