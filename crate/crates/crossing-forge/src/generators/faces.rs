//! Build a crossing-free map from an unoriented face list.
//!
//! Faces come as cyclic vertex sequences. A breadth-first pass flips faces
//! until every shared edge is traversed once in each direction, then the
//! rotation at each vertex is recovered from rot_next(d) = twin(prev(d)),
//! where prev is the face-walk predecessor.

use crate::planemap::{NodeKind, RawMap, RawNode};
use std::collections::{BTreeMap, HashMap, VecDeque};

pub fn map_from_faces(n: usize, faces: &[Vec<usize>]) -> Result<RawMap, String> {
    for f in faces {
        if f.len() < 3 {
            return Err("faces must have at least three corners".into());
        }
        for &v in f {
            if v >= n {
                return Err(format!("vertex {v} out of range"));
            }
        }
    }

    // Each undirected edge must occur in exactly two face positions.
    let mut occurrences: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for pos in 0..f.len() {
            let (u, v) = (f[pos], f[(pos + 1) % f.len()]);
            if u == v {
                return Err(format!("face {fi} repeats vertex {u} consecutively"));
            }
            occurrences
                .entry((u.min(v), u.max(v)))
                .or_default()
                .push((fi, pos));
        }
    }
    for (e, occ) in &occurrences {
        if occ.len() != 2 {
            return Err(format!(
                "edge {}~{} lies on {} face sides, expected 2",
                e.0,
                e.1,
                occ.len()
            ));
        }
    }

    // Orient: flipped[f] reverses f's walk. Two incidences of an edge must
    // traverse it in opposite directions.
    let dir = |fi: usize, pos: usize, flipped: bool| -> (usize, usize) {
        let f = &faces[fi];
        let (u, v) = (f[pos], f[(pos + 1) % f.len()]);
        if flipped {
            (v, u)
        } else {
            (u, v)
        }
    };
    let mut flipped: Vec<Option<bool>> = vec![None; faces.len()];
    for start in 0..faces.len() {
        if flipped[start].is_some() {
            continue;
        }
        flipped[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(fi) = queue.pop_front() {
            let my_flip = flipped[fi].unwrap();
            for pos in 0..faces[fi].len() {
                let (u, v) = dir(fi, pos, my_flip);
                let occ = &occurrences[&(u.min(v), u.max(v))];
                for &(gi, gpos) in occ {
                    if gi == fi && gpos == pos {
                        continue;
                    }
                    // The partner must traverse (v, u).
                    let want_unflipped = dir(gi, gpos, false) == (v, u);
                    match flipped[gi] {
                        None => {
                            flipped[gi] = Some(!want_unflipped);
                            queue.push_back(gi);
                        }
                        Some(fl) => {
                            if dir(gi, gpos, fl) != (v, u) {
                                return Err(format!(
                                    "faces {fi} and {gi} cannot be oriented consistently"
                                ));
                            }
                        }
                    }
                }
            }
        }
    }

    // Darts: one per directed edge.
    let mut walks: Vec<Vec<usize>> = Vec::with_capacity(faces.len());
    for (fi, f) in faces.iter().enumerate() {
        let mut w = f.clone();
        if flipped[fi].unwrap() {
            w.reverse();
        }
        walks.push(w);
    }
    let dart_label = |u: usize, v: usize| format!("d{u}_{v}");
    let mut prev_dart: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for w in &walks {
        for pos in 0..w.len() {
            let (u, v) = (w[pos], w[(pos + 1) % w.len()]);
            let (pu, pv) = (w[(pos + w.len() - 1) % w.len()], w[pos]);
            if prev_dart.insert((u, v), (pu, pv)).is_some() {
                return Err(format!("directed edge {u}->{v} traversed twice"));
            }
        }
    }

    // rot_next(d) = twin(prev(d)); build rotation cycles per vertex.
    let mut rotations: Vec<Vec<String>> = vec![Vec::new(); n];
    let mut placed: HashMap<(usize, usize), bool> = HashMap::new();
    for &(u, v) in prev_dart.keys() {
        placed.insert((u, v), false);
    }
    let keys: Vec<(usize, usize)> = {
        let mut k: Vec<_> = prev_dart.keys().copied().collect();
        k.sort();
        k
    };
    for &(u0, v0) in &keys {
        if placed[&(u0, v0)] {
            continue;
        }
        let u = u0;
        let mut cycle = Vec::new();
        let mut cur = (u0, v0);
        loop {
            if *placed.get(&cur).ok_or_else(|| "broken walk".to_string())? {
                break;
            }
            placed.insert(cur, true);
            cycle.push(dart_label(cur.0, cur.1));
            let (pu, pv) = prev_dart[&cur];
            debug_assert_eq!(pv, u);
            cur = (pv, pu); // twin of the predecessor dart
        }
        if !rotations[u].is_empty() {
            return Err(format!(
                "vertex {u} has more than one rotation cycle; the faces do not glue to a surface disk at it"
            ));
        }
        rotations[u] = cycle;
    }

    let nodes = (0..n)
        .map(|i| RawNode {
            label: i.to_string(),
            kind: NodeKind::Real,
        })
        .collect();
    let mut twins = BTreeMap::new();
    for &(u, v) in &keys {
        if u < v {
            twins.insert(dart_label(u, v), dart_label(v, u));
        }
    }
    Ok(RawMap {
        nodes,
        rotations,
        twins,
    })
}

/// The twelve pentagons of the dodecahedron, on vertices 0..20: an outer
/// 5-cycle, two interleaved rings, and an inner 5-cycle.
pub fn dodecahedron_faces() -> Vec<Vec<usize>> {
    let mut faces = vec![vec![0, 1, 2, 3, 4]];
    for i in 0..5 {
        let j = (i + 1) % 5;
        faces.push(vec![i, j, 5 + j, 10 + i, 5 + i]);
    }
    for i in 0..5 {
        let j = (i + 1) % 5;
        faces.push(vec![15 + i, 15 + j, 10 + j, 5 + j, 10 + i]);
    }
    faces.push(vec![15, 16, 17, 18, 19]);
    faces
}
