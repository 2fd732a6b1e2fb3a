//! Graph-edge removal.
//!
//! Removing an edge dissolves every crossing it participates in: the other
//! edge's two segments at that crossing are spliced into one. Splices are
//! applied through a mutable twin table, so consecutive dissolutions along
//! the surviving edge chain correctly, independent of processing order.
//! Surviving darts keep their labels; the result is raw and must be
//! re-validated.

use super::{CombinatorialMap, EdgeId, NodeKind, RawMap, RawNode};
use std::collections::BTreeMap;

/// Remove the given graph edges simultaneously. The edges must be pairwise
/// non-crossing (each dissolved crossing keeps one surviving edge); this
/// holds for configuration inner-edge removals, which only ever cross
/// within their own instance.
pub fn remove_graph_edges(map: &CombinatorialMap, remove: &[EdgeId]) -> Result<RawMap, String> {
    let mut removed_edge = vec![false; map.edge_count()];
    for &e in remove {
        removed_edge[e.0 as usize] = true;
    }

    for &e in remove {
        for x in &map.edge(e).crossings {
            let both_removed = map
                .rotation(*x)
                .iter()
                .all(|&d| removed_edge[map.edge_of(d).0 as usize]);
            if both_removed {
                return Err(format!(
                    "edges {} and its partner at crossing {} are both being removed",
                    map.edge(e).label,
                    map.node_label(*x)
                ));
            }
        }
    }

    let mut dead_dart = vec![false; map.dart_count()];
    let mut dead_node = vec![false; map.node_count()];
    let mut twin: Vec<super::DartId> = map.dart_ids().map(|d| map.twin(d)).collect();

    for &e in remove {
        for d in &map.edge(e).strand {
            dead_dart[d.0 as usize] = true;
            dead_dart[map.twin(*d).0 as usize] = true;
        }
        for x in &map.edge(e).crossings {
            dead_node[x.0 as usize] = true;
            // Splice the surviving edge across the dissolving crossing.
            let survivors: Vec<_> = map
                .rotation(*x)
                .iter()
                .copied()
                .filter(|&d| !removed_edge[map.edge_of(d).0 as usize])
                .collect();
            debug_assert_eq!(survivors.len(), 2);
            let (o1, o2) = (survivors[0], survivors[1]);
            let a = twin[o1.0 as usize];
            let b = twin[o2.0 as usize];
            twin[a.0 as usize] = b;
            twin[b.0 as usize] = a;
            dead_dart[o1.0 as usize] = true;
            dead_dart[o2.0 as usize] = true;
        }
    }

    let mut nodes = Vec::new();
    let mut rotations = Vec::new();
    for n in map.node_ids() {
        if dead_node[n.0 as usize] {
            continue;
        }
        let rot: Vec<String> = map
            .rotation(n)
            .iter()
            .filter(|d| !dead_dart[d.0 as usize])
            .map(|&d| map.dart_label(d).to_string())
            .collect();
        if map.node_kind(n) == NodeKind::Crossing {
            debug_assert_eq!(rot.len(), 4, "surviving crossings keep all four darts");
        }
        nodes.push(RawNode {
            label: map.node_label(n).to_string(),
            kind: map.node_kind(n),
        });
        rotations.push(rot);
    }

    let mut twins = BTreeMap::new();
    for d in map.dart_ids() {
        if dead_dart[d.0 as usize] {
            continue;
        }
        let t = twin[d.0 as usize];
        debug_assert!(!dead_dart[t.0 as usize]);
        if map.dart_label(d) < map.dart_label(t) {
            twins.insert(map.dart_label(d).to_string(), map.dart_label(t).to_string());
        }
    }

    Ok(RawMap {
        nodes,
        rotations,
        twins,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planemap::RawMap;

    /// Square 0-1-2-3 with both diagonals crossing at x.
    fn crossed_square() -> CombinatorialMap {
        let mk = |l: &str, kind| RawNode {
            label: l.into(),
            kind,
        };
        // Vertices ccw on a circle; at vertex i (ccw): [to i+1, diagonal, to i-1].
        let nodes = vec![
            mk("0", NodeKind::Real),
            mk("1", NodeKind::Real),
            mk("2", NodeKind::Real),
            mk("3", NodeKind::Real),
            mk("x", NodeKind::Crossing),
        ];
        let rotations = vec![
            vec!["s0".into(), "d0".into(), "t3".into()],
            vec!["s1".into(), "d1".into(), "t0".into()],
            vec!["s2".into(), "d2".into(), "t1".into()],
            vec!["s3".into(), "d3".into(), "t2".into()],
            // ccw around x: toward 0, 1, 2, 3
            vec!["x0".into(), "x1".into(), "x2".into(), "x3".into()],
        ];
        let twins = [
            ("s0", "t0"),
            ("s1", "t1"),
            ("s2", "t2"),
            ("s3", "t3"),
            ("d0", "x0"),
            ("d1", "x1"),
            ("d2", "x2"),
            ("d3", "x3"),
        ]
        .into_iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        RawMap {
            nodes,
            rotations,
            twins,
        }
        .validate()
        .unwrap()
    }

    #[test]
    fn removing_one_diagonal_dissolves_the_crossing() {
        let m = crossed_square();
        assert_eq!(m.crossing_count(), 1);
        assert_eq!(m.edge_count(), 6);
        let diag = m.edge_by_label("0~2#0").unwrap();
        let raw = remove_graph_edges(&m, &[diag]).unwrap();
        let m2 = raw.validate().unwrap();
        assert_eq!(m2.crossing_count(), 0);
        assert_eq!(m2.edge_count(), 5);
        assert!(m2.edge_by_label("1~3#0").is_some());
        assert_eq!(
            m2.edge(m2.edge_by_label("1~3#0").unwrap()).crossings.len(),
            0
        );
    }

    #[test]
    fn removing_both_crossing_edges_is_rejected() {
        let m = crossed_square();
        let d1 = m.edge_by_label("0~2#0").unwrap();
        let d2 = m.edge_by_label("1~3#0").unwrap();
        assert!(remove_graph_edges(&m, &[d1, d2]).is_err());
    }
}
