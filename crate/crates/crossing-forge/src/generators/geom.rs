//! Straight-line planarization of chords in convex position.
//!
//! Vertices 0..p sit counterclockwise on a circle. Two chords cross iff
//! their endpoints interleave cyclically (an exact integer test); the
//! counterclockwise rotation at a crossing is the circular order of the
//! four chord endpoints, and at a vertex it is the cyclic order of the far
//! endpoints. Only the order of several crossings *along* one chord uses
//! floating point, via intersection parameters; the families built here
//! keep those parameters well separated.

use crate::planemap::{NodeKind, RawMap, RawNode};
use std::collections::BTreeMap;

/// True iff x lies strictly between a and b walking counterclockwise.
fn ccw_between(p: usize, a: usize, x: usize, b: usize) -> bool {
    let fwd = |from: usize, to: usize| (to + p - from) % p;
    fwd(a, x) > 0 && fwd(a, x) < fwd(a, b)
}

/// Chords (a,b) and (c,d) cross iff exactly one of c,d lies on each arc.
fn chords_cross(p: usize, e1: (usize, usize), e2: (usize, usize)) -> bool {
    ccw_between(p, e1.0, e2.0, e1.1) != ccw_between(p, e1.0, e2.1, e1.1)
}

fn position(p: usize, k: usize) -> (f64, f64) {
    let t = 2.0 * std::f64::consts::PI * (k as f64) / (p as f64);
    (t.cos(), t.sin())
}

/// Parameter along segment a->b of its intersection with segment c->d.
fn intersection_param(a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)) -> f64 {
    let r = (b.0 - a.0, b.1 - a.1);
    let s = (d.0 - c.0, d.1 - c.1);
    let cross = |u: (f64, f64), v: (f64, f64)| u.0 * v.1 - u.1 * v.0;
    let denom = cross(r, s);
    debug_assert!(denom.abs() > 1e-12, "edges must properly cross");
    cross(((c.0 - a.0), (c.1 - a.1)), s) / denom
}

/// Planarize `chords` (plus the boundary cycle if requested) drawn as
/// straight lines between circle positions. Node labels are `0..p` for the
/// vertices and `{prefix}x{i}` for crossings; dart labels are
/// `{prefix}e{edge}s{segment}{f|b}`.
pub fn planarize_chords(
    p: usize,
    chords: &[(usize, usize)],
    include_boundary: bool,
    prefix: &str,
) -> RawMap {
    assert!(p >= 3);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    if include_boundary {
        edges.extend((0..p).map(|i| (i, (i + 1) % p)));
    }
    edges.extend_from_slice(chords);
    {
        let mut seen = std::collections::HashSet::new();
        for &(a, b) in &edges {
            assert!(
                a < p && b < p && a != b,
                "chord endpoints must be distinct vertices"
            );
            assert!(
                seen.insert((a.min(b), a.max(b))),
                "parallel chords are not supported in one layer"
            );
        }
    }

    // Discover crossings per edge, ordered along the edge by parameter.
    #[derive(Clone)]
    struct Stop {
        t: f64,
        other: usize,
        node: usize, // crossing node index, assigned on first discovery
    }
    let mut stops: Vec<Vec<Stop>> = vec![Vec::new(); edges.len()];
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (e1, e2) = (edges[i], edges[j]);
            if e1.0 == e2.0 || e1.0 == e2.1 || e1.1 == e2.0 || e1.1 == e2.1 {
                continue;
            }
            if !chords_cross(p, e1, e2) {
                continue;
            }
            let (a, b) = (position(p, e1.0), position(p, e1.1));
            let (c, d) = (position(p, e2.0), position(p, e2.1));
            let t1 = intersection_param(a, b, c, d);
            let t2 = intersection_param(c, d, a, b);
            stops[i].push(Stop {
                t: t1,
                other: j,
                node: usize::MAX,
            });
            stops[j].push(Stop {
                t: t2,
                other: i,
                node: usize::MAX,
            });
        }
    }
    for s in &mut stops {
        s.sort_by(|a, b| a.t.partial_cmp(&b.t).expect("finite parameters"));
    }
    // Assign crossing node ids in (edge, position-along-edge) discovery order.
    let mut crossing_count = 0usize;
    let mut pair_node: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (i, edge_stops) in stops.iter_mut().enumerate() {
        for s in edge_stops {
            let key = (i.min(s.other), i.max(s.other));
            let node = *pair_node.entry(key).or_insert_with(|| {
                let n = crossing_count;
                crossing_count += 1;
                n
            });
            s.node = node;
        }
    }

    let dart = |e: usize, s: usize, fwd: bool| -> String {
        format!("{prefix}e{e}s{s}{}", if fwd { 'f' } else { 'b' })
    };

    let mut nodes: Vec<RawNode> = (0..p)
        .map(|k| RawNode {
            label: k.to_string(),
            kind: NodeKind::Real,
        })
        .collect();
    nodes.extend((0..crossing_count).map(|i| RawNode {
        label: format!("{prefix}x{i}"),
        kind: NodeKind::Crossing,
    }));

    // Rotations at real vertices: far endpoints in ccw order.
    let mut rotations: Vec<Vec<String>> = Vec::with_capacity(nodes.len());
    for k in 0..p {
        let mut ends: Vec<(usize, String)> = Vec::new();
        for (e, &(a, b)) in edges.iter().enumerate() {
            if a == k {
                ends.push(((b + p - k) % p, dart(e, 0, true)));
            } else if b == k {
                ends.push(((a + p - k) % p, dart(e, stops[e].len(), false)));
            }
        }
        ends.sort_by_key(|(key, _)| *key);
        rotations.push(ends.into_iter().map(|(_, d)| d).collect());
    }
    // Rotations at crossings: darts toward the four endpoints, in their
    // circular order on the boundary.
    let mut crossing_rot: Vec<Vec<(usize, String)>> = vec![Vec::new(); crossing_count];
    for (e, &(a, b)) in edges.iter().enumerate() {
        for (i, s) in stops[e].iter().enumerate() {
            // Incoming segment i ends at this crossing; outgoing is i+1.
            crossing_rot[s.node].push((a, dart(e, i, false)));
            crossing_rot[s.node].push((b, dart(e, i + 1, true)));
        }
    }
    for rot in &mut crossing_rot {
        debug_assert_eq!(rot.len(), 4);
        rot.sort_by_key(|(endpoint, _)| *endpoint);
        rotations.push(rot.iter().map(|(_, d)| d.clone()).collect());
    }

    let mut twins = BTreeMap::new();
    for (e, s) in stops.iter().enumerate() {
        for seg in 0..=s.len() {
            twins.insert(dart(e, seg, true), dart(e, seg, false));
        }
    }

    RawMap {
        nodes,
        rotations,
        twins,
    }
}
