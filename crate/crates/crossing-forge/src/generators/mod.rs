//! Drawing generators.
//!
//! All families are built from two primitives: straight-line planarization
//! of chords in convex position (`geom`), and splicing such a chord model
//! into a face of an existing map. Splicing into both faces of a cycle
//! yields the doubled configurations; splicing the pentagram (or the
//! pentagram minus one chord) into every face of a pentagonalization
//! yields the optimal 2-planar and near-optimal families.

mod faces;
mod geom;

pub use faces::{dodecahedron_faces, map_from_faces};
pub use geom::planarize_chords;

use crate::configs::ConfigKind;
use crate::planemap::{CombinatorialMap, DartId, FaceId, NodeId, NodeKind, ValidationError};
use thiserror::Error;

#[derive(Error, Debug)]
pub enum GenError {
    #[error("not a pentagonalization: {0}")]
    NotAPentagonalization(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("face gluing failed: {0}")]
    Construction(String),
    #[error("generated map failed validation: {0}")]
    Invalid(#[from] ValidationError),
}

/// Boundary-vertex count and chord set of a configuration template, in
/// cycle-index space.
pub fn config_chords(kind: ConfigKind) -> (usize, Vec<(usize, usize)>) {
    match kind {
        ConfigKind::F25 => (5, vec![(0, 2), (1, 3), (2, 4), (3, 0), (4, 1)]),
        ConfigKind::F26 => (6, vec![(0, 2), (1, 3), (2, 4), (3, 5), (4, 0), (5, 1)]),
        ConfigKind::F36 => (
            6,
            vec![
                (0, 2),
                (1, 3),
                (2, 4),
                (3, 5),
                (4, 0),
                (5, 1),
                (0, 3),
                (1, 4),
            ],
        ),
    }
}

/// The boundary walk of a face, rotated to start at its least node id.
pub fn face_walk(map: &CombinatorialMap, f: FaceId) -> Vec<(NodeId, DartId)> {
    let darts = &map.face(f).darts;
    let start = darts
        .iter()
        .enumerate()
        .min_by_key(|(_, &d)| map.origin(d))
        .map(|(i, _)| i)
        .unwrap_or(0);
    (0..darts.len())
        .map(|i| {
            let d = darts[(start + i) % darts.len()];
            (map.origin(d), d)
        })
        .collect()
}

/// Splice chord models (in face-walk index space) into faces of `host`.
pub fn insert_chords(
    host: &CombinatorialMap,
    inserts: &[(FaceId, Vec<(usize, usize)>)],
) -> Result<CombinatorialMap, GenError> {
    let mut raw = host.to_raw();
    for (f, chords) in inserts {
        if chords.is_empty() {
            continue;
        }
        let walk = face_walk(host, *f);
        let p = walk.len();
        for &(a, b) in chords {
            if a >= p || b >= p {
                return Err(GenError::Construction(format!(
                    "chord ({a},{b}) out of range for a face of size {p}"
                )));
            }
        }
        {
            let mut seen = std::collections::HashSet::new();
            for (v, _) in &walk {
                if map_is_crossing(host, *v) {
                    return Err(GenError::Construction(format!(
                        "face {} has a crossing on its boundary",
                        f.0
                    )));
                }
                if !seen.insert(*v) {
                    return Err(GenError::Construction(format!(
                        "face {} revisits vertex {}",
                        f.0,
                        host.node_label(*v)
                    )));
                }
            }
        }
        let model = planarize_chords(p, chords, false, &format!("F{}_", f.0));
        // Corner splices: the model's rotation at vertex k is the ccw list
        // of chord darts inside the corner, inserted right after the
        // departing boundary dart.
        for (k, (v, b)) in walk.iter().enumerate() {
            let rot = &mut raw.rotations[v.0 as usize];
            let label = host.dart_label(*b);
            let pos = rot
                .iter()
                .position(|l| l == label)
                .expect("departing dart in origin rotation");
            let tail: Vec<String> = model.rotations[k].clone();
            rot.splice(pos + 1..pos + 1, tail);
        }
        for (node, rot) in model.nodes.iter().zip(&model.rotations).skip(p) {
            raw.nodes.push(node.clone());
            raw.rotations.push(rot.clone());
        }
        raw.twins.extend(model.twins.clone());
    }
    Ok(raw.validate()?)
}

fn map_is_crossing(map: &CombinatorialMap, n: NodeId) -> bool {
    map.node_kind(n) == NodeKind::Crossing
}

pub fn gen_planar_cycle(p: usize) -> Result<CombinatorialMap, GenError> {
    if p < 3 {
        return Err(GenError::BadParameter(format!(
            "cycle length must be at least 3, got {p}"
        )));
    }
    Ok(planarize_chords(p, &[], true, "").validate()?)
}

/// One copy of the configuration: cycle plus its chords on one side.
pub fn gen_full_config(kind: ConfigKind) -> CombinatorialMap {
    let (p, chords) = config_chords(kind);
    planarize_chords(p, &chords, true, "")
        .validate()
        .expect("configuration templates are valid drawings")
}

/// The configuration inserted into both faces of its boundary cycle.
pub fn gen_doubled(kind: ConfigKind) -> CombinatorialMap {
    let (p, chords) = config_chords(kind);
    let cycle = gen_planar_cycle(p).expect("p >= 5");
    insert_chords(&cycle, &[(FaceId(0), chords.clone()), (FaceId(1), chords)])
        .expect("doubling a template is a valid drawing")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PentagonBase {
    Dodecahedron,
    CycleC5,
}

fn build_base(base: PentagonBase) -> Result<CombinatorialMap, GenError> {
    match base {
        PentagonBase::Dodecahedron => {
            let raw = map_from_faces(20, &dodecahedron_faces()).map_err(GenError::Construction)?;
            Ok(raw.validate()?)
        }
        PentagonBase::CycleC5 => gen_planar_cycle(5),
    }
}

/// One pentagon face with its (corner, outgoing dart) walk.
type PentagonWalk = (FaceId, Vec<(NodeId, DartId)>);

/// All faces must be pentagons with five distinct real corners.
fn pentagon_walks(map: &CombinatorialMap) -> Result<Vec<PentagonWalk>, GenError> {
    if map.crossing_count() > 0 {
        return Err(GenError::NotAPentagonalization(
            "the base drawing has crossings".into(),
        ));
    }
    let mut out = Vec::new();
    for f in map.face_ids() {
        let walk = face_walk(map, f);
        if walk.len() != 5 {
            return Err(GenError::NotAPentagonalization(format!(
                "face {} has size {}, expected 5",
                f.0,
                walk.len()
            )));
        }
        let mut vs: Vec<NodeId> = walk.iter().map(|(v, _)| *v).collect();
        vs.sort();
        vs.dedup();
        if vs.len() != 5 {
            return Err(GenError::NotAPentagonalization(format!(
                "face {} revisits a vertex",
                f.0
            )));
        }
        out.push((f, walk));
    }
    Ok(out)
}

const PENTAGRAM: [(usize, usize); 5] = [(0, 2), (1, 3), (2, 4), (3, 0), (4, 1)];

/// Insert the full pentagram into every pentagonal face.
pub fn gen_optimal_2planar(base: PentagonBase) -> Result<CombinatorialMap, GenError> {
    let host = build_base(base)?;
    let inserts: Vec<_> = pentagon_walks(&host)?
        .into_iter()
        .map(|(f, _)| (f, PENTAGRAM.to_vec()))
        .collect();
    insert_chords(&host, &inserts)
}

/// Insert the pentagram minus one chord into every pentagonal face; the
/// dropped chord is the one joining the numerically least vertex pair.
pub fn gen_pentagonalization_augmented(base: PentagonBase) -> Result<CombinatorialMap, GenError> {
    let host = build_base(base)?;
    let mut inserts = Vec::new();
    for (f, walk) in pentagon_walks(&host)? {
        let dropped = PENTAGRAM
            .iter()
            .enumerate()
            .min_by_key(|(_, (a, b))| {
                let (u, v) = (walk[*a].0, walk[*b].0);
                (u.min(v), u.max(v))
            })
            .map(|(i, _)| i)
            .expect("five chords");
        let chords: Vec<_> = PENTAGRAM
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != dropped)
            .map(|(_, c)| *c)
            .collect();
        inserts.push((f, chords));
    }
    insert_chords(&host, &inserts)
}

/// A named family of generated drawings, as accepted by the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    FullConfig(ConfigKind),
    Doubled(ConfigKind),
    PentagonalizationAugmented(PentagonBase),
    Optimal2Planar(PentagonBase),
    PlanarCycle(usize),
}

impl std::str::FromStr for Family {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, GenError> {
        let bad = || GenError::BadParameter(format!("unknown family {s:?}"));
        let (name, arg) = s.split_once(':').ok_or_else(bad)?;
        let config = |a: &str| a.parse::<ConfigKind>().map_err(|_| bad());
        let base = |a: &str| match a {
            "dodecahedron" => Ok(PentagonBase::Dodecahedron),
            "c5" => Ok(PentagonBase::CycleC5),
            _ => Err(bad()),
        };
        match name {
            "full-config" => Ok(Family::FullConfig(config(arg)?)),
            "doubled" => Ok(Family::Doubled(config(arg)?)),
            "pentagonalization-augmented" => Ok(Family::PentagonalizationAugmented(base(arg)?)),
            "optimal-2planar" => Ok(Family::Optimal2Planar(base(arg)?)),
            "planar-cycle" => {
                let p = arg
                    .parse::<usize>()
                    .map_err(|_| GenError::BadParameter(format!("bad cycle length {arg:?}")))?;
                Ok(Family::PlanarCycle(p))
            }
            _ => Err(bad()),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::FullConfig(k) => write!(f, "full-config:{k}"),
            Family::Doubled(k) => write!(f, "doubled:{k}"),
            Family::PentagonalizationAugmented(b) => {
                write!(f, "pentagonalization-augmented:{}", base_name(*b))
            }
            Family::Optimal2Planar(b) => write!(f, "optimal-2planar:{}", base_name(*b)),
            Family::PlanarCycle(p) => write!(f, "planar-cycle:{p}"),
        }
    }
}

fn base_name(b: PentagonBase) -> &'static str {
    match b {
        PentagonBase::Dodecahedron => "dodecahedron",
        PentagonBase::CycleC5 => "c5",
    }
}

pub fn build_family(family: &Family) -> Result<CombinatorialMap, GenError> {
    match family {
        Family::FullConfig(k) => Ok(gen_full_config(*k)),
        Family::Doubled(k) => Ok(gen_doubled(*k)),
        Family::PentagonalizationAugmented(b) => gen_pentagonalization_augmented(*b),
        Family::Optimal2Planar(b) => gen_optimal_2planar(*b),
        Family::PlanarCycle(p) => gen_planar_cycle(*p),
    }
}

/// Families whose drawings satisfy every discharging precondition; used by
/// tests and batch sweeps.
pub fn tight_families() -> Vec<Family> {
    vec![
        Family::Doubled(ConfigKind::F25),
        Family::Doubled(ConfigKind::F26),
        Family::Doubled(ConfigKind::F36),
        Family::PentagonalizationAugmented(PentagonBase::Dodecahedron),
        Family::PentagonalizationAugmented(PentagonBase::CycleC5),
        Family::Optimal2Planar(PentagonBase::Dodecahedron),
        Family::Optimal2Planar(PentagonBase::CycleC5),
    ]
}
