//! Drawing interchange format.
//!
//! ```json
//! {
//!   "version": "crossing-forge/1",
//!   "nodes": [{"id": "0", "kind": "real"}, {"id": "x0", "kind": "crossing"}],
//!   "rotations": {"0": ["d0", "d5"], "x0": ["d1", "d2", "d3", "d4"]},
//!   "twins": {"d0": "d1", "d2": "d5"}
//! }
//! ```
//!
//! Rotations are counterclockwise. In strict mode unknown fields are
//! rejected; otherwise they are reported as warnings and ignored.

use super::{CombinatorialMap, NodeKind, RawMap, RawNode, ValidationError};
use serde_json::Value;
use std::collections::BTreeMap;

pub const FORMAT_VERSION: &str = "crossing-forge/1";

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Reject unknown fields instead of warning about them.
    pub strict: bool,
}

const TOP_FIELDS: &[&str] = &["version", "nodes", "rotations", "twins"];
const NODE_FIELDS: &[&str] = &["id", "kind"];

fn schema(msg: impl Into<String>) -> ValidationError {
    ValidationError::Schema(msg.into())
}

/// Parse a drawing document into an unvalidated [`RawMap`].
/// Returns the map plus any non-fatal warnings.
pub fn parse_drawing(
    text: &str,
    opts: ParseOptions,
) -> Result<(RawMap, Vec<String>), ValidationError> {
    let doc: Value =
        serde_json::from_str(text).map_err(|e| schema(format!("invalid JSON: {e}")))?;
    let mut warnings = Vec::new();

    let obj = doc
        .as_object()
        .ok_or_else(|| schema("top level must be an object"))?;
    for key in obj.keys() {
        if !TOP_FIELDS.contains(&key.as_str()) {
            if opts.strict {
                return Err(schema(format!("unknown top-level field {key:?}")));
            }
            warnings.push(format!("ignoring unknown top-level field {key:?}"));
        }
    }

    match obj.get("version").and_then(Value::as_str) {
        Some(FORMAT_VERSION) => {}
        Some(v) => return Err(schema(format!("unsupported version {v:?}"))),
        None => return Err(schema("missing string field \"version\"")),
    }

    let nodes_val = obj
        .get("nodes")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("missing array field \"nodes\""))?;
    let mut nodes = Vec::with_capacity(nodes_val.len());
    for nv in nodes_val {
        let no = nv
            .as_object()
            .ok_or_else(|| schema("each node must be an object"))?;
        for key in no.keys() {
            if !NODE_FIELDS.contains(&key.as_str()) {
                if opts.strict {
                    return Err(schema(format!("unknown node field {key:?}")));
                }
                warnings.push(format!("ignoring unknown node field {key:?}"));
            }
        }
        let id = no
            .get("id")
            .and_then(Value::as_str)
            .ok_or_else(|| schema("node is missing string field \"id\""))?;
        let kind = match no.get("kind").and_then(Value::as_str) {
            Some("real") => NodeKind::Real,
            Some("crossing") => NodeKind::Crossing,
            Some(k) => {
                return Err(schema(format!(
                    "node {id:?}: kind must be \"real\" or \"crossing\", got {k:?}"
                )))
            }
            None => return Err(schema(format!("node {id:?} is missing field \"kind\""))),
        };
        nodes.push(RawNode {
            label: id.to_string(),
            kind,
        });
    }

    let rot_obj = obj
        .get("rotations")
        .and_then(Value::as_object)
        .ok_or_else(|| schema("missing object field \"rotations\""))?;
    let known: std::collections::HashSet<&str> = nodes.iter().map(|n| n.label.as_str()).collect();
    for key in rot_obj.keys() {
        if !known.contains(key.as_str()) {
            return Err(schema(format!("rotation entry for unknown node {key:?}")));
        }
    }
    let mut rotations = Vec::with_capacity(nodes.len());
    for n in &nodes {
        let rot = match rot_obj.get(&n.label) {
            None => Vec::new(),
            Some(v) => {
                let arr = v.as_array().ok_or_else(|| {
                    schema(format!("rotation of node {:?} must be an array", n.label))
                })?;
                arr.iter()
                    .map(|d| {
                        d.as_str().map(str::to_string).ok_or_else(|| {
                            schema(format!(
                                "rotation of node {:?} must contain dart id strings",
                                n.label
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?
            }
        };
        rotations.push(rot);
    }

    let twins_obj = obj
        .get("twins")
        .and_then(Value::as_object)
        .ok_or_else(|| schema("missing object field \"twins\""))?;
    let mut twins = BTreeMap::new();
    for (a, b) in twins_obj {
        let b = b
            .as_str()
            .ok_or_else(|| schema(format!("twin of dart {a:?} must be a dart id string")))?;
        twins.insert(a.clone(), b.to_string());
    }

    Ok((
        RawMap {
            nodes,
            rotations,
            twins,
        },
        warnings,
    ))
}

/// Serialize a validated map. Output is byte-stable for a given map and
/// parses back (in strict mode) to an isomorphic map.
pub fn serialize_drawing(map: &CombinatorialMap) -> String {
    let raw = map.to_raw();
    let mut rotations = serde_json::Map::new();
    // Keyed object; emit in node order for readability, which serde_json
    // preserves only with a plain Map built in insertion order.
    for (n, rot) in raw.nodes.iter().zip(&raw.rotations) {
        rotations.insert(
            n.label.clone(),
            Value::Array(rot.iter().map(|d| Value::String(d.clone())).collect()),
        );
    }
    let mut twins = serde_json::Map::new();
    for (a, b) in &raw.twins {
        twins.insert(a.clone(), Value::String(b.clone()));
    }
    let doc = serde_json::json!({
        "version": FORMAT_VERSION,
        "nodes": raw.nodes.iter().map(|n| serde_json::json!({
            "id": n.label,
            "kind": match n.kind { NodeKind::Real => "real", NodeKind::Crossing => "crossing" },
        })).collect::<Vec<_>>(),
        "rotations": Value::Object(rotations),
        "twins": Value::Object(twins),
    });
    serde_json::to_string_pretty(&doc).expect("document serializes")
}
