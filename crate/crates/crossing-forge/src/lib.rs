//! Toolkit for combinatorial maps of graph drawings with crossings.
//!
//! A drawing is stored as its planarization: a combinatorial map whose nodes
//! are either real graph vertices or degree-4 crossing nodes, with explicit
//! counterclockwise rotations and a twin involution on darts. On top of that
//! the crate provides face analysis (r-s-gon classes, wedge and vertex
//! neighbors, planar-skeleton regions), detection and removal of the three
//! dense crossing configurations, exact rational discharging with verifiable
//! traces, and crossing-number lower-bound machinery including an edge-peeling
//! argument.

pub mod batch;
pub mod bounds;
pub mod configs;
pub mod discharging;
pub mod generators;
pub mod planemap;
pub mod ratio;

pub use planemap::{CombinatorialMap, NodeKind, RawMap, ValidationError};
pub use ratio::Ratio;
