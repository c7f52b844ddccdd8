//! Construction and exact verification of geometric graphs whose edge
//! crossings all meet at large angles.
//!
//! * [`exact_geom`]: rational scalars, predicates, certified cosine bounds.
//! * [`graph_model`]: the geometric graph value, validation and JSON I/O.
//! * [`constructions`]: grid, stacked-grid, lattice and t-frame builders.
//! * [`arrangement`]: planarization, half-edge mesh and face metrics.
//! * [`charging`]: face charges and the 1/3 discharging walk.
//! * [`verify`]: angle certificates, direction partitions, bound tables.

pub mod exact_geom;
pub mod graph_model;
pub mod constructions;
pub mod arrangement;
pub mod charging;
pub mod verify;
pub mod svg;
pub mod fixtures;
