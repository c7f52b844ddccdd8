//! Dense large-angle-crossing constructions.
//!
//! The route to a dense `(π/t − ε)`-AC graph is: choose `t` lattice lines
//! through the origin at nearly equal angles (a t-frame), translate them so
//! that every grid point lies on `t` of them, erect a vertical plane over
//! each line carrying a crossing-free grid graph, and project the resulting
//! 3D graph onto a plane that is almost horizontal.

mod convert;
mod frame;
mod grid;
mod lattice;
mod pipeline;
mod project;

use thiserror::Error;

use crate::exact_geom::GeomError;
use crate::graph_model::GraphError;

pub use convert::lemma_convert_build;
pub use frame::{cover_with_frame, frame_cover, t_frame, Frame};
pub use grid::{grid_graph, stacked_grids};
pub use lattice::{lattice_lines, CoveredArrangement, LatticeKind, Line2};
pub use pipeline::{construct_alpha_ac, ConstructionCertificate};
pub use project::{choose_gamma, project, DEFAULT_MAX_HALVINGS};

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("projection identifies vertices {first} and {second}")]
    ProjectionCollision { first: usize, second: usize },
    #[error("projected vertex {vertex} lands inside edge {edge}")]
    ProjectionOnEdge { vertex: usize, edge: usize },
    #[error("projected edges {first} and {second} overlap")]
    ProjectionOverlap { first: usize, second: usize },
    #[error("no gamma = 2^-s with s <= {halvings} passes the threshold")]
    GammaSearchExhausted { halvings: u32 },
    #[error("lattice approximation at {0} bits cannot keep the family angles")]
    LatticePrecision(u32),
    #[error("t-frame: {0}")]
    Frame(String),
    #[error("point ({x}, {y}) lies on only {lines} lines")]
    Coverage { x: i64, y: i64, lines: usize },
    #[error("internal construction error: {0}")]
    Internal(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("stage {stage} failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<ConstructionError>,
    },
}

impl ConstructionError {
    pub(crate) fn at(stage: &'static str) -> impl FnOnce(ConstructionError) -> ConstructionError {
        move |e| ConstructionError::Stage { stage, source: Box::new(e) }
    }
}
