//! The planarization G′ of a drawing and its half-edge mesh.

mod flatten;
mod mesh;
mod planarize;

use thiserror::Error;

use crate::graph_model::GraphError;

pub use flatten::{flatten_to_2d, FlattenReport};
pub use mesh::{
    build_mesh, build_mesh_unchecked, component_count, euler_check, face_metrics, EulerReport, FaceMetrics,
    HalfEdgeMesh,
};
pub use planarize::{planarize, Arc, Node, NodeKind, Planarization};

#[derive(Debug, Error)]
pub enum ArrangementError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("planarization is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("flattening at {bits} bits broke the drawing: {reason}")]
    FlattenCollision { bits: u32, reason: String },
}

/// `k-name` label of a face, e.g. `1-triangle`.
pub fn shape_label(walk_length: usize, v: usize) -> String {
    let name = match walk_length {
        1 => "monogon".to_string(),
        2 => "digon".to_string(),
        3 => "triangle".to_string(),
        4 => "quadrilateral".to_string(),
        5 => "pentagon".to_string(),
        6 => "hexagon".to_string(),
        7 => "heptagon".to_string(),
        8 => "octagon".to_string(),
        k => format!("{k}-gon"),
    };
    format!("{v}-{name}")
}
