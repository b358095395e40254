//! File formats: meshes, diagrams, plots and run reports.

mod dgm;
mod mesh;
mod report;

pub use dgm::{diagram_svg, emit_diagram_svg, format_diagram, load_diagram, parse_diagram, save_diagram};
pub use mesh::{load_mesh, parse_heights, parse_obj, parse_off, read_mesh, write_off, HeightSource, Mesh};
pub use report::RunReport;

use thiserror::Error;

use crate::complex::ComplexError;

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: face has {vertices} vertices, only triangles are supported")]
    NonTriangleFace { line: usize, vertices: usize },
    #[error("height file names vertex {0}, which the mesh does not have")]
    UnknownVertexInHeightFile(usize),
    #[error("height file has no value for vertex {0}")]
    MissingHeight(usize),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

impl PartialEq for IoError {
    fn eq(&self, other: &Self) -> bool {
        use IoError::*;
        match (self, other) {
            (Io(a), Io(b)) => a.kind() == b.kind(),
            (Parse { line: a, message: m }, Parse { line: b, message: n }) => a == b && m == n,
            (NonTriangleFace { line: a, vertices: x }, NonTriangleFace { line: b, vertices: y }) => a == b && x == y,
            (UnknownVertexInHeightFile(a), UnknownVertexInHeightFile(b)) => a == b,
            (MissingHeight(a), MissingHeight(b)) => a == b,
            (Complex(a), Complex(b)) => a == b,
            _ => false,
        }
    }
}
