//! Nilpotent quiver algebras N_s(Q), their quasi-hereditary structure and
//! idempotent recollement, and quiver-graded Richardson orbit searches, all over
//! exact fields.

pub mod a2;
pub mod algebra;
pub mod cli;
pub mod linalg;
pub mod qh;
pub mod quiver;
pub mod recollement;
pub mod repmod;
pub mod richardson;

pub use algebra::{nilpotent_quiver_algebra, truncated_path_algebra, BoundQuiverAlgebra, NsqAlgebra};
pub use linalg::{Field, Matrix, Scalar};
pub use quiver::{DimFiltration, DimVector, Quiver};
pub use repmod::Module;
