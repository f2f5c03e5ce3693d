//! Semisimple Lie algebras of rank at most two: root systems, structure
//! constants derived from the defining relations and verified exhaustively,
//! Levi decompositions, the standard quasitriangular structure, and the
//! double.

mod algebra;
mod double;
mod levi;
mod nilpotent;
mod roots;
mod structures;

pub use algebra::{BasisLabel, LieAlgebra};
pub use double::DrinfeldDouble;
pub use levi::{LeviSplitting, QuasiRoot};
pub use roots::{Root, RootSystem};
pub use structures::{cartan_block_inverse, invert, standard_structures, StandardStructures};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LieError {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartanMatrix(String),
    #[error("bracket table verification failed: {0}")]
    JacobiFailure(String),
    #[error("not a quasitriangular structure: {0}")]
    NotQuasitriangular(String),
}
