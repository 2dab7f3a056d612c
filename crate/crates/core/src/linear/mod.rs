//! Exact scalar models: rational matrices, the 0/1 maps `T_p`, and the
//! relations `R(p)` a matrix may satisfy.

mod matrix;
mod relation;
mod tmap;

pub use matrix::{parse_matrix, MultiIndex, Rational, RationalMatrix};
pub use relation::{
    antipode_shadow_check, check_intertwiner, check_relation, coproduct_shadow_check, delta,
    right_inverse_witness, AntipodeVerdict, Counterexample, ShadowVerdict, Verdict,
};
pub use tmap::{compose_t_identity, t_map, ComposeIdentity, SparseTensorMap};

use thiserror::Error;

use crate::partition::PartitionError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinearError {
    #[error("multi-index lengths ({alpha}, {beta}) do not match P({upper},{lower})")]
    LengthMismatch { alpha: usize, beta: usize, upper: usize, lower: usize },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("matrix file line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("the matrix does not satisfy the relations: {0}")]
    RelationFails(Box<Counterexample>),
    #[error("witness check failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}
