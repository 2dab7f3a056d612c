//! Two-row set partitions, the constructions built from them, bounded
//! category closures, and the linear maps they induce.

pub mod classify;
pub mod closure;
pub mod constructions;
pub mod enumerate;
pub mod linear;
pub mod named;
pub mod partition;
pub mod text;
pub mod trace;

pub use partition::{ComposeOutcome, Partition, PartitionError, Point, Row};
pub use trace::{Construction, ConstructionTrace, Operation};
