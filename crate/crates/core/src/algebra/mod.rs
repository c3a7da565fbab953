//! Exact operator algebra on the closed function family.

pub mod function;
pub mod modes;
pub mod operators;
pub mod sequence;

pub use function::{relative_residual, AlgebraicFunction};
pub use modes::ModeState;
pub use operators::{apply_a, apply_abar, apply_h, apply_htilde, shape_invariance_residual};
pub use sequence::SequenceState;
