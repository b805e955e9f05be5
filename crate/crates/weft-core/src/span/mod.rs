//! Algebraic engine: wiring diagrams as spans of typed finite sets.
//!
//! This module gives diagrams a second, independent semantics. A diagram
//! becomes a span whose apex is its wire set; substitution becomes a block
//! matrix formula built from products and sums of span matrices. Nothing
//! here touches the combinatorial substitution in [`crate::operad`], which
//! is the point: the two routes are compared, never shared.

mod algebra;
mod typed_set;
mod wiring;

pub use algebra::{
    component, embed, mat_add, mat_mul, matrix_to_span, span_iso, span_iso_spans, span_to_matrix,
    Span, SpanMatrix,
};
pub use typed_set::{TypedFiniteSet, WireName};
pub use wiring::{
    compose_formula, para_gen, progress_order, seq_gen, span_to_wd, sym_gen, unit_gen, wd_to_span, wd_to_span_named,
    ProgressOrder, SignedBox, SpanPort, WiringDiagramSpan,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpanError {
    #[error("duplicate wire name {0}")]
    DuplicateWire(WireName),
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("index {index} out of range for basis of size {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("diagram is not strict: {0}")]
    NotStrict(String),
    #[error("no progress order: boxes {witness:?} form a cycle")]
    ProgressViolation { witness: Vec<usize> },
    #[error("inner box {index} does not match the filling diagram's outer signature")]
    SignatureMismatch { index: usize },
}
