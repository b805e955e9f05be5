//! Acyclic wiring diagrams as an algebra for symmetric monoidal categories.

pub mod diagram;
pub mod dot;
pub mod equality;
pub mod expr;
pub mod gen;
pub mod operad;
pub mod oracle;
pub mod smc;
pub mod span;

pub use diagram::{
    DiagramBox, DiagramError, Mode, PortRef, PortType, ValidationReport, Violation, Wire,
    WiringDiagram, INPUT_ID, OUTPUT_ID,
};
pub use dot::export_dot;
pub use equality::{canonicalize, invariant_hash, is_equal, isomorphism, CanonicalForm, EqualityError};
pub use gen::{random_diagram, random_diagram_with_signature, GenConfig};
pub use oracle::{check_substitution, OracleError, OracleReport};
pub use expr::{compile, parse, print_expression, typecheck, Expression, FrontendError, Signature};
pub use operad::{inert, ocompose, ocompose_at, substitute};
pub use smc::{braid, compose, generator, id, otimes, permute, Morphism, SmcError};
pub use span::{
    compose_formula, mat_add, mat_mul, progress_order, span_iso, span_to_wd, wd_to_span, wd_to_span_named,
    SpanError, SpanMatrix, TypedFiniteSet, WireName, WiringDiagramSpan,
};
