//! Cross-check between the two substitution engines.
//!
//! `substitute` splices graphs directly; `compose_formula` works on the
//! matrix presentation. Both answer the same question, so on every valid
//! input they must produce isomorphic spans and assemble each result wire
//! from the same pieces in the same order. Neither engine is trusted: the
//! check recomputes everything on both routes and only then compares.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{VertexId, WiringDiagram};
use crate::operad::{substitute_traced, OperadError, PathAtom};
use crate::span::{compose_formula, span_iso, wd_to_span, wd_to_span_named, SpanError};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error(transparent)]
    Operad(#[from] OperadError),
    #[error(transparent)]
    Span(#[from] SpanError),
    #[error("engines disagree: {0}")]
    Disagreement(String),
}

/// Result wires tallied by provenance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct CaseCounts {
    /// Host wires not incident to the target box.
    pub untouched: usize,
    /// Host wires continuing onto a box inside the substituted diagram.
    pub incoming: usize,
    /// Host wires threaded straight through the substituted diagram.
    pub passing: usize,
    /// Substituted-diagram wires continuing onto a host wire.
    pub outgoing: usize,
    /// Wires wholly inside the substituted diagram.
    pub internal: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    /// Box count of the substitution result.
    pub boxes: usize,
    /// Wire count of the substitution result.
    pub wires: usize,
    pub cases: CaseCounts,
}

/// Substitutes `sub` for box `v` of `host` on both engines and checks they
/// agree. The graph result's span must be isomorphic to the composed matrix
/// once box layouts are aligned, and the multiset of per-wire fusion
/// sequences from the matrix must equal the graph engine's trace.
pub fn check_substitution(
    host: &WiringDiagram,
    v: VertexId,
    sub: &WiringDiagram,
) -> Result<OracleReport, OracleError> {
    let mut targets: BTreeMap<VertexId, &WiringDiagram> = BTreeMap::new();
    targets.insert(v, sub);
    let (result, trace) = substitute_traced(host, &targets)?;

    let slot = host
        .box_ids()
        .position(|id| id == v)
        .ok_or(OperadError::DanglingRef { vertex: v })?;
    let host_span = wd_to_span_named(host, "h")?;
    let sub_span = wd_to_span_named(sub, "s")?;
    let formula = compose_formula(&sub_span, slot, &host_span)?;
    let direct = wd_to_span(&result)?;

    // The graph engine keeps surviving host boxes first and appends the
    // substituted boxes; the matrix engine splices them in at the slot.
    // The trace's box maps give the alignment without guessing.
    let mut perm = vec![usize::MAX; result.box_count()];
    for (p, u) in host.box_ids().enumerate() {
        if u == v {
            continue;
        }
        let spliced = if p < slot { p } else { p + sub.box_count() - 1 };
        perm[spliced] = trace.host_box_map[&u] - 3;
    }
    for (q, w) in sub.box_ids().enumerate() {
        perm[slot + q] = trace.box_map[&(v, w)] - 3;
    }
    let aligned = direct.reorder_inner(&perm)?;

    if !span_iso(aligned.matrix(), formula.matrix()) {
        return Err(OracleError::Disagreement(format!(
            "result spans differ\ngraph engine:\n{}\nmatrix engine:\n{}",
            aligned.matrix().dump(),
            formula.matrix().dump()
        )));
    }

    let mut from_trace: Vec<Vec<String>> = trace
        .wire_paths
        .iter()
        .map(|path| {
            path.iter()
                .map(|atom| match atom {
                    PathAtom::Host(i) => format!("h{}", i + 1),
                    PathAtom::Sub(_, j) => format!("s{}", j + 1),
                })
                .collect()
        })
        .collect();
    let m = formula.matrix();
    let mut from_matrix: Vec<Vec<String>> = (0..m.rows().len())
        .flat_map(|i| (0..m.cols().len()).flat_map(move |j| m.entry(i, j).iter()))
        .map(|name| name.atoms().iter().map(|a| a.to_string()).collect())
        .collect();
    from_trace.sort();
    from_matrix.sort();
    if from_trace != from_matrix {
        return Err(OracleError::Disagreement(format!(
            "wire provenance differs\ngraph engine: {from_trace:?}\nmatrix engine: {from_matrix:?}"
        )));
    }

    let mut cases = CaseCounts::default();
    for path in &trace.wire_paths {
        let shape: Vec<bool> = path
            .iter()
            .map(|a| matches!(a, PathAtom::Host(_)))
            .collect();
        match shape.as_slice() {
            [true] => cases.untouched += 1,
            [false] => cases.internal += 1,
            [true, false] => cases.incoming += 1,
            [false, true] => cases.outgoing += 1,
            [true, false, true] => cases.passing += 1,
            _ => {
                return Err(OracleError::Disagreement(format!(
                    "unrecognized fusion sequence {path:?}"
                )))
            }
        }
    }

    Ok(OracleReport {
        boxes: result.box_count(),
        wires: result.wires().len(),
        cases,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{port_types, DiagramBox, Mode, Wire};
    use crate::gen::{random_diagram, random_diagram_with_signature, GenConfig};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn series(outer_in: &str, mid: &str, outer_out: &str, a: &str, b: &str) -> WiringDiagram {
        let mut d = WiringDiagram::new(
            port_types(&[outer_in]),
            port_types(&[outer_out]),
            Mode::Strict,
        );
        let first = d.add_box(DiagramBox::new(a, port_types(&[outer_in]), port_types(&[mid])));
        let second = d.add_box(DiagramBox::new(b, port_types(&[mid]), port_types(&[outer_out])));
        d.add_wire(Wire::new((1, 1), (first, 1))).unwrap();
        d.add_wire(Wire::new((first, 1), (second, 1))).unwrap();
        d.add_wire(Wire::new((second, 1), (2, 1))).unwrap();
        d
    }

    #[test]
    fn series_into_series_tallies_every_case_but_passing() {
        let host = series("x", "y", "z", "f", "g");
        let sub = series("x", "w", "y", "a", "b");
        let report = check_substitution(&host, 3, &sub).unwrap();
        assert_eq!(report.boxes, 3);
        assert_eq!(report.wires, 4);
        assert_eq!(
            report.cases,
            CaseCounts {
                untouched: 1,
                incoming: 1,
                passing: 0,
                outgoing: 1,
                internal: 1,
            }
        );
    }

    #[test]
    fn boxless_identity_yields_a_passing_wire() {
        let mut host = WiringDiagram::new(port_types(&["x"]), port_types(&["x"]), Mode::Strict);
        let t = host.add_box(DiagramBox::new("t", port_types(&["x"]), port_types(&["x"])));
        host.add_wire(Wire::new((1, 1), (t, 1))).unwrap();
        host.add_wire(Wire::new((t, 1), (2, 1))).unwrap();
        let mut sub = WiringDiagram::new(port_types(&["x"]), port_types(&["x"]), Mode::Strict);
        sub.add_wire(Wire::new((1, 1), (2, 1))).unwrap();
        let report = check_substitution(&host, t, &sub).unwrap();
        assert_eq!(report.boxes, 0);
        assert_eq!(report.wires, 1);
        assert_eq!(
            report.cases,
            CaseCounts {
                untouched: 0,
                incoming: 0,
                passing: 1,
                outgoing: 0,
                internal: 0,
            }
        );
    }

    #[test]
    fn mismatched_signature_is_reported_by_the_graph_engine() {
        let host = series("x", "y", "z", "f", "g");
        let sub = series("x", "w", "z", "a", "b");
        let err = check_substitution(&host, 3, &sub).unwrap_err();
        assert!(matches!(
            err,
            OracleError::Operad(OperadError::SignatureMismatch { target: 3, .. })
        ));
    }

    #[test]
    fn unknown_target_is_rejected() {
        let host = series("x", "y", "z", "f", "g");
        let sub = series("x", "w", "y", "a", "b");
        let err = check_substitution(&host, 9, &sub).unwrap_err();
        assert!(matches!(
            err,
            OracleError::Operad(OperadError::DanglingRef { vertex: 9 })
        ));
    }

    #[test]
    fn random_pairs_agree() {
        let cfg = GenConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let host = random_diagram(&mut rng, &cfg);
            let slot = rng.random_range(0..host.box_count());
            let v = host.box_ids().nth(slot).unwrap();
            let b = host.get_box(v).unwrap().clone();
            let sub = random_diagram_with_signature(&mut rng, &cfg, &b.inputs, &b.outputs);
            let report = check_substitution(&host, v, &sub).unwrap();
            let spread = report.cases;
            assert_eq!(
                report.wires,
                spread.untouched + spread.incoming + spread.passing + spread.outgoing + spread.internal
            );
        }
    }
}
