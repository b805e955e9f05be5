//! Operadic substitution: splicing diagrams into boxes of a host diagram.
//!
//! [`substitute`] is the workhorse. It copies the host, appends every
//! substituted diagram's boxes, extends each substituted wire across the
//! dissolving box boundary, and finally removes the substituted boxes, which
//! implicitly drops the wires that only existed to carry connections across
//! that boundary. A wire of a substituted diagram falls into one of four
//! cases by which endpoints lie on its outer boundary:
//!
//! 1. both (passing): each host wire in, paired with each host wire out,
//!    becomes one fused wire;
//! 2. source only (incoming): each host wire in is extended to the wire's
//!    inner target;
//! 3. target only (outgoing): the wire's inner source is extended along each
//!    host wire out;
//! 4. neither (internal): copied with its boxes.
//!
//! The inner loops run over every incident host wire, so fan-out multiplies;
//! in strict mode every port has exactly one wire and each loop body runs
//! exactly once. Because lookups see wires added for other target boxes, the
//! simultaneous substitution commutes with doing targets one at a time.
//!
//! [`ocompose`] (substitute everywhere at once) and [`ocompose_at`] (at one
//! box) are thin wrappers, and [`inert`] builds the identity diagram for a
//! box signature, the unit for both.

use crate::diagram::{
    DiagramBox, Mode, PortRef, PortType, VertexId, Wire, WiringDiagram, INPUT_ID, OUTPUT_ID,
};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OperadError {
    #[error("box {target} expects signature {expected_inputs:?} -> {expected_outputs:?}, substituted diagram has {actual_inputs:?} -> {actual_outputs:?}")]
    SignatureMismatch {
        target: VertexId,
        expected_inputs: Vec<PortType>,
        expected_outputs: Vec<PortType>,
        actual_inputs: Vec<PortType>,
        actual_outputs: Vec<PortType>,
    },
    #[error("substitution target {vertex} is not an inner box")]
    DanglingRef { vertex: VertexId },
    #[error("host diagram is in {host} mode but a substituted diagram is in {sub} mode")]
    ModeMismatch { host: Mode, sub: Mode },
    #[error("expected {expected} diagrams, one per inner box, got {actual}")]
    ArityMismatch { expected: usize, actual: usize },
}

/// One step of a fused wire's traversal, for provenance tracking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PathAtom {
    /// Index into the host diagram's wire list.
    Host(usize),
    /// Target vertex in the host and index into that diagram's wire list.
    Sub(VertexId, usize),
}

/// Where each result wire came from and where each box ended up.
#[derive(Debug, Clone, Default)]
pub struct SubstitutionTrace {
    /// Aligned with the result's wire list: the left-to-right traversal path
    /// of host and substituted wires that fused into each result wire.
    pub wire_paths: Vec<Vec<PathAtom>>,
    /// (target vertex, box vertex within that substituted diagram) -> result vertex.
    pub box_map: BTreeMap<(VertexId, VertexId), VertexId>,
    /// Host box vertex (not substituted) -> result vertex.
    pub host_box_map: BTreeMap<VertexId, VertexId>,
}

/// Simultaneously substitutes a diagram into each target box.
///
/// Targets must be distinct inner boxes of `d` (the map enforces
/// distinctness) and each substituted diagram's outer boundary must equal the
/// target box's port lists exactly. The result is in the same mode as the
/// inputs and valid whenever they are.
pub fn substitute(
    d: &WiringDiagram,
    targets: &BTreeMap<VertexId, &WiringDiagram>,
) -> Result<WiringDiagram, OperadError> {
    substitute_traced(d, targets).map(|(result, _)| result)
}

/// [`substitute`] plus a provenance trace; see [`SubstitutionTrace`].
pub fn substitute_traced(
    d: &WiringDiagram,
    targets: &BTreeMap<VertexId, &WiringDiagram>,
) -> Result<(WiringDiagram, SubstitutionTrace), OperadError> {
    for (&v, sub) in targets {
        let b = d
            .get_box(v)
            .ok_or(OperadError::DanglingRef { vertex: v })?;
        if sub.mode() != d.mode() {
            return Err(OperadError::ModeMismatch {
                host: d.mode(),
                sub: sub.mode(),
            });
        }
        if sub.inputs() != b.inputs || sub.outputs() != b.outputs {
            return Err(OperadError::SignatureMismatch {
                target: v,
                expected_inputs: b.inputs.clone(),
                expected_outputs: b.outputs.clone(),
                actual_inputs: sub.inputs().to_vec(),
                actual_outputs: sub.outputs().to_vec(),
            });
        }
    }

    let mut result = d.clone();
    let mut paths: Vec<Vec<PathAtom>> = (0..d.wires().len()).map(|i| vec![PathAtom::Host(i)]).collect();

    // Step 2: bring in every substituted diagram's boxes.
    let mut box_map: BTreeMap<(VertexId, VertexId), VertexId> = BTreeMap::new();
    for (&v, sub) in targets {
        for (w, b) in sub.boxes() {
            let fresh = result.add_box(b.clone());
            box_map.insert((v, w), fresh);
        }
    }

    // Step 3: extend each substituted wire across the target's boundary.
    for (&v, sub) in targets {
        let map_port = |p: PortRef| PortRef::new(box_map[&(v, p.vertex)], p.port);
        for (j, w) in sub.wires().iter().enumerate() {
            let step = PathAtom::Sub(v, j);
            let src_outer = w.source.vertex == INPUT_ID;
            let tgt_outer = w.target.vertex == OUTPUT_ID;

            // Host-side wires incident to the dissolving boundary. Snapshots
            // taken before pushing; wires added here are never incident to v
            // itself, so later lookups for this target are unaffected.
            let incoming: Vec<(Wire, Vec<PathAtom>)> = if src_outer {
                result
                    .wires()
                    .iter()
                    .zip(&paths)
                    .filter(|(x, _)| x.target == PortRef::new(v, w.source.port))
                    .map(|(x, p)| (*x, p.clone()))
                    .collect()
            } else {
                Vec::new()
            };
            let outgoing: Vec<(Wire, Vec<PathAtom>)> = if tgt_outer {
                result
                    .wires()
                    .iter()
                    .zip(&paths)
                    .filter(|(x, _)| x.source == PortRef::new(v, w.target.port))
                    .map(|(x, p)| (*x, p.clone()))
                    .collect()
            } else {
                Vec::new()
            };

            match (src_outer, tgt_outer) {
                (true, true) => {
                    for (in_w, in_p) in &incoming {
                        for (out_w, out_p) in &outgoing {
                            let mut path = in_p.clone();
                            path.push(step);
                            path.extend(out_p.iter().copied());
                            result.push_wire_unchecked(Wire::new(in_w.source, out_w.target));
                            paths.push(path);
                        }
                    }
                }
                (true, false) => {
                    for (in_w, in_p) in &incoming {
                        let mut path = in_p.clone();
                        path.push(step);
                        result.push_wire_unchecked(Wire::new(in_w.source, map_port(w.target)));
                        paths.push(path);
                    }
                }
                (false, true) => {
                    for (out_w, out_p) in &outgoing {
                        let mut path = vec![step];
                        path.extend(out_p.iter().copied());
                        result.push_wire_unchecked(Wire::new(map_port(w.source), out_w.target));
                        paths.push(path);
                    }
                }
                (false, false) => {
                    result.push_wire_unchecked(Wire::new(map_port(w.source), map_port(w.target)));
                    paths.push(vec![step]);
                }
            }
        }
    }

    // Step 4: dissolve the targets. Wires incident to them, including the
    // extraneous ones from step 3, go with them; survivors keep their order.
    let removed: BTreeSet<VertexId> = targets.keys().copied().collect();
    let surviving_paths: Vec<Vec<PathAtom>> = result
        .wires()
        .iter()
        .zip(paths)
        .filter(|(w, _)| !removed.contains(&w.source.vertex) && !removed.contains(&w.target.vertex))
        .map(|(_, p)| p)
        .collect();
    result
        .remove_boxes(&removed)
        .expect("targets were checked to be inner boxes");

    // Order-preserving renumbering, recomputed for the trace.
    let renumber = |old: VertexId| -> VertexId {
        3 + (3..old).filter(|u| !removed.contains(u)).count()
    };
    let trace = SubstitutionTrace {
        wire_paths: surviving_paths,
        box_map: box_map
            .into_iter()
            .map(|(k, old)| (k, renumber(old)))
            .collect(),
        host_box_map: d
            .box_ids()
            .filter(|v| !removed.contains(v))
            .map(|v| (v, renumber(v)))
            .collect(),
    };
    debug_assert!(result.validate(result.mode()).is_valid() || !d.validate(d.mode()).is_valid());
    Ok((result, trace))
}

/// Substitutes one diagram into every inner box at once, in box order.
pub fn ocompose(d: &WiringDiagram, subs: &[&WiringDiagram]) -> Result<WiringDiagram, OperadError> {
    if subs.len() != d.box_count() {
        return Err(OperadError::ArityMismatch {
            expected: d.box_count(),
            actual: subs.len(),
        });
    }
    let targets: BTreeMap<VertexId, &WiringDiagram> =
        d.box_ids().zip(subs.iter().copied()).collect();
    substitute(d, &targets)
}

/// Substitutes into the i-th inner box (1-based box index, so vertex i+2).
pub fn ocompose_at(
    d: &WiringDiagram,
    i: usize,
    sub: &WiringDiagram,
) -> Result<WiringDiagram, OperadError> {
    if i == 0 || i > d.box_count() {
        return Err(OperadError::DanglingRef { vertex: i + 2 });
    }
    substitute(d, &BTreeMap::from([(i + 2, sub)]))
}

/// The identity diagram on a box's signature: one inner box with the same
/// ports as the outer boundary, wired straight through. Substituting it into
/// a box leaves the host unchanged up to isomorphism, and substituting into
/// its single box recovers the substituted diagram.
pub fn inert(b: &DiagramBox) -> WiringDiagram {
    let mut d = WiringDiagram::new(b.inputs.clone(), b.outputs.clone(), Mode::Strict);
    let v = d.add_box(b.clone());
    for p in 1..=b.inputs.len() {
        d.add_wire(Wire::new((INPUT_ID, p), (v, p)))
            .expect("straight-through input wire is always valid");
    }
    for p in 1..=b.outputs.len() {
        d.add_wire(Wire::new((v, p), (OUTPUT_ID, p)))
            .expect("straight-through output wire is always valid");
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::port_types;

    fn xs(n: usize) -> Vec<PortType> {
        (0..n).map(|_| PortType::from("x")).collect()
    }

    /// Exact structural equality up to wire order.
    fn assert_same_diagram(a: &WiringDiagram, b: &WiringDiagram) {
        assert_eq!(a.inputs(), b.inputs());
        assert_eq!(a.outputs(), b.outputs());
        assert_eq!(
            a.boxes().collect::<Vec<_>>(),
            b.boxes().collect::<Vec<_>>()
        );
        let mut wa = a.wires().to_vec();
        let mut wb = b.wires().to_vec();
        wa.sort();
        wb.sort();
        assert_eq!(wa, wb);
    }

    /// Host: blue (3 in, 2 out) feeding green (2 in, 1 out).
    fn nesting_host() -> WiringDiagram {
        let mut d = WiringDiagram::new(xs(4), xs(2), Mode::Strict);
        d.add_box(DiagramBox::new("blue", xs(3), xs(2)));
        d.add_box(DiagramBox::new("green", xs(2), xs(1)));
        for (s, t) in [
            ((1, 1), (3, 1)),
            ((1, 2), (3, 2)),
            ((1, 3), (3, 3)),
            ((1, 4), (4, 2)),
            ((3, 1), (2, 1)),
            ((3, 2), (4, 1)),
            ((4, 1), (2, 2)),
        ] {
            d.add_wire(Wire::new(s, t)).unwrap();
        }
        d
    }

    /// Substituted for blue: red (3 in, 2 out) feeding two orange boxes.
    fn nesting_sub() -> WiringDiagram {
        let mut d = WiringDiagram::new(xs(3), xs(2), Mode::Strict);
        d.add_box(DiagramBox::new("red", xs(3), xs(2)));
        d.add_box(DiagramBox::new("orange", xs(1), xs(1)));
        d.add_box(DiagramBox::new("orange", xs(1), xs(1)));
        for (s, t) in [
            ((1, 1), (3, 1)),
            ((1, 2), (3, 2)),
            ((1, 3), (3, 3)),
            ((3, 1), (4, 1)),
            ((3, 2), (5, 1)),
            ((4, 1), (2, 1)),
            ((5, 1), (2, 2)),
        ] {
            d.add_wire(Wire::new(s, t)).unwrap();
        }
        d
    }

    #[test]
    fn nested_substitution_matches_hand_built_composite() {
        let composite = ocompose_at(&nesting_host(), 1, &nesting_sub()).unwrap();
        assert_eq!(composite.box_count(), 4);
        assert!(composite.validate(Mode::Strict).is_valid());

        // Green survives as 3; red and the oranges arrive as 4, 5, 6.
        let mut expected = WiringDiagram::new(xs(4), xs(2), Mode::Strict);
        expected.add_box(DiagramBox::new("green", xs(2), xs(1)));
        expected.add_box(DiagramBox::new("red", xs(3), xs(2)));
        expected.add_box(DiagramBox::new("orange", xs(1), xs(1)));
        expected.add_box(DiagramBox::new("orange", xs(1), xs(1)));
        for (s, t) in [
            ((1, 1), (4, 1)),
            ((1, 2), (4, 2)),
            ((1, 3), (4, 3)),
            ((1, 4), (3, 2)),
            ((4, 1), (5, 1)),
            ((4, 2), (6, 1)),
            ((5, 1), (2, 1)),
            ((6, 1), (3, 1)),
            ((3, 1), (2, 2)),
        ] {
            expected.add_wire(Wire::new(s, t)).unwrap();
        }
        assert_same_diagram(&composite, &expected);

        // The red box's second output reaches green's first input through
        // the one fused wire orange -> green.
        assert!(composite.has_edge(4, 6));
        assert!(composite.has_edge(6, 3));
        assert!(composite
            .wires()
            .iter()
            .any(|w| *w == Wire::new((6, 1), (3, 1))));
    }

    #[test]
    fn series_template_composes_generators() {
        // Host: two placeholder boxes in series, as the compose operation
        // builds; substituting single-generator diagrams yields the two-box
        // series diagram directly.
        let mut host = WiringDiagram::new(port_types(&["x"]), port_types(&["z"]), Mode::Strict);
        host.add_box(DiagramBox::new("@1", port_types(&["x"]), port_types(&["y"])));
        host.add_box(DiagramBox::new("@2", port_types(&["y"]), port_types(&["z"])));
        host.add_wire(Wire::new((1, 1), (3, 1))).unwrap();
        host.add_wire(Wire::new((3, 1), (4, 1))).unwrap();
        host.add_wire(Wire::new((4, 1), (2, 1))).unwrap();

        let f = inert(&DiagramBox::new("f", port_types(&["x"]), port_types(&["y"])));
        let g = inert(&DiagramBox::new("g", port_types(&["y"]), port_types(&["z"])));
        let composite = ocompose(&host, &[&f, &g]).unwrap();

        let mut expected = WiringDiagram::new(port_types(&["x"]), port_types(&["z"]), Mode::Strict);
        expected.add_box(DiagramBox::new("f", port_types(&["x"]), port_types(&["y"])));
        expected.add_box(DiagramBox::new("g", port_types(&["y"]), port_types(&["z"])));
        expected.add_wire(Wire::new((1, 1), (3, 1))).unwrap();
        expected.add_wire(Wire::new((3, 1), (4, 1))).unwrap();
        expected.add_wire(Wire::new((4, 1), (2, 1))).unwrap();
        assert_same_diagram(&composite, &expected);
    }

    #[test]
    fn signature_mismatch_is_rejected() {
        let host = nesting_host();
        let wrong = inert(&DiagramBox::new("w", xs(2), xs(2)));
        let err = substitute(&host, &BTreeMap::from([(3, &wrong)])).unwrap_err();
        assert!(matches!(err, OperadError::SignatureMismatch { target: 3, .. }));
    }

    #[test]
    fn unknown_target_is_rejected() {
        let host = nesting_host();
        let sub = nesting_sub();
        let err = substitute(&host, &BTreeMap::from([(9, &sub)])).unwrap_err();
        assert_eq!(err, OperadError::DanglingRef { vertex: 9 });
        assert!(ocompose_at(&host, 3, &sub).is_err());
    }

    #[test]
    fn ocompose_arity_checked() {
        let host = nesting_host();
        let sub = nesting_sub();
        assert!(matches!(
            ocompose(&host, &[&sub]),
            Err(OperadError::ArityMismatch {
                expected: 2,
                actual: 1
            })
        ));
    }

    #[test]
    fn trace_records_fused_paths() {
        let (result, trace) = substitute_traced(
            &nesting_host(),
            &BTreeMap::from([(3, &nesting_sub())]),
        )
        .unwrap();
        assert_eq!(trace.wire_paths.len(), result.wires().len());
        // The fused orange -> green wire traversed sub wire then host wire.
        let idx = result
            .wires()
            .iter()
            .position(|w| *w == Wire::new((6, 1), (3, 1)))
            .unwrap();
        assert_eq!(
            trace.wire_paths[idx],
            vec![PathAtom::Sub(3, 6), PathAtom::Host(5)]
        );
        assert_eq!(trace.host_box_map[&4], 3);
        assert_eq!(trace.box_map[&(3, 3)], 4);
        assert_eq!(trace.box_map[&(3, 5)], 6);
    }

    #[test]
    fn passing_wires_duplicate_along_fanout() {
        // General mode: the substituted diagram has one passing wire, the
        // host fans its target box's output to two places. The passing wire
        // fuses once per (in, out) pair.
        let mut host = WiringDiagram::new(xs(1), xs(2), Mode::General);
        host.add_box(DiagramBox::new("h", xs(1), xs(1)));
        host.add_wire(Wire::new((1, 1), (3, 1))).unwrap();
        host.add_wire(Wire::new((3, 1), (2, 1))).unwrap();
        host.add_wire(Wire::new((3, 1), (2, 2))).unwrap();

        let mut pass = WiringDiagram::new(xs(1), xs(1), Mode::General);
        pass.add_wire(Wire::new((1, 1), (2, 1))).unwrap();

        let result = ocompose_at(&host, 1, &pass).unwrap();
        assert_eq!(result.box_count(), 0);
        let mut wires = result.wires().to_vec();
        wires.sort();
        assert_eq!(
            wires,
            vec![Wire::new((1, 1), (2, 1)), Wire::new((1, 1), (2, 2))]
        );
    }
}
