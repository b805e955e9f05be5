//! Wiring diagrams as mutable combinatorial data.
//!
//! A diagram is an outer box (its `inputs`/`outputs` port lists), a dense list
//! of inner boxes, and a multiset of wires. Wires run from a *source* port
//! (an outer input or an inner box output) to a *target* port (an inner box
//! input or an outer output). Two vertex ids are reserved: [`INPUT_ID`] (1)
//! exposes the outer inputs as source ports and [`OUTPUT_ID`] (2) exposes the
//! outer outputs as target ports; inner boxes occupy ids 3..n+2, always
//! consecutively.
//!
//! A simple digraph on the vertices is maintained alongside the wires (edge
//! (u, v) iff some wire runs u to v) and answers neighbor and reachability
//! queries. The digraph restricted to inner boxes must stay acyclic; this is
//! what makes substitution well defined.
//!
//! Two usage modes share the representation. In [`Mode::Strict`] every port
//! carries exactly one wire (diagrams are spans of bijections) and `add_wire`
//! rejects occupied ports and cycles eagerly. In [`Mode::General`] any wire
//! multiplicity is allowed and cycles are only reported by [`validate`],
//! which permits the transient states that arise mid-substitution.
//!
//! [`validate`]: WiringDiagram::validate

mod graph;
mod json;

pub use json::JsonError;

use graph::DiGraph;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

/// Vertex id exposing the outer input ports (as wire sources).
pub const INPUT_ID: VertexId = 1;
/// Vertex id exposing the outer output ports (as wire targets).
pub const OUTPUT_ID: VertexId = 2;

/// Dense vertex id: 1 and 2 are the outer boundary, inner boxes are 3..n+2.
pub type VertexId = usize;

/// A port type drawn from the ambient type universe.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PortType(pub String);

impl fmt::Debug for PortType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

impl PortType {
    pub fn new(name: impl Into<String>) -> Self {
        PortType(name.into())
    }
}

impl fmt::Display for PortType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for PortType {
    fn from(name: &str) -> Self {
        PortType(name.to_owned())
    }
}

/// Convenience constructor for port type lists.
pub fn port_types(names: &[&str]) -> Vec<PortType> {
    names.iter().copied().map(PortType::from).collect()
}

/// An inner box: a label plus ordered, typed input and output ports.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiagramBox {
    pub value: String,
    pub inputs: Vec<PortType>,
    pub outputs: Vec<PortType>,
}

impl DiagramBox {
    pub fn new(value: impl Into<String>, inputs: Vec<PortType>, outputs: Vec<PortType>) -> Self {
        DiagramBox {
            value: value.into(),
            inputs,
            outputs,
        }
    }
}

/// A port reference: vertex id plus 1-based port index.
///
/// Whether the index points into a box's input or output list depends on the
/// role the reference plays: as a wire source it names an output port (or an
/// outer input, for vertex 1), as a wire target an input port (or an outer
/// output, for vertex 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PortRef {
    pub vertex: VertexId,
    pub port: usize,
}

impl PortRef {
    pub fn new(vertex: VertexId, port: usize) -> Self {
        PortRef { vertex, port }
    }
}

impl From<(VertexId, usize)> for PortRef {
    fn from((vertex, port): (VertexId, usize)) -> Self {
        PortRef { vertex, port }
    }
}

impl fmt::Display for PortRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.vertex, self.port)
    }
}

/// A directed wire between two ports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Wire {
    pub source: PortRef,
    pub target: PortRef,
}

impl Wire {
    pub fn new(source: impl Into<PortRef>, target: impl Into<PortRef>) -> Self {
        Wire {
            source: source.into(),
            target: target.into(),
        }
    }
}

impl fmt::Display for Wire {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.source, self.target)
    }
}

/// Wiring discipline; see the module docs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Strict,
    General,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Strict => "strict",
            Mode::General => "general",
        })
    }
}

/// Which side of a vertex a port sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PortRole {
    Source,
    Target,
}

impl fmt::Display for PortRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PortRole::Source => "source",
            PortRole::Target => "target",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("type mismatch on wire {src}->{tgt}: source has type {src_type}, target has type {tgt_type}")]
    TypeMismatch {
        src: PortRef,
        tgt: PortRef,
        src_type: PortType,
        tgt_type: PortType,
    },
    #[error("{role} port {port} already has a wire")]
    PortOccupied { port: PortRef, role: PortRole },
    #[error("dangling reference to vertex {vertex} port {port}")]
    DanglingRef { vertex: VertexId, port: usize },
    #[error("wire {src}->{tgt} would create a cycle among inner boxes")]
    CycleCreated { src: PortRef, tgt: PortRef },
}

/// One violation found by [`WiringDiagram::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Wire endpoint types disagree.
    WireTypeMismatch {
        wire: Wire,
        source_type: PortType,
        target_type: PortType,
    },
    /// Wire endpoint does not resolve to a port of the right role.
    WireDangling { wire: Wire },
    /// Strict mode only: a port with wire count != 1.
    PortOccupancy {
        port: PortRef,
        role: PortRole,
        count: usize,
    },
    /// The inner boxes admit no progress order; one witness cycle.
    Cycle { witness: Vec<VertexId> },
    /// Digraph edges out of sync with the wire multiset.
    EdgeDesync {
        missing: Vec<(VertexId, VertexId)>,
        extra: Vec<(VertexId, VertexId)>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WireTypeMismatch {
                wire,
                source_type,
                target_type,
            } => write!(
                f,
                "wire {wire}: source type {source_type} does not match target type {target_type}"
            ),
            Violation::WireDangling { wire } => write!(f, "wire {wire}: dangling port reference"),
            Violation::PortOccupancy { port, role, count } => {
                write!(f, "{role} port {port} has {count} wires, expected exactly 1")
            }
            Violation::Cycle { witness } => {
                let cycle = witness
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" -> ");
                write!(f, "inner boxes form a cycle: {cycle} -> (repeat)")
            }
            Violation::EdgeDesync { missing, extra } => {
                write!(f, "digraph out of sync: missing {missing:?}, extra {extra:?}")
            }
        }
    }
}

/// Outcome of a full validity check; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// An acyclic wiring diagram; see the module docs for the data model.
#[derive(Debug, Clone)]
pub struct WiringDiagram {
    inputs: Vec<PortType>,
    outputs: Vec<PortType>,
    boxes: Vec<DiagramBox>,
    wires: Vec<Wire>,
    graph: DiGraph,
    mode: Mode,
}

impl WiringDiagram {
    /// Empty diagram with the given outer boundary.
    pub fn new(inputs: Vec<PortType>, outputs: Vec<PortType>, mode: Mode) -> Self {
        WiringDiagram {
            inputs,
            outputs,
            boxes: Vec::new(),
            wires: Vec::new(),
            graph: DiGraph::with_vertices(2),
            mode,
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn inputs(&self) -> &[PortType] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[PortType] {
        &self.outputs
    }

    pub fn box_count(&self) -> usize {
        self.boxes.len()
    }

    /// Inner box vertex ids, in order: 3..box_count()+2.
    pub fn box_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        3..3 + self.boxes.len()
    }

    pub fn get_box(&self, v: VertexId) -> Option<&DiagramBox> {
        if v >= 3 {
            self.boxes.get(v - 3)
        } else {
            None
        }
    }

    /// Inner boxes paired with their vertex ids.
    pub fn boxes(&self) -> impl Iterator<Item = (VertexId, &DiagramBox)> {
        self.boxes.iter().enumerate().map(|(k, b)| (k + 3, b))
    }

    pub fn wires(&self) -> &[Wire] {
        &self.wires
    }

    fn contains_vertex(&self, v: VertexId) -> bool {
        v == INPUT_ID || v == OUTPUT_ID || (v >= 3 && v < 3 + self.boxes.len())
    }

    /// Type of a port in source role: an outer input or a box output.
    pub fn source_type(&self, p: PortRef) -> Result<&PortType, DiagramError> {
        let dangling = DiagramError::DanglingRef {
            vertex: p.vertex,
            port: p.port,
        };
        let list: &[PortType] = match p.vertex {
            INPUT_ID => &self.inputs,
            OUTPUT_ID => return Err(dangling),
            v => &self.get_box(v).ok_or(dangling.clone())?.outputs,
        };
        if p.port >= 1 && p.port <= list.len() {
            Ok(&list[p.port - 1])
        } else {
            Err(dangling)
        }
    }

    /// Type of a port in target role: a box input or an outer output.
    pub fn target_type(&self, p: PortRef) -> Result<&PortType, DiagramError> {
        let dangling = DiagramError::DanglingRef {
            vertex: p.vertex,
            port: p.port,
        };
        let list: &[PortType] = match p.vertex {
            OUTPUT_ID => &self.outputs,
            INPUT_ID => return Err(dangling),
            v => &self.get_box(v).ok_or(dangling.clone())?.inputs,
        };
        if p.port >= 1 && p.port <= list.len() {
            Ok(&list[p.port - 1])
        } else {
            Err(dangling)
        }
    }

    /// Appends an inner box and returns its vertex id.
    pub fn add_box(&mut self, b: DiagramBox) -> VertexId {
        self.boxes.push(b);
        self.graph.add_vertex()
    }

    /// Adds a wire after checking it resolves, types match, and (strict mode)
    /// its ports are free and it does not close a cycle among inner boxes.
    pub fn add_wire(&mut self, w: Wire) -> Result<(), DiagramError> {
        let src_ty = self.source_type(w.source)?.clone();
        let tgt_ty = self.target_type(w.target)?.clone();
        if src_ty != tgt_ty {
            return Err(DiagramError::TypeMismatch {
                src: w.source,
                tgt: w.target,
                src_type: src_ty,
                tgt_type: tgt_ty,
            });
        }
        if self.mode == Mode::Strict {
            if self.wires.iter().any(|x| x.source == w.source) {
                return Err(DiagramError::PortOccupied {
                    port: w.source,
                    role: PortRole::Source,
                });
            }
            if self.wires.iter().any(|x| x.target == w.target) {
                return Err(DiagramError::PortOccupied {
                    port: w.target,
                    role: PortRole::Target,
                });
            }
            if w.source.vertex >= 3 && w.target.vertex >= 3 {
                let closes_cycle = w.source.vertex == w.target.vertex
                    || self.graph.reaches(w.target.vertex, w.source.vertex);
                if closes_cycle {
                    return Err(DiagramError::CycleCreated {
                        src: w.source,
                        tgt: w.target,
                    });
                }
            }
        }
        self.push_wire_unchecked(w);
        Ok(())
    }

    /// Inserts a wire with no checks beyond keeping the digraph in sync.
    /// Substitution uses this for its transient states.
    pub(crate) fn push_wire_unchecked(&mut self, w: Wire) {
        if self.contains_vertex(w.source.vertex) && self.contains_vertex(w.target.vertex) {
            self.graph.add_edge(w.source.vertex, w.target.vertex);
        }
        self.wires.push(w);
    }

    /// Removes the given inner boxes, all wires incident to them, and
    /// renumbers the survivors in an order-preserving way (box ids stay the
    /// consecutive range 3..n+2; vertices 1 and 2 are untouched).
    pub fn remove_boxes(&mut self, ids: &BTreeSet<VertexId>) -> Result<(), DiagramError> {
        for &v in ids {
            if v < 3 || self.get_box(v).is_none() {
                return Err(DiagramError::DanglingRef { vertex: v, port: 0 });
            }
        }
        let mut renumber: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        renumber.insert(INPUT_ID, INPUT_ID);
        renumber.insert(OUTPUT_ID, OUTPUT_ID);
        let mut next = 3;
        for v in self.box_ids() {
            if !ids.contains(&v) {
                renumber.insert(v, next);
                next += 1;
            }
        }
        self.boxes = self
            .boxes
            .iter()
            .enumerate()
            .filter(|(k, _)| !ids.contains(&(k + 3)))
            .map(|(_, b)| b.clone())
            .collect();
        self.wires = self
            .wires
            .iter()
            .filter(|w| !ids.contains(&w.source.vertex) && !ids.contains(&w.target.vertex))
            .map(|w| Wire {
                source: PortRef::new(renumber[&w.source.vertex], w.source.port),
                target: PortRef::new(renumber[&w.target.vertex], w.target.port),
            })
            .collect();
        self.rebuild_graph();
        Ok(())
    }

    fn rebuild_graph(&mut self) {
        let mut g = DiGraph::with_vertices(2 + self.boxes.len());
        for w in &self.wires {
            if self.contains_vertex(w.source.vertex) && self.contains_vertex(w.target.vertex) {
                g.add_edge(w.source.vertex, w.target.vertex);
            }
        }
        self.graph = g;
    }

    /// Neighbor vertex ids of `v` in the underlying digraph.
    pub fn neighbors(&self, v: VertexId, role: PortRole) -> Result<BTreeSet<VertexId>, DiagramError> {
        if !self.contains_vertex(v) {
            return Err(DiagramError::DanglingRef { vertex: v, port: 0 });
        }
        Ok(match role {
            PortRole::Source => self.graph.out_neighbors(v).clone(),
            PortRole::Target => self.graph.in_neighbors(v).clone(),
        })
    }

    /// True if at least one wire runs from vertex `u` to vertex `v`.
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.graph.has_edge(u, v)
    }

    /// Checks every invariant against the given mode and reports all
    /// violations found, including one witness cycle if any exists.
    pub fn validate(&self, mode: Mode) -> ValidationReport {
        let mut violations = Vec::new();

        for w in &self.wires {
            match (self.source_type(w.source), self.target_type(w.target)) {
                (Ok(s), Ok(t)) => {
                    if s != t {
                        violations.push(Violation::WireTypeMismatch {
                            wire: *w,
                            source_type: s.clone(),
                            target_type: t.clone(),
                        });
                    }
                }
                _ => violations.push(Violation::WireDangling { wire: *w }),
            }
        }

        if mode == Mode::Strict {
            let mut src_counts: BTreeMap<PortRef, usize> = BTreeMap::new();
            let mut tgt_counts: BTreeMap<PortRef, usize> = BTreeMap::new();
            for p in 1..=self.inputs.len() {
                src_counts.insert(PortRef::new(INPUT_ID, p), 0);
            }
            for p in 1..=self.outputs.len() {
                tgt_counts.insert(PortRef::new(OUTPUT_ID, p), 0);
            }
            for (v, b) in self.boxes() {
                for p in 1..=b.outputs.len() {
                    src_counts.insert(PortRef::new(v, p), 0);
                }
                for p in 1..=b.inputs.len() {
                    tgt_counts.insert(PortRef::new(v, p), 0);
                }
            }
            for w in &self.wires {
                if let Some(c) = src_counts.get_mut(&w.source) {
                    *c += 1;
                }
                if let Some(c) = tgt_counts.get_mut(&w.target) {
                    *c += 1;
                }
            }
            for (port, count) in src_counts {
                if count != 1 {
                    violations.push(Violation::PortOccupancy {
                        port,
                        role: PortRole::Source,
                        count,
                    });
                }
            }
            for (port, count) in tgt_counts {
                if count != 1 {
                    violations.push(Violation::PortOccupancy {
                        port,
                        role: PortRole::Target,
                        count,
                    });
                }
            }
        }

        let mut expected = DiGraph::with_vertices(2 + self.boxes.len());
        for w in &self.wires {
            if self.contains_vertex(w.source.vertex) && self.contains_vertex(w.target.vertex) {
                expected.add_edge(w.source.vertex, w.target.vertex);
            }
        }
        let stored: BTreeSet<_> = self.graph.edges().into_iter().collect();
        let recomputed: BTreeSet<_> = expected.edges().into_iter().collect();
        if stored != recomputed {
            violations.push(Violation::EdgeDesync {
                missing: recomputed.difference(&stored).copied().collect(),
                extra: stored.difference(&recomputed).copied().collect(),
            });
        }

        if let Some(witness) = expected.find_cycle_among(3) {
            violations.push(Violation::Cycle { witness });
        }

        ValidationReport { violations }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_box_series() -> WiringDiagram {
        let mut d = WiringDiagram::new(port_types(&["x"]), port_types(&["z"]), Mode::Strict);
        let f = d.add_box(DiagramBox::new("f", port_types(&["x"]), port_types(&["y"])));
        let g = d.add_box(DiagramBox::new("g", port_types(&["y"]), port_types(&["z"])));
        assert_eq!((f, g), (3, 4));
        d.add_wire(Wire::new((1, 1), (3, 1))).unwrap();
        d.add_wire(Wire::new((3, 1), (4, 1))).unwrap();
        d.add_wire(Wire::new((4, 1), (2, 1))).unwrap();
        d
    }

    #[test]
    fn build_two_box_series() {
        let d = two_box_series();
        assert_eq!(d.box_count(), 2);
        assert_eq!(d.get_box(3).unwrap().value, "f");
        assert_eq!(d.get_box(4).unwrap().value, "g");
        assert!(d.validate(Mode::Strict).is_valid());
    }

    #[test]
    fn neighbors_follow_wires() {
        let d = two_box_series();
        let out_of_input: Vec<_> = d.neighbors(INPUT_ID, PortRole::Source).unwrap().into_iter().collect();
        assert_eq!(out_of_input, vec![3]);
        let into_output: Vec<_> = d.neighbors(OUTPUT_ID, PortRole::Target).unwrap().into_iter().collect();
        assert_eq!(into_output, vec![4]);
        assert!(d.neighbors(9, PortRole::Source).is_err());
    }

    #[test]
    fn add_wire_rejects_type_mismatch() {
        let mut d = two_box_series();
        let err = d.add_wire(Wire::new((1, 1), (4, 1))).unwrap_err();
        assert!(matches!(err, DiagramError::TypeMismatch { .. }));
    }

    #[test]
    fn add_wire_rejects_occupied_port_in_strict_mode() {
        let mut d = WiringDiagram::new(port_types(&["x", "x"]), port_types(&[]), Mode::Strict);
        d.add_box(DiagramBox::new("f", port_types(&["x"]), port_types(&[])));
        d.add_wire(Wire::new((1, 1), (3, 1))).unwrap();
        let err = d.add_wire(Wire::new((1, 2), (3, 1))).unwrap_err();
        assert_eq!(
            err,
            DiagramError::PortOccupied {
                port: PortRef::new(3, 1),
                role: PortRole::Target,
            }
        );
    }

    #[test]
    fn general_mode_allows_fanout() {
        let mut d = WiringDiagram::new(port_types(&["x"]), port_types(&["x", "x"]), Mode::General);
        d.add_wire(Wire::new((1, 1), (2, 1))).unwrap();
        d.add_wire(Wire::new((1, 1), (2, 2))).unwrap();
        assert!(d.validate(Mode::General).is_valid());
        let strict = d.validate(Mode::Strict);
        assert!(!strict.is_valid());
        assert!(strict
            .violations
            .iter()
            .any(|v| matches!(v, Violation::PortOccupancy { count: 2, .. })));
    }

    #[test]
    fn self_loop_rejected_eagerly_in_strict_mode() {
        let mut d = WiringDiagram::new(port_types(&[]), port_types(&[]), Mode::Strict);
        d.add_box(DiagramBox::new("f", port_types(&["x"]), port_types(&["x"])));
        let err = d.add_wire(Wire::new((3, 1), (3, 1))).unwrap_err();
        assert!(matches!(err, DiagramError::CycleCreated { .. }));
    }

    #[test]
    fn two_box_loop_rejected_eagerly_in_strict_mode() {
        let mut d = WiringDiagram::new(port_types(&[]), port_types(&[]), Mode::Strict);
        d.add_box(DiagramBox::new("t", port_types(&["b"]), port_types(&["a"])));
        d.add_box(DiagramBox::new("u", port_types(&["a"]), port_types(&["b"])));
        d.add_wire(Wire::new((3, 1), (4, 1))).unwrap();
        let err = d.add_wire(Wire::new((4, 1), (3, 1))).unwrap_err();
        assert!(matches!(err, DiagramError::CycleCreated { .. }));
    }

    #[test]
    fn two_box_loop_reported_lazily_in_general_mode() {
        let mut d = WiringDiagram::new(port_types(&[]), port_types(&[]), Mode::General);
        d.add_box(DiagramBox::new("t", port_types(&["b"]), port_types(&["a"])));
        d.add_box(DiagramBox::new("u", port_types(&["a"]), port_types(&["b"])));
        d.add_wire(Wire::new((3, 1), (4, 1))).unwrap();
        d.add_wire(Wire::new((4, 1), (3, 1))).unwrap();
        let report = d.validate(Mode::General);
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Cycle { witness } if witness == &vec![3, 4])));
    }

    #[test]
    fn unwired_port_is_strict_only_violation() {
        let mut d = WiringDiagram::new(port_types(&[]), port_types(&[]), Mode::General);
        d.add_box(DiagramBox::new("f", port_types(&["x"]), port_types(&[])));
        assert!(d.validate(Mode::General).is_valid());
        let strict = d.validate(Mode::Strict);
        assert_eq!(
            strict.violations,
            vec![Violation::PortOccupancy {
                port: PortRef::new(3, 1),
                role: PortRole::Target,
                count: 0,
            }]
        );
    }

    #[test]
    fn remove_boxes_renumbers_and_drops_incident_wires() {
        let mut d = two_box_series();
        d.remove_boxes(&BTreeSet::from([3])).unwrap();
        assert_eq!(d.box_count(), 1);
        assert_eq!(d.get_box(3).unwrap().value, "g");
        assert_eq!(d.wires(), &[Wire::new((3, 1), (2, 1))]);
        assert!(d.neighbors(INPUT_ID, PortRole::Source).unwrap().is_empty());
    }

    #[test]
    fn remove_boxes_rejects_outer_vertices_and_unknown_ids() {
        let mut d = two_box_series();
        assert!(d.remove_boxes(&BTreeSet::from([INPUT_ID])).is_err());
        assert!(d.remove_boxes(&BTreeSet::from([7])).is_err());
    }

    #[test]
    fn dangling_wire_rejected() {
        let mut d = two_box_series();
        let err = d.add_wire(Wire::new((3, 5), (2, 1))).unwrap_err();
        assert_eq!(err, DiagramError::DanglingRef { vertex: 3, port: 5 });
        // Vertex 2 cannot act as a source, nor vertex 1 as a target.
        assert!(d.add_wire(Wire::new((2, 1), (2, 1))).is_err());
        assert!(d.add_wire(Wire::new((1, 1), (1, 1))).is_err());
    }
}
