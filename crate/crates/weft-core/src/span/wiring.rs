//! Wiring diagrams presented as span matrices.
//!
//! A diagram with outer boundary v and inner boxes t1..tn becomes a matrix
//! whose rows enumerate the source side (outer inputs, then each box's
//! outputs in box order) and whose columns enumerate the target side (each
//! box's inputs in box order, then outer outputs). Substitution is then a
//! 2x2 block-matrix computation over a reorganized basis split: the host
//! rows and columns not touching the filled slot on one side, the filler's
//! box ports on the other. The blocks land back in the flat layout with the
//! filler's boxes spliced in place of the slot, which keeps box order
//! aligned with the arity of the composite.

use super::algebra::{component, embed, mat_add, mat_mul, SpanMatrix};
use super::typed_set::{is_permutation_of_indices, TypedFiniteSet, WireName};
use super::SpanError;
use crate::diagram::{
    DiagramBox, Mode, PortRef, PortType, Violation, Wire, WiringDiagram, INPUT_ID, OUTPUT_ID,
};
use std::collections::{BTreeSet, VecDeque};
use std::ops::Range;

/// A box signature: typed input and output port sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedBox {
    inputs: TypedFiniteSet,
    outputs: TypedFiniteSet,
}

impl SignedBox {
    pub fn new(inputs: TypedFiniteSet, outputs: TypedFiniteSet) -> Self {
        SignedBox { inputs, outputs }
    }

    /// Ports named positionally "1", "2", ...
    pub fn from_types(inputs: &[PortType], outputs: &[PortType]) -> Self {
        SignedBox {
            inputs: TypedFiniteSet::positional(inputs),
            outputs: TypedFiniteSet::positional(outputs),
        }
    }

    pub fn inputs(&self) -> &TypedFiniteSet {
        &self.inputs
    }

    pub fn outputs(&self) -> &TypedFiniteSet {
        &self.outputs
    }

    /// Same shape and pointwise port types on both sides; names are ignored.
    pub fn matches(&self, other: &SignedBox) -> bool {
        self.inputs.types_match(&other.inputs) && self.outputs.types_match(&other.outputs)
    }
}

/// A port position in the span layout, all indices 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SpanPort {
    OuterIn(usize),
    OuterOut(usize),
    /// Box index, then port index into that box's inputs.
    BoxIn(usize, usize),
    /// Box index, then port index into that box's outputs.
    BoxOut(usize, usize),
}

fn source_basis(outer: &SignedBox, inner: &[SignedBox]) -> Result<TypedFiniteSet, SpanError> {
    let mut elems = Vec::new();
    for (name, ty) in outer.inputs.iter() {
        elems.push((format!("in.{name}"), ty.clone()));
    }
    for (k, b) in inner.iter().enumerate() {
        for (name, ty) in b.outputs.iter() {
            elems.push((format!("{}.out.{name}", k + 1), ty.clone()));
        }
    }
    TypedFiniteSet::new(elems)
}

fn target_basis(outer: &SignedBox, inner: &[SignedBox]) -> Result<TypedFiniteSet, SpanError> {
    let mut elems = Vec::new();
    for (k, b) in inner.iter().enumerate() {
        for (name, ty) in b.inputs.iter() {
            elems.push((format!("{}.in.{name}", k + 1), ty.clone()));
        }
    }
    for (name, ty) in outer.outputs.iter() {
        elems.push((format!("out.{name}"), ty.clone()));
    }
    TypedFiniteSet::new(elems)
}

fn dom_index(outer: &SignedBox, inner: &[SignedBox], port: SpanPort) -> Result<usize, SpanError> {
    match port {
        SpanPort::OuterIn(e) => {
            if e >= outer.inputs.len() {
                return Err(SpanError::IndexOutOfRange {
                    index: e,
                    len: outer.inputs.len(),
                });
            }
            Ok(e)
        }
        SpanPort::BoxOut(k, p) => {
            let b = inner.get(k).ok_or(SpanError::IndexOutOfRange {
                index: k,
                len: inner.len(),
            })?;
            if p >= b.outputs.len() {
                return Err(SpanError::IndexOutOfRange {
                    index: p,
                    len: b.outputs.len(),
                });
            }
            let start: usize = inner[..k].iter().map(|b| b.outputs.len()).sum();
            Ok(outer.inputs.len() + start + p)
        }
        other => Err(SpanError::BasisMismatch(format!(
            "{other:?} cannot be a wire source"
        ))),
    }
}

fn cod_index(outer: &SignedBox, inner: &[SignedBox], port: SpanPort) -> Result<usize, SpanError> {
    match port {
        SpanPort::BoxIn(k, p) => {
            let b = inner.get(k).ok_or(SpanError::IndexOutOfRange {
                index: k,
                len: inner.len(),
            })?;
            if p >= b.inputs.len() {
                return Err(SpanError::IndexOutOfRange {
                    index: p,
                    len: b.inputs.len(),
                });
            }
            let start: usize = inner[..k].iter().map(|b| b.inputs.len()).sum();
            Ok(start + p)
        }
        SpanPort::OuterOut(e) => {
            if e >= outer.outputs.len() {
                return Err(SpanError::IndexOutOfRange {
                    index: e,
                    len: outer.outputs.len(),
                });
            }
            let start: usize = inner.iter().map(|b| b.inputs.len()).sum();
            Ok(start + e)
        }
        other => Err(SpanError::BasisMismatch(format!(
            "{other:?} cannot be a wire target"
        ))),
    }
}

/// A wiring diagram in span form: outer boundary, inner box signatures, and
/// the wire matrix over the layout described in the module docs.
#[derive(Debug, Clone)]
pub struct WiringDiagramSpan {
    outer: SignedBox,
    inner: Vec<SignedBox>,
    matrix: SpanMatrix,
}

impl WiringDiagramSpan {
    pub fn new(
        outer: SignedBox,
        inner: Vec<SignedBox>,
        wires: Vec<(WireName, SpanPort, SpanPort)>,
    ) -> Result<Self, SpanError> {
        let rows = source_basis(&outer, &inner)?;
        let cols = target_basis(&outer, &inner)?;
        let mut entries = vec![vec![BTreeSet::new(); cols.len()]; rows.len()];
        let mut seen = BTreeSet::new();
        for (w, src, tgt) in wires {
            let i = dom_index(&outer, &inner, src)?;
            let j = cod_index(&outer, &inner, tgt)?;
            if !seen.insert(w.clone()) {
                return Err(SpanError::DuplicateWire(w));
            }
            entries[i][j].insert(w);
        }
        let matrix = SpanMatrix::from_entries(rows, cols, entries)?;
        Ok(WiringDiagramSpan {
            outer,
            inner,
            matrix,
        })
    }

    /// Wraps a prebuilt matrix; its bases must agree pointwise with the
    /// canonical layout for these boxes.
    pub fn from_flat(
        outer: SignedBox,
        inner: Vec<SignedBox>,
        matrix: SpanMatrix,
    ) -> Result<Self, SpanError> {
        let rows = source_basis(&outer, &inner)?;
        let cols = target_basis(&outer, &inner)?;
        if !matrix.rows().types_match(&rows) || !matrix.cols().types_match(&cols) {
            return Err(SpanError::BasisMismatch(
                "matrix bases do not fit the box layout".into(),
            ));
        }
        Ok(WiringDiagramSpan {
            outer,
            inner,
            matrix,
        })
    }

    pub fn outer(&self) -> &SignedBox {
        &self.outer
    }

    pub fn inner(&self) -> &[SignedBox] {
        &self.inner
    }

    pub fn inner_count(&self) -> usize {
        self.inner.len()
    }

    pub fn matrix(&self) -> &SpanMatrix {
        &self.matrix
    }

    pub fn outer_in_rows(&self) -> Range<usize> {
        0..self.outer.inputs.len()
    }

    /// Row block for box k's outputs; k must index an inner box.
    pub fn box_out_rows(&self, k: usize) -> Range<usize> {
        let start = self.outer.inputs.len()
            + self.inner[..k]
                .iter()
                .map(|b| b.outputs.len())
                .sum::<usize>();
        start..start + self.inner[k].outputs.len()
    }

    /// Column block for box k's inputs; k must index an inner box.
    pub fn box_in_cols(&self, k: usize) -> Range<usize> {
        let start = self.inner[..k]
            .iter()
            .map(|b| b.inputs.len())
            .sum::<usize>();
        start..start + self.inner[k].inputs.len()
    }

    pub fn outer_out_cols(&self) -> Range<usize> {
        let start = self.inner.iter().map(|b| b.inputs.len()).sum::<usize>();
        start..start + self.outer.outputs.len()
    }

    /// The port a row index stands for. Panics if out of range.
    pub fn port_of_dom_index(&self, i: usize) -> SpanPort {
        let mut i = i;
        if i < self.outer.inputs.len() {
            return SpanPort::OuterIn(i);
        }
        i -= self.outer.inputs.len();
        for (k, b) in self.inner.iter().enumerate() {
            if i < b.outputs.len() {
                return SpanPort::BoxOut(k, i);
            }
            i -= b.outputs.len();
        }
        panic!("row index out of range");
    }

    /// The port a column index stands for. Panics if out of range.
    pub fn port_of_cod_index(&self, j: usize) -> SpanPort {
        let mut j = j;
        for (k, b) in self.inner.iter().enumerate() {
            if j < b.inputs.len() {
                return SpanPort::BoxIn(k, j);
            }
            j -= b.inputs.len();
        }
        if j < self.outer.outputs.len() {
            return SpanPort::OuterOut(j);
        }
        panic!("column index out of range");
    }

    /// The same diagram with inner boxes enumerated in a new order; perm[k]
    /// is the old index of the box placed at position k. Wires keep their
    /// names and follow their boxes.
    pub fn reorder_inner(&self, perm: &[usize]) -> Result<Self, SpanError> {
        if !is_permutation_of_indices(perm, self.inner.len()) {
            return Err(SpanError::BasisMismatch(format!(
                "{perm:?} is not a permutation of 0..{}",
                self.inner.len()
            )));
        }
        let mut new_pos = vec![0; perm.len()];
        for (k, &old) in perm.iter().enumerate() {
            new_pos[old] = k;
        }
        let remap = |p: SpanPort| match p {
            SpanPort::BoxIn(k, e) => SpanPort::BoxIn(new_pos[k], e),
            SpanPort::BoxOut(k, e) => SpanPort::BoxOut(new_pos[k], e),
            outer => outer,
        };
        let inner: Vec<SignedBox> = perm.iter().map(|&k| self.inner[k].clone()).collect();
        let mut wires = Vec::new();
        for i in 0..self.matrix.rows().len() {
            for j in 0..self.matrix.cols().len() {
                for w in self.matrix.entry(i, j) {
                    let src = remap(self.port_of_dom_index(i));
                    let tgt = remap(self.port_of_cod_index(j));
                    wires.push((w.clone(), src, tgt));
                }
            }
        }
        WiringDiagramSpan::new(self.outer.clone(), inner, wires)
    }
}

/// The strict order induced on inner boxes by box-to-box wires, as a
/// transitive closure plus one linear extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgressOrder {
    precedes: Vec<BTreeSet<usize>>,
    topo: Vec<usize>,
}

impl ProgressOrder {
    /// True iff box i must run before box j.
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.precedes.get(i).is_some_and(|s| s.contains(&j))
    }

    /// A topological enumeration of the boxes, smallest index first among
    /// incomparable ones.
    pub fn linear_extension(&self) -> &[usize] {
        &self.topo
    }

    /// All ordered pairs (i, j) with i before j, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, succ) in self.precedes.iter().enumerate() {
            for &j in succ {
                out.push((i, j));
            }
        }
        out
    }
}

/// Checks the progress condition: the wires from box outputs to box inputs
/// must induce a strict partial order on the boxes. On failure the witness
/// is a shortest cycle, as 0-based box indices in wire direction.
pub fn progress_order(ws: &WiringDiagramSpan) -> Result<ProgressOrder, SpanError> {
    let n = ws.inner_count();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for i in 0..ws.matrix().rows().len() {
        for j in 0..ws.matrix().cols().len() {
            if ws.matrix().entry(i, j).is_empty() {
                continue;
            }
            if let (SpanPort::BoxOut(a, _), SpanPort::BoxIn(b, _)) =
                (ws.port_of_dom_index(i), ws.port_of_cod_index(j))
            {
                adj[a].insert(b);
            }
        }
    }
    let mut indeg = vec![0usize; n];
    for succ in &adj {
        for &b in succ {
            indeg[b] += 1;
        }
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut topo = Vec::with_capacity(n);
    while let Some(v) = ready.pop_first() {
        topo.push(v);
        for &b in &adj[v] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                ready.insert(b);
            }
        }
    }
    if topo.len() < n {
        return Err(SpanError::ProgressViolation {
            witness: shortest_cycle(&adj),
        });
    }
    let mut precedes: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &u in topo.iter().rev() {
        let mut reach = BTreeSet::new();
        for &v in &adj[u] {
            reach.insert(v);
            reach.extend(precedes[v].iter().copied());
        }
        precedes[u] = reach;
    }
    Ok(ProgressOrder { precedes, topo })
}

fn shortest_cycle(adj: &[BTreeSet<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut best: Option<Vec<usize>> = None;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if v == s {
                    if best.as_ref().is_none_or(|b| dist[u] + 1 < b.len()) {
                        let mut path = vec![];
                        let mut cur = u;
                        while cur != s {
                            path.push(cur);
                            cur = parent[cur];
                        }
                        path.push(s);
                        path.reverse();
                        best = Some(path);
                    }
                } else if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
    }
    best.expect("caller guarantees a cycle exists")
}

/// Presents a strict, acyclic diagram as a span. Wires are named "w1",
/// "w2", ... in diagram wire order; port elements are named positionally.
pub fn wd_to_span(d: &WiringDiagram) -> Result<WiringDiagramSpan, SpanError> {
    wd_to_span_named(d, "w")
}

/// Like wd_to_span but with a caller-chosen wire name prefix, so spans
/// presenting different diagrams can keep their atoms disjoint.
pub fn wd_to_span_named(d: &WiringDiagram, prefix: &str) -> Result<WiringDiagramSpan, SpanError> {
    let report = d.validate(Mode::Strict);
    if !report.is_valid() {
        for v in &report.violations {
            if let Violation::Cycle { witness } = v {
                return Err(SpanError::ProgressViolation {
                    witness: witness.iter().map(|&id| id - 3).collect(),
                });
            }
        }
        return Err(SpanError::NotStrict(report.violations[0].to_string()));
    }
    let outer = SignedBox::from_types(d.inputs(), d.outputs());
    let inner: Vec<SignedBox> = d
        .boxes()
        .map(|(_, b)| SignedBox::from_types(&b.inputs, &b.outputs))
        .collect();
    let mut wires = Vec::new();
    for (idx, w) in d.wires().iter().enumerate() {
        let src = if w.source.vertex == INPUT_ID {
            SpanPort::OuterIn(w.source.port - 1)
        } else {
            SpanPort::BoxOut(w.source.vertex - 3, w.source.port - 1)
        };
        let tgt = if w.target.vertex == OUTPUT_ID {
            SpanPort::OuterOut(w.target.port - 1)
        } else {
            SpanPort::BoxIn(w.target.vertex - 3, w.target.port - 1)
        };
        wires.push((WireName::atom(format!("{prefix}{}", idx + 1)), src, tgt));
    }
    WiringDiagramSpan::new(outer, inner, wires)
}

/// Rebuilds the diagram a span presents, labeling box k with labels[k].
/// Requires bijective legs and the progress condition; wires are emitted in
/// row-major matrix order.
pub fn span_to_wd(ws: &WiringDiagramSpan, labels: &[&str]) -> Result<WiringDiagram, SpanError> {
    if labels.len() != ws.inner_count() {
        return Err(SpanError::BasisMismatch(format!(
            "{} labels for {} boxes",
            labels.len(),
            ws.inner_count()
        )));
    }
    if !ws.matrix().is_bijective() {
        return Err(SpanError::NotStrict(
            "span legs are not bijections".into(),
        ));
    }
    progress_order(ws)?;
    let types = |s: &TypedFiniteSet| -> Vec<PortType> {
        (0..s.len()).map(|i| s.type_at(i).clone()).collect()
    };
    let mut d = WiringDiagram::new(
        types(ws.outer().inputs()),
        types(ws.outer().outputs()),
        Mode::Strict,
    );
    for (k, b) in ws.inner().iter().enumerate() {
        d.add_box(DiagramBox::new(
            labels[k],
            types(b.inputs()),
            types(b.outputs()),
        ));
    }
    let port_ref = |p: SpanPort| -> PortRef {
        match p {
            SpanPort::OuterIn(e) => PortRef::new(INPUT_ID, e + 1),
            SpanPort::OuterOut(e) => PortRef::new(OUTPUT_ID, e + 1),
            SpanPort::BoxIn(k, e) => PortRef::new(k + 3, e + 1),
            SpanPort::BoxOut(k, e) => PortRef::new(k + 3, e + 1),
        }
    };
    for i in 0..ws.matrix().rows().len() {
        for j in 0..ws.matrix().cols().len() {
            for _ in ws.matrix().entry(i, j) {
                let src = port_ref(ws.port_of_dom_index(i));
                let tgt = port_ref(ws.port_of_cod_index(j));
                d.add_wire(Wire::new(src, tgt))
                    .map_err(|e| SpanError::NotStrict(e.to_string()))?;
            }
        }
    }
    Ok(d)
}

/// A boxless diagram routing input i to output sigma[i]; its matrix is the
/// permutation matrix of sigma. Wires are named "s1", "s2", ... by input.
pub fn sym_gen(objects: &[PortType], sigma: &[usize]) -> Result<WiringDiagramSpan, SpanError> {
    if !is_permutation_of_indices(sigma, objects.len()) {
        return Err(SpanError::BasisMismatch(format!(
            "{sigma:?} is not a permutation of 0..{}",
            objects.len()
        )));
    }
    let mut out_types = vec![PortType::new(""); objects.len()];
    for (i, &j) in sigma.iter().enumerate() {
        out_types[j] = objects[i].clone();
    }
    let outer = SignedBox::new(
        TypedFiniteSet::positional(objects),
        TypedFiniteSet::positional(&out_types),
    );
    let wires = sigma
        .iter()
        .enumerate()
        .map(|(i, &j)| {
            (
                WireName::atom(format!("s{}", i + 1)),
                SpanPort::OuterIn(i),
                SpanPort::OuterOut(j),
            )
        })
        .collect();
    WiringDiagramSpan::new(outer, vec![], wires)
}

/// The identity routing on the given objects.
pub fn unit_gen(objects: &[PortType]) -> WiringDiagramSpan {
    let sigma: Vec<usize> = (0..objects.len()).collect();
    sym_gen(objects, &sigma).expect("identity permutation is valid")
}

/// The two-box series template a -> [box1] -> [box2] -> c with middle
/// boundary b, wired 1:1 in port order. Its matrix is block diagonal.
pub fn seq_gen(a: &[PortType], b: &[PortType], c: &[PortType]) -> WiringDiagramSpan {
    let outer = SignedBox::from_types(a, c);
    let inner = vec![SignedBox::from_types(a, b), SignedBox::from_types(b, c)];
    let mut wires = Vec::new();
    for i in 0..a.len() {
        wires.push((
            WireName::atom(format!("a{}", i + 1)),
            SpanPort::OuterIn(i),
            SpanPort::BoxIn(0, i),
        ));
    }
    for i in 0..b.len() {
        wires.push((
            WireName::atom(format!("b{}", i + 1)),
            SpanPort::BoxOut(0, i),
            SpanPort::BoxIn(1, i),
        ));
    }
    for i in 0..c.len() {
        wires.push((
            WireName::atom(format!("c{}", i + 1)),
            SpanPort::BoxOut(1, i),
            SpanPort::OuterOut(i),
        ));
    }
    WiringDiagramSpan::new(outer, inner, wires).expect("series template is well formed")
}

/// The two-box parallel template: box1 a -> b stacked over box2 a2 -> b2,
/// outer boundary the concatenations. Its matrix is block diagonal.
pub fn para_gen(
    a: &[PortType],
    b: &[PortType],
    a2: &[PortType],
    b2: &[PortType],
) -> WiringDiagramSpan {
    let outer_in: Vec<PortType> = a.iter().chain(a2).cloned().collect();
    let outer_out: Vec<PortType> = b.iter().chain(b2).cloned().collect();
    let outer = SignedBox::from_types(&outer_in, &outer_out);
    let inner = vec![SignedBox::from_types(a, b), SignedBox::from_types(a2, b2)];
    let mut wires = Vec::new();
    for i in 0..a.len() {
        wires.push((
            WireName::atom(format!("x{}", i + 1)),
            SpanPort::OuterIn(i),
            SpanPort::BoxIn(0, i),
        ));
    }
    for i in 0..a2.len() {
        wires.push((
            WireName::atom(format!("y{}", i + 1)),
            SpanPort::OuterIn(a.len() + i),
            SpanPort::BoxIn(1, i),
        ));
    }
    for i in 0..b.len() {
        wires.push((
            WireName::atom(format!("u{}", i + 1)),
            SpanPort::BoxOut(0, i),
            SpanPort::OuterOut(i),
        ));
    }
    for i in 0..b2.len() {
        wires.push((
            WireName::atom(format!("v{}", i + 1)),
            SpanPort::BoxOut(1, i),
            SpanPort::OuterOut(b.len() + i),
        ));
    }
    WiringDiagramSpan::new(outer, inner, wires).expect("parallel template is well formed")
}

/// Substitutes `sub` for the `slot`-th inner box of `host`, computed as a
/// block matrix rather than by rewriting wires.
///
/// Splitting the host bases into the slot's ports versus everything else,
/// the four blocks of the result are exactly the four wire cases: a host
/// wire into the slot fused with a sub boundary wire (incoming), host wires
/// avoiding the slot plus host-sub-host chains through it (passing), sub
/// box-to-box wires copied (internal), and a sub wire to the boundary fused
/// with a host wire onward (outgoing). Fusion order is reading order along
/// the wire. The sub's boxes are spliced into the host's box list at the
/// slot position.
pub fn compose_formula(
    sub: &WiringDiagramSpan,
    slot: usize,
    host: &WiringDiagramSpan,
) -> Result<WiringDiagramSpan, SpanError> {
    if slot >= host.inner_count() {
        return Err(SpanError::IndexOutOfRange {
            index: slot,
            len: host.inner_count(),
        });
    }
    if !host.inner()[slot].matches(sub.outer()) {
        return Err(SpanError::SignatureMismatch { index: slot });
    }
    let n = host.inner_count();
    let m = sub.inner_count();

    // Host-side index split: everything except the slot, in layout order.
    let mut rest_rows: Vec<usize> = host.outer_in_rows().collect();
    for k in (0..n).filter(|&k| k != slot) {
        rest_rows.extend(host.box_out_rows(k));
    }
    let mut rest_cols: Vec<usize> = Vec::new();
    for k in (0..n).filter(|&k| k != slot) {
        rest_cols.extend(host.box_in_cols(k));
    }
    rest_cols.extend(host.outer_out_cols());
    let slot_rows: Vec<usize> = host.box_out_rows(slot).collect();
    let slot_cols: Vec<usize> = host.box_in_cols(slot).collect();

    // A wire from the slot's outputs back into its own inputs is a self-loop.
    for &i in &slot_rows {
        for &j in &slot_cols {
            if !host.matrix().entry(i, j).is_empty() {
                return Err(SpanError::ProgressViolation {
                    witness: vec![slot],
                });
            }
        }
    }

    // Sub-side index split: boundary versus box ports.
    let sub_in_rows: Vec<usize> = sub.outer_in_rows().collect();
    let sub_out_cols: Vec<usize> = sub.outer_out_cols().collect();
    let mut sub_box_rows: Vec<usize> = Vec::new();
    let mut sub_box_cols: Vec<usize> = Vec::new();
    for k in 0..m {
        sub_box_rows.extend(sub.box_out_rows(k));
        sub_box_cols.extend(sub.box_in_cols(k));
    }

    let host_in = component(host.matrix(), &rest_rows, &slot_cols)?;
    let host_pass = component(host.matrix(), &rest_rows, &rest_cols)?;
    let host_out = component(host.matrix(), &slot_rows, &rest_cols)?;
    let sub_in = component(sub.matrix(), &sub_in_rows, &sub_box_cols)?;
    let sub_pass = component(sub.matrix(), &sub_in_rows, &sub_out_cols)?;
    let sub_internal = component(sub.matrix(), &sub_box_rows, &sub_box_cols)?;
    let sub_out = component(sub.matrix(), &sub_box_rows, &sub_out_cols)?;

    let incoming = mat_mul(&host_in, &sub_in)?;
    let passing = mat_add(
        &host_pass,
        &mat_mul(&mat_mul(&host_in, &sub_pass)?, &host_out)?,
    )?;
    let internal = sub_internal;
    let outgoing = mat_mul(&sub_out, &host_out)?;

    // Composite layout: sub boxes spliced in place of the slot.
    let mut inner: Vec<SignedBox> = host.inner()[..slot].to_vec();
    inner.extend(sub.inner().iter().cloned());
    inner.extend(host.inner()[slot + 1..].iter().cloned());
    let ambient_rows = source_basis(host.outer(), &inner)?;
    let ambient_cols = target_basis(host.outer(), &inner)?;

    // Ambient positions of each block, in the same order the blocks use.
    let comp_pos = |k: usize| if k < slot { k } else { k + m - 1 };
    let shell = WiringDiagramSpan {
        outer: host.outer().clone(),
        inner: inner.clone(),
        matrix: SpanMatrix::zero(ambient_rows.clone(), ambient_cols.clone()),
    };
    let mut amb_rest_rows: Vec<usize> = shell.outer_in_rows().collect();
    for k in (0..n).filter(|&k| k != slot) {
        amb_rest_rows.extend(shell.box_out_rows(comp_pos(k)));
    }
    let mut amb_rest_cols: Vec<usize> = Vec::new();
    for k in (0..n).filter(|&k| k != slot) {
        amb_rest_cols.extend(shell.box_in_cols(comp_pos(k)));
    }
    amb_rest_cols.extend(shell.outer_out_cols());
    let mut amb_sub_rows: Vec<usize> = Vec::new();
    let mut amb_sub_cols: Vec<usize> = Vec::new();
    for k in 0..m {
        amb_sub_rows.extend(shell.box_out_rows(slot + k));
        amb_sub_cols.extend(shell.box_in_cols(slot + k));
    }

    let placed_incoming = embed(
        &incoming,
        &amb_rest_rows,
        &amb_sub_cols,
        ambient_rows.clone(),
        ambient_cols.clone(),
    )?;
    let placed_passing = embed(
        &passing,
        &amb_rest_rows,
        &amb_rest_cols,
        ambient_rows.clone(),
        ambient_cols.clone(),
    )?;
    let placed_internal = embed(
        &internal,
        &amb_sub_rows,
        &amb_sub_cols,
        ambient_rows.clone(),
        ambient_cols.clone(),
    )?;
    let placed_outgoing = embed(
        &outgoing,
        &amb_sub_rows,
        &amb_rest_cols,
        ambient_rows,
        ambient_cols,
    )?;
    let matrix = mat_add(
        &mat_add(&mat_add(&placed_incoming, &placed_passing)?, &placed_internal)?,
        &placed_outgoing,
    )?;

    let result = WiringDiagramSpan {
        outer: host.outer().clone(),
        inner,
        matrix,
    };
    progress_order(&result)?;
    Ok(result)
}
