//! Diagram equality as labeled-graph isomorphism, plus a canonical form.
//!
//! Two diagrams are equal when some bijection of their inner boxes preserves
//! box labels, port-type lists, and every wire's port-level incidence, while
//! fixing the outer boundary pointwise. The decision procedure is exact:
//! iterated color refinement narrows the candidate matchings, then a
//! backtracking search either finds a bijection or proves none exists.
//! Hashes are a pre-filter only and never assert equality on their own.

use crate::diagram::{
    DiagramBox, Mode, VertexId, Wire, WiringDiagram, INPUT_ID, OUTPUT_ID,
};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EqualityError {
    #[error("cannot compare a {left:?} diagram with a {right:?} diagram")]
    ModeMismatch { left: Mode, right: Mode },
}

/// A deterministic relabeling of a diagram. Two valid diagrams are equal
/// exactly when their canonical forms serialize to identical bytes.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    pub diagram: WiringDiagram,
    /// Original box id to canonical box id.
    pub mapping: BTreeMap<VertexId, VertexId>,
}

/// Wires grouped by endpoint pair, each group sorted by port indices.
/// Duplicate wires keep their multiplicity.
fn wire_profile(d: &WiringDiagram) -> BTreeMap<(VertexId, VertexId), Vec<(usize, usize)>> {
    let mut profile: BTreeMap<(VertexId, VertexId), Vec<(usize, usize)>> = BTreeMap::new();
    for w in d.wires() {
        profile
            .entry((w.source.vertex, w.target.vertex))
            .or_default()
            .push((w.source.port, w.target.port));
    }
    for group in profile.values_mut() {
        group.sort_unstable();
    }
    profile
}

/// One incidence record for refinement: wire direction and kind, the other
/// endpoint (a box handle, or None for the outer boundary), and the port
/// pair in source-to-target order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Incidence {
    kind: u8,
    other: Option<usize>,
    src_port: usize,
    tgt_port: usize,
}

const FROM_OUTER: u8 = 0;
const FROM_BOX: u8 = 1;
const TO_OUTER: u8 = 2;
const TO_BOX: u8 = 3;

/// Flattened view of one or more diagrams sharing a color space: box handles
/// are consecutive across the slice, in diagram order then id order.
struct Flat {
    keys: Vec<DiagramBox>,
    incident: Vec<Vec<Incidence>>,
}

fn flatten(ds: &[&WiringDiagram]) -> Flat {
    let mut keys = Vec::new();
    let mut incident = Vec::new();
    for d in ds {
        let base = keys.len();
        for (_, b) in d.boxes() {
            keys.push(b.clone());
            incident.push(Vec::new());
        }
        for w in d.wires() {
            let (sv, sp) = (w.source.vertex, w.source.port);
            let (tv, tp) = (w.target.vertex, w.target.port);
            if tv != OUTPUT_ID {
                incident[base + tv - 3].push(Incidence {
                    kind: FROM_OUTER,
                    other: (sv != INPUT_ID).then(|| base + sv - 3),
                    src_port: sp,
                    tgt_port: tp,
                });
            }
            if sv != INPUT_ID {
                incident[base + sv - 3].push(Incidence {
                    kind: TO_OUTER,
                    other: (tv != OUTPUT_ID).then(|| base + tv - 3),
                    src_port: sp,
                    tgt_port: tp,
                });
            }
        }
    }
    for recs in &mut incident {
        for r in recs.iter_mut() {
            if r.other.is_some() {
                r.kind = if r.kind == FROM_OUTER { FROM_BOX } else { TO_BOX };
            }
        }
    }
    Flat { keys, incident }
}

/// Initial partition: boxes share a color iff they share label and port
/// types. Colors are ranks in sorted key order, so they are stable across
/// isomorphic inputs.
fn initial_colors(flat: &Flat) -> Vec<usize> {
    let mut sorted: Vec<&DiagramBox> = flat.keys.iter().collect();
    sorted.sort();
    sorted.dedup();
    flat.keys
        .iter()
        .map(|k| sorted.binary_search(&k).expect("key is in its own sort"))
        .collect()
}

/// Refines until stable: each round a box's new color is its old color plus
/// the sorted multiset of its incidences with neighbor colors substituted.
fn refine(flat: &Flat, mut colors: Vec<usize>) -> Vec<usize> {
    loop {
        let mut sigs: Vec<(usize, Vec<Incidence>)> = Vec::with_capacity(colors.len());
        for (v, recs) in flat.incident.iter().enumerate() {
            let mut local: Vec<Incidence> = recs
                .iter()
                .map(|r| Incidence {
                    kind: r.kind,
                    other: r.other.map(|u| colors[u]),
                    src_port: r.src_port,
                    tgt_port: r.tgt_port,
                })
                .collect();
            local.sort_unstable();
            sigs.push((colors[v], local));
        }
        let mut sorted: Vec<&(usize, Vec<Incidence>)> = sigs.iter().collect();
        sorted.sort();
        sorted.dedup();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| sorted.binary_search(&s).expect("sig is in its own sort"))
            .collect();
        let stable = {
            let old_cells: std::collections::BTreeSet<usize> = colors.iter().copied().collect();
            let new_cells: std::collections::BTreeSet<usize> = next.iter().copied().collect();
            new_cells.len() == old_cells.len()
        };
        colors = next;
        if stable {
            return colors;
        }
    }
}

/// Decides equality. See the module docs for the exact relation; the outer
/// boundary is rigid, so domain and codomain port order always matters.
pub fn is_equal(a: &WiringDiagram, b: &WiringDiagram) -> Result<bool, EqualityError> {
    Ok(isomorphism(a, b)?.is_some())
}

/// Like `is_equal`, but on success returns the witness bijection as a map
/// from `a`'s box ids to `b`'s.
pub fn isomorphism(
    a: &WiringDiagram,
    b: &WiringDiagram,
) -> Result<Option<BTreeMap<VertexId, VertexId>>, EqualityError> {
    if a.mode() != b.mode() {
        return Err(EqualityError::ModeMismatch {
            left: a.mode(),
            right: b.mode(),
        });
    }
    if a.inputs() != b.inputs() || a.outputs() != b.outputs() {
        return Ok(None);
    }
    let n = a.box_count();
    if n != b.box_count() || a.wires().len() != b.wires().len() {
        return Ok(None);
    }
    let pa = wire_profile(a);
    let pb = wire_profile(b);
    if pa.get(&(INPUT_ID, OUTPUT_ID)) != pb.get(&(INPUT_ID, OUTPUT_ID)) {
        return Ok(None);
    }

    let flat = flatten(&[a, b]);
    let colors = refine(&flat, initial_colors(&flat));
    let (ca, cb) = colors.split_at(n);
    let mut count_a: BTreeMap<usize, usize> = BTreeMap::new();
    let mut count_b: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in ca {
        *count_a.entry(c).or_default() += 1;
    }
    for &c in cb {
        *count_b.entry(c).or_default() += 1;
    }
    if count_a != count_b {
        return Ok(None);
    }

    // Candidates per a-box, scarcest first; exact wire checks during search.
    let candidates: Vec<Vec<usize>> = ca
        .iter()
        .map(|&c| (0..n).filter(|&j| cb[j] == c).collect())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (candidates[i].len(), i));

    let boxes_a: Vec<&DiagramBox> = a.boxes().map(|(_, bx)| bx).collect();
    let boxes_b: Vec<&DiagramBox> = b.boxes().map(|(_, bx)| bx).collect();
    let mut assign: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];

    fn consistent(
        i: usize,
        j: usize,
        assign: &[Option<usize>],
        pa: &BTreeMap<(VertexId, VertexId), Vec<(usize, usize)>>,
        pb: &BTreeMap<(VertexId, VertexId), Vec<(usize, usize)>>,
    ) -> bool {
        let (ai, bj) = (i + 3, j + 3);
        if pa.get(&(INPUT_ID, ai)) != pb.get(&(INPUT_ID, bj)) {
            return false;
        }
        if pa.get(&(ai, OUTPUT_ID)) != pb.get(&(bj, OUTPUT_ID)) {
            return false;
        }
        for (k, slot) in assign.iter().enumerate() {
            let Some(l) = slot else { continue };
            let (ak, bl) = (k + 3, l + 3);
            if pa.get(&(ak, ai)) != pb.get(&(bl, bj)) || pa.get(&(ai, ak)) != pb.get(&(bj, bl)) {
                return false;
            }
        }
        true
    }

    fn search(
        depth: usize,
        order: &[usize],
        candidates: &[Vec<usize>],
        boxes_a: &[&DiagramBox],
        boxes_b: &[&DiagramBox],
        assign: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        pa: &BTreeMap<(VertexId, VertexId), Vec<(usize, usize)>>,
        pb: &BTreeMap<(VertexId, VertexId), Vec<(usize, usize)>>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let i = order[depth];
        for &j in &candidates[i] {
            if used[j] || boxes_a[i] != boxes_b[j] || !consistent(i, j, assign, pa, pb) {
                continue;
            }
            assign[i] = Some(j);
            used[j] = true;
            if search(
                depth + 1,
                order,
                candidates,
                boxes_a,
                boxes_b,
                assign,
                used,
                pa,
                pb,
            ) {
                return true;
            }
            assign[i] = None;
            used[j] = false;
        }
        false
    }

    let found = search(
        0,
        &order,
        &candidates,
        &boxes_a,
        &boxes_b,
        &mut assign,
        &mut used,
        &pa,
        &pb,
    );
    if !found {
        return Ok(None);
    }
    let witness = assign
        .iter()
        .enumerate()
        .map(|(i, j)| (i + 3, j.expect("complete assignment") + 3))
        .collect();
    Ok(Some(witness))
}

/// Rebuilds `d` with its boxes in the given order (entries are 0-based box
/// indices), wires sorted by endpoint. All presentation freedom is gone
/// afterward, so the result serializes deterministically.
fn relabel(d: &WiringDiagram, order: &[usize]) -> WiringDiagram {
    let n = d.box_count();
    let mut pos = vec![0; n];
    for (p, &k) in order.iter().enumerate() {
        pos[k] = p;
    }
    let map_v = |v: VertexId| if v <= 2 { v } else { 3 + pos[v - 3] };
    let boxes: Vec<&DiagramBox> = d.boxes().map(|(_, b)| b).collect();
    let mut out = WiringDiagram::new(d.inputs().to_vec(), d.outputs().to_vec(), d.mode());
    for &k in order {
        out.add_box(boxes[k].clone());
    }
    let mut wires: Vec<(VertexId, usize, VertexId, usize)> = d
        .wires()
        .iter()
        .map(|w| {
            (
                map_v(w.source.vertex),
                w.source.port,
                map_v(w.target.vertex),
                w.target.port,
            )
        })
        .collect();
    wires.sort_unstable();
    for (sv, sp, tv, tp) in wires {
        out.add_wire(Wire::new((sv, sp), (tv, tp)))
            .expect("relabeling a valid diagram stays valid");
    }
    out
}

/// Splits v off from its refinement cell, then re-refines. Doubling keeps
/// cells disjoint; the split vertex sorts first within its old cell.
fn individualize(flat: &Flat, colors: &[usize], v: usize) -> Vec<usize> {
    let seeded: Vec<usize> = colors
        .iter()
        .enumerate()
        .map(|(u, &c)| 2 * c + usize::from(u != v))
        .collect();
    refine(flat, seeded)
}

fn explore(
    d: &WiringDiagram,
    flat: &Flat,
    colors: Vec<usize>,
    best: &mut Option<(String, Vec<usize>)>,
) {
    let n = colors.len();
    let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colors.iter().enumerate() {
        cells.entry(c).or_default().push(v);
    }
    if let Some((_, members)) = cells.iter().find(|(_, m)| m.len() > 1) {
        for &v in members {
            explore(d, flat, individualize(flat, &colors, v), best);
        }
        return;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| colors[v]);
    let encoded = relabel(d, &order).to_json();
    if best.as_ref().is_none_or(|(e, _)| encoded < *e) {
        *best = Some((encoded, order));
    }
}

/// Canonicalizes a valid diagram: refinement plus individualization search
/// over one target cell per level, keeping the lexicographically least
/// serialization. The chosen leaf is invariant under box renumbering, so
/// equal diagrams canonicalize to identical bytes.
pub fn canonicalize(d: &WiringDiagram) -> CanonicalForm {
    let flat = flatten(&[d]);
    let colors = refine(&flat, initial_colors(&flat));
    let mut best = None;
    explore(d, &flat, colors, &mut best);
    let (_, order) = best.expect("every diagram has at least one labeling");
    let diagram = relabel(d, &order);
    let mapping = order
        .iter()
        .enumerate()
        .map(|(p, &k)| (k + 3, p + 3))
        .collect();
    CanonicalForm { diagram, mapping }
}

/// A 64-bit digest of the canonical serialization (FNV-1a). Equal diagrams
/// hash equal; unequal hashes prove inequality, equal hashes prove nothing.
pub fn invariant_hash(d: &WiringDiagram) -> u64 {
    let json = canonicalize(d).diagram.to_json();
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &byte in json.as_bytes() {
        h ^= u64::from(byte);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}
