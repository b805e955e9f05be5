use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use weft_core::diagram::{VertexId, Wire, WiringDiagram, INPUT_ID, OUTPUT_ID};

/// Rebuilds `d` with its boxes inserted in a random order. The result is
/// isomorphic by construction; the returned map sends old ids to new ones.
pub fn shuffle_boxes<R: Rng + ?Sized>(
    d: &WiringDiagram,
    rng: &mut R,
) -> (WiringDiagram, BTreeMap<VertexId, VertexId>) {
    let mut order: Vec<VertexId> = d.box_ids().collect();
    order.shuffle(rng);
    let mut map: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    map.insert(INPUT_ID, INPUT_ID);
    map.insert(OUTPUT_ID, OUTPUT_ID);
    let mut out = WiringDiagram::new(d.inputs().to_vec(), d.outputs().to_vec(), d.mode());
    for &old in &order {
        let fresh = out.add_box(d.get_box(old).unwrap().clone());
        map.insert(old, fresh);
    }
    for w in d.wires() {
        let src = (map[&w.source.vertex], w.source.port);
        let tgt = (map[&w.target.vertex], w.target.port);
        out.add_wire(Wire::new(src, tgt)).expect("relabeled wire stays valid");
    }
    map.remove(&INPUT_ID);
    map.remove(&OUTPUT_ID);
    (out, map)
}
