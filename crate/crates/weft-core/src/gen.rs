//! Seeded random diagram generation for tests and benchmarks.
//!
//! Diagrams come out strict and acyclic by construction: boxes are created
//! in what becomes a progress order, each box input either consumes an
//! already-open source or mints a fresh outer input, and leftover sources
//! drain into the outer outputs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::diagram::{
    DiagramBox, Mode, PortRef, PortType, VertexId, Wire, WiringDiagram, INPUT_ID, OUTPUT_ID,
};

#[derive(Debug, Clone)]
pub struct GenConfig {
    /// Upper bound on box count (lower bound is 1). Must be at least 1.
    pub max_boxes: usize,
    /// Upper bound on ports per box side. Must be at least 1.
    pub max_ports: usize,
    /// Type alphabet ports draw from. Must be nonempty.
    pub types: Vec<PortType>,
    /// Box labels are "f0".."f{label_pool-1}". Must be at least 1.
    pub label_pool: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_boxes: 5,
            max_ports: 3,
            types: ["x", "y", "u", "v"].iter().map(|t| PortType::from(*t)).collect(),
            label_pool: 4,
        }
    }
}

impl GenConfig {
    fn check(&self) {
        assert!(self.max_boxes >= 1, "max_boxes must be at least 1");
        assert!(self.max_ports >= 1, "max_ports must be at least 1");
        assert!(!self.types.is_empty(), "type alphabet must be nonempty");
        assert!(self.label_pool >= 1, "label_pool must be at least 1");
    }

    fn pick_type<R: Rng + ?Sized>(&self, rng: &mut R) -> PortType {
        self.types[rng.random_range(0..self.types.len())].clone()
    }

    fn pick_label<R: Rng + ?Sized>(&self, rng: &mut R) -> String {
        format!("f{}", rng.random_range(0..self.label_pool))
    }
}

/// A not-yet-consumed wire source together with its type.
type OpenSource = (PortRef, PortType);

/// Draws a random strict diagram with a free outer boundary. The boundary
/// is whatever the wiring demanded: outer inputs are minted on demand and
/// leftover box outputs become outer outputs in shuffled order.
pub fn random_diagram<R: Rng + ?Sized>(rng: &mut R, cfg: &GenConfig) -> WiringDiagram {
    cfg.check();
    let box_count = rng.random_range(1..=cfg.max_boxes);
    let mut in_types: Vec<PortType> = Vec::new();
    let mut open: Vec<OpenSource> = Vec::new();
    let mut boxes: Vec<(String, Vec<PortType>, Vec<PortType>)> = Vec::new();
    let mut wires: Vec<(PortRef, PortRef)> = Vec::new();

    for k in 0..box_count {
        let vertex: VertexId = k + 3;
        let in_arity = rng.random_range(0..=cfg.max_ports);
        let out_arity = rng.random_range(0..=cfg.max_ports);
        let mut box_ins = Vec::with_capacity(in_arity);
        for port in 1..=in_arity {
            let (src, ty) = if !open.is_empty() && rng.random_bool(0.7) {
                let i = rng.random_range(0..open.len());
                open.swap_remove(i)
            } else {
                let ty = cfg.pick_type(rng);
                in_types.push(ty.clone());
                (PortRef::from((INPUT_ID, in_types.len())), ty)
            };
            wires.push((src, PortRef::from((vertex, port))));
            box_ins.push(ty);
        }
        let box_outs: Vec<PortType> = (0..out_arity).map(|_| cfg.pick_type(rng)).collect();
        for (i, ty) in box_outs.iter().enumerate() {
            open.push((PortRef::from((vertex, i + 1)), ty.clone()));
        }
        boxes.push((cfg.pick_label(rng), box_ins, box_outs));
    }

    open.shuffle(rng);
    let out_types: Vec<PortType> = open.iter().map(|(_, ty)| ty.clone()).collect();
    for (j, (src, _)) in open.into_iter().enumerate() {
        wires.push((src, PortRef::from((OUTPUT_ID, j + 1))));
    }

    assemble(in_types, out_types, boxes, wires)
}

/// Draws a random strict diagram with the given outer boundary. Interior
/// boxes consume open sources opportunistically; outer outputs are either
/// routed straight from a type-matching source or fed by a final box that
/// absorbs everything still open.
pub fn random_diagram_with_signature<R: Rng + ?Sized>(
    rng: &mut R,
    cfg: &GenConfig,
    dom: &[PortType],
    cod: &[PortType],
) -> WiringDiagram {
    cfg.check();
    let core_boxes = rng.random_range(0..cfg.max_boxes);
    let mut open: Vec<OpenSource> = dom
        .iter()
        .enumerate()
        .map(|(i, ty)| (PortRef::from((INPUT_ID, i + 1)), ty.clone()))
        .collect();
    let mut boxes: Vec<(String, Vec<PortType>, Vec<PortType>)> = Vec::new();
    let mut wires: Vec<(PortRef, PortRef)> = Vec::new();

    for k in 0..core_boxes {
        let vertex: VertexId = k + 3;
        let in_arity = rng.random_range(0..=cfg.max_ports.min(open.len()));
        let mut box_ins = Vec::with_capacity(in_arity);
        for port in 1..=in_arity {
            let i = rng.random_range(0..open.len());
            let (src, ty) = open.swap_remove(i);
            wires.push((src, PortRef::from((vertex, port))));
            box_ins.push(ty);
        }
        let out_arity = rng.random_range(0..=cfg.max_ports);
        let box_outs: Vec<PortType> = (0..out_arity).map(|_| cfg.pick_type(rng)).collect();
        for (i, ty) in box_outs.iter().enumerate() {
            open.push((PortRef::from((vertex, i + 1)), ty.clone()));
        }
        boxes.push((cfg.pick_label(rng), box_ins, box_outs));
    }

    // Route each outer output either directly from a matching open source or
    // through the collector box below.
    let mut deferred: Vec<(usize, PortType)> = Vec::new();
    for (j, ty) in cod.iter().enumerate() {
        let matches: Vec<usize> = open
            .iter()
            .enumerate()
            .filter(|(_, (_, t))| t == ty)
            .map(|(i, _)| i)
            .collect();
        if !matches.is_empty() && rng.random_bool(0.5) {
            let i = matches[rng.random_range(0..matches.len())];
            let (src, _) = open.swap_remove(i);
            wires.push((src, PortRef::from((OUTPUT_ID, j + 1))));
        } else {
            deferred.push((j, ty.clone()));
        }
    }

    if !open.is_empty() || !deferred.is_empty() {
        let vertex: VertexId = core_boxes + 3;
        let mut box_ins = Vec::with_capacity(open.len());
        for (port, (src, ty)) in open.drain(..).enumerate() {
            wires.push((src, PortRef::from((vertex, port + 1))));
            box_ins.push(ty);
        }
        let mut box_outs = Vec::with_capacity(deferred.len());
        for (i, (j, ty)) in deferred.into_iter().enumerate() {
            wires.push((PortRef::from((vertex, i + 1)), PortRef::from((OUTPUT_ID, j + 1))));
            box_outs.push(ty);
        }
        boxes.push((cfg.pick_label(rng), box_ins, box_outs));
    }

    assemble(dom.to_vec(), cod.to_vec(), boxes, wires)
}

fn assemble(
    in_types: Vec<PortType>,
    out_types: Vec<PortType>,
    boxes: Vec<(String, Vec<PortType>, Vec<PortType>)>,
    wires: Vec<(PortRef, PortRef)>,
) -> WiringDiagram {
    let mut d = WiringDiagram::new(in_types, out_types, Mode::Strict);
    for (label, ins, outs) in boxes {
        d.add_box(DiagramBox::new(label, ins, outs));
    }
    for (src, tgt) in wires {
        d.add_wire(Wire::new(src, tgt)).expect("generated wiring is consistent");
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::port_types;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn same_seed_reproduces_the_same_diagram() {
        let cfg = GenConfig::default();
        let a = random_diagram(&mut ChaCha8Rng::seed_from_u64(7), &cfg);
        let b = random_diagram(&mut ChaCha8Rng::seed_from_u64(7), &cfg);
        assert_eq!(a.to_json(), b.to_json());
        let c = random_diagram(&mut ChaCha8Rng::seed_from_u64(8), &cfg);
        assert_ne!(a.to_json(), c.to_json());
    }

    #[test]
    fn free_boundary_draws_are_strict() {
        let cfg = GenConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let d = random_diagram(&mut rng, &cfg);
            assert!(d.validate(Mode::Strict).is_valid(), "{}", d.to_json());
            assert!(d.box_count() >= 1);
            assert!(d.box_count() <= cfg.max_boxes);
        }
    }

    #[test]
    fn prescribed_boundary_is_honored() {
        let cfg = GenConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let dom = port_types(&["x", "y", "x"]);
        let cod = port_types(&["u", "x"]);
        for _ in 0..200 {
            let d = random_diagram_with_signature(&mut rng, &cfg, &dom, &cod);
            assert_eq!(d.inputs(), &dom[..]);
            assert_eq!(d.outputs(), &cod[..]);
            assert!(d.validate(Mode::Strict).is_valid(), "{}", d.to_json());
        }
    }

    #[test]
    fn empty_boundary_draws_are_strict() {
        let cfg = GenConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let d = random_diagram_with_signature(&mut rng, &cfg, &[], &[]);
            assert!(d.inputs().is_empty() && d.outputs().is_empty());
            assert!(d.validate(Mode::Strict).is_valid(), "{}", d.to_json());
        }
    }

    #[test]
    fn draws_vary_in_shape() {
        let cfg = GenConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let counts: std::collections::BTreeSet<usize> =
            (0..100).map(|_| random_diagram(&mut rng, &cfg).box_count()).collect();
        assert!(counts.len() > 1);
    }
}
