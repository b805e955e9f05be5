//! Morphism construction for the symmetric monoidal category whose arrows
//! are strict wiring diagrams with filled boxes.
//!
//! Sequential and parallel composition both follow the same recipe: build
//! the generic two-box template of the right arity, then operadically
//! substitute the argument diagrams into its boxes. Interchange holds on
//! the nose because both bracketings substitute into the same four-box
//! shape. Braidings and permutations are boxless diagrams, so composing
//! with them only rewires.

use crate::diagram::{DiagramBox, Mode, PortType, Wire, WiringDiagram};
use crate::operad::ocompose;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmcError {
    #[error("cannot compose: left codomain {cod:?} differs from right domain {dom:?}")]
    CompositionMismatch {
        cod: Vec<PortType>,
        dom: Vec<PortType>,
    },
    #[error("{sigma:?} is not a permutation of 1..={len}")]
    BadPermutation { sigma: Vec<usize>, len: usize },
}

/// An arrow: a strict diagram together with its ordered domain and codomain.
/// The lists always mirror the diagram's outer boundary.
#[derive(Debug, Clone)]
pub struct Morphism {
    diagram: WiringDiagram,
    dom: Vec<PortType>,
    cod: Vec<PortType>,
}

impl Morphism {
    fn from_diagram(diagram: WiringDiagram) -> Self {
        Morphism {
            dom: diagram.inputs().to_vec(),
            cod: diagram.outputs().to_vec(),
            diagram,
        }
    }

    pub fn diagram(&self) -> &WiringDiagram {
        &self.diagram
    }

    pub fn dom(&self) -> &[PortType] {
        &self.dom
    }

    pub fn cod(&self) -> &[PortType] {
        &self.cod
    }
}

/// A one-box morphism: the box's ports wired 1:1 to the outer boundary.
pub fn generator(name: &str, dom: Vec<PortType>, cod: Vec<PortType>) -> Morphism {
    Morphism::from_diagram(crate::operad::inert(&DiagramBox::new(name, dom, cod)))
}

/// The identity on an object list; id(&[]) is the monoidal unit's identity,
/// the empty diagram.
pub fn id(types: &[PortType]) -> Morphism {
    let mut d = WiringDiagram::new(types.to_vec(), types.to_vec(), Mode::Strict);
    for i in 1..=types.len() {
        d.add_wire(Wire::new((1, i), (2, i)))
            .expect("identity wiring is well typed");
    }
    Morphism::from_diagram(d)
}

/// Builds the generic two-box series diagram over the given boundaries and
/// substitutes both arguments into it.
pub fn compose(f: &Morphism, g: &Morphism) -> Result<Morphism, SmcError> {
    if f.cod != g.dom {
        return Err(SmcError::CompositionMismatch {
            cod: f.cod.clone(),
            dom: g.dom.clone(),
        });
    }
    let mut template = WiringDiagram::new(f.dom.clone(), g.cod.clone(), Mode::Strict);
    template.add_box(DiagramBox::new("lhs", f.dom.clone(), f.cod.clone()));
    template.add_box(DiagramBox::new("rhs", g.dom.clone(), g.cod.clone()));
    for i in 1..=f.dom.len() {
        template.add_wire(Wire::new((1, i), (3, i))).expect("series template");
    }
    for i in 1..=f.cod.len() {
        template.add_wire(Wire::new((3, i), (4, i))).expect("series template");
    }
    for i in 1..=g.cod.len() {
        template.add_wire(Wire::new((4, i), (2, i))).expect("series template");
    }
    let diagram = ocompose(&template, &[&f.diagram, &g.diagram])
        .expect("template boxes carry the arguments' own signatures");
    Ok(Morphism::from_diagram(diagram))
}

/// Builds the generic two-box parallel diagram and substitutes both
/// arguments into it. Domains and codomains concatenate.
pub fn otimes(f: &Morphism, g: &Morphism) -> Morphism {
    let dom: Vec<PortType> = f.dom.iter().chain(&g.dom).cloned().collect();
    let cod: Vec<PortType> = f.cod.iter().chain(&g.cod).cloned().collect();
    let mut template = WiringDiagram::new(dom, cod, Mode::Strict);
    template.add_box(DiagramBox::new("top", f.dom.clone(), f.cod.clone()));
    template.add_box(DiagramBox::new("bottom", g.dom.clone(), g.cod.clone()));
    for i in 1..=f.dom.len() {
        template.add_wire(Wire::new((1, i), (3, i))).expect("parallel template");
    }
    for i in 1..=g.dom.len() {
        template
            .add_wire(Wire::new((1, f.dom.len() + i), (4, i)))
            .expect("parallel template");
    }
    for i in 1..=f.cod.len() {
        template.add_wire(Wire::new((3, i), (2, i))).expect("parallel template");
    }
    for i in 1..=g.cod.len() {
        template
            .add_wire(Wire::new((4, i), (2, f.cod.len() + i)))
            .expect("parallel template");
    }
    let diagram = ocompose(&template, &[&f.diagram, &g.diagram])
        .expect("template boxes carry the arguments' own signatures");
    Morphism::from_diagram(diagram)
}

/// The braiding a ⊗ b -> b ⊗ a: a boxless block transposition.
pub fn braid(a: &[PortType], b: &[PortType]) -> Morphism {
    let dom: Vec<PortType> = a.iter().chain(b).cloned().collect();
    let cod: Vec<PortType> = b.iter().chain(a).cloned().collect();
    let mut d = WiringDiagram::new(dom, cod, Mode::Strict);
    for i in 1..=a.len() {
        d.add_wire(Wire::new((1, i), (2, b.len() + i)))
            .expect("braid wiring is well typed");
    }
    for j in 1..=b.len() {
        d.add_wire(Wire::new((1, a.len() + j), (2, j)))
            .expect("braid wiring is well typed");
    }
    Morphism::from_diagram(d)
}

/// The boxless diagram wiring input i to output sigma[i-1], for sigma a
/// 1-based permutation of 1..=n.
pub fn permute(types: &[PortType], sigma: &[usize]) -> Result<Morphism, SmcError> {
    let n = types.len();
    let mut seen = vec![false; n];
    let ok = sigma.len() == n
        && sigma.iter().all(|&j| {
            (1..=n).contains(&j) && !std::mem::replace(&mut seen[j - 1], true)
        });
    if !ok {
        return Err(SmcError::BadPermutation {
            sigma: sigma.to_vec(),
            len: n,
        });
    }
    let mut out_types = vec![PortType::new(""); n];
    for (i, &j) in sigma.iter().enumerate() {
        out_types[j - 1] = types[i].clone();
    }
    let mut d = WiringDiagram::new(types.to_vec(), out_types, Mode::Strict);
    for (i, &j) in sigma.iter().enumerate() {
        d.add_wire(Wire::new((1, i + 1), (2, j)))
            .expect("permutation wiring is well typed");
    }
    Ok(Morphism::from_diagram(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::port_types;
    use crate::equality::is_equal;

    fn eq(a: &Morphism, b: &Morphism) -> bool {
        is_equal(a.diagram(), b.diagram()).unwrap()
    }

    #[test]
    fn generators_wrap_boxes() {
        let f = generator("f", port_types(&["x"]), port_types(&["x", "y"]));
        assert_eq!(f.diagram().box_count(), 1);
        assert_eq!(f.diagram().wires().len(), 3);
        assert_eq!(f.dom(), port_types(&["x"]).as_slice());
        assert_eq!(f.cod(), port_types(&["x", "y"]).as_slice());

        let e = generator("e", vec![], vec![]);
        assert_eq!(e.diagram().box_count(), 1);
        assert!(e.diagram().wires().is_empty());

        let g = generator("g", port_types(&["y", "z"]), port_types(&["z"]));
        assert_eq!(g.diagram().wires().len(), 3);
    }

    #[test]
    fn identities_pass_straight_through() {
        let one = id(&port_types(&["x"]));
        assert_eq!(one.diagram().box_count(), 0);
        assert_eq!(one.diagram().wires().len(), 1);

        let unit = id(&[]);
        assert!(unit.diagram().wires().is_empty());
        assert!(unit.dom().is_empty() && unit.cod().is_empty());

        let two = id(&port_types(&["x", "y"]));
        assert!(eq(&compose(&two, &two).unwrap(), &two));
    }

    #[test]
    fn compose_matches_the_hand_built_series() {
        let f = generator("f", port_types(&["x"]), port_types(&["y"]));
        let g = generator("g", port_types(&["y"]), port_types(&["z"]));
        let fg = compose(&f, &g).unwrap();
        assert_eq!(fg.dom(), port_types(&["x"]).as_slice());
        assert_eq!(fg.cod(), port_types(&["z"]).as_slice());

        let mut by_hand = WiringDiagram::new(port_types(&["x"]), port_types(&["z"]), Mode::Strict);
        by_hand.add_box(DiagramBox::new("f", port_types(&["x"]), port_types(&["y"])));
        by_hand.add_box(DiagramBox::new("g", port_types(&["y"]), port_types(&["z"])));
        by_hand.add_wire(Wire::new((1, 1), (3, 1))).unwrap();
        by_hand.add_wire(Wire::new((3, 1), (4, 1))).unwrap();
        by_hand.add_wire(Wire::new((4, 1), (2, 1))).unwrap();
        assert!(is_equal(fg.diagram(), &by_hand).unwrap());
    }

    #[test]
    fn compose_units_and_associativity() {
        let f = generator("f", port_types(&["x"]), port_types(&["y"]));
        let g = generator("g", port_types(&["y"]), port_types(&["z"]));
        let h = generator("h", port_types(&["z"]), port_types(&["w"]));

        assert!(eq(&compose(&id(&port_types(&["x"])), &f).unwrap(), &f));
        assert!(eq(&compose(&f, &id(&port_types(&["y"]))).unwrap(), &f));

        let left = compose(&compose(&f, &g).unwrap(), &h).unwrap();
        let right = compose(&f, &compose(&g, &h).unwrap()).unwrap();
        assert!(eq(&left, &right));
    }

    #[test]
    fn compose_rejects_mismatched_boundaries() {
        let f = generator("f", port_types(&["x"]), port_types(&["y"]));
        let err = compose(&f, &f).unwrap_err();
        assert_eq!(
            err,
            SmcError::CompositionMismatch {
                cod: port_types(&["y"]),
                dom: port_types(&["x"]),
            }
        );
    }

    #[test]
    fn otimes_stacks_and_has_the_empty_identity_as_unit() {
        let f = generator("f", port_types(&["x"]), port_types(&["y"]));
        let g = generator("g", port_types(&["u"]), port_types(&["v"]));
        let fg = otimes(&f, &g);
        assert_eq!(fg.dom(), port_types(&["x", "u"]).as_slice());
        assert_eq!(fg.cod(), port_types(&["y", "v"]).as_slice());
        assert_eq!(fg.diagram().box_count(), 2);

        assert!(eq(&otimes(&f, &id(&[])), &f));
        assert!(eq(&otimes(&id(&[]), &f), &f));

        let h = generator("h", port_types(&["s"]), port_types(&["t"]));
        assert!(eq(&otimes(&otimes(&f, &g), &h), &otimes(&f, &otimes(&g, &h))));
    }

    #[test]
    fn interchange_holds_identically() {
        let f = generator("f", port_types(&["a"]), port_types(&["m"]));
        let g = generator("g", port_types(&["m"]), port_types(&["c"]));
        let h = generator("h", port_types(&["b"]), port_types(&["n"]));
        let k = generator("k", port_types(&["n"]), port_types(&["d"]));
        let tensor_first = compose(&otimes(&f, &h), &otimes(&g, &k)).unwrap();
        let compose_first = otimes(&compose(&f, &g).unwrap(), &compose(&h, &k).unwrap());
        assert!(eq(&tensor_first, &compose_first));
    }

    #[test]
    fn braid_crosses_blocks() {
        let x = port_types(&["x"]);
        let y = port_types(&["y"]);
        let c = braid(&x, &y);
        assert_eq!(c.dom(), port_types(&["x", "y"]).as_slice());
        assert_eq!(c.cod(), port_types(&["y", "x"]).as_slice());
        assert_eq!(c.diagram().box_count(), 0);
        assert_eq!(c.diagram().wires().len(), 2);

        assert!(eq(&braid(&[], &x), &id(&x)));
        assert!(eq(&braid(&x, &[]), &id(&x)));

        let there_and_back = compose(&braid(&x, &y), &braid(&y, &x)).unwrap();
        assert!(eq(&there_and_back, &id(&port_types(&["x", "y"]))));
    }

    #[test]
    fn braid_is_natural_on_generators() {
        let f = generator("f", port_types(&["a"]), port_types(&["c"]));
        let g = generator("g", port_types(&["b"]), port_types(&["d"]));
        let braid_after = compose(&otimes(&f, &g), &braid(f.cod(), g.cod())).unwrap();
        let braid_before = compose(&braid(f.dom(), g.dom()), &otimes(&g, &f)).unwrap();
        assert!(eq(&braid_after, &braid_before));
    }

    #[test]
    fn permutations_compose_and_degenerate_correctly() {
        let xy = port_types(&["x", "y"]);
        assert!(eq(&permute(&xy, &[2, 1]).unwrap(), &braid(&xy[..1], &xy[1..])));
        assert!(eq(&permute(&xy, &[1, 2]).unwrap(), &id(&xy)));

        let xyz = port_types(&["x", "y", "z"]);
        let sigma = [2, 3, 1];
        let rho = [3, 1, 2];
        let lhs = compose(
            &permute(&xyz, &sigma).unwrap(),
            &permute(&permute(&xyz, &sigma).unwrap().cod().to_vec(), &rho).unwrap(),
        )
        .unwrap();
        let composite: Vec<usize> = sigma.iter().map(|&i| rho[i - 1]).collect();
        assert!(eq(&lhs, &permute(&xyz, &composite).unwrap()));

        for bad in [&[1usize, 1][..], &[0, 2], &[2, 3], &[1]] {
            assert!(matches!(
                permute(&xy, bad),
                Err(SmcError::BadPermutation { .. })
            ));
        }
    }
}
