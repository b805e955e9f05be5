//! Graphviz export.
//!
//! Diagrams are canonicalized before rendering, so isomorphic diagrams
//! produce byte-identical output regardless of how they were assembled.

use crate::diagram::{PortType, WiringDiagram, INPUT_ID, OUTPUT_ID};
use crate::equality::canonicalize;

/// Renders a diagram as a Graphviz digraph, left to right. Outer inputs and
/// outputs appear as record nodes `in` and `out` inside dashed clusters;
/// box k becomes a record node `b{k}` with input fields `i1..` on the left
/// and output fields `o1..` on the right. Edges carry the wire type.
pub fn export_dot(d: &WiringDiagram) -> String {
    let canon = canonicalize(d).diagram;
    let mut out = String::new();
    out.push_str("digraph {\n");
    out.push_str("  rankdir=LR;\n");
    out.push_str("  subgraph cluster_in {\n");
    out.push_str("    label=\"inputs\";\n");
    out.push_str("    style=dashed;\n");
    out.push_str(&format!(
        "    in [shape=record, label=\"{}\"];\n",
        ports_label("p", canon.inputs())
    ));
    out.push_str("  }\n");
    out.push_str("  subgraph cluster_out {\n");
    out.push_str("    label=\"outputs\";\n");
    out.push_str("    style=dashed;\n");
    out.push_str(&format!(
        "    out [shape=record, label=\"{}\"];\n",
        ports_label("p", canon.outputs())
    ));
    out.push_str("  }\n");
    for (v, b) in canon.boxes() {
        out.push_str(&format!(
            "  b{v} [shape=record, label=\"{{{{{}}}|{}|{{{}}}}}\"];\n",
            ports_label("i", &b.inputs),
            escape(&b.value),
            ports_label("o", &b.outputs),
        ));
    }
    for w in canon.wires() {
        let src = if w.source.vertex == INPUT_ID {
            format!("in:p{}", w.source.port)
        } else {
            format!("b{}:o{}", w.source.vertex, w.source.port)
        };
        let tgt = if w.target.vertex == OUTPUT_ID {
            format!("out:p{}", w.target.port)
        } else {
            format!("b{}:i{}", w.target.vertex, w.target.port)
        };
        let ty = canon
            .source_type(w.source)
            .expect("canonical diagram wires resolve");
        out.push_str(&format!("  {src} -> {tgt} [label=\"{}\"];\n", escape(&ty.0)));
    }
    out.push_str("}\n");
    out
}

fn ports_label(field: &str, types: &[PortType]) -> String {
    types
        .iter()
        .enumerate()
        .map(|(i, t)| format!("<{field}{}>{}", i + 1, escape(&t.0)))
        .collect::<Vec<_>>()
        .join("|")
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        if matches!(c, '{' | '}' | '|' | '<' | '>' | '\\' | '"') {
            out.push('\\');
        }
        out.push(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{port_types, DiagramBox, Mode, Wire};
    use crate::smc::{compose, generator, id, otimes};

    fn series_fg() -> WiringDiagram {
        let mut d = WiringDiagram::new(port_types(&["x"]), port_types(&["z"]), Mode::Strict);
        let f = d.add_box(DiagramBox::new("f", port_types(&["x"]), port_types(&["y"])));
        let g = d.add_box(DiagramBox::new("g", port_types(&["y"]), port_types(&["z"])));
        d.add_wire(Wire::new((1, 1), (f, 1))).unwrap();
        d.add_wire(Wire::new((f, 1), (g, 1))).unwrap();
        d.add_wire(Wire::new((g, 1), (2, 1))).unwrap();
        d
    }

    #[test]
    fn series_pair_renders_to_known_text() {
        let expected = "digraph {\n\
            \x20 rankdir=LR;\n\
            \x20 subgraph cluster_in {\n\
            \x20   label=\"inputs\";\n\
            \x20   style=dashed;\n\
            \x20   in [shape=record, label=\"<p1>x\"];\n\
            \x20 }\n\
            \x20 subgraph cluster_out {\n\
            \x20   label=\"outputs\";\n\
            \x20   style=dashed;\n\
            \x20   out [shape=record, label=\"<p1>z\"];\n\
            \x20 }\n\
            \x20 b3 [shape=record, label=\"{{<i1>x}|f|{<o1>y}}\"];\n\
            \x20 b4 [shape=record, label=\"{{<i1>y}|g|{<o1>z}}\"];\n\
            \x20 in:p1 -> b3:i1 [label=\"x\"];\n\
            \x20 b3:o1 -> b4:i1 [label=\"y\"];\n\
            \x20 b4:o1 -> out:p1 [label=\"z\"];\n\
            }\n";
        assert_eq!(export_dot(&series_fg()), expected);
    }

    #[test]
    fn empty_diagram_renders_boundary_nodes_only() {
        let d = WiringDiagram::new(vec![], vec![], Mode::Strict);
        let text = export_dot(&d);
        assert!(text.contains("in [shape=record, label=\"\"];"));
        assert!(text.contains("out [shape=record, label=\"\"];"));
        assert!(!text.contains("->"));
        assert!(!text.contains(" b3 "));
    }

    #[test]
    fn isomorphic_assemblies_render_identically() {
        let x = port_types(&["x"]);
        let y = port_types(&["y"]);
        let f = generator("f", x.clone(), x.clone());
        let g = generator("g", y.clone(), y.clone());
        let route1 = compose(
            &otimes(&f, &id(&y)),
            &otimes(&id(&x), &g),
        )
        .unwrap();
        let route2 = otimes(&f, &g);
        assert_eq!(export_dot(route1.diagram()), export_dot(route2.diagram()));
    }

    #[test]
    fn record_metacharacters_are_escaped() {
        let mut d = WiringDiagram::new(port_types(&["a|b"]), vec![], Mode::Strict);
        let v = d.add_box(DiagramBox::new("f{0}<+>", port_types(&["a|b"]), vec![]));
        d.add_wire(Wire::new((1, 1), (v, 1))).unwrap();
        let text = export_dot(&d);
        assert!(text.contains("label=\"<p1>a\\|b\""));
        assert!(text.contains("|f\\{0\\}\\<+\\>|"));
        assert!(text.contains("[label=\"a\\|b\"];"));
    }
}
