//! JSON interchange for diagrams.
//!
//! The schema is fixed, including key order:
//!
//! ```json
//! {"inputs":["x"],"outputs":["z"],
//!  "boxes":[{"id":3,"value":"f","inputs":["x"],"outputs":["y"]}],
//!  "wires":[{"src":[1,1],"tgt":[3,1]}]}
//! ```
//!
//! Port references are `[vertex, port]` pairs; ids 1 and 2 are reserved for
//! the outer boundary and never appear in `boxes`. Reading a diagram back
//! re-validates it against the mode the caller asks for.

use super::{DiagramBox, Mode, PortRef, PortType, ValidationReport, VertexId, Wire, WiringDiagram};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed diagram JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("box ids must be exactly 3..n+2 in order, found {0:?}")]
    BadBoxIds(Vec<VertexId>),
    #[error("diagram does not validate in {mode} mode: {}",
        .report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid { mode: Mode, report: ValidationReport },
}

impl Serialize for PortType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for PortType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(PortType(String::deserialize(d)?))
    }
}

impl Serialize for PortRef {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (self.vertex, self.port).serialize(s)
    }
}

impl<'de> Deserialize<'de> for PortRef {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pair = <[usize; 2]>::deserialize(d)?;
        if pair[0] == 0 || pair[1] == 0 {
            return Err(D::Error::custom("vertex and port indices are 1-based"));
        }
        Ok(PortRef::new(pair[0], pair[1]))
    }
}

#[derive(Serialize, Deserialize)]
struct JsonWire {
    src: PortRef,
    tgt: PortRef,
}

#[derive(Serialize, Deserialize)]
struct JsonBox {
    id: VertexId,
    value: String,
    inputs: Vec<PortType>,
    outputs: Vec<PortType>,
}

#[derive(Serialize, Deserialize)]
struct JsonDiagram {
    inputs: Vec<PortType>,
    outputs: Vec<PortType>,
    boxes: Vec<JsonBox>,
    wires: Vec<JsonWire>,
}

impl WiringDiagram {
    /// Serializes to the fixed schema. Boxes appear in id order and wires in
    /// stored order, so the output is deterministic for a given diagram value.
    pub fn to_json(&self) -> String {
        let doc = JsonDiagram {
            inputs: self.inputs().to_vec(),
            outputs: self.outputs().to_vec(),
            boxes: self
                .boxes()
                .map(|(id, b)| JsonBox {
                    id,
                    value: b.value.clone(),
                    inputs: b.inputs.clone(),
                    outputs: b.outputs.clone(),
                })
                .collect(),
            wires: self
                .wires()
                .iter()
                .map(|w| JsonWire {
                    src: w.source,
                    tgt: w.target,
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("diagram serialization cannot fail")
    }

    /// Parses the fixed schema and re-validates against `mode`.
    pub fn from_json(text: &str, mode: Mode) -> Result<WiringDiagram, JsonError> {
        let doc: JsonDiagram = serde_json::from_str(text)?;
        let ids: Vec<VertexId> = doc.boxes.iter().map(|b| b.id).collect();
        if ids.iter().enumerate().any(|(k, &id)| id != k + 3) {
            return Err(JsonError::BadBoxIds(ids));
        }
        let mut d = WiringDiagram::new(doc.inputs, doc.outputs, mode);
        for b in doc.boxes {
            d.add_box(DiagramBox::new(b.value, b.inputs, b.outputs));
        }
        for w in doc.wires {
            d.push_wire_unchecked(Wire {
                source: w.src,
                target: w.tgt,
            });
        }
        let report = d.validate(mode);
        if !report.is_valid() {
            return Err(JsonError::Invalid { mode, report });
        }
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::super::port_types;
    use super::*;

    const SERIES: &str = r#"{"inputs":["x"],"outputs":["z"],"boxes":[{"id":3,"value":"f","inputs":["x"],"outputs":["y"]},{"id":4,"value":"g","inputs":["y"],"outputs":["z"]}],"wires":[{"src":[1,1],"tgt":[3,1]},{"src":[3,1],"tgt":[4,1]},{"src":[4,1],"tgt":[2,1]}]}"#;

    #[test]
    fn serializes_to_fixed_schema() {
        let mut d = WiringDiagram::new(port_types(&["x"]), port_types(&["z"]), Mode::Strict);
        d.add_box(DiagramBox::new("f", port_types(&["x"]), port_types(&["y"])));
        d.add_box(DiagramBox::new("g", port_types(&["y"]), port_types(&["z"])));
        d.add_wire(Wire::new((1, 1), (3, 1))).unwrap();
        d.add_wire(Wire::new((3, 1), (4, 1))).unwrap();
        d.add_wire(Wire::new((4, 1), (2, 1))).unwrap();
        assert_eq!(d.to_json(), SERIES);
    }

    #[test]
    fn round_trips() {
        let d = WiringDiagram::from_json(SERIES, Mode::Strict).unwrap();
        assert_eq!(d.to_json(), SERIES);
        assert_eq!(d.box_count(), 2);
        assert_eq!(d.mode(), Mode::Strict);
    }

    #[test]
    fn rejects_bad_box_ids() {
        let text = r#"{"inputs":[],"outputs":[],"boxes":[{"id":5,"value":"f","inputs":[],"outputs":[]}],"wires":[]}"#;
        assert!(matches!(
            WiringDiagram::from_json(text, Mode::General),
            Err(JsonError::BadBoxIds(_))
        ));
    }

    #[test]
    fn revalidates_on_read() {
        // A dangling wire target: box 3 has no second input.
        let text = r#"{"inputs":["x"],"outputs":[],"boxes":[{"id":3,"value":"f","inputs":["x"],"outputs":[]}],"wires":[{"src":[1,1],"tgt":[3,2]}]}"#;
        assert!(matches!(
            WiringDiagram::from_json(text, Mode::General),
            Err(JsonError::Invalid { .. })
        ));
    }

    #[test]
    fn strictness_is_the_callers_choice() {
        // Valid in general mode, invalid in strict mode (unwired outer port).
        let text = r#"{"inputs":["x"],"outputs":[],"boxes":[],"wires":[]}"#;
        assert!(WiringDiagram::from_json(text, Mode::General).is_ok());
        assert!(matches!(
            WiringDiagram::from_json(text, Mode::Strict),
            Err(JsonError::Invalid { .. })
        ));
    }
}
