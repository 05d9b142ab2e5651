//! Diagram file format.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Crossing, Dart, Edge, SurfaceDiagram};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramDoc {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<i64>,
    pub crossings: Vec<CrossingDoc>,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossingDoc {
    pub id: u64,
    pub cyclic: Vec<(u64, i64)>,
    pub over: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<Vec<i64>>,
}

impl DiagramDoc {
    pub fn to_diagram(&self) -> Result<SurfaceDiagram> {
        let index: HashMap<u64, usize> =
            self.edges.iter().enumerate().map(|(i, e)| (e.id, i)).collect();
        if index.len() != self.edges.len() {
            return Err(Error::Arity("duplicate edge id".into()));
        }
        let mut crossings = Vec::with_capacity(self.crossings.len());
        for c in &self.crossings {
            if c.cyclic.len() != 4 {
                return Err(Error::Arity(format!(
                    "crossing {} lists {} darts, expected 4",
                    c.id,
                    c.cyclic.len()
                )));
            }
            let mut cyclic = [Dart::new(0, 0); 4];
            for (s, &(eid, end)) in c.cyclic.iter().enumerate() {
                let &edge = index.get(&eid).ok_or_else(|| {
                    Error::Arity(format!("crossing {} refers to unknown edge {eid}", c.id))
                })?;
                if end != 0 && end != 1 {
                    return Err(Error::Arity(format!("crossing {}: edge end {end} is not 0 or 1", c.id)));
                }
                cyclic[s] = Dart::new(edge, end as u8);
            }
            let mut over = c.over.clone();
            over.sort_unstable();
            let over = match over.as_slice() {
                [0, 2] => 0,
                [1, 3] => 1,
                _ => return Err(Error::NonAntipodalOver(c.id)),
            };
            crossings.push(Crossing { id: c.id, cyclic, over });
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { id: e.id, label: e.label.clone().unwrap_or_default() })
            .collect();
        SurfaceDiagram::new(self.name.clone(), crossings, edges, self.genus)
    }
}

impl SurfaceDiagram {
    pub fn from_json(text: &str) -> Result<SurfaceDiagram> {
        let doc: DiagramDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.to_diagram()
    }

    pub fn to_doc(&self) -> DiagramDoc {
        DiagramDoc {
            name: self.name().to_string(),
            genus: Some(self.genus() as i64),
            crossings: self
                .crossings()
                .iter()
                .map(|c| CrossingDoc {
                    id: c.id,
                    cyclic: c.cyclic.iter().map(|d| (self.edges()[d.edge].id, d.end as i64)).collect(),
                    over: vec![c.over as i64, c.over as i64 + 2],
                })
                .collect(),
            edges: self
                .edges()
                .iter()
                .map(|e| EdgeDoc {
                    id: e.id,
                    label: if e.label.iter().all(|&x| x == 0) { None } else { Some(e.label.clone()) },
                })
                .collect(),
        }
    }

    /// Compact JSON: one crossing or edge per line.
    pub fn to_json(&self) -> String {
        let doc = self.to_doc();
        let mut out = String::from("{\n");
        out += &format!("  \"name\": {},\n", serde_json::to_string(&doc.name).unwrap());
        if let Some(g) = doc.genus {
            out += &format!("  \"genus\": {g},\n");
        }
        out += "  \"crossings\": [\n";
        let cs: Vec<String> = doc
            .crossings
            .iter()
            .map(|c| format!("    {}", serde_json::to_string(c).unwrap()))
            .collect();
        out += &cs.join(",\n");
        out += "\n  ],\n  \"edges\": [\n";
        let es: Vec<String> = doc
            .edges
            .iter()
            .map(|e| format!("    {}", serde_json::to_string(e).unwrap()))
            .collect();
        out += &es.join(",\n");
        out += "\n  ]\n}\n";
        out
    }
}
