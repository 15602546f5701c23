//! JSON document format for belief structures.
//!
//! ```json
//! {"frame": ["a","b","c","d"], "subnormal": false,
//!  "masses": [{"set": ["a","b"], "mass": "3/5"}, {"set": ["a","b","c","d"], "mass": "2/5"}]}
//! ```
//!
//! Masses may be `"p/q"` strings, decimal strings, or JSON number literals;
//! all are read exactly. Output lists sets in bitmask order with reduced
//! fractions, and `subnormal` is true exactly when the empty set has mass.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::frame::{FocalSet, Frame};
use crate::mass::{parse_rational, Mass};
use crate::structure::BeliefStructure;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    frame: Vec<String>,
    #[serde(default)]
    subnormal: bool,
    masses: Vec<Entry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    set: Vec<String>,
    mass: Value,
}

pub(crate) fn set_names(set: &FocalSet) -> Vec<String> {
    set.atoms().map(str::to_string).collect()
}

fn mass_from_value(value: &Value) -> Result<Mass> {
    let text = match value {
        Value::String(s) => s.clone(),
        // arbitrary_precision keeps the literal digits
        Value::Number(n) => n.to_string(),
        other => return Err(Error::Document(format!("mass must be a string or number, found {other}"))),
    };
    Mass::from_ratio(parse_rational(&text)?)
}

impl BeliefStructure {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Document = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        let frame = Frame::new(doc.frame)?;
        let mut assignments = Vec::with_capacity(doc.masses.len());
        for entry in &doc.masses {
            let set = frame.set(&entry.set)?;
            assignments.push((set, mass_from_value(&entry.mass)?));
        }
        if doc.subnormal {
            BeliefStructure::new_subnormal(&frame, assignments)
        } else {
            BeliefStructure::new(&frame, assignments)
        }
    }

    /// Canonical pretty-printed document, newline terminated.
    pub fn to_json(&self) -> String {
        let doc = self.to_document();
        let mut out = serde_json::to_string_pretty(&doc).expect("document serializes");
        out.push('\n');
        out
    }

    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(self.to_document()).expect("document serializes")
    }

    fn to_document(&self) -> Document {
        Document {
            frame: self.frame().atoms().to_vec(),
            subnormal: self.is_subnormal(),
            masses: self
                .focal_elements()
                .map(|(set, m)| Entry { set: set_names(&set), mass: Value::String(m.to_string()) })
                .collect(),
        }
    }
}
