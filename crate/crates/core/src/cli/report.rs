//! A tree of named results rendered as JSON or as indented text.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// Named results; keys are kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Report(Map<String, Value>);

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn insert(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.0.insert(key.to_string(), value.into());
        self
    }

    /// Insert any serializable value.
    pub fn insert_serialized<T: Serialize>(&mut self, key: &str, value: &T) -> &mut Self {
        let v = serde_json::to_value(value).expect("report values serialize");
        self.insert(key, v)
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.0.get(key)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.0).expect("report values serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        render(&mut out, &self.0, 0);
        out
    }
}

impl From<Report> for Value {
    fn from(r: Report) -> Value {
        Value::Object(r.0)
    }
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => Some(format!(
            "[{}]",
            items.iter().filter_map(scalar_text).collect::<Vec<_>>().join(", ")
        )),
        _ => None,
    }
}

fn render(out: &mut String, map: &Map<String, Value>, depth: usize) {
    let pad = "  ".repeat(depth);
    for (k, v) in map {
        if let Some(text) = scalar_text(v) {
            out.push_str(&format!("{pad}{k}: {text}\n"));
            continue;
        }
        out.push_str(&format!("{pad}{k}:\n"));
        match v {
            Value::Object(inner) => render(out, inner, depth + 1),
            Value::Array(items) => {
                for item in items {
                    match item {
                        Value::Object(inner) => {
                            out.push_str(&format!("{pad}  -\n"));
                            render(out, inner, depth + 2);
                        }
                        other => out.push_str(&format!("{pad}  - {}\n", other)),
                    }
                }
            }
            _ => unreachable!("scalars are rendered inline"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_and_sorted_keys() {
        let mut inner = Report::new();
        inner.insert("dim", 1).insert("basis", vec!["e3"]);
        let mut r = Report::new();
        r.insert("simple", false).insert("center", inner);
        let json = r.to_json();
        assert!(json.find("\"center\"").unwrap() < json.find("\"simple\"").unwrap());
        assert_eq!(Report::from_json(&json).unwrap(), r);
        assert!(r.to_text().contains("  basis: [e3]"));
    }
}
