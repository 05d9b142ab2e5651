//! A report is an ordered list of named fields; it renders either as plain
//! text or as one JSON object, from the same data.

use serde_json::{json, Map, Value};

pub enum Field {
    Text(String),
    Lines(Vec<String>),
    Matrix(Vec<Vec<String>>),
    Json(Value),
}

pub struct Report {
    command: String,
    fields: Vec<(String, Field)>,
    failed_checks: usize,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), fields: Vec::new(), failed_checks: 0 }
    }

    pub fn text(&mut self, key: &str, v: impl ToString) {
        self.fields.push((key.into(), Field::Text(v.to_string())));
    }

    pub fn lines<S: ToString>(&mut self, key: &str, v: impl IntoIterator<Item = S>) {
        self.fields.push((key.into(), Field::Lines(v.into_iter().map(|s| s.to_string()).collect())));
    }

    pub fn matrix(&mut self, key: &str, cells: Vec<Vec<String>>) {
        self.fields.push((key.into(), Field::Matrix(cells)));
    }

    pub fn json(&mut self, key: &str, v: Value) {
        self.fields.push((key.into(), Field::Json(v)));
    }

    /// Records an internal consistency check; a failed one makes the run an
    /// internal failure.
    pub fn check(&mut self, key: &str, ok: bool) {
        if !ok {
            self.failed_checks += 1;
        }
        self.text(&format!("check {key}"), if ok { "PASS" } else { "FAIL" });
    }

    pub fn failed(&self) -> bool {
        self.failed_checks > 0
    }

    pub fn to_json(&self) -> Value {
        let mut fields = Map::new();
        for (k, f) in &self.fields {
            let v = match f {
                Field::Text(s) => json!(s),
                Field::Lines(l) => json!(l),
                Field::Matrix(m) => json!(m),
                Field::Json(v) => v.clone(),
            };
            fields.insert(k.clone(), v);
        }
        let order: Vec<&str> = self.fields.iter().map(|(k, _)| k.as_str()).collect();
        json!({ "command": self.command, "order": order, "fields": fields })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, f) in &self.fields {
            match f {
                Field::Text(s) if !s.contains('\n') => out += &format!("{k}: {s}\n"),
                Field::Text(s) => {
                    out += &format!("{k}:\n");
                    for l in s.lines() {
                        out += &format!("  {l}\n");
                    }
                }
                Field::Lines(ls) => {
                    out += &format!("{k}:\n");
                    for l in ls {
                        out += &format!("  {l}\n");
                    }
                    if ls.is_empty() {
                        out += "  (none)\n";
                    }
                }
                Field::Matrix(m) => {
                    out += &format!("{k}:\n");
                    out += &render_matrix(m);
                }
                Field::Json(v) => {
                    out += &format!("{k}:\n");
                    let pretty = serde_json::to_string_pretty(v).expect("json values serialize");
                    for l in pretty.lines() {
                        out += &format!("  {l}\n");
                    }
                }
            }
        }
        out
    }
}

fn render_matrix(m: &[Vec<String>]) -> String {
    let cols = m.iter().map(|r| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| m.iter().map(|r| r.get(c).map_or(0, |s| s.len())).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in m {
        let cells: Vec<String> = r.iter().enumerate().map(|(c, s)| format!("{s:>w$}", w = widths[c])).collect();
        out += &format!("  [{}]\n", cells.join("  "));
    }
    if m.is_empty() {
        out += "  (empty)\n";
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_renderings_carry_the_same_fields() {
        let mut r = Report::new("demo");
        r.text("genus", 1);
        r.lines("relations", ["a = b", "b = c"]);
        r.matrix("m", vec![vec!["1".into(), "-10".into()], vec!["x".into(), "0".into()]]);
        r.check("symmetry", true);
        let t = r.to_text();
        assert!(t.contains("genus: 1\n"));
        assert!(t.contains("  a = b\n"));
        assert!(t.contains("  [1  -10]\n  [x    0]\n"));
        let j = r.to_json();
        assert_eq!(j["fields"]["genus"], "1");
        assert_eq!(j["fields"]["m"][0][1], "-10");
        assert_eq!(j["order"].as_array().unwrap().len(), 4);
        assert!(!r.failed());
        r.check("other", false);
        assert!(r.failed());
    }
}
