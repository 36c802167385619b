//! JSON encoding: every number is a decimal string, keys come out sorted.

use std::fmt::Display;

use serde_json::{Map, Value};

use crate::exponents::ExponentList;
use crate::homology::{AbelianGroup, GradedRanks};

pub const SCHEMA_VERSION: &str = "1";

pub fn s(x: impl Display) -> Value {
    Value::String(x.to_string())
}

pub fn list<T: Display>(xs: impl IntoIterator<Item = T>) -> Value {
    Value::Array(xs.into_iter().map(s).collect())
}

pub fn group(g: &AbelianGroup) -> Value {
    let mut m = Map::new();
    m.insert("free_rank".into(), s(g.free_rank()));
    m.insert("torsion".into(), list(g.invariant_factors()));
    m.insert("text".into(), s(g));
    Value::Object(m)
}

pub fn graded(g: &GradedRanks) -> Value {
    Value::Object(g.iter().map(|(d, r)| (d.to_string(), s(r))).collect())
}

/// Envelope shared by all commands.
pub fn envelope(command: &str, input: Option<&ExponentList>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema_version".into(), s(SCHEMA_VERSION));
    m.insert("command".into(), s(command));
    if let Some(a) = input {
        m.insert("exponents".into(), list(a.exponents()));
        m.insert("canonical".into(), list(a.canonical()));
    }
    m
}

pub fn render(m: Map<String, Value>) -> String {
    let mut out =
        serde_json::to_string_pretty(&Value::Object(m)).expect("JSON values always serialize");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rerender_is_identical() {
        let a = ExponentList::new(vec![5, 3, 2]).unwrap();
        let mut m = envelope("x", Some(&a));
        m.insert("zeta".into(), s(-3));
        m.insert("alpha".into(), group(&AbelianGroup::cyclic(4)));
        let text = render(m);
        let back: Map<String, Value> = serde_json::from_str(&text).unwrap();
        assert_eq!(render(back), text);
        assert!(text.find("alpha").unwrap() < text.find("zeta").unwrap());
    }
}
