//! Algebra definition files.
//!
//! A definition is a JSON document:
//!
//! ```text
//! {
//!   "name": "galilei",
//!   "parameters": ["a1", "omega"],
//!   "generators": ["H", "P1", "K1"],
//!   "brackets": [
//!     {"left": "H", "right": "K1", "terms": [{"gen": "P1", "coeff": "-1"}]}
//!   ],
//!   "metadata": {
//!     "isomorphism": "iiso(3)"
//!   }
//! }
//! ```
//!
//! Coefficients use the polynomial grammar of [`crate::coeffring`]. A
//! parameter named `eps` becomes the Laurent slot. [`emit_algebra`] writes
//! exactly this layout, so emitting a parsed canonical file reproduces it
//! byte for byte.

use std::collections::{BTreeMap, BTreeSet};

use serde::Deserialize;

use crate::coeffring::{CoeffError, Context, Poly, CONTRACTION_PARAM};

use super::{jacobi_check, LieAlgebra, LieError};

#[derive(Clone, Copy, Debug, Default)]
pub struct LoadOptions {
    /// Keep algebras that fail the Jacobi identity (for fault injection).
    pub allow_non_lie: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    name: String,
    #[serde(default)]
    parameters: Vec<String>,
    generators: Vec<String>,
    #[serde(default)]
    brackets: Vec<RawBracket>,
    #[serde(default)]
    metadata: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBracket {
    left: String,
    right: String,
    #[serde(default)]
    terms: Vec<RawTerm>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    gen: String,
    coeff: String,
}

/// Line and column (1-based) of a byte offset.
fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before
        .rfind('\n')
        .map_or(before.chars().count(), |nl| before[nl + 1..].chars().count())
        + 1;
    (line, column)
}

/// Byte offset of the `n`-th occurrence of `"key"` used as an object key.
fn nth_key(src: &str, key: &str, n: usize) -> Option<usize> {
    let needle = format!("\"{key}\"");
    src.match_indices(&needle)
        .filter(|(i, _)| src[i + needle.len()..].trim_start().starts_with(':'))
        .nth(n)
        .map(|(i, _)| i)
}

/// Offset of the string value following the key at `key_at`, just past its opening quote.
fn value_start(src: &str, key_at: usize) -> Option<usize> {
    let colon = key_at + src[key_at..].find(':')?;
    let quote = colon + src[colon..].find('"')?;
    Some(quote + 1)
}

struct Locator<'a> {
    src: &'a str,
}

impl Locator<'_> {
    fn error_at(&self, offset: Option<usize>, message: String) -> LieError {
        let (line, column) = offset.map_or((1, 1), |o| line_col(self.src, o));
        LieError::Parse { line, column, message }
    }

    /// Error attributed to the `n`-th occurrence of `key`.
    fn at_key(&self, key: &str, n: usize, message: String) -> LieError {
        let at = nth_key(self.src, key, n).and_then(|k| value_start(self.src, k));
        self.error_at(at, message)
    }
}

/// Parses and validates a definition file, running the Jacobi check.
pub fn parse_algebra(src: &str, options: LoadOptions) -> Result<LieAlgebra, LieError> {
    let raw: RawAlgebra = serde_json::from_str(src).map_err(|e| LieError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let loc = Locator { src };

    let laurent = raw
        .parameters
        .iter()
        .any(|p| p == CONTRACTION_PARAM)
        .then_some(CONTRACTION_PARAM);
    let ctx = Context::new(&raw.parameters, laurent).map_err(|e| loc.at_key("parameters", 0, e.to_string()))?;
    let mut alg =
        LieAlgebra::new(&raw.name, &ctx, &raw.generators).map_err(|e| loc.at_key("generators", 0, e.to_string()))?;

    let mut seen = BTreeSet::new();
    let mut coeff_no = 0;
    for (b, rb) in raw.brackets.iter().enumerate() {
        let left = alg
            .index_of(&rb.left)
            .map_err(|e| loc.at_key("left", b, e.to_string()))?;
        let right = alg
            .index_of(&rb.right)
            .map_err(|e| loc.at_key("right", b, e.to_string()))?;
        let key = (left.min(right), left.max(right));
        if !seen.insert(key) {
            return Err(loc.at_key("left", b, format!("bracket [{},{}] given twice", rb.left, rb.right)));
        }
        let mut terms = Vec::with_capacity(rb.terms.len());
        for (t, rt) in rb.terms.iter().enumerate() {
            let gen_no = coeff_no + t;
            let k = alg
                .index_of(&rt.gen)
                .map_err(|e| loc.at_key("gen", gen_no, e.to_string()))?;
            let c = Poly::parse(&ctx, &rt.coeff).map_err(|e| {
                let base = nth_key(src, "coeff", gen_no).and_then(|k| value_start(src, k));
                let inner = match &e {
                    CoeffError::Syntax(s) => s.column.saturating_sub(1),
                    CoeffError::UnknownParameterAt { column, .. } => column.saturating_sub(1),
                    _ => 0,
                };
                // column inside the string literal, assuming no escapes
                let at = base.map(|o| {
                    let skip: usize = src[o..].chars().take(inner).map(char::len_utf8).sum();
                    o + skip
                });
                loc.error_at(at, e.to_string())
            })?;
            terms.push((k, c));
        }
        coeff_no += rb.terms.len();
        alg.set_bracket(left, right, terms)
            .map_err(|e| loc.at_key("left", b, e.to_string()))?;
    }
    for (k, v) in &raw.metadata {
        alg.set_metadata(k, v);
    }
    if !options.allow_non_lie {
        let violations = jacobi_check(&alg);
        if !violations.is_empty() {
            return Err(LieError::JacobiViolation(
                violations.iter().map(|v| v.describe(&alg)).collect(),
            ));
        }
    }
    Ok(alg)
}

fn quoted(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization")
}

fn quoted_list(items: &[String]) -> String {
    let parts: Vec<String> = items.iter().map(|s| quoted(s)).collect();
    format!("[{}]", parts.join(", "))
}

/// Canonical text of an algebra in the definition-file format.
pub fn emit_algebra(alg: &LieAlgebra) -> String {
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"name\": {},\n", quoted(alg.name())));
    out.push_str(&format!("  \"parameters\": {},\n", quoted_list(alg.context().names())));
    out.push_str(&format!("  \"generators\": {},\n", quoted_list(alg.generator_names())));
    let brackets: Vec<String> = alg
        .stored_brackets()
        .map(|(i, j, terms)| {
            let ts: Vec<String> = terms
                .iter()
                .map(|(k, c)| {
                    format!(
                        "{{\"gen\": {}, \"coeff\": {}}}",
                        quoted(alg.generator_name(*k)),
                        quoted(&c.to_string())
                    )
                })
                .collect();
            format!(
                "    {{\"left\": {}, \"right\": {}, \"terms\": [{}]}}",
                quoted(alg.generator_name(i)),
                quoted(alg.generator_name(j)),
                ts.join(", ")
            )
        })
        .collect();
    if brackets.is_empty() {
        out.push_str("  \"brackets\": [],\n");
    } else {
        out.push_str(&format!("  \"brackets\": [\n{}\n  ],\n", brackets.join(",\n")));
    }
    let meta: Vec<String> = alg
        .metadata()
        .iter()
        .map(|(k, v)| format!("    {}: {}", quoted(k), quoted(v)))
        .collect();
    if meta.is_empty() {
        out.push_str("  \"metadata\": {}\n");
    } else {
        out.push_str(&format!("  \"metadata\": {{\n{}\n  }}\n", meta.join(",\n")));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::catalog;

    #[test]
    fn round_trip_every_catalog_algebra() {
        for name in crate::liealg::CATALOG_NAMES {
            let alg = catalog(name).unwrap();
            let text = emit_algebra(&alg);
            let back = parse_algebra(&text, LoadOptions::default()).unwrap();
            assert!(back.structure_eq(&alg), "{name}");
            assert_eq!(back.metadata(), alg.metadata());
            assert_eq!(emit_algebra(&back), text);
        }
    }

    #[test]
    fn empty_brackets_is_abelian() {
        let src = r#"{"name": "t2", "generators": ["A", "B"], "brackets": []}"#;
        let alg = parse_algebra(src, LoadOptions::default()).unwrap();
        assert!(alg.is_abelian());
        assert_eq!(alg.dim(), 2);
    }

    const WRONG_SIGN: &str = r#"{
  "name": "bad",
  "parameters": [],
  "generators": ["H", "P1", "K1", "J1", "P2", "K2"],
  "brackets": [
    {"left": "H", "right": "K1", "terms": [{"gen": "P1", "coeff": "1"}]},
    {"left": "H", "right": "K2", "terms": [{"gen": "P2", "coeff": "-1"}]},
    {"left": "J1", "right": "K1", "terms": [{"gen": "K2", "coeff": "1"}]},
    {"left": "J1", "right": "P1", "terms": [{"gen": "P2", "coeff": "1"}]}
  ]
}"#;

    #[test]
    fn jacobi_failure_unless_allowed() {
        match parse_algebra(WRONG_SIGN, LoadOptions::default()) {
            Err(LieError::JacobiViolation(v)) => assert!(v.iter().any(|t| t.starts_with("(H,K1,J1)"))),
            other => panic!("expected Jacobi failure, got {other:?}"),
        }
        let alg = parse_algebra(WRONG_SIGN, LoadOptions { allow_non_lie: true }).unwrap();
        assert_eq!(alg.dim(), 6);
    }

    #[test]
    fn errors_carry_positions() {
        let src = "{\n  \"name\": \"x\",\n  \"generators\": [\"A\", \"B\"],\n  \"brackets\": [\n    {\"left\": \"A\", \"right\": \"B\", \"terms\": [{\"gen\": \"A\", \"coeff\": \"2*q\"}]}\n  ]\n}";
        match parse_algebra(src, LoadOptions::default()) {
            Err(LieError::Parse { line, column, .. }) => {
                assert_eq!(line, 5);
                // position of `q` inside the coefficient string
                let col = src.lines().nth(4).unwrap().find("q\"").unwrap() + 1;
                assert_eq!(column, col);
            }
            other => panic!("{other:?}"),
        }
        let src = "{\"name\": \"x\",\n \"generators\": [\"A\"], }";
        assert!(matches!(
            parse_algebra(src, LoadOptions::default()),
            Err(LieError::Parse { line: 2, .. })
        ));
        let src = r#"{"name": "x", "generators": ["A", "B"], "brackets": [{"left": "A", "right": "C", "terms": []}]}"#;
        assert!(matches!(
            parse_algebra(src, LoadOptions::default()),
            Err(LieError::Parse { .. })
        ));
    }

    #[test]
    fn duplicate_pairs_rejected() {
        let src = r#"{"name": "x", "generators": ["A", "B"], "brackets": [
            {"left": "A", "right": "B", "terms": [{"gen": "A", "coeff": "1"}]},
            {"left": "B", "right": "A", "terms": [{"gen": "A", "coeff": "-1"}]}]}"#;
        assert!(parse_algebra(src, LoadOptions::default()).is_err());
    }
}
