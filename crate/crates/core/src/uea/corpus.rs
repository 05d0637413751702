//! Identities in the enveloping Galilei algebra used by the expansion proofs.

use std::sync::Arc;

use crate::liealg::levi_civita;

use super::{parse_expression, EnvelopingAlgebra, UEAElement, UeaError};

/// Outcome of comparing two expressions after normal ordering.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub residual: UEAElement,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Normal-orders `lhs - rhs`.
pub fn verify_identity(uea: &Arc<EnvelopingAlgebra>, lhs: &str, rhs: &str) -> Result<IdentityCheck, UeaError> {
    let l = parse_expression(uea, lhs)?;
    let r = parse_expression(uea, rhs)?;
    Ok(IdentityCheck { residual: l.sub(&r)? })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    /// Group label such as `W brackets`.
    pub group: &'static str,
    pub lhs: String,
    pub rhs: String,
}

fn entry(group: &'static str, lhs: impl Into<String>, rhs: impl Into<String>) -> CorpusEntry {
    CorpusEntry {
        group,
        lhs: lhs.into(),
        rhs: rhs.into(),
    }
}

/// `(j, k)` with `ε_ijk = 1`.
fn cyclic(i: usize) -> (usize, usize) {
    (i % 3 + 1, (i + 1) % 3 + 1)
}

/// `ε_ijk X_k` as text, or `0`.
fn eps_times(i: usize, j: usize, x: impl Fn(usize) -> String) -> String {
    (1..=3)
        .find_map(|k| match levi_civita(i, j, k) {
            1 => Some(x(k)),
            -1 => Some(format!("-{}", x(k))),
            _ => None,
        })
        .unwrap_or_else(|| "0".into())
}

/// Cross-product component `X_j W_k - X_k W_j` with `(i,j,k)` cyclic.
fn cross_w(x: &str, i: usize) -> String {
    let (j, k) = cyclic(i);
    format!("({x}{j}*<W{k}> - {x}{k}*<W{j}>)")
}

/// The full Galilei corpus: scalar identities, their squared consequences
/// for `P` and `K`, and the bracket tables of `W`, `J·P` and `J·W`.
pub fn identity_corpus() -> Vec<CorpusEntry> {
    let mut out = vec![entry("orthogonality", "<PW>", "0"), entry("orthogonality", "<KW>", "0")];
    for x in ["P", "K"] {
        let group = if x == "P" { "square/P" } else { "square/K" };
        out.push(entry(
            group,
            format!("-2*{x}1*{x}2*<W1>*<W2> - 2*{x}1*{x}3*<W1>*<W3> - 2*{x}2*{x}3*<W2>*<W3>"),
            format!("{x}1^2*<W1>^2 + {x}2^2*<W2>^2 + {x}3^2*<W3>^2"),
        ));
        let group = if x == "P" { "components/P" } else { "components/K" };
        for i in 1..=3 {
            let (j, k) = cyclic(i);
            let (j, k) = (j.min(k), j.max(k));
            out.push(entry(
                group,
                format!("{x}{i}^2*<W{i}>^2 - {x}{j}^2*<W{j}>^2 - {x}{k}^2*<W{k}>^2 - 2*{x}{j}*{x}{k}*<W{j}>*<W{k}>"),
                "0",
            ));
        }
    }
    for i in 1..=3 {
        out.push(entry("W brackets", format!("[<W{i}>, H]"), "0"));
        for j in 1..=3 {
            out.push(entry(
                "W brackets",
                format!("[<W{i}>, J{j}]"),
                eps_times(i, j, |k| format!("<W{k}>")),
            ));
            out.push(entry("W brackets", format!("[<W{i}>, P{j}]"), "0"));
            out.push(entry("W brackets", format!("[<W{i}>, K{j}]"), "0"));
            if i < j {
                out.push(entry("W brackets", format!("[<W{i}>, <W{j}>]"), "0"));
            }
        }
    }
    out.push(entry("JP brackets", "[<JP>, H]", "0"));
    for i in 1..=3 {
        out.push(entry("JP brackets", format!("[<JP>, J{i}]"), "0"));
        out.push(entry("JP brackets", format!("[<JP>, P{i}]"), "0"));
        out.push(entry("JP brackets", format!("[<JP>, K{i}]"), format!("<W{i}>")));
        out.push(entry(
            "JP brackets",
            format!("[<JP>, <W{i}>]"),
            format!("-{}", cross_w("P", i)),
        ));
    }
    out.push(entry("JW brackets", "[<JW>, H]", "0"));
    for i in 1..=3 {
        out.push(entry("JW brackets", format!("[<JW>, J{i}]"), "0"));
        out.push(entry("JW brackets", format!("[<JW>, <W{i}>]"), "0"));
        out.push(entry("JW brackets", format!("[<JW>, P{i}]"), cross_w("P", i)));
        out.push(entry("JW brackets", format!("[<JW>, K{i}]"), cross_w("K", i)));
    }
    for i in 1..=3 {
        out.push(entry(
            "JP cross",
            format!("[<JP>, {}]", cross_w("P", i)),
            format!("<C1>*<W{i}>"),
        ));
        out.push(entry(
            "JP cross",
            format!("[<JP>, {}]", cross_w("K", i)),
            format!("<KP>*<W{i}>"),
        ));
    }
    for i in 1..=3 {
        out.push(entry(
            "JW cross",
            format!("[<JW>, {}]", cross_w("P", i)),
            format!("-<C2>*P{i}"),
        ));
        out.push(entry(
            "JW cross",
            format!("[<JW>, {}]", cross_w("K", i)),
            format!("-<C2>*K{i}"),
        ));
    }
    out.push(entry(
        "JW JP",
        "[<JW>, <JP>]",
        format!(
            "J1*{} + J2*{} + J3*{}",
            cross_w("P", 1),
            cross_w("P", 2),
            cross_w("P", 3)
        ),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::catalog;

    #[test]
    fn documented_examples() {
        let g = EnvelopingAlgebra::new(catalog("galilei").unwrap()).unwrap();
        assert!(verify_identity(&g, "<PW>", "0").unwrap().passed());
        let last = identity_corpus().into_iter().find(|e| e.group == "JW JP").unwrap();
        assert_eq!(
            last.rhs,
            "J1*(P2*<W3> - P3*<W2>) + J2*(P3*<W1> - P1*<W3>) + J3*(P1*<W2> - P2*<W1>)"
        );
        assert!(verify_identity(&g, &last.lhs, &last.rhs).unwrap().passed());
        for x in ["H", "P2", "K3", "J1"] {
            assert!(verify_identity(&g, &format!("[{x}, {x}^2]"), "0").unwrap().passed());
        }
        let bad = verify_identity(&g, "[<JP>, K1]", "-<W1>").unwrap();
        assert!(!bad.passed());
        assert_eq!(bad.residual, parse_expression(&g, "2*<W1>").unwrap());
    }

    #[test]
    fn whole_corpus_holds() {
        let g = EnvelopingAlgebra::new(catalog("galilei").unwrap()).unwrap();
        let corpus = identity_corpus();
        for e in &corpus {
            let r = verify_identity(&g, &e.lhs, &e.rhs).unwrap();
            assert!(
                r.passed(),
                "{}: {} = {} (residual {})",
                e.group,
                e.lhs,
                e.rhs,
                r.residual
            );
        }
    }
}
