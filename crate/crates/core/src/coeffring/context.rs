use std::fmt;
use std::sync::{Arc, OnceLock};

use super::CoeffError;

/// Name of the contraction parameter in the standard context.
pub const CONTRACTION_PARAM: &str = "eps";

/// Parameter order of the standard context shared by every catalog algebra.
pub const STANDARD_PARAMS: [&str; 11] = ["a1", "a2", "b1", "b2", "c1", "c2", "m", "xi", "omega", "kappa", "eps"];

/// Unicode spellings accepted on input for a few standard parameters.
pub fn canonical_param_name(name: &str) -> &str {
    match name {
        "ω" => "omega",
        "κ" => "kappa",
        "ε" => "eps",
        "ξ" => "xi",
        "α1" | "α₁" => "a1",
        "α2" | "α₂" => "a2",
        other => other,
    }
}

#[derive(PartialEq, Eq, Hash)]
struct ContextInner {
    names: Vec<String>,
    laurent: Option<usize>,
}

/// An ordered, declared set of commuting parameters.
///
/// Polynomials store exponent vectors over this order, so two polynomials
/// can only be combined when they share a context. At most one slot (the
/// Laurent slot) may carry negative exponents.
#[derive(Clone)]
pub struct Context(Arc<ContextInner>);

impl Context {
    pub fn new<S: AsRef<str>>(names: &[S], laurent: Option<&str>) -> Result<Self, CoeffError> {
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            if !is_identifier(n) {
                return Err(CoeffError::InvalidParameterName(n.to_string()));
            }
            if out.iter().any(|o| o == n) {
                return Err(CoeffError::DuplicateParameter(n.to_string()));
            }
            out.push(n.to_string());
        }
        let laurent = match laurent {
            Some(l) => Some(
                out.iter()
                    .position(|n| n == l)
                    .ok_or_else(|| CoeffError::UnknownParameter(l.to_string()))?,
            ),
            None => None,
        };
        Ok(Context(Arc::new(ContextInner { names: out, laurent })))
    }

    /// The shared context `a1 a2 b1 b2 c1 c2 m xi omega kappa eps` with `eps` as Laurent slot.
    pub fn standard() -> Self {
        static STANDARD: OnceLock<Context> = OnceLock::new();
        STANDARD
            .get_or_init(|| Context::new(&STANDARD_PARAMS, Some(CONTRACTION_PARAM)).unwrap())
            .clone()
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.0.names[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        let name = canonical_param_name(name);
        self.0.names.iter().position(|n| n == name)
    }

    pub fn laurent_slot(&self) -> Option<usize> {
        self.0.laurent
    }

    pub fn laurent_name(&self) -> Option<&str> {
        self.0.laurent.map(|i| self.name(i))
    }

    /// Same declared parameters in the same order.
    pub fn same_as(&self, other: &Context) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    pub fn check_same(&self, other: &Context) -> Result<(), CoeffError> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(CoeffError::ContextMismatch {
                left: self.names().join(","),
                right: other.names().join(","),
            })
        }
    }

    /// A context extended by `extra` parameters (skipping names already present).
    pub fn extended<S: AsRef<str>>(&self, extra: &[S], laurent: Option<&str>) -> Result<Self, CoeffError> {
        let mut names: Vec<String> = self.names().to_vec();
        for e in extra {
            if !names.iter().any(|n| n == e.as_ref()) {
                names.push(e.as_ref().to_string());
            }
        }
        let laurent = laurent.or(self.laurent_name());
        Context::new(&names, laurent)
    }
}

impl PartialEq for Context {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Context {}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Context({})", self.names().join(","))
    }
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_context() {
        let ctx = Context::standard();
        assert_eq!(ctx.len(), 11);
        assert_eq!(ctx.laurent_name(), Some("eps"));
        assert_eq!(ctx.index_of("ω"), ctx.index_of("omega"));
        assert!(ctx.same_as(&Context::standard()));
    }

    #[test]
    fn rejects_duplicates_and_bad_names() {
        assert!(Context::new(&["x", "x"], None).is_err());
        assert!(Context::new(&["1x"], None).is_err());
        assert!(Context::new(&["x"], Some("y")).is_err());
    }

    #[test]
    fn structural_equality() {
        let a = Context::new(&["x", "y"], None).unwrap();
        let b = Context::new(&["x", "y"], None).unwrap();
        let c = Context::new(&["y", "x"], None).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
