use std::collections::BTreeMap;
use std::fmt;

use crate::coeffring::{Assignment, Context, Poly};

use super::LieError;

/// A basis element: its position in the ordered basis and its display name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorId<'a> {
    pub index: usize,
    pub name: &'a str,
}

/// Sparse linear combination of basis generators.
pub type Terms = Vec<(usize, Poly)>;

/// Finite-dimensional Lie algebra given by structure constants on a named basis.
///
/// Only brackets `[e_i, e_j]` with `i < j` are stored; the accessors supply
/// the sign for `i > j` and zero on the diagonal, so antisymmetry holds by
/// construction.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    name: String,
    ctx: Context,
    generators: Vec<String>,
    brackets: BTreeMap<(usize, usize), Terms>,
    metadata: BTreeMap<String, String>,
}

impl LieAlgebra {
    /// An abelian algebra on the given generators.
    pub fn new<S: AsRef<str>>(name: &str, ctx: &Context, generators: &[S]) -> Result<Self, LieError> {
        let mut names: Vec<String> = Vec::with_capacity(generators.len());
        for g in generators {
            let g = g.as_ref();
            if !crate::coeffring::is_identifier(g) {
                return Err(LieError::InvalidGeneratorName(g.to_string()));
            }
            if names.iter().any(|n| n == g) {
                return Err(LieError::DuplicateGenerator(g.to_string()));
            }
            names.push(g.to_string());
        }
        Ok(LieAlgebra {
            name: name.to_string(),
            ctx: ctx.clone(),
            generators: names,
            brackets: BTreeMap::new(),
            metadata: BTreeMap::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: &str) {
        self.name = name.to_string();
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generators
    }

    pub fn generators(&self) -> impl Iterator<Item = GeneratorId<'_>> {
        self.generators
            .iter()
            .enumerate()
            .map(|(index, name)| GeneratorId { index, name })
    }

    pub fn generator(&self, name: &str) -> Option<GeneratorId<'_>> {
        let name = match name {
            "Ξ" => "Xi",
            other => other,
        };
        self.generators.iter().position(|g| g == name).map(|index| GeneratorId {
            index,
            name: &self.generators[index],
        })
    }

    pub fn index_of(&self, name: &str) -> Result<usize, LieError> {
        self.generator(name)
            .map(|g| g.index)
            .ok_or_else(|| LieError::UnknownGenerator(name.to_string()))
    }

    pub fn generator_name(&self, index: usize) -> &str {
        &self.generators[index]
    }

    pub fn metadata(&self) -> &BTreeMap<String, String> {
        &self.metadata
    }

    pub fn set_metadata(&mut self, key: &str, value: &str) {
        self.metadata.insert(key.to_string(), value.to_string());
    }

    /// Sets `[e_a, e_b] = terms`; `a > b` is stored negated, `a == b` must be zero.
    pub fn set_bracket(&mut self, a: usize, b: usize, terms: Terms) -> Result<(), LieError> {
        let n = self.dim();
        if a >= n || b >= n || terms.iter().any(|(k, _)| *k >= n) {
            return Err(LieError::IndexOutOfRange);
        }
        for (_, c) in &terms {
            self.ctx.check_same(c.context())?;
        }
        let mut dense: BTreeMap<usize, Poly> = BTreeMap::new();
        for (k, c) in terms {
            dense.entry(k).and_modify(|acc| acc.add_assign_poly(&c)).or_insert(c);
        }
        let mut terms: Terms = dense.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if a == b {
            if terms.is_empty() {
                return Ok(());
            }
            return Err(LieError::NonzeroSelfBracket(self.generators[a].clone()));
        }
        let key = if a < b {
            (a, b)
        } else {
            for (_, c) in terms.iter_mut() {
                *c = -&*c;
            }
            (b, a)
        };
        if terms.is_empty() {
            self.brackets.remove(&key);
        } else {
            self.brackets.insert(key, terms);
        }
        Ok(())
    }

    /// Name-based variant of [`set_bracket`](Self::set_bracket) with coefficients in this context.
    pub fn set_bracket_named(&mut self, a: &str, b: &str, terms: &[(&str, Poly)]) -> Result<(), LieError> {
        let a = self.index_of(a)?;
        let b = self.index_of(b)?;
        let mut resolved = Vec::with_capacity(terms.len());
        for (g, c) in terms {
            resolved.push((self.index_of(g)?, c.clone()));
        }
        self.set_bracket(a, b, resolved)
    }

    /// Structure constants of `[e_i, e_j]` as sparse terms, sign applied.
    pub fn structure(&self, i: usize, j: usize) -> Terms {
        if i == j {
            return Vec::new();
        }
        if i < j {
            self.brackets.get(&(i, j)).cloned().unwrap_or_default()
        } else {
            self.brackets
                .get(&(j, i))
                .map(|t| t.iter().map(|(k, c)| (*k, -c)).collect())
                .unwrap_or_default()
        }
    }

    /// Stored brackets `(i, j, terms)` with `i < j`, in lexicographic pair order.
    pub fn stored_brackets(&self) -> impl Iterator<Item = (usize, usize, &Terms)> {
        self.brackets.iter().map(|(&(i, j), t)| (i, j, t))
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    pub fn zero_vector(&self) -> Vec<Poly> {
        vec![Poly::zero(&self.ctx); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Poly> {
        let mut v = self.zero_vector();
        v[i] = Poly::one(&self.ctx);
        v
    }

    /// Dense `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Poly> {
        let mut v = self.zero_vector();
        for (k, c) in self.structure(i, j) {
            v[k] = c;
        }
        v
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &[Poly], y: &[Poly]) -> Result<Vec<Poly>, LieError> {
        let n = self.dim();
        if x.len() != n || y.len() != n {
            return Err(LieError::DimensionMismatch {
                expected: n,
                found: if x.len() != n { x.len() } else { y.len() },
            });
        }
        for c in x.iter().chain(y.iter()) {
            self.ctx.check_same(c.context())?;
        }
        let mut out = self.zero_vector();
        for (&(i, j), terms) in &self.brackets {
            // x_i y_j - x_j y_i
            let w = &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
            if w.is_zero() {
                continue;
            }
            for (k, c) in terms {
                out[*k].add_assign_poly(&(&w * c));
            }
        }
        Ok(out)
    }

    /// Applies a parameter assignment to every structure constant.
    pub fn specialize(&self, assignment: &Assignment) -> Result<LieAlgebra, LieError> {
        let mut out = self.clone();
        out.brackets.clear();
        for (&(i, j), terms) in &self.brackets {
            let mut new_terms = Vec::with_capacity(terms.len());
            for (k, c) in terms {
                new_terms.push((*k, c.substitute(assignment)?));
            }
            out.set_bracket(i, j, new_terms)?;
        }
        Ok(out)
    }

    /// Re-expresses all structure constants in a larger parameter context.
    pub fn lift(&self, ctx: &Context) -> Result<LieAlgebra, LieError> {
        let mut out = self.clone();
        out.ctx = ctx.clone();
        out.brackets.clear();
        for (&(i, j), terms) in &self.brackets {
            let mut new_terms = Vec::with_capacity(terms.len());
            for (k, c) in terms {
                new_terms.push((*k, c.lift(ctx)?));
            }
            out.set_bracket(i, j, new_terms)?;
        }
        Ok(out)
    }

    /// Equal generator names (in order) and equal structure constants.
    ///
    /// Name, metadata and parameter context are ignored.
    pub fn structure_eq(&self, other: &LieAlgebra) -> bool {
        self.structure_diff(other).is_empty()
    }

    /// Human-readable list of differences in basis or structure constants.
    pub fn structure_diff(&self, other: &LieAlgebra) -> Vec<String> {
        if self.generators != other.generators {
            return vec![format!(
                "bases differ: [{}] vs [{}]",
                self.generators.join(","),
                other.generators.join(",")
            )];
        }
        let mut diffs = Vec::new();
        let keys: std::collections::BTreeSet<_> = self.brackets.keys().chain(other.brackets.keys()).copied().collect();
        for (i, j) in keys {
            let a = self.structure(i, j);
            let b = other.structure(i, j);
            if a != b {
                diffs.push(format!(
                    "[{},{}]: {} vs {}",
                    self.generators[i],
                    self.generators[j],
                    self.format_terms(&a),
                    other.format_terms(&b)
                ));
            }
        }
        diffs
    }

    pub fn format_terms(&self, terms: &[(usize, Poly)]) -> String {
        let names: Vec<(&str, &Poly)> = terms.iter().map(|(k, c)| (self.generators[*k].as_str(), c)).collect();
        format_linear(&names)
    }

    /// Canonical text of a dense vector, e.g. `-P1` or `omega*H`.
    pub fn format_vector(&self, v: &[Poly]) -> String {
        let names: Vec<(&str, &Poly)> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (self.generators[k].as_str(), c))
            .collect();
        format_linear(&names)
    }
}

/// Formats `sum coeff*basis` with signs pulled out of single-term coefficients.
pub fn format_linear(terms: &[(&str, &Poly)]) -> String {
    let mut out = String::new();
    for (basis, coeff) in terms {
        if coeff.is_zero() {
            continue;
        }
        let first = out.is_empty();
        let (neg, body) = signed_factor(coeff);
        match (first, neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        match body {
            None => out.push_str(basis),
            Some(b) if basis.is_empty() => out.push_str(&b),
            Some(b) => {
                out.push_str(&b);
                out.push('*');
                out.push_str(basis);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Splits a coefficient into (is negative, text of |coeff| or None when it is 1).
pub(crate) fn signed_factor(coeff: &Poly) -> (bool, Option<String>) {
    if coeff.len() == 1 {
        let (_, c) = coeff.terms().next().unwrap();
        let neg = c.is_negative();
        let abs = if neg { -coeff } else { coeff.clone() };
        if abs.is_one() {
            (neg, None)
        } else {
            (neg, Some(abs.to_string()))
        }
    } else {
        (false, Some(format!("({coeff})")))
    }
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} ({})", self.name, self.generators.join(", "))?;
        for (&(i, j), terms) in &self.brackets {
            writeln!(
                f,
                "  [{},{}] = {}",
                self.generators[i],
                self.generators[j],
                self.format_terms(terms)
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn so3() -> LieAlgebra {
        let ctx = Context::standard();
        let mut a = LieAlgebra::new("so3", &ctx, &["J1", "J2", "J3"]).unwrap();
        let one = Poly::one(&ctx);
        a.set_bracket_named("J1", "J2", &[("J3", one.clone())]).unwrap();
        a.set_bracket_named("J2", "J3", &[("J1", one.clone())]).unwrap();
        a.set_bracket_named("J3", "J1", &[("J2", one)]).unwrap();
        a
    }

    #[test]
    fn antisymmetry_by_construction() {
        let a = so3();
        assert_eq!(a.format_terms(&a.structure(0, 1)), "J3");
        assert_eq!(a.format_terms(&a.structure(1, 0)), "-J3");
        assert_eq!(a.format_terms(&a.structure(0, 2)), "-J2");
        assert!(a.structure(1, 1).is_empty());
    }

    #[test]
    fn self_bracket_rejected() {
        let mut a = so3();
        let one = Poly::one(a.context());
        assert!(matches!(
            a.set_bracket(0, 0, vec![(1, one)]),
            Err(LieError::NonzeroSelfBracket(_))
        ));
        assert!(a.set_bracket(0, 0, vec![]).is_ok());
    }

    #[test]
    fn bilinear_bracket_and_self_bracket_zero() {
        let a = so3();
        let ctx = a.context().clone();
        let x = vec![
            Poly::integer(&ctx, 2),
            Poly::param(&ctx, "a1").unwrap(),
            Poly::integer(&ctx, -1),
        ];
        let r = a.bracket(&x, &x).unwrap();
        assert!(r.iter().all(Poly::is_zero));
        let y = a.basis_vector(1);
        // [2 J1 + a1 J2 - J3, J2] = 2 J3 + J1
        assert_eq!(a.format_vector(&a.bracket(&x, &y).unwrap()), "J1 + 2*J3");
        assert!(matches!(
            a.bracket(&x[..2], &y),
            Err(LieError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn duplicate_generators_rejected() {
        let ctx = Context::standard();
        assert!(LieAlgebra::new("x", &ctx, &["A", "A"]).is_err());
        assert!(LieAlgebra::new("x", &ctx, &["A-1"]).is_err());
    }

    #[test]
    fn linear_formatting() {
        let ctx = Context::standard();
        let p = |s| Poly::parse(&ctx, s).unwrap();
        let t = [("H", &p("-omega")), ("J1", &p("a1 + 1")), ("J2", &p("-3/2"))];
        assert_eq!(format_linear(&t), "-omega*H + (a1 + 1)*J1 - 3/2*J2");
        assert_eq!(format_linear(&[]), "0");
    }
}
