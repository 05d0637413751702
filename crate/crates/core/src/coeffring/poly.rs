use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use super::{CoeffError, Context, Rational};

/// Exponent vector over a context's parameter order.
///
/// Ordered graded-lexicographically: higher total degree first compares
/// greater, ties broken lexicographically with earlier parameters dominant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[i32; 12]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[i32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Value bound to a parameter by an [`Assignment`].
#[derive(Clone, Debug, PartialEq)]
pub enum AssignValue {
    Rational(Rational),
    Poly(Poly),
}

/// Partial map from parameter names to rationals or polynomials.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Assignment {
    values: BTreeMap<String, AssignValue>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_rational(mut self, name: &str, value: Rational) -> Self {
        self.set_rational(name, value);
        self
    }

    pub fn with_poly(mut self, name: &str, value: Poly) -> Self {
        self.set_poly(name, value);
        self
    }

    pub fn set_rational(&mut self, name: &str, value: Rational) {
        let name = super::canonical_param_name(name).to_string();
        self.values.insert(name, AssignValue::Rational(value));
    }

    pub fn set_poly(&mut self, name: &str, value: Poly) {
        let name = super::canonical_param_name(name).to_string();
        self.values.insert(name, AssignValue::Poly(value));
    }

    pub fn get(&self, name: &str) -> Option<&AssignValue> {
        self.values.get(name)
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &AssignValue)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v))
    }
}

/// Sparse Laurent-in-one-slot polynomial over [`Rational`] in the parameters of a [`Context`].
#[derive(Clone)]
pub struct Poly {
    ctx: Context,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(ctx: &Context) -> Self {
        Poly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Context) -> Self {
        Poly::constant(ctx, Rational::one())
    }

    pub fn constant(ctx: &Context, value: Rational) -> Self {
        let mut p = Poly::zero(ctx);
        if !value.is_zero() {
            p.terms.insert(Monomial::one(ctx.len()), value);
        }
        p
    }

    pub fn integer(ctx: &Context, n: i64) -> Self {
        Poly::constant(ctx, Rational::integer(n))
    }

    /// The polynomial consisting of the single parameter `name`.
    pub fn param(ctx: &Context, name: &str) -> Result<Self, CoeffError> {
        let idx = ctx
            .index_of(name)
            .ok_or_else(|| CoeffError::UnknownParameter(name.to_string()))?;
        let mut exps = vec![0; ctx.len()];
        exps[idx] = 1;
        Ok(Poly::from_term(ctx, Monomial::from_exponents(&exps), Rational::one()))
    }

    pub fn from_term(ctx: &Context, mono: Monomial, coeff: Rational) -> Self {
        assert_eq!(mono.0.len(), ctx.len(), "monomial arity does not match context");
        let mut p = Poly::zero(ctx);
        if !coeff.is_zero() {
            p.terms.insert(mono, coeff);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, validating the Laurent slot.
    pub fn from_terms<I>(ctx: &Context, terms: I) -> Result<Self, CoeffError>
    where
        I: IntoIterator<Item = (Vec<i32>, Rational)>,
    {
        let mut p = Poly::zero(ctx);
        for (exps, c) in terms {
            if exps.len() != ctx.len() {
                return Err(CoeffError::ArityMismatch {
                    expected: ctx.len(),
                    found: exps.len(),
                });
            }
            check_exponents(ctx, &exps)?;
            p.add_term(Monomial::from_exponents(&exps), c);
        }
        Ok(p)
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// True for zero and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        match self.terms.len() {
            0 => true,
            1 => self.terms.keys().next().unwrap().is_one(),
            _ => false,
        }
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    /// Total degree of the leading term; `None` for zero.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub(crate) fn add_term(&mut self, mono: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, CoeffError> {
        self.ctx.check_same(&other.ctx)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, CoeffError> {
        self.ctx.check_same(&other.ctx)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, CoeffError> {
        self.ctx.check_same(&other.ctx)?;
        Ok(self.mul_unchecked(other))
    }

    /// In-place `self += other`. Panics on context mismatch.
    pub fn add_assign_poly(&mut self, other: &Poly) {
        self.ctx
            .check_same(&other.ctx)
            .expect("adding polynomials from different contexts");
        self.add_assign_unchecked(other);
    }

    fn add_assign_unchecked(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ctx);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        let mut out = Poly::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, factor: &Rational) -> Poly {
        if factor.is_zero() {
            return Poly::zero(&self.ctx);
        }
        if factor.is_one() {
            return self.clone();
        }
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::one(&self.ctx);
        for _ in 0..exp {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Inverse of a single-term polynomial whose inverse stays within the Laurent slot.
    pub fn inverse_monomial(&self) -> Result<Poly, CoeffError> {
        if self.terms.len() != 1 {
            return Err(CoeffError::NotInvertible(self.to_string()));
        }
        let (m, c) = self.terms.iter().next().unwrap();
        let exps: Vec<i32> = m.0.iter().map(|e| -e).collect();
        check_exponents(&self.ctx, &exps).map_err(|_| CoeffError::NotInvertible(self.to_string()))?;
        Ok(Poly::from_term(&self.ctx, Monomial::from_exponents(&exps), c.recip()?))
    }

    fn ipow(&self, exp: i32) -> Result<Poly, CoeffError> {
        if exp >= 0 {
            Ok(self.pow(exp as u32))
        } else {
            Ok(self.inverse_monomial()?.pow((-exp) as u32))
        }
    }

    /// Replaces each assigned parameter by its value and renormalizes.
    ///
    /// Assignments naming parameters outside this context are ignored.
    pub fn substitute(&self, assignment: &Assignment) -> Result<Poly, CoeffError> {
        let mut slots: Vec<(usize, Poly)> = Vec::new();
        for (name, value) in assignment.iter() {
            let Some(idx) = self.ctx.index_of(name) else {
                continue;
            };
            let v = match value {
                AssignValue::Rational(r) => Poly::constant(&self.ctx, r.clone()),
                AssignValue::Poly(p) => {
                    self.ctx.check_same(&p.ctx)?;
                    p.clone()
                }
            };
            slots.push((idx, v));
        }
        if slots.is_empty() {
            return Ok(self.clone());
        }
        let mut out = Poly::zero(&self.ctx);
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let mut factor = Poly::constant(&self.ctx, c.clone());
            for (idx, v) in &slots {
                let e = rest.0[*idx];
                if e != 0 {
                    rest.0[*idx] = 0;
                    factor = factor.mul_unchecked(&v.ipow(e)?);
                }
            }
            for (fm, fc) in factor.terms {
                out.add_term(fm.mul(&rest), fc);
            }
        }
        Ok(out)
    }

    /// Evaluates the contraction limit `eps -> 0`.
    ///
    /// Terms with positive powers of the Laurent parameter vanish; any
    /// negative power is a divergence, reported with the most negative power.
    pub fn limit_eps_zero(&self) -> Result<Poly, CoeffError> {
        let slot = self.ctx.laurent_slot().ok_or(CoeffError::NoLaurentParameter)?;
        let worst = self.terms.keys().map(|m| m.0[slot]).min().unwrap_or(0);
        if worst < 0 {
            return Err(CoeffError::Divergence { power: worst });
        }
        let mut out = Poly::zero(&self.ctx);
        for (m, c) in &self.terms {
            if m.0[slot] == 0 {
                out.add_term(m.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Minimum and maximum exponent of `name` across the terms (`(0,0)` for zero).
    pub fn degree_range(&self, name: &str) -> Result<(i32, i32), CoeffError> {
        let idx = self.param_index(name)?;
        let mut it = self.terms.keys().map(|m| m.0[idx]);
        let Some(first) = it.next() else {
            return Ok((0, 0));
        };
        Ok(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Coefficient of `name^power`, as a polynomial free of `name`.
    pub fn coefficient_of(&self, name: &str, power: i32) -> Result<Poly, CoeffError> {
        let idx = self.param_index(name)?;
        let mut out = Poly::zero(&self.ctx);
        for (m, c) in &self.terms {
            if m.0[idx] == power {
                let mut rest = m.clone();
                rest.0[idx] = 0;
                out.add_term(rest, c.clone());
            }
        }
        Ok(out)
    }

    /// Rewrites `name^power -> value` repeatedly, leaving exponents of `name` below `power`.
    ///
    /// This is reduction modulo a constraint of the form `name^power = value`
    /// where `value` does not contain `name`.
    pub fn reduce_power(&self, name: &str, power: u32, value: &Poly) -> Result<Poly, CoeffError> {
        self.ctx.check_same(&value.ctx)?;
        let idx = self.param_index(name)?;
        if power == 0 {
            return Err(CoeffError::InvalidReduction(format!("{name}^0")));
        }
        if value.degree_range(name)? != (0, 0) {
            return Err(CoeffError::InvalidReduction(format!(
                "replacement for {name}^{power} contains {name}"
            )));
        }
        let power = power as i32;
        let mut out = Poly::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e < power {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            let mut rest = m.clone();
            rest.0[idx] = e % power;
            let factor = value.pow((e / power) as u32);
            for (fm, fc) in &factor.terms {
                out.add_term(fm.mul(&rest), fc * c);
            }
        }
        Ok(out)
    }

    /// Re-expresses this polynomial in a context containing all of its used parameters.
    pub fn lift(&self, ctx: &Context) -> Result<Poly, CoeffError> {
        if self.ctx.same_as(ctx) {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.ctx.len());
        for name in self.ctx.names() {
            map.push(ctx.index_of(name));
        }
        let mut out = Poly::zero(ctx);
        for (m, c) in &self.terms {
            let mut exps = vec![0; ctx.len()];
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => exps[j] = e,
                    None => return Err(CoeffError::UnknownParameter(self.ctx.name(i).to_string())),
                }
            }
            check_exponents(ctx, &exps)?;
            out.add_term(Monomial::from_exponents(&exps), c.clone());
        }
        Ok(out)
    }

    /// Names of the parameters that occur with a nonzero exponent.
    pub fn used_params(&self) -> Vec<&str> {
        (0..self.ctx.len())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] != 0))
            .map(|i| self.ctx.name(i))
            .collect()
    }

    fn param_index(&self, name: &str) -> Result<usize, CoeffError> {
        self.ctx
            .index_of(name)
            .ok_or_else(|| CoeffError::UnknownParameter(name.to_string()))
    }

    /// Context-independent view: each term as sorted `(name, exponent)` pairs.
    fn named_terms(&self) -> Vec<(Vec<(&str, i32)>, &Rational)> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut named: Vec<(&str, i32)> =
                    m.0.iter()
                        .enumerate()
                        .filter(|(_, &e)| e != 0)
                        .map(|(i, &e)| (self.ctx.name(i), e))
                        .collect();
                named.sort();
                (named, c)
            })
            .collect();
        v.sort();
        v
    }

    pub(crate) fn fmt_monomial(&self, m: &Monomial, f: &mut impl fmt::Write) -> fmt::Result {
        let mut first = true;
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            f.write_str(self.ctx.name(i))?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }

    /// Canonical text with `(...)` around multi-term polynomials, for use as a factor.
    pub fn to_factor_string(&self) -> String {
        if self.terms.len() > 1 {
            format!("({self})")
        } else {
            self.to_string()
        }
    }
}

fn check_exponents(ctx: &Context, exps: &[i32]) -> Result<(), CoeffError> {
    for (i, &e) in exps.iter().enumerate() {
        if e < 0 && ctx.laurent_slot() != Some(i) {
            return Err(CoeffError::NegativeExponent(ctx.name(i).to_string()));
        }
    }
    Ok(())
}

impl PartialEq for Poly {
    /// Equality by parameter names and coefficients, independent of context order.
    fn eq(&self, other: &Self) -> bool {
        if self.ctx.same_as(&other.ctx) {
            return self.terms == other.terms;
        }
        self.named_terms() == other.named_terms()
    }
}

impl Eq for Poly {}

impl fmt::Display for Poly {
    /// Canonical form: terms in descending graded-lex order, explicit `*`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                self.fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    /// Panics on context mismatch; see [`Poly::checked_add`].
    fn add(self, rhs: &'a Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial context mismatch")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial context mismatch")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial context mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context::standard()
    }

    fn p(s: &str) -> Poly {
        Poly::parse(&ctx(), s).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn add_cancels() {
        assert_eq!(&p("a1 + 2") + &p("-a1"), p("2"));
        assert_eq!(&Poly::zero(&ctx()) + &p("omega"), p("omega"));
        assert_eq!(&p("1/2*omega") + &p("1/2*omega"), p("omega"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!((&p("a2") * &p("a2")).to_string(), "a2^2");
        assert!((&p("a1*c1 + a2*c2") * &Poly::zero(&ctx())).is_zero());
        assert_eq!(&p("1 + eps^-1") * &p("eps"), p("eps + 1"));
    }

    #[test]
    fn context_mismatch_errors() {
        let other = Context::new(&["a1"], None).unwrap();
        let x = Poly::param(&other, "a1").unwrap();
        assert!(matches!(
            x.checked_add(&p("a1")),
            Err(CoeffError::ContextMismatch { .. })
        ));
        assert!(x.checked_mul(&p("a1")).is_err());
        // semantic equality still holds across contexts
        assert_eq!(x, p("a1"));
    }

    #[test]
    fn substitute_examples() {
        let witness = Assignment::new()
            .with_rational("a2", q(1, 1))
            .with_rational("c1", q(1, 1))
            .with_rational("c2", q(1, 4));
        assert_eq!(p("-4*a2^2*c1*c2").substitute(&witness).unwrap(), p("-1"));
        assert_eq!(p("omega").substitute(&Assignment::new()).unwrap(), p("omega"));
        let witness = witness.with_rational("a1", q(-1, 4));
        assert!(p("a1*c1 + a2*c2").substitute(&witness).unwrap().is_zero());
    }

    #[test]
    fn substitute_poly_value() {
        let a = Assignment::new().with_poly("omega", p("-kappa^2 + 1"));
        assert_eq!(
            p("omega^2 + a1").substitute(&a).unwrap(),
            p("kappa^4 - 2*kappa^2 + 1 + a1")
        );
    }

    #[test]
    fn substitute_into_laurent_slot() {
        let a = Assignment::new().with_rational("eps", q(2, 1));
        assert_eq!(p("eps^-2*a1 + eps").substitute(&a).unwrap(), p("1/4*a1 + 2"));
        let a = Assignment::new().with_rational("eps", q(0, 1));
        assert!(p("eps^-1").substitute(&a).is_err());
    }

    #[test]
    fn limit_examples() {
        assert_eq!(p("eps*a1 + 2").limit_eps_zero().unwrap(), p("2"));
        assert!(matches!(
            p("eps^-1").limit_eps_zero(),
            Err(CoeffError::Divergence { power: -1 })
        ));
        assert_eq!(p("eps^2*omega + kappa").limit_eps_zero().unwrap(), p("kappa"));
        assert!(matches!(
            p("eps^-1 + eps^-3*a1 + 1").limit_eps_zero(),
            Err(CoeffError::Divergence { power: -3 })
        ));
    }

    #[test]
    fn negative_exponent_outside_laurent_slot_rejected() {
        assert!(Poly::from_terms(&ctx(), [(vec![-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0], q(1, 1))]).is_err());
        assert!(p("a1").inverse_monomial().is_err());
        assert_eq!(p("2*eps").inverse_monomial().unwrap(), p("1/2*eps^-1"));
    }

    #[test]
    fn reduce_power_modulo_constraint() {
        // a1^2 = -1
        let r = p("a1^3 + a1^2*m + 5").reduce_power("a1", 2, &p("-1")).unwrap();
        assert_eq!(r, p("-a1 - m + 5"));
        assert!(p("a1").reduce_power("a1", 2, &p("a1")).is_err());
    }

    #[test]
    fn coefficient_extraction() {
        let x = p("omega^2*a1 + omega*a2 + omega*c1 + 3");
        assert_eq!(x.coefficient_of("omega", 0).unwrap(), p("3"));
        assert_eq!(x.coefficient_of("omega", 1).unwrap(), p("a2 + c1"));
        assert_eq!(x.coefficient_of("omega", 2).unwrap(), p("a1"));
        assert_eq!(x.degree_range("omega").unwrap(), (0, 2));
    }

    #[test]
    fn canonical_display_order() {
        assert_eq!(p("2 + a1 + a2^2*c1 - c1*c2").to_string(), "a2^2*c1 - c1*c2 + a1 + 2");
        assert_eq!(p("-3/4*a1").to_string(), "-3/4*a1");
        assert_eq!(p("eps^-1").to_string(), "eps^-1");
        assert_eq!(Poly::zero(&ctx()).to_string(), "0");
    }

    #[test]
    fn lift_between_contexts() {
        let small = Context::new(&["omega"], None).unwrap();
        let x = Poly::parse(&small, "2*omega + 1").unwrap();
        let y = x.lift(&ctx()).unwrap();
        assert!(y.context().same_as(&ctx()));
        assert_eq!(y, p("2*omega + 1"));
        assert!(p("a1").lift(&small).is_err());
    }
}
