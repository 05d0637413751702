use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::coeffring::{Assignment, Context, Poly};
use crate::liealg::{signed_factor, LieAlgebra};

use super::monomial::{Letters, PbwMonomial, Word, WordKey};
use super::UeaError;

/// The universal enveloping algebra of a Lie algebra, with the generator
/// pair commutators tabulated once for normal ordering.
#[derive(Debug)]
pub struct EnvelopingAlgebra {
    alg: LieAlgebra,
    /// `swap[b * n + a]` for `b > a`: the terms of `[x_b, x_a]`.
    swap: Vec<Vec<(u8, Poly)>>,
}

impl EnvelopingAlgebra {
    pub fn new(alg: LieAlgebra) -> Result<Arc<Self>, UeaError> {
        let n = alg.dim();
        if n > u8::MAX as usize {
            return Err(UeaError::TooManyGenerators(n));
        }
        let mut swap = vec![Vec::new(); n * n];
        for b in 0..n {
            for a in 0..b {
                swap[b * n + a] = alg.structure(b, a).into_iter().map(|(k, c)| (k as u8, c)).collect();
            }
        }
        Ok(Arc::new(EnvelopingAlgebra { alg, swap }))
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn context(&self) -> &Context {
        self.alg.context()
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn names(&self) -> &[String] {
        self.alg.generator_names()
    }

    /// Rewrites pending words into PBW form.
    ///
    /// Always expands the largest pending word at its leftmost inversion
    /// `x_b x_a -> x_a x_b + [x_b, x_a]`; see [`WordKey`] for why this
    /// visits each word once.
    fn normalize(&self, mut pending: BTreeMap<WordKey, Poly>) -> BTreeMap<PbwMonomial, Poly> {
        let n = self.dim();
        let mut out: BTreeMap<PbwMonomial, Poly> = BTreeMap::new();
        while let Some((WordKey(word), coeff)) = pending.pop_last() {
            if coeff.is_zero() {
                continue;
            }
            let Some(p) = word.windows(2).position(|w| w[0] > w[1]) else {
                accumulate(&mut out, PbwMonomial(word), coeff);
                continue;
            };
            let (b, a) = (word[p] as usize, word[p + 1] as usize);
            for (k, c) in &self.swap[b * n + a] {
                let mut shorter = Letters::with_capacity(word.len() - 1);
                shorter.extend_from_slice(&word[..p]);
                shorter.push(*k);
                shorter.extend_from_slice(&word[p + 2..]);
                accumulate(&mut pending, WordKey(shorter), &coeff * c);
            }
            let mut swapped = word;
            swapped.swap(p, p + 1);
            accumulate(&mut pending, WordKey(swapped), coeff);
        }
        out
    }

    fn element(self: &Arc<Self>, terms: BTreeMap<PbwMonomial, Poly>) -> UEAElement {
        UEAElement {
            uea: Arc::clone(self),
            terms,
        }
    }
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, Poly>, key: K, coeff: Poly) {
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(coeff);
        }
        Entry::Occupied(mut o) => {
            o.get_mut().add_assign_poly(&coeff);
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Canonical PBW form of a list of words.
pub fn normal_form(uea: &Arc<EnvelopingAlgebra>, words: &[Word]) -> Result<UEAElement, UeaError> {
    let mut pending = BTreeMap::new();
    for w in words {
        uea.context().check_same(w.coeff.context())?;
        let mut letters = Letters::with_capacity(w.letters.len());
        for &l in &w.letters {
            if l >= uea.dim() {
                return Err(UeaError::Lie(crate::liealg::LieError::IndexOutOfRange));
            }
            letters.push(l as u8);
        }
        accumulate(&mut pending, WordKey(letters), w.coeff.clone());
    }
    Ok(uea.element(uea.normalize(pending)))
}

/// Element of the enveloping algebra as a sparse PBW expansion.
///
/// Every stored coefficient is nonzero and every key is a normal-ordered
/// monomial, so equality of the term maps is equality of elements.
#[derive(Clone)]
pub struct UEAElement {
    uea: Arc<EnvelopingAlgebra>,
    terms: BTreeMap<PbwMonomial, Poly>,
}

impl UEAElement {
    pub fn zero(uea: &Arc<EnvelopingAlgebra>) -> Self {
        uea.element(BTreeMap::new())
    }

    pub fn scalar(uea: &Arc<EnvelopingAlgebra>, c: Poly) -> Result<Self, UeaError> {
        uea.context().check_same(c.context())?;
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(PbwMonomial::unit(), c);
        }
        Ok(uea.element(terms))
    }

    pub fn one(uea: &Arc<EnvelopingAlgebra>) -> Self {
        Self::scalar(uea, Poly::one(uea.context())).expect("own context")
    }

    pub fn generator(uea: &Arc<EnvelopingAlgebra>, index: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(
            PbwMonomial(Letters::from_slice(&[index as u8])),
            Poly::one(uea.context()),
        );
        uea.element(terms)
    }

    pub fn generator_named(uea: &Arc<EnvelopingAlgebra>, name: &str) -> Result<Self, UeaError> {
        Ok(Self::generator(uea, uea.algebra().index_of(name)?))
    }

    /// Sum of `coeff * monomial` terms; the monomials need not be distinct.
    pub fn from_terms(
        uea: &Arc<EnvelopingAlgebra>,
        terms: impl IntoIterator<Item = (PbwMonomial, Poly)>,
    ) -> Result<Self, UeaError> {
        let mut out = BTreeMap::new();
        for (m, c) in terms {
            uea.context().check_same(c.context())?;
            if m.letters().windows(2).any(|w| w[0] > w[1]) || m.letters().iter().any(|&l| l as usize >= uea.dim()) {
                return Err(UeaError::NotNormalOrdered);
            }
            accumulate(&mut out, m, c);
        }
        Ok(uea.element(out))
    }

    pub fn uea(&self) -> &Arc<EnvelopingAlgebra> {
        &self.uea
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.uea.algebra()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in display order (highest degree first).
    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Poly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &PbwMonomial) -> Option<&Poly> {
        self.terms.get(m)
    }

    /// Highest PBW degree present, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(PbwMonomial::degree).max()
    }

    /// The coefficient of the unit monomial when that is the only term.
    pub fn as_scalar(&self) -> Option<Poly> {
        match self.terms.len() {
            0 => Some(Poly::zero(self.uea.context())),
            1 => self.terms.get(&PbwMonomial::unit()).cloned(),
            _ => None,
        }
    }

    fn check_same(&self, other: &UEAElement) -> Result<(), UeaError> {
        if Arc::ptr_eq(&self.uea, &other.uea) {
            Ok(())
        } else {
            Err(UeaError::AlgebraMismatch {
                left: self.algebra().name().to_string(),
                right: other.algebra().name().to_string(),
            })
        }
    }

    pub fn add(&self, other: &UEAElement) -> Result<UEAElement, UeaError> {
        self.check_same(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(self.uea.element(terms))
    }

    pub fn sub(&self, other: &UEAElement) -> Result<UEAElement, UeaError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UEAElement {
        self.uea
            .element(self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }

    pub fn scale(&self, c: &Poly) -> Result<UEAElement, UeaError> {
        self.uea.context().check_same(c.context())?;
        let terms = self
            .terms
            .iter()
            .map(|(m, x)| (m.clone(), x * c))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        Ok(self.uea.element(terms))
    }

    /// Associative product, normal-ordered.
    pub fn product(&self, other: &UEAElement) -> Result<UEAElement, UeaError> {
        self.check_same(other)?;
        let mut pending = BTreeMap::new();
        push_products(&mut pending, self, other, false);
        Ok(self.uea.element(self.uea.normalize(pending)))
    }

    /// `ab - ba`, normal-ordered in a single pass.
    pub fn commutator(&self, other: &UEAElement) -> Result<UEAElement, UeaError> {
        self.check_same(other)?;
        let mut pending = BTreeMap::new();
        push_products(&mut pending, self, other, false);
        push_products(&mut pending, other, self, true);
        Ok(self.uea.element(self.uea.normalize(pending)))
    }

    pub fn pow(&self, exp: u32) -> UEAElement {
        let mut acc = UEAElement::one(&self.uea);
        for _ in 0..exp {
            acc = acc.product(self).expect("same algebra");
        }
        acc
    }

    /// Substitutes parameters in every coefficient; generators are untouched.
    pub fn substitute(&self, assignment: &Assignment) -> Result<UEAElement, UeaError> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let c = c.substitute(assignment)?;
            if !c.is_zero() {
                terms.insert(m.clone(), c);
            }
        }
        Ok(self.uea.element(terms))
    }

    /// Splits coefficients by powers of `param`: `self = sum param^k * part_k`.
    pub fn split_by_power(&self, param: &str) -> Result<BTreeMap<i32, UEAElement>, UeaError> {
        let mut parts: BTreeMap<i32, BTreeMap<PbwMonomial, Poly>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (lo, hi) = c.degree_range(param)?;
            for k in lo..=hi {
                let part = c.coefficient_of(param, k)?;
                if !part.is_zero() {
                    parts.entry(k).or_default().insert(m.clone(), part);
                }
            }
        }
        Ok(parts.into_iter().map(|(k, t)| (k, self.uea.element(t))).collect())
    }

    /// Re-reads the same PBW expansion over another algebra by generator name.
    pub fn transfer(&self, target: &Arc<EnvelopingAlgebra>) -> Result<UEAElement, UeaError> {
        let map: Vec<u8> = self
            .uea
            .names()
            .iter()
            .map(|n| target.algebra().index_of(n).map(|i| i as u8))
            .collect::<Result<_, _>>()?;
        let mut words = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let letters = m.letters().iter().map(|&l| map[l as usize] as usize).collect();
            words.push(Word::new(letters, c.lift(target.context())?));
        }
        normal_form(target, &words)
    }

    /// Words of this element, for feeding back into [`normal_form`].
    pub fn to_words(&self) -> Vec<Word> {
        self.terms
            .iter()
            .map(|(m, c)| Word::new(m.letters().iter().map(|&l| l as usize).collect(), c.clone()))
            .collect()
    }
}

fn push_products(pending: &mut BTreeMap<WordKey, Poly>, a: &UEAElement, b: &UEAElement, negate: bool) {
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            let mut w = Letters::with_capacity(ma.degree() + mb.degree());
            w.extend_from_slice(ma.letters());
            w.extend_from_slice(mb.letters());
            let c = ca * cb;
            accumulate(pending, WordKey(w), if negate { -&c } else { c });
        }
    }
}

/// Product of two elements of the same enveloping algebra.
pub fn product(a: &UEAElement, b: &UEAElement) -> Result<UEAElement, UeaError> {
    a.product(b)
}

pub fn commutator(a: &UEAElement, b: &UEAElement) -> Result<UEAElement, UeaError> {
    a.commutator(b)
}

/// First generator that fails to commute with `x`, with the nonzero commutator.
#[derive(Clone, Debug)]
pub struct CentralityWitness {
    pub generator: String,
    pub commutator: UEAElement,
}

/// `Ok` iff `x` commutes with every basis generator.
pub fn is_central(x: &UEAElement) -> Result<(), CentralityWitness> {
    let uea = x.uea();
    for g in 0..uea.dim() {
        let c = x.commutator(&UEAElement::generator(uea, g)).expect("same algebra");
        if !c.is_zero() {
            return Err(CentralityWitness {
                generator: uea.names()[g].clone(),
                commutator: c,
            });
        }
    }
    Ok(())
}

impl PartialEq for UEAElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.uea, &other.uea) || self.uea.names() == other.uea.names()) && self.terms == other.terms
    }
}

impl fmt::Display for UEAElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = self.uea.names();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (neg, body) = signed_factor(c);
            match (i == 0, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            match (body, m.is_unit()) {
                (None, true) => f.write_str("1")?,
                (None, false) => f.write_str(&m.format(names))?,
                (Some(b), true) => f.write_str(&b)?,
                (Some(b), false) => write!(f, "{b}*{}", m.format(names))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UEAElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UEAElement[{}]({self})", self.algebra().name())
    }
}
