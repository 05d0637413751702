use std::collections::BTreeMap;

use serde::Serialize;

use crate::coeffring::{Assignment, Monomial, Poly, Rational};
use crate::liealg::{format_linear, LieAlgebra};
use crate::uea::{PbwMonomial, UEAElement};

use super::{ExpandedGenerators, ExpansionError};

/// Version of the report layout.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// A parameter standing for a central element, e.g. `c1` for the quadratic
/// Casimir or `xi` for the central generator.
#[derive(Clone, Debug)]
pub struct CentralSymbol {
    pub param: String,
    pub element: UEAElement,
}

impl CentralSymbol {
    pub fn new(param: &str, element: UEAElement) -> Self {
        CentralSymbol {
            param: param.to_string(),
            element,
        }
    }

    /// The generator index when the element is a single generator.
    fn as_generator(&self) -> Option<usize> {
        let (m, c) = self.element.terms().next()?;
        (self.element.len() == 1 && c.is_one() && m.degree() == 1).then(|| m.letters()[0] as usize)
    }
}

#[derive(Clone, Debug)]
pub enum Factor {
    /// The expanded generator `X'_k` for target basis index `k`.
    Expanded(usize),
    /// A fixed element of the initial enveloping algebra.
    Element(UEAElement),
}

/// Expected value of one bracket: `sum coeff * factor`, where coefficients
/// may contain central symbols and free parameters.
#[derive(Clone, Debug, Default)]
pub struct Template {
    pub terms: Vec<(Poly, Factor)>,
}

impl Template {
    pub fn new(terms: Vec<(Poly, Factor)>) -> Self {
        Template { terms }
    }

    fn describe(&self, target: &LieAlgebra) -> String {
        let labels: Vec<String> = self
            .terms
            .iter()
            .map(|(_, f)| match f {
                Factor::Expanded(k) => format!("{}'", target.generator_name(*k)),
                Factor::Element(e) => format!("({e})"),
            })
            .collect();
        let pairs: Vec<(&str, &Poly)> = labels
            .iter()
            .map(String::as_str)
            .zip(self.terms.iter().map(|(c, _)| c))
            .collect();
        format_linear(&pairs)
    }
}

/// Explicit templates keyed by target basis pairs `(i, j)` with `i < j`.
#[derive(Clone, Debug, Default)]
pub struct Templates {
    explicit: BTreeMap<(usize, usize), Template>,
}

impl Templates {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers the template for `[a, b]`; for `a > b` the terms are negated.
    pub fn insert(&mut self, a: usize, b: usize, template: Template) {
        if a < b {
            self.explicit.insert((a, b), template);
        } else {
            let negated = template.terms.into_iter().map(|(c, f)| (-&c, f)).collect();
            self.explicit.insert((b, a), Template::new(negated));
        }
    }

    pub fn get(&self, a: usize, b: usize) -> Option<&Template> {
        self.explicit.get(&(a, b))
    }
}

/// Polynomial equation `poly = 0`.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub poly: Poly,
}

impl Constraint {
    pub fn new(poly: Poly) -> Self {
        Constraint { poly }
    }
}

/// Rewrites `param^power -> value` after substitution; used when a parameter stays formal.
#[derive(Clone, Debug)]
pub struct PowerRule {
    pub param: String,
    pub power: u32,
    pub value: Poly,
    pub note: String,
}

/// Rational values for parameters plus reduction rules for formal ones.
#[derive(Clone, Debug, Default)]
pub struct Witness {
    pub values: BTreeMap<String, Rational>,
    pub rules: Vec<PowerRule>,
}

impl Witness {
    pub fn new(values: &[(&str, Rational)]) -> Self {
        Witness {
            values: values.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            rules: Vec::new(),
        }
    }

    pub fn with_rule(mut self, rule: PowerRule) -> Self {
        self.rules.push(rule);
        self
    }

    pub fn set(&mut self, name: &str, value: Rational) {
        self.values.insert(name.to_string(), value);
    }

    pub fn assignment(&self) -> Assignment {
        let mut a = Assignment::new();
        for (k, v) in &self.values {
            a.set_rational(k, v.clone());
        }
        a
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly, ExpansionError> {
        let mut q = p.substitute(&self.assignment())?;
        for r in &self.rules {
            q = q.reduce_power(&r.param, r.power, &r.value)?;
        }
        Ok(q)
    }

    pub fn apply_element(&self, e: &UEAElement) -> Result<UEAElement, ExpansionError> {
        let mut terms = Vec::with_capacity(e.len());
        for (m, c) in e.terms() {
            terms.push((m.clone(), self.apply(c)?));
        }
        Ok(UEAElement::from_terms(e.uea(), terms)?)
    }

    pub fn describe(&self) -> BTreeMap<String, String> {
        self.values.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
    }
}

/// Replaces central symbols in a coefficient by their elements.
fn expand_central(coeff: &Poly, symbols: &[CentralSymbol], unit: &UEAElement) -> Result<UEAElement, ExpansionError> {
    let ctx = coeff.context();
    let slots: Vec<usize> = symbols
        .iter()
        .map(|s| {
            ctx.index_of(&s.param)
                .ok_or_else(|| crate::coeffring::CoeffError::UnknownParameter(s.param.clone()))
        })
        .collect::<Result<_, _>>()?;
    let mut out = UEAElement::zero(unit.uea());
    for (m, c) in coeff.terms() {
        let mut exps = m.exponents().to_vec();
        let mut factor = unit.clone();
        for (s, &slot) in symbols.iter().zip(&slots) {
            let e = exps[slot];
            exps[slot] = 0;
            if e > 0 {
                factor = factor.product(&s.element.pow(e as u32))?;
            }
        }
        let rest = Poly::from_term(ctx, Monomial::from_exponents(&exps), c.clone());
        out = out.add(&factor.scale(&rest)?)?;
    }
    Ok(out)
}

/// Replaces central generators by their scalar values.
fn scalarize_generators(e: &UEAElement, gens: &[(usize, Poly)]) -> Result<UEAElement, ExpansionError> {
    let mut terms = Vec::with_capacity(e.len());
    for (m, c) in e.terms() {
        let mut coeff = c.clone();
        let mut exps = m.exponents(e.uea().dim());
        for (g, v) in gens {
            let k = std::mem::take(&mut exps[*g]);
            if k > 0 {
                coeff = &coeff * &v.pow(k);
            }
        }
        terms.push((PbwMonomial::from_exponents(&exps), coeff));
    }
    Ok(UEAElement::from_terms(e.uea(), terms)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    ExactZero,
    TemplateMatch,
    Mismatch,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairRecord {
    pub pair: String,
    /// `explicit`, `target` (template read off the target structure constants) or `direct`.
    pub mode: String,
    pub template: String,
    /// `pass`, `residual: <element>` or `n/a` in direct mode.
    pub phase1: String,
    pub scalarized: String,
    pub target: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstraintRecord {
    pub equation: String,
    pub at_witness: String,
    pub satisfied: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorRecord {
    pub name: String,
    pub fixed: bool,
    pub element: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub pairs: usize,
    pub exact_zero: usize,
    pub template_match: usize,
    pub mismatch: usize,
    pub closes: bool,
    pub expected_to_close: bool,
    pub checks_passed: bool,
    /// Closure outcome equals the expectation and every named check passed.
    pub as_expected: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureReport {
    pub schema_version: u32,
    pub driver: String,
    pub initial: String,
    pub target: String,
    pub seed: String,
    pub generators: Vec<GeneratorRecord>,
    pub fixed_set: Vec<String>,
    pub constraints: Vec<ConstraintRecord>,
    pub witness: BTreeMap<String, String>,
    pub witness_rules: Vec<String>,
    pub pairs: Vec<PairRecord>,
    pub checks: Vec<CheckRecord>,
    pub notes: Vec<String>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, u128>>,
}

impl ClosureReport {
    pub fn closes(&self) -> bool {
        self.summary.closes
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &PairRecord> {
        self.pairs.iter().filter(|p| p.verdict == Verdict::Mismatch)
    }

    pub fn add_check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckRecord {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
        self.refresh_summary();
    }

    pub fn set_expected_to_close(&mut self, expected: bool) {
        self.summary.expected_to_close = expected;
        self.refresh_summary();
    }

    fn refresh_summary(&mut self) {
        let s = &mut self.summary;
        s.checks_passed = self.checks.iter().all(|c| c.passed);
        s.as_expected = s.closes == s.expected_to_close && s.checks_passed;
    }

    /// Name of the first failed expectation, if any.
    pub fn first_failure(&self) -> Option<String> {
        if let Some(c) = self.checks.iter().find(|c| !c.passed) {
            return Some(format!("check `{}`", c.name));
        }
        match (self.summary.closes, self.summary.expected_to_close) {
            (false, true) => self.mismatches().next().map(|p| format!("bracket {}", p.pair)),
            (true, false) => Some("closure succeeded but failure was expected".into()),
            _ => None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {} -> {}\n", self.driver, self.initial, self.target);
        out.push_str(&format!("seed: {}\n", self.seed));
        out.push_str(&format!("fixed: {}\n", self.fixed_set.join(", ")));
        for g in self.generators.iter().filter(|g| !g.fixed) {
            out.push_str(&format!("  {}' = {}\n", g.name, g.element));
        }
        let w: Vec<String> = self.witness.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!("witness: {}\n", w.join(", ")));
        for r in &self.witness_rules {
            out.push_str(&format!("  rule {r}\n"));
        }
        for c in &self.constraints {
            let s = if c.satisfied { "ok" } else { "VIOLATED" };
            out.push_str(&format!("constraint {}: {s}\n", c.equation));
        }
        let width = self.pairs.iter().map(|p| p.pair.len()).max().unwrap_or(0);
        for p in &self.pairs {
            let v = match p.verdict {
                Verdict::ExactZero => "exact_zero",
                Verdict::TemplateMatch => "template_match",
                Verdict::Mismatch => "MISMATCH",
            };
            out.push_str(&format!(
                "{:width$}  {v:14}  {} (target {})\n",
                p.pair, p.scalarized, p.target
            ));
            if let Some(r) = &p.residual {
                out.push_str(&format!("{:width$}  residual {r}\n", ""));
            }
        }
        for c in &self.checks {
            let s = if c.passed { "pass" } else { "FAIL" };
            if c.detail.is_empty() {
                out.push_str(&format!("check {}: {s}\n", c.name));
            } else {
                out.push_str(&format!("check {}: {s} ({})\n", c.name, c.detail));
            }
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        let s = &self.summary;
        out.push_str(&format!(
            "summary: {} pairs, {} exact_zero, {} template_match, {} mismatch; closes: {}; expected: {}; as expected: {}\n",
            s.pairs, s.exact_zero, s.template_match, s.mismatch, s.closes, s.expected_to_close, s.as_expected
        ));
        if let Some(t) = &self.timing_ms {
            for (k, v) in t {
                out.push_str(&format!("time {k}: {v} ms\n"));
            }
        }
        out
    }
}

/// Everything a closure run needs besides the expanded generators.
pub struct ClosureSpec<'a> {
    pub target: &'a LieAlgebra,
    pub templates: &'a Templates,
    pub central: &'a [CentralSymbol],
    pub constraints: &'a [Constraint],
    pub witness: &'a Witness,
}

/// Checks that the witness satisfies every constraint exactly.
pub fn check_constraints(
    constraints: &[Constraint],
    witness: &Witness,
) -> Result<Vec<ConstraintRecord>, ExpansionError> {
    let mut out = Vec::new();
    for c in constraints {
        let v = witness.apply(&c.poly)?;
        if !v.is_zero() {
            return Err(ExpansionError::ConstraintViolation {
                equation: format!("{} = 0", c.poly),
                value: v.to_string(),
            });
        }
        out.push(ConstraintRecord {
            equation: format!("{} = 0", c.poly),
            at_witness: v.to_string(),
            satisfied: true,
        });
    }
    Ok(out)
}

struct PairOutcome {
    record: PairRecord,
}

/// Three-phase closure check of the expanded generators against `target`.
///
/// 1. Each commutator `[X'_a, X'_b]` must equal its template with central
///    symbols expanded, exactly and with all parameters symbolic.
/// 2. The witness is substituted into the template; only expanded
///    generators may survive.
/// 3. The surviving coefficients must equal the target structure constants
///    at the witness.
///
/// Pairs without an explicit template whose target constants are
/// parameter-free use those constants as the template. Remaining pairs are
/// compared directly after substituting the witness and the scalar values
/// of central generators.
pub fn verify_closure(gens: &ExpandedGenerators, spec: &ClosureSpec) -> Result<ClosureReport, ExpansionError> {
    let constraints = check_constraints(spec.constraints, spec.witness)?;
    let uea = gens.uea();
    let target = spec.target;
    let images: Vec<usize> = target
        .generator_names()
        .iter()
        .map(|n| uea.algebra().index_of(n))
        .collect::<Result<_, _>>()?;
    let at_witness = target.specialize(&spec.witness.assignment())?;
    let ctx = uea.context().clone();
    let target_ctx = target.context();
    if !target_ctx.same_as(&ctx) {
        return Err(ExpansionError::ContextMismatch);
    }
    let scalar_gens: Vec<(usize, Poly)> = spec
        .central
        .iter()
        .filter_map(|s| {
            let g = s.as_generator()?;
            let v = spec.witness.values.get(&s.param)?;
            Some((g, Poly::constant(&ctx, v.clone())))
        })
        .collect();
    let unit = UEAElement::one(uea);

    let n = target.dim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b))).collect();
    let run_pair = |&(a, b): &(usize, usize)| -> Result<PairOutcome, ExpansionError> {
        let label = format!("[{},{}]", target.generator_name(a), target.generator_name(b));
        let actual = gens.image(images[a]).commutator(gens.image(images[b]))?;
        let target_vec = at_witness.bracket_basis(a, b);
        let target_str = at_witness.format_vector(&target_vec);
        let raw = target.structure(a, b);
        let (mode, template) = match spec.templates.get(a, b) {
            Some(t) => ("explicit", Some(t.clone())),
            None if raw.iter().all(|(_, c)| c.is_constant()) => (
                "target",
                Some(Template::new(
                    raw.into_iter().map(|(k, c)| (c, Factor::Expanded(k))).collect(),
                )),
            ),
            None => ("direct", None),
        };
        let target_zero = target_vec.iter().all(Poly::is_zero);
        let scal = |e: &UEAElement| -> Result<UEAElement, ExpansionError> {
            scalarize_generators(&spec.witness.apply_element(e)?, &scalar_gens)
        };
        let Some(template) = template else {
            let got = scal(&actual)?;
            let mut expected = UEAElement::zero(uea);
            for (k, c) in target_vec.iter().enumerate() {
                if !c.is_zero() {
                    expected = expected.add(&scal(gens.image(images[k]))?.scale(c)?)?;
                }
            }
            let residual = got.sub(&expected)?;
            let verdict = if !residual.is_zero() {
                Verdict::Mismatch
            } else if actual.is_zero() && target_zero {
                Verdict::ExactZero
            } else {
                Verdict::TemplateMatch
            };
            return Ok(PairOutcome {
                record: PairRecord {
                    pair: label,
                    mode: mode.into(),
                    template: "n/a".into(),
                    phase1: "n/a".into(),
                    scalarized: got.to_string(),
                    target: target_str,
                    verdict,
                    residual: (!residual.is_zero()).then(|| residual.to_string()),
                },
            });
        };

        // phase 1
        let mut expected = UEAElement::zero(uea);
        for (c, f) in &template.terms {
            let coeff = expand_central(c, spec.central, &unit)?;
            let factor = match f {
                Factor::Expanded(k) => gens.image(images[*k]),
                Factor::Element(e) => e,
            };
            expected = expected.add(&coeff.product(factor)?)?;
        }
        let residual1 = actual.sub(&expected)?;
        // phase 2
        let mut scalarized = vec![Poly::zero(&ctx); n];
        let mut leftover = Vec::new();
        for (c, f) in &template.terms {
            let s = spec.witness.apply(c)?;
            match f {
                Factor::Expanded(k) => scalarized[*k].add_assign_poly(&s),
                Factor::Element(e) if !s.is_zero() => leftover.push(format!("{s} * ({e})")),
                Factor::Element(_) => {}
            }
        }
        // phase 3
        let diff: Vec<Poly> = scalarized.iter().zip(&target_vec).map(|(x, y)| x - y).collect();
        let (verdict, residual) = if !residual1.is_zero() {
            (Verdict::Mismatch, Some(format!("phase 1: {residual1}")))
        } else if !leftover.is_empty() {
            (
                Verdict::Mismatch,
                Some(format!("phase 2: non-linear terms remain: {}", leftover.join(" + "))),
            )
        } else if diff.iter().any(|p| !p.is_zero()) {
            (
                Verdict::Mismatch,
                Some(format!("phase 3: {}", at_witness.format_vector(&diff))),
            )
        } else if actual.is_zero() && target_zero {
            (Verdict::ExactZero, None)
        } else {
            (Verdict::TemplateMatch, None)
        };
        Ok(PairOutcome {
            record: PairRecord {
                pair: label,
                mode: mode.into(),
                template: template.describe(target),
                phase1: if residual1.is_zero() {
                    "pass".into()
                } else {
                    format!("residual: {residual1}")
                },
                scalarized: if residual1.is_zero() {
                    at_witness.format_vector(&scalarized)
                } else {
                    scal(&actual)?.to_string()
                },
                target: target_str,
                verdict,
                residual,
            },
        })
    };

    let outcomes = run_parallel(&pairs, run_pair)?;
    let records: Vec<PairRecord> = outcomes.into_iter().map(|o| o.record).collect();
    let count = |v: Verdict| records.iter().filter(|r| r.verdict == v).count();
    let summary = Summary {
        pairs: records.len(),
        exact_zero: count(Verdict::ExactZero),
        template_match: count(Verdict::TemplateMatch),
        mismatch: count(Verdict::Mismatch),
        closes: count(Verdict::Mismatch) == 0,
        expected_to_close: true,
        checks_passed: true,
        as_expected: count(Verdict::Mismatch) == 0,
    };
    let mut witness_rules = Vec::new();
    for r in &spec.witness.rules {
        witness_rules.push(format!("{}^{} -> {} ({})", r.param, r.power, r.value, r.note));
    }
    Ok(ClosureReport {
        schema_version: REPORT_SCHEMA_VERSION,
        driver: String::new(),
        initial: uea.algebra().name().to_string(),
        target: target.name().to_string(),
        seed: String::new(),
        generators: gens
            .iter()
            .enumerate()
            .map(|(i, (name, e))| GeneratorRecord {
                name: name.to_string(),
                fixed: gens.is_fixed(i),
                element: e.to_string(),
            })
            .collect(),
        fixed_set: gens.fixed_set().iter().map(|s| s.to_string()).collect(),
        constraints,
        witness: spec.witness.describe(),
        witness_rules,
        pairs: records,
        checks: Vec::new(),
        notes: Vec::new(),
        summary,
        timing_ms: None,
    })
}

/// Maps `f` over `items` on scoped threads, keeping input order.
fn run_parallel<T: Sync, R: Send>(
    items: &[T],
    f: impl Fn(&T) -> Result<R, ExpansionError> + Sync,
) -> Result<Vec<R>, ExpansionError> {
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(items.len().max(1));
    if workers <= 1 {
        return items.iter().map(&f).collect();
    }
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut slots: Vec<Option<Result<R, ExpansionError>>> = (0..items.len()).map(|_| None).collect();
    let results = std::sync::Mutex::new(&mut slots);
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                results.lock().expect("no poisoned workers")[i] = Some(r);
            });
        }
    });
    slots.into_iter().map(|r| r.expect("every item processed")).collect()
}
