use std::sync::Arc;

use crate::coeffring::{Context, Poly, Rational};
use crate::liealg::{catalog, levi_civita, LieAlgebra};
use crate::uea::{named_element_in, parse_expression, EnvelopingAlgebra, Family, UEAElement};

use super::{
    build_seed, decompose_casimir, derive_generators, verify_closure, CentralSymbol, ClosureReport, ClosureSpec,
    Constraint, ExpandedGenerators, ExpansionError, Factor, PowerRule, Template, Templates, Witness,
};

fn poly(s: &str) -> Poly {
    Poly::parse(&Context::standard(), s).expect("driver polynomial")
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).expect("nonzero denominator")
}

fn uea(name: &str) -> Result<Arc<EnvelopingAlgebra>, ExpansionError> {
    Ok(EnvelopingAlgebra::new(catalog(name)?)?)
}

/// Equality of an element with the normal form of an expression, with a
/// description of the difference on failure.
fn matches_expression(x: &UEAElement, src: &str) -> Result<(bool, String), ExpansionError> {
    let expected = parse_expression(x.uea(), src)?;
    let diff = x.sub(&expected)?;
    Ok(if diff.is_zero() {
        (true, String::new())
    } else {
        (false, format!("difference {diff}"))
    })
}

/// Result of comparing brackets that involve fixed generators with the
/// initial algebra's structure constants.
#[derive(Clone, Debug, Default)]
pub struct Preservation {
    /// Pairs where both generators are fixed and the bracket changed.
    pub fixed_fixed_changed: Vec<String>,
    /// Pairs with exactly one fixed generator whose bracket changed.
    pub mixed_changed: Vec<String>,
}

/// `[X'_a, X'_b]` against `sum c_ab^k X'_k` from the initial algebra, for every
/// pair with at least one fixed generator.
pub fn subalgebra_preservation(gens: &ExpandedGenerators) -> Result<Preservation, ExpansionError> {
    let uea = gens.uea();
    let alg = uea.algebra();
    let n = uea.dim();
    let mut out = Preservation::default();
    for a in 0..n {
        for b in (a + 1)..n {
            let (fa, fb) = (gens.is_fixed(a), gens.is_fixed(b));
            if !fa && !fb {
                continue;
            }
            let actual = gens.image(a).commutator(gens.image(b))?;
            let mut expected = UEAElement::zero(uea);
            for (k, c) in alg.structure(a, b) {
                expected = expected.add(&gens.image(k).scale(&c)?)?;
            }
            if actual != expected {
                let label = format!("[{},{}]", alg.generator_name(a), alg.generator_name(b));
                if fa && fb {
                    out.fixed_fixed_changed.push(label);
                } else {
                    out.mixed_changed.push(label);
                }
            }
        }
    }
    Ok(out)
}

fn seed_and_generators(
    initial: &Arc<EnvelopingAlgebra>,
    family: Family,
    curvature: &str,
    report_checks: &mut Vec<(String, bool, String)>,
    expected_linear: [&str; 2],
    expected_quadratic: [&str; 2],
) -> Result<(super::Seed, ExpandedGenerators), ExpansionError> {
    let mut decomps = Vec::new();
    for (i, key) in ["C1", "C2"].iter().enumerate() {
        let casimir = named_element_in(initial, family, key)?;
        let d = decompose_casimir(&casimir, curvature)?;
        let (ok_l, det_l) = matches_expression(&d.linear, expected_linear[i])?;
        let (ok_q, det_q) = matches_expression(&d.quadratic, expected_quadratic[i])?;
        let round_trip = d.recombine()? == casimir;
        report_checks.push((
            format!(
                "decomposition {key}: linear = {}, quadratic = {}",
                expected_linear[i], expected_quadratic[i]
            ),
            ok_l && ok_q,
            [det_l, det_q].join(" ").trim().to_string(),
        ));
        report_checks.push((format!("decomposition {key}: recombination"), round_trip, String::new()));
        decomps.push(d);
    }
    let seed = build_seed(&decomps, &["a1", "a2"], None)?;
    let gens = derive_generators(&seed)?;
    Ok((seed, gens))
}

fn finish(
    mut report: ClosureReport,
    driver: &str,
    seed: &super::Seed,
    checks: Vec<(String, bool, String)>,
) -> ClosureReport {
    report.driver = driver.to_string();
    report.seed = seed.element.to_string();
    for (name, passed, detail) in checks {
        report.add_check(&name, passed, detail);
    }
    report
}

/// Witness for the Lorentzian case.
pub fn poincare_witness() -> Witness {
    Witness::new(&[
        ("c1", q(1, 1)),
        ("c2", q(1, 4)),
        ("a2", q(1, 1)),
        ("a1", q(-1, 4)),
        ("omega", q(-1, 1)),
    ])
}

/// Witness for positive worldline curvature.
pub fn euclid_witness() -> Witness {
    Witness::new(&[
        ("c1", q(1, 1)),
        ("c2", q(-1, 4)),
        ("a2", q(1, 1)),
        ("a1", q(1, 4)),
        ("omega", q(1, 1)),
    ])
}

/// Galilei expanded by `a1*H^2 + 2*a2*H*J.W + a2*(J.P)^2` onto the Poincaré brackets.
pub fn run_poincare() -> Result<ClosureReport, ExpansionError> {
    run_relativistic("poincare", "poincare", &poincare_witness())
}

pub fn run_euclid() -> Result<ClosureReport, ExpansionError> {
    run_relativistic("euclid", "euclid4", &euclid_witness())
}

/// The relativistic expansion against `target` (`poincare` or `euclid4`) with a given witness.
pub fn run_relativistic(driver: &str, target_name: &str, witness: &Witness) -> Result<ClosureReport, ExpansionError> {
    let g = uea("galilei")?;
    let target = catalog(target_name)?;
    let mut checks = Vec::new();
    let (seed, gens) = seed_and_generators(
        &g,
        Family::Poincare,
        "omega",
        &mut checks,
        ["H^2", "2*H*<JW> + <JP>^2"],
        ["0", "H^2*<JJ>"],
    )?;
    let (ok, detail) = matches_expression(&seed.element, "a1*H^2 + 2*a2*H*<JW> + a2*<JP>^2")?;
    checks.push(("seed = a1*H^2 + 2*a2*H*JW + a2*(JP)^2".into(), ok, detail));

    let fixed = gens.fixed_set();
    checks.push((
        "fixed set = {H, J1, J2, J3}".into(),
        fixed == ["H", "J1", "J2", "J3"],
        fixed.join(","),
    ));
    for i in 1..=3 {
        let (j, k) = (i % 3 + 1, (i + 1) % 3 + 1);
        let p_form = format!("2*a2*H*(P{j}*<W{k}> - P{k}*<W{j}>)");
        let (ok, detail) = matches_expression(gens.image_named(&format!("P{i}"))?, &p_form)?;
        checks.push((format!("closed form P{i}' = {p_form}"), ok, detail));
        let k_form = format!(
            "-2*a1*H*P{i} - 2*a2*<JW>*P{i} + 2*a2*H*(K{j}*<W{k}> - K{k}*<W{j}>) + 3*a2*(P{j}*<W{k}> - P{k}*<W{j}>) + 2*a2*<JP>*<W{i}>"
        );
        let (ok, detail) = matches_expression(gens.image_named(&format!("K{i}"))?, &k_form)?;
        checks.push((format!("closed form K{i}' = {k_form}"), ok, detail));
    }

    let central = [
        CentralSymbol::new("c1", parse_expression(&g, "<C1>")?),
        CentralSymbol::new("c2", parse_expression(&g, "<C2>")?),
    ];
    let mut templates = Templates::new();
    let idx = |n: &str| target.index_of(n);
    for i in 1..=3 {
        templates.insert(
            idx(&format!("P{i}"))?,
            idx(&format!("K{i}"))?,
            Template::new(vec![(poly("-4*a2^2*c1*c2"), Factor::Expanded(idx("H")?))]),
        );
        for j in (i + 1)..=3 {
            let k = 6 - i - j;
            let e = Rational::from(levi_civita(i, j, k));
            let hw = parse_expression(&g, &format!("H*<W{k}>"))?;
            templates.insert(
                idx(&format!("K{i}"))?,
                idx(&format!("K{j}"))?,
                Template::new(vec![
                    (poly("-8*a2*(a1*c1 + a2*c2)").scale(&e), Factor::Element(hw)),
                    (
                        poly("-4*a2^2*c1*c2").scale(&e),
                        Factor::Expanded(idx(&format!("J{k}"))?),
                    ),
                ]),
            );
        }
    }
    let constraints = [
        Constraint::new(poly("a1*c1 + a2*c2")),
        Constraint::new(poly("4*a2^2*c1*c2 + omega")),
    ];
    let spec = ClosureSpec {
        target: &target,
        templates: &templates,
        central: &central,
        constraints: &constraints,
        witness,
    };
    let mut report = verify_closure(&gens, &spec)?;

    let pres = subalgebra_preservation(&gens)?;
    checks.push((
        "brackets with a fixed generator unchanged".into(),
        pres.fixed_fixed_changed.is_empty() && pres.mixed_changed.is_empty(),
        [pres.fixed_fixed_changed, pres.mixed_changed].concat().join(", "),
    ));
    let a2 = witness
        .values
        .get("a2")
        .map(|v| v.to_string())
        .unwrap_or_else(|| "a2".into());
    report.notes.push(format!(
        "a2 is fixed only up to sign by 4*a2^2*c1*c2 = -omega; the witness takes a2 = {a2}, and a1 = -a2*c2/c1 follows"
    ));
    report.notes.push(
        "c1 and c2 stand for the Galilei Casimirs P^2 and W^2, which act as scalars in an irreducible representation"
            .into(),
    );
    Ok(finish(report, driver, &seed, checks))
}

/// Sign of the spacetime curvature for the Newton–Hooke run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KappaSign {
    /// `kappa = -1`, `a1 = 1` is a rational solution.
    Negative,
    /// `kappa = +1`: `a1` stays formal and `a1^2` is reduced by the constraint.
    Positive,
}

pub fn newton_hooke_witness(sign: KappaSign) -> Witness {
    match sign {
        KappaSign::Negative => Witness::new(&[("m", q(1, 1)), ("xi", q(1, 2)), ("kappa", q(-1, 1)), ("a1", q(1, 1))]),
        KappaSign::Positive => {
            Witness::new(&[("m", q(1, 1)), ("xi", q(1, 2)), ("kappa", q(1, 1))]).with_rule(PowerRule {
                param: "a1".into(),
                power: 2,
                value: poly("-1"),
                note: "a1^2 = -kappa/(4*m^2*xi^2) at m=1, xi=1/2, kappa=1; no real solution, a1 kept formal".into(),
            })
        }
    }
}

/// Extended Galilei expanded by `a1*K^2` onto the Newton–Hooke brackets.
pub fn run_newton_hooke(sign: KappaSign) -> Result<ClosureReport, ExpansionError> {
    run_newton_hooke_with(sign, &newton_hooke_witness(sign))
}

pub fn run_newton_hooke_with(sign: KappaSign, witness: &Witness) -> Result<ClosureReport, ExpansionError> {
    let e = uea("galilei_ext")?;
    let target = catalog("newton_hooke")?;
    let mut checks = Vec::new();
    let (seed, gens) = seed_and_generators(&e, Family::NewtonHooke, "kappa", &mut checks, ["<KK>", "0"], ["0", "0"])?;
    let (ok, detail) = matches_expression(&seed.element, "a1*<KK>")?;
    checks.push(("seed = a1*K^2".into(), ok, detail));
    let fixed = gens.fixed_set();
    checks.push((
        "fixed set = {Xi, K1, K2, K3, J1, J2, J3}".into(),
        fixed == ["Xi", "K1", "K2", "K3", "J1", "J2", "J3"],
        fixed.join(","),
    ));
    let (ok, detail) = matches_expression(gens.image_named("H")?, "2*a1*<KP> + 3*a1*m*Xi")?;
    checks.push(("closed form H' = 2*a1*K.P + 3*a1*m*Xi".into(), ok, detail));
    for i in 1..=3 {
        let form = format!("-2*a1*m*Xi*K{i}");
        let (ok, detail) = matches_expression(gens.image_named(&format!("P{i}"))?, &form)?;
        checks.push((format!("closed form P{i}' = {form}"), ok, detail));
    }

    let central = [CentralSymbol::new("xi", UEAElement::generator_named(&e, "Xi")?)];
    let mut templates = Templates::new();
    for i in 1..=3 {
        templates.insert(
            target.index_of("H")?,
            target.index_of(&format!("P{i}"))?,
            Template::new(vec![(
                poly("-4*a1^2*m^2*xi^2"),
                Factor::Expanded(target.index_of(&format!("K{i}"))?),
            )]),
        );
    }
    let constraints = [Constraint::new(poly("4*a1^2*m^2*xi^2 + kappa"))];
    let spec = ClosureSpec {
        target: &target,
        templates: &templates,
        central: &central,
        constraints: &constraints,
        witness,
    };
    let mut report = verify_closure(&gens, &spec)?;

    let pres = subalgebra_preservation(&gens)?;
    checks.push((
        "brackets among fixed generators unchanged".into(),
        pres.fixed_fixed_changed.is_empty(),
        pres.fixed_fixed_changed.join(", "),
    ));
    report.notes.push(format!(
        "brackets of a fixed and a moved generator that differ from extended Galilei: {}",
        if pres.mixed_changed.is_empty() {
            "none".to_string()
        } else {
            pres.mixed_changed.join(", ")
        }
    ));
    report
        .notes
        .push("xi is the scalar value of the central generator Xi".into());
    if sign == KappaSign::Positive {
        report.notes.push(
            "kappa > 0 needs a1^2 < 0; closure is checked with a1 formal, reducing a1^2 by the constraint".into(),
        );
    }
    let driver = match sign {
        KappaSign::Negative => "newton_hooke",
        KappaSign::Positive => "newton_hooke_kappa_positive",
    };
    Ok(finish(report, driver, &seed, checks))
}

/// The same seed on plain Galilei: `H' = 2*a1*K.P`, everything else fixed,
/// and the Newton–Hooke brackets cannot close.
pub fn run_negative_nh() -> Result<ClosureReport, ExpansionError> {
    let g = uea("galilei")?;
    let target: LieAlgebra = catalog("newton_hooke")?;
    let mut checks = Vec::new();
    let (seed, gens) = seed_and_generators(&g, Family::NewtonHooke, "kappa", &mut checks, ["<KK>", "0"], ["0", "0"])?;
    let (ok, detail) = matches_expression(gens.image_named("H")?, "2*a1*<KP>")?;
    checks.push(("closed form H' = 2*a1*K.P".into(), ok, detail));
    let fixed = gens.fixed_set();
    checks.push((
        "every generator except H fixed".into(),
        fixed.len() == 9 && !fixed.contains(&"H"),
        fixed.join(","),
    ));
    let pres = subalgebra_preservation(&gens)?;
    checks.push((
        "fixed subalgebra closes".into(),
        pres.fixed_fixed_changed.is_empty(),
        pres.fixed_fixed_changed.join(", "),
    ));
    let witness = Witness::new(&[("a1", q(1, 1)), ("kappa", q(-1, 1))]);
    let spec = ClosureSpec {
        target: &target,
        templates: &Templates::new(),
        central: &[],
        constraints: &[],
        witness: &witness,
    };
    let mut report = verify_closure(&gens, &spec)?;
    report.set_expected_to_close(false);
    report
        .notes
        .push("without the central extension [H',P_i] vanishes and cannot produce kappa*K_i".into());
    Ok(finish(report, "negative_nh", &seed, checks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::Verdict;

    #[test]
    fn negative_control_fails_on_named_brackets() {
        let r = run_negative_nh().unwrap();
        assert!(!r.closes());
        assert!(r.summary.as_expected, "{}", r.to_text());
        let bad: Vec<&str> = r.mismatches().map(|p| p.pair.as_str()).collect();
        assert!(bad.contains(&"[H,P1]") && bad.contains(&"[H,K1]"), "{bad:?}");
        let hp = r.pairs.iter().find(|p| p.pair == "[H,P1]").unwrap();
        assert_eq!(hp.scalarized, "0");
        assert_eq!(hp.target, "-K1");
    }

    #[test]
    fn newton_hooke_both_signs() {
        for sign in [KappaSign::Negative, KappaSign::Positive] {
            let r = run_newton_hooke(sign).unwrap();
            assert!(r.closes() && r.summary.as_expected, "{}", r.to_text());
            let hp = r.pairs.iter().find(|p| p.pair == "[H,P2]").unwrap();
            assert_eq!(hp.verdict, Verdict::TemplateMatch);
            assert_eq!(hp.phase1, "pass");
        }
    }

    #[test]
    fn constraint_violation_is_an_error() {
        let mut w = newton_hooke_witness(KappaSign::Negative);
        w.set("a1", q(2, 1));
        assert!(matches!(
            run_newton_hooke_with(KappaSign::Negative, &w),
            Err(ExpansionError::ConstraintViolation { .. })
        ));
    }

    #[test]
    fn relativistic_runs_close() {
        for r in [run_poincare().unwrap(), run_euclid().unwrap()] {
            assert!(r.closes() && r.summary.as_expected, "{}", r.to_text());
            let kk = r.pairs.iter().find(|p| p.pair == "[K1,K2]").unwrap();
            assert_eq!(kk.verdict, Verdict::TemplateMatch);
        }
    }

    #[test]
    fn unexpected_success_of_the_negative_control_is_a_failure() {
        let mut r = run_poincare().unwrap();
        r.set_expected_to_close(false);
        assert!(!r.summary.as_expected);
        assert_eq!(r.first_failure().unwrap(), "closure succeeded but failure was expected");
    }
}
