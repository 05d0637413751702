use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, Context as _, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use liexp::coeffring::{Assignment, Rational};
use liexp::expansion::{
    euclid_witness, newton_hooke_witness, poincare_witness, run_negative_nh, run_newton_hooke_with, run_relativistic,
    ClosureReport, KappaSign,
};
use liexp::liealg::{
    automorphism_check, catalog, decomposition_check, emit_algebra, iw_contract, jacobi_check, parameter_contract,
    parity, parity_time, parse_algebra, spacetime_split, worldline_split, LieAlgebra, LoadOptions, PpClass,
    CATALOG_NAMES,
};
use liexp::uea::{
    identity_corpus, is_central, named_expression, parse_expression, random_element, verify_identity,
    EnvelopingAlgebra, Family, UEAElement,
};

use crate::outcome::Outcome;
use crate::{Cli, Command};

pub fn parse_witness(s: &str) -> Result<(String, Rational), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected name=value, got `{s}`"))?;
    let v: Rational = value
        .trim()
        .parse()
        .map_err(|e| format!("`{value}` is not an exact rational: {e}"))?;
    Ok((name.trim().to_string(), v))
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let started = Instant::now();
    let mut out = match &cli.command {
        Command::CheckJacobi { algebra } => check_jacobi(&load(cli, algebra)?),
        Command::Bracket { algebra, left, right } => bracket(&load(cli, algebra)?, left, right)?,
        Command::NormalForm { algebra, expr } => normal_form(&load(cli, algebra)?, expr)?,
        Command::CasimirCheck { algebra, exprs } => casimir_check(&load(cli, algebra)?, exprs)?,
        Command::Identity { algebra, lhs, rhs } => identity(&load(cli, algebra)?, lhs, rhs)?,
        Command::Expand {
            target,
            kappa_positive,
            witness,
        } => expand(target, *kappa_positive, witness)?,
        Command::Contract {
            algebra,
            param,
            split,
            against,
            witness,
        } => contract(
            &load(cli, algebra)?,
            param.as_deref(),
            split.as_deref(),
            against,
            witness,
        )?,
        Command::Corpus { samples } => corpus(cli.seed, *samples)?,
        Command::Report { samples } => report(cli, *samples)?,
        Command::Emit { algebra } => emit(&load(cli, algebra)?),
    };
    if cli.timing {
        let ms = started.elapsed().as_millis();
        out.line(format!("time: {ms} ms"));
        out.set("timing_ms", json!({ "total": ms as u64 }));
    }
    Ok(out)
}

/// A catalog name, or a path to a definition file.
fn load(cli: &Cli, source: &str) -> Result<LieAlgebra> {
    let path = Path::new(source);
    if source.ends_with(".alg") || source.contains('/') || path.is_file() {
        let src = std::fs::read_to_string(path).with_context(|| format!("reading {source}"))?;
        let options = LoadOptions {
            allow_non_lie: cli.allow_non_lie,
        };
        return parse_algebra(&src, options).with_context(|| format!("loading {source}"));
    }
    Ok(catalog(source)?)
}

fn check_jacobi(alg: &LieAlgebra) -> Outcome {
    let mut out = Outcome::new(&format!("check-jacobi-{}", alg.name()), "check-jacobi");
    let violations: Vec<String> = jacobi_check(alg).iter().map(|v| v.describe(alg)).collect();
    for v in &violations {
        out.line(format!("violation {v}"));
    }
    out.check(&format!("jacobi {}", alg.name()), violations.is_empty());
    out.set("algebra", alg.name());
    out.set("violations", violations);
    out.set("passed", out.failure.is_none());
    out
}

fn bracket(alg: &LieAlgebra, left: &str, right: &str) -> Result<Outcome> {
    let mut out = Outcome::new("bracket", "bracket");
    let result = match (alg.generator(left), alg.generator(right)) {
        (Some(a), Some(b)) => alg.format_terms(&alg.structure(a.index, b.index)),
        _ => {
            let uea = EnvelopingAlgebra::new(alg.clone())?;
            let x = parse_expression(&uea, left)?;
            let y = parse_expression(&uea, right)?;
            x.commutator(&y)?.to_string()
        }
    };
    out.line(&result);
    out.set("algebra", alg.name());
    out.set("left", left);
    out.set("right", right);
    out.set("result", result);
    Ok(out)
}

fn normal_form(alg: &LieAlgebra, expr: &str) -> Result<Outcome> {
    let uea = EnvelopingAlgebra::new(alg.clone())?;
    let x = parse_expression(&uea, expr)?;
    let mut out = Outcome::new("normal-form", "normal-form");
    out.line(x.to_string());
    out.set("algebra", alg.name());
    out.set("input", expr);
    out.set("normal_form", x.to_string());
    out.set("terms", x.len());
    Ok(out)
}

/// Named Casimirs of an algebra's family, plus its central generator if any.
fn default_casimirs(alg: &LieAlgebra) -> Vec<String> {
    let family = Family::of(alg.name());
    let mut v: Vec<String> = ["C1", "C2"]
        .iter()
        .filter(|k| named_expression(family, k).is_some())
        .map(|k| format!("<{k}>"))
        .collect();
    if let Some(c) = alg.metadata().get("central") {
        v.push(c.clone());
    }
    v
}

fn centrality_lines(out: &mut Outcome, uea: &Arc<EnvelopingAlgebra>, exprs: &[String]) -> Result<Vec<Value>> {
    let mut records = Vec::new();
    for e in exprs {
        let x = parse_expression(uea, e)?;
        let name = format!("central {e} in {}", uea.algebra().name());
        match is_central(&x) {
            Ok(()) => {
                out.check(&name, true);
                records.push(json!({ "algebra": uea.algebra().name(), "element": e, "central": true }));
            }
            Err(w) => {
                out.check(&name, false);
                out.line(format!("  [{e}, {}] = {}", w.generator, w.commutator));
                records.push(json!({
                    "algebra": uea.algebra().name(), "element": e, "central": false,
                    "generator": w.generator, "commutator": w.commutator.to_string(),
                }));
            }
        }
    }
    Ok(records)
}

fn casimir_check(alg: &LieAlgebra, exprs: &[String]) -> Result<Outcome> {
    let uea = EnvelopingAlgebra::new(alg.clone())?;
    let exprs = if exprs.is_empty() {
        default_casimirs(alg)
    } else {
        exprs.to_vec()
    };
    if exprs.is_empty() {
        bail!("no named Casimirs for {}; pass expressions explicitly", alg.name());
    }
    let mut out = Outcome::new(&format!("casimir-check-{}", alg.name()), "casimir-check");
    let records = centrality_lines(&mut out, &uea, &exprs)?;
    out.set("results", records);
    Ok(out)
}

fn identity(alg: &LieAlgebra, lhs: &str, rhs: &str) -> Result<Outcome> {
    let uea = EnvelopingAlgebra::new(alg.clone())?;
    let r = verify_identity(&uea, lhs, rhs)?;
    let mut out = Outcome::new("identity", "identity");
    out.check(&format!("{lhs} = {rhs}"), r.passed());
    if !r.passed() {
        out.line(format!("residual: {}", r.residual));
    }
    out.set("algebra", alg.name());
    out.set("lhs", lhs);
    out.set("rhs", rhs);
    out.set("residual", r.residual.to_string());
    out.set("passed", r.passed());
    Ok(out)
}

fn driver_report(target: &str, kappa_positive: bool, overrides: &[(String, Rational)]) -> Result<ClosureReport> {
    let apply = |mut w: liexp::expansion::Witness| {
        for (k, v) in overrides {
            w.set(k, v.clone());
        }
        w
    };
    let sign = if kappa_positive {
        KappaSign::Positive
    } else {
        KappaSign::Negative
    };
    Ok(match target {
        "poincare" => run_relativistic("poincare", "poincare", &apply(poincare_witness()))?,
        "euclid4" => run_relativistic("euclid", "euclid4", &apply(euclid_witness()))?,
        "newton_hooke" => run_newton_hooke_with(sign, &apply(newton_hooke_witness(sign)))?,
        "negative-nh" | "negative_nh" => {
            if !overrides.is_empty() {
                bail!("negative-nh takes no witness overrides");
            }
            run_negative_nh()?
        }
        other => bail!("unknown expansion target `{other}`; expected poincare, euclid4, newton_hooke or negative-nh"),
    })
}

fn report_outcome(r: &ClosureReport, command: &str) -> Outcome {
    let mut out = Outcome::new(&format!("expand-{}", r.driver), command);
    out.text = r.to_text();
    out.json = serde_json::to_value(r).expect("report serializes");
    if !r.summary.as_expected {
        out.fail(r.first_failure().unwrap_or_else(|| "unexpected closure outcome".into()));
    }
    out
}

fn expand(target: &str, kappa_positive: bool, overrides: &[(String, Rational)]) -> Result<Outcome> {
    Ok(report_outcome(
        &driver_report(target, kappa_positive, overrides)?,
        "expand",
    ))
}

fn default_split(alg: &LieAlgebra) -> Option<&'static str> {
    match alg.name() {
        "poincare" | "euclid4" => Some("worldline"),
        "newton_hooke" => Some("spacetime"),
        _ => None,
    }
}

fn default_specialization(alg: &LieAlgebra) -> Vec<(String, Rational)> {
    match alg.name() {
        "poincare" => vec![("omega".into(), Rational::from(-1))],
        "euclid4" => vec![("omega".into(), Rational::from(1))],
        "newton_hooke" => vec![("kappa".into(), Rational::from(-1))],
        _ => vec![],
    }
}

fn compare(out: &mut Outcome, label: &str, got: &LieAlgebra, against: &LieAlgebra) -> Value {
    let diffs = got.structure_diff(against);
    out.line(format!("{label} -> {}", got.name()));
    out.check(&format!("  equals catalog {}", against.name()), diffs.is_empty());
    for d in &diffs {
        out.line(format!("    {d}"));
    }
    json!({ "contraction": label, "result": got.name(), "against": against.name(), "equal": diffs.is_empty(), "differences": diffs })
}

fn contract(
    alg: &LieAlgebra,
    param: Option<&str>,
    split: Option<&str>,
    against: &str,
    witness: &[(String, Rational)],
) -> Result<Outcome> {
    let reference = catalog(against)?;
    let mut out = Outcome::new(&format!("contract-{}", alg.name()), "contract");
    let mut records = Vec::new();
    let explicit = param.is_some() || split.is_some();
    let param = param.map(str::to_string).or_else(|| {
        if explicit {
            None
        } else {
            alg.metadata().get("curvature.parameter").cloned()
        }
    });
    let split = split.or(if explicit { None } else { default_split(alg) });
    if param.is_none() && split.is_none() {
        bail!("nothing to contract: pass --param or --split");
    }
    if let Some(p) = &param {
        let c = parameter_contract(alg, p)?;
        records.push(compare(
            &mut out,
            &format!("parameter_contract({}, {p})", alg.name()),
            &c,
            &reference,
        ));
    }
    if let Some(s) = split {
        let values = if witness.is_empty() {
            default_specialization(alg)
        } else {
            witness.to_vec()
        };
        let mut assignment = Assignment::new();
        for (k, v) in &values {
            assignment.set_rational(k, v.clone());
        }
        let special = alg.specialize(&assignment)?;
        let d = match s {
            "worldline" => worldline_split(&special)?,
            "spacetime" => spacetime_split(&special)?,
            other => bail!("unknown split `{other}`; expected worldline or spacetime"),
        };
        let at: Vec<String> = values.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let label = if at.is_empty() {
            format!("iw_contract({}, {s})", alg.name())
        } else {
            format!("iw_contract({} at {}, {s})", alg.name(), at.join(", "))
        };
        let c = iw_contract(&special, &d)?;
        records.push(compare(&mut out, &label, &c, &reference));
    }
    out.set("algebra", alg.name());
    out.set("results", records);
    out.set("passed", out.failure.is_none());
    Ok(out)
}

fn corpus_into(out: &mut Outcome, seed: u64, samples: usize) -> Result<Value> {
    let g = EnvelopingAlgebra::new(catalog("galilei")?)?;
    let mut identities = Vec::new();
    for e in identity_corpus() {
        let r = verify_identity(&g, &e.lhs, &e.rhs)?;
        out.check(&format!("{} {} = {}", e.group, e.lhs, e.rhs), r.passed());
        identities.push(json!({ "group": e.group, "lhs": e.lhs, "rhs": e.rhs, "residual": r.residual.to_string() }));
    }
    let mut central = Vec::new();
    let mut random = Vec::new();
    out.line(format!("seed: {seed}"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for name in CATALOG_NAMES {
        let alg = catalog(name)?;
        let uea = EnvelopingAlgebra::new(alg.clone())?;
        central.extend(centrality_lines(out, &uea, &default_casimirs(&alg))?);
        let (mut assoc, mut jacobi) = (0, 0);
        for _ in 0..samples {
            let [x, y, z]: [UEAElement; 3] = std::array::from_fn(|_| random_element(&uea, &mut rng, 3, 3));
            if x.product(&y)?.product(&z)? == x.product(&y.product(&z)?)? {
                assoc += 1;
            }
            let cyc = x
                .commutator(&y.commutator(&z)?)?
                .add(&y.commutator(&z.commutator(&x)?)?)?
                .add(&z.commutator(&x.commutator(&y)?)?)?;
            if cyc.is_zero() {
                jacobi += 1;
            }
        }
        out.check(&format!("associativity {name} ({assoc}/{samples})"), assoc == samples);
        out.check(
            &format!("enveloping jacobi {name} ({jacobi}/{samples})"),
            jacobi == samples,
        );
        random.push(json!({ "algebra": name, "samples": samples, "associative": assoc, "jacobi": jacobi }));
    }
    Ok(json!({ "seed": seed, "identities": identities, "centrality": central, "random": random }))
}

fn corpus(seed: u64, samples: usize) -> Result<Outcome> {
    let mut out = Outcome::new("corpus", "corpus");
    let v = corpus_into(&mut out, seed, samples)?;
    for (k, x) in v.as_object().expect("object") {
        out.set(k, x.clone());
    }
    out.set("passed", out.failure.is_none());
    Ok(out)
}

/// Jacobi, parity automorphisms and `[p,p]` classes of both splittings for the catalog.
fn structural_into(out: &mut Outcome) -> Result<Value> {
    let mut records = Vec::new();
    for name in CATALOG_NAMES {
        let alg = catalog(name)?;
        let ok = jacobi_check(&alg).is_empty();
        out.check(&format!("jacobi {name}"), ok);
        records.push(json!({ "check": "jacobi", "algebra": name, "passed": ok }));
    }
    for name in ["galilei", "galilei_ext", "poincare", "newton_hooke", "euclid4"] {
        let alg = catalog(name)?;
        for (label, f) in [("Pi", parity(&alg)), ("PiT", parity_time(&alg))] {
            let ok = automorphism_check(&alg, &f).is_ok();
            out.check(&format!("automorphism {label} on {name}"), ok);
            records.push(json!({ "check": format!("automorphism {label}"), "algebra": name, "passed": ok }));
        }
    }
    let expected = [
        ("galilei", PpClass::Zero, PpClass::Zero),
        ("poincare", PpClass::InH, PpClass::Zero),
        ("euclid4", PpClass::InH, PpClass::Zero),
        ("newton_hooke", PpClass::Zero, PpClass::InH),
    ];
    for (name, worldline, spacetime) in expected {
        let alg = catalog(name)?;
        for (label, d, want) in [
            ("worldline", worldline_split(&alg)?, worldline),
            ("spacetime", spacetime_split(&alg)?, spacetime),
        ] {
            let c = decomposition_check(&alg, &d)?;
            let ok = c.is_symmetric() && c.pp == want;
            out.check(&format!("{label} split of {name}: [p,p] {want:?}"), ok);
            records.push(json!({ "check": format!("{label} split"), "algebra": name, "pp": format!("{:?}", c.pp), "passed": ok }));
        }
    }
    Ok(Value::Array(records))
}

fn report(cli: &Cli, samples: usize) -> Result<Outcome> {
    let mut out = Outcome::new("report", "report");
    out.line("== structure");
    let structure = structural_into(&mut out)?;
    out.line("== corpus");
    let corpus = corpus_into(&mut out, cli.seed, samples)?;
    out.line("== expansions");
    let mut drivers = Vec::new();
    for (target, positive) in [
        ("poincare", false),
        ("euclid4", false),
        ("newton_hooke", false),
        ("newton_hooke", true),
        ("negative-nh", false),
    ] {
        let r = driver_report(target, positive, &[])?;
        let s = &r.summary;
        out.line(format!(
            "{}: {} pairs, {} mismatch, closes {}, expected {}",
            r.driver, s.pairs, s.mismatch, s.closes, s.expected_to_close
        ));
        out.check(&format!("expand {} as expected", r.driver), s.as_expected);
        if let Some(f) = r.first_failure().filter(|_| !s.as_expected) {
            out.line(format!("  {f}"));
        }
        drivers.push(serde_json::to_value(&r).expect("report serializes"));
    }
    out.line("== contractions");
    let mut contractions = Vec::new();
    for name in ["poincare", "euclid4", "newton_hooke"] {
        let c = contract(&catalog(name)?, None, None, "galilei", &[])?;
        out.text.push_str(&c.text);
        if let Some(f) = c.failure {
            out.fail(f);
        }
        contractions.push(c.json["results"].clone());
    }
    out.line(format!(
        "overall: {}",
        if out.failure.is_none() { "pass" } else { "FAIL" }
    ));
    out.set("seed", cli.seed);
    out.set("structure", structure);
    out.set("corpus", corpus);
    out.set("expansions", drivers);
    out.set("contractions", contractions);
    out.set("passed", out.failure.is_none());
    Ok(out)
}

fn emit(alg: &LieAlgebra) -> Outcome {
    let mut out = Outcome::new(alg.name(), "emit");
    out.text = emit_algebra(alg);
    out.json = serde_json::from_str(&out.text).expect("emitted file is JSON");
    out.name = format!("{}.alg", alg.name());
    out
}
