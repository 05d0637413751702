use crate::coeffring::{Assignment, CoeffError, Monomial, Poly, Rational, CONTRACTION_PARAM};

use super::{decomposition_check, Decomposition, LieAlgebra, LieError};

/// İnönü–Wigner contraction along a splitting `g = h ⊕ p`.
///
/// Every `p` generator is rescaled by `eps`, the structure constants are
/// recomputed in the rescaled basis and the limit `eps -> 0` is taken. A
/// negative power of `eps` surviving in any bracket means the splitting
/// does not define a contraction.
pub fn iw_contract(alg: &LieAlgebra, d: &Decomposition) -> Result<LieAlgebra, LieError> {
    let class = decomposition_check(alg, d)?;
    if !class.hh_in_h {
        return Err(LieError::InvalidDecomposition(format!(
            "[h,h] is not contained in h for split `{}`",
            d.label
        )));
    }
    // Work in a context that has a Laurent slot.
    let work = match alg.context().laurent_slot() {
        Some(_) => alg.clone(),
        None => {
            let ctx = alg.context().extended(&[CONTRACTION_PARAM], Some(CONTRACTION_PARAM))?;
            alg.lift(&ctx)?
        }
    };
    let ctx = work.context().clone();
    let slot = ctx.laurent_slot().expect("laurent slot present");
    let eps_pow = |power: i32| {
        let mut exps = vec![0; ctx.len()];
        exps[slot] = power;
        Poly::from_term(&ctx, Monomial::from_exponents(&exps), Rational::one())
    };
    let weight = |i: usize| i32::from(d.in_p(i));

    let mut out = LieAlgebra::new(&format!("{}_contracted", alg.name()), &ctx, alg.generator_names())?;
    for (k, v) in alg.metadata() {
        out.set_metadata(k, v);
    }
    out.set_metadata("contraction", &format!("iw:{}", d.label));
    for (i, j, terms) in work.stored_brackets() {
        let mut new_terms = Vec::with_capacity(terms.len());
        for (k, c) in terms {
            let power = weight(i) + weight(j) - weight(*k);
            let rescaled = c * &eps_pow(power);
            let limit = rescaled.limit_eps_zero().map_err(|e| match e {
                CoeffError::Divergence { power } => LieError::Divergence {
                    bracket: format!("[{},{}]", alg.generator_name(i), alg.generator_name(j)),
                    power,
                },
                other => LieError::Coeff(other),
            })?;
            new_terms.push((*k, limit));
        }
        out.set_bracket(i, j, new_terms)?;
    }
    Ok(out)
}

/// Sets a curvature parameter to zero in every structure constant.
pub fn parameter_contract(alg: &LieAlgebra, param: &str) -> Result<LieAlgebra, LieError> {
    let zero = Assignment::new().with_rational(param, Rational::zero());
    let mut out = alg.specialize(&zero)?;
    out.set_name(&format!(
        "{}_{}0",
        alg.name(),
        crate::coeffring::canonical_param_name(param)
    ));
    out.set_metadata(
        "contraction",
        &format!("parameter:{}", crate::coeffring::canonical_param_name(param)),
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::Context;
    use crate::liealg::{catalog, spacetime_split, worldline_split};

    fn at(alg: &LieAlgebra, param: &str, v: i64) -> LieAlgebra {
        alg.specialize(&Assignment::new().with_rational(param, Rational::from(v)))
            .unwrap()
    }

    #[test]
    fn curvature_to_zero_gives_galilei() {
        let g = catalog("galilei").unwrap();
        for (name, param) in [("poincare", "omega"), ("newton_hooke", "κ"), ("euclid4", "ω")] {
            let c = parameter_contract(&catalog(name).unwrap(), param).unwrap();
            assert!(c.structure_eq(&g), "{name}: {:?}", c.structure_diff(&g));
        }
        let same = parameter_contract(&g, "omega").unwrap();
        assert!(same.structure_eq(&g));
        assert_eq!(same.name(), "galilei_omega0");
    }

    #[test]
    fn speed_space_and_spacetime_contractions() {
        let g = catalog("galilei").unwrap();
        let pc = at(&catalog("poincare").unwrap(), "omega", -1);
        let c = iw_contract(&pc, &worldline_split(&pc).unwrap()).unwrap();
        assert!(c.structure_eq(&g), "{:?}", c.structure_diff(&g));
        assert_eq!(c.metadata()["contraction"], "iw:Pi");
        let nh = at(&catalog("newton_hooke").unwrap(), "kappa", 1);
        let c = iw_contract(&nh, &spacetime_split(&nh).unwrap()).unwrap();
        assert!(c.structure_eq(&g), "{:?}", c.structure_diff(&g));
    }

    #[test]
    fn abelian_contracts_to_itself() {
        let ctx = Context::new(&["x"], None).unwrap();
        let a = LieAlgebra::new("ab", &ctx, &["A", "B", "C"]).unwrap();
        let d = Decomposition::from_p_names(&a, &["B"], "test").unwrap();
        let c = iw_contract(&a, &d).unwrap();
        assert!(c.is_abelian());
        assert_eq!(c.generator_names(), a.generator_names());
    }

    #[test]
    fn non_subalgebra_h_rejected_and_divergence_reported() {
        let pc = catalog("poincare").unwrap();
        // h = <P,K> is not closed: [K,K] lands in J
        let d = Decomposition::from_p_names(&pc, &["H", "J1", "J2", "J3"], "bad").unwrap();
        assert!(matches!(iw_contract(&pc, &d), Err(LieError::InvalidDecomposition(_))));
        // a coefficient already singular in eps survives the rescaling
        let ctx = Context::standard();
        let mut a = LieAlgebra::new("sing", &ctx, &["A", "B"]).unwrap();
        a.set_bracket_named("A", "B", &[("A", Poly::parse(&ctx, "eps^-2").unwrap())])
            .unwrap();
        let d = Decomposition::from_p_names(&a, &["A"], "s").unwrap();
        assert!(matches!(
            iw_contract(&a, &d),
            Err(LieError::Divergence { power: -2, .. })
        ));
    }
}
