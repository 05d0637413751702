use std::sync::Arc;

use crate::coeffring::Poly;
use crate::uea::{EnvelopingAlgebra, UEAElement};

use super::ExpansionError;

/// A target Casimir split by powers of a curvature parameter:
/// `C' = base + curvature * linear + curvature^2 * quadratic`.
#[derive(Clone, Debug)]
pub struct CasimirDecomposition {
    pub base: UEAElement,
    pub linear: UEAElement,
    pub quadratic: UEAElement,
    pub curvature: String,
}

impl CasimirDecomposition {
    /// `base + curvature * linear + curvature^2 * quadratic`.
    pub fn recombine(&self) -> Result<UEAElement, ExpansionError> {
        let ctx = self.base.uea().context();
        let k = Poly::param(ctx, &self.curvature)?;
        Ok(self
            .base
            .add(&self.linear.scale(&k)?)?
            .add(&self.quadratic.scale(&k.pow(2))?)?)
    }
}

/// Splits a Casimir written over the initial algebra's generators by powers of `curvature`.
pub fn decompose_casimir(target: &UEAElement, curvature: &str) -> Result<CasimirDecomposition, ExpansionError> {
    let mut parts = target.split_by_power(curvature)?;
    if let Some((&power, _)) = parts.iter().find(|(&p, _)| !(0..=2).contains(&p)) {
        return Err(ExpansionError::CurvatureDegree {
            curvature: curvature.to_string(),
            power,
        });
    }
    let uea = target.uea();
    let mut take = |k: i32| parts.remove(&k).unwrap_or_else(|| UEAElement::zero(uea));
    Ok(CasimirDecomposition {
        base: take(0),
        linear: take(1),
        quadratic: take(2),
        curvature: curvature.to_string(),
    })
}

/// The expansion operator: a combination of the curvature-linear Casimir parts.
#[derive(Clone, Debug)]
pub struct Seed {
    pub element: UEAElement,
    pub alphas: Vec<String>,
    /// Parameters multiplying the curvature-quadratic parts, when requested.
    pub betas: Vec<String>,
}

impl Seed {
    /// A zero seed leaves every generator fixed.
    pub fn is_degenerate(&self) -> bool {
        self.element.is_zero()
    }
}

/// `sum alpha_l * linear_l`, plus `sum beta_l * quadratic_l` when `betas` is given.
pub fn build_seed(
    decomps: &[CasimirDecomposition],
    alphas: &[&str],
    betas: Option<&[&str]>,
) -> Result<Seed, ExpansionError> {
    if decomps.len() != alphas.len() || betas.is_some_and(|b| b.len() != decomps.len()) {
        return Err(ExpansionError::SeedLength {
            decompositions: decomps.len(),
            parameters: alphas.len(),
        });
    }
    let first = decomps.first().ok_or(ExpansionError::SeedLength {
        decompositions: 0,
        parameters: alphas.len(),
    })?;
    let uea = first.base.uea();
    let ctx = uea.context();
    let mut element = UEAElement::zero(uea);
    for (d, a) in decomps.iter().zip(alphas) {
        element = element.add(&d.linear.scale(&Poly::param(ctx, a)?)?)?;
    }
    if let Some(betas) = betas {
        for (d, b) in decomps.iter().zip(betas) {
            element = element.add(&d.quadratic.scale(&Poly::param(ctx, b)?)?)?;
        }
    }
    Ok(Seed {
        element,
        alphas: alphas.iter().map(|s| s.to_string()).collect(),
        betas: betas.unwrap_or(&[]).iter().map(|s| s.to_string()).collect(),
    })
}

/// Images `X'_k` of the initial generators under the seed's adjoint action.
#[derive(Clone, Debug)]
pub struct ExpandedGenerators {
    uea: Arc<EnvelopingAlgebra>,
    images: Vec<UEAElement>,
    fixed: Vec<bool>,
}

impl ExpandedGenerators {
    pub fn uea(&self) -> &Arc<EnvelopingAlgebra> {
        &self.uea
    }

    pub fn image(&self, index: usize) -> &UEAElement {
        &self.images[index]
    }

    pub fn image_named(&self, name: &str) -> Result<&UEAElement, ExpansionError> {
        Ok(&self.images[self.uea.algebra().index_of(name)?])
    }

    pub fn is_fixed(&self, index: usize) -> bool {
        self.fixed[index]
    }

    pub fn fixed_set(&self) -> Vec<&str> {
        self.uea
            .names()
            .iter()
            .zip(&self.fixed)
            .filter(|(_, &f)| f)
            .map(|(n, _)| n.as_str())
            .collect()
    }

    /// `(name, X')` in basis order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &UEAElement)> {
        self.uea.names().iter().map(String::as_str).zip(&self.images)
    }
}

/// `X'_k = [J, X_k]`, or `X_k` itself when that commutator vanishes.
pub fn derive_generators(seed: &Seed) -> Result<ExpandedGenerators, ExpansionError> {
    let uea = seed.element.uea().clone();
    let mut images = Vec::with_capacity(uea.dim());
    let mut fixed = Vec::with_capacity(uea.dim());
    for k in 0..uea.dim() {
        let x = UEAElement::generator(&uea, k);
        let c = seed.element.commutator(&x)?;
        fixed.push(c.is_zero());
        images.push(if c.is_zero() { x } else { c });
    }
    Ok(ExpandedGenerators { uea, images, fixed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::catalog;
    use crate::uea::{named_element_in, parse_expression, Family};

    fn galilei() -> Arc<EnvelopingAlgebra> {
        EnvelopingAlgebra::new(catalog("galilei").unwrap()).unwrap()
    }

    #[test]
    fn poincare_casimirs_split_by_omega() {
        let g = galilei();
        let c1 = decompose_casimir(&named_element_in(&g, Family::Poincare, "C1").unwrap(), "omega").unwrap();
        assert_eq!(c1.base, parse_expression(&g, "<C1>").unwrap());
        assert_eq!(c1.linear.to_string(), "H^2");
        assert!(c1.quadratic.is_zero());
        let c2 = decompose_casimir(&named_element_in(&g, Family::Poincare, "C2").unwrap(), "ω").unwrap();
        assert_eq!(c2.linear, parse_expression(&g, "2*H*<JW> + <JP>^2").unwrap());
        assert_eq!(c2.quadratic, parse_expression(&g, "H^2*<JJ>").unwrap());
        assert_eq!(
            c2.recombine().unwrap(),
            named_element_in(&g, Family::Poincare, "C2").unwrap()
        );
    }

    #[test]
    fn cubic_curvature_rejected() {
        let g = galilei();
        let x = parse_expression(&g, "omega^3*H").unwrap();
        assert!(matches!(
            decompose_casimir(&x, "omega"),
            Err(ExpansionError::CurvatureDegree { power: 3, .. })
        ));
    }

    #[test]
    fn seeds() {
        let g = galilei();
        let d: Vec<_> = ["C1", "C2"]
            .iter()
            .map(|k| decompose_casimir(&named_element_in(&g, Family::NewtonHooke, k).unwrap(), "kappa").unwrap())
            .collect();
        let s = build_seed(&d, &["a1", "a2"], None).unwrap();
        assert_eq!(s.element, parse_expression(&g, "a1*<KK>").unwrap());
        assert!(build_seed(&d, &["a1"], None).is_err());
        let zero: Vec<_> = d
            .iter()
            .map(|x| CasimirDecomposition {
                linear: UEAElement::zero(&g),
                ..x.clone()
            })
            .collect();
        assert!(build_seed(&zero, &["a1", "a2"], None).unwrap().is_degenerate());
        let gens = derive_generators(&build_seed(&zero, &["a1", "a2"], None).unwrap()).unwrap();
        assert_eq!(gens.fixed_set().len(), 10);
    }
}
