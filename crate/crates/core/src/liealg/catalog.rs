//! The (3+1)-dimensional kinematical algebras.
//!
//! All catalog algebras share [`Context::standard`] and the basis order
//! `Xi < H < P1 < P2 < P3 < K1 < K2 < K3 < J1 < J2 < J3` (with `Xi` only
//! in the central extension), which is also the PBW order used for the
//! enveloping algebra.

use crate::coeffring::{Context, Poly};

use super::{jacobi_check, Decomposition, LieAlgebra, LieError, LinearMap};

pub const CATALOG_NAMES: [&str; 5] = ["galilei", "galilei_ext", "poincare", "newton_hooke", "euclid4"];

/// Levi-Civita symbol on {1,2,3}.
pub fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1,
        _ => 0,
    }
}

pub fn catalog(name: &str) -> Result<LieAlgebra, LieError> {
    let alg = match name {
        "galilei" => galilei()?,
        "galilei_ext" => galilei_ext()?,
        "poincare" => poincare()?,
        "newton_hooke" => newton_hooke()?,
        "euclid4" => euclid4()?,
        other => return Err(LieError::UnknownAlgebra(other.to_string())),
    };
    let violations = jacobi_check(&alg);
    if !violations.is_empty() {
        return Err(LieError::JacobiViolation(
            violations.iter().map(|v| v.describe(&alg)).collect(),
        ));
    }
    Ok(alg)
}

fn kinematical_basis(central: bool) -> Vec<String> {
    let mut g: Vec<String> = Vec::new();
    if central {
        g.push("Xi".into());
    }
    g.push("H".into());
    for x in ["P", "K", "J"] {
        for i in 1..=3 {
            g.push(format!("{x}{i}"));
        }
    }
    g
}

fn p(s: &str) -> Poly {
    Poly::parse(&Context::standard(), s).expect("catalog coefficient")
}

/// Brackets shared by every kinematical algebra here: rotations act as
/// vectors on P, K, J and `[H,K_i] = -P_i`.
fn galilean_core(name: &str, central: bool) -> Result<LieAlgebra, LieError> {
    let mut a = LieAlgebra::new(name, &Context::standard(), &kinematical_basis(central))?;
    for i in 1..=3 {
        for j in 1..=3 {
            if i == j {
                continue;
            }
            let k = 6 - i - j;
            let s = Poly::integer(&Context::standard(), levi_civita(i, j, k));
            for x in ["J", "P", "K"] {
                a.set_bracket_named(&format!("J{i}"), &format!("{x}{j}"), &[(&format!("{x}{k}"), s.clone())])?;
            }
        }
        a.set_bracket_named("H", &format!("K{i}"), &[(&format!("P{i}"), p("-1"))])?;
    }
    Ok(a)
}

fn galilei() -> Result<LieAlgebra, LieError> {
    let mut a = galilean_core("galilei", false)?;
    a.set_metadata("isomorphism", "iiso(3)");
    a.set_metadata("structure", "t4 ⊙ (t3 ⊙ so(3)); t4=<H,P>, t3=<K>, so(3)=<J>");
    a.set_metadata("space.S1", "IISO(3)/ISO(3)");
    a.set_metadata("space.S1.dim", "3+1");
    a.set_metadata("space.S1.curvature", "0");
    a.set_metadata("space.S2", "IISO(3)/(R⊗SO(3))");
    a.set_metadata("space.S2.dim", "3+3");
    a.set_metadata("space.S2.curvature", "0");
    Ok(a)
}

fn galilei_ext() -> Result<LieAlgebra, LieError> {
    let mut a = galilean_core("galilei_ext", true)?;
    for i in 1..=3 {
        a.set_bracket_named(&format!("P{i}"), &format!("K{i}"), &[("Xi", p("m"))])?;
    }
    a.set_metadata("isomorphism", "iiso(3) centrally extended by Xi");
    a.set_metadata("central", "Xi");
    a.set_metadata("space.S1.curvature", "0");
    a.set_metadata("space.S2.curvature", "0");
    Ok(a)
}

fn poincare_brackets(name: &str) -> Result<LieAlgebra, LieError> {
    let mut a = galilean_core(name, false)?;
    for i in 1..=3 {
        a.set_bracket_named(&format!("P{i}"), &format!("K{i}"), &[("H", p("omega"))])?;
        for j in 1..=3 {
            if i < j {
                let k = 6 - i - j;
                let s = levi_civita(i, j, k);
                a.set_bracket_named(
                    &format!("K{i}"),
                    &format!("K{j}"),
                    &[(&format!("J{k}"), p("omega").scale(&s.into()))],
                )?;
            }
        }
    }
    Ok(a)
}

fn poincare() -> Result<LieAlgebra, LieError> {
    let mut a = poincare_brackets("poincare")?;
    a.set_metadata("isomorphism", "iso(3,1)");
    a.set_metadata("curvature.parameter", "omega");
    a.set_metadata("curvature.sign", "omega<0 (omega=-1/c^2)");
    a.set_metadata("space.S1", "ISO(3,1)/SO(3,1)");
    a.set_metadata("space.S1.dim", "3+1");
    a.set_metadata("space.S1.curvature", "0");
    a.set_metadata("space.S2", "ISO(3,1)/(R⊗SO(3))");
    a.set_metadata("space.S2.dim", "3+3");
    a.set_metadata("space.S2.curvature", "omega");
    Ok(a)
}

/// Same bracket table as Poincaré; only the sign of the curvature differs.
fn euclid4() -> Result<LieAlgebra, LieError> {
    let mut a = poincare_brackets("euclid4")?;
    a.set_metadata("isomorphism", "iso(4)");
    a.set_metadata("curvature.parameter", "omega");
    a.set_metadata("curvature.sign", "omega>0");
    a.set_metadata("space.S1", "ISO(4)/SO(4)");
    a.set_metadata("space.S1.dim", "4");
    a.set_metadata("space.S1.curvature", "0");
    a.set_metadata("space.S2", "ISO(4)/(R⊗SO(3))");
    a.set_metadata("space.S2.dim", "3+3");
    a.set_metadata("space.S2.curvature", "omega");
    Ok(a)
}

fn newton_hooke() -> Result<LieAlgebra, LieError> {
    let mut a = galilean_core("newton_hooke", false)?;
    for i in 1..=3 {
        a.set_bracket_named("H", &format!("P{i}"), &[(&format!("K{i}"), p("kappa"))])?;
    }
    a.set_metadata(
        "isomorphism",
        "t6(so(2)⊕so(3)) for kappa>0; t6(so(1,1)⊕so(3)) for kappa<0",
    );
    a.set_metadata("curvature.parameter", "kappa");
    a.set_metadata("curvature.sign", "kappa=+1/tau^2 (oscillating) or -1/tau^2 (expanding)");
    a.set_metadata("space.S1", "T6(SO(2)⊗SO(3))/ISO(3) or T6(SO(1,1)⊗SO(3))/ISO(3)");
    a.set_metadata("space.S1.dim", "3+1");
    a.set_metadata("space.S1.curvature", "kappa");
    a.set_metadata(
        "space.S2",
        "T6(SO(2)⊗SO(3))/(SO(2)⊗SO(3)) or T6(SO(1,1)⊗SO(3))/(SO(1,1)⊗SO(3))",
    );
    a.set_metadata("space.S2.dim", "3+3");
    a.set_metadata("space.S2.curvature", "0");
    Ok(a)
}

/// Parity `Π: (H,P,K,J) -> (H,-P,-K,J)`; `Xi` is fixed.
pub fn parity(alg: &LieAlgebra) -> LinearMap {
    LinearMap::sign_pattern(alg, |name| {
        if name.starts_with('P') || name.starts_with('K') {
            -1
        } else {
            1
        }
    })
}

/// Parity times time reversal `ΠT: (H,P,K,J) -> (-H,-P,K,J)`; `Xi` flips with `[P,K]`.
pub fn parity_time(alg: &LieAlgebra) -> LinearMap {
    LinearMap::sign_pattern(alg, |name| {
        if name == "H" || name == "Xi" || name.starts_with('P') {
            -1
        } else {
            1
        }
    })
}

/// Splitting induced by `ΠT`: `p = <H,P>`, `h = <K,J>` (spacetime as `G/h`).
pub fn spacetime_split(alg: &LieAlgebra) -> Result<Decomposition, LieError> {
    Decomposition::from_p_names(alg, &["H", "P1", "P2", "P3"], "PiT")
}

/// Splitting induced by `Π`: `p = <P,K>`, `h = <H,J>` (space of worldlines as `G/h`).
pub fn worldline_split(alg: &LieAlgebra) -> Result<Decomposition, LieError> {
    Decomposition::from_p_names(alg, &["P1", "P2", "P3", "K1", "K2", "K3"], "Pi")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{automorphism_check, decomposition_check, PpClass};

    fn bracket(alg: &LieAlgebra, a: &str, b: &str) -> String {
        let i = alg.index_of(a).unwrap();
        let j = alg.index_of(b).unwrap();
        alg.format_vector(&alg.bracket_basis(i, j))
    }

    #[test]
    fn galilei_table() {
        let g = catalog("galilei").unwrap();
        assert_eq!(g.dim(), 10);
        assert_eq!(bracket(&g, "J1", "J2"), "J3");
        assert_eq!(bracket(&g, "J2", "P1"), "-P3");
        assert_eq!(bracket(&g, "J3", "K1"), "K2");
        assert_eq!(bracket(&g, "H", "K1"), "-P1");
        assert_eq!(bracket(&g, "P1", "P2"), "0");
        assert_eq!(bracket(&g, "P1", "K1"), "0");
        assert_eq!(bracket(&g, "K1", "K2"), "0");
        assert_eq!(bracket(&g, "H", "J1"), "0");
    }

    #[test]
    fn extended_and_curved_tables() {
        let e = catalog("galilei_ext").unwrap();
        assert_eq!(e.dim(), 11);
        assert_eq!(bracket(&e, "P1", "K1"), "m*Xi");
        assert_eq!(bracket(&e, "P1", "K2"), "0");
        let pc = catalog("poincare").unwrap();
        assert_eq!(bracket(&pc, "K1", "K2"), "omega*J3");
        assert_eq!(bracket(&pc, "K1", "K3"), "-omega*J2");
        assert_eq!(bracket(&pc, "P2", "K2"), "omega*H");
        let nh = catalog("newton_hooke").unwrap();
        assert_eq!(bracket(&nh, "H", "P3"), "kappa*K3");
        assert!(catalog("euclid4").unwrap().structure_eq(&pc));
        assert!(matches!(catalog("de_sitter"), Err(LieError::UnknownAlgebra(_))));
    }

    #[test]
    fn tampered_galilei_fails_jacobi() {
        let mut g = catalog("galilei").unwrap();
        g.set_bracket_named("H", "K1", &[("P1", p("1"))]).unwrap();
        let v = jacobi_check(&g);
        assert!(!v.is_empty());
        // the (H, K1, J_) family is where the sign flip surfaces
        assert!(v.iter().any(|x| x.describe(&g).starts_with("(H,K")));
    }

    #[test]
    fn parity_maps_are_automorphisms() {
        for name in ["galilei", "galilei_ext", "poincare", "newton_hooke", "euclid4"] {
            let a = catalog(name).unwrap();
            assert_eq!(automorphism_check(&a, &parity(&a)), Ok(()), "{name} Pi");
            assert_eq!(automorphism_check(&a, &parity_time(&a)), Ok(()), "{name} PiT");
            assert_eq!(automorphism_check(&a, &LinearMap::identity(&a)), Ok(()));
        }
    }

    #[test]
    fn non_automorphism_detected() {
        let g = catalog("galilei").unwrap();
        // flipping H alone breaks [H,K] = -P
        let f = LinearMap::sign_pattern(&g, |n| if n == "H" { -1 } else { 1 });
        assert!(automorphism_check(&g, &f).is_err());
        // scaling is a homomorphism candidate but not involutive
        let f = LinearMap::sign_pattern(&g, |_| 2);
        assert!(automorphism_check(&g, &f).is_err());
    }

    #[test]
    fn cartan_splittings() {
        let g = catalog("galilei").unwrap();
        for d in [spacetime_split(&g).unwrap(), worldline_split(&g).unwrap()] {
            let c = decomposition_check(&g, &d).unwrap();
            assert!(c.hh_in_h && c.hp_in_p);
            assert_eq!(c.pp, PpClass::Zero);
        }
        let pc = catalog("poincare").unwrap();
        assert_eq!(
            decomposition_check(&pc, &worldline_split(&pc).unwrap()).unwrap().pp,
            PpClass::InH
        );
        assert_eq!(
            decomposition_check(&pc, &spacetime_split(&pc).unwrap()).unwrap().pp,
            PpClass::Zero
        );
        let nh = catalog("newton_hooke").unwrap();
        assert_eq!(
            decomposition_check(&nh, &spacetime_split(&nh).unwrap()).unwrap().pp,
            PpClass::InH
        );
        assert_eq!(
            decomposition_check(&nh, &worldline_split(&nh).unwrap()).unwrap().pp,
            PpClass::Zero
        );
    }

    #[test]
    fn non_symmetric_split_classified_other() {
        let g = catalog("galilei").unwrap();
        // p = <K, J>: [J,J] = J stays in p
        let d = Decomposition::from_p_names(&g, &["K1", "K2", "K3", "J1", "J2", "J3"], "test").unwrap();
        let c = decomposition_check(&g, &d).unwrap();
        assert_eq!(c.pp, PpClass::Other);
        assert!(!c.is_symmetric());
        assert!(Decomposition::new(&g, vec![0, 1], vec![1], "bad").is_err());
    }
}
