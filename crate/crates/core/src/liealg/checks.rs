use std::collections::BTreeSet;

use crate::coeffring::Poly;

use super::{LieAlgebra, LieError};

/// A basis triple whose cyclic Jacobi sum does not vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub residual: Vec<Poly>,
}

impl JacobiViolation {
    pub fn describe(&self, alg: &LieAlgebra) -> String {
        let (i, j, k) = self.triple;
        format!(
            "({},{},{}): {}",
            alg.generator_name(i),
            alg.generator_name(j),
            alg.generator_name(k),
            alg.format_vector(&self.residual)
        )
    }
}

/// Checks `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0` for every `i<j<k`.
///
/// Returns every violating triple; an empty list means the structure
/// constants define a Lie algebra.
pub fn jacobi_check(alg: &LieAlgebra) -> Vec<JacobiViolation> {
    let n = alg.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let mut residual = alg.zero_vector();
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    for (l, coeff) in alg.structure(a, b) {
                        for (m, inner) in alg.structure(l, c) {
                            residual[m].add_assign_poly(&(&coeff * &inner));
                        }
                    }
                }
                if residual.iter().any(|p| !p.is_zero()) {
                    out.push(JacobiViolation {
                        triple: (i, j, k),
                        residual,
                    });
                }
            }
        }
    }
    out
}

/// Square matrix over the basis; column `j` holds the image of `e_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    columns: Vec<Vec<Poly>>,
}

impl LinearMap {
    pub fn from_columns(columns: Vec<Vec<Poly>>) -> Result<Self, LieError> {
        let n = columns.len();
        if let Some(bad) = columns.iter().find(|c| c.len() != n) {
            return Err(LieError::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        Ok(LinearMap { columns })
    }

    pub fn identity(alg: &LieAlgebra) -> Self {
        LinearMap {
            columns: (0..alg.dim()).map(|i| alg.basis_vector(i)).collect(),
        }
    }

    /// Diagonal map `e_i -> sign(name_i) e_i`.
    pub fn sign_pattern(alg: &LieAlgebra, sign: impl Fn(&str) -> i64) -> Self {
        let ctx = alg.context();
        let columns = alg
            .generators()
            .map(|g| {
                let mut v = alg.zero_vector();
                v[g.index] = Poly::integer(ctx, sign(g.name));
                v
            })
            .collect();
        LinearMap { columns }
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn image(&self, j: usize) -> &[Poly] {
        &self.columns[j]
    }

    pub fn apply(&self, v: &[Poly]) -> Vec<Poly> {
        let n = self.dim();
        let ctx = v[0].context().clone();
        let mut out = vec![Poly::zero(&ctx); n];
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, m) in self.columns[j].iter().enumerate() {
                if !m.is_zero() {
                    out[i].add_assign_poly(&(m * c));
                }
            }
        }
        out
    }
}

/// Why a linear map fails to be an involutive automorphism.
#[derive(Clone, Debug, PartialEq)]
pub enum AutomorphismViolation {
    Dimension {
        expected: usize,
        found: usize,
    },
    /// `f([e_i,e_j]) - [f(e_i),f(e_j)]` is nonzero.
    NotHomomorphism {
        pair: (usize, usize),
        residual: Vec<Poly>,
    },
    /// `f(f(e_j)) - e_j` is nonzero.
    NotInvolutive {
        generator: usize,
        residual: Vec<Poly>,
    },
}

impl AutomorphismViolation {
    pub fn describe(&self, alg: &LieAlgebra) -> String {
        match self {
            AutomorphismViolation::Dimension { expected, found } => {
                format!("map has dimension {found}, algebra has {expected}")
            }
            AutomorphismViolation::NotHomomorphism { pair: (i, j), residual } => format!(
                "f([{},{}]) - [f({}),f({})] = {}",
                alg.generator_name(*i),
                alg.generator_name(*j),
                alg.generator_name(*i),
                alg.generator_name(*j),
                alg.format_vector(residual)
            ),
            AutomorphismViolation::NotInvolutive { generator, residual } => format!(
                "f(f({})) - {} = {}",
                alg.generator_name(*generator),
                alg.generator_name(*generator),
                alg.format_vector(residual)
            ),
        }
    }
}

/// Passes iff `f` preserves all basis brackets and `f∘f` is the identity.
pub fn automorphism_check(alg: &LieAlgebra, f: &LinearMap) -> Result<(), AutomorphismViolation> {
    let n = alg.dim();
    if f.dim() != n {
        return Err(AutomorphismViolation::Dimension {
            expected: n,
            found: f.dim(),
        });
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let lhs = f.apply(&alg.bracket_basis(i, j));
            let rhs = alg.bracket(f.image(i), f.image(j)).expect("dimensions already checked");
            let residual: Vec<Poly> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
            if residual.iter().any(|p| !p.is_zero()) {
                return Err(AutomorphismViolation::NotHomomorphism { pair: (i, j), residual });
            }
        }
    }
    for j in 0..n {
        let twice = f.apply(f.image(j));
        let mut residual = twice;
        residual[j] = &residual[j] - &Poly::one(alg.context());
        if residual.iter().any(|p| !p.is_zero()) {
            return Err(AutomorphismViolation::NotInvolutive { generator: j, residual });
        }
    }
    Ok(())
}

/// Vector-space splitting `g = h ⊕ p` of the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub h: Vec<usize>,
    pub p: Vec<usize>,
    pub label: String,
}

impl Decomposition {
    pub fn new(alg: &LieAlgebra, h: Vec<usize>, p: Vec<usize>, label: &str) -> Result<Self, LieError> {
        let d = Decomposition {
            h,
            p,
            label: label.to_string(),
        };
        d.validate(alg)?;
        Ok(d)
    }

    /// Builds a splitting where `p` holds the named generators and `h` the rest.
    pub fn from_p_names(alg: &LieAlgebra, p_names: &[&str], label: &str) -> Result<Self, LieError> {
        let mut p = Vec::new();
        for name in p_names {
            p.push(alg.index_of(name)?);
        }
        p.sort_unstable();
        let h = (0..alg.dim()).filter(|i| !p.contains(i)).collect();
        Decomposition::new(alg, h, p, label)
    }

    pub fn validate(&self, alg: &LieAlgebra) -> Result<(), LieError> {
        let mut seen = BTreeSet::new();
        for &i in self.h.iter().chain(self.p.iter()) {
            if i >= alg.dim() {
                return Err(LieError::IndexOutOfRange);
            }
            if !seen.insert(i) {
                return Err(LieError::InvalidDecomposition(format!(
                    "{} appears twice",
                    alg.generator_name(i)
                )));
            }
        }
        if seen.len() != alg.dim() {
            return Err(LieError::InvalidDecomposition("h and p do not cover the basis".into()));
        }
        Ok(())
    }

    pub fn in_p(&self, i: usize) -> bool {
        self.p.contains(&i)
    }
}

/// Classification of `[p,p]` in a splitting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PpClass {
    Zero,
    InH,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecompositionClass {
    pub hh_in_h: bool,
    pub hp_in_p: bool,
    pub pp: PpClass,
}

impl DecompositionClass {
    /// `[h,h] ⊆ h`, `[h,p] ⊆ p` and `[p,p] ⊆ h`: a symmetric (Cartan-type) splitting.
    pub fn is_symmetric(&self) -> bool {
        self.hh_in_h && self.hp_in_p && self.pp != PpClass::Other
    }
}

fn support(alg: &LieAlgebra, i: usize, j: usize) -> Vec<usize> {
    alg.structure(i, j).into_iter().map(|(k, _)| k).collect()
}

pub fn decomposition_check(alg: &LieAlgebra, d: &Decomposition) -> Result<DecompositionClass, LieError> {
    d.validate(alg)?;
    let within = |pairs: &[(usize, usize)], target: &[usize]| {
        pairs
            .iter()
            .all(|&(i, j)| support(alg, i, j).iter().all(|k| target.contains(k)))
    };
    let pairs = |a: &[usize], b: &[usize]| -> Vec<(usize, usize)> {
        a.iter().flat_map(|&i| b.iter().map(move |&j| (i, j))).collect()
    };
    let hh_in_h = within(&pairs(&d.h, &d.h), &d.h);
    let hp_in_p = within(&pairs(&d.h, &d.p), &d.p);
    let pp_pairs = pairs(&d.p, &d.p);
    let pp = if pp_pairs.iter().all(|&(i, j)| support(alg, i, j).is_empty()) {
        PpClass::Zero
    } else if within(&pp_pairs, &d.h) {
        PpClass::InH
    } else {
        PpClass::Other
    };
    Ok(DecompositionClass { hh_in_h, hp_in_p, pp })
}
