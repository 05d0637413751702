use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::coeffring::Poly;

pub(crate) type Letters = SmallVec<[u8; 16]>;

/// A PBW basis monomial: generators in basis order with multiplicities.
///
/// Stored as the non-decreasing letter sequence, which carries the same
/// information as the exponent vector. Ordering is the display order:
/// higher degree first, then larger exponents on earlier generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PbwMonomial(pub(crate) Letters);

impl PbwMonomial {
    pub fn unit() -> Self {
        PbwMonomial(Letters::new())
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        let mut letters = Letters::new();
        for (i, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                letters.push(i as u8);
            }
        }
        PbwMonomial(letters)
    }

    /// Exponent vector over a basis of size `n`.
    pub fn exponents(&self, n: usize) -> Vec<u32> {
        let mut out = vec![0; n];
        for &l in &self.0 {
            out[l as usize] += 1;
        }
        out
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Text such as `H*P1^2*K3`, or `1` for the unit.
    pub fn format(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == l {
                run += 1;
            }
            let name = &names[l as usize];
            parts.push(if run == 1 {
                name.clone()
            } else {
                format!("{name}^{run}")
            });
            i += run;
        }
        parts.join("*")
    }
}

impl Ord for PbwMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.len().cmp(&self.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for PbwMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A coefficient times a product of generators in arbitrary order.
#[derive(Clone, Debug)]
pub struct Word {
    pub letters: Vec<usize>,
    pub coeff: Poly,
}

impl Word {
    pub fn new(letters: Vec<usize>, coeff: Poly) -> Self {
        Word { letters, coeff }
    }
}

/// Work-queue key: shorter words sort first, equal lengths lexicographically.
///
/// Rewriting a popped word only produces strictly smaller keys (a swap
/// lowers it lexicographically, a bracket correction shortens it), so
/// popping the maximum processes every word once with all of its
/// contributions already merged.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct WordKey(pub(crate) Letters);

impl Ord for WordKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for WordKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
