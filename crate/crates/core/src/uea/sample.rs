use std::sync::Arc;

use rand::Rng;

use crate::coeffring::{Poly, Rational};

use super::{normal_form, EnvelopingAlgebra, UEAElement, Word};

/// Up to `max_terms` words of length at most `max_degree` in random letter
/// order, with small nonzero rational coefficients.
pub fn random_words<R: Rng + ?Sized>(
    uea: &Arc<EnvelopingAlgebra>,
    rng: &mut R,
    max_degree: usize,
    max_terms: usize,
) -> Vec<Word> {
    let n = uea.dim();
    let count = rng.gen_range(1..=max_terms.max(1));
    (0..count)
        .map(|_| {
            let len = rng.gen_range(0..=max_degree);
            let letters = (0..len).map(|_| rng.gen_range(0..n)).collect();
            let mut num = rng.gen_range(-4i64..=4);
            if num == 0 {
                num = 1;
            }
            let den = rng.gen_range(1i64..=3);
            let c = Rational::new(num, den).expect("nonzero denominator");
            Word::new(letters, Poly::constant(uea.context(), c))
        })
        .collect()
}

/// Normal form of [`random_words`].
pub fn random_element<R: Rng + ?Sized>(
    uea: &Arc<EnvelopingAlgebra>,
    rng: &mut R,
    max_degree: usize,
    max_terms: usize,
) -> UEAElement {
    normal_form(uea, &random_words(uea, rng, max_degree, max_terms)).expect("words over this algebra")
}
