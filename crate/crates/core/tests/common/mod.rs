//! Seeded property checks shared by the property tests and the acceptance run.

#![allow(dead_code)]

use std::sync::Arc;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use liexp::coeffring::{Assignment, Context, Poly, Rational};
use liexp::liealg::catalog;
use liexp::uea::{normal_form, EnvelopingAlgebra, UEAElement, Word};

pub const ALGEBRAS: [&str; 5] = ["galilei", "galilei_ext", "poincare", "newton_hooke", "euclid4"];

/// `LIEXP_PROPTEST_SEED` or a fixed default.
pub fn seed() -> u64 {
    std::env::var("LIEXP_PROPTEST_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(20_241_019)
}

pub fn runner(cases: u32, seed: u64) -> TestRunner {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &bytes))
}

fn run<S: Strategy>(
    cases: u32,
    seed: u64,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(cases, seed)
        .run(&strategy, test)
        .map_err(|e| format!("seed {seed}: {e}"))
}

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

pub fn laurent_context() -> Context {
    Context::new(&["x", "y", "eps"], Some("eps")).unwrap()
}

/// Sparse polynomials in `x`, `y` and the Laurent variable `eps`.
pub fn poly(ctx: Context) -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0i32..3, 0i32..3, -2i32..3), rational()), 0..5).prop_map(move |terms| {
        Poly::from_terms(&ctx, terms.into_iter().map(|((a, b, e), c)| (vec![a, b, e], c))).unwrap()
    })
}

/// Commutative ring axioms, distributivity, and evaluation at a point as a ring map.
pub fn ring_axioms(cases: u32, seed: u64) -> Result<(), String> {
    let ctx = laurent_context();
    let c = ctx.clone();
    let point = (
        rational().prop_filter("nonzero", |r| !r.is_zero()),
        rational(),
        rational().prop_filter("nonzero", |r| !r.is_zero()),
    );
    run(
        cases,
        seed,
        (poly(c.clone()), poly(c.clone()), poly(c), point),
        move |(a, b, d, (x, y, e))| {
            let zero = Poly::zero(&ctx);
            let one = Poly::one(&ctx);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &d, &a + &(&b + &d));
            prop_assert_eq!(&(&a * &b) * &d, &a * &(&b * &d));
            prop_assert_eq!(&a * &(&b + &d), &(&a * &b) + &(&a * &d));
            prop_assert_eq!(&a + &zero, a.clone());
            prop_assert_eq!(&a * &one, a.clone());
            prop_assert!((&a + &(-&a)).is_zero());
            prop_assert_eq!(&a - &b, &a + &(-&b));
            let at = Assignment::new()
                .with_rational("x", x)
                .with_rational("y", y)
                .with_rational("eps", e);
            let ev = |p: &Poly| p.substitute(&at).unwrap();
            prop_assert_eq!(ev(&(&a * &b)), &ev(&a) * &ev(&b));
            prop_assert_eq!(ev(&(&a + &b)), &ev(&a) + &ev(&b));
            let text = a.to_string();
            prop_assert_eq!(Poly::parse(&ctx, &text).unwrap(), a.clone(), "round trip of {}", text);
            Ok(())
        },
    )
}

/// Curvature-like parameter of each catalog algebra, used to make coefficients parametric.
fn parameter_of(name: &str) -> &'static str {
    match name {
        "poincare" | "euclid4" => "omega",
        "newton_hooke" => "kappa",
        "galilei_ext" => "m",
        _ => "a1",
    }
}

pub fn uea(name: &str) -> Arc<EnvelopingAlgebra> {
    EnvelopingAlgebra::new(catalog(name).unwrap()).unwrap()
}

/// Up to three words of length at most `max_len`, coefficients `r * param^k`.
pub fn words(uea: Arc<EnvelopingAlgebra>, max_len: usize) -> impl Strategy<Value = Vec<Word>> {
    let n = uea.dim();
    let param = parameter_of(uea.algebra().name());
    let ctx = uea.context().clone();
    prop::collection::vec((prop::collection::vec(0..n, 0..=max_len), rational(), 0u32..2), 1..=3).prop_map(move |ws| {
        ws.into_iter()
            .map(|(letters, r, k)| {
                let c = Poly::param(&ctx, param).unwrap().pow(k).scale(&r);
                Word::new(letters, c)
            })
            .collect()
    })
}

pub fn element(uea: Arc<EnvelopingAlgebra>, max_len: usize) -> impl Strategy<Value = UEAElement> {
    let u = uea.clone();
    words(uea, max_len).prop_map(move |w| normal_form(&u, &w).unwrap())
}

/// `(xy)z = x(yz)` on random elements of degree at most 3.
pub fn associativity(name: &str, cases: u32, seed: u64) -> Result<(), String> {
    let u = uea(name);
    let e = || element(u.clone(), 3);
    run(cases, seed, (e(), e(), e()), |(x, y, z)| {
        let l = x.product(&y).unwrap().product(&z).unwrap();
        let r = x.product(&y.product(&z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
        Ok(())
    })
}

/// Cyclic sum of nested commutators vanishes.
pub fn uea_jacobi(name: &str, cases: u32, seed: u64) -> Result<(), String> {
    let u = uea(name);
    let e = || element(u.clone(), 2);
    run(cases, seed, (e(), e(), e()), |(x, y, z)| {
        let c = |a: &UEAElement, b: &UEAElement| a.commutator(b).unwrap();
        let s = c(&x, &c(&y, &z))
            .add(&c(&y, &c(&z, &x)))
            .unwrap()
            .add(&c(&z, &c(&x, &y)))
            .unwrap();
        prop_assert!(s.is_zero(), "residual {}", s);
        Ok(())
    })
}

/// Normal forms are fixed points, and swapping adjacent letters changes the
/// normal form by exactly the word with the bracket inserted.
pub fn canonicity(name: &str, cases: u32, seed: u64) -> Result<(), String> {
    let u = uea(name);
    let n = u.dim();
    let strategy = (
        prop::collection::vec(0..n, 2..=6),
        any::<prop::sample::Index>(),
        element(u.clone(), 4),
    );
    run(cases, seed, strategy, |(letters, at, x)| {
        let again = normal_form(&u, &x.to_words()).unwrap();
        prop_assert_eq!(&again, &x);

        let ctx = u.context();
        let i = at.index(letters.len() - 1);
        let (a, b) = (letters[i], letters[i + 1]);
        let mut swapped = letters.clone();
        swapped.swap(i, i + 1);
        let one = Poly::one(ctx);
        let lhs = normal_form(&u, &[Word::new(letters.clone(), one.clone())])
            .unwrap()
            .sub(&normal_form(&u, &[Word::new(swapped, one)]).unwrap())
            .unwrap();
        let inserted: Vec<Word> = u
            .algebra()
            .structure(a, b)
            .into_iter()
            .map(|(k, c)| {
                let mut w = letters[..i].to_vec();
                w.push(k);
                w.extend_from_slice(&letters[i + 2..]);
                Word::new(w, c)
            })
            .collect();
        let rhs = normal_form(&u, &inserted).unwrap();
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}
