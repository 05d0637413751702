mod common;

use common::{associativity, canonicity, ring_axioms, seed, uea_jacobi, ALGEBRAS};

#[test]
fn coefficient_ring_axioms() {
    let s = seed();
    println!("seed {s}");
    ring_axioms(256, s).unwrap();
}

#[test]
fn enveloping_product_is_associative() {
    let s = seed();
    println!("seed {s}");
    for name in ALGEBRAS {
        associativity(name, 100, s).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn commutator_satisfies_jacobi() {
    let s = seed();
    println!("seed {s}");
    for name in ALGEBRAS {
        uea_jacobi(name, 100, s).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn normal_form_is_canonical() {
    let s = seed();
    println!("seed {s}");
    for name in ALGEBRAS {
        canonicity(name, 100, s).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}
