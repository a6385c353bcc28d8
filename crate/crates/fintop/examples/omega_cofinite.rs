//! The symbolic countable fragment: finite-or-cofinite sets, the prime
//! space with the cofinite neighborhood filter, and the self-map witness of
//! the cofinite topology.

use std::collections::BTreeSet;

use fintop::omega::{
    excof_witness, finer_than_sym, is_continuous_sym, is_open, FinCofSet, SymbolicPrimeSpace,
};

fn main() {
    let a = FinCofSet::cofinite([1]);
    let b = FinCofSet::finite([1, 2, 3]);
    println!("a = {a:?}");
    println!("b = {b:?}");
    println!("a ∪ b = {:?}", a.union(&b));
    println!("a ∩ b = {:?}", a.intersection(&b));
    println!("¬a = {:?}", a.complement());

    let c = SymbolicPrimeSpace::c_omega();
    println!(
        "star-free sets are open: {}",
        is_open(&c, &FinCofSet::finite([5, 7]), false)
    );
    println!(
        "cofinite neighborhoods of the token are open: {}",
        is_open(&c, &FinCofSet::cofinite([0, 1]), true)
    );
    println!(
        "finite ones are not: {}",
        is_open(&c, &FinCofSet::finite([5]), true)
    );

    let p = SymbolicPrimeSpace::principal(FinCofSet::cofinite([0])).unwrap();
    println!("C_omega finer than the principal space: {}", finer_than_sym(&c, &p));
    println!("and conversely: {}", finer_than_sym(&p, &c));

    // the cofinite-space witness: F collapses to u, the rest is a bijection
    let w = excof_witness(&BTreeSet::from([3, 4]), 9, 0).unwrap();
    println!(
        "witness for F = {{3,4}}, u = 9, b = 0: continuous = {}, fixes b = {}, preimage exact = {}",
        w.continuous, w.fixes_b, w.preimage_exact
    );
    for n in 0..8 {
        print!("f({n}) = {}  ", w.f.apply(n));
    }
    println!();
    println!(
        "as a self-map of the prime space it stays continuous: {}",
        is_continuous_sym(&w.f, &c, &c)
    );
}
