//! Saturate a seed family under subspaces, prime factors and bounded
//! quotients of sums, then inspect heredity.

use fintop::classes::{Catalog, ClosureRules, Pred};
use fintop::space::FinSpace;

fn main() {
    let mut cat = Catalog::new();
    let s = FinSpace::sierpinski();

    let closure = cat
        .saturate(&[s.clone()], ClosureRules::all(), 4, 3, Pred::T0)
        .unwrap();
    println!(
        "closure of {{S}} at bound 4 under T0: {} members",
        closure.members.len()
    );
    for m in &closure.members {
        println!("  {}", m.to_json().unwrap());
    }

    let report = cat.heredity_report(&closure).unwrap();
    println!(
        "prime-factor closed: {}, hereditary: {}, forward lemma: {}, converse on small: {}",
        report.pf_closed,
        report.hereditary,
        report.lemma_forward_ok,
        report.converse_ok_on_small
    );

    // restricting the rules keeps the family smaller
    let subs_only = cat
        .saturate(
            &[FinSpace::indiscrete(3)],
            ClosureRules {
                subspace: true,
                prime_factor: false,
                bounded_quotient_of_sums: false,
            },
            4,
            3,
            Pred::All,
        )
        .unwrap();
    println!(
        "subspace-only closure of I(3): {} members",
        subs_only.members.len()
    );
}
