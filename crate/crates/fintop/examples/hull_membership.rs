//! Exact hull-membership oracles: quotients-of-sums for coreflective hulls,
//! initial (mono)sources for the reflective ones.

use fintop::classes::{in_ad_hull, in_hull, HullKind, Pred};
use fintop::space::{make_space, FinSpace};

fn main() {
    let s = FinSpace::sierpinski();
    let at = FinSpace::indiscrete(2);
    let d2 = FinSpace::discrete(2);

    // the two-point indiscrete space is a quotient of S ⊔ S
    let (yes, _) = in_hull(HullKind::Coreflective, &at, &[s.clone()]);
    println!("I(2) in CH(S): {yes}");

    // but S is not a quotient of sums of indiscrete spaces
    let (no, _) = in_hull(HullKind::Coreflective, &s, &[at.clone()]);
    println!("S in CH(I(2)): {no}");

    // chains embed into powers of S, indiscrete pairs do not
    let chain = make_space(3, &[0b000, 0b100, 0b110, 0b111], false).unwrap();
    println!(
        "3-chain in RH(S): {}",
        in_hull(HullKind::Epireflective, &chain, &[s.clone()]).0
    );
    println!(
        "I(2) in RH(S): {}",
        in_hull(HullKind::Epireflective, &at, &[s.clone()]).0
    );
    println!(
        "I(2) in BH(S): {}",
        in_hull(HullKind::Bireflective, &at, &[s.clone()]).0
    );

    // AD-hull membership inside an ambient class
    println!(
        "D(3) in AD-hull of S inside T1: {}",
        in_ad_hull(&FinSpace::discrete(3), &[s.clone()], Pred::T1).unwrap()
    );
    println!(
        "S in AD-hull of S inside T1: {}",
        in_ad_hull(&s, &[s.clone()], Pred::T1).unwrap()
    );
    println!(
        "D(2) generates the discrete fragment: D(3) in CH(D(2)) = {}",
        in_hull(HullKind::Coreflective, &FinSpace::discrete(3), &[d2]).0
    );
}
