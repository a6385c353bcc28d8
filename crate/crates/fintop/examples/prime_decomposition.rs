//! Every finite space is a quotient of the sum of its prime factors, and
//! prime spaces retract onto their prime subspaces.

use fintop::prime::{gen, is_prime, prime_decomposition, prime_retraction, Generator};
use fintop::space::quotient_by_map;

fn main() {
    let c3 = gen(Generator::C, 3).unwrap();
    println!("C(3) = {}", c3.to_json().unwrap());
    let view = is_prime(&c3).unwrap();
    println!("prime with accumulation point {}", view.acc);

    let d = prime_decomposition(&c3).unwrap();
    println!(
        "sum of prime factors: {} points; map = {:?}",
        d.sum.n(),
        d.map.assignment()
    );
    let (q, qmap) = quotient_by_map(&d.sum, d.map.assignment(), c3.n()).unwrap();
    println!(
        "quotient reconstructs C(3): {}, classified quotient: {}",
        q == c3,
        qmap.classify().quotient
    );

    // Retraction onto the prime subspace on {2, 3}: identity there, the
    // rest collapses to the accumulation point.
    let r = prime_retraction(&view, 0b1100).unwrap();
    let flags = r.classify();
    println!(
        "retraction onto {{2,3}}: table {:?}, continuous = {}, retraction = {}",
        r.assignment(),
        flags.continuous,
        flags.retraction
    );
}
