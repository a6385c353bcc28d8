//! The two pinch constructions on X × Y: the final-topology pinch is always
//! finer than the initial-topology one, and the pinched subspace projects
//! onto a prime factor as a quotient.

use fintop::constructions::{dtriangle, pinched_subspace, triangle};
use fintop::prime::{gen, Generator};
use fintop::space::FinSpace;

fn main() {
    let s = FinSpace::sierpinski();

    let tri = triangle(&s, &s, 0).unwrap();
    let dtri = dtriangle(&s, &s, 0).unwrap();
    println!("tri(S,S,0)  = {}", tri.base.to_json().unwrap());
    println!("dtri(S,S,0) = {}", dtri.base.to_json().unwrap());
    println!(
        "tri finer than dtri: {} (they even coincide here: {})",
        tri.base.finer_than(&dtri.base).unwrap(),
        tri.base == dtri.base
    );

    // On finite carriers the two pinches in fact coincide: every point has
    // a single minimal neighborhood, so the varying-neighborhood unions of
    // the final-topology pinch collapse onto the initial-topology base.
    let c2 = gen(Generator::C, 2).unwrap();
    let tri = triangle(&s, &c2, 2).unwrap();
    let dtri = dtriangle(&s, &c2, 2).unwrap();
    println!(
        "tri(S,C(2),2) has {} opens, dtri(S,C(2),2) has {}, equal: {}",
        tri.base.open_count().unwrap(),
        dtri.base.open_count().unwrap(),
        tri.base == dtri.base
    );

    // {0} is closed but not open in S, so the coordinate projection of the
    // pinched subspace is a quotient onto the prime factor at 0.
    let p = pinched_subspace(&s, &s, 0, 0).unwrap();
    println!("pinched subspace: {}", p.sub.to_json().unwrap());
    println!(
        "projection {:?} classified quotient: {}",
        p.q.assignment(),
        p.q.classify().quotient
    );
}
