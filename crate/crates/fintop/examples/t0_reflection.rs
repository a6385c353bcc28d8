//! The T₀-reflection collapses points with equal closures; its arrow is a
//! quotient, an initial map and a retraction, and singleton fibers of
//! initial surjections carry prime factors into coreflective hulls.

use fintop::classes::{t0_reflection, verify_initial_singleton_fiber};
use fintop::space::make_space;

fn main() {
    // three points, the first two topologically indistinguishable
    let x = make_space(3, &[0b000, 0b011, 0b111], false).unwrap();
    println!("X = {}", x.to_json().unwrap());

    let (rx, arrow) = t0_reflection(&x);
    println!("R0(X) = {}", rx.to_json().unwrap());
    println!("arrow table: {:?}", arrow.assignment());
    let flags = arrow.classify();
    println!(
        "quotient = {}, initial = {}, retraction = {}",
        flags.quotient, flags.initial, flags.retraction
    );

    // the closed point has a singleton fiber; the section argument applies
    let b = arrow.apply(2);
    println!(
        "singleton-fiber verification at b = {b}: {}",
        verify_initial_singleton_fiber(&arrow, b).unwrap()
    );
}
