//! Attachment sums over a prime space and the iterated towers they build,
//! with the prefix-closed level base at the accumulation point.

use fintop::constructions::{a_sum, check_level_base, iterate_a};
use fintop::prime::{gen, is_prime, Generator};
use fintop::space::FinSpace;

fn main() {
    let view = is_prime(&gen(Generator::C, 2).unwrap()).unwrap();
    println!(
        "base prime space: {} (acc {})",
        view.space.to_json().unwrap(),
        view.acc
    );

    // Glue a copy of the Sierpiński space onto each isolated point.
    let parts = vec![(FinSpace::sierpinski(), 0); view.isolated().len()];
    let glued = a_sum(&view, &parts).unwrap();
    println!("attachment sum: {}", glued.space.to_json().unwrap());
    for (k, b) in glued.bristles.iter().enumerate() {
        println!("  bristle {k}: mask {b:#b}");
    }

    // The tower of iterated self-attachments.
    let tower = iterate_a(&view, 3).unwrap();
    let sizes: Vec<usize> = tower.levels.iter().map(|l| l.n()).collect();
    println!("tower level sizes: {sizes:?}");
    println!("level embeddings verify: {}", tower.verify_embeddings());
    for (p, addr) in tower.addresses.iter().enumerate() {
        println!("  point {p}: address {addr:?}");
    }

    let rep = check_level_base(&tower).unwrap();
    println!(
        "level base: {} members, prefix condition {}, local base {}, all clopen {}",
        rep.base.len(),
        rep.all_satisfy_eq1,
        rep.is_local_base,
        rep.all_clopen
    );
}
