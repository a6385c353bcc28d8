//! Enumerate homeomorphism classes of finite spaces and search them.

use fintop::classes::{brute_universe, strongly_rigid, Catalog, Pred};

fn main() {
    let mut cat = Catalog::new();
    println!("classes with exactly n points (all / T0):");
    for n in 1..=6 {
        let all = cat.universe(n, Pred::All).unwrap().len();
        let t0 = cat.universe(n, Pred::T0).unwrap().len();
        println!("  n = {n}: {all} / {t0}");
    }

    // the independent brute-force enumerator agrees
    for n in 1..=4 {
        let brute = brute_universe(n, Pred::All, false).unwrap();
        println!(
            "  brute force n = {n}: {} classes (matches: {})",
            brute.len(),
            brute.len() == cat.universe(n, Pred::All).unwrap().len()
        );
    }

    // exhaustive search: which small spaces admit only trivial self-maps?
    println!("strongly rigid classes with 2..=5 points:");
    for id in cat.universe_upto(5, Pred::All).unwrap() {
        let x = cat.space(id).clone();
        if x.n() >= 2 && strongly_rigid(&x) {
            println!("  {}", x.to_json().unwrap());
        }
    }
}
