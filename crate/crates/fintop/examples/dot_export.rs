//! Print the specialization Hasse diagram of an expression as DOT.

use fintop::cli::export_dot;
use fintop::expr::{eval, parse};

fn main() {
    for src in ["C(3)", "tri(S, S, 0)", "q(sum(I(2), D(1)), 0, 0, 1)"] {
        let space = eval(&parse(src).unwrap()).unwrap().finite().unwrap();
        println!("// {src}");
        print!("{}", export_dot(&space));
        println!();
    }
}
