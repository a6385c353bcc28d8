//! Build finite spaces, inspect their structure and check properties.

use fintop::space::{make_space, FinSpace, TopProperty};

fn main() {
    // The Sierpiński space: two points, one isolated.
    let s = FinSpace::sierpinski();
    println!("Sierpiński space: {}", s.to_json().unwrap());

    let st = s.structure();
    for p in 0..s.n() {
        println!(
            "  point {p}: min_nbhd = {:#b}, closure = {:#b}",
            st.min_nbhd[p], st.closure[p]
        );
    }
    println!("  0 <= 1 in specialization: {}", st.preorder.le(0, 1));

    // Validation rejects families that are not topologies.
    let bad = make_space(2, &[0b00, 0b01], false);
    println!("missing whole set -> {:?}", bad.err().map(|e| e.to_string()));

    // A subbase can be completed into a topology instead.
    let completed = make_space(3, &[0b000, 0b011, 0b110, 0b111], true).unwrap();
    println!("completed subbase: {}", completed.to_json().unwrap());

    for prop in TopProperty::ALL {
        println!(
            "S: {} = {}, I(2): {} = {}",
            prop.name(),
            s.check(prop),
            prop.name(),
            FinSpace::indiscrete(2).check(prop)
        );
    }

    // Sums multiply open-set counts; products multiply carriers.
    let (ss, _) = fintop::space::sum(&[s.clone(), s.clone()]).unwrap();
    println!("S ⊔ S has {} opens", ss.open_count().unwrap());
    let (sxs, _) = fintop::space::product(&s, &s).unwrap();
    println!("S × S: {}", sxs.to_json().unwrap());
}
