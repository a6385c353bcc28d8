//! Property tests over randomly generated finite spaces.

use proptest::prelude::*;

use fintop::canon::{canonical_form, find_homeomorphism, relabel};
use fintop::classes::t0_reflection;
use fintop::expr::{eval, parse, Expr};
use fintop::space::{
    make_space, product, quotient_by_map, sum, FinSpace, Mask, TopProperty,
};

/// Random space on up to five points: reflexive-transitive closure of a
/// random relation, read as minimal neighborhoods.
fn arb_space() -> impl Strategy<Value = FinSpace> {
    (1usize..=5, any::<u32>()).prop_map(|(n, bits)| {
        let mut rows: Vec<Mask> = (0..n).map(|x| 1 << x).collect();
        let mut b = 0;
        for x in 0..n {
            for y in 0..n {
                if x != y && bits >> (b % 32) & 1 == 1 {
                    rows[x] |= 1 << y;
                }
                b += 1;
            }
        }
        loop {
            let mut grew = false;
            for x in 0..n {
                let mut acc = rows[x];
                for y in 0..n {
                    if rows[x] >> y & 1 == 1 {
                        acc |= rows[y];
                    }
                }
                if acc != rows[x] {
                    rows[x] = acc;
                    grew = true;
                }
            }
            if !grew {
                break;
            }
        }
        FinSpace::from_min_nbhds(n, rows).expect("closure of a relation is a topology")
    })
}

proptest! {
    #[test]
    fn canonical_form_is_relabeling_invariant(x in arb_space(), seed in any::<u64>()) {
        let n = x.n();
        let mut perm: Vec<usize> = (0..n).collect();
        // cheap deterministic shuffle from the seed
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let y = relabel(&x, &perm);
        prop_assert_eq!(canonical_form(&x).unwrap(), canonical_form(&y).unwrap());
        prop_assert!(find_homeomorphism(&x, &y).is_some());
    }

    #[test]
    fn opens_of_sum_multiply(x in arb_space(), y in arb_space()) {
        let (s, _) = sum(&[x.clone(), y.clone()]).unwrap();
        prop_assert_eq!(
            s.open_count().unwrap(),
            x.open_count().unwrap() * y.open_count().unwrap()
        );
    }

    #[test]
    fn product_min_nbhds_are_rectangles(x in arb_space(), y in arb_space()) {
        let (p, _) = product(&x, &y).unwrap();
        for a in 0..x.n() {
            for b in 0..y.n() {
                let mut rect = 0 as Mask;
                for a2 in 0..x.n() {
                    for b2 in 0..y.n() {
                        if x.min_nbhd(a) >> a2 & 1 == 1 && y.min_nbhd(b) >> b2 & 1 == 1 {
                            rect |= 1 << (a2 * y.n() + b2);
                        }
                    }
                }
                prop_assert_eq!(p.min_nbhd(a * y.n() + b), rect);
            }
        }
    }

    #[test]
    fn quotients_classify_as_quotients(x in arb_space(), labels in proptest::collection::vec(0usize..4, 1..=5)) {
        let n = x.n();
        let table: Vec<usize> = (0..n).map(|i| labels[i % labels.len()] % n).collect();
        // compress to a surjection
        let mut seen: Vec<usize> = table.clone();
        seen.sort_unstable();
        seen.dedup();
        let table: Vec<usize> = table
            .iter()
            .map(|v| seen.binary_search(v).unwrap())
            .collect();
        let (q, map) = quotient_by_map(&x, &table, seen.len()).unwrap();
        prop_assert!(map.classify().quotient);
        // final topology self-consistency on every subset
        for v in 0..(1u32 << q.n()) {
            prop_assert_eq!(q.is_open(v), x.is_open(map.preimage(v)));
        }
    }

    #[test]
    fn make_space_autocompletion_idempotent(x in arb_space()) {
        let opens = x.opens().unwrap();
        let rebuilt = make_space(x.n(), &opens, false).unwrap();
        prop_assert_eq!(&rebuilt, &x);
        let completed = make_space(x.n(), &opens, true).unwrap();
        prop_assert_eq!(&completed, &x);
    }

    #[test]
    fn t0_reflection_arrow_flags(x in arb_space()) {
        let (rx, arrow) = t0_reflection(&x);
        prop_assert!(rx.check(TopProperty::T0));
        let flags = arrow.classify();
        prop_assert!(flags.quotient && flags.initial && flags.retraction);
    }

    #[test]
    fn literal_expressions_round_trip(x in arb_space()) {
        let text = Expr::Literal(x.clone()).to_string();
        let parsed = parse(&text).unwrap();
        let value = eval(&parsed).unwrap().finite().unwrap();
        prop_assert_eq!(value, x);
    }
}
