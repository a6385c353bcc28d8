//! Canonical forms and homeomorphism search.
//!
//! `canonical_form` relabels a space so that its sorted open-set family is
//! lexicographically minimal over all point permutations.  Permutations are
//! restricted to classes of a color refinement of the specialization digraph,
//! which is iso-invariant, so the result is a complete homeomorphism
//! invariant: two spaces are homeomorphic iff their canonical forms are
//! equal.

use crate::error::{Error, Result};
use crate::space::{bit, mask_contains, mask_points, FinSpace, Mask, MAX_DENSE_POINTS};

fn mix(mut h: u64, v: u64) -> u64 {
    // splitmix64 step; deterministic across runs, unlike RandomState.
    h = h.wrapping_add(0x9e3779b97f4a7c15).wrapping_add(v);
    h = (h ^ (h >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    h = (h ^ (h >> 27)).wrapping_mul(0x94d049bb133111eb);
    h ^ (h >> 31)
}

/// Iterated refinement of point colors over the specialization digraph.
pub(crate) fn color_refine(x: &FinSpace) -> Vec<u64> {
    let n = x.n();
    let mut col: Vec<u64> = (0..n)
        .map(|p| {
            mix(
                x.min_nbhd(p).count_ones() as u64,
                x.point_closure(p).count_ones() as u64,
            )
        })
        .collect();
    for _ in 0..n {
        let mut next = Vec::with_capacity(n);
        for p in 0..n {
            let mut ups: Vec<u64> = mask_points(x.min_nbhd(p)).map(|q| col[q]).collect();
            let mut downs: Vec<u64> = mask_points(x.point_closure(p)).map(|q| col[q]).collect();
            ups.sort_unstable();
            downs.sort_unstable();
            let mut h = mix(col[p], 1);
            for v in ups {
                h = mix(h, v);
            }
            h = mix(h, 2);
            for v in downs {
                h = mix(h, v);
            }
            next.push(h);
        }
        if next == col {
            break;
        }
        col = next;
    }
    col
}

fn relabel_opens(opens: &[Mask], perm: &[usize]) -> Vec<Mask> {
    // perm maps old point -> new point
    let mut out: Vec<Mask> = opens
        .iter()
        .map(|&u| {
            let mut m = 0;
            for p in mask_points(u) {
                m |= bit(perm[p]);
            }
            m
        })
        .collect();
    out.sort_unstable();
    out
}

/// Relabel a space along `perm` (old point -> new point).
pub fn relabel(x: &FinSpace, perm: &[usize]) -> FinSpace {
    let n = x.n();
    let mut min = vec![0 as Mask; n];
    for p in 0..n {
        let mut m = 0;
        for q in mask_points(x.min_nbhd(p)) {
            m |= bit(perm[q]);
        }
        min[perm[p]] = m;
    }
    FinSpace::from_min_nbhds_unchecked(n, min)
}

struct PermClasses {
    /// Points grouped by color, classes in ascending color order.
    classes: Vec<Vec<usize>>,
}

impl PermClasses {
    fn new(x: &FinSpace) -> Self {
        let col = color_refine(x);
        let mut order: Vec<usize> = (0..x.n()).collect();
        order.sort_by_key(|&p| (col[p], p));
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for p in order {
            match classes.last_mut() {
                Some(c) if col[c[0]] == col[p] => c.push(p),
                _ => classes.push(vec![p]),
            }
        }
        PermClasses { classes }
    }

    /// Visit every permutation that respects the class order; `perm[old]`
    /// gives the new label.  Callback may return false to stop.
    fn for_each_perm<F: FnMut(&[usize]) -> bool>(&self, n: usize, mut f: F) {
        let mut perm = vec![0usize; n];
        let mut scratch: Vec<Vec<usize>> = self.classes.clone();
        fn rec<F: FnMut(&[usize]) -> bool>(
            classes: &mut [Vec<usize>],
            ci: usize,
            base: usize,
            pos: usize,
            perm: &mut [usize],
            f: &mut F,
        ) -> bool {
            if ci == classes.len() {
                return f(perm);
            }
            let len = classes[ci].len();
            if pos == len {
                return rec(classes, ci + 1, base + len, 0, perm, f);
            }
            for i in pos..len {
                classes[ci].swap(pos, i);
                perm[classes[ci][pos]] = base + pos;
                if !rec(classes, ci, base, pos + 1, perm, f) {
                    classes[ci].swap(pos, i);
                    return false;
                }
                classes[ci].swap(pos, i);
            }
            true
        }
        rec(&mut scratch, 0, 0, 0, &mut perm, &mut f);
    }
}

/// Lexicographically minimal relabeling of the open-set family.
pub fn canonical_form(x: &FinSpace) -> Result<FinSpace> {
    if x.n() > MAX_DENSE_POINTS {
        return Err(Error::CarrierTooLarge {
            n: x.n(),
            max: MAX_DENSE_POINTS,
        });
    }
    let opens = x.opens()?;
    let classes = PermClasses::new(x);
    let mut best: Option<(Vec<Mask>, Vec<usize>)> = None;
    classes.for_each_perm(x.n(), |perm| {
        let fam = relabel_opens(&opens, perm);
        match &best {
            Some((b, _)) if *b <= fam => {}
            _ => best = Some((fam, perm.to_vec())),
        }
        true
    });
    match best {
        Some((_, perm)) => Ok(relabel(x, &perm)),
        None => Ok(x.clone()), // empty space
    }
}

/// A bijection carrying opens onto opens, or `None`.  The search prunes by
/// carrier size, open count and refinement colors.
pub fn find_homeomorphism(x: &FinSpace, y: &FinSpace) -> Option<Vec<usize>> {
    if x.n() != y.n() {
        return None;
    }
    let n = x.n();
    if n == 0 {
        return Some(Vec::new());
    }
    let cx = color_refine(x);
    let cy = color_refine(y);
    let mut sx = cx.clone();
    let mut sy = cy.clone();
    sx.sort_unstable();
    sy.sort_unstable();
    if sx != sy {
        return None;
    }

    // assign X-points in order of scarcest color first
    let mut order: Vec<usize> = (0..n).collect();
    let count_of = |c: u64| cx.iter().filter(|&&v| v == c).count();
    order.sort_by_key(|&p| (count_of(cx[p]), cx[p], p));

    let mut assign = vec![usize::MAX; n]; // X point -> Y point
    let mut used: Mask = 0;

    fn compatible(
        x: &FinSpace,
        y: &FinSpace,
        assign: &[usize],
        p: usize,
        q: usize,
    ) -> bool {
        for (a, &b) in assign.iter().enumerate() {
            if b == usize::MAX {
                continue;
            }
            if mask_contains(x.min_nbhd(a), p) != mask_contains(y.min_nbhd(b), q) {
                return false;
            }
            if mask_contains(x.min_nbhd(p), a) != mask_contains(y.min_nbhd(q), b) {
                return false;
            }
        }
        true
    }

    fn rec(
        x: &FinSpace,
        y: &FinSpace,
        cx: &[u64],
        cy: &[u64],
        order: &[usize],
        k: usize,
        assign: &mut [usize],
        used: &mut Mask,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let p = order[k];
        for q in 0..y.n() {
            if mask_contains(*used, q) || cy[q] != cx[p] {
                continue;
            }
            if !compatible(x, y, assign, p, q) {
                continue;
            }
            assign[p] = q;
            *used |= bit(q);
            if rec(x, y, cx, cy, order, k + 1, assign, used) {
                return true;
            }
            assign[p] = usize::MAX;
            *used &= !bit(q);
        }
        false
    }

    if rec(x, y, &cx, &cy, &order, 0, &mut assign, &mut used) {
        Some(assign)
    } else {
        None
    }
}

pub fn homeomorphic(x: &FinSpace, y: &FinSpace) -> bool {
    find_homeomorphism(x, y).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::make_space;

    #[test]
    fn canonical_of_relabeled_sierpinski() {
        let s = FinSpace::sierpinski();
        let swapped = relabel(&s, &[1, 0]);
        assert_ne!(s, swapped);
        assert_eq!(canonical_form(&s).unwrap(), canonical_form(&swapped).unwrap());
    }

    #[test]
    fn canonical_fixes_symmetric_spaces() {
        let d3 = FinSpace::discrete(3);
        assert_eq!(canonical_form(&d3).unwrap(), d3);
        let i4 = FinSpace::indiscrete(4);
        assert_eq!(canonical_form(&i4).unwrap(), i4);
    }

    #[test]
    fn homeomorphism_examples() {
        let s = FinSpace::sierpinski();
        let swapped = relabel(&s, &[1, 0]);
        assert_eq!(find_homeomorphism(&s, &swapped), Some(vec![1, 0]));
        assert!(find_homeomorphism(&s, &FinSpace::indiscrete(2)).is_none());

        // two labelings of {∅,{a},{a,b},X}
        let a = make_space(3, &[0b000, 0b001, 0b011, 0b111], false).unwrap();
        let b = make_space(3, &[0b000, 0b100, 0b110, 0b111], false).unwrap();
        let h = find_homeomorphism(&a, &b).unwrap();
        assert_eq!(relabel(&a, &h), b);
    }

    #[test]
    fn relabel_roundtrip() {
        let c = make_space(4, &[0b0000, 0b0001, 0b0011, 0b0111, 0b1111], false).unwrap();
        let perm = [2usize, 0, 3, 1];
        let mut inv = [0usize; 4];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        assert_eq!(relabel(&relabel(&c, &perm), &inv), c);
    }
}
