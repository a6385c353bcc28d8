//! The pinch spaces `tri`/`dtri`, the pinched subspace and its quotient onto
//! a prime factor, attachment sums over a prime space, iterated towers with
//! their level base, and the `P` predicate with the initial-monosource
//! reconstruction.
//!
//! Carriers of pinch spaces are row-major: the pair `(x, y)` sits at index
//! `x * y_space.n() + y`.

use crate::error::{Error, Result};
use crate::map::SpaceMap;
use crate::prime::{prime_factor, PrimeView};
use crate::space::{
    bit, final_topology, full_mask, initial_topology, mask_contains, mask_points, product,
    quotient_by_map, sum, FinSpace, Mask, MAX_DENSE_POINTS, MAX_POINTS,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PinchKind {
    Triangle,
    DTriangle,
}

/// A pinch space on the carrier `x_space.n * y_space.n`.
#[derive(Clone, Debug)]
pub struct PinchSpace {
    pub base: FinSpace,
    pub x_space: FinSpace,
    pub y_space: FinSpace,
    pub b: usize,
    pub kind: PinchKind,
}

fn pinch_pair(x: &FinSpace, y: &FinSpace, b: usize) -> Result<(FinSpace, FinSpace)> {
    if b >= y.n() {
        return Err(Error::PointOutOfRange { point: b, n: y.n() });
    }
    if !y.is_closed(bit(b)) {
        return Err(Error::BNotClosed);
    }
    let yn = y.n();
    let n = x.n() * yn;
    if n > MAX_POINTS {
        return Err(Error::CarrierTooLarge { n, max: MAX_POINTS });
    }

    // final topology w.r.t. f(x) = (x, b) and g_a(y) = (a, y)
    let mut maps: Vec<(&FinSpace, Vec<usize>)> = Vec::new();
    maps.push((x, (0..x.n()).map(|p| p * yn + b).collect()));
    for a in 0..x.n() {
        maps.push((y, (0..yn).map(|q| a * yn + q).collect()));
    }
    let refs: Vec<(&FinSpace, &[usize])> = maps.iter().map(|(d, f)| (*d, f.as_slice())).collect();
    let tri = final_topology(n, &refs)?;

    // initial topology w.r.t. h_a(x, y) = (x, b) for x != a, (a, y) otherwise
    let (prod, _) = product(x, y)?;
    let mut imaps: Vec<(Vec<usize>, &FinSpace)> = Vec::new();
    for a in 0..x.n() {
        let table = (0..n)
            .map(|p| {
                let px = p / yn;
                if px == a {
                    p
                } else {
                    px * yn + b
                }
            })
            .collect();
        imaps.push((table, &prod));
    }
    let irefs: Vec<(&[usize], &FinSpace)> = imaps.iter().map(|(f, c)| (f.as_slice(), *c)).collect();
    let dtri = initial_topology(n, &irefs)?;

    assert!(
        tri.finer_than(&dtri).expect("same carrier"),
        "pinch order violated"
    );
    Ok((tri, dtri))
}

/// Final-topology pinch: the quotient of `X ⊔ (⊔_{a∈X} Y)` gluing each copy
/// of `Y` to `X` along `b`.
pub fn triangle(x: &FinSpace, y: &FinSpace, b: usize) -> Result<PinchSpace> {
    let (tri, _) = pinch_pair(x, y, b)?;
    Ok(PinchSpace {
        base: tri,
        x_space: x.clone(),
        y_space: y.clone(),
        b,
        kind: PinchKind::Triangle,
    })
}

/// Initial-topology pinch over the family `h_a` into the product.
pub fn dtriangle(x: &FinSpace, y: &FinSpace, b: usize) -> Result<PinchSpace> {
    let (_, dtri) = pinch_pair(x, y, b)?;
    Ok(PinchSpace {
        base: dtri,
        x_space: x.clone(),
        y_space: y.clone(),
        b,
        kind: PinchKind::DTriangle,
    })
}

/// The pinched subspace of the triangle on `{(a,b)} ∪ (X∖{a})×(Y∖{b})`
/// together with the coordinate projection onto the prime factor `X_a`.
pub struct PinchedSubspace {
    pub sub: FinSpace,
    pub q: SpaceMap,
}

pub fn pinched_subspace(
    x: &FinSpace,
    y: &FinSpace,
    a: usize,
    b: usize,
) -> Result<PinchedSubspace> {
    if a >= x.n() {
        return Err(Error::PointOutOfRange { point: a, n: x.n() });
    }
    let tri = triangle(x, y, b)?;
    let yn = y.n();
    let mut s: Mask = bit(a * yn + b);
    for px in 0..x.n() {
        for py in 0..yn {
            if px != a && py != b {
                s |= bit(px * yn + py);
            }
        }
    }
    let (sub, incl) = tri.base.subspace(s);
    let factor = prime_factor(x, a)?;
    let assignment = (0..sub.n())
        .map(|i| incl.apply(i) / yn)
        .collect();
    let q = SpaceMap::new(sub.clone(), factor, assignment)?;
    Ok(PinchedSubspace { sub, q })
}

/// An attachment sum over a prime space: each isolated point of `A` absorbs
/// the basepoint of its part.
pub struct ASum {
    pub space: FinSpace,
    pub phi: SpaceMap,
    /// Per isolated point of `A` (ascending), the bristle submask of the
    /// resulting carrier.
    pub bristles: Vec<Mask>,
}

/// Gluing map layout: the points of `A` come first, then the non-basepoint
/// points of each part, parts in the order of the isolated points of `A`.
pub fn a_sum(a: &PrimeView, parts: &[(FinSpace, usize)]) -> Result<ASum> {
    let isolated = a.isolated();
    if parts.len() != isolated.len() {
        return Err(Error::ArityMismatch {
            expected: isolated.len(),
            got: parts.len(),
        });
    }
    for (p, base) in parts {
        if *base >= p.n() {
            return Err(Error::PointOutOfRange {
                point: *base,
                n: p.n(),
            });
        }
    }
    let an = a.space.n();
    let mut carrier = an;
    let mut slot_of_part_point: Vec<Vec<usize>> = Vec::with_capacity(parts.len());
    for (k, (p, base)) in parts.iter().enumerate() {
        let mut slots = Vec::with_capacity(p.n());
        for q in 0..p.n() {
            if q == *base {
                slots.push(isolated[k]);
            } else {
                slots.push(carrier);
                carrier += 1;
            }
        }
        slot_of_part_point.push(slots);
    }
    if carrier > MAX_POINTS {
        return Err(Error::CarrierTooLarge {
            n: carrier,
            max: MAX_POINTS,
        });
    }
    let mut summands: Vec<FinSpace> = vec![a.space.clone()];
    summands.extend(parts.iter().map(|(p, _)| p.clone()));
    let (total, _) = sum(&summands)?;
    let mut phi_table: Vec<usize> = (0..an).collect();
    for slots in &slot_of_part_point {
        phi_table.extend(slots.iter().copied());
    }
    let (space, phi) = quotient_by_map(&total, &phi_table, carrier)?;
    let bristles = slot_of_part_point
        .iter()
        .map(|slots| slots.iter().fold(0 as Mask, |m, &s| m | bit(s)))
        .collect();
    Ok(ASum {
        space,
        phi,
        bristles,
    })
}

/// The tower of iterated attachment sums of a prime space onto itself.
/// Points carry addresses: the accumulation point has the empty address and
/// a point of level `k` is a word of `k` isolated points of `A`.
pub struct Tower {
    pub a_space: PrimeView,
    pub levels: Vec<FinSpace>,
    /// Addresses of the top level; `addresses[..levels[k].n()]` are the
    /// addresses of level `k+1` (levels are nested as prefixes).
    pub addresses: Vec<Vec<usize>>,
    /// Parent index (address with the last letter dropped); `None` for the
    /// accumulation point and for level-1 points.
    pub parents: Vec<Option<usize>>,
}

impl Tower {
    pub fn top(&self) -> &FinSpace {
        self.levels.last().expect("tower has at least one level")
    }

    pub fn acc_index(&self) -> usize {
        self.a_space.acc
    }

    /// Level of a top-carrier point (0 for the accumulation point).
    pub fn level_of(&self, p: usize) -> usize {
        self.addresses[p].len()
    }

    /// Checks that each level is the subspace of the next on its prefix.
    pub fn verify_embeddings(&self) -> bool {
        self.levels.windows(2).all(|w| {
            let small = &w[0];
            let (sub, _) = w[1].subspace(full_mask(small.n()));
            sub == *small
        })
    }
}

pub fn iterate_a(a: &PrimeView, n: usize) -> Result<Tower> {
    if n < 1 {
        return Err(Error::PreconditionFailed("tower needs n >= 1".into()));
    }
    let isolated = a.isolated();
    let mut levels = vec![a.space.clone()];
    let mut addresses: Vec<Vec<usize>> = vec![Vec::new(); a.space.n()];
    for &b in &isolated {
        addresses[b] = vec![b];
    }
    let mut parents: Vec<Option<usize>> = vec![None; a.space.n()];
    for _ in 1..n {
        let prev = levels.last().unwrap().clone();
        let next_size = a.space.n() + isolated.len() * (prev.n() - 1);
        if next_size > MAX_DENSE_POINTS {
            return Err(Error::TooLarge(format!(
                "tower level would have {next_size} points (limit {MAX_DENSE_POINTS})"
            )));
        }
        let glued = a_sum(
            a,
            &vec![(prev.clone(), a.acc); isolated.len()],
        )?;
        // relabel the attachment-sum carrier onto the prefix layout:
        // existing points keep their indices, genuinely new points (top
        // level words) go behind in lexicographic address order
        let mut word_of: Vec<Vec<usize>> = Vec::with_capacity(glued.space.n());
        // a-part of the attachment sum
        for p in 0..a.space.n() {
            word_of.push(addresses[p].clone());
        }
        // bristle interiors: each part is a copy of `prev` glued at the
        // accumulation point onto its isolated point
        for &b in &isolated {
            for q in 0..prev.n() {
                if q == a.acc {
                    continue;
                }
                let mut w = vec![b];
                w.extend(addresses[q].iter().copied());
                word_of.push(w);
            }
        }
        debug_assert_eq!(word_of.len(), glued.space.n());
        let mut index_of: std::collections::HashMap<Vec<usize>, usize> = addresses
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let mut new_words: Vec<Vec<usize>> = word_of
            .iter()
            .filter(|w| !index_of.contains_key(*w))
            .cloned()
            .collect();
        new_words.sort();
        new_words.dedup();
        for w in &new_words {
            index_of.insert(w.clone(), index_of.len());
        }
        let perm: Vec<usize> = word_of.iter().map(|w| index_of[w]).collect();
        let next = crate::canon::relabel(&glued.space, &perm);
        for w in new_words {
            let parent = index_of.get(&w[..w.len() - 1].to_vec()).copied();
            addresses.push(w);
            parents.push(if addresses.last().unwrap().len() >= 2 {
                parent
            } else {
                None
            });
        }
        levels.push(next);
    }
    Ok(Tower {
        a_space: a.clone(),
        levels,
        addresses,
        parents,
    })
}

/// Result of the level-base scan on the top level of a tower.
pub struct LevelBaseReport {
    /// Opens containing the accumulation point that are closed under
    /// dropping address suffixes.
    pub base: Vec<Mask>,
    pub all_satisfy_eq1: bool,
    pub all_clopen: bool,
    /// Every open neighborhood of the accumulation point contains a member
    /// of the base (witness built by level-wise truncation).
    pub is_local_base: bool,
}

/// A set satisfies the prefix condition when membership of a point implies
/// membership of every prefix of its address down to level 1.
fn satisfies_prefix_condition(t: &Tower, u: Mask) -> bool {
    mask_points(u).all(|p| match t.parents[p] {
        Some(parent) => mask_contains(u, parent),
        None => true,
    })
}

pub fn check_level_base(t: &Tower) -> Result<LevelBaseReport> {
    let top = t.top();
    let acc = t.acc_index();
    let opens = top.opens()?;
    let base: Vec<Mask> = opens
        .iter()
        .copied()
        .filter(|&u| mask_contains(u, acc) && satisfies_prefix_condition(t, u))
        .collect();
    let all_satisfy_eq1 = base.iter().all(|&u| satisfies_prefix_condition(t, u));
    let all_clopen = base.iter().all(|&u| top.is_clopen(u));
    // the truncation construction: U_1 = V on level <= 1, then extend one
    // level at a time by children of the previous stage
    let mut is_local_base = true;
    let level_mask: Vec<Mask> = (0..t.levels.len())
        .map(|k| full_mask(t.levels[k].n()))
        .collect();
    for &v in opens.iter().filter(|&&v| mask_contains(v, acc)) {
        let mut u = v & level_mask[0];
        for k in 1..t.levels.len() {
            let mut children: Mask = 0;
            for p in 0..top.n() {
                if t.level_of(p) == k + 1 {
                    if let Some(parent) = t.parents[p] {
                        if mask_contains(u, parent) {
                            children |= bit(p);
                        }
                    }
                }
            }
            u |= v & level_mask[k] & (u | children);
            u &= v;
        }
        let ok = mask_contains(u, acc)
            && top.is_open(u)
            && u & !v == 0
            && satisfies_prefix_condition(t, u)
            && base.binary_search(&u).is_ok();
        if !ok {
            is_local_base = false;
        }
    }
    Ok(LevelBaseReport {
        base,
        all_satisfy_eq1,
        all_clopen,
        is_local_base,
    })
}

/// Witness for `P(b, Y, Z)`: a point `a`, an open neighborhood `u0` of `a`
/// and a continuous map with `f(b) = a` pulling `u0` back to the minimal
/// neighborhood of `b`.
#[derive(Clone, Debug)]
pub struct PWitness {
    pub a: usize,
    pub u0: Mask,
    pub f: SpaceMap,
}

/// Decides `P(b, Y, Z)`.  In a finite space every open local base at `b`
/// contains the minimal neighborhood, and the minimal neighborhood alone is
/// a base, so the single check at `V = min_nbhd(b)` suffices.
pub fn p_predicate(y: &FinSpace, b: usize, z: &FinSpace) -> Result<Option<PWitness>> {
    if b >= y.n() {
        return Err(Error::PointOutOfRange { point: b, n: y.n() });
    }
    if !y.is_closed(bit(b)) {
        return Err(Error::BNotClosed);
    }
    let v_min = y.min_nbhd(b);
    let z_opens = z.opens()?;
    for f in crate::classes::continuous_maps(y, z) {
        let a = f[b];
        let map = SpaceMap::new(y.clone(), z.clone(), f)?;
        for &u0 in &z_opens {
            if mask_contains(u0, a) && map.preimage(u0) == v_min {
                return Ok(Some(PWitness { a, u0, f: map }));
            }
        }
    }
    Ok(None)
}

/// Quantifier-complete decision of `P(b, Y, Z)` over all open local bases
/// at `b`; cross-validation oracle for the minimal-neighborhood reduction.
pub fn p_predicate_brute(y: &FinSpace, b: usize, z: &FinSpace) -> Result<bool> {
    if b >= y.n() {
        return Err(Error::PointOutOfRange { point: b, n: y.n() });
    }
    if !y.is_closed(bit(b)) {
        return Err(Error::BNotClosed);
    }
    let nbhds: Vec<Mask> = y
        .opens()?
        .into_iter()
        .filter(|&u| mask_contains(u, b))
        .collect();
    let maps = crate::classes::continuous_maps(y, z);
    let z_opens = z.opens()?;
    // all nonempty subfamilies of open neighborhoods of b
    for fam in 1..(1u64 << nbhds.len()) {
        let members: Vec<Mask> = (0..nbhds.len())
            .filter(|&i| fam >> i & 1 == 1)
            .map(|i| nbhds[i])
            .collect();
        // base at b: every open neighborhood contains a member
        let is_base = nbhds
            .iter()
            .all(|&v| members.iter().any(|&m| m & !v == 0));
        if !is_base {
            continue;
        }
        for a in 0..z.n() {
            for &u0 in z_opens.iter().filter(|&&u| mask_contains(u, a)) {
                let all_covered = members.iter().all(|&v| {
                    maps.iter().any(|f| {
                        f[b] == a && {
                            let mut pre = 0;
                            for (p, &fp) in f.iter().enumerate() {
                                if mask_contains(u0, fp) {
                                    pre |= bit(p);
                                }
                            }
                            pre == v
                        }
                    })
                });
                if all_covered {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Reconstruction of the initial monosource for the triangle: the
/// projection onto `X`, the identity into the double pinch, and the maps
/// assembled from the witness.  Returns whether the initial topology of the
/// source equals the triangle topology (joint injectivity holds because the
/// identity map is in the family).
pub fn verify_lmp_source(
    x: &FinSpace,
    y: &FinSpace,
    b: usize,
    z: &FinSpace,
    witness: &PWitness,
) -> Result<bool> {
    if witness.f.dom() != y || witness.f.cod() != z {
        return Err(Error::WitnessInvalid(
            "witness map must go from Y to Z".into(),
        ));
    }
    if !witness.f.is_continuous()
        || witness.f.apply(b) != witness.a
        || witness.f.preimage(witness.u0) != y.min_nbhd(b)
        || !mask_contains(witness.u0, witness.a)
        || !z.is_open(witness.u0)
    {
        return Err(Error::WitnessInvalid(
            "witness does not satisfy the P-predicate equations".into(),
        ));
    }
    let tri = triangle(x, y, b)?;
    let dtri = dtriangle(x, y, b)?;
    let yn = y.n();
    let n = x.n() * yn;
    // The base of the witness is the single minimal neighborhood, so the
    // index set of choice functions X -> base collapses to one map.
    let p_table: Vec<usize> = (0..n).map(|p| p / yn).collect();
    let q_table: Vec<usize> = (0..n).collect();
    let h_table: Vec<usize> = (0..n).map(|p| witness.f.apply(p % yn)).collect();
    let fam: Vec<(&[usize], &FinSpace)> = vec![
        (p_table.as_slice(), x),
        (q_table.as_slice(), &dtri.base),
        (h_table.as_slice(), z),
    ];
    let ini = initial_topology(n, &fam)?;
    Ok(ini == tri.base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{find_homeomorphism, homeomorphic, relabel};
    use crate::prime::{gen, is_prime, Generator};
    use crate::space::make_space;

    fn sierp_prime() -> PrimeView {
        is_prime(&FinSpace::sierpinski()).unwrap()
    }

    #[test]
    fn triangle_one_point_x() {
        let y = gen(Generator::C, 2).unwrap();
        let t = triangle(&FinSpace::discrete(1), &y, 0).unwrap();
        assert!(homeomorphic(&t.base, &y));
        let d = dtriangle(&FinSpace::discrete(1), &y, 0).unwrap();
        assert!(homeomorphic(&d.base, &y));
    }

    #[test]
    fn triangle_rejects_nonclosed_b() {
        let s = FinSpace::sierpinski();
        // {1} is open, not closed, in the Sierpiński space
        assert!(matches!(
            triangle(&s, &s, 1),
            Err(Error::BNotClosed)
        ));
        // {0} is closed: fine, even though it is in fact not open
        assert!(triangle(&s, &s, 0).is_ok());
        // a clopen b is allowed too
        assert!(triangle(&s, &FinSpace::discrete(2), 0).is_ok());
    }

    #[test]
    fn triangle_matches_final_topology_oracle() {
        // brute-force preimage test over all subsets of the 4-point carrier
        let s = FinSpace::sierpinski();
        let t = triangle(&s, &s, 0).unwrap();
        let yn = 2;
        for v in 0..16u32 {
            let pre_f = (0..2)
                .filter(|&p| mask_contains(v, p * yn + 0))
                .fold(0, |m, p| m | bit(p));
            let mut open = s.is_open(pre_f);
            for a in 0..2 {
                let pre_g = (0..2)
                    .filter(|&q| mask_contains(v, a * yn + q))
                    .fold(0, |m, q| m | bit(q));
                open &= s.is_open(pre_g);
            }
            assert_eq!(t.base.is_open(v), open, "subset {v:#b}");
        }
    }

    #[test]
    fn dtriangle_matches_subbase_description() {
        // opens are generated by h_a-preimages of product opens; verify the
        // declared subbase sets are open and generate the minimal nbhds
        let s = FinSpace::sierpinski();
        let d = dtriangle(&s, &s, 0).unwrap();
        let t = triangle(&s, &s, 0).unwrap();
        assert!(t.base.finer_than(&d.base).unwrap());
        // {a} x V for V open not containing b is open in the double pinch
        // (here V = {1}, a arbitrary)
        for a in 0..2 {
            let m = bit(a * 2 + 1);
            assert!(d.base.is_open(m), "a={a}");
        }
    }

    #[test]
    fn pinch_order_small_sweep() {
        let spaces = [
            FinSpace::sierpinski(),
            FinSpace::discrete(2),
            FinSpace::indiscrete(2),
        ];
        for x in &spaces {
            for y in &spaces {
                for b in 0..y.n() {
                    if !y.is_closed(bit(b)) {
                        continue;
                    }
                    let t = triangle(x, y, b).unwrap();
                    let d = dtriangle(x, y, b).unwrap();
                    assert!(t.base.finer_than(&d.base).unwrap());
                }
            }
        }
    }

    #[test]
    fn pinched_subspace_examples() {
        let s = FinSpace::sierpinski();
        let p = pinched_subspace(&s, &s, 0, 0).unwrap();
        // {0} is closed and not open in S: the projection is a quotient
        assert!(p.q.classify().quotient);

        // b clopen: the projection need not be a quotient; just classify
        let d2 = FinSpace::discrete(2);
        let p = pinched_subspace(&s, &d2, 0, 0).unwrap();
        let _ = p.q.classify();
    }

    #[test]
    fn a_sum_examples() {
        // attaching one copy of S at its closed point to the isolated point
        // of S gives the 3-chain
        let a = sierp_prime();
        let glued = a_sum(&a, &[(FinSpace::sierpinski(), 0)]).unwrap();
        assert_eq!(glued.space.n(), 3);
        let chain = make_space(3, &[0b000, 0b010, 0b011, 0b111], true).unwrap();
        assert!(homeomorphic(&glued.space, &chain));
        assert!(glued.phi.classify().quotient);

        // gluing one-point parts adds nothing
        let c3 = is_prime(&gen(Generator::C, 3).unwrap()).unwrap();
        let parts = vec![(FinSpace::discrete(1), 0); 3];
        let glued = a_sum(&c3, &parts).unwrap();
        assert!(homeomorphic(&glued.space, &c3.space));

        assert!(matches!(
            a_sum(&c3, &[(FinSpace::discrete(1), 0)]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn a_sum_bristles_homeomorphic_to_parts() {
        let a = is_prime(&gen(Generator::C, 2).unwrap()).unwrap();
        let chain = make_space(3, &[0b000, 0b100, 0b110, 0b111], false).unwrap();
        let parts = vec![(FinSpace::sierpinski(), 1), (chain.clone(), 0)];
        let glued = a_sum(&a, &parts).unwrap();
        for (k, (part, _)) in parts.iter().enumerate() {
            let (bristle, _) = glued.space.subspace(glued.bristles[k]);
            assert!(
                find_homeomorphism(&bristle, part).is_some(),
                "bristle {k} not homeomorphic to its part"
            );
        }
    }

    #[test]
    fn tower_sizes_and_embeddings() {
        // |A_n| = 1 + sum (|A|-1)^k
        let s = sierp_prime();
        let t = iterate_a(&s, 5).unwrap();
        let sizes: Vec<usize> = t.levels.iter().map(|l| l.n()).collect();
        assert_eq!(sizes, vec![2, 3, 4, 5, 6]);
        assert!(t.verify_embeddings());
        assert_eq!(t.levels[0], s.space);

        let c3 = is_prime(&gen(Generator::C, 3).unwrap()).unwrap();
        let t = iterate_a(&c3, 2).unwrap();
        assert_eq!(t.top().n(), 1 + 3 + 9);
        assert!(t.verify_embeddings());
        assert!(matches!(iterate_a(&c3, 3), Err(Error::TooLarge(_))));
    }

    #[test]
    fn tower_level_base() {
        let s = sierp_prime();
        let t = iterate_a(&s, 4).unwrap();
        let rep = check_level_base(&t).unwrap();
        assert!(rep.all_satisfy_eq1);
        assert!(rep.is_local_base);
        // the minimal neighborhood of the accumulation point is in the base
        let top = t.top();
        assert!(rep.base.contains(&top.min_nbhd(t.acc_index())));

        let c2 = is_prime(&gen(Generator::C, 2).unwrap()).unwrap();
        let t = iterate_a(&c2, 3).unwrap();
        let rep = check_level_base(&t).unwrap();
        assert!(rep.all_satisfy_eq1);
        assert!(rep.is_local_base);
    }

    #[test]
    fn p_predicate_examples() {
        let d2 = FinSpace::discrete(2);
        for b in 0..2 {
            assert!(p_predicate(&d2, b, &d2).unwrap().is_some());
        }
        let s = FinSpace::sierpinski();
        let w = p_predicate(&s, 0, &s).unwrap().unwrap();
        assert_eq!(w.f.apply(0), w.a);

        // C(2) into the indiscrete space: the only open preimages are the
        // empty set and the whole carrier, never the minimal neighborhood
        let c2 = gen(Generator::C, 2).unwrap();
        assert!(p_predicate(&c2, 2, &FinSpace::indiscrete(2))
            .unwrap()
            .is_none());

        // b must be closed
        assert!(matches!(
            p_predicate(&s, 1, &s),
            Err(Error::BNotClosed)
        ));
    }

    #[test]
    fn p_predicate_matches_brute_quantification() {
        let mut cat = crate::classes::Catalog::new();
        let ids = cat.universe_upto(3, crate::classes::Pred::All).unwrap();
        let spaces = cat.spaces_of(&ids);
        for y in &spaces {
            for b in 0..y.n() {
                if !y.is_closed(bit(b)) {
                    continue;
                }
                for z in &spaces {
                    let quick = p_predicate(y, b, z).unwrap().is_some();
                    let brute = p_predicate_brute(y, b, z).unwrap();
                    assert_eq!(quick, brute, "P({b}, {y:?}, {z:?})");
                }
            }
        }
    }

    #[test]
    fn lmp_source_examples() {
        let s = FinSpace::sierpinski();
        let w = p_predicate(&s, 0, &s).unwrap().unwrap();
        assert!(verify_lmp_source(&s, &s, 0, &s, &w).unwrap());

        // one-point X: the triangle is a copy of Y, initiality immediate
        let d1 = FinSpace::discrete(1);
        let w = p_predicate(&s, 0, &s).unwrap().unwrap();
        assert!(verify_lmp_source(&d1, &s, 0, &s, &w).unwrap());
    }

    #[test]
    fn constructions_commute_with_relabeling() {
        let x = make_space(3, &[0b000, 0b100, 0b110, 0b111], false).unwrap();
        let y = FinSpace::sierpinski();
        let perm = [2usize, 0, 1];
        let xs = relabel(&x, &perm);
        let t1 = triangle(&x, &y, 0).unwrap();
        let t2 = triangle(&xs, &y, 0).unwrap();
        assert!(homeomorphic(&t1.base, &t2.base));
        let d1 = dtriangle(&x, &y, 0).unwrap();
        let d2 = dtriangle(&xs, &y, 0).unwrap();
        assert!(homeomorphic(&d1.base, &d2.base));

        let p1 = pinched_subspace(&x, &y, 0, 0).unwrap();
        let p2 = pinched_subspace(&xs, &y, perm[0], 0).unwrap();
        assert!(homeomorphic(&p1.sub, &p2.sub));

        // a tower over a relabeled prime space is homeomorphic levelwise
        let c2 = gen(Generator::C, 2).unwrap();
        let c2r = relabel(&c2, &[1, 2, 0]);
        let ta = iterate_a(&is_prime(&c2).unwrap(), 3).unwrap();
        let tb = iterate_a(&is_prime(&c2r).unwrap(), 3).unwrap();
        for (la, lb) in ta.levels.iter().zip(tb.levels.iter()) {
            assert!(homeomorphic(la, lb));
        }

        // attachment sums commute with relabeling the parts
        let a = is_prime(&c2).unwrap();
        let part = make_space(3, &[0b000, 0b100, 0b110, 0b111], false).unwrap();
        let partr = relabel(&part, &perm);
        let g1 = a_sum(&a, &[(part.clone(), 0), (part, 2)]).unwrap();
        let g2 = a_sum(&a, &[(partr.clone(), perm[0]), (partr, perm[2])]).unwrap();
        assert!(homeomorphic(&g1.space, &g2.space));
    }
}
