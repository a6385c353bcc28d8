//! Symbolic countable fragment: finite-or-cofinite subsets of the naturals,
//! filter-described prime spaces over the naturals plus one accumulation
//! token, and finite-modification maps.
//!
//! A `FiniteModMap` is the identity up to finitely many exceptions and an
//! eventual constant shift.  A plain finite exception table is not enough:
//! a bijection between two cofinite sets whose complements have different
//! sizes must move a tail, so the order isomorphisms used by the cofinite
//! witness construction are eventually `n ↦ n + shift`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CofMode {
    Finite,
    Cofinite,
}

/// A finite or cofinite subset of the naturals; `support` lists the
/// elements (finite mode) or the complement (cofinite mode).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCofSet {
    pub mode: CofMode,
    pub support: BTreeSet<u32>,
}

impl FinCofSet {
    pub fn finite<I: IntoIterator<Item = u32>>(elems: I) -> Self {
        FinCofSet {
            mode: CofMode::Finite,
            support: elems.into_iter().collect(),
        }
    }

    pub fn cofinite<I: IntoIterator<Item = u32>>(complement: I) -> Self {
        FinCofSet {
            mode: CofMode::Cofinite,
            support: complement.into_iter().collect(),
        }
    }

    pub fn empty() -> Self {
        FinCofSet::finite([])
    }

    pub fn all() -> Self {
        FinCofSet::cofinite([])
    }

    pub fn is_cofinite(&self) -> bool {
        self.mode == CofMode::Cofinite
    }

    pub fn contains(&self, x: u32) -> bool {
        match self.mode {
            CofMode::Finite => self.support.contains(&x),
            CofMode::Cofinite => !self.support.contains(&x),
        }
    }

    pub fn complement(&self) -> FinCofSet {
        FinCofSet {
            mode: match self.mode {
                CofMode::Finite => CofMode::Cofinite,
                CofMode::Cofinite => CofMode::Finite,
            },
            support: self.support.clone(),
        }
    }

    pub fn union(&self, other: &FinCofSet) -> FinCofSet {
        use CofMode::*;
        match (self.mode, other.mode) {
            (Finite, Finite) => {
                FinCofSet::finite(self.support.union(&other.support).copied())
            }
            (Finite, Cofinite) => {
                FinCofSet::cofinite(other.support.difference(&self.support).copied())
            }
            (Cofinite, Finite) => {
                FinCofSet::cofinite(self.support.difference(&other.support).copied())
            }
            (Cofinite, Cofinite) => {
                FinCofSet::cofinite(self.support.intersection(&other.support).copied())
            }
        }
    }

    pub fn intersection(&self, other: &FinCofSet) -> FinCofSet {
        self.complement()
            .union(&other.complement())
            .complement()
    }

    pub fn difference(&self, other: &FinCofSet) -> FinCofSet {
        self.intersection(&other.complement())
    }

    pub fn is_empty(&self) -> bool {
        self.mode == CofMode::Finite && self.support.is_empty()
    }

    pub fn is_subset(&self, other: &FinCofSet) -> bool {
        self.difference(other).is_empty()
    }
}

/// Neighborhood filter of the accumulation token.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeFilter {
    /// All cofinite subsets of the naturals.
    Cofinite,
    /// All supersets of a fixed cofinite set.
    Principal(FinCofSet),
}

/// A prime space on the naturals plus one accumulation token `star`: every
/// natural is isolated and the open neighborhoods of `star` are the filter
/// sets (with `star` adjoined).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicPrimeSpace {
    pub filter: PrimeFilter,
}

impl SymbolicPrimeSpace {
    pub fn c_omega() -> Self {
        SymbolicPrimeSpace {
            filter: PrimeFilter::Cofinite,
        }
    }

    pub fn principal(generator: FinCofSet) -> Result<Self> {
        if !generator.is_cofinite() {
            return Err(Error::BadParameters(
                "principal filter generator must be cofinite".into(),
            ));
        }
        Ok(SymbolicPrimeSpace {
            filter: PrimeFilter::Principal(generator),
        })
    }

    /// Membership of a set in the filter.
    fn filter_contains(&self, v: &FinCofSet) -> bool {
        match &self.filter {
            PrimeFilter::Cofinite => v.is_cofinite(),
            PrimeFilter::Principal(g) => g.is_subset(v),
        }
    }
}

/// Openness of `V` (or `V ∪ {star}` when `contains_star`): star-free sets
/// are always open, neighborhoods of the token must lie in the filter.
pub fn is_open(p: &SymbolicPrimeSpace, v: &FinCofSet, contains_star: bool) -> bool {
    !contains_star || p.filter_contains(v)
}

/// `P` is finer than `Q` iff every `Q`-open is `P`-open, i.e. `Q`'s filter
/// is contained in `P`'s.
pub fn finer_than_sym(p: &SymbolicPrimeSpace, q: &SymbolicPrimeSpace) -> bool {
    use PrimeFilter::*;
    match (&p.filter, &q.filter) {
        (Cofinite, Cofinite) => true,
        // every superset of a cofinite generator is cofinite
        (Cofinite, Principal(_)) => true,
        // some cofinite set omits an element of the generator
        (Principal(_), Cofinite) => false,
        // {V ⊇ h} ⊆ {V ⊇ g} iff g ⊆ h
        (Principal(g), Principal(h)) => g.is_subset(h),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarImage {
    Star,
    Nat(u32),
}

/// A self-map of the naturals (plus token) that is the identity up to a
/// finite exception table and an eventual shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModMap {
    table: BTreeMap<u32, u32>,
    /// Beyond this bound the map is `n ↦ n + shift`.
    threshold: u32,
    shift: i64,
    pub star_image: StarImage,
}

impl FiniteModMap {
    pub fn new(
        table: BTreeMap<u32, u32>,
        threshold: u32,
        shift: i64,
        star_image: StarImage,
    ) -> Result<Self> {
        if threshold as i64 + 1 + shift < 0 {
            return Err(Error::UnsupportedMap(
                "tail shift would leave the naturals".into(),
            ));
        }
        if let Some(&k) = table.keys().next_back() {
            if k > threshold {
                return Err(Error::UnsupportedMap(
                    "exception table must stay below the tail threshold".into(),
                ));
            }
        }
        Ok(FiniteModMap {
            table,
            threshold,
            shift,
            star_image,
        })
    }

    pub fn identity() -> Self {
        FiniteModMap {
            table: BTreeMap::new(),
            threshold: 0,
            shift: 0,
            star_image: StarImage::Star,
        }
    }

    pub fn apply(&self, n: u32) -> u32 {
        if let Some(&v) = self.table.get(&n) {
            return v;
        }
        if n > self.threshold {
            (n as i64 + self.shift) as u32
        } else {
            n
        }
    }

    /// Composition `other ∘ self` (apply `self` first); closed on the type.
    pub fn then(&self, other: &FiniteModMap) -> FiniteModMap {
        let shift = self.shift + other.shift;
        let mut threshold = self.threshold;
        // beyond the joint threshold both maps act affinely
        let inner_bound = other.threshold as i64 - self.shift;
        if inner_bound > threshold as i64 {
            threshold = inner_bound as u32;
        }
        let mut table = BTreeMap::new();
        for n in 0..=threshold {
            let v = other.apply(self.apply(n));
            if v != n {
                table.insert(n, v);
            }
        }
        let star_image = match self.star_image {
            StarImage::Star => other.star_image,
            StarImage::Nat(u) => StarImage::Nat(other.apply(u)),
        };
        FiniteModMap {
            table,
            threshold,
            shift,
            star_image,
        }
    }

    /// Exact preimage of a finite-or-cofinite set (naturals only).
    pub fn preimage(&self, v: &FinCofSet) -> FinCofSet {
        let mut bound = self.threshold as i64;
        for &s in &v.support {
            bound = bound.max(s as i64).max(s as i64 - self.shift);
        }
        let bound = bound.max(0) as u32 + 1;
        match v.mode {
            CofMode::Finite => {
                // beyond the bound, f(n) = n + shift is past every element
                FinCofSet::finite((0..=bound).filter(|&n| v.contains(self.apply(n))))
            }
            CofMode::Cofinite => {
                FinCofSet::cofinite((0..=bound).filter(|&n| !v.contains(self.apply(n))))
            }
        }
    }
}

/// Continuity between filter-described prime spaces.  All naturals are
/// isolated, so only the accumulation token constrains the map; filters are
/// upward closed, so it suffices to test preimages of the generators.
pub fn is_continuous_sym(
    f: &FiniteModMap,
    p: &SymbolicPrimeSpace,
    q: &SymbolicPrimeSpace,
) -> bool {
    match f.star_image {
        StarImage::Nat(_) => {
            // the image point is isolated; its fiber with the token adjoined
            // is finite and never lies in the filter
            false
        }
        StarImage::Star => match &q.filter {
            PrimeFilter::Principal(h) => p.filter_contains(&f.preimage(h)),
            PrimeFilter::Cofinite => match &p.filter {
                // preimages of cofinite sets under finite-modification maps
                // are cofinite
                PrimeFilter::Cofinite => true,
                // a cofinite set omitting a single image point of the
                // generator already fails
                PrimeFilter::Principal(_) => false,
            },
        },
    }
}

/// Checks reported by the cofinite-space witness construction.
#[derive(Clone, Debug)]
pub struct ExcofWitness {
    pub f: FiniteModMap,
    pub continuous: bool,
    pub fixes_b: bool,
    pub preimage_exact: bool,
}

impl ExcofWitness {
    pub fn all_ok(&self) -> bool {
        self.continuous && self.fixes_b && self.preimage_exact
    }
}

/// Witness for the cofinite-topology self-map property: a continuous map of
/// the cofinite space fixing `b`, sending the finite set `F` to `u`, whose
/// restriction to `V = ω∖F` is a bijection onto `ω∖{u}`.
pub fn excof_witness(f_set: &BTreeSet<u32>, u: u32, b: u32) -> Result<ExcofWitness> {
    if f_set.contains(&u) {
        return Err(Error::BadParameters("u must avoid F".into()));
    }
    if f_set.contains(&b) || b == u {
        return Err(Error::BadParameters("b must avoid F and u".into()));
    }
    // order isomorphism h: V -> U0 between the cofinite sets V = ω∖F and
    // U0 = ω∖{u}; eventually h(n) = n + 1 - |F|
    let shift = 1 - f_set.len() as i64;
    let max_rel = f_set.iter().copied().max().unwrap_or(0).max(u).max(b);
    let threshold = max_rel + f_set.len() as u32 + 2;
    let in_v = |n: u32| !f_set.contains(&n);
    let v_index = |n: u32| -> u32 { (0..n).filter(|&m| in_v(m)).count() as u32 };
    let u0_elem = |i: u32| -> u32 { if i < u { i } else { i + 1 } };
    let h = |n: u32| -> u32 { u0_elem(v_index(n)) };
    // patch so that b stays fixed: swap the values at b and at h^{-1}(b)
    let hb = h(b);
    let h_inv_b = (0..=threshold).find(|&n| in_v(n) && h(n) == b);
    let mut table = BTreeMap::new();
    for n in 0..=threshold {
        let mut v = if in_v(n) { h(n) } else { u };
        if hb != b {
            if n == b {
                v = b;
            } else if Some(n) == h_inv_b {
                v = hb;
            }
        }
        if v != n {
            table.insert(n, v);
        }
    }
    let f = FiniteModMap::new(table, threshold, shift, StarImage::Star)?;
    let v_set = FinCofSet::cofinite(f_set.iter().copied());
    let u0 = FinCofSet::cofinite([u]);
    // continuity for the cofinite topology: preimages of cofinite sets must
    // be cofinite; the preimage computation is exact, so test the subbasic
    // complement-singletons within the modified range plus the generator
    let continuous = f.preimage(&u0).is_cofinite()
        && (0..=threshold + 2).all(|w| f.preimage(&FinCofSet::cofinite([w])).is_cofinite());
    let fixes_b = f.apply(b) == b;
    let preimage_exact = f.preimage(&u0) == v_set;
    Ok(ExcofWitness {
        f,
        continuous,
        fixes_b,
        preimage_exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fincof_op_examples() {
        let cof_all = FinCofSet::all();
        let fin12 = FinCofSet::finite([1, 2]);
        assert_eq!(cof_all.intersection(&fin12), fin12);
        assert_eq!(
            FinCofSet::finite([0]).complement(),
            FinCofSet::cofinite([0])
        );
        // De Morgan on supports
        let a = FinCofSet::cofinite([1]);
        let b = FinCofSet::cofinite([2]);
        assert_eq!(a.union(&b), FinCofSet::all());
        assert_eq!(a.intersection(&b), FinCofSet::cofinite([1, 2]));
        assert!(FinCofSet::finite([3]).is_subset(&FinCofSet::cofinite([5])));
        assert!(!FinCofSet::cofinite([]).is_subset(&FinCofSet::finite([1])));
    }

    fn splitmix(state: &mut u64) -> u64 {
        *state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = *state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn random_set(state: &mut u64) -> FinCofSet {
        let bits = splitmix(state);
        let support: BTreeSet<u32> = (0..8).filter(|i| bits >> i & 1 == 1).collect();
        if bits >> 8 & 1 == 1 {
            FinCofSet::cofinite(support)
        } else {
            FinCofSet::finite(support)
        }
    }

    /// Membership oracle for the algebra laws.
    fn agree_on_points(a: &FinCofSet, b: &FinCofSet) -> bool {
        // supports live below 8, so disagreement would show below 10
        (0..10).all(|x| a.contains(x) == b.contains(x)) && a.mode == b.mode
    }

    #[test]
    fn fincof_boolean_laws_fixed_seed() {
        let mut state = 0xfeed_f00d_u64;
        for _ in 0..1000 {
            let a = random_set(&mut state);
            let b = random_set(&mut state);
            let c = random_set(&mut state);
            assert!(agree_on_points(&a.union(&b), &b.union(&a)));
            assert!(agree_on_points(
                &a.union(&b.union(&c)),
                &a.union(&b).union(&c)
            ));
            assert!(agree_on_points(
                &a.intersection(&b.union(&c)),
                &a.intersection(&b).union(&a.intersection(&c))
            ));
            assert!(agree_on_points(
                &a.union(&b).complement(),
                &a.complement().intersection(&b.complement())
            ));
            assert!(agree_on_points(&a.complement().complement(), &a));
            assert!(agree_on_points(&a.union(&a.intersection(&b)), &a));
        }
    }

    #[test]
    fn is_open_examples() {
        let c = SymbolicPrimeSpace::c_omega();
        assert!(is_open(&c, &FinCofSet::finite([5, 7]), false));
        assert!(is_open(&c, &FinCofSet::cofinite([0, 1]), true));
        assert!(!is_open(&c, &FinCofSet::finite([5]), true));
    }

    #[test]
    fn finer_than_examples() {
        let c = SymbolicPrimeSpace::c_omega();
        let p = SymbolicPrimeSpace::principal(FinCofSet::cofinite([0])).unwrap();
        assert!(finer_than_sym(&c, &c));
        assert!(finer_than_sym(&c, &p));
        assert!(!finer_than_sym(&p, &c));
        let q = SymbolicPrimeSpace::principal(FinCofSet::cofinite([0, 1])).unwrap();
        // q's generator is smaller, so q's filter is larger
        assert!(finer_than_sym(&q, &p));
        assert!(!finer_than_sym(&p, &q));
    }

    #[test]
    fn continuity_examples() {
        let c = SymbolicPrimeSpace::c_omega();
        let id = FiniteModMap::identity();
        assert!(is_continuous_sym(&id, &c, &c));

        let w = excof_witness(&BTreeSet::from([3, 4]), 9, 0).unwrap();
        assert!(is_continuous_sym(&w.f, &c, &c));

        // collapsing the token to a natural is never continuous here
        let collapse = FiniteModMap::new(BTreeMap::new(), 0, 0, StarImage::Nat(3)).unwrap();
        assert!(!is_continuous_sym(&collapse, &c, &c));

        // an exception table above the threshold is not representable
        assert!(matches!(
            FiniteModMap::new(BTreeMap::from([(10, 2)]), 5, 0, StarImage::Star),
            Err(Error::UnsupportedMap(_))
        ));
    }

    #[test]
    fn composition_closed_and_continuous() {
        let w1 = excof_witness(&BTreeSet::from([3, 4]), 9, 0).unwrap();
        let w2 = excof_witness(&BTreeSet::from([1]), 2, 0).unwrap();
        let composed = w1.f.then(&w2.f);
        // pointwise agreement with the composite on a long prefix
        for n in 0..200 {
            assert_eq!(composed.apply(n), w2.f.apply(w1.f.apply(n)));
        }
        let c = SymbolicPrimeSpace::c_omega();
        assert!(is_continuous_sym(&composed, &c, &c));
    }

    #[test]
    fn excof_examples() {
        // F empty still needs a genuine bijection onto ω∖{u}
        let w = excof_witness(&BTreeSet::new(), 5, 0).unwrap();
        assert!(w.all_ok(), "{w:?}");

        let w = excof_witness(&BTreeSet::from([3, 4]), 9, 0).unwrap();
        assert!(w.all_ok());
        assert_eq!(w.f.apply(0), 0);
        assert_eq!(w.f.apply(3), 9);
        assert_eq!(w.f.apply(4), 9);

        assert!(matches!(
            excof_witness(&BTreeSet::from([1]), 1, 0),
            Err(Error::BadParameters(_))
        ));
        assert!(matches!(
            excof_witness(&BTreeSet::from([1]), 2, 1),
            Err(Error::BadParameters(_))
        ));
    }

    #[test]
    fn excof_randomized_fixed_seed() {
        let mut state = 0x5eed_cafe_u64;
        for _ in 0..100 {
            let bits = splitmix(&mut state);
            let f_set: BTreeSet<u32> = (0..10).filter(|i| bits >> i & 1 == 1).collect();
            let mut u = (bits >> 16) as u32 % 20;
            while f_set.contains(&u) {
                u += 1;
            }
            let mut b = (bits >> 32) as u32 % 20;
            while f_set.contains(&b) || b == u {
                b += 1;
            }
            let w = excof_witness(&f_set, u, b).unwrap();
            assert!(w.all_ok(), "F={f_set:?} u={u} b={b}: {w:?}");
        }
    }
}
