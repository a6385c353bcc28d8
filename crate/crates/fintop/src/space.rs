//! Finite topological spaces as explicit open-set families.
//!
//! A finite topology on `{0..n-1}` is stored through its minimal open
//! neighborhoods: `min_nbhd(x)` is the intersection of all opens containing
//! `x`, which is itself open because the family is closed under finite
//! intersections.  A set is open iff it contains the minimal neighborhood of
//! each of its points, so the vector of minimal neighborhoods determines the
//! whole family and the full list of opens is materialized only on demand.
//!
//! Specialization is oriented as `x <= y` iff `x` lies in the closure of
//! `{y}`, equivalently `y ∈ min_nbhd(x)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Subset of points encoded as a bitset.
pub type Mask = u32;

/// Hard cap on carrier size (relation-level operations).
pub const MAX_POINTS: usize = 32;

/// Cap for operations that materialize the full open-set family.
pub const MAX_DENSE_POINTS: usize = 16;

pub fn bit(i: usize) -> Mask {
    1 << i
}

pub fn full_mask(n: usize) -> Mask {
    if n == 0 {
        0
    } else if n >= 32 {
        !0
    } else {
        (1u32 << n) - 1
    }
}

pub fn mask_contains(m: Mask, i: usize) -> bool {
    m & bit(i) != 0
}

/// Iterate the indices of set bits, ascending.
pub fn mask_points(m: Mask) -> impl Iterator<Item = usize> {
    (0..32usize).filter(move |i| m & (1 << i) != 0)
}

pub fn mask_from_points<I: IntoIterator<Item = usize>>(pts: I) -> Mask {
    pts.into_iter().fold(0, |m, p| m | bit(p))
}

/// A topology on points `0..n-1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinSpace {
    n: usize,
    min_nbhds: Vec<Mask>,
}

impl std::fmt::Debug for FinSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FinSpace(n={}, min={:?})", self.n, self.min_nbhds)
    }
}

fn valid_min_nbhds(n: usize, v: &[Mask]) -> bool {
    if v.len() != n {
        return false;
    }
    let full = full_mask(n);
    for x in 0..n {
        if v[x] & !full != 0 || !mask_contains(v[x], x) {
            return false;
        }
        // min_nbhd(x) must itself be open: every member's minimal
        // neighborhood stays inside it.
        for y in mask_points(v[x]) {
            if v[y] & !v[x] != 0 {
                return false;
            }
        }
    }
    true
}

impl FinSpace {
    pub(crate) fn from_min_nbhds_unchecked(n: usize, min_nbhds: Vec<Mask>) -> Self {
        debug_assert!(valid_min_nbhds(n, &min_nbhds));
        FinSpace { n, min_nbhds }
    }

    /// Build a space from a minimal-neighborhood vector, validating it.
    pub fn from_min_nbhds(n: usize, min_nbhds: Vec<Mask>) -> Result<Self> {
        if n > MAX_POINTS {
            return Err(Error::CarrierTooLarge { n, max: MAX_POINTS });
        }
        if !valid_min_nbhds(n, &min_nbhds) {
            return Err(Error::NotATopology(
                "minimal neighborhoods are not consistent".into(),
            ));
        }
        Ok(FinSpace { n, min_nbhds })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> Mask {
        full_mask(self.n)
    }

    pub fn min_nbhd(&self, x: usize) -> Mask {
        self.min_nbhds[x]
    }

    pub fn min_nbhds(&self) -> &[Mask] {
        &self.min_nbhds
    }

    /// Closure of the singleton `{x}`.
    pub fn point_closure(&self, x: usize) -> Mask {
        let mut c = 0;
        for z in 0..self.n {
            if mask_contains(self.min_nbhds[z], x) {
                c |= bit(z);
            }
        }
        c
    }

    /// Closure of an arbitrary set.
    pub fn closure(&self, s: Mask) -> Mask {
        let mut c = 0;
        for z in 0..self.n {
            if self.min_nbhds[z] & s != 0 {
                c |= bit(z);
            }
        }
        c
    }

    pub fn is_open(&self, m: Mask) -> bool {
        mask_points(m & self.full()).all(|x| self.min_nbhds[x] & !m == 0) && m & !self.full() == 0
    }

    pub fn is_closed(&self, m: Mask) -> bool {
        self.is_open(self.full() & !m)
    }

    pub fn is_clopen(&self, m: Mask) -> bool {
        self.is_open(m) && self.is_closed(m)
    }

    /// Materialize the open-set family, sorted ascending as masks.
    pub fn opens(&self) -> Result<Vec<Mask>> {
        if self.n > MAX_DENSE_POINTS {
            return Err(Error::CarrierTooLarge {
                n: self.n,
                max: MAX_DENSE_POINTS,
            });
        }
        let full = self.full();
        let mut out = Vec::new();
        for m in 0..=full as u64 {
            let m = m as Mask;
            if self.is_open(m) {
                out.push(m);
            }
            if full == 0 {
                break;
            }
        }
        Ok(out)
    }

    pub fn open_count(&self) -> Result<u64> {
        Ok(self.opens()?.len() as u64)
    }

    pub fn discrete(n: usize) -> Self {
        FinSpace::from_min_nbhds_unchecked(n, (0..n).map(bit).collect())
    }

    pub fn indiscrete(n: usize) -> Self {
        FinSpace::from_min_nbhds_unchecked(n, vec![full_mask(n); n])
    }

    pub fn empty() -> Self {
        FinSpace::from_min_nbhds_unchecked(0, Vec::new())
    }

    /// Sierpiński space: point 1 isolated, point 0 the closed point.
    pub fn sierpinski() -> Self {
        FinSpace::from_min_nbhds_unchecked(2, vec![0b11, 0b10])
    }

    /// Specialization preorder: `x <= y` iff `x ∈ cl{y}`.
    pub fn preorder(&self) -> Preorder {
        Preorder {
            n: self.n,
            up: self.min_nbhds.clone(),
        }
    }

    pub fn structure(&self) -> Structure {
        Structure {
            preorder: self.preorder(),
            min_nbhd: self.min_nbhds.clone(),
            closure: (0..self.n).map(|x| self.point_closure(x)).collect(),
        }
    }

    /// `self` has a finer (or equal) topology than `other` on the same carrier.
    pub fn finer_than(&self, other: &FinSpace) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::CarrierMismatch {
                left: self.n,
                right: other.n,
            });
        }
        // Every `other`-open is open here iff minimal neighborhoods shrink.
        Ok((0..self.n).all(|x| self.min_nbhds[x] & !other.min_nbhds[x] == 0))
    }

    /// Trace topology on `s`, points renumbered in increasing order.
    /// Returns the subspace together with the inclusion map.
    pub fn subspace(&self, s: Mask) -> (FinSpace, crate::map::SpaceMap) {
        let s = s & self.full();
        let pts: Vec<usize> = mask_points(s).collect();
        let mut index = vec![usize::MAX; self.n];
        for (i, &p) in pts.iter().enumerate() {
            index[p] = i;
        }
        let min = pts
            .iter()
            .map(|&p| {
                // The trace of the minimal neighborhood is the minimal trace
                // open: any open U ∋ p contains min_nbhd(p).
                let mut m = 0;
                for r in mask_points(self.min_nbhds[p] & s) {
                    m |= bit(index[r]);
                }
                m
            })
            .collect();
        let sub = FinSpace::from_min_nbhds_unchecked(pts.len(), min);
        let incl = crate::map::SpaceMap::new(sub.clone(), self.clone(), pts).unwrap();
        (sub, incl)
    }

    pub fn check(&self, prop: TopProperty) -> bool {
        check_property(self, prop)
    }

    pub fn is_t0(&self) -> bool {
        self.check(TopProperty::T0)
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.n).all(|x| self.min_nbhds[x] == bit(x))
    }

    /// Connected components as point masks, ordered by smallest member.
    pub fn components(&self) -> Vec<Mask> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out: Vec<Mask> = Vec::new();
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut m = 0;
            let mut stack = vec![start];
            comp[start] = id;
            while let Some(x) = stack.pop() {
                m |= bit(x);
                for y in 0..self.n {
                    if comp[y] == usize::MAX
                        && (mask_contains(self.min_nbhds[x], y)
                            || mask_contains(self.min_nbhds[y], x))
                    {
                        comp[y] = id;
                        stack.push(y);
                    }
                }
            }
            out.push(m);
        }
        out
    }
}

/// Specialization preorder of a finite space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preorder {
    n: usize,
    /// `up[x]` is the mask of all `y` with `x <= y`.
    up: Vec<Mask>,
}

impl Preorder {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        mask_contains(self.up[x], y)
    }

    pub fn up_set(&self, x: usize) -> Mask {
        self.up[x]
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| x == y || !(self.le(x, y) && self.le(y, x))))
    }
}

/// Result of `structure`: the preorder plus the two derived set functions.
pub struct Structure {
    pub preorder: Preorder,
    pub min_nbhd: Vec<Mask>,
    pub closure: Vec<Mask>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TopProperty {
    T0,
    T1,
    Connected,
    LocallyConnected,
    ZeroDimensional,
    TotallyDisconnected,
    Discrete,
    Indiscrete,
}

impl TopProperty {
    pub const ALL: [TopProperty; 8] = [
        TopProperty::T0,
        TopProperty::T1,
        TopProperty::Connected,
        TopProperty::LocallyConnected,
        TopProperty::ZeroDimensional,
        TopProperty::TotallyDisconnected,
        TopProperty::Discrete,
        TopProperty::Indiscrete,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TopProperty::T0 => "t0",
            TopProperty::T1 => "t1",
            TopProperty::Connected => "connected",
            TopProperty::LocallyConnected => "locally_connected",
            TopProperty::ZeroDimensional => "zero_dimensional",
            TopProperty::TotallyDisconnected => "totally_disconnected",
            TopProperty::Discrete => "discrete",
            TopProperty::Indiscrete => "indiscrete",
        }
    }

    pub fn parse(s: &str) -> Option<TopProperty> {
        TopProperty::ALL.iter().copied().find(|p| p.name() == s)
    }
}

pub fn check_property(x: &FinSpace, prop: TopProperty) -> bool {
    let n = x.n();
    match prop {
        TopProperty::T0 => {
            // Pointwise distinct closures, equivalently distinct minimal
            // neighborhoods.
            for a in 0..n {
                for b in (a + 1)..n {
                    if x.min_nbhds[a] == x.min_nbhds[b] {
                        return false;
                    }
                }
            }
            true
        }
        TopProperty::T1 => (0..n).all(|p| x.point_closure(p) == bit(p)),
        TopProperty::Connected => x.components().len() == 1,
        TopProperty::LocallyConnected => {
            // The minimal neighborhood is contained in every open
            // neighborhood, so it is the only candidate that has to be
            // connected.
            (0..n).all(|p| x.subspace(x.min_nbhd(p)).0.check(TopProperty::Connected))
        }
        TopProperty::ZeroDimensional => (0..n).all(|p| x.is_clopen(x.min_nbhd(p))),
        TopProperty::TotallyDisconnected => x.components().iter().all(|c| c.count_ones() == 1),
        TopProperty::Discrete => x.is_discrete(),
        TopProperty::Indiscrete => (0..n).all(|p| x.min_nbhds[p] == x.full()),
    }
}

/// Interchange form: `{"points": n, "opens": [[ints]...]}` with opens listed
/// sorted; reading validates the topology axioms, writing sorts canonically.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpaceJson {
    pub points: usize,
    pub opens: Vec<Vec<usize>>,
}

impl SpaceJson {
    pub fn from_space(x: &FinSpace) -> Result<SpaceJson> {
        let opens = x
            .opens()?
            .into_iter()
            .map(|m| mask_points(m).collect())
            .collect();
        Ok(SpaceJson {
            points: x.n(),
            opens,
        })
    }

    pub fn into_space(self) -> Result<FinSpace> {
        let mut masks = Vec::with_capacity(self.opens.len());
        for open in &self.opens {
            for &p in open {
                if p >= self.points {
                    return Err(Error::PointOutOfRange {
                        point: p,
                        n: self.points,
                    });
                }
            }
            masks.push(mask_from_points(open.iter().copied()));
        }
        make_space(self.points, &masks, false)
    }
}

impl FinSpace {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string(&SpaceJson::from_space(self)?).map_err(|e| Error::Json(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<FinSpace> {
        let dto: SpaceJson =
            serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
        dto.into_space()
    }
}

/// Validate an explicit open-set family and build the space.
///
/// With `autocomplete` the family is treated as a subbase and closed under
/// unions and intersections; otherwise any violation of the topology axioms
/// is rejected.
pub fn make_space(n: usize, opens: &[Mask], autocomplete: bool) -> Result<FinSpace> {
    if n > MAX_POINTS {
        return Err(Error::CarrierTooLarge { n, max: MAX_POINTS });
    }
    let full = full_mask(n);
    for &u in opens {
        if u & !full != 0 {
            return Err(Error::NotATopology(format!(
                "open set {:#b} is not a subset of the carrier",
                u
            )));
        }
    }
    let mut family: Vec<Mask> = opens.to_vec();
    family.sort_unstable();
    family.dedup();
    if !autocomplete {
        let has = |m: Mask| family.binary_search(&m).is_ok();
        if !has(0) {
            return Err(Error::NotATopology("empty set missing".into()));
        }
        if !has(full) {
            return Err(Error::NotATopology("whole set missing".into()));
        }
        for i in 0..family.len() {
            for j in (i + 1)..family.len() {
                if !has(family[i] | family[j]) {
                    return Err(Error::NotATopology(format!(
                        "union of {:#b} and {:#b} missing",
                        family[i], family[j]
                    )));
                }
                if !has(family[i] & family[j]) {
                    return Err(Error::NotATopology(format!(
                        "intersection of {:#b} and {:#b} missing",
                        family[i], family[j]
                    )));
                }
            }
        }
    }
    // Minimal neighborhood of x: intersection of all listed sets containing
    // x.  Under autocompletion the family is a subbase, and these
    // intersections generate the same topology.
    let mut min = vec![full; n];
    for x in 0..n {
        for &u in &family {
            if mask_contains(u, x) {
                min[x] &= u;
            }
        }
    }
    // Normalize to honor transitivity (only needed for subbases where a
    // smaller neighborhood of a member may not be listed).
    let mut changed = true;
    while changed {
        changed = false;
        for x in 0..n {
            let mut m = min[x];
            for y in mask_points(min[x]) {
                m |= min[y];
            }
            if m != min[x] {
                min[x] = m;
                changed = true;
            }
        }
    }
    Ok(FinSpace::from_min_nbhds_unchecked(n, min))
}

/// Topological sum; opens are all unions of one open per part.
/// Returns the sum and the injection of each part.
pub fn sum(parts: &[FinSpace]) -> Result<(FinSpace, Vec<crate::map::SpaceMap>)> {
    let total: usize = parts.iter().map(|p| p.n()).sum();
    if total > MAX_POINTS {
        return Err(Error::CarrierTooLarge {
            n: total,
            max: MAX_POINTS,
        });
    }
    let mut min = Vec::with_capacity(total);
    let mut offset = 0;
    let mut injections = Vec::with_capacity(parts.len());
    for p in parts {
        for x in 0..p.n() {
            min.push(p.min_nbhd(x) << offset);
        }
        injections.push((offset, p));
        offset += p.n();
    }
    let s = FinSpace::from_min_nbhds_unchecked(total, min);
    let maps = injections
        .into_iter()
        .map(|(off, p)| {
            crate::map::SpaceMap::new(p.clone(), s.clone(), (off..off + p.n()).collect()).unwrap()
        })
        .collect();
    Ok((s, maps))
}

/// Binary product on the row-major carrier `x.n * y.n`; opens are generated
/// by open rectangles under union.  Returns the product and both projections.
pub fn product(x: &FinSpace, y: &FinSpace) -> Result<(FinSpace, Vec<crate::map::SpaceMap>)> {
    let n = x
        .n()
        .checked_mul(y.n())
        .ok_or(Error::TooLarge("product carrier".into()))?;
    if n > MAX_POINTS {
        return Err(Error::CarrierTooLarge { n, max: MAX_POINTS });
    }
    let yn = y.n();
    let mut min = vec![0 as Mask; n];
    for a in 0..x.n() {
        for b in 0..yn {
            // Smallest rectangle around (a, b).
            let mut m = 0;
            for a2 in mask_points(x.min_nbhd(a)) {
                for b2 in mask_points(y.min_nbhd(b)) {
                    m |= bit(a2 * yn + b2);
                }
            }
            min[a * yn + b] = m;
        }
    }
    let p = FinSpace::from_min_nbhds_unchecked(n, min);
    let proj_x = crate::map::SpaceMap::new(p.clone(), x.clone(), (0..n).map(|i| i / yn).collect())?;
    let proj_y = crate::map::SpaceMap::new(p.clone(), y.clone(), (0..n).map(|i| i % yn).collect())?;
    Ok((p, vec![proj_x, proj_y]))
}

/// Final topology on `carrier_n` points with respect to a family of maps:
/// a set is open iff its preimage under every listed map is open.
pub fn final_topology(carrier_n: usize, maps: &[(&FinSpace, &[usize])]) -> Result<FinSpace> {
    if carrier_n > MAX_POINTS {
        return Err(Error::CarrierTooLarge {
            n: carrier_n,
            max: MAX_POINTS,
        });
    }
    for (dom, f) in maps {
        if f.len() != dom.n() {
            return Err(Error::PreconditionFailed(
                "map table length differs from its domain".into(),
            ));
        }
        if let Some(&p) = f.iter().find(|&&p| p >= carrier_n) {
            return Err(Error::PointOutOfRange {
                point: p,
                n: carrier_n,
            });
        }
    }
    // Smallest final-open set containing y, by fixed point: whenever the
    // preimage meets a domain point x, it must absorb the whole minimal
    // neighborhood of x, hence the image of that neighborhood joins in.
    let mut min = Vec::with_capacity(carrier_n);
    for y in 0..carrier_n {
        let mut m = bit(y);
        loop {
            let mut grew = false;
            for (dom, f) in maps {
                for x in 0..dom.n() {
                    if mask_contains(m, f[x]) {
                        for x2 in mask_points(dom.min_nbhd(x)) {
                            if !mask_contains(m, f[x2]) {
                                m |= bit(f[x2]);
                                grew = true;
                            }
                        }
                    }
                }
            }
            if !grew {
                break;
            }
        }
        min.push(m);
    }
    Ok(FinSpace::from_min_nbhds_unchecked(carrier_n, min))
}

/// Initial topology on `carrier_n` points: opens are generated under unions
/// and intersections by preimages of codomain opens.  The empty family gives
/// the indiscrete space.
pub fn initial_topology(carrier_n: usize, maps: &[(&[usize], &FinSpace)]) -> Result<FinSpace> {
    if carrier_n > MAX_POINTS {
        return Err(Error::CarrierTooLarge {
            n: carrier_n,
            max: MAX_POINTS,
        });
    }
    for (f, cod) in maps {
        if f.len() != carrier_n {
            return Err(Error::PreconditionFailed(
                "map table length differs from the carrier".into(),
            ));
        }
        if let Some(&p) = f.iter().find(|&&p| p >= cod.n()) {
            return Err(Error::PointOutOfRange { point: p, n: cod.n() });
        }
    }
    let mut min = Vec::with_capacity(carrier_n);
    for x in 0..carrier_n {
        // Intersection of the preimages of the minimal neighborhoods of the
        // images of x; this is the smallest set in the generated topology
        // containing x.
        let mut m = full_mask(carrier_n);
        for (f, cod) in maps {
            let target = cod.min_nbhd(f[x]);
            let mut pre = 0;
            for (z, &fz) in f.iter().enumerate() {
                if mask_contains(target, fz) {
                    pre |= bit(z);
                }
            }
            m &= pre;
        }
        min.push(m);
    }
    Ok(FinSpace::from_min_nbhds_unchecked(carrier_n, min))
}

/// Quotient by a surjective point function onto `0..m-1` (final topology for
/// the single map).  Returns the quotient space and the projection map,
/// which classifies as a quotient.
pub fn quotient_by_map(
    x: &FinSpace,
    f: &[usize],
    m: usize,
) -> Result<(FinSpace, crate::map::SpaceMap)> {
    if f.len() != x.n() {
        return Err(Error::PreconditionFailed(
            "map table length differs from its domain".into(),
        ));
    }
    let mut hit = vec![false; m];
    for &v in f {
        if v >= m {
            return Err(Error::PointOutOfRange { point: v, n: m });
        }
        hit[v] = true;
    }
    if hit.iter().any(|h| !h) {
        return Err(Error::NotSurjective);
    }
    let q = final_topology(m, &[(x, f)])?;
    let map = crate::map::SpaceMap::new(x.clone(), q.clone(), f.to_vec())?;
    Ok((q, map))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opens_of(x: &FinSpace) -> Vec<Mask> {
        x.opens().unwrap()
    }

    #[test]
    fn make_space_examples() {
        // Sierpiński: {∅, {1}, {0,1}}
        let s = make_space(2, &[0b00, 0b10, 0b11], false).unwrap();
        assert_eq!(s, FinSpace::sierpinski());
        // 2-point indiscrete
        let at = make_space(2, &[0b00, 0b11], false).unwrap();
        assert_eq!(at, FinSpace::indiscrete(2));
        // whole set missing
        assert!(matches!(
            make_space(2, &[0b00, 0b01], false),
            Err(Error::NotATopology(_))
        ));
        // not closed under union
        assert!(matches!(
            make_space(3, &[0b000, 0b001, 0b010, 0b111], false),
            Err(Error::NotATopology(_))
        ));
        // same family autocompletes fine
        let c = make_space(3, &[0b000, 0b001, 0b010, 0b111], true).unwrap();
        assert!(c.is_open(0b011));
    }

    #[test]
    fn structure_examples() {
        let s = FinSpace::sierpinski();
        assert_eq!(s.min_nbhd(0), 0b11);
        assert_eq!(s.min_nbhd(1), 0b10);
        assert_eq!(s.point_closure(1), 0b11);
        assert_eq!(s.point_closure(0), 0b01);

        let at = FinSpace::indiscrete(2);
        assert_eq!(at.point_closure(0), 0b11);
        assert_eq!(at.point_closure(1), 0b11);

        let d3 = FinSpace::discrete(3);
        for x in 0..3 {
            assert_eq!(d3.min_nbhd(x), bit(x));
        }
    }

    #[test]
    fn opens_materialization_matches_axioms() {
        let s = FinSpace::sierpinski();
        assert_eq!(opens_of(&s), vec![0b00, 0b10, 0b11]);
        let chain = make_space(3, &[0b000, 0b100, 0b110, 0b111], false).unwrap();
        assert_eq!(opens_of(&chain), vec![0b000, 0b100, 0b110, 0b111]);
        // family closed under unions/intersections with ∅ and whole present
        for x in [FinSpace::discrete(4), FinSpace::indiscrete(3), chain] {
            let fam = opens_of(&x);
            assert!(fam.contains(&0));
            assert!(fam.contains(&x.full()));
            for &a in &fam {
                for &b in &fam {
                    assert!(fam.binary_search(&(a | b)).is_ok());
                    assert!(fam.binary_search(&(a & b)).is_ok());
                }
            }
        }
    }

    #[test]
    fn property_examples() {
        let s = FinSpace::sierpinski();
        assert!(s.check(TopProperty::T0));
        assert!(!s.check(TopProperty::T1));
        assert!(!s.check(TopProperty::ZeroDimensional));
        assert!(s.check(TopProperty::Connected));

        let at = FinSpace::indiscrete(2);
        assert!(!at.check(TopProperty::T0));
        assert!(at.check(TopProperty::Connected));

        let d3 = FinSpace::discrete(3);
        assert!(d3.check(TopProperty::T1));
        assert!(d3.check(TopProperty::ZeroDimensional));
        assert!(d3.check(TopProperty::TotallyDisconnected));
        assert!(!d3.check(TopProperty::Connected));
    }

    #[test]
    fn finer_than_examples() {
        let s = FinSpace::sierpinski();
        let d2 = FinSpace::discrete(2);
        let at = FinSpace::indiscrete(2);
        assert!(d2.finer_than(&s).unwrap());
        assert!(s.finer_than(&at).unwrap());
        assert!(!at.finer_than(&s).unwrap());
        assert!(s.finer_than(&s).unwrap());
        assert!(matches!(
            s.finer_than(&FinSpace::discrete(3)),
            Err(Error::CarrierMismatch { .. })
        ));
    }

    #[test]
    fn finer_than_agrees_with_family_inclusion() {
        // Oracle: compare materialized families directly.
        let spaces = [
            FinSpace::sierpinski(),
            FinSpace::discrete(2),
            FinSpace::indiscrete(2),
        ];
        for a in &spaces {
            for b in &spaces {
                let direct = {
                    let fa = opens_of(a);
                    opens_of(b).iter().all(|u| fa.binary_search(u).is_ok())
                };
                assert_eq!(a.finer_than(b).unwrap(), direct);
            }
        }
    }

    #[test]
    fn subspace_examples() {
        let s = FinSpace::sierpinski();
        let (one, incl) = s.subspace(0b01);
        assert_eq!(one, FinSpace::discrete(1));
        assert_eq!(incl.assignment(), &[0]);

        // C(3): isolated 0,1,2 and min_nbhd(3) = {2,3}.  The trace on {0,3}
        // is discrete ({2,3} traces to {3}); the trace on {2,3} keeps 3
        // non-isolated and is Sierpiński-shaped.
        let c = make_space(
            4,
            &[
                0b0000, 0b0001, 0b0010, 0b0011, 0b0100, 0b0101, 0b0110, 0b0111, 0b1100, 0b1101,
                0b1110, 0b1111,
            ],
            false,
        )
        .unwrap();
        let (tr, _) = c.subspace(0b1001);
        assert_eq!(tr, FinSpace::discrete(2));
        let (tr, _) = c.subspace(0b1100);
        assert_eq!(tr.min_nbhd(0), 0b01);
        assert_eq!(tr.min_nbhd(1), 0b11);

        let (all, _) = s.subspace(0b11);
        assert_eq!(all, s);

        let (e, _) = s.subspace(0);
        assert_eq!(e, FinSpace::empty());
    }

    #[test]
    fn subspace_matches_trace_oracle() {
        // Oracle: opens of the subspace are exactly traces U ∩ S.
        let c3 = crate::prime::gen(crate::prime::Generator::C, 3).unwrap();
        let chain = make_space(3, &[0b000, 0b100, 0b110, 0b111], false).unwrap();
        for x in [&c3, &chain, &FinSpace::indiscrete(3)] {
            for s in 0..=x.full() {
                let (sub, incl) = x.subspace(s);
                let pts: Vec<usize> = mask_points(s).collect();
                let mut traces: Vec<Mask> = x
                    .opens()
                    .unwrap()
                    .iter()
                    .map(|&u| {
                        mask_from_points(
                            pts.iter()
                                .enumerate()
                                .filter(|(_, &p)| mask_contains(u, p))
                                .map(|(i, _)| i),
                        )
                    })
                    .collect();
                traces.sort_unstable();
                traces.dedup();
                assert_eq!(traces, sub.opens().unwrap());
                assert!(incl.classify().embedding);
            }
        }
    }

    #[test]
    fn sum_examples() {
        let s = FinSpace::sierpinski();
        let (ss, injs) = sum(&[s.clone(), s.clone()]).unwrap();
        assert_eq!(ss.n(), 4);
        assert_eq!(ss.open_count().unwrap(), 9);
        assert_eq!(injs.len(), 2);
        let (e, _) = sum(&[]).unwrap();
        assert_eq!(e, FinSpace::empty());
        let (d2, _) = sum(&[FinSpace::discrete(1), FinSpace::discrete(1)]).unwrap();
        assert_eq!(d2, FinSpace::discrete(2));
    }

    #[test]
    fn product_examples() {
        let (d4, _) = product(&FinSpace::discrete(2), &FinSpace::discrete(2)).unwrap();
        assert_eq!(d4, FinSpace::discrete(4));

        let s = FinSpace::sierpinski();
        let (ss, projs) = product(&s, &s).unwrap();
        // specialization order is the product of two 2-chains
        let pre = ss.preorder();
        assert!(pre.le(0, 3) && pre.le(0, 1) && pre.le(0, 2));
        assert!(pre.le(1, 3) && pre.le(2, 3));
        assert!(!pre.le(1, 2) && !pre.le(2, 1));
        assert_eq!(projs.len(), 2);

        let (px, _) = product(&s, &FinSpace::discrete(1)).unwrap();
        assert_eq!(px, s);
    }

    #[test]
    fn product_opens_are_rectangle_generated() {
        // Oracle: generate opens from rectangles by closing under union.
        let s = FinSpace::sierpinski();
        let at = FinSpace::indiscrete(2);
        for (x, y) in [(&s, &s), (&s, &at), (&at, &s)] {
            let (p, _) = product(x, y).unwrap();
            let mut rects = Vec::new();
            for u in opens_of(x) {
                for v in opens_of(y) {
                    let mut r = 0;
                    for a in mask_points(u) {
                        for b in mask_points(v) {
                            r |= bit(a * y.n() + b);
                        }
                    }
                    rects.push(r);
                }
            }
            rects.sort_unstable();
            rects.dedup();
            let mut fam = rects.clone();
            loop {
                let mut grew = false;
                let snapshot = fam.clone();
                for &a in &snapshot {
                    for &b in &snapshot {
                        let u = a | b;
                        if fam.binary_search(&u).is_err() {
                            fam.push(u);
                            fam.sort_unstable();
                            grew = true;
                        }
                    }
                }
                if !grew {
                    break;
                }
            }
            assert_eq!(fam, opens_of(&p));
        }
    }

    #[test]
    fn final_topology_examples() {
        let s = FinSpace::sierpinski();
        let id = [0usize, 1];
        let f = final_topology(2, &[(&s, &id)]).unwrap();
        assert_eq!(f, s);

        // two constant maps from D(1) onto points of a 2-point carrier
        let d1 = FinSpace::discrete(1);
        let c0 = [0usize];
        let c1 = [1usize];
        let f = final_topology(2, &[(&d1, &c0), (&d1, &c1)]).unwrap();
        assert_eq!(f, FinSpace::discrete(2));

        // orientation-swapped quotient of S ⊔ S is the indiscrete space
        let (ss, _) = sum(&[s.clone(), s.clone()]).unwrap();
        let fold = [0usize, 1, 1, 0];
        let f = final_topology(2, &[(&ss, &fold)]).unwrap();
        assert_eq!(f, FinSpace::indiscrete(2));
    }

    #[test]
    fn final_topology_matches_preimage_oracle() {
        // Oracle: test all subsets against the preimage definition.
        let s = FinSpace::sierpinski();
        let chain = make_space(3, &[0b000, 0b100, 0b110, 0b111], false).unwrap();
        let f1 = [1usize, 0, 2];
        let f2 = [0usize, 2];
        let fam: Vec<(&FinSpace, &[usize])> = vec![(&chain, &f1), (&s, &f2)];
        let fin = final_topology(3, &fam).unwrap();
        for v in 0..8u32 {
            let open = fam.iter().all(|(dom, f)| {
                let pre = mask_from_points(
                    (0..dom.n()).filter(|&x| mask_contains(v, f[x])),
                );
                dom.is_open(pre)
            });
            assert_eq!(fin.is_open(v), open, "subset {:#b}", v);
        }
    }

    #[test]
    fn initial_topology_examples() {
        let s = FinSpace::sierpinski();
        let id = [0usize, 1];
        let t = initial_topology(2, &[(&id, &s)]).unwrap();
        assert_eq!(t, s);

        let t = initial_topology(3, &[]).unwrap();
        assert_eq!(t, FinSpace::indiscrete(3));
    }

    #[test]
    fn initial_topology_matches_subbase_oracle() {
        // Oracle: generate from preimages of opens by closing under ∩ then ∪.
        let s = FinSpace::sierpinski();
        let at = FinSpace::indiscrete(2);
        let f1 = [0usize, 1, 0];
        let f2 = [1usize, 1, 0];
        let fam: Vec<(&[usize], &FinSpace)> = vec![(&f1, &s), (&f2, &at)];
        let t = initial_topology(3, &fam).unwrap();
        let mut subbase = vec![0, 0b111];
        for (f, cod) in &fam {
            for u in opens_of(cod) {
                subbase.push(mask_from_points(
                    (0..3).filter(|&x| mask_contains(u, f[x])),
                ));
            }
        }
        let mut inters = subbase.clone();
        loop {
            let mut grew = false;
            let snap = inters.clone();
            for &a in &snap {
                for &b in &subbase {
                    if !inters.contains(&(a & b)) {
                        inters.push(a & b);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut fam_gen = inters.clone();
        loop {
            let mut grew = false;
            let snap = fam_gen.clone();
            for &a in &snap {
                for &b in &snap {
                    if !fam_gen.contains(&(a | b)) {
                        fam_gen.push(a | b);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        fam_gen.sort_unstable();
        fam_gen.dedup();
        assert_eq!(fam_gen, opens_of(&t));
    }

    #[test]
    fn quotient_examples() {
        let at = FinSpace::indiscrete(2);
        let (q, _) = quotient_by_map(&at, &[0, 0], 1).unwrap();
        assert_eq!(q, FinSpace::discrete(1));

        let s = FinSpace::sierpinski();
        let (ss, _) = sum(&[s.clone(), s.clone()]).unwrap();
        let (q, _) = quotient_by_map(&ss, &[0, 1, 1, 0], 2).unwrap();
        assert_eq!(q, FinSpace::indiscrete(2));

        let (q, _) = quotient_by_map(&s, &[0, 1], 2).unwrap();
        assert_eq!(q, s);

        assert!(matches!(
            quotient_by_map(&s, &[0, 0], 2),
            Err(Error::NotSurjective)
        ));
    }

    #[test]
    fn preorder_antisymmetric_iff_t0() {
        let spaces = [
            FinSpace::sierpinski(),
            FinSpace::discrete(3),
            FinSpace::indiscrete(2),
            make_space(3, &[0b000, 0b011, 0b111], false).unwrap(),
        ];
        for x in &spaces {
            assert_eq!(x.preorder().is_antisymmetric(), x.is_t0());
        }
    }

    #[test]
    fn json_round_trip_bit_exact() {
        let c3 = crate::prime::gen(crate::prime::Generator::C, 3).unwrap();
        let text = c3.to_json().unwrap();
        let back = FinSpace::from_json(&text).unwrap();
        assert_eq!(back, c3);
        assert_eq!(back.to_json().unwrap(), text);
        // reading rejects non-topologies
        assert!(FinSpace::from_json(r#"{"points":2,"opens":[[],[0]]}"#).is_err());
        assert!(FinSpace::from_json(r#"{"points":1,"opens":[[],[3],[0]]}"#).is_err());
    }

    #[test]
    fn empty_and_point_edge_cases() {
        let e = FinSpace::empty();
        assert_eq!(e.opens().unwrap(), vec![0]);
        assert!(e.check(TopProperty::T0));
        assert!(!e.check(TopProperty::Connected));
        let p = FinSpace::discrete(1);
        assert!(p.check(TopProperty::Connected));
        assert!(p.check(TopProperty::Indiscrete));
        assert!(p.check(TopProperty::Discrete));
    }
}
