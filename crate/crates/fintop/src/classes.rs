//! Hull-membership oracles, T₀-reflection, bounded universe enumeration and
//! closure saturation.
//!
//! Quotients of sums are handled at the level of specialization relations: a
//! set is open in the final topology of `q: X -> m` iff it is an up-set of
//! the relation `{(q(x), q(y)) : x <= y}`, and a combination of maps on a
//! sum contributes the union of these relations.  A space `Z` is therefore a
//! quotient of a sum of members iff some union of at most `sum_copy_bound`
//! single-summand relations has transitive closure exactly the
//! specialization relation of `Z` and the images jointly cover `Z`.
//! Relations on at most 7 points are packed into a `u64` together with the
//! image mask.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::map::SpaceMap;
use crate::prime::prime_factor;
use crate::space::{
    bit, full_mask, mask_contains, mask_points, quotient_by_map, FinSpace, Mask, TopProperty,
};

/// Ambient predicate cutting out the universe of interest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pred {
    All,
    T0,
    T1,
}

impl Pred {
    pub fn test(self, x: &FinSpace) -> bool {
        match self {
            Pred::All => true,
            Pred::T0 => x.check(TopProperty::T0),
            Pred::T1 => x.check(TopProperty::T1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Pred::All => "all",
            Pred::T0 => "t0",
            Pred::T1 => "t1",
        }
    }

    pub fn parse(s: &str) -> Option<Pred> {
        match s {
            "all" | "All" => Some(Pred::All),
            "t0" | "T0" => Some(Pred::T0),
            "t1" | "T1" => Some(Pred::T1),
            _ => None,
        }
    }
}

/// T₀-reflection: quotient by `x ~ y` iff `cl{x} = cl{y}`.  The arrow is a
/// quotient, an initial map and a retraction.
pub fn t0_reflection(x: &FinSpace) -> (FinSpace, SpaceMap) {
    if x.n() == 0 {
        return (x.clone(), SpaceMap::identity(x));
    }
    let mut class_of = Vec::with_capacity(x.n());
    let mut reps: Vec<Mask> = Vec::new();
    for p in 0..x.n() {
        // equal closures is the same as equal minimal neighborhoods
        let m = x.min_nbhd(p);
        match reps.iter().position(|&r| r == m) {
            Some(i) => class_of.push(i),
            None => {
                class_of.push(reps.len());
                reps.push(m);
            }
        }
    }
    let (rx, arrow) =
        quotient_by_map(x, &class_of, reps.len()).expect("class map is surjective");
    (rx, arrow)
}

/// Internal identifier of a canonical space in a `Catalog`.
pub type SpaceId = u32;

const MAX_REL_POINTS: usize = 7;

fn pack_rel(m: usize, rel_rows: &[u8], img: u8) -> u64 {
    let mut v: u64 = 0;
    for (u, &row) in rel_rows.iter().enumerate() {
        v |= (row as u64) << (u * m);
    }
    v | ((img as u64) << (m * m))
}

fn unpack_rows(m: usize, v: u64) -> [u8; MAX_REL_POINTS] {
    let mut rows = [0u8; MAX_REL_POINTS];
    let row_mask = if m == 0 { 0 } else { (1u16 << m) - 1 } as u64;
    for (u, r) in rows.iter_mut().enumerate().take(m) {
        *r = ((v >> (u * m)) & row_mask) as u8;
    }
    rows
}

fn rel_of_packed(m: usize, v: u64) -> u64 {
    if m == 0 {
        return 0;
    }
    v & ((1u64 << (m * m)) - 1)
}

fn img_of_packed(m: usize, v: u64) -> u8 {
    (v >> (m * m)) as u8
}

fn transitive_close(m: usize, rows: &mut [u8]) {
    loop {
        let mut grew = false;
        for u in 0..m {
            let mut acc = rows[u];
            let mut todo = rows[u];
            while todo != 0 {
                let v = todo.trailing_zeros() as usize;
                todo &= todo - 1;
                acc |= rows[v];
            }
            if acc != rows[u] {
                rows[u] = acc;
                grew = true;
            }
        }
        if !grew {
            return;
        }
    }
}

fn close_packed(m: usize, rel: u64) -> u64 {
    let mut rows = unpack_rows(m, rel);
    transitive_close(m, &mut rows[..m]);
    pack_rel(m, &rows[..m], 0)
}

/// Packed specialization relation of a space on at most 7 points.
fn packed_relation(x: &FinSpace) -> u64 {
    let m = x.n();
    let mut rows = [0u8; MAX_REL_POINTS];
    for (u, r) in rows.iter_mut().enumerate().take(m) {
        *r = x.min_nbhd(u) as u8;
    }
    pack_rel(m, &rows[..m], 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClosureRules {
    pub subspace: bool,
    pub prime_factor: bool,
    pub bounded_quotient_of_sums: bool,
}

impl ClosureRules {
    pub fn all() -> Self {
        ClosureRules {
            subspace: true,
            prime_factor: true,
            bounded_quotient_of_sums: true,
        }
    }
}

/// A deduplicated family of canonical spaces together with the saturation
/// parameters that produced it.
#[derive(Clone, Debug)]
pub struct FamilyClosure {
    pub seeds: Vec<FinSpace>,
    /// Canonical members in ascending `FinSpace` order (binary-searchable).
    pub members: Vec<FinSpace>,
    pub rules: ClosureRules,
    pub point_bound: usize,
    pub sum_copy_bound: usize,
    pub pred: Pred,
    pub saturated: bool,
}

impl FamilyClosure {
    pub fn contains_canonical(&self, c: &FinSpace) -> bool {
        self.members.binary_search(c).is_ok()
    }

    pub fn contains(&self, x: &FinSpace) -> bool {
        canonical_form(x)
            .map(|c| self.contains_canonical(&c))
            .unwrap_or(false)
    }
}

/// Report of `heredity_report`.
#[derive(Clone, Debug)]
pub struct HeredityReport {
    pub pf_closed: bool,
    pub hereditary: bool,
    pub lemma_forward_ok: bool,
    pub converse_ok_on_small: bool,
    pub counterexamples: Vec<(FinSpace, usize)>,
}

type ClosureKey = (Vec<SpaceId>, ClosureRules, usize, usize, Pred);

/// Shared interner and memo store for exhaustive sweeps.  Results are
/// deterministic; the catalog only caches.
#[derive(Default)]
pub struct Catalog {
    spaces: Vec<FinSpace>,
    index: HashMap<FinSpace, SpaceId>,
    canon_cache: HashMap<FinSpace, SpaceId>,
    posets: Vec<Vec<SpaceId>>,
    universe_cache: HashMap<(usize, Pred), Rc<Vec<SpaceId>>>,
    subspace_cache: HashMap<SpaceId, Rc<Vec<SpaceId>>>,
    prime_factor_cache: HashMap<SpaceId, Rc<Vec<SpaceId>>>,
    pool_cache: HashMap<(SpaceId, u8), Rc<Vec<u64>>>,
    usable_cache: HashMap<(SpaceId, SpaceId), Rc<Vec<u64>>>,
    closure_cache: HashMap<ClosureKey, Rc<FamilyClosure>>,
    member_set_cache: HashMap<ClosureKey, Rc<Vec<FinSpace>>>,
}

/// Accumulated usable entries of one pending candidate during saturation.
/// `tested` is the prefix already exhausted by the combination search, so a
/// new solution must involve at least one later entry.
struct PendingAcc {
    entries: Vec<u64>,
    tested: usize,
    all_rel: u64,
    all_img: u8,
    all_rel_closed: u64,
    grew: bool,
}

impl PendingAcc {
    fn new() -> Self {
        PendingAcc {
            entries: Vec::new(),
            tested: 0,
            all_rel: 0,
            all_img: 0,
            all_rel_closed: 0,
            grew: false,
        }
    }

    /// Pareto insertion preserving the arrival order (so the tested prefix
    /// stays meaningful); dominated entries are dropped, and dropping an
    /// already-tested entry shrinks the boundary.
    fn merge(&mut self, m: usize, e: u64) {
        let (re, ie) = (rel_of_packed(m, e), img_of_packed(m, e));
        let mut i = 0;
        while i < self.entries.len() {
            let k = self.entries[i];
            let (rk, ik) = (rel_of_packed(m, k), img_of_packed(m, k));
            if re & !rk == 0 && ie & !ik == 0 {
                return; // dominated by an existing entry
            }
            if rk & !re == 0 && ik & !ie == 0 {
                self.entries.remove(i);
                if i < self.tested {
                    self.tested -= 1;
                }
                continue;
            }
            i += 1;
        }
        self.entries.push(e);
        self.all_rel |= re;
        self.all_img |= ie;
        self.grew = true;
    }
}

impl Catalog {
    pub fn new() -> Self {
        Catalog::default()
    }

    pub fn space(&self, id: SpaceId) -> &FinSpace {
        &self.spaces[id as usize]
    }

    fn intern_canonical(&mut self, c: FinSpace) -> SpaceId {
        if let Some(&id) = self.index.get(&c) {
            return id;
        }
        let id = self.spaces.len() as SpaceId;
        self.spaces.push(c.clone());
        self.index.insert(c, id);
        id
    }

    /// Canonicalize and intern.
    pub fn canon_id(&mut self, x: &FinSpace) -> SpaceId {
        if let Some(&id) = self.canon_cache.get(x) {
            return id;
        }
        let c = canonical_form(x).expect("canonicalization within dense bound");
        let id = self.intern_canonical(c);
        self.canon_cache.insert(x.clone(), id);
        id
    }

    /// Canonical poset classes (T₀ spaces) on exactly `k` points, built by
    /// extending every smaller poset with a new maximal element over each of
    /// its closed subsets.
    fn posets_exact(&mut self, k: usize) -> Vec<SpaceId> {
        while self.posets.len() <= k {
            let next = self.posets.len();
            if next == 0 {
                let id = self.canon_id(&FinSpace::empty());
                self.posets.push(vec![id]);
                continue;
            }
            let prev = self.posets[next - 1].clone();
            let mut out: BTreeSet<SpaceId> = BTreeSet::new();
            for pid in prev {
                let p = self.space(pid).clone();
                let n = p.n();
                let top = full_mask(n) as u64;
                for d in 0..=top {
                    let d = d as Mask;
                    if p.is_closed(d) {
                        let mut min: Vec<Mask> = p.min_nbhds().to_vec();
                        for e in mask_points(d) {
                            min[e] |= bit(n);
                        }
                        min.push(bit(n));
                        let q = FinSpace::from_min_nbhds_unchecked(n + 1, min);
                        out.insert(self.canon_id(&q));
                    }
                }
            }
            self.posets.push(out.into_iter().collect());
        }
        self.posets[k].clone()
    }

    /// All homeomorphism classes with exactly `n` points satisfying the
    /// predicate, canonical, in listing order.
    pub fn universe(&mut self, n: usize, pred: Pred) -> Result<Rc<Vec<SpaceId>>> {
        if n > 7 {
            return Err(Error::TooLarge(format!("universe({n}) beyond bound 7")));
        }
        if let Some(v) = self.universe_cache.get(&(n, pred)) {
            return Ok(v.clone());
        }
        let ids: Vec<SpaceId> = match pred {
            Pred::T1 => {
                if n == 0 {
                    vec![]
                } else {
                    vec![self.canon_id(&FinSpace::discrete(n))]
                }
            }
            Pred::T0 => {
                if n == 0 {
                    vec![]
                } else {
                    self.posets_exact(n)
                }
            }
            Pred::All => {
                let mut out: BTreeSet<SpaceId> = BTreeSet::new();
                for k in 1..=n {
                    for qid in self.posets_exact(k) {
                        let q = self.space(qid).clone();
                        for comp in compositions(n, k) {
                            let blown = blow_up(&q, &comp);
                            out.insert(self.canon_id(&blown));
                        }
                    }
                }
                out.into_iter().collect()
            }
        };
        let mut ids = ids;
        self.sort_listing(&mut ids);
        let rc = Rc::new(ids);
        self.universe_cache.insert((n, pred), rc.clone());
        Ok(rc)
    }

    /// Classes with `1..=n` points.
    pub fn universe_upto(&mut self, n: usize, pred: Pred) -> Result<Vec<SpaceId>> {
        let mut out = Vec::new();
        for k in 1..=n {
            out.extend(self.universe(k, pred)?.iter().copied());
        }
        Ok(out)
    }

    pub fn spaces_of(&self, ids: &[SpaceId]) -> Vec<FinSpace> {
        ids.iter().map(|&i| self.space(i).clone()).collect()
    }

    /// Deterministic listing order: by point count, then the sorted
    /// open-set family, lexicographically.
    fn sort_listing(&mut self, ids: &mut [SpaceId]) {
        let spaces = &self.spaces;
        ids.sort_by_cached_key(|&id| {
            let s = &spaces[id as usize];
            (s.n(), s.opens().expect("listing spaces are small"))
        });
    }

    /// Canonical nonempty subspaces of a member.
    pub fn subspaces_of(&mut self, id: SpaceId) -> Rc<Vec<SpaceId>> {
        if let Some(v) = self.subspace_cache.get(&id) {
            return v.clone();
        }
        let x = self.space(id).clone();
        let mut out = BTreeSet::new();
        for s in 1..=full_mask(x.n()) as u64 {
            let (sub, _) = x.subspace(s as Mask);
            out.insert(self.canon_id(&sub));
        }
        let rc = Rc::new(out.into_iter().collect::<Vec<_>>());
        self.subspace_cache.insert(id, rc.clone());
        rc
    }

    pub fn prime_factors_of(&mut self, id: SpaceId) -> Rc<Vec<SpaceId>> {
        if let Some(v) = self.prime_factor_cache.get(&id) {
            return v.clone();
        }
        let x = self.space(id).clone();
        let mut out = BTreeSet::new();
        for a in 0..x.n() {
            let f = prime_factor(&x, a).expect("point in range");
            out.insert(self.canon_id(&f));
        }
        let rc = Rc::new(out.into_iter().collect::<Vec<_>>());
        self.prime_factor_cache.insert(id, rc.clone());
        rc
    }

    /// All packed `(closed relation, image)` pairs of single maps from the
    /// member into an `m`-point carrier.
    fn pool(&mut self, id: SpaceId, m: usize) -> Rc<Vec<u64>> {
        if let Some(v) = self.pool_cache.get(&(id, m as u8)) {
            return v.clone();
        }
        let x = self.space(id).clone();
        let n = x.n();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for p in 0..n {
            for q in mask_points(x.min_nbhd(p)) {
                if q != p {
                    edges.push((p, q));
                }
            }
        }
        let mut set: BTreeSet<u64> = BTreeSet::new();
        let mut q = vec![0usize; n];
        loop {
            let mut rows = [0u8; MAX_REL_POINTS];
            let mut img: u8 = 0;
            for (u, r) in rows.iter_mut().enumerate().take(m) {
                *r = 1 << u;
            }
            for &p in q.iter() {
                img |= 1 << p;
            }
            for &(a, b) in &edges {
                rows[q[a]] |= 1 << q[b];
            }
            transitive_close(m, &mut rows[..m]);
            set.insert(pack_rel(m, &rows[..m], img));
            let mut k = 0;
            loop {
                if k == n {
                    let rc = Rc::new(set.into_iter().collect::<Vec<_>>());
                    self.pool_cache.insert((id, m as u8), rc.clone());
                    return rc;
                }
                q[k] += 1;
                if q[k] < m {
                    break;
                }
                q[k] = 0;
                k += 1;
            }
        }
    }

    /// Pareto-maximal pool entries of a member usable toward a candidate:
    /// only relations contained in the candidate's relation can participate
    /// in an exact cover, and replacing an entry by a dominating one
    /// preserves any solution, so only maxima are kept.
    fn usable(&mut self, member: SpaceId, candidate: SpaceId) -> Rc<Vec<u64>> {
        if let Some(v) = self.usable_cache.get(&(member, candidate)) {
            return v.clone();
        }
        let z = self.space(candidate).clone();
        let m = z.n();
        let p_rel = packed_relation(&z);
        let pool = self.pool(member, m);
        let usable: Vec<u64> = pool
            .iter()
            .copied()
            .filter(|&e| rel_of_packed(m, e) & !p_rel == 0)
            .collect();
        let mut kept: Vec<u64> = Vec::new();
        for e in usable {
            merge_pareto_one(m, &mut kept, e);
        }
        let rc = Rc::new(kept);
        self.usable_cache.insert((member, candidate), rc.clone());
        rc
    }

    /// Decide whether a target relation is an exact cover by at most
    /// `copies` entries with jointly full image, requiring at least one
    /// entry from the untested suffix (combinations over the tested prefix
    /// were exhausted earlier; a repeated summand adds nothing at the
    /// relation level, so combinations without repetition suffice).
    fn reachable(m: usize, target_rel: u64, acc: &PendingAcc, copies: usize) -> bool {
        let full_img = full_mask(m) as u8;
        if acc.all_img != full_img || acc.all_rel_closed != target_rel {
            return false;
        }
        let entries = &acc.entries;
        let hit = |rel: u64, img: u8| -> bool {
            img == full_img && close_packed(m, rel) == target_rel
        };
        for i in acc.tested..entries.len() {
            let e1 = entries[i];
            let (r1, i1) = (rel_of_packed(m, e1), img_of_packed(m, e1));
            if hit(r1, i1) {
                return true;
            }
            if copies < 2 {
                continue;
            }
            for j in 0..i {
                let e2 = entries[j];
                let r2 = r1 | rel_of_packed(m, e2);
                let i2 = i1 | img_of_packed(m, e2);
                if hit(r2, i2) {
                    return true;
                }
                if copies < 3 {
                    continue;
                }
                for &e3 in entries.iter().take(j) {
                    let r3 = r2 | rel_of_packed(m, e3);
                    let i3 = i2 | img_of_packed(m, e3);
                    if i3 == full_img && hit(r3, i3) {
                        return true;
                    }
                }
            }
        }
        // deeper combinations, relevant only for copies > 3
        if copies > 3 {
            fn dfs(
                m: usize,
                target_rel: u64,
                full_img: u8,
                entries: &[u64],
                start: usize,
                rel: u64,
                img: u8,
                left: usize,
            ) -> bool {
                if img == full_img && close_packed(m, rel) == target_rel {
                    return true;
                }
                if left == 0 {
                    return false;
                }
                for i in start..entries.len() {
                    let e = entries[i];
                    let nrel = rel | rel_of_packed(m, e);
                    let nimg = img | img_of_packed(m, e);
                    if nrel == rel && nimg == img {
                        continue;
                    }
                    if dfs(m, target_rel, full_img, entries, i + 1, nrel, nimg, left - 1) {
                        return true;
                    }
                }
                false
            }
            return dfs(m, target_rel, full_img, entries, 0, 0, 0, copies);
        }
        false
    }

    /// Fixed-point saturation of a seed family under the enabled rules
    /// within the given bounds, filtered by the ambient predicate.
    pub fn saturate(
        &mut self,
        seeds: &[FinSpace],
        rules: ClosureRules,
        point_bound: usize,
        sum_copy_bound: usize,
        pred: Pred,
    ) -> Result<Rc<FamilyClosure>> {
        for s in seeds {
            if !pred.test(s) {
                return Err(Error::MemberOutsideA);
            }
            if s.n() > point_bound {
                return Err(Error::BoundTooSmall {
                    bound: point_bound,
                    seed: s.n(),
                });
            }
        }
        if rules.bounded_quotient_of_sums && point_bound > MAX_REL_POINTS {
            return Err(Error::TooLarge(format!(
                "quotient rule needs point_bound <= {MAX_REL_POINTS}"
            )));
        }
        let mut seed_ids: Vec<SpaceId> = seeds.iter().map(|s| self.canon_id(s)).collect();
        seed_ids.sort_unstable();
        seed_ids.dedup();
        let key: ClosureKey = (seed_ids.clone(), rules, point_bound, sum_copy_bound, pred);
        if let Some(c) = self.closure_cache.get(&key) {
            return Ok(c.clone());
        }
        // The closure of several seeds equals the closure of the union of
        // their singleton closures, which collapses many seed sets onto the
        // same saturation run.
        let work_ids: Vec<SpaceId> = if seed_ids.len() > 1 {
            let mut union: BTreeSet<SpaceId> = BTreeSet::new();
            for &s in &seed_ids {
                let single = self.saturate(
                    &[self.space(s).clone()],
                    rules,
                    point_bound,
                    sum_copy_bound,
                    pred,
                )?;
                for m in single.members.iter() {
                    union.insert(self.canon_id(m));
                }
            }
            union.into_iter().collect()
        } else {
            seed_ids.clone()
        };
        let work_key: ClosureKey = (work_ids.clone(), rules, point_bound, sum_copy_bound, pred);
        let member_spaces = match self.member_set_cache.get(&work_key) {
            Some(m) => m.clone(),
            None => {
                let members =
                    self.saturate_ids(&work_ids, rules, point_bound, sum_copy_bound, pred)?;
                let mut member_spaces: Vec<FinSpace> =
                    members.iter().map(|&i| self.space(i).clone()).collect();
                member_spaces.sort();
                let rc = Rc::new(member_spaces);
                self.member_set_cache.insert(work_key, rc.clone());
                rc
            }
        };
        let closure = Rc::new(FamilyClosure {
            seeds: seed_ids.iter().map(|&i| self.space(i).clone()).collect(),
            members: member_spaces.as_ref().clone(),
            rules,
            point_bound,
            sum_copy_bound,
            pred,
            saturated: true,
        });
        self.closure_cache.insert(key, closure.clone());
        Ok(closure)
    }

    fn saturate_ids(
        &mut self,
        seed_ids: &[SpaceId],
        rules: ClosureRules,
        point_bound: usize,
        sum_copy_bound: usize,
        pred: Pred,
    ) -> Result<BTreeSet<SpaceId>> {
        let mut members: BTreeSet<SpaceId> = seed_ids.iter().copied().collect();
        // candidates for the quotient rule, with accumulated usable entries
        let mut pending: BTreeMap<SpaceId, PendingAcc> = BTreeMap::new();
        if rules.bounded_quotient_of_sums {
            for id in self.universe_upto(point_bound, pred)? {
                if !members.contains(&id) {
                    pending.insert(id, PendingAcc::new());
                }
            }
        }
        let mut fresh: Vec<SpaceId> = members.iter().copied().collect();
        while !fresh.is_empty() {
            let mut added: BTreeSet<SpaceId> = BTreeSet::new();
            if rules.subspace {
                for &x in &fresh {
                    for id in self.subspaces_of(x).iter() {
                        let s = self.space(*id);
                        if s.n() <= point_bound && pred.test(s) && !members.contains(id) {
                            added.insert(*id);
                        }
                    }
                }
            }
            if rules.prime_factor {
                for &x in &fresh {
                    for id in self.prime_factors_of(x).iter() {
                        let s = self.space(*id);
                        if s.n() <= point_bound && pred.test(s) && !members.contains(id) {
                            added.insert(*id);
                        }
                    }
                }
            }
            if rules.bounded_quotient_of_sums {
                let candidates: Vec<SpaceId> = pending.keys().copied().collect();
                for z in candidates {
                    let m = self.space(z).n();
                    for &x in &fresh {
                        let us = self.usable(x, z);
                        if us.is_empty() {
                            continue;
                        }
                        let acc = pending.get_mut(&z).expect("pending candidate");
                        for &e in us.iter() {
                            acc.merge(m, e);
                        }
                    }
                    let acc = pending.get_mut(&z).expect("pending candidate");
                    if acc.grew && !added.contains(&z) {
                        acc.all_rel_closed = close_packed(m, acc.all_rel);
                        let target = packed_relation(self.space(z));
                        if Catalog::reachable(m, target, acc, sum_copy_bound) {
                            added.insert(z);
                        }
                        acc.tested = acc.entries.len();
                        acc.grew = false;
                    }
                }
            }
            for &id in &added {
                members.insert(id);
                pending.remove(&id);
            }
            fresh = added.into_iter().collect();
        }
        Ok(members)
    }

    /// Membership test against a closure (by canonical form).
    pub fn closure_contains(&mut self, closure: &FamilyClosure, x: &FinSpace) -> bool {
        let id = self.canon_id(x);
        closure.contains_canonical(&self.spaces[id as usize])
    }

    /// Heredity and prime-factor-closure report for a saturated closure.
    pub fn heredity_report(&mut self, closure: &FamilyClosure) -> Result<HeredityReport> {
        if !closure.saturated {
            return Err(Error::NotSaturated);
        }
        let member_ids: BTreeSet<SpaceId> =
            closure.members.iter().map(|m| self.canon_id(m)).collect();
        let mut pf_closed = true;
        let mut hereditary = true;
        for &id in &member_ids {
            for f in self.prime_factors_of(id).iter() {
                if !member_ids.contains(f) {
                    pf_closed = false;
                }
            }
            for s in self.subspaces_of(id).iter() {
                if !member_ids.contains(s) {
                    hereditary = false;
                }
            }
        }
        let lemma_forward_ok = !pf_closed || hereditary;
        // Converse direction, restricted to members whose pinch space over
        // the two-point witness still fits inside the point bound.
        let mut counterexamples = Vec::new();
        if hereditary {
            for &id in &member_ids {
                let x = self.space(id).clone();
                if 2 * x.n() > closure.point_bound {
                    continue;
                }
                for a in 0..x.n() {
                    let f = prime_factor(&x, a)?;
                    let fid = self.canon_id(&f);
                    if !member_ids.contains(&fid) {
                        counterexamples.push((x.clone(), a));
                    }
                }
            }
        }
        Ok(HeredityReport {
            pf_closed,
            hereditary,
            lemma_forward_ok,
            converse_ok_on_small: counterexamples.is_empty(),
            counterexamples,
        })
    }
}

/// Insert an entry into a Pareto-maximal set ordered by subset inclusion on
/// `(relation, image)`; returns whether the set changed.
fn merge_pareto_one(m: usize, acc: &mut Vec<u64>, e: u64) -> bool {
    let (re, ie) = (rel_of_packed(m, e), img_of_packed(m, e));
    let mut i = 0;
    while i < acc.len() {
        let k = acc[i];
        let (rk, ik) = (rel_of_packed(m, k), img_of_packed(m, k));
        if re & !rk == 0 && ie & !ik == 0 {
            return false; // dominated by an existing entry
        }
        if rk & !re == 0 && ik & !ie == 0 {
            acc.swap_remove(i);
            continue;
        }
        i += 1;
    }
    acc.push(e);
    true
}

fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    // ordered k-tuples of positive integers summing to n
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            cur.push(n);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 1..=(n - k + 1) {
            cur.push(first);
            rec(n - first, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k >= 1 && n >= k {
        rec(n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Replace each point of a T₀ space by an indiscrete cluster of the given
/// size; the T₀-reflection of the result is the original poset.
fn blow_up(q: &FinSpace, sizes: &[usize]) -> FinSpace {
    let k = q.n();
    debug_assert_eq!(k, sizes.len());
    let mut offset = vec![0usize; k];
    let mut n = 0;
    for v in 0..k {
        offset[v] = n;
        n += sizes[v];
    }
    let cluster_mask = |v: usize| -> Mask {
        let mut m = 0;
        for i in 0..sizes[v] {
            m |= bit(offset[v] + i);
        }
        m
    };
    let mut min = vec![0 as Mask; n];
    for v in 0..k {
        let mut up = 0;
        for w in mask_points(q.min_nbhd(v)) {
            up |= cluster_mask(w);
        }
        for i in 0..sizes[v] {
            min[offset[v] + i] = up;
        }
    }
    FinSpace::from_min_nbhds_unchecked(n, min)
}

/// Independent brute-force enumerator: all reflexive relations on `n`
/// points, filtered for transitivity, deduplicated up to homeomorphism.
/// `descending` flips the generation order for stability checks.
pub fn brute_universe(n: usize, pred: Pred, descending: bool) -> Result<Vec<FinSpace>> {
    if n > 5 {
        return Err(Error::TooLarge(format!("brute enumeration on {n} points")));
    }
    if n == 0 {
        return Ok(vec![]);
    }
    let off_diag = n * (n - 1);
    let total: u64 = 1u64 << off_diag;
    let mut classes: BTreeSet<FinSpace> = BTreeSet::new();
    for i in 0..total {
        let code = if descending { total - 1 - i } else { i };
        let mut rows = vec![0 as Mask; n];
        let mut b = 0;
        for x in 0..n {
            rows[x] |= bit(x);
            for y in 0..n {
                if x == y {
                    continue;
                }
                if code >> b & 1 == 1 {
                    rows[x] |= bit(y);
                }
                b += 1;
            }
        }
        let transitive =
            (0..n).all(|x| mask_points(rows[x]).all(|y| rows[y] & !rows[x] == 0));
        if !transitive {
            continue;
        }
        let space = FinSpace::from_min_nbhds_unchecked(n, rows);
        if pred.test(&space) {
            classes.insert(canonical_form(&space)?);
        }
    }
    let mut out: Vec<FinSpace> = classes.into_iter().collect();
    out.sort_by_cached_key(|s| (s.n(), s.opens().expect("small")));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HullKind {
    Coreflective,
    Epireflective,
    Bireflective,
}

impl HullKind {
    pub fn parse(s: &str) -> Option<HullKind> {
        match s {
            "coreflective" => Some(HullKind::Coreflective),
            "epireflective" => Some(HullKind::Epireflective),
            "bireflective" => Some(HullKind::Bireflective),
            _ => None,
        }
    }
}

/// Certificate accompanying a hull-membership answer: the canonical sink or
/// source of all continuous maps, or the reason for a vacuous refusal.
pub enum HullCertificate {
    Sink(Vec<SpaceMap>),
    Source(Vec<SpaceMap>),
    EmptyFamily,
}

/// All continuous maps `dom -> cod` as assignment tables; continuity for
/// finite spaces is monotonicity, which the backtracking enforces pairwise.
pub fn continuous_maps(dom: &FinSpace, cod: &FinSpace) -> Vec<Vec<usize>> {
    let n = dom.n();
    let mut out = Vec::new();
    if cod.n() == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut assign = vec![usize::MAX; n];
    fn rec(
        dom: &FinSpace,
        cod: &FinSpace,
        p: usize,
        assign: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p == dom.n() {
            out.push(assign.clone());
            return;
        }
        'next: for q in 0..cod.n() {
            for r in 0..p {
                if mask_contains(dom.min_nbhd(r), p)
                    && !mask_contains(cod.min_nbhd(assign[r]), q)
                {
                    continue 'next;
                }
                if mask_contains(dom.min_nbhd(p), r)
                    && !mask_contains(cod.min_nbhd(q), assign[r])
                {
                    continue 'next;
                }
            }
            assign[p] = q;
            rec(dom, cod, p + 1, assign, out);
            assign[p] = usize::MAX;
        }
    }
    rec(dom, cod, 0, &mut assign, &mut out);
    out
}

/// Hull-membership oracles.
///
/// Coreflective: the final topology with respect to all continuous maps from
/// members of `family` into the carrier of `x` equals the topology of `x`.
/// This is exact: a witnessing quotient of a sum is a subfamily of the full
/// sink, and enlarging a sink only coarsens the final topology while every
/// continuous map keeps it finer than or equal to `x`.
///
/// Epireflective: the source of all continuous maps from `x` into the family
/// is jointly injective and initial.  Bireflective: initiality only.
pub fn in_hull(kind: HullKind, x: &FinSpace, family: &[FinSpace]) -> (bool, HullCertificate) {
    if family.is_empty() {
        return (false, HullCertificate::EmptyFamily);
    }
    match kind {
        HullKind::Coreflective => {
            let mut maps: Vec<(FinSpace, Vec<usize>)> = Vec::new();
            for d in family {
                for f in continuous_maps(d, x) {
                    maps.push((d.clone(), f));
                }
            }
            let refs: Vec<(&FinSpace, &[usize])> =
                maps.iter().map(|(d, f)| (d, f.as_slice())).collect();
            let fin = crate::space::final_topology(x.n(), &refs).expect("bounded carrier");
            let member = fin == *x;
            let cert = HullCertificate::Sink(
                maps.into_iter()
                    .map(|(d, f)| SpaceMap::new(d, x.clone(), f).expect("validated"))
                    .collect(),
            );
            (member, cert)
        }
        HullKind::Epireflective | HullKind::Bireflective => {
            let mut maps: Vec<(Vec<usize>, FinSpace)> = Vec::new();
            for d in family {
                for f in continuous_maps(x, d) {
                    maps.push((f, d.clone()));
                }
            }
            let refs: Vec<(&[usize], &FinSpace)> =
                maps.iter().map(|(f, d)| (f.as_slice(), d)).collect();
            let ini = crate::space::initial_topology(x.n(), &refs).expect("bounded carrier");
            let initial = ini == *x;
            let mono = kind == HullKind::Bireflective
                || (0..x.n()).all(|p| (0..p).all(|q| maps.iter().any(|(f, _)| f[p] != f[q])));
            let member = initial && mono;
            let cert = HullCertificate::Source(
                maps.into_iter()
                    .map(|(f, d)| SpaceMap::new(x.clone(), d, f).expect("validated"))
                    .collect(),
            );
            (member, cert)
        }
    }
}

/// Membership in the AD-hull inside an ambient predicate: the predicate must
/// hold for `x` and the coreflective criterion must pass.
pub fn in_ad_hull(x: &FinSpace, family: &[FinSpace], ambient: Pred) -> Result<bool> {
    Ok(ambient.test(x) && in_hull(HullKind::Coreflective, x, family).0)
}

/// Reconstruction of the section argument for surjective initial maps with
/// a singleton fiber: builds a section between the prime factors, checks
/// continuity and the identity composite, then confirms coreflective-hull
/// membership of the factor.
pub fn verify_initial_singleton_fiber(f: &SpaceMap, b: usize) -> Result<bool> {
    let flags = f.classify();
    if !flags.initial || !flags.surjective {
        return Err(Error::PreconditionFailed(
            "map must be surjective and initial".into(),
        ));
    }
    if b >= f.cod().n() {
        return Err(Error::PointOutOfRange {
            point: b,
            n: f.cod().n(),
        });
    }
    let fiber = f.fiber(b);
    if fiber.count_ones() != 1 {
        return Err(Error::PreconditionFailed(
            "fiber of b must be a singleton".into(),
        ));
    }
    let a = fiber.trailing_zeros() as usize;
    let xa = prime_factor(f.dom(), a)?;
    let yb = prime_factor(f.cod(), b)?;
    // section: b -> a, any preimage elsewhere (smallest index)
    let g: Vec<usize> = (0..f.cod().n())
        .map(|y| {
            if y == b {
                a
            } else {
                f.fiber(y).trailing_zeros() as usize
            }
        })
        .collect();
    let gmap = SpaceMap::new(yb.clone(), xa.clone(), g)?;
    let section_ok =
        gmap.is_continuous() && (0..f.cod().n()).all(|y| f.apply(gmap.apply(y)) == y);
    Ok(section_ok && in_hull(HullKind::Coreflective, &xa, &[yb]).0)
}

/// Every continuous self-map is constant or the identity.
pub fn strongly_rigid(x: &FinSpace) -> bool {
    let n = x.n();
    continuous_maps(x, x)
        .into_iter()
        .all(|f| (0..n).all(|p| f[p] == p) || (n > 0 && f.iter().all(|&v| v == f[0])))
}
