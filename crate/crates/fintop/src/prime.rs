//! Prime spaces, prime factors and the named generator spaces.

use crate::error::{Error, Result};
use crate::map::SpaceMap;
use crate::space::{bit, full_mask, mask_contains, mask_points, quotient_by_map, sum, FinSpace, Mask};

/// A prime space together with its unique accumulation point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeView {
    pub space: FinSpace,
    pub acc: usize,
}

impl PrimeView {
    /// Isolated points, ascending.
    pub fn isolated(&self) -> Vec<usize> {
        (0..self.space.n()).filter(|&x| x != self.acc).collect()
    }
}

/// Points whose singleton is not open.
pub fn accumulation_points(x: &FinSpace) -> Mask {
    let mut m = 0;
    for p in 0..x.n() {
        if x.min_nbhd(p) != bit(p) {
            m |= bit(p);
        }
    }
    m
}

/// A space is prime iff it has precisely one accumulation point.
pub fn is_prime(x: &FinSpace) -> Option<PrimeView> {
    let acc = accumulation_points(x);
    if acc.count_ones() == 1 {
        Some(PrimeView {
            space: x.clone(),
            acc: acc.trailing_zeros() as usize,
        })
    } else {
        None
    }
}

/// Prime factor of `x` at `a`: all points other than `a` become isolated,
/// the neighborhoods of `a` stay the same.  Discrete iff `{a}` is open.
pub fn prime_factor(x: &FinSpace, a: usize) -> Result<FinSpace> {
    if a >= x.n() {
        return Err(Error::PointOutOfRange { point: a, n: x.n() });
    }
    let min = (0..x.n())
        .map(|p| if p == a { x.min_nbhd(a) } else { bit(p) })
        .collect();
    Ok(FinSpace::from_min_nbhds_unchecked(x.n(), min))
}

/// The sum of all prime factors together with the canonical map onto `x`;
/// the map is a quotient and reconstructs `x` exactly.
pub struct PrimeDecomposition {
    pub sum: FinSpace,
    pub map: SpaceMap,
}

pub fn prime_decomposition(x: &FinSpace) -> Result<PrimeDecomposition> {
    if x.n() == 0 {
        return Err(Error::PreconditionFailed(
            "prime decomposition needs at least one point".into(),
        ));
    }
    let factors: Vec<FinSpace> = (0..x.n())
        .map(|a| prime_factor(x, a))
        .collect::<Result<_>>()?;
    let (s, _) = sum(&factors)?;
    // point p of the summand X_a maps to the point p of x
    let assignment: Vec<usize> = (0..x.n()).flat_map(|_| 0..x.n()).collect();
    let map = SpaceMap::new(s.clone(), x.clone(), assignment)?;
    Ok(PrimeDecomposition { sum: s, map })
}

/// Reconstructs `x` as the quotient of the sum of its prime factors and
/// checks the result is exactly `x`.
pub fn prime_decomposition_reconstructs(x: &FinSpace) -> Result<bool> {
    let d = prime_decomposition(x)?;
    let (q, qmap) = quotient_by_map(&d.sum, d.map.assignment(), x.n())?;
    Ok(q == *x && qmap.classify().quotient)
}

/// The retraction of a prime space onto a prime subspace: identity on the
/// subspace, everything else to the accumulation point.
pub fn prime_retraction(p: &PrimeView, s: Mask) -> Result<SpaceMap> {
    let space = &p.space;
    let s = s & full_mask(space.n());
    if !mask_contains(s, p.acc) {
        return Err(Error::PreconditionFailed(
            "subspace must contain the accumulation point".into(),
        ));
    }
    // acc must stay non-isolated in the trace
    if space.min_nbhd(p.acc) & s == bit(p.acc) {
        return Err(Error::NotPrimeSubspace);
    }
    let (sub, _) = space.subspace(s);
    let pts: Vec<usize> = mask_points(s).collect();
    let mut index = vec![usize::MAX; space.n()];
    for (i, &q) in pts.iter().enumerate() {
        index[q] = i;
    }
    let acc_index = index[p.acc];
    let assignment = (0..space.n())
        .map(|q| if mask_contains(s, q) { index[q] } else { acc_index })
        .collect();
    SpaceMap::new(space.clone(), sub, assignment)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// Sierpiński space.
    S,
    /// Discrete space on `n` points.
    D,
    /// Indiscrete space on `n` points.
    I,
    /// Finite analogue of the ordinal prime space: points `0..=n`, every
    /// point below `n` isolated, tail sets as neighborhoods of `n`.
    C,
    /// Tail-set chain: opens are the empty set and the tails `{b..=n}`.
    B,
}

/// Named generator spaces of the expression language.
pub fn gen(kind: Generator, n: usize) -> Result<FinSpace> {
    match kind {
        Generator::S => Ok(FinSpace::sierpinski()),
        Generator::D => {
            if n < 1 {
                return Err(Error::BadSize("D(n) needs n >= 1".into()));
            }
            check_size(n)?;
            Ok(FinSpace::discrete(n))
        }
        Generator::I => {
            if n < 1 {
                return Err(Error::BadSize("I(n) needs n >= 1".into()));
            }
            check_size(n)?;
            Ok(FinSpace::indiscrete(n))
        }
        Generator::C => {
            if n < 1 {
                return Err(Error::BadSize("C(n) needs n >= 1".into()));
            }
            check_size(n + 1)?;
            let mut min: Vec<Mask> = (0..n).map(bit).collect();
            min.push(bit(n - 1) | bit(n));
            Ok(FinSpace::from_min_nbhds_unchecked(n + 1, min))
        }
        Generator::B => {
            if n < 1 {
                return Err(Error::BadSize("B(n) needs n >= 1".into()));
            }
            check_size(n + 1)?;
            // chain of tails: min_nbhd(x) = {x..=n}
            let min = (0..=n)
                .map(|x| {
                    let mut m = 0;
                    for y in x..=n {
                        m |= bit(y);
                    }
                    m
                })
                .collect();
            Ok(FinSpace::from_min_nbhds_unchecked(n + 1, min))
        }
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > crate::space::MAX_POINTS {
        Err(Error::CarrierTooLarge {
            n,
            max: crate::space::MAX_POINTS,
        })
    } else {
        Ok(())
    }
}
