//! Point functions between finite spaces and their classification.

use crate::error::{Error, Result};
use crate::space::{bit, full_mask, initial_topology, mask_contains, mask_points, FinSpace, Mask};

/// A total point function between two finite spaces.  No continuity is
/// assumed at construction; classification is explicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceMap {
    dom: FinSpace,
    cod: FinSpace,
    assignment: Vec<usize>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MapFlags {
    pub continuous: bool,
    pub quotient: bool,
    pub initial: bool,
    pub embedding: bool,
    pub retraction: bool,
    pub surjective: bool,
    pub injective: bool,
}

impl SpaceMap {
    pub fn new(dom: FinSpace, cod: FinSpace, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != dom.n() {
            return Err(Error::PreconditionFailed(
                "assignment length differs from the domain".into(),
            ));
        }
        if let Some(&p) = assignment.iter().find(|&&p| p >= cod.n()) {
            return Err(Error::PointOutOfRange { point: p, n: cod.n() });
        }
        Ok(SpaceMap {
            dom,
            cod,
            assignment,
        })
    }

    pub fn identity(x: &FinSpace) -> Self {
        SpaceMap {
            dom: x.clone(),
            cod: x.clone(),
            assignment: (0..x.n()).collect(),
        }
    }

    pub fn dom(&self) -> &FinSpace {
        &self.dom
    }

    pub fn cod(&self) -> &FinSpace {
        &self.cod
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn image(&self) -> Mask {
        self.assignment.iter().fold(0, |m, &p| m | bit(p))
    }

    pub fn preimage(&self, v: Mask) -> Mask {
        let mut m = 0;
        for (x, &fx) in self.assignment.iter().enumerate() {
            if mask_contains(v, fx) {
                m |= bit(x);
            }
        }
        m
    }

    pub fn fiber(&self, y: usize) -> Mask {
        self.preimage(bit(y))
    }

    /// Composition `other ∘ self` (apply `self` first).
    pub fn then(&self, other: &SpaceMap) -> Result<SpaceMap> {
        if self.cod.n() != other.dom.n() {
            return Err(Error::CarrierMismatch {
                left: self.cod.n(),
                right: other.dom.n(),
            });
        }
        SpaceMap::new(
            self.dom.clone(),
            other.cod.clone(),
            self.assignment
                .iter()
                .map(|&x| other.assignment[x])
                .collect(),
        )
    }

    pub fn is_surjective(&self) -> bool {
        self.image() == full_mask(self.cod.n())
    }

    pub fn is_injective(&self) -> bool {
        self.image().count_ones() as usize == self.dom.n()
    }

    /// Continuity check; for finite spaces a map is continuous iff it
    /// carries every minimal neighborhood into the minimal neighborhood of
    /// the image point.
    pub fn is_continuous(&self) -> bool {
        (0..self.dom.n()).all(|x| {
            let target = self.cod.min_nbhd(self.assignment[x]);
            mask_points(self.dom.min_nbhd(x)).all(|y| mask_contains(target, self.assignment[y]))
        })
    }

    /// The codomain carries exactly the final topology of this map.
    pub fn is_quotient(&self) -> bool {
        if !self.is_surjective() || !self.is_continuous() {
            return false;
        }
        let fin = crate::space::final_topology(self.cod.n(), &[(&self.dom, &self.assignment)])
            .expect("carrier already validated");
        fin == self.cod
    }

    /// The domain carries exactly the topology generated by preimages of
    /// codomain opens.
    pub fn is_initial(&self) -> bool {
        let ini = initial_topology(self.dom.n(), &[(self.assignment.as_slice(), &self.cod)])
            .expect("carrier already validated");
        ini == self.dom
    }

    /// Searches all sections for a continuous one; exact, no shortcuts.
    pub fn is_retraction(&self) -> bool {
        if !self.is_surjective() || !self.is_continuous() {
            return false;
        }
        let fibers: Vec<Vec<usize>> = (0..self.cod.n())
            .map(|y| mask_points(self.fiber(y)).collect())
            .collect();
        let mut choice = vec![0usize; self.cod.n()];
        loop {
            let section: Vec<usize> = (0..self.cod.n()).map(|y| fibers[y][choice[y]]).collect();
            let s = SpaceMap {
                dom: self.cod.clone(),
                cod: self.dom.clone(),
                assignment: section,
            };
            if s.is_continuous() {
                return true;
            }
            // advance the mixed-radix counter over fiber choices
            let mut k = 0;
            loop {
                if k == self.cod.n() {
                    return false;
                }
                choice[k] += 1;
                if choice[k] < fibers[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }

    pub fn classify(&self) -> MapFlags {
        let continuous = self.is_continuous();
        let surjective = self.is_surjective();
        let injective = self.is_injective();
        let initial = self.is_initial();
        MapFlags {
            continuous,
            surjective,
            injective,
            initial,
            quotient: surjective && continuous && self.is_quotient(),
            embedding: injective && initial,
            retraction: continuous && surjective && self.is_retraction(),
        }
    }
}

/// Spec-level entry point mirroring the operation name.
pub fn classify_map(f: &SpaceMap) -> MapFlags {
    f.classify()
}
