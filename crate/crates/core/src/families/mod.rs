//! τ-intersecting families of subspaces: the predicate, the extremal
//! constructions, `η_i`-images and closed-form bounds.

pub mod bounds;
pub mod constructions;
pub mod file;
pub mod stripes;

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::module::{Submodule, Vector};
use crate::ring::Ring;
use crate::shape::Shape;

pub use bounds::{bound_catalog, evaluate_bound, Bound};
pub use constructions::{construction_registry, Construction};

/// How the intersection of two members is compared with `τ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Semantics {
    /// The intersection contains a subspace of shape `τ` (componentwise
    /// dominance of shapes).
    #[default]
    AtLeast,
    /// The intersection has shape exactly `τ`.
    Exact,
}

impl Semantics {
    pub fn admits(self, meet: &Shape, tau: &Shape) -> bool {
        match self {
            Semantics::AtLeast => tau.fits_in(meet),
            Semantics::Exact => meet == tau,
        }
    }
}

/// `A ∩ B` contains a subspace of shape `tau`.
pub fn tau_intersecting(a: &Submodule, b: &Submodule, tau: &Shape) -> Result<bool> {
    tau_intersecting_with(a, b, tau, Semantics::AtLeast)
}

pub fn tau_intersecting_with(a: &Submodule, b: &Submodule, tau: &Shape, semantics: Semantics) -> Result<bool> {
    Ok(semantics.admits(a.intersect(b)?.shape(), tau))
}

/// Whether `sub` has a point in the `level`-neighbor class of `w`, i.e. a
/// point whose `η_level`-image lies in `η_level(W)`.
pub fn meets_neighbor_class(sub: &Submodule, w: &Submodule, level: usize) -> Result<bool> {
    let meet = sub.eta(level)?.intersect(&w.eta(level)?)?;
    Ok(meet.shape().free_rank(level) > 0)
}

/// A neighbor class `[W]^{(level)}` that members must not touch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Avoid {
    pub w: Submodule,
    pub level: usize,
}

#[derive(Clone, Debug)]
pub struct FamilyProblem {
    pub ring: Ring,
    pub n: usize,
    pub kappa: Shape,
    pub tau: Shape,
    pub semantics: Semantics,
    pub avoid: Option<Avoid>,
}

impl FamilyProblem {
    pub fn new(ring: &Ring, n: usize, kappa: Shape, tau: Shape) -> Result<Self> {
        let m = ring.length();
        if kappa.largest_part() > m || kappa.rank() > n {
            return Err(Error::InvalidShape(format!("{kappa} does not occur in R^{n} over a ring of length {m}")));
        }
        if !tau.fits_in(&kappa) {
            return Err(Error::InvalidShape(format!("tau = {tau} does not fit in kappa = {kappa}")));
        }
        Ok(FamilyProblem { ring: ring.clone(), n, kappa, tau, semantics: Semantics::AtLeast, avoid: None })
    }

    pub fn with_avoid(mut self, w: Submodule, level: usize) -> Result<Self> {
        if w.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if w.ambient_rank() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: w.ambient_rank() });
        }
        if level == 0 || level > self.ring.length() {
            return Err(Error::LevelOutOfRange { level, length: self.ring.length() });
        }
        self.avoid = Some(Avoid { w, level });
        Ok(self)
    }

    pub fn with_semantics(mut self, semantics: Semantics) -> Self {
        self.semantics = semantics;
        self
    }

    /// Whether `sub` is an admissible member (shape and avoidance).
    pub fn admits(&self, sub: &Submodule) -> Result<bool> {
        if sub.shape() != &self.kappa || sub.ambient_rank() != self.n {
            return Ok(false);
        }
        match &self.avoid {
            Some(a) => Ok(!meets_neighbor_class(sub, &a.w, a.level)?),
            None => Ok(true),
        }
    }

    pub fn edge(&self, a: &Submodule, b: &Submodule) -> Result<bool> {
        tau_intersecting_with(a, b, &self.tau, self.semantics)
    }
}

#[derive(Clone, Debug)]
pub struct Family {
    pub problem: FamilyProblem,
    pub members: Vec<Submodule>,
    /// Id of the construction that produced the family, if any.
    pub construction: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub first: usize,
    pub second: usize,
    /// Shape of the intersection of the two members.
    pub meet: Shape,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub members: usize,
    pub pairs_checked: u64,
    pub wrong_shape: Vec<usize>,
    pub duplicates: Vec<(usize, usize)>,
    /// Members touching the avoided neighbor class.
    pub touching_avoided: Vec<usize>,
    pub violating_pairs: u64,
    /// Lexicographically first violating pair.
    pub first_violation: Option<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.wrong_shape.is_empty()
            && self.duplicates.is_empty()
            && self.touching_avoided.is_empty()
            && self.violating_pairs == 0
    }
}

impl Family {
    pub fn new(problem: FamilyProblem, members: Vec<Submodule>, construction: &str) -> Self {
        Family { problem, members, construction: construction.to_string() }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Exhaustive pairwise check with the module intersection.
    pub fn validate(&self) -> Result<ValidationReport> {
        self.validate_with(|i, j| self.members[i].intersect(&self.members[j]).map(|m| m.shape().clone()))
    }

    /// The same checks computed from explicit element sets: intersections
    /// are set intersections and shapes are read off from orders.
    pub fn validate_by_elements(&self) -> Result<ValidationReport> {
        let ring = &self.problem.ring;
        let sets: Vec<HashSet<Vector>> = self.members.par_iter().map(|m| m.elements().into_iter().collect()).collect();
        let meet_shape = |i: usize, j: usize| -> Result<Shape> {
            let (a, b) = (&sets[i], &sets[j]);
            let common: Vec<&Vector> = a.iter().filter(|x| b.contains(*x)).collect();
            shape_from_elements(ring, &common)
        };
        self.validate_with(meet_shape)
    }

    fn validate_with<S>(&self, meet: S) -> Result<ValidationReport>
    where
        S: Fn(usize, usize) -> Result<Shape> + Sync,
    {
        let p = &self.problem;
        let k = self.members.len();
        let wrong_shape: Vec<usize> = (0..k)
            .filter(|&i| self.members[i].shape() != &p.kappa || self.members[i].ambient_rank() != p.n)
            .collect();
        let mut duplicates = Vec::new();
        let mut seen = std::collections::HashMap::new();
        for (i, m) in self.members.iter().enumerate() {
            if let Some(&j) = seen.get(m) {
                duplicates.push((j, i));
            } else {
                seen.insert(m, i);
            }
        }
        let touching_avoided: Vec<usize> = match &p.avoid {
            Some(a) => {
                let flags: Vec<bool> = self
                    .members
                    .par_iter()
                    .map(|m| meets_neighbor_class(m, &a.w, a.level))
                    .collect::<Result<_>>()?;
                (0..k).filter(|&i| flags[i]).collect()
            }
            None => Vec::new(),
        };
        let bad: Vec<(u64, Option<usize>)> = (0..k)
            .into_par_iter()
            .map(|i| {
                let mut count = 0u64;
                let mut first = None;
                for j in i + 1..k {
                    if !p.semantics.admits(&meet(i, j)?, &p.tau) {
                        count += 1;
                        first.get_or_insert(j);
                    }
                }
                Ok((count, first))
            })
            .collect::<Result<_>>()?;
        let violating_pairs = bad.iter().map(|b| b.0).sum();
        let first_violation = match bad.iter().enumerate().find_map(|(i, b)| b.1.map(|j| (i, j))) {
            Some((i, j)) => Some(Violation { first: i, second: j, meet: meet(i, j)? }),
            None => None,
        };
        Ok(ValidationReport {
            members: k,
            pairs_checked: (k as u64) * (k as u64).saturating_sub(1) / 2,
            wrong_shape,
            duplicates,
            touching_avoided,
            violating_pairs,
            first_violation,
        })
    }

    /// Validates and returns the family, or a validation error naming the
    /// first problem.
    pub fn validated(self) -> Result<Self> {
        let report = self.validate()?;
        if report.passed() {
            Ok(self)
        } else {
            Err(Error::Validation(describe_failure(&report)))
        }
    }
}

pub fn describe_failure(report: &ValidationReport) -> String {
    if let Some(v) = &report.first_violation {
        return format!("members {} and {} meet in shape {}", v.first, v.second, v.meet);
    }
    if let Some(i) = report.wrong_shape.first() {
        return format!("member {i} has the wrong shape");
    }
    if let Some((i, j)) = report.duplicates.first() {
        return format!("members {i} and {j} coincide");
    }
    if let Some(i) = report.touching_avoided.first() {
        return format!("member {i} meets the avoided neighbor class");
    }
    "ok".into()
}

/// Shape of a submodule given as its element list: over a ring of length
/// two, `|X| = q^{2a+b}` and `|X ∩ N^n| = q^{a+b}` for shape `2^a 1^b`.
pub fn shape_from_elements(ring: &Ring, elements: &[&Vector]) -> Result<Shape> {
    let q = ring.q() as usize;
    let log = |mut count: usize| -> Result<usize> {
        let mut e = 0;
        while count > 1 {
            if !count.is_multiple_of(q) {
                return Err(Error::Validation(format!("{count} is not a power of {q}")));
            }
            count /= q;
            e += 1;
        }
        Ok(e)
    };
    let total = log(elements.len())?;
    if ring.length() == 1 {
        return Shape::new(vec![1; total]);
    }
    let torsion = log(elements.iter().filter(|x| x.iter().all(|&e| !ring.is_unit(e))).count())?;
    let a = total - torsion;
    let mut parts = vec![2; a];
    parts.extend(std::iter::repeat_n(1, torsion - a));
    Shape::new(parts)
}

/// The shape of `η_i(X)` for a module of shape `shape` over a ring of
/// length `m`: every part drops by `m - i`.
pub fn image_shape(shape: &Shape, m: usize, i: usize) -> Result<Shape> {
    if i == 0 || i >= m {
        return Err(Error::LevelOutOfRange { level: i, length: m });
    }
    Shape::new(shape.parts().iter().filter(|&&p| p > m - i).map(|&p| p - (m - i)).collect())
}

/// `η_i(F)`: the deduplicated images in `(R/N^i)^n`, as a family for the
/// shifted shapes `κ'` and `τ'`.
pub fn eta_image_family(family: &Family, i: usize) -> Result<Family> {
    let p = &family.problem;
    let m = p.ring.length();
    let kappa = image_shape(&p.kappa, m, i)?;
    let tau = image_shape(&p.tau, m, i)?;
    let target = p.ring.quotient(i)?;
    let mut images: Vec<Submodule> = family.members.iter().map(|x| x.eta(i)).collect::<Result<_>>()?;
    images.sort_unstable();
    images.dedup();
    let problem = FamilyProblem::new(&target, p.n, kappa, tau)?;
    Ok(Family::new(problem, images, &format!("eta{i}({})", family.construction)))
}
