//! Projective Hjelmslev geometries `PHG(n-1, R)`; `PG(n-1, q)` when `R` is a
//! field.
//!
//! Points are free cyclic submodules, stored by their normalized generator
//! (first unit coordinate scaled to `1` from the left). Any subspace is a
//! [`Submodule`]; its point set is a [`BitSet`] over the point list.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::OnceLock;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::enumerate::enumerate_submodules;
use crate::error::{Error, Result};
use crate::linalg;
use crate::module::{Submodule, Vector};
use crate::ring::{Elem, Ring};
use crate::shape::Shape;

pub struct Geometry {
    ring: Ring,
    n: usize,
    points: Vec<Vector>,
    index: HashMap<Vector, usize>,
    residue_keys: Vec<Vec<u32>>,
    lines: OnceLock<Vec<Submodule>>,
    line_points: OnceLock<Vec<BitSet>>,
}

impl std::fmt::Debug for Geometry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Geometry(phg:ring={},n={})", self.ring.spec(), self.n)
    }
}

/// `u·v` with `u` the inverse of the first unit coordinate; `None` if `v`
/// has no unit coordinate.
pub fn normalize(ring: &Ring, v: &[Elem]) -> Option<Vector> {
    let j = v.iter().position(|&x| ring.is_unit(x))?;
    let u = ring.inv(v[j])?;
    Some(v.iter().map(|&x| ring.mul(u, x)).collect())
}

/// Normalized residue vector of `v` (first nonzero digit scaled to 1).
pub fn residue_key(ring: &Ring, v: &[Elem]) -> Vec<u32> {
    let field = ring.field();
    let digits: Vec<u32> = v.iter().map(|&x| ring.digit0(x)).collect();
    match digits.iter().find(|&&d| d != 0) {
        Some(&lead) => {
            let u = field.inv(lead).expect("nonzero");
            digits.iter().map(|&d| field.mul(u, d)).collect()
        }
        None => digits,
    }
}

impl Geometry {
    pub fn new(ring: &Ring, n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGeometry(format!("ambient rank n = {n} must be at least 3")));
        }
        Ok(Self::build(ring, n))
    }

    /// Like [`Geometry::new`] but accepts any `n >= 1`; used for
    /// coordinate spaces inside constructions.
    pub(crate) fn build(ring: &Ring, n: usize) -> Self {
        let mut points = Vec::new();
        let nonunits: Vec<Elem> = ring.elements().filter(|&x| !ring.is_unit(x)).collect();
        let all: Vec<Elem> = ring.elements().collect();
        for j in 0..n {
            let mut acc: Vec<Vector> = vec![Vec::with_capacity(n)];
            for c in 0..n {
                let choices: &[Elem] = match c.cmp(&j) {
                    std::cmp::Ordering::Less => &nonunits,
                    std::cmp::Ordering::Equal => &[Elem::ONE],
                    std::cmp::Ordering::Greater => &all,
                };
                acc = acc
                    .into_iter()
                    .flat_map(|prefix| {
                        choices.iter().map(move |&x| {
                            let mut v = prefix.clone();
                            v.push(x);
                            v
                        })
                    })
                    .collect();
            }
            points.extend(acc);
        }
        points.sort_unstable();
        let index = points.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let residue_keys = points.iter().map(|p| residue_key(ring, p)).collect();
        Geometry {
            ring: ring.clone(),
            n,
            points,
            index,
            residue_keys,
            lines: OnceLock::new(),
            line_points: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `phg:ring=<spec>,n=<n>`.
    pub fn descriptor(&self) -> String {
        format!("phg:ring={},n={}", self.ring.spec(), self.n)
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn point_index(&self, v: &[Elem]) -> Option<usize> {
        let v = normalize(&self.ring, v)?;
        self.index.get(&v).copied()
    }

    pub fn point_submodule(&self, idx: usize) -> Submodule {
        Submodule::span(&self.ring, self.n, &[self.points[idx].clone()]).expect("point vector")
    }

    /// Normalized `η_1`-image of a point, i.e. a point of `PG(n-1, q)`.
    pub fn residue_of(&self, idx: usize) -> &[u32] {
        &self.residue_keys[idx]
    }

    /// Points contained in `sub`.
    pub fn point_set(&self, sub: &Submodule) -> BitSet {
        let mut set = BitSet::new(self.points.len());
        if sub.shape().free_rank(self.ring.length()) == 0 {
            return set;
        }
        for x in sub.elements() {
            if let Some(i) = self.point_index(&x) {
                set.insert(i);
            }
        }
        set
    }

    pub fn subspaces_of_shape(&self, lambda: &Shape) -> Vec<Submodule> {
        enumerate_submodules(&self.ring, self.n, lambda)
    }

    /// Hjelmslev subspaces of projective dimension `s - 1` (shape `m^s`).
    pub fn hjelmslev_subspaces(&self, s: usize) -> Vec<Submodule> {
        self.subspaces_of_shape(&Shape::free(self.ring.length(), s))
    }

    pub fn lines(&self) -> &[Submodule] {
        self.lines.get_or_init(|| self.hjelmslev_subspaces(2))
    }

    pub fn line_point_sets(&self) -> &[BitSet] {
        self.line_points.get_or_init(|| self.lines().iter().map(|l| self.point_set(l)).collect())
    }

    fn check_level(&self, i: usize) -> Result<()> {
        let m = self.ring.length();
        if i == 0 || i > m {
            return Err(Error::LevelOutOfRange { level: i, length: m });
        }
        Ok(())
    }

    /// `η_i(U) = η_i(V)` for subspaces of the same shape.
    pub fn is_neighbor(&self, i: usize, u: &Submodule, v: &Submodule) -> Result<bool> {
        self.check_level(i)?;
        if u.shape() != v.shape() {
            return Err(Error::ShapeMismatch(u.shape().to_string(), v.shape().to_string()));
        }
        Ok(u.eta(i)? == v.eta(i)?)
    }

    /// All subspaces `T` of the shape of `u` with `T` an `i`-neighbor of `u`.
    pub fn neighbor_class(&self, u: &Submodule, i: usize) -> Result<Vec<Submodule>> {
        self.check_level(i)?;
        let image = u.eta(i)?;
        Ok(self
            .subspaces_of_shape(u.shape())
            .into_iter()
            .filter(|t| t.eta(i).map(|e| e == image).unwrap_or(false))
            .collect())
    }

    /// `[U]^{(i)}`: points that are `i`-neighbors of some point of `U`.
    pub fn neighbor_class_points(&self, u: &Submodule, i: usize) -> Result<BitSet> {
        self.check_level(i)?;
        let own = self.point_set(u);
        if i == self.ring.length() {
            return Ok(own);
        }
        let keys: BTreeSet<&[u32]> = own.iter().map(|p| self.residue_of(p)).collect();
        Ok(BitSet::from_indices(
            self.points.len(),
            (0..self.points.len()).filter(|&p| keys.contains(self.residue_of(p))),
        ))
    }

    /// A free basis of a free submodule: canonical rows with independent
    /// residues.
    fn free_basis(&self, s: &Submodule) -> Vec<Vector> {
        let field = self.ring.field();
        let mut chosen: Vec<Vector> = Vec::new();
        let mut residues: Vec<Vec<u32>> = Vec::new();
        for row in s.rows() {
            let mut trial = residues.clone();
            trial.push(row.iter().map(|&x| self.ring.digit0(x)).collect());
            if linalg::rank(field, &trial) > residues.len() {
                residues = trial;
                chosen.push(row.clone());
            }
        }
        chosen
    }

    /// The factor structure on the `i`-neighbor class of a Hjelmslev
    /// subspace `s`, with its embedding into `PHG(n-1, R/N^{m-i})`.
    pub fn factor_geometry(&self, s: &Submodule, i: usize) -> Result<FactorGeometry> {
        let m = self.ring.length();
        if m != 2 || i != 1 {
            return Err(Error::LevelOutOfRange { level: i, length: m });
        }
        if !s.shape().is_free(m) || s.is_zero() {
            return Err(Error::InvalidShape(format!("{} is not a Hjelmslev subspace", s.shape())));
        }
        let dim_s = s.shape().rank();
        let neighbors = self.neighbor_class(s, i)?;
        let neighbor_sets: Vec<BitSet> = neighbors.iter().map(|t| self.point_set(t)).collect();

        // P̃ = T ∩ [P]^{(m-i)}: points of T grouped by residue.
        let mut factor_points: BTreeSet<BitSet> = BTreeSet::new();
        for set in &neighbor_sets {
            let mut groups: BTreeMap<&[u32], BitSet> = BTreeMap::new();
            for p in set.iter() {
                groups.entry(self.residue_of(p)).or_insert_with(|| BitSet::new(self.num_points())).insert(p);
            }
            factor_points.extend(groups.into_values());
        }
        let factor_points: Vec<BitSet> = factor_points.into_iter().collect();

        // lines inside some T, merged when they meet the same P̃
        let mut lines: Vec<FactorLine> = Vec::new();
        let mut seen: BTreeSet<BitSet> = BTreeSet::new();
        if dim_s >= 2 {
            for (line, pts) in self.lines().iter().zip(self.line_point_sets()) {
                if !neighbor_sets.iter().any(|t| pts.is_subset(t)) {
                    continue;
                }
                let incident = BitSet::from_indices(
                    factor_points.len(),
                    factor_points.iter().enumerate().filter(|(_, p)| p.intersects(pts)).map(|(k, _)| k),
                );
                if seen.insert(incident.clone()) {
                    lines.push(FactorLine { line: line.clone(), points: incident });
                }
            }
        }

        // coordinates w.r.t. a basis extending a free basis of S
        let mut basis = self.free_basis(s);
        let mut residues: Vec<Vec<u32>> =
            basis.iter().map(|row| row.iter().map(|&x| self.ring.digit0(x)).collect()).collect();
        let pivots = linalg::rref(self.ring.field(), &mut residues);
        for c in (0..self.n).filter(|c| !pivots.contains(c)) {
            basis.push((0..self.n).map(|j| if j == c { Elem::ONE } else { Elem::ZERO }).collect());
        }
        let inverse = invert(&self.ring, &basis)?;
        let target = Geometry::build(&self.ring.quotient(m - i)?, self.n);
        let mut fg = FactorGeometry {
            base: s.clone(),
            level: i,
            neighbors,
            points: factor_points,
            lines,
            target,
            point_map: Vec::new(),
            inverse,
            well_defined: true,
        };
        let mut point_map = Vec::with_capacity(fg.points.len());
        let mut well_defined = true;
        for piece in &fg.points {
            let images: BTreeSet<Option<usize>> = piece.iter().map(|p| fg.image_of_point(self, p)).collect();
            well_defined &= images.len() == 1 && !images.contains(&None);
            point_map.push(images.into_iter().next().flatten().unwrap_or(usize::MAX));
        }
        fg.point_map = point_map;
        fg.well_defined = well_defined;
        Ok(fg)
    }
}
/// Two-sided inverse of a square matrix over `R` by left row operations.
fn invert(ring: &Ring, a: &[Vector]) -> Result<Vec<Vector>> {
    let n = a.len();
    let mut m: Vec<Vector> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&r| ring.is_unit(m[r][c]))
            .ok_or_else(|| Error::InvalidParameters("matrix is not invertible".into()))?;
        m.swap(c, p);
        let u = ring.inv(m[c][c]).expect("unit");
        m[c] = m[c].iter().map(|&x| ring.mul(u, x)).collect();
        let pivot = m[c].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != c && !row[c].is_zero() {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = ring.sub(*x, ring.mul(f, y));
                }
            }
        }
    }
    Ok(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[derive(Clone, Debug)]
pub struct FactorLine {
    /// Least underlying Hjelmslev line with this point set.
    pub line: Submodule,
    /// Incident factor points.
    pub points: BitSet,
}

pub struct FactorGeometry {
    pub base: Submodule,
    pub level: usize,
    /// Hjelmslev subspaces neighboring the base.
    pub neighbors: Vec<Submodule>,
    /// Factor points as point sets of the ambient geometry.
    pub points: Vec<BitSet>,
    pub lines: Vec<FactorLine>,
    /// `PHG(n-1, R/N^{m-i})`.
    pub target: Geometry,
    /// Image of each factor point among the target's points.
    pub point_map: Vec<usize>,
    /// Inverse of the adapted basis; row `k` holds the coordinates of `e_k`.
    inverse: Vec<Vector>,
    well_defined: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub factor_points: usize,
    pub factor_lines: usize,
    pub target_points: usize,
    pub well_defined: bool,
    pub injective_on_points: bool,
    pub lines_map_to_lines: bool,
    pub injective_on_lines: bool,
    pub incidence_preserved: bool,
    pub missing_points: usize,
    /// Projective dimension of the missing part when it is a subspace.
    pub missing_dimension: Option<isize>,
    pub expected_missing_dimension: isize,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.well_defined
            && self.injective_on_points
            && self.lines_map_to_lines
            && self.injective_on_lines
            && self.incidence_preserved
            && self.missing_dimension == Some(self.expected_missing_dimension)
    }
}

impl FactorGeometry {
    /// Image in the target of a point of `geometry` (the geometry the
    /// structure was built from): θ-digits of the coordinates outside the
    /// base, residues inside it. `None` if the digits vanish.
    pub fn image_of_point(&self, geometry: &Geometry, p: usize) -> Option<usize> {
        let ring = &geometry.ring;
        let n = geometry.n;
        let dim_s = self.base.shape().rank();
        let x = &geometry.points[p];
        let v: Vec<Elem> = (0..n)
            .map(|j| {
                let c = (0..n).fold(Elem::ZERO, |acc, k| ring.add(acc, ring.mul(x[k], self.inverse[k][j])));
                let digit = if j < dim_s { ring.digit0(c) } else { ring.digit1(c) };
                self.target.ring.compose(digit, 0)
            })
            .collect();
        self.target.point_index(&v)
    }

    /// Target points not hit by the embedding.
    pub fn missing(&self) -> BitSet {
        let mut all = BitSet::full(self.target.num_points());
        for &p in &self.point_map {
            if p < all.len() {
                all.remove(p);
            }
        }
        all
    }

    /// The span of a set of target points as an RREF basis over the
    /// target's residue field (the target has length one).
    fn span_of(&self, pts: impl Iterator<Item = usize>) -> Vec<Vec<u32>> {
        let ring = &self.target.ring;
        let mut rows: Vec<Vec<u32>> =
            pts.map(|p| self.target.points[p].iter().map(|&x| ring.digit0(x)).collect()).collect();
        linalg::rref(ring.field(), &mut rows);
        rows
    }

    fn points_in_span(&self, basis: &[Vec<u32>]) -> BitSet {
        let field = self.target.ring.field();
        let mut pivots = basis.to_vec();
        let piv = linalg::rref(field, &mut pivots);
        BitSet::from_indices(
            self.target.num_points(),
            (0..self.target.num_points()).filter(|&p| {
                let mut v: Vec<u32> = self.target.points[p].iter().map(|&x| self.target.ring.digit0(x)).collect();
                linalg::reduce(field, &pivots, &piv, &mut v);
                v.iter().all(|&x| x == 0)
            }),
        )
    }

    /// Exhaustive check that the factor structure embeds isomorphically and
    /// that the missing part is a subspace of the expected dimension.
    pub fn verify(&self) -> EmbeddingReport {
        let distinct: BTreeSet<usize> = self.point_map.iter().copied().collect();
        let injective_on_points = distinct.len() == self.point_map.len();
        let missing = self.missing();
        let missing_span = self.span_of(missing.iter());
        let missing_dimension = if self.points_in_span(&missing_span) == missing {
            Some(missing_span.len() as isize - 1)
        } else {
            None
        };
        let mut lines_map_to_lines = true;
        let mut incidence_preserved = true;
        let mut images: BTreeSet<BitSet> = BTreeSet::new();
        for line in &self.lines {
            let image_pts: Vec<usize> = line.points.iter().map(|k| self.point_map[k]).collect();
            let span = self.span_of(image_pts.iter().copied());
            let mut on_line = self.points_in_span(&span);
            lines_map_to_lines &= span.len() == 2;
            images.insert(on_line.clone());
            on_line.difference_with(&missing);
            let image_set = BitSet::from_indices(self.target.num_points(), image_pts.iter().copied());
            lines_map_to_lines &= on_line == image_set;
            for (k, &img) in self.point_map.iter().enumerate() {
                incidence_preserved &= line.points.contains(k) == on_line.contains(img);
            }
        }
        let s = self.base.shape().rank() as isize;
        EmbeddingReport {
            factor_points: self.points.len(),
            factor_lines: self.lines.len(),
            target_points: self.target.num_points(),
            well_defined: self.well_defined,
            injective_on_points,
            lines_map_to_lines,
            injective_on_lines: images.len() == self.lines.len(),
            incidence_preserved,
            missing_points: missing.count(),
            missing_dimension,
            expected_missing_dimension: self.target.n as isize - s - 1,
        }
    }
}
