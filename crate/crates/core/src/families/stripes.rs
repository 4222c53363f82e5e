//! Stripes: submodules of shape `2^2 1^1` in `PHG(3, R)` for a chain ring
//! of length two, intersecting when they share a point.
//!
//! A stripe `M` lies over the line `η(M)` of `PG(3, q)`; its torsion part
//! `M ∩ N^4` is a plane containing the twisted image of that line. Stripes
//! over the same line form a line class of `q^2 (q + 1)` stripes.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::{Family, FamilyProblem};
use crate::bitset::BitSet;
use crate::enumerate::enumerate_submodules;
use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::linalg::combinations;
use crate::module::Submodule;
use crate::ring::{Elem, Ring};
use crate::search::{lex_least_clique, max_clique, Budget, Graph, SearchResult, Status};
use crate::shape::Shape;

pub fn stripe_shape() -> Shape {
    Shape::new(vec![2, 2, 1]).expect("valid shape")
}

pub struct Stripes {
    pub geometry: Geometry,
    /// All stripes, sorted.
    pub stripes: Vec<Submodule>,
    pub point_sets: Vec<BitSet>,
    /// Lines of `PG(3, q)`, sorted.
    pub lines: Vec<Submodule>,
    /// Planes of `PG(3, q)`, sorted.
    pub planes: Vec<Submodule>,
    /// Points of `PG(3, q)`, sorted.
    pub residue_points: Vec<Submodule>,
    /// Index into `lines` of `η(M)` for every stripe.
    pub class_of: Vec<usize>,
}

/// Free submodule spanned by the unit vectors `e_c`, `c ∈ cols`.
pub fn unit_span(ring: &Ring, n: usize, cols: impl IntoIterator<Item = usize>) -> Submodule {
    let rows: Vec<Vec<Elem>> = cols
        .into_iter()
        .map(|c| (0..n).map(|j| if j == c { Elem::ONE } else { Elem::ZERO }).collect())
        .collect();
    Submodule::span(ring, n, &rows).expect("unit vectors")
}

#[derive(Clone, Debug, Serialize)]
pub struct HyperplaneSplit {
    /// Stripes whose points all lie in `[H]`.
    pub in_class: Vec<usize>,
    /// Those among them with the direction of `H` (torsion part `θH`).
    pub direction: Vec<usize>,
    /// Stripes contained in `H`.
    pub inside: Vec<usize>,
}

impl HyperplaneSplit {
    pub fn non_direction(&self) -> Vec<usize> {
        self.in_class.iter().copied().filter(|i| !self.direction.contains(i)).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CapacityRow {
    pub nu: usize,
    pub bound: u64,
    /// Largest number of pairwise intersecting stripes of one line class
    /// meeting a choice of witnesses in `nu` planes through the line.
    pub max_members: usize,
    pub configurations: u64,
    /// A configuration attaining `max_members`: the witnesses followed by
    /// the class members, all pairwise intersecting.
    pub example: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitSearch {
    /// Pairwise intersecting lines of `PG(3, q)` are concurrent or coplanar.
    pub pencil_or_plane: bool,
    pub size: usize,
    pub witness: Vec<usize>,
    pub status: Status,
    /// `(kind, index, candidates, maximum)` per pencil and plane.
    pub parts: Vec<(String, usize, usize, usize)>,
    pub nodes: u64,
}

impl Stripes {
    pub fn new(ring: &Ring) -> Result<Self> {
        if ring.length() != 2 {
            return Err(Error::InvalidParameters("stripes need a chain ring of length two".into()));
        }
        let geometry = Geometry::new(ring, 4)?;
        let stripes = enumerate_submodules(ring, 4, &stripe_shape());
        let point_sets: Vec<BitSet> = stripes.par_iter().map(|s| geometry.point_set(s)).collect();
        let field = ring.residue_ring();
        let lines = enumerate_submodules(&field, 4, &Shape::free(1, 2));
        let planes = enumerate_submodules(&field, 4, &Shape::free(1, 3));
        let residue_points = enumerate_submodules(&field, 4, &Shape::free(1, 1));
        let class_of = stripes
            .iter()
            .map(|s| {
                let image = s.eta(1)?;
                lines.binary_search(&image).map_err(|_| Error::Validation("stripe image is not a line".into()))
            })
            .collect::<Result<_>>()?;
        Ok(Stripes { geometry, stripes, point_sets, lines, planes, residue_points, class_of })
    }

    pub fn ring(&self) -> &Ring {
        self.geometry.ring()
    }

    pub fn q(&self) -> u64 {
        self.ring().q() as u64
    }

    pub fn len(&self) -> usize {
        self.stripes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stripes.is_empty()
    }

    /// Intersection graph: stripes sharing a point, i.e. meeting in a
    /// submodule of shape at least `2^1`.
    pub fn graph(&self) -> Graph {
        Graph::from_predicate(self.len(), |u, v| self.point_sets[u].intersects(&self.point_sets[v]))
    }

    pub fn problem(&self) -> FamilyProblem {
        FamilyProblem::new(self.ring(), 4, stripe_shape(), Shape::free(2, 1)).expect("valid stripe problem")
    }

    pub fn family(&self, indices: &[usize], construction: &str) -> Family {
        let mut members: Vec<Submodule> = indices.iter().map(|&i| self.stripes[i].clone()).collect();
        members.sort_unstable();
        Family::new(self.problem(), members, construction)
    }

    /// Stripes in the line class `c`.
    pub fn class(&self, c: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.class_of[i] == c).collect()
    }

    /// Stripes through the point with index `p`.
    pub fn through_point(&self, p: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.point_sets[i].contains(p)).collect()
    }

    pub fn split_by_hyperplane(&self, h: &Submodule) -> Result<HyperplaneSplit> {
        if h.shape() != &Shape::free(2, 3) || h.ambient_rank() != 4 {
            return Err(Error::InvalidShape(format!("{} is not a Hjelmslev plane", h.shape())));
        }
        let class_points = self.geometry.neighbor_class_points(h, 1)?;
        let torsion = h.torsion_digits();
        let in_class: Vec<usize> = (0..self.len()).filter(|&i| self.point_sets[i].is_subset(&class_points)).collect();
        let direction = in_class.iter().copied().filter(|&i| self.stripes[i].torsion_digits() == torsion).collect();
        let inside = in_class.iter().copied().filter(|&i| self.stripes[i].is_submodule_of(h)).collect();
        Ok(HyperplaneSplit { in_class, direction, inside })
    }

    /// The stripes of `[H]` without the direction of `H`, together with a
    /// largest intersecting set of direction stripes (lexicographically
    /// least among the largest).
    pub fn recipe_members(&self, h: &Submodule, graph: &Graph) -> Result<Vec<usize>> {
        let split = self.split_by_hyperplane(h)?;
        let sub = graph.induced(&split.direction);
        let best = max_clique(&sub, Budget::UNLIMITED);
        let chosen = lex_least_clique(&sub, best.size, Budget::UNLIMITED).expect("a clique of the maximum size exists");
        let mut members = split.non_direction();
        members.extend(chosen.iter().map(|&i| split.direction[i]));
        members.sort_unstable();
        Ok(members)
    }

    /// The stripes of `[H]` without the direction of `H`, together with the
    /// stripes inside `H`.
    pub fn hyperplane_members(&self, h: &Submodule) -> Result<Vec<usize>> {
        let split = self.split_by_hyperplane(h)?;
        let mut members = split.non_direction();
        members.extend(&split.inside);
        members.sort_unstable();
        members.dedup();
        Ok(members)
    }

    /// Planes of `PG(3, q)` through the line `c`.
    fn planes_through(&self, c: usize) -> Vec<usize> {
        (0..self.planes.len()).filter(|&p| self.lines[c].is_submodule_of(&self.planes[p])).collect()
    }

    /// For every line class and every `ν`, the largest number of
    /// pairwise intersecting stripes of that class that meet one witness
    /// stripe from another class in each of `ν` planes through the line.
    /// Witnesses are required to meet each other.
    pub fn class_capacity(&self, graph: &Graph) -> Result<Vec<CapacityRow>> {
        let q = self.q();
        let per_plane = (q * q + q) * q * q * (q + 1);
        let worst = per_plane.pow((q + 1) as u32) * self.lines.len() as u64;
        if worst > 50_000_000 {
            return Err(Error::TooLarge(format!("class capacity check at q = {q}")));
        }
        let n = self.len();
        type Row = (usize, usize, u64, Vec<usize>);
        let rows: Vec<Vec<Row>> = (0..self.lines.len())
            .into_par_iter()
            .map(|c| {
                let own = BitSet::from_indices(n, self.class(c));
                let planes = self.planes_through(c);
                let witnesses: Vec<Vec<usize>> = planes
                    .iter()
                    .map(|&p| {
                        (0..n)
                            .filter(|&i| {
                                self.class_of[i] != c && self.lines[self.class_of[i]].is_submodule_of(&self.planes[p])
                            })
                            .collect()
                    })
                    .collect();
                let mut cache: HashMap<BitSet, Vec<usize>> = HashMap::new();
                let mut out = Vec::new();
                for nu in 0..=planes.len() {
                    let mut best = 0;
                    let mut example = Vec::new();
                    let mut configs = 0u64;
                    for chosen in combinations(planes.len(), nu) {
                        let mut stack: Vec<(usize, BitSet, Vec<usize>)> = vec![(0, own.clone(), Vec::new())];
                        while let Some((depth, cand, used)) = stack.pop() {
                            if depth == nu {
                                configs += 1;
                                let clique = cache.entry(cand.clone()).or_insert_with(|| {
                                    let members: Vec<usize> = cand.iter().collect();
                                    let r = max_clique(&graph.induced(&members), Budget::UNLIMITED);
                                    r.witness.iter().map(|&i| members[i]).collect()
                                });
                                if clique.len() > best || example.is_empty() {
                                    best = best.max(clique.len());
                                    example = used.iter().chain(clique.iter()).copied().collect();
                                }
                                continue;
                            }
                            for &w in &witnesses[chosen[depth]] {
                                if used.iter().all(|&u| graph.has_edge(u, w)) {
                                    let mut next = cand.clone();
                                    next.intersect_with(graph.neighbors(w));
                                    let mut u2 = used.clone();
                                    u2.push(w);
                                    stack.push((depth + 1, next, u2));
                                }
                            }
                        }
                    }
                    out.push((nu, best, configs, example));
                }
                out
            })
            .collect();
        let mut merged: BTreeMap<usize, (usize, u64, Vec<usize>)> = BTreeMap::new();
        for (nu, best, configs, example) in rows.into_iter().flatten() {
            let e = merged.entry(nu).or_insert((0, 0, Vec::new()));
            if best > e.0 || e.2.is_empty() {
                e.0 = best;
                e.2 = example;
            }
            e.1 += configs;
        }
        Ok(merged
            .into_iter()
            .map(|(nu, (max_members, configurations, example))| CapacityRow {
                nu,
                bound: q * q * (q + 1 - nu as u64) + q * nu as u64,
                max_members,
                configurations,
                example,
            })
            .collect())
    }

    /// Pairwise intersecting lines of `PG(3, q)` pass through one point or
    /// lie in one plane; checked on all triples.
    pub fn pencil_or_plane(&self) -> Result<bool> {
        let meet = |a: usize, b: usize| -> Result<Submodule> { self.lines[a].intersect(&self.lines[b]) };
        let l = self.lines.len();
        let ok = (0..l).into_par_iter().map(|a| -> Result<bool> {
            for b in a + 1..l {
                let p = meet(a, b)?;
                if p.is_zero() {
                    continue;
                }
                let plane = self.lines[a].sum(&self.lines[b])?;
                for c in 0..l {
                    if c == a || c == b || meet(a, c)?.is_zero() || meet(b, c)?.is_zero() {
                        continue;
                    }
                    if !p.is_submodule_of(&self.lines[c]) && !self.lines[c].is_submodule_of(&plane) {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        });
        let results: Vec<bool> = ok.collect::<Result<_>>()?;
        Ok(results.into_iter().all(|x| x))
    }

    /// Exact maximum over all stripes, split by the image of the family:
    /// an intersecting family lies over the lines of one pencil or one
    /// plane of `PG(3, q)`, so the maximum is the largest of the maxima
    /// over those candidate sets.
    pub fn split_search(&self, graph: &Graph, budget: Budget) -> Result<SplitSearch> {
        let pencil_or_plane = self.pencil_or_plane()?;
        let mut parts = Vec::new();
        let mut best: Option<(usize, Vec<usize>)> = None;
        let mut status = Status::Exact;
        let mut nodes = 0;
        let groups = self
            .residue_points
            .iter()
            .map(|p| ("pencil", p))
            .chain(self.planes.iter().map(|p| ("plane", p)))
            .enumerate();
        for (idx, (kind, sub)) in groups {
            let candidates: Vec<usize> = (0..self.len())
                .filter(|&i| {
                    let line = &self.lines[self.class_of[i]];
                    if kind == "pencil" {
                        sub.is_submodule_of(line)
                    } else {
                        line.is_submodule_of(sub)
                    }
                })
                .collect();
            let r: SearchResult = max_clique(&graph.induced(&candidates), budget);
            nodes += r.nodes;
            if !r.is_exact() {
                status = Status::BoundOnly;
            }
            let local = if kind == "pencil" { idx } else { idx - self.residue_points.len() };
            parts.push((kind.to_string(), local, candidates.len(), r.size));
            let witness: Vec<usize> = r.witness.iter().map(|&i| candidates[i]).collect();
            let better = match &best {
                None => true,
                Some((s, w)) => r.size > *s || (r.size == *s && witness < *w),
            };
            if better {
                best = Some((r.size, witness));
            }
        }
        let (size, witness) = best.unwrap_or_default();
        if !pencil_or_plane {
            status = Status::BoundOnly;
        }
        Ok(SplitSearch { pencil_or_plane, size, witness, status, parts, nodes })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stripe_counts_over_z4() {
        let r = Ring::new(&"gr:p=2,r=1".parse().unwrap()).unwrap();
        let s = Stripes::new(&r).unwrap();
        assert_eq!(s.len(), 420);
        assert!(s.point_sets.iter().all(|p| p.count() == 12));
        assert_eq!(s.lines.len(), 35);
        assert!((0..35).all(|c| s.class(c).len() == 12));
        let h = unit_span(&r, 4, 0..3);
        let split = s.split_by_hyperplane(&h).unwrap();
        assert_eq!(split.in_class.len(), 84);
        assert_eq!(split.direction.len(), 28);
        assert_eq!(split.inside.len(), 7);
        assert!(split.inside.iter().all(|i| split.direction.contains(i)));
    }
}
