//! Exact t-intersecting families of k-subsets of `[n]`.
//!
//! The symmetric group acts transitively on k-sets, so some maximum family
//! contains `A0 = {0, .., k-1}`. The stabilizer of `A0` acts transitively
//! on the sets meeting `A0` in exactly `j` points, so the search splits into
//! cases by the largest `j` that occurs: the family contains `A0` and a
//! fixed representative `B_j`, and no set meeting `A0` in more than `j`
//! points. The non-star condition is invariant under the group, so the same
//! split applies to it.

use num_traits::ToPrimitive;
use serde::Serialize;

use super::clique::{find_clique, max_clique_constrained, Budget, Constraint, Status, Unconstrained};
use super::graph::Graph;
use crate::counting::binomial;
use crate::error::{Error, Result};
use crate::linalg::combinations;

/// Largest number of k-sets handled exactly.
pub const MAX_SETS: usize = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetMode {
    Any,
    /// No t-set common to all members.
    NonStar,
}

#[derive(Clone, Debug, Serialize)]
pub struct SetCase {
    /// `|A0 ∩ B_j|`.
    pub j: usize,
    pub candidates: usize,
    /// Best family size in this case (0 when no admissible family).
    pub size: usize,
    pub status: Status,
    pub nodes: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SetEkrResult {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub mode: SetMode,
    pub size: usize,
    /// Members of a largest family, each sorted; the list is sorted.
    pub witness: Vec<Vec<usize>>,
    pub status: Status,
    pub nodes: u64,
    pub cases: Vec<SetCase>,
}

fn meet(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|x| b.contains(x)).count()
}

/// Intersection of `base` with every listed set.
fn common(base: &[usize], sets: &[&[usize]]) -> Vec<usize> {
    base.iter().copied().filter(|x| sets.iter().all(|s| s.contains(x))).collect()
}

struct NonStar<'a> {
    sets: &'a [Vec<usize>],
    /// Original set index of each vertex of the case graph.
    vertex: &'a [usize],
    base: Vec<usize>,
    t: usize,
}

impl Constraint for NonStar<'_> {
    fn accept(&self, clique: &[usize]) -> bool {
        let members: Vec<&[usize]> = clique.iter().map(|&v| self.sets[self.vertex[v]].as_slice()).collect();
        common(&self.base, &members).len() < self.t
    }

    fn prune(&self, clique: &[usize], candidates: &[usize]) -> bool {
        let members: Vec<&[usize]> =
            clique.iter().chain(candidates).map(|&v| self.sets[self.vertex[v]].as_slice()).collect();
        common(&self.base, &members).len() >= self.t
    }
}

struct Setup {
    sets: Vec<Vec<usize>>,
}

impl Setup {
    fn new(n: usize, k: usize, t: usize) -> Result<Self> {
        if !(1 <= t && t <= k && k <= n) {
            return Err(Error::InvalidParameters(format!("need 1 <= t <= k <= n, got n={n}, k={k}, t={t}")));
        }
        let count = binomial(n as i64, k as i64).to_usize().unwrap_or(usize::MAX);
        if count > MAX_SETS {
            return Err(Error::TooLarge(format!("C({n},{k}) = {count} k-sets (limit {MAX_SETS})")));
        }
        Ok(Setup { sets: combinations(n, k) })
    }

    /// `(j, B_j, case vertices)` for each case, largest `j` first.
    fn cases(&self, n: usize, k: usize, t: usize) -> Vec<(usize, Vec<usize>, Vec<usize>)> {
        let a0 = &self.sets[0];
        let mut out = Vec::new();
        for j in (t..k).rev() {
            if 2 * k - j > n {
                continue;
            }
            let mut b: Vec<usize> = (0..j).collect();
            b.extend(k..2 * k - j);
            let vertices = (0..self.sets.len())
                .filter(|&v| {
                    let s = &self.sets[v];
                    let ja = meet(s, a0);
                    s != a0 && s != &b && ja >= t && ja <= j && meet(s, &b) >= t
                })
                .collect();
            out.push((j, b, vertices));
        }
        out
    }

    fn graph(&self, vertices: &[usize], t: usize) -> Graph {
        Graph::from_predicate(vertices.len(), |u, v| meet(&self.sets[vertices[u]], &self.sets[vertices[v]]) >= t)
    }
}

/// Largest t-intersecting family of k-subsets of `[n]` (without a common
/// t-set in `NonStar` mode).
pub fn set_ekr_oracle(n: usize, k: usize, t: usize, mode: SetMode, budget: Budget) -> Result<SetEkrResult> {
    let setup = Setup::new(n, k, t)?;
    let a0 = setup.sets[0].clone();
    let mut best: (usize, Vec<Vec<usize>>) = match mode {
        SetMode::Any => (1, vec![a0.clone()]),
        SetMode::NonStar => (0, Vec::new()),
    };
    let mut status = Status::Exact;
    let mut nodes = 0;
    let mut cases = Vec::new();
    for (j, b, vertices) in setup.cases(n, k, t) {
        let g = setup.graph(&vertices, t);
        let constraint = NonStar { sets: &setup.sets, vertex: &vertices, base: common(&a0, &[&b]), t };
        let r = match mode {
            SetMode::Any => max_clique_constrained(&g, budget, &Unconstrained),
            SetMode::NonStar => max_clique_constrained(&g, budget, &constraint),
        };
        nodes += r.nodes;
        if !r.is_exact() {
            status = Status::BoundOnly;
        }
        let admissible = mode == SetMode::Any || constraint.accept(&r.witness);
        let size = if admissible { r.size + 2 } else { 0 };
        cases.push(SetCase { j, candidates: vertices.len(), size, status: r.status, nodes: r.nodes });
        if size > best.0 {
            let mut witness: Vec<Vec<usize>> = vec![a0.clone(), b.clone()];
            witness.extend(r.witness.iter().map(|&v| setup.sets[vertices[v]].clone()));
            witness.sort();
            best = (size, witness);
        }
    }
    Ok(SetEkrResult { n, k, t, mode, size: best.0, witness: best.1, status, nodes, cases })
}

/// A t-intersecting family of at least `size` k-sets with no common t-set,
/// if one exists.
pub fn non_star_family_of_size(n: usize, k: usize, t: usize, size: usize, budget: Budget) -> Result<(Option<Vec<Vec<usize>>>, Status)> {
    let setup = Setup::new(n, k, t)?;
    let a0 = setup.sets[0].clone();
    let mut status = Status::Exact;
    if size <= 2 {
        // two distinct sets share at most k-1 < ... points only when t <= k-1
        let r = set_ekr_oracle(n, k, t, SetMode::NonStar, budget)?;
        return Ok(((r.size >= size).then_some(r.witness), r.status));
    }
    for (_, b, vertices) in setup.cases(n, k, t) {
        let g = setup.graph(&vertices, t);
        let constraint = NonStar { sets: &setup.sets, vertex: &vertices, base: common(&a0, &[&b]), t };
        let (found, s) = find_clique(&g, size - 2, budget, &constraint);
        if let Some(clique) = found {
            let mut family = vec![a0.clone(), b.clone()];
            family.extend(clique.iter().map(|&v| setup.sets[vertices[v]].clone()));
            family.sort();
            return Ok((Some(family), Status::Exact));
        }
        if s == Status::BoundOnly {
            status = Status::BoundOnly;
        }
    }
    Ok((None, status))
}

/// The full t-intersection graph on all k-subsets, in lexicographic order.
pub fn set_graph(n: usize, k: usize, t: usize) -> Result<(Vec<Vec<usize>>, Graph)> {
    let setup = Setup::new(n, k, t)?;
    let all: Vec<usize> = (0..setup.sets.len()).collect();
    let g = setup.graph(&all, t);
    Ok((setup.sets, g))
}

pub fn is_t_intersecting(family: &[Vec<usize>], t: usize) -> bool {
    family.iter().enumerate().all(|(i, a)| family[i + 1..].iter().all(|b| meet(a, b) >= t))
}

pub fn has_common_t_set(family: &[Vec<usize>], t: usize) -> bool {
    match family.first() {
        Some(first) => {
            let members: Vec<&[usize]> = family.iter().map(|s| s.as_slice()).collect();
            common(first, &members).len() >= t
        }
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{all_maximum_cliques, max_clique};

    #[test]
    fn agrees_with_plain_search_on_small_cases() {
        for n in 2..=8 {
            for k in 1..=n.min(4) {
                for t in 1..=k {
                    let (sets, g) = set_graph(n, k, t).unwrap();
                    let plain = max_clique(&g, Budget::UNLIMITED);
                    let r = set_ekr_oracle(n, k, t, SetMode::Any, Budget::UNLIMITED).unwrap();
                    assert_eq!(r.size, plain.size, "n={n} k={k} t={t}");
                    assert!(is_t_intersecting(&r.witness, t));
                    assert_eq!(r.witness.len(), r.size);
                    // non-star maximum against a filtered enumeration of all maximal
                    // families is expensive; compare with a constrained plain search
                    struct Plain<'a>(&'a [Vec<usize>], usize);
                    impl Constraint for Plain<'_> {
                        fn accept(&self, c: &[usize]) -> bool {
                            let fam: Vec<Vec<usize>> = c.iter().map(|&v| self.0[v].clone()).collect();
                            !has_common_t_set(&fam, self.1)
                        }
                    }
                    let ns_plain = max_clique_constrained(&g, Budget::UNLIMITED, &Plain(&sets, t));
                    let ns_plain = if ns_plain.witness.is_empty() || !Plain(&sets, t).accept(&ns_plain.witness) {
                        0
                    } else {
                        ns_plain.size
                    };
                    let ns = set_ekr_oracle(n, k, t, SetMode::NonStar, Budget::UNLIMITED).unwrap();
                    assert_eq!(ns.size, ns_plain, "non-star n={n} k={k} t={t}");
                    if ns.size > 0 {
                        assert!(!has_common_t_set(&ns.witness, t));
                    }
                }
            }
        }
    }

    #[test]
    fn classical_values() {
        assert_eq!(set_ekr_oracle(6, 3, 1, SetMode::Any, Budget::UNLIMITED).unwrap().size, 10);
        assert_eq!(set_ekr_oracle(7, 3, 1, SetMode::NonStar, Budget::UNLIMITED).unwrap().size, 13);
        assert_eq!(set_ekr_oracle(5, 2, 2, SetMode::Any, Budget::UNLIMITED).unwrap().size, 1);
        let (_, g) = set_graph(6, 3, 1).unwrap();
        let (_, all) = all_maximum_cliques(&g, Budget::UNLIMITED);
        // one set from each complementary pair
        assert_eq!(all.len(), 1024);
        let (none, status) = non_star_family_of_size(7, 3, 1, 15, Budget::UNLIMITED).unwrap();
        assert!(none.is_none());
        assert_eq!(status, Status::Exact);
        let (some, _) = non_star_family_of_size(7, 3, 1, 13, Budget::UNLIMITED).unwrap();
        assert_eq!(some.unwrap().len(), 13);
        assert!(matches!(set_ekr_oracle(20, 10, 1, SetMode::Any, Budget::UNLIMITED), Err(Error::TooLarge(_))));
    }
}
