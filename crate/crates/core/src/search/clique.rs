//! Exact maximum clique by branch and bound.
//!
//! Vertices are relabeled in degeneracy order and candidate sets are bitsets.
//! Each node colors its candidates greedily (color classes are independent
//! sets, so `|clique| + color` bounds any extension) and branches on
//! vertices from the highest color down, skipping vertices whose color
//! cannot beat the incumbent. The search is sequential and deterministic.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// The search finished; no larger clique exists.
    Exact,
    /// The node budget ran out; `size` is a lower bound only.
    BoundOnly,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub size: usize,
    /// Sorted vertex indices of a clique of `size` vertices.
    pub witness: Vec<usize>,
    pub status: Status,
    /// Upper bound on the clique number: `size` when exact, otherwise the
    /// root coloring bound.
    pub upper_bound: usize,
    pub nodes: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SearchResult {
    pub fn is_exact(&self) -> bool {
        self.status == Status::Exact
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget { max_nodes: None };

    pub fn nodes(n: u64) -> Self {
        Budget { max_nodes: Some(n) }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::UNLIMITED
    }
}

/// Restricts which cliques count as solutions.
///
/// `accept` must be monotone: if a clique is accepted, so is every clique
/// containing it. `prune` may report that no accepted clique contains
/// `clique` and lies within `clique ∪ candidates`.
pub trait Constraint: Sync {
    fn accept(&self, clique: &[usize]) -> bool {
        let _ = clique;
        true
    }

    fn prune(&self, clique: &[usize], candidates: &[usize]) -> bool {
        let _ = (clique, candidates);
        false
    }
}

pub struct Unconstrained;

impl Constraint for Unconstrained {}

enum Mode {
    /// Find a maximum clique; with `stop_at`, only cliques of at least that
    /// size matter and the search stops at the first one.
    Maximum { stop_at: Option<usize> },
    /// Collect every clique with exactly `size` vertices.
    AllOfSize { size: usize, limit: usize },
}

struct Solver<'a> {
    words: usize,
    adj: Vec<Vec<u64>>,
    label: Vec<usize>,
    constraint: &'a dyn Constraint,
    mode: Mode,
    clique: Vec<usize>,
    best: Vec<usize>,
    found: Vec<Vec<usize>>,
    nodes: u64,
    max_nodes: u64,
    aborted: bool,
    done: bool,
}

#[inline]
fn first_bit(set: &[u64]) -> Option<usize> {
    set.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
}

fn bits(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let t = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + t)
        })
    })
}

impl<'a> Solver<'a> {
    fn new(graph: &Graph, constraint: &'a dyn Constraint, mode: Mode, budget: Budget) -> Self {
        let n = graph.len();
        let label = graph.degeneracy_order();
        let mut position = vec![0; n];
        for (i, &v) in label.iter().enumerate() {
            position[v] = i;
        }
        let words = n.div_ceil(64);
        let adj = label
            .iter()
            .map(|&v| {
                let mut row = vec![0u64; words];
                for u in graph.neighbors(v).iter() {
                    let p = position[u];
                    row[p / 64] |= 1 << (p % 64);
                }
                row
            })
            .collect();
        Solver {
            words,
            adj,
            label,
            constraint,
            mode,
            clique: Vec::new(),
            best: Vec::new(),
            found: Vec::new(),
            nodes: 0,
            max_nodes: budget.max_nodes.unwrap_or(u64::MAX),
            aborted: false,
            done: false,
        }
    }

    fn original(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&v| self.label[v]).collect();
        out.sort_unstable();
        out
    }

    fn full_set(&self) -> Vec<u64> {
        let n = self.label.len();
        let mut p = vec![0u64; self.words];
        for v in 0..n {
            p[v / 64] |= 1 << (v % 64);
        }
        p
    }

    /// Number of greedy color classes of `set`.
    fn coloring_bound(&self, set: &[u64]) -> usize {
        let mut uncolored = set.to_vec();
        let mut colors = 0;
        while uncolored.iter().any(|&w| w != 0) {
            colors += 1;
            let mut q = uncolored.clone();
            while let Some(v) = first_bit(&q) {
                uncolored[v / 64] &= !(1 << (v % 64));
                for (a, b) in q.iter_mut().zip(&self.adj[v]) {
                    *a &= !b;
                }
                q[v / 64] &= !(1 << (v % 64));
            }
        }
        colors
    }

    /// Smallest clique size that still matters.
    fn needed(&self) -> usize {
        match self.mode {
            Mode::Maximum { stop_at } => (self.best.len() + 1).max(stop_at.unwrap_or(0)),
            Mode::AllOfSize { size, .. } => size,
        }
    }

    fn record(&mut self) {
        match self.mode {
            Mode::Maximum { stop_at } => {
                if self.clique.len() > self.best.len() {
                    let orig = self.original(&self.clique);
                    if self.constraint.accept(&orig) {
                        self.best = self.clique.clone();
                        if stop_at.is_some_and(|s| self.best.len() >= s) {
                            self.done = true;
                        }
                    }
                }
            }
            Mode::AllOfSize { size, limit } => {
                if self.clique.len() == size {
                    let orig = self.original(&self.clique);
                    if self.constraint.accept(&orig) {
                        self.found.push(orig);
                        if self.found.len() >= limit {
                            self.done = true;
                        }
                    }
                }
            }
        }
    }

    fn expand(&mut self, p: &mut Vec<u64>) {
        // greedy coloring; only vertices that can still matter are branched on
        let need = self.needed();
        let kmin = need.saturating_sub(self.clique.len());
        let mut branch: Vec<(usize, usize)> = Vec::new();
        let mut uncolored = p.clone();
        let mut color = 0;
        while uncolored.iter().any(|&w| w != 0) {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = first_bit(&q) {
                uncolored[v / 64] &= !(1 << (v % 64));
                for (a, b) in q.iter_mut().zip(&self.adj[v]) {
                    *a &= !b;
                }
                q[v / 64] &= !(1 << (v % 64));
                if color >= kmin {
                    branch.push((v, color));
                }
            }
        }
        for &(v, col) in branch.iter().rev() {
            if self.clique.len() + col < self.needed() {
                return;
            }
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                self.aborted = true;
            }
            if self.aborted || self.done {
                return;
            }
            self.clique.push(v);
            let mut next: Vec<u64> = p.iter().zip(&self.adj[v]).map(|(a, b)| a & b).collect();
            self.record();
            let at_size = matches!(self.mode, Mode::AllOfSize { size, .. } if self.clique.len() >= size);
            if !self.done && !at_size && next.iter().any(|&w| w != 0) {
                let prune = {
                    let clique = self.original(&self.clique);
                    let cands: Vec<usize> = bits(&next).map(|u| self.label[u]).collect();
                    self.constraint.prune(&clique, &cands)
                };
                if !prune {
                    self.expand(&mut next);
                }
            }
            self.clique.pop();
            p[v / 64] &= !(1 << (v % 64));
            if self.aborted || self.done {
                return;
            }
        }
    }

    /// Greedy clique in relabeled order, used to seed the incumbent.
    fn greedy_seed(&mut self) {
        let mut p = self.full_set();
        let mut clique = Vec::new();
        while let Some(v) = first_bit(&p) {
            clique.push(v);
            for (a, b) in p.iter_mut().zip(&self.adj[v]) {
                *a &= b;
            }
        }
        let orig = self.original(&clique);
        if clique.len() > self.best.len() && self.constraint.accept(&orig) {
            self.best = clique;
        }
    }
}

fn run_maximum(graph: &Graph, budget: Budget, constraint: &dyn Constraint, stop_at: Option<usize>, seed: bool) -> SearchResult {
    let start = Instant::now();
    let mut solver = Solver::new(graph, constraint, Mode::Maximum { stop_at }, budget);
    let mut p = solver.full_set();
    let root_bound = solver.coloring_bound(&p);
    if seed {
        solver.greedy_seed();
    }
    if stop_at.is_some_and(|s| solver.best.len() >= s) {
        solver.done = true;
    }
    if !solver.done && !graph.is_empty() {
        solver.expand(&mut p);
    }
    let witness = solver.original(&solver.best);
    let status = if solver.aborted { Status::BoundOnly } else { Status::Exact };
    SearchResult {
        size: witness.len(),
        upper_bound: if status == Status::Exact && !solver.done { witness.len() } else { root_bound.max(witness.len()) },
        witness,
        status,
        nodes: solver.nodes,
        elapsed: start.elapsed(),
    }
}

/// Maximum clique of `graph`.
pub fn max_clique(graph: &Graph, budget: Budget) -> SearchResult {
    run_maximum(graph, budget, &Unconstrained, None, true)
}

/// Maximum clique among those accepted by `constraint`.
pub fn max_clique_constrained(graph: &Graph, budget: Budget, constraint: &dyn Constraint) -> SearchResult {
    run_maximum(graph, budget, constraint, None, true)
}

/// Some clique with at least `size` vertices, if one exists. `status` is
/// `BoundOnly` when the budget ran out before the question was settled.
pub fn find_clique(graph: &Graph, size: usize, budget: Budget, constraint: &dyn Constraint) -> (Option<Vec<usize>>, Status) {
    if size == 0 {
        return (Some(Vec::new()), Status::Exact);
    }
    let result = run_maximum(graph, budget, constraint, Some(size), true);
    let found = (result.size >= size).then_some(result.witness);
    let status = if found.is_some() { Status::Exact } else { result.status };
    (found, status)
}

/// Every clique with exactly `size` vertices (at most `limit`), each as a
/// sorted vertex list, in discovery order.
pub fn all_cliques_of_size(graph: &Graph, size: usize, limit: usize, budget: Budget) -> (Vec<Vec<usize>>, Status) {
    let mut solver = Solver::new(graph, &Unconstrained, Mode::AllOfSize { size, limit }, budget);
    if size == 0 {
        return (vec![Vec::new()], Status::Exact);
    }
    let mut p = solver.full_set();
    if !graph.is_empty() {
        solver.expand(&mut p);
    }
    let mut found = solver.found;
    found.sort();
    (found, if solver.aborted { Status::BoundOnly } else { Status::Exact })
}

/// All maximum cliques, sorted lexicographically.
pub fn all_maximum_cliques(graph: &Graph, budget: Budget) -> (SearchResult, Vec<Vec<usize>>) {
    let result = max_clique(graph, budget);
    if !result.is_exact() {
        return (result, Vec::new());
    }
    let (all, _) = all_cliques_of_size(graph, result.size, usize::MAX, budget);
    (result, all)
}

/// The lexicographically least clique of `size` vertices (comparing sorted
/// vertex lists), built vertex by vertex with decision searches.
pub fn lex_least_clique(graph: &Graph, size: usize, budget: Budget) -> Option<Vec<usize>> {
    let n = graph.len();
    let mut chosen: Vec<usize> = Vec::new();
    let mut candidates: Vec<usize> = (0..n).collect();
    while chosen.len() < size {
        let need = size - chosen.len() - 1;
        let mut picked = None;
        for (i, &v) in candidates.iter().enumerate() {
            let rest: Vec<usize> = candidates[i + 1..].iter().copied().filter(|&u| graph.has_edge(v, u)).collect();
            if rest.len() < need {
                continue;
            }
            let (found, _) = find_clique(&graph.induced(&rest), need, budget, &Unconstrained);
            if found.is_some() {
                picked = Some((v, rest));
                break;
            }
        }
        let (v, rest) = picked?;
        chosen.push(v);
        candidates = rest;
    }
    Some(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    /// Exhaustive clique number for small graphs.
    fn brute_force(g: &Graph) -> usize {
        let n = g.len();
        (0u32..1 << n)
            .filter(|mask| {
                let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                g.is_clique(&vs)
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn small_graphs() {
        let k5 = Graph::complete(5);
        let r = max_clique(&k5, Budget::UNLIMITED);
        assert_eq!((r.size, r.status), (5, Status::Exact));
        assert_eq!(max_clique(&Graph::new(0), Budget::UNLIMITED).size, 0);
        assert_eq!(max_clique(&Graph::new(3), Budget::UNLIMITED).size, 1);
        assert_eq!(max_clique(&cycle(5), Budget::UNLIMITED).size, 2);
    }

    #[test]
    fn agrees_with_brute_force_on_pseudo_random_graphs() {
        let mut state = 0x2545_f491_4f6c_dd1du64;
        for n in [8usize, 12, 16] {
            for density in [30u64, 60, 85] {
                let g = Graph::from_predicate(n, |u, v| {
                    let h = (u as u64 * 7919 + v as u64 * 104_729) ^ state;
                    h.wrapping_mul(0x9e37_79b9_7f4a_7c15) % 100 < density
                });
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                let r = max_clique(&g, Budget::UNLIMITED);
                assert_eq!(r.size, brute_force(&g));
                assert!(g.is_clique(&r.witness));
                let (all, _) = all_cliques_of_size(&g, r.size, usize::MAX, Budget::UNLIMITED);
                assert!(!all.is_empty());
                assert!(all.iter().all(|c| g.is_clique(c) && c.len() == r.size));
                let lex = lex_least_clique(&g, r.size, Budget::UNLIMITED).unwrap();
                assert_eq!(&lex, all.iter().min().unwrap());
            }
        }
    }

    #[test]
    fn budget_gives_bound_only() {
        let g = Graph::from_predicate(90, |u, v| ((u as u64 * 7919) ^ (v as u64 * 104_729)).wrapping_mul(0x9e37_79b9_7f4a_7c15) % 100 < 75);
        let r = max_clique(&g, Budget::nodes(2));
        assert_eq!(r.status, Status::BoundOnly);
        assert!(r.upper_bound >= r.size);
        let exact = max_clique(&g, Budget::UNLIMITED);
        assert!(r.upper_bound >= exact.size);
    }

    struct MustContain(usize);

    impl Constraint for MustContain {
        fn accept(&self, clique: &[usize]) -> bool {
            clique.contains(&self.0)
        }
    }

    #[test]
    fn constraint_restricts_solutions() {
        // triangle 0-1-2 plus a pendant edge 3-4
        let mut g = Graph::new(5);
        for (u, v) in [(0, 1), (1, 2), (0, 2), (3, 4)] {
            g.add_edge(u, v);
        }
        assert_eq!(max_clique(&g, Budget::UNLIMITED).size, 3);
        let r = max_clique_constrained(&g, Budget::UNLIMITED, &MustContain(4));
        assert_eq!(r.witness, vec![3, 4]);
        let (c, status) = find_clique(&g, 3, Budget::UNLIMITED, &Unconstrained);
        assert_eq!((c, status), (Some(vec![0, 1, 2]), Status::Exact));
        assert_eq!(find_clique(&g, 4, Budget::UNLIMITED, &Unconstrained).0, None);
    }
}
