//! Search instances registered by id: each builds an intersection graph,
//! runs the exact search and reports the result next to the relevant
//! bounds and constructions.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::clique::{max_clique, Budget, SearchResult, Status};
use super::graph::Graph;
use super::set_ekr::{set_ekr_oracle, SetMode};
use crate::error::{Error, Result};
use crate::families::constructions::problem;
use crate::families::stripes::{unit_span, Stripes};
use crate::families::{construction_registry, evaluate_bound, FamilyProblem};
use crate::geometry::Geometry;
use crate::module::Submodule;
use crate::registry::{Named, Params, Registry};

/// Largest candidate set searched exactly.
pub const MAX_VERTICES: usize = 6000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub name: String,
    pub value: String,
}

/// One search result; serialized as a line of the results log.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Outcome {
    pub instance: String,
    /// SHA-256 of the instance id, parameters and adjacency rows.
    pub hash: String,
    pub vertices: usize,
    pub edges: usize,
    pub size: usize,
    pub upper_bound: usize,
    pub status: Status,
    pub nodes: u64,
    pub elapsed_ms: u64,
    pub witness: Vec<String>,
    pub comparisons: Vec<Comparison>,
}

impl Outcome {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn comparison(&self, name: &str) -> Option<&str> {
        self.comparisons.iter().find(|c| c.name == name).map(|c| c.value.as_str())
    }
}

pub trait Instance: Named + Send + Sync {
    fn params(&self) -> &'static [&'static str];

    fn solve(&self, params: &Params, budget: Budget) -> Result<Outcome>;
}

pub fn graph_hash(descriptor: &str, graph: &Graph) -> String {
    let mut h = Sha256::new();
    h.update(descriptor.as_bytes());
    h.update((graph.len() as u64).to_le_bytes());
    for v in 0..graph.len() {
        for w in graph.neighbors(v).words() {
            h.update(w.to_le_bytes());
        }
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Compact one-line form of a submodule: canonical rows, entries `a0:a1`.
pub fn label(sub: &Submodule) -> String {
    let ring = sub.ring();
    let rows: Vec<String> = sub
        .rows()
        .iter()
        .map(|row| row.iter().map(|&x| format!("{}:{}", ring.digit0(x), ring.digit1(x))).collect::<Vec<_>>().join(" "))
        .collect();
    format!("[{}]", rows.join("; "))
}

fn bound_comparison(out: &mut Vec<Comparison>, name: &str, id: &str, p: &Params) {
    if let Ok(v) = evaluate_bound(id, p) {
        out.push(Comparison { name: name.to_string(), value: v.to_string() });
    }
}

fn construction_comparison(out: &mut Vec<Comparison>, id: &str, p: &Params) {
    if let Ok(f) = construction_registry().get(id).and_then(|c| c.build(p)) {
        out.push(Comparison { name: format!("construction:{id}"), value: f.len().to_string() });
    }
}

fn descriptor(id: &str, p: &Params) -> String {
    format!("{id}({p})")
}

fn outcome(
    instance: String,
    graph: &Graph,
    r: SearchResult,
    witness: Vec<String>,
    comparisons: Vec<Comparison>,
    start: Instant,
) -> Outcome {
    Outcome {
        hash: graph_hash(&instance, graph),
        instance,
        vertices: graph.len(),
        edges: graph.edge_count(),
        size: r.size,
        upper_bound: r.upper_bound,
        status: r.status,
        nodes: r.nodes,
        elapsed_ms: start.elapsed().as_millis() as u64,
        witness,
        comparisons,
    }
}

/// Intersection graph of the admissible members of `problem`.
pub fn problem_graph(problem: &FamilyProblem, candidates: &[Submodule]) -> Result<Graph> {
    if candidates.len() > MAX_VERTICES {
        return Err(Error::TooLarge(format!("{} candidates (limit {MAX_VERTICES})", candidates.len())));
    }
    Graph::try_from_predicate(candidates.len(), |u, v| problem.edge(&candidates[u], &candidates[v]))
}

fn subspace_instance(id: &str, p: &Params, avoid: bool, budget: Budget) -> Result<Outcome> {
    let start = Instant::now();
    let ring = p.ring()?;
    let (n, k, t) = (p.usize("n")?, p.usize("k")?, p.usize("t")?);
    if !(1 <= t && t <= k && k < n) {
        return Err(Error::InvalidParameters(format!("need 1 <= t <= k < n, got n={n}, k={k}, t={t}")));
    }
    let mut prob = problem(&ring, n, k, t)?;
    if avoid {
        prob = prob.with_avoid(unit_span(&ring, n, k..n), 1)?;
    }
    let geometry = Geometry::new(&ring, n)?;
    let all = geometry.hjelmslev_subspaces(k);
    if all.len() > MAX_VERTICES {
        return Err(Error::TooLarge(format!("{} subspaces (limit {MAX_VERTICES})", all.len())));
    }
    let mut candidates = Vec::new();
    for s in all {
        if prob.admits(&s)? {
            candidates.push(s);
        }
    }
    let graph = problem_graph(&prob, &candidates)?;
    let r = max_clique(&graph, budget);
    let witness = r.witness.iter().map(|&i| label(&candidates[i])).collect();
    let bp = Params::new()
        .with("q", ring.q() as u64)
        .with("m", ring.length() as u64)
        .with("n", n as u64)
        .with("k", k as u64)
        .with("t", t as u64);
    let mut cmp = Vec::new();
    if avoid {
        bound_comparison(&mut cmp, "bound:tanaka-phg", "tanaka-phg", &bp);
        construction_comparison(&mut cmp, "tanaka-through", p);
        construction_comparison(&mut cmp, "tanaka-inside", p);
    } else {
        if ring.length() == 1 {
            let hp = Params::new().with("q", ring.q() as u64).with("n", n as u64).with("k", k as u64).with("t", t as u64);
            bound_comparison(&mut cmp, "bound:hsieh", "hsieh", &hp);
        }
        bound_comparison(&mut cmp, "bound:hjelmslev-ekr", "hjelmslev-ekr", &bp);
        construction_comparison(&mut cmp, "canonical", p);
        construction_comparison(&mut cmp, "codual", p);
    }
    Ok(outcome(descriptor(id, p), &graph, r, witness, cmp, start))
}

struct Subspaces;
struct AvoidingSubspaces;
struct SetEkr;
struct StripesFull;
struct StripesSplit;

impl Named for Subspaces {
    fn id(&self) -> &'static str {
        "subspaces"
    }
    fn summary(&self) -> &'static str {
        "t-intersecting Hjelmslev (k-1)-spaces of PHG(n-1,R); PG(n-1,q) over a field"
    }
}

impl Instance for Subspaces {
    fn params(&self) -> &'static [&'static str] {
        &["ring", "n", "k", "t"]
    }
    fn solve(&self, p: &Params, budget: Budget) -> Result<Outcome> {
        subspace_instance(self.id(), p, false, budget)
    }
}

impl Named for AvoidingSubspaces {
    fn id(&self) -> &'static str {
        "subspaces-avoiding"
    }
    fn summary(&self) -> &'static str {
        "as `subspaces`, restricted to members avoiding the neighbor class of span(e_k..e_n)"
    }
}

impl Instance for AvoidingSubspaces {
    fn params(&self) -> &'static [&'static str] {
        &["ring", "n", "k", "t"]
    }
    fn solve(&self, p: &Params, budget: Budget) -> Result<Outcome> {
        subspace_instance(self.id(), p, true, budget)
    }
}

impl Named for SetEkr {
    fn id(&self) -> &'static str {
        "set-ekr"
    }
    fn summary(&self) -> &'static str {
        "t-intersecting k-subsets of [n]; flag non-star forbids a common t-set"
    }
}

impl Instance for SetEkr {
    fn params(&self) -> &'static [&'static str] {
        &["n", "k", "t", "non-star"]
    }
    fn solve(&self, p: &Params, budget: Budget) -> Result<Outcome> {
        let start = Instant::now();
        let (n, k, t) = (p.usize("n")?, p.usize("k")?, p.get_or("t", 1) as usize);
        let mode = if p.flag("non-star") { SetMode::NonStar } else { SetMode::Any };
        let r = set_ekr_oracle(n, k, t, mode, budget)?;
        let bp = Params::new().with("n", n as u64).with("k", k as u64).with("t", t as u64);
        let mut cmp = Vec::new();
        match mode {
            SetMode::Any => {
                bound_comparison(&mut cmp, "bound:ekr", "ekr", &bp);
                bound_comparison(&mut cmp, "bound:ekr1", "ekr1", &bp);
            }
            SetMode::NonStar if t == 1 => bound_comparison(&mut cmp, "bound:hm", "hm", &bp),
            SetMode::NonStar => {}
        }
        let instance = descriptor(self.id(), p);
        let mut h = Sha256::new();
        h.update(instance.as_bytes());
        let case_vertices: usize = r.cases.iter().map(|c| c.candidates).sum();
        Ok(Outcome {
            hash: h.finalize().iter().map(|b| format!("{b:02x}")).collect(),
            instance,
            vertices: case_vertices,
            edges: 0,
            size: r.size,
            upper_bound: r.size,
            status: r.status,
            nodes: r.nodes,
            elapsed_ms: start.elapsed().as_millis() as u64,
            witness: r
                .witness
                .iter()
                .map(|s| format!("{{{}}}", s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
                .collect(),
            comparisons: cmp,
        })
    }
}

fn stripe_comparisons(s: &Stripes, p: &Params) -> Vec<Comparison> {
    let q = Params::new().with("q", s.q());
    let mut cmp = Vec::new();
    bound_comparison(&mut cmp, "bound:stripes-plane", "stripes-plane", &q);
    bound_comparison(&mut cmp, "bound:stripes-hyperplane", "stripes-hyperplane", &q.clone().with("k", 2));
    bound_comparison(&mut cmp, "bound:stripes-pencil", "stripes-pencil", &q);
    construction_comparison(&mut cmp, "stripes", p);
    construction_comparison(&mut cmp, "pencil-stripes", p);
    cmp
}

impl Named for StripesFull {
    fn id(&self) -> &'static str {
        "stripes"
    }
    fn summary(&self) -> &'static str {
        "intersecting stripes of PHG(3,R), exact search over all stripes"
    }
}

impl Instance for StripesFull {
    fn params(&self) -> &'static [&'static str] {
        &["ring"]
    }
    fn solve(&self, p: &Params, budget: Budget) -> Result<Outcome> {
        let start = Instant::now();
        let s = Stripes::new(&p.ring()?)?;
        if s.len() > MAX_VERTICES {
            return Err(Error::TooLarge(format!("{} stripes (limit {MAX_VERTICES}); try stripes-split", s.len())));
        }
        let graph = s.graph();
        let r = max_clique(&graph, budget);
        let witness = r.witness.iter().map(|&i| label(&s.stripes[i])).collect();
        Ok(outcome(descriptor(self.id(), p), &graph, r, witness, stripe_comparisons(&s, p), start))
    }
}

impl Named for StripesSplit {
    fn id(&self) -> &'static str {
        "stripes-split"
    }
    fn summary(&self) -> &'static str {
        "intersecting stripes, searched per pencil and per plane of the factor geometry"
    }
}

impl Instance for StripesSplit {
    fn params(&self) -> &'static [&'static str] {
        &["ring"]
    }
    fn solve(&self, p: &Params, budget: Budget) -> Result<Outcome> {
        let start = Instant::now();
        let s = Stripes::new(&p.ring()?)?;
        let graph = s.graph();
        let split = s.split_search(&graph, budget)?;
        let r = SearchResult {
            size: split.size,
            witness: split.witness.clone(),
            status: split.status,
            upper_bound: split.size,
            nodes: split.nodes,
            elapsed: start.elapsed(),
        };
        let witness = split.witness.iter().map(|&i| label(&s.stripes[i])).collect();
        let mut cmp = stripe_comparisons(&s, p);
        cmp.push(Comparison { name: "pencil-or-plane".into(), value: split.pencil_or_plane.to_string() });
        Ok(outcome(descriptor(self.id(), p), &graph, r, witness, cmp, start))
    }
}

pub fn instance_registry() -> Registry<dyn Instance> {
    let mut r: Registry<dyn Instance> = Registry::new("search instance");
    let entries: Vec<Box<dyn Instance>> =
        vec![Box::new(Subspaces), Box::new(AvoidingSubspaces), Box::new(SetEkr), Box::new(StripesFull), Box::new(StripesSplit)];
    for e in entries {
        r.register(e).expect("unique ids");
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(id: &str, p: &str) -> Outcome {
        instance_registry().get(id).unwrap().solve(&p.parse().unwrap(), Budget::UNLIMITED).unwrap()
    }

    #[test]
    fn pg_lines() {
        let o = solve("subspaces", "ring=gf:q=2;n=4;k=2;t=1");
        assert_eq!(o.vertices, 35);
        assert_eq!(o.size, 7);
        assert_eq!(o.status, Status::Exact);
        assert_eq!(o.comparison("bound:hsieh"), Some("7"));
        assert_eq!(o.comparison("construction:canonical"), Some("7"));
    }

    #[test]
    fn deterministic_hash() {
        let a = solve("subspaces", "ring=gf:q=2;n=4;k=2;t=1");
        let b = solve("subspaces", "ring=gf:q=2;n=4;k=2;t=1");
        assert_eq!(a.hash, b.hash);
        assert_eq!(a.witness, b.witness);
        let c = solve("subspaces", "ring=gf:q=3;n=4;k=2;t=1");
        assert_ne!(a.hash, c.hash);
        let line = a.to_json_line();
        let back: Outcome = serde_json::from_str(&line).unwrap();
        assert_eq!(back.size, 7);
    }

    #[test]
    fn set_ekr() {
        let o = solve("set-ekr", "n=7,k=3,t=1,non-star");
        assert_eq!(o.size, 13);
        assert_eq!(o.comparison("bound:hm"), Some("13"));
        assert!(instance_registry().get("nope").is_err());
    }
}
