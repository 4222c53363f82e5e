use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::error::Result;

/// Simple undirected graph with bitset adjacency rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BitSet>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![BitSet::new(n); n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Edge `{u, v}` for every pair with `edge(u, v)`; pairs are evaluated in
    /// parallel, only for `u < v`.
    pub fn from_predicate<F>(n: usize, edge: F) -> Self
    where
        F: Fn(usize, usize) -> bool + Sync,
    {
        Self::try_from_predicate(n, |u, v| Ok(edge(u, v))).expect("infallible predicate")
    }

    pub fn try_from_predicate<F>(n: usize, edge: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> Result<bool> + Sync,
    {
        let upper: Vec<Vec<usize>> = (0..n)
            .into_par_iter()
            .map(|u| {
                let mut out = Vec::new();
                for v in u + 1..n {
                    if edge(u, v)? {
                        out.push(v);
                    }
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        let mut g = Self::new(n);
        for (u, row) in upper.into_iter().enumerate() {
            for v in row {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::count).sum::<usize>() / 2
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| vertices[i + 1..].iter().all(|&v| u != v && self.has_edge(u, v)))
    }

    /// Subgraph on `vertices`, relabeled `0..len` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let k = vertices.len();
        let mut g = Graph::new(k);
        for i in 0..k {
            for j in i + 1..k {
                if self.has_edge(vertices[i], vertices[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Vertices in degeneracy order: repeatedly remove a vertex of minimum
    /// remaining degree (lowest index on ties), then reverse, so the densest
    /// core comes first.
    pub fn degeneracy_order(&self) -> Vec<usize> {
        let n = self.len();
        let mut degree: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (degree[v], v)).expect("vertex left");
            removed[v] = true;
            order.push(v);
            for u in self.adj[v].iter() {
                if !removed[u] {
                    degree[u] -= 1;
                }
            }
        }
        order.reverse();
        order
    }
}
