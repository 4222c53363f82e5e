//! Exact maximum clique search over intersection graphs.

pub mod clique;
pub mod graph;
pub mod instances;
pub mod set_ekr;

pub use clique::{
    all_cliques_of_size, all_maximum_cliques, find_clique, lex_least_clique, max_clique, max_clique_constrained,
    Budget, Constraint, SearchResult, Status, Unconstrained,
};
pub use graph::Graph;
pub use instances::{instance_registry, Instance, Outcome};
pub use set_ekr::{non_star_family_of_size, set_ekr_oracle, SetEkrResult, SetMode};
