//! Finite chain rings of length at most two, modules over them, projective
//! Hjelmslev geometries and intersecting families of their subspaces.

pub mod bitset;
pub mod counting;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod field;
pub mod geometry;
pub mod linalg;
pub mod module;
pub mod registry;
pub mod ring;
pub mod search;
pub mod shape;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use geometry::Geometry;
pub use module::{Submodule, Vector};
pub use ring::{Elem, Ring, RingElement, RingKind, RingSpec};
pub use shape::Shape;
