//! Enumeration of the submodules of a given shape.
//!
//! Over a length-two ring a submodule `M` of shape `2^f 1^{k-f}` in `R^n`
//! is determined by three pieces of data:
//!
//! * `V = η(M)`, an `f`-dimensional subspace of `F_q^n`,
//! * `W = M ∩ N^n`, read as a `k`-dimensional subspace of `F_q^n` through
//!   `γ(w)θ ↦ w`; it contains the twisted image of `V` because `θM ⊆ W`,
//! * for each RREF basis vector `b_i` of `V` the θ-digits `y_i` of the
//!   element of `M` over `b_i`, which are defined modulo `W`.
//!
//! Choosing `y_i` supported on the non-pivot columns of `W` gives each
//! module exactly once, which reproduces the closed-form count term by term.

use rayon::prelude::*;

use crate::linalg::{self, odometer};
use crate::module::{Submodule, Vector};
use crate::ring::{Elem, Ring};
use crate::shape::Shape;

/// All submodules of `R^n` with shape `mu`, sorted by canonical matrix.
/// Empty when `mu` cannot occur.
pub fn enumerate_submodules(ring: &Ring, n: usize, mu: &Shape) -> Vec<Submodule> {
    let m = ring.length();
    if mu.largest_part() > m || mu.rank() > n {
        return Vec::new();
    }
    let field = ring.field();
    let mut out: Vec<Submodule> = if m == 1 {
        linalg::subspaces(field, n, mu.rank())
            .into_par_iter()
            .map(|basis| {
                let rows: Vec<Vector> = basis
                    .iter()
                    .map(|row| row.iter().map(|&x| ring.compose(x, 0)).collect())
                    .collect();
                Submodule::span(ring, n, &rows).expect("well-formed rows")
            })
            .collect()
    } else {
        let f = mu.free_rank(2);
        let k = mu.rank();
        linalg::subspaces(field, n, f)
            .into_par_iter()
            .flat_map_iter(|v| with_residue_image(ring, n, k, &v))
            .collect()
    };
    out.sort_unstable();
    out
}

fn with_residue_image(ring: &Ring, n: usize, k: usize, v: &[Vec<u32>]) -> Vec<Submodule> {
    let field = ring.field();
    let q = ring.q();
    let f = v.len();
    let mut twisted: Vec<Vec<u32>> =
        v.iter().map(|row| row.iter().map(|&x| ring.theta_twist(x)).collect()).collect();
    let twisted_pivots = linalg::rref(field, &mut twisted);
    let free_cols: Vec<usize> = (0..n).filter(|c| !twisted_pivots.contains(c)).collect();
    let mut out = Vec::new();
    for x in linalg::subspaces(field, n - f, k - f) {
        let mut w = twisted.clone();
        for row in &x {
            let mut full = vec![0u32; n];
            for (&c, &val) in free_cols.iter().zip(row) {
                full[c] = val;
            }
            w.push(full);
        }
        let w_pivots = linalg::rref(field, &mut w);
        let lift_cols: Vec<usize> = (0..n).filter(|c| !w_pivots.contains(c)).collect();
        let torsion: Vec<Vector> =
            w.iter().map(|row| row.iter().map(|&x| ring.compose(0, x)).collect()).collect();
        let mut digits = vec![0u32; f * lift_cols.len()];
        loop {
            let mut gens = torsion.clone();
            for (i, b) in v.iter().enumerate() {
                let mut y = vec![0u32; n];
                for (j, &c) in lift_cols.iter().enumerate() {
                    y[c] = digits[i * lift_cols.len() + j];
                }
                gens.push(b.iter().zip(&y).map(|(&b0, &y1)| ring.compose(b0, y1)).collect());
            }
            out.push(Submodule::span(ring, n, &gens).expect("well-formed rows"));
            if !odometer(&mut digits, q) {
                break;
            }
        }
    }
    out
}

/// Submodules of shape `mu` inside `ambient`, sorted by canonical matrix.
pub fn enumerate_within(ambient: &Submodule, mu: &Shape) -> Vec<Submodule> {
    if !mu.fits_in(ambient.shape()) {
        return Vec::new();
    }
    enumerate_submodules(ambient.ring(), ambient.ambient_rank(), mu)
        .into_iter()
        .filter(|s| s.is_submodule_of(ambient))
        .collect()
}

/// Submodules of shape `mu` of the standard module of shape `lambda`.
pub fn enumerate_in_shape(ring: &Ring, lambda: &Shape, mu: &Shape) -> crate::Result<Vec<Submodule>> {
    let ambient = Submodule::standard(ring, lambda)?;
    Ok(enumerate_within(&ambient, mu))
}

/// Every submodule of `ambient`, found by closing the zero module under
/// "add one element" steps. Independent of the parametrization above; used
/// as an oracle at desk scale.
pub fn submodule_lattice(ambient: &Submodule) -> Vec<Submodule> {
    use std::collections::HashSet;
    let ring = ambient.ring();
    let n = ambient.ambient_rank();
    let elements = ambient.elements();
    let zero = Submodule::zero(ring, n);
    let mut seen: HashSet<Submodule> = HashSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while !frontier.is_empty() {
        let next: Vec<Submodule> = frontier
            .par_iter()
            .flat_map_iter(|m| {
                elements
                    .iter()
                    .filter(|x| !m.contains(x))
                    .map(|x| {
                        let mut gens = m.rows().to_vec();
                        gens.push(x.clone());
                        Submodule::span(ring, n, &gens).expect("same ambient")
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        frontier = Vec::new();
        for m in next {
            if seen.insert(m.clone()) {
                frontier.push(m);
            }
        }
    }
    let mut all: Vec<Submodule> = seen.into_iter().collect();
    all.sort_unstable();
    all
}

/// Every vector of `R^n` in lexicographic order.
pub fn all_vectors(ring: &Ring, n: usize) -> Vec<Vector> {
    let size = ring.size() as usize;
    let total = size.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let x = Elem((idx % size) as u16);
                    idx /= size;
                    x
                })
                .rev()
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::count_submodules;
    use num_bigint::BigUint;
    use std::collections::{BTreeMap, HashSet};

    fn ring(s: &str) -> Ring {
        Ring::new(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn z4_cyclic_and_rank_two_by_brute_force() {
        let r = ring("gr:p=2,r=1");
        let vecs = all_vectors(&r, 4);
        let mut points = HashSet::new();
        for x in &vecs {
            let m = Submodule::span(&r, 4, std::slice::from_ref(x)).unwrap();
            if m.shape() == &Shape::free(2, 1) {
                points.insert(m);
            }
        }
        assert_eq!(points.len(), 120);
        let enumerated: HashSet<Submodule> = enumerate_submodules(&r, 4, &Shape::free(2, 1)).into_iter().collect();
        assert_eq!(enumerated, points);

        // pairs of generators, deduplicated
        let free: Vec<&Vector> = vecs.iter().filter(|x| x.iter().any(|&e| r.is_unit(e))).collect();
        let mut lines = HashSet::new();
        for (i, a) in free.iter().enumerate() {
            for b in &free[i + 1..] {
                let m = Submodule::span(&r, 4, &[(*a).clone(), (*b).clone()]).unwrap();
                if m.shape() == &Shape::free(2, 2) {
                    lines.insert(m);
                }
            }
        }
        assert_eq!(lines.len(), 560);
        assert_eq!(enumerate_submodules(&r, 4, &Shape::free(2, 2)).len(), 560);
    }

    #[test]
    fn lattice_oracle_agrees_with_formula_and_enumeration() {
        for (spec, n) in [("gr:p=2,r=1", 3), ("dual:q=4,s=1", 2), ("gf:q=3", 3), ("dual:q=2,s=0", 3)] {
            let r = ring(spec);
            let m = r.length();
            let lambda = Shape::free(m, n);
            let lattice = submodule_lattice(&Submodule::whole(&r, n));
            let mut by_shape: BTreeMap<Shape, Vec<Submodule>> = BTreeMap::new();
            for s in lattice {
                by_shape.entry(s.shape().clone()).or_default().push(s);
            }
            for (mu, mods) in &by_shape {
                let formula = count_submodules(&lambda, mu, r.q() as u64, m);
                assert_eq!(BigUint::from(mods.len()), formula, "{spec} n={n} mu={mu}");
                assert_eq!(&enumerate_submodules(&r, n, mu), mods, "{spec} n={n} mu={mu}");
            }
        }
    }

    #[test]
    fn order_identity_and_containment_criterion_on_z4_cubed() {
        let r = ring("gr:p=2,r=1");
        let all = submodule_lattice(&Submodule::whole(&r, 3));
        let shapes: HashSet<Shape> = all.iter().map(|s| s.shape().clone()).collect();
        for a in &all {
            // containment criterion: a contains some submodule of shape τ iff τ fits
            let inside: HashSet<&Shape> = all.iter().filter(|s| s.is_submodule_of(a)).map(|s| s.shape()).collect();
            for tau in &shapes {
                assert_eq!(inside.contains(tau), tau.fits_in(a.shape()), "{a:?} {tau}");
            }
        }
        for (i, a) in all.iter().enumerate().step_by(3) {
            for b in all.iter().skip(i) {
                let meet = a.intersect(b).unwrap();
                let sum = a.sum(b).unwrap();
                assert_eq!(meet.log_order() + sum.log_order(), a.log_order() + b.log_order());
            }
        }
    }

    #[test]
    fn degenerate_shapes() {
        let r = ring("gr:p=2,r=1");
        let zero = enumerate_submodules(&r, 4, &Shape::empty());
        assert_eq!(zero.len(), 1);
        assert!(zero[0].is_zero());
        let whole = enumerate_submodules(&r, 3, &Shape::free(2, 3));
        assert_eq!(whole, vec![Submodule::whole(&r, 3)]);
        assert!(enumerate_submodules(&r, 2, &Shape::free(2, 3)).is_empty());
        assert!(enumerate_submodules(&r, 2, &"3".parse().unwrap()).is_empty());
        let in_shape = enumerate_in_shape(&r, &"2.1".parse().unwrap(), &"1".parse().unwrap()).unwrap();
        // (2,1): λ'=(2,1), μ'=(1,0): q^0[2-0,1-0]·q^0[1,0] = 3
        assert_eq!(in_shape.len(), 3);
    }
}
