//! Extremal constructions, registered by id.

use super::stripes::{unit_span, Stripes};
use super::{meets_neighbor_class, Family, FamilyProblem};
use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::module::Submodule;
use crate::registry::{Named, Params, Registry};
use crate::ring::Ring;
use crate::shape::Shape;

pub trait Construction: Named + Send + Sync {
    /// Parameter names read by [`Construction::build`].
    fn params(&self) -> &'static [&'static str];

    /// Builds the family and validates it pairwise.
    fn build(&self, params: &Params) -> Result<Family>;

    /// Catalog bound the family size is compared with, and its parameters.
    fn bound(&self, params: &Params) -> Result<(&'static str, Params)>;

    /// Every catalog value the family size is claimed to equal; the bound
    /// by default.
    fn claims(&self, params: &Params) -> Result<Vec<(&'static str, Params)>> {
        Ok(vec![self.bound(params)?])
    }
}

fn check_shape(sub: &Submodule, expected: &Shape, name: &str) -> Result<()> {
    if sub.shape() != expected {
        return Err(Error::InvalidShape(format!("{name} has shape {}, expected {expected}", sub.shape())));
    }
    Ok(())
}

fn check_range(n: usize, k: usize, t: usize) -> Result<()> {
    if !(1 <= t && t < k && 2 * k <= n) {
        return Err(Error::InvalidParameters(format!("need 1 <= t < k <= n/2, got n={n}, k={k}, t={t}")));
    }
    Ok(())
}

pub(crate) fn problem(ring: &Ring, n: usize, k: usize, t: usize) -> Result<FamilyProblem> {
    let m = ring.length();
    FamilyProblem::new(ring, n, Shape::free(m, k), Shape::free(m, t))
}

/// All Hjelmslev subspaces of rank `k` through `u` (shape `m^t`).
pub fn canonical_family(ring: &Ring, n: usize, k: usize, u: &Submodule) -> Result<Family> {
    let m = ring.length();
    let t = u.shape().rank();
    check_shape(u, &Shape::free(m, t), "U")?;
    if t == 0 || t >= k || k >= n {
        return Err(Error::InvalidParameters(format!("need 1 <= t < k < n, got n={n}, k={k}, t={t}")));
    }
    let g = Geometry::new(ring, n)?;
    let members = g.hjelmslev_subspaces(k).into_iter().filter(|s| u.is_submodule_of(s)).collect();
    Family::new(problem(ring, n, k, t)?, members, "canonical").validated()
}

/// All Hjelmslev subspaces of rank `k` inside `v` (shape `m^{2k-t}`),
/// for `n = 2k`.
pub fn codual_family(ring: &Ring, n: usize, k: usize, t: usize, v: &Submodule) -> Result<Family> {
    let m = ring.length();
    if n != 2 * k {
        return Err(Error::InvalidParameters(format!("codual family needs n = 2k, got n={n}, k={k}")));
    }
    check_range(n, k, t)?;
    check_shape(v, &Shape::free(m, 2 * k - t), "V")?;
    let g = Geometry::new(ring, n)?;
    let members = g.hjelmslev_subspaces(k).into_iter().filter(|s| s.is_submodule_of(v)).collect();
    Family::new(problem(ring, n, k, t)?, members, "codual").validated()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TanakaChoice {
    /// Through `U` of shape `m^t` with `U` outside `[W]`.
    ThroughU,
    /// Inside `U` of shape `m^{2k-t}` with `U ∩ W` of shape `m^{k-t}`.
    InsideU,
}

/// Members of shape `m^k` avoiding the neighbor class `[W]` (`W` of shape
/// `m^{n-k}`), either through or inside `u`.
pub fn tanaka_family(ring: &Ring, n: usize, k: usize, t: usize, w: &Submodule, u: &Submodule, choice: TanakaChoice) -> Result<Family> {
    let m = ring.length();
    check_range(n, k, t)?;
    check_shape(w, &Shape::free(m, n - k), "W")?;
    match choice {
        TanakaChoice::ThroughU => {
            check_shape(u, &Shape::free(m, t), "U")?;
            if meets_neighbor_class(u, w, 1)? {
                return Err(Error::InvalidParameters("U meets the neighbor class of W".into()));
            }
        }
        TanakaChoice::InsideU => {
            if n != 2 * k {
                return Err(Error::InvalidParameters(format!("inside-U family needs n = 2k, got n={n}, k={k}")));
            }
            check_shape(u, &Shape::free(m, 2 * k - t), "U")?;
            let meet = u.intersect(w)?;
            if meet.shape() != &Shape::free(m, k - t) {
                return Err(Error::InvalidParameters(format!(
                    "U ∩ W has shape {}, expected {}",
                    meet.shape(),
                    Shape::free(m, k - t)
                )));
            }
        }
    }
    let prob = problem(ring, n, k, t)?.with_avoid(w.clone(), 1)?;
    let g = Geometry::new(ring, n)?;
    let mut members = Vec::new();
    for s in g.hjelmslev_subspaces(k) {
        let placed = match choice {
            TanakaChoice::ThroughU => u.is_submodule_of(&s),
            TanakaChoice::InsideU => s.is_submodule_of(u),
        };
        if placed && prob.admits(&s)? {
            members.push(s);
        }
    }
    let id = match choice {
        TanakaChoice::ThroughU => "tanaka-through",
        TanakaChoice::InsideU => "tanaka-inside",
    };
    Family::new(prob, members, id).validated()
}

fn nkt(p: &Params) -> Result<(Ring, usize, usize, usize)> {
    Ok((p.ring()?, p.usize("n")?, p.usize("k")?, p.usize("t")?))
}

fn hjelmslev_bound(id: &'static str, p: &Params) -> Result<(&'static str, Params)> {
    let (ring, n, k, t) = nkt(p)?;
    let bp = Params::new()
        .with("q", ring.q() as u64)
        .with("m", ring.length() as u64)
        .with("n", n as u64)
        .with("k", k as u64)
        .with("t", t as u64);
    Ok((id, bp))
}

fn stripes_ring(p: &Params) -> Result<Ring> {
    let ring = p.ring()?;
    if let Ok(q) = p.get("q") {
        if q != ring.q() as u64 {
            return Err(Error::InvalidParameters(format!("q = {q} does not match the ring")));
        }
    }
    Ok(ring)
}

struct Canonical;
struct Codual;
struct TanakaThrough;
struct TanakaInside;
struct PencilStripes;
struct RecipeStripes;
struct HyperplaneStripes;

impl Named for Canonical {
    fn id(&self) -> &'static str {
        "canonical"
    }
    fn summary(&self) -> &'static str {
        "Hjelmslev (k-1)-spaces through a fixed (t-1)-space"
    }
}

impl Construction for Canonical {
    fn params(&self) -> &'static [&'static str] {
        &["ring", "n", "k", "t"]
    }
    fn build(&self, p: &Params) -> Result<Family> {
        let (ring, n, k, t) = nkt(p)?;
        check_range(n, k, t)?;
        canonical_family(&ring, n, k, &unit_span(&ring, n, 0..t))
    }
    fn bound(&self, p: &Params) -> Result<(&'static str, Params)> {
        hjelmslev_bound("hjelmslev-ekr", p)
    }
}

impl Named for Codual {
    fn id(&self) -> &'static str {
        "codual"
    }
    fn summary(&self) -> &'static str {
        "Hjelmslev (k-1)-spaces inside a fixed (2k-t-1)-space, n = 2k"
    }
}

impl Construction for Codual {
    fn params(&self) -> &'static [&'static str] {
        &["ring", "n", "k", "t"]
    }
    fn build(&self, p: &Params) -> Result<Family> {
        let (ring, n, k, t) = nkt(p)?;
        check_range(n, k, t)?;
        codual_family(&ring, n, k, t, &unit_span(&ring, n, 0..2 * k - t))
    }
    fn bound(&self, p: &Params) -> Result<(&'static str, Params)> {
        hjelmslev_bound("hjelmslev-ekr", p)
    }
}

impl Named for TanakaThrough {
    fn id(&self) -> &'static str {
        "tanaka-through"
    }
    fn summary(&self) -> &'static str {
        "(k-1)-spaces through a fixed (t-1)-space, avoiding the neighbor class of an (n-k-1)-space"
    }
}

impl Construction for TanakaThrough {
    fn params(&self) -> &'static [&'static str] {
        &["ring", "n", "k", "t"]
    }
    fn build(&self, p: &Params) -> Result<Family> {
        let (ring, n, k, t) = nkt(p)?;
        check_range(n, k, t)?;
        let w = unit_span(&ring, n, k..n);
        tanaka_family(&ring, n, k, t, &w, &unit_span(&ring, n, 0..t), TanakaChoice::ThroughU)
    }
    fn bound(&self, p: &Params) -> Result<(&'static str, Params)> {
        hjelmslev_bound("tanaka-phg", p)
    }
}

impl Named for TanakaInside {
    fn id(&self) -> &'static str {
        "tanaka-inside"
    }
    fn summary(&self) -> &'static str {
        "(k-1)-spaces inside a fixed (2k-t-1)-space, avoiding the neighbor class of a (k-1)-space, n = 2k"
    }
}

impl Construction for TanakaInside {
    fn params(&self) -> &'static [&'static str] {
        &["ring", "n", "k", "t"]
    }
    fn build(&self, p: &Params) -> Result<Family> {
        let (ring, n, k, t) = nkt(p)?;
        check_range(n, k, t)?;
        let w = unit_span(&ring, n, k..n);
        tanaka_family(&ring, n, k, t, &w, &unit_span(&ring, n, 0..2 * k - t), TanakaChoice::InsideU)
    }
    fn bound(&self, p: &Params) -> Result<(&'static str, Params)> {
        hjelmslev_bound("tanaka-phg", p)
    }
}

impl Named for PencilStripes {
    fn id(&self) -> &'static str {
        "pencil-stripes"
    }
    fn summary(&self) -> &'static str {
        "stripes of PHG(3,R) through a fixed point"
    }
}

impl Construction for PencilStripes {
    fn params(&self) -> &'static [&'static str] {
        &["ring"]
    }
    fn build(&self, p: &Params) -> Result<Family> {
        let s = Stripes::new(&stripes_ring(p)?)?;
        let point = s.geometry.point_index(unit_span(s.ring(), 4, [0]).rows()[0].as_slice()).expect("e_1 is a point");
        s.family(&s.through_point(point), self.id()).validated()
    }
    fn bound(&self, p: &Params) -> Result<(&'static str, Params)> {
        Ok(("stripes-pencil", Params::new().with("q", stripes_ring(p)?.q() as u64)))
    }
}

impl Named for RecipeStripes {
    fn id(&self) -> &'static str {
        "stripes"
    }
    fn summary(&self) -> &'static str {
        "stripes in a plane class [H] without the direction of H, plus a largest intersecting set of direction stripes"
    }
}

impl Construction for RecipeStripes {
    fn params(&self) -> &'static [&'static str] {
        &["ring"]
    }
    fn build(&self, p: &Params) -> Result<Family> {
        let s = Stripes::new(&stripes_ring(p)?)?;
        let members = s.recipe_members(&unit_span(s.ring(), 4, 0..3), &s.graph())?;
        s.family(&members, self.id()).validated()
    }
    fn bound(&self, p: &Params) -> Result<(&'static str, Params)> {
        Ok(("stripes-plane", Params::new().with("q", stripes_ring(p)?.q() as u64)))
    }
    fn claims(&self, p: &Params) -> Result<Vec<(&'static str, Params)>> {
        let q = stripes_ring(p)?.q() as u64;
        Ok(vec![self.bound(p)?, ("stripes-hyperplane", Params::new().with("q", q).with("k", 2))])
    }
}

impl Named for HyperplaneStripes {
    fn id(&self) -> &'static str {
        "stripes-hyperplane"
    }
    fn summary(&self) -> &'static str {
        "stripes in a plane class [H] without the direction of H, plus the stripes inside H"
    }
}

impl Construction for HyperplaneStripes {
    fn params(&self) -> &'static [&'static str] {
        &["ring"]
    }
    fn build(&self, p: &Params) -> Result<Family> {
        let s = Stripes::new(&stripes_ring(p)?)?;
        let members = s.hyperplane_members(&unit_span(s.ring(), 4, 0..3))?;
        s.family(&members, self.id()).validated()
    }
    fn bound(&self, p: &Params) -> Result<(&'static str, Params)> {
        Ok(("stripes-hyperplane", Params::new().with("q", stripes_ring(p)?.q() as u64).with("k", 2)))
    }
}

pub fn construction_registry() -> Registry<dyn Construction> {
    let mut reg: Registry<dyn Construction> = Registry::new("construction");
    let entries: Vec<Box<dyn Construction>> = vec![
        Box::new(Canonical),
        Box::new(Codual),
        Box::new(TanakaThrough),
        Box::new(TanakaInside),
        Box::new(PencilStripes),
        Box::new(RecipeStripes),
        Box::new(HyperplaneStripes),
    ];
    for e in entries {
        reg.register(e).expect("unique ids");
    }
    reg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::bounds::evaluate_bound;
    use crate::families::eta_image_family;
    use num_bigint::BigUint;

    fn build(id: &str, params: &str) -> Family {
        construction_registry().get(id).unwrap().build(&params.parse().unwrap()).unwrap()
    }

    fn bound(id: &str, params: &str) -> BigUint {
        let c = construction_registry();
        let (b, p) = c.get(id).unwrap().bound(&params.parse().unwrap()).unwrap();
        evaluate_bound(b, &p).unwrap()
    }

    #[test]
    fn hjelmslev_constructions_meet_the_bound() {
        for ring in ["gr:p=2,r=1", "dual:q=2,s=0", "gf:q=2"] {
            let params = format!("ring={ring};n=4;k=2;t=1");
            let canonical = build("canonical", &params);
            let codual = build("codual", &params);
            let expected = bound("canonical", &params);
            assert_eq!(BigUint::from(canonical.len()), expected, "{ring}");
            assert_eq!(BigUint::from(codual.len()), expected, "{ring}");
            assert!(canonical.validate_by_elements().unwrap().passed());
            assert!(codual.validate_by_elements().unwrap().passed());
        }
        assert_eq!(build("canonical", "ring=gr:p=2,r=1;n=4;k=2;t=1").len(), 28);
        assert_eq!(build("canonical", "ring=gf:q=2;n=4;k=2;t=1").len(), 7);
    }

    #[test]
    fn canonical_image_is_a_pencil() {
        let f = build("canonical", "ring=gr:p=2,r=1;n=4;k=2;t=1");
        let image = eta_image_family(&f, 1).unwrap();
        assert_eq!(image.len(), 7);
        assert_eq!(image.problem.kappa, Shape::free(1, 2));
        assert_eq!(image.problem.tau, Shape::free(1, 1));
        assert!(image.validate().unwrap().passed());
        let common = image.members.iter().skip(1).try_fold(image.members[0].clone(), |acc, x| acc.intersect(x)).unwrap();
        assert_eq!(common.shape(), &Shape::free(1, 1));
    }

    #[test]
    fn guards() {
        let reg = construction_registry();
        assert!(reg.get("canonical").unwrap().build(&"ring=gr:p=2,r=1;n=4;k=2;t=2".parse().unwrap()).is_err());
        assert!(reg.get("codual").unwrap().build(&"ring=gr:p=2,r=1;n=5;k=2;t=1".parse().unwrap()).is_err());
        let r = Ring::new(&"gr:p=2,r=1".parse().unwrap()).unwrap();
        let w = unit_span(&r, 4, 2..4);
        // U inside [W]
        let bad_u = unit_span(&r, 4, [2]);
        assert!(tanaka_family(&r, 4, 2, 1, &w, &bad_u, TanakaChoice::ThroughU).is_err());
        assert!(canonical_family(&r, 4, 2, &unit_span(&r, 4, 0..2)).is_err());
        assert!(reg.get("stripes").unwrap().build(&"ring=gr:p=2,r=1;q=3".parse().unwrap()).is_err());
    }

    #[test]
    fn projective_tanaka_analogue() {
        // lines of PG(3,2) through a point and disjoint from a fixed line
        let f = build("tanaka-through", "ring=gf:q=2;n=4;k=2;t=1");
        assert_eq!(f.len(), 4);
        assert_eq!(BigUint::from(4u32), bound("tanaka-through", "ring=gf:q=2;n=4;k=2;t=1"));
        assert_eq!(build("tanaka-inside", "ring=gf:q=2;n=4;k=2;t=1").len(), 4);
    }
}
