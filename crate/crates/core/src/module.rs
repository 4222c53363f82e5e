//! Left submodules of `R^n` in Howell-style canonical form.
//!
//! The canonical generator matrix is built column by column. At each column
//! the row with the smallest valuation becomes the pivot and is scaled from
//! the left so its pivot entry is `1` (unit) or `θ`; the column is cleared
//! in every other row. A `θ` pivot also contributes `θ·row` to the rows still
//! to be processed, which makes the row set closed under the annihilator of
//! each pivot (the Howell property). Finally every entry above a pivot is
//! reduced to `0` (unit pivot) or to its Γ-part (θ pivot).
//!
//! With the Howell property every element of the module has a unique
//! expansion `Σ c_j row_j` with `c_j ∈ R` for unit pivots and `c_j ∈ Γ` for
//! θ pivots, so canonical matrices identify submodules.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::linalg;
use crate::ring::{Elem, Ring, RingSpec};
use crate::shape::Shape;

pub type Vector = Vec<Elem>;

#[derive(Clone)]
pub struct Submodule {
    ring: Ring,
    n: usize,
    rows: Vec<Vector>,
    /// `(column, valuation)` of each row's pivot.
    pivots: Vec<(usize, usize)>,
    shape: Shape,
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows == other.rows && self.ring == other.ring
    }
}

impl Eq for Submodule {}

impl Hash for Submodule {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.rows.hash(state);
    }
}

impl PartialOrd for Submodule {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the canonical matrices.
impl Ord for Submodule {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, &self.rows).cmp(&(other.n, &other.rows))
    }
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Submodule[{}](", self.shape)?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            let cells: Vec<String> = row.iter().map(|&x| self.ring.format_elem(x)).collect();
            f.write_str(&cells.join(" "))?;
        }
        f.write_str(")")
    }
}

fn axpy(ring: &Ring, target: &mut [Elem], c: Elem, row: &[Elem]) {
    // target -= c * row
    for (t, &x) in target.iter_mut().zip(row) {
        if !x.is_zero() {
            *t = ring.sub(*t, ring.mul(c, x));
        }
    }
}

fn scale(ring: &Ring, c: Elem, row: &[Elem]) -> Vector {
    row.iter().map(|&x| ring.mul(c, x)).collect()
}

/// Left scalar `c` with `c * pivot` equal to `x`, for `x` in the ideal
/// generated by a pivot of valuation `v` (pivot entry `1` or `θ`).
#[inline]
fn quotient_coefficient(ring: &Ring, x: Elem, v: usize) -> Elem {
    if v == 0 {
        x
    } else {
        ring.gamma(ring.digit1(x))
    }
}

/// Canonical rows and pivots of the module generated by `gens`.
fn howell(ring: &Ring, n: usize, gens: &[Vector]) -> (Vec<Vector>, Vec<(usize, usize)>) {
    let m = ring.length();
    let mut work: Vec<Vector> =
        gens.iter().filter(|g| g.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut rows: Vec<Vector> = Vec::new();
    let mut pivots = Vec::new();
    for c in 0..n {
        let best = work
            .iter()
            .enumerate()
            .map(|(i, row)| (ring.valuation(row[c]), i))
            .filter(|&(v, _)| v < m)
            .min();
        let Some((v, i)) = best else { continue };
        let mut p = work.swap_remove(i);
        let x = p[c];
        let normalizer = if v == 0 { ring.inv(x) } else { ring.inv(ring.gamma(ring.digit1(x))) };
        p = scale(ring, normalizer.expect("unit normalizer"), &p);
        for row in work.iter_mut() {
            if !row[c].is_zero() {
                let y = quotient_coefficient(ring, row[c], v);
                axpy(ring, row, y, &p);
                debug_assert!(row[c].is_zero());
            }
        }
        if v > 0 {
            let extra = scale(ring, ring.theta(), &p);
            if extra.iter().any(|x| !x.is_zero()) {
                work.push(extra);
            }
        }
        work.retain(|row| row.iter().any(|x| !x.is_zero()));
        rows.push(p);
        pivots.push((c, v));
    }
    for k in 0..rows.len() {
        let (c, v) = pivots[k];
        let pivot_row = rows[k].clone();
        for row in rows.iter_mut().take(k) {
            let e = row[c];
            let y = if v == 0 { e } else { ring.gamma(ring.digit1(e)) };
            if !y.is_zero() {
                axpy(ring, row, y, &pivot_row);
            }
        }
    }
    (rows, pivots)
}

fn shape_from_pivots(ring: &Ring, rows: &[Vector], pivots: &[(usize, usize)]) -> Shape {
    let m = ring.length();
    if m == 1 {
        return Shape::free(1, rows.len());
    }
    let total: usize = pivots.iter().map(|&(_, v)| m - v).sum();
    let residue: Vec<Vec<u32>> =
        rows.iter().map(|row| row.iter().map(|&x| ring.digit0(x)).collect()).collect();
    let f = linalg::rank(ring.field(), &residue);
    let mut parts = vec![2; f];
    parts.extend(std::iter::repeat_n(1, total - 2 * f));
    Shape::new(parts).expect("valid shape")
}

impl Submodule {
    /// Left submodule generated by `vectors`.
    pub fn span(ring: &Ring, n: usize, vectors: &[Vector]) -> Result<Self> {
        for v in vectors {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.len() });
            }
            if let Some(x) = v.iter().find(|x| x.0 as u32 >= ring.size()) {
                return Err(Error::InvalidParameters(format!("element index {} out of range", x.0)));
            }
        }
        let (rows, pivots) = howell(ring, n, vectors);
        let shape = shape_from_pivots(ring, &rows, &pivots);
        Ok(Submodule { ring: ring.clone(), n, rows, pivots, shape })
    }

    pub fn zero(ring: &Ring, n: usize) -> Self {
        Submodule { ring: ring.clone(), n, rows: Vec::new(), pivots: Vec::new(), shape: Shape::empty() }
    }

    /// `R^n`.
    pub fn whole(ring: &Ring, n: usize) -> Self {
        let rows: Vec<Vector> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }).collect())
            .collect();
        Self::span(ring, n, &rows).expect("identity rows")
    }

    /// The standard module `⊕ N^{m-λ_i}` of shape `λ` inside `R^{rank λ}`.
    pub fn standard(ring: &Ring, lambda: &Shape) -> Result<Self> {
        let m = ring.length();
        if lambda.largest_part() > m {
            return Err(Error::InvalidShape(format!("{lambda} has parts larger than {m}")));
        }
        let n = lambda.rank();
        let rows: Vec<Vector> = lambda
            .parts()
            .iter()
            .enumerate()
            .map(|(i, &part)| {
                let gen = if part == m { Elem::ONE } else { ring.theta() };
                (0..n).map(|j| if i == j { gen } else { Elem::ZERO }).collect()
            })
            .collect();
        Self::span(ring, n, &rows)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Rank of the ambient free module.
    pub fn ambient_rank(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[(usize, usize)] {
        &self.pivots
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// `log_q |M|`.
    pub fn log_order(&self) -> usize {
        self.shape.size()
    }

    fn check_ambient(&self, other: &Submodule) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    /// Membership by reduction against the canonical rows.
    pub fn contains(&self, v: &[Elem]) -> bool {
        if v.len() != self.n {
            return false;
        }
        let ring = &self.ring;
        let mut x = v.to_vec();
        let mut k = 0;
        for c in 0..self.n {
            if k < self.pivots.len() && self.pivots[k].0 == c {
                let v = self.pivots[k].1;
                if ring.valuation(x[c]) < v {
                    return false;
                }
                let y = quotient_coefficient(ring, x[c], v);
                if !y.is_zero() {
                    axpy(ring, &mut x, y, &self.rows[k]);
                }
                k += 1;
            } else if !x[c].is_zero() {
                return false;
            }
        }
        true
    }

    pub fn is_submodule_of(&self, other: &Submodule) -> bool {
        self.n == other.n && self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        self.check_ambient(other)?;
        let gens: Vec<Vector> = self.rows.iter().chain(&other.rows).cloned().collect();
        Submodule::span(&self.ring, self.n, &gens)
    }

    /// Zassenhaus: canonicalize `[a | a]`, `[b | 0]`; rows with pivot in the
    /// right half generate `A ∩ B`.
    pub fn intersect(&self, other: &Submodule) -> Result<Submodule> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Submodule::zero(&self.ring, self.n));
        }
        let n = self.n;
        let mut gens = Vec::with_capacity(self.rows.len() + other.rows.len());
        for a in &self.rows {
            let mut row = a.clone();
            row.extend_from_slice(a);
            gens.push(row);
        }
        for b in &other.rows {
            let mut row = b.clone();
            row.resize(2 * n, Elem::ZERO);
            gens.push(row);
        }
        let (rows, pivots) = howell(&self.ring, 2 * n, &gens);
        let meet: Vec<Vector> = rows
            .iter()
            .zip(&pivots)
            .filter(|(_, &(c, _))| c >= n)
            .map(|(row, _)| row[n..].to_vec())
            .collect();
        Submodule::span(&self.ring, n, &meet)
    }

    /// All elements, each exactly once (unique Howell expansion).
    pub fn elements(&self) -> Vec<Vector> {
        let ring = &self.ring;
        let mut out = vec![vec![Elem::ZERO; self.n]];
        for (row, &(_, v)) in self.rows.iter().zip(&self.pivots) {
            let coeffs: Vec<Elem> = if v == 0 {
                ring.elements().collect()
            } else {
                (0..ring.q()).map(|x| ring.gamma(x)).collect()
            };
            let mut next = Vec::with_capacity(out.len() * coeffs.len());
            for base in &out {
                for &c in &coeffs {
                    let mut x = base.clone();
                    for (t, &r) in x.iter_mut().zip(row) {
                        *t = ring.add(*t, ring.mul(c, r));
                    }
                    next.push(x);
                }
            }
            out = next;
        }
        out
    }

    /// `η_i(M)` as a submodule of `(R/N^i)^n`.
    pub fn eta(&self, i: usize) -> Result<Submodule> {
        let target = self.ring.quotient(i)?;
        let rows: Vec<Vector> = self
            .rows
            .iter()
            .map(|row| row.iter().map(|&x| self.ring.eta(i, x)).collect::<Result<Vector>>())
            .collect::<Result<_>>()?;
        Submodule::span(&target, self.n, &rows)
    }

    /// `M ∩ N^n`, the θ-torsion part, as an `F_q` subspace basis of θ-digits.
    pub fn torsion_digits(&self) -> Vec<Vec<u32>> {
        let ring = &self.ring;
        let theta = ring.theta();
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for (row, &(_, v)) in self.rows.iter().zip(&self.pivots) {
            let x = if v == 0 { scale(ring, theta, row) } else { row.clone() };
            rows.push(x.iter().map(|&e| ring.digit1(e)).collect());
        }
        rows.retain(|r| r.iter().any(|&x| x != 0));
        linalg::rref(ring.field(), &mut rows);
        rows
    }
}

const MAGIC: &[u8; 4] = b"HJSM";
const VERSION: u8 = 1;

/// Text layout:
///
/// ```text
/// HJSM 1
/// ring gr:p=2,r=1
/// n 4
/// row 1:0 0:0 0:1 0:0
/// ```
///
/// Each entry is `a0:a1`, the Γ-indices of `γ_{a0} + γ_{a1} θ`. Rows are the
/// canonical matrix; any generating set is accepted on input.
///
/// Binary layout (little endian): `"HJSM"`, version `u8`, spec length `u16`,
/// spec bytes (UTF-8), `n: u16`, row count `u16`, then `2·n` `u16` values per
/// row (`a0, a1` per entry).
impl Submodule {
    pub fn to_text(&self) -> String {
        let mut s = format!("HJSM {VERSION}\nring {}\nn {}\n", self.ring.spec(), self.n);
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|&x| format!("{}:{}", self.ring.digit0(x), self.ring.digit1(x)))
                .collect();
            s.push_str("row ");
            s.push_str(&cells.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses text produced by [`Submodule::to_text`]. `ring` is reused when
    /// its spec matches the header, otherwise a ring is built from the header.
    pub fn from_text(text: &str, ring: Option<&Ring>) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let bad = |msg: &str| Error::Parse(format!("submodule text: {msg}"));
        match lines.next() {
            Some(l) if l == format!("HJSM {VERSION}") => {}
            _ => return Err(bad("missing `HJSM 1` header")),
        }
        let spec: RingSpec = lines
            .next()
            .and_then(|l| l.strip_prefix("ring "))
            .ok_or_else(|| bad("missing ring line"))?
            .parse()?;
        let ring = resolve_ring(&spec, ring)?;
        let n: usize = lines
            .next()
            .and_then(|l| l.strip_prefix("n "))
            .and_then(|x| x.trim().parse().ok())
            .ok_or_else(|| bad("missing n line"))?;
        let mut rows = Vec::new();
        for line in lines {
            let cells = line.strip_prefix("row").ok_or_else(|| bad("expected `row`"))?;
            let row = cells
                .split_whitespace()
                .map(|cell| {
                    let (a, b) = cell.split_once(':').ok_or_else(|| bad(cell))?;
                    let a: u32 = a.parse().map_err(|_| bad(cell))?;
                    let b: u32 = b.parse().map_err(|_| bad(cell))?;
                    checked_compose(&ring, a, b)
                })
                .collect::<Result<Vector>>()?;
            rows.push(row);
        }
        Submodule::span(&ring, n, &rows)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let spec = self.ring.spec().to_string();
        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.extend_from_slice(&(spec.len() as u16).to_le_bytes());
        out.extend_from_slice(spec.as_bytes());
        out.extend_from_slice(&(self.n as u16).to_le_bytes());
        out.extend_from_slice(&(self.rows.len() as u16).to_le_bytes());
        for row in &self.rows {
            for &x in row {
                out.extend_from_slice(&(self.ring.digit0(x) as u16).to_le_bytes());
                out.extend_from_slice(&(self.ring.digit1(x) as u16).to_le_bytes());
            }
        }
        out
    }

    pub fn from_bytes(bytes: &[u8], ring: Option<&Ring>) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("submodule bytes: {msg}"));
        let mut pos = 0usize;
        let mut take = |len: usize| -> Result<&[u8]> {
            let s = bytes.get(pos..pos + len).ok_or_else(|| bad("truncated"))?;
            pos += len;
            Ok(s)
        };
        if take(4)? != MAGIC {
            return Err(bad("bad magic"));
        }
        if take(1)?[0] != VERSION {
            return Err(bad("unsupported version"));
        }
        let u16_at = |s: &[u8]| u16::from_le_bytes([s[0], s[1]]) as usize;
        let spec_len = u16_at(take(2)?);
        let spec: RingSpec = std::str::from_utf8(take(spec_len)?)
            .map_err(|_| bad("spec is not UTF-8"))?
            .parse()?;
        let ring = resolve_ring(&spec, ring)?;
        let n = u16_at(take(2)?);
        let count = u16_at(take(2)?);
        let mut rows = Vec::with_capacity(count);
        for _ in 0..count {
            let mut row = Vec::with_capacity(n);
            for _ in 0..n {
                let a = u16_at(take(2)?) as u32;
                let b = u16_at(take(2)?) as u32;
                row.push(checked_compose(&ring, a, b)?);
            }
            rows.push(row);
        }
        if pos != bytes.len() {
            return Err(bad("trailing bytes"));
        }
        Submodule::span(&ring, n, &rows)
    }
}

fn resolve_ring(spec: &RingSpec, ring: Option<&Ring>) -> Result<Ring> {
    match ring {
        Some(r) if r.spec() == spec => Ok(r.clone()),
        _ => Ring::new(spec),
    }
}

fn checked_compose(ring: &Ring, a0: u32, a1: u32) -> Result<Elem> {
    if a0 >= ring.q() || a1 >= ring.q() || (ring.length() == 1 && a1 != 0) {
        return Err(Error::Parse(format!("entry {a0}:{a1} out of range")));
    }
    Ok(ring.compose(a0, a1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn z4() -> Ring {
        Ring::new(&"gr:p=2,r=1".parse().unwrap()).unwrap()
    }

    fn v(xs: &[u16]) -> Vector {
        xs.iter().map(|&x| Elem(x)).collect()
    }

    /// Closure of the generators under addition and left scalars, computed
    /// without any canonical form.
    fn naive_closure(ring: &Ring, n: usize, gens: &[Vector]) -> BTreeSet<Vector> {
        let mut set: BTreeSet<Vector> = BTreeSet::new();
        set.insert(vec![Elem::ZERO; n]);
        loop {
            let mut added = false;
            let current: Vec<Vector> = set.iter().cloned().collect();
            for x in &current {
                for g in gens {
                    for r in ring.elements() {
                        let y: Vector = x.iter().zip(g).map(|(&a, &b)| ring.add(a, ring.mul(r, b))).collect();
                        added |= set.insert(y);
                    }
                }
            }
            if !added {
                return set;
            }
        }
    }

    #[test]
    fn basic_shapes() {
        let r = z4();
        assert_eq!(Submodule::span(&r, 2, &[]).unwrap().shape(), &Shape::empty());
        let m = Submodule::span(&r, 2, &[v(&[2, 0])]).unwrap();
        assert_eq!(m.shape().parts(), &[1]);
        let m = Submodule::span(&r, 2, &[v(&[1, 0]), v(&[0, 2])]).unwrap();
        assert_eq!(m.shape().parts(), &[2, 1]);
        assert_eq!(m.elements().len(), 8);
        let m = Submodule::span(&r, 4, &[v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0]), v(&[0, 0, 2, 0])]).unwrap();
        assert_eq!(m.shape().to_string(), "2^2.1^1");
        assert_eq!(m.elements().len(), 32);
        assert_eq!(Submodule::whole(&r, 3).shape(), &Shape::free(2, 3));
        // (2,1) generates a free cyclic module
        let m = Submodule::span(&r, 2, &[v(&[2, 1])]).unwrap();
        assert_eq!(m.shape().parts(), &[2]);
        assert!(Submodule::span(&r, 2, &[v(&[1])]).is_err());
    }

    #[test]
    fn intersection_of_two_planes_through_a_point() {
        let r = z4();
        let a = Submodule::span(&r, 4, &[v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])]).unwrap();
        let b = Submodule::span(&r, 4, &[v(&[1, 0, 0, 0]), v(&[0, 0, 1, 0])]).unwrap();
        assert_ne!(a, b);
        let meet = a.intersect(&b).unwrap();
        assert_eq!(meet.shape().parts(), &[2]);
        let ea: BTreeSet<_> = a.elements().into_iter().collect();
        let eb: BTreeSet<_> = b.elements().into_iter().collect();
        let em: BTreeSet<_> = meet.elements().into_iter().collect();
        assert_eq!(em, ea.intersection(&eb).cloned().collect());
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert!(a.intersect(&Submodule::zero(&r, 4)).unwrap().is_zero());
    }

    #[test]
    fn serialization_round_trips() {
        for spec in ["gr:p=2,r=1", "dual:q=4,s=1", "gr:p=3,r=1"] {
            let r = Ring::new(&spec.parse().unwrap()).unwrap();
            let m = Submodule::span(&r, 3, &[v(&[1, 2, 3]), v(&[0, r.theta().0, 1])]).unwrap();
            assert_eq!(Submodule::from_text(&m.to_text(), None).unwrap(), m);
            assert_eq!(Submodule::from_bytes(&m.to_bytes(), Some(&r)).unwrap(), m);
        }
        assert!(Submodule::from_bytes(b"HJSX", None).is_err());
        assert!(Submodule::from_text("HJSM 1\nring gr:p=2,r=1\nn 2\nrow 5:0 0:0\n", None).is_err());
    }

    fn ring_strategy() -> impl Strategy<Value = Ring> {
        prop::sample::select(vec!["gr:p=2,r=1", "dual:q=2,s=0", "gr:p=3,r=1", "dual:q=4,s=1", "gr:p=2,r=2", "gf:q=4"])
            .prop_map(|s| Ring::new(&s.parse().unwrap()).unwrap())
    }

    fn gens_strategy() -> impl Strategy<Value = (Ring, usize, Vec<Vector>, Vec<Vector>)> {
        (ring_strategy(), 1usize..=3).prop_flat_map(|(ring, n)| {
            let size = ring.size() as u16;
            let vec = prop::collection::vec(0..size, n).prop_map(|xs| xs.into_iter().map(Elem).collect::<Vector>());
            let gens = prop::collection::vec(vec, 0..4);
            (Just(ring), Just(n), gens.clone(), gens)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn canonical_form_matches_closure((ring, n, gens, other) in gens_strategy()) {
            let m = Submodule::span(&ring, n, &gens).unwrap();
            let closure = naive_closure(&ring, n, &gens);
            let elems: Vec<Vector> = m.elements();
            let set: BTreeSet<Vector> = elems.iter().cloned().collect();
            prop_assert_eq!(set.len(), elems.len());
            prop_assert_eq!(&set, &closure);
            prop_assert_eq!(closure.len() as u64, (ring.q() as u64).pow(m.log_order() as u32));
            // free rank from |θM| = q^f, independent of the pivot data
            let theta_m: BTreeSet<Vector> = closure.iter().map(|x| x.iter().map(|&e| ring.mul(ring.theta(), e)).collect()).collect();
            let f = if ring.length() == 1 { m.shape().rank() } else { (theta_m.len() as f64).log(ring.q() as f64).round() as usize };
            prop_assert_eq!(m.shape().free_rank(ring.length()), f);
            // any generating set of the same module canonicalizes identically
            let again = Submodule::span(&ring, n, &elems).unwrap();
            prop_assert_eq!(&again, &m);
            // sum and intersection versus element sets, plus the order identity
            let b = Submodule::span(&ring, n, &other).unwrap();
            let eb: BTreeSet<Vector> = b.elements().into_iter().collect();
            let meet = m.intersect(&b).unwrap();
            let em: BTreeSet<Vector> = meet.elements().into_iter().collect();
            prop_assert_eq!(&em, &set.intersection(&eb).cloned().collect::<BTreeSet<_>>());
            let sum = m.sum(&b).unwrap();
            prop_assert_eq!(meet.log_order() + sum.log_order(), m.log_order() + b.log_order());
            for x in &closure {
                prop_assert!(m.contains(x));
                prop_assert!(sum.contains(x));
            }
            prop_assert_eq!(b.is_submodule_of(&m), eb.is_subset(&set));
        }
    }
}
