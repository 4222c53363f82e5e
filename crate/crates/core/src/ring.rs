//! Finite chain rings of length at most two.
//!
//! Every element is stored as the index `a0 + q * a1` of its unique expansion
//! `r = γ_{a0} + γ_{a1} θ` over the fixed coset representatives
//! `Γ = {γ_0 = 0, γ_1 = 1, ...}` (θ on the right). Γ-indices coincide with the
//! residue field encoding, so the projection onto `R/N` is `a0`.
//!
//! Three families are supported:
//!
//! * `gf` — the field `F_q` itself (length 1, θ = 0),
//! * `dual` — σ-dual numbers `F_q × F_q` with
//!   `(x0, x1)(y0, y1) = (x0 y0, x0 y1 + x1 σ(y0))`, θ = (0, 1),
//! * `gr` — the Galois ring `Z_{p^2}[x]/(f)` with θ = p and Γ the
//!   Teichmüller set.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::{is_prime, Field};

/// Index of a ring element in the `a0 + q * a1` encoding.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub u16);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    /// `F_q`, length 1.
    PrimeFieldExtension,
    /// σ-dual numbers over `F_q` with `σ(x) = x^{p^s}`.
    SigmaDualNumbers { sigma_exponent: u32 },
    /// `GR(q^2, p^2)`; `modulus` is a monic degree-`r` polynomial over
    /// `Z_{p^2}` (low to high). `None` selects the lift of the default
    /// `F_q` polynomial.
    GaloisRing { modulus: Option<Vec<u32>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    pub p: u32,
    pub r: u32,
    pub kind: RingKind,
}

impl RingSpec {
    pub fn field(p: u32, r: u32) -> Self {
        RingSpec { p, r, kind: RingKind::PrimeFieldExtension }
    }

    pub fn dual(p: u32, r: u32, sigma_exponent: u32) -> Self {
        RingSpec { p, r, kind: RingKind::SigmaDualNumbers { sigma_exponent } }
    }

    pub fn galois(p: u32, r: u32) -> Self {
        RingSpec { p, r, kind: RingKind::GaloisRing { modulus: None } }
    }

    pub fn length(&self) -> usize {
        match self.kind {
            RingKind::PrimeFieldExtension => 1,
            _ => 2,
        }
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.r)
    }
}

fn factor_prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 || q > u32::MAX as u64 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut r = 0;
    let mut x = q;
    while x.is_multiple_of(p) {
        x /= p;
        r += 1;
    }
    (x == 1).then_some((p as u32, r))
}

/// Grammar: `<kind>:<key>=<value>,...` with kind one of `gf`, `dual`, `gr`;
/// keys `q` or `p` + `r` (and `r` defaults to 1), `s` for dual numbers, and
/// optionally `f=c0.c1.....cr` (coefficients mod `p^2`, low to high) for
/// Galois rings. Examples: `gr:p=2,r=1`, `dual:q=4,s=1`, `gf:q=2`.
impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, params) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("ring spec `{s}` lacks a `kind:` prefix")))?;
        let mut q = None;
        let mut p = None;
        let mut r = None;
        let mut sigma = None;
        let mut modulus = None;
        for kv in params.split(',').filter(|x| !x.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, found `{kv}`")))?;
            let num = || -> Result<u64> {
                v.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad number `{v}` for `{k}`")))
            };
            match k.trim() {
                "q" => q = Some(num()?),
                "p" => p = Some(num()? as u32),
                "r" => r = Some(num()? as u32),
                "s" => sigma = Some(num()? as u32),
                "f" => {
                    let coeffs = v
                        .split('.')
                        .map(|c| c.trim().parse::<u32>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| Error::Parse(format!("bad modulus `{v}`")))?;
                    modulus = Some(coeffs);
                }
                other => return Err(Error::Parse(format!("unknown ring parameter `{other}`"))),
            }
        }
        let (p, r) = match (q, p, r) {
            (Some(q), None, None) => factor_prime_power(q)
                .ok_or_else(|| Error::Parse(format!("q = {q} is not a prime power")))?,
            (None, Some(p), r) => (p, r.unwrap_or(1)),
            _ => return Err(Error::Parse("give either q or p (and r)".into())),
        };
        let kind = match kind.trim() {
            "gf" | "field" => RingKind::PrimeFieldExtension,
            "dual" => RingKind::SigmaDualNumbers { sigma_exponent: sigma.unwrap_or(0) },
            "gr" | "galois" => RingKind::GaloisRing { modulus },
            other => return Err(Error::Unknown { kind: "ring kind", name: other.to_string() }),
        };
        Ok(RingSpec { p, r, kind })
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RingKind::PrimeFieldExtension => write!(f, "gf:q={}", self.q()),
            RingKind::SigmaDualNumbers { sigma_exponent } => {
                write!(f, "dual:q={},s={}", self.q(), sigma_exponent)
            }
            RingKind::GaloisRing { modulus } => {
                write!(f, "gr:p={},r={}", self.p, self.r)?;
                if let Some(m) = modulus {
                    let coeffs: Vec<String> = m.iter().map(|c| c.to_string()).collect();
                    write!(f, ",f={}", coeffs.join("."))?;
                }
                Ok(())
            }
        }
    }
}

/// On-the-fly arithmetic behind a ring; tables are filled from it for small rings.
trait Arithmetic: Send + Sync + fmt::Debug {
    fn add(&self, a: u32, b: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    fn neg(&self, a: u32) -> u32;
}

#[derive(Debug)]
struct FieldArith(Arc<Field>);

impl Arithmetic for FieldArith {
    fn add(&self, a: u32, b: u32) -> u32 {
        self.0.add(a, b)
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.0.mul(a, b)
    }
    fn neg(&self, a: u32) -> u32 {
        self.0.neg(a)
    }
}

#[derive(Debug)]
struct DualArith {
    field: Arc<Field>,
    sigma: Vec<u32>,
}

impl DualArith {
    fn split(&self, a: u32) -> (u32, u32) {
        let q = self.field.order();
        (a % q, a / q)
    }
}

impl Arithmetic for DualArith {
    fn add(&self, a: u32, b: u32) -> u32 {
        let (a0, a1) = self.split(a);
        let (b0, b1) = self.split(b);
        self.field.add(a0, b0) + self.field.order() * self.field.add(a1, b1)
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        let f = &self.field;
        let (x0, x1) = self.split(a);
        let (y0, y1) = self.split(b);
        let c0 = f.mul(x0, y0);
        let c1 = f.add(f.mul(x0, y1), f.mul(x1, self.sigma[y0 as usize]));
        c0 + f.order() * c1
    }
    fn neg(&self, a: u32) -> u32 {
        let (a0, a1) = self.split(a);
        self.field.neg(a0) + self.field.order() * self.field.neg(a1)
    }
}

/// `Z_{p^2}[x]/(f)` with elements stored in Teichmüller coordinates.
#[derive(Debug)]
struct GaloisArith {
    field: Arc<Field>,
    p: u32,
    p2: u32,
    modulus: Vec<u32>,
    teich: Vec<Vec<u32>>,
}

impl GaloisArith {
    fn new(field: Arc<Field>, modulus: Vec<u32>) -> Self {
        let p = field.p();
        let mut g = GaloisArith { field, p, p2: p * p, modulus, teich: Vec::new() };
        g.teich = (0..g.field.order()).map(|c| g.teichmuller_hensel(c)).collect();
        g
    }

    fn deg(&self) -> usize {
        self.modulus.len() - 1
    }

    fn naive_lift(&self, c: u32) -> Vec<u32> {
        let mut d = self.field.digits(c);
        d.resize(self.deg(), 0);
        d
    }

    fn residue(&self, a: &[u32]) -> u32 {
        let d: Vec<u32> = a.iter().map(|c| c % self.p).collect();
        self.field.undigits(&d)
    }

    fn padd(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p2).collect()
    }

    fn psub(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(x, y)| (x + self.p2 - y) % self.p2).collect()
    }

    fn pmul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let d = self.deg();
        let mut prod = vec![0u32; 2 * d];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p2;
            }
        }
        for top in (d..2 * d).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for j in 0..d {
                let idx = top - d + j;
                prod[idx] = (prod[idx] + self.p2 - c * self.modulus[j] % self.p2) % self.p2;
            }
            prod[top] = 0;
        }
        prod.truncate(d);
        prod
    }

    fn ppow(&self, a: &[u32], mut e: u64) -> Vec<u32> {
        let mut result = self.naive_lift(1);
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = self.pmul(&result, &base);
            }
            base = self.pmul(&base, &base);
            e >>= 1;
        }
        result
    }

    fn scalar(&self, a: &[u32], k: u32) -> Vec<u32> {
        a.iter().map(|x| x * (k % self.p2) % self.p2).collect()
    }

    /// Inverse of a unit by one Newton step from the residue inverse.
    fn pinv(&self, u: &[u32]) -> Vec<u32> {
        let ubar = self.residue(u);
        let v0 = self.naive_lift(self.field.inv(ubar).expect("unit"));
        let two = self.scalar(&self.naive_lift(1), 2);
        self.pmul(&v0, &self.psub(&two, &self.pmul(u, &v0)))
    }

    /// Root of `x^{q-1} = 1` above `c` by one Newton step; 0 lifts to 0.
    fn teichmuller_hensel(&self, c: u32) -> Vec<u32> {
        let x0 = self.naive_lift(c);
        if c == 0 {
            return x0;
        }
        let q = self.field.order() as u64;
        let g = self.psub(&self.ppow(&x0, q - 1), &self.naive_lift(1));
        let dg = self.scalar(&self.ppow(&x0, q - 2), (q - 1) as u32);
        self.psub(&x0, &self.pmul(&g, &self.pinv(&dg)))
    }

    fn to_poly(&self, a: u32) -> Vec<u32> {
        let q = self.field.order();
        let lo = &self.teich[(a % q) as usize];
        let hi = self.scalar(&self.teich[(a / q) as usize], self.p);
        self.padd(lo, &hi)
    }

    fn from_poly(&self, v: &[u32]) -> u32 {
        let a0 = self.residue(v);
        let diff = self.psub(v, &self.teich[a0 as usize]);
        let hi: Vec<u32> = diff
            .iter()
            .map(|c| {
                debug_assert_eq!(c % self.p, 0);
                (c / self.p) % self.p
            })
            .collect();
        a0 + self.field.order() * self.field.undigits(&hi)
    }
}

impl Arithmetic for GaloisArith {
    fn add(&self, a: u32, b: u32) -> u32 {
        self.from_poly(&self.padd(&self.to_poly(a), &self.to_poly(b)))
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.from_poly(&self.pmul(&self.to_poly(a), &self.to_poly(b)))
    }
    fn neg(&self, a: u32) -> u32 {
        let zero = vec![0; self.deg()];
        self.from_poly(&self.psub(&zero, &self.to_poly(a)))
    }
}

const TABLE_LIMIT: u32 = 256;

struct RingData {
    spec: RingSpec,
    field: Arc<Field>,
    q: u32,
    m: usize,
    size: u32,
    arith: Box<dyn Arithmetic>,
    add_t: Option<Vec<u16>>,
    mul_t: Option<Vec<u16>>,
    neg_t: Vec<u16>,
    inv_t: OnceLock<Vec<u16>>,
    twist: Vec<u32>,
    residue: Option<Ring>,
    characteristic: u32,
}

/// A finite chain ring. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.0.spec)
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.spec == other.0.spec && self.0.field.modulus() == other.0.field.modulus())
    }
}

impl Eq for Ring {}

impl Ring {
    pub fn new(spec: &RingSpec) -> Result<Ring> {
        Self::build(spec, None)
    }

    /// `residue_field` overrides the field of a `gf` spec (used for `R/N`).
    fn build(spec: &RingSpec, residue_field: Option<Arc<Field>>) -> Result<Ring> {
        if !is_prime(spec.p) {
            return Err(Error::NotPrime(spec.p));
        }
        if spec.r == 0 {
            return Err(Error::InvalidRing("r must be positive".into()));
        }
        let m = spec.length() as u32;
        let size = spec.q().checked_pow(m).filter(|&s| s <= 1 << 16).ok_or_else(|| {
            Error::InvalidRing(format!("|R| = {}^{} exceeds 2^16", spec.q(), m))
        })? as u32;
        let (field, arith): (Arc<Field>, Box<dyn Arithmetic>) = match &spec.kind {
            RingKind::PrimeFieldExtension => {
                let field = match residue_field {
                    Some(f) => f,
                    None => Arc::new(Field::new(spec.p, spec.r)?),
                };
                (field.clone(), Box::new(FieldArith(field)))
            }
            RingKind::SigmaDualNumbers { sigma_exponent } => {
                if *sigma_exponent >= spec.r {
                    return Err(Error::InvalidSigma { s: *sigma_exponent, r: spec.r });
                }
                let field = Arc::new(Field::new(spec.p, spec.r)?);
                let sigma =
                    (0..field.order()).map(|x| field.frobenius(x, *sigma_exponent)).collect();
                (field.clone(), Box::new(DualArith { field, sigma }))
            }
            RingKind::GaloisRing { modulus } => {
                let p2 = spec.p * spec.p;
                let (field, lifted) = match modulus {
                    Some(f) => {
                        let f: Vec<u32> = f.iter().map(|c| c % p2).collect();
                        if f.len() != spec.r as usize + 1 || *f.last().unwrap() != 1 {
                            return Err(Error::InvalidRing(format!(
                                "Galois modulus must be monic of degree {}",
                                spec.r
                            )));
                        }
                        (Field::with_modulus(spec.p, &f)?, f)
                    }
                    None => {
                        let field = Field::new(spec.p, spec.r)?;
                        let lifted = field.modulus().to_vec();
                        (field, lifted)
                    }
                };
                let field = Arc::new(field);
                (field.clone(), Box::new(GaloisArith::new(field, lifted)))
            }
        };
        let q = field.order();
        let m = spec.length();
        let (add_t, mul_t) = if size <= TABLE_LIMIT {
            let mut add = vec![0u16; (size * size) as usize];
            let mut mul = vec![0u16; (size * size) as usize];
            for a in 0..size {
                for b in 0..size {
                    add[(a * size + b) as usize] = arith.add(a, b) as u16;
                    mul[(a * size + b) as usize] = arith.mul(a, b) as u16;
                }
            }
            (Some(add), Some(mul))
        } else {
            (None, None)
        };
        let neg_t = (0..size).map(|a| arith.neg(a) as u16).collect();
        let twist = if m == 1 {
            vec![0; q as usize]
        } else {
            (0..q).map(|x| arith.mul(q, x) / q).collect()
        };
        let residue = if m == 2 {
            Some(Ring::build(&RingSpec::field(spec.p, spec.r), Some(field.clone()))?)
        } else {
            None
        };
        let mut characteristic = 1;
        let mut acc = 1;
        while acc != 0 {
            acc = arith.add(acc, 1);
            characteristic += 1;
        }
        Ok(Ring(Arc::new(RingData {
            spec: spec.clone(),
            field,
            q,
            m,
            size,
            arith,
            add_t,
            mul_t,
            neg_t,
            inv_t: OnceLock::new(),
            twist,
            residue,
            characteristic,
        })))
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0.spec
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    /// Order of the residue field `R/N`.
    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Length (nilpotency index of `N`).
    pub fn length(&self) -> usize {
        self.0.m
    }

    pub fn size(&self) -> u32 {
        self.0.size
    }

    pub fn characteristic(&self) -> u32 {
        self.0.characteristic
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.size).map(|i| Elem(i as u16))
    }

    /// Generator of `N`; zero for fields.
    pub fn theta(&self) -> Elem {
        if self.0.m == 1 {
            Elem::ZERO
        } else {
            Elem(self.0.q as u16)
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.add_t {
            Some(t) => Elem(t[a.0 as usize * self.0.size as usize + b.0 as usize]),
            None => Elem(self.0.arith.add(a.0 as u32, b.0 as u32) as u16),
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.mul_t {
            Some(t) => Elem(t[a.0 as usize * self.0.size as usize + b.0 as usize]),
            None => Elem(self.0.arith.mul(a.0 as u32, b.0 as u32) as u16),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.0.neg_t[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut result = Elem::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// Two-sided inverse of a unit.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if !self.is_unit(a) {
            return None;
        }
        let table = self.0.inv_t.get_or_init(|| {
            let units = (self.0.size - self.0.size / self.0.q) as u64;
            (0..self.0.size)
                .map(|x| {
                    let x = Elem(x as u16);
                    if self.is_unit(x) {
                        self.pow(x, units - 1).0
                    } else {
                        0
                    }
                })
                .collect()
        });
        Some(Elem(table[a.0 as usize]))
    }

    /// Γ-index of the constant term.
    #[inline]
    pub fn digit0(&self, a: Elem) -> u32 {
        a.0 as u32 % self.0.q
    }

    /// Γ-index of the θ coefficient (0 for fields).
    #[inline]
    pub fn digit1(&self, a: Elem) -> u32 {
        a.0 as u32 / self.0.q
    }

    pub fn compose(&self, a0: u32, a1: u32) -> Elem {
        debug_assert!(a0 < self.0.q && (self.0.m == 2 || a1 == 0) && a1 < self.0.q);
        Elem((a0 + self.0.q * a1) as u16)
    }

    /// The representative `γ_x` of a residue class.
    #[inline]
    pub fn gamma(&self, x: u32) -> Elem {
        Elem(x as u16)
    }

    #[inline]
    pub fn is_unit(&self, a: Elem) -> bool {
        self.digit0(a) != 0
    }

    /// 0 for units, 1 for `N \ {0}`, `m` for zero.
    #[inline]
    pub fn valuation(&self, a: Elem) -> usize {
        if a.is_zero() {
            self.0.m
        } else if self.digit0(a) != 0 {
            0
        } else {
            1
        }
    }

    /// The field map `t` with `θ γ_x = γ_{t(x)} θ` (σ for dual numbers, identity otherwise).
    pub fn theta_twist(&self, x: u32) -> u32 {
        self.0.twist[x as usize]
    }

    /// `R/N` as a ring of length one (the ring itself for fields).
    pub fn residue_ring(&self) -> Ring {
        self.0.residue.clone().unwrap_or_else(|| self.clone())
    }

    /// `R/N^i` for `1 <= i <= m`.
    pub fn quotient(&self, i: usize) -> Result<Ring> {
        match i {
            i if i == self.0.m => Ok(self.clone()),
            1 => Ok(self.residue_ring()),
            _ => Err(Error::LevelOutOfRange { level: i, length: self.0.m }),
        }
    }

    /// `η_i : R -> R/N^i`, keeping the first `i` θ-adic digits.
    pub fn eta(&self, i: usize, a: Elem) -> Result<Elem> {
        match i {
            i if i == self.0.m => Ok(a),
            1 => Ok(Elem(self.digit0(a) as u16)),
            _ => Err(Error::LevelOutOfRange { level: i, length: self.0.m }),
        }
    }

    pub fn element(&self, value: Elem) -> RingElement {
        RingElement { ring: self.clone(), value }
    }

    pub fn format_elem(&self, a: Elem) -> String {
        if self.0.m == 1 {
            format!("{}", self.digit0(a))
        } else {
            format!("{}+{}*t", self.digit0(a), self.digit1(a))
        }
    }

    /// Parses `a0+a1*t` (Γ-indices) or a bare `a0`.
    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad ring element `{s}`"));
        let (a0, a1) = match s.split_once('+') {
            Some((a, b)) => {
                let b = b.trim().strip_suffix("*t").ok_or_else(bad)?;
                (a.trim().parse::<u32>().map_err(|_| bad())?, b.trim().parse::<u32>().map_err(|_| bad())?)
            }
            None => (s.parse::<u32>().map_err(|_| bad())?, 0),
        };
        if a0 >= self.0.q || a1 >= self.0.q || (self.0.m == 1 && a1 != 0) {
            return Err(bad());
        }
        Ok(self.compose(a0, a1))
    }
}

/// A ring element bundled with its ring; arithmetic checks operands agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    pub ring: Ring,
    pub value: Elem,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
}

impl RingElement {
    pub fn a0(&self) -> u32 {
        self.ring.digit0(self.value)
    }

    pub fn a1(&self) -> u32 {
        self.ring.digit1(self.value)
    }

    pub fn apply(&self, op: ArithOp, other: &RingElement) -> Result<RingElement> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let value = match op {
            ArithOp::Add => self.ring.add(self.value, other.value),
            ArithOp::Mul => self.ring.mul(self.value, other.value),
            ArithOp::Neg => self.ring.neg(self.value),
        };
        Ok(self.ring.element(value))
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.apply(ArithOp::Add, other)
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        self.apply(ArithOp::Mul, other)
    }

    pub fn neg(&self) -> RingElement {
        self.ring.element(self.ring.neg(self.value))
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit(self.value)
    }

    pub fn eta(&self, i: usize) -> Result<RingElement> {
        let target = self.ring.quotient(i)?;
        Ok(target.element(self.ring.eta(i, self.value)?))
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format_elem(self.value))
    }
}

#[cfg(test)]
impl Ring {
    fn to_string_spec(&self) -> String {
        self.0.spec.to_string()
    }
}
