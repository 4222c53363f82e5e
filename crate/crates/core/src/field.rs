//! Finite fields `F_q`, `q = p^r`, in the polynomial basis.
//!
//! An element is encoded as the integer whose base-`p` digits are the
//! coefficients of its residue polynomial (digit `i` is the coefficient of
//! `x^i`), so `0` and `1` encode the field's zero and one. Multiplication goes
//! through discrete log tables built from a primitive element.

use crate::error::{Error, Result};

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomials over `F_p`, coefficients low to high.
pub(crate) mod poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        trim(&mut a);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while a.len() > dm {
            let top = a.len() - 1;
            let c = a[top] * lead_inv % p;
            if c != 0 {
                for (j, &mj) in m.iter().enumerate() {
                    let idx = top - dm + j;
                    a[idx] = (a[idx] + p - c * mj % p) % p;
                }
            }
            a.pop();
            trim(&mut a);
        }
        a
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(&mut out);
        out
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut base = a as u64 % p as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        r as u32
    }

    /// Trial division by every monic polynomial of degree `1..=deg/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        if deg == 0 {
            return false;
        }
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d as u32);
            for c in 0..count {
                let mut g = Vec::with_capacity(d + 1);
                let mut x = c;
                for _ in 0..d {
                    g.push((x % p as u64) as u32);
                    x /= p as u64;
                }
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    r: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl Field {
    /// `F_{p^r}` defined by the least monic primitive polynomial of degree
    /// `r` (lower coefficients read as a base-`p` number).
    pub fn new(p: u32, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r == 0 {
            return Err(Error::InvalidRing("field degree must be positive".into()));
        }
        let q = checked_pow(p, r)?;
        if r == 1 {
            // x - g for the least primitive root g; the element encoding is the
            // same for any linear modulus.
            let g = (1..p.max(2))
                .find(|&g| p == 2 || multiplicative_order_mod(g, p) == p - 1)
                .unwrap_or(1);
            return Self::build(p, 1, vec![(p - g % p) % p, 1], Some(g));
        }
        for c in 0..(q as u64) {
            let mut f = Vec::with_capacity(r as usize + 1);
            let mut x = c;
            for _ in 0..r {
                f.push((x % p as u64) as u32);
                x /= p as u64;
            }
            f.push(1);
            if f[0] == 0 {
                continue;
            }
            if let Ok(field) = Self::build(p, r, f, Some(p)) {
                return Ok(field);
            }
        }
        Err(Error::InvalidRing(format!("no primitive polynomial of degree {r} over F_{p}")))
    }

    /// `F_p[x]/(f)` for a monic irreducible `f` given low to high.
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut f: Vec<u32> = modulus.iter().map(|c| c % p).collect();
        poly::trim(&mut f);
        if f.len() < 2 || *f.last().unwrap() != 1 {
            return Err(Error::InvalidRing("modulus must be monic of positive degree".into()));
        }
        if !poly::is_irreducible(&f, p) {
            return Err(Error::ReducibleModulus { p });
        }
        let r = (f.len() - 1) as u32;
        Self::build(p, r, f, None)
    }

    fn build(p: u32, r: u32, modulus: Vec<u32>, generator: Option<u32>) -> Result<Self> {
        let q = checked_pow(p, r)?;
        let mut field = Field { p, r, q, modulus, exp: Vec::new(), log: Vec::new() };
        let candidates: Box<dyn Iterator<Item = u32>> = match generator {
            Some(g) => Box::new(std::iter::once(g)),
            None => Box::new(1..q),
        };
        for g in candidates {
            let mut exp = Vec::with_capacity(q as usize - 1);
            let mut log = vec![u32::MAX; q as usize];
            let mut x = 1u32;
            let mut ok = true;
            for k in 0..(q - 1) {
                if log[x as usize] != u32::MAX || x == 0 {
                    ok = false;
                    break;
                }
                log[x as usize] = k;
                exp.push(x);
                x = field.mul_slow(x, g);
            }
            if ok && x == 1 {
                field.exp = exp;
                field.log = log;
                return Ok(field);
            }
        }
        Err(Error::InvalidRing("element is not primitive".into()))
    }

    pub(crate) fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.r as usize);
        for _ in 0..self.r {
            out.push(a % self.p);
            a /= self.p;
        }
        out
    }

    pub(crate) fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let prod = poly::mul(&self.digits(a), &self.digits(b), self.p);
        let mut red = poly::rem(&prod, &self.modulus, self.p);
        red.resize(self.r as usize, 0);
        self.undigits(&red)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Defining polynomial, low to high, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.r {
            out += (a % self.p + b % self.p) % self.p * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.r {
            out += (self.p - a % self.p) % self.p * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % (self.q as u64 - 1);
        self.exp[e as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let l = self.log[a as usize];
        Some(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = self.log[a as usize] as u64 * (e % (self.q as u64 - 1)) % (self.q as u64 - 1);
        self.exp[l as usize]
    }

    /// `x -> x^{p^s}`.
    pub fn frobenius(&self, a: u32, s: u32) -> u32 {
        self.pow(a, (self.p as u64).pow(s))
    }

    /// Multiply by an integer (image of `Z` in the prime field).
    pub fn scale_int(&self, a: u32, k: u32) -> u32 {
        let k = k % self.p;
        let mut out = 0;
        for _ in 0..k {
            out = self.add(out, a);
        }
        out
    }
}

fn checked_pow(p: u32, r: u32) -> Result<u32> {
    let q = (p as u64).checked_pow(r).filter(|&q| q <= 1 << 16);
    q.map(|q| q as u32)
        .ok_or_else(|| Error::InvalidRing(format!("field order {p}^{r} exceeds 2^16")))
}

fn multiplicative_order_mod(g: u32, p: u32) -> u32 {
    let mut x = g % p;
    let mut k = 1;
    while x != 1 {
        x = x * g % p;
        k += 1;
        if k > p {
            return 0;
        }
    }
    k
}
