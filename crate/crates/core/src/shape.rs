//! Partitions classifying finite modules over a chain ring.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A non-increasing sequence of positive parts `λ_1 >= ... >= λ_k >= 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Shape(Vec<usize>);

impl Shape {
    /// Zero parts are dropped; the remaining parts must be non-increasing.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let parts: Vec<usize> = parts.into_iter().filter(|&x| x > 0).collect();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidShape(format!("{parts:?} is not non-increasing")));
        }
        Ok(Shape(parts))
    }

    pub fn empty() -> Self {
        Shape(Vec::new())
    }

    /// `m^k`, the shape of a free module of rank `k`.
    pub fn free(m: usize, k: usize) -> Self {
        Shape(vec![m; k])
    }

    /// Builds `λ` from its dual `λ'` (`λ'_i` = number of parts `>= i`).
    pub fn from_dual(dual: &[usize]) -> Result<Self> {
        if dual.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidShape(format!("dual {dual:?} is not non-increasing")));
        }
        let rank = dual.first().copied().unwrap_or(0);
        let parts = (0..rank).map(|j| dual.iter().filter(|&&d| d > j).count()).collect();
        Ok(Shape(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn largest_part(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    /// Sum of the parts, i.e. `log_q |M|`.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of parts equal to `m`.
    pub fn free_rank(&self, m: usize) -> usize {
        self.0.iter().filter(|&&x| x == m).count()
    }

    /// `λ'_1, ..., λ'_m`.
    pub fn dual(&self, m: usize) -> Vec<usize> {
        (1..=m).map(|i| self.0.iter().filter(|&&x| x >= i).count()).collect()
    }

    /// Multiplicity `a_i` of the part `i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.0.iter().filter(|&&x| x == i).count()
    }

    pub fn is_free(&self, m: usize) -> bool {
        self.0.iter().all(|&x| x == m)
    }

    /// Componentwise `self <= other` (missing parts count as zero).
    pub fn fits_in(&self, other: &Shape) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Exponent notation `m^{a_m}...1^{a_1}`, e.g. `2^2.1^1`; empty shape is `""`.
    pub fn exponent_notation(&self) -> String {
        let mut out = Vec::new();
        let max = self.largest_part();
        for i in (1..=max).rev() {
            let a = self.multiplicity(i);
            if a > 0 {
                out.push(format!("{i}^{a}"));
            }
        }
        out.join(".")
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.exponent_notation())
    }
}

/// Accepts `2^2.1^1`, bare parts `2.2.1` or `2,2,1`, a single part `2`, and
/// the empty string for the zero module.
impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "0" || s == "()" {
            return Ok(Shape::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(['.', ',']).map(str::trim).filter(|t| !t.is_empty()) {
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e),
                None => (tok, "1"),
            };
            let bad = || Error::Parse(format!("bad shape token `{tok}`"));
            let base: usize = base.trim().parse().map_err(|_| bad())?;
            let exp: usize = exp.trim().parse().map_err(|_| bad())?;
            parts.extend(std::iter::repeat_n(base, exp));
        }
        let mut sorted = parts.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        if sorted != parts {
            return Err(Error::InvalidShape(format!("`{s}` is not in descending order")));
        }
        Shape::new(parts)
    }
}

impl TryFrom<String> for Shape {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Shape> for String {
    fn from(s: Shape) -> String {
        s.exponent_notation()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_display() {
        let s: Shape = "2^2.1^1".parse().unwrap();
        assert_eq!(s.parts(), &[2, 2, 1]);
        assert_eq!(s.to_string(), "2^2.1^1");
        assert_eq!("2".parse::<Shape>().unwrap().parts(), &[2]);
        assert_eq!("2,2,1".parse::<Shape>().unwrap(), s);
        assert_eq!("".parse::<Shape>().unwrap(), Shape::empty());
        assert!("1^1.2^1".parse::<Shape>().is_err());
        assert!(Shape::new(vec![1, 2]).is_err());
    }

    #[test]
    fn ranks() {
        let s: Shape = "2^2.1^1".parse().unwrap();
        assert_eq!(s.rank(), 3);
        assert_eq!(s.free_rank(2), 2);
        assert_eq!(s.dual(2), vec![3, 2]);
        assert_eq!(Shape::empty().rank(), 0);
        assert!("2.1".parse::<Shape>().unwrap().fits_in(&s));
        assert!(!"1^4".parse::<Shape>().unwrap().fits_in(&s));
    }

    proptest! {
        #[test]
        fn dual_is_an_involution(mut parts in prop::collection::vec(1usize..=3, 0..7)) {
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let s = Shape::new(parts).unwrap();
            let m = 3;
            let d = s.dual(m);
            prop_assert_eq!(Shape::from_dual(&d).unwrap(), s.clone());
            // λ'_i - λ'_{i+1} counts the parts equal to i
            for i in 1..=m {
                let next = if i < m { d[i] } else { 0 };
                prop_assert_eq!(d[i - 1] - next, s.multiplicity(i));
            }
            prop_assert_eq!(s.exponent_notation().parse::<Shape>().unwrap(), s);
        }
    }
}
