//! Gaussian coefficients and the closed-form submodule count.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::shape::Shape;

fn big_pow(q: u64, e: usize) -> BigUint {
    num_traits::pow(BigUint::from(q), e)
}

/// `[n choose k]_q`; zero outside `0 <= k <= n`.
pub fn gaussian(n: i64, k: i64, q: u64) -> BigUint {
    if k < 0 || n < 0 || k > n {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= big_pow(q, (n - i) as usize) - 1u32;
        den *= big_pow(q, (i + 1) as usize) - 1u32;
    }
    num / den
}

pub fn binomial(n: i64, k: i64) -> BigUint {
    if k < 0 || n < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from((n - i) as u64);
        acc /= BigUint::from((i + 1) as u64);
    }
    acc
}

/// Number of submodules of shape `mu` in a module of shape `lambda` over a
/// chain ring of length `m` with residue field `F_q`:
///
/// `prod_{i=1}^m q^{μ'_{i+1}(λ'_i - μ'_i)} [λ'_i - μ'_{i+1}, μ'_i - μ'_{i+1}]_q`
/// with `μ'_{m+1} = 0`. Zero when `mu` does not fit in `lambda`.
pub fn count_submodules(lambda: &Shape, mu: &Shape, q: u64, m: usize) -> BigUint {
    if !mu.fits_in(lambda) || lambda.largest_part() > m {
        return BigUint::zero();
    }
    let ld = lambda.dual(m);
    let md = mu.dual(m);
    let mut total = BigUint::one();
    for i in 0..m {
        let next = if i + 1 < m { md[i + 1] } else { 0 };
        total *= big_pow(q, next * (ld[i] - md[i]));
        total *= gaussian((ld[i] - next) as i64, (md[i] - next) as i64, q);
    }
    total
}
