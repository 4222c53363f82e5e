//! Closed-form upper bounds on intersecting families, evaluated exactly.

use num_bigint::BigUint;
use num_traits::One;

use crate::counting::{binomial, gaussian};
use crate::error::{Error, Result};
use crate::registry::{Named, Params, Registry};

pub trait Bound: Named + Send + Sync {
    /// Parameter names read by [`Bound::evaluate`].
    fn params(&self) -> &'static [&'static str];

    fn evaluate(&self, params: &Params) -> Result<BigUint>;
}

struct Formula {
    id: &'static str,
    summary: &'static str,
    params: &'static [&'static str],
    eval: fn(&Params) -> Result<BigUint>,
}

impl Named for Formula {
    fn id(&self) -> &'static str {
        self.id
    }

    fn summary(&self) -> &'static str {
        self.summary
    }
}

impl Bound for Formula {
    fn params(&self) -> &'static [&'static str] {
        self.params
    }

    fn evaluate(&self, params: &Params) -> Result<BigUint> {
        (self.eval)(params)
    }
}

fn out_of_range(what: &str) -> Error {
    Error::InvalidParameters(format!("out of range: {what}"))
}

fn ensure(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(out_of_range(what))
    }
}

fn get(p: &Params, keys: &[&str]) -> Result<Vec<i64>> {
    keys.iter().map(|k| p.get(k).map(|v| v as i64)).collect()
}

fn pow(q: i64, e: i64) -> BigUint {
    BigUint::from(q as u64).pow(e as u32)
}

fn prime_power(q: i64) -> Result<()> {
    let mut p = 2;
    while q % p != 0 && p <= q {
        p += 1;
    }
    let mut x = q;
    while q >= 2 && x % p == 0 {
        x /= p;
    }
    ensure(q >= 2 && x == 1, "q must be a prime power")
}

/// `f(k, t) = (t + 1)(k - t + 1)`.
pub fn frankl_threshold(k: u64, t: u64) -> u64 {
    (t + 1) * (k - t + 1)
}

fn ekr(p: &Params) -> Result<BigUint> {
    let v = get(p, &["n", "k"])?;
    let (n, k) = (v[0], v[1]);
    ensure(k >= 1 && n >= 2 * k, "1 <= k, 2k <= n")?;
    Ok(binomial(n - 1, k - 1))
}

fn ekr1(p: &Params) -> Result<BigUint> {
    let v = get(p, &["n", "k", "t"])?;
    let (n, k, t) = (v[0], v[1], v[2]);
    ensure(1 <= t && t <= k && k <= n, "1 <= t <= k <= n")?;
    ensure(n >= (t + 1) * (k - t + 1), "n >= (t+1)(k-t+1)")?;
    Ok(binomial(n - t, k - t))
}

fn frankl(p: &Params) -> Result<BigUint> {
    let v = get(p, &["k", "t"])?;
    ensure(v[1] <= v[0], "t <= k")?;
    Ok(BigUint::from(frankl_threshold(v[0] as u64, v[1] as u64)))
}

fn hilton_milner(p: &Params) -> Result<BigUint> {
    let v = get(p, &["n", "k"])?;
    let (n, k) = (v[0], v[1]);
    ensure(k >= 2 && n > 2 * k, "2 <= k, 2k < n")?;
    Ok(binomial(n - 1, k - 1) - binomial(n - k - 1, k - 1) + BigUint::one())
}

fn hsieh(p: &Params) -> Result<BigUint> {
    let v = get(p, &["q", "n", "k", "t"])?;
    let (q, n, k, t) = (v[0], v[1], v[2], v[3]);
    prime_power(q)?;
    ensure(t <= k && 2 * k - t <= n, "t <= k, 2k - t <= n")?;
    if n >= 2 * k {
        Ok(gaussian(n - t, k - t, q as u64))
    } else {
        Ok(gaussian(2 * k - t, k, q as u64))
    }
}

fn tanaka(p: &Params) -> Result<BigUint> {
    let v = get(p, &["q", "d", "e", "t"])?;
    let (q, d, e, t) = (v[0], v[1], v[2], v[3]);
    prime_power(q)?;
    ensure(t <= d && d <= e, "t <= d <= e")?;
    Ok(pow(q, (d - t) * e))
}

fn hjelmslev_range(p: &Params) -> Result<(i64, i64, i64, i64, i64)> {
    let v = get(p, &["q", "m", "n", "k", "t"])?;
    let (q, m, n, k, t) = (v[0], v[1], v[2], v[3], v[4]);
    prime_power(q)?;
    ensure(m >= 1, "m >= 1")?;
    ensure(1 <= t && t < k && 2 * k <= n, "1 <= t < k <= n/2")?;
    Ok((q, m, n, k, t))
}

fn tanaka_phg(p: &Params) -> Result<BigUint> {
    let (q, m, n, k, t) = hjelmslev_range(p)?;
    Ok(pow(q, (k - t) * (m * (n - k - 1) + 1)))
}

fn hjelmslev_ekr(p: &Params) -> Result<BigUint> {
    let (q, m, n, k, t) = hjelmslev_range(p)?;
    Ok(pow(q, (m - 1) * (k - t) * (n - k)) * gaussian(n - t, k - t, q as u64))
}

fn q_only(p: &Params) -> Result<i64> {
    let q = p.get("q")? as i64;
    prime_power(q)?;
    Ok(q)
}

fn stripes_crude(p: &Params) -> Result<BigUint> {
    let q = q_only(p)?;
    Ok(BigUint::from((q * q * (q + 1) * (q * q + q + 1)) as u64))
}

fn stripes_class(p: &Params) -> Result<BigUint> {
    let q = q_only(p)?;
    let nu = p.get("nu")? as i64;
    ensure(nu <= q + 1, "nu <= q + 1")?;
    Ok(BigUint::from((q * q * (q + 1 - nu) + q * nu) as u64))
}

fn stripes_plane(p: &Params) -> Result<BigUint> {
    let q = q_only(p)?;
    Ok(BigUint::from((q * (q * q + 1) * (q * q + q + 1)) as u64))
}

fn stripes_pencil(p: &Params) -> Result<BigUint> {
    let q = q_only(p)?;
    Ok(BigUint::from((q * (q + 1) * (q * q + q + 1)) as u64))
}

fn stripes_hyperplane(p: &Params) -> Result<BigUint> {
    let q = q_only(p)?;
    let k = p.get("k")? as i64;
    ensure(k >= 2, "k >= 2")?;
    let inner = pow(q, k + 1) * gaussian(k - 1, 1, q as u64) + BigUint::one();
    Ok(inner * gaussian(2 * k - 1, k - 1, q as u64))
}

/// Every bound by id.
pub fn bound_catalog() -> Registry<dyn Bound> {
    let entries = [
        Formula { id: "ekr", summary: "intersecting k-sets of [n]: C(n-1, k-1)", params: &["n", "k"], eval: ekr },
        Formula {
            id: "ekr1",
            summary: "t-intersecting k-sets for n >= f(k,t): C(n-t, k-t)",
            params: &["n", "k", "t"],
            eval: ekr1,
        },
        Formula { id: "frankl", summary: "threshold f(k,t) = (t+1)(k-t+1)", params: &["k", "t"], eval: frankl },
        Formula {
            id: "hm",
            summary: "intersecting k-sets without a common element: C(n-1,k-1) - C(n-k-1,k-1) + 1",
            params: &["n", "k"],
            eval: hilton_milner,
        },
        Formula {
            id: "hsieh",
            summary: "t-intersecting subspaces of PG(n-1,q): [n-t, k-t] (n >= 2k) or [2k-t, k]",
            params: &["q", "n", "k", "t"],
            eval: hsieh,
        },
        Formula {
            id: "tanaka",
            summary: "t-intersecting d-spaces avoiding an e-space: q^((d-t)e)",
            params: &["q", "d", "e", "t"],
            eval: tanaka,
        },
        Formula {
            id: "tanaka-phg",
            summary: "Hjelmslev analogue avoiding a neighbor class: q^((k-t)(m(n-k-1)+1))",
            params: &["q", "m", "n", "k", "t"],
            eval: tanaka_phg,
        },
        Formula {
            id: "hjelmslev-ekr",
            summary: "Hjelmslev subspaces meeting in m^t: q^((m-1)(k-t)(n-k)) [n-t, k-t]",
            params: &["q", "m", "n", "k", "t"],
            eval: hjelmslev_ekr,
        },
        Formula {
            id: "stripes-crude",
            summary: "stripes: classes of lines times class size, q^2(q+1)(q^2+q+1)",
            params: &["q"],
            eval: stripes_crude,
        },
        Formula {
            id: "stripes-class",
            summary: "stripes in one line class: q^2(q+1-nu) + q nu",
            params: &["q", "nu"],
            eval: stripes_class,
        },
        Formula {
            id: "stripes-plane",
            summary: "stripes, class-by-class estimate: q(q^2+1)(q^2+q+1)",
            params: &["q"],
            eval: stripes_plane,
        },
        Formula {
            id: "stripes-pencil",
            summary: "stripes through a point: q(q+1)(q^2+q+1)",
            params: &["q"],
            eval: stripes_pencil,
        },
        Formula {
            id: "stripes-hyperplane",
            summary: "shape 2^k 1^(k-1) in PHG(2k-1,R): (q^(k+1)[k-1,1]+1)[2k-1,k-1]",
            params: &["q", "k"],
            eval: stripes_hyperplane,
        },
    ];
    let mut reg: Registry<dyn Bound> = Registry::new("bound");
    for e in entries {
        reg.register(Box::new(e)).expect("unique ids");
    }
    reg
}

/// Evaluates a catalog bound.
pub fn evaluate_bound(id: &str, params: &Params) -> Result<BigUint> {
    bound_catalog().get(id)?.evaluate(params)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(id: &str, params: &str) -> u64 {
        evaluate_bound(id, &params.parse().unwrap()).unwrap().try_into().unwrap()
    }

    #[test]
    fn catalog_values() {
        assert_eq!(eval("ekr", "n=6,k=3"), 10);
        assert_eq!(eval("hm", "n=7,k=3"), 13);
        assert_eq!(eval("hjelmslev-ekr", "q=2,m=2,n=4,k=2,t=1"), 28);
        assert_eq!(eval("tanaka-phg", "q=2,m=2,n=4,k=2,t=1"), 8);
        assert_eq!(eval("tanaka", "q=2,d=2,e=2,t=1"), 4);
        assert_eq!(eval("hsieh", "q=2,n=4,k=2,t=1"), 7);
        assert_eq!(eval("hsieh", "q=2,n=5,k=3,t=2"), 15);
        assert_eq!(eval("stripes-plane", "q=2"), 70);
        assert_eq!(eval("stripes-hyperplane", "q=2,k=2"), 63);
        assert_eq!(eval("stripes-pencil", "q=2"), 42);
        assert_eq!(eval("stripes-class", "q=2,nu=1"), 10);
        assert_eq!(eval("stripes-class", "q=2,nu=0"), 12);
        assert_eq!(eval("stripes-crude", "q=2"), 84);
        assert_eq!(eval("frankl", "k=4,t=1"), 8);
        assert_eq!(eval("ekr1", "n=10,k=4,t=2"), 28);
    }

    #[test]
    fn hypotheses_are_enforced() {
        let cat = bound_catalog();
        assert!(cat.get("ekr").unwrap().evaluate(&"n=5,k=3".parse().unwrap()).is_err());
        assert!(cat.get("hjelmslev-ekr").unwrap().evaluate(&"q=2,m=2,n=4,k=2,t=2".parse().unwrap()).is_err());
        assert!(cat.get("hjelmslev-ekr").unwrap().evaluate(&"q=6,m=2,n=4,k=2,t=1".parse().unwrap()).is_err());
        assert!(cat.get("ekr").unwrap().evaluate(&"n=5".parse().unwrap()).is_err());
        assert!(cat.get("nope").is_err());
    }

    #[test]
    fn length_one_specializations() {
        // m = 1 turns the Hjelmslev bounds into their projective counterparts
        for q in [2u64, 3, 4, 5] {
            for n in 4..=9 {
                for k in 2..=n / 2 {
                    for t in 1..k {
                        let p: Params = format!("q={q},m=1,n={n},k={k},t={t}").parse().unwrap();
                        let classical: Params = format!("q={q},n={n},k={k},t={t}").parse().unwrap();
                        assert_eq!(evaluate_bound("hjelmslev-ekr", &p).unwrap(), evaluate_bound("hsieh", &classical).unwrap());
                        let tanaka: Params = format!("q={q},d={k},e={},t={t}", n - k).parse().unwrap();
                        assert_eq!(evaluate_bound("tanaka-phg", &p).unwrap(), evaluate_bound("tanaka", &tanaka).unwrap());
                    }
                }
            }
        }
    }
}
