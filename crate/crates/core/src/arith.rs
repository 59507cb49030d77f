//! Exact integer helpers: gcd, trial-division factorization, totient,
//! binomials and falling factorials.
//!
//! Every quantity is an unbounded integer; nothing here can overflow.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Signed integer of unbounded magnitude.
pub type ExactInt = BigInt;
/// Non-negative integer of unbounded magnitude, used for every count.
pub type ExactCount = BigUint;

/// Canonical prime factorization: primes strictly increasing, exponents positive.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Factorization {
    pairs: Vec<(ExactInt, u32)>,
}

impl Factorization {
    pub fn pairs(&self) -> &[(ExactInt, u32)] {
        &self.pairs
    }

    pub fn primes(&self) -> impl Iterator<Item = &ExactInt> {
        self.pairs.iter().map(|(p, _)| p)
    }

    /// Multiplies the factorization back out. The empty factorization is 1.
    pub fn product(&self) -> ExactInt {
        self.pairs.iter().fold(ExactInt::one(), |acc, (p, e)| {
            acc * num_traits::pow(p.clone(), *e as usize)
        })
    }

    pub fn smallest_prime(&self) -> Option<&ExactInt> {
        self.pairs.first().map(|(p, _)| p)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// gcd of the absolute values; `gcd(0, ..., 0) = 0`.
pub fn gcd_many(values: &[ExactInt]) -> Result<ExactInt> {
    if values.is_empty() {
        return Err(Error::usage("gcd of an empty list"));
    }
    Ok(values.iter().fold(ExactInt::zero(), |acc, v| acc.gcd(v)))
}

pub fn factorize(n: &ExactInt) -> Result<Factorization> {
    if !n.is_positive() {
        return Err(Error::domain(format!("factorize requires n >= 1, got {n}")));
    }
    // Word-sized inputs take a fast path; the BigInt loop handles the rest.
    if let Some(small) = n.to_u64() {
        return Ok(factorize_u64(small));
    }
    let mut rest = n.clone();
    let mut pairs = Vec::new();
    let mut p = ExactInt::from(2u32);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            pairs.push((p.clone(), e));
        }
        p += if p == ExactInt::from(2u32) {
            1u32
        } else {
            2u32
        };
    }
    if !rest.is_one() {
        pairs.push((rest, 1));
    }
    Ok(Factorization { pairs })
}

fn factorize_u64(mut n: u64) -> Factorization {
    let mut pairs = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0u32;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            pairs.push((ExactInt::from(p), e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        pairs.push((ExactInt::from(n), 1));
    }
    Factorization { pairs }
}

pub fn is_prime(n: &ExactInt) -> bool {
    if n <= &ExactInt::one() {
        return false;
    }
    match factorize(n) {
        Ok(f) => f.pairs.len() == 1 && f.pairs[0].1 == 1,
        Err(_) => false,
    }
}

/// Euler's totient via `n * prod (1 - 1/p)`, computed as `n / p * (p - 1)` per prime.
pub fn euler_phi(n: &ExactInt) -> Result<ExactCount> {
    let factors = factorize(n)?;
    let phi = factors
        .primes()
        .fold(n.clone(), |acc, p| acc / p * (p - 1u32));
    Ok(to_count(phi))
}

/// `(n-1)(n-2)...(n-k+1)`, i.e. `k - 1` factors; the empty product (k = 1) is 1.
///
/// Factors that are zero or negative are multiplied in as they are.
pub fn falling_factorial(n: &ExactInt, k: usize) -> Result<ExactInt> {
    if k == 0 {
        return Err(Error::usage("falling factorial needs k >= 1"));
    }
    Ok((1..k).fold(ExactInt::one(), |acc, i| acc * (n - i)))
}

pub fn factorial(m: usize) -> ExactCount {
    (2..=m).fold(ExactCount::one(), |acc, i| acc * i)
}

pub fn binomial(n: &ExactInt, k: &ExactInt) -> Result<ExactCount> {
    if n.is_negative() || k.is_negative() {
        return Err(Error::domain(format!(
            "binomial({n}, {k}) needs non-negative arguments"
        )));
    }
    if k > n {
        return Ok(ExactCount::zero());
    }
    let k = std::cmp::min(k.clone(), n - k);
    let k = k
        .to_usize()
        .ok_or_else(|| Error::resource(format!("binomial lower index {k} too large")))?;
    let n = to_count(n.clone());
    let mut acc = ExactCount::one();
    for i in 0..k {
        acc *= &n - i;
        acc /= i + 1;
    }
    Ok(acc)
}

/// Small-argument binomial used by the table builders.
pub fn binomial_usize(n: usize, k: usize) -> ExactCount {
    if k > n {
        return ExactCount::zero();
    }
    let k = k.min(n - k);
    let mut acc = ExactCount::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Converts a value known to be non-negative.
///
/// Panics on a negative value; callers use it only where non-negativity is proven.
pub(crate) fn to_count(v: ExactInt) -> ExactCount {
    match v.sign() {
        Sign::Minus => panic!("negative value {v} where a count was expected"),
        _ => v.magnitude().clone(),
    }
}

pub(crate) fn signed(v: &ExactCount) -> ExactInt {
    ExactInt::from(v.clone())
}
