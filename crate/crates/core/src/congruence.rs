//! Solution counts for `a_1 x_1 + ... + a_k x_k = b (mod n)`.
//!
//! [`lehmer_count`] counts all solutions, [`rademacher_brauer_count`] counts
//! solutions with every coordinate a unit, and [`distinct_count_formula`]
//! counts solutions with pairwise distinct coordinates, valid whenever every
//! nonempty proper subset of the coefficients sums to a unit modulo `n`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{
    euler_phi, factorial, factorize, falling_factorial, gcd_many, is_prime, signed, to_count,
    ExactCount, ExactInt,
};
use crate::error::{Error, Result};
use crate::graph_enum::Rational;
use crate::oracle;

/// Subset enumeration in [`check_condition`] is refused above this many coefficients.
pub const DEFAULT_SUBSET_CAP: usize = 24;

/// A linear congruence with coefficients and right-hand side reduced into `[0, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CongruenceInstance {
    coeffs: Vec<ExactInt>,
    b: ExactInt,
    n: ExactInt,
}

impl CongruenceInstance {
    pub fn new(coeffs: Vec<ExactInt>, b: ExactInt, n: ExactInt) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::usage("at least one coefficient is required"));
        }
        if n < ExactInt::one() {
            return Err(Error::domain(format!("modulus must be >= 1, got {n}")));
        }
        let coeffs = coeffs.iter().map(|a| a.mod_floor(&n)).collect();
        let b = b.mod_floor(&n);
        Ok(CongruenceInstance { coeffs, b, n })
    }

    pub fn from_i64(coeffs: &[i64], b: i64, n: i64) -> Result<Self> {
        Self::new(
            coeffs.iter().map(|&a| ExactInt::from(a)).collect(),
            ExactInt::from(b),
            ExactInt::from(n),
        )
    }

    pub fn coeffs(&self) -> &[ExactInt] {
        &self.coeffs
    }

    pub fn b(&self) -> &ExactInt {
        &self.b
    }

    pub fn n(&self) -> &ExactInt {
        &self.n
    }

    pub fn k(&self) -> usize {
        self.coeffs.len()
    }

    /// Same coefficients and modulus, new right-hand side.
    pub fn with_b(&self, b: ExactInt) -> Self {
        CongruenceInstance {
            coeffs: self.coeffs.clone(),
            b: b.mod_floor(&self.n),
            n: self.n.clone(),
        }
    }

    /// `sum a_i`, not reduced.
    pub fn coeff_sum(&self) -> ExactInt {
        self.coeffs.iter().sum()
    }
}

impl fmt::Display for CongruenceInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{a}*x{}", i + 1)?;
        }
        write!(f, " = {} (mod {})", self.b, self.n)
    }
}

/// Outcome of checking the subset-sum gcd hypothesis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub holds: bool,
    /// First failing subset in size-then-lex order, as 0-based indices.
    pub failing_subset: Option<Vec<usize>>,
    /// `gcd(sum a_i, n)`.
    pub full_sum_gcd: ExactCount,
    /// Whether `full_sum_gcd` divides `b`.
    pub divides_b: bool,
}

impl ConditionReport {
    /// The failing subset with 1-based indices, for display.
    pub fn failing_subset_one_based(&self) -> Option<Vec<usize>> {
        self.failing_subset
            .as_ref()
            .map(|s| s.iter().map(|i| i + 1).collect())
    }
}

/// Lehmer's count: with `l = gcd(a_1, ..., a_k, n)` there are `l * n^(k-1)`
/// solutions when `l | b` and none otherwise.
pub fn lehmer_count(inst: &CongruenceInstance) -> ExactCount {
    let mut values = inst.coeffs.clone();
    values.push(inst.n.clone());
    let l = gcd_many(&values).expect("non-empty");
    if !inst.b.is_multiple_of(&l) {
        return ExactCount::zero();
    }
    to_count(l * num_traits::pow(inst.n.clone(), inst.k() - 1))
}

pub fn check_condition(inst: &CongruenceInstance) -> Result<ConditionReport> {
    check_condition_with_cap(inst, DEFAULT_SUBSET_CAP)
}

pub fn check_condition_with_cap(inst: &CongruenceInstance, cap: usize) -> Result<ConditionReport> {
    let k = inst.k();
    if k > cap {
        return Err(Error::resource(format!(
            "k = {k} exceeds the subset enumeration cap of {cap} (2^k - 2 subsets)"
        )));
    }
    let full_sum_gcd = inst.coeff_sum().gcd(&inst.n);
    let divides_b = inst.b.is_multiple_of(&full_sum_gcd);

    let failing_subset = match inst.n.to_u64() {
        Some(n) => {
            let coeffs: Vec<u128> = inst
                .coeffs
                .iter()
                .map(|a| a.to_u64().expect("reduced below n") as u128)
                .collect();
            first_failing_subset(k, |subset| {
                let s: u128 = subset.iter().map(|&i| coeffs[i]).sum();
                s.gcd(&(n as u128)) != 1
            })
        }
        None => first_failing_subset(k, |subset| {
            let s: ExactInt = subset.iter().map(|&i| &inst.coeffs[i]).sum();
            !s.gcd(&inst.n).is_one()
        }),
    };

    Ok(ConditionReport {
        holds: failing_subset.is_none(),
        failing_subset,
        full_sum_gcd: to_count(full_sum_gcd),
        divides_b,
    })
}

/// Walks nonempty proper subsets of `0..k` by size, then lexicographically.
fn first_failing_subset(k: usize, mut fails: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    for size in 1..k {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if fails(&idx) {
                return Some(idx);
            }
            // advance to the next combination in lex order
            let mut i = size;
            while i > 0 && idx[i - 1] == k - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    None
}

/// Closed-form count of distinct-coordinate solutions.
///
/// With `l = gcd(sum a_i, n)` and `P = (n-1)(n-2)...(n-k+1)` the count is
/// `(-1)^k (k-1)! + P` when `l` does not divide `b`, and
/// `(-1)^(k-1) (k-1)! (l - 1) + P` when it does. Refused unless every nonempty
/// proper subset sum is coprime to `n`.
pub fn distinct_count_formula(inst: &CongruenceInstance) -> Result<ExactCount> {
    let report = check_condition(inst)?;
    if !report.holds {
        let subset: Vec<String> = report
            .failing_subset_one_based()
            .unwrap_or_default()
            .iter()
            .map(ToString::to_string)
            .collect();
        return Err(Error::Precondition {
            message: format!(
                "subset {{{}}} has coefficient sum sharing a factor with n = {}; \
                 the closed form does not apply (use an oracle method)",
                subset.join(","),
                inst.n
            ),
            report: Some(Box::new(report)),
        });
    }
    let k = inst.k();
    let falling = falling_factorial(&inst.n, k)?;
    let fact = signed(&factorial(k - 1));
    let value = if report.divides_b {
        let l = signed(&report.full_sum_gcd);
        let term = fact * (l - 1u32);
        if k % 2 == 1 {
            term + falling
        } else {
            falling - term
        }
    } else if k.is_multiple_of(2) {
        fact + falling
    } else {
        falling - fact
    };
    assert!(!value.is_negative(), "closed form went negative for {inst}");
    Ok(to_count(value))
}

/// Count for a prime modulus, `b = 0`, coefficients summing to zero mod `p`
/// with no nonempty proper subset doing so. The value does not depend on the
/// coefficients: `(-1)^(k-1) (k-1)! (p-1) + (p-1)(p-2)...(p-k+1)`.
pub fn schoenemann_count(p: &ExactInt, coeffs: &[ExactInt]) -> Result<ExactCount> {
    if !is_prime(p) {
        return Err(Error::precondition(format!("modulus {p} is not prime")));
    }
    let inst = CongruenceInstance::new(coeffs.to_vec(), ExactInt::zero(), p.clone())?;
    if !inst.coeff_sum().is_multiple_of(p) {
        return Err(Error::precondition(format!(
            "coefficients sum to {} which is not 0 mod {p}",
            inst.coeff_sum()
        )));
    }
    let count = distinct_count_formula(&inst)?;

    let k = inst.k();
    let term = signed(&factorial(k - 1)) * (p - 1u32);
    let signed_term = if k % 2 == 1 { term } else { -term };
    let closed = signed_term + falling_factorial(p, k)?;
    assert_eq!(
        signed(&count),
        closed,
        "prime-modulus closed form disagrees for {inst}"
    );
    Ok(count)
}

/// `phi(n)^k / n * prod_{p | n, p | b} (1 - (-1)^(k-1) / (p-1)^(k-1))
///  * prod_{p | n, p !| b} (1 - (-1)^k / (p-1)^k)`, evaluated exactly.
pub fn rademacher_brauer_value(n: &ExactInt, k: usize, b: &ExactInt) -> Result<Rational> {
    if k == 0 {
        return Err(Error::usage("k must be >= 1"));
    }
    let phi = signed(&euler_phi(n)?);
    let mut value = Rational::new(num_traits::pow(phi, k), n.clone());
    for p in factorize(n)?.primes() {
        let exponent = if b.is_multiple_of(p) { k - 1 } else { k };
        let sign = if exponent % 2 == 0 {
            ExactInt::one()
        } else {
            -ExactInt::one()
        };
        let correction = Rational::new(sign, num_traits::pow(p - 1u32, exponent));
        value *= Rational::one() - correction;
    }
    Ok(value)
}

/// Number of solutions with `gcd(x_i, n) = 1` for every coordinate.
pub fn rademacher_brauer_count(n: &ExactInt, k: usize, b: &ExactInt) -> Result<ExactCount> {
    let value = rademacher_brauer_value(n, k, b)?;
    assert!(
        value.is_integer() && !value.is_negative(),
        "unit-solution count {value} is not a non-negative integer (n = {n}, k = {k}, b = {b})"
    );
    Ok(to_count(value.to_integer()))
}

/// How [`distinct_count`] obtains its answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Formula,
    IepEdges,
    IepPartitions,
    Brute,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Formula,
        Method::IepEdges,
        Method::IepPartitions,
        Method::Brute,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Formula => "formula",
            Method::IepEdges => "iep-edges",
            Method::IepPartitions => "iep-partitions",
            Method::Brute => "brute",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| {
                Error::usage(format!(
                    "unknown method `{s}` (expected formula, iep-edges, iep-partitions or brute)"
                ))
            })
    }
}

/// The closed form when its hypothesis holds, otherwise the partition oracle.
pub fn default_method(inst: &CongruenceInstance) -> Result<Method> {
    Ok(if check_condition(inst)?.holds {
        Method::Formula
    } else {
        Method::IepPartitions
    })
}

pub fn distinct_count(inst: &CongruenceInstance, method: Method) -> Result<ExactCount> {
    match method {
        Method::Formula => distinct_count_formula(inst),
        Method::IepEdges => oracle::iep_edge_subsets(inst),
        Method::IepPartitions => oracle::iep_partitions(inst),
        Method::Brute => oracle::brute_force_distinct(inst),
    }
}
