//! Truncated power series with exact rational coefficients.
//!
//! A truncation `order` always means "keep powers `0..=order`".

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{binomial_usize, factorial};
use crate::error::{Error, Result};

pub type Rational = BigRational;

fn int_ratio(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

/// Dense coefficient list; index `m` holds the coefficient of the `m`-th power.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeriesPoly {
    coeffs: Vec<Rational>,
}

impl SeriesPoly {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        SeriesPoly { coeffs }
    }

    pub fn from_integers<I: Into<BigInt>>(coeffs: impl IntoIterator<Item = I>) -> Self {
        SeriesPoly::new(coeffs.into_iter().map(int_ratio).collect())
    }

    pub fn one() -> Self {
        SeriesPoly::new(vec![Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of the `m`-th power; zero past the stored length.
    pub fn coeff(&self, m: usize) -> Rational {
        self.coeffs.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Exactly `order + 1` coefficients, padded with zeros.
    pub fn truncated(&self, order: usize) -> Self {
        SeriesPoly::new((0..=order).map(|m| self.coeff(m)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self, order: usize) -> Self {
        SeriesPoly::new(
            (0..=order)
                .map(|m| self.coeff(m) + other.coeff(m))
                .collect(),
        )
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        SeriesPoly::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn mul(&self, other: &Self, order: usize) -> Self {
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        SeriesPoly::new(out)
    }
}

/// `log p` truncated at `order`; needs `p(0) = 1`.
///
/// Uses `m q_m = m p_m - sum_{j=1}^{m-1} j q_j p_{m-j}`, which follows from `p' = q' p`.
pub fn series_log(p: &SeriesPoly, order: usize) -> Result<SeriesPoly> {
    if !p.coeff(0).is_one() {
        return Err(Error::domain(format!(
            "log needs constant term 1, got {}",
            p.coeff(0)
        )));
    }
    let mut q = vec![Rational::zero(); order + 1];
    for m in 1..=order {
        let mut acc = int_ratio(m) * p.coeff(m);
        for (j, qj) in q.iter().enumerate().take(m).skip(1) {
            acc -= int_ratio(j) * qj * p.coeff(m - j);
        }
        q[m] = acc / int_ratio(m);
    }
    Ok(SeriesPoly::new(q))
}

/// `p^exponent` truncated at `order`, by repeated squaring.
pub fn series_pow(p: &SeriesPoly, exponent: u32, order: usize) -> SeriesPoly {
    let mut result = SeriesPoly::one().truncated(order);
    let mut base = p.truncated(order);
    let mut e = exponent;
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul(&base, order);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base, order);
        }
    }
    result
}

/// `F(alpha, beta) = sum_m alpha^m beta^C(m,2) / m!` as a series in `alpha`.
pub fn deformed_exp_truncated(beta: &Rational, order: usize) -> SeriesPoly {
    SeriesPoly::new(
        (0..=order)
            .map(|m| {
                let power = num_traits::pow(beta.clone(), m * m.saturating_sub(1) / 2);
                power / int_ratio(factorial(m))
            })
            .collect(),
    )
}

/// The `m`-th term `alpha^m beta^C(m,2) / ((1+q)(1+q+q^2)...(1+q+...+q^(m-1)))`
/// of the three-variable Rogers-Ramanujan series. For `m < 2` the denominator
/// is the empty product.
pub fn rr_series_term(
    m: usize,
    alpha: &Rational,
    beta: &Rational,
    q: &Rational,
) -> Result<Rational> {
    let mut denominator = Rational::one();
    let mut q_bracket = Rational::one();
    let mut q_pow = Rational::one();
    for _ in 2..=m {
        q_pow *= q;
        q_bracket += &q_pow;
        denominator *= &q_bracket;
    }
    if denominator.is_zero() {
        return Err(Error::domain(format!(
            "q-factorial denominator vanishes for m = {m}, q = {q}"
        )));
    }
    let numerator = num_traits::pow(alpha.clone(), m)
        * num_traits::pow(beta.clone(), m * m.saturating_sub(1) / 2);
    Ok(numerator / denominator)
}

/// Truncated series in two variables, stored as a polynomial in `y` whose
/// coefficients are series in `z` (`rows[e]` is the coefficient of `y^e`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateSeries {
    y_order: usize,
    z_order: usize,
    rows: Vec<SeriesPoly>,
}

impl BivariateSeries {
    pub fn from_fn(
        y_order: usize,
        z_order: usize,
        mut f: impl FnMut(usize, usize) -> Rational,
    ) -> Self {
        let rows = (0..=y_order)
            .map(|e| SeriesPoly::new((0..=z_order).map(|m| f(e, m)).collect()))
            .collect();
        BivariateSeries {
            y_order,
            z_order,
            rows,
        }
    }

    pub fn one(y_order: usize, z_order: usize) -> Self {
        Self::from_fn(y_order, z_order, |e, m| {
            if e == 0 && m == 0 {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// `F(z, 1 + y)`: the coefficient of `y^e z^m` is `C(C(m,2), e) / m!`.
    pub fn deformed_exp_shifted(y_order: usize, z_order: usize) -> Self {
        Self::from_fn(y_order, z_order, |e, m| {
            int_ratio(binomial_usize(m * m.saturating_sub(1) / 2, e)) / int_ratio(factorial(m))
        })
    }

    pub fn coeff(&self, e: usize, m: usize) -> Rational {
        self.rows
            .get(e)
            .map(|r| r.coeff(m))
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(SeriesPoly::is_zero)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        Self::from_fn(self.y_order, self.z_order, |e, m| {
            f(&self.coeff(e, m), &other.coeff(e, m))
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::from_fn(self.y_order, self.z_order, |e, m| self.coeff(e, m) * factor)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut rows = vec![SeriesPoly::default().truncated(self.z_order); self.y_order + 1];
        for (i, a) in self.rows.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.rows.iter().enumerate().take(self.y_order + 1 - i) {
                if !b.is_zero() {
                    rows[i + j] = rows[i + j].add(&a.mul(b, self.z_order), self.z_order);
                }
            }
        }
        BivariateSeries {
            y_order: self.y_order,
            z_order: self.z_order,
            rows,
        }
    }

    /// `self^exponent` by repeated multiplication.
    pub fn pow(&self, exponent: u32) -> Self {
        (0..exponent).fold(Self::one(self.y_order, self.z_order), |acc, _| {
            acc.mul(self)
        })
    }

    /// `log(1 + u) = sum_j (-1)^(j+1) u^j / j` with `u = self - 1`.
    ///
    /// `u` has no constant term, so `u^j` vanishes under truncation once `j`
    /// exceeds the combined order and the sum terminates.
    pub fn log(&self) -> Result<Self> {
        if !self.coeff(0, 0).is_one() {
            return Err(Error::domain(format!(
                "log needs constant term 1, got {}",
                self.coeff(0, 0)
            )));
        }
        let u = self.sub(&Self::one(self.y_order, self.z_order));
        let mut power = u.clone();
        let mut total = Self::from_fn(self.y_order, self.z_order, |_, _| Rational::zero());
        let mut j = 1i64;
        while !power.is_zero() {
            let term = power.scale(&Rational::new(BigInt::one(), BigInt::from(j)));
            total = if j % 2 == 1 {
                total.add(&term)
            } else {
                total.sub(&term)
            };
            power = power.mul(&u);
            j += 1;
        }
        Ok(total)
    }
}
