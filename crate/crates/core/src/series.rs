//! Truncated formal power series over [`Rational`].
//!
//! A [`TruncatedSeries`] of order `N` carries exactly the coefficients
//! `c_0..=c_N`. Binary operations truncate to the smaller order of their
//! inputs, so no result ever claims more precision than it has.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Dense polynomial with trailing zeros trimmed. The zero polynomial has
/// no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn to_series(&self, order: usize) -> TruncatedSeries {
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (slot, c) in coeffs.iter_mut().zip(&self.coeffs) {
            *slot = c.clone();
        }
        TruncatedSeries { coeffs }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SeriesRepr", into = "SeriesRepr")]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    coeffs: Vec<Rational>,
}

impl TryFrom<SeriesRepr> for TruncatedSeries {
    type Error = String;

    fn try_from(repr: SeriesRepr) -> std::result::Result<Self, String> {
        if repr.coeffs.len() != repr.order + 1 {
            return Err(format!(
                "order {} needs {} coefficients, got {}",
                repr.order,
                repr.order + 1,
                repr.coeffs.len()
            ));
        }
        Ok(TruncatedSeries { coeffs: repr.coeffs })
    }
}

impl From<TruncatedSeries> for SeriesRepr {
    fn from(s: TruncatedSeries) -> Self {
        SeriesRepr { order: s.order(), coeffs: s.coeffs }
    }
}

/// Outcome of a coefficient-wise comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesMatch {
    Equal,
    Mismatch { index: usize, left: Rational, right: Rational },
}

impl SeriesMatch {
    pub fn is_equal(&self) -> bool {
        matches!(self, SeriesMatch::Equal)
    }
}

impl TruncatedSeries {
    /// Panics if `coeffs` is empty: a series always has a constant term.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        TruncatedSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    /// Builds `sum f(n) t^n` for `n <= order`.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        TruncatedSeries { coeffs: (0..=order).map(f).collect() }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(Rational::one(), 0, order)
    }

    /// `c t^power`, which is zero when `power > order`.
    pub fn monomial(c: Rational, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    /// `1 - t`.
    pub fn one_minus_t(order: usize) -> Self {
        Polynomial::from_ints(&[1, -1]).to_series(order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&Rational> {
        self.coeffs.get(i)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        TruncatedSeries { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::from_fn(order, |i| &self.coeffs[i] + &other.coeffs[i])
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::from_fn(order, |i| &self.coeffs[i] - &other.coeffs[i])
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|x| -x).collect() }
    }

    /// Multiplies by `t^m`, keeping the order.
    pub fn shift(&self, m: usize) -> Self {
        let order = self.order();
        Self::from_fn(order, |i| if i >= m { self.coeffs[i - m].clone() } else { Rational::zero() })
    }

    /// Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// Quotient by a unit series, via `c_n = (a_n - sum_{k>=1} b_k c_{n-k}) / b_0`.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        let b0 = &divisor.coeffs[0];
        if b0.is_zero() {
            return Err(Error::NonUnit);
        }
        let inv_b0 = b0.recip()?;
        let order = self.order().min(divisor.order());
        let mut out: Vec<Rational> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.coeffs[n].clone();
            for k in 1..=n {
                let b = &divisor.coeffs[k];
                if !b.is_zero() {
                    acc -= &(b * &out[n - k]);
                }
            }
            out.push(acc * &inv_b0);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// `self(inner(t))`, by Horner's rule.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::Composition);
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Self::monomial(self.coeffs[order].clone(), 0, order);
        for c in self.coeffs[..order].iter().rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// `self^k` by repeated multiplication.
    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(self.order()), |acc, _| acc.mul(self))
    }
}

/// Expands `num / den` to the given order.
pub fn ts_from_rational(num: &Polynomial, den: &Polynomial, order: usize) -> Result<TruncatedSeries> {
    if den.coeffs().first().is_none_or(Rational::is_zero) {
        return Err(Error::NonUnit);
    }
    num.to_series(order).div(&den.to_series(order))
}

/// `-ln(1 - t) = sum_{n>=1} t^n / n`.
pub fn ts_log_inv(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |n| {
        if n == 0 {
            Rational::zero()
        } else {
            Rational::recip_of(n as i64).expect("n >= 1")
        }
    })
}

/// `(1 - t)^k` for any integer `k`, built by repeated multiplication or
/// division.
pub fn one_minus_t_pow(k: i64, order: usize) -> TruncatedSeries {
    let base = TruncatedSeries::one_minus_t(order);
    let mut acc = TruncatedSeries::one(order);
    for _ in 0..k.unsigned_abs() {
        acc = if k >= 0 { acc.mul(&base) } else { acc.div(&base).expect("1 - t is a unit") };
    }
    acc
}

/// Exact comparison of `c_0..=c_upto`.
pub fn ts_eq(a: &TruncatedSeries, b: &TruncatedSeries, upto: usize) -> Result<SeriesMatch> {
    let order = a.order().min(b.order());
    if upto > order {
        return Err(Error::Precision { upto, order });
    }
    Ok(a.coeffs[..=upto]
        .iter()
        .zip(&b.coeffs[..=upto])
        .position(|(x, y)| x != y)
        .map_or(SeriesMatch::Equal, |index| SeriesMatch::Mismatch {
            index,
            left: a.coeffs[index].clone(),
            right: b.coeffs[index].clone(),
        }))
}
