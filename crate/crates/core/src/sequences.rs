//! Sequence families: Fibonacci and Lucas (signed indices), harmonic and
//! hyperharmonic numbers, incomplete Fibonacci/Lucas numbers,
//! hyperfibonacci/hyperlucas numbers, their generating functions, and the
//! `A`, `B`, `C` binomial-weighted sums that describe Fibonacci tableaux.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::exact::{choose, Integer, Rational};
use crate::series::{one_minus_t_pow, ts_from_rational, ts_log_inv, Polynomial, TruncatedSeries};

/// Above this index, point queries switch to fast doubling.
const LINEAR_LIMIT: u64 = 10_000;

fn non_negative(name: &str, v: i64) -> Result<u64> {
    if v < 0 {
        return domain(format!("{name} must be non-negative, got {v}"));
    }
    Ok(v as u64)
}

/// `F_n` by a linear pass.
pub fn fibonacci_linear(n: u64) -> Integer {
    let (mut a, mut b) = (Integer::zero(), Integer::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// `(F_n, F_{n+1})` by fast doubling.
fn fib_pair(n: u64) -> (Integer, Integer) {
    if n == 0 {
        return (Integer::zero(), Integer::one());
    }
    let (a, b) = fib_pair(n / 2);
    let c = &a * (&b * 2u32 - &a);
    let d = &a * &a + &b * &b;
    if n.is_multiple_of(2) {
        (c, d)
    } else {
        let e = &c + &d;
        (d, e)
    }
}

pub fn fibonacci_doubling(n: u64) -> Integer {
    fib_pair(n).0
}

/// `F_n` for any integer `n`, with `F_{-n} = (-1)^{n+1} F_n`.
pub fn fibonacci(n: i64) -> Integer {
    let m = n.unsigned_abs();
    let f = if m <= LINEAR_LIMIT { fibonacci_linear(m) } else { fibonacci_doubling(m) };
    if n < 0 && m.is_multiple_of(2) {
        -f
    } else {
        f
    }
}

/// `F_0..=F_n_max`.
pub fn fibonacci_table(n_max: usize) -> Vec<Integer> {
    linear_table(Integer::zero(), Integer::one(), n_max)
}

/// `L_0..=L_n_max`.
pub fn lucas_table(n_max: usize) -> Vec<Integer> {
    linear_table(Integer::from(2), Integer::one(), n_max)
}

fn linear_table(a: Integer, b: Integer, n_max: usize) -> Vec<Integer> {
    let mut out = Vec::with_capacity(n_max + 2);
    out.push(a);
    out.push(b);
    for i in 2..=n_max {
        let next = &out[i - 1] + &out[i - 2];
        out.push(next);
    }
    out.truncate(n_max + 1);
    out
}

/// `L_n` for any integer `n`, with `L_{-n} = (-1)^n L_n`.
pub fn lucas(n: i64) -> Integer {
    let m = n.unsigned_abs();
    let l = if m <= LINEAR_LIMIT {
        let (mut a, mut b) = (Integer::from(2), Integer::one());
        for _ in 0..m {
            let next = &a + &b;
            a = std::mem::replace(&mut b, next);
        }
        a
    } else {
        let (f, f1) = fib_pair(m);
        // L_m = F_{m-1} + F_{m+1} = 2 F_{m+1} - F_m
        f1 * 2u32 - f
    };
    if n < 0 && m % 2 == 1 {
        -l
    } else {
        l
    }
}

/// `H_n = 1 + 1/2 + ... + 1/n`, with `H_0 = 0`.
pub fn harmonic(n: i64) -> Result<Rational> {
    let n = non_negative("n", n)?;
    Ok(harmonic_u(n))
}

fn harmonic_u(n: u64) -> Rational {
    (1..=n).map(|k| Rational::new(1, k).expect("k >= 1")).sum()
}

/// `H_n^{(r)}`, the `r`-fold partial sum of the harmonic numbers.
///
/// Point queries use `C(n+r-1, r-1) (H_{n+r-1} - H_{r-1})`; order zero is
/// `1/n` with `H_0^{(0)} = 0`.
pub fn hyperharmonic(n: i64, r: i64) -> Result<Rational> {
    let n = non_negative("n", n)?;
    let r = non_negative("r", r)?;
    if n == 0 {
        return Ok(Rational::zero());
    }
    if r == 0 {
        return Rational::new(1, n);
    }
    let scale = Rational::from(choose(n + r - 1, r - 1));
    Ok(scale * (harmonic_u(n + r - 1) - harmonic_u(r - 1)))
}

/// `H_0^{(r)}..=H_{n_max}^{(r)}` by repeated partial sums.
pub fn hyperharmonic_row(r: i64, n_max: usize) -> Result<Vec<Rational>> {
    let r = non_negative("r", r)?;
    let mut row: Vec<Rational> = (0..=n_max)
        .map(|n| if n == 0 { Rational::zero() } else { Rational::new(1, n as u64).expect("n >= 1") })
        .collect();
    for _ in 0..r {
        partial_sums_in_place(&mut row);
    }
    Ok(row)
}

fn partial_sums_in_place<T: for<'a> std::ops::AddAssign<&'a T> + Clone>(v: &mut [T]) {
    for i in 1..v.len() {
        let prev = v[i - 1].clone();
        v[i] += &prev;
    }
}

/// `F_n(k)`, the coefficient of `t^n` in the incomplete Fibonacci
/// generating function.
///
/// For `n >= 2k + 1` this is `sum_{j=0}^{k} C(n-1-j, j)`; for `n <= 2k` it
/// is zero.
pub fn incomplete_fibonacci(n: i64, k: i64) -> Result<Integer> {
    let n = non_negative("n", n)?;
    let k = non_negative("k", k)?;
    if n <= 2 * k {
        return Ok(Integer::zero());
    }
    Ok((0..=k).map(|j| choose(n - 1 - j, j)).sum())
}

/// `L_n(k)`, the coefficient of `t^n` in the incomplete Lucas generating
/// function.
///
/// For `n >= 1` and `n >= 2k` this is `sum_{j=0}^{k} n/(n-j) C(n-j, j)`;
/// below `2k` it is zero, and `L_0(0) = 2`.
pub fn incomplete_lucas(n: i64, k: i64) -> Result<Integer> {
    let n = non_negative("n", n)?;
    let k = non_negative("k", k)?;
    if n < 2 * k {
        return Ok(Integer::zero());
    }
    if n == 0 {
        return Ok(Integer::from(2));
    }
    Ok((0..=k).map(|j| choose(n - j, j) * n / (n - j)).sum())
}

fn hyper_partial_sums(base: Vec<Integer>, r: u64) -> Vec<Integer> {
    let mut row = base;
    for _ in 0..r {
        partial_sums_in_place(&mut row);
    }
    row
}

/// `F_n^{(r)} = sum_{k=0}^{n} F_k^{(r-1)}`, `F_n^{(0)} = F_n`.
pub fn hyperfibonacci(n: i64, r: i64) -> Result<Integer> {
    let n = non_negative("n", n)?;
    let r = non_negative("r", r)?;
    Ok(hyper_partial_sums(fibonacci_table(n as usize), r).pop().expect("nonempty"))
}

/// `L_n^{(r)} = sum_{k=0}^{n} L_k^{(r-1)}`, `L_n^{(0)} = L_n`.
///
/// The sum forces `L_0^{(r)} = 2` and `L_1^{(r)} = 2r + 1`.
pub fn hyperlucas(n: i64, r: i64) -> Result<Integer> {
    let n = non_negative("n", n)?;
    let r = non_negative("r", r)?;
    Ok(hyper_partial_sums(lucas_table(n as usize), r).pop().expect("nonempty"))
}

pub fn hyperfibonacci_row(r: i64, n_max: usize) -> Result<Vec<Integer>> {
    let r = non_negative("r", r)?;
    Ok(hyper_partial_sums(fibonacci_table(n_max), r))
}

pub fn hyperlucas_row(r: i64, n_max: usize) -> Result<Vec<Integer>> {
    let r = non_negative("r", r)?;
    Ok(hyper_partial_sums(lucas_table(n_max), r))
}

fn int_poly(coeffs: &[Integer]) -> Polynomial {
    Polynomial::new(coeffs.iter().map(Rational::from).collect())
}

fn sign(even: bool) -> Integer {
    if even {
        Integer::one()
    } else {
        -Integer::one()
    }
}

fn subseq_denominator(k: i64) -> Polynomial {
    int_poly(&[Integer::one(), -lucas(k), sign(k % 2 == 0)])
}

/// `sum_n F_{kn+r} t^n = (F_r + (-1)^r F_{k-r} t) / (1 - L_k t + (-1)^k t^2)`.
pub fn fib_subseq_gf(k: i64, r: i64, order: usize) -> Result<TruncatedSeries> {
    if k < 1 {
        return domain(format!("fib_subseq_gf needs k >= 1, got {k}"));
    }
    non_negative("r", r)?;
    let num = int_poly(&[fibonacci(r), sign(r % 2 == 0) * fibonacci(k - r)]);
    ts_from_rational(&num, &subseq_denominator(k), order)
}

/// `sum_n L_{kn+r} t^n = (L_r + (-1)^{r-1} L_{k-r} t) / (1 - L_k t + (-1)^k t^2)`.
pub fn lucas_subseq_gf(k: i64, r: i64, order: usize) -> Result<TruncatedSeries> {
    if k < 1 {
        return domain(format!("lucas_subseq_gf needs k >= 1, got {k}"));
    }
    non_negative("r", r)?;
    let num = int_poly(&[lucas(r), sign(r % 2 == 1) * lucas(k - r)]);
    ts_from_rational(&num, &subseq_denominator(k), order)
}

fn golden_denominator(order: usize) -> TruncatedSeries {
    Polynomial::from_ints(&[1, -1, -1]).to_series(order)
}

/// `R_k(t) = t^{2k+1} [(F_{2k+1} + F_{2k} t)(1-t)^{k+1} - t^2] / [(1-t)^{k+1}(1-t-t^2)]`.
pub fn incomplete_fib_gf(k: i64, order: usize) -> Result<TruncatedSeries> {
    let ku = non_negative("k", k)?;
    let tail = one_minus_t_pow(k + 1, order);
    let lead = int_poly(&[fibonacci(2 * k + 1), fibonacci(2 * k)]).to_series(order);
    let num = lead.mul(&tail).sub(&TruncatedSeries::monomial(Rational::one(), 2, order));
    let q = num.div(&tail)?.div(&golden_denominator(order))?;
    Ok(q.shift(2 * ku as usize + 1))
}

/// `S_k(t) = t^{2k} [(L_{2k} + L_{2k-1} t)(1-t)^{k+1} - t^2 (2-t)] / [(1-t)^{k+1}(1-t-t^2)]`.
pub fn incomplete_lucas_gf(k: i64, order: usize) -> Result<TruncatedSeries> {
    let ku = non_negative("k", k)?;
    let tail = one_minus_t_pow(k + 1, order);
    let lead = int_poly(&[lucas(2 * k), lucas(2 * k - 1)]).to_series(order);
    let corr = Polynomial::from_ints(&[0, 0, 2, -1]).to_series(order);
    let num = lead.mul(&tail).sub(&corr);
    let q = num.div(&tail)?.div(&golden_denominator(order))?;
    Ok(q.shift(2 * ku as usize))
}

/// `t / ((1 - t - t^2)(1 - t)^r)`.
pub fn hyperfib_gf(r: i64, order: usize) -> Result<TruncatedSeries> {
    non_negative("r", r)?;
    let num = Polynomial::from_ints(&[0, 1]).to_series(order);
    num.div(&golden_denominator(order))?.div(&one_minus_t_pow(r, order))
}

/// `(2 - t) / ((1 - t - t^2)(1 - t)^r)`.
pub fn hyperlucas_gf(r: i64, order: usize) -> Result<TruncatedSeries> {
    non_negative("r", r)?;
    let num = Polynomial::from_ints(&[2, -1]).to_series(order);
    num.div(&golden_denominator(order))?.div(&one_minus_t_pow(r, order))
}

/// `-ln(1 - t) / (1 - t)^r`.
pub fn hyperharmonic_gf(r: i64, order: usize) -> Result<TruncatedSeries> {
    non_negative("r", r)?;
    ts_log_inv(order).div(&one_minus_t_pow(r, order))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbcKind {
    A,
    B,
    C,
}

/// Which two-term sequence feeds the `A`/`B`/`C` sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Base {
    Fibonacci,
    Lucas,
}

impl Base {
    pub fn value(self, n: i64) -> Integer {
        match self {
            Base::Fibonacci => fibonacci(n),
            Base::Lucas => lucas(n),
        }
    }
}

/// `A_{n,k} = sum_{i<k} C(n+k-i-2, n-1) F_{2i+1}`,
/// `B_{n,k} = sum_{i<n} C(n+k-i-2, k-1) F_i`,
/// `C_{n,k} = sum_{i<k} C(n+k-i-2, n-1) F_{2i}`.
pub fn abc_coeff(kind: AbcKind, n: i64, k: i64) -> Result<Integer> {
    abc_coeff_over(Base::Fibonacci, kind, n, k)
}

/// The same sums with every `F` replaced by `L`.
pub fn abc_coeff_over(base: Base, kind: AbcKind, n: i64, k: i64) -> Result<Integer> {
    if n < 1 || k < 1 {
        return domain(format!("abc coefficients need n, k >= 1, got n={n}, k={k}"));
    }
    let (nu, ku) = (n as u64, k as u64);
    let sum = match kind {
        AbcKind::A => (0..ku).map(|i| choose(nu + ku - i - 2, nu - 1) * base.value(2 * i as i64 + 1)).sum(),
        AbcKind::B => (0..nu).map(|i| choose(nu + ku - i - 2, ku - 1) * base.value(i as i64)).sum(),
        AbcKind::C => (0..ku).map(|i| choose(nu + ku - i - 2, nu - 1) * base.value(2 * i as i64)).sum(),
    };
    Ok(sum)
}

/// A named sequence family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceSpec {
    Fibonacci,
    Lucas,
    Harmonic,
    Hyperharmonic { r: i64 },
    IncompleteFib { k: i64 },
    IncompleteLucas { k: i64 },
    Hyperfib { r: i64 },
    Hyperlucas { r: i64 },
}

impl SequenceSpec {
    pub const NAMES: [&'static str; 8] = [
        "fibonacci",
        "lucas",
        "harmonic",
        "hyperharmonic",
        "incomplete-fib",
        "incomplete-lucas",
        "hyperfib",
        "hyperlucas",
    ];

    /// Builds a spec from a kebab-case family name and its parameters.
    /// Unused or missing parameters are usage errors.
    pub fn from_name(name: &str, params: &BTreeMap<String, i64>) -> Result<Self> {
        let take = |key: &str| -> Result<i64> {
            let v = *params
                .get(key)
                .ok_or_else(|| Error::Usage(format!("family {name} needs --{key}")))?;
            non_negative(key, v)?;
            Ok(v)
        };
        let (spec, used): (SequenceSpec, &[&str]) = match name {
            "fibonacci" => (SequenceSpec::Fibonacci, &[]),
            "lucas" => (SequenceSpec::Lucas, &[]),
            "harmonic" => (SequenceSpec::Harmonic, &[]),
            "hyperharmonic" => (SequenceSpec::Hyperharmonic { r: take("r")? }, &["r"]),
            "incomplete-fib" => (SequenceSpec::IncompleteFib { k: take("k")? }, &["k"]),
            "incomplete-lucas" => (SequenceSpec::IncompleteLucas { k: take("k")? }, &["k"]),
            "hyperfib" => (SequenceSpec::Hyperfib { r: take("r")? }, &["r"]),
            "hyperlucas" => (SequenceSpec::Hyperlucas { r: take("r")? }, &["r"]),
            other => return Err(Error::Usage(format!("unknown sequence family {other:?}"))),
        };
        if let Some(extra) = params.keys().find(|k| !used.contains(&k.as_str())) {
            return Err(Error::Usage(format!("family {name} does not take --{extra}")));
        }
        Ok(spec)
    }

    pub fn name(&self) -> &'static str {
        match self {
            SequenceSpec::Fibonacci => "fibonacci",
            SequenceSpec::Lucas => "lucas",
            SequenceSpec::Harmonic => "harmonic",
            SequenceSpec::Hyperharmonic { .. } => "hyperharmonic",
            SequenceSpec::IncompleteFib { .. } => "incomplete-fib",
            SequenceSpec::IncompleteLucas { .. } => "incomplete-lucas",
            SequenceSpec::Hyperfib { .. } => "hyperfib",
            SequenceSpec::Hyperlucas { .. } => "hyperlucas",
        }
    }

    /// Values at `0..=n_max`.
    pub fn values(&self, n_max: usize) -> Result<Vec<Rational>> {
        let ints = |v: Vec<Integer>| v.into_iter().map(Rational::from).collect();
        Ok(match *self {
            SequenceSpec::Fibonacci => ints(fibonacci_table(n_max)),
            SequenceSpec::Lucas => ints(lucas_table(n_max)),
            SequenceSpec::Harmonic => hyperharmonic_row(1, n_max)?,
            SequenceSpec::Hyperharmonic { r } => hyperharmonic_row(r, n_max)?,
            SequenceSpec::IncompleteFib { k } => (0..=n_max as i64)
                .map(|n| incomplete_fibonacci(n, k).map(Rational::from))
                .collect::<Result<_>>()?,
            SequenceSpec::IncompleteLucas { k } => (0..=n_max as i64)
                .map(|n| incomplete_lucas(n, k).map(Rational::from))
                .collect::<Result<_>>()?,
            SequenceSpec::Hyperfib { r } => ints(hyperfibonacci_row(r, n_max)?),
            SequenceSpec::Hyperlucas { r } => ints(hyperlucas_row(r, n_max)?),
        })
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceSpec::Hyperharmonic { r } | SequenceSpec::Hyperfib { r } | SequenceSpec::Hyperlucas { r } => {
                write!(f, "{}(r={r})", self.name())
            }
            SequenceSpec::IncompleteFib { k } | SequenceSpec::IncompleteLucas { k } => {
                write!(f, "{}(k={k})", self.name())
            }
            _ => f.write_str(self.name()),
        }
    }
}

impl FromStr for AbcKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(AbcKind::A),
            "B" | "b" => Ok(AbcKind::B),
            "C" | "c" => Ok(AbcKind::C),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn int(v: i64) -> Integer {
        Integer::from(v)
    }

    fn coeff_ints(s: &TruncatedSeries) -> Vec<Integer> {
        s.coeffs().iter().map(|c| c.to_integer().expect("integer coefficient")).collect()
    }

    #[test]
    fn fibonacci_examples() {
        assert_eq!(fibonacci(0), int(0));
        assert_eq!(fibonacci(10), int(55));
        assert_eq!(fibonacci(-3), int(2));
        assert_eq!(fibonacci(-4), int(-3));
    }

    #[test]
    fn fibonacci_by_recurrence_oracle() {
        let mut seq = vec![int(0), int(1)];
        for i in 2..=300 {
            let next = &seq[i - 1] + &seq[i - 2];
            seq.push(next);
        }
        for (n, f) in seq.iter().enumerate() {
            assert_eq!(&fibonacci(n as i64), f);
            assert_eq!(&fibonacci_doubling(n as u64), f);
        }
        assert_eq!(fibonacci_table(300), seq);
    }

    #[test]
    fn doubling_agrees_past_linear_limit() {
        for n in [LINEAR_LIMIT - 1, LINEAR_LIMIT, LINEAR_LIMIT + 1, 12_345] {
            assert_eq!(fibonacci_linear(n), fibonacci_doubling(n), "n={n}");
        }
        let n = 20_001i64;
        assert_eq!(lucas(n), fibonacci(n - 1) + fibonacci(n + 1));
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(lucas(0), int(2));
        assert_eq!(lucas(7), int(29));
        assert_eq!(lucas(-1), int(-1));
        for n in -30i64..=30 {
            assert_eq!(lucas(n), fibonacci(n - 1) + fibonacci(n + 1), "n={n}");
        }
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic(0).unwrap(), Rational::zero());
        assert_eq!(harmonic(4).unwrap(), rat(25, 12));
        assert_eq!(harmonic(1).unwrap(), Rational::one());
        assert!(harmonic(-1).is_err());
    }

    #[test]
    fn hyperharmonic_examples() {
        assert_eq!(hyperharmonic(0, 5).unwrap(), Rational::zero());
        assert_eq!(hyperharmonic(3, 2).unwrap(), rat(13, 3));
        assert_eq!(hyperharmonic(4, 0).unwrap(), rat(1, 4));
        assert_eq!(hyperharmonic(0, 0).unwrap(), Rational::zero());
        for n in 0..20 {
            assert_eq!(hyperharmonic(n, 1).unwrap(), harmonic(n).unwrap());
        }
        assert!(hyperharmonic(-1, 2).is_err());
        assert!(hyperharmonic(2, -1).is_err());
    }

    #[test]
    fn hyperharmonic_closed_form_matches_partial_sums() {
        for r in 0..=10 {
            let row = hyperharmonic_row(r, 40).unwrap();
            for (n, v) in row.iter().enumerate() {
                assert_eq!(&hyperharmonic(n as i64, r).unwrap(), v, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn incomplete_fibonacci_examples() {
        assert_eq!(incomplete_fibonacci(5, 2).unwrap(), fibonacci(5));
        assert_eq!(incomplete_fibonacci(7, 2).unwrap(), int(12));
        assert_eq!(incomplete_fibonacci(2, 3).unwrap(), int(0));
        assert!(incomplete_fibonacci(-1, 0).is_err());
    }

    #[test]
    fn incomplete_lucas_examples() {
        assert_eq!(incomplete_lucas(4, 2).unwrap(), lucas(4));
        assert_eq!(incomplete_lucas(4, 1).unwrap(), int(5));
        assert_eq!(incomplete_lucas(1, 3).unwrap(), int(0));
        assert_eq!(incomplete_lucas(0, 0).unwrap(), int(2));
        assert!(incomplete_lucas(3, -1).is_err());
    }

    #[test]
    fn full_cap_recovers_ordinary_numbers() {
        for n in 1i64..=40 {
            assert_eq!(incomplete_fibonacci(n, (n - 1) / 2).unwrap(), fibonacci(n), "F_{n}");
            assert_eq!(incomplete_lucas(n, n / 2).unwrap(), lucas(n), "L_{n}");
        }
    }

    #[test]
    fn hyper_fibonacci_lucas_examples() {
        for n in 0..15 {
            assert_eq!(hyperfibonacci(n, 0).unwrap(), fibonacci(n));
            assert_eq!(hyperlucas(n, 0).unwrap(), lucas(n));
        }
        for r in 0..6 {
            assert_eq!(hyperfibonacci(0, r).unwrap(), int(0));
        }
        assert_eq!(hyperfibonacci(4, 1).unwrap(), int(7));
        assert_eq!(hyperfibonacci(4, 1).unwrap(), fibonacci(6) - 1);
        assert_eq!(hyperlucas(3, 1).unwrap(), int(10));
        assert_eq!(hyperlucas(0, 1).unwrap(), int(2));
        assert_eq!(hyperlucas(1, 1).unwrap(), int(3));
    }

    #[test]
    fn subsequence_gfs() {
        let ints = |v: &[i64]| v.iter().map(|&x| int(x)).collect::<Vec<_>>();
        assert_eq!(coeff_ints(&fib_subseq_gf(2, 1, 3).unwrap()), ints(&[1, 2, 5, 13]));
        assert_eq!(coeff_ints(&fib_subseq_gf(1, 0, 5).unwrap()), ints(&[0, 1, 1, 2, 3, 5]));
        assert_eq!(coeff_ints(&fib_subseq_gf(2, 0, 4).unwrap()), ints(&[0, 1, 3, 8, 21]));
        assert_eq!(coeff_ints(&lucas_subseq_gf(2, 0, 3).unwrap()), ints(&[2, 3, 7, 18]));
        assert_eq!(coeff_ints(&lucas_subseq_gf(1, 0, 4).unwrap()), ints(&[2, 1, 3, 4, 7]));
        assert_eq!(coeff_ints(&lucas_subseq_gf(2, 1, 3).unwrap()), ints(&[1, 4, 11, 29]));
        assert!(fib_subseq_gf(0, 0, 3).is_err());
        assert!(lucas_subseq_gf(0, 0, 3).is_err());
    }

    #[test]
    fn subsequence_gfs_match_direct_values() {
        for k in 1i64..=5 {
            for r in 0..k {
                let f = fib_subseq_gf(k, r, 20).unwrap();
                let l = lucas_subseq_gf(k, r, 20).unwrap();
                for n in 0..=20i64 {
                    assert_eq!(f.coeffs()[n as usize], Rational::from(fibonacci(k * n + r)));
                    assert_eq!(l.coeffs()[n as usize], Rational::from(lucas(k * n + r)));
                }
            }
        }
    }

    #[test]
    fn incomplete_gf_examples() {
        let ints = |v: &[i64]| v.iter().map(|&x| int(x)).collect::<Vec<_>>();
        assert_eq!(coeff_ints(&incomplete_fib_gf(0, 4).unwrap()), ints(&[0, 1, 1, 1, 1]));
        assert_eq!(coeff_ints(&incomplete_fib_gf(1, 4).unwrap()), ints(&[0, 0, 0, 2, 3]));
        assert_eq!(coeff_ints(&incomplete_lucas_gf(0, 3).unwrap()), ints(&[2, 1, 1, 1]));
        assert_eq!(coeff_ints(&incomplete_lucas_gf(1, 4).unwrap()), ints(&[0, 0, 3, 4, 5]));
        for k in 0..6i64 {
            let r = incomplete_fib_gf(k, 20).unwrap();
            assert!(r.coeffs()[..=(2 * k as usize)].iter().all(Rational::is_zero));
            let s = incomplete_lucas_gf(k, 20).unwrap();
            if k >= 1 {
                assert!(s.coeffs()[..(2 * k as usize)].iter().all(Rational::is_zero));
            }
        }
    }

    #[test]
    fn incomplete_gfs_match_sums() {
        for k in 0..=19i64 {
            let r = incomplete_fib_gf(k, 40).unwrap();
            let s = incomplete_lucas_gf(k, 40).unwrap();
            for n in 0..=40i64 {
                assert_eq!(r.coeffs()[n as usize], Rational::from(incomplete_fibonacci(n, k).unwrap()));
                assert_eq!(s.coeffs()[n as usize], Rational::from(incomplete_lucas(n, k).unwrap()));
            }
        }
    }

    #[test]
    fn abc_examples() {
        assert_eq!(abc_coeff(AbcKind::A, 1, 2).unwrap(), int(3));
        assert_eq!(abc_coeff(AbcKind::B, 1, 2).unwrap(), int(0));
        assert_eq!(abc_coeff(AbcKind::C, 2, 1).unwrap(), int(0));
        assert!(abc_coeff(AbcKind::A, 0, 1).is_err());
        assert!(abc_coeff(AbcKind::B, 1, 0).is_err());
    }

    #[test]
    fn generating_functions_of_hyper_families() {
        for r in 0..=8i64 {
            let f = hyperfib_gf(r, 40).unwrap();
            let l = hyperlucas_gf(r, 40).unwrap();
            let fr = hyperfibonacci_row(r, 40).unwrap();
            let lr = hyperlucas_row(r, 40).unwrap();
            for n in 0..=40 {
                assert_eq!(f.coeffs()[n], Rational::from(fr[n].clone()));
                assert_eq!(l.coeffs()[n], Rational::from(lr[n].clone()));
            }
        }
    }

    #[test]
    fn spec_parsing() {
        let mut p = BTreeMap::new();
        assert_eq!(SequenceSpec::from_name("fibonacci", &p).unwrap(), SequenceSpec::Fibonacci);
        assert!(matches!(SequenceSpec::from_name("hyperharmonic", &p), Err(Error::Usage(_))));
        p.insert("r".to_string(), 2);
        assert_eq!(SequenceSpec::from_name("hyperharmonic", &p).unwrap(), SequenceSpec::Hyperharmonic { r: 2 });
        assert!(SequenceSpec::from_name("fibonacci", &p).is_err());
        assert!(SequenceSpec::from_name("nope", &BTreeMap::new()).is_err());
        p.insert("r".to_string(), -1);
        assert!(matches!(SequenceSpec::from_name("hyperfib", &p), Err(Error::Domain(_))));
    }

    #[test]
    fn table_values() {
        let v = SequenceSpec::Hyperharmonic { r: 2 }.values(3).unwrap();
        assert_eq!(v, vec![rat(0, 1), rat(1, 1), rat(5, 2), rat(13, 3)]);
        let v = SequenceSpec::Hyperfib { r: 1 }.values(4).unwrap();
        assert_eq!(v, [0, 1, 2, 4, 7].map(Rational::from).to_vec());
        assert_eq!(SequenceSpec::Harmonic.values(0).unwrap(), vec![Rational::zero()]);
    }
}
