//! The two tableau algorithms.
//!
//! [`SymmetricTableau`] fills `a_n^k = a_{n-1}^k + a_n^{k-1}` from a row seed
//! (`a_n^0`) and a column seed (`a_0^k`). [`EulerSeidelTableau`] fills
//! `a_n^k = a_n^{k-1} + a_{n+1}^{k-1}` from a single seed row. In both, `k`
//! indexes rows and `n` columns.
//!
//! Tableaux memoize entries and grow on demand: asking for `(n, k)` fills
//! the rectangle it depends on iteratively. They take `&mut self`, so a
//! tableau lives on one thread at a time.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::Deserialize;

use crate::error::{domain, Error, Result};
use crate::exact::{choose, Rational};
use crate::sequences::{fibonacci, lucas};
use crate::series::{one_minus_t_pow, TruncatedSeries};

type SeedFn = dyn Fn(usize) -> Rational + Send + Sync;

/// One seed sequence: either a closed-form rule or a finite table.
#[derive(Clone)]
pub enum Seed {
    Rule(Arc<SeedFn>),
    Table(Arc<Vec<Rational>>),
}

impl Seed {
    pub fn rule(f: impl Fn(usize) -> Rational + Send + Sync + 'static) -> Self {
        Seed::Rule(Arc::new(f))
    }

    pub fn table(values: Vec<Rational>) -> Self {
        Seed::Table(Arc::new(values))
    }

    pub fn get(&self, i: usize) -> Result<Rational> {
        match self {
            Seed::Rule(f) => Ok(f(i)),
            Seed::Table(v) => v
                .get(i)
                .cloned()
                .ok_or_else(|| Error::Domain(format!("seed has {} values, index {i} requested", v.len()))),
        }
    }

    /// Number of available values, `None` when unbounded.
    pub fn len(&self) -> Option<usize> {
        match self {
            Seed::Rule(_) => None,
            Seed::Table(v) => Some(v.len()),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }
}

impl fmt::Debug for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Seed::Rule(_) => f.write_str("Seed::Rule(..)"),
            Seed::Table(v) => f.debug_tuple("Seed::Table").field(v).finish(),
        }
    }
}

/// Row seed `a_n^0` and column seed `a_0^n`, agreeing at the corner.
#[derive(Clone, Debug)]
pub struct SeedPair {
    row: Seed,
    col: Seed,
}

impl SeedPair {
    pub fn new(row: Seed, col: Seed) -> Result<Self> {
        let (r0, c0) = (row.get(0)?, col.get(0)?);
        if r0 != c0 {
            return domain(format!("corner mismatch: row seed gives {r0}, column seed gives {c0}"));
        }
        Ok(SeedPair { row, col })
    }

    pub fn from_tables(row: Vec<Rational>, col: Vec<Rational>) -> Result<Self> {
        SeedPair::new(Seed::table(row), Seed::table(col))
    }

    /// Numerators and denominators drawn uniformly from `[-9, 9] \ {0}`.
    pub fn random(rng: &mut impl Rng, len: usize) -> Self {
        let mut draw = || {
            let mut nz = || loop {
                let v: i64 = rng.gen_range(-9..=9);
                if v != 0 {
                    break v;
                }
            };
            let p = nz();
            Rational::new(p, nz()).expect("nonzero")
        };
        let corner = draw();
        let mut row = vec![corner.clone()];
        row.extend((1..len).map(|_| draw()));
        let mut col = vec![corner];
        col.extend((1..len).map(|_| draw()));
        SeedPair { row: Seed::table(row), col: Seed::table(col) }
    }

    pub fn row_seed(&self, n: usize) -> Result<Rational> {
        self.row.get(n)
    }

    pub fn col_seed(&self, k: usize) -> Result<Rational> {
        self.col.get(k)
    }

    pub fn row(&self) -> &Seed {
        &self.row
    }

    pub fn col(&self) -> &Seed {
        &self.col
    }

    /// Exchanging the seeds transposes the tableau.
    pub fn swapped(&self) -> Self {
        SeedPair { row: self.col.clone(), col: self.row.clone() }
    }
}

/// Seed document accepted by the `matrix` command.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedFile {
    pub row_seed: Vec<Rational>,
    pub col_seed: Vec<Rational>,
}

impl SeedFile {
    pub fn into_seed_pair(self) -> Result<SeedPair> {
        SeedPair::from_tables(self.row_seed, self.col_seed)
    }
}

/// Named seed pairs.
///
/// The Fibonacci and Lucas presets all put `0` in the corner, which is
/// what the displayed Fibonacci matrix shows; the corner never feeds an
/// entry with `n, k >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// `a_n^0 = 1/(n+1)`, `a_0^n = 1`: entries are `H_{n+1}^{(k)}`.
    Hyperharmonic,
    /// `a_n^0 = F_{n-1}`, `a_0^n = F_{2n-1}`: entries are `F_{n+2k-1}` for `k >= 1`.
    FibOdd,
    /// `a_n^0 = F_{2n-1}`, `a_0^n = F_{2n}`.
    FibEvenOdd,
    /// `a_n^0 = L_{n-1}`, `a_0^n = L_{2n-1}`: entries are `L_{n+2k-1}` for `k >= 1`.
    LucasOdd,
    /// `a_n^0 = L_{2n-1}`, `a_0^n = L_{2n}`.
    LucasEvenOdd,
}

impl Preset {
    pub const ALL: [Preset; 5] =
        [Preset::Hyperharmonic, Preset::FibOdd, Preset::FibEvenOdd, Preset::LucasOdd, Preset::LucasEvenOdd];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Hyperharmonic => "hyperharmonic",
            Preset::FibOdd => "fib-odd",
            Preset::FibEvenOdd => "fib-even-odd",
            Preset::LucasOdd => "lucas-odd",
            Preset::LucasEvenOdd => "lucas-even-odd",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }

    pub fn seeds(self) -> SeedPair {
        fn corner_zero(f: fn(i64) -> crate::Integer, g: fn(i64) -> i64) -> Seed {
            Seed::rule(move |n| if n == 0 { Rational::zero() } else { Rational::from(f(g(n as i64))) })
        }
        let (row, col) = match self {
            Preset::Hyperharmonic => (
                Seed::rule(|n| Rational::new(1, n as u64 + 1).expect("n + 1 > 0")),
                Seed::rule(|_| Rational::one()),
            ),
            Preset::FibOdd => (corner_zero(fibonacci, |n| n - 1), corner_zero(fibonacci, |n| 2 * n - 1)),
            Preset::FibEvenOdd => (corner_zero(fibonacci, |n| 2 * n - 1), corner_zero(fibonacci, |n| 2 * n)),
            Preset::LucasOdd => (corner_zero(lucas, |n| n - 1), corner_zero(lucas, |n| 2 * n - 1)),
            Preset::LucasEvenOdd => (corner_zero(lucas, |n| 2 * n - 1), corner_zero(lucas, |n| 2 * n)),
        };
        SeedPair::new(row, col).expect("preset corners agree")
    }

    pub fn tableau(self) -> SymmetricTableau {
        SymmetricTableau::new(self.seeds())
    }
}

fn index(name: &str, v: i64) -> Result<usize> {
    usize::try_from(v).or_else(|_| domain(format!("{name} must be non-negative, got {v}")))
}

/// Memoized tableau for `a_n^k = a_{n-1}^k + a_n^{k-1}`.
#[derive(Clone, Debug)]
pub struct SymmetricTableau {
    seeds: SeedPair,
    rows: Vec<Vec<Rational>>,
}

impl SymmetricTableau {
    pub fn new(seeds: SeedPair) -> Self {
        SymmetricTableau { seeds, rows: Vec::new() }
    }

    pub fn seeds(&self) -> &SeedPair {
        &self.seeds
    }

    /// `a_n^k` by the recurrence.
    pub fn entry(&mut self, n: i64, k: i64) -> Result<Rational> {
        let (n, k) = (index("n", n)?, index("k", k)?);
        self.fill(n, k)?;
        Ok(self.rows[k][n].clone())
    }

    /// Ensures rows `0..=k` hold columns `0..=n`.
    fn fill(&mut self, n: usize, k: usize) -> Result<()> {
        while self.rows.len() <= k {
            self.rows.push(Vec::new());
        }
        for row in 0..=k {
            let (above, rest) = self.rows.split_at_mut(row);
            let cur = &mut rest[0];
            if cur.len() > n {
                continue;
            }
            if row == 0 {
                for i in cur.len()..=n {
                    cur.push(self.seeds.row_seed(i)?);
                }
                continue;
            }
            if cur.is_empty() {
                cur.push(self.seeds.col_seed(row)?);
            }
            let prev = &above[row - 1];
            for i in cur.len()..=n {
                let v = &cur[i - 1] + &prev[i];
                cur.push(v);
            }
        }
        Ok(())
    }

    /// `a_n^k` from the seeds alone:
    /// `sum_{i=1}^{k} C(n+k-i-1, n-1) a_0^i + sum_{j=1}^{n} C(k+n-j-1, k-1) a_j^0`.
    pub fn entry_closed(&self, n: i64, k: i64) -> Result<Rational> {
        if n < 1 || k < 1 {
            return domain(format!("closed form needs n, k >= 1, got n={n}, k={k}"));
        }
        let (n, k) = (n as u64, k as u64);
        let mut acc = Rational::zero();
        for i in 1..=k {
            acc += Rational::from(choose(n + k - i - 1, n - 1)) * self.seeds.col_seed(i as usize)?;
        }
        for j in 1..=n {
            acc += Rational::from(choose(k + n - j - 1, k - 1)) * self.seeds.row_seed(j as usize)?;
        }
        Ok(acc)
    }

    /// Generating function of row `k`, `sum_{n>=1} a_n^k t^n`, from
    /// `(1-t)^{-k} { a0(t) + t/(1-t) sum_{r=1}^{k} a_0^r (1-t)^r }` where
    /// `a0(t) = sum_{n>=1} a_n^0 t^n`.
    pub fn row_gf(&self, k: i64, order: usize) -> Result<TruncatedSeries> {
        if k < 1 {
            return domain(format!("row generating function needs k >= 1, got {k}"));
        }
        boundary_gf(self.seeds.row(), self.seeds.col(), k as usize, order)
    }

    /// Generating function of column `n`, `sum_{k>=1} a_n^k t^k`; the mirror
    /// of [`row_gf`](Self::row_gf) with the seeds exchanged.
    pub fn col_gf(&self, n: i64, order: usize) -> Result<TruncatedSeries> {
        if n < 1 {
            return domain(format!("column generating function needs n >= 1, got {n}"));
        }
        boundary_gf(self.seeds.col(), self.seeds.row(), n as usize, order)
    }

    /// Rows `0..=k_max`, each holding columns `0..=n_max`.
    pub fn rectangle(&mut self, k_max: usize, n_max: usize) -> Result<Vec<Vec<Rational>>> {
        self.fill(n_max, k_max)?;
        Ok(self.rows[..=k_max].iter().map(|r| r[..=n_max].to_vec()).collect())
    }

    /// Number of memoized entries.
    pub fn memo_len(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Rechecks every memoized entry against the seeds and the recurrence.
    pub fn memo_consistent(&self) -> bool {
        self.rows.iter().enumerate().all(|(k, row)| {
            row.iter().enumerate().all(|(n, v)| match (n, k) {
                (n, 0) => self.seeds.row_seed(n).is_ok_and(|s| &s == v),
                (0, k) => self.seeds.col_seed(k).is_ok_and(|s| &s == v),
                (n, k) => self.rows[k - 1].get(n).is_some_and(|up| &(&row[n - 1] + up) == v),
            })
        })
    }
}

/// `(1-t)^{-m} { along(t) + t/(1-t) sum_{r=1}^{m} across_r (1-t)^r }`,
/// with `along(t)` the seed `along` without its constant term.
fn boundary_gf(along: &Seed, across: &Seed, m: usize, order: usize) -> Result<TruncatedSeries> {
    let base = TruncatedSeries::one_minus_t(order);
    let along_gf = {
        let mut coeffs = Vec::with_capacity(order + 1);
        coeffs.push(Rational::zero());
        for n in 1..=order {
            coeffs.push(along.get(n)?);
        }
        TruncatedSeries::from_coeffs(coeffs)
    };
    let mut power = TruncatedSeries::one(order);
    let mut sum = TruncatedSeries::zero(order);
    for r in 1..=m {
        power = power.mul(&base);
        sum = sum.add(&power.scale(&across.get(r)?));
    }
    let inner = along_gf.add(&sum.shift(1).div(&base)?);
    inner.div(&one_minus_t_pow(m as i64, order))
}

/// Memoized tableau for `a_n^k = a_n^{k-1} + a_{n+1}^{k-1}`.
#[derive(Clone, Debug)]
pub struct EulerSeidelTableau {
    seed: Seed,
    rows: Vec<Vec<Rational>>,
}

impl EulerSeidelTableau {
    pub fn new(seed: Seed) -> Self {
        EulerSeidelTableau { seed, rows: Vec::new() }
    }

    pub fn from_values(values: Vec<Rational>) -> Self {
        Self::new(Seed::table(values))
    }

    pub fn entry(&mut self, n: i64, k: i64) -> Result<Rational> {
        let (n, k) = (index("n", n)?, index("k", k)?);
        while self.rows.len() <= k {
            self.rows.push(Vec::new());
        }
        // row j feeds entry (n, k) through columns n..=n+k-j
        for j in 0..=k {
            let width = n + k - j + 1;
            let (above, rest) = self.rows.split_at_mut(j);
            let cur = &mut rest[0];
            for i in cur.len()..width {
                let v = if j == 0 { self.seed.get(i)? } else { &above[j - 1][i] + &above[j - 1][i + 1] };
                cur.push(v);
            }
        }
        Ok(self.rows[k][n].clone())
    }

    /// `a_0^0..a_0^{len-1}`.
    pub fn first_column(&mut self, len: usize) -> Result<Vec<Rational>> {
        (0..len as i64).map(|k| self.entry(0, k)).collect()
    }

    pub fn memo_consistent(&self) -> bool {
        self.rows.iter().enumerate().all(|(k, row)| {
            row.iter().enumerate().all(|(n, v)| {
                if k == 0 {
                    self.seed.get(n).is_ok_and(|s| &s == v)
                } else {
                    let up = &self.rows[k - 1];
                    n + 1 < up.len() && &(&up[n] + &up[n + 1]) == v
                }
            })
        })
    }
}

/// `b_n = sum_{k<=n} C(n, k) a_k`.
pub fn binom_transform(a: &[Rational]) -> Vec<Rational> {
    (0..a.len())
        .map(|n| (0..=n).map(|k| Rational::from(choose(n as u64, k as u64)) * &a[k]).sum())
        .collect()
}

/// `a_n = sum_{k<=n} C(n, k) (-1)^{n-k} b_k`.
pub fn inv_binom_transform(b: &[Rational]) -> Vec<Rational> {
    (0..b.len())
        .map(|n| {
            (0..=n)
                .map(|k| {
                    let term = Rational::from(choose(n as u64, k as u64)) * &b[k];
                    if (n - k) % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
        .collect()
}

/// Generating function of the Euler-Seidel first column,
/// `1/(1-t) a(t/(1-t))`.
pub fn es_column_gf(a: &TruncatedSeries) -> Result<TruncatedSeries> {
    let order = a.order();
    let base = TruncatedSeries::one_minus_t(order);
    let g = TruncatedSeries::monomial(Rational::one(), 1, order).div(&base)?;
    a.compose(&g)?.div(&base)
}
