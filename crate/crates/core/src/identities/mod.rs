//! Executable registry of identities.
//!
//! Every [`Identity`] pairs an evaluated formula with an independent
//! oracle over a declared integer parameter box. Formula variants that
//! transcribe a suspect printed statement name the variant that corrects
//! them; when the suspect fails and its correction passes, the verdict is
//! [`Verdict::ErratumConfirmed`] rather than [`Verdict::Fail`].

mod catalog;

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Integer, Rational};
use crate::sequences::{fibonacci_table, lucas_table};
use crate::series::{ts_eq, SeriesMatch, TruncatedSeries};
use crate::triangle::{EulerSeidelTableau, Preset, Seed, SeedPair, SymmetricTableau};

pub use catalog::registry;

/// Default seed for every randomized domain.
pub const DEFAULT_RNG_SEED: u64 = 20_090_415;
/// Default truncation order for series-valued identities.
pub const DEFAULT_SERIES_ORDER: usize = 25;
/// At most this many failing instances are listed in a report.
pub const MAX_LISTED_FAILURES: usize = 10;

const GOLDEN: &str = include_str!("../../golden/verdicts.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "ERRATUM-CONFIRMED")]
    ErratumConfirmed,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::ErratumConfirmed => "ERRATUM-CONFIRMED",
        })
    }
}

/// One named integer parameter with its default range and hard bounds.
#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub name: &'static str,
    pub lo: i64,
    pub hi: i64,
    pub min: i64,
    pub max: Option<i64>,
}

pub(crate) const fn param(name: &'static str, lo: i64, hi: i64) -> ParamSpec {
    ParamSpec { name, lo, hi, min: lo, max: None }
}

impl ParamSpec {
    pub(crate) const fn max(mut self, max: i64) -> Self {
        self.max = Some(max);
        self
    }
}

/// A relation between parameters that the source statement requires.
#[derive(Clone, Copy)]
pub struct Constraint {
    pub text: &'static str,
    pub holds: fn(&Point) -> bool,
}

#[derive(Clone, Copy)]
pub struct VariantSpec {
    pub name: &'static str,
    pub note: &'static str,
    /// For a suspect transcription: the variant that corrects it.
    pub corrected_by: Option<&'static str>,
    /// Restricts the instances this variant speaks about.
    pub applies: Option<fn(&Point) -> bool>,
}

pub(crate) const fn variant(name: &'static str, note: &'static str) -> VariantSpec {
    VariantSpec { name, note, corrected_by: None, applies: None }
}

impl VariantSpec {
    pub(crate) const fn suspect(mut self, corrected_by: &'static str) -> Self {
        self.corrected_by = Some(corrected_by);
        self
    }

    pub(crate) const fn only(mut self, applies: fn(&Point) -> bool) -> Self {
        self.applies = Some(applies);
        self
    }
}

pub type Evaluator = fn(&mut Ctx, &str, &Point) -> Result<Comparison>;

/// Registry entry.
#[derive(Clone)]
pub struct Identity {
    pub id: &'static str,
    /// Where the statement comes from, with a short quote.
    pub anchor: &'static str,
    /// What the left side computes through.
    pub evaluated: &'static str,
    /// What the right side (or reference) computes through.
    pub oracle: &'static str,
    pub params: Vec<ParamSpec>,
    pub constraint: Option<Constraint>,
    pub variants: Vec<VariantSpec>,
    /// Series order used when the caller does not choose one; `None` for
    /// identities without a series side.
    pub series_order: Option<usize>,
    pub(crate) eval: Evaluator,
}

impl std::fmt::Debug for Identity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Identity")
            .field("id", &self.id)
            .field("variants", &self.variants.iter().map(|v| v.name).collect::<Vec<_>>())
            .finish()
    }
}

impl Identity {
    pub fn variant(&self, name: &str) -> Option<&VariantSpec> {
        self.variants.iter().find(|v| v.name == name)
    }

    pub fn default_variant(&self) -> &'static str {
        self.variants[0].name
    }
}

/// A concrete parameter assignment, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point(Vec<(&'static str, i64)>);

impl Point {
    pub fn get(&self, name: &str) -> i64 {
        self.0
            .iter()
            .find(|(n, _)| *n == name)
            .map(|&(_, v)| v)
            .unwrap_or_else(|| panic!("parameter {name} not declared"))
    }

    pub fn entries(&self) -> &[(&'static str, i64)] {
        &self.0
    }

    pub fn from_pairs(pairs: Vec<(&'static str, i64)>) -> Self {
        Point(pairs)
    }
}

/// Both sides of one instance, already rendered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub equal: bool,
    pub lhs: String,
    pub rhs: String,
    /// First mismatching coefficient or position, for vector-valued sides.
    pub index: Option<usize>,
}

impl Comparison {
    pub fn values<T: PartialEq + std::fmt::Display>(lhs: T, rhs: T) -> Self {
        Comparison { equal: lhs == rhs, lhs: lhs.to_string(), rhs: rhs.to_string(), index: None }
    }

    /// Compares two series through `c_upto`.
    pub fn series(lhs: &TruncatedSeries, rhs: &TruncatedSeries, upto: usize) -> Result<Self> {
        Ok(match ts_eq(lhs, rhs, upto)? {
            SeriesMatch::Equal => Comparison {
                equal: true,
                lhs: format!("series through t^{upto}"),
                rhs: format!("series through t^{upto}"),
                index: None,
            },
            SeriesMatch::Mismatch { index, left, right } => {
                Comparison { equal: false, lhs: left.to_string(), rhs: right.to_string(), index: Some(index) }
            }
        })
    }

    pub fn sequences<T: PartialEq + std::fmt::Display>(lhs: &[T], rhs: &[T]) -> Self {
        if lhs.len() != rhs.len() {
            return Comparison {
                equal: false,
                lhs: format!("length {}", lhs.len()),
                rhs: format!("length {}", rhs.len()),
                index: None,
            };
        }
        match lhs.iter().zip(rhs).position(|(a, b)| a != b) {
            None => Comparison {
                equal: true,
                lhs: format!("{} terms", lhs.len()),
                rhs: format!("{} terms", rhs.len()),
                index: None,
            },
            Some(i) => Comparison { equal: false, lhs: lhs[i].to_string(), rhs: rhs[i].to_string(), index: Some(i) },
        }
    }

    /// All of `parts` must hold; reports the first that does not.
    pub fn all(parts: Vec<Comparison>) -> Self {
        match parts.iter().position(|c| !c.equal) {
            Some(i) => {
                let mut c = parts[i].clone();
                c.index = Some(c.index.unwrap_or(i));
                c
            }
            None => {
                let join = |f: fn(&Comparison) -> &str| parts.iter().map(f).collect::<Vec<_>>().join("; ");
                Comparison { equal: true, lhs: join(|c| &c.lhs), rhs: join(|c| &c.rhs), index: None }
            }
        }
    }
}

/// Per-run caches and settings handed to evaluators.
pub struct Ctx {
    pub order: usize,
    pub rng_seed: u64,
    random_tableaux: Vec<SymmetricTableau>,
    presets: HashMap<&'static str, SymmetricTableau>,
    euler_seidel: HashMap<String, EulerSeidelTableau>,
    series: HashMap<String, TruncatedSeries>,
    values: HashMap<String, Vec<Rational>>,
    fib: Vec<Integer>,
    luc: Vec<Integer>,
}

/// Terms per random seed; series identities on random seeds need `order` below this.
pub const RANDOM_SEED_LEN: usize = 64;

impl Ctx {
    pub fn new(order: usize, rng_seed: u64) -> Self {
        Ctx {
            order,
            rng_seed,
            random_tableaux: Vec::new(),
            presets: HashMap::new(),
            euler_seidel: HashMap::new(),
            series: HashMap::new(),
            values: HashMap::new(),
            fib: Vec::new(),
            luc: Vec::new(),
        }
    }

    fn stream(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.rng_seed);
        rng.set_stream(stream);
        rng
    }

    /// Random seed pair number `sample`; values in `[-9, 9] \ {0}` over
    /// `[-9, 9] \ {0}`. Row and column come from separate streams, so the
    /// pair does not depend on how many other samples were drawn.
    pub fn random_seed_pair(&self, sample: usize) -> SeedPair {
        let draw = |rng: &mut ChaCha8Rng| {
            let mut nz = || loop {
                let v: i64 = rng.gen_range(-9..=9);
                if v != 0 {
                    break v;
                }
            };
            let p = nz();
            Rational::new(p, nz()).expect("nonzero")
        };
        let mut row_rng = self.stream((1 << 32) + 2 * sample as u64);
        let mut col_rng = self.stream((1 << 32) + 2 * sample as u64 + 1);
        let row: Vec<Rational> = (0..RANDOM_SEED_LEN).map(|_| draw(&mut row_rng)).collect();
        let mut col = vec![row[0].clone()];
        col.extend((1..RANDOM_SEED_LEN).map(|_| draw(&mut col_rng)));
        SeedPair::from_tables(row, col).expect("corner shared")
    }

    /// Integer sequence number `sample` with values in `[-1000, 1000]`.
    pub fn random_sequence(&self, sample: usize, len: usize) -> Vec<Rational> {
        let mut rng = self.stream((2 << 32) + sample as u64);
        (0..len).map(|_| Rational::from(rng.gen_range(-1000i64..=1000))).collect()
    }

    pub fn random_tableau(&mut self, sample: usize) -> Result<&mut SymmetricTableau> {
        while self.random_tableaux.len() <= sample {
            let pair = self.random_seed_pair(self.random_tableaux.len());
            self.random_tableaux.push(SymmetricTableau::new(pair));
        }
        Ok(&mut self.random_tableaux[sample])
    }

    pub fn preset(&mut self, preset: Preset) -> &mut SymmetricTableau {
        self.presets.entry(preset.name()).or_insert_with(|| preset.tableau())
    }

    pub fn euler_seidel(&mut self, key: String, seed: impl FnOnce() -> Seed) -> &mut EulerSeidelTableau {
        self.euler_seidel.entry(key).or_insert_with(|| EulerSeidelTableau::new(seed()))
    }

    pub fn cached_series(
        &mut self,
        key: String,
        build: impl FnOnce(&mut Ctx) -> Result<TruncatedSeries>,
    ) -> Result<TruncatedSeries> {
        if let Some(s) = self.series.get(&key) {
            return Ok(s.clone());
        }
        let s = build(self)?;
        self.series.insert(key, s.clone());
        Ok(s)
    }

    pub fn cached_values(
        &mut self,
        key: String,
        build: impl FnOnce() -> Result<Vec<Rational>>,
    ) -> Result<Vec<Rational>> {
        if let Some(v) = self.values.get(&key) {
            return Ok(v.clone());
        }
        let v = build()?;
        self.values.insert(key, v.clone());
        Ok(v)
    }

    /// `F_n` for any integer `n`, from a growing table.
    pub fn fib(&mut self, n: i64) -> Integer {
        let m = n.unsigned_abs() as usize;
        if self.fib.len() <= m {
            self.fib = fibonacci_table((2 * m).max(64));
        }
        let f = self.fib[m].clone();
        if n < 0 && m.is_multiple_of(2) {
            -f
        } else {
            f
        }
    }

    /// `L_n` for any integer `n`, from a growing table.
    pub fn luc(&mut self, n: i64) -> Integer {
        let m = n.unsigned_abs() as usize;
        if self.luc.len() <= m {
            self.luc = lucas_table((2 * m).max(64));
        }
        let l = self.luc[m].clone();
        if n < 0 && m % 2 == 1 {
            -l
        } else {
            l
        }
    }
}

/// Caller's choices for one run.
#[derive(Debug, Clone)]
pub struct RunOptions {
    pub order: Option<usize>,
    pub rng_seed: u64,
    pub overrides: BTreeMap<String, (i64, i64)>,
    /// Evaluate tuples that violate the statement's own constraint.
    pub allow_outside: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { order: None, rng_seed: DEFAULT_RNG_SEED, overrides: BTreeMap::new(), allow_outside: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub params: BTreeMap<String, i64>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub variant: String,
    pub params_domain: BTreeMap<String, [i64; 2]>,
    pub tested: usize,
    pub failure_count: usize,
    pub failures: Vec<FailureRecord>,
    pub verdict: Verdict,
}

pub fn list_identities() -> Vec<Identity> {
    registry()
}

pub fn find_identity(id: &str) -> Result<Identity> {
    registry()
        .into_iter()
        .find(|i| i.id == id)
        .ok_or_else(|| Error::Usage(format!("unknown identity {id:?}")))
}

fn resolve_ranges(identity: &Identity, opts: &RunOptions) -> Result<Vec<(&'static str, i64, i64)>> {
    for name in opts.overrides.keys() {
        if !identity.params.iter().any(|p| p.name == name) {
            return Err(Error::Usage(format!("identity {} has no parameter {name:?}", identity.id)));
        }
    }
    identity
        .params
        .iter()
        .map(|p| {
            let (lo, hi) = opts.overrides.get(p.name).copied().unwrap_or((p.lo, p.hi));
            if lo > hi {
                return Err(Error::Domain(format!("empty range {lo}..{hi} for {}", p.name)));
            }
            if lo < p.min || p.max.is_some_and(|m| hi > m) {
                let upper = p.max.map_or("inf".to_string(), |m| m.to_string());
                return Err(Error::Domain(format!(
                    "{} of {} must stay within [{}, {upper}]",
                    p.name, identity.id, p.min
                )));
            }
            Ok((p.name, lo, hi))
        })
        .collect()
}

fn enumerate(ranges: &[(&'static str, i64, i64)]) -> Vec<Point> {
    let mut out = vec![Point(Vec::new())];
    for &(name, lo, hi) in ranges {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |v| {
                    let mut q = p.0.clone();
                    q.push((name, v));
                    Point(q)
                })
            })
            .collect();
    }
    out
}

fn instances(identity: &Identity, spec: &VariantSpec, opts: &RunOptions) -> Result<Vec<Point>> {
    let ranges = resolve_ranges(identity, opts)?;
    let mut points = enumerate(&ranges);
    if let Some(c) = identity.constraint {
        if !opts.allow_outside {
            if !opts.overrides.is_empty() {
                if let Some(bad) = points.iter().find(|p| !(c.holds)(p)) {
                    return Err(Error::Domain(format!(
                        "{} at {:?} violates {}; pass the outside flag to explore it",
                        identity.id,
                        bad.entries(),
                        c.text
                    )));
                }
            }
            points.retain(|p| (c.holds)(p));
        }
    }
    if let Some(applies) = spec.applies {
        points.retain(applies);
    }
    Ok(points)
}

fn evaluate(identity: &Identity, variant: &str, opts: &RunOptions) -> Result<IdentityReport> {
    let spec = identity
        .variant(variant)
        .ok_or_else(|| Error::Usage(format!("identity {} has no variant {variant:?}", identity.id)))?;
    let points = instances(identity, spec, opts)?;
    let order = opts.order.or(identity.series_order).unwrap_or(DEFAULT_SERIES_ORDER);
    let mut ctx = Ctx::new(order, opts.rng_seed);
    let mut failures = Vec::new();
    let mut failure_count = 0;
    for p in &points {
        let c = (identity.eval)(&mut ctx, variant, p)?;
        if !c.equal {
            failure_count += 1;
            if failures.len() < MAX_LISTED_FAILURES {
                failures.push(failure_record(p, c));
            }
        }
    }
    let params_domain = resolve_ranges(identity, opts)?.into_iter().map(|(n, lo, hi)| (n.to_string(), [lo, hi])).collect();
    Ok(IdentityReport {
        identity: identity.id.to_string(),
        variant: variant.to_string(),
        params_domain,
        tested: points.len(),
        failure_count,
        failures,
        verdict: if failure_count == 0 { Verdict::Pass } else { Verdict::Fail },
    })
}

fn failure_record(p: &Point, c: Comparison) -> FailureRecord {
    let mut params: BTreeMap<String, i64> = p.entries().iter().map(|&(n, v)| (n.to_string(), v)).collect();
    if let Some(i) = c.index {
        params.insert("index".to_string(), i as i64);
    }
    FailureRecord { params, lhs: c.lhs, rhs: c.rhs }
}

/// Runs one variant of one identity over its (possibly overridden) domain.
pub fn run_identity(id: &str, variant: &str, opts: &RunOptions) -> Result<IdentityReport> {
    let identity = find_identity(id)?;
    let mut report = evaluate(&identity, variant, opts)?;
    let spec = identity.variant(variant).expect("checked in evaluate");
    if report.verdict == Verdict::Fail {
        if let Some(corrected) = spec.corrected_by {
            if evaluate(&identity, corrected, opts)?.verdict == Verdict::Pass {
                report.verdict = Verdict::ErratumConfirmed;
            }
        }
    }
    Ok(report)
}

/// Recomputes one instance with empty caches.
pub fn recheck(id: &str, variant: &str, params: &BTreeMap<String, i64>, opts: &RunOptions) -> Result<Comparison> {
    let identity = find_identity(id)?;
    let point = Point(
        identity
            .params
            .iter()
            .map(|p| {
                params
                    .get(p.name)
                    .map(|&v| (p.name, v))
                    .ok_or_else(|| Error::Usage(format!("missing parameter {}", p.name)))
            })
            .collect::<Result<_>>()?,
    );
    let order = opts.order.or(identity.series_order).unwrap_or(DEFAULT_SERIES_ORDER);
    (identity.eval)(&mut Ctx::new(order, opts.rng_seed), variant, &point)
}

/// Expected verdict per `id/variant` for the default suite.
pub fn golden_verdicts() -> BTreeMap<String, Verdict> {
    serde_json::from_str(GOLDEN).expect("golden verdict file parses")
}

pub fn golden_key(id: &str, variant: &str) -> String {
    format!("{id}/{variant}")
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteSummary {
    pub reports: Vec<IdentityReport>,
    /// `id/variant` keys whose verdict differs from the golden table, or
    /// that have no golden entry.
    pub unexpected: Vec<String>,
}

impl SuiteSummary {
    pub fn all_expected(&self) -> bool {
        self.unexpected.is_empty()
    }
}

/// Runs every variant of every identity whose id starts with `prefix`,
/// sorted by id, then by variant order.
pub fn run_suite(prefix: Option<&str>, opts: &RunOptions) -> Result<SuiteSummary> {
    let mut ids: Vec<Identity> =
        registry().into_iter().filter(|i| prefix.is_none_or(|p| i.id.starts_with(p))).collect();
    ids.sort_by_key(|i| i.id);
    let jobs: Vec<(&'static str, &'static str)> =
        ids.iter().flat_map(|i| i.variants.iter().map(move |v| (i.id, v.name))).collect();
    let results: Vec<Result<IdentityReport>> = std::thread::scope(|s| {
        let handles: Vec<_> = jobs.iter().map(|&(id, v)| s.spawn(move || run_identity(id, v, opts))).collect();
        handles.into_iter().map(|h| h.join().expect("identity worker panicked")).collect()
    });
    let reports = results.into_iter().collect::<Result<Vec<_>>>()?;
    let golden = golden_verdicts();
    let unexpected = reports
        .iter()
        .map(|r| golden_key(&r.identity, &r.variant))
        .zip(&reports)
        .filter(|(key, r)| golden.get(key) != Some(&r.verdict))
        .map(|(key, _)| key)
        .collect();
    Ok(SuiteSummary { reports, unexpected })
}
