use num_traits::{One, Zero};

use super::{param, variant, Comparison, Constraint, Ctx, Identity, Point, RANDOM_SEED_LEN};
use crate::error::{Error, Result};
use crate::exact::{binomial, choose, Integer, Rational};
use crate::sequences::{
    abc_coeff_over, fib_subseq_gf, fibonacci, hyperfibonacci, hyperfibonacci_row, hyperharmonic,
    hyperharmonic_gf, hyperharmonic_row, hyperlucas, hyperlucas_gf, hyperlucas_row, hyperfib_gf,
    incomplete_fib_gf, incomplete_fibonacci, incomplete_lucas, incomplete_lucas_gf, lucas,
    lucas_subseq_gf, AbcKind, Base,
};
use crate::series::{one_minus_t_pow, ts_from_rational, Polynomial, TruncatedSeries};
use crate::triangle::{binom_transform, es_column_gf, inv_binom_transform, EulerSeidelTableau, Preset, Seed, SymmetricTableau};

fn q(x: Integer) -> Rational {
    Rational::from(x)
}

fn int(v: i64) -> Integer {
    Integer::from(v)
}

fn idx(n: i64) -> usize {
    usize::try_from(n).expect("non-negative index")
}

fn pair<T: std::fmt::Display>(a: T, b: T) -> String {
    format!("({a}, {b})")
}

fn poly(coeffs: Vec<Integer>) -> Polynomial {
    Polynomial::new(coeffs.into_iter().map(q).collect())
}

fn golden() -> Polynomial {
    Polynomial::from_ints(&[1, -1, -1])
}

fn even_golden() -> Polynomial {
    Polynomial::from_ints(&[1, -3, 1])
}

fn row_series(t: &mut SymmetricTableau, k: i64, order: usize) -> Result<TruncatedSeries> {
    let mut c = vec![Rational::zero()];
    for n in 1..=order as i64 {
        c.push(t.entry(n, k)?);
    }
    Ok(TruncatedSeries::from_coeffs(c))
}

fn col_series(t: &mut SymmetricTableau, n: i64, order: usize) -> Result<TruncatedSeries> {
    let mut c = vec![Rational::zero()];
    for k in 1..=order as i64 {
        c.push(t.entry(n, k)?);
    }
    Ok(TruncatedSeries::from_coeffs(c))
}

fn random_order(ctx: &Ctx) -> Result<usize> {
    if ctx.order >= RANDOM_SEED_LEN {
        return Err(Error::Domain(format!("random seeds carry {RANDOM_SEED_LEN} terms; order must stay below that")));
    }
    Ok(ctx.order)
}

/// Order large enough for coefficient `n`, rounded so caches are shared.
fn reach(n: i64) -> usize {
    (idx(n) / 32 + 1) * 32
}

fn coeff_int(s: &TruncatedSeries, n: i64) -> Integer {
    s.coeff(idx(n)).and_then(Rational::to_integer).expect("integer coefficient in range")
}

/// `F_n(k)` read off `R_k(t)`.
fn incfib_gf_at(ctx: &mut Ctx, n: i64, k: i64) -> Result<Integer> {
    let order = reach(n);
    let s = ctx.cached_series(format!("R/{k}/{order}"), |_| incomplete_fib_gf(k, order))?;
    Ok(coeff_int(&s, n))
}

/// `L_n(k)` read off `S_k(t)`.
fn incluc_gf_at(ctx: &mut Ctx, n: i64, k: i64) -> Result<Integer> {
    let order = reach(n);
    let s = ctx.cached_series(format!("S/{k}/{order}"), |_| incomplete_lucas_gf(k, order))?;
    Ok(coeff_int(&s, n))
}

fn values_series(values: Vec<Integer>) -> TruncatedSeries {
    TruncatedSeries::from_coeffs(values.into_iter().map(q).collect())
}

// Euler–Seidel / Dumont

fn dumont_roundtrip(ctx: &mut Ctx, _: &str, p: &Point) -> Result<Comparison> {
    const LEN: usize = 25;
    let a = ctx.random_sequence(idx(p.get("sample")), LEN);
    let direct: Vec<Rational> =
        (0..LEN).map(|n| (0..=n).map(|k| q(choose(n as u64, k as u64)) * &a[k]).sum()).collect();
    let forward = binom_transform(&a);
    let back = inv_binom_transform(&forward);
    let first_column = EulerSeidelTableau::from_values(a.clone()).first_column(LEN)?;
    Ok(Comparison::all(vec![
        Comparison::sequences(&back, &a),
        Comparison::sequences(&forward, &direct),
        Comparison::sequences(&first_column, &direct),
    ]))
}

fn euler_gf(ctx: &mut Ctx, _: &str, p: &Point) -> Result<Comparison> {
    let order = ctx.order;
    let family = p.get("family");
    let a = match family {
        0 => ts_from_rational(&Polynomial::from_ints(&[0, 1]), &golden(), order)?,
        1 => ts_from_rational(&Polynomial::from_ints(&[1]), &Polynomial::from_ints(&[1, -1]), order)?,
        2 => ts_from_rational(&Polynomial::from_ints(&[1]), &Polynomial::from_ints(&[1, -2]), order)?,
        _ => TruncatedSeries::one(order),
    };
    let lhs = es_column_gf(&a)?;
    let column = EulerSeidelTableau::from_values(a.coeffs().to_vec()).first_column(order + 1)?;
    let mut parts = vec![Comparison::series(&lhs, &TruncatedSeries::from_coeffs(column), order)?];
    if family == 0 {
        let even = values_series((0..=order as i64).map(|n| ctx.fib(2 * n)).collect());
        parts.push(Comparison::series(&lhs, &even, order)?);
    }
    Ok(Comparison::all(parts))
}

// symmetric algorithm on random seeds

fn symmetric_closed_form(ctx: &mut Ctx, _: &str, p: &Point) -> Result<Comparison> {
    let (n, k) = (p.get("n"), p.get("k"));
    let t = ctx.random_tableau(idx(p.get("sample")))?;
    Ok(Comparison::values(t.entry_closed(n, k)?, t.entry(n, k)?))
}

fn theorem2_row(ctx: &mut Ctx, _: &str, p: &Point) -> Result<Comparison> {
    let order = random_order(ctx)?;
    let k = p.get("k");
    let t = ctx.random_tableau(idx(p.get("sample")))?;
    let lhs = t.row_gf(k, order)?;
    Comparison::series(&lhs, &row_series(t, k, order)?, order)
}

fn theorem2_col(ctx: &mut Ctx, _: &str, p: &Point) -> Result<Comparison> {
    let order = random_order(ctx)?;
    let n = p.get("n");
    let t = ctx.random_tableau(idx(p.get("sample")))?;
    let lhs = t.col_gf(n, order)?;
    Comparison::series(&lhs, &col_series(t, n, order)?, order)
}

// hyperharmonic numbers

fn hyperharmonic_values(ctx: &mut Ctx, r: i64, n_max: usize) -> Result<Vec<Rational>> {
    ctx.cached_values(format!("H/{r}/{n_max}"), || hyperharmonic_row(r, n_max))
}

fn hypmat_identification(ctx: &mut Ctx, _: &str, p: &Point) -> Result<Comparison> {
    let (n, k) = (p.get("n"), p.get("k"));
    let entry = ctx.preset(Preset::Hyperharmonic).entry(n, k)?;
    Ok(Comparison::values(entry, hyperharmonic(n + 1, k)?))
}

fn hyperharmonic_gf_check(ctx: &mut Ctx, v: &str, p: &Point) -> Result<Comparison> {
    let order = ctx.order;
    let k = p.get("k");
    let gf = hyperharmonic_gf(k, order)?;
    let mut h = hyperharmonic_row(k, order)?;
    if v == "proof-form" {
        let lhs = gf.sub(&TruncatedSeries::monomial(Rational::one(), 1, order));
        for c in h.iter_mut().take(2) {
            *c = Rational::zero();
        }
        return Comparison::series(&lhs, &TruncatedSeries::from_coeffs(h), order);
    }
    Comparison::series(&gf, &TruncatedSeries::from_coeffs(h), order)
}

fn hyperharmonic_explicit(ctx: &mut Ctx, _: &str, p: &Point) -> Result<Comparison> {
    let (n, k) = (p.get("n"), p.get("k"));
    let mut sum = Rational::zero();
    for j in 1..=n {
        sum += q(binomial(n + k - j - 1, k - 1)?) * Rational::recip_of(j)?;
    }
    let row = hyperharmonic_values(ctx, k, reach(n))?;
    Ok(Comparison::values(sum, row[idx(n)].clone()))
}

fn hyperharmonic_closed_form(ctx: &mut Ctx, _: &str, p: &Point) -> Result<Comparison> {
    let (n, r) = (p.get("n"), p.get("r"));
    let row = hyperharmonic_values(ctx, r, reach(n))?;
    Ok(Comparison::values(hyperharmonic(n, r)?, row[idx(n)].clone()))
}

fn gkp_upper_summation(_: &mut Ctx, _: &str, p: &Point) -> Result<Comparison> {
    let (a, b) = (p.get("a"), p.get("b"));
    let mut sum = Integer::zero();
    for t in a..=b {
        sum += binomial(t, a)?;
    }
    Ok(Comparison::values(sum, binomial(b + 1, a + 1)?))
}

// Fibonacci and Lucas basics

fn relfibandluc(_: &mut Ctx, _: &str, p: &Point) -> Result<Comparison> {
    let n = p.get("n");
    Ok(Comparison::values(lucas(n), fibonacci(n - 1) + fibonacci(n + 1)))
}

fn helpfib(ctx: &mut Ctx, _: &str, p: &Point) -> Result<Comparison> {
    let n = p.get("n");
    Ok(match p.get("eq") {
        1 => {
            let odd: Integer = (1..=n).map(|i| ctx.fib(2 * i - 1)).sum();
            Comparison::values(odd, ctx.fib(2 * n))
        }
        2 => {
            let all: Integer = (1..=n).map(|i| ctx.fib(i)).sum();
            Comparison::values(all, ctx.fib(n + 2) - 1)
        }
        _ => {
            let entry = ctx.preset(Preset::FibOdd).entry(1, n)?;
            Comparison::values(entry, q(ctx.fib(2 * n)))
        }
    })
}

fn helpluc(ctx: &mut Ctx, _: &str, p: &Point) -> Result<Comparison> {
    let n = p.get("n");
    Ok(match p.get("eq") {
        1 => {
            let odd: Integer = (1..=n).map(|i| ctx.luc(2 * i - 1)).sum();
            Comparison::values(odd, ctx.luc(2 * n) - 2)
        }
        2 => {
            let all: Integer = (0..=n).map(|i| ctx.luc(i)).sum();
            Comparison::values(all, ctx.luc(n + 2) - 1)
        }
        _ => {
            let entry = ctx.preset(Preset::LucasOdd).entry(1, n)?;
            Comparison::values(entry, q(ctx.luc(2 * n)))
        }
    })
}

fn fibmat_identification(ctx: &mut Ctx, _: &str, p: &Point) -> Result<Comparison> {
    let (n, k) = (p.get("n"), p.get("k"));
    Ok(if p.get("family") == 0 {
        let entry = ctx.preset(Preset::FibOdd).entry(n, k)?;
        Comparison::values(entry, q(ctx.fib(n + 2 * k - 1)))
    } else {
        let entry = ctx.preset(Preset::LucasOdd).entry(n, k)?;
        Comparison::values(entry, q(ctx.luc(n + 2 * k - 1)))
    })
}

fn abc_tableau(ctx: &mut Ctx, v: &str, p: &Point) -> Result<Comparison> {
    let (n, k) = (p.get("n"), p.get("k"));
    let (base, preset) = if v == "lucas" { (Base::Lucas, Preset::LucasOdd) } else { (Base::Fibonacci, Preset::FibOdd) };
    let sum = abc_coeff_over(base, AbcKind::A, n, k)? + abc_coeff_over(base, AbcKind::B, n, k)?;
    Ok(Comparison::values(q(sum), ctx.preset(preset).entry(n, k)?))
}

fn propfib1_row(ctx: &mut Ctx, v: &str, p: &Point) -> Result<Comparison> {
    let order = ctx.order;
    let k = p.get("k");
    let (seq, preset): (fn(&mut Ctx, i64) -> Integer, _) =
        if v == "lucas" { (Ctx::luc, Preset::LucasOdd) } else { (Ctx::fib, Preset::FibOdd) };
    let num = poly(vec![int(0), seq(ctx, 2 * k), seq(ctx, 2 * k - 1)]);
    let lhs = ts_from_rational(&num, &golden(), order)?;
    Comparison::series(&lhs, &row_series(ctx.preset(preset), k, order)?, order)
}

fn propfib1_col(ctx: &mut Ctx, v: &str, p: &Point) -> Result<Comparison> {
    let order = ctx.order;
    let n = p.get("n");
    let (seq, preset): (fn(&mut Ctx, i64) -> Integer, _) =
        if v == "lucas" { (Ctx::luc, Preset::LucasOdd) } else { (Ctx::fib, Preset::FibOdd) };
    let num = poly(vec![int(0), seq(ctx, n + 1), -seq(ctx, n - 1)]);
    let lhs = ts_from_rational(&num, &even_golden(), order)?;
    Comparison::series(&lhs, &col_series(ctx.preset(preset), n, order)?, order)
}

/// `t(t^2 - t + 1) / ((1-t)^m (t^2 - 3t + 1))`, shared by both propfib2 forms.
fn propfib2_core(m: i64, order: usize) -> Result<TruncatedSeries> {
    let s = ts_from_rational(&Polynomial::from_ints(&[0, 1, -1, 1]), &even_golden(), order)?;
    Ok(s.mul(&one_minus_t_pow(-m, order)))
}

fn propfib2_row(ctx: &mut Ctx, v: &str, p: &Point) -> Result<Comparison> {
    let order = ctx.order;
    let k = p.get("k");
    let lhs = if v == "printed" {
        let braces = propfib2_core(k, order)?.add(&poly(vec![ctx.fib(2 * k + 1), ctx.fib(2 * k)]).to_series(order));
        let outer = ts_from_rational(&Polynomial::from_ints(&[0, -1]), &Polynomial::from_ints(&[-1, 1, 1]), order)?;
        outer.mul(&braces)
    } else {
        ctx.preset(Preset::FibEvenOdd).row_gf(k, order)?
    };
    Comparison::series(&lhs, &row_series(ctx.preset(Preset::FibEvenOdd), k, order)?, order)
}

fn propfib2_col(ctx: &mut Ctx, v: &str, p: &Point) -> Result<Comparison> {
    let order = ctx.order;
    let n = p.get("n");
    let lhs = if v == "printed" {
        let braces = propfib2_core(n, order)?
            .scale(&Rational::from(2))
            .sub(&poly(vec![ctx.fib(2 * n), ctx.fib(2 * n - 1)]).to_series(order));
        let outer = ts_from_rational(&Polynomial::from_ints(&[0, 1]), &Polynomial::from_ints(&[-1, 1, 1]), order)?;
        outer.mul(&braces)
    } else {
        ctx.preset(Preset::FibEvenOdd).col_gf(n, order)?
    };
    Comparison::series(&lhs, &col_series(ctx.preset(Preset::FibEvenOdd), n, order)?, order)
}

fn propfib2_coeffs(ctx: &mut Ctx, v: &str, p: &Point) -> Result<Comparison> {
    let (n, k) = (p.get("n"), p.get("k"));
    let c_k = if v == "printed" { k } else { k + 1 };
    let sum = abc_coeff_over(Base::Fibonacci, AbcKind::C, n, c_k)? + abc_coeff_over(Base::Fibonacci, AbcKind::A, k, n)?;
    Ok(Comparison::values(q(sum), ctx.preset(Preset::FibEvenOdd).entry(n, k)?))
}

// incomplete numbers

fn binsuminc(ctx: &mut Ctx, _: &str, p: &Point) -> Result<Comparison> {
    let (h, n, k) = (p.get("h"), p.get("n"), p.get("k"));
    let mut sum = Integer::zero();
    for j in 0..=h {
        sum += binomial(h, j)? * incomplete_fibonacci(n + j, k + j)?;
    }
    Ok(Comparison::values(sum, incfib_gf_at(ctx, n + 2 * h, k + h)?))
}

fn binsumincl(ctx: &mut Ctx, _: &str, p: &Point) -> Result<Comparison> {
    let (h, n, k) = (p.get("h"), p.get("n"), p.get("k"));
    let mut sum = Integer::zero();
    for j in 0..=h {
        sum += binomial(h, j)? * incomplete_lucas(n + j, k + j)?;
    }
    Ok(Comparison::values(sum, incluc_gf_at(ctx, n + 2 * h, k + h)?))
}

fn alternating(n: i64, k: i64) -> Result<Integer> {
    let b = binomial(n, k)?;
    Ok(if (n - k) % 2 == 0 { b } else { -b })
}

fn inc_cessaro_fib(ctx: &mut Ctx, _: &str, p: &Point) -> Result<Comparison> {
    let (n, r, s) = (p.get("n"), p.get("r"), p.get("s"));
    let mut sum = Integer::zero();
    for k in 0..=n {
        sum += alternating(n, k)? * incomplete_fibonacci(r + 2 * k, s + k)?;
    }
    Ok(Comparison::values(incfib_gf_at(ctx, r + n, s + n)?, sum))
}

fn inc_cessaro_lucas(ctx: &mut Ctx, v: &str, p: &Point) -> Result<Comparison> {
    let (n, r, s) = (p.get("n"), p.get("r"), p.get("s"));
    let mut sum = Integer::zero();
    if v == "forward" {
        for k in 0..=n {
            sum += binomial(n, k)? * incomplete_lucas(r + k, s + k)?;
        }
        return Ok(Comparison::values(incluc_gf_at(ctx, r + 2 * n, s + n)?, sum));
    }
    for k in 0..=n {
        sum += alternating(n, k)? * incomplete_lucas(r + 2 * k, s + k)?;
    }
    Ok(Comparison::values(incluc_gf_at(ctx, r + n, s + n)?, sum))
}

fn transform_lhs(n: i64, k: i64, term: fn(i64, i64) -> Result<Integer>) -> Result<Integer> {
    let mut sum = Integer::zero();
    for l in 0..=n {
        sum += binomial(n, l)? * term(l, k)?;
    }
    Ok(sum)
}

fn es_gf_at(ctx: &mut Ctx, tag: &str, n: i64, k: i64, gf: fn(i64, usize) -> Result<TruncatedSeries>) -> Result<Integer> {
    let order = reach(n);
    let s = ctx.cached_series(format!("ES-{tag}/{k}/{order}"), |_| es_column_gf(&gf(k, order)?))?;
    Ok(coeff_int(&s, n))
}

fn es_first_column_at(ctx: &mut Ctx, tag: &str, n: i64, k: i64, term: fn(i64, i64) -> Result<Integer>) -> Result<Rational> {
    ctx.euler_seidel(format!("{tag}/{k}"), || {
        Seed::rule(move |l| q(term(l as i64, k).expect("non-negative arguments")))
    })
    .entry(0, n)
}

fn printed_f_closed_form(ctx: &mut Ctx, n: i64, k: i64) -> Result<Integer> {
    let mut first = Integer::zero();
    for r in 2 * k + 1..=n {
        let bracket = ctx.fib(2 * k) * binomial(r, 2 * k)? + ctx.fib(2 * k - 1) * binomial(r - 1, 2 * k - 1)?;
        first += bracket * ctx.fib(2 * n - 2 * r);
    }
    let mut second = Integer::zero();
    for r in 0..=n {
        for m in 0..=r {
            second += ctx.fib(2 * n - 2 * r - 4 * k - 2)
                * binomial(r + k - m - 1, k)?
                * binomial(m + k, k)?
                * (Integer::one() << idx(m));
        }
    }
    Ok(first - second)
}

fn printed_l_closed_form(ctx: &mut Ctx, n: i64, k: i64) -> Result<Integer> {
    let mut sum = Integer::zero();
    for r in 0..=n - 2 * k - 2 {
        let lead = ctx.fib(2 * n - 4 * k - 2 * r + 2) * ctx.luc(2 * k) - ctx.fib(2 * n - 4 * k - 2 * r) * ctx.luc(2 * k - 2);
        let mut inner = Integer::zero();
        for m in 0..=r {
            inner += binomial(r - m + k, r - m)? * binomial(m + k, m)? * (Integer::one() << idx(m));
        }
        let fibs = ctx.fib(2 * n - 4 * k - 2 * r - 5) + ctx.fib(2 * n - 4 * k - 2 * r - 3);
        sum += lead * binomial(r + 2 * k - 1, r)? - fibs * inner;
    }
    Ok(sum + ctx.luc(2 * k) * binomial(n - 1, n - 2 * k)? + ctx.luc(2 * k + 2) * binomial(n - 2, n - 2 * k - 1)?)
}

fn incfib_binom_transform(ctx: &mut Ctx, v: &str, p: &Point) -> Result<Comparison> {
    let (k, n) = (p.get("k"), p.get("n"));
    let lhs = transform_lhs(n, k, incomplete_fibonacci)?;
    match v {
        "euler-seidel" => Ok(Comparison::values(q(lhs), es_first_column_at(ctx, "F", n, k, incomplete_fibonacci)?)),
        "printed-F-closed-form" => Ok(Comparison::values(lhs, printed_f_closed_form(ctx, n, k)?)),
        _ => {
            let rhs = match n {
                n if n < 2 * k + 1 => Integer::zero(),
                n if n == 2 * k + 1 => ctx.fib(2 * k + 1),
                _ => es_gf_at(ctx, "R", n, k, incomplete_fib_gf)?,
            };
            Ok(Comparison::values(lhs, rhs))
        }
    }
}

fn incluc_binom_transform(ctx: &mut Ctx, v: &str, p: &Point) -> Result<Comparison> {
    let (k, n) = (p.get("k"), p.get("n"));
    let lhs = transform_lhs(n, k, incomplete_lucas)?;
    match v {
        "euler-seidel" => Ok(Comparison::values(q(lhs), es_first_column_at(ctx, "L", n, k, incomplete_lucas)?)),
        "printed-L-closed-form" => Ok(Comparison::values(lhs, printed_l_closed_form(ctx, n, k)?)),
        _ => {
            let next = if v == "printed-base-case" { ctx.luc(2 * k + 2) } else { ctx.luc(2 * k + 1) };
            let rhs = match n {
                n if n < 2 * k => Integer::zero(),
                n if n == 2 * k => ctx.luc(2 * k),
                n if n == 2 * k + 1 => int(2 * k + 1) * ctx.luc(2 * k) + next,
                _ => es_gf_at(ctx, "S", n, k, incomplete_lucas_gf)?,
            };
            Ok(Comparison::values(lhs, rhs))
        }
    }
}

fn ab(base: Base, n: i64, k: i64) -> Result<Integer> {
    Ok(abc_coeff_over(base, AbcKind::A, n, k)? + abc_coeff_over(base, AbcKind::B, n, k)?)
}

fn lastfib(ctx: &mut Ctx, v: &str, p: &Point) -> Result<Comparison> {
    let (k, n) = (p.get("k"), p.get("n"));
    let rhs = match n {
        n if n < 2 * k + 1 => Integer::zero(),
        n if n == 2 * k + 1 => ctx.fib(2 * k + 1),
        _ => {
            let tail = hyperfibonacci(n - 2 * k - 2, k + 1)?;
            match v {
                "printed" => ab(Base::Fibonacci, n - 2 * k, k)? - tail,
                "tail" => ctx.fib(n) - tail,
                _ => ab(Base::Fibonacci, n - 2 * k + 1, k)? - tail,
            }
        }
    };
    Ok(Comparison::values(incfib_gf_at(ctx, n, k)?, rhs))
}

fn lastluc(ctx: &mut Ctx, v: &str, p: &Point) -> Result<Comparison> {
    let (k, n) = (p.get("k"), p.get("n"));
    let base = if v == "literal-fibonacci-ab" { Base::Fibonacci } else { Base::Lucas };
    let rhs = match n {
        n if n < 2 * k => Integer::zero(),
        n if n == 2 * k => ctx.luc(2 * k),
        n if n == 2 * k + 1 => ab(base, 2, k)?,
        _ => {
            let shift = if v == "index-shifted" { 0 } else { 1 };
            ab(base, n - 2 * k + shift, k)? - hyperlucas(n - 2 * k - 2, k + 1)?
        }
    };
    Ok(Comparison::values(incluc_gf_at(ctx, n, k)?, rhs))
}

fn fibnew1(ctx: &mut Ctx, _: &str, p: &Point) -> Result<Comparison> {
    let k = p.get("k");
    let sum: Integer = (0..k).map(|i| int(k - i) * ctx.fib(2 * i + 1)).sum();
    Ok(Comparison::values(ctx.fib(2 * k + 1) - 1, sum))
}

fn fibnew2(ctx: &mut Ctx, _: &str, p: &Point) -> Result<Comparison> {
    let k = p.get("k");
    let mut sum = Integer::zero();
    for i in 0..k {
        sum += binomial(k + 1 - i, 2)? * ctx.fib(2 * i + 1);
    }
    Ok(Comparison::values(ctx.fib(2 * k + 2) - k - 1, sum))
}

fn lucas_corollary(ctx: &mut Ctx, _: &str, p: &Point) -> Result<Comparison> {
    let k = p.get("k");
    let sum: Integer = (0..k).map(|i| int(k - i) * ctx.luc(2 * i + 1)).sum();
    Ok(Comparison::values(ctx.luc(2 * k + 1), sum + 2 * k + 1))
}

fn hyperfib_gf_check(ctx: &mut Ctx, v: &str, p: &Point) -> Result<Comparison> {
    let order = ctx.order;
    let r = p.get("r");
    if v == "printed-initial-values" {
        return Ok(Comparison::values(pair(hyperfibonacci(0, r)?, hyperfibonacci(1, r)?), pair(int(0), int(1))));
    }
    Comparison::series(&hyperfib_gf(r, order)?, &values_series(hyperfibonacci_row(r, order)?), order)
}

fn hyperluc_gf_check(ctx: &mut Ctx, v: &str, p: &Point) -> Result<Comparison> {
    let order = ctx.order;
    let r = p.get("r");
    let gf = hyperlucas_gf(r, order)?;
    let summed = pair(hyperlucas(0, r)?, hyperlucas(1, r)?);
    Ok(match v {
        "printed-initial-values" => Comparison::values(summed, pair(int(0), int(1))),
        "summation-initial-values" => {
            Comparison::values(summed, pair(coeff_int(&gf, 0), coeff_int(&gf, 1)))
        }
        _ => Comparison::series(&gf, &values_series(hyperlucas_row(r, order)?), order)?,
    })
}

fn gengenfib(ctx: &mut Ctx, _: &str, p: &Point) -> Result<Comparison> {
    let order = ctx.order;
    let (k, r) = (p.get("k"), p.get("r"));
    let direct = values_series((0..=order as i64).map(|n| ctx.fib(k * n + r)).collect());
    Comparison::series(&fib_subseq_gf(k, r, order)?, &direct, order)
}

fn gengenluc(ctx: &mut Ctx, _: &str, p: &Point) -> Result<Comparison> {
    let order = ctx.order;
    let (k, r) = (p.get("k"), p.get("r"));
    let direct = values_series((0..=order as i64).map(|n| ctx.luc(k * n + r)).collect());
    Comparison::series(&lucas_subseq_gf(k, r, order)?, &direct, order)
}

fn incfib_gf_vs_sum(ctx: &mut Ctx, _: &str, p: &Point) -> Result<Comparison> {
    let (k, n) = (p.get("k"), p.get("n"));
    let mut sum = Integer::zero();
    for j in 0..=k {
        sum += binomial(n - 1 - j, j)?;
    }
    Ok(Comparison::values(incfib_gf_at(ctx, n, k)?, sum))
}

fn incluc_gf_vs_sum(ctx: &mut Ctx, _: &str, p: &Point) -> Result<Comparison> {
    let (k, n) = (p.get("k"), p.get("n"));
    let mut sum = Rational::zero();
    for j in 0..=k {
        sum += Rational::new(n, n - j)? * q(binomial(n - j, j)?);
    }
    Ok(Comparison::values(q(incluc_gf_at(ctx, n, k)?), sum))
}

fn incfib_fib1(ctx: &mut Ctx, v: &str, p: &Point) -> Result<Comparison> {
    let (k, n) = (p.get("k"), p.get("n"));
    let zero_until = if v == "printed" { 2 * k + 1 } else { 2 * k };
    let rhs = if n <= zero_until { Integer::zero() } else { ctx.fib(n) };
    Ok(Comparison::values(incfib_gf_at(ctx, n, k)?, rhs))
}

fn incomplete_anchors(ctx: &mut Ctx, _: &str, p: &Point) -> Result<Comparison> {
    let k = p.get("k");
    Ok(match p.get("anchor") {
        1 => Comparison::values(incfib_gf_at(ctx, 2 * k + 1, k)?, fibonacci(2 * k + 1)),
        2 => Comparison::values(incfib_gf_at(ctx, 2 * k + 2, k)?, fibonacci(2 * k + 2)),
        _ => Comparison::values(incluc_gf_at(ctx, 2 * k, k)?, lucas(2 * k)),
    })
}

fn base_id(id: &'static str, anchor: &'static str, evaluated: &'static str, oracle: &'static str) -> Identity {
    Identity {
        id,
        anchor,
        evaluated,
        oracle,
        params: Vec::new(),
        constraint: None,
        variants: vec![variant("printed", "as stated")],
        series_order: None,
        eval: |_, _, _| unreachable!("evaluator not set"),
    }
}

struct B(Identity);

impl B {
    fn new(id: &'static str, anchor: &'static str, evaluated: &'static str, oracle: &'static str) -> Self {
        B(base_id(id, anchor, evaluated, oracle))
    }

    fn params(mut self, params: Vec<super::ParamSpec>) -> Self {
        self.0.params = params;
        self
    }

    fn constraint(mut self, text: &'static str, holds: fn(&Point) -> bool) -> Self {
        self.0.constraint = Some(Constraint { text, holds });
        self
    }

    fn variants(mut self, variants: Vec<super::VariantSpec>) -> Self {
        self.0.variants = variants;
        self
    }

    fn order(mut self, order: usize) -> Self {
        self.0.series_order = Some(order);
        self
    }

    fn eval(mut self, eval: super::Evaluator) -> Identity {
        self.0.eval = eval;
        self.0
    }
}

/// The full catalog, in a fixed order.
pub fn registry() -> Vec<Identity> {
    vec![
        B::new(
            "dumont-roundtrip",
            "Dumont's identities: the initial sequence and the final sequence are transformed into each other",
            "binom_transform / inv_binom_transform / Euler-Seidel recurrence",
            "direct double sum of binomial coefficients",
        )
        .params(vec![param("sample", 0, 19)])
        .eval(dumont_roundtrip),
        B::new(
            "euler-gf",
            "Euler: first-column generating function (1/(1-t)) a(t/(1-t))",
            "es_column_gf (composition and series division)",
            "Euler-Seidel recurrence on the seed coefficients; F_{2n} directly",
        )
        .params(vec![param("family", 0, 3).max(3)])
        .order(25)
        .eval(euler_gf),
        B::new(
            "symmetric-closed-form",
            "closed form for any entry of the symmetric tableau",
            "SymmetricTableau::entry_closed",
            "SymmetricTableau::entry (recurrence fill)",
        )
        .params(vec![param("sample", 0, 99), param("n", 1, 15), param("k", 1, 15)])
        .eval(symmetric_closed_form),
        B::new(
            "theorem2-row",
            "row generating function of the symmetric tableau",
            "SymmetricTableau::row_gf",
            "SymmetricTableau::entry",
        )
        .params(vec![param("sample", 0, 99), param("k", 1, 6)])
        .order(25)
        .eval(theorem2_row),
        B::new(
            "theorem2-col",
            "column generating function of the symmetric tableau",
            "SymmetricTableau::col_gf",
            "SymmetricTableau::entry",
        )
        .params(vec![param("sample", 0, 99), param("n", 1, 6)])
        .order(25)
        .eval(theorem2_col),
        B::new(
            "hypmat-identification",
            "hyperharmonic tableau: a_n^k = H_{n+1}^{(k)}",
            "hyperharmonic preset tableau",
            "hyperharmonic binomial closed form",
        )
        .params(vec![param("n", 0, 30), param("k", 0, 10)])
        .eval(hypmat_identification),
        B::new(
            "hyperharmonic-gf",
            "-ln(1-t)/(1-t)^k generates the hyperharmonic numbers",
            "hyperharmonic_gf",
            "hyperharmonic_row (repeated partial sums)",
        )
        .params(vec![param("k", 0, 10)])
        .variants(vec![
            variant("statement", "coefficient of t^n is H_n^{(k)} for n >= 1"),
            variant("proof-form", "sum over n >= 2 equals the series minus t"),
        ])
        .order(50)
        .eval(hyperharmonic_gf_check),
        B::new(
            "hyperharmonic-explicit",
            "H_n^{(k)} = sum_{j=1}^{n} C(n+k-j-1, k-1)/j",
            "explicit binomial sum",
            "hyperharmonic_row (repeated partial sums)",
        )
        .params(vec![param("n", 1, 40), param("k", 1, 10)])
        .eval(hyperharmonic_explicit),
        B::new(
            "hyperharmonic-closed-form",
            "H_n^{(r)} = C(n+r-1, r-1)(H_{n+r-1} - H_{r-1})",
            "hyperharmonic (closed form)",
            "hyperharmonic_row (repeated partial sums)",
        )
        .params(vec![param("n", 0, 40), param("r", 1, 10)])
        .eval(hyperharmonic_closed_form),
        B::new(
            "gkp-upper-summation",
            "sum_{t=a}^{b} C(t, a) = C(b+1, a+1)",
            "sum of binomials",
            "single binomial",
        )
        .params(vec![param("a", 0, 40), param("b", 0, 40)])
        .constraint("a <= b", |p| p.get("a") <= p.get("b"))
        .eval(gkp_upper_summation),
        B::new("relfibandluc", "L_n = F_{n-1} + F_{n+1}", "lucas", "fibonacci")
            .params(vec![param("n", 1, 200)])
            .eval(relfibandluc),
        B::new(
            "helpfib",
            "famous relations: F_{2n} = sum F_{2i-1} and sum F_i = F_{n+2} - 1",
            "direct sums; fib-odd tableau entry a_1^n",
            "single Fibonacci number",
        )
        .params(vec![param("eq", 1, 3).max(3), param("n", 1, 200)])
        .eval(helpfib),
        B::new(
            "helpluc",
            "L_{2n} - 2 = sum L_{2i-1} and sum_{i=0}^{n} L_i = L_{n+2} - 1",
            "direct sums; lucas-odd tableau entry a_1^n",
            "single Lucas number",
        )
        .params(vec![param("eq", 1, 3).max(3), param("n", 1, 200)])
        .eval(helpluc),
        B::new(
            "fibmat-identification",
            "Fibonacci tableau: a_n^k = F_{n+2k-1}; Lucas twin by changing F_n with L_n",
            "fib-odd / lucas-odd preset tableau",
            "Fibonacci / Lucas numbers",
        )
        .params(vec![param("family", 0, 1).max(1), param("k", 1, 12), param("n", 0, 30)])
        .eval(fibmat_identification),
        B::new(
            "abc-tableau",
            "A_{n,k} + B_{n,k} is the (n, k) entry of the Fibonacci tableau",
            "abc_coeff_over sums",
            "fib-odd / lucas-odd preset tableau",
        )
        .params(vec![param("n", 1, 12), param("k", 1, 12)])
        .variants(vec![variant("printed", "Fibonacci A and B"), variant("lucas", "F_n changed to L_n")])
        .eval(abc_tableau),
        B::new(
            "propfib1-row",
            "row series t{F_{2k} + t F_{2k-1}}/(1 - t - t^2)",
            "rational series expansion",
            "fib-odd / lucas-odd tableau row",
        )
        .params(vec![param("k", 1, 8)])
        .variants(vec![variant("printed", "Fibonacci"), variant("lucas", "F_n changed to L_n")])
        .order(25)
        .eval(propfib1_row),
        B::new(
            "propfib1-col",
            "column series t(F_{n+1} - t F_{n-1})/(t^2 - 3t + 1)",
            "rational series expansion",
            "fib-odd / lucas-odd tableau column",
        )
        .params(vec![param("n", 1, 8)])
        .variants(vec![variant("printed", "Fibonacci"), variant("lucas", "F_n changed to L_n")])
        .order(25)
        .eval(propfib1_col),
        B::new(
            "propfib2-row",
            "seeds a_n^0 = F_{2n-1}, a_0^n = F_{2n}: row series with the factor t(t^2 - t + 1)",
            "printed rational series / row_gf",
            "fib-even-odd tableau row",
        )
        .params(vec![param("k", 1, 8)])
        .variants(vec![
            variant("printed", "printed closed form").suspect("oracle-only"),
            variant("oracle-only", "general row generating function"),
        ])
        .order(25)
        .eval(propfib2_row),
        B::new(
            "propfib2-col",
            "seeds a_n^0 = F_{2n-1}, a_0^n = F_{2n}: column series with the factor 2t(t^2 - t + 1)",
            "printed rational series / col_gf",
            "fib-even-odd tableau column",
        )
        .params(vec![param("n", 1, 8)])
        .variants(vec![
            variant("printed", "printed closed form").suspect("oracle-only"),
            variant("oracle-only", "general column generating function"),
        ])
        .order(25)
        .eval(propfib2_col),
        B::new(
            "propfib2-coeffs",
            "coefficients C_{n,k} + A_{k,n} with C_{n,k} = sum C(n+k-i-2, n-1) F_{2i}",
            "abc_coeff_over sums",
            "fib-even-odd tableau entry",
        )
        .params(vec![param("n", 1, 12), param("k", 1, 12)])
        .variants(vec![
            variant("printed", "C_{n,k} + A_{k,n}").suspect("shifted"),
            variant("shifted", "C_{n,k+1} + A_{k,n}"),
        ])
        .eval(propfib2_coeffs),
        B::new(
            "binsuminc",
            "sum_j C(h,j) F_{n+j}(k+j) = F_{n+2h}(k+h)",
            "incomplete_fibonacci (binomial sums)",
            "coefficients of R_k(t)",
        )
        .params(vec![param("h", 0, 8), param("n", 1, 30), param("k", 0, 15)])
        .constraint("0 <= k <= (n-h-1)/2", |p| 2 * p.get("k") < p.get("n") - p.get("h"))
        .eval(binsuminc),
        B::new(
            "binsumincl",
            "sum_j C(h,j) L_{n+j}(k+j) = L_{n+2h}(k+h)",
            "incomplete_lucas (weighted sums)",
            "coefficients of S_k(t)",
        )
        .params(vec![param("h", 0, 8), param("n", 1, 30), param("k", 0, 15)])
        .constraint("0 <= k <= (n-h)/2", |p| 2 * p.get("k") <= p.get("n") - p.get("h"))
        .eval(binsumincl),
        B::new(
            "inc-cessaro-fib",
            "dual formula F_{r+n}(s+n) = sum C(n,k)(-1)^{n-k} F_{r+2k}(s+k)",
            "coefficients of R_k(t)",
            "incomplete_fibonacci (binomial sums)",
        )
        .params(vec![param("n", 0, 10), param("r", 0, 30), param("s", 0, 15)])
        .constraint("0 <= s <= (r-n-1)/2", |p| 2 * p.get("s") < p.get("r") - p.get("n"))
        .eval(inc_cessaro_fib),
        B::new(
            "inc-cessaro-lucas",
            "Lucas pair L_{r+2n}(s+n) = sum C(n,k) L_{r+k}(s+k) and its dual",
            "coefficients of S_k(t)",
            "incomplete_lucas (weighted sums)",
        )
        .params(vec![param("n", 0, 10), param("r", 0, 30), param("s", 0, 15)])
        .constraint("0 <= s <= (r-n)/2", |p| 2 * p.get("s") <= p.get("r") - p.get("n"))
        .variants(vec![variant("dual", "alternating-sign dual"), variant("forward", "binomial sum")])
        .eval(inc_cessaro_lucas),
        B::new(
            "incfib-binom-transform",
            "sum_l C(n,l) F_l(k): 0 below 2k+1, F_{2k+1} at 2k+1, closed form F beyond",
            "direct binomial transform of incomplete_fibonacci",
            "es_column_gf of R_k(t); Euler-Seidel recurrence",
        )
        .params(vec![param("k", 1, 6), param("n", 0, 30)])
        .variants(vec![
            variant("oracle", "printed base cases, generating function beyond"),
            variant("euler-seidel", "Euler-Seidel first column"),
            variant("printed-F-closed-form", "printed expression F for n >= 2k+2")
                .suspect("oracle")
                .only(|p| p.get("n") >= 2 * p.get("k") + 2),
        ])
        .eval(incfib_binom_transform),
        B::new(
            "incluc-binom-transform",
            "sum_l C(n,l) L_l(k): 0, L_{2k}, (2k+1)L_{2k} + L_{2k+2}, closed form L beyond",
            "direct binomial transform of incomplete_lucas",
            "es_column_gf of S_k(t); Euler-Seidel recurrence",
        )
        .params(vec![param("k", 1, 6), param("n", 0, 30)])
        .variants(vec![
            variant("oracle", "base cases with (2k+1)L_{2k} + L_{2k+1} at n = 2k+1, generating function beyond"),
            variant("euler-seidel", "Euler-Seidel first column"),
            variant("printed-base-case", "(2k+1)L_{2k} + L_{2k+2} at n = 2k+1")
                .suspect("oracle")
                .only(|p| p.get("n") == 2 * p.get("k") + 1),
            variant("printed-L-closed-form", "printed expression L for n >= 2k+2, trailing terms outside the sum")
                .suspect("oracle")
                .only(|p| p.get("n") >= 2 * p.get("k") + 2),
        ])
        .eval(incluc_binom_transform),
        B::new(
            "lastfib",
            "F_n(k) = A_{n-2k,k} + B_{n-2k,k} - F_{n-2k-2}^{(k+1)} for n > 2k+1",
            "abc_coeff_over and hyperfibonacci",
            "coefficients of R_k(t)",
        )
        .params(vec![param("k", 1, 6), param("n", 0, 40)])
        .variants(vec![
            variant("printed", "index n-2k").suspect("corrected"),
            variant("corrected", "index n-2k+1"),
            variant("tail", "F_n - F_{n-2k-2}^{(k+1)}"),
        ])
        .eval(lastfib),
        B::new(
            "lastluc",
            "L_n(k) = A_{n-2k+1,k} + B_{n-2k+1,k} - L_{n-2k-2}^{(k+1)}, with A_{2,k} + B_{2,k} at n = 2k+1",
            "abc_coeff_over and hyperlucas",
            "coefficients of S_k(t)",
        )
        .params(vec![param("k", 1, 6), param("n", 0, 40)])
        .variants(vec![
            variant("printed", "A and B over Lucas numbers"),
            variant("index-shifted", "index n-2k as in the Fibonacci statement"),
            variant("literal-fibonacci-ab", "A and B over Fibonacci numbers").suspect("printed"),
        ])
        .eval(lastluc),
        B::new("fibnew1", "F_{2k+1} - 1 = sum_{i<k} (k-i) F_{2i+1}", "Fibonacci numbers", "direct sum")
            .params(vec![param("k", 1, 30)])
            .eval(fibnew1),
        B::new("fibnew2", "F_{2k+2} - k - 1 = sum_{i<k} C(k+1-i, 2) F_{2i+1}", "Fibonacci numbers", "direct sum")
            .params(vec![param("k", 1, 30)])
            .eval(fibnew2),
        B::new("lucas-corollary", "L_{2k+1} = sum_{i<k} (k-i) L_{2i+1} + 2k + 1", "Lucas numbers", "direct sum")
            .params(vec![param("k", 1, 30)])
            .eval(lucas_corollary),
        B::new(
            "hyperfib-gf",
            "t/((1-t-t^2)(1-t)^r) generates the hyperfibonacci numbers",
            "hyperfib_gf",
            "hyperfibonacci_row (repeated partial sums)",
        )
        .params(vec![param("r", 0, 8)])
        .variants(vec![
            variant("printed", "generating function"),
            variant("printed-initial-values", "F_0^{(r)} = 0 and F_1^{(r)} = 1").only(|p| p.get("r") >= 1),
        ])
        .order(40)
        .eval(hyperfib_gf_check),
        B::new(
            "hyperluc-gf",
            "(2-t)/((1-t-t^2)(1-t)^r) generates the hyperlucas numbers",
            "hyperlucas_gf",
            "hyperlucas_row (repeated partial sums)",
        )
        .params(vec![param("r", 0, 8)])
        .variants(vec![
            variant("printed", "generating function"),
            variant("printed-initial-values", "L_0^{(r)} = 0 and L_1^{(r)} = 1")
                .suspect("summation-initial-values")
                .only(|p| p.get("r") >= 1),
            variant("summation-initial-values", "initial values forced by the summation")
                .only(|p| p.get("r") >= 1),
        ])
        .order(40)
        .eval(hyperluc_gf_check),
        B::new(
            "gengenfib",
            "(F_r + (-1)^r F_{k-r} t)/(1 - L_k t + (-1)^k t^2) generates F_{kn+r}",
            "fib_subseq_gf",
            "Fibonacci numbers",
        )
        .params(vec![param("k", 1, 5), param("r", 0, 4)])
        .constraint("r < k", |p| p.get("r") < p.get("k"))
        .order(20)
        .eval(gengenfib),
        B::new(
            "gengenluc",
            "(L_r + (-1)^{r-1} L_{k-r} t)/(1 - L_k t + (-1)^k t^2) generates L_{kn+r}",
            "lucas_subseq_gf",
            "Lucas numbers",
        )
        .params(vec![param("k", 1, 5), param("r", 0, 4)])
        .constraint("r < k", |p| p.get("r") < p.get("k"))
        .order(20)
        .eval(gengenluc),
        B::new(
            "incfib-gf-vs-sum",
            "R_k(t) generates F_n(k) = sum_{j<=k} C(n-1-j, j)",
            "coefficients of R_k(t)",
            "binomial sum",
        )
        .params(vec![param("k", 0, 19), param("n", 0, 40)])
        .constraint("2k+1 <= n", |p| 2 * p.get("k") < p.get("n"))
        .eval(incfib_gf_vs_sum),
        B::new(
            "incluc-gf-vs-sum",
            "S_k(t) generates L_n(k) = sum_{j<=k} n/(n-j) C(n-j, j)",
            "coefficients of S_k(t)",
            "weighted binomial sum",
        )
        .params(vec![param("k", 0, 20), param("n", 1, 40)])
        .constraint("2k <= n", |p| 2 * p.get("k") <= p.get("n"))
        .eval(incluc_gf_vs_sum),
        B::new(
            "incfib-fib1",
            "F_n(k) = 0 for 0 <= n <= 2k+1, F_{2k+1}(k) = F_{2k+1}, F_{2k+2}(k) = F_{2k+2}",
            "coefficients of R_k(t)",
            "Fibonacci numbers",
        )
        .params(vec![param("k", 0, 10), param("n", 0, 22)])
        .constraint("n <= 2k+2", |p| p.get("n") <= 2 * p.get("k") + 2)
        .variants(vec![
            variant("printed", "zero through n = 2k+1").suspect("gf-range"),
            variant("gf-range", "zero through n = 2k"),
        ])
        .eval(incfib_fib1),
        B::new(
            "incomplete-anchors",
            "F_{2k+1}(k) = F_{2k+1}, F_{2k+2}(k) = F_{2k+2}, L_{2k}(k) = L_{2k}",
            "coefficients of R_k(t) and S_k(t)",
            "fibonacci / lucas",
        )
        .params(vec![param("anchor", 1, 3).max(3), param("k", 0, 10)])
        .eval(incomplete_anchors),
    ]
}
