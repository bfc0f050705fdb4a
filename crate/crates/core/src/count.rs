//! Counting solutions of `p^a x^2 + p^b y z = 0 mod p^n`, and the
//! generating functions of those counts.

use num_bigint::BigUint;

use crate::arith::{Grading, Monomial, Var};
use crate::error::{Error, Result};
use crate::{mono, Poly, Rational, RationalFunction, Series};

/// Iteration budget of the exhaustive counter.
pub const BRUTE_GUARD: u128 = 100_000_000;
/// Largest modulus the single-loop counter accepts.
pub const FAST_GUARD: u128 = 100_000_000;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidArgs(format!("{p} is not prime")))
    }
}

fn checked_pow(p: u64, e: u32) -> Option<u128> {
    (p as u128).checked_pow(e)
}

/// `v_p(c)`, or `None` for `c = 0`.
fn valuation(p: u128, mut c: u128) -> Option<u32> {
    if c == 0 {
        return None;
    }
    let mut v = 0;
    while c % p == 0 {
        c /= p;
        v += 1;
    }
    Some(v)
}

/// `#{(y, z) in (Z/p^M)^2 : y z = c}`; depends only on `min(v_p(c), M)`.
pub(crate) fn pair_count_u128(p: u64, m: u32, c: u128) -> u128 {
    if m == 0 {
        return 1;
    }
    let modulus = (p as u128).pow(m);
    let v = valuation(p as u128, c % modulus).unwrap_or(m);
    let pm1 = (p as u128).pow(m - 1);
    if v >= m {
        pm1 * ((m as u128 + 1) * p as u128 - m as u128)
    } else {
        (v as u128 + 1) * (modulus - pm1)
    }
}

/// Number of pairs `(y, z)` modulo `p^M` with `y z = c`.
pub fn pair_count(p: u64, m: u32, c: &BigUint) -> Result<BigUint> {
    require_prime(p)?;
    let modulus = BigUint::from(p).pow(m);
    let r = c % &modulus;
    let v = if r == BigUint::ZERO {
        m
    } else {
        let mut v = 0;
        let mut r = r;
        let bp = BigUint::from(p);
        while (&r % &bp) == BigUint::ZERO {
            r /= &bp;
            v += 1;
        }
        v
    };
    if m == 0 {
        return Ok(BigUint::from(1u32));
    }
    let pm1 = BigUint::from(p).pow(m - 1);
    Ok(if v >= m {
        pm1 * (BigUint::from(m + 1) * p - m)
    } else {
        BigUint::from(v + 1) * (modulus - pm1)
    })
}

/// `f(alpha, beta, n) = #{(x, y, z) mod p^n : p^alpha x^2 + p^beta y z = 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountQuery {
    pub p: u64,
    pub alpha: u32,
    pub beta: u32,
    pub n: u32,
}

impl CountQuery {
    pub fn new(p: u64, alpha: u32, beta: u32, n: u32) -> Result<Self> {
        require_prime(p)?;
        Ok(CountQuery { p, alpha, beta, n })
    }
}

/// Exhaustive count, refusing more than [`BRUTE_GUARD`] iterations.
pub fn f_brute(q: &CountQuery) -> Result<BigUint> {
    f_brute_with_limit(q, BRUTE_GUARD)
}

/// Exhaustive count with an explicit iteration budget.
pub fn f_brute_with_limit(q: &CountQuery, limit: u128) -> Result<BigUint> {
    require_prime(q.p)?;
    let work = checked_pow(q.p, 3 * q.n);
    if work.is_none_or(|w| w > limit) {
        return Err(Error::TooLarge {
            what: "exhaustive count",
            work: format!("{}^{}", q.p, 3 * q.n),
            guard: limit.to_string(),
        });
    }
    let modulus = checked_pow(q.p, q.n).unwrap() as u64;
    let ca = (q.p as u128).pow(q.alpha.min(q.n)) as u64 % modulus;
    let cb = (q.p as u128).pow(q.beta.min(q.n)) as u64 % modulus;
    let mut count: u64 = 0;
    for x in 0..modulus {
        let ax = ((ca as u128 * x as u128 % modulus as u128) * x as u128 % modulus as u128) as u64;
        for y in 0..modulus {
            let by = (cb as u128 * y as u128 % modulus as u128) as u64;
            // walk z upwards, adding by to the running value
            let mut acc = ax;
            for _ in 0..modulus {
                if acc == 0 {
                    count += 1;
                }
                acc += by;
                if acc >= modulus {
                    acc -= modulus;
                }
            }
        }
    }
    Ok(BigUint::from(count))
}

/// Count looping over `x` only; the `(y, z)` pairs are counted in closed form.
pub fn f_fast(q: &CountQuery) -> Result<BigUint> {
    require_prime(q.p)?;
    let modulus = checked_pow(q.p, q.n).filter(|&m| m <= FAST_GUARD).ok_or_else(|| Error::TooLarge {
        what: "single-loop count",
        work: format!("{}^{}", q.p, q.n),
        guard: FAST_GUARD.to_string(),
    })?;
    let p = q.p as u128;
    let n = q.n;
    let scale_a = p.pow(q.alpha.min(n)) % modulus;
    let mut total: u128 = 0;
    for x in 0..modulus {
        let c = scale_a * (x * x % modulus) % modulus;
        if q.beta >= n {
            if c == 0 {
                total += modulus * modulus;
            }
            continue;
        }
        let b = q.beta;
        // p^b (y z + c / p^b) = 0 mod p^n needs p^b | c
        if c != 0 && valuation(p, c).unwrap() < b {
            continue;
        }
        let reduced = c / p.pow(b);
        total += pair_count_u128(q.p, n - b, reduced) * p.pow(2 * b);
    }
    Ok(BigUint::from(total))
}

/// Count grouping `x` by its valuation: `O(n)` big-integer operations, no guard.
pub fn f_valuation(q: &CountQuery) -> Result<BigUint> {
    require_prime(q.p)?;
    let p = BigUint::from(q.p);
    let n = q.n;
    let mut total = BigUint::ZERO;
    for j in 0..=n {
        // residues x mod p^n with v(x) = j (j = n means x = 0)
        let classes = if j == n { BigUint::from(1u32) } else { (&p - 1u32) * p.pow(n - j - 1) };
        let vc = q.alpha.saturating_add(2 * j).min(n);
        let pairs = if q.beta >= n {
            if vc >= n {
                p.pow(2 * n)
            } else {
                BigUint::ZERO
            }
        } else if vc < q.beta {
            BigUint::ZERO
        } else {
            let reduced = BigUint::from(q.p).pow(vc - q.beta);
            pair_count(q.p, n - q.beta, &reduced)? * p.pow(2 * q.beta)
        };
        total += classes * pairs;
    }
    Ok(total)
}

/// Which family of generating functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FKind {
    /// `F_{alpha,0}(T) = sum f(alpha, 0, n) T^n`
    A0,
    /// `F_{0,alpha}(T) = sum f(0, alpha, n) T^n`
    ZeroA,
}

fn pt(p: i32, t: i32) -> Monomial {
    mono!(P ^ p, T ^ t)
}

fn poly(terms: &[(i64, Monomial)]) -> Poly {
    Poly::from_int_terms(terms)
}

fn rf(num: Poly, factors: &[(Monomial, u32)]) -> RationalFunction {
    RationalFunction::new(num, factors).expect("factors are non-constant")
}

/// `(p-1)^2`
fn p_minus_one_sq() -> Poly {
    poly(&[(1, pt(2, 0)), (-2, pt(1, 0)), (1, pt(0, 0))])
}

/// `(1 - p^2T)(1 - p^5T^2)(1 - p^3T^2)`
fn common_denominator() -> [(Monomial, u32); 3] {
    [(pt(2, 1), 1), (pt(5, 2), 1), (pt(3, 2), 1)]
}

fn odd_bracket() -> RationalFunction {
    let first = rf(poly(&[(1, pt(0, 0)), (1, pt(3, 1))]), &[(pt(5, 2), 1)]);
    let num = (&p_minus_one_sq() * &poly(&[(1, pt(0, 0)), (1, pt(4, 2))])).mul_monomial(pt(1, 1));
    first.sub(&rf(num, &common_denominator()))
}

fn even_bracket() -> RationalFunction {
    let first = rf(poly(&[(1, pt(0, 0)), (1, pt(2, 1))]), &[(pt(5, 2), 1)]);
    let num = (&p_minus_one_sq() * &poly(&[(1, pt(0, 0)), (1, pt(1, 0))])).mul_monomial(pt(2, 2));
    first.sub(&rf(num, &common_denominator()))
}

/// `F_{alpha,0}(T)` in the variables `p`, `T`.
pub fn f_a0(alpha: u32) -> RationalFunction {
    let a = alpha as i32;
    let one_minus_pt = poly(&[(1, pt(0, 0)), (-1, pt(1, 1))]);
    let first = rf(one_minus_pt.clone(), &[(pt(2, 1), 2)]);
    let num = (&poly(&[(1, pt(0, 0)), (-1, pt(1, 0))]) * &one_minus_pt).mul_monomial(pt(2 * a + 1, a + 1));
    first.add(&rf(num, &[(pt(2, 1), 2), (pt(3, 2), 1)]))
}

/// `F_{0,alpha}(T)` in the variables `p`, `T`.
pub fn f_0a(alpha: u32) -> RationalFunction {
    let a = alpha as i32;
    let first = rf(poly(&[(1, pt(0, 0)), (1, pt(2, 1))]), &[(pt(5, 2), 1)]);
    let num = if alpha % 2 == 1 {
        (&p_minus_one_sq() * &poly(&[(1, pt(0, 0)), (1, pt(4, 2))])).mul_monomial(pt((5 * a + 1) / 2, a + 1))
    } else {
        (&p_minus_one_sq() * &poly(&[(1, pt(0, 0)), (1, pt(1, 0))])).mul_monomial(pt((5 * a + 4) / 2, a + 2))
    };
    first.sub(&rf(num, &common_denominator()))
}

/// `F_{0,0}(T) = (1 - p^2T^2) / ((1 - p^2T)(1 - p^3T^2))`.
pub fn f_00() -> RationalFunction {
    rf(poly(&[(1, pt(0, 0)), (-1, pt(2, 2))]), &[(pt(2, 1), 1), (pt(3, 2), 1)])
}

/// `F*_{0,alpha}(T) = sum_{n >= alpha} f(0, alpha, n) T^n`.
pub fn f_star(alpha: u32) -> RationalFunction {
    let a = alpha as i32;
    if alpha % 2 == 1 {
        odd_bracket().mul_monomial(pt((5 * a - 1) / 2, a))
    } else {
        even_bracket().mul_monomial(pt(5 * a / 2, a))
    }
}

/// `sum_alpha Y^alpha F*_{0,alpha}(T)` in the variables `p`, `T`, `Y`.
pub fn f_star_bivariate() -> RationalFunction {
    let inner = odd_bracket().mul_monomial(mono!(P ^ 2, Y ^ 1, T ^ 1)).add(&even_bracket());
    inner
        .div_one_minus(mono!(P ^ 5, Y ^ 2, T ^ 2), 1)
        .expect("non-constant factor")
}

/// Truncated expansion of `F_{alpha,0}` or `F_{0,alpha}` in `T`, symbolic in
/// `p` or specialized to a numeric prime.
pub fn f_series(kind: FKind, alpha: u32, order: u32, p: Option<u64>) -> Result<Series> {
    let f = match kind {
        FKind::A0 => f_a0(alpha),
        FKind::ZeroA => f_0a(alpha),
    };
    expand_in_t(&f, order, p)
}

pub fn f_star_series(alpha: u32, order: u32, p: Option<u64>) -> Result<Series> {
    expand_in_t(&f_star(alpha), order, p)
}

fn expand_in_t(f: &RationalFunction, order: u32, p: Option<u64>) -> Result<Series> {
    let s = f.expand(Grading::by_var(Var::T), order as i64)?;
    Ok(match p {
        Some(p) => {
            require_prime(p)?;
            s.specialize(Var::P, &Rational::from_integer((p as i64).into()))
        }
        None => s,
    })
}

/// Coefficient of `T^n` of a numeric series as an integer, if it is one.
pub fn t_coefficient(s: &Series, n: u32) -> Rational {
    s.component(n as i64).coefficient(&mono!(T ^ n as i32))
}

/// The recurrences used to derive the generating functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Recurrence {
    /// `f(0,0,m+2) = (p^2-1) p^{2(m+1)} + p^3 f(0,0,m)`
    Base,
    /// `f(l+1,0,m+1) = p^2 f(l,0,m) + (p-1) p^{2m+1}`
    LStep,
    /// `f(0,l+2,m+2) = p^5 f(0,l,m)`
    EvenStep,
    /// `f(0,1,m+2) = 2 p^{2m+3}(p-1) + p^3 f(0,1,m)`
    OddBase,
}

/// Checks a recurrence for all `l <= l_max`, `m <= m_max`, counting with [`f_fast`].
pub fn recurrence_check(which: Recurrence, p: u64, l_max: u32, m_max: u32) -> Result<bool> {
    let f = |a: u32, b: u32, n: u32| -> Result<BigUint> { f_fast(&CountQuery::new(p, a, b, n)?) };
    let bp = BigUint::from(p);
    let pw = |e: u32| bp.pow(e);
    for m in 0..=m_max {
        let ok = match which {
            Recurrence::Base => f(0, 0, m + 2)? == (pw(2) - 1u32) * pw(2 * (m + 1)) + pw(3) * f(0, 0, m)?,
            Recurrence::OddBase => f(0, 1, m + 2)? == 2u32 * pw(2 * m + 3) * (&bp - 1u32) + pw(3) * f(0, 1, m)?,
            Recurrence::LStep => {
                let mut ok = true;
                for l in 0..=l_max {
                    ok &= f(l + 1, 0, m + 1)? == pw(2) * f(l, 0, m)? + (&bp - 1u32) * pw(2 * m + 1);
                }
                ok
            }
            Recurrence::EvenStep => {
                let mut ok = true;
                for l in 0..=l_max {
                    ok &= f(0, l + 2, m + 2)? == pw(5) * f(0, l, m)?;
                }
                ok
            }
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}
