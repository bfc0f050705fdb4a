//! The weight `theta` on torus elements `h(p^k, p^m, p^n)` for `x^3`, and
//! the monomial weight for `x^2`.

use num_bigint::BigUint;

use crate::count::{f_valuation, is_prime, pair_count_u128, CountQuery};
use crate::error::{Error, Result};
use crate::Rational;

/// Modulus bound for the measure oracle's single loop.
pub const ORACLE_GUARD: u128 = 100_000_000;
/// Iteration bound for the seven-parameter oracle.
pub const TWELVE_GUARD: u128 = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThetaArgs {
    pub p: u64,
    pub k: i64,
    pub m: i64,
    pub n: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    Case1,
    Case2a,
    Case2b,
    Case3,
}

impl CaseTag {
    pub const ALL: [CaseTag; 4] = [CaseTag::Case1, CaseTag::Case2a, CaseTag::Case2b, CaseTag::Case3];

    pub fn name(self) -> &'static str {
        match self {
            CaseTag::Case1 => "1",
            CaseTag::Case2a => "2a",
            CaseTag::Case2b => "2b",
            CaseTag::Case3 => "3",
        }
    }
}

pub(crate) fn require_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::OddPrimeRequired(p));
    }
    Ok(())
}

impl ThetaArgs {
    pub fn new(p: u64, k: i64, m: i64, n: i64) -> Result<Self> {
        require_odd_prime(p)?;
        if m < 0 || n < m || k.abs() > m {
            return Err(Error::InvalidArgs(format!(
                "need n >= m >= 0 and |k| <= m, got k={k} m={m} n={n}"
            )));
        }
        Ok(ThetaArgs { p, k, m, n })
    }

    /// From `e = (n - m, m - k, m)`.
    pub fn from_e(p: u64, e: [i64; 3]) -> Result<Self> {
        let [e1, e2, e3] = e;
        Self::new(p, e3 - e2, e3, e1 + e3)
    }

    pub fn e(&self) -> [i64; 3] {
        [self.n - self.m, self.m - self.k, self.m]
    }

    pub fn l(&self) -> i64 {
        self.n - self.m
    }

    /// All valid triples with `n <= n_max`.
    pub fn all_up_to(p: u64, n_max: i64) -> Result<Vec<ThetaArgs>> {
        let mut out = Vec::new();
        for n in 0..=n_max {
            for m in 0..=n {
                for k in -m..=m {
                    out.push(ThetaArgs::new(p, k, m, n)?);
                }
            }
        }
        Ok(out)
    }
}

pub fn classify(a: &ThetaArgs) -> CaseTag {
    let (k, m, l) = (a.k, a.m, a.l());
    if k >= 0 {
        CaseTag::Case1
    } else if (-m).max(-l) <= k {
        if 2 * k + l >= 0 {
            CaseTag::Case2a
        } else {
            CaseTag::Case2b
        }
    } else {
        debug_assert!(-m <= k && k < -l);
        CaseTag::Case3
    }
}

/// `p^e` as an exact rational.
pub fn p_pow(p: u64, e: i64) -> Rational {
    let b = BigUint::from(p).pow(e.unsigned_abs() as u32);
    let r = Rational::from_integer(b.into());
    if e < 0 {
        r.recip()
    } else {
        r
    }
}

fn f(p: u64, alpha: i64, beta: i64, n: i64) -> Result<Rational> {
    let conv = |x: i64| {
        u32::try_from(x).map_err(|_| Error::InvalidArgs(format!("negative count parameter {x}")))
    };
    let q = CountQuery::new(p, conv(alpha)?, conv(beta)?, conv(n)?)?;
    Ok(Rational::from_integer(f_valuation(&q)?.into()))
}

/// `theta_3 = p^{6(2m + 2n - k)}`.
pub fn theta3(a: &ThetaArgs) -> Rational {
    p_pow(a.p, 6 * (2 * a.m + 2 * a.n - a.k))
}

/// `theta~` by the four case formulas.
pub fn theta_tilde_formula(a: &ThetaArgs) -> Result<Rational> {
    let (p, k, m, l) = (a.p, a.k, a.m, a.l());
    Ok(match classify(a) {
        CaseTag::Case1 => p_pow(p, 3 * k + l) * f(p, l, 0, m - k)?,
        CaseTag::Case2a => p_pow(p, l - k) * f(p, 2 * k + l, 0, m + k)?,
        CaseTag::Case2b => p_pow(p, 5 * k + 4 * l) * f(p, 0, -2 * k - l, m - k - l)?,
        CaseTag::Case3 => p_pow(p, -l) * f(p, 0, l, m + k + l)?,
    })
}

/// `theta_0 = p^{4k + 3m + n} theta~`.
pub fn theta0(a: &ThetaArgs) -> Result<Rational> {
    Ok(p_pow(a.p, 4 * a.k + 3 * a.m + a.n) * theta_tilde_formula(a)?)
}

/// `theta = theta_0 theta_3`.
pub fn theta_full(a: &ThetaArgs) -> Result<Rational> {
    Ok(theta0(a)? * theta3(a))
}

/// Case of a cocharacter `e = (e1, e2, e3)` in the region `e >= 0`, `2e3 >= e2`.
pub fn case_of_e(e: [i64; 3]) -> CaseTag {
    let [e1, e2, e3] = e;
    if e2 <= e3 {
        CaseTag::Case1
    } else if e2 > e1 + e3 {
        CaseTag::Case3
    } else if e1 + 2 * e3 - 2 * e2 >= 0 {
        CaseTag::Case2a
    } else {
        CaseTag::Case2b
    }
}

fn check_e(e: [i64; 3]) -> Result<()> {
    let [e1, e2, e3] = e;
    if e1 < 0 || e2 < 0 || e3 < 0 || e2 > 2 * e3 {
        return Err(Error::OutsideIntegralCone(e));
    }
    Ok(())
}

/// `theta~(e)` by the case formulas written in `e`-coordinates.
pub fn theta_tilde_e(e: [i64; 3], p: u64) -> Result<Rational> {
    check_e(e)?;
    require_odd_prime(p)?;
    let [e1, e2, e3] = e;
    Ok(match case_of_e(e) {
        CaseTag::Case1 => p_pow(p, e1 - 3 * e2 + 3 * e3) * f(p, e1, 0, e2)?,
        CaseTag::Case2a => p_pow(p, e1 + e2 - e3) * f(p, e1 - 2 * e2 + 2 * e3, 0, -e2 + 2 * e3)?,
        CaseTag::Case2b => p_pow(p, 4 * e1 - 5 * e2 + 5 * e3) * f(p, 0, -e1 + 2 * e2 - 2 * e3, -e1 + e2)?,
        CaseTag::Case3 => p_pow(p, -e1) * f(p, 0, e1, e1 - e2 + 2 * e3)?,
    })
}

/// `theta(e) = p^{13 e1 + 2 e2 + 26 e3} theta~(e)`.
pub fn theta_e(e: [i64; 3], p: u64) -> Result<Rational> {
    let [e1, e2, e3] = e;
    Ok(p_pow(p, 13 * e1 + 2 * e2 + 26 * e3) * theta_tilde_e(e, p)?)
}

/// `theta` for `x^2`: `|det A|^{-10} |mu|^{-12}`.
pub fn theta_x2(p: u64, val_det_a: i64, val_mu: i64) -> Rational {
    p_pow(p, 10 * val_det_a + 12 * val_mu)
}

/// Unconditional lower bounds for `v(b11)`, `v(b12)`, `v(b21)`.
fn b_bounds(a: &ThetaArgs) -> [i64; 3] {
    let (k, m, n) = (a.k, a.m, a.n);
    [(-m).max(-k - n), -m + 0.max(-k), -n + 0.max(-k)]
}

/// Precision at which the measure oracle is exact.
pub fn oracle_precision(a: &ThetaArgs) -> i64 {
    let [l1, l12, l21] = b_bounds(a);
    let s = (2 * l1).min(l12 + l21);
    (-a.k - a.n - s).max(0)
}

/// `theta~` as a Haar measure: the volume of
/// `{(b11, b12, b21) : v(b11) >= max(-m, -k-n), v(b12) >= -m + max(0,-k),
/// v(b21) >= -n + max(0,-k), v(b11^2 + b12 b21) >= -k-n}`.
pub fn theta_tilde_oracle(a: &ThetaArgs) -> Result<Rational> {
    theta_tilde_oracle_at(a, oracle_precision(a) + 1)
}

/// The oracle computed with residues modulo `p^precision`; exact once the
/// precision reaches [`oracle_precision`].
pub fn theta_tilde_oracle_at(a: &ThetaArgs, precision: i64) -> Result<Rational> {
    require_odd_prime(a.p)?;
    let [l1, l12, l21] = b_bounds(a);
    // b11 = p^l1 x, b12 = p^l12 y, b21 = p^l21 z with x, y, z integral
    let s = (2 * l1).min(l12 + l21);
    let ex = (2 * l1 - s) as u32;
    let eyz = (l12 + l21 - s) as u32;
    let depth = -a.k - a.n - s;
    let volume = p_pow(a.p, -(l1 + l12 + l21));
    if depth <= 0 {
        return Ok(volume);
    }
    let big_m = precision.max(0) as u32;
    if (depth as u32) > big_m {
        return Err(Error::InvalidArgs(format!("precision {precision} below the needed {depth}")));
    }
    let p = a.p as u128;
    let modulus = p
        .checked_pow(big_m)
        .filter(|&q| q <= ORACLE_GUARD)
        .ok_or_else(|| Error::PrecisionOverflow { precision: big_m, guard: ORACLE_GUARD.to_string() })?;
    // count p^ex x^2 + p^eyz y z = 0 mod p^depth, lifted to residues mod p^M
    let target = p.pow(depth as u32);
    let cx = p.pow(ex.min(depth as u32)) % target;
    let mut count: u128 = 0;
    for x in 0..target {
        let c = cx * (x * x % target) % target;
        let pairs = if eyz >= depth as u32 {
            if c == 0 {
                target * target
            } else {
                0
            }
        } else {
            let pe = p.pow(eyz);
            if c % pe != 0 {
                0
            } else {
                pair_count_u128(a.p, depth as u32 - eyz, c / pe) * pe * pe
            }
        };
        count += pairs;
    }
    // each residue mod p^depth has p^{M - depth} lifts per coordinate
    let lift = modulus / target;
    let count = BigUint::from(count) * BigUint::from(lift).pow(3);
    let measure = Rational::new(count.into(), BigUint::from(modulus).pow(3).into());
    Ok(volume * measure)
}

/// Affine-linear polynomial expressions in the seven parameters, scaled to
/// integral variables.
#[derive(Clone, Copy)]
enum P7 {
    Beta,
    B11,
    B12,
    B21,
    C11,
    C12,
    C21,
}

/// One of the integrality conditions `v(sum c_t prod vars) >= bound`.
struct Condition {
    terms: Vec<(i64, Vec<P7>)>,
    bound: i64,
}

fn twelve_conditions(a: &ThetaArgs) -> Vec<Condition> {
    use P7::*;
    let (k, m, n) = (a.k, a.m, a.n);
    let c = |terms: &[(i64, &[P7])], bound: i64| Condition {
        terms: terms.iter().map(|(c, v)| (*c, v.to_vec())).collect(),
        bound,
    };
    // det B = -b11^2 - b12 b21
    vec![
        c(&[(1, &[B11])], -m),
        c(&[(1, &[B21])], -n),
        c(&[(1, &[B12])], -m),
        c(&[(1, &[Beta])], -m - n),
        c(&[(1, &[Beta]), (1, &[B11])], -k - n),
        c(&[(1, &[Beta]), (-1, &[B11])], -k - m),
        c(&[(1, &[B12])], -k - m),
        c(&[(1, &[B21])], -k - n),
        c(&[(2, &[C12]), (1, &[Beta, B12])], -k - m),
        c(&[(2, &[C21]), (1, &[Beta, B21])], -k - n),
        c(&[(2, &[C11]), (1, &[Beta, B11]), (1, &[B11, B11]), (1, &[B12, B21])], -k - n),
        c(&[(-2, &[C11]), (-1, &[Beta, B11]), (1, &[B11, B11]), (1, &[B12, B21])], -k - m),
    ]
}

/// Lower bounds on the valuations of `(beta, b11, b12, b21, c11, c12, c21)`
/// implied by the twelve conditions, each lowered by `slack`.
fn seven_bounds(a: &ThetaArgs, slack: i64) -> [i64; 7] {
    let (k, m, n) = (a.k, a.m, a.n);
    let [l11, l12, l21] = b_bounds(a);
    let lb = (-m - n).max((-k - m).min(l11));
    let l_c11 = (-k - n).min(lb + l11);
    let l_c12 = (-k - m).min(lb + l12);
    let l_c21 = (-k - n).min(lb + l21);
    [lb, l11, l12, l21, l_c11, l_c12, l_c21].map(|x| x - slack)
}

/// Measure of the set of `(beta, B, C)` satisfying all twelve integrality
/// conditions, computed directly (no reduction) with residues modulo
/// `p^precision`. Equals `theta_0 = p^{4k+3m+n} theta~`.
pub fn twelve_condition_oracle(a: &ThetaArgs, slack: i64) -> Result<Rational> {
    require_odd_prime(a.p)?;
    let bounds = seven_bounds(a, slack);
    let conds = twelve_conditions(a);
    // rewrite each condition over integral variables u with var = p^L u:
    // sum c_t p^{s_t} u^t, divided by p^{min s_t}, must vanish mod p^{depth}
    struct Scaled {
        terms: Vec<(i64, i64, Vec<usize>)>,
        depth: i64,
    }
    let scaled: Vec<Scaled> = conds
        .iter()
        .map(|c| {
            let raw: Vec<(i64, i64, Vec<usize>)> = c
                .terms
                .iter()
                .map(|(coef, vars)| {
                    let idx: Vec<usize> = vars.iter().map(|v| *v as usize).collect();
                    let shift = idx.iter().map(|&i| bounds[i]).sum::<i64>();
                    (*coef, shift, idx)
                })
                .collect();
            let low = raw.iter().map(|t| t.1).min().unwrap();
            Scaled {
                terms: raw.into_iter().map(|(c, s, v)| (c, s - low, v)).collect(),
                depth: c.bound - low,
            }
        })
        .collect();
    let precision = scaled.iter().map(|s| s.depth).max().unwrap().max(0) as u32;
    let p = a.p as i128;
    let modulus = (a.p as u128)
        .checked_pow(precision)
        .filter(|&q| q.checked_pow(7).is_some_and(|w| w <= TWELVE_GUARD))
        .ok_or_else(|| Error::PrecisionOverflow { precision, guard: TWELVE_GUARD.to_string() })?
        as i128;
    let active: Vec<&Scaled> = scaled.iter().filter(|s| s.depth > 0).collect();
    let mods: Vec<i128> = active.iter().map(|s| p.pow(s.depth as u32)).collect();
    let mut count: u128 = 0;
    let mut u = [0i128; 7];
    let total = modulus.pow(7);
    for idx in 0..total {
        let mut r = idx;
        for slot in u.iter_mut() {
            *slot = r % modulus;
            r /= modulus;
        }
        let ok = active.iter().zip(&mods).all(|(s, &md)| {
            let mut acc: i128 = 0;
            for (c, sh, vars) in &s.terms {
                if *sh >= s.depth {
                    continue;
                }
                let mut t = *c as i128 * p.pow(*sh as u32);
                for &v in vars {
                    t = t * u[v] % md;
                }
                acc = (acc + t) % md;
            }
            acc == 0
        });
        if ok {
            count += 1;
        }
    }
    let volume = p_pow(a.p, -bounds.iter().sum::<i64>());
    Ok(volume * Rational::new(BigUint::from(count).into(), BigUint::from(total as u128).into()))
}
