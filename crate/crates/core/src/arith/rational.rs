use std::fmt;

use super::monomial::{Bindings, Monomial, Var};
use super::polynomial::Polynomial;
use super::series::{Grading, TruncatedSeries};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// The denominator factor `1 - coef * mono`.
#[derive(Clone, PartialEq)]
pub struct Factor<C> {
    pub coef: C,
    pub mono: Monomial,
}

impl<C: Field> Factor<C> {
    pub fn new(mono: Monomial) -> Self {
        Factor { coef: C::one(), mono }
    }

    pub fn as_polynomial(&self) -> Polynomial<C> {
        Polynomial::one() - Polynomial::term(self.mono, self.coef.clone())
    }
}

impl<C: Field> fmt::Display for Factor<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coef.is_one() {
            write!(f, "(1 - {})", self.mono)
        } else {
            write!(f, "(1 - ({})*{})", self.coef, self.mono)
        }
    }
}

/// A rational function `numerator / prod (1 - c_i M_i)^{k_i}` with a Laurent
/// polynomial numerator.
#[derive(Clone)]
pub struct FactoredRational<C> {
    numerator: Polynomial<C>,
    denominator: Vec<(Factor<C>, u32)>,
}

impl<C: Field> FactoredRational<C> {
    pub fn from_poly(numerator: Polynomial<C>) -> Self {
        FactoredRational { numerator, denominator: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::from_poly(Polynomial::monomial(m))
    }

    /// `numerator / prod (1 - M)^k`.
    pub fn new(numerator: Polynomial<C>, factors: &[(Monomial, u32)]) -> Result<Self> {
        let mut out = Self::from_poly(numerator);
        for &(m, k) in factors {
            out.push_factor(Factor::new(m), k)?;
        }
        Ok(out)
    }

    /// `numerator / prod (1 - c M)^k` with explicit coefficients.
    pub fn from_parts(numerator: Polynomial<C>, factors: Vec<(Factor<C>, u32)>) -> Result<Self> {
        let mut out = Self::from_poly(numerator);
        for (f, k) in factors {
            out.push_factor(f, k)?;
        }
        Ok(out)
    }

    /// `1 / (1 - M)`.
    pub fn geometric(m: Monomial) -> Result<Self> {
        Self::new(Polynomial::one(), &[(m, 1)])
    }

    fn push_factor(&mut self, f: Factor<C>, k: u32) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        if f.mono.is_one() {
            let c = C::one() - f.coef.clone();
            if c.is_zero() {
                return Err(Error::ZeroFactor(f.to_string()));
            }
            self.numerator = self.numerator.scale(&C::powi(&c, -(k as i64)));
            return Ok(());
        }
        match self.denominator.iter_mut().find(|(g, _)| *g == f) {
            Some((_, e)) => *e += k,
            None => self.denominator.push((f, k)),
        }
        Ok(())
    }

    pub fn numerator(&self) -> &Polynomial<C> {
        &self.numerator
    }

    pub fn factors(&self) -> &[(Factor<C>, u32)] {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn denominator_polynomial(&self) -> Polynomial<C> {
        self.denominator
            .iter()
            .fold(Polynomial::one(), |acc, (f, k)| &acc * &f.as_polynomial().pow(*k))
    }

    /// Factors of `self` not covered by `other`, with multiplicity.
    fn excess_over(&self, other: &Self) -> Vec<(Factor<C>, u32)> {
        self.denominator
            .iter()
            .filter_map(|(f, k)| {
                let there = other
                    .denominator
                    .iter()
                    .find(|(g, _)| g == f)
                    .map_or(0, |(_, j)| *j);
                (*k > there).then(|| (f.clone(), k - there))
            })
            .collect()
    }

    fn product(factors: &[(Factor<C>, u32)]) -> Polynomial<C> {
        factors
            .iter()
            .fold(Polynomial::one(), |acc, (f, k)| &acc * &f.as_polynomial().pow(*k))
    }

    /// Both numerators over the least common denominator.
    fn over_common(&self, other: &Self) -> (Polynomial<C>, Polynomial<C>, Vec<(Factor<C>, u32)>) {
        let extra_self = other.excess_over(self);
        let extra_other = self.excess_over(other);
        let a = &self.numerator * &Self::product(&extra_self);
        let b = &other.numerator * &Self::product(&extra_other);
        let mut denom = self.denominator.clone();
        denom.extend(extra_self);
        (a, b, denom)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, denominator) = self.over_common(other);
        FactoredRational { numerator: a + b, denominator }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b, denominator) = self.over_common(other);
        FactoredRational { numerator: a - b, denominator }
    }

    pub fn neg(&self) -> Self {
        FactoredRational { numerator: -&self.numerator, denominator: self.denominator.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = FactoredRational {
            numerator: &self.numerator * &other.numerator,
            denominator: self.denominator.clone(),
        };
        for (f, k) in &other.denominator {
            out.push_factor(f.clone(), *k).expect("factor already validated");
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        FactoredRational { numerator: self.numerator.scale(c), denominator: self.denominator.clone() }
    }

    pub fn mul_poly(&self, p: &Polynomial<C>) -> Self {
        FactoredRational { numerator: &self.numerator * p, denominator: self.denominator.clone() }
    }

    pub fn mul_monomial(&self, m: Monomial) -> Self {
        FactoredRational {
            numerator: self.numerator.mul_monomial(m),
            denominator: self.denominator.clone(),
        }
    }

    /// Divide by `(1 - M)^k`.
    pub fn div_one_minus(&self, m: Monomial, k: u32) -> Result<Self> {
        let mut out = self.clone();
        out.push_factor(Factor::new(m), k)?;
        Ok(out)
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a Self>>(items: I) -> Self {
        items.into_iter().fold(Self::zero(), |acc, x| acc.add(x))
    }

    /// Exact equality of rational functions.
    pub fn rational_eq(&self, other: &Self) -> bool {
        let (a, b, _) = self.over_common(other);
        a == b
    }

    /// Cancel denominator factors that divide the numerator.
    pub fn reduce(&self) -> Self {
        let mut numerator = self.numerator.clone();
        let mut denominator = Vec::new();
        for (f, k) in &self.denominator {
            let fp = f.as_polynomial();
            let mut left = *k;
            while left > 0 {
                match numerator.div_exact(&fp) {
                    Some(q) => {
                        numerator = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                denominator.push((f.clone(), left));
            }
        }
        FactoredRational { numerator, denominator }
    }

    pub fn substitute(&self, bindings: &Bindings) -> Result<Self> {
        let mut out = Self::from_poly(self.numerator.substitute(bindings));
        for (f, k) in &self.denominator {
            let g = Factor { coef: f.coef.clone(), mono: f.mono.substitute(bindings) };
            out.push_factor(g, *k)?;
        }
        Ok(out)
    }

    /// Specialize a variable to a non-zero scalar.
    pub fn evaluate_var(&self, v: Var, value: &C) -> Result<Self> {
        let mut out = Self::from_poly(self.numerator.evaluate_var(v, value));
        for (f, k) in &self.denominator {
            let e = f.mono.exp(v);
            let mut exps = *f.mono.exponents();
            exps[v.index()] = 0;
            let g = Factor {
                coef: f.coef.clone() * C::powi(value, e as i64),
                mono: Monomial::from_exponents(exps),
            };
            out.push_factor(g, *k)?;
        }
        Ok(out)
    }

    /// Replace each listed variable by its inverse, rewriting every factor
    /// `1 - cM` as `-cM (1 - c^{-1}M^{-1})` so the denominator keeps its shape.
    pub fn invert_vars(&self, vars: &[Var]) -> Self {
        let inv = Bindings::inversion(vars);
        let mut numerator = self.numerator.substitute(&inv);
        let mut denominator: Vec<(Factor<C>, u32)> = Vec::new();
        for (f, k) in &self.denominator {
            let m = f.mono.substitute(&inv);
            // 1/(1 - cM)^k = (-cM)^{-k} / (1 - c^{-1} M^{-1})^k
            let pre = Polynomial::term(m.pow(-(*k as i32)), C::powi(&-f.coef.clone(), -(*k as i64)));
            numerator = &numerator * &pre;
            denominator.push((Factor { coef: f.coef.recip(), mono: m.inverse() }, *k));
        }
        let mut out = Self::from_poly(numerator);
        for (f, k) in denominator {
            out.push_factor(f, k).expect("inverted factor is not constant");
        }
        out
    }

    /// If `self(x^{-1}) = sign * M * self(x)` for the listed variables,
    /// returns `(sign is negative, M)`.
    pub fn funeq_detect(&self, vars: &[Var]) -> Option<(bool, Monomial)> {
        if self.is_zero() {
            return None;
        }
        let flipped = self.invert_vars(vars);
        let (a, b, _) = flipped.over_common(self);
        let (c, m) = a.monomial_multiple_of(&b)?;
        let negative = c.is_unit_sign()?;
        Some((negative, m))
    }

    /// Power series expansion up to grade `order`. Every factor must have
    /// positive degree.
    pub fn expand(&self, grading: Grading, order: i64) -> Result<TruncatedSeries<C>> {
        let mut factors = Vec::new();
        for (f, k) in &self.denominator {
            let g = grading.degree(&f.mono);
            if g <= 0 {
                return Err(Error::NonConvergentFactor(f.to_string()));
            }
            factors.push((f, g, *k));
        }
        let mut series = TruncatedSeries::from_polynomial(grading, order, &self.numerator);
        let Some(low) = series.components().next().map(|(d, _)| d) else {
            return Ok(series);
        };
        for (f, g, k) in factors {
            let step = Polynomial::term(f.mono, f.coef.clone());
            for _ in 0..k {
                // R_d = S_d + cM * R_{d-g}
                let mut out = TruncatedSeries::zero(grading, order);
                for d in low..=order {
                    let mut r = series.component(d);
                    if d - g >= low {
                        r = &r + &(&step * &out.component(d - g));
                    }
                    out.set_component(d, r);
                }
                series = out;
            }
        }
        Ok(series)
    }
}

impl<C: Field> fmt::Display for FactoredRational<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.numerator)?;
        if !self.denominator.is_empty() {
            f.write_str(" / (")?;
            for (i, (g, k)) in self.denominator.iter().enumerate() {
                if i > 0 {
                    f.write_str("*")?;
                }
                write!(f, "{g}")?;
                if *k > 1 {
                    write!(f, "^{k}")?;
                }
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl<C: Field> fmt::Debug for FactoredRational<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FactoredRational({self})")
    }
}
