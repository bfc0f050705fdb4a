use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::monomial::{Bindings, Monomial, Var, NVARS};
use crate::scalar::{Field, Scalar};

/// Sparse multivariate Laurent polynomial, terms kept in lexicographic
/// monomial order with no zero coefficients.
#[derive(Clone, PartialEq)]
pub struct Polynomial<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> Default for Polynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Scalar> Polynomial<C> {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, C::one())
    }

    /// `1 - m`
    pub fn one_minus(m: Monomial) -> Self {
        Self::one() - Self::monomial(m)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Integer-coefficient shorthand.
    pub fn from_int_terms(terms: &[(i64, Monomial)]) -> Self {
        Self::from_terms(terms.iter().map(|&(c, m)| (m, C::from_int(c))))
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Largest term in the lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (*m, a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial) -> Self {
        Polynomial {
            terms: self.terms.iter().map(|(k, c)| (*k * m, c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn substitute(&self, bindings: &Bindings) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.substitute(bindings), c.clone())))
    }

    /// Minimum and maximum weighted degree over the terms.
    pub fn grade_range(&self, weights: &[i32; NVARS]) -> Option<(i64, i64)> {
        let mut grades = self.terms.keys().map(|m| m.grade(weights));
        let first = grades.next()?;
        Some(grades.fold((first, first), |(lo, hi), g| (lo.min(g), hi.max(g))))
    }

    /// Terms whose weighted degree satisfies `keep`.
    pub fn filter_grade(&self, weights: &[i32; NVARS], keep: impl Fn(i64) -> bool) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m.grade(weights)))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn map_coefficients<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// If `self == c * m * other` for a scalar `c` and monomial `m`, return them.
    pub fn monomial_multiple_of(&self, other: &Self) -> Option<(C, Monomial)>
    where
        C: Field,
    {
        let (ma, ca) = self.leading_term()?;
        let (mb, cb) = other.leading_term()?;
        if self.len() != other.len() {
            return None;
        }
        let m = *ma / *mb;
        let c = ca.clone() / cb.clone();
        (other.mul_monomial(m).scale(&c) == *self).then_some((c, m))
    }
}

impl<C: Field> Polynomial<C> {
    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    fn exponent_box(&self) -> ([i32; NVARS], [i32; NVARS]) {
        let mut lo = [i32::MAX; NVARS];
        let mut hi = [i32::MIN; NVARS];
        for m in self.terms.keys() {
            for (i, e) in m.exponents().iter().enumerate() {
                lo[i] = lo[i].min(*e);
                hi[i] = hi[i].max(*e);
            }
        }
        (lo, hi)
    }

    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (dlead, dc) = divisor.leading_term()?;
        let (dlead, dc) = (*dlead, dc.clone());
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dlow = *divisor.terms.keys().next().unwrap();
        let nlow = *self.terms.keys().next().unwrap();
        // every quotient term q satisfies q*dlead >= nlow*dlead/dlow
        let floor = nlow * dlead / dlow;
        // Newton polytopes add, so quotient exponents lie in a box
        let (nmin, nmax) = self.exponent_box();
        let (dmin, dmax) = divisor.exponent_box();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((m, c)) = rem.leading_term() {
            if *m < floor {
                return None;
            }
            let q = *m / dlead;
            let e = q.exponents();
            if (0..NVARS).any(|i| e[i] < nmin[i] - dmin[i] || e[i] > nmax[i] - dmax[i]) {
                return None;
            }
            let qc = c.clone() / dc.clone();
            rem = &rem - &divisor.mul_monomial(q).scale(&qc);
            quot.add_term(q, qc);
        }
        Some(quot)
    }

    /// Specialize one variable to a non-zero scalar value.
    pub fn evaluate_var(&self, v: Var, value: &C) -> Self {
        let mut powers: BTreeMap<i32, C> = BTreeMap::new();
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let e = m.exp(v);
            let pw = powers
                .entry(e)
                .or_insert_with(|| C::powi(value, e as i64))
                .clone();
            let mut exps = *m.exponents();
            exps[v.index()] = 0;
            (Monomial::from_exponents(exps), c.clone() * pw)
        }))
    }
}

impl<C: Scalar> Add<&Polynomial<C>> for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn add(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<C: Scalar> Sub<&Polynomial<C>> for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn sub(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<C: Scalar> Mul<&Polynomial<C>> for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn mul(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        let mut acc: BTreeMap<Monomial, C> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = *ma * *mb;
                let c = ca.clone() * cb.clone();
                match acc.get_mut(&m) {
                    Some(slot) => *slot = slot.clone() + c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Polynomial { terms: acc }
    }
}

impl<C: Scalar> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(self) -> Polynomial<C> {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $f:ident),*) => {$(
        impl<C: Scalar> $tr for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $f(self, rhs: Polynomial<C>) -> Polynomial<C> {
                (&self).$f(&rhs)
            }
        }
        impl<C: Scalar> $tr<&Polynomial<C>> for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $f(self, rhs: &Polynomial<C>) -> Polynomial<C> {
                (&self).$f(rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl<C: Scalar> Neg for Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(self) -> Polynomial<C> {
        -&self
    }
}

impl<C: Scalar> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mono;
    use crate::Poly;

    fn one_minus(m: Monomial) -> Poly {
        Poly::one_minus(m)
    }

    #[test]
    fn cancellation() {
        let pt = Poly::monomial(mono!(P ^ 1, T ^ 1));
        assert_eq!(&one_minus(mono!(P ^ 1, T ^ 1)) + &pt, Poly::one());
    }

    #[test]
    fn difference_of_squares() {
        let a = one_minus(mono!(P ^ 1, T ^ 1));
        let b = &Poly::one() + &Poly::monomial(mono!(P ^ 1, T ^ 1));
        assert_eq!(&a * &b, one_minus(mono!(P ^ 2, T ^ 2)));
        let c = one_minus(mono!(P ^ 2, T ^ 1));
        let d = &Poly::one() + &Poly::monomial(mono!(P ^ 2, T ^ 1));
        assert_eq!(&c * &d, one_minus(mono!(P ^ 4, T ^ 2)));
        assert_ne!(&c * &d, one_minus(mono!(P ^ 2, T ^ 2)));
    }

    #[test]
    fn evaluation_at_a_prime() {
        // (p^2 - p^-1) T at p = 3 is (9 - 1/3) T
        let f = Poly::from_int_terms(&[(1, mono!(P ^ 2, T ^ 1)), (-1, mono!(P ^ -1, T ^ 1))]);
        let at3 = f.evaluate_var(Var::P, &crate::Rational::from_integer(3.into()));
        assert_eq!(
            at3.coefficient(&mono!(T ^ 1)),
            crate::Rational::new(26.into(), 3.into())
        );
    }

    #[test]
    fn monomial_multiple_detection() {
        let a = Poly::from_int_terms(&[(1, mono!()), (1, mono!(P ^ 10, PS ^ 4))]);
        let b = a.mul_monomial(mono!(P ^ -10, PS ^ -4)).scale(&crate::Rational::from_integer((-1).into()));
        let (c, m) = b.monomial_multiple_of(&a).unwrap();
        assert_eq!(c, crate::Rational::from_integer((-1).into()));
        assert_eq!(m, mono!(P ^ -10, PS ^ -4));
        assert!(Poly::one().monomial_multiple_of(&a).is_none());
    }

    #[test]
    fn exact_division() {
        let a = one_minus(mono!(P ^ 2, T ^ 2));
        let b = one_minus(mono!(P ^ 1, T ^ 1));
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q, &Poly::one() + &Poly::monomial(mono!(P ^ 1, T ^ 1)));
        assert!(b.div_exact(&a).is_none());
        assert!(a.div_exact(&one_minus(mono!(P ^ 2, T ^ 1))).is_none());
    }

    #[test]
    fn inexact_laurent_division_stops() {
        // lex order has long descending chains; the exponent box cuts them off
        let n = Poly::from_int_terms(&[(1, mono!(P ^ 2)), (1, mono!(X1 ^ -5)), (-3, mono!(X2 ^ 40))]);
        assert!(n.div_exact(&one_minus(mono!(P ^ 1, X1 ^ 1))).is_none());
        let d = one_minus(mono!(P ^ 1, X2 ^ 7));
        let prod = &n * &d;
        assert_eq!(prod.div_exact(&d), Some(n));
    }
}
