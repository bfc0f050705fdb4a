use std::collections::BTreeMap;
use std::fmt;

use super::monomial::{Monomial, Var, NVARS};
use super::polynomial::Polynomial;
use crate::scalar::{Field, Scalar};

/// A grading: the degree of a monomial is the dot product of its exponent
/// vector with `weights`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grading {
    pub weights: [i32; NVARS],
}

impl Grading {
    pub fn new(weights: [i32; NVARS]) -> Self {
        Grading { weights }
    }

    /// Degree in a single variable.
    pub fn by_var(v: Var) -> Self {
        let mut weights = [0; NVARS];
        weights[v.index()] = 1;
        Grading { weights }
    }

    pub fn from_pairs(pairs: &[(Var, i32)]) -> Self {
        let mut weights = [0; NVARS];
        for &(v, w) in pairs {
            weights[v.index()] = w;
        }
        Grading { weights }
    }

    pub fn degree(&self, m: &Monomial) -> i64 {
        m.grade(&self.weights)
    }
}

/// Power series truncated at a given degree: every homogeneous component of
/// degree `<= order` is exact, nothing above it is stored.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<C> {
    grading: Grading,
    order: i64,
    components: BTreeMap<i64, Polynomial<C>>,
}

impl<C: Scalar> TruncatedSeries<C> {
    pub fn zero(grading: Grading, order: i64) -> Self {
        TruncatedSeries { grading, order, components: BTreeMap::new() }
    }

    /// Collects terms, dropping everything above `order`.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(
        grading: Grading,
        order: i64,
        terms: I,
    ) -> Self {
        let mut s = Self::zero(grading, order);
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    pub fn from_polynomial(grading: Grading, order: i64, p: &Polynomial<C>) -> Self {
        Self::from_terms(grading, order, p.terms().map(|(m, c)| (*m, c.clone())))
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        let d = self.grading.degree(&m);
        if d > self.order || c.is_zero() {
            return;
        }
        let slot = self.components.entry(d).or_default();
        slot.add_term(m, c);
        if slot.is_zero() {
            self.components.remove(&d);
        }
    }

    pub(crate) fn set_component(&mut self, d: i64, p: Polynomial<C>) {
        if p.is_zero() || d > self.order {
            self.components.remove(&d);
        } else {
            self.components.insert(d, p);
        }
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn component(&self, d: i64) -> Polynomial<C> {
        self.components.get(&d).cloned().unwrap_or_default()
    }

    /// Non-zero components in increasing degree.
    pub fn components(&self) -> impl Iterator<Item = (i64, &Polynomial<C>)> {
        self.components.iter().map(|(d, p)| (*d, p))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Drop everything above `order`.
    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.order);
        TruncatedSeries {
            grading: self.grading,
            order,
            components: self
                .components
                .range(..=order)
                .map(|(d, p)| (*d, p.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.grading, other.grading, "series with different gradings");
        let order = self.order.min(other.order);
        let mut out = self.truncate(order);
        for (d, p) in other.components.range(..=order) {
            let sum = &out.component(*d) + p;
            out.set_component(*d, sum);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let neg = TruncatedSeries {
            grading: other.grading,
            order: other.order,
            components: other.components.iter().map(|(d, p)| (*d, -p)).collect(),
        };
        self.add(&neg)
    }

    /// Equality up to the smaller of the two orders.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_disagreement(other).is_none()
    }

    /// Lowest degree where the two series differ, if any.
    pub fn first_disagreement(&self, other: &Self) -> Option<i64> {
        let diff = self.sub(other);
        diff.components.keys().next().copied()
    }

    pub fn map_components(&self, f: impl Fn(&Polynomial<C>) -> Polynomial<C>) -> Self {
        let mut out = Self::zero(self.grading, self.order);
        for p in self.components.values() {
            for (m, c) in f(p).terms() {
                out.add_term(*m, c.clone());
            }
        }
        out
    }

    /// All terms, flattened, lowest degree first.
    pub fn to_polynomial(&self) -> Polynomial<C> {
        let mut out = Polynomial::zero();
        for p in self.components.values() {
            out = &out + p;
        }
        out
    }
}

impl<C: Field> TruncatedSeries<C> {
    /// Specialize a variable of grade zero (typically `p`) to a scalar.
    pub fn specialize(&self, v: Var, value: &C) -> Self {
        assert_eq!(self.grading.weights[v.index()], 0, "specialized variable must have grade 0");
        self.map_components(|p| p.evaluate_var(v, value))
    }
}

impl<C: Scalar> fmt::Display for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in self.components.values() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{p}")?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(deg {})", self.order + 1)
    }
}

impl<C: Scalar> fmt::Debug for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries({self})")
    }
}
