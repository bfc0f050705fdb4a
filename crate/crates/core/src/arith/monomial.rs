use std::fmt;
use std::ops::{Div, Mul};

/// Variables of the fixed registry.
///
/// `p` is the residue characteristic, `PS` is the Dirichlet variable
/// `t = p^{-s}` (printed as `t`), `X1, X2, X3` are the
/// cone-weight monomials of the cubic case and `T`, `Y` are the formal
/// variables of the point-count generating functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    P,
    PS,
    X1,
    X2,
    X3,
    T,
    Y,
}

pub const NVARS: usize = 7;

impl Var {
    pub const ALL: [Var; NVARS] = [Var::P, Var::PS, Var::X1, Var::X2, Var::X3, Var::T, Var::Y];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::P => "p",
            Var::PS => "t",
            Var::X1 => "X1",
            Var::X2 => "X2",
            Var::X3 => "X3",
            Var::T => "T",
            Var::Y => "Y",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == name)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A Laurent monomial over the variable registry.
///
/// The derived ordering is lexicographic on the exponent vector, which is a
/// translation-invariant total order: `a < b` implies `a*m < b*m`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial([i32; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: i32) -> Self {
        let mut exps = [0; NVARS];
        exps[v.index()] = e;
        Monomial(exps)
    }

    /// Builds a monomial from `(variable, exponent)` pairs; repeated variables accumulate.
    pub fn from_pairs(pairs: &[(Var, i32)]) -> Self {
        let mut exps = [0; NVARS];
        for &(v, e) in pairs {
            exps[v.index()] += e;
        }
        Monomial(exps)
    }

    pub fn from_exponents(exps: [i32; NVARS]) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[i32; NVARS] {
        &self.0
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0[v.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn inverse(&self) -> Self {
        Monomial(self.0.map(|e| -e))
    }

    pub fn pow(&self, k: i32) -> Self {
        Monomial(self.0.map(|e| e * k))
    }

    /// Negates the exponents of the listed variables only.
    pub fn invert_vars(&self, vars: &[Var]) -> Self {
        let mut out = *self;
        for v in vars {
            out.0[v.index()] = -out.0[v.index()];
        }
        out
    }

    /// Variables with non-zero exponent, in registry order.
    pub fn support(&self) -> impl Iterator<Item = (Var, i32)> + '_ {
        Var::ALL
            .into_iter()
            .filter_map(move |v| (self.exp(v) != 0).then(|| (v, self.exp(v))))
    }

    /// Weighted degree under per-variable weights.
    pub fn grade(&self, weights: &[i32; NVARS]) -> i64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i64 * w as i64)
            .sum()
    }

    /// Replace each bound variable `v` by `image(v)^{exp}`; unbound variables are kept.
    pub fn substitute(&self, bindings: &Bindings) -> Self {
        let mut out = Monomial::ONE;
        for (v, e) in self.support() {
            match bindings.get(v) {
                Some(image) => out = out * image.pow(e),
                None => out.0[v.index()] += e,
            }
        }
        out
    }
}

impl Mul for Monomial {
    type Output = Monomial;

    fn mul(self, rhs: Monomial) -> Monomial {
        let mut out = self.0;
        for (a, b) in out.iter_mut().zip(rhs.0) {
            *a += b;
        }
        Monomial(out)
    }
}

impl Div for Monomial {
    type Output = Monomial;

    fn div(self, rhs: Monomial) -> Monomial {
        self * rhs.inverse()
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, e) in self.support() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A substitution `variable -> monomial`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Bindings([Option<Monomial>; NVARS]);

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(mut self, v: Var, image: Monomial) -> Self {
        self.0[v.index()] = Some(image);
        self
    }

    pub fn get(&self, v: Var) -> Option<&Monomial> {
        self.0[v.index()].as_ref()
    }

    /// `p -> p^{-1}`, `v -> v^{-1}` for every listed variable.
    pub fn inversion(vars: &[Var]) -> Self {
        vars.iter()
            .fold(Self::new(), |b, &v| b.bind(v, Monomial::var_pow(v, -1)))
    }

    /// `X1 = p^14 t^5`, `X2 = p^2 t`, `X3 = p^26 t^9`.
    pub fn x_to_s() -> Self {
        Self::new()
            .bind(Var::X1, Monomial::from_pairs(&[(Var::P, 14), (Var::PS, 5)]))
            .bind(Var::X2, Monomial::from_pairs(&[(Var::P, 2), (Var::PS, 1)]))
            .bind(Var::X3, Monomial::from_pairs(&[(Var::P, 26), (Var::PS, 9)]))
    }

    /// Composition: first apply `self`, then `then` to the images (and to unbound variables).
    pub fn then(&self, then: &Bindings) -> Bindings {
        let mut out = Bindings::new();
        for v in Var::ALL {
            let image = match self.get(v) {
                Some(m) => m.substitute(then),
                None => Monomial::var(v).substitute(then),
            };
            if image != Monomial::var(v) {
                out = out.bind(v, image);
            }
        }
        out
    }
}

/// Shorthand for building monomials in tests and tables.
#[macro_export]
macro_rules! mono {
    () => { $crate::arith::Monomial::ONE };
    ($($v:ident ^ $e:expr),+ $(,)?) => {
        $crate::arith::Monomial::from_pairs(&[$(($crate::arith::Var::$v, $e)),+])
    };
}
