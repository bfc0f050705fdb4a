//! Rendering of rational functions and series as JSON, LaTeX and plain text.
//!
//! JSON is canonical: numerator terms ascend lexicographically by exponent
//! vector, denominator factors likewise, and the numerator is written as a
//! prefactor times a primitive integer polynomial whose lowest term is
//! positive. Parsing and re-emitting gives identical bytes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{Factor, Monomial, Var, NVARS};
use crate::error::{Error, Result};
use crate::{Poly, Rational, RationalFunction, Series};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Latex,
    Plain,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "latex" => Ok(Format::Latex),
            "plain" => Ok(Format::Plain),
            _ => Err(Error::InvalidArgs(format!("unknown format {s}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coefficient: String,
    pub exponents: Vec<i32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorDoc {
    pub coefficient: String,
    pub exponents: Vec<i32>,
    pub multiplicity: u32,
}

/// `prefactor * sum(numerator) / prod (1 - c M)^k`; exponent vectors are
/// aligned with `variables`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalDoc {
    pub variables: Vec<String>,
    pub prefactor: TermDoc,
    pub numerator: Vec<TermDoc>,
    pub denominator: Vec<FactorDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub variable: String,
    pub order: i64,
    pub coefficients: BTreeMap<i64, String>,
}

fn used_vars(f: &RationalFunction) -> Vec<Var> {
    let mut used = [false; NVARS];
    let mut mark = |m: &Monomial| {
        for (v, _) in m.support() {
            used[v.index()] = true;
        }
    };
    f.numerator().terms().for_each(|(m, _)| mark(m));
    f.factors().iter().for_each(|(g, _)| mark(&g.mono));
    Var::ALL.into_iter().filter(|v| used[v.index()]).collect()
}

fn exps(m: &Monomial, vars: &[Var]) -> Vec<i32> {
    vars.iter().map(|&v| m.exp(v)).collect()
}

fn mono_of(vars: &[Var], e: &[i32]) -> Result<Monomial> {
    if vars.len() != e.len() {
        return Err(Error::DimensionMismatch(format!("{} exponents for {} variables", e.len(), vars.len())));
    }
    Ok(Monomial::from_pairs(&vars.iter().copied().zip(e.iter().copied()).collect::<Vec<_>>()))
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.parse::<Rational>().map_err(|_| Error::InvalidArgs(format!("bad coefficient {s}")))
}

/// Rational `c` and monomial `m` with `poly = c * m * q`, `q` a primitive
/// integer polynomial with non-negative exponents whose lowest term is positive.
fn content(poly: &Poly) -> (Rational, Monomial) {
    let mut terms = poly.terms();
    let Some((first_m, first_c)) = terms.next() else {
        return (Rational::zero(), Monomial::default());
    };
    let mut low = *first_m.exponents();
    let mut g = first_c.numer().abs();
    let mut l = first_c.denom().clone();
    for (m, c) in poly.terms() {
        for (i, e) in m.exponents().iter().enumerate() {
            low[i] = low[i].min(*e);
        }
        g = g.gcd(c.numer());
        l = l.lcm(c.denom());
    }
    let mut c = Rational::new(g, l);
    if first_c.is_negative() {
        c = -c;
    }
    (c, Monomial::from_exponents(low))
}

pub fn rational_doc(f: &RationalFunction) -> RationalDoc {
    let vars = used_vars(f);
    let (c, low) = content(f.numerator());
    let numerator = if c.is_zero() {
        Vec::new()
    } else {
        let inv = c.recip();
        f.numerator()
            .terms()
            .map(|(m, a)| TermDoc { coefficient: (a * &inv).to_string(), exponents: exps(&(*m / low), &vars) })
            .collect()
    };
    let mut denominator: Vec<FactorDoc> = f
        .factors()
        .iter()
        .map(|(g, k)| FactorDoc { coefficient: g.coef.to_string(), exponents: exps(&g.mono, &vars), multiplicity: *k })
        .collect();
    denominator.sort_by(|a, b| (&a.exponents, &a.coefficient).cmp(&(&b.exponents, &b.coefficient)));
    RationalDoc {
        variables: vars.iter().map(|v| v.name().to_string()).collect(),
        prefactor: TermDoc { coefficient: c.to_string(), exponents: exps(&low, &vars) },
        numerator,
        denominator,
    }
}

pub fn rational_from_doc(doc: &RationalDoc) -> Result<RationalFunction> {
    let vars = doc
        .variables
        .iter()
        .map(|n| Var::from_name(n).ok_or_else(|| Error::InvalidArgs(format!("unknown variable {n}"))))
        .collect::<Result<Vec<_>>>()?;
    let pre_c = parse_rational(&doc.prefactor.coefficient)?;
    let pre_m = mono_of(&vars, &doc.prefactor.exponents)?;
    let mut num = Poly::zero();
    for t in &doc.numerator {
        num.add_term(mono_of(&vars, &t.exponents)? * pre_m, parse_rational(&t.coefficient)? * &pre_c);
    }
    let factors = doc
        .denominator
        .iter()
        .map(|d| Ok((Factor { coef: parse_rational(&d.coefficient)?, mono: mono_of(&vars, &d.exponents)? }, d.multiplicity)))
        .collect::<Result<Vec<_>>>()?;
    RationalFunction::from_parts(num, factors)
}

pub fn rational_json(f: &RationalFunction) -> String {
    serde_json::to_string_pretty(&rational_doc(f)).expect("serializable")
}

pub fn rational_from_json(s: &str) -> Result<RationalFunction> {
    let doc: RationalDoc = serde_json::from_str(s).map_err(|e| Error::InvalidArgs(e.to_string()))?;
    rational_from_doc(&doc)
}

/// `p^a t^c` is written `p^{a-cs}`; other variables get subscripts.
fn latex_monomial(m: &Monomial) -> String {
    let a = m.exp(Var::P);
    let c = m.exp(Var::PS);
    let s_part = match c {
        0 => String::new(),
        1 => "-s".to_string(),
        -1 => "+s".to_string(),
        c if c > 0 => format!("-{c}s"),
        c => format!("+{}s", -c),
    };
    let e = match a {
        0 => s_part.trim_start_matches('+').to_string(),
        a => format!("{a}{s_part}"),
    };
    let mut out = match e.as_str() {
        "" => String::new(),
        "1" => "p".to_string(),
        e => format!("p^{{{e}}}"),
    };
    for (v, e) in m.support() {
        if v == Var::P || v == Var::PS {
            continue;
        }
        let base = match v {
            Var::X1 => "X_1",
            Var::X2 => "X_2",
            Var::X3 => "X_3",
            other => other.name(),
        };
        if e == 1 {
            out.push_str(base);
        } else {
            out.push_str(&format!("{base}^{{{e}}}"));
        }
    }
    out
}

fn latex_term(c: &Rational, m: &Monomial, first: bool) -> String {
    let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
    let a = c.abs();
    let body = latex_monomial(m);
    let coef = if a.is_one() && !body.is_empty() {
        String::new()
    } else if a.is_integer() {
        a.to_string()
    } else {
        format!("\\tfrac{{{}}}{{{}}}", a.numer(), a.denom())
    };
    format!("{sign}{coef}{body}")
}

pub fn latex_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.terms().enumerate().map(|(i, (m, c))| latex_term(c, m, i == 0)).collect()
}

pub fn rational_latex(f: &RationalFunction) -> String {
    let num = latex_poly(f.numerator());
    if f.factors().is_empty() {
        return num;
    }
    let doc = rational_doc(f);
    let vars: Vec<Var> = doc.variables.iter().filter_map(|n| Var::from_name(n)).collect();
    let den: String = doc
        .denominator
        .iter()
        .map(|d| {
            let m = mono_of(&vars, &d.exponents).expect("aligned");
            let c = parse_rational(&d.coefficient).expect("emitted");
            let inner = format!("(1{})", latex_term(&-c, &m, false));
            if d.multiplicity > 1 {
                format!("{inner}^{{{}}}", d.multiplicity)
            } else {
                inner
            }
        })
        .collect();
    format!("\\frac{{{num}}}{{{den}}}")
}

pub fn rational_plain(f: &RationalFunction) -> String {
    f.to_string()
}

/// Series in one variable; coefficients may still involve other variables.
pub fn series_doc(s: &Series, var: Var) -> SeriesDoc {
    let mut coefficients = BTreeMap::new();
    for (d, comp) in s.components() {
        if comp.is_zero() {
            continue;
        }
        let stripped = Poly::from_terms(comp.terms().map(|(m, c)| {
            (*m / Monomial::var_pow(var, m.exp(var)), c.clone())
        }));
        let text = match stripped.as_constant() {
            Some(c) => c.to_string(),
            None => stripped.to_string(),
        };
        coefficients.insert(d, text);
    }
    SeriesDoc { variable: var.name().to_string(), order: s.order(), coefficients }
}

pub fn series_json(s: &Series, var: Var) -> String {
    serde_json::to_string_pretty(&series_doc(s, var)).expect("serializable")
}

pub fn series_plain(s: &Series, var: Var) -> String {
    let doc = series_doc(s, var);
    let mut out: Vec<String> = doc
        .coefficients
        .iter()
        .map(|(d, c)| match d {
            0 => c.clone(),
            _ if c.contains(' ') => format!("({c})*{}^{d}", doc.variable),
            _ => format!("{c}*{}^{d}", doc.variable),
        })
        .collect();
    out.push(format!("O({}^{})", doc.variable, doc.order + 1));
    out.join(" + ")
}

pub fn series_latex(s: &Series, var: Var) -> String {
    let doc = series_doc(s, var);
    let mut out: Vec<String> = doc
        .coefficients
        .iter()
        .map(|(d, c)| match d {
            0 => c.clone(),
            1 => format!("{c}\\,{}", doc.variable),
            _ => format!("{c}\\,{}^{{{d}}}", doc.variable),
        })
        .collect();
    out.push(format!("O({}^{{{}}})", doc.variable, doc.order + 1));
    out.join(" + ")
}

/// Integer written in decimal, for JSON payloads.
pub fn int_string(n: &BigInt) -> String {
    n.to_string()
}
