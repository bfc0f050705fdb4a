//! Assembly of the local pro-isomorphic zeta functions of `D*_{x^2}` and
//! `D*_{x^3}`, their closed forms, and lattice-sum oracles.

use crate::arith::{Bindings, Grading, Monomial, Var};
use crate::cones::{self, weight_of, ConeSpec, Generator, LatticePoint};
use crate::count::{f_00, f_star_bivariate, require_prime};
use crate::error::{Error, Result};
use crate::theta::{self, require_odd_prime, CaseTag, ThetaArgs};
use crate::{mono, q, qf, Poly, Rational, RationalFunction, Series};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupTag {
    X2,
    X3,
}

impl GroupTag {
    pub fn name(self) -> &'static str {
        match self {
            GroupTag::X2 => "x2",
            GroupTag::X3 => "x3",
        }
    }
}

/// Where the weight `theta` comes from in lattice sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaMode {
    Formula,
    Oracle,
}

/// Per-coordinate weights `p^{a_i - b_i s}` of a cocharacter `e`, written as
/// monomials in `p` and `t = p^{-s}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightTable {
    pub group: GroupTag,
    pub weights: [Monomial; 3],
}

impl WeightTable {
    pub fn of(group: GroupTag) -> Self {
        let weights = match group {
            GroupTag::X2 => [mono!(P ^ 11, PS ^ 4), mono!(P ^ 12, PS ^ 5), mono!(P ^ 8, PS ^ 3)],
            GroupTag::X3 => [mono!(P ^ 14, PS ^ 5), mono!(P ^ 2, PS ^ 1), mono!(P ^ 26, PS ^ 9)],
        };
        WeightTable { group, weights }
    }

    pub fn t_degree(&self, e: &LatticePoint) -> i64 {
        (0..3).map(|i| self.weights[i].exp(Var::PS) as i64 * e[i]).sum()
    }

    /// Lattice points of the integrality region of t-degree at most `order`.
    pub fn region_up_to(&self, order: i64) -> Vec<LatticePoint> {
        let region = match self.group {
            GroupTag::X2 => orthant(false),
            GroupTag::X3 => cones::c123(),
        };
        region
            .members_up_to(order)
            .into_iter()
            .filter(|e| self.t_degree(e) <= order)
            .collect()
    }
}

fn t_grading() -> Grading {
    Grading::by_var(Var::PS)
}

/// Grading of the `X` variables by their t-degree.
pub fn x_grading() -> Grading {
    Grading::from_pairs(&[(Var::X1, 5), (Var::X2, 1), (Var::X3, 9)])
}

fn poly(terms: &[(i64, Monomial)]) -> Poly {
    Poly::from_int_terms(terms)
}

fn rf(num: Poly, factors: &[(Monomial, u32)]) -> RationalFunction {
    RationalFunction::new(num, factors).expect("non-constant factors")
}

/// The positive orthant; `e_1 > 0` when `strict_first`.
fn orthant(strict_first: bool) -> ConeSpec {
    use cones::{Inequality, Relation};
    ConeSpec {
        name: if strict_first { "orthant+" } else { "orthant" },
        generators: vec![
            Generator { v: [1, 0, 0], open: strict_first },
            Generator { v: [0, 1, 0], open: false },
            Generator { v: [0, 0, 1], open: false },
        ],
        inequalities: vec![
            Inequality { form: [1, 0, 0], rel: if strict_first { Relation::Gt } else { Relation::Ge } },
            Inequality { form: [0, 1, 0], rel: Relation::Ge },
            Inequality { form: [0, 0, 1], rel: Relation::Ge },
        ],
    }
}

/// `(1 + p^{10} t^4) / ((1 - p^8 t^3)(1 - p^{11} t^4)(1 - p^{12} t^5))`.
pub fn zeta_x2_closed() -> RationalFunction {
    rf(
        poly(&[(1, mono!()), (1, mono!(P ^ 10, PS ^ 4))]),
        &[(mono!(P ^ 8, PS ^ 3), 1), (mono!(P ^ 11, PS ^ 4), 1), (mono!(P ^ 12, PS ^ 5), 1)],
    )
}

/// Sum over the two Weyl group elements of the orthant generating functions,
/// the second with `e_1 > 0` and weight `p^{-1}`.
pub fn zeta_x2_assembled() -> RationalFunction {
    let w = WeightTable::of(GroupTag::X2).weights;
    let identity = cones::cone_gf(&orthant(false), &w).expect("orthant is simple");
    let longest = cones::cone_gf(&orthant(true), &w).expect("orthant is simple");
    identity.add(&longest.mul_monomial(mono!(P ^ -1)))
}

/// The pieces of the `x^3` assembly, all in the variables `p, X1, X2, X3`.
#[derive(Debug, Clone)]
pub struct X3Pieces {
    pub z134: RationalFunction,
    pub z145: RationalFunction,
    pub z456: RationalFunction,
    pub z462: RationalFunction,
    pub z34: RationalFunction,
    pub z42: RationalFunction,
    pub z123: RationalFunction,
    pub z23: RationalFunction,
    pub total: RationalFunction,
}

/// `p`-exponent of `theta~` as a linear form in `e`, per case.
fn case_p_form(case: CaseTag) -> [i64; 3] {
    match case {
        CaseTag::Case1 => [1, -3, 3],
        CaseTag::Case2a => [1, 1, -1],
        CaseTag::Case2b => [4, -5, 5],
        CaseTag::Case3 => [-1, 0, 0],
    }
}

/// `p^{<form, v>} X^v`
fn case_weight(case: CaseTag, v: &LatticePoint) -> Monomial {
    let form = case_p_form(case);
    let pe: i64 = (0..3).map(|i| form[i] * v[i]).sum();
    mono!(P ^ pe as i32) * weight_of(v, &[mono!(X1 ^ 1), mono!(X2 ^ 1), mono!(X3 ^ 1)])
}

/// Generating function of the generators of `cone` not absorbed into an
/// F-series, each weighted by the case's theta exponent.
fn geometric_part(cone: &ConeSpec, case: CaseTag, free: &[LatticePoint]) -> RationalFunction {
    let sub = ConeSpec {
        name: cone.name,
        generators: cone.generators.iter().filter(|g| free.contains(&g.v)).copied().collect(),
        inequalities: Vec::new(),
    };
    let weights: Vec<Monomial> = sub.generators.iter().map(|g| case_weight(case, &g.v)).collect();
    cones::cone_gf(&sub, &weights).expect("sub-cone of a simple cone is simple")
}

fn x2x3() -> Monomial {
    mono!(X2 ^ 1, X3 ^ 1)
}

/// `sum_r (p X1)^r F_{r,0}(X2 X3)`: the first summand of `F_{r,0}` is
/// independent of `r`, the second is geometric with ratio `p^3 X1 T`.
pub fn sum_a0() -> RationalFunction {
    let one_minus_pt = poly(&[(1, mono!()), (-1, mono!(P ^ 1, T ^ 1))]);
    let first = rf(one_minus_pt.clone(), &[(mono!(P ^ 2, T ^ 1), 2), (mono!(P ^ 1, X1 ^ 1), 1)]);
    let second_num =
        (&poly(&[(1, mono!()), (-1, mono!(P ^ 1))]) * &one_minus_pt).mul_monomial(mono!(P ^ 1, T ^ 1));
    let second = rf(
        second_num,
        &[(mono!(P ^ 2, T ^ 1), 2), (mono!(P ^ 3, T ^ 2), 1), (mono!(P ^ 3, X1 ^ 1, T ^ 1), 1)],
    );
    let t_to_x = Bindings::new().bind(Var::T, x2x3());
    first.add(&second).substitute(&t_to_x).expect("no factor collapses")
}

/// `sum_r (p^{-1} X1 X2)^r F*_{0,r}(X2 X3)`.
pub fn sum_star() -> RationalFunction {
    let b = Bindings::new().bind(Var::Y, mono!(P ^ -1, X1 ^ 1, X2 ^ 1)).bind(Var::T, x2x3());
    f_star_bivariate().substitute(&b).expect("no factor collapses")
}

fn f00_x() -> RationalFunction {
    f_00().substitute(&Bindings::new().bind(Var::T, x2x3())).expect("no factor collapses")
}

/// Assemble `Z = (1 + p^{-1}) Z_123 - p^{-1} Z_23` cone by cone.
pub fn zeta_x3_pieces() -> X3Pieces {
    use cones::{V2, V3, V5};
    let s_a = sum_a0();
    let s_f = sum_star();
    let f00 = f00_x();
    let z134 = geometric_part(&cones::c134(), CaseTag::Case1, &[V3]).mul(&s_a);
    let z145 = geometric_part(&cones::c145(), CaseTag::Case2a, &[V5]).mul(&s_a);
    let z456 = geometric_part(&cones::c456(), CaseTag::Case2b, &[V5]).mul(&s_f.sub(&f00));
    let z462 = geometric_part(&cones::c462(), CaseTag::Case3, &[V2]).mul(&s_f);
    let z34 = geometric_part(&cones::c34(), CaseTag::Case1, &[V3]).mul(&f00);
    let z42 = geometric_part(&cones::c42(), CaseTag::Case3, &[V2]).mul(&f00);
    let z123 = RationalFunction::sum([&z134, &z145, &z456, &z462]);
    let z23 = z34.add(&z42);
    let total = z123.add(&z123.mul_monomial(mono!(P ^ -1))).sub(&z23.mul_monomial(mono!(P ^ -1)));
    X3Pieces { z134, z145, z456, z462, z34, z42, z123, z23, total }
}

pub fn zeta_x3_assemble() -> RationalFunction {
    zeta_x3_pieces().total
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum X3Form {
    /// In `p, X1, X2, X3`.
    XVars,
    /// In `p, t = p^{-s}`.
    SVars,
}

/// Closed form for `x^3`.
pub fn zeta_x3_closed(form: X3Form) -> RationalFunction {
    match form {
        X3Form::XVars => {
            let bracket = poly(&[
                (-1, mono!(P ^ 4, X1 ^ 3, X2 ^ 3, X3 ^ 2)),
                (-1, mono!(P ^ 3, X1 ^ 3, X2 ^ 2, X3 ^ 1)),
                (-1, mono!(P ^ 4, X1 ^ 2, X2 ^ 3, X3 ^ 2)),
                (-1, mono!(P ^ 1, X1 ^ 2, X2 ^ 2, X3 ^ 1)),
                (1, mono!(P ^ 3, X1 ^ 1, X2 ^ 1, X3 ^ 1)),
                (1, mono!(X1 ^ 1)),
                (1, mono!(P ^ 1, X2 ^ 1, X3 ^ 1)),
                (1, mono!()),
            ]);
            let num = &poly(&[(1, mono!()), (-1, mono!(P ^ 1, X2 ^ 1, X3 ^ 1))]) * &bracket;
            rf(
                num,
                &[
                    (mono!(P ^ 1, X1 ^ 1), 1),
                    (mono!(P ^ 3, X3 ^ 1), 1),
                    (mono!(X2 ^ 2, X3 ^ 1), 1),
                    (mono!(P ^ 2, X2 ^ 1, X3 ^ 1), 1),
                    (mono!(P ^ 3, X1 ^ 2, X2 ^ 2, X3 ^ 1), 1),
                ],
            )
        }
        X3Form::SVars => {
            let bracket = poly(&[
                (-1, mono!(P ^ 104, PS ^ 36)),
                (-1, mono!(P ^ 90, PS ^ 31)),
                (-1, mono!(P ^ 75, PS ^ 26)),
                (-1, mono!(P ^ 59, PS ^ 21)),
                (1, mono!(P ^ 45, PS ^ 15)),
                (1, mono!(P ^ 29, PS ^ 10)),
                (1, mono!(P ^ 14, PS ^ 5)),
                (1, mono!()),
            ]);
            let num = &poly(&[(1, mono!()), (-1, mono!(P ^ 29, PS ^ 10))]) * &bracket;
            rf(
                num,
                &[
                    (mono!(P ^ 15, PS ^ 5), 1),
                    (mono!(P ^ 29, PS ^ 9), 1),
                    (mono!(P ^ 30, PS ^ 11), 1),
                    (mono!(P ^ 30, PS ^ 10), 1),
                    (mono!(P ^ 61, PS ^ 21), 1),
                ],
            )
        }
    }
}

/// The three-term expression obtained after inserting the point-count series, before
/// simplification to the closed form.
pub fn zeta_x3_unsimplified() -> RationalFunction {
    let one_plus_pinv = poly(&[(1, mono!()), (1, mono!(P ^ -1))]);
    let d1 = [
        (mono!(P ^ 3, X3 ^ 1), 1),
        (mono!(P ^ 3, X1 ^ 2, X2 ^ 2, X3 ^ 1), 1),
        (mono!(P ^ 2, X2 ^ 1, X3 ^ 1), 2),
    ];
    let n1 = &(&one_plus_pinv * &poly(&[(1, mono!()), (-1, mono!(P ^ 6, X1 ^ 2, X2 ^ 2, X3 ^ 2))]))
        * &poly(&[(1, mono!()), (-1, mono!(P ^ 1, X2 ^ 1, X3 ^ 1))]);
    let inner1 = RationalFunction::geometric(mono!(P ^ 1, X1 ^ 1)).unwrap().add(&rf(
        poly(&[(1, mono!(P ^ 1, X2 ^ 1, X3 ^ 1)), (-1, mono!(P ^ 2, X2 ^ 1, X3 ^ 1))]),
        &[(mono!(P ^ 3, X1 ^ 1, X2 ^ 1, X3 ^ 1), 1), (mono!(P ^ 3, X2 ^ 2, X3 ^ 2), 1)],
    ));
    let term1 = rf(n1, &d1).mul(&inner1);

    let d2 = [
        (mono!(X2 ^ 2, X3 ^ 1), 1),
        (mono!(P ^ 3, X1 ^ 2, X2 ^ 2, X3 ^ 1), 1),
        (mono!(P ^ 5, X2 ^ 2, X3 ^ 2), 1),
    ];
    let p_minus_one_sq = poly(&[(1, mono!(P ^ 2)), (-2, mono!(P ^ 1)), (1, mono!())]);
    let frac_num = (&p_minus_one_sq
        * &poly(&[
            (1, mono!()),
            (1, mono!(P ^ 1)),
            (1, mono!(X1 ^ 1, X2 ^ 1)),
            (1, mono!(P ^ 4, X1 ^ 1, X2 ^ 3, X3 ^ 2)),
        ]))
    .mul_monomial(mono!(P ^ 2, X2 ^ 2, X3 ^ 2));
    let inner2 = RationalFunction::from_poly(poly(&[
        (1, mono!()),
        (1, mono!(P ^ 2, X2 ^ 1, X3 ^ 1)),
        (1, mono!(P ^ 1, X1 ^ 1, X2 ^ 2, X3 ^ 1)),
        (1, mono!(P ^ 4, X1 ^ 1, X2 ^ 3, X3 ^ 2)),
    ]))
    .sub(&rf(frac_num, &[(mono!(P ^ 2, X2 ^ 1, X3 ^ 1), 1), (mono!(P ^ 3, X2 ^ 2, X3 ^ 2), 1)]));
    let term2 = rf(one_plus_pinv.clone(), &d2).mul(&inner2);

    let bracket3 = rf(one_plus_pinv, &[(mono!(P ^ 3, X1 ^ 2, X2 ^ 2, X3 ^ 1), 1)])
        .add(&rf(poly(&[(1, mono!(P ^ -1))]), &[(mono!(P ^ 3, X3 ^ 1), 1)]))
        .add(&rf(poly(&[(1, mono!(P ^ -1, X2 ^ 2, X3 ^ 1))]), &[(mono!(X2 ^ 2, X3 ^ 1), 1)]));
    let term3 = bracket3.mul(&f00_x());
    term1.add(&term2).sub(&term3)
}

/// `X1 = p^14 t^5`, `X2 = p^2 t`, `X3 = p^26 t^9`.
pub fn to_s_variables(f: &RationalFunction) -> Result<RationalFunction> {
    f.substitute(&Bindings::x_to_s())
}

/// The closed form for a group in the variables `p, t`.
pub fn closed_form(g: GroupTag) -> RationalFunction {
    match g {
        GroupTag::X2 => zeta_x2_closed(),
        GroupTag::X3 => zeta_x3_closed(X3Form::SVars),
    }
}

/// Functional equation `Z(p^{-1}, t^{-1}) = (-1)^a p^{b} t^{c} Z(p, t)` as `(a, b, c)`.
pub fn funeq_check(g: GroupTag) -> Result<(u8, i64, i64)> {
    let z = closed_form(g);
    let (negative, m) = z.funeq_detect(&[Var::P, Var::PS]).ok_or(Error::NoFunctionalEquation)?;
    if m.support().any(|(v, _)| v != Var::P && v != Var::PS) {
        return Err(Error::NoFunctionalEquation);
    }
    Ok((negative as u8, m.exp(Var::P) as i64, m.exp(Var::PS) as i64))
}

/// Functional equation of the `x^3` zeta function in the `X` variables.
pub fn funeq_x3_formal() -> Result<(bool, Monomial)> {
    zeta_x3_closed(X3Form::XVars)
        .funeq_detect(&[Var::P, Var::X1, Var::X2, Var::X3])
        .ok_or(Error::NoFunctionalEquation)
}

/// Expansion in `t` of the closed form at a numeric prime.
pub fn closed_series(g: GroupTag, p: u64, order: i64) -> Result<Series> {
    require_prime(p)?;
    let z = closed_form(g).evaluate_var(Var::P, &q(p as i64))?;
    z.expand(t_grading(), order)
}

/// The Bruhat sum `sum_w p^{-lambda(w)} sum_e p^{e_1} |det|^s theta(e)` over
/// lattice points of t-degree at most `order`, computed point by point.
pub fn series_oracle(g: GroupTag, p: u64, order: i64, mode: ThetaMode) -> Result<Series> {
    require_prime(p)?;
    if g == GroupTag::X3 {
        require_odd_prime(p)?;
    }
    let table = WeightTable::of(g);
    let mut out = Series::zero(t_grading(), order);
    for e in table.region_up_to(order) {
        let weight = match g {
            GroupTag::X2 => theta::theta_x2(p, e[0] + 2 * e[2], e[1] - e[2]),
            GroupTag::X3 => {
                let a = ThetaArgs::from_e(p, e)?;
                match mode {
                    ThetaMode::Formula => theta::theta_full(&a)?,
                    ThetaMode::Oracle => {
                        theta::p_pow(p, 4 * a.k + 3 * a.m + a.n) * theta::theta_tilde_oracle(&a)? * theta::theta3(&a)
                    }
                }
            }
        };
        let weyl = if e[0] > 0 { q(1) + qf(1, p as i64) } else { q(1) };
        let coefficient = theta::p_pow(p, e[0]) * weight * weyl;
        out.add_term(mono!(PS ^ table.t_degree(&e) as i32), coefficient);
    }
    Ok(out)
}

/// Every coefficient of a numeric series in `t` must be a non-negative
/// integer; returns the coefficients indexed by t-degree.
pub fn counting_coefficients(s: &Series) -> Result<Vec<(i64, Rational)>> {
    let mut out = Vec::new();
    for (d, comp) in s.components() {
        for (m, c) in comp.terms() {
            if m.support().any(|(v, _)| v != Var::PS) || !c.is_integer() || *c < q(0) {
                return Err(Error::InvalidArgs(format!("coefficient {c} of {m} is not a count")));
            }
            out.push((d, c.clone()));
        }
    }
    Ok(out)
}
