use dstar_zeta::arith::{Grading, Var};
use dstar_zeta::count::{f_a0, f_00};
use dstar_zeta::zeta::*;
use dstar_zeta::{mono, q, RationalFunction, Series};

fn assert_same(a: &RationalFunction, b: &RationalFunction) {
    assert!(a.rational_eq(b), "rational functions differ");
}

#[test]
fn x2_assembly_matches_closed_form() {
    assert_same(&zeta_x2_assembled(), &zeta_x2_closed());
}

#[test]
fn x2_low_order_expansion() {
    let s = zeta_x2_closed().expand(Grading::by_var(Var::PS), 4).unwrap();
    let c3 = s.component(3);
    assert_eq!(c3.coefficient(&mono!(P ^ 8, PS ^ 3)), q(1));
    let c4 = s.component(4);
    assert_eq!(c4.coefficient(&mono!(P ^ 11, PS ^ 4)), q(1));
    assert_eq!(c4.coefficient(&mono!(P ^ 10, PS ^ 4)), q(1));
    assert!(s.component(1).is_zero() && s.component(2).is_zero());
}

#[test]
fn x3_assembly_matches_closed_x_form() {
    assert_same(&zeta_x3_assemble(), &zeta_x3_closed(X3Form::XVars));
}

#[test]
fn x3_closed_forms_agree_under_substitution() {
    let x = to_s_variables(&zeta_x3_closed(X3Form::XVars)).unwrap();
    assert_same(&x, &zeta_x3_closed(X3Form::SVars));
}

#[test]
fn x3_unsimplified_expression_matches() {
    assert_same(&zeta_x3_unsimplified(), &zeta_x3_closed(X3Form::XVars));
}

#[test]
fn x3_cone_sums_decompose() {
    let z = zeta_x3_pieces();
    assert_same(&z.z123, &RationalFunction::sum([&z.z134, &z.z145, &z.z456, &z.z462]));
    assert_same(&z.z23, &z.z34.add(&z.z42));
}

#[test]
fn sum_a0_expansion_matches_termwise() {
    // sum_r (p X1)^r F_{r,0}(X2 X3), truncated
    let order = 12;
    let g = x_grading();
    let lhs = sum_a0().expand(g.clone(), order).unwrap();
    let t_to_x = dstar_zeta::arith::Bindings::new().bind(Var::T, mono!(X2 ^ 1, X3 ^ 1));
    let mut rhs = Series::zero(g.clone(), order);
    for r in 0..=order / 5 {
        let f = if r == 0 { f_00() } else { f_a0(r as u32) };
        let term = f.substitute(&t_to_x).unwrap().mul_monomial(mono!(P ^ r as i32, X1 ^ r as i32));
        rhs = rhs.add(&term.expand(g.clone(), order).unwrap());
    }
    assert!(lhs.agrees_with(&rhs));
}

#[test]
fn funeq_x2() {
    assert_eq!(funeq_check(GroupTag::X2).unwrap(), (1, 21, 8));
}

#[test]
fn funeq_x3() {
    assert_eq!(funeq_check(GroupTag::X3).unwrap(), (1, 32, 10));
    let (neg, m) = funeq_x3_formal().unwrap();
    assert!(neg);
    assert_eq!(m, mono!(P ^ 4, X2 ^ 1, X3 ^ 1));
}

#[test]
fn series_oracle_x2_matches_closed() {
    for p in [2, 3, 5] {
        let a = series_oracle(GroupTag::X2, p, 20, ThetaMode::Formula).unwrap();
        let b = closed_series(GroupTag::X2, p, 20).unwrap();
        assert_eq!(a.first_disagreement(&b), None, "p = {p}");
    }
}

#[test]
fn series_oracle_x3_formula_matches_closed() {
    for p in [3, 5] {
        let a = series_oracle(GroupTag::X3, p, 15, ThetaMode::Formula).unwrap();
        let b = closed_series(GroupTag::X3, p, 15).unwrap();
        assert_eq!(a.first_disagreement(&b), None, "p = {p}");
        let coeffs = counting_coefficients(&b).unwrap();
        assert_eq!(coeffs[0], (0, q(1)));
    }
}

#[test]
fn series_oracle_x3_theta_oracle_low_order() {
    let a = series_oracle(GroupTag::X3, 3, 6, ThetaMode::Oracle).unwrap();
    let b = closed_series(GroupTag::X3, 3, 6).unwrap();
    assert_eq!(a.first_disagreement(&b), None);
}

#[test]
fn x3_requires_odd_prime_for_oracle() {
    assert!(series_oracle(GroupTag::X3, 2, 5, ThetaMode::Formula).is_err());
    assert!(closed_series(GroupTag::X3, 2, 5).is_ok());
}

#[test]
fn x2_series_first_terms_at_three() {
    let s = closed_series(GroupTag::X2, 3, 4).unwrap();
    let c = counting_coefficients(&s).unwrap();
    assert_eq!(c, vec![(0, q(1)), (3, q(6561)), (4, q(236196))]);
}
