use dstar_zeta::count::{
    f_0a, f_00, f_a0, f_brute, f_brute_with_limit, f_fast, f_valuation, f_series, f_star, f_star_bivariate, f_star_series,
    pair_count, recurrence_check, t_coefficient, CountQuery, FKind, Recurrence,
};
use dstar_zeta::arith::{Grading, Var};
use dstar_zeta::{mono, q, Error, Poly, Rational};
use num_bigint::BigUint;
use proptest::prelude::*;

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn query(p: u64, a: u32, b: u32, n: u32) -> CountQuery {
    CountQuery::new(p, a, b, n).unwrap()
}

fn pair_brute(p: u64, m: u32, c: u64) -> u64 {
    let modulus = p.pow(m);
    let mut count = 0;
    for y in 0..modulus {
        for z in 0..modulus {
            if (y * z + modulus - c % modulus) % modulus == 0 {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn pair_count_examples() {
    assert_eq!(pair_count(3, 0, &big(0)).unwrap(), big(1));
    assert_eq!(pair_count(3, 1, &big(0)).unwrap(), big(5));
    assert_eq!(pair_count(3, 1, &big(1)).unwrap(), big(2));
}

#[test]
fn pair_count_against_brute_force() {
    for p in [3u64, 5] {
        for m in 0..=3 {
            for c in 0..p.pow(m) {
                assert_eq!(pair_count(p, m, &big(c)).unwrap(), big(pair_brute(p, m, c)), "p={p} M={m} c={c}");
            }
        }
    }
}

#[test]
fn brute_examples() {
    for p in [2u64, 3, 5] {
        for (a, b) in [(0, 0), (3, 1), (2, 5)] {
            assert_eq!(f_brute(&query(p, a, b, 0)).unwrap(), big(1));
        }
        assert_eq!(f_brute(&query(p, 0, 0, 1)).unwrap(), big(p * p));
        assert_eq!(f_brute(&query(p, 1, 0, 1)).unwrap(), big(p * (2 * p - 1)));
        assert_eq!(f_fast(&query(p, 0, 1, 1)).unwrap(), big(p * p));
        assert_eq!(f_fast(&query(p, 0, 0, 2)).unwrap(), big(p.pow(4) + p.pow(3) - p * p));
    }
}

#[test]
fn guards() {
    assert!(matches!(f_brute(&query(3, 0, 0, 6)), Err(Error::TooLarge { .. })));
    assert!(f_brute_with_limit(&query(3, 0, 0, 2), 1000).is_ok());
    assert!(matches!(f_fast(&query(3, 0, 0, 17)), Err(Error::TooLarge { .. })));
    assert!(CountQuery::new(9, 0, 0, 1).is_err());
}

#[test]
fn fast_matches_brute() {
    for p in [3u64, 5] {
        for a in 0..=2 {
            for b in 0..=2 {
                for n in 0..=4 {
                    if p == 5 && n == 4 {
                        continue;
                    }
                    let qy = query(p, a, b, n);
                    assert_eq!(f_fast(&qy).unwrap(), f_brute(&qy).unwrap(), "{qy:?}");
                }
            }
        }
    }
}

#[test]
fn unconstrained_square_term() {
    // alpha >= n: f = p^n * pair_count(n, 0)
    for n in 0..=4 {
        for a in n..n + 2 {
            let f = f_fast(&query(3, a, 0, n)).unwrap();
            assert_eq!(f, big(3u64.pow(n)) * pair_count(3, n, &big(0)).unwrap());
            assert!(f >= big(3u64.pow(2 * n)) / big(1));
        }
    }
}

#[test]
fn generating_function_examples() {
    let s = f_series(FKind::ZeroA, 0, 1, None).unwrap();
    assert_eq!(s.to_polynomial(), Poly::from_int_terms(&[(1, mono!()), (1, mono!(P ^ 2, T ^ 1))]));
    let s = f_series(FKind::A0, 1, 1, None).unwrap();
    assert_eq!(
        s.to_polynomial(),
        Poly::from_int_terms(&[(1, mono!()), (2, mono!(P ^ 2, T ^ 1)), (-1, mono!(P ^ 1, T ^ 1))])
    );
    // T^2 coefficient of F_{0,1} is p^4 + p^3 - ... ; compare numerically
    for p in [3u64, 5] {
        let s = f_series(FKind::ZeroA, 1, 2, Some(p)).unwrap();
        assert_eq!(t_coefficient(&s, 2), Rational::from_integer(f_brute(&query(p, 0, 1, 2)).unwrap().into()));
    }
}

#[test]
fn even_formula_at_zero_is_f00() {
    assert!(f_0a(0).rational_eq(&f_00()));
    assert!(f_star(0).rational_eq(&f_00()));
}

#[test]
fn generating_series_match_counts() {
    for p in [3u64, 5] {
        for alpha in 0..=4 {
            let a0 = f_series(FKind::A0, alpha, 4, Some(p)).unwrap();
            let za = f_series(FKind::ZeroA, alpha, 4, Some(p)).unwrap();
            for n in 0..=4 {
                let want_a0 = f_fast(&query(p, alpha, 0, n)).unwrap();
                let want_za = f_fast(&query(p, 0, alpha, n)).unwrap();
                assert_eq!(t_coefficient(&a0, n), Rational::from_integer(want_a0.into()), "F_{alpha},0 p={p} n={n}");
                assert_eq!(t_coefficient(&za, n), Rational::from_integer(want_za.into()), "F_0,{alpha} p={p} n={n}");
            }
        }
    }
}

#[test]
fn star_series_drop_low_terms() {
    for p in [3u64, 5] {
        for alpha in 0..=4 {
            let s = f_star_series(alpha, 6, Some(p)).unwrap();
            for n in 0..=6 {
                let want = if n < alpha {
                    q(0)
                } else {
                    Rational::from_integer(f_fast(&query(p, 0, alpha, n)).unwrap().into())
                };
                assert_eq!(t_coefficient(&s, n), want, "F*_0,{alpha} p={p} n={n}");
            }
        }
    }
    let s = f_star_series(1, 2, None).unwrap();
    assert_eq!(s.component(1), Poly::monomial(mono!(P ^ 2, T ^ 1)));
    let s = f_star_series(2, 2, None).unwrap();
    assert!(s.component(0).is_zero() && s.component(1).is_zero());
    assert_eq!(s.component(2), Poly::monomial(mono!(P ^ 5, T ^ 2)));
}

#[test]
fn bivariate_star_sum() {
    // coefficient of Y^alpha is F*_{0,alpha}; the grading separates Y-degrees
    // as long as the T-degree stays below 100
    let grading = Grading::from_pairs(&[(Var::Y, 100), (Var::T, 1)]);
    let order = 100 * 4 + 8;
    let s = f_star_bivariate().expand(grading, order).unwrap();
    for alpha in 0..=4 {
        let star = f_star(alpha).expand(Grading::by_var(Var::T), 8).unwrap();
        for n in 0..=8 {
            let got = Poly::from_terms(
                s.component(100 * alpha as i64 + n)
                    .terms()
                    .filter(|(m, _)| m.exp(Var::Y) == alpha as i32)
                    .map(|(m, c)| (*m, c.clone())),
            );
            let want = star.component(n).mul_monomial(mono!(Y ^ alpha as i32));
            assert_eq!(got, want, "alpha={alpha} n={n}");
        }
    }
}

#[test]
fn recurrences() {
    assert!(recurrence_check(Recurrence::Base, 3, 0, 4).unwrap());
    assert!(recurrence_check(Recurrence::LStep, 3, 2, 3).unwrap());
    assert!(recurrence_check(Recurrence::EvenStep, 5, 1, 2).unwrap());
    assert!(recurrence_check(Recurrence::OddBase, 3, 0, 4).unwrap());
    assert!(recurrence_check(Recurrence::OddBase, 5, 0, 2).unwrap());
}

#[test]
fn closed_forms_have_integer_coefficients() {
    for f in [f_a0(2), f_0a(3), f_0a(4), f_00()] {
        let s = f.expand(Grading::by_var(Var::T), 6).unwrap();
        for (_, comp) in s.components() {
            for (_, c) in comp.terms() {
                assert!(c.is_integer());
            }
        }
    }
}

proptest! {
    #[test]
    fn pair_count_depends_on_valuation_only(m in 1u32..=4, u in 1u64..200, v in 1u64..200, k in 0u32..4) {
        let p = 3u64;
        prop_assume!(u % p != 0 && v % p != 0);
        let c1 = big(u * p.pow(k));
        let c2 = big(v * p.pow(k));
        prop_assert_eq!(pair_count(p, m, &c1).unwrap(), pair_count(p, m, &c2).unwrap());
    }
}

#[test]
fn valuation_grouping_matches_single_loop() {
    for p in [2u64, 3, 5] {
        for a in 0..=5 {
            for b in 0..=5 {
                for n in 0..=6 {
                    if p.pow(n) > 20_000 {
                        continue;
                    }
                    let qy = query(p, a, b, n);
                    assert_eq!(f_valuation(&qy).unwrap(), f_fast(&qy).unwrap(), "{qy:?}");
                }
            }
        }
    }
}
