use std::collections::BTreeSet;

use dstar_zeta::arith::{Grading, Monomial, Var};
use dstar_zeta::cones::{
    builtin_cones, c123, c134, c145, c23, c34, c42, c456, c462, c_sigma, case_cones, case_of, cone_gf,
    fundamental_domain_points, verify_partition, weight_of, V1, V2, V3, V4, V5, V6,
};
use dstar_zeta::theta::{case_of_e, classify, CaseTag, ThetaArgs};
use dstar_zeta::{mono, q, Error, Poly, RationalFunction, Series};

fn x_bases() -> [Monomial; 3] {
    [mono!(X1 ^ 1), mono!(X2 ^ 1), mono!(X3 ^ 1)]
}

#[test]
fn membership_examples() {
    let m = c23().members_up_to(2);
    for e in [[0, 0, 0], [0, 1, 1], [0, 2, 1], [0, 0, 1]] {
        assert!(m.contains(&e));
    }
    assert!(!m.contains(&[0, 1, 0]));
    for c in builtin_cones() {
        if !c.generators.iter().any(|g| g.open) {
            assert!(c.contains(&[0, 0, 0]), "{}", c.name);
        }
    }
    assert!(!c462().contains(&[1, 0, 0]));
}

#[test]
fn fundamental_domains() {
    assert_eq!(fundamental_domain_points(&[V1, V3, V4]).unwrap(), BTreeSet::from([[0, 0, 0]]));
    assert_eq!(fundamental_domain_points(&[V1, V4, V5]).unwrap(), BTreeSet::from([[0, 0, 0]]));
    assert_eq!(fundamental_domain_points(&[V4, V5, V6]).unwrap(), BTreeSet::from([[0, 0, 0]]));
    assert_eq!(fundamental_domain_points(&[V4, V6, V2]).unwrap(), BTreeSet::from([[0, 0, 0]]));
    assert_eq!(
        fundamental_domain_points(&[V1, V2, V3]).unwrap(),
        BTreeSet::from([[0, 0, 0], [0, 1, 1]])
    );
    assert_eq!(fundamental_domain_points(&[V3, V4]).unwrap(), BTreeSet::from([[0, 0, 0]]));
    assert_eq!(fundamental_domain_points(&[V4, V2]).unwrap(), BTreeSet::from([[0, 0, 0]]));
    assert!(matches!(fundamental_domain_points(&[V1, V1, V3]), Err(Error::DegenerateGenerators)));
}

#[test]
fn simplicity() {
    for (_, c) in case_cones() {
        assert!(c.is_simple().unwrap(), "{}", c.name);
    }
    assert!(c34().is_simple().unwrap());
    assert!(c42().is_simple().unwrap());
    assert!(!c123().is_simple().unwrap());
    assert!(!c23().is_simple().unwrap());
}

#[test]
fn generators_and_inequalities_agree() {
    for c in builtin_cones() {
        assert_eq!(c.members_from_generators(12).unwrap(), c.members_up_to(12), "{}", c.name);
    }
}

#[test]
fn partitions() {
    let parts: Vec<_> = case_cones().into_iter().map(|(_, c)| c).collect();
    assert!(verify_partition(&parts, &c123(), 12));
    assert!(verify_partition(&[c34(), c42()], &c23(), 12));
    assert!(verify_partition(&[c_sigma(), c23()], &c123(), 12));
    // dropping a strict bound breaks disjointness
    let mut closed145 = c145();
    closed145.inequalities[0].rel = dstar_zeta::cones::Relation::Ge;
    assert!(!verify_partition(&[c134(), closed145, c456(), c462()], &c123(), 12));
}

#[test]
fn case_of_examples() {
    assert_eq!(case_of(&[0, 0, 0]).unwrap(), CaseTag::Case1);
    assert_eq!(case_of(&[0, 1, 1]).unwrap(), CaseTag::Case1);
    assert_eq!(case_of(&V6).unwrap(), CaseTag::Case2b);
    assert!(matches!(case_of(&[0, 3, 1]), Err(Error::OutsideIntegralCone(_))));
}

#[test]
fn case_of_agrees_with_theta_classification() {
    for e in c123().members_up_to(8) {
        let a = ThetaArgs::from_e(3, e).unwrap();
        assert_eq!(case_of(&e).unwrap(), classify(&a), "{e:?}");
        assert_eq!(case_of(&e).unwrap(), case_of_e(e));
    }
}

#[test]
fn cone_gf_examples() {
    let w = mono!(X1 ^ 1);
    let single = dstar_zeta::cones::ConeSpec {
        name: "ray",
        generators: vec![dstar_zeta::cones::Generator { v: V1, open: false }],
        inequalities: vec![],
    };
    assert!(cone_gf(&single, &[w]).unwrap().rational_eq(&RationalFunction::geometric(w).unwrap()));

    let c = c42();
    let weights: Vec<Monomial> = c.vectors().iter().map(|v| weight_of(v, &x_bases())).collect();
    assert_eq!(weights, vec![mono!(X2 ^ 1, X3 ^ 1), mono!(X2 ^ 2, X3 ^ 1)]);
    let want = RationalFunction::new(
        Poly::monomial(mono!(X2 ^ 2, X3 ^ 1)),
        &[(mono!(X2 ^ 1, X3 ^ 1), 1), (mono!(X2 ^ 2, X3 ^ 1), 1)],
    )
    .unwrap();
    assert!(cone_gf(&c, &weights).unwrap().rational_eq(&want));

    let c = c123();
    let weights: Vec<Monomial> = c.vectors().iter().map(|v| weight_of(v, &x_bases())).collect();
    assert!(matches!(cone_gf(&c, &weights), Err(Error::NotSimple(2))));
}

#[test]
fn cone_gf_matches_enumeration() {
    // the x^3 weights p^{e1} X^e, graded by the t-degree 5 e1 + e2 + 9 e3
    let grading = Grading::from_pairs(&[(Var::X1, 5), (Var::X2, 1), (Var::X3, 9)]);
    let bases = [mono!(P ^ 1, X1 ^ 1), mono!(X2 ^ 1), mono!(X3 ^ 1)];
    let order = 10;
    for c in builtin_cones().into_iter().filter(|c| c.is_simple().unwrap()) {
        let weights: Vec<Monomial> = c.vectors().iter().map(|v| weight_of(v, &bases)).collect();
        let gf = cone_gf(&c, &weights).unwrap().expand(grading, order).unwrap();
        let direct = Series::from_terms(
            grading,
            order,
            c.members_up_to(order).iter().map(|e| (weight_of(e, &bases), q(1))),
        );
        assert_eq!(gf, direct, "{}", c.name);
    }
}
