use dstar_zeta::lie::{
    assemble_s, basis_change, companion, g_condition_check, h_element, make_xi, n_element, reversal,
    Basis, BlockData, CompanionData,
};
use dstar_zeta::{q, qf, Error, LieLattice, QMatrix, Rational};
use proptest::prelude::*;

fn lattice(m: usize, basis: Basis) -> LieLattice {
    LieLattice::build_dstar(&CompanionData::monomial(m), basis)
}

fn vec_of(l: &LieLattice, pairs: &[(&str, i64)]) -> Vec<Rational> {
    let mut v = vec![q(0); l.dim()];
    for (name, c) in pairs {
        let i = l.labels().iter().position(|x| x == name).unwrap();
        v[i] = q(*c);
    }
    v
}

fn bracket_of(l: &LieLattice, a: &str, b: &str) -> Vec<Rational> {
    let i = l.labels().iter().position(|x| x == a).unwrap();
    let j = l.labels().iter().position(|x| x == b).unwrap();
    l.basis_bracket(i, j).to_vec()
}

#[test]
fn smallest_lattice() {
    let l = lattice(1, Basis::S);
    assert_eq!(l.labels(), ["x1", "y1", "e", "f"]);
    assert_eq!(bracket_of(&l, "x1", "y1"), vec_of(&l, &[("e", 1)]));
    assert_eq!(bracket_of(&l, "y1", "x1"), vec_of(&l, &[("e", -1)]));
    assert_eq!(bracket_of(&l, "x1", "e"), vec_of(&l, &[]));
}

#[test]
fn x_squared_brackets() {
    let l = lattice(2, Basis::S);
    assert_eq!(bracket_of(&l, "x1", "y1"), vec_of(&l, &[("e", 1)]));
    assert_eq!(bracket_of(&l, "x1", "y2"), vec_of(&l, &[("f", 1)]));
    assert_eq!(bracket_of(&l, "x2", "y2"), vec_of(&l, &[("e", 1)]));
    assert_eq!(bracket_of(&l, "x2", "y1"), vec_of(&l, &[]));
    assert_eq!(bracket_of(&l, "x1", "x2"), vec_of(&l, &[]));
}

#[test]
fn basis_c_ordering_and_brackets() {
    let l = lattice(3, Basis::C);
    assert_eq!(l.labels(), ["x1", "y3", "x2", "y2", "x3", "y1", "f", "e"]);
    let s = lattice(3, Basis::S);
    for a in s.labels() {
        for b in s.labels() {
            let from_s: Vec<(String, Rational)> = s
                .labels()
                .iter()
                .cloned()
                .zip(bracket_of(&s, a, b))
                .filter(|(_, c)| *c != q(0))
                .collect();
            let mut from_c: Vec<(String, Rational)> = l
                .labels()
                .iter()
                .cloned()
                .zip(bracket_of(&l, a, b))
                .filter(|(_, c)| *c != q(0))
                .collect();
            let mut from_s = from_s;
            from_s.sort();
            from_c.sort();
            assert_eq!(from_s, from_c, "[{a},{b}]");
        }
    }
}

#[test]
fn companion_with_coefficients() {
    let k = companion(&[q(1), q(2), q(3)]);
    assert_eq!(k, QMatrix::from_int_rows(&[&[0, 1, 0], &[0, 0, 1], &[3, 2, 1]]));
}

#[test]
fn reversal_conjugates_companion_to_transpose() {
    for m in 1..=4 {
        let k = companion(&vec![q(0); m]);
        let w = reversal::<Rational>(m);
        assert_eq!(w, w.transpose());
        assert_eq!(&(&w * &k) * &w.inverse().unwrap(), k.transpose());
    }
}

#[test]
fn derivation_examples() {
    for m in 1..=3 {
        let l = lattice(m, Basis::C);
        assert!(l.is_derivation(&QMatrix::zeros(2 * m + 2, 2 * m + 2)));
        let mut xi1 = vec![qf(1, 2); 2 * m];
        xi1.extend([q(1), q(1)]);
        assert_eq!(make_xi::<Rational>(m, 1).unwrap(), QMatrix::diagonal(&xi1));
        assert!(l.is_derivation(&QMatrix::diagonal(&xi1)));
    }
    for basis in [Basis::S, Basis::C] {
        let l = lattice(2, basis);
        assert!(!l.is_derivation(&QMatrix::unit(6, 6, 0, 1)));
    }
}

#[test]
fn lifts_are_derivations_and_close_under_brackets() {
    for m in 1..=4 {
        let l = lattice(m, Basis::C);
        let xis: Vec<QMatrix> = (1..=3).map(|i| make_xi(m, i).unwrap()).collect();
        for (i, a) in xis.iter().enumerate() {
            assert!(l.is_derivation(a), "xi_{} for m={m}", i + 1);
            for b in &xis {
                assert!(l.is_derivation(&(&(a * b) - &(b * a))));
            }
        }
    }
}

#[test]
fn lift_displays_in_basis_c() {
    for m in 1..=4usize {
        let mut diag = Vec::new();
        for i in 1..=m as i64 {
            let a = qf(-1 - 2 * m as i64 + 4 * i, 2);
            diag.extend([a.clone(), a]);
        }
        diag.extend([q(-1), q(1)]);
        assert_eq!(make_xi::<Rational>(m, 2).unwrap(), QMatrix::diagonal(&diag), "xi_2, m={m}");

        let n = 2 * m + 2;
        let mut xi3 = QMatrix::zeros(n, n);
        for i in 1..m {
            let c = qf(2 * i as i64 + 1 - m as i64, 2);
            xi3.set_block(2 * (i - 1), 2 * i, &QMatrix::identity(2).scale(&c));
        }
        xi3[(n - 2, n - 1)] = q(1);
        assert_eq!(make_xi::<Rational>(m, 3).unwrap(), xi3, "xi_3, m={m}");
    }
    let xi3 = make_xi::<Rational>(3, 3).unwrap();
    assert_eq!(xi3.block(0, 2, 2, 2), QMatrix::zeros(2, 2));
    assert_eq!(xi3.block(2, 4, 2, 2), QMatrix::identity(2));
    assert_eq!(xi3[(6, 7)], q(1));
    assert!(make_xi::<Rational>(2, 4).is_err());
}

#[test]
fn derivation_algebra_dimension() {
    for (m, dim) in [(1, 10), (2, 17), (3, 24), (4, 31)] {
        assert_eq!(lattice(m, Basis::S).aut_lie_dimension(), dim, "m={m}");
        assert_eq!(lattice(m, Basis::C).aut_lie_dimension(), dim, "m={m}");
        assert_eq!(dim, 7 * m + 3);
    }
}

#[test]
fn automorphism_examples() {
    for m in 1..=3 {
        let l = lattice(m, Basis::C);
        assert!(l.is_automorphism(&QMatrix::identity(2 * m + 2)).unwrap());
    }
    let l2 = lattice(2, Basis::C);
    assert_eq!(h_element(2, &QMatrix::identity(2), &q(1)).unwrap(), QMatrix::identity(6));
    assert!(l2.is_automorphism(&h_element(2, &QMatrix::identity(2), &q(3)).unwrap()).unwrap());
    let n = n_element(2, &[QMatrix::zeros(2, 2)], &q(1), None).unwrap();
    assert!(l2.is_automorphism(&n).unwrap());
    assert!(matches!(l2.is_automorphism(&QMatrix::zeros(6, 6)), Err(Error::SingularMatrix)));
    // an invertible map that is not an automorphism
    assert!(!l2.is_automorphism(&QMatrix::diagonal(&[q(2), q(1), q(1), q(1), q(1), q(1)])).unwrap());
}

#[test]
fn unipotent_corner_block() {
    let x1 = QMatrix::from_int_rows(&[&[1, 2], &[3, -1]]);
    let x2 = QMatrix::from_int_rows(&[&[0, 1], &[1, 0]]);
    let lambda = q(5);
    let g = n_element(3, &[x1.clone(), x2.clone()], &lambda, None).unwrap();
    let expect = &x2 + &(&x1.scale(&lambda) + &(&x1 * &x1)).scale(&qf(1, 2));
    assert_eq!(g.block(0, 4, 2, 2), expect);
    assert_eq!(g.block(2, 4, 2, 2), &x1 + &QMatrix::identity(2).scale(&lambda));
    assert!(lattice(3, Basis::C).is_automorphism(&g).unwrap());
    let bad = QMatrix::from_int_rows(&[&[1, 0], &[0, 0]]);
    assert!(matches!(
        n_element(3, &[x1, bad], &lambda, None),
        Err(Error::NonTraceless { index: 2, .. })
    ));
}

#[test]
fn g_conditions_examples() {
    let k = companion(&[q(0), q(0)]);
    assert!(g_condition_check(&k, &BlockData::zero(2)));
    // the xi_2 lift for m = 2
    let blocks = BlockData::lift(
        &k,
        QMatrix::diagonal(&[qf(-1, 2), qf(3, 2)]),
        QMatrix::from_int_rows(&[&[1, 0], &[0, -1]]),
    );
    assert!(g_condition_check(&k, &blocks));
    // with diag(-1/2, 1/2) the eigenvalue gap matches only half of Y
    let half = BlockData::lift(
        &k,
        QMatrix::diagonal(&[qf(-1, 2), qf(1, 2)]),
        QMatrix::diagonal(&[qf(1, 2), qf(-1, 2)]),
    );
    assert!(g_condition_check(&k, &half));
    let wrong = BlockData::lift(
        &k,
        QMatrix::diagonal(&[qf(-1, 2), qf(1, 2)]),
        QMatrix::from_int_rows(&[&[1, 0], &[0, -1]]),
    );
    assert!(!g_condition_check(&k, &wrong));
    let mut asym = BlockData::zero(2);
    asym.b = QMatrix::unit(2, 2, 0, 1);
    assert!(!g_condition_check(&k, &asym));
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| qf(n, d))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = QMatrix> {
    proptest::collection::vec(small_rational(), rows * cols).prop_map(move |v| {
        QMatrix::from_fn(rows, cols, |i, j| v[i * cols + j].clone())
    })
}

fn traceless() -> impl Strategy<Value = QMatrix> {
    (small_rational(), small_rational(), small_rational()).prop_map(|(a, b, c)| {
        QMatrix::from_rows(vec![vec![a.clone(), b], vec![c, -a]])
    })
}

/// A derivation in basis C with zero maps into the centre.
fn derivation_c(m: usize) -> impl Strategy<Value = QMatrix> {
    (proptest::collection::vec(traceless(), m), proptest::collection::vec(small_rational(), 3)).prop_map(
        move |(xs, nus)| {
            let n = 2 * m + 2;
            let mut g = QMatrix::zeros(n, n);
            for i in 0..m {
                for j in i..m {
                    g.set_block(2 * i, 2 * j, &xs[j - i]);
                }
            }
            for (i, nu) in nus.iter().enumerate() {
                g = &g + &make_xi::<Rational>(m, i + 1).unwrap().scale(nu);
            }
            g
        },
    )
}

fn blocks_of_s(g: &QMatrix, m: usize) -> BlockData<Rational> {
    BlockData {
        a: g.block(0, 0, m, m),
        b: g.block(0, m, m, m),
        c: g.block(m, 0, m, m),
        d: g.block(m, m, m, m),
        y: g.block(2 * m, 2 * m, 2, 2),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn reductive_elements_are_automorphisms(m in 2usize..=3, a in matrix(2, 2), mu in small_rational()) {
        prop_assume!(mu != q(0) && a.det().unwrap() != q(0));
        let g = h_element(m, &a, &mu).unwrap();
        prop_assert!(lattice(m, Basis::C).is_automorphism(&g).unwrap());
    }

    #[test]
    fn unipotent_elements_are_automorphisms(
        m in 2usize..=3,
        xs in proptest::collection::vec(traceless(), 2),
        lambda in small_rational(),
        stars in matrix(6, 2),
    ) {
        let stars = stars.block(0, 0, 2 * m, 2);
        let g = n_element(m, &xs[..m - 1], &lambda, Some(&stars)).unwrap();
        prop_assert!(lattice(m, Basis::C).is_automorphism(&g).unwrap());
    }

    #[test]
    fn blockwise_conditions_agree_with_derivation_identity(
        (m, g_c, perturb, row, col) in (1usize..=3).prop_flat_map(|m| {
            (Just(m), derivation_c(m), prop_oneof![Just(q(0)), small_rational()], 0..2 * m + 2, 0..2 * m + 2)
        })
    ) {
        let p = basis_change::<Rational>(m);
        let mut g = &(&p * &g_c) * &p.inverse().unwrap();
        // keep the perturbation inside the x/y block or the centre block
        let centre = |i: usize| i >= 2 * m;
        if centre(row) == centre(col) {
            g[(row, col)] = g[(row, col)].clone() + perturb;
        }
        let blocks = blocks_of_s(&g, m);
        let k = companion(&vec![q(0); m]);
        prop_assert_eq!(assemble_s(&blocks), g.clone());
        prop_assert_eq!(
            g_condition_check(&k, &blocks),
            lattice(m, Basis::S).is_derivation(&g)
        );
    }
}

#[test]
fn symmetric_blocks_must_also_intertwine_k() {
    // B = E_22 is symmetric but KB != BK^t; the four classical conditions
    // alone would accept it
    let k = companion(&[q(0), q(0)]);
    let mut blocks = BlockData::zero(2);
    blocks.b = QMatrix::unit(2, 2, 1, 1);
    assert!(!lattice(2, Basis::S).is_derivation(&assemble_s(&blocks)));
    assert!(!g_condition_check(&k, &blocks));
    blocks.b = QMatrix::unit(2, 2, 0, 0);
    assert!(lattice(2, Basis::S).is_derivation(&assemble_s(&blocks)));
    assert!(g_condition_check(&k, &blocks));
}
