use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Field;

/// Companion matrix of `x^m - a_1 x^{m-1} - ... - a_m`: ones on the
/// superdiagonal, last row `(a_m, ..., a_1)`.
pub fn companion<F: Field>(coeffs: &[F]) -> Matrix<F> {
    let m = coeffs.len();
    let mut k = Matrix::zeros(m, m);
    for i in 0..m.saturating_sub(1) {
        k[(i, i + 1)] = F::one();
    }
    for j in 0..m {
        k[(m - 1, j)] = k[(m - 1, j)].clone() + coeffs[m - 1 - j].clone();
    }
    k
}

/// The longest Weyl element: the antidiagonal permutation matrix.
pub fn reversal<F: Field>(m: usize) -> Matrix<F> {
    Matrix::from_fn(m, m, |i, j| if i + j + 1 == m { F::one() } else { F::zero() })
}

/// `P = V U`, so that coordinates transform as `v_C = v_S P`.
pub fn basis_change<F: Field>(m: usize) -> Matrix<F> {
    let swap = Matrix::from_int_rows(&[&[0, 1], &[1, 0]]);
    let v = Matrix::block_diagonal(&[Matrix::identity(m), reversal(m), swap]);
    let n = 2 * m + 2;
    let u = Matrix::from_fn(n, n, |i, j| {
        let target = if i < m {
            2 * i
        } else if i < 2 * m {
            2 * (i - m) + 1
        } else {
            i
        };
        if j == target {
            F::one()
        } else {
            F::zero()
        }
    });
    &v * &u
}

/// An endomorphism written in basis S, re-expressed in basis C.
pub fn to_basis_c<F: Field>(g: &Matrix<F>) -> Matrix<F> {
    let m = (g.rows() - 2) / 2;
    g.conjugate_by(&basis_change(m)).expect("permutation is invertible")
}

/// The blocks of `xi = [[A, B, *], [C, D, *], [0, 0, Y]]` in basis S, where
/// `x xi = x A + y B`, `y xi = x C + y D` and `Y` acts on `(e, f)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockData<F> {
    pub a: Matrix<F>,
    pub b: Matrix<F>,
    pub c: Matrix<F>,
    pub d: Matrix<F>,
    pub y: Matrix<F>,
}

impl<F: Field> BlockData<F> {
    pub fn zero(m: usize) -> Self {
        BlockData {
            a: Matrix::zeros(m, m),
            b: Matrix::zeros(m, m),
            c: Matrix::zeros(m, m),
            d: Matrix::zeros(m, m),
            y: Matrix::zeros(2, 2),
        }
    }

    /// A diagonal-type lift `diag(A, D, Y)` with `D` forced by the derivation
    /// conditions: `D^t = aI + cK - A`.
    pub fn lift(k: &Matrix<F>, a: Matrix<F>, y: Matrix<F>) -> Self {
        let m = k.rows();
        let dt = &(&Matrix::identity(m).scale(&y[(0, 0)]) + &k.scale(&y[(1, 0)])) - &a;
        BlockData {
            a,
            b: Matrix::zeros(m, m),
            c: Matrix::zeros(m, m),
            d: dt.transpose(),
            y,
        }
    }
}

/// The block matrix in basis S, with zero maps into the centre.
pub fn assemble_s<F: Field>(blocks: &BlockData<F>) -> Matrix<F> {
    let m = blocks.a.rows();
    let mut g = Matrix::zeros(2 * m + 2, 2 * m + 2);
    g.set_block(0, 0, &blocks.a);
    g.set_block(0, m, &blocks.b);
    g.set_block(m, 0, &blocks.c);
    g.set_block(m, m, &blocks.d);
    g.set_block(2 * m, 2 * m, &blocks.y);
    g
}

/// Block form of the derivation conditions, with `Y = [[a, b], [c, d]]`:
/// `B = B^t`, `C = C^t`, `KB = BK^t`, `CK = K^tC`, `D^t = aI + cK - A` and
/// `KA - AK = cK^2 + (a-d)K - bI`.
pub fn g_condition_check<F: Field>(k: &Matrix<F>, blocks: &BlockData<F>) -> bool {
    let m = k.rows();
    let BlockData { a, b, c, d, y } = blocks;
    if [a, b, c, d].iter().any(|x| x.rows() != m || x.cols() != m) || y.rows() != 2 || y.cols() != 2 {
        return false;
    }
    let (ya, yb, yc, yd) = (&y[(0, 0)], &y[(0, 1)], &y[(1, 0)], &y[(1, 1)]);
    let id = Matrix::identity(m);
    let kt = k.transpose();
    let d_ok = d.transpose() == &(&id.scale(ya) + &k.scale(yc)) - a;
    let rhs = &(&(k * k).scale(yc) + &k.scale(&(ya.clone() - yd.clone()))) - &id.scale(yb);
    let a_ok = &(k * a) - &(a * k) == rhs;
    *b == b.transpose() && *c == c.transpose() && k * b == b * &kt && c * k == &kt * c && d_ok && a_ok
}

/// The lift `xi_i` (i = 1, 2, 3) of the standard basis of `gl_2` acting on
/// the centre, for the polynomial `x^m`, in basis C.
pub fn make_xi<F: Field>(m: usize, i: usize) -> Result<Matrix<F>> {
    if m == 0 {
        return Err(Error::InvalidArgs("m must be positive".into()));
    }
    let k = companion(&vec![F::zero(); m]);
    let half = F::one() / F::from_int(2);
    let blocks = match i {
        1 => BlockData::lift(&k, Matrix::identity(m).scale(&half), Matrix::identity(2)),
        2 => {
            let a = (1..=m as i64)
                .map(|j| F::from_int(4 * j - 1 - 2 * m as i64) * half.clone())
                .collect::<Vec<_>>();
            BlockData::lift(&k, Matrix::diagonal(&a), Matrix::from_int_rows(&[&[1, 0], &[0, -1]]))
        }
        3 => {
            let mut a = Matrix::zeros(m, m);
            for j in 1..m {
                a[(j - 1, j)] = F::from_int(2 * j as i64 + 1 - m as i64) * half.clone();
            }
            // f xi = e
            BlockData::lift(&k, a, Matrix::from_int_rows(&[&[0, 0], &[1, 0]]))
        }
        _ => return Err(Error::InvalidArgs(format!("no lift xi_{i}"))),
    };
    Ok(to_basis_c(&assemble_s(&blocks)))
}

/// Element of the reductive part in basis C:
/// `diag(mu^{m-1} A, ..., mu A, A, mu^m det A, mu^{m-1} det A)`.
pub fn h_element<F: Field>(m: usize, a: &Matrix<F>, mu: &F) -> Result<Matrix<F>> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(Error::DimensionMismatch("A must be 2x2".into()));
    }
    if m == 0 {
        return Err(Error::InvalidArgs("m must be positive".into()));
    }
    let det = a.det()?;
    let mut blocks: Vec<Matrix<F>> = (0..m).rev().map(|j| a.scale(&F::powi(mu, j as i64))).collect();
    blocks.push(Matrix::diagonal(&[
        det.clone() * F::powi(mu, m as i64),
        det * F::powi(mu, m as i64 - 1),
    ]));
    Ok(Matrix::block_diagonal(&blocks))
}

/// Element of the unipotent radical in basis C for `m = 2` (one block `X`)
/// or `m = 3` (blocks `X_1, X_2`); `stars` is the `2m x 2` map into the centre.
pub fn n_element<F: Field>(m: usize, xs: &[Matrix<F>], lambda: &F, stars: Option<&Matrix<F>>) -> Result<Matrix<F>> {
    if xs.len() + 1 != m || !(2..=3).contains(&m) {
        return Err(Error::InvalidArgs(format!("n_element needs m in {{2,3}} and m-1 blocks, got m={m}")));
    }
    for (index, x) in xs.iter().enumerate() {
        if x.rows() != 2 || x.cols() != 2 {
            return Err(Error::DimensionMismatch("X blocks must be 2x2".into()));
        }
        let trace = x.trace();
        if !trace.is_zero() {
            return Err(Error::NonTraceless { index: index + 1, trace: trace.to_string() });
        }
    }
    let n = 2 * m + 2;
    let id = Matrix::<F>::identity(2);
    let half = F::one() / F::from_int(2);
    let mut g = Matrix::identity(n);
    if m == 2 {
        g.set_block(0, 2, &(&xs[0] + &id.scale(&(lambda.clone() * half))));
    } else {
        let (x1, x2) = (&xs[0], &xs[1]);
        let corner = &(&x1.scale(lambda) + &(x1 * x1)).scale(&half) + x2;
        g.set_block(0, 2, x1);
        g.set_block(0, 4, &corner);
        g.set_block(2, 4, &(x1 + &id.scale(lambda)));
    }
    g[(2 * m, 2 * m + 1)] = lambda.clone();
    if let Some(s) = stars {
        if s.rows() != 2 * m || s.cols() != 2 {
            return Err(Error::DimensionMismatch("stars must be 2m x 2".into()));
        }
        g.set_block(0, 2 * m, s);
    }
    Ok(g)
}
