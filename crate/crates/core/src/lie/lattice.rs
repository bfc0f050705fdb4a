use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Field;

use super::blocks::{basis_change, companion};

/// Coefficients of `x^m - a_1 x^{m-1} - ... - a_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompanionData<F> {
    pub coeffs: Vec<F>,
}

impl<F: Field> CompanionData<F> {
    pub fn new(coeffs: Vec<F>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgs("companion polynomial needs degree m >= 1".into()));
        }
        Ok(CompanionData { coeffs })
    }

    /// The polynomial `x^m`.
    pub fn monomial(m: usize) -> Self {
        assert!(m >= 1, "degree must be positive");
        CompanionData { coeffs: vec![F::zero(); m] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// `(x_1..x_m, y_1..y_m, e, f)`
    S,
    /// `(x_1, y_m, x_2, y_{m-1}, ..., x_m, y_1, f, e)`
    C,
}

/// A nilpotent Lie lattice of class two, given by structure constants:
/// `structure[i][j]` holds the coordinates of `[b_i, b_j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieLattice<F> {
    labels: Vec<String>,
    structure: Vec<Vec<Vec<F>>>,
}

impl<F: Field> LieLattice<F> {
    pub fn build_dstar(data: &CompanionData<F>, basis: Basis) -> Self {
        let m = data.degree();
        let n = 2 * m + 2;
        let k = companion(&data.coeffs);
        let (e, f) = (2 * m, 2 * m + 1);
        let mut structure = vec![vec![vec![F::zero(); n]; n]; n];
        for i in 0..m {
            for j in 0..m {
                let mut v = vec![F::zero(); n];
                if i == j {
                    v[e] = F::one();
                }
                v[f] = k[(i, j)].clone();
                structure[m + j][i] = v.iter().map(|x| -x.clone()).collect();
                structure[i][m + j] = v;
            }
        }
        let mut labels: Vec<String> = (1..=m)
            .map(|i| format!("x{i}"))
            .chain((1..=m).map(|i| format!("y{i}")))
            .chain(["e".to_string(), "f".to_string()])
            .collect();
        let s = LieLattice { labels: labels.clone(), structure };
        match basis {
            Basis::S => s,
            Basis::C => {
                // v_C = v_S P; the i-th vector of C is row i of P^t in S-coordinates
                let p = basis_change::<F>(m);
                let pt = p.transpose();
                let image: Vec<usize> = (0..n)
                    .map(|i| (0..n).find(|&j| !pt[(i, j)].is_zero()).expect("permutation"))
                    .collect();
                labels = image.iter().map(|&j| s.labels[j].clone()).collect();
                let mut structure = vec![vec![vec![F::zero(); n]; n]; n];
                for i in 0..n {
                    for j in 0..n {
                        let u = s.bracket(pt.row(i), pt.row(j));
                        structure[i][j] = p.apply_row(&u);
                    }
                }
                LieLattice { labels, structure }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &[F] {
        &self.structure[i][j]
    }

    pub fn bracket(&self, u: &[F], v: &[F]) -> Vec<F> {
        let n = self.dim();
        let mut out = vec![F::zero(); n];
        for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a.clone() * b.clone();
                for (o, c) in out.iter_mut().zip(&self.structure[i][j]) {
                    if !c.is_zero() {
                        *o = o.clone() + ab.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim()];
        v[i] = F::one();
        v
    }

    /// `[u,v]xi = [u xi, v] + [u, v xi]` on all basis pairs.
    pub fn is_derivation(&self, xi: &Matrix<F>) -> bool {
        let n = self.dim();
        assert!(xi.rows() == n && xi.cols() == n, "endomorphism of the wrong size");
        let images: Vec<Vec<F>> = (0..n).map(|i| xi.apply_row(&self.unit(i))).collect();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let lhs = xi.apply_row(&self.structure[i][j]);
                let a = self.bracket(&images[i], &self.unit(j));
                let b = self.bracket(&self.unit(i), &images[j]);
                lhs.iter().zip(a.iter().zip(&b)).all(|(l, (x, y))| *l == x.clone() + y.clone())
            })
        })
    }

    /// `[u g, v g] = [u, v] g` on all basis pairs.
    pub fn is_automorphism(&self, g: &Matrix<F>) -> Result<bool> {
        let n = self.dim();
        if g.rows() != n || g.cols() != n {
            return Err(Error::DimensionMismatch(format!("{}x{} on dimension {n}", g.rows(), g.cols())));
        }
        if g.det()?.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let images: Vec<Vec<F>> = (0..n).map(|i| g.apply_row(&self.unit(i))).collect();
        Ok((0..n).all(|i| {
            (i + 1..n).all(|j| self.bracket(&images[i], &images[j]) == g.apply_row(&self.structure[i][j]))
        }))
    }

    /// Dimension of the derivation algebra, as the nullity of the linear
    /// system the derivation identity imposes on the `n^2` matrix entries.
    pub fn aut_lie_dimension(&self) -> usize {
        let n = self.dim();
        let mut rows = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let mut row = vec![F::zero(); n * n];
                    for a in 0..n {
                        // [e_i xi, e_j] + [e_i, e_j xi] - [e_i, e_j] xi, coordinate k
                        let c = &self.structure[a][j][k];
                        if !c.is_zero() {
                            row[i * n + a] = row[i * n + a].clone() + c.clone();
                        }
                        let c = &self.structure[i][a][k];
                        if !c.is_zero() {
                            row[j * n + a] = row[j * n + a].clone() + c.clone();
                        }
                        let c = &self.structure[i][j][a];
                        if !c.is_zero() {
                            row[a * n + k] = row[a * n + k].clone() - c.clone();
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        if rows.is_empty() {
            return n * n;
        }
        Matrix::from_rows(rows).nullity()
    }
}
