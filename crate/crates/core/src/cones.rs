//! Rational polyhedral cones in the cocharacter lattice `Z^3` and the
//! generating functions of their lattice points.

use std::collections::BTreeSet;

use crate::arith::Monomial;
use crate::error::{Error, Result};
use crate::theta::CaseTag;
use crate::{q, QMatrix, Rational, RationalFunction};

pub type LatticePoint = [i64; 3];

pub const V1: LatticePoint = [1, 0, 0];
pub const V2: LatticePoint = [0, 2, 1];
pub const V3: LatticePoint = [0, 0, 1];
pub const V4: LatticePoint = [0, 1, 1];
pub const V5: LatticePoint = [2, 2, 1];
pub const V6: LatticePoint = [1, 2, 1];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Generator {
    pub v: LatticePoint,
    /// An open generator contributes with a strictly positive coefficient.
    pub open: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Ge,
    Gt,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inequality {
    pub form: [i64; 3],
    pub rel: Relation,
}

impl Inequality {
    pub fn holds(&self, e: &LatticePoint) -> bool {
        let x: i64 = self.form.iter().zip(e).map(|(a, b)| a * b).sum();
        match self.rel {
            Relation::Ge => x >= 0,
            Relation::Gt => x > 0,
            Relation::Eq => x == 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeSpec {
    pub name: &'static str,
    pub generators: Vec<Generator>,
    pub inequalities: Vec<Inequality>,
}

fn closed(v: LatticePoint) -> Generator {
    Generator { v, open: false }
}

fn open(v: LatticePoint) -> Generator {
    Generator { v, open: true }
}

fn ge(form: [i64; 3]) -> Inequality {
    Inequality { form, rel: Relation::Ge }
}

fn gt(form: [i64; 3]) -> Inequality {
    Inequality { form, rel: Relation::Gt }
}

fn eq(form: [i64; 3]) -> Inequality {
    Inequality { form, rel: Relation::Eq }
}

impl ConeSpec {
    pub fn contains(&self, e: &LatticePoint) -> bool {
        self.inequalities.iter().all(|i| i.holds(e))
    }

    /// Lattice points with all coordinates in `0..=bound`, from the inequalities.
    pub fn members_up_to(&self, bound: i64) -> BTreeSet<LatticePoint> {
        let mut out = BTreeSet::new();
        for a in 0..=bound {
            for b in 0..=bound {
                for c in 0..=bound {
                    let e = [a, b, c];
                    if self.contains(&e) {
                        out.insert(e);
                    }
                }
            }
        }
        out
    }

    /// Lattice points with coordinates in `0..=bound`, generated as the
    /// flag-aware parallelepiped plus non-negative combinations of generators.
    pub fn members_from_generators(&self, bound: i64) -> Result<BTreeSet<LatticePoint>> {
        if self.generators.iter().any(|g| g.v.iter().any(|&x| x < 0) || g.v == [0, 0, 0]) {
            return Err(Error::DegenerateGenerators);
        }
        let base = parallelepiped_points(&self.generators, true)?;
        let mut out = BTreeSet::new();
        let mut stack: Vec<LatticePoint> = base.into_iter().collect();
        let mut seen: BTreeSet<LatticePoint> = stack.iter().copied().collect();
        while let Some(x) = stack.pop() {
            if x.iter().any(|&c| c > bound) {
                continue;
            }
            out.insert(x);
            for g in &self.generators {
                let y = [x[0] + g.v[0], x[1] + g.v[1], x[2] + g.v[2]];
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        Ok(out)
    }

    pub fn vectors(&self) -> Vec<LatticePoint> {
        self.generators.iter().map(|g| g.v).collect()
    }

    pub fn is_simple(&self) -> Result<bool> {
        Ok(fundamental_domain_points(&self.vectors())? == BTreeSet::from([[0, 0, 0]]))
    }
}

/// Coefficients `lambda` with `x = sum lambda_i v_i`, if `x` is in the span.
fn coordinates(gens: &[LatticePoint], x: &LatticePoint) -> Result<Option<Vec<Rational>>> {
    let k = gens.len();
    // pick k coordinate axes on which the generators are independent
    let axes_options: Vec<Vec<usize>> = match k {
        1 => vec![vec![0], vec![1], vec![2]],
        2 => vec![vec![0, 1], vec![0, 2], vec![1, 2]],
        3 => vec![vec![0, 1, 2]],
        _ => return Err(Error::DegenerateGenerators),
    };
    for axes in axes_options {
        let g = QMatrix::from_fn(k, k, |i, j| q(gens[i][axes[j]]));
        let Ok(inv) = g.inverse() else { continue };
        let target: Vec<Rational> = axes.iter().map(|&a| q(x[a])).collect();
        // lambda G = x on the chosen axes
        let lambda = inv.apply_row(&target);
        let back: Vec<Rational> = (0..3)
            .map(|c| {
                lambda
                    .iter()
                    .zip(gens)
                    .fold(q(0), |acc, (l, v)| acc + l.clone() * q(v[c]))
            })
            .collect();
        let hit = back.iter().zip(x).all(|(b, &xc)| *b == q(xc));
        return Ok(hit.then_some(lambda));
    }
    Err(Error::DegenerateGenerators)
}

/// Lattice points of the parallelepiped spanned by `gens`, each coefficient in
/// `[0, 1)`, or in `(0, 1]` for open generators when `flags` is set.
fn parallelepiped_points(gens: &[Generator], flags: bool) -> Result<BTreeSet<LatticePoint>> {
    let vecs: Vec<LatticePoint> = gens.iter().map(|g| g.v).collect();
    let mut lo = [0i64; 3];
    let mut hi = [0i64; 3];
    for v in &vecs {
        for c in 0..3 {
            lo[c] += v[c].min(0);
            hi[c] += v[c].max(0);
        }
    }
    let mut out = BTreeSet::new();
    for a in lo[0]..=hi[0] {
        for b in lo[1]..=hi[1] {
            for c in lo[2]..=hi[2] {
                let x = [a, b, c];
                let Some(lambda) = coordinates(&vecs, &x)? else { continue };
                let inside = lambda.iter().zip(gens).all(|(l, g)| {
                    if flags && g.open {
                        *l > q(0) && *l <= q(1)
                    } else {
                        *l >= q(0) && *l < q(1)
                    }
                });
                if inside {
                    out.insert(x);
                }
            }
        }
    }
    Ok(out)
}

/// Lattice points of `[0,1) v_1 + ... + [0,1) v_k`.
pub fn fundamental_domain_points(gens: &[LatticePoint]) -> Result<BTreeSet<LatticePoint>> {
    if gens.is_empty() || gens.len() > 3 {
        return Err(Error::DegenerateGenerators);
    }
    let rank = QMatrix::from_fn(gens.len(), 3, |i, j| q(gens[i][j])).rank();
    if rank < gens.len() {
        return Err(Error::DegenerateGenerators);
    }
    parallelepiped_points(&gens.iter().map(|&v| closed(v)).collect::<Vec<_>>(), false)
}

/// True iff the lattice points of `whole` (up to `bound`) are the disjoint
/// union of those of `parts`.
pub fn verify_partition(parts: &[ConeSpec], whole: &ConeSpec, bound: i64) -> bool {
    let target = whole.members_up_to(bound);
    let mut union = BTreeSet::new();
    for part in parts {
        for e in part.members_up_to(bound) {
            if !union.insert(e) {
                return false;
            }
        }
    }
    union == target
}

/// `X^v` for per-coordinate monomials `X = (X_1, X_2, X_3)`.
pub fn weight_of(v: &LatticePoint, bases: &[Monomial; 3]) -> Monomial {
    (0..3).fold(Monomial::ONE, |acc, i| acc * bases[i].pow(v[i] as i32))
}

/// Generating function `sum_{e in cone} w(e)` for a simple cone, where the
/// weight is multiplicative with `weights[i]` the weight of generator `i`:
/// `prod 1/(1 - w_i)` over closed and `prod w_i/(1 - w_i)` over open generators.
pub fn cone_gf(cone: &ConeSpec, weights: &[Monomial]) -> Result<RationalFunction> {
    if weights.len() != cone.generators.len() {
        return Err(Error::DimensionMismatch("one weight per generator".into()));
    }
    if !cone.is_simple()? {
        return Err(Error::NotSimple(fundamental_domain_points(&cone.vectors())?.len()));
    }
    let mut out = RationalFunction::one();
    for (g, w) in cone.generators.iter().zip(weights) {
        out = out.div_one_minus(*w, 1)?;
        if g.open {
            out = out.mul_monomial(*w);
        }
    }
    Ok(out)
}

/// Integrality region `e_i >= 0`, `2 e_3 >= e_2`, spanned by `v1, v2, v3`.
pub fn c123() -> ConeSpec {
    ConeSpec {
        name: "C123",
        generators: vec![closed(V1), closed(V2), closed(V3)],
        inequalities: vec![ge([1, 0, 0]), ge([0, 1, 0]), ge([0, -1, 2])],
    }
}

/// Case 1: `e_3 >= e_2`.
pub fn c134() -> ConeSpec {
    ConeSpec {
        name: "C134",
        generators: vec![closed(V1), closed(V3), closed(V4)],
        inequalities: vec![ge([1, 0, 0]), ge([0, 1, 0]), ge([0, -1, 1])],
    }
}

/// Case 2a: `e_2 > e_3`, `e_1 + 2e_3 - 2e_2 >= 0`.
pub fn c145() -> ConeSpec {
    ConeSpec {
        name: "C145+",
        generators: vec![closed(V1), closed(V4), open(V5)],
        inequalities: vec![gt([0, 1, -1]), ge([0, -1, 2]), ge([1, -2, 2])],
    }
}

/// Case 2b: `e_1 + 2e_3 - 2e_2 < 0`, `e_2 <= e_1 + e_3`.
pub fn c456() -> ConeSpec {
    ConeSpec {
        name: "C456+",
        generators: vec![closed(V4), closed(V5), open(V6)],
        inequalities: vec![gt([-1, 2, -2]), ge([1, -1, 1]), ge([0, -1, 2])],
    }
}

/// Case 3: `e_2 > e_1 + e_3`.
pub fn c462() -> ConeSpec {
    ConeSpec {
        name: "C462+",
        generators: vec![closed(V4), closed(V6), open(V2)],
        inequalities: vec![gt([-1, 1, -1]), ge([1, 0, 0]), ge([0, -1, 2])],
    }
}

/// The face `e_1 = 0` of the integrality region.
pub fn c23() -> ConeSpec {
    ConeSpec {
        name: "C23",
        generators: vec![closed(V2), closed(V3)],
        inequalities: vec![eq([1, 0, 0]), ge([0, 1, 0]), ge([0, -1, 2])],
    }
}

pub fn c34() -> ConeSpec {
    ConeSpec {
        name: "C34",
        generators: vec![closed(V3), closed(V4)],
        inequalities: vec![eq([1, 0, 0]), ge([0, 1, 0]), ge([0, -1, 1])],
    }
}

pub fn c42() -> ConeSpec {
    ConeSpec {
        name: "C42+",
        generators: vec![closed(V4), open(V2)],
        inequalities: vec![eq([1, 0, 0]), gt([0, 1, -1]), ge([0, -1, 2])],
    }
}

/// The integrality region with `e_1 > 0`.
pub fn c_sigma() -> ConeSpec {
    ConeSpec {
        name: "Csigma",
        generators: vec![open(V1), closed(V2), closed(V3)],
        inequalities: vec![gt([1, 0, 0]), ge([0, 1, 0]), ge([0, -1, 2])],
    }
}

/// The four case cones, in the order Case 1, 2a, 2b, 3.
pub fn case_cones() -> [(CaseTag, ConeSpec); 4] {
    [
        (CaseTag::Case1, c134()),
        (CaseTag::Case2a, c145()),
        (CaseTag::Case2b, c456()),
        (CaseTag::Case3, c462()),
    ]
}

pub fn builtin_cones() -> Vec<ConeSpec> {
    vec![c123(), c134(), c145(), c456(), c462(), c23(), c34(), c42(), c_sigma()]
}

/// Which case cone `e` lies in.
pub fn case_of(e: &LatticePoint) -> Result<CaseTag> {
    if !c123().contains(e) {
        return Err(Error::OutsideIntegralCone(*e));
    }
    case_cones()
        .into_iter()
        .find(|(_, c)| c.contains(e))
        .map(|(t, _)| t)
        .ok_or(Error::OutsideIntegralCone(*e))
}
