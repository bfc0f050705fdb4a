//! Self-checks: closed forms against assemblies, oracles against formulas.
//!
//! Every sweep is parameterised so the same code runs at the default bounds,
//! at the `deep` bounds and from the acceptance tests.

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{Bindings, Grading, Var};
use crate::cones::{self, fundamental_domain_points, verify_partition, LatticePoint, V1, V2, V3, V4, V5, V6};
use crate::count::{f_brute_with_limit, f_fast, f_series, recurrence_check, t_coefficient, CountQuery, FKind, Recurrence};
use crate::error::Result;
use crate::format;
use crate::lie::{h_element, make_xi, n_element, Basis, CompanionData};
use crate::theta::{self, classify, CaseTag, ThetaArgs};
use crate::zeta::{self, GroupTag, ThetaMode, X3Form};
use crate::{mono, q, qf, LieLattice, QMatrix, Rational, RationalFunction};

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }

    fn from_result(name: impl Into<String>, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((passed, detail)) => Check::new(name, passed, detail),
            Err(e) => Check::new(name, false, format!("error: {e}")),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            write!(f, "[{tag}] {}", self.name)
        } else {
            write!(f, "[{tag}] {}: {}", self.name, self.detail)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Arith,
    Lie,
    Count,
    Theta,
    Cones,
    Zeta,
    Funeq,
    All,
}

impl std::str::FromStr for Suite {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "arith" => Suite::Arith,
            "lie" => Suite::Lie,
            "count" => Suite::Count,
            "theta" => Suite::Theta,
            "cones" => Suite::Cones,
            "zeta" => Suite::Zeta,
            "funeq" => Suite::Funeq,
            "all" => Suite::All,
            _ => return Err(crate::Error::InvalidArgs(format!("unknown suite {s}"))),
        })
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

pub fn run_suite(suite: Suite, deep: bool) -> Report {
    let mut checks = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Arith {
        checks.extend(arith_checks());
    }
    if all || suite == Suite::Lie {
        checks.extend(lie_structure(if deep { 200 } else { 25 }, 7));
    }
    if all || suite == Suite::Count {
        let mut sweep = CountSweep::standard();
        if deep {
            sweep.ranges.push((7, 3));
        }
        checks.extend(counting_sweep(&sweep));
    }
    if all || suite == Suite::Theta {
        checks.push(theta_sweep(3, if deep { 6 } else { 4 }));
        checks.push(theta_sweep(5, if deep { 5 } else { 3 }));
        checks.push(twelve_condition_sweep());
    }
    if all || suite == Suite::Cones {
        checks.extend(cone_geometry(12));
    }
    if all || suite == Suite::Zeta {
        checks.push(x2_closed_form());
        checks.extend(x3_closed_form());
        let (oracle_order, formula_order) = if deep { (20, 40) } else { (10, 15) };
        checks.extend(series_end_to_end(3, oracle_order, formula_order));
        if deep {
            checks.extend(series_end_to_end(5, 10, 30));
        }
    }
    if all || suite == Suite::Funeq {
        checks.extend(functional_equations());
    }
    Report { checks }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64())
}

pub fn arith_checks() -> Vec<Check> {
    let mut out = Vec::new();
    let g = RationalFunction::geometric(mono!(P ^ 2, PS ^ 1)).unwrap();
    let s = g.expand(Grading::by_var(Var::PS), 5).unwrap();
    let ok = (0..=5).all(|d| s.component(d).coefficient(&mono!(P ^ (2 * d as i32), PS ^ d as i32)) == q(1));
    out.push(Check::new("geometric series expansion", ok, ""));

    let z = zeta::zeta_x3_closed(X3Form::XVars);
    let vars = [Var::P, Var::X1, Var::X2, Var::X3];
    out.push(Check::new("inversion is an involution", z.invert_vars(&vars).invert_vars(&vars).rational_eq(&z), ""));
    out.push(Check::new("reduce preserves value", z.reduce().rational_eq(&z), ""));
    let shifted = z.add(&RationalFunction::monomial(mono!(X1 ^ 1)));
    out.push(Check::new("rational_eq separates", !shifted.rational_eq(&z), ""));
    let inv = Bindings::new().bind(Var::X1, mono!(X1 ^ -1));
    let twice = z.substitute(&inv).and_then(|w| w.substitute(&inv));
    out.push(Check::new("substitution composes", twice.map(|w| w.rational_eq(&z)).unwrap_or(false), ""));

    let json = format::rational_json(&z);
    let round = format::rational_from_json(&json).map(|w| format::rational_json(&w) == json);
    out.push(Check::new("JSON round trip", round.unwrap_or(false), ""));
    out
}

/// Derivations, random automorphisms and the derivation-algebra dimension.
pub fn lie_structure(samples: usize, seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    let lattice = |m: usize| LieLattice::build_dstar(&CompanionData::monomial(m), Basis::C);

    let mut bad = Vec::new();
    for m in 1..=4 {
        let l = lattice(m);
        for i in 1..=3 {
            match make_xi::<Rational>(m, i) {
                Ok(xi) if l.is_derivation(&xi) => {}
                _ => bad.push(format!("xi_{i} m={m}")),
            }
        }
    }
    out.push(Check::new("xi_1, xi_2, xi_3 are derivations for m = 1..4", bad.is_empty(), bad.join(", ")));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let small = |rng: &mut ChaCha8Rng| qf(rng.gen_range(-5..=5), rng.gen_range(1..=4));
    let mut failures = Vec::new();
    let mut tried = 0;
    for m in 2..=3usize {
        let l = lattice(m);
        for _ in 0..samples {
            let a = random_matrix(&mut rng, 2, 2, small);
            let mu = small(&mut rng);
            if mu == q(0) || a.det().map(|d| d == q(0)).unwrap_or(true) {
                continue;
            }
            let traceless = |rng: &mut ChaCha8Rng| {
                let d = small(rng);
                QMatrix::from_rows(vec![vec![d.clone(), small(rng)], vec![small(rng), -d]])
            };
            let xs: Vec<QMatrix> = (0..m - 1).map(|_| traceless(&mut rng)).collect();
            let stars = random_matrix(&mut rng, 2 * m, 2, small);
            let lambda = small(&mut rng);
            tried += 1;
            let h = h_element(m, &a, &mu).and_then(|g| l.is_automorphism(&g));
            let n = n_element(m, &xs, &lambda, Some(&stars)).and_then(|g| l.is_automorphism(&g));
            if !matches!(h, Ok(true)) {
                failures.push(format!("H m={m}"));
            }
            if !matches!(n, Ok(true)) {
                failures.push(format!("N m={m}"));
            }
        }
    }
    out.push(Check::new(
        "random H and N elements are automorphisms for m = 2, 3",
        failures.is_empty() && tried > 0,
        format!("{tried} samples each{}", if failures.is_empty() { String::new() } else { format!("; failed: {}", failures.join(", ")) }),
    ));

    let dims: Vec<(usize, usize)> = (1..=4).map(|m| (m, lattice(m).aut_lie_dimension())).collect();
    let ok = dims.iter().all(|&(m, d)| d == 7 * m + 3);
    let detail = dims.iter().map(|(m, d)| format!("m={m}: {d}")).collect::<Vec<_>>().join(", ");
    out.push(Check::new("derivation algebra has dimension 7m+3", ok, detail));
    out
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, entry: impl Fn(&mut ChaCha8Rng) -> Rational) -> QMatrix {
    QMatrix::from_rows((0..rows).map(|_| (0..cols).map(|_| entry(rng)).collect()).collect())
}

/// Ranges for [`counting_sweep`]: `(p, n_max)` pairs, the bound on `alpha`
/// and `beta`, and the iteration budget for exhaustive counts.
#[derive(Debug, Clone)]
pub struct CountSweep {
    pub ranges: Vec<(u64, u32)>,
    pub ab_max: u32,
    pub brute_limit: u128,
}

impl CountSweep {
    pub fn standard() -> Self {
        CountSweep { ranges: vec![(3, 5), (5, 4)], ab_max: 4, brute_limit: 250_000_000 }
    }
}

/// Exhaustive and single-loop counts agree on the whole `(alpha, beta)` grid;
/// the generating-function coefficients agree on the axes; the recurrences hold.
pub fn counting_sweep(sweep: &CountSweep) -> Vec<Check> {
    let mut out = Vec::new();
    for &(p, n_max) in &sweep.ranges {
        let r = (|| -> Result<(bool, String)> {
            let mut compared = 0;
            for a in 0..=sweep.ab_max {
                for b in 0..=sweep.ab_max {
                    for n in 0..=n_max {
                        let qy = CountQuery::new(p, a, b, n)?;
                        if f_brute_with_limit(&qy, sweep.brute_limit)? != f_fast(&qy)? {
                            return Ok((false, format!("f({a},{b},{n})")));
                        }
                        compared += 1;
                    }
                }
            }
            Ok((true, format!("{compared} triples")))
        })();
        out.push(Check::from_result(format!("brute = fast, p={p}, n<={n_max}"), r));

        let r = (|| -> Result<(bool, String)> {
            for alpha in 0..=sweep.ab_max {
                let a0 = f_series(FKind::A0, alpha, n_max, Some(p))?;
                let za = f_series(FKind::ZeroA, alpha, n_max, Some(p))?;
                for n in 0..=n_max {
                    let want_a0 = Rational::from_integer(f_fast(&CountQuery::new(p, alpha, 0, n)?)?.into());
                    let want_za = Rational::from_integer(f_fast(&CountQuery::new(p, 0, alpha, n)?)?.into());
                    if t_coefficient(&a0, n) != want_a0 {
                        return Ok((false, format!("F_{{{alpha},0}} at T^{n}")));
                    }
                    if t_coefficient(&za, n) != want_za {
                        return Ok((false, format!("F_{{0,{alpha}}} at T^{n}")));
                    }
                }
            }
            Ok((true, String::new()))
        })();
        out.push(Check::from_result(format!("generating functions = counts, p={p}, n<={n_max}"), r));

        let m_max = n_max.saturating_sub(2);
        let l_max = sweep.ab_max.saturating_sub(2);
        for which in [Recurrence::Base, Recurrence::OddBase, Recurrence::LStep, Recurrence::EvenStep] {
            let r = recurrence_check(which, p, l_max, m_max).map(|ok| (ok, String::new()));
            out.push(Check::from_result(format!("recurrence {which:?}, p={p}, n<={n_max}"), r));
        }
    }
    out
}

/// Case formulas against the Haar-measure oracle for every valid triple with
/// `n <= n_max`; also reports which cases and boundaries were visited.
pub fn theta_sweep(p: u64, n_max: i64) -> Check {
    let r = (|| -> Result<(bool, String)> {
        let all = ThetaArgs::all_up_to(p, n_max)?;
        let mut seen = BTreeSet::new();
        for a in &all {
            seen.insert(classify(a));
            if theta::theta_tilde_formula(a)? != theta::theta_tilde_oracle(a)? {
                return Ok((false, format!("(k,m,n)=({},{},{}) in {}", a.k, a.m, a.n, classify(a).name())));
            }
        }
        let both_2ab = all.iter().any(|a| classify(a) == CaseTag::Case2a && 2 * a.k + a.l() == 0)
            && all.iter().any(|a| classify(a) == CaseTag::Case2b && 2 * a.k + a.l() == -1);
        let both_23 = all.iter().any(|a| a.k < 0 && a.k == -a.l())
            && all.iter().any(|a| classify(a) == CaseTag::Case3 && a.k == -a.l() - 1);
        let ok = seen.len() == 4 && both_2ab && both_23;
        Ok((ok, format!("{} triples, {} cases, both boundaries visited: {}", all.len(), seen.len(), both_2ab && both_23)))
    })();
    Check::from_result(format!("theta~ formula = oracle, p={p}, n<={n_max}"), r)
}

/// The twelve-condition measure equals `p^{4k+3m+n}` times the reduced one.
pub fn twelve_condition_sweep() -> Check {
    let r = (|| -> Result<(bool, String)> {
        let mut n = 0;
        for a in ThetaArgs::all_up_to(3, 1)? {
            let want = theta::p_pow(3, 4 * a.k + 3 * a.m + a.n) * theta::theta_tilde_oracle(&a)?;
            if theta::twelve_condition_oracle(&a, 0)? != want {
                return Ok((false, format!("(k,m,n)=({},{},{})", a.k, a.m, a.n)));
            }
            n += 1;
        }
        Ok((true, format!("{n} triples")))
    })();
    Check::from_result("twelve-condition oracle, p=3, exponents <= 1", r)
}

pub fn cone_geometry(bound: i64) -> Vec<Check> {
    let mut out = Vec::new();
    let parts: Vec<_> = cones::case_cones().into_iter().map(|(_, c)| c).collect();
    out.push(Check::new(
        format!("case cones partition C123 up to {bound}"),
        verify_partition(&parts, &cones::c123(), bound),
        "",
    ));
    let sigma = cones::c_sigma().members_up_to(bound);
    let c23 = cones::c23().members_up_to(bound);
    let diff: BTreeSet<LatticePoint> = cones::c123().members_up_to(bound).difference(&c23).copied().collect();
    out.push(Check::new("C_sigma = C123 minus C23", sigma == diff, ""));
    out.push(Check::new(
        "C23 = C34 + C42",
        verify_partition(&[cones::c34(), cones::c42()], &cones::c23(), bound),
        "",
    ));

    let zero = BTreeSet::from([[0, 0, 0]]);
    let expect: [(&str, [LatticePoint; 3], BTreeSet<LatticePoint>); 5] = [
        ("C134", [V1, V3, V4], zero.clone()),
        ("C145", [V1, V4, V5], zero.clone()),
        ("C456", [V4, V5, V6], zero.clone()),
        ("C462", [V4, V6, V2], zero.clone()),
        ("C123", [V1, V2, V3], BTreeSet::from([[0, 0, 0], [0, 1, 1]])),
    ];
    for (name, gens, want) in expect {
        let got = fundamental_domain_points(&gens);
        let ok = got.as_ref().map(|g| *g == want).unwrap_or(false);
        out.push(Check::new(format!("fundamental domain of {name}"), ok, format!("{got:?}")));
    }
    out
}

pub fn x2_closed_form() -> Check {
    let (ok, secs) = timed(|| zeta::zeta_x2_assembled().rational_eq(&zeta::zeta_x2_closed()));
    Check::new("x2: Weyl sum = closed form", ok, format!("{secs:.2}s"))
}

pub fn x3_closed_form() -> Vec<Check> {
    let (assembled, secs) = timed(zeta::zeta_x3_assemble);
    let x = zeta::zeta_x3_closed(X3Form::XVars);
    let mut out = vec![Check::new("x3: cone assembly = closed form in X", assembled.rational_eq(&x), format!("{secs:.2}s"))];
    let s = zeta::to_s_variables(&assembled).map(|a| a.rational_eq(&zeta::zeta_x3_closed(X3Form::SVars)));
    out.push(Check::new("x3: substituted assembly = closed form in s", s.unwrap_or(false), ""));
    out.push(Check::new(
        "x3: unsimplified three-term expression = closed form",
        zeta::zeta_x3_unsimplified().rational_eq(&x),
        "",
    ));
    out
}

/// Lattice-point Bruhat sums against the expansion of the closed form.
pub fn series_end_to_end(p: u64, oracle_order: i64, formula_order: i64) -> Vec<Check> {
    let mut out = Vec::new();
    for (mode, order) in [(ThetaMode::Oracle, oracle_order), (ThetaMode::Formula, formula_order)] {
        let r = (|| -> Result<(bool, String)> {
            let expected = zeta::closed_series(GroupTag::X3, p, order)?;
            let got = zeta::series_oracle(GroupTag::X3, p, order, mode)?;
            if let Some(d) = got.first_disagreement(&expected) {
                return Ok((false, format!("first disagreement at t^{d}")));
            }
            let coeffs = zeta::counting_coefficients(&expected)?;
            Ok((true, format!("{} non-zero coefficients, all non-negative integers", coeffs.len())))
        })();
        out.push(Check::from_result(format!("x3 series, theta {mode:?}, p={p}, through t^{order}"), r));
    }
    out
}

pub fn functional_equations() -> Vec<Check> {
    let mut out = Vec::new();
    let r = zeta::funeq_x3_formal()
        .map(|(neg, m)| (neg && m == mono!(P ^ 4, X2 ^ 1, X3 ^ 1), format!("{}{m}", if neg { "-" } else { "" })));
    out.push(Check::from_result("x3: symmetry factor in X is -p^4 X2 X3", r));
    for (g, want) in [(GroupTag::X3, (1, 32, 10)), (GroupTag::X2, (1, 21, 8))] {
        let r = zeta::funeq_check(g).map(|got| (got == want, format!("{got:?}")));
        out.push(Check::from_result(format!("{}: symmetry factor {want:?}", g.name()), r));
    }
    out
}
