//! The self-check report: every tabulated number re-derived from the
//! engines and compared exactly.
//!
//! Checks are grouped by topic; each group carries the number of the
//! acceptance criterion it covers (0 for catalog bookkeeping).

use std::fmt::{self, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::{self, gauss_map_class, gysin_betti_solver, tau_gauss_degree, Catalog, SphereBundleDescriptor};
use crate::charring::{ManifoldModel, ScaledClass};
use crate::duality::{self, integral_dual_basis, lattice_index, poincare_dual, smith_normal_form, CycleClass, GramMatrix, IntMatrix};
use crate::error::Result;
use crate::exact::{int, rat, ExactScalar};
use crate::linalg::{self, Matrix, Q};
use crate::volumes::{self, SpaceDescriptor};
use crate::{Bundle, ClassExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub criterion: u8,
    pub group: String,
    pub citation: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl VerifyReport {
    fn new(checks: Vec<Check>) -> Self {
        let count = |s| checks.iter().filter(|c| c.status == s).count();
        let summary = Summary {
            total: checks.len(),
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            skipped: count(Status::Skipped),
        };
        VerifyReport { checks, summary }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn criterion(&self, n: u8) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(move |c| c.criterion == n)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

impl Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        for c in &self.checks {
            write!(f, "{:<7} {:<w$}  {}", c.status.to_string().to_uppercase(), c.id, c.computed)?;
            if c.status != Status::Pass {
                write!(f, "   (expected {})", c.expected)?;
            }
            writeln!(f)?;
        }
        writeln!(
            f,
            "{} checks: {} passed, {} failed, {} skipped",
            self.summary.total, self.summary.pass, self.summary.fail, self.summary.skipped
        )
    }
}

/// Check groups in report order: `(name, criterion)`.
pub const GROUPS: &[(&str, u8)] = &[
    ("catalog", 0),
    ("volumes", 1),
    ("ring", 2),
    ("splitting", 3),
    ("euler", 4),
    ("inner", 5),
    ("duality", 6),
    ("lattice", 7),
    ("relations", 8),
    ("gysin", 9),
    ("gauss", 10),
];

/// Run every group whose name contains `filter`; if no group name
/// matches, run everything and keep the checks whose id contains it.
pub fn run(cat: &Catalog, filter: Option<&str>) -> VerifyReport {
    let selected: Vec<&(&str, u8)> = match filter {
        Some(p) if GROUPS.iter().any(|(g, _)| g.contains(p)) => GROUPS.iter().filter(|(g, _)| g.contains(p)).collect(),
        _ => GROUPS.iter().collect(),
    };
    let mut checks = Vec::new();
    for &&(group, criterion) in &selected {
        let mut ctx = Ctx { cat, group, criterion, checks: Vec::new() };
        match group {
            "catalog" => catalog_checks(&mut ctx),
            "volumes" => volume_checks(&mut ctx),
            "ring" => ring_checks(&mut ctx),
            "splitting" => splitting_checks(&mut ctx),
            "euler" => euler_checks(&mut ctx),
            "inner" => inner_checks(&mut ctx),
            "duality" => duality_checks(&mut ctx),
            "lattice" => lattice_checks(&mut ctx),
            "relations" => relation_checks(&mut ctx),
            "gysin" => gysin_checks(&mut ctx),
            "gauss" => gauss_checks(&mut ctx),
            _ => unreachable!(),
        }
        checks.extend(ctx.checks);
    }
    if let Some(p) = filter {
        if !GROUPS.iter().any(|(g, _)| g.contains(p)) {
            checks.retain(|c| c.id.contains(p));
        }
    }
    VerifyReport::new(checks)
}

struct Ctx<'a> {
    cat: &'a Catalog,
    group: &'static str,
    criterion: u8,
    checks: Vec<Check>,
}

impl<'a> Ctx<'a> {
    fn push(&mut self, id: String, citation: &str, expected: String, computed: String, status: Status) {
        self.checks.push(Check {
            id: format!("{}.{id}", self.group),
            criterion: self.criterion,
            group: self.group.to_string(),
            citation: citation.to_string(),
            expected,
            computed,
            status,
        });
    }

    /// Exact equality of displayed values.
    fn eq<T: Display + PartialEq>(&mut self, id: impl Into<String>, citation: &str, expected: T, computed: Result<T>) {
        let (c, s) = match computed {
            Ok(v) => {
                let s = if v == expected { Status::Pass } else { Status::Fail };
                (v.to_string(), s)
            }
            Err(e) => (format!("error: {e}"), Status::Fail),
        };
        self.push(id.into(), citation, expected.to_string(), c, s);
    }

    fn truth(&mut self, id: impl Into<String>, citation: &str, expected: &str, computed: Result<(bool, String)>) {
        let (c, s) = match computed {
            Ok((ok, text)) => (text, if ok { Status::Pass } else { Status::Fail }),
            Err(e) => (format!("error: {e}"), Status::Fail),
        };
        self.push(id.into(), citation, expected.to_string(), c, s);
    }

    fn model(&self, name: &str) -> &'a ManifoldModel {
        let cat: &'a Catalog = self.cat;
        cat.model(name).expect("catalog model")
    }
}

fn x(s: &str) -> ClassExpr {
    s.parse().expect("well-formed class literal")
}

fn sc(s: &str) -> ExactScalar {
    s.parse().expect("well-formed scalar literal")
}

fn factorial(n: i64) -> Q {
    (1..=n).fold(int(1), |a, i| a * int(i))
}

fn sign(q: u32, n: u32) -> Q {
    if (q * (n - q)).is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

fn rows_text(m: &Matrix) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

fn int_matrix(rows: &[&[i64]]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
}

/// Integrals of a cycle combination on the basis of its degree.
fn cycle_vector(m: &ManifoldModel, c: &CycleClass, q: u32) -> Result<Vec<Q>> {
    m.basis_exprs(q).iter().map(|eta| c.integral(m, eta)).collect()
}

/// `D(class)` compared with a cycle combination by pairing both sides
/// with the basis of the cycles' degree.
fn dual_matches(m: &ManifoldModel, class: &ClassExpr, expected: &CycleClass) -> Result<(bool, String)> {
    let d = poincare_dual(class, m)?;
    let q = m.dim() - m.degree(class)?;
    Ok((cycle_vector(m, &d, q)? == cycle_vector(m, expected, q)?, d.to_string()))
}

fn kronecker_table(m: &ManifoldModel, classes: &[ClassExpr], cycles: &[&str]) -> Result<Matrix> {
    classes
        .iter()
        .map(|c| cycles.iter().map(|n| m.cycle_integral(n, c)).collect())
        .collect()
}

fn is_unimodular(p: &Matrix) -> bool {
    p.iter().flatten().all(|v| v.is_integer()) && linalg::det(p).abs().is_one()
}

// ---------------------------------------------------------------------------

fn catalog_checks(ctx: &mut Ctx) {
    let cat = ctx.cat;
    for m in cat.models() {
        let name = m.name().to_string();
        let table = crate::charring::parse_grassmannian(&name).and_then(|(k, n)| catalog::tabulated_poincare(k, n));
        match table {
            Some(p) => ctx.eq(
                format!("poincare.{name}"),
                "Poincaré polynomial table",
                p.to_string(),
                Ok(catalog::PoincarePolynomial::from_coefficients(m.betti()).to_string()),
            ),
            None => ctx.push(format!("poincare.{name}"), "Poincaré polynomial table", "-".into(), "not tabulated".into(), Status::Skipped),
        }
        ctx.truth(
            format!("palindromic.{name}"),
            "Poincaré duality of Betti numbers",
            "palindromic",
            Ok((m.betti().iter().eq(m.betti().iter().rev()), format!("{:?}", m.betti()))),
        );
    }
    for f in &cat.doc().facts {
        ctx.push(format!("fact.{}", f.id), "recorded torsion and cohomology facts", f.statement.clone(), "recorded".into(), Status::Pass);
    }
}

fn volume_checks(ctx: &mut Ctx) {
    let cite_list = "volumes of the Grassmann manifolds";
    for n in 1..=6i64 {
        let expected = ExactScalar::pi(n).scale(&(int(2).pow(n as i32 + 1) / factorial(n)));
        let k = SpaceDescriptor::RealGrassmann(2, n as u32 + 2);
        ctx.eq(format!("{k}"), "V(G(2,n+2)) = 2(2pi)^n/n!", expected, volumes::standard_volume(&k));
    }
    for (s, v) in [("G(3,6)", "2/3 * pi^5"), ("G(3,7)", "16/45 * pi^6"), ("G(3,8)", "2/45 * pi^8"), ("G(4,8)", "8/135 * pi^8")] {
        ctx.eq(s, cite_list, sc(v), s.parse().and_then(|d| volumes::standard_volume(&d)));
    }
    for n in 1..=6i64 {
        let expected = ExactScalar::pi(n).scale(&(int(2) / factorial(n - 1)));
        ctx.eq(format!("S({})", 2 * n - 1), "odd sphere volume 2pi^n/(n-1)!", expected, Ok(volumes::sphere(2 * n as u32 - 1)));
    }
    for m in 2..=12u32 {
        let rec = volumes::sphere(m - 2).mul(&ExactScalar::pi(1).scale(&rat(2, i64::from(m) - 1)));
        ctx.eq(format!("sphere-recursion.S({m})"), "V(S^m) = 2pi/(m-1) V(S^(m-2))", rec, Ok(volumes::sphere(m)));
    }
    let slag = ExactScalar::sqrt_rational(&rat(3, 2)).expect("positive").mul(&ExactScalar::pi(3));
    ctx.eq("SLAG(3)", "V(SLAG(3)) = sqrt(3/2) pi^3", slag, Ok(volumes::slag(3)));
    ctx.eq(
        "SU(3)/SO(3)",
        "special Lagrangian Grassmannian as SU(3)/SO(3)",
        volumes::slag(3),
        volumes::su(3).div(&volumes::so(3)),
    );
    for n in 2..=9u32 {
        let bad: Vec<String> = (1..n)
            .filter(|&k| volumes::grassmann(k, n) != volumes::grassmann_via_groups(k, n))
            .map(|k| format!("G({k},{n})"))
            .collect();
        ctx.truth(
            format!("two-forms.n={n}"),
            "sphere-product and SO(n)-quotient volume formulas agree",
            "agree for all k",
            Ok((bad.is_empty(), if bad.is_empty() { "agree for all k".into() } else { format!("differ at {}", bad.join(", ")) })),
        );
    }
    for r in &ctx.cat.doc().volume_relations {
        let stored = ctx.cat.volume(&r.space.parse().expect("validated"));
        let computed = catalog::volume_relation_value(ctx.cat, r);
        match stored {
            Ok(s) => ctx.eq(format!("relation.{}", r.space), "volumes of the calibrated submanifolds", s, computed),
            Err(e) => ctx.push(format!("relation.{}", r.space), "volumes of the calibrated submanifolds", "-".into(), format!("error: {e}"), Status::Fail),
        }
    }
}

fn ring_checks(ctx: &mut Ctx) {
    for m in ctx.cat.models() {
        let p = m.total_pontryagin(Bundle::E).mul(&m.total_pontryagin(Bundle::F));
        ctx.eq(format!("p(E)p(F).{}", m.name()), "E + F is trivial, so p(E)p(F) = 1", ClassExpr::one(), m.reduce(&p));
    }
    for n in 1..=3u32 {
        let m = ctx.model(&format!("G(2,{})", 2 * n + 2));
        for q in 1..=n {
            let expected = m.reduce(&ClassExpr::euler(Bundle::E).pow(2 * q).scale(&int(if q % 2 == 0 { 1 } else { -1 })));
            let computed = m.reduce(&ClassExpr::pont(Bundle::F, q));
            match expected {
                Ok(e) => ctx.eq(format!("p{q}(F).{}", m.name()), "p_q(F) = (-1)^q e^2q(E) on G(2,2n+2)", e, computed),
                Err(e) => ctx.push(format!("p{q}(F).{}", m.name()), "", "-".into(), e.to_string(), Status::Fail),
            }
        }
    }
    for n in 1..=2u32 {
        let m = ctx.model(&format!("G(2,{})", 2 * n + 3));
        let only_e = |c: &ClassExpr| c.generators().into_iter().all(|g| g == crate::Generator::Euler(Bundle::E));
        let r = m
            .reduce(&m.total_pontryagin(Bundle::F))
            .and_then(|pf| Ok((pf.clone(), m.tangent_pontryagin_class()?)))
            .map(|(pf, pt)| (only_e(&pf) && only_e(&pt), format!("p(F) = {pf}; p(T) = {pt}")));
        ctx.truth(format!("e-only.{}", m.name()), "Pontrjagin classes of F and T in terms of e(E) on G(2,2n+3)", "only e(E) appears", r);
    }
}

fn splitting_checks(ctx: &mut Ctx) {
    let cite_e = "Euler class of the tangent bundle via the splitting principle";
    for n in 1..=3i64 {
        let m = ctx.model(&format!("G(2,{})", 2 * n + 2));
        ctx.eq(format!("e(T).{}", m.name()), cite_e, x(&format!("{}*e(E)^{}", n + 1, 2 * n)), m.tangent_euler_class());
    }
    for n in 1..=2i64 {
        let m = ctx.model(&format!("G(2,{})", 2 * n + 3));
        ctx.eq(format!("e(T).{}", m.name()), cite_e, x(&format!("{}*e(E)^{}", n + 1, 2 * n + 1)), m.tangent_euler_class());
    }
    let m = ctx.model("G(3,7)");
    ctx.eq("e(T).G(3,7)", cite_e, x("3*e(F)^3"), m.tangent_euler_class());
    let m = ctx.model("G(4,8)");
    ctx.eq("e(T).G(4,8)", cite_e, x("6*e(E)^4"), m.tangent_euler_class());
    ctx.eq("e(T).G(4,8).F", cite_e, ClassExpr::zero(), m.tangent_euler_class().and_then(|e| m.reduce(&e.sub(&x("6*e(F)^4")))));

    // p1(TG(2k,2n)) = 2(n-2k) p1(E).
    for (k, n) in [(1i64, 2i64), (1, 3), (1, 4), (2, 4)] {
        let m = ctx.model(&format!("G({},{})", 2 * k, 2 * n));
        let expected = m.reduce(&x(&format!("{}*p1(E)", 2 * (n - 2 * k))));
        let computed = m.tangent_pontryagin_class().map(|p| m.part(&p, 4));
        if let Ok(e) = expected {
            ctx.eq(format!("p1(T).{}", m.name()), "p1(TG(2k,2n)) = 2(n-2k)p1(E)", e, computed);
        }
    }
    for n in 1..=3i64 {
        let m = ctx.model(&format!("G(2,{})", 2 * n + 2));
        let pt = m.tangent_pontryagin_class();
        let p1 = m.reduce(&x(&format!("{}*e(E)^2", 2 * (n - 1))));
        let p2 = m.reduce(&x(&format!("{}*e(E)^4", 2 * n * n - 5 * n + 9)));
        if let (Ok(p1), Ok(p2)) = (p1, p2) {
            ctx.eq(format!("p1(T).{}", m.name()), "p1(G(2,2n+2)) = 2(n-1)e^2(E)", p1, pt.clone().map(|p| m.part(&p, 4)));
            ctx.eq(format!("p2(T).{}", m.name()), "p2(G(2,2n+2)) = (2n^2-5n+9)e^4(E)", p2, pt.map(|p| m.part(&p, 8)));
        }
    }
}

fn euler_checks(ctx: &mut Ctx) {
    let expected: &[(&str, i64)] = &[
        ("G(2,4)", 4),
        ("G(2,5)", 4),
        ("G(2,6)", 6),
        ("G(2,7)", 6),
        ("G(2,8)", 8),
        ("G(3,6)", 0),
        ("G(3,7)", 6),
        ("G(3,8)", 0),
        ("G(4,8)", 12),
    ];
    for &(name, chi) in expected {
        let m = ctx.model(name);
        ctx.eq(format!("chi.{name}"), "Euler characteristics", chi, Ok(m.euler_characteristic()));
        let alt = catalog::PoincarePolynomial::from_coefficients(m.betti()).alternating_sum();
        ctx.eq(format!("betti-sum.{name}"), "Euler characteristic from the Poincaré polynomial", chi, Ok(alt));
    }
}

fn inner_checks(ctx: &mut Ctx) {
    let cite = "inner products of the harmonic characteristic forms";
    let cases: &[(&str, &str, &str, &str)] = &[
        ("G(3,6)", "p1(E)", "p1(E)", "3/2 * pi"),
        ("G(3,7)", "p1(E)", "p1(E)", "8/5 * pi^2"),
        ("G(3,7)", "e(F)", "e(F)", "pi^2"),
        ("G(3,7)", "p1(E)", "e(F)", "0"),
        ("G(3,8)", "p1(E)", "p1(E)", "1/3 * pi^4"),
        ("G(3,8)", "p1(E)^2", "p1(E)^2", "5/2"),
        ("G(4,8)", "e(E)", "e(E)", "4/15 * pi^4"),
        ("G(4,8)", "e(F)", "e(F)", "4/15 * pi^4"),
        ("G(4,8)", "p1(E)", "p1(E)", "8/15 * pi^4"),
        ("G(4,8)", "e(E)", "e(F)", "0"),
        ("G(4,8)", "e(E)", "p1(E)", "0"),
        ("G(4,8)", "e(F)", "p1(E)", "0"),
    ];
    for &(name, a, b, v) in cases {
        let m = ctx.model(name);
        ctx.eq(format!("({a},{b}).{name}"), cite, sc(v), m.inner_product(&x(a), &x(b)));
    }
    for g in &ctx.cat.doc().gram_formulas {
        let id = format!("formula.({},{}).{}", g.x, g.y, g.manifold);
        match catalog::gram_formula_values(ctx.cat, g) {
            Ok((e, c)) => ctx.eq(id, "Gram entries as multiples of the volume", e, Ok(c)),
            Err(e) => ctx.push(id, "", "-".into(), format!("error: {e}"), Status::Fail),
        }
    }
    for r in &ctx.cat.doc().restrictions {
        let id = format!("calibrated.{}.{}", r.cycle, r.manifold);
        match catalog::restriction_values(ctx.cat, r) {
            Ok((e, c)) => ctx.eq(id, "restriction of the starred class to a calibrated cycle", e, Ok(c)),
            Err(e) => ctx.push(id, "", "-".into(), format!("error: {e}"), Status::Fail),
        }
    }
    for m in ctx.cat.models() {
        for q in m.degrees().into_iter().filter(|&q| q > 0 && q < m.dim()) {
            let r = GramMatrix::of_model(m, q).map(|g| (g.is_positive_definite(), format!("{:?}", g.split().map(|s| rows_text(&s.1)).ok())));
            ctx.truth(format!("positive.{}.H{q}", m.name()), "Gram matrices of harmonic bases are positive definite", "positive definite", r);
        }
    }
}

fn duality_checks(ctx: &mut Ctx) {
    let cat = ctx.cat;
    // star∘star = (-1)^{q(n-q)} on every basis class.
    for m in cat.models() {
        let n = m.dim();
        for q in m.degrees().into_iter().filter(|&q| q > 0 && q < n) {
            for phi in m.basis_exprs(q) {
                let r = m.star(&phi).and_then(|s| {
                    let t = m.star(&s.class)?;
                    Ok(ScaledClass::new(s.scalar.mul(&t.scalar), t.class))
                });
                let expected = ScaledClass::new(ExactScalar::rational(sign(q, n)), phi.clone());
                ctx.eq(format!("star-star.{}.{phi}", m.name()), "star star = (-1)^(q(n-q))", expected, r);
            }
        }
    }
    // Dual bases: ∫ φ_i ψ_j = δ_ij, and D(ψ_i) pairs φ_j to ±δ_ij.
    for m in cat.models() {
        let n = m.dim();
        for q in m.degrees().into_iter().filter(|&q| q > 0 && q < n) {
            let basis = m.basis_exprs(q);
            let r = duality::model_dual_basis(m, q).and_then(|psi| {
                let mat: Matrix = basis
                    .iter()
                    .map(|phi| psi.iter().map(|p| m.integrate(&phi.mul(p))).collect())
                    .collect::<Result<_>>()?;
                Ok((mat == linalg::identity(basis.len()), rows_text(&mat)))
            });
            ctx.truth(format!("dual-basis.{}.H{q}", m.name()), "dual basis (*phi) A^-1", "identity", r);

            let psi = duality::model_dual_basis(m, q);
            let r = psi.and_then(|psi| {
                let mut rows = Matrix::new();
                for p in &psi {
                    let d = poincare_dual(p, m)?;
                    rows.push(basis.iter().map(|phi| d.integral(m, phi)).collect::<Result<_>>()?);
                }
                let expected: Matrix = linalg::identity(basis.len())
                    .into_iter()
                    .map(|r| r.into_iter().map(|v| v * sign(q, n)).collect())
                    .collect();
                Ok((rows == expected, rows_text(&rows)))
            });
            let id = format!("D(psi).{}.H{q}", m.name());
            match r {
                Err(crate::Error::UnderdeterminedPairing(why)) => {
                    ctx.push(id, "D(psi_i) = (-1)^(q(n-q)) [S_i]", "sign * identity".into(), why, Status::Skipped)
                }
                r => ctx.truth(id, "D(psi_i) = (-1)^(q(n-q)) [S_i]", "sign * identity", r),
            }
        }
    }

    // G(3,6).
    let m = ctx.model("G(3,6)");
    ctx.truth("G(3,6).D(p1/2)", "Poincaré dual of p1/2 on G(3,6)", "[SLAG]", dual_matches(m, &x("1/2*p1(E)"), &CycleClass::cycle("SLAG")));
    let psi = GramMatrix::of_classes(m, vec![x("1/2*p1(E)")])
        .and_then(|g| duality::dual_basis(&g, &[m.star(&x("1/2*p1(E)"))?]))
        .map(|v| v[0].clone());
    let expected = m.star(&x("p1(E)")).map(|s| s.scale(&ExactScalar::pi(-1).scale(&rat(4, 3))));
    if let Ok(e) = expected {
        ctx.eq("G(3,6).psi", "dual of p1/2 is 4/(3pi) * p1", e, psi.clone());
    }
    let r = psi.and_then(|p| dual_matches(m, &p.as_class().expect("rational"), &CycleClass::cycle("G(2,4)")));
    ctx.truth("G(3,6).D(psi)", "Poincaré dual of 4/(3pi) * p1 on G(3,6)", "[G(2,4)]", r);
    let t = kronecker_table(m, &[x("1/2*p1(E)")], &["G(2,4)"]).map(|t| (is_unimodular(&t), rows_text(&t)));
    ctx.truth("G(3,6).generator.H4", "p1/2 generates H^4(G(3,6);Z)", "unimodular", t);

    // G(2,N), N = 5..8.
    for big_n in 5..=8u32 {
        g2n_checks(ctx, big_n);
    }

    // G(3,7).
    let m = ctx.model("G(3,7)");
    for (c, cyc) in [("1/2*(p1(E) + e(F))", "ASSOC"), ("1/2*(p1(E) - e(F))", "ASSOC~"), ("1/2*(p1(E)*e(F) + e(F)^2)", "CP^2"), ("1/2*(p1(E)*e(F) - e(F)^2)", "CPbar^2")] {
        ctx.truth(format!("G(3,7).D({c})"), "Poincaré duals on G(3,7)", &format!("[{cyc}]"), dual_matches(m, &x(c), &CycleClass::cycle(cyc)));
    }
    for (classes, cycles) in [
        (["1/2*(p1(E) + e(F))", "1/2*(p1(E) - e(F))"], ["CP^2", "CPbar^2"]),
        (["1/2*(p1(E)*e(F) + e(F)^2)", "1/2*(p1(E)*e(F) - e(F)^2)"], ["ASSOC", "ASSOC~"]),
    ] {
        let cl: Vec<ClassExpr> = classes.iter().map(|c| x(c)).collect();
        let t = kronecker_table(m, &cl, &cycles).map(|t| (t == linalg::identity(2), rows_text(&t)));
        ctx.truth(format!("G(3,7).kronecker.{}", cycles.join(",")), "integral generators of G(3,7) and their dual cycles", "identity", t);
    }

    // G(3,8).
    let m = ctx.model("G(3,8)");
    let scaled = |c: &str, s: &str| -> Result<ClassExpr> {
        let st = m.star(&x(c))?.scale(&sc(s));
        Ok(st.as_class().expect("rational after scaling"))
    };
    for (label, class, cyc) in [
        ("p1", Ok(x("p1(E)")), "M"),
        ("3/pi^4 * star p1", scaled("p1(E)", "3 * pi^-4"), "CP^2"),
        ("p1^2", Ok(x("p1(E)^2")), "f(S^7)"),
        ("2/5 * star p1^2", scaled("p1(E)^2", "2/5"), "ASSOC"),
    ] {
        let r = class.and_then(|c| dual_matches(m, &c, &CycleClass::cycle(cyc)));
        ctx.truth(format!("G(3,8).D({label})"), "Poincaré duals on G(3,8)", &format!("[{cyc}]"), r);
    }

    // G(4,8).
    let m = ctx.model("G(4,8)");
    let h4 = [x("e(E)"), x("e(F)"), x("1/2*(p1(E) + e(E) - e(F))")];
    let t = kronecker_table(m, &h4, &["CP^2", "*CP^2", "G(2,4)"]);
    ctx.eq(
        "G(4,8).generators.H4",
        "integral generators of H^4(G(4,8)) against CP^2, *CP^2, G(2,4)",
        rows_text(&int_matrix(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])),
        t.map(|t| rows_text(&t)),
    );
    let integral_gens = [x("1/2*(e(E)^3 - 1/2*p1(E)^3)"), x("1/2*(e(F)^3 + 1/2*p1(E)^3)"), x("1/2*p1(E)^3")];
    let psi = GramMatrix::of_classes(m, h4.to_vec()).and_then(|g| {
        let stars = h4.iter().map(|c| m.star(c)).collect::<Result<Vec<_>>>()?;
        duality::dual_basis(&g, &stars)
    });
    match psi {
        Ok(psi) => {
            let got: Vec<String> = psi.iter().map(|p| p.as_class().map_or(p.to_string(), |c| c.to_string())).collect();
            let want: Vec<String> = integral_gens.iter().map(|c| m.reduce(c).map_or_else(|e| e.to_string(), |c| c.to_string())).collect();
            ctx.eq("G(4,8).psi.H12", "dual basis of the H^4 generators", want.join("; "), Ok(got.join("; ")));
        }
        Err(e) => ctx.push("G(4,8).psi.H12".into(), "", "-".into(), e.to_string(), Status::Fail),
    }
    let cycles12 = ["G(4,7)", "G(3,7)", "CAY"];
    let t = kronecker_table(m, &integral_gens, &cycles12).map(|t| (is_unimodular(&t), rows_text(&t)));
    ctx.truth("G(4,8).cycles.H12", "G(4,7), G(3,7), CAY generate H_12(G(4,8);Z)", "unimodular", t);
    let halves = [x("1/2*e(E)^3"), x("1/2*e(F)^3"), x("1/2*p1(E)^3")];
    let t = kronecker_table(m, &halves, &cycles12).map(|t| (is_unimodular(&t), rows_text(&t)));
    ctx.truth("G(4,8).classes.H12", "e^3/2, e(F)^3/2, p1^3/2 generate H^12(G(4,8);Z)", "unimodular", t);
    for (c, d) in [
        ("e(E)", "[G(4,7)]"),
        ("e(F)", "[G(3,7)]"),
        ("1/2*(p1(E) + e(E) - e(F))", "[CAY] + [G(4,7)] - [G(3,7)]"),
        ("1/2*(e(F)^2 + p1(E)*e(F))", "[ASSOC]"),
        ("1/2*(e(F)^2 - p1(E)*e(F))", "[ASSOC~]"),
        ("1/2*(e(E)^2 + p1(E)*e(E))", "[*ASSOC]"),
        ("1/2*(e(E)^2 - p1(E)*e(E))", "[*ASSOC~]"),
    ] {
        let r = d.parse().and_then(|cc| dual_matches(m, &x(c), &cc));
        ctx.truth(format!("G(4,8).D({c})"), "Poincaré duals on G(4,8)", d, r);
    }
    let h8 = ["1/2*(e(F)^2 + p1(E)*e(F))", "1/2*(e(F)^2 - p1(E)*e(F))", "1/2*(e(E)^2 + p1(E)*e(E))", "1/2*(e(E)^2 - p1(E)*e(E))"];
    let cl: Vec<ClassExpr> = h8.iter().map(|c| x(c)).collect();
    let t = kronecker_table(m, &cl, &["ASSOC", "ASSOC~", "*ASSOC", "*ASSOC~"]).map(|t| (t == linalg::identity(4), rows_text(&t)));
    ctx.truth("G(4,8).generators.H8", "integral generators of H^8(G(4,8))", "identity", t);

    for c in &ctx.cat.doc().classes {
        let m = ctx.model(&c.manifold);
        for (cyc, v) in &c.integrals {
            let expected = crate::exact::parse_rational(v).expect("validated");
            ctx.eq(format!("class.{}.{cyc}", c.name), "stored class identities", expected, c.class.parse().and_then(|k| m.cycle_integral(cyc, &k)));
        }
    }
}

/// The G(2,N) generator and duality statements.
fn g2n_checks(ctx: &mut Ctx, big_n: u32) {
    let m = ctx.model(&format!("G(2,{big_n})"));
    let name = m.name().to_string();
    let e = ClassExpr::euler(Bundle::E);
    for k in 1..=big_n - 3 {
        let ek = e.pow(k);
        if 2 * k + 2 < big_n {
            let r = m.cycle_integral(&format!("CP^{k}"), &ek).map(|v| (v.abs().is_one(), v.to_string()));
            ctx.truth(format!("{name}.generator.H{}", 2 * k), "e^k and CP^k are generators when 2k+2 < N", "±1", r);
            let target = CycleClass::cycle(&format!("G(2,{})", big_n - k));
            ctx.truth(format!("{name}.D(e^{k})"), "D(e^k) = [G(2,N-k)] when 2k+2 < N", &target.to_string(), dual_matches(m, &ek, &target));
        } else if 2 * k + 2 > big_n {
            let half = ek.scale(&rat(1, 2));
            let r = m.cycle_integral(&format!("G(2,{})", k + 2), &half);
            ctx.eq(format!("{name}.generator.H{}", 2 * k), "e^k/2 and G(2,k+2) are generators when 2k+2 > N", int(1), r);
            duality_readings(ctx, big_n, k);
        } else {
            middle_degree(ctx, big_n);
        }
    }
}

/// `D(e^k/2) = (-1)^{n-k}[CP^{n-k-2}]` under the three readings of `n`.
fn duality_readings(ctx: &mut Ctx, big_n: u32, k: u32) {
    let m = ctx.model(&format!("G(2,{big_n})"));
    let half = ClassExpr::euler(Bundle::E).pow(k).scale(&rat(1, 2));
    let mut readings: Vec<(&str, Option<i64>)> = vec![
        ("N=2n+2", big_n.is_multiple_of(2).then(|| (i64::from(big_n) - 2) / 2)),
        ("N=2n+3", (big_n % 2 == 1).then(|| (i64::from(big_n) - 3) / 2)),
        ("n=N", Some(i64::from(big_n))),
    ];
    readings.retain(|(_, n)| n.is_some());
    let mut closing = Vec::new();
    for (label, n) in &readings {
        let n = n.expect("retained");
        let j = n - i64::from(k) - 2;
        if j < 1 || m.cycle(&format!("CP^{j}")).is_err() {
            continue;
        }
        let sgn = if (n - i64::from(k)) % 2 == 0 { int(1) } else { int(-1) };
        let target = CycleClass::from_terms([(format!("CP^{j}"), sgn)]);
        if matches!(dual_matches(m, &half, &target), Ok((true, _))) {
            closing.push(*label);
        }
    }
    let d = poincare_dual(&half, m).map(|d| d.to_string()).unwrap_or_else(|e| e.to_string());
    ctx.truth(
        format!("{}.D(e^{k}/2)", m.name()),
        "D(e^k/2) = (-1)^(n-k)[CP^(n-k-2)] when 2k+2 > N; readings of n",
        "closes only for n=N",
        Ok((closing == ["n=N"], format!("D = {d}; closes for: {}", if closing.is_empty() { "none".into() } else { closing.join(", ") }))),
    );
}

/// Middle degree of G(2,2n+2).
fn middle_degree(ctx: &mut Ctx, big_n: u32) {
    let m = ctx.model(&format!("G(2,{big_n})"));
    let name = m.name().to_string();
    let n = (big_n - 2) / 2;
    let s = if n.is_multiple_of(2) { "" } else { "-" };
    let plus = x(&format!("1/2*({s}e(E)^{n} + e(F))"));
    let minus = x(&format!("1/2*({s}e(E)^{n} - e(F))"));
    let cp = format!("CP^{n}");
    let cpbar = format!("CPbar^{n}");
    let t = kronecker_table(m, &[plus.clone(), minus.clone()], &[&cp, &cpbar]).map(|t| (t == linalg::identity(2), rows_text(&t)));
    ctx.truth(format!("{name}.generators.H{}", 2 * n), "half-class generators dual to CP^n and CPbar^n", "identity", t);
    ctx.truth(format!("{name}.D(+)"), "D(((-1)^n e^n + e(F))/2) = [CP^n]", &format!("[{cp}]"), dual_matches(m, &plus, &CycleClass::cycle(&cp)));
    ctx.truth(format!("{name}.D(-)"), "D(((-1)^n e^n - e(F))/2) = [CPbar^n]", &format!("[{cpbar}]"), dual_matches(m, &minus, &CycleClass::cycle(&cpbar)));
}

fn lattice_checks(ctx: &mut Ctx) {
    let tabulated = int_matrix(&[&[0, 1, 0], &[1, 0, 0], &[1, -1, 2]]);
    let m = ctx.model("G(4,8)");
    let classes = [x("e(E)"), x("e(F)"), x("p1(E)")];
    let table = kronecker_table(m, &classes, &["CP^2", "*CP^2", "G(2,4)"]);
    ctx.eq("G(4,8).H4.table", "degree-4 pairing table of G(4,8)", rows_text(&tabulated), table.as_ref().map(rows_text).map_err(Clone::clone));
    ctx.eq("G(4,8).H4.index", "lattice index |det| = 2", int(2), table.clone().and_then(|t| lattice_index(&t)));
    let r = table.and_then(|t| integral_dual_basis(&t)).map(|d| {
        let mut got: Vec<String> = duality::combine(&classes, &d.coefficients).iter().map(|c| c.to_string()).collect();
        got.sort();
        (got, d.half_integral)
    });
    let mut want = [x("e(E)").to_string(), x("e(F)").to_string(), x("1/2*(p1(E) + e(E) - e(F))").to_string()];
    want.sort();
    ctx.eq("G(4,8).H4.dual", "integral dual basis of the degree-4 table", want.join("; "), r.as_ref().map(|(g, _)| g.join("; ")).map_err(Clone::clone));
    ctx.eq("G(4,8).H4.half", "half-integral dual classes", true, r.map(|(_, h)| h));

    for n in [2u32, 3] {
        let m = ctx.model(&format!("G(2,{})", 2 * n + 2));
        let en = ClassExpr::euler(Bundle::E).pow(n);
        let classes = [en, ClassExpr::euler(Bundle::F)];
        let cp = format!("CP^{n}");
        let cpbar = format!("CPbar^{n}");
        let t = kronecker_table(m, &classes, &[&cp, &cpbar]);
        let sg = if n % 2 == 0 { 1 } else { -1 };
        let expect = int_matrix(&[&[sg, sg], &[1, -1]]);
        ctx.eq(format!("{}.H{}.table", m.name(), 2 * n), "middle-degree pairing of G(2,2n+2)", rows_text(&expect), t.as_ref().map(rows_text).map_err(Clone::clone));
        ctx.eq(format!("{}.H{}.index", m.name(), 2 * n), "det(n_ij) = ±2", int(2), t.clone().and_then(|t| lattice_index(&t)));
        let s = if sg == 1 { "" } else { "-" };
        let want = format!("{}; {}", x(&format!("1/2*({s}e(E)^{n} + e(F))")), x(&format!("1/2*({s}e(E)^{n} - e(F))")));
        let got = t.and_then(|t| integral_dual_basis(&t)).map(|d| {
            duality::combine(&classes, &d.coefficients).iter().map(|c| c.to_string()).collect::<Vec<_>>().join("; ")
        });
        ctx.eq(format!("{}.H{}.dual", m.name(), 2 * n), "half-class generators of the middle degree", want, got);
    }

    // Smith normal form on random 4x4 matrices against a minors oracle.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut failures = Vec::new();
    for trial in 0..200 {
        let a: IntMatrix = (0..4).map(|_| (0..4).map(|_| BigInt::from(rng.gen_range(-9..=9))).collect()).collect();
        if let Err(why) = snf_property(&a) {
            failures.push(format!("#{trial}: {why}"));
        }
    }
    ctx.truth(
        "snf.random-4x4",
        "Smith normal form: UAV = S, unimodular, divisibility, minors oracle",
        "200/200",
        Ok((failures.is_empty(), if failures.is_empty() { "200/200".into() } else { failures.join("; ") })),
    );
}

fn to_q(a: &IntMatrix) -> Matrix {
    a.iter().map(|r| r.iter().map(|v| Q::from_integer(v.clone())).collect()).collect()
}

fn int_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    a.iter()
        .map(|r| (0..b[0].len()).map(|j| r.iter().zip(b).map(|(x, row)| x * &row[j]).sum()).collect())
        .collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Determinantal divisors: gcd of all k×k minors.
pub fn determinantal_divisors(a: &IntMatrix) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    (1..=rows.min(cols))
        .map(|k| {
            let mut g = BigInt::zero();
            for r in subsets(rows, k) {
                for c in subsets(cols, k) {
                    let minor: Matrix = r.iter().map(|&i| c.iter().map(|&j| Q::from_integer(a[i][j].clone())).collect()).collect();
                    g = g.gcd(&linalg::det(&minor).to_integer());
                }
            }
            g
        })
        .collect()
}

fn snf_property(a: &IntMatrix) -> std::result::Result<(), String> {
    let (u, s, v) = smith_normal_form(a);
    if int_mul(&int_mul(&u, a), &v) != s {
        return Err("UAV != S".into());
    }
    for m in [&u, &v] {
        if !linalg::det(&to_q(m)).abs().is_one() {
            return Err("not unimodular".into());
        }
    }
    let n = s.len().min(s[0].len());
    for i in 0..s.len() {
        for j in 0..s[0].len() {
            if i != j && !s[i][j].is_zero() {
                return Err("S not diagonal".into());
            }
        }
    }
    let d: Vec<BigInt> = (0..n).map(|i| s[i][i].clone()).collect();
    for w in d.windows(2) {
        if !(w[0].is_zero() && w[1].is_zero()) && (w[0].is_zero() || !w[1].is_multiple_of(&w[0])) {
            return Err(format!("divisibility fails: {} / {}", w[0], w[1]));
        }
    }
    let dk = determinantal_divisors(a);
    let mut prod = BigInt::one();
    for (i, di) in d.iter().enumerate() {
        prod *= di;
        if prod != dk[i] {
            return Err(format!("product of first {} invariants {prod} != minors gcd {}", i + 1, dk[i]));
        }
    }
    Ok(())
}

fn relation_checks(ctx: &mut Ctx) {
    let names: Vec<String> = ctx.cat.relation_names().map(String::from).collect();
    for name in names {
        let r = ctx.cat.relation_pairings(&name).map(|(a, b)| {
            let text = |v: &[Q]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            (a == b, format!("({}) vs ({})", text(&a), text(&b)))
        });
        let (lhs, rhs) = ctx.cat.homology_relation(&name).map(|(l, r)| (l.to_string(), r.to_string())).unwrap_or_default();
        ctx.truth(name.to_string(), "homology relations between named cycles", &format!("{lhs} = {rhs}"), r);
    }
    let t = ctx.cat.pairing_tables("G(4,8)", 12).map(|ts| ts.first().map(|t| rows_text(&t.entries)).unwrap_or_default());
    ctx.eq(
        "G(4,8).table.H12",
        "degree-12 table of G(4,8) against G(4,7), G(3,7), CAY",
        rows_text(&int_matrix(&[&[2, 0, -1], &[0, 2, 1], &[0, 0, 2]])),
        t,
    );
}

fn gysin_checks(ctx: &mut Ctx) {
    for f in &ctx.cat.doc().fibrations {
        let d = SphereBundleDescriptor::from(f);
        let r = gysin_betti_solver(&d);
        let fact = ctx.cat.doc().facts.iter().find_map(|f| f.ranks.clone());
        ctx.eq(
            format!("{}.betti", f.name),
            "real cohomology of the base from the Gysin sequence",
            format!("{:?}", vec![1, 0, 0, 0, 1, 0, 0, 0, 1]),
            r.as_ref().map(|p| format!("{:?}", p.coefficients())).map_err(Clone::clone),
        );
        if let (Some(ranks), Ok(p)) = (fact, &r) {
            ctx.eq(format!("{}.fact", f.name), "free ranks of the recorded integral cohomology", format!("{ranks:?}"), Ok(format!("{:?}", p.coefficients())));
        }
        if let Ok(p) = r {
            let b = p.coefficients();
            let m = d.fiber_dim as usize;
            let resum: Vec<u64> = (0..d.total_betti.len())
                .map(|q| b.get(q).copied().unwrap_or(0) + if q >= m { b.get(q - m).copied().unwrap_or(0) } else { 0 })
                .collect();
            ctx.eq(format!("{}.resum", f.name), "b[q] + b[q-m] reproduces the total space", format!("{:?}", d.total_betti), Ok(format!("{resum:?}")));
        }
        if let Ok(m) = ctx.cat.model(&f.total) {
            ctx.eq(format!("{}.total", f.name), "Betti numbers of the total space", format!("{:?}", m.betti()), Ok(format!("{:?}", f.total_betti)));
        }
    }
}

fn gauss_checks(ctx: &mut Ctx) {
    let cite4 = "Gauss-map pushforward of a 4-manifold in R^8";
    let cases: &[(&str, i64, i64, i64, &str)] = &[
        ("G(4,8)", 2, 0, 0, "1*[G(4,5)]"),
        ("G(4,8)", 24, -16, 0, "12*[G(4,5)] - 24*[G(2,4)]"),
        ("G(4,7)", 2, 0, 5, "1*[G(4,5)]"),
        ("G(2,N)", 2, 0, 0, "1*[G(2,3)]"),
        ("G(2,N)", 0, 0, 0, "0"),
    ];
    for &(t, chi, sgn, lam, want) in cases {
        let got = gauss_map_class(t, chi, sgn, &int(lam)).map(|c| c.to_explicit_string());
        ctx.eq(format!("{t}.chi={chi}.sign={sgn}.lambda={lam}"), cite4, want.to_string(), got);
    }
    // Pairing the pushforward with e(E), e(F), p1(E) returns χ, 2λ, 3 Sign.
    let m = ctx.model("G(4,8)");
    for (chi, sgn, lam) in [(2i64, 0i64, 0i64), (24, -16, 0), (4, 2, 3), (0, 1, -1)] {
        let r = gauss_map_class("G(4,8)", chi, sgn, &int(lam)).and_then(|c| {
            ["e(E)", "e(F)", "p1(E)"].iter().map(|k| c.integral(m, &x(k))).collect::<Result<Vec<_>>>()
        });
        ctx.eq(
            format!("G(4,8).pairing.chi={chi}.sign={sgn}.lambda={lam}"),
            "e, e(F), p1 integrate to chi, 2 lambda, 3 Sign",
            format!("{chi},{},{}", 2 * lam, 3 * sgn),
            r.map(|v| v.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",")),
        );
    }
    // Surfaces: ½χ[G(2,3)] = χ[-CP^1] and ∫ e = χ.
    for name in ["G(2,5)", "G(2,6)", "G(2,7)", "G(2,8)"] {
        let m = ctx.model(name);
        let g = gauss_map_class(name, 2, 0, &int(0)).expect("surface case");
        let alt = CycleClass::from_terms([("CP^1".to_string(), int(-2))]);
        let r = cycle_vector(m, &g, 2).and_then(|a| Ok((a == cycle_vector(m, &alt, 2)?, g.to_string())));
        ctx.truth(format!("{name}.surface"), "surface Gauss map: chi/2 [G(2,3)] = chi [-CP^1]", "equal in homology", r);
        ctx.eq(format!("{name}.surface.euler"), "pulling back e(E) gives the Euler class", int(2), g.integral(m, &x("e(E)")));
    }
    for (a, chi, want) in [(0, 2, 1), (0, 0, 0), (4, 2, 3)] {
        ctx.eq(format!("tau-degree.{a}.{chi}"), "degree of tau∘g", int(want), Ok(tau_gauss_degree(&int(a), chi)));
    }
}
