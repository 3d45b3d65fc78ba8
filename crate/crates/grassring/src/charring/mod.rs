//! Cohomology models of individual Grassmannians.
//!
//! A [`ManifoldModel`] is a graded quotient ring presented by monomial
//! rewrite rules, together with its top-degree integral, a Hodge-star table
//! on the harmonic representatives, and integrals of named cycles. Models are
//! built from [`ManifoldDoc`] records and validated on construction.

pub mod expr;

use std::collections::BTreeMap;
use std::fmt;

use indexmap::IndexMap;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{parse_rational, ExactScalar};
use crate::linalg::{self, Solve};
use crate::symfun::{self, BundleRoots};
use expr::{Bundle, ClassExpr, Generator, Grading, Monomial};

type Q = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDoc {
    pub name: String,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleDoc {
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarDoc {
    pub scalar: String,
    pub class: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleDoc {
    pub degree: u32,
    /// Member of the catalogued generator set of its degree.
    #[serde(default)]
    pub generator: bool,
    pub pairings: IndexMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// On-disk form of a manifold model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldDoc {
    pub name: String,
    pub dim: u32,
    pub generators: Vec<GeneratorDoc>,
    pub rules: Vec<RuleDoc>,
    pub bases: IndexMap<String, Vec<String>>,
    pub integrals: IndexMap<String, String>,
    pub star: IndexMap<String, StarDoc>,
    pub cycles: IndexMap<String, CycleDoc>,
    pub poincare: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Monomial,
    pub rhs: ClassExpr,
}

/// `scalar * class`, normalised so the leading coefficient of `class` is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledClass {
    pub scalar: ExactScalar,
    pub class: ClassExpr,
}

impl ScaledClass {
    pub fn new(scalar: ExactScalar, class: ClassExpr) -> Self {
        if scalar.is_zero() || class.is_zero() {
            return ScaledClass { scalar: ExactScalar::zero(), class: ClassExpr::zero() };
        }
        let lead = class.terms().next_back().map(|(_, c)| c.clone()).expect("nonzero");
        ScaledClass { scalar: scalar.scale(&lead), class: class.scale(&(Q::one() / lead)) }
    }

    pub fn zero() -> Self {
        Self::new(ExactScalar::zero(), ClassExpr::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.class.is_zero()
    }

    /// The plain class, when the scalar is rational.
    pub fn as_class(&self) -> Option<ClassExpr> {
        if self.is_zero() {
            return Some(ClassExpr::zero());
        }
        self.scalar.as_rational().map(|q| self.class.scale(q))
    }

    /// Multiply by a scalar that shares this value's monomial up to a rational.
    pub fn scale(&self, s: &ExactScalar) -> ScaledClass {
        Self::new(self.scalar.mul(s), self.class.clone())
    }

    /// Sum of scaled classes whose scalars share a monomial.
    pub fn sum(parts: &[ScaledClass]) -> Result<ScaledClass> {
        let live: Vec<&ScaledClass> = parts.iter().filter(|p| !p.is_zero()).collect();
        let Some(first) = live.first() else { return Ok(Self::zero()) };
        let unit = first.scalar.unit();
        let mut class = ClassExpr::zero();
        for p in &live {
            if !p.scalar.same_monomial(&unit) {
                return Err(Error::IncompatibleMonomials(unit.to_string(), p.scalar.to_string()));
            }
            class = class.add(&p.class.scale(p.scalar.coeff()));
        }
        Ok(Self::new(unit, class))
    }
}

impl fmt::Display for ScaledClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if self.class.len() == 1 {
            write!(f, "{} * {}", self.scalar, self.class)
        } else {
            write!(f, "{} * ({})", self.scalar, self.class)
        }
    }
}

/// A named cycle and its integrals on the basis of its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub name: String,
    pub degree: u32,
    pub generator: bool,
    pub note: Option<String>,
    /// Stored integrals, as given.
    pub seeds: Vec<(ClassExpr, Q)>,
    /// The integration functional on the degree's basis monomials.
    pub functional: Vec<Q>,
}

#[derive(Clone, Debug)]
pub struct ManifoldModel {
    name: String,
    k: usize,
    n: usize,
    dim: u32,
    grading: Grading,
    rules: Vec<Rule>,
    bases: BTreeMap<u32, Vec<Monomial>>,
    top: Vec<Q>,
    star: BTreeMap<Monomial, ScaledClass>,
    cycles: Vec<Cycle>,
    poincare: Vec<u64>,
    doc: ManifoldDoc,
}

fn bad(model: &str, what: impl fmt::Display) -> Error {
    Error::Catalog(format!("{model}: {what}"))
}

/// Parse `G(k,n)` into `(k, n)`.
pub fn parse_grassmannian(name: &str) -> Option<(usize, usize)> {
    let inner = name.trim().strip_prefix("G(")?.strip_suffix(')')?;
    let (k, n) = inner.split_once(',')?;
    let (k, n) = (k.trim().parse().ok()?, n.trim().parse().ok()?);
    (1 <= k && k < n).then_some((k, n))
}

impl ManifoldModel {
    pub fn from_doc(doc: &ManifoldDoc) -> Result<Self> {
        let name = doc.name.clone();
        let (k, n) = parse_grassmannian(&name).ok_or_else(|| bad(&name, "name is not of the form G(k,n)"))?;
        if doc.dim as usize != k * (n - k) {
            return Err(bad(&name, format!("dimension {} is not k(n-k)", doc.dim)));
        }
        let parse = |s: &str| -> Result<ClassExpr> {
            s.parse::<ClassExpr>().map_err(|e| bad(&name, format!("`{s}`: {e}")))
        };

        let mut grading = Grading::default();
        for g in &doc.generators {
            let gen: Generator = g.name.parse().map_err(|e| bad(&name, e))?;
            let expected = match &gen {
                Generator::Pont(_, i) => Some(4 * i),
                Generator::Euler(Bundle::E) => Some(k as u32),
                Generator::Euler(Bundle::F) => Some((n - k) as u32),
                Generator::Aux(_) => None,
            };
            if matches!(expected, Some(d) if d != g.degree) || g.degree == 0 {
                return Err(bad(&name, format!("generator {} has wrong degree {}", g.name, g.degree)));
            }
            if matches!(gen, Generator::Euler(Bundle::E)) && k % 2 == 1
                || matches!(gen, Generator::Euler(Bundle::F)) && (n - k) % 2 == 1
            {
                return Err(bad(&name, format!("{} is the Euler class of an odd-rank bundle", g.name)));
            }
            grading.degrees.insert(gen, g.degree);
        }

        let mut model = ManifoldModel {
            name: name.clone(),
            k,
            n,
            dim: doc.dim,
            grading,
            rules: Vec::new(),
            bases: BTreeMap::new(),
            top: Vec::new(),
            star: BTreeMap::new(),
            cycles: Vec::new(),
            poincare: doc.poincare.clone(),
            doc: doc.clone(),
        };

        for r in &doc.rules {
            let lhs = parse(&r.lhs)?;
            let rhs = parse(&r.rhs)?;
            let lhs = match lhs.terms().next() {
                Some((m, c)) if lhs.len() == 1 && c.is_one() && !m.is_one() => m.clone(),
                _ => return Err(bad(&name, format!("rule lhs `{}` is not a monomial", r.lhs))),
            };
            model.check_known(&rhs)?;
            model.check_known(&ClassExpr::monomial(lhs.clone()))?;
            model.rules.push(Rule { lhs, rhs });
        }
        model.validate_rules()?;

        model.bases.insert(0, vec![Monomial::one()]);
        for (deg, monos) in &doc.bases {
            let q: u32 = deg.parse().map_err(|_| bad(&name, format!("bad degree key `{deg}`")))?;
            let mut list = Vec::new();
            for s in monos {
                let e = parse(s)?;
                let first = e.terms().next().map(|(m, c)| (m.clone(), c.clone()));
                match first {
                    Some((m, c)) if e.len() == 1 && c.is_one() => list.push(m),
                    _ => return Err(bad(&name, format!("basis entry `{s}` is not a monomial"))),
                }
            }
            model.bases.insert(q, list);
        }
        model.validate_bases()?;

        let seeds = doc
            .integrals
            .iter()
            .map(|(k, v)| Ok((parse(k)?, parse_rational(v)?)))
            .collect::<Result<Vec<_>>>()?;
        model.top = model.solve_functional(model.dim, &seeds, "integration table")?;
        if model.top.iter().all(Zero::is_zero) {
            return Err(bad(&name, "integration functional vanishes"));
        }

        for (key, sd) in &doc.star {
            let x = model.reduce(&parse(key)?)?;
            let (m, c) = match x.terms().next() {
                Some((m, c)) if x.len() == 1 => (m.clone(), c.clone()),
                _ => return Err(bad(&name, format!("star key `{key}` is not a multiple of a basis monomial"))),
            };
            let scalar: ExactScalar = sd.scalar.parse().map_err(|e| bad(&name, e))?;
            let class = model.reduce(&parse(&sd.class)?)?;
            let q = model.degree(&ClassExpr::monomial(m.clone()))?;
            let image_deg = class.homogeneous_degree(&model.grading)?;
            if image_deg.is_some_and(|d| d + q != model.dim) {
                return Err(bad(&name, format!("star of `{key}` has the wrong degree")));
            }
            let value = ScaledClass::new(scalar.scale(&(Q::one() / c)), class);
            if model.star.insert(m, value).is_some() {
                return Err(bad(&name, format!("duplicate star entry for `{key}`")));
            }
        }

        for (cname, cd) in &doc.cycles {
            let seeds = cd
                .pairings
                .iter()
                .map(|(k, v)| Ok((parse(k)?, parse_rational(v)?)))
                .collect::<Result<Vec<_>>>()?;
            let functional = model.solve_functional(cd.degree, &seeds, &format!("cycle {cname}"))?;
            model.cycles.push(Cycle {
                name: cname.clone(),
                degree: cd.degree,
                generator: cd.generator,
                note: cd.note.clone(),
                seeds,
                functional,
            });
        }

        model.validate_star()?;
        model.validate_poincare()?;
        Ok(model)
    }

    pub fn to_doc(&self) -> &ManifoldDoc {
        &self.doc
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// `(k, n)` of `G(k, n)`.
    pub fn kn(&self) -> (usize, usize) {
        (self.k, self.n)
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn poincare(&self) -> &[u64] {
        &self.poincare
    }

    pub fn bundles(&self) -> (BundleRoots, BundleRoots) {
        (BundleRoots::of_rank(Bundle::E, self.k), BundleRoots::of_rank(Bundle::F, self.n - self.k))
    }

    /// Basis monomials of degree `q` (empty when the Betti number vanishes).
    pub fn basis(&self, q: u32) -> &[Monomial] {
        self.bases.get(&q).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn basis_exprs(&self, q: u32) -> Vec<ClassExpr> {
        self.basis(q).iter().cloned().map(ClassExpr::monomial).collect()
    }

    /// Degrees with a nonzero Betti number.
    pub fn degrees(&self) -> Vec<u32> {
        self.bases.iter().filter(|(_, b)| !b.is_empty()).map(|(q, _)| *q).collect()
    }

    pub fn betti(&self) -> Vec<u64> {
        (0..=self.dim).map(|q| self.basis(q).len() as u64).collect()
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn cycle(&self, name: &str) -> Result<&Cycle> {
        self.cycles
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::UnknownCycle(name.to_string(), self.name.clone()))
    }

    pub fn cycles_of_degree(&self, q: u32) -> Vec<&Cycle> {
        self.cycles.iter().filter(|c| c.degree == q).collect()
    }

    fn check_known(&self, x: &ClassExpr) -> Result<()> {
        for g in x.generators() {
            if self.grading.degree_of(&g).is_none() {
                return Err(Error::UnknownGenerator(g.to_string(), self.name.clone()));
            }
        }
        Ok(())
    }

    /// Normal form: apply the first rule whose left side divides a term
    /// until none does, dropping terms above the top degree.
    pub fn reduce(&self, x: &ClassExpr) -> Result<ClassExpr> {
        self.check_known(x)?;
        let mut pending = x.clone();
        let mut out = ClassExpr::zero();
        loop {
            let last = pending.terms().next_back().map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = last else { break };
            pending.add_term(m.clone(), -c.clone());
            if self.grading.monomial_degree(&m).unwrap_or(u32::MAX) > self.dim {
                continue;
            }
            match self.rules.iter().find(|r| r.lhs.divides(&m)) {
                Some(r) => {
                    let rest = ClassExpr::term(r.lhs.quotient_of(&m), c);
                    pending = pending.add(&rest.mul(&r.rhs));
                }
                None => out.add_term(m, c),
            }
        }
        Ok(out)
    }

    /// Degree of a homogeneous class after reduction; zero has no degree
    /// and is rejected.
    pub fn degree(&self, x: &ClassExpr) -> Result<u32> {
        self.check_known(x)?;
        x.homogeneous_degree(&self.grading)?
            .ok_or_else(|| Error::NotHomogeneous("0 has no degree".into()))
    }

    /// Coordinates of `x` in the degree-`q` basis.
    pub fn coordinates(&self, x: &ClassExpr, q: u32) -> Result<Vec<Q>> {
        let r = self.reduce(x)?;
        let basis = self.basis(q);
        let mut out = vec![Q::zero(); basis.len()];
        for (m, c) in r.terms() {
            let d = self.grading.monomial_degree(m).unwrap_or(u32::MAX);
            if d != q {
                return Err(Error::NotHomogeneous(format!("{x} is not of degree {q}")));
            }
            let i = basis.iter().position(|b| b == m).ok_or_else(|| {
                Error::Catalog(format!("{}: {m} is irreducible but not a basis monomial", self.name))
            })?;
            out[i] += c;
        }
        Ok(out)
    }

    pub fn from_coordinates(&self, q: u32, coords: &[Q]) -> ClassExpr {
        let mut out = ClassExpr::zero();
        for (m, c) in self.basis(q).iter().zip(coords) {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn integrate(&self, x: &ClassExpr) -> Result<Q> {
        let r = self.reduce(x)?;
        for (m, _) in r.terms() {
            let d = self.grading.monomial_degree(m).unwrap_or(u32::MAX);
            if d != self.dim {
                return Err(Error::NotTopDegree { term: m.to_string(), degree: d, dim: self.dim });
            }
        }
        let c = self.coordinates(&r, self.dim)?;
        Ok(c.iter().zip(&self.top).map(|(a, b)| a * b).sum())
    }

    /// Integral of `x` over a named cycle.
    pub fn cycle_integral(&self, cycle: &str, x: &ClassExpr) -> Result<Q> {
        let c = self.cycle(cycle)?;
        let r = self.reduce(x)?;
        if r.is_zero() {
            return Ok(Q::zero());
        }
        let coords = self.coordinates(&r, c.degree)?;
        Ok(coords.iter().zip(&c.functional).map(|(a, b)| a * b).sum())
    }

    pub fn star(&self, x: &ClassExpr) -> Result<ScaledClass> {
        let r = self.reduce(x)?;
        if r.is_zero() {
            return Ok(ScaledClass::zero());
        }
        let q = self.degree(&r)?;
        if q == 0 || q == self.dim {
            return Err(Error::StarUndefined(format!("{x} has degree {q}; star is only tabulated strictly between 0 and {}", self.dim)));
        }
        let coords = self.coordinates(&r, q)?;
        let mut parts = Vec::new();
        for (m, c) in self.basis(q).iter().zip(&coords) {
            if c.is_zero() {
                continue;
            }
            let s = self.star.get(m).ok_or_else(|| Error::StarUndefined(format!("no star entry for {m}")))?;
            parts.push(ScaledClass::new(s.scalar.scale(c), s.class.clone()));
        }
        ScaledClass::sum(&parts).map_err(|_| Error::StarUndefined(format!("{x}: star images do not share a scalar")))
    }

    /// `(x, y) = ∫ x ∧ *y`.
    pub fn inner_product(&self, x: &ClassExpr, y: &ClassExpr) -> Result<ExactScalar> {
        let sy = self.star(y)?;
        let v = self.integrate(&x.mul(&sy.class))?;
        Ok(sy.scalar.scale(&v))
    }

    /// Gram matrix of the degree-`q` basis.
    pub fn gram(&self, q: u32) -> Result<Vec<Vec<ExactScalar>>> {
        let b = self.basis_exprs(q);
        b.iter().map(|x| b.iter().map(|y| self.inner_product(x, y)).collect()).collect()
    }

    /// `1 + p_1 + ... + p_a` of one canonical bundle.
    pub fn total_pontryagin(&self, b: Bundle) -> ClassExpr {
        let (e, f) = self.bundles();
        let roots = if b == Bundle::E { e } else { f };
        (1..=roots.paired_count as u32).fold(ClassExpr::one(), |acc, i| acc.add(&ClassExpr::pont(b, i)))
    }

    /// Euler class of the tangent bundle `E ⊗ F`, reduced.
    pub fn tangent_euler_class(&self) -> Result<ClassExpr> {
        let (e, f) = self.bundles();
        let roots = symfun::tensor_euler_roots(&e, &f)?;
        self.reduce(&symfun::express_in_generators(&roots, &e, &f)?)
    }

    /// Total Pontrjagin class of the tangent bundle, reduced.
    pub fn tangent_pontryagin_class(&self) -> Result<ClassExpr> {
        let (e, f) = self.bundles();
        let roots = symfun::tensor_pontryagin_roots(&e, &f);
        self.reduce(&symfun::express_in_generators(&roots, &e, &f)?)
    }

    /// Degree-`q` part of a class.
    pub fn part(&self, x: &ClassExpr, q: u32) -> ClassExpr {
        let mut out = ClassExpr::zero();
        for (m, c) in x.terms() {
            if self.grading.monomial_degree(m) == Some(q) {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        if self.dim % 2 == 1 {
            return 0;
        }
        let chi = self
            .tangent_euler_class()
            .and_then(|e| self.integrate(&e))
            .expect("tangent Euler class of an even-dimensional catalog model");
        assert!(chi.is_integer(), "non-integral Euler characteristic");
        i64::try_from(chi.to_integer()).expect("small Euler characteristic")
    }

    /// Solve for a linear functional on the degree-`q` basis from integrals
    /// of arbitrary classes.
    fn solve_functional(&self, q: u32, seeds: &[(ClassExpr, Q)], what: &str) -> Result<Vec<Q>> {
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (x, v) in seeds {
            rows.push(self.coordinates(x, q).map_err(|e| bad(&self.name, format!("{what}: {e}")))?);
            rhs.push(v.clone());
        }
        if self.basis(q).is_empty() {
            return Err(bad(&self.name, format!("{what}: no cohomology in degree {q}")));
        }
        match linalg::solve(&rows, &rhs) {
            Solve::Unique(f) => Ok(f),
            Solve::Underdetermined => Err(Error::UnderdeterminedPairing(format!("{}: {what}", self.name))),
            Solve::Inconsistent => Err(bad(&self.name, format!("{what}: inconsistent integrals"))),
        }
    }

    fn validate_rules(&self) -> Result<()> {
        for r in &self.rules {
            let d = self.grading.monomial_degree(&r.lhs).expect("checked");
            match r.rhs.homogeneous_degree(&self.grading)? {
                Some(e) if e != d => {
                    return Err(bad(&self.name, format!("rule {} -> {} changes degree", r.lhs, r.rhs)))
                }
                _ => {}
            }
            for (m, _) in r.rhs.terms() {
                if self.grading.cmp(m, &r.lhs) != std::cmp::Ordering::Less {
                    return Err(bad(&self.name, format!("rule {} -> {} does not decrease the order", r.lhs, r.rhs)));
                }
            }
        }
        // Critical pairs up to the top degree.
        for (i, a) in self.rules.iter().enumerate() {
            for b in &self.rules[i + 1..] {
                let l = a.lhs.lcm(&b.lhs);
                if self.grading.monomial_degree(&l).expect("checked") > self.dim {
                    continue;
                }
                let via_a = ClassExpr::monomial(a.lhs.quotient_of(&l)).mul(&a.rhs);
                let via_b = ClassExpr::monomial(b.lhs.quotient_of(&l)).mul(&b.rhs);
                if self.reduce(&via_a)? != self.reduce(&via_b)? {
                    return Err(bad(
                        &self.name,
                        format!("rules for {} and {} are not confluent at {l}", a.lhs, b.lhs),
                    ));
                }
            }
        }
        Ok(())
    }

    /// All monomials of degree `q` in the generators.
    pub fn monomials_of_degree(&self, q: u32) -> Vec<Monomial> {
        let gens: Vec<(Generator, u32)> = self.grading.degrees.iter().map(|(g, d)| (g.clone(), *d)).collect();
        let mut out = Vec::new();
        fn rec(gens: &[(Generator, u32)], left: u32, cur: Monomial, out: &mut Vec<Monomial>) {
            let Some(((g, d), rest)) = gens.split_first() else {
                if left == 0 {
                    out.push(cur);
                }
                return;
            };
            let mut k = 0;
            while k * d <= left {
                rec(rest, left - k * d, cur.mul(&Monomial::gen(g.clone(), k)), out);
                k += 1;
            }
        }
        rec(&gens, q, Monomial::one(), &mut out);
        out
    }

    /// Monomials of degree `q` that no rule rewrites.
    pub fn normal_monomials(&self, q: u32) -> Vec<Monomial> {
        let mut v: Vec<Monomial> = self
            .monomials_of_degree(q)
            .into_iter()
            .filter(|m| !self.rules.iter().any(|r| r.lhs.divides(m)))
            .collect();
        v.sort();
        v
    }

    fn validate_bases(&self) -> Result<()> {
        for q in 0..=self.dim {
            let mut listed = self.basis(q).to_vec();
            listed.sort();
            let normal = self.normal_monomials(q);
            if listed != normal {
                let show = |v: &[Monomial]| v.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", ");
                return Err(bad(
                    &self.name,
                    format!("degree {q}: listed basis [{}] but normal monomials are [{}]", show(&listed), show(&normal)),
                ));
            }
        }
        if let Some(q) = self.bases.keys().find(|&&q| q > self.dim) {
            return Err(bad(&self.name, format!("basis listed above the top degree ({q})")));
        }
        Ok(())
    }

    fn validate_poincare(&self) -> Result<()> {
        let p = &self.poincare;
        if p.len() != self.dim as usize + 1 || p.first() != Some(&1) {
            return Err(bad(&self.name, "Poincaré polynomial must have dim+1 coefficients starting with 1"));
        }
        if p.iter().ne(p.iter().rev()) {
            return Err(bad(&self.name, "Poincaré polynomial is not palindromic"));
        }
        if self.betti() != *p {
            return Err(bad(&self.name, "Poincaré polynomial does not match the basis sizes"));
        }
        Ok(())
    }

    fn validate_star(&self) -> Result<()> {
        for q in 1..self.dim {
            for b in self.basis(q) {
                if !self.star.contains_key(b) {
                    return Err(bad(&self.name, format!("no star entry for basis monomial {b}")));
                }
            }
        }
        for (q, basis) in &self.bases {
            if *q == 0 || *q == self.dim {
                continue;
            }
            let sign = if (q * (self.dim - q)).is_multiple_of(2) { Q::one() } else { -Q::one() };
            for b in basis {
                let x = ClassExpr::monomial(b.clone());
                let s1 = self.star(&x)?;
                let s2 = self.star(&s1.class)?;
                let s = s1.scalar.mul(&s2.scalar);
                let back = s.as_rational().map(|r| s2.class.scale(r));
                if back != Some(x.scale(&sign)) {
                    return Err(bad(&self.name, format!("star of star of {b} is {s} * {}", s2.class)));
                }
            }
            let g = self.gram(*q)?;
            let unit = g.iter().flatten().find(|s| !s.is_zero()).map(ExactScalar::unit).unwrap_or_else(ExactScalar::one);
            let mut rational = Vec::new();
            for row in &g {
                let mut r = Vec::new();
                for s in row {
                    if !s.is_zero() && !s.same_monomial(&unit) {
                        return Err(bad(&self.name, format!("Gram matrix in degree {q} mixes monomials")));
                    }
                    r.push(s.coeff().clone());
                }
                rational.push(r);
            }
            if rational != linalg::transpose(&rational) {
                return Err(bad(&self.name, format!("Gram matrix in degree {q} is not symmetric")));
            }
            if !linalg::leading_minors(&rational).iter().all(|d| d.is_positive()) {
                return Err(bad(&self.name, format!("Gram matrix in degree {q} is not positive definite")));
            }
        }
        Ok(())
    }
}

pub fn reduce(x: &ClassExpr, m: &ManifoldModel) -> Result<ClassExpr> {
    m.reduce(x)
}

pub fn integrate(x: &ClassExpr, m: &ManifoldModel) -> Result<Q> {
    m.integrate(x)
}

pub fn star(x: &ClassExpr, m: &ManifoldModel) -> Result<ScaledClass> {
    m.star(x)
}

pub fn inner_product(x: &ClassExpr, y: &ClassExpr, m: &ManifoldModel) -> Result<ExactScalar> {
    m.inner_product(x, y)
}

pub fn euler_characteristic(m: &ManifoldModel) -> i64 {
    m.euler_characteristic()
}
