//! The bundled catalog: manifold models, cycle pairing tables, homology
//! relations, sphere-bundle data and stored volumes, together with the
//! Gysin rank solver and the Gauss-map pushforward formulas.

use std::fmt;
use std::sync::OnceLock;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::charring::{parse_grassmannian, ManifoldDoc, ManifoldModel};
use crate::duality::CycleClass;
use crate::error::{Error, Result};
use crate::exact::{parse_rational, rat, ExactScalar};
use crate::linalg::{Matrix, Q};
use crate::volumes::{self, SpaceDescriptor};
use crate::ClassExpr;

const DEFAULT_JSON: &str = include_str!("../catalog/default.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableDoc {
    pub manifold: String,
    pub degree: u32,
    pub rows: Vec<String>,
    pub columns: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelationDoc {
    pub name: String,
    pub manifold: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FibrationDoc {
    pub name: String,
    pub total: String,
    pub fiber_dim: u32,
    pub base: String,
    pub base_dim: u32,
    pub total_betti: Vec<u64>,
    pub euler_class_vanishes_rationally: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// `V(space) = factor * Π V(times) / Π V(over)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VolumeRelationDoc {
    pub space: String,
    pub factor: String,
    pub times: Vec<String>,
    pub over: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// `(x, y) = factor * V(volume)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GramFormulaDoc {
    pub manifold: String,
    pub x: String,
    pub y: String,
    pub factor: String,
    pub volume: String,
}

/// `∫_cycle factor * star(star_of) = density * V(volume)`: the pointwise
/// value of the form on a calibrated cycle times the cycle's volume.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RestrictionDoc {
    pub manifold: String,
    pub cycle: String,
    pub star_of: String,
    pub factor: String,
    pub density: String,
    pub volume: String,
}

/// A named class with recorded cycle integrals.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassDoc {
    pub manifold: String,
    pub name: String,
    pub class: String,
    pub integrals: IndexMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A recorded statement that is data, not computed.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactDoc {
    pub id: String,
    pub statement: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ranks: Option<Vec<u64>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct CatalogDoc {
    pub manifolds: Vec<ManifoldDoc>,
    #[serde(default)]
    pub tables: Vec<TableDoc>,
    #[serde(default)]
    pub relations: Vec<RelationDoc>,
    #[serde(default)]
    pub fibrations: Vec<FibrationDoc>,
    #[serde(default)]
    pub volumes: IndexMap<String, String>,
    #[serde(default)]
    pub volume_relations: Vec<VolumeRelationDoc>,
    #[serde(default)]
    pub gram_formulas: Vec<GramFormulaDoc>,
    #[serde(default)]
    pub restrictions: Vec<RestrictionDoc>,
    #[serde(default)]
    pub classes: Vec<ClassDoc>,
    #[serde(default)]
    pub facts: Vec<FactDoc>,
}

/// Betti numbers indexed by degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PoincarePolynomial {
    coefficients: Vec<u64>,
}

impl PoincarePolynomial {
    /// Checked constructor: palindromic with constant term 1.
    pub fn new(coefficients: Vec<u64>) -> Result<Self> {
        let p = PoincarePolynomial { coefficients };
        if p.coefficients.first() != Some(&1) {
            return Err(Error::Catalog(format!("Poincaré polynomial {p} must start with 1")));
        }
        if !p.is_palindromic() {
            return Err(Error::Catalog(format!("Poincaré polynomial {p} is not palindromic")));
        }
        Ok(p)
    }

    /// Unchecked; used for solver output, which may be zero.
    pub fn from_coefficients(mut coefficients: Vec<u64>) -> Self {
        while coefficients.len() > 1 && coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        PoincarePolynomial { coefficients }
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    pub fn is_palindromic(&self) -> bool {
        self.coefficients.iter().eq(self.coefficients.iter().rev())
    }

    /// Value at `t = -1`.
    pub fn alternating_sum(&self) -> i64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(q, &b)| if q % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    pub fn total(&self) -> u64 {
        self.coefficients.iter().sum()
    }

    fn mul(&self, other: &Self) -> Self {
        let mut c = vec![0; self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        PoincarePolynomial { coefficients: c }
    }

    /// `1 + t^step + t^{2 step} + ... + t^top`.
    fn ladder(step: usize, top: usize) -> Self {
        let mut c = vec![0; top + 1];
        for q in (0..=top).step_by(step) {
            c[q] = 1;
        }
        PoincarePolynomial { coefficients: c }
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (q, &b) in self.coefficients.iter().enumerate() {
            if b == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (q, b) {
                (0, _) => write!(f, "{b}")?,
                (_, 1) => write!(f, "t^{q}")?,
                _ => write!(f, "{b}t^{q}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// The tabulated Poincaré polynomials: `G(1,n)`, `G(2,n)`, and `G(3,6)`,
/// `G(3,7)`, `G(3,8)`, `G(4,8)` (with `G(k,n) = G(n-k,n)`).
pub fn tabulated_poincare(k: usize, n: usize) -> Option<PoincarePolynomial> {
    if k == 0 || k >= n {
        return None;
    }
    let k = k.min(n - k);
    let l = PoincarePolynomial::ladder;
    Some(match (k, n) {
        (1, _) => l(n - 1, n - 1),
        (2, _) if n % 2 == 1 => l(2, 2 * n - 4),
        (2, _) => {
            let m = n - 2;
            l(m, m).mul(&l(2, m))
        }
        (3, 6) => l(4, 4).mul(&l(5, 5)),
        (3, 7) => l(4, 8).mul(&l(4, 4)),
        (3, 8) => l(4, 8).mul(&l(7, 7)),
        (4, 8) => l(4, 8).mul(&l(4, 4)).mul(&l(4, 4)),
        _ => return None,
    })
}

/// Integrals `∫_column row` with their labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingTable {
    pub manifold: String,
    pub degree: u32,
    pub rows: Vec<ClassExpr>,
    pub columns: Vec<String>,
    pub entries: Matrix,
}

impl fmt::Display for PairingTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        let w0 = labels.iter().map(String::len).max().unwrap_or(0);
        let cells: Vec<Vec<String>> = self.entries.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(j, c)| cells.iter().map(|r| r[j].len()).chain([c.len()]).max().unwrap_or(0))
            .collect();
        write!(f, "{:w0$}", "")?;
        for (c, w) in self.columns.iter().zip(&widths) {
            write!(f, "  {c:>w$}")?;
        }
        writeln!(f)?;
        for (label, row) in labels.iter().zip(&cells) {
            write!(f, "{label:w0$}")?;
            for (x, w) in row.iter().zip(&widths) {
                write!(f, "  {x:>w$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A sphere bundle `S^m -> total -> base` for the rational Gysin solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereBundleDescriptor {
    pub fiber_dim: u32,
    pub total_betti: Vec<u64>,
    pub base_dim: u32,
    pub euler_class_vanishes_rationally: bool,
}

impl From<&FibrationDoc> for SphereBundleDescriptor {
    fn from(d: &FibrationDoc) -> Self {
        SphereBundleDescriptor {
            fiber_dim: d.fiber_dim,
            total_betti: d.total_betti.clone(),
            base_dim: d.base_dim,
            euler_class_vanishes_rationally: d.euler_class_vanishes_rationally,
        }
    }
}

/// Betti numbers of the base: the non-negative `b` with
/// `b[q] + b[q-m] = total[q]`, `b[q] = 0` outside `[0, base_dim]`.
pub fn gysin_betti_solver(d: &SphereBundleDescriptor) -> Result<PoincarePolynomial> {
    if !d.euler_class_vanishes_rationally {
        return Err(Error::Infeasible(
            "the Euler class must vanish rationally for the sequence to split".into(),
        ));
    }
    if d.fiber_dim == 0 {
        return Err(Error::Infeasible("fibre dimension must be positive".into()));
    }
    let m = d.fiber_dim as usize;
    let base = d.base_dim as usize;
    let top = d.total_betti.len().max(base + m + 1);
    let total = |q: usize| i128::from(d.total_betti.get(q).copied().unwrap_or(0));
    let mut b: Vec<i128> = Vec::with_capacity(base + 1);
    for q in 0..top {
        let below = if q >= m { b.get(q - m).copied().unwrap_or(0) } else { 0 };
        let want = total(q) - below;
        if q <= base {
            if want < 0 {
                return Err(Error::Infeasible(format!("b[{q}] would be {want}")));
            }
            b.push(want);
        } else if want != 0 {
            return Err(Error::Infeasible(format!(
                "degree {q} needs b[{q}] = {want} but the base has dimension {base}"
            )));
        }
    }
    Ok(PoincarePolynomial::from_coefficients(b.into_iter().map(|x| x as u64).collect()))
}

/// Gauss-map pushforward `g_*[M]` of a closed surface or 4-manifold.
///
/// * `G(4,8)`: `χ/2 [G(4,5)] + λ [G(1,5)] + 3/2 Sign [G(2,4)]`;
/// * `G(4,7)`, `G(4,6)` (immersions in codimension 3 or 2): the same without `λ`;
/// * `G(2,n)` (or the literal `G(2,N)`): `χ/2 [G(2,3)]`.
pub fn gauss_map_class(target: &str, chi: i64, sign: i64, lambda: &Q) -> Result<CycleClass> {
    let t: String = target.chars().filter(|c| !c.is_whitespace()).collect();
    let half_chi = rat(chi, 2);
    let surface = t == "G(2,N)" || matches!(parse_grassmannian(&t), Some((2, n)) if n >= 3);
    if surface {
        return Ok(CycleClass::from_terms([("G(2,3)".to_string(), half_chi)]));
    }
    let with_lambda = match t.as_str() {
        "G(4,8)" => true,
        "G(4,7)" | "G(4,6)" => false,
        _ => return Err(Error::UnsupportedTarget(target.to_string())),
    };
    let mut c = CycleClass::zero();
    c.add_term("G(4,5)", half_chi);
    if with_lambda {
        c.add_term("G(1,5)", lambda.clone());
    }
    c.add_term("G(2,4)", rat(3 * sign, 2));
    Ok(c)
}

/// Degree of `τ∘g`: `½ ∫ e³(normal) + ½ χ`.
pub fn tau_gauss_degree(normal_euler_cubed_integral: &Q, chi: i64) -> Q {
    (normal_euler_cubed_integral + Q::from_integer(chi.into())) / Q::from_integer(2.into())
}

#[derive(Debug)]
pub struct Catalog {
    doc: CatalogDoc,
    models: IndexMap<String, ManifoldModel>,
    volumes: IndexMap<String, ExactScalar>,
}

static DEFAULT: OnceLock<Catalog> = OnceLock::new();

impl Catalog {
    /// The catalog shipped with the crate.
    pub fn default_catalog() -> &'static Catalog {
        DEFAULT.get_or_init(|| Catalog::from_json(DEFAULT_JSON).expect("bundled catalog is valid"))
    }

    pub fn default_json() -> &'static str {
        DEFAULT_JSON
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CatalogDoc = serde_json::from_str(text).map_err(|e| Error::Catalog(e.to_string()))?;
        Self::from_doc(doc)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Catalog(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_doc(doc: CatalogDoc) -> Result<Self> {
        let mut models = IndexMap::new();
        for m in &doc.manifolds {
            let model = ManifoldModel::from_doc(m)?;
            if let Some((k, n)) = parse_grassmannian(&m.name) {
                if let Some(p) = tabulated_poincare(k, n) {
                    if p.coefficients() != model.poincare() {
                        return Err(Error::Catalog(format!("{}: Poincaré polynomial differs from the table value {p}", m.name)));
                    }
                }
            }
            if models.insert(m.name.clone(), model).is_some() {
                return Err(Error::Catalog(format!("duplicate manifold {}", m.name)));
            }
        }
        let mut volumes = IndexMap::new();
        for (name, v) in &doc.volumes {
            volumes.insert(name.clone(), v.parse::<ExactScalar>()?);
        }
        let cat = Catalog { doc, models, volumes };
        cat.validate()?;
        Ok(cat)
    }

    fn validate(&self) -> Result<()> {
        let ctx = |what: &str, e: Error| Error::Catalog(format!("{what}: {e}"));
        for t in &self.doc.tables {
            self.table_from_doc(t).map_err(|e| ctx("table", e))?;
        }
        for r in &self.doc.relations {
            self.relation_sides(r).map_err(|e| ctx(&r.name, e))?;
        }
        for f in &self.doc.fibrations {
            if f.total_betti.len() as u32 != f.base_dim + f.fiber_dim + 1 {
                return Err(Error::Catalog(format!("{}: base_dim must be the total dimension minus the fibre dimension", f.name)));
            }
            PoincarePolynomial::new(f.total_betti.clone()).map_err(|e| ctx(&f.name, e))?;
        }
        for v in &self.doc.volume_relations {
            v.factor.parse::<ExactScalar>().map_err(|e| ctx(&v.space, e))?;
            for s in std::iter::once(&v.space).chain(&v.times).chain(&v.over) {
                s.parse::<SpaceDescriptor>().map_err(|e| ctx(&v.space, e))?;
            }
        }
        for g in &self.doc.gram_formulas {
            self.model(&g.manifold)?;
            g.factor.parse::<ExactScalar>()?;
            g.x.parse::<ClassExpr>()?;
            g.y.parse::<ClassExpr>()?;
            g.volume.parse::<SpaceDescriptor>()?;
        }
        for r in &self.doc.restrictions {
            self.model(&r.manifold)?.cycle(&r.cycle)?;
            r.star_of.parse::<ClassExpr>()?;
            parse_rational(&r.factor)?;
            r.density.parse::<ExactScalar>()?;
            r.volume.parse::<SpaceDescriptor>()?;
        }
        for c in &self.doc.classes {
            let m = self.model(&c.manifold)?;
            c.class.parse::<ClassExpr>()?;
            for (cy, v) in &c.integrals {
                m.cycle(cy)?;
                parse_rational(v)?;
            }
        }
        Ok(())
    }

    pub fn doc(&self) -> &CatalogDoc {
        &self.doc
    }

    pub fn models(&self) -> impl Iterator<Item = &ManifoldModel> {
        self.models.values()
    }

    pub fn model(&self, name: &str) -> Result<&ManifoldModel> {
        let key: String = name.chars().filter(|c| !c.is_whitespace()).collect();
        self.models.get(&key).ok_or_else(|| Error::UnknownManifold(name.to_string()))
    }

    /// Volume of any descriptor, with catalog spaces looked up in the data.
    pub fn volume(&self, s: &SpaceDescriptor) -> Result<ExactScalar> {
        match s {
            SpaceDescriptor::CatalogSpace(name) => self
                .volumes
                .get(name)
                .cloned()
                .ok_or_else(|| Error::InvalidDescriptor(format!("`{name}`: no such space in the catalog"))),
            _ => volumes::standard_volume(s),
        }
    }

    pub fn catalog_volumes(&self) -> impl Iterator<Item = (&str, &ExactScalar)> {
        self.volumes.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// The model's Betti numbers if catalogued, otherwise the table formula.
    pub fn poincare_polynomial(&self, name: &str) -> Result<PoincarePolynomial> {
        if let Ok(m) = self.model(name) {
            return PoincarePolynomial::new(m.poincare().to_vec());
        }
        parse_grassmannian(name)
            .and_then(|(k, n)| tabulated_poincare(k, n))
            .ok_or_else(|| Error::UnknownManifold(name.to_string()))
    }

    fn table_from_doc(&self, t: &TableDoc) -> Result<PairingTable> {
        let m = self.model(&t.manifold)?;
        let rows = t.rows.iter().map(|r| r.parse::<ClassExpr>()).collect::<Result<Vec<_>>>()?;
        for c in &t.columns {
            if m.cycle(c)?.degree != t.degree {
                return Err(Error::Catalog(format!("{}: cycle {c} is not of degree {}", t.manifold, t.degree)));
            }
        }
        let entries = rows
            .iter()
            .map(|r| t.columns.iter().map(|c| m.cycle_integral(c, r)).collect())
            .collect::<Result<_>>()?;
        Ok(PairingTable { manifold: m.name().to_string(), degree: t.degree, rows, columns: t.columns.clone(), entries })
    }

    /// Every catalogued table for a manifold and degree.
    pub fn pairing_tables(&self, name: &str, degree: u32) -> Result<Vec<PairingTable>> {
        let m = self.model(name)?;
        self.doc
            .tables
            .iter()
            .filter(|t| t.manifold == m.name() && t.degree == degree)
            .map(|t| self.table_from_doc(t))
            .collect()
    }

    /// The first catalogued table, or else the degree's basis against all of
    /// its cycles.
    pub fn cycle_pairing_table(&self, name: &str, degree: u32) -> Result<PairingTable> {
        if let Some(t) = self.pairing_tables(name, degree)?.into_iter().next() {
            return Ok(t);
        }
        let m = self.model(name)?;
        let columns: Vec<String> = m.cycles_of_degree(degree).iter().map(|c| c.name.clone()).collect();
        if columns.is_empty() {
            return Err(Error::NoDataForDegree(m.name().to_string(), degree));
        }
        let rows = m.basis_exprs(degree);
        let entries = rows
            .iter()
            .map(|r| columns.iter().map(|c| m.cycle_integral(c, r)).collect())
            .collect::<Result<_>>()?;
        Ok(PairingTable { manifold: m.name().to_string(), degree, rows, columns, entries })
    }

    pub fn relation_names(&self) -> impl Iterator<Item = &str> {
        self.doc.relations.iter().map(|r| r.name.as_str())
    }

    fn relation_sides(&self, r: &RelationDoc) -> Result<(CycleClass, CycleClass)> {
        let m = self.model(&r.manifold)?;
        let lhs: CycleClass = r.lhs.parse()?;
        let rhs: CycleClass = r.rhs.parse()?;
        let mut degree = None;
        for n in lhs.names().chain(rhs.names()) {
            let d = m.cycle(n)?.degree;
            if *degree.get_or_insert(d) != d {
                return Err(Error::Catalog(format!("{}: mixed cycle degrees", r.name)));
            }
        }
        Ok((lhs, rhs))
    }

    fn relation_doc(&self, name: &str) -> Result<&RelationDoc> {
        self.doc
            .relations
            .iter()
            .find(|r| r.name == name)
            .ok_or_else(|| Error::UnknownRelation(name.to_string()))
    }

    /// Both sides of a catalogued homology relation.
    pub fn homology_relation(&self, name: &str) -> Result<(CycleClass, CycleClass)> {
        self.relation_sides(self.relation_doc(name)?)
    }

    /// Integrals of both sides against every basis class of the cycles'
    /// degree.
    pub fn relation_pairings(&self, name: &str) -> Result<(Vec<Q>, Vec<Q>)> {
        let r = self.relation_doc(name)?;
        let m = self.model(&r.manifold)?;
        let (lhs, rhs) = self.relation_sides(r)?;
        let Some(first) = lhs.names().chain(rhs.names()).next() else {
            return Ok((vec![], vec![]));
        };
        let q = m.cycle(first)?.degree;
        let side = |c: &CycleClass| m.basis_exprs(q).iter().map(|x| c.integral(m, x)).collect::<Result<Vec<_>>>();
        Ok((side(&lhs)?, side(&rhs)?))
    }

    pub fn fibration(&self, name: &str) -> Result<&FibrationDoc> {
        self.doc
            .fibrations
            .iter()
            .find(|f| f.name == name)
            .ok_or_else(|| Error::UnknownManifold(name.to_string()))
    }
}

/// Evaluate the right side of a volume relation.
pub fn volume_relation_value(cat: &Catalog, v: &VolumeRelationDoc) -> Result<ExactScalar> {
    let mut x: ExactScalar = v.factor.parse()?;
    for s in &v.times {
        x = x.mul(&cat.volume(&s.parse()?)?);
    }
    for s in &v.over {
        x = x.div(&cat.volume(&s.parse()?)?)?;
    }
    Ok(x)
}

/// `(expected, computed)` for a Gram formula: `factor * V` against the
/// model's inner product.
pub fn gram_formula_values(cat: &Catalog, g: &GramFormulaDoc) -> Result<(ExactScalar, ExactScalar)> {
    let m = cat.model(&g.manifold)?;
    let f: ExactScalar = g.factor.parse()?;
    let expected = f.mul(&cat.volume(&g.volume.parse()?)?);
    let computed = m.inner_product(&g.x.parse()?, &g.y.parse()?)?;
    Ok((expected, computed))
}

/// `(density * V, ∫_cycle factor * star(x))` for a calibrated restriction.
pub fn restriction_values(cat: &Catalog, r: &RestrictionDoc) -> Result<(ExactScalar, ExactScalar)> {
    let m = cat.model(&r.manifold)?;
    let density: ExactScalar = r.density.parse()?;
    let expected = density.mul(&cat.volume(&r.volume.parse()?)?);
    let s = m.star(&r.star_of.parse()?)?;
    let factor = parse_rational(&r.factor)?;
    let computed = s.scalar.scale(&(factor * m.cycle_integral(&r.cycle, &s.class)?));
    Ok((expected, computed))
}

/// Whether a positive Gram matrix exists in each degree of a model — a
/// convenience for reports.
pub fn all_grams_positive(m: &ManifoldModel) -> bool {
    m.degrees().into_iter().filter(|&q| q > 0 && q < m.dim()).all(|q| {
        crate::duality::GramMatrix::of_model(m, q).is_ok_and(|g| g.is_positive_definite())
    })
}
