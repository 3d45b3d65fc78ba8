//! Poincaré duality against named cycles, harmonic dual bases, and the
//! integer-lattice tools (Smith normal form, dual bases of pairing
//! matrices) used to decide which classes generate integral cohomology.

use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::charring::{ManifoldModel, ScaledClass};
use crate::error::{Error, Result};
use crate::exact::{parse_rational, ExactScalar};
use crate::linalg::{self, Matrix, Solve, Q};
use crate::ClassExpr;

/// A rational combination of named cycles.  Equality ignores the order in
/// which terms were added.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycleClass {
    combination: IndexMap<String, Q>,
}

impl CycleClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn cycle(name: &str) -> Self {
        Self::from_terms([(name.to_string(), Q::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (String, Q)>>(terms: I) -> Self {
        let mut c = Self::zero();
        for (n, q) in terms {
            c.add_term(&n, q);
        }
        c
    }

    pub fn add_term(&mut self, name: &str, q: Q) {
        let v = self.combination.entry(name.to_string()).or_insert_with(Q::zero);
        *v += q;
        if v.is_zero() {
            self.combination.shift_remove(name);
        }
    }

    pub fn add(&self, other: &CycleClass) -> CycleClass {
        let mut out = self.clone();
        for (n, q) in &other.combination {
            out.add_term(n, q.clone());
        }
        out
    }

    pub fn scale(&self, q: &Q) -> CycleClass {
        Self::from_terms(self.combination.iter().map(|(n, c)| (n.clone(), c * q)))
    }

    pub fn is_zero(&self) -> bool {
        self.combination.is_empty()
    }

    pub fn coefficient(&self, name: &str) -> Q {
        self.combination.get(name).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&str, &Q)> {
        self.combination.iter().map(|(n, q)| (n.as_str(), q))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.combination.keys().map(String::as_str)
    }

    /// `∫_T x` for `T = self`.
    pub fn integral(&self, m: &ManifoldModel, x: &ClassExpr) -> Result<Q> {
        let mut s = Q::zero();
        for (n, q) in &self.combination {
            s += q * m.cycle_integral(n, x)?;
        }
        Ok(s)
    }

    /// Rendering that keeps unit coefficients, e.g. `1*[G(4,5)]`.
    pub fn to_explicit_string(&self) -> String {
        self.render(true)
    }

    fn render(&self, explicit: bool) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (n, q)) in self.combination.iter().enumerate() {
            let a = q.abs();
            if i == 0 {
                if q.is_negative() {
                    s.push('-');
                }
            } else {
                s.push_str(if q.is_negative() { " - " } else { " + " });
            }
            if explicit || !a.is_one() {
                s.push_str(&format!("{a}*"));
            }
            s.push_str(&format!("[{n}]"));
        }
        s
    }
}

impl fmt::Display for CycleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl FromStr for CycleClass {
    type Err = Error;

    /// `[coef*][name] (+|-) ...`, or `0`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("cycle class `{s}`: {why}"));
        let t = s.trim();
        if t == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        let mut rest = t;
        let mut first = true;
        while !rest.is_empty() {
            rest = rest.trim_start();
            let mut sign = Q::one();
            if let Some(r) = rest.strip_prefix('-') {
                sign = -sign;
                rest = r.trim_start();
            } else if let Some(r) = rest.strip_prefix('+') {
                if first {
                    return Err(bad("leading `+`"));
                }
                rest = r.trim_start();
            } else if !first {
                return Err(bad("expected `+` or `-` between terms"));
            }
            let open = rest.find('[').ok_or_else(|| bad("missing `[`"))?;
            let coef = rest[..open].trim();
            let coef = if coef.is_empty() {
                Q::one()
            } else {
                let c = coef.strip_suffix('*').ok_or_else(|| bad("coefficient must be followed by `*`"))?;
                parse_rational(c.trim())?
            };
            let close = rest[open..].find(']').ok_or_else(|| bad("missing `]`"))? + open;
            let name = &rest[open + 1..close];
            if name.is_empty() {
                return Err(bad("empty cycle name"));
            }
            out.add_term(name, sign * coef);
            rest = &rest[close + 1..];
            first = false;
        }
        if first {
            return Err(bad("empty"));
        }
        Ok(out)
    }
}

/// Inner products `(φ_i, φ_j)` of a basis, all carrying one scalar monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    entries: Vec<Vec<ExactScalar>>,
    basis: Vec<ClassExpr>,
}

impl GramMatrix {
    pub fn new(entries: Vec<Vec<ExactScalar>>, basis: Vec<ClassExpr>) -> Result<Self> {
        let n = basis.len();
        if entries.len() != n || entries.iter().any(|r| r.len() != n) {
            return Err(Error::Catalog("Gram matrix shape does not match its basis".into()));
        }
        let g = GramMatrix { entries, basis };
        g.split()?;
        for i in 0..n {
            for j in 0..i {
                if g.entries[i][j] != g.entries[j][i] {
                    return Err(Error::Catalog(format!("Gram matrix is not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(g)
    }

    /// Gram matrix of the model's degree-`q` basis.
    pub fn of_model(m: &ManifoldModel, q: u32) -> Result<Self> {
        Self::new(m.gram(q)?, m.basis_exprs(q))
    }

    /// Gram matrix of an arbitrary list of same-degree classes.
    pub fn of_classes(m: &ManifoldModel, basis: Vec<ClassExpr>) -> Result<Self> {
        let entries = basis
            .iter()
            .map(|x| basis.iter().map(|y| m.inner_product(x, y)).collect())
            .collect::<Result<_>>()?;
        Self::new(entries, basis)
    }

    pub fn entries(&self) -> &[Vec<ExactScalar>] {
        &self.entries
    }

    pub fn basis(&self) -> &[ClassExpr] {
        &self.basis
    }

    /// `(unit, R)` with `A = unit * R`, `R` rational.
    pub fn split(&self) -> Result<(ExactScalar, Matrix)> {
        let unit = self
            .entries
            .iter()
            .flatten()
            .find(|x| !x.is_zero())
            .map(ExactScalar::unit)
            .unwrap_or_else(ExactScalar::one);
        let mut r = Matrix::new();
        for row in &self.entries {
            let mut out = Vec::new();
            for x in row {
                if !x.is_zero() && !x.same_monomial(&unit) {
                    return Err(Error::IncompatibleMonomials(unit.to_string(), x.to_string()));
                }
                out.push(x.coeff().clone());
            }
            r.push(out);
        }
        Ok((unit, r))
    }

    pub fn is_positive_definite(&self) -> bool {
        self.split().is_ok_and(|(_, r)| linalg::leading_minors(&r).iter().all(|d| d.is_positive()))
    }

    /// `A⁻¹` as `(unit⁻¹, R⁻¹)`.
    pub fn inverse(&self) -> Result<(ExactScalar, Matrix)> {
        let (unit, r) = self.split()?;
        let inv = linalg::inverse(&r).ok_or(Error::SingularGram)?;
        Ok((unit.inverse()?, inv))
    }
}

/// `ψ_j = Σ_l *φ_l (A⁻¹)_{lj}`: the basis dual to `g.basis()` under `∫ φ ∧ ψ`.
pub fn dual_basis(g: &GramMatrix, star_images: &[ScaledClass]) -> Result<Vec<ScaledClass>> {
    let n = g.basis.len();
    if star_images.len() != n {
        return Err(Error::Catalog("one star image per basis class is required".into()));
    }
    let (unit_inv, inv) = g.inverse()?;
    (0..n)
        .map(|j| {
            let parts: Vec<ScaledClass> = (0..n)
                .map(|l| star_images[l].scale(&unit_inv.scale(&inv[l][j])))
                .collect();
            ScaledClass::sum(&parts)
        })
        .collect()
}

/// Dual basis of the model's degree-`q` basis, as plain classes.
pub fn model_dual_basis(m: &ManifoldModel, q: u32) -> Result<Vec<ClassExpr>> {
    let g = GramMatrix::of_model(m, q)?;
    let stars = g.basis.iter().map(|x| m.star(x)).collect::<Result<Vec<_>>>()?;
    dual_basis(&g, &stars)?
        .iter()
        .map(|s| {
            s.as_class()
                .ok_or_else(|| Error::Catalog(format!("{}: dual class {s} is not rational", m.name())))
        })
        .collect()
}

/// The cycle combination `T` with `∫_T η = ∫ x ∧ η` for every `η` of the
/// complementary degree, written in the generator cycles of that degree.
pub fn poincare_dual(x: &ClassExpr, m: &ManifoldModel) -> Result<CycleClass> {
    let r = m.reduce(x)?;
    if r.is_zero() {
        return Ok(CycleClass::zero());
    }
    let q = m.degree(&r)?;
    let p = m.dim() - q;
    let gens: Vec<_> = m.cycles_of_degree(p).into_iter().filter(|c| c.generator).collect();
    let etas = m.basis_exprs(p);
    let a: Matrix = etas
        .iter()
        .map(|eta| gens.iter().map(|c| m.cycle_integral(&c.name, eta)).collect())
        .collect::<Result<_>>()?;
    let b = etas.iter().map(|eta| m.integrate(&r.mul(eta))).collect::<Result<Vec<_>>>()?;
    let undetermined = || {
        Error::UnderdeterminedPairing(format!("{}: generator cycles of degree {p} do not determine the dual of {x}", m.name()))
    };
    if gens.is_empty() {
        return Err(undetermined());
    }
    match linalg::solve(&a, &b) {
        Solve::Unique(v) => Ok(CycleClass::from_terms(gens.iter().map(|c| c.name.clone()).zip(v))),
        Solve::Underdetermined | Solve::Inconsistent => Err(undetermined()),
    }
}

pub type IntMatrix = Vec<Vec<BigInt>>;

fn int_identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// `(U, S, V)` with `U·a·V = S`, `U`, `V` unimodular and `S` diagonal with
/// each diagonal entry dividing the next.
pub fn smith_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut s = a.clone();
    let mut u = int_identity(rows);
    let mut v = int_identity(cols);

    fn row_axpy(m: &mut IntMatrix, dst: usize, src: usize, f: &BigInt) {
        for j in 0..m[dst].len() {
            let d = f * &m[src][j];
            m[dst][j] -= d;
        }
    }
    fn col_axpy(m: &mut IntMatrix, dst: usize, src: usize, f: &BigInt) {
        for row in m.iter_mut() {
            let d = f * &row[src];
            row[dst] -= d;
        }
    }
    fn swap_cols(m: &mut IntMatrix, i: usize, j: usize) {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
    }

    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !s[i][j].is_zero())
                .min_by_key(|&(i, j)| s[i][j].abs());
            let Some((pi, pj)) = pivot else {
                return (u, s, v);
            };
            s.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut s, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let f = s[i][t].div_floor(&s[t][t]);
                if !f.is_zero() {
                    row_axpy(&mut s, i, t, &f);
                    row_axpy(&mut u, i, t, &f);
                }
                clean &= s[i][t].is_zero();
            }
            for j in t + 1..cols {
                let f = s[t][j].div_floor(&s[t][t]);
                if !f.is_zero() {
                    col_axpy(&mut s, j, t, &f);
                    col_axpy(&mut v, j, t, &f);
                }
                clean &= s[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row.
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s[i][j].is_multiple_of(&s[t][t])));
            match bad {
                Some(i) => {
                    let m1 = -BigInt::one();
                    row_axpy(&mut s, t, i, &m1);
                    row_axpy(&mut u, t, i, &m1);
                }
                None => break,
            }
        }
        if s[t][t].is_negative() {
            for x in s[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    (u, s, v)
}

/// Rational matrix to integer matrix, if every entry is integral.
pub fn to_int_matrix(p: &Matrix) -> Option<IntMatrix> {
    p.iter()
        .map(|r| r.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect())
        .collect()
}

/// `C` with `C·p = I`, for a pairing matrix `p` (rows = classes, columns =
/// cycles, entries `∫_cycle class`).  Row `i` of `C` combines the classes
/// into the class dual to cycle `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralDual {
    pub coefficients: Matrix,
    /// Every entry is an integer.
    pub integral: bool,
    /// Every denominator divides 2.
    pub half_integral: bool,
}

pub fn integral_dual_basis(p: &Matrix) -> Result<IntegralDual> {
    let n = p.len();
    if p.iter().any(|r| r.len() != n) {
        return Err(Error::SingularPairing);
    }
    let c = linalg::inverse(p).ok_or(Error::SingularPairing)?;
    let two = BigInt::from(2);
    let integral = c.iter().flatten().all(|x| x.is_integer());
    let half_integral = c.iter().flatten().all(|x| two.is_multiple_of(x.denom()));
    Ok(IntegralDual { coefficients: c, integral, half_integral })
}

/// `|det p|`: the index of the class lattice in the dual of the cycle lattice.
pub fn lattice_index(p: &Matrix) -> Result<Q> {
    let n = p.len();
    if p.iter().any(|r| r.len() != n) {
        return Err(Error::SingularPairing);
    }
    let d = linalg::det(p);
    if d.is_zero() {
        return Err(Error::SingularPairing);
    }
    Ok(d.abs())
}

/// Combine classes with the rows of a coefficient matrix.
pub fn combine(classes: &[ClassExpr], coefficients: &Matrix) -> Vec<ClassExpr> {
    coefficients
        .iter()
        .map(|row| {
            row.iter()
                .zip(classes)
                .fold(ClassExpr::zero(), |acc, (c, x)| acc.add(&x.scale(c)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn im(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn diag(s: &IntMatrix) -> Vec<BigInt> {
        (0..s.len().min(s[0].len())).map(|i| s[i][i].clone()).collect()
    }

    #[test]
    fn cycle_class_text() {
        let c: CycleClass = "2*[CP^1] - [G(2,4)]".parse().unwrap();
        assert_eq!(c.coefficient("CP^1"), int(2));
        assert_eq!(c.to_string(), "2*[CP^1] - [G(2,4)]");
        assert_eq!(CycleClass::cycle("G(4,5)").to_explicit_string(), "1*[G(4,5)]");
        assert_eq!("-1/2*[A] + [B]".parse::<CycleClass>().unwrap().to_string(), "-1/2*[A] + [B]");
        assert_eq!("0".parse::<CycleClass>().unwrap(), CycleClass::zero());
        let a: CycleClass = "[A] + [B]".parse().unwrap();
        let b: CycleClass = "[B] + [A]".parse().unwrap();
        assert_eq!(a, b);
        assert!("[A] [B]".parse::<CycleClass>().is_err());
        assert!("2[A]".parse::<CycleClass>().is_err());
    }

    #[test]
    fn snf_examples() {
        let (_, s, _) = smith_normal_form(&im(&[&[0, 1, 0], &[1, 0, 0], &[1, -1, 2]]));
        assert_eq!(diag(&s), vec![BigInt::from(1), BigInt::from(1), BigInt::from(2)]);
        let (_, s, _) = smith_normal_form(&im(&[&[2, 0], &[0, 3]]));
        assert_eq!(diag(&s), vec![BigInt::from(1), BigInt::from(6)]);
        let i3 = int_identity(3);
        assert_eq!(smith_normal_form(&i3), (i3.clone(), i3.clone(), i3));
    }

    #[test]
    fn integral_dual_of_half_table() {
        let p = vec![vec![int(1), int(1)], vec![int(1), int(-1)]];
        let d = integral_dual_basis(&p).unwrap();
        assert!(!d.integral && d.half_integral);
        assert_eq!(d.coefficients[0], vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(lattice_index(&p).unwrap(), int(2));
        assert_eq!(integral_dual_basis(&vec![vec![int(1), int(2)], vec![int(2), int(4)]]), Err(Error::SingularPairing));
    }
}
