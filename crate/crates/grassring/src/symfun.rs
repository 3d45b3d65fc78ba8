//! Splitting principle: bundles as formal roots.
//!
//! A rank-`r` bundle is modelled by `r / 2` paired roots `x_i` (the 2-plane
//! blocks of its curvature) plus one zero root when `r` is odd. Pontrjagin
//! classes are elementary symmetric functions of the `x_i^2` and the Euler
//! class is `x_1 ... x_a`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::charring::expr::{Bundle, ClassExpr, Generator, Monomial};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BundleRoots {
    pub label: Bundle,
    pub paired_count: usize,
    pub has_zero_root: bool,
}

impl BundleRoots {
    pub fn of_rank(label: Bundle, rank: usize) -> Self {
        assert!(rank >= 1, "bundle rank must be positive");
        BundleRoots { label, paired_count: rank / 2, has_zero_root: rank % 2 == 1 }
    }

    pub fn rank(&self) -> usize {
        2 * self.paired_count + usize::from(self.has_zero_root)
    }
}

/// Rational polynomial in `x_1..x_nx, y_1..y_ny`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootPolynomial {
    nx: usize,
    ny: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl RootPolynomial {
    pub fn zero(nx: usize, ny: usize) -> Self {
        RootPolynomial { nx, ny, terms: BTreeMap::new() }
    }

    pub fn one(nx: usize, ny: usize) -> Self {
        Self::monomial(nx, ny, vec![0; nx + ny], BigRational::one())
    }

    pub fn monomial(nx: usize, ny: usize, exps: Vec<u32>, c: BigRational) -> Self {
        assert_eq!(exps.len(), nx + ny);
        let mut p = Self::zero(nx, ny);
        p.add_term(exps, c);
        p
    }

    /// The variable `x_i` (0-based).
    pub fn x(nx: usize, ny: usize, i: usize) -> Self {
        let mut v = vec![0; nx + ny];
        v[i] = 1;
        Self::monomial(nx, ny, v, BigRational::one())
    }

    /// The variable `y_a` (0-based).
    pub fn y(nx: usize, ny: usize, a: usize) -> Self {
        let mut v = vec![0; nx + ny];
        v[nx + a] = 1;
        Self::monomial(nx, ny, v, BigRational::one())
    }

    pub fn arity(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exps.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exps);
        }
    }

    /// Pad to a larger arity, keeping x's first.
    pub fn widen(&self, nx: usize, ny: usize) -> Self {
        assert!(nx >= self.nx && ny >= self.ny, "cannot narrow a root polynomial");
        let mut out = Self::zero(nx, ny);
        for (v, c) in &self.terms {
            let mut w = vec![0; nx + ny];
            w[..self.nx].copy_from_slice(&v[..self.nx]);
            w[nx..nx + self.ny].copy_from_slice(&v[self.nx..]);
            out.terms.insert(w, c.clone());
        }
        out
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let nx = self.nx.max(other.nx);
        let ny = self.ny.max(other.ny);
        (self.widen(nx, ny), other.widen(nx, ny))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.common(other);
        for (v, c) in b.terms {
            a.add_term(v, c);
        }
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let mut out = Self::zero(self.nx, self.ny);
        for (v, c) in &self.terms {
            out.add_term(v.clone(), c * q);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let mut out = Self::zero(a.nx, a.ny);
        for (v, c) in &a.terms {
            for (w, d) in &b.terms {
                let s: Vec<u32> = v.iter().zip(w).map(|(i, j)| i + j).collect();
                out.add_term(s, c * d);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nx, self.ny);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Terms of total degree `d` in the roots (cohomological degree `2d`).
    pub fn homogeneous_part(&self, d: u32) -> Self {
        let mut out = Self::zero(self.nx, self.ny);
        for (v, c) in &self.terms {
            if v.iter().sum::<u32>() == d {
                out.terms.insert(v.clone(), c.clone());
            }
        }
        out
    }
}

impl fmt::Display for RootPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (v, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, e) in v.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let name = if i < self.nx { format!("x{}", i + 1) } else { format!("y{}", i - self.nx + 1) };
                if *e == 1 {
                    write!(f, "*{name}")?;
                } else {
                    write!(f, "*{name}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Arity of a single-bundle polynomial: E roots are x's, F roots are y's.
fn arity_of(b: &BundleRoots) -> (usize, usize) {
    match b.label {
        Bundle::E => (b.paired_count, 0),
        Bundle::F => (0, b.paired_count),
    }
}

fn root(b: &BundleRoots, i: usize) -> RootPolynomial {
    let (nx, ny) = arity_of(b);
    match b.label {
        Bundle::E => RootPolynomial::x(nx, ny, i),
        Bundle::F => RootPolynomial::y(nx, ny, i),
    }
}

pub fn total_pontryagin_roots(b: &BundleRoots) -> RootPolynomial {
    let (nx, ny) = arity_of(b);
    let one = RootPolynomial::one(nx, ny);
    (0..b.paired_count).fold(one.clone(), |acc, i| acc.mul(&one.add(&root(b, i).pow(2))))
}

pub fn euler_roots(b: &BundleRoots) -> Result<RootPolynomial> {
    if b.has_zero_root {
        return Err(Error::OddRankNoEuler);
    }
    let (nx, ny) = arity_of(b);
    Ok((0..b.paired_count).fold(RootPolynomial::one(nx, ny), |acc, i| acc.mul(&root(b, i))))
}

fn pair_arity(e: &BundleRoots, f: &BundleRoots) -> (usize, usize) {
    (e.paired_count, f.paired_count)
}

/// Euler class of `E ⊗ F`. Root variables of `e` are the x's and those of
/// `f` the y's, whatever their labels.
pub fn tensor_euler_roots(e: &BundleRoots, f: &BundleRoots) -> Result<RootPolynomial> {
    if e.has_zero_root && f.has_zero_root {
        return Err(Error::OddRankNoEuler);
    }
    let (nx, ny) = pair_arity(e, f);
    let mut out = RootPolynomial::one(nx, ny);
    for i in 0..nx {
        let x2 = RootPolynomial::x(nx, ny, i).pow(2);
        for a in 0..ny {
            out = out.mul(&x2.sub(&RootPolynomial::y(nx, ny, a).pow(2)));
        }
        if f.has_zero_root {
            out = out.mul(&RootPolynomial::x(nx, ny, i));
        }
    }
    if e.has_zero_root {
        for a in 0..ny {
            out = out.mul(&RootPolynomial::y(nx, ny, a));
        }
    }
    Ok(out)
}

/// Total Pontrjagin class of `E ⊗ F`, with the same variable convention as
/// [`tensor_euler_roots`].
pub fn tensor_pontryagin_roots(e: &BundleRoots, f: &BundleRoots) -> RootPolynomial {
    let (nx, ny) = pair_arity(e, f);
    let one = RootPolynomial::one(nx, ny);
    let two = BigRational::from_integer(2.into());
    let mut out = one.clone();
    for i in 0..nx {
        let x2 = RootPolynomial::x(nx, ny, i).pow(2);
        for a in 0..ny {
            let y2 = RootPolynomial::y(nx, ny, a).pow(2);
            let block = one.add(&x2.add(&y2).scale(&two)).add(&x2.sub(&y2).pow(2));
            out = out.mul(&block);
        }
        if f.has_zero_root {
            out = out.mul(&one.add(&x2));
        }
    }
    if e.has_zero_root {
        for a in 0..ny {
            out = out.mul(&one.add(&RootPolynomial::y(nx, ny, a).pow(2)));
        }
    }
    out
}

/// Elementary symmetric polynomial `e_k` in the variables `offset..offset+n`
/// of an arity-`len` space.
fn elementary(len: usize, offset: usize, n: usize, k: usize) -> BTreeMap<Vec<u32>, BigRational> {
    let mut out = BTreeMap::new();
    fn rec(
        start: usize,
        left: usize,
        n: usize,
        offset: usize,
        cur: &mut Vec<u32>,
        out: &mut BTreeMap<Vec<u32>, BigRational>,
    ) {
        if left == 0 {
            out.insert(cur.clone(), BigRational::one());
            return;
        }
        for i in start..n {
            cur[offset + i] = 1;
            rec(i + 1, left - 1, n, offset, cur, out);
            cur[offset + i] = 0;
        }
    }
    let mut cur = vec![0; len];
    rec(0, k, n, offset, &mut cur, &mut out);
    out
}

fn poly_mul(
    a: &BTreeMap<Vec<u32>, BigRational>,
    b: &BTreeMap<Vec<u32>, BigRational>,
) -> BTreeMap<Vec<u32>, BigRational> {
    let mut out: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
    for (v, c) in a {
        for (w, d) in b {
            let s: Vec<u32> = v.iter().zip(w).map(|(i, j)| i + j).collect();
            let e = out.entry(s.clone()).or_insert_with(BigRational::zero);
            *e += c * d;
            if e.is_zero() {
                out.remove(&s);
            }
        }
    }
    out
}

fn not_expressible(p: &RootPolynomial, why: &str) -> Error {
    Error::NotExpressible(format!("{p}: {why}"))
}

/// Rewrite a root polynomial as a polynomial in `p_i(E)`, `p_j(F)`, `e(E)`,
/// `e(F)`. The x's belong to `e` and the y's to `f`.
pub fn express_in_generators(p: &RootPolynomial, e: &BundleRoots, f: &BundleRoots) -> Result<ClassExpr> {
    let (nx, ny) = pair_arity(e, f);
    if p.nx > nx || p.ny > ny {
        return Err(not_expressible(p, "more root variables than the bundles carry"));
    }
    let p = p.widen(nx, ny);
    let families = [(0, nx, e), (nx, ny, f)];

    // Invariance under permutations within each family.
    for (v, c) in &p.terms {
        for &(off, n, _) in &families {
            for i in off..off + n.saturating_sub(1) {
                let mut w = v.clone();
                w.swap(i, i + 1);
                if &p.coefficient(&w) != c {
                    return Err(not_expressible(&p, "not symmetric in the roots"));
                }
            }
        }
    }

    // Split by the parity of each family; sign invariance forces a common
    // parity, which must be even when the family has a zero root.
    let mut parts: BTreeMap<(bool, bool), BTreeMap<Vec<u32>, BigRational>> = BTreeMap::new();
    for (v, c) in &p.terms {
        let mut parity = [false; 2];
        for (slot, &(off, n, b)) in families.iter().enumerate() {
            let block = &v[off..off + n];
            let odd = block.first().map(|x| x % 2 == 1).unwrap_or(false);
            if block.iter().any(|x| (x % 2 == 1) != odd) {
                return Err(not_expressible(&p, "not invariant under sign changes of root pairs"));
            }
            if odd && b.has_zero_root {
                return Err(not_expressible(&p, "not invariant under single sign changes"));
            }
            parity[slot] = odd;
        }
        let halved: Vec<u32> = v
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let odd = if i < nx { parity[0] } else { parity[1] };
                (x - u32::from(odd)) / 2
            })
            .collect();
        parts.entry((parity[0], parity[1])).or_default().insert(halved, c.clone());
    }

    let len = nx + ny;
    let ex: Vec<_> = (0..=nx).map(|k| elementary(len, 0, nx, k)).collect();
    let ey: Vec<_> = (0..=ny).map(|k| elementary(len, nx, ny, k)).collect();
    let mut out = ClassExpr::zero();
    for ((ox, oy), mut q) in parts {
        let mut prefix = Monomial::one();
        if ox {
            prefix = prefix.mul(&Monomial::gen(Generator::Euler(e.label), 1));
        }
        if oy {
            prefix = prefix.mul(&Monomial::gen(Generator::Euler(f.label), 1));
        }
        while let Some((lead, c)) = q.iter().next_back().map(|(v, c)| (v.clone(), c.clone())) {
            let (lx, ly) = lead.split_at(nx);
            if lx.windows(2).any(|w| w[0] < w[1]) || ly.windows(2).any(|w| w[0] < w[1]) {
                return Err(not_expressible(&p, "leading term is not a partition"));
            }
            let mut m = prefix.clone();
            let mut expansion: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
            expansion.insert(vec![0; len], BigRational::one());
            for (block, es, b) in [(lx, &ex, e), (ly, &ey, f)] {
                for j in 1..=block.len() {
                    let next = block.get(j).copied().unwrap_or(0);
                    let k = block[j - 1] - next;
                    if k > 0 {
                        m = m.mul(&Monomial::gen(Generator::Pont(b.label, j as u32), k));
                        for _ in 0..k {
                            expansion = poly_mul(&expansion, &es[j]);
                        }
                    }
                }
            }
            for (v, d) in expansion {
                let entry = q.entry(v.clone()).or_insert_with(BigRational::zero);
                *entry -= &c * d;
                if entry.is_zero() {
                    q.remove(&v);
                }
            }
            out.add_term(m, c);
        }
    }
    Ok(out)
}

/// Inverse of [`express_in_generators`]: substitute root expressions for the
/// generators of `e` and `f`.
pub fn expand_generators(x: &ClassExpr, e: &BundleRoots, f: &BundleRoots) -> Result<RootPolynomial> {
    let (nx, ny) = pair_arity(e, f);
    let gen_roots = |g: &Generator| -> Result<RootPolynomial> {
        let (b, off, n) = match g {
            Generator::Pont(l, _) | Generator::Euler(l) if *l == e.label => (e, 0, nx),
            Generator::Pont(l, _) | Generator::Euler(l) if *l == f.label => (f, nx, ny),
            _ => return Err(Error::NotExpressible(format!("{g} has no root expression"))),
        };
        match g {
            Generator::Euler(_) => {
                if b.has_zero_root {
                    return Err(Error::OddRankNoEuler);
                }
                let mut v = vec![0; nx + ny];
                v[off..off + n].iter_mut().for_each(|x| *x = 1);
                Ok(RootPolynomial::monomial(nx, ny, v, BigRational::one()))
            }
            Generator::Pont(_, i) => {
                let mut out = RootPolynomial::zero(nx, ny);
                for (v, c) in elementary(nx + ny, off, n, *i as usize) {
                    out.add_term(v.iter().map(|x| 2 * x).collect(), c);
                }
                Ok(out)
            }
            Generator::Aux(_) => unreachable!(),
        }
    };
    let mut out = RootPolynomial::zero(nx, ny);
    for (m, c) in x.terms() {
        let mut t = RootPolynomial::one(nx, ny).scale(c);
        for (g, k) in m.generators() {
            t = t.mul(&gen_roots(g)?.pow(*k));
        }
        out = out.add(&t);
    }
    Ok(out)
}
