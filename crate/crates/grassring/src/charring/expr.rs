//! Polynomials in named characteristic classes.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bundle {
    E,
    F,
}

impl fmt::Display for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bundle::E => "E",
            Bundle::F => "F",
        })
    }
}

/// A ring generator. The derived order is the rewriting rank:
/// auxiliary < e(E) < e(F) < p_i(E) < p_j(F).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// A named class that is not a characteristic class (e.g. an odd-degree
    /// harmonic class of an odd-dimensional Grassmannian).
    Aux(String),
    Euler(Bundle),
    Pont(Bundle, u32),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Aux(s) => f.write_str(s),
            Generator::Euler(b) => write!(f, "e({b})"),
            Generator::Pont(b, i) => write!(f, "p{i}({b})"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let e = ClassExpr::from_str(s)?;
        let mut it = e.terms.iter();
        match (it.next(), it.next()) {
            (Some((m, c)), None) if c.is_one() && m.0.len() == 1 => {
                let (g, k) = m.0.iter().next().unwrap();
                if *k == 1 {
                    return Ok(g.clone());
                }
                Err(Error::Parse(format!("`{s}` is not a generator")))
            }
            _ => Err(Error::Parse(format!("`{s}` is not a generator"))),
        }
    }
}

/// Degrees of generators in a particular manifold.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Grading {
    pub degrees: BTreeMap<Generator, u32>,
}

impl Grading {
    pub fn degree_of(&self, g: &Generator) -> Option<u32> {
        self.degrees.get(g).copied()
    }

    pub fn monomial_degree(&self, m: &Monomial) -> Option<u32> {
        m.0.iter().map(|(g, k)| self.degree_of(g).map(|d| d * k)).sum()
    }

    /// Graded lexicographic order: degree first, then exponents compared
    /// from the highest-ranked generator down.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let da = self.monomial_degree(a).unwrap_or(u32::MAX);
        let db = self.monomial_degree(b).unwrap_or(u32::MAX);
        da.cmp(&db).then_with(|| a.cmp(b))
    }
}

/// Exponent map with no zero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(pub BTreeMap<Generator, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn gen(g: Generator, k: u32) -> Self {
        let mut m = BTreeMap::new();
        if k > 0 {
            m.insert(g, k);
        }
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, g: &Generator) -> u32 {
        self.0.get(g).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (g, k) in &other.0 {
            *out.entry(g.clone()).or_insert(0) += k;
        }
        Monomial(out)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|(g, k)| other.exponent(g) >= *k)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut out = other.0.clone();
        for (g, k) in &self.0 {
            let e = out.get_mut(g).expect("divisor");
            *e -= k;
            if *e == 0 {
                out.remove(g);
            }
        }
        Monomial(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (g, k) in &other.0 {
            let e = out.entry(g.clone()).or_insert(0);
            *e = (*e).max(*k);
        }
        Monomial(out)
    }

    pub fn generators(&self) -> impl Iterator<Item = (&Generator, &u32)> {
        self.0.iter()
    }
}

impl Ord for Monomial {
    /// Pure lexicographic comparison by generator rank (no grading).
    fn cmp(&self, other: &Self) -> Ordering {
        let mut keys: Vec<&Generator> = self.0.keys().chain(other.0.keys()).collect();
        keys.sort();
        keys.dedup();
        for g in keys.into_iter().rev() {
            match self.exponent(g).cmp(&other.exponent(g)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .rev()
            .map(|(g, k)| if *k == 1 { g.to_string() } else { format!("{g}^{k}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// A rational polynomial in generators (the `CharClassExpr` of the model).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ClassExpr {
    terms: BTreeMap<Monomial, BigRational>,
}

impl ClassExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(q: BigRational) -> Self {
        Self::term(Monomial::one(), q)
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn term(m: Monomial, q: BigRational) -> Self {
        let mut e = Self::zero();
        e.add_term(m, q);
        e
    }

    pub fn gen(g: Generator) -> Self {
        Self::term(Monomial::gen(g, 1), BigRational::one())
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, BigRational::one())
    }

    pub fn pont(b: Bundle, i: u32) -> Self {
        Self::gen(Generator::Pont(b, i))
    }

    pub fn euler(b: Bundle) -> Self {
        Self::gen(Generator::Euler(b))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, q: BigRational) {
        if q.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &ClassExpr) -> ClassExpr {
        let mut out = self.clone();
        for (m, q) in &other.terms {
            out.add_term(m.clone(), q.clone());
        }
        out
    }

    pub fn sub(&self, other: &ClassExpr) -> ClassExpr {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, q: &BigRational) -> ClassExpr {
        let mut out = ClassExpr::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * q);
        }
        out
    }

    pub fn mul(&self, other: &ClassExpr) -> ClassExpr {
        let mut out = ClassExpr::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> ClassExpr {
        let mut out = ClassExpr::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Degrees of the terms, or `None` for an unknown generator.
    pub fn degrees(&self, grading: &Grading) -> Option<Vec<u32>> {
        self.terms.keys().map(|m| grading.monomial_degree(m)).collect()
    }

    /// The common degree of all terms; zero is homogeneous of any degree and
    /// reports `None`.
    pub fn homogeneous_degree(&self, grading: &Grading) -> Result<Option<u32>> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = grading
                .monomial_degree(m)
                .ok_or_else(|| Error::UnknownGenerator(m.to_string(), "grading".into()))?;
            match deg {
                None => deg = Some(d),
                Some(x) if x == d => {}
                Some(_) => return Err(Error::NotHomogeneous(self.to_string())),
            }
        }
        Ok(deg)
    }

    /// Every generator occurring in the expression.
    pub fn generators(&self) -> Vec<Generator> {
        let mut gs: Vec<Generator> = self.terms.keys().flat_map(|m| m.0.keys().cloned()).collect();
        gs.sort();
        gs.dedup();
        gs
    }
}

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, q)) in self.terms.iter().rev().enumerate() {
            let neg = q.is_negative();
            let a = q.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for ClassExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { s: &chars, i: 0, src: s };
        let e = p.expr()?;
        if p.i != chars.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}

struct Parser<'a> {
    s: &'a [char],
    i: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at position {} in `{}`", self.i, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<ClassExpr> {
        let mut neg = false;
        if self.eat('-') {
            neg = true;
        } else {
            self.eat('+');
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.scale(&-BigRational::one());
        }
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ClassExpr> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ClassExpr> {
        let base = self.atom()?;
        if self.eat('^') {
            let k = self.number()?;
            let k: u32 = k.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.i;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected a number"));
        }
        let t: String = self.s[start..self.i].iter().collect();
        t.parse().map_err(|_| self.err("number too large"))
    }

    fn big(&mut self) -> Result<BigInt> {
        let start = self.i;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.i += 1;
        }
        let t: String = self.s[start..self.i].iter().collect();
        t.parse().map_err(|_| self.err("expected a number"))
    }

    fn bundle(&mut self) -> Result<Bundle> {
        if !self.eat('(') {
            return Err(self.err("expected `(`"));
        }
        let b = match self.peek() {
            Some('E') => Bundle::E,
            Some('F') => Bundle::F,
            _ => return Err(self.err("expected bundle E or F")),
        };
        self.i += 1;
        if !self.eat(')') {
            return Err(self.err("expected `)`"));
        }
        Ok(b)
    }

    fn atom(&mut self) -> Result<ClassExpr> {
        match self.peek() {
            Some('(') => {
                self.i += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.big()?;
                let d = if self.eat('/') { self.big()? } else { BigInt::one() };
                if d.is_zero() {
                    return Err(self.err("zero denominator"));
                }
                Ok(ClassExpr::constant(BigRational::new(n, d)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.i;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                    self.i += 1;
                }
                let word: String = self.s[start..self.i].iter().collect();
                if self.peek() == Some('(') {
                    if word == "e" {
                        return Ok(ClassExpr::euler(self.bundle()?));
                    }
                    if let Some(idx) = word.strip_prefix('p') {
                        if let Ok(i) = idx.parse::<u32>() {
                            if i == 0 {
                                return Err(self.err("Pontrjagin index must be positive"));
                            }
                            return Ok(ClassExpr::pont(self.bundle()?, i));
                        }
                    }
                    return Err(self.err("unknown class"));
                }
                Ok(ClassExpr::gen(Generator::Aux(word)))
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

pub fn expr(s: &str) -> ClassExpr {
    s.parse().unwrap_or_else(|e| panic!("bad expression `{s}`: {e}"))
}
