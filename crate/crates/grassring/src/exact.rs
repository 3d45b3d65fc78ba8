//! Exact scalars `q * sqrt(r) * pi^k`.
//!
//! Every volume, Gram entry and star coefficient handled by this crate is a
//! single such monomial, so the type is closed under `mul` and `inverse` and
//! only partially closed under `add`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `coeff * sqrt(radicand) * pi^pi_pow`, always kept in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    coeff: BigRational,
    radicand: BigUint,
    pi_pow: i64,
}

/// Parse `a`, `-a` or `a/b`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    BigRational::from_str(t).map_err(|_| Error::Parse(format!("bad rational `{t}`")))
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Split `r` into `(s, f)` with `r = s^2 * f` and `f` squarefree.
fn split_square(r: &BigUint) -> (BigUint, BigUint) {
    let mut rest = r.clone();
    let mut out = BigUint::one();
    let mut d = BigUint::from(2u32);
    while &d * &d <= rest {
        let sq = &d * &d;
        while (&rest % &sq).is_zero() {
            rest /= &sq;
            out *= &d;
        }
        d += 1u32;
    }
    (out, rest)
}

impl ExactScalar {
    /// Canonical form of `coeff * sqrt(radicand) * pi^pi_pow`.
    /// A zero radicand is treated as the value zero.
    pub fn normalize(coeff: BigRational, radicand: BigUint, pi_pow: i64) -> Self {
        if coeff.is_zero() || radicand.is_zero() {
            return Self::zero();
        }
        let (s, f) = split_square(&radicand);
        ExactScalar {
            coeff: coeff * BigRational::from_integer(BigInt::from(s)),
            radicand: f,
            pi_pow,
        }
    }

    pub fn zero() -> Self {
        ExactScalar { coeff: BigRational::zero(), radicand: BigUint::one(), pi_pow: 0 }
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(q: BigRational) -> Self {
        Self::normalize(q, BigUint::one(), 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(int(n))
    }

    /// `pi^k`.
    pub fn pi(k: i64) -> Self {
        Self::normalize(BigRational::one(), BigUint::one(), k)
    }

    /// `sqrt(n)` for a non-negative integer `n`.
    pub fn sqrt(n: u64) -> Self {
        Self::normalize(BigRational::one(), BigUint::from(n), 0)
    }

    /// `sqrt(q)` for a non-negative rational: `sqrt(a/b) = sqrt(ab)/b`.
    pub fn sqrt_rational(q: &BigRational) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::Parse(format!("square root of negative {q}")));
        }
        let (n, d) = (q.numer().clone(), q.denom().clone());
        let prod = (n * &d).to_biguint().expect("non-negative");
        Ok(Self::normalize(
            BigRational::new(BigInt::one(), d),
            prod,
            0,
        ))
    }

    /// `2^(e/2)`, the half-integer powers of two in the Lie-group volumes.
    pub fn sqrt2_pow(e: i64) -> Self {
        let half = num_integer::Integer::div_floor(&e, &2);
        let base = if half >= 0 {
            int(1 << half)
        } else {
            rat(1, 1 << (-half))
        };
        let r = if e.is_odd() { 2u32 } else { 1 };
        Self::normalize(base, BigUint::from(r), 0)
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }
    pub fn radicand(&self) -> &BigUint {
        &self.radicand
    }
    pub fn pi_pow(&self) -> i64 {
        self.pi_pow
    }
    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// Rational value, if the scalar has no radical and no pi.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.is_zero() || (self.radicand.is_one() && self.pi_pow == 0) {
            Some(&self.coeff)
        } else {
            None
        }
    }

    /// The unit monomial `sqrt(r) * pi^k` carried by this value.
    pub fn unit(&self) -> ExactScalar {
        if self.is_zero() {
            return Self::one();
        }
        ExactScalar { coeff: BigRational::one(), radicand: self.radicand.clone(), pi_pow: self.pi_pow }
    }

    pub fn same_monomial(&self, other: &ExactScalar) -> bool {
        self.radicand == other.radicand && self.pi_pow == other.pi_pow
    }

    pub fn mul(&self, other: &ExactScalar) -> ExactScalar {
        Self::normalize(
            &self.coeff * &other.coeff,
            &self.radicand * &other.radicand,
            self.pi_pow + other.pi_pow,
        )
    }

    pub fn scale(&self, q: &BigRational) -> ExactScalar {
        Self::normalize(&self.coeff * q, self.radicand.clone(), self.pi_pow)
    }

    pub fn neg(&self) -> ExactScalar {
        self.scale(&-BigRational::one())
    }

    pub fn add(&self, other: &ExactScalar) -> Result<ExactScalar> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if !self.same_monomial(other) {
            return Err(Error::IncompatibleMonomials(self.to_string(), other.to_string()));
        }
        Ok(Self::normalize(&self.coeff + &other.coeff, self.radicand.clone(), self.pi_pow))
    }

    pub fn sub(&self, other: &ExactScalar) -> Result<ExactScalar> {
        self.add(&other.neg())
    }

    pub fn inverse(&self) -> Result<ExactScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let r = BigRational::from_integer(BigInt::from(self.radicand.clone()));
        Ok(Self::normalize(
            BigRational::one() / (&self.coeff * r),
            self.radicand.clone(),
            -self.pi_pow,
        ))
    }

    pub fn div(&self, other: &ExactScalar) -> Result<ExactScalar> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn pow(&self, e: i64) -> Result<ExactScalar> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    /// Floating-point approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        let q = self.coeff.numer().to_f64().unwrap_or(f64::NAN)
            / self.coeff.denom().to_f64().unwrap_or(f64::NAN);
        q * self.radicand.to_f64().unwrap_or(f64::NAN).sqrt() * std::f64::consts::PI.powi(self.pi_pow as i32)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}", self.coeff)?;
        if !self.radicand.is_one() {
            write!(f, " * sqrt({})", self.radicand)?;
        }
        match self.pi_pow {
            0 => {}
            1 => write!(f, " * pi")?,
            k => write!(f, " * pi^{k}")?,
        }
        Ok(())
    }
}

impl FromStr for ExactScalar {
    type Err = Error;

    /// Accepts a `*`-separated product of rationals, `sqrt(..)` of a
    /// non-negative rational, `pi` and `pi^k`; each factor may carry a sign.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let mut acc = ExactScalar::one();
        for raw in s.split('*') {
            let mut tok = raw.trim();
            let mut sign = 1;
            while let Some(rest) = tok.strip_prefix('-') {
                sign = -sign;
                tok = rest.trim_start();
            }
            if let Some(rest) = tok.strip_prefix('+') {
                tok = rest.trim_start();
            }
            let factor = if let Some(inner) = tok.strip_prefix("sqrt(").and_then(|t| t.strip_suffix(')')) {
                ExactScalar::sqrt_rational(&parse_rational(inner)?)?
            } else if tok == "pi" {
                ExactScalar::pi(1)
            } else if let Some(e) = tok.strip_prefix("pi^") {
                let e = e.trim().trim_start_matches('(').trim_end_matches(')');
                let k: i64 = e.trim().parse().map_err(|_| Error::Parse(format!("bad pi exponent `{e}`")))?;
                ExactScalar::pi(k)
            } else if tok.is_empty() {
                return Err(Error::Parse(format!("empty factor in `{s}`")));
            } else {
                ExactScalar::rational(parse_rational(tok)?)
            };
            acc = acc.mul(&factor);
            if sign < 0 {
                acc = acc.neg();
            }
        }
        Ok(acc)
    }
}
