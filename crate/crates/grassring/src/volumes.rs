//! Volumes of spheres, classical groups and homogeneous spaces, with the
//! metrics induced from the matrix embeddings.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::{int, rat, ExactScalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpaceDescriptor {
    Sphere(u32),
    SO(u32),
    U(u32),
    SU(u32),
    RealGrassmann(u32, u32),
    ComplexGrassmann(u32, u32),
    Slag(u32),
    CatalogSpace(String),
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SpaceDescriptor::*;
        match self {
            Sphere(m) => write!(f, "S({m})"),
            SO(n) => write!(f, "SO({n})"),
            U(n) => write!(f, "U({n})"),
            SU(n) => write!(f, "SU({n})"),
            RealGrassmann(k, n) => write!(f, "G({k},{n})"),
            ComplexGrassmann(k, n) => write!(f, "GC({k},{n})"),
            Slag(n) => write!(f, "SLAG({n})"),
            CatalogSpace(s) => f.write_str(s),
        }
    }
}

fn invalid(s: &str, why: &str) -> Error {
    Error::InvalidDescriptor(format!("`{s}`: {why}"))
}

impl FromStr for SpaceDescriptor {
    type Err = Error;

    /// `S(m)`, `SO(n)`, `U(n)`, `SU(n)`, `G(k,n)`, `GC(k,n)` (or `G_C(k,n)`),
    /// `SLAG(n)`, or a bare catalog name such as `ASSOC`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some((head, rest)) = t.split_once('(') else {
            if !t.is_empty() && t.chars().all(|c| c.is_ascii_alphanumeric() || c == '~' || c == '_') {
                return Ok(SpaceDescriptor::CatalogSpace(t));
            }
            return Err(invalid(s, "not a space descriptor"));
        };
        let args = rest.strip_suffix(')').ok_or_else(|| invalid(s, "missing `)`"))?;
        let nums: Vec<u32> = args
            .split(',')
            .map(|a| a.parse::<u32>().map_err(|_| invalid(s, "arguments must be non-negative integers")))
            .collect::<Result<_>>()?;
        let one = |nums: &[u32]| -> Result<u32> {
            match nums {
                [n] => Ok(*n),
                _ => Err(invalid(s, "expected one argument")),
            }
        };
        let two = |nums: &[u32]| -> Result<(u32, u32)> {
            match nums {
                [k, n] => Ok((*k, *n)),
                _ => Err(invalid(s, "expected two arguments")),
            }
        };
        let d = match head {
            "S" => SpaceDescriptor::Sphere(one(&nums)?),
            "SO" => SpaceDescriptor::SO(one(&nums)?),
            "U" => SpaceDescriptor::U(one(&nums)?),
            "SU" => SpaceDescriptor::SU(one(&nums)?),
            "SLAG" => SpaceDescriptor::Slag(one(&nums)?),
            "G" => {
                let (k, n) = two(&nums)?;
                SpaceDescriptor::RealGrassmann(k, n)
            }
            "GC" | "G_C" => {
                let (k, n) = two(&nums)?;
                SpaceDescriptor::ComplexGrassmann(k, n)
            }
            _ => return Err(invalid(s, "unknown space family")),
        };
        d.validate()?;
        Ok(d)
    }
}

impl SpaceDescriptor {
    pub fn validate(&self) -> Result<()> {
        use SpaceDescriptor::*;
        let bad = |why: &str| Err(invalid(&self.to_string(), why));
        match *self {
            SO(n) | U(n) | SU(n) | Slag(n) if n == 0 => bad("n must be at least 1"),
            RealGrassmann(k, n) | ComplexGrassmann(k, n) if k == 0 || k >= n => bad("need 1 <= k <= n-1"),
            _ => Ok(()),
        }
    }
}

/// `V(S^m)` by the closed forms for odd and even dimension.
pub fn sphere(m: u32) -> ExactScalar {
    let m = i64::from(m);
    if m % 2 == 1 {
        let n = (m + 1) / 2;
        ExactScalar::pi(n).scale(&(int(2) / factorial(n - 1)))
    } else {
        let n = m / 2;
        let num = int(2).pow(2 * n as i32 + 1) * factorial(n);
        ExactScalar::pi(n).scale(&(num / factorial(2 * n)))
    }
}

fn factorial(n: i64) -> num_rational::BigRational {
    (1..=n).fold(int(1), |acc, i| acc * int(i))
}

pub fn so(n: u32) -> ExactScalar {
    if n <= 1 {
        return ExactScalar::one();
    }
    ExactScalar::sqrt2_pow(i64::from(n) - 1).mul(&sphere(n - 1)).mul(&so(n - 1))
}

pub fn u(n: u32) -> ExactScalar {
    if n <= 1 {
        return ExactScalar::pi(1).scale(&int(2));
    }
    let two = ExactScalar::rational(int(2).pow(n as i32 - 1));
    two.mul(&sphere(2 * n - 1)).mul(&u(n - 1))
}

pub fn su(n: u32) -> ExactScalar {
    if n <= 1 {
        return ExactScalar::one();
    }
    let n64 = i64::from(n);
    let two = ExactScalar::rational(int(2).pow(n as i32 - 1));
    let root = ExactScalar::sqrt_rational(&rat(n64, n64 - 1)).expect("positive");
    two.mul(&root).mul(&sphere(2 * n - 1)).mul(&su(n - 1))
}

/// `V(G(k,n))` as the ratio of sphere volumes.
pub fn grassmann(k: u32, n: u32) -> ExactScalar {
    let num = (n - k..n).fold(ExactScalar::one(), |acc, i| acc.mul(&sphere(i)));
    let den = (1..k).fold(ExactScalar::one(), |acc, i| acc.mul(&sphere(i)));
    num.div(&den).expect("sphere volumes are nonzero")
}

/// `V(G(k,n))` from the principal bundle `SO(n) -> G(k,n)`.
pub fn grassmann_via_groups(k: u32, n: u32) -> ExactScalar {
    let den = ExactScalar::sqrt2_pow(i64::from(k * (n - k))).mul(&so(k)).mul(&so(n - k));
    so(n).div(&den).expect("nonzero")
}

pub fn complex_grassmann(k: u32, n: u32) -> ExactScalar {
    u(n).div(&u(k).mul(&u(n - k))).expect("nonzero")
}

pub fn slag(n: u32) -> ExactScalar {
    su(n).div(&so(n)).expect("nonzero")
}

/// Volume of a descriptor; catalog spaces are looked up in the bundled
/// catalog.
pub fn volume(s: &SpaceDescriptor) -> Result<ExactScalar> {
    crate::catalog::Catalog::default_catalog().volume(s)
}

/// Volume of a non-catalog descriptor.
pub fn standard_volume(s: &SpaceDescriptor) -> Result<ExactScalar> {
    s.validate()?;
    use SpaceDescriptor::*;
    Ok(match *s {
        Sphere(m) => sphere(m),
        SO(n) => so(n),
        U(n) => u(n),
        SU(n) => su(n),
        RealGrassmann(k, n) => grassmann(k, n),
        ComplexGrassmann(k, n) => complex_grassmann(k, n),
        Slag(n) => slag(n),
        CatalogSpace(ref name) => return Err(invalid(name, "not a standard space")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(s: &str) -> ExactScalar {
        s.parse().unwrap()
    }

    #[test]
    fn listed_values() {
        assert_eq!(sphere(3), sc("2*pi^2"));
        assert_eq!(grassmann(3, 6), sc("2/3*pi^5"));
        assert_eq!(grassmann(2, 5), sc("8/3*pi^3"));
        assert_eq!(slag(3), sc("1/2*sqrt(6)*pi^3"));
        assert_eq!(u(2), sc("8*pi^3"));
        assert_eq!(so(3), sc("16*sqrt(2)*pi^2"));
    }

    #[test]
    fn descriptor_round_trip() {
        for s in ["S(6)", "SO(5)", "U(3)", "SU(2)", "G(3,7)", "GC(2,4)", "SLAG(3)", "ASSOC~"] {
            let d: SpaceDescriptor = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
        assert_eq!("G_C(1,3)".parse::<SpaceDescriptor>().unwrap(), SpaceDescriptor::ComplexGrassmann(1, 3));
        for bad in ["G(3,3)", "G(0,4)", "SO(0)", "X(2)", "G(2)", "S(-1)", "G(2,5"] {
            assert!(bad.parse::<SpaceDescriptor>().is_err(), "{bad}");
        }
    }
}
