//! Brute-force integer-matrix oracle shared by the lattice tests.

use grassring::duality::{smith_normal_form, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    a.iter()
        .map(|r| (0..b[0].len()).map(|j| r.iter().zip(b).map(|(x, row)| x * &row[j]).sum()).collect())
        .collect()
}

/// Cofactor expansion.
pub fn det(a: &IntMatrix) -> BigInt {
    if a.is_empty() {
        return BigInt::one();
    }
    (0..a.len())
        .map(|j| {
            let minor: IntMatrix =
                a[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect()).collect();
            let s = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            s * &a[0][j] * det(&minor)
        })
        .sum()
}

fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (0..n)
        .flat_map(|i| {
            choose(i, k - 1).into_iter().map(move |mut s| {
                s.push(i);
                s
            })
        })
        .collect()
}

/// gcd of the k×k minors, k = 1..min(rows, cols).
pub fn minor_gcds(a: &IntMatrix) -> Vec<BigInt> {
    let (r, c) = (a.len(), a[0].len());
    (1..=r.min(c))
        .map(|k| {
            let mut g = BigInt::zero();
            for rs in choose(r, k) {
                for cs in choose(c, k) {
                    let m: IntMatrix = rs.iter().map(|&i| cs.iter().map(|&j| a[i][j].clone()).collect()).collect();
                    g = g.gcd(&det(&m));
                }
            }
            g
        })
        .collect()
}

/// Every Smith-normal-form property, checked against the oracle.
pub fn check_snf(a: &IntMatrix) -> Result<(), String> {
    let (u, s, v) = smith_normal_form(a);
    if mul(&mul(&u, a), &v) != s {
        return Err("U A V != S".into());
    }
    if !det(&u).abs().is_one() || !det(&v).abs().is_one() {
        return Err("transform not unimodular".into());
    }
    for (i, row) in s.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if i != j && !x.is_zero() {
                return Err("S not diagonal".into());
            }
        }
    }
    let n = s.len().min(s[0].len());
    let d: Vec<BigInt> = (0..n).map(|i| s[i][i].clone()).collect();
    for w in d.windows(2) {
        let ok = if w[0].is_zero() { w[1].is_zero() } else { !w[0].is_negative() && w[1].is_multiple_of(&w[0]) };
        if !ok {
            return Err(format!("divisibility: {} then {}", w[0], w[1]));
        }
    }
    let mut prod = BigInt::one();
    for (i, (di, gi)) in d.iter().zip(minor_gcds(a)).enumerate() {
        prod *= di;
        if prod.abs() != gi {
            return Err(format!("d_{} = {} but minors gcd {}", i + 1, prod, gi));
        }
    }
    Ok(())
}
