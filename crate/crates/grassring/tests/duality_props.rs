use grassring::catalog::Catalog;
use grassring::duality::{
    combine, integral_dual_basis, lattice_index, model_dual_basis, poincare_dual, smith_normal_form, CycleClass,
    IntMatrix,
};
use grassring::exact::{int, rat};
use grassring::linalg::{self, Matrix};
use grassring::{ClassExpr, Error};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

mod common;

fn x(s: &str) -> ClassExpr {
    s.parse().unwrap()
}

fn im(rows: &[&[i64]]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

fn qm(rows: &[&[i64]]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
}

fn check_snf(a: &IntMatrix) -> Result<(), TestCaseError> {
    common::check_snf(a).map_err(TestCaseError::fail)?;
    let (_, s, _) = smith_normal_form(a);
    if a.len() == a[0].len() {
        let prod = (0..s.len()).fold(BigInt::one(), |p, i| p * &s[i][i]);
        prop_assert_eq!(prod, common::det(a).abs());
    }
    Ok(())
}

proptest! {
    #[test]
    fn snf_random_square(rows in prop::collection::vec(prop::collection::vec(-9i64..=9, 4), 4)) {
        let a: IntMatrix = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        check_snf(&a)?;
    }

    #[test]
    fn snf_random_rect(r in 1usize..5, c in 1usize..5, seed in prop::collection::vec(-6i64..=6, 16)) {
        let a: IntMatrix = (0..r).map(|i| (0..c).map(|j| BigInt::from(seed[i * 4 + j])).collect()).collect();
        check_snf(&a)?;
    }

    #[test]
    fn integral_dual_inverts(rows in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 3)) {
        let p: Matrix = rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
        match integral_dual_basis(&p) {
            Ok(d) => {
                prop_assert_eq!(linalg::mat_mul(&d.coefficients, &p), linalg::identity(3));
                prop_assert_eq!(lattice_index(&p).unwrap(), linalg::det(&p).abs());
            }
            Err(e) => {
                prop_assert_eq!(e, Error::SingularPairing);
                prop_assert!(linalg::det(&p).is_zero());
            }
        }
    }

    #[test]
    fn cycle_class_text_round_trips(a in -6i64..7, b in -6i64..7, d in 1i64..4) {
        let c = CycleClass::from_terms([("CP^2".to_string(), rat(a, d)), ("G(2,4)".to_string(), int(b))]);
        let back: CycleClass = c.to_string().parse().unwrap();
        prop_assert_eq!(&back, &c);
        let back: CycleClass = c.to_explicit_string().parse().unwrap();
        prop_assert_eq!(back, c);
    }
}

#[test]
fn snf_examples() {
    let (u, s, v) = smith_normal_form(&im(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
    assert_eq!((u, s, v.clone()), (v.clone(), v.clone(), v));
    assert_eq!(smith_normal_form(&im(&[&[0, 1, 0], &[1, 0, 0], &[1, -1, 2]])).1, im(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]));
    assert_eq!(smith_normal_form(&im(&[&[2, 0], &[0, 3]])).1, im(&[&[1, 0], &[0, 6]]));
}

#[test]
fn integral_dual_examples() {
    // rows e(E), e(F), p1(E); columns CP^2, *CP^2, G(2,4)
    let p = qm(&[&[0, 1, 0], &[1, 0, 0], &[1, -1, 2]]);
    let classes = [x("e(E)"), x("e(F)"), x("p1(E)")];
    let d = integral_dual_basis(&p).unwrap();
    assert_eq!(combine(&classes, &d.coefficients), vec![x("e(F)"), x("e(E)"), x("1/2*(p1(E) + e(E) - e(F))")]);
    assert!(d.half_integral && !d.integral);
    assert_eq!(lattice_index(&p).unwrap(), int(2));
    assert_eq!(integral_dual_basis(&linalg::identity(3)).unwrap().coefficients, linalg::identity(3));
    assert_eq!(lattice_index(&linalg::identity(3)).unwrap(), int(1));
    for n in [2i64, 3] {
        let s = if n % 2 == 0 { 1 } else { -1 };
        let p = qm(&[&[s, s], &[1, -1]]);
        let d = integral_dual_basis(&p).unwrap();
        let e = [x(&format!("e(E)^{n}")), x("e(F)")];
        let want = vec![
            x(&format!("1/2*({s}*e(E)^{n} + e(F))")),
            x(&format!("1/2*({s}*e(E)^{n} - e(F))")),
        ];
        assert_eq!(combine(&e, &d.coefficients), want);
        assert_eq!(lattice_index(&p).unwrap(), int(2));
    }
    assert_eq!(integral_dual_basis(&qm(&[&[1, 2], &[2, 4]])).unwrap_err(), Error::SingularPairing);
}

#[test]
fn dual_bases_are_dual() {
    for m in Catalog::default_catalog().models() {
        let n = m.dim();
        for q in m.degrees().into_iter().filter(|&q| q > 0 && q < n) {
            let psi = model_dual_basis(m, q).unwrap();
            for (i, phi) in m.basis_exprs(q).iter().enumerate() {
                for (j, p) in psi.iter().enumerate() {
                    let want = if i == j { int(1) } else { int(0) };
                    assert_eq!(m.integrate(&phi.mul(p)).unwrap(), want, "{} H{q}", m.name());
                }
            }
        }
    }
}

#[test]
fn poincare_dual_examples() {
    let cat = Catalog::default_catalog();
    let g48 = cat.model("G(4,8)").unwrap();
    assert_eq!(poincare_dual(&x("e(E)"), g48).unwrap(), CycleClass::cycle("G(4,7)"));
    assert_eq!(poincare_dual(&x("1/2*(e(F)^2 + p1(E)*e(F))"), g48).unwrap(), CycleClass::cycle("ASSOC"));
    assert!(poincare_dual(&ClassExpr::zero(), g48).unwrap().is_zero());
    let g37 = cat.model("G(3,7)").unwrap();
    assert_eq!(poincare_dual(&x("1/2*p1(E) + 1/2*e(F)"), g37).unwrap().to_string(), "[ASSOC]");
}
