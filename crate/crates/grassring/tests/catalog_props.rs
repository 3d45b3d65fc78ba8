use grassring::catalog::{gauss_map_class, gysin_betti_solver, tabulated_poincare, tau_gauss_degree, Catalog, PoincarePolynomial, SphereBundleDescriptor};
use grassring::duality::CycleClass;
use grassring::exact::int;
use grassring::{Error, ErrorKind};
use proptest::prelude::*;

fn descriptor(total: Vec<u64>, m: u32) -> SphereBundleDescriptor {
    let base_dim = total.len() as u32 - 1 - m;
    SphereBundleDescriptor { fiber_dim: m, total_betti: total, base_dim, euler_class_vanishes_rationally: true }
}

/// Palindromic base Betti vector with b0 = 1.
fn base_betti() -> impl Strategy<Value = Vec<u64>> {
    (1usize..8, prop::collection::vec(0u64..4, 8)).prop_map(|(dim, v)| {
        let mut b = vec![0u64; dim + 1];
        b[0] = 1;
        b[dim] = 1;
        for q in 1..dim {
            let lo = q.min(dim - q);
            b[q] = v[lo];
        }
        b
    })
}

proptest! {
    #[test]
    fn gysin_resums(b in base_betti(), m in 1u32..6) {
        let mu = m as usize;
        let mut total = vec![0u64; b.len() + mu];
        for (q, &v) in b.iter().enumerate() {
            total[q] += v;
            total[q + mu] += v;
        }
        let got = gysin_betti_solver(&descriptor(total.clone(), m)).unwrap();
        let c = got.coefficients();
        let mut resum = vec![0u64; total.len()];
        for (q, &v) in c.iter().enumerate() {
            resum[q] += v;
            resum[q + mu] += v;
        }
        prop_assert_eq!(resum, total);
        prop_assert_eq!(c, &b[..]);
    }

    #[test]
    fn tabulated_are_palindromic(k in 1usize..5, extra in 1usize..5) {
        if let Some(p) = tabulated_poincare(k, k + extra) {
            prop_assert!(p.is_palindromic());
            prop_assert_eq!(p.coefficients()[0], 1);
            prop_assert_eq!(p.coefficients().len() - 1, k * extra);
        }
    }

    #[test]
    fn gauss_pairs_to_invariants(chi in -20i64..40, sign in -20i64..20, lambda in -10i64..10) {
        let cat = Catalog::default_catalog();
        let m = cat.model("G(4,8)").unwrap();
        let g = gauss_map_class("G(4,8)", chi, sign, &int(lambda)).unwrap();
        let got: Vec<_> = ["e(E)", "e(F)", "p1(E)"].iter().map(|c| g.integral(m, &c.parse().unwrap()).unwrap()).collect();
        prop_assert_eq!(got, vec![int(chi), int(2 * lambda), int(3 * sign)]);
    }
}

#[test]
fn gysin_examples() {
    let assoc = gysin_betti_solver(&descriptor(vec![1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1], 2)).unwrap();
    assert_eq!(assoc.coefficients(), &[1, 0, 0, 0, 1, 0, 0, 0, 1]);
    let mut bad = descriptor(vec![1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1], 2);
    bad.euler_class_vanishes_rationally = false;
    assert!(matches!(gysin_betti_solver(&bad), Err(Error::Infeasible(_))));
    assert!(matches!(gysin_betti_solver(&descriptor(vec![1, 0, 0, 2, 0, 1], 2)), Err(Error::Infeasible(_))));
}

#[test]
fn poincare_examples() {
    let cat = Catalog::default_catalog();
    assert_eq!(cat.poincare_polynomial("G(4,8)").unwrap().to_string(), "1 + 3t^4 + 4t^8 + 3t^12 + t^16");
    assert_eq!(cat.poincare_polynomial("G(3,7)").unwrap().to_string(), "1 + 2t^4 + 2t^8 + t^12");
    for m in cat.models() {
        let p = cat.poincare_polynomial(m.name()).unwrap();
        assert!(p.is_palindromic());
        let dims: Vec<u64> = (0..=m.dim()).map(|q| m.basis(q).len() as u64).collect();
        assert_eq!(PoincarePolynomial::from_coefficients(dims).coefficients(), p.coefficients(), "{}", m.name());
    }
    assert!(PoincarePolynomial::new(vec![1, 0, 2]).is_err());
    assert_eq!(cat.poincare_polynomial("G(9,2)").unwrap_err().kind(), ErrorKind::UnknownEntity);
}

#[test]
fn relations_verify() {
    let cat = Catalog::default_catalog();
    let names: Vec<String> = cat.relation_names().map(String::from).collect();
    assert!(!names.is_empty());
    for n in names {
        let (a, b) = cat.relation_pairings(&n).unwrap();
        assert_eq!(a, b, "{n}");
    }
    let (l, r) = cat.homology_relation("G(3,7):[G(2,6)]").unwrap();
    assert_eq!((l.to_string(), r.to_string()), ("[G(2,6)]".into(), "[ASSOC] + [ASSOC~]".into()));
    assert!(matches!(cat.homology_relation("nope"), Err(Error::UnknownRelation(_))));
}

#[test]
fn gauss_examples() {
    let s = |t: &str, c, g, l| gauss_map_class(t, c, g, &int(l)).map(|c| c.to_explicit_string());
    assert_eq!(s("G(4,8)", 2, 0, 0).unwrap(), "1*[G(4,5)]");
    assert_eq!(s("G(2,N)", 0, 0, 0).unwrap(), "0");
    assert_eq!(s("G(4,8)", 24, -16, 0).unwrap(), "12*[G(4,5)] - 24*[G(2,4)]");
    assert!(matches!(s("G(5,9)", 2, 0, 0), Err(Error::UnsupportedTarget(_))));
    assert_eq!(tau_gauss_degree(&int(0), 2), int(1));
    assert_eq!(tau_gauss_degree(&int(0), 0), int(0));
    assert_eq!(tau_gauss_degree(&int(4), 2), int(3));
    let g = gauss_map_class("G(2,6)", 2, 0, &int(0)).unwrap();
    assert_eq!(g, CycleClass::cycle("G(2,3)"));
}

#[test]
fn corrupted_catalog_is_rejected() {
    let mut doc: serde_json::Value = serde_json::from_str(Catalog::default_json()).unwrap();
    doc["manifolds"][0]["poincare"] = serde_json::json!([1, 0, 2, 0, 2]);
    let err = Catalog::from_json(&doc.to_string()).unwrap_err();
    assert_eq!(err.kind(), ErrorKind::Input);
    assert!(Catalog::from_json("{").is_err());
}
