use grassring::catalog::Catalog;
use grassring::charring::ScaledClass;
use grassring::exact::{int, ExactScalar};
use grassring::{Bundle, ClassExpr, Error, ManifoldModel};
use proptest::prelude::*;

fn x(s: &str) -> ClassExpr {
    s.parse().unwrap()
}

fn sc(s: &str) -> ExactScalar {
    s.parse().unwrap()
}

fn model(name: &str) -> &'static ManifoldModel {
    Catalog::default_catalog().model(name).unwrap()
}

#[test]
fn reduce_examples() {
    assert_eq!(model("G(2,6)").reduce(&x("p2(F)")).unwrap(), x("e(E)^4"));
    assert_eq!(model("G(4,8)").reduce(&x("e(E)*e(F)")).unwrap(), ClassExpr::zero());
    assert_eq!(model("G(4,8)").reduce(&x("p1(E)^2")).unwrap(), x("e(E)^2 + e(F)^2"));
}

#[test]
fn integrate_examples() {
    assert_eq!(model("G(4,8)").integrate(&x("e(E)^4")).unwrap(), int(2));
    assert_eq!(model("G(4,8)").integrate(&x("e(E)^3*e(F)")).unwrap(), int(0));
    assert_eq!(model("G(2,4)").integrate(&x("e(E)^2")).unwrap(), int(2));
    assert_eq!(model("G(3,7)").integrate(&x("e(F)^3")).unwrap(), int(2));
    assert!(matches!(model("G(4,8)").integrate(&x("e(E)")), Err(Error::NotTopDegree { .. })));
}

#[test]
fn star_examples() {
    let g37 = model("G(3,7)");
    assert_eq!(g37.star(&x("p1(E)")).unwrap(), ScaledClass::new(sc("4/5*pi^2"), x("p1(E)*e(F)")));
    let g48 = model("G(4,8)");
    assert_eq!(g48.star(&x("e(E)")).unwrap(), ScaledClass::new(sc("2/15*pi^4"), x("e(E)^3")));
    let g26 = model("G(2,6)");
    let a = g26.inner_product(&x("e(E)"), &x("e(E)")).unwrap();
    assert_eq!(g26.star(&x("e(E)")).unwrap(), ScaledClass::new(a.scale(&num_rational::BigRational::new(1.into(), 2.into())), x("e(E)^3")));
    assert!(matches!(g26.star(&ClassExpr::one()), Err(Error::StarUndefined(_))));
    assert!(matches!(g26.star(&x("e(E)^4")), Err(Error::StarUndefined(_))));
}

#[test]
fn inner_product_examples() {
    assert_eq!(model("G(3,7)").inner_product(&x("p1(E)"), &x("p1(E)")).unwrap(), sc("8/5*pi^2"));
    assert_eq!(model("G(4,8)").inner_product(&x("e(E)"), &x("e(F)")).unwrap(), ExactScalar::zero());
    assert_eq!(model("G(3,6)").inner_product(&x("p1(E)"), &x("p1(E)")).unwrap(), sc("3/2*pi"));
}

#[test]
fn euler_characteristics() {
    for (m, chi) in [("G(4,8)", 12), ("G(2,6)", 6), ("G(3,6)", 0), ("G(3,8)", 0), ("G(3,7)", 6), ("G(2,5)", 4)] {
        assert_eq!(model(m).euler_characteristic(), chi, "{m}");
    }
}

#[test]
fn model_invariants() {
    for m in Catalog::default_catalog().models() {
        let n = m.dim();
        let p = m.total_pontryagin(Bundle::E).mul(&m.total_pontryagin(Bundle::F));
        assert_eq!(m.reduce(&p).unwrap(), ClassExpr::one(), "{}", m.name());
        let betti = m.betti();
        let alt: i64 = betti.iter().enumerate().map(|(q, &b)| if q % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        assert_eq!(m.euler_characteristic(), alt, "{}", m.name());
        for q in m.degrees().into_iter().filter(|&q| q > 0 && q < n) {
            let sign = if (q * (n - q)) % 2 == 0 { int(1) } else { int(-1) };
            for phi in m.basis_exprs(q) {
                let s = m.star(&phi).unwrap();
                let t = m.star(&s.class).unwrap();
                assert_eq!(
                    ScaledClass::new(s.scalar.mul(&t.scalar), t.class),
                    ScaledClass::new(ExactScalar::rational(sign.clone()), phi.clone()),
                    "{} {phi}",
                    m.name()
                );
            }
            let g = m.gram(q).unwrap();
            for i in 0..g.len() {
                for j in 0..g.len() {
                    assert_eq!(g[i][j], g[j][i]);
                }
            }
        }
    }
}

/// Random polynomial in the generators of G(4,8).
fn g48_class() -> impl Strategy<Value = ClassExpr> {
    let gens = ["e(E)", "e(F)", "p1(E)", "p1(F)", "p2(E)", "p2(F)"];
    prop::collection::vec((prop::collection::vec(0u32..3, gens.len()), -4i64..5), 1..4).prop_map(move |terms| {
        terms.into_iter().fold(ClassExpr::zero(), |acc, (exps, c)| {
            let m = gens.iter().zip(exps).fold(ClassExpr::one(), |m, (g, k)| m.mul(&x(g).pow(k)));
            acc.add(&m.scale(&int(c)))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduce_is_idempotent(c in g48_class()) {
        let m = model("G(4,8)");
        let r = m.reduce(&c).unwrap();
        prop_assert_eq!(m.reduce(&r).unwrap(), r);
    }

    #[test]
    fn reduce_is_a_ring_map(a in g48_class(), b in g48_class()) {
        let m = model("G(4,8)");
        let ra = m.reduce(&a).unwrap();
        let rb = m.reduce(&b).unwrap();
        prop_assert_eq!(m.reduce(&a.mul(&b)).unwrap(), m.reduce(&ra.mul(&rb)).unwrap());
        prop_assert_eq!(m.reduce(&a.add(&b)).unwrap(), ra.add(&rb));
    }

    #[test]
    fn integration_is_linear(i in 0usize..4, j in 0usize..4, p in -5i64..6, q in -5i64..6) {
        let m = model("G(4,8)");
        let top = m.basis_exprs(16);
        let deg8 = m.basis_exprs(8);
        let (u, v) = (&deg8[i % deg8.len()], &deg8[j % deg8.len()]);
        let lhs = m.integrate(&u.mul(v).scale(&int(p)).add(&top[0].scale(&int(q)))).unwrap();
        let rhs = m.integrate(&u.mul(v)).unwrap() * int(p) + m.integrate(&top[0]).unwrap() * int(q);
        prop_assert_eq!(lhs, rhs);
    }
}
