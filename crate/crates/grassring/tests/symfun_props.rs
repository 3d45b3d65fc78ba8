use grassring::exact::{int, rat};
use grassring::symfun::{
    euler_roots, expand_generators, express_in_generators, tensor_euler_roots, tensor_pontryagin_roots,
    total_pontryagin_roots, BundleRoots, RootPolynomial,
};
use grassring::{Bundle, ClassExpr, Error};
use proptest::prelude::*;

fn x(s: &str) -> ClassExpr {
    s.parse().unwrap()
}

/// Exchange the x and y variable blocks.
fn swap_blocks(p: &RootPolynomial) -> RootPolynomial {
    let (nx, ny) = p.arity();
    let mut out = RootPolynomial::zero(ny, nx);
    for (e, c) in p.terms() {
        let mut v = e[nx..].to_vec();
        v.extend_from_slice(&e[..nx]);
        out.add_term(v, c.clone());
    }
    out
}

fn generators_of(b: &BundleRoots) -> Vec<ClassExpr> {
    let mut g: Vec<ClassExpr> = (1..=b.paired_count as u32).map(|i| ClassExpr::pont(b.label, i)).collect();
    if !b.has_zero_root && b.paired_count > 0 {
        g.push(ClassExpr::euler(b.label));
    }
    g
}

/// Random polynomial in the generators of `e` and `f`, small degree.
fn random_class(e: BundleRoots, f: BundleRoots) -> impl Strategy<Value = ClassExpr> {
    let gens: Vec<ClassExpr> = generators_of(&e).into_iter().chain(generators_of(&f)).collect();
    let n = gens.len().max(1);
    prop::collection::vec((prop::collection::vec(0u32..3, n), -5i64..6), 1..4).prop_map(move |terms| {
        let mut acc = ClassExpr::zero();
        for (exps, c) in terms {
            let mono = gens.iter().zip(&exps).fold(ClassExpr::one(), |m, (g, &k)| m.mul(&g.pow(k)));
            acc = acc.add(&mono.scale(&int(c)));
        }
        acc
    })
}

fn bundles() -> impl Strategy<Value = (BundleRoots, BundleRoots)> {
    (1usize..6, 1usize..6).prop_map(|(a, b)| (BundleRoots::of_rank(Bundle::E, a), BundleRoots::of_rank(Bundle::F, b)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expand_express_round_trip((e, f, class) in bundles().prop_flat_map(|(e, f)| (Just(e), Just(f), random_class(e, f)))) {
        let roots = expand_generators(&class, &e, &f).unwrap();
        let back = express_in_generators(&roots, &e, &f).unwrap();
        prop_assert_eq!(expand_generators(&back, &e, &f).unwrap(), roots);
    }

    #[test]
    fn total_pontryagin_round_trip(rank in 1usize..9, use_f in any::<bool>()) {
        let label = if use_f { Bundle::F } else { Bundle::E };
        let b = BundleRoots::of_rank(label, rank);
        let (e, f) = if use_f { (BundleRoots::of_rank(Bundle::E, 1), b) } else { (b, BundleRoots::of_rank(Bundle::F, 1)) };
        let got = express_in_generators(&total_pontryagin_roots(&b), &e, &f).unwrap();
        let want = (1..=b.paired_count as u32).fold(ClassExpr::one(), |acc, i| acc.add(&ClassExpr::pont(label, i)));
        prop_assert_eq!(got, want);
    }

    #[test]
    fn euler_squared_is_top_pontryagin(pairs in 1usize..5) {
        let b = BundleRoots::of_rank(Bundle::E, 2 * pairs);
        let f = BundleRoots::of_rank(Bundle::F, 1);
        let sq = euler_roots(&b).unwrap().pow(2);
        let top = expand_generators(&ClassExpr::pont(Bundle::E, pairs as u32), &b, &f).unwrap();
        prop_assert_eq!(&sq, &top);
        let back = express_in_generators(&sq, &b, &f).unwrap();
        prop_assert_eq!(expand_generators(&back, &b, &f).unwrap(), top);
    }

    #[test]
    fn tensor_euler_swap_sign(a in 1usize..6, b in 1usize..6) {
        prop_assume!(a % 2 == 0 || b % 2 == 0);
        let e = BundleRoots::of_rank(Bundle::E, a);
        let f = BundleRoots::of_rank(Bundle::F, b);
        let ef = tensor_euler_roots(&e, &f).unwrap();
        let fe = swap_blocks(&tensor_euler_roots(&f, &e).unwrap());
        let sign = if (e.paired_count * f.paired_count).is_multiple_of(2) { int(1) } else { int(-1) };
        prop_assert_eq!(fe, ef.scale(&sign));
    }

    #[test]
    fn tensor_pontryagin_is_symmetric(a in 1usize..6, b in 1usize..6) {
        let e = BundleRoots::of_rank(Bundle::E, a);
        let f = BundleRoots::of_rank(Bundle::F, b);
        prop_assert_eq!(swap_blocks(&tensor_pontryagin_roots(&f, &e)), tensor_pontryagin_roots(&e, &f));
    }
}

#[test]
fn root_examples() {
    let e4 = BundleRoots::of_rank(Bundle::E, 4);
    let x1 = RootPolynomial::x(2, 0, 0);
    let x2 = RootPolynomial::x(2, 0, 1);
    let one = RootPolynomial::one(2, 0);
    let want = one.add(&x1.pow(2)).add(&x2.pow(2)).add(&x1.pow(2).mul(&x2.pow(2)));
    assert_eq!(total_pontryagin_roots(&e4), want);
    assert_eq!(total_pontryagin_roots(&BundleRoots::of_rank(Bundle::E, 1)), RootPolynomial::one(0, 0));
    assert_eq!(total_pontryagin_roots(&BundleRoots::of_rank(Bundle::E, 3)), RootPolynomial::one(1, 0).add(&RootPolynomial::x(1, 0, 0).pow(2)));

    assert_eq!(euler_roots(&e4).unwrap(), x1.mul(&x2));
    assert_eq!(euler_roots(&BundleRoots::of_rank(Bundle::F, 2)).unwrap(), RootPolynomial::y(0, 1, 0));
    assert_eq!(euler_roots(&BundleRoots::of_rank(Bundle::E, 3)), Err(Error::OddRankNoEuler));
}

#[test]
fn tensor_examples() {
    let r = |k| BundleRoots::of_rank(Bundle::E, k);
    let s = |k| BundleRoots::of_rank(Bundle::F, k);
    let (xr, y) = (RootPolynomial::x(1, 1, 0), RootPolynomial::y(1, 1, 0));
    assert_eq!(tensor_euler_roots(&r(2), &s(2)).unwrap(), xr.pow(2).sub(&y.pow(2)));

    // rank 3 ⊗ rank 4: y1 y2 (x1^2 - y1^2)(x1^2 - y2^2)
    let x1 = RootPolynomial::x(1, 2, 0);
    let (y1, y2) = (RootPolynomial::y(1, 2, 0), RootPolynomial::y(1, 2, 1));
    let want = y1.mul(&y2).mul(&x1.pow(2).sub(&y1.pow(2))).mul(&x1.pow(2).sub(&y2.pow(2)));
    assert_eq!(tensor_euler_roots(&r(3), &s(4)).unwrap(), want);
    assert_eq!(tensor_euler_roots(&r(3), &s(3)), Err(Error::OddRankNoEuler));

    let one = RootPolynomial::one(1, 1);
    let block = one.add(&xr.pow(2).add(&y.pow(2)).scale(&int(2))).add(&xr.pow(2).sub(&y.pow(2)).pow(2));
    assert_eq!(tensor_pontryagin_roots(&r(2), &s(2)), block);
    assert_eq!(tensor_pontryagin_roots(&r(2), &s(1)), RootPolynomial::one(1, 0).add(&RootPolynomial::x(1, 0, 0).pow(2)));

    // p1(T G(2k,2n)) = (2n-2k) p1(E) + 2k p1(F)
    for (k, n) in [(1u32, 2u32), (1, 3), (2, 4), (1, 4), (2, 5)] {
        let (e, f) = (r(2 * k as usize), s((2 * n - 2 * k) as usize));
        let p1 = tensor_pontryagin_roots(&e, &f).homogeneous_part(2);
        let want = x(&format!("{}*p1(E) + {}*p1(F)", 2 * n - 2 * k, 2 * k));
        assert_eq!(express_in_generators(&p1, &e, &f).unwrap(), want, "G({},{})", 2 * k, 2 * n);
    }
}

#[test]
fn express_examples() {
    let e4 = BundleRoots::of_rank(Bundle::E, 4);
    let f1 = BundleRoots::of_rank(Bundle::F, 1);
    let (x1, x2) = (RootPolynomial::x(2, 0, 0), RootPolynomial::x(2, 0, 1));
    assert_eq!(express_in_generators(&x1.pow(2).add(&x2.pow(2)), &e4, &f1).unwrap(), x("p1(E)"));
    assert_eq!(express_in_generators(&x1.mul(&x2), &e4, &f1).unwrap(), x("e(E)"));
    assert!(matches!(express_in_generators(&x1.add(&x2), &e4, &f1), Err(Error::NotExpressible(_))));
    assert!(matches!(express_in_generators(&x1.pow(2).scale(&rat(1, 2)), &e4, &f1), Err(Error::NotExpressible(_))));
}
