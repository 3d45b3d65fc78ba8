use grassring::exact::{int, ExactScalar};
use grassring::volumes::{self, SpaceDescriptor};
use proptest::prelude::*;

fn factorial(n: i64) -> num_rational::BigRational {
    (1..=n).fold(int(1), |a, i| a * int(i))
}

/// Independent oracle: `V(S^m) = 2 pi^{(m+1)/2} / Gamma((m+1)/2)` evaluated
/// through the half-integer Gamma recursion.
fn sphere_oracle(m: u32) -> ExactScalar {
    if m == 0 {
        return ExactScalar::from_int(2);
    }
    if m == 1 {
        return ExactScalar::pi(1).scale(&int(2));
    }
    sphere_oracle(m - 2).mul(&ExactScalar::pi(1).scale(&(int(2) / int(i64::from(m) - 1))))
}

#[test]
fn spheres_match_gamma_oracle() {
    for m in 0..20 {
        assert_eq!(volumes::sphere(m), sphere_oracle(m), "S({m})");
    }
}

#[test]
fn grassmann_two_planes_closed_form() {
    for n in 1..=8i64 {
        let want = ExactScalar::pi(n).scale(&(int(2).pow(n as i32 + 1) / factorial(n)));
        assert_eq!(volumes::grassmann(2, n as u32 + 2), want);
    }
}

#[test]
fn both_grassmann_forms_agree() {
    for n in 2..=9 {
        for k in 1..n {
            assert_eq!(volumes::grassmann(k, n), volumes::grassmann_via_groups(k, n), "G({k},{n})");
        }
    }
}

#[test]
fn slag_is_su_over_so() {
    for n in 2..=5 {
        assert_eq!(volumes::slag(n), volumes::su(n).div(&volumes::so(n)).unwrap());
    }
}

#[test]
fn listed_values() {
    let s = |t: &str| t.parse::<ExactScalar>().unwrap();
    for (d, v) in [
        ("G(3,6)", "2/3*pi^5"),
        ("G(3,7)", "16/45*pi^6"),
        ("G(3,8)", "2/45*pi^8"),
        ("G(4,8)", "8/135*pi^8"),
        ("SLAG(3)", "sqrt(3/2)*pi^3"),
        ("S(1)", "2*pi"),
        ("ASSOC", "6/5*pi^4"),
    ] {
        assert_eq!(volumes::volume(&d.parse().unwrap()).unwrap(), s(v), "{d}");
    }
    let su3 = volumes::volume(&SpaceDescriptor::SU(3)).unwrap();
    let so3 = volumes::volume(&SpaceDescriptor::SO(3)).unwrap();
    assert_eq!(su3.div(&so3).unwrap(), volumes::slag(3));
}

proptest! {
    #[test]
    fn positive_and_symmetric(n in 2u32..12, k in 1u32..11) {
        prop_assume!(k < n);
        let v = volumes::grassmann(k, n);
        prop_assert!(v.coeff() > &int(0));
        prop_assert_eq!(v, volumes::grassmann(n - k, n));
        prop_assert!(volumes::complex_grassmann(k, n).coeff() > &int(0));
    }

    #[test]
    fn groups_positive(n in 1u32..10) {
        for v in [volumes::so(n), volumes::u(n), volumes::su(n), volumes::sphere(n)] {
            prop_assert!(v.coeff() > &int(0));
        }
    }

    #[test]
    fn descriptor_round_trip(k in 1u32..9, extra in 1u32..9) {
        let d = SpaceDescriptor::RealGrassmann(k, k + extra);
        let back: SpaceDescriptor = d.to_string().parse().unwrap();
        prop_assert_eq!(back, d);
    }
}
