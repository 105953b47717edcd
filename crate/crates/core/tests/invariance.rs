//! Invariants under rigid motions, equi-affine maps, scaling and
//! reparametrization.

use std::collections::BTreeMap;

use cuspidal::affine::{mu_a, mu_i};
use cuspidal::curve::{AffineImage, JetFn, Reparametrized, Reversed};
use cuspidal::dsl::{catalog_lookup, CurveSpec};
use cuspidal::euclid::{classify_curve, mu_g, SingularityKind};
use cuspidal::singular::Profiler;
use cuspidal::{Curve, Mat2, ProfileKind, Vec2};
use proptest::prelude::*;

fn catalog(name: &str, a: f64) -> CurveSpec {
    catalog_lookup(name, &BTreeMap::from([("a".to_string(), a)])).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn equiaffine(theta1: f64, s: f64, theta2: f64) -> Mat2 {
    Mat2::rotation(theta1) * Mat2::new(s, 0.0, 0.0, 1.0 / s) * Mat2::rotation(theta2)
}

proptest! {
    #[test]
    fn mu_g_is_rigid_and_scales(theta in 0.0..6.3f64, dx in -3.0..3.0f64, lambda in 0.2..5.0f64) {
        let c = catalog("cycloid", 1.0);
        let base = mu_g(&c.jet(0.0, 6).unwrap()).unwrap();
        let moved = AffineImage { curve: &c, matrix: Mat2::rotation(theta), offset: Vec2::new(dx, -dx) };
        prop_assert!(rel(mu_g(&moved.jet(0.0, 6).unwrap()).unwrap(), base) < 1e-12);
        let scaled = AffineImage { curve: &c, matrix: Mat2::new(lambda, 0.0, 0.0, lambda), offset: Vec2::default() };
        let got = mu_g(&scaled.jet(0.0, 6).unwrap()).unwrap();
        prop_assert!(rel(got, base / lambda.sqrt()) < 1e-12);
    }

    #[test]
    fn affine_invariants(t1 in 0.0..6.3f64, s in 0.3..3.0f64, t2 in 0.0..6.3f64) {
        let m = equiaffine(t1, s, t2);
        for name in ["cuspidal_cubic", "cycloid", "hyperbolic_cycloid"] {
            let c = catalog(name, 1.3);
            let image = AffineImage { curve: &c, matrix: m, offset: Vec2::new(1.0, 2.0) };
            let want = mu_a(&c.jet(0.0, 8).unwrap()).unwrap();
            if want != 0.0 {
                prop_assert!(rel(mu_a(&image.jet(0.0, 8).unwrap()).unwrap(), want) < 1e-9);
            }
        }
        let c = catalog("skew_cycloid", 2.0);
        let image = AffineImage { curve: &c, matrix: m, offset: Vec2::default() };
        let (want, _) = mu_i(&c.jet(0.0, 8).unwrap()).unwrap();
        prop_assert!(rel(mu_i(&image.jet(0.0, 8).unwrap()).unwrap().0, want) < 1e-9);
    }

    #[test]
    fn reparametrization_invariance(b in -0.5..0.5f64, k in 0.5..2.0f64) {
        // orientation-preserving diffeomorphism fixing 0
        let phi = JetFn(move |t: &cuspidal::Jet| Ok(&(t * k) + &(&(t * t) * b)));
        let c = catalog("cycloid", 1.0);
        let r = Reparametrized { curve: &c, phi };
        let g = r.jet(0.0, 8).unwrap();
        prop_assert!(rel(mu_g(&g).unwrap(), 1.0) < 1e-10);
        prop_assert!(rel(mu_a(&g).unwrap(), 36.0) < 1e-8);
    }
}

#[test]
fn reflection_flips_the_cusp_sign() {
    let c = catalog("cycloid", 1.0);
    let mirrored = AffineImage {
        curve: &c,
        matrix: Mat2::new(1.0, 0.0, 0.0, -1.0),
        offset: Vec2::default(),
    };
    assert_eq!(classify_curve(&c).unwrap().kind, SingularityKind::PositiveCusp);
    assert_eq!(classify_curve(&mirrored).unwrap().kind, SingularityKind::NegativeCusp);
    let g = mirrored.jet(0.0, 8).unwrap();
    assert!((mu_g(&g).unwrap() + 1.0).abs() < 1e-12);
    // the affine cuspidal curvature does not see the orientation
    assert!(rel(mu_a(&g).unwrap(), 36.0) < 1e-10);
    assert!(rel(mu_a(&Reversed(&c).jet(0.0, 8).unwrap()).unwrap(), 36.0) < 1e-10);
}

#[test]
fn evaluation_paths_agree_on_the_overlap() {
    let cases = [
        ("cuspidal_cubic", ProfileKind::EuclidCusp),
        ("cycloid", ProfileKind::EuclidCusp),
        ("hyperbolic_cycloid", ProfileKind::EuclidCusp),
        ("cycloid", ProfileKind::AffineCusp),
        ("hyperbolic_cycloid", ProfileKind::AffineCusp),
        ("cubic_graph", ProfileKind::Inflection),
        ("skew_cycloid", ProfileKind::Inflection),
    ];
    for (name, kind) in cases {
        let c = catalog(name, 1.0);
        let p = Profiler::new(&c, kind).unwrap();
        let (dt, df) = p.overlap_discrepancy().unwrap();
        assert!(dt < 1e-8 && df < 1e-8, "{name} {kind:?}: {dt:e} {df:e}");
    }
}

#[test]
fn model_profiles_are_constant() {
    let cubic = cuspidal::dsl::parse_curve("(t^2, t^3)").unwrap();
    let p = Profiler::new(&cubic, ProfileKind::AffineCusp).unwrap();
    let g = catalog("cubic_graph", 1.0);
    let q = Profiler::new(&g, ProfileKind::Inflection).unwrap();
    for tau in [-0.5, -0.2, -0.05, 0.0, 0.03, 0.3, 0.5] {
        assert!((p.f_of_tau(tau).unwrap() - 0.16).abs() < 1e-12, "{tau}");
        assert!((q.f_of_tau(tau).unwrap() + 0.3125).abs() < 1e-12, "{tau}");
    }
}

#[test]
fn profile_is_even_for_symmetric_cusps() {
    let c = catalog("cycloid", 1.0);
    let p = Profiler::new(&c, ProfileKind::EuclidCusp).unwrap();
    for tau in [0.02, 0.1, 0.4, 0.8] {
        let (a, b) = (p.f_of_tau(tau).unwrap(), p.f_of_tau(-tau).unwrap());
        assert!((a - b).abs() < 1e-12, "{tau}");
    }
}
