use std::rc::Rc;

use cuspidal::curve::ExprFn;
use cuspidal::euclid::{classify_curve, SingularityKind};
use cuspidal::synthesis::{
    roundtrip, synth_affine_cusp, synth_euclid, synth_inflection, Method, SharedFn, SynthCurve,
};
use cuspidal::{Curve, ProfileKind};

fn expr(text: &str) -> SharedFn {
    Rc::new(ExprFn::parse(text).unwrap())
}

#[test]
fn euclidean_frame_stays_orthonormal() {
    let s = synth_euclid(expr("1 + tau + cos(3*tau)"), 1.0, Method::Frame).unwrap();
    let SynthCurve::EuclidFrame(c) = &s.curve else {
        panic!("frame method expected");
    };
    for (tau, state) in c.nodes().step_by(97) {
        let f = state.frame;
        let (u, v) = (f.column(0), f.column(1));
        assert!((u.norm() - 1.0).abs() < 1e-12, "{tau}");
        assert!((v.norm() - 1.0).abs() < 1e-12, "{tau}");
        assert!(u.dot(v).abs() < 1e-12, "{tau}");
        assert!((f.det() - 1.0).abs() < 1e-12, "{tau}");
    }
    assert!(s.error_estimate() < 1e-10, "{:e}", s.error_estimate());
}

#[test]
fn euclidean_speed_is_twice_tau() {
    for method in [Method::Frame, Method::Quadrature] {
        let s = synth_euclid(expr("2 - tau^2"), 1.0, method).unwrap();
        for tau in [-0.9, -0.2, 0.0, 0.35, 1.0] {
            let v = s.jet(tau, 1).unwrap().derivative(1);
            assert!((v.norm() - 2.0 * f64::abs(tau)).abs() < 1e-10, "{method:?} {tau}");
        }
        assert_eq!(classify_curve(&s).unwrap().kind, SingularityKind::PositiveCusp);
    }
}

#[test]
fn methods_agree_on_a_varying_profile() {
    let f = expr("1 + tau/2");
    let a = synth_euclid(f.clone(), 1.0, Method::Frame).unwrap();
    let b = synth_euclid(f, 1.0, Method::Quadrature).unwrap();
    for (tau, p) in a.samples(41).unwrap() {
        assert!((p - b.point(tau).unwrap()).norm() < 1e-10, "{tau}");
    }
}

#[test]
fn affine_cusp_brackets() {
    let s = synth_affine_cusp(Rc::new(0.0), 1.0).unwrap();
    let j = s.jet(0.3, 3).unwrap();
    assert!((j.bracket(1, 2) - 0.4166667).abs() < 1e-7);
    // the model cusp: f ≡ 4/25
    let r = roundtrip(Rc::new(4.0 / 25.0), ProfileKind::AffineCusp, 0.5, Method::Frame).unwrap();
    assert!(r.max_deviation < 1e-9);
}

#[test]
fn inflection_brackets() {
    let s = synth_inflection(Rc::new(-5.0 / 16.0), 1.0).unwrap();
    let j = s.jet(0.3, 3).unwrap();
    assert!((j.bracket(1, 2) - 64.0 * 0.3 / 27.0).abs() < 1e-9);
    for tau in [-1.0, 0.0, 0.5] {
        let j = s.jet(tau, 3).unwrap();
        assert!((j.bracket(1, 3) - 64.0 / 27.0).abs() < 1e-9);
    }
    assert!(s.reparametrization.is_none());
}

#[test]
fn inflection_profile_is_reparametrized_when_needed() {
    let s = synth_inflection(expr("-5/16 + tau"), 0.5).unwrap();
    let c = s.reparametrization.unwrap();
    assert!((c - 16.0 / 9.0).abs() < 1e-14);
    // the realized profile f(τ - cτ²)
    let got = s.profile.value(0.2).unwrap();
    assert!((got - (-5.0 / 16.0 + 0.2 - c * 0.04)).abs() < 1e-14);
}

#[test]
fn roundtrips_with_more_general_profiles() {
    let cases = [
        (ProfileKind::EuclidCusp, "0.7 + sin(tau)", Method::Quadrature),
        (ProfileKind::EuclidCusp, "-1 + tau^2", Method::Frame),
        (ProfileKind::AffineCusp, "4/25 + tau^2*cos(tau)", Method::Frame),
        (ProfileKind::Inflection, "-5/16 + tau/2 - tau^2", Method::Frame),
    ];
    for (kind, f, method) in cases {
        let r = roundtrip(expr(f), kind, 0.5, method).unwrap();
        assert!(r.max_deviation < 1e-8, "{kind:?} {f}: {:e}", r.max_deviation);
    }
}

#[test]
fn out_of_range_parameters_are_rejected() {
    let s = synth_euclid(Rc::new(1.0), 0.5, Method::Frame).unwrap();
    assert!(s.point(0.52).is_ok());
    assert!(s.point(2.0).is_err());
    let q = synth_euclid(Rc::new(1.0), 0.5, Method::Quadrature).unwrap();
    assert!(q.point(2.0).is_err());
}

#[test]
fn samples_cover_the_range() {
    let s = synth_euclid(Rc::new(1.0), 0.8, Method::Frame).unwrap();
    let pts = s.samples(5).unwrap();
    let taus: Vec<f64> = pts.iter().map(|(t, _)| *t).collect();
    assert_eq!(taus, vec![-0.8, -0.4, 0.0, 0.4, 0.8]);
    assert_eq!(pts[2].1.norm(), 0.0);
}
