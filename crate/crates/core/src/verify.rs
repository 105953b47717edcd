//! The acceptance suite: every check compares computed invariants, profiles
//! and syntheses against closed-form values.
//!
//! Checks are deterministic for a given seed; randomized inputs come from a
//! ChaCha generator seeded per check.

use std::collections::BTreeMap;
use std::f64::consts::{PI, SQRT_2};
use std::rc::Rc;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::affine::{
    affine_cusp_report, identity_17_residual, identity_45_residual, inflection_report, mu_a, mu_i,
};
use crate::curve::{AffineImage, Curve, ExprFn, PolynomialCurve, Reversed};
use crate::dsl::{catalog_lookup, parse_curve, CurveSpec};
use crate::error::Result;
use crate::euclid::mu_g;
use crate::normal_form::{cusp_constant, normal_form, NormalFormKind, NORMAL_FORM_ORDER};
use crate::plane::{Mat2, Vec2};
use crate::quadrature::lemma9_quotient;
use crate::singular::{ProfileKind, Profiler};
use crate::synthesis::{
    grid, roundtrip, synth_affine_cusp, synth_euclid, synth_inflection, Method, SharedFn,
};

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Largest error over all cases, in the units of `tolerance`.
    pub max_error: f64,
    pub tolerance: f64,
    /// The case attaining `max_error`, or the failure message.
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

type CheckFn = fn(u64) -> Result<CheckResult>;

/// All checks, sorted by name.
pub const CHECKS: &[(&str, CheckFn)] = &[
    ("01-mu-g-exact", mu_g_exact),
    ("02-profile-limit", profile_limit),
    ("03-canonical-cusp", canonical_cusp),
    ("04-affine-cusp-germ", affine_cusp_germ),
    ("05-mu-a-exact", mu_a_exact),
    ("06-mu-a-identity", mu_a_identity),
    ("07-inflection-germ", inflection_germ),
    ("08-inflection-identity", inflection_identity),
    ("09-random-quartic-identities", random_quartic_identities),
    ("10-synthesis-roundtrip", synthesis_roundtrip),
    ("11-synthesis-brackets", synthesis_brackets),
    ("12-normal-forms", normal_forms),
    ("13-weighted-quotient", weighted_quotient),
];

pub fn check_names() -> impl Iterator<Item = &'static str> {
    CHECKS.iter().map(|(n, _)| *n)
}

/// Run a single check; errors are reported as failures.
pub fn run_check(name: &str, seed: u64) -> Option<CheckResult> {
    let (n, f) = CHECKS.iter().find(|(n, _)| *n == name)?;
    Some(f(seed).unwrap_or_else(|e| CheckResult {
        name: n.to_string(),
        passed: false,
        max_error: f64::INFINITY,
        tolerance: 0.0,
        detail: format!("error: {e}"),
    }))
}

pub fn run_all(seed: u64) -> VerifyReport {
    let checks: Vec<CheckResult> = check_names()
        .filter_map(|n| run_check(n, seed))
        .collect();
    VerifyReport {
        seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

/// Collects the worst error of a check.
struct Tally {
    name: &'static str,
    tolerance: f64,
    worst: f64,
    case: String,
    /// A case failed outright, regardless of size.
    broken: Option<String>,
}

impl Tally {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Tally {
            name,
            tolerance,
            worst: 0.0,
            case: String::new(),
            broken: None,
        }
    }

    fn record(&mut self, case: impl Into<String>, err: f64) {
        let err = if err.is_nan() { f64::INFINITY } else { err };
        if err >= self.worst || self.case.is_empty() {
            self.worst = err;
            self.case = case.into();
        }
    }

    fn abs(&mut self, case: impl Into<String>, got: f64, want: f64) {
        self.record(case, (got - want).abs());
    }

    fn rel(&mut self, case: impl Into<String>, got: f64, want: f64) {
        self.record(case, (got - want).abs() / want.abs());
    }

    fn require(&mut self, case: impl Into<String>, ok: bool) {
        if !ok && self.broken.is_none() {
            self.broken = Some(case.into());
        }
    }

    fn finish(self) -> Result<CheckResult> {
        let passed = self.broken.is_none() && self.worst <= self.tolerance;
        let detail = match self.broken {
            Some(b) => format!("failed: {b}"),
            None => self.case,
        };
        Ok(CheckResult {
            name: self.name.to_string(),
            passed,
            max_error: self.worst,
            tolerance: self.tolerance,
            detail,
        })
    }
}

fn catalog(name: &str, a: f64) -> Result<CurveSpec> {
    let mut p = BTreeMap::new();
    p.insert("a".to_string(), a);
    catalog_lookup(name, &p)
}

const SCALES: [f64; 3] = [0.5, 1.0, 2.0];

/// The catalog entries with a 3/2-cusp at 0.
const CATALOG_CUSPS: [&str; 4] = [
    "cuspidal_cubic",
    "cycloid",
    "canonical_cusp",
    "hyperbolic_cycloid",
];

const CATALOG_INFLECTIONS: [&str; 2] = ["cubic_graph", "skew_cycloid"];

fn expr(text: &str) -> Result<SharedFn> {
    Ok(Rc::new(ExprFn::parse(text)?))
}

fn mu_g_exact(_seed: u64) -> Result<CheckResult> {
    let mut t = Tally::new("01-mu-g-exact", 1e-10);
    for a in SCALES {
        let g = catalog("cuspidal_cubic", a)?.jet(0.0, 6)?;
        t.abs(format!("cuspidal_cubic a={a}"), mu_g(&g)?, 3.0 / (2.0 * a).sqrt());
        let g = catalog("cycloid", a)?.jet(0.0, 6)?;
        t.abs(format!("cycloid a={a}"), mu_g(&g)?, 1.0 / a.sqrt());
    }
    t.finish()
}

/// Two-level Richardson extrapolation to 0 of an even-in-`h` average.
fn richardson(m: [f64; 3]) -> f64 {
    let r1 = (4.0 * m[1] - m[0]) / 3.0;
    let r2 = (4.0 * m[2] - m[1]) / 3.0;
    (16.0 * r2 - r1) / 15.0
}

fn profile_limit(_seed: u64) -> Result<CheckResult> {
    let mut t = Tally::new("02-profile-limit", 1e-6);
    // Extrapolating from these points leaves about 1.6e-8 times the sixth
    // Taylor coefficient of the profile, which exceeds the tolerance for
    // the strongly curved small-scale cubic (a = 1/2); scales a >= 1 only.
    for name in CATALOG_CUSPS {
        for a in [1.0, 2.0] {
            let c = catalog(name, a)?;
            let p = Profiler::new(&c, ProfileKind::EuclidCusp)?;
            let mut m = [0.0; 3];
            for (k, h) in [0.1, 0.05, 0.025].into_iter().enumerate() {
                m[k] = 0.5 * (p.f_of_tau(h)? + p.f_of_tau(-h)?);
            }
            let want = mu_g(&c.jet(0.0, 6)?)? / (2.0 * SQRT_2);
            t.abs(format!("{name} a={a}"), richardson(m), want);
        }
    }
    t.finish()
}

/// Canonical cusp with `f ≡ a`, translated so that `γ(0) = 0`.
pub fn canonical_point(a: f64, tau: f64) -> Vec2 {
    let w = 2.0 * a * tau;
    let k = 1.0 / (2.0 * a * a);
    Vec2::new(k * (w * w.sin() + w.cos() - 1.0), k * (w.sin() - w * w.cos()))
}

fn canonical_cusp(_seed: u64) -> Result<CheckResult> {
    let mut t = Tally::new("03-canonical-cusp", 1e-8);
    let taus = grid(1.0, 201);
    for a in [0.5, 1.0] {
        let frame = synth_euclid(Rc::new(a), 1.0, Method::Frame)?;
        let quad = synth_euclid(Rc::new(a), 1.0, Method::Quadrature)?;
        let spec = catalog("canonical_cusp", a)?;
        let origin = spec.point(0.0)?;
        let (mut e_frame, mut e_quad, mut e_agree, mut e_spec) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        for &tau in &taus {
            let want = canonical_point(a, tau);
            let pf = frame.point(tau)?;
            let pq = quad.point(tau)?;
            let (sx, sy) = spec.point(tau)?;
            e_frame = e_frame.max((pf - want).norm());
            e_quad = e_quad.max((pq - want).norm());
            e_agree = e_agree.max((pf - pq).norm());
            e_spec = e_spec.max((Vec2::new(sx - origin.0, sy - origin.1) - want).norm());
        }
        t.record(format!("frame a={a}"), e_frame);
        t.record(format!("quadrature a={a}"), e_quad);
        t.record(format!("methods agree a={a}"), e_agree);
        t.record(format!("catalog entry a={a}"), e_spec);
    }
    t.finish()
}

fn affine_cusp_germ(_seed: u64) -> Result<CheckResult> {
    let mut t = Tally::new("04-affine-cusp-germ", 1e-8);
    for name in ["cycloid", "hyperbolic_cycloid"] {
        for a in SCALES {
            let r = affine_cusp_report(&catalog(name, a)?)?;
            t.abs(format!("{name} a={a} f(0)"), r.f0, 4.0 / 25.0);
            t.abs(format!("{name} a={a} f'(0)"), r.fdot0, 0.0);
        }
    }
    t.finish()
}

/// Random equi-affine map `R(θ₁) diag(s, 1/s) R(θ₂)`, possibly reflected.
fn random_equiaffine(rng: &mut ChaCha8Rng) -> (Mat2, Vec2) {
    let s = rng.random_range(0.25..4.0);
    let r1 = Mat2::rotation(rng.random_range(0.0..2.0 * PI));
    let r2 = Mat2::rotation(rng.random_range(0.0..2.0 * PI));
    let mut m = r1 * Mat2::new(s, 0.0, 0.0, 1.0 / s) * r2;
    if rng.random_bool(0.5) {
        m = Mat2::new(1.0, 0.0, 0.0, -1.0) * m;
    }
    let offset = Vec2::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
    (m, offset)
}

fn mu_a_exact(seed: u64) -> Result<CheckResult> {
    let mut t = Tally::new("05-mu-a-exact", 1e-8);
    for a in SCALES {
        let want = 36.0 * a.powf(-0.8);
        t.rel(format!("cycloid a={a}"), mu_a(&catalog("cycloid", a)?.jet(0.0, 8)?)?, want);
        t.rel(
            format!("hyperbolic_cycloid a={a}"),
            mu_a(&catalog("hyperbolic_cycloid", a)?.jet(0.0, 8)?)?,
            -want,
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x05);
    let base = catalog("cycloid", 1.0)?;
    let reference = mu_a(&base.jet(0.0, 8)?)?;
    for k in 0..100 {
        let (matrix, offset) = random_equiaffine(&mut rng);
        let image = AffineImage {
            curve: &base,
            matrix,
            offset,
        };
        t.rel(format!("equi-affine map #{k}"), mu_a(&image.jet(0.0, 8)?)?, reference);
    }
    t.finish()
}

/// `h(0) / μ_A` predicted at every affine cusp.
pub fn h0_ratio() -> f64 {
    (20f64 / 3.0).powf(0.2) / 220.0
}

fn mu_a_identity(_seed: u64) -> Result<CheckResult> {
    let mut t = Tally::new("06-mu-a-identity", 1e-4);
    for a in SCALES {
        let r = affine_cusp_report(&catalog("cycloid", a)?)?;
        t.rel(format!("cycloid a={a}"), r.h0, h0_ratio() * r.mu_a);
    }
    // curve independence of h0/μ_A, at the tighter tolerance scaled to 1e-4 units
    let mut ratios = Vec::new();
    for (label, c) in [
        ("cycloid", catalog("cycloid", 1.0)?),
        ("hyperbolic_cycloid", catalog("hyperbolic_cycloid", 1.0)?),
        ("(t^2, t^3 + t^5)", parse_curve("(t^2, t^3 + t^5)")?),
    ] {
        let r = affine_cusp_report(&c)?;
        ratios.push((label, r.h0 / r.mu_a));
    }
    for (label, q) in &ratios[1..] {
        let spread = ((q - ratios[0].1) / ratios[0].1).abs();
        t.require(format!("ratio spread {spread:e} for {label}"), spread <= 1e-6);
        t.record(format!("ratio spread vs {label}"), spread * 1e-4 / 1e-6);
    }
    t.finish()
}

fn inflection_germ(_seed: u64) -> Result<CheckResult> {
    let mut t = Tally::new("07-inflection-germ", 1e-8);
    for name in CATALOG_INFLECTIONS {
        for a in SCALES {
            let r = inflection_report(&catalog(name, a)?)?;
            t.abs(format!("{name} a={a} f(0)"), r.f0, -5.0 / 16.0);
        }
    }
    for a in [1.0, 4.0] {
        let c = catalog("skew_cycloid", a)?;
        let (mu, _) = mu_i(&c.jet(0.0, 8)?)?;
        t.abs(format!("skew_cycloid a={a} mu_I"), mu, -6.0 / a.sqrt());
        let (back, _) = mu_i(&Reversed(&c).jet(0.0, 8)?)?;
        t.require(format!("reversal of skew_cycloid a={a}"), back == -mu);
    }
    t.finish()
}

/// `ḟ(0) / μ_I` predicted at every generic inflection.
pub fn g0_ratio() -> f64 {
    -3.0 * 3f64.powf(0.25) / (28.0 * SQRT_2)
}

fn inflection_identity(_seed: u64) -> Result<CheckResult> {
    let mut t = Tally::new("08-inflection-identity", 1e-4);
    for a in [0.5, 1.0, 2.0, 4.0] {
        let r = inflection_report(&catalog("skew_cycloid", a)?)?;
        t.rel(format!("skew_cycloid a={a}"), r.g0, g0_ratio() * r.mu_i);
    }
    t.finish()
}

/// Random inflection germ `(t + a₂t², a₃t³ + a₄t⁴)` with `|a₃| ≥ 1/2`.
pub fn random_quartic(rng: &mut ChaCha8Rng) -> PolynomialCurve {
    let a2 = rng.random_range(-1.0..1.0);
    let a3 = rng.random_range(0.5..2.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    let a4 = rng.random_range(-1.0..1.0);
    PolynomialCurve {
        x: vec![0.0, 1.0, a2],
        y: vec![0.0, 0.0, 0.0, a3, a4],
    }
}

fn random_quartic_identities(seed: u64) -> Result<CheckResult> {
    let mut t = Tally::new("09-random-quartic-identities", 1e-6);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x09);
    for k in 0..50 {
        let c = random_quartic(&mut rng);
        let germ = c.jet(0.0, 8)?;
        let p = Profiler::new(&c, ProfileKind::Inflection)?;
        let label = format!("germ #{k} ({:.4}, {:.4}, {:.4})", c.x[2], c.y[3], c.y[4]);
        t.record(format!("{label} t"), identity_17_residual(&germ, p.f_jet_t())?.abs());
        t.record(format!("{label} tau"), identity_45_residual(p.f_jet_tau()).abs());
    }
    t.finish()
}

fn synthesis_roundtrip(_seed: u64) -> Result<CheckResult> {
    let mut t = Tally::new("10-synthesis-roundtrip", 1e-6);
    let cases: [(&str, ProfileKind, &str); 7] = [
        ("euclid f = 1", ProfileKind::EuclidCusp, "1"),
        ("euclid f = 1 + tau", ProfileKind::EuclidCusp, "1 + tau"),
        ("affine h = 0", ProfileKind::AffineCusp, "4/25"),
        ("affine h = 1", ProfileKind::AffineCusp, "4/25 + tau^2"),
        ("affine h = -1", ProfileKind::AffineCusp, "4/25 - tau^2"),
        ("inflection f = -5/16", ProfileKind::Inflection, "-5/16"),
        ("inflection f = -5/16 + tau", ProfileKind::Inflection, "-5/16 + tau"),
    ];
    for (label, kind, f) in cases {
        let r = roundtrip(expr(f)?, kind, 0.5, Method::Frame)?;
        t.record(label, r.max_deviation);
    }
    t.finish()
}

fn synthesis_brackets(_seed: u64) -> Result<CheckResult> {
    let mut t = Tally::new("11-synthesis-brackets", 1e-7);
    let taus = grid(0.5, 101);
    for h in [0.0, 1.0, -1.0] {
        let s = synth_affine_cusp(Rc::new(h), 0.5)?;
        for &tau in &taus {
            let j = s.jet(tau, 3)?;
            let case = |w: &str| format!("affine h={h} {w} at {tau}");
            t.abs(case("[1,2]"), j.bracket(1, 2), 125.0 * tau * tau / 27.0);
            t.abs(case("[1,3]"), j.bracket(1, 3), 250.0 * tau / 27.0);
            t.abs(
                case("[2,3]"),
                j.bracket(2, 3),
                125.0 / 243.0 * (18.0 + 25.0 * tau * tau * h),
            );
        }
    }
    for f in ["-5/16", "-5/16 + tau"] {
        let s = synth_inflection(expr(f)?, 0.5)?;
        for &tau in &taus {
            let j = s.jet(tau, 3)?;
            t.abs(format!("inflection f={f} [1,2] at {tau}"), j.bracket(1, 2), 64.0 * tau / 27.0);
            t.abs(format!("inflection f={f} [1,3] at {tau}"), j.bracket(1, 3), 64.0 / 27.0);
        }
    }
    t.finish()
}

fn normal_forms(_seed: u64) -> Result<CheckResult> {
    let mut t = Tally::new("12-normal-forms", 1e-8);
    let model = parse_curve("(t^2, t^3 + t^5)")?.jet(0.0, NORMAL_FORM_ORDER)?;
    t.abs("cusp model", normal_form(&model, NormalFormKind::Cusp)?.c, 1.0);
    let model = parse_curve("(t, t^3 + t^4)")?.jet(0.0, NORMAL_FORM_ORDER)?;
    t.abs("inflection model", normal_form(&model, NormalFormKind::Inflection)?.c, 1.0);
    for name in CATALOG_CUSPS {
        for a in SCALES {
            let g = catalog(name, a)?.jet(0.0, NORMAL_FORM_ORDER)?;
            let nf = normal_form(&g, NormalFormKind::Cusp)?;
            t.abs(format!("{name} a={a}"), nf.c, mu_a(&g)? / cusp_constant());
        }
    }
    for name in CATALOG_INFLECTIONS {
        for a in SCALES {
            let g = catalog(name, a)?.jet(0.0, NORMAL_FORM_ORDER)?;
            let nf = normal_form(&g, NormalFormKind::Inflection)?;
            let (mu, _) = mu_i(&g)?;
            t.abs(format!("{name} a={a}"), nf.c, 6f64.powf(0.25) * mu / 4.0);
        }
    }
    t.finish()
}

fn weighted_quotient(_seed: u64) -> Result<CheckResult> {
    let mut t = Tally::new("13-weighted-quotient", 1e-12);
    type Phi = (&'static str, fn(f64) -> f64);
    let phis: [Phi; 3] = [("1", |_| 1.0), ("u", |u| u), ("cos u", f64::cos)];
    for alpha in [1.0 / 3.0, 2.0 / 3.0, 1.0] {
        for (label, phi) in phis {
            let got = lemma9_quotient(phi, alpha, 0.0)?;
            t.abs(format!("phi = {label}, alpha = {alpha:.4}"), got, phi(0.0) / (1.0 + alpha));
        }
    }
    for tau in grid(1.0, 41) {
        let got = lemma9_quotient(|u| u, 2.0 / 3.0, tau)?;
        t.abs(format!("phi = u at t = {tau}"), got, 3.0 * tau / 8.0);
    }
    t.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_sorted_and_unique() {
        let names: Vec<_> = check_names().collect();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(names, sorted);
    }

    #[test]
    fn unknown_check() {
        assert!(run_check("nope", 0).is_none());
    }

    #[test]
    fn richardson_is_exact_for_even_quartics() {
        let m = |h: f64| 2.0 + 3.0 * h * h - h.powi(4);
        assert!((richardson([m(0.1), m(0.05), m(0.025)]) - 2.0).abs() < 1e-14);
    }
}
