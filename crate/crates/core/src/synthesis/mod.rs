//! Reconstruction of curves from a prescribed normalized curvature.
//!
//! Each kind of singular point has a linear frame system whose coefficients
//! are smooth in the normalized parameter `τ`; integrating it produces a
//! curve whose normalized curvature in `τ` is the prescribed function. For
//! the Euclidean cusp the curve can also be written down by quadrature.

mod ode;
mod quotient;

use std::rc::Rc;

use crate::curve::{Curve, JetFn, ScalarFn};
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::plane::{Mat2, PlaneJet, Vec2};
use crate::quadrature::gauss16_points;
use crate::singular::{ProfileKind, Profiler};

pub use ode::{node_expansion, FrameCoefficients, FrameCurve, FrameState, MAX_STEP, NODE_ORDER};
pub use quotient::{SmoothQuotient, QUOTIENT_GERM_ORDER};

pub type SharedFn = Rc<dyn ScalarFn>;

/// Value of `f` forced at an inflection.
pub const INFLECTION_LIMIT: f64 = -5.0 / 16.0;

/// Value of `f` forced at an affine cusp.
pub const AFFINE_CUSP_LIMIT: f64 = 4.0 / 25.0;

/// Extra integration range used by [`roundtrip`], relative to the checked range.
const ROUNDTRIP_MARGIN: f64 = 1.25;

/// Number of grid points compared by [`roundtrip`].
const ROUNDTRIP_POINTS: usize = 41;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Closed-form angle and position integrals (Euclidean cusps only).
    Quadrature,
    #[default]
    Frame,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quadrature" => Ok(Method::Quadrature),
            "frame" => Ok(Method::Frame),
            _ => Err(Error::domain(
                "method",
                format!("unknown method `{s}` (expected `frame` or `quadrature`)"),
            )),
        }
    }
}

fn jet_with_derivative(f: &dyn ScalarFn, tau: f64, order: usize) -> Result<(Jet, Jet)> {
    let j = f.jet(tau, order + 1)?;
    Ok((j.truncate(order), j.differentiate()))
}

/// Orthonormal frame along a Euclidean cusp with normalized curvature `f`.
pub struct EuclidFrame {
    f: SharedFn,
}

impl FrameCoefficients for EuclidFrame {
    fn coefficients(&self, tau: f64, order: usize) -> Result<([Jet; 4], [Jet; 2])> {
        let (f, fd) = jet_with_derivative(&*self.f, tau, order)?;
        let t = Jet::variable(tau, order);
        let tf = &t * &f;
        let n2 = &(&tf * &tf) * 4.0 + 1.0;
        let w = &(&(&(&f * 2.0) + &(&(&(&tf * &tf) * &f) * 4.0)) + &(&t * &fd)) * 2.0;
        let w = w.try_div(&n2)?;
        let root = n2.sqrt()?;
        let vx = (&t * 2.0).try_div(&root)?;
        let vy = (&(&t * &tf) * -4.0).try_div(&root)?;
        let zero = Jet::constant(tau, 0.0, order);
        Ok(([zero.clone(), -&w, w, zero], [vx, vy]))
    }

    fn initial_frame(&self) -> Mat2 {
        Mat2::IDENTITY
    }
}

/// Frame `(γ'', γ''')`-type system along an affine cusp with
/// `f = 4/25 + τ² h`.
pub struct AffineCuspFrame {
    h: SharedFn,
}

impl FrameCoefficients for AffineCuspFrame {
    fn coefficients(&self, tau: f64, order: usize) -> Result<([Jet; 4], [Jet; 2])> {
        let (h, hd) = jet_with_derivative(&*self.h, tau, order)?;
        let t = Jet::variable(tau, order);
        let t2 = &t * &t;
        let d = &(&(&t2 * &h) * 25.0) + 18.0;
        if !(d.value() > 1e-9) {
            return Err(Error::domain(
                "affine cusp synthesis",
                format!("18 + 25 τ² h vanishes near τ = {tau}"),
            ));
        }
        let a1 = (&t * 18.0).try_div(&d)?;
        let a2 = (&t2 * -9.0).try_div(&d)?;
        let b1 = &(&(&(&t * &hd) * 18.0) + &(&(&(&t2 * &h) * &h) * 25.0)) + &(&h * 54.0);
        let b1 = (&b1 * (-25.0 / 9.0)).try_div(&d)?;
        let b2 = (&(&t * &(&(&t * &hd) + &(&h * 2.0))) * 25.0).try_div(&d)?;
        let one = Jet::constant(tau, 1.0, order);
        let zero = Jet::constant(tau, 0.0, order);
        Ok(([zero, b1, one, b2], [a1, a2]))
    }

    fn initial_frame(&self) -> Mat2 {
        Mat2::from_columns(Vec2::new(1.0, 0.0), Vec2::new(0.0, 250.0 / 27.0))
    }
}

/// Frame system along a generic inflection, driven by
/// `g = (f + 5/16)/τ` and `h = (9ġ + 16 g²)/τ`.
pub struct InflectionFrame {
    g: SharedFn,
    h: SharedFn,
}

impl FrameCoefficients for InflectionFrame {
    fn coefficients(&self, tau: f64, order: usize) -> Result<([Jet; 4], [Jet; 2])> {
        let g = self.g.jet(tau, order)?;
        let h = self.h.jet(tau, order)?;
        let t = Jet::variable(tau, order);
        let a11 = &g * (16.0 / 9.0);
        let a21 = &h * (-16.0 / 81.0);
        let a22 = -&a11;
        let one = Jet::constant(tau, 1.0, order);
        let zero = Jet::constant(tau, 0.0, order);
        Ok(([a11, a21, t, a22], [one, zero]))
    }

    fn initial_frame(&self) -> Mat2 {
        Mat2::from_columns(Vec2::new(1.0, 0.0), Vec2::new(0.0, 64.0 / 27.0))
    }
}

/// Largest knot spacing of [`QuadratureCusp`].
const KNOT_SPACING: f64 = 0.05;

/// Euclidean cusp with normalized curvature `f` from the closed-form
/// integrals `θ = ∫ 2f`, `γ = ∫ 2τ (cos θ, sin θ)`.
pub struct QuadratureCusp {
    f: SharedFn,
    spacing: f64,
    count: usize,
    /// Angle and position at the knots `τ = (i - count) spacing`.
    theta: Vec<f64>,
    position: Vec<Vec2>,
    error_estimate: f64,
}

impl QuadratureCusp {
    pub fn new(f: SharedFn, tau_max: f64) -> Result<Self> {
        if !(tau_max > 0.0 && tau_max.is_finite()) {
            return Err(Error::domain("synthesis", "tau_max must be positive"));
        }
        let build = |count: usize| -> Result<(f64, Vec<f64>, Vec<Vec2>)> {
            let spacing = tau_max / count as f64;
            let n = 2 * count + 1;
            let mut theta = vec![0.0; n];
            let mut position = vec![Vec2::default(); n];
            for dir in [1.0, -1.0] {
                let mut i = count;
                for _ in 0..count {
                    let j = if dir > 0.0 { i + 1 } else { i - 1 };
                    let a = (i as f64 - count as f64) * spacing;
                    let b = (j as f64 - count as f64) * spacing;
                    let (th, p) = advance(&*f, a, theta[i], position[i], b)?;
                    theta[j] = th;
                    position[j] = p;
                    i = j;
                }
            }
            Ok((spacing, theta, position))
        };
        let count = (tau_max / KNOT_SPACING).ceil() as usize;
        let (spacing, theta, position) = build(count)?;
        let (_, _, fine) = build(2 * count)?;
        let error_estimate = (position[2 * count] - fine[4 * count])
            .norm()
            .max((position[0] - fine[0]).norm());
        Ok(QuadratureCusp {
            f,
            spacing,
            count,
            theta,
            position,
            error_estimate,
        })
    }

    pub fn error_estimate(&self) -> f64 {
        self.error_estimate
    }

    fn tau_max(&self) -> f64 {
        self.spacing * self.count as f64
    }

    /// Angle and position at `tau`, integrated from the nearest knot.
    pub fn state(&self, tau: f64) -> Result<(f64, Vec2)> {
        if !(tau.abs() <= self.tau_max() + KNOT_SPACING) {
            return Err(Error::domain(
                "synthesized curve",
                format!("parameter {tau} outside the integrated range ±{}", self.tau_max()),
            ));
        }
        let i = ((tau / self.spacing).round() + self.count as f64)
            .clamp(0.0, (2 * self.count) as f64) as usize;
        let a = (i as f64 - self.count as f64) * self.spacing;
        advance(&*self.f, a, self.theta[i], self.position[i], tau)
    }
}

/// Angle and position at `b` given their values at `a`.
fn advance(f: &dyn ScalarFn, a: f64, theta: f64, position: Vec2, b: f64) -> Result<(f64, Vec2)> {
    let angle = |u: f64| -> Result<f64> {
        let mut s = 0.0;
        for (x, w) in gauss16_points(a, u) {
            s += w * f.value(x)?;
        }
        Ok(theta + 2.0 * s)
    };
    let mut p = position;
    for (u, w) in gauss16_points(a, b) {
        let th = angle(u)?;
        p = p + Vec2::new(th.cos(), th.sin()) * (2.0 * u * w);
    }
    Ok((angle(b)?, p))
}

impl Curve for QuadratureCusp {
    fn jet(&self, t: f64, order: usize) -> Result<PlaneJet> {
        let (theta, p) = self.state(t)?;
        let fj = self.f.jet(t, order)?;
        let th = (&fj * 2.0).integrate(theta);
        let (s, c) = th.sin_cos();
        let tv = Jet::variable(t, order + 1);
        let x = (&(&tv * &c) * 2.0).integrate(p.x);
        let y = (&(&tv * &s) * 2.0).integrate(p.y);
        Ok(PlaneJet::new(x.truncate(order), y.truncate(order))?)
    }

    fn point(&self, t: f64) -> Result<Vec2> {
        Ok(self.state(t)?.1)
    }

    fn max_order(&self) -> usize {
        NODE_ORDER - 1
    }
}

pub enum SynthCurve {
    EuclidFrame(FrameCurve<EuclidFrame>),
    EuclidQuadrature(QuadratureCusp),
    AffineCusp(FrameCurve<AffineCuspFrame>),
    Inflection(FrameCurve<InflectionFrame>),
}

impl SynthCurve {
    fn inner(&self) -> &dyn Curve {
        match self {
            SynthCurve::EuclidFrame(c) => c,
            SynthCurve::EuclidQuadrature(c) => c,
            SynthCurve::AffineCusp(c) => c,
            SynthCurve::Inflection(c) => c,
        }
    }

    pub fn error_estimate(&self) -> f64 {
        match self {
            SynthCurve::EuclidFrame(c) => c.error_estimate(),
            SynthCurve::EuclidQuadrature(c) => c.error_estimate(),
            SynthCurve::AffineCusp(c) => c.error_estimate(),
            SynthCurve::Inflection(c) => c.error_estimate(),
        }
    }
}

impl Curve for SynthCurve {
    fn jet(&self, t: f64, order: usize) -> Result<PlaneJet> {
        self.inner().jet(t, order)
    }

    fn point(&self, t: f64) -> Result<Vec2> {
        self.inner().point(t)
    }

    fn max_order(&self) -> usize {
        self.inner().max_order()
    }
}

/// A synthesized curve together with the profile it realizes.
pub struct Synthesized {
    pub kind: ProfileKind,
    pub curve: SynthCurve,
    /// Normalized curvature realized by `curve` in its parameter.
    pub profile: SharedFn,
    pub tau_max: f64,
    /// Coefficient `c` of the substitution `τ ↦ τ - c τ²` applied to an
    /// inflection profile before integrating, if one was needed.
    pub reparametrization: Option<f64>,
}

impl Synthesized {
    pub fn error_estimate(&self) -> f64 {
        self.curve.error_estimate()
    }

    /// `count` points `(τ, γ(τ))` evenly spaced on `[-tau_max, tau_max]`.
    pub fn samples(&self, count: usize) -> Result<Vec<(f64, Vec2)>> {
        grid(self.tau_max, count)
            .into_iter()
            .map(|tau| Ok((tau, self.curve.point(tau)?)))
            .collect()
    }
}

impl Curve for Synthesized {
    fn jet(&self, t: f64, order: usize) -> Result<PlaneJet> {
        self.curve.jet(t, order)
    }

    fn point(&self, t: f64) -> Result<Vec2> {
        self.curve.point(t)
    }

    fn max_order(&self) -> usize {
        self.curve.max_order()
    }
}

/// `count` evenly spaced points on `[-r, r]`.
pub fn grid(r: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => {
            // symmetric, with τ = 0 exact for odd counts
            let m = (count - 1) as f64;
            (0..count).map(|i| r * (2.0 * i as f64 - m) / m).collect()
        }
    }
}

/// Euclidean cusp whose normalized curvature in the half-arclength
/// parameter `τ = sgn(t) √|s|` is `f`.
pub fn synth_euclid(f: SharedFn, tau_max: f64, method: Method) -> Result<Synthesized> {
    let f0 = f.value(0.0)?;
    if f0 == 0.0 || !f0.is_finite() {
        return Err(Error::domain(
            "euclidean synthesis",
            "f(0) must be nonzero for a 3/2-cusp",
        ));
    }
    let curve = match method {
        Method::Frame => SynthCurve::EuclidFrame(FrameCurve::integrate(
            EuclidFrame { f: f.clone() },
            tau_max,
        )?),
        Method::Quadrature => SynthCurve::EuclidQuadrature(QuadratureCusp::new(f.clone(), tau_max)?),
    };
    Ok(Synthesized {
        kind: ProfileKind::EuclidCusp,
        curve,
        profile: f,
        tau_max,
        reparametrization: None,
    })
}

/// Affine cusp with normalized curvature `4/25 + τ² h(τ)`.
pub fn synth_affine_cusp(h: SharedFn, tau_max: f64) -> Result<Synthesized> {
    let curve = FrameCurve::integrate(AffineCuspFrame { h: h.clone() }, tau_max)?;
    let profile: SharedFn = Rc::new(JetFn(move |t: &Jet| {
        let hj = h.jet(t.base(), t.order())?;
        Ok(&(&(t * t) * &hj) + AFFINE_CUSP_LIMIT)
    }));
    Ok(Synthesized {
        kind: ProfileKind::AffineCusp,
        curve: SynthCurve::AffineCusp(curve),
        profile,
        tau_max,
        reparametrization: None,
    })
}

/// `h = (f - 4/25)/τ²`, after checking that `f` has the shape forced at an
/// affine cusp.
pub fn affine_h_from_f(f: SharedFn) -> Result<SharedFn> {
    let j = f.jet(0.0, 1)?;
    if (j.coeff(0) - AFFINE_CUSP_LIMIT).abs() > 1e-12 || j.coeff(1).abs() > 1e-12 {
        return Err(Error::domain(
            "affine cusp synthesis",
            format!(
                "profile must satisfy f(0) = 4/25 and f'(0) = 0, got {} and {}",
                j.coeff(0),
                j.coeff(1)
            ),
        ));
    }
    let num: SharedFn = Rc::new(JetFn(move |t: &Jet| {
        Ok(&f.jet(t.base(), t.order())? - AFFINE_CUSP_LIMIT)
    }));
    Ok(Rc::new(SmoothQuotient::new(num, 2)?))
}

/// Bring an inflection profile into the form the frame system realizes.
///
/// The profile of an inflection satisfies `32 ḟ(0)² + 9 f̈(0) = 0` in its
/// normalized parameter. When the prescribed `f` does not, it is precomposed
/// with `τ ↦ τ - c τ²`, which fixes the relation when `ḟ(0) ≠ 0`.
pub fn inflection_profile(f: SharedFn) -> Result<(SharedFn, Option<f64>)> {
    let j = f.jet(0.0, 2)?;
    if (j.coeff(0) - INFLECTION_LIMIT).abs() > 1e-12 {
        return Err(Error::domain(
            "inflection synthesis",
            format!("profile must satisfy f(0) = -5/16, got {}", j.coeff(0)),
        ));
    }
    let fd = j.coeff(1);
    let fdd = 2.0 * j.coeff(2);
    let r = 32.0 * fd * fd + 9.0 * fdd;
    if r.abs() <= 1e-12 * (1.0 + 32.0 * fd * fd + 9.0 * fdd.abs()) {
        return Ok((f, None));
    }
    if fd.abs() <= 1e-14 {
        return Err(Error::domain(
            "inflection synthesis",
            "f'(0) = 0 with f''(0) ≠ 0 cannot be the profile of an inflection",
        ));
    }
    let c = r / (18.0 * fd);
    let realized: SharedFn = Rc::new(JetFn(move |t: &Jet| {
        let inner = t - &(&(t * t) * c);
        let outer = f.jet(inner.value(), t.order())?;
        Ok(outer.compose(&inner)?)
    }));
    Ok((realized, Some(c)))
}

/// Generic inflection realizing `f` (after [`inflection_profile`]).
pub fn synth_inflection(f: SharedFn, tau_max: f64) -> Result<Synthesized> {
    let (profile, reparametrization) = inflection_profile(f)?;
    let p = profile.clone();
    let g_num: SharedFn = Rc::new(JetFn(move |t: &Jet| {
        Ok(&p.jet(t.base(), t.order())? - INFLECTION_LIMIT)
    }));
    let g: SharedFn = Rc::new(SmoothQuotient::new(g_num, 1)?);
    let gc = g.clone();
    let h_num: SharedFn = Rc::new(JetFn(move |t: &Jet| {
        let (g0, gd) = jet_with_derivative(&*gc, t.base(), t.order())?;
        Ok(&(&gd * 9.0) + &(&(&g0 * &g0) * 16.0))
    }));
    let h: SharedFn = Rc::new(SmoothQuotient::with_order(h_num, 1, 32)?);
    let curve = FrameCurve::integrate(InflectionFrame { g, h }, tau_max)?;
    Ok(Synthesized {
        kind: ProfileKind::Inflection,
        curve: SynthCurve::Inflection(curve),
        profile,
        tau_max,
        reparametrization,
    })
}

/// Synthesize a curve of the given kind with normalized curvature `f`.
///
/// For affine cusps `f` must have the forced germ `4/25 + O(τ²)`.
pub fn synthesize(f: SharedFn, kind: ProfileKind, tau_max: f64, method: Method) -> Result<Synthesized> {
    match kind {
        ProfileKind::EuclidCusp => synth_euclid(f, tau_max, method),
        ProfileKind::AffineCusp => synth_affine_cusp(affine_h_from_f(f)?, tau_max),
        ProfileKind::Inflection => synth_inflection(f, tau_max),
    }
}

/// Outcome of synthesizing a curve and measuring its profile again.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Roundtrip {
    pub max_deviation: f64,
    pub error_estimate: f64,
}

/// Synthesize from `f`, recompute the normalized curvature of the result,
/// and return the largest deviation from the realized profile on
/// `[-tau_max, tau_max]`.
pub fn roundtrip(f: SharedFn, kind: ProfileKind, tau_max: f64, method: Method) -> Result<Roundtrip> {
    let synth = synthesize(f, kind, ROUNDTRIP_MARGIN * tau_max, method)?;
    let profiler = Profiler::new(&synth, kind)?;
    let mut max_deviation: f64 = 0.0;
    for tau in grid(tau_max, ROUNDTRIP_POINTS) {
        let measured = profiler.f_of_tau(tau)?;
        let expected = synth.profile.value(tau)?;
        max_deviation = max_deviation.max((measured - expected).abs());
    }
    Ok(Roundtrip {
        max_deviation,
        error_estimate: synth.error_estimate(),
    })
}
