//! Euclidean invariants: classification, curvature, arclength and the
//! cuspidal curvature.

use serde::Serialize;

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::plane::PlaneJet;
use crate::quadrature::integrate;
use crate::singular::{NormalizedProfile, ProfileKind, Profiler};

/// Default relative tolerance for classification.
pub const CLASSIFY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SingularityKind {
    Regular,
    PositiveCusp,
    NegativeCusp,
    PositiveInflection,
    NegativeInflection,
    Degenerate,
}

impl SingularityKind {
    pub fn is_cusp(self) -> bool {
        matches!(self, SingularityKind::PositiveCusp | SingularityKind::NegativeCusp)
    }

    pub fn is_inflection(self) -> bool {
        matches!(
            self,
            SingularityKind::PositiveInflection | SingularityKind::NegativeInflection
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            SingularityKind::Regular => "Regular",
            SingularityKind::PositiveCusp => "PositiveCusp",
            SingularityKind::NegativeCusp => "NegativeCusp",
            SingularityKind::PositiveInflection => "PositiveInflection",
            SingularityKind::NegativeInflection => "NegativeInflection",
            SingularityKind::Degenerate => "Degenerate",
        }
    }
}

impl std::fmt::Display for SingularityKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A classification label with the bracket values it was decided from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingularityClass {
    pub kind: SingularityKind,
    pub speed: f64,
    pub d12: f64,
    pub d13: f64,
    pub d23: f64,
}

/// Classify the germ at its base point.
pub fn classify(germ: &PlaneJet, tol: f64) -> Result<SingularityClass> {
    if germ.order() < 3 {
        return Err(Error::OrderTooLow {
            op: "classify",
            order: germ.order(),
            needed: 3,
        });
    }
    let v1 = germ.derivative(1);
    let v2 = germ.derivative(2);
    let v3 = germ.derivative(3);
    let (n1, n2, n3) = (v1.norm(), v2.norm(), v3.norm());
    let d12 = v1.cross(v2);
    let d13 = v1.cross(v3);
    let d23 = v2.cross(v3);
    let zero = |d: f64, a: f64, b: f64| d.abs() <= tol * a * b;
    let singular = n1 <= tol * n2.max(n3);
    let kind = if singular {
        if n2 == 0.0 || zero(d23, n2, n3) {
            SingularityKind::Degenerate
        } else if d23 > 0.0 {
            SingularityKind::PositiveCusp
        } else {
            SingularityKind::NegativeCusp
        }
    } else if !zero(d12, n1, n2) {
        SingularityKind::Regular
    } else if zero(d13, n1, n3) {
        SingularityKind::Degenerate
    } else if d13 > 0.0 {
        SingularityKind::PositiveInflection
    } else {
        SingularityKind::NegativeInflection
    };
    Ok(SingularityClass {
        kind,
        speed: n1,
        d12,
        d13,
        d23,
    })
}

/// Classify a curve at `t = 0` with the default tolerance.
pub fn classify_curve<C: Curve + ?Sized>(curve: &C) -> Result<SingularityClass> {
    classify(&curve.jet(0.0, 5)?, CLASSIFY_TOL)
}

/// `κ_g = [γ', γ''] / |γ'|³`.
pub fn kappa_g<C: Curve + ?Sized>(curve: &C, t: f64) -> Result<f64> {
    let j = curve.jet(t, 2)?;
    let d1 = j.derivative(1);
    let speed = d1.norm();
    let scale = j.derivative(2).norm().max(j.point().norm()).max(1.0);
    if speed <= 1e-12 * scale {
        return Err(Error::Singular { op: "kappa_g", t });
    }
    Ok(d1.cross(j.derivative(2)) / speed.powi(3))
}

/// Signed arclength `s_g` from 0 and the matching smooth coordinate: the
/// half-arclength parameter when 0 is a cusp, `s_g` itself otherwise.
pub fn arclength_g<C: Curve + ?Sized>(curve: &C, t: f64) -> Result<(f64, f64)> {
    if t == 0.0 {
        return Ok((0.0, 0.0));
    }
    let class = classify_curve(curve)?;
    if class.kind.is_cusp() {
        let p = Profiler::new(curve, ProfileKind::EuclidCusp)?;
        let s = if t.abs() < crate::singular::SWITCH_RADIUS {
            p.arclength_smooth(t)?
        } else {
            p.arclength_direct(t)?
        };
        Ok((s, s.signum() * s.abs().sqrt()))
    } else {
        let s = t * integrate(0.0, 1.0, |v| Ok(curve.jet(t * v, 1)?.derivative(1).norm()))?;
        Ok((s, s))
    }
}

fn require_cusp(germ: &PlaneJet, op: &'static str) -> Result<SingularityClass> {
    let class = classify(germ, CLASSIFY_TOL)?;
    if !class.kind.is_cusp() {
        return Err(Error::WrongClass {
            op,
            expected: "a 3/2-cusp",
            found: class.kind.name().to_string(),
        });
    }
    Ok(class)
}

/// Cuspidal curvature `μ_g = [γ'', γ'''] / |γ''|^{5/2}` of a cusp germ.
pub fn mu_g(germ: &PlaneJet) -> Result<f64> {
    let class = require_cusp(germ, "mu_g")?;
    Ok(class.d23 / germ.derivative(2).norm().powf(2.5))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EuclideanReport {
    pub mu_g: f64,
    pub class: SingularityKind,
    pub f0: f64,
}

pub fn euclidean_report(germ: &PlaneJet) -> Result<EuclideanReport> {
    let class = require_cusp(germ, "euclidean_report")?;
    let mu = mu_g(germ)?;
    Ok(EuclideanReport {
        mu_g: mu,
        class: class.kind,
        f0: mu / (2.0 * std::f64::consts::SQRT_2),
    })
}

/// Sample `√|s_g| κ_g` on a grid of half-arclength values.
pub fn profile_g<C: Curve + ?Sized>(curve: &C, grid: &[f64]) -> Result<NormalizedProfile> {
    require_cusp(&curve.jet(0.0, 5)?, "profile_g")?;
    Profiler::new(curve, ProfileKind::EuclidCusp)?.sample(grid)
}
