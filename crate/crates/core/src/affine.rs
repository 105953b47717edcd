//! Equi-affine invariants of cusps and inflections.

use serde::Serialize;

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::euclid::{classify, classify_curve, SingularityClass, CLASSIFY_TOL};
use crate::jet::{signed_frac_pow, Jet};
use crate::plane::PlaneJet;
use crate::quadrature::integrate;
use crate::singular::{affine_numerator, NormalizedProfile, ProfileKind, Profiler, SWITCH_RADIUS};

/// Affine curvature
/// `(3[γ',γ''][γ',γ⁗] + 12[γ',γ''][γ'',γ'''] − 5[γ',γ''']²) / (9[γ',γ'']^{8/3})`.
pub fn kappa_a<C: Curve + ?Sized>(curve: &C, t: f64) -> Result<f64> {
    let j = curve.jet(t, 4)?;
    let d = [j.derivative(1), j.derivative(2), j.derivative(3), j.derivative(4)];
    let b = d[0].cross(d[1]);
    if b.abs() <= 1e-14 * (d[0].norm() * d[1].norm()).max(f64::MIN_POSITIVE) || b == 0.0 {
        return Err(Error::Singular { op: "kappa_A", t });
    }
    let n = affine_numerator(d[0], d[1], d[2], d[3]);
    Ok(n / (9.0 * signed_frac_pow(b, 8, 3)?))
}

/// Affine arclength from 0 with the 3/5- and 3/4-power coordinates
/// `(s_A, sgn(s_A)|s_A|^{3/5}, sgn(s_A)|s_A|^{3/4})`.
pub fn arclength_a<C: Curve + ?Sized>(curve: &C, t: f64) -> Result<(f64, f64, f64)> {
    if t == 0.0 {
        return Ok((0.0, 0.0, 0.0));
    }
    let class = classify_curve(curve)?;
    let kind = if class.kind.is_cusp() {
        Some(ProfileKind::AffineCusp)
    } else if class.kind.is_inflection() {
        Some(ProfileKind::Inflection)
    } else {
        None
    };
    let s = match kind {
        Some(kind) => {
            let p = Profiler::new(curve, kind)?;
            if t.abs() < SWITCH_RADIUS {
                p.arclength_smooth(t)?
            } else {
                p.arclength_direct(t)?
            }
        }
        None => {
            t * integrate(0.0, 1.0, |v| {
                let j = curve.jet(t * v, 2)?;
                Ok(j.derivative(1).cross(j.derivative(2)).abs().cbrt())
            })?
        }
    };
    let pow = |p: f64| s.signum() * s.abs().powf(p);
    Ok((s, pow(0.6), pow(0.75)))
}

fn require(
    germ: &PlaneJet,
    op: &'static str,
    inflection: bool,
    order: usize,
) -> Result<SingularityClass> {
    if germ.order() < order {
        return Err(Error::OrderTooLow {
            op,
            order: germ.order(),
            needed: order,
        });
    }
    let class = classify(germ, CLASSIFY_TOL)?;
    let ok = if inflection {
        class.kind.is_inflection()
    } else {
        class.kind.is_cusp()
    };
    if !ok {
        return Err(Error::WrongClass {
            op,
            expected: if inflection {
                "a generic inflection"
            } else {
                "a 3/2-cusp"
            },
            found: class.kind.name().to_string(),
        });
    }
    Ok(class)
}

/// Affine cuspidal curvature
/// `(24 d23 d25 + 60 d23 d34 − 35 d24²) / d23^{12/5}` with `dij = [γ^(i), γ^(j)]`.
pub fn mu_a(germ: &PlaneJet) -> Result<f64> {
    require(germ, "mu_A", false, 5)?;
    let d = |i, j| germ.bracket(i, j);
    let d23 = d(2, 3);
    let num = 24.0 * d23 * d(2, 5) + 60.0 * d23 * d(3, 4) - 35.0 * d(2, 4).powi(2);
    Ok(num / signed_frac_pow(d23, 12, 5)?)
}

/// Affine inflectional curvature and its sign `ε = sgn d13`:
/// `ε (d14 − 6 d23) / d13^{5/4}`.
pub fn mu_i(germ: &PlaneJet) -> Result<(f64, f64)> {
    let class = require(germ, "mu_I", true, 4)?;
    let eps = class.d13.signum();
    let num = germ.bracket(1, 4) - 6.0 * germ.bracket(2, 3);
    Ok((eps * num / signed_frac_pow(class.d13, 5, 4)?, eps))
}

/// Residual of
/// `−(9/7)((d14 + d23)/d13) f_t + 32 f_t² + 9 f_tt` for the jet of `f` in the
/// curve parameter.
pub fn identity_17_residual(germ: &PlaneJet, f_t: &Jet) -> Result<f64> {
    let class = require(germ, "identity_17_residual", true, 4)?;
    if f_t.order() < 2 {
        return Err(Error::OrderTooLow {
            op: "identity_17_residual",
            order: f_t.order(),
            needed: 2,
        });
    }
    let ratio = (germ.bracket(1, 4) + germ.bracket(2, 3)) / class.d13;
    let fd = f_t.coeff(1);
    let fdd = 2.0 * f_t.coeff(2);
    Ok(-(9.0 / 7.0) * ratio * fd + 32.0 * fd * fd + 9.0 * fdd)
}

/// Residual of `32 ḟ² + 9 f̈` for the jet of `f` in the 3/4-arclength parameter.
pub fn identity_45_residual(f_tau: &Jet) -> f64 {
    let fd = f_tau.coeff(1);
    32.0 * fd * fd + 18.0 * f_tau.coeff(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AffineCuspReport {
    pub mu_a: f64,
    pub f0: f64,
    pub fdot0: f64,
    pub h0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InflectionReport {
    pub mu_i: f64,
    pub eps_i: f64,
    pub f0: f64,
    pub g0: f64,
    pub identity_residual_t: f64,
    pub identity_residual_tau: f64,
}

pub fn affine_cusp_report<C: Curve + ?Sized>(curve: &C) -> Result<AffineCuspReport> {
    let germ = curve.jet(0.0, 8)?;
    let mu = mu_a(&germ)?;
    let p = Profiler::new(curve, ProfileKind::AffineCusp)?;
    let f = p.f_jet_tau();
    Ok(AffineCuspReport {
        mu_a: mu,
        f0: f.coeff(0),
        fdot0: f.coeff(1),
        h0: f.coeff(2),
    })
}

pub fn inflection_report<C: Curve + ?Sized>(curve: &C) -> Result<InflectionReport> {
    let germ = curve.jet(0.0, 8)?;
    let (mu, eps) = mu_i(&germ)?;
    let p = Profiler::new(curve, ProfileKind::Inflection)?;
    let f = p.f_jet_tau();
    Ok(InflectionReport {
        mu_i: mu,
        eps_i: eps,
        f0: f.coeff(0),
        g0: f.coeff(1),
        identity_residual_t: identity_17_residual(&germ, p.f_jet_t())?,
        identity_residual_tau: identity_45_residual(f),
    })
}

/// Sample `(s_A)² κ_A` against the 3/5-arclength parameter at a cusp.
pub fn profile_a_cusp<C: Curve + ?Sized>(
    curve: &C,
    grid: &[f64],
) -> Result<(NormalizedProfile, AffineCuspReport)> {
    let report = affine_cusp_report(curve)?;
    let profile = Profiler::new(curve, ProfileKind::AffineCusp)?.sample(grid)?;
    Ok((profile, report))
}

/// Sample `(s_A)² κ_A` against the 3/4-arclength parameter at an inflection.
pub fn profile_a_inflection<C: Curve + ?Sized>(
    curve: &C,
    grid: &[f64],
) -> Result<(NormalizedProfile, InflectionReport)> {
    let report = inflection_report(curve)?;
    let profile = Profiler::new(curve, ProfileKind::Inflection)?.sample(grid)?;
    Ok((profile, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_curve;

    fn germ(text: &str) -> PlaneJet {
        parse_curve(text).unwrap().jet(0.0, 8).unwrap()
    }

    #[test]
    fn affine_curvature_values() {
        let parabola = parse_curve("(t, t^2)").unwrap();
        assert_eq!(kappa_a(&parabola, 0.4).unwrap(), 0.0);
        let cubic = parse_curve("(t^2, t^3)").unwrap();
        let k = kappa_a(&cubic, 1.0).unwrap();
        assert!((k - 16.0 / 6f64.powf(8.0 / 3.0)).abs() < 1e-15);
        let graph = parse_curve("(t, t^3)").unwrap();
        let k = kappa_a(&graph, 1.0).unwrap();
        assert!((k + 20.0 / 6f64.powf(8.0 / 3.0)).abs() < 1e-15);
        assert!(kappa_a(&graph, 0.0).is_err());
    }

    #[test]
    fn affine_arclengths() {
        let cubic = parse_curve("(t^2, t^3)").unwrap();
        let (s, tau35, _) = arclength_a(&cubic, 1.0).unwrap();
        let expected = 3.0 * 6f64.cbrt() / 5.0;
        assert!((s - expected).abs() < 1e-13);
        let (_, tau_half, _) = arclength_a(&cubic, 0.5).unwrap();
        assert!((tau35 - 2.0 * tau_half).abs() < 1e-13);
        let graph = parse_curve("(t, t^3)").unwrap();
        let (s, _, _) = arclength_a(&graph, 1.0).unwrap();
        assert!((s - 0.75 * 6f64.cbrt()).abs() < 1e-13);
    }

    #[test]
    fn cuspidal_invariants() {
        assert!((mu_a(&germ("(t - sin(t), -1 + cos(t))")).unwrap() - 36.0).abs() < 1e-12);
        assert!((mu_a(&germ("(t - sinh(t), -1 + cosh(t))")).unwrap() + 36.0).abs() < 1e-12);
        assert_eq!(mu_a(&germ("(3*t^2, 3*t^3)")).unwrap(), 0.0);
        let m = mu_a(&germ("(t^2, t^3 + t^5)")).unwrap();
        assert!((m - 80.0 * 54f64.powf(0.2)).abs() < 1e-11);
    }

    #[test]
    fn inflectional_invariants() {
        let (m, eps) = mu_i(&germ("(t - sin(t), -t + cos(t))")).unwrap();
        assert!((m + 6.0).abs() < 1e-14 && eps == 1.0);
        let (m, _) = mu_i(&germ("(-t + sin(t), t + cos(t))")).unwrap();
        assert!((m - 6.0).abs() < 1e-14);
        assert_eq!(mu_i(&germ("(t, t^3)")).unwrap().0, 0.0);
        let (m, _) = mu_i(&germ("(t, t^3 + t^4)")).unwrap();
        assert!((m - 4.0 / 6f64.powf(0.25)).abs() < 1e-14);
        assert!(mu_i(&germ("(t^2, t^3)")).is_err());
    }

    #[test]
    fn identity_residual_is_linear_in_second_derivative() {
        let g = germ("(t - sin(t), -t + cos(t))");
        let f = Jet::new(0.0, vec![-5.0 / 16.0, 0.3, 0.1]);
        let bumped = Jet::new(0.0, vec![-5.0 / 16.0, 0.3, 0.6]);
        let r0 = identity_17_residual(&g, &f).unwrap();
        let r1 = identity_17_residual(&g, &bumped).unwrap();
        assert!((r1 - r0 - 9.0).abs() < 1e-14);
    }
}
