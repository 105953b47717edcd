//! Normalized curvature near a singular parameter value.
//!
//! All three normalized profiles share one structure. The arclength-type
//! integral is `s(t) = sgn(t) |t|^{1+α} Q(t)` with `Q(t) = ∫₀¹ v^α ψ(t v) dv`
//! for a positive smooth `ψ`, the smooth coordinate is `τ = t Q^p` with
//! `p (1 + α) = 1`, and the normalized curvature is a smooth expression in
//! `Q`, `ψ` and one deflated bracket combination:
//!
//! | kind        | α   | p   | ψ                   | f                 |
//! |-------------|-----|-----|---------------------|-------------------|
//! | Euclidean   | 1   | 1/2 | `|γ'|/|t|`          | `√Q a / ψ³`       |
//! | affine cusp | 2/3 | 3/5 | `|B/t²|^{1/3}`      | `Q² n / (9 ψ⁸)`   |
//! | inflection  | 1/3 | 3/4 | `|B/t|^{1/3}`       | `Q² N / (9 ψ⁸)`   |
//!
//! where `B = [γ', γ'']`, `a = B/t²`, `N` is the numerator of the affine
//! curvature and `n = N/t²`. Inside [`SWITCH_RADIUS`] the factors come from
//! the deflated Taylor germ at 0; outside, the raw definitions are
//! integrated and divided directly.

use serde::{Deserialize, Serialize};

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::plane::{bracket_jets, cross_jet, PlaneJet, Vec2};
use crate::quadrature::{integrate, weighted_mean};

/// Below this `|t|` the deflated germ is used.
pub const SWITCH_RADIUS: f64 = 0.05;

/// Order of the curve germ expanded at the singular point.
pub const GERM_ORDER: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileKind {
    EuclidCusp,
    AffineCusp,
    Inflection,
}

impl ProfileKind {
    pub fn alpha(self) -> f64 {
        match self {
            ProfileKind::EuclidCusp => 1.0,
            ProfileKind::AffineCusp => 2.0 / 3.0,
            ProfileKind::Inflection => 1.0 / 3.0,
        }
    }

    /// Exponent `p` in `τ = sgn(s) |s|^p`.
    pub fn exponent(self) -> f64 {
        1.0 / (1.0 + self.alpha())
    }

    pub fn name(self) -> &'static str {
        match self {
            ProfileKind::EuclidCusp => "euclid-cusp",
            ProfileKind::AffineCusp => "affine-cusp",
            ProfileKind::Inflection => "inflection",
        }
    }
}

impl std::str::FromStr for ProfileKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "euclid-cusp" => Ok(ProfileKind::EuclidCusp),
            "affine-cusp" => Ok(ProfileKind::AffineCusp),
            "inflection" => Ok(ProfileKind::Inflection),
            _ => Err(format!(
                "unknown profile kind `{s}` (expected euclid-cusp, affine-cusp or inflection)"
            )),
        }
    }
}

/// Germ data of a normalized profile in its smooth coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GermData {
    pub f0: f64,
    pub fdot0: f64,
    pub fddot0: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalizedProfile {
    pub kind: ProfileKind,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub germ: GermData,
}

/// Numerator of the affine curvature, `3B[γ',γ⁗] + 12B[γ'',γ'''] − 5[γ',γ''']²`.
pub fn affine_numerator_jet(gamma: &PlaneJet) -> Jet {
    let d1 = gamma.differentiate();
    let d2 = d1.differentiate();
    let d3 = d2.differentiate();
    let d4 = d3.differentiate();
    let b = cross_jet(&d1.x, &d1.y, &d2.x, &d2.y);
    let b14 = cross_jet(&d1.x, &d1.y, &d4.x, &d4.y);
    let b23 = cross_jet(&d2.x, &d2.y, &d3.x, &d3.y);
    let b13 = cross_jet(&d1.x, &d1.y, &d3.x, &d3.y);
    &(&(&(&b * &b14) * 3.0) + &(&(&b * &b23) * 12.0)) - &(&(&b13 * &b13) * 5.0)
}

/// Pointwise numerator of the affine curvature from derivative vectors.
pub fn affine_numerator(d1: Vec2, d2: Vec2, d3: Vec2, d4: Vec2) -> f64 {
    let b = d1.cross(d2);
    3.0 * b * d1.cross(d4) + 12.0 * b * d2.cross(d3) - 5.0 * d1.cross(d3).powi(2)
}

fn derivatives(j: &PlaneJet) -> [Vec2; 5] {
    [
        j.derivative(0),
        j.derivative(1),
        j.derivative(2),
        j.derivative(3),
        j.derivative(4),
    ]
}

/// Smooth evaluation of a normalized profile of a curve with a singular
/// point at `t = 0`.
pub struct Profiler<'a, C: ?Sized> {
    curve: &'a C,
    kind: ProfileKind,
    /// Deflated germ polynomials; Euclid: `[w_x, w_y, a]`, otherwise `[B/t^k, num]`.
    polys: Vec<Jet>,
    tau_jet: Jet,
    t_series: Jet,
    f_t: Jet,
    f_tau: Jet,
    limit: f64,
}

impl<'a, C: Curve + ?Sized> Profiler<'a, C> {
    pub fn new(curve: &'a C, kind: ProfileKind) -> Result<Self> {
        let order = GERM_ORDER.min(curve.max_order());
        let germ = curve.jet(0.0, order)?;
        let wrong = |e: crate::jet::JetError| Error::WrongClass {
            op: "profile",
            expected: match kind {
                ProfileKind::Inflection => "a generic inflection at t = 0",
                _ => "a 3/2-cusp at t = 0",
            },
            found: e.to_string(),
        };
        let d1 = germ.differentiate();
        let (b, _) = bracket_jets(&germ);
        let alpha = kind.alpha();
        let p = kind.exponent();
        let (polys, psi, f_of) = match kind {
            ProfileKind::EuclidCusp => {
                let wx = d1.x.deflate_default(1).map_err(wrong)?;
                let wy = d1.y.deflate_default(1).map_err(wrong)?;
                let a = b.deflate_default(2).map_err(wrong)?;
                let psi = (&(&wx * &wx) + &(&wy * &wy)).sqrt().map_err(wrong)?;
                (vec![wx, wy, a], psi, 0)
            }
            ProfileKind::AffineCusp => {
                let a1 = b.deflate_default(2).map_err(wrong)?;
                let n = affine_numerator_jet(&germ).deflate_default(2).map_err(wrong)?;
                let psi = a1.abs_powf(1.0 / 3.0).map_err(wrong)?;
                (vec![a1, n], psi, 1)
            }
            ProfileKind::Inflection => {
                let b1 = b.deflate_default(1).map_err(wrong)?;
                let n = affine_numerator_jet(&germ);
                let psi = b1.abs_powf(1.0 / 3.0).map_err(wrong)?;
                (vec![b1, n], psi, 1)
            }
        };
        let q = crate::quadrature::lemma9_jet(&psi, alpha)?;
        let tau_jet = q.abs_powf(p)?.inflate(1);
        let f_t = if f_of == 0 {
            &(&q.sqrt()? * &polys[2]) / &psi.powi(3)?
        } else {
            &(&(&q * &q) * &polys[1]) / &(&psi.powi(8)? * 9.0)
        };
        let t_series = tau_jet.truncate(f_t.order().min(tau_jet.order())).invert()?;
        let f_tau = f_t.compose(&t_series)?;
        let limit = match kind {
            ProfileKind::EuclidCusp => {
                let mu = germ.bracket(2, 3) / germ.derivative(2).norm().powf(2.5);
                mu / (2.0 * std::f64::consts::SQRT_2)
            }
            ProfileKind::AffineCusp => 4.0 / 25.0,
            ProfileKind::Inflection => -5.0 / 16.0,
        };
        Ok(Profiler {
            curve,
            kind,
            polys,
            tau_jet,
            t_series,
            f_t,
            f_tau,
            limit,
        })
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    /// Jet of `f` in the original parameter at 0.
    pub fn f_jet_t(&self) -> &Jet {
        &self.f_t
    }

    /// Jet of `f` in the smooth coordinate at 0.
    pub fn f_jet_tau(&self) -> &Jet {
        &self.f_tau
    }

    /// Jet of the smooth coordinate `τ(t)` at 0.
    pub fn tau_jet(&self) -> &Jet {
        &self.tau_jet
    }

    /// Closed-form value of the profile at the singular point.
    pub fn limit(&self) -> f64 {
        self.limit
    }

    pub fn germ(&self) -> GermData {
        GermData {
            f0: self.f_tau.coeff(0),
            fdot0: self.f_tau.coeff(1),
            fddot0: 2.0 * self.f_tau.coeff(2),
        }
    }

    /// Deflated quantities at `t`, from the germ for small `|t|`.
    fn deflated(&self, t: f64) -> Result<Vec<f64>> {
        if t.abs() < SWITCH_RADIUS {
            return Ok(self.polys.iter().map(|p| p.eval(t)).collect());
        }
        self.deflated_exact(t)
    }

    fn deflated_exact(&self, t: f64) -> Result<Vec<f64>> {
        if t == 0.0 {
            return Err(Error::Singular { op: "profile", t });
        }
        let order = match self.kind {
            ProfileKind::EuclidCusp => 2,
            _ => 4,
        };
        let d = derivatives(&self.curve.jet(t, order)?);
        let b = d[1].cross(d[2]);
        Ok(match self.kind {
            ProfileKind::EuclidCusp => vec![d[1].x / t, d[1].y / t, b / (t * t)],
            ProfileKind::AffineCusp => {
                let n = affine_numerator(d[1], d[2], d[3], d[4]);
                vec![b / (t * t), n / (t * t)]
            }
            ProfileKind::Inflection => vec![b / t, affine_numerator(d[1], d[2], d[3], d[4])],
        })
    }

    fn psi_of(&self, v: &[f64]) -> f64 {
        match self.kind {
            ProfileKind::EuclidCusp => v[0].hypot(v[1]),
            _ => v[0].abs().cbrt(),
        }
    }

    fn f_of(&self, v: &[f64], q: f64) -> f64 {
        let psi = self.psi_of(v);
        match self.kind {
            ProfileKind::EuclidCusp => q.sqrt() * v[2] / psi.powi(3),
            _ => q * q * v[1] / (9.0 * psi.powi(8)),
        }
    }

    /// `Q(t) = ∫₀¹ v^α ψ(t v) dv` from the deflated factors.
    fn q_smooth(&self, t: f64) -> Result<f64> {
        weighted_mean(self.kind.alpha(), t, |u| Ok(self.psi_of(&self.deflated(u)?)))
    }

    /// Arclength density at `u`: `|γ̇|` or `|[γ̇, γ̈]|^{1/3}`.
    ///
    /// Near the singular point the raw brackets cancel catastrophically, so
    /// there the density is taken as `|u|^α ψ(u)` from the germ.
    fn density(&self, u: f64) -> Result<f64> {
        if u.abs() < SWITCH_RADIUS {
            let psi = self.psi_of(&self.deflated(u)?);
            return Ok(u.abs().powf(self.kind.alpha()) * psi);
        }
        let j = self.curve.jet(u, 2)?;
        Ok(match self.kind {
            ProfileKind::EuclidCusp => j.derivative(1).norm(),
            _ => j.derivative(1).cross(j.derivative(2)).abs().cbrt(),
        })
    }

    /// Signed arclength-type integral by quadrature of the density.
    pub fn arclength_direct(&self, t: f64) -> Result<f64> {
        let integral = match self.kind {
            ProfileKind::EuclidCusp => integrate(0.0, 1.0, |v| self.density(t * v))?,
            _ => integrate(0.0, 1.0, |w| Ok(3.0 * w * w * self.density(t * w * w * w)?))?,
        };
        Ok(t * integral)
    }

    /// Signed arclength-type integral through the smooth representation.
    pub fn arclength_smooth(&self, t: f64) -> Result<f64> {
        let q = self.q_smooth(t)?;
        Ok(t.signum() * t.abs().powf(1.0 + self.kind.alpha()) * q)
    }

    /// `(τ, dτ/dt, f)` at `t` along the smooth (germ) path.
    pub fn eval_smooth(&self, t: f64) -> Result<(f64, f64, f64)> {
        let p = self.kind.exponent();
        let v = self.deflated(t)?;
        let q = self.q_smooth(t)?;
        let psi = self.psi_of(&v);
        Ok((t * q.powf(p), p * psi * q.powf(p - 1.0), self.f_of(&v, q)))
    }

    /// `(τ, dτ/dt, f)` at `t ≠ 0` from the raw definitions.
    pub fn eval_direct(&self, t: f64) -> Result<(f64, f64, f64)> {
        let alpha = self.kind.alpha();
        let p = self.kind.exponent();
        let s = self.arclength_direct(t)?;
        let d = derivatives(&self.curve.jet(t, 4)?);
        let b = d[1].cross(d[2]);
        let (psi, f) = match self.kind {
            ProfileKind::EuclidCusp => {
                let speed = d[1].norm();
                (speed / t.abs(), s.abs().sqrt() * b / speed.powi(3))
            }
            _ => {
                let n = affine_numerator(d[1], d[2], d[3], d[4]);
                let root = b.abs().cbrt();
                let kappa = n / (9.0 * root.powi(8));
                (root / t.abs().powf(alpha), s * s * kappa)
            }
        };
        let q = s.abs() / t.abs().powf(1.0 + alpha);
        let tau = s.signum() * s.abs().powf(p);
        Ok((tau, p * psi * q.powf(p - 1.0), f))
    }

    /// `(τ, dτ/dt, f)` at `t`, switching paths at [`SWITCH_RADIUS`].
    pub fn eval_t(&self, t: f64) -> Result<(f64, f64, f64)> {
        if t == 0.0 {
            let slope = self.tau_jet.coeff(1);
            return Ok((0.0, slope, self.limit));
        }
        if t.abs() < SWITCH_RADIUS {
            self.eval_smooth(t)
        } else {
            self.eval_direct(t)
        }
    }

    /// Smooth coordinate at `t`.
    pub fn tau_of_t(&self, t: f64) -> Result<f64> {
        Ok(self.eval_t(t)?.0)
    }

    /// Solve `τ(t) = tau` by safeguarded Newton iteration.
    pub fn t_of_tau(&self, tau: f64) -> Result<f64> {
        if tau == 0.0 {
            return Ok(0.0);
        }
        let fail = || Error::RootNotFound {
            op: "t_of_tau",
            target: tau,
        };
        let sign = tau.signum();
        // work with s = sign * t so that the target is positive
        let (mut lo, mut hi) = (0.0_f64, f64::INFINITY);
        let linear = tau.abs() / self.tau_jet.coeff(1).abs().max(1e-300);
        let mut s = if tau.abs() <= 0.2 {
            sign * self.t_series.eval(tau)
        } else {
            linear
        };
        if !(s > 0.0) || !s.is_finite() {
            s = linear;
        }
        let target = tau.abs();
        let tol = 4.0 * f64::EPSILON * target;
        for _ in 0..200 {
            let (tv, slope, _) = self.eval_t(sign * s)?;
            let r = sign * tv - target;
            if r.abs() <= tol {
                return Ok(sign * s);
            }
            if r < 0.0 {
                lo = lo.max(s);
            } else {
                hi = hi.min(s);
            }
            let mut next = s - r / slope;
            if !(next > lo && next < hi) || !next.is_finite() {
                next = if hi.is_finite() { 0.5 * (lo + hi) } else { 2.0 * s };
            }
            if (next - s).abs() <= 2.0 * f64::EPSILON * s {
                return Ok(sign * next);
            }
            s = next;
            if s > 1e6 {
                break;
            }
        }
        Err(fail())
    }

    /// Normalized curvature at parameter value `t`.
    pub fn f_of_t(&self, t: f64) -> Result<f64> {
        Ok(self.eval_t(t)?.2)
    }

    /// Normalized curvature at smooth coordinate `tau`.
    pub fn f_of_tau(&self, tau: f64) -> Result<f64> {
        if tau == 0.0 {
            return Ok(self.limit);
        }
        self.f_of_t(self.t_of_tau(tau)?)
    }

    pub fn sample(&self, grid: &[f64]) -> Result<NormalizedProfile> {
        let values = grid
            .iter()
            .map(|&tau| self.f_of_tau(tau))
            .collect::<Result<Vec<_>>>()?;
        Ok(NormalizedProfile {
            kind: self.kind,
            grid: grid.to_vec(),
            values,
            germ: self.germ(),
        })
    }

    /// Largest discrepancy between the two evaluation paths on the band
    /// `0.04 ≤ |t| ≤ 0.06`: `(τ difference, f difference)`.
    pub fn overlap_discrepancy(&self) -> Result<(f64, f64)> {
        let mut worst = (0.0_f64, 0.0_f64);
        for k in 0..=10 {
            let m = 0.04 + 0.002 * k as f64;
            for t in [m, -m] {
                let v = if t.abs() < SWITCH_RADIUS {
                    self.polys.iter().map(|p| p.eval(t)).collect()
                } else {
                    self.deflated_exact(t)?
                };
                let q = weighted_mean(self.kind.alpha(), t, |u| {
                    let w = if u.abs() < SWITCH_RADIUS {
                        self.polys.iter().map(|p| p.eval(u)).collect()
                    } else {
                        self.deflated_exact(u)?
                    };
                    Ok(self.psi_of(&w))
                })?;
                let smooth_tau = t * q.powf(self.kind.exponent());
                let smooth_f = self.f_of(&v, q);
                let (tau, _, f) = self.eval_direct(t)?;
                worst.0 = worst.0.max((smooth_tau - tau).abs());
                worst.1 = worst.1.max((smooth_f - f).abs());
            }
        }
        Ok(worst)
    }
}
