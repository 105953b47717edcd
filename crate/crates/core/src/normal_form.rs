//! Equi-affine normal forms of cusp and inflection germs.
//!
//! A cusp germ is carried by an equi-affine map and a reparametrization to
//! `(u², u³ + c u⁵ + O(u⁶))`, an inflection germ to `(u, u³ + c u⁴ + O(u⁵))`.
//! Intermediate steps may use maps of any determinant; the accumulated
//! determinant is undone at the end by the diagonal scaling that preserves
//! the shape of the normal form.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::euclid::{classify, CLASSIFY_TOL};
use crate::jet::Jet;
use crate::plane::{Mat2, PlaneJet, Vec2};

/// Germ order used by [`normal_form`].
pub const NORMAL_FORM_ORDER: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NormalFormKind {
    Cusp,
    Inflection,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalForm {
    pub kind: NormalFormKind,
    pub c: f64,
    /// The reduced germ in the normal-form parameter.
    pub reduced: PlaneJet,
    /// Whether an orientation-reversing reflection was applied first.
    pub flipped: bool,
}

/// Jet `t sqrt(x / t^k)`-style coordinate: `(x / t^k)^{1/k} t`.
fn root_coordinate(x: &Jet, k: usize) -> Result<Jet> {
    let lead = x.deflate_default(k)?;
    let root = match k {
        1 => lead,
        2 => lead.sqrt()?,
        _ => lead.abs_powf(1.0 / k as f64)?,
    };
    Ok(root.inflate(1))
}

/// Reparametrize so that `x` becomes `u^k` exactly.
fn straighten(g: &PlaneJet, k: usize) -> Result<PlaneJet> {
    let u = root_coordinate(&g.x, k)?;
    let t_of_u = u.invert()?;
    Ok(g.truncate(t_of_u.order()).compose(&t_of_u)?)
}

pub fn normal_form(germ: &PlaneJet, kind: NormalFormKind) -> Result<NormalForm> {
    let class = classify(germ, CLASSIFY_TOL)?;
    let matches = match kind {
        NormalFormKind::Cusp => class.kind.is_cusp(),
        NormalFormKind::Inflection => class.kind.is_inflection(),
    };
    if !matches {
        return Err(Error::WrongClass {
            op: "normal_form",
            expected: match kind {
                NormalFormKind::Cusp => "a 3/2-cusp",
                NormalFormKind::Inflection => "a generic inflection",
            },
            found: class.kind.name().to_string(),
        });
    }
    let needed = match kind {
        NormalFormKind::Cusp => 6,
        NormalFormKind::Inflection => 5,
    };
    if germ.order() < needed {
        return Err(Error::OrderTooLow {
            op: "normal_form",
            order: germ.order(),
            needed,
        });
    }
    let mut g = germ.translate(-germ.point());
    let flipped = match kind {
        NormalFormKind::Cusp => class.d23 < 0.0,
        NormalFormKind::Inflection => class.d13 < 0.0,
    };
    let mut det = 1.0;
    if flipped {
        g = g.transform(&Mat2::new(1.0, 0.0, 0.0, -1.0), Vec2::default());
        det = -det;
    }
    let frame = match kind {
        NormalFormKind::Cusp => Mat2::from_columns(g.derivative(2), g.derivative(3)),
        NormalFormKind::Inflection => {
            Mat2::from_columns(g.derivative(1), g.derivative(3) * (1.0 / 6.0))
        }
    };
    let inv = frame
        .inverse()
        .ok_or_else(|| Error::domain("normal_form", "degenerate frame"))?;
    g = g.transform(&inv, Vec2::default());
    det *= inv.det();

    let (c, reduced) = match kind {
        NormalFormKind::Cusp => {
            // (t²/2 + …, t³/6 + …) -> (u², u³ + y4 u⁴ + …)
            g = straighten(&g, 2)?;
            g = g.transform(&Mat2::new(2.0, 0.0, 0.0, 6.0), Vec2::default());
            det *= 12.0;
            let xi = 2.0 * g.y.coeff(4) / 3.0;
            g = g.transform(&Mat2::new(1.0, xi, 0.0, 1.0), Vec2::default());
            g = straighten(&g, 2)?;
            // diag(a, a^{3/2}) with u -> u/√a keeps the shape and fixes det
            let a = det.abs().powf(-0.4);
            let scaled = g.transform(&Mat2::new(a, 0.0, 0.0, a.powf(1.5)), Vec2::default());
            let v = Jet::offset(0.0, scaled.order()) * (1.0 / a.sqrt());
            let reduced = scaled.compose(&v)?;
            (reduced.y.coeff(5), reduced)
        }
        NormalFormKind::Inflection => {
            // (t + …, t³ + …) -> (u, u³ + c' u⁴ + …)
            g = straighten(&g, 1)?;
            let a = det.abs().powf(-0.25);
            let scaled = g.transform(&Mat2::new(a, 0.0, 0.0, a.powi(3)), Vec2::default());
            let v = Jet::offset(0.0, scaled.order()) * (1.0 / a);
            let reduced = scaled.compose(&v)?;
            (reduced.y.coeff(4), reduced)
        }
    };
    Ok(NormalForm {
        kind,
        c,
        reduced,
        flipped,
    })
}

/// The constant `80 · 54^{1/5}` relating `c` and `μ_A` for cusps.
pub fn cusp_constant() -> f64 {
    80.0 * 54f64.powf(0.2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Curve;
    use crate::dsl::parse_curve;

    fn germ(text: &str) -> PlaneJet {
        parse_curve(text).unwrap().jet(0.0, NORMAL_FORM_ORDER).unwrap()
    }

    #[test]
    fn model_germs() {
        let nf = normal_form(&germ("(t^2, t^3 + t^5)"), NormalFormKind::Cusp).unwrap();
        assert!((nf.c - 1.0).abs() < 1e-12);
        let r = &nf.reduced;
        assert!((r.x.coeff(2) - 1.0).abs() < 1e-12 && r.x.coeff(3).abs() < 1e-12);
        assert!((r.y.coeff(3) - 1.0).abs() < 1e-12 && r.y.coeff(4).abs() < 1e-12);
        let nf = normal_form(&germ("(t, t^3 + t^4)"), NormalFormKind::Inflection).unwrap();
        assert!((nf.c - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cycloid_coefficient() {
        let nf = normal_form(&germ("(t - sin(t), -1 + cos(t))"), NormalFormKind::Cusp).unwrap();
        assert!((nf.c - 36.0 / cusp_constant()).abs() < 1e-10);
        assert!(!nf.flipped);
    }

    #[test]
    fn wrong_kind() {
        assert!(normal_form(&germ("(t^2, t^3)"), NormalFormKind::Inflection).is_err());
        assert!(normal_form(&germ("(cos(t), sin(t))"), NormalFormKind::Cusp).is_err());
    }
}
