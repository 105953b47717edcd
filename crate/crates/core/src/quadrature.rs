//! Gauss–Legendre quadrature and the smooth representation of singular
//! integrals `∫₀ᵗ |u|^α φ(u) du`.

use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::legendre::GaussLegendre;

use crate::error::{Error, Result};
use crate::jet::Jet;

/// Number of nodes of the primary rule.
pub const NODES: usize = 64;
const MAX_DEPTH: u32 = 6;
const RTOL: f64 = 1e-13;
/// Subintervals are also accepted at this fraction of the whole integral,
/// the floor set by cancellation in integrands near a singular endpoint.
const GLOBAL_RTOL: f64 = 1e-12;

/// Nodes and weights mapped to `[0, 1]`.
struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Rule {
    fn new(n: usize) -> Rule {
        let gl = GaussLegendre::new(NonZeroUsize::new(n).expect("positive node count"));
        let (nodes, weights) = gl
            .as_node_weight_pairs()
            .iter()
            .map(|&(x, w)| (0.5 * (x + 1.0), 0.5 * w))
            .unzip();
        Rule { nodes, weights }
    }

    fn apply<F>(&self, a: f64, b: f64, f: &mut F) -> Result<f64>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let h = b - a;
        let mut sum = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            sum += w * f(a + h * x)?;
        }
        Ok(h * sum)
    }
}

fn rule(n: usize) -> &'static Rule {
    static R64: OnceLock<Rule> = OnceLock::new();
    static R32: OnceLock<Rule> = OnceLock::new();
    static R16: OnceLock<Rule> = OnceLock::new();
    match n {
        64 => R64.get_or_init(|| Rule::new(64)),
        32 => R32.get_or_init(|| Rule::new(32)),
        16 => R16.get_or_init(|| Rule::new(16)),
        _ => unreachable!("unsupported rule size {n}"),
    }
}

/// Integrate a smooth function on `[a, b]`.
///
/// The 64-node rule is accepted when it agrees with the 32-node rule; the
/// interval is bisected otherwise, down to `2^-6` of its length.
pub fn integrate<F>(a: f64, b: f64, mut f: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    adaptive(a, b, &mut f, 0, None)
}

fn adaptive<F>(a: f64, b: f64, f: &mut F, depth: u32, whole: Option<f64>) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let fine = rule(64).apply(a, b, f)?;
    let coarse = rule(32).apply(a, b, f)?;
    let diff = (fine - coarse).abs();
    if !fine.is_finite() {
        return Err(Error::QuadratureFailure { a, b, diff });
    }
    let whole = whole.unwrap_or(fine.abs());
    if diff <= RTOL * fine.abs() || diff <= GLOBAL_RTOL * whole || diff <= 1e-300 {
        return Ok(fine);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::QuadratureFailure { a, b, diff });
    }
    let m = 0.5 * (a + b);
    Ok(adaptive(a, m, f, depth + 1, Some(whole))? + adaptive(m, b, f, depth + 1, Some(whole))?)
}

/// Single application of the 16-node rule; exact for polynomials of degree 31.
pub fn gauss16<F>(a: f64, b: f64, mut f: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    rule(16).apply(a, b, &mut f)
}

/// Nodes and weights of the 16-node rule mapped to `[a, b]`.
pub fn gauss16_points(a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> {
    let r = rule(16);
    let h = b - a;
    r.nodes
        .iter()
        .zip(&r.weights)
        .map(move |(x, w)| (a + h * x, h * w))
}

/// Smallest `q` making `α q` an integer, or 8 when none up to 12 is found.
pub fn substitution_power(alpha: f64) -> u32 {
    (1..=12)
        .find(|&q| {
            let x = alpha * q as f64;
            (x - x.round()).abs() < 1e-12
        })
        .unwrap_or(8)
}

/// `∫₀¹ v^α ψ(t v) dv`, evaluated with `v = w^q` so the weight becomes a
/// polynomial in `w`.
pub fn weighted_mean<F>(alpha: f64, t: f64, mut psi: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if alpha <= 0.0 || !alpha.is_finite() {
        return Err(Error::domain("weighted_mean", "alpha must be positive"));
    }
    let q = substitution_power(alpha);
    let qf = q as f64;
    let exponent = alpha * qf + qf - 1.0;
    let integer_exponent = (exponent - exponent.round()).abs() < 1e-12;
    integrate(0.0, 1.0, |w| {
        let v = w.powi(q as i32);
        let weight = if integer_exponent {
            w.powi(exponent.round() as i32)
        } else {
            w.powf(exponent)
        };
        Ok(qf * weight * psi(t * v)?)
    })
}

/// `Φ(t) / (sgn(t) |t|^{1+α})` with `Φ(t) = ∫₀ᵗ |u|^α φ(u) du`.
///
/// Through the representation `∫₀¹ v^α φ(t v) dv` the result is smooth in
/// `t` and equals `φ(0)/(1+α)` at `t = 0`.
pub fn lemma9_quotient<F>(phi: F, alpha: f64, t: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    weighted_mean(alpha, t, |u| Ok(phi(u)))
}

/// Taylor jet at 0 of the quotient in [`lemma9_quotient`] from a jet of `φ` at 0.
pub fn lemma9_jet(phi: &Jet, alpha: f64) -> Result<Jet> {
    if alpha <= 0.0 {
        return Err(Error::domain("lemma9_jet", "alpha must be positive"));
    }
    if phi.base() != 0.0 {
        return Err(crate::jet::JetError::NotAtOrigin(phi.base()).into());
    }
    let coeffs = phi
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| c / (k as f64 + 1.0 + alpha))
        .collect();
    Ok(Jet::new(0.0, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution_powers() {
        assert_eq!(substitution_power(1.0), 1);
        assert_eq!(substitution_power(1.0 / 3.0), 3);
        assert_eq!(substitution_power(2.0 / 3.0), 3);
        assert_eq!(substitution_power(0.75), 4);
        assert_eq!(substitution_power(std::f64::consts::SQRT_2), 8);
    }

    #[test]
    fn constant_phi() {
        for alpha in [1.0 / 3.0, 2.0 / 3.0, 1.0, 2.5] {
            for t in [-1.0, -0.3, 0.0, 0.7, 1.0] {
                let f = lemma9_quotient(|_| 2.0, alpha, t).unwrap();
                assert!((f - 2.0 / (1.0 + alpha)).abs() < 1e-13, "{alpha} {t}");
            }
        }
    }

    #[test]
    fn linear_phi_is_odd() {
        let p = lemma9_quotient(|u| u, 2.0 / 3.0, 1.0).unwrap();
        let m = lemma9_quotient(|u| u, 2.0 / 3.0, -1.0).unwrap();
        assert!((p - 0.375).abs() < 1e-14);
        assert!((m + 0.375).abs() < 1e-14);
    }

    #[test]
    fn jet_matches_quadrature() {
        let phi = Jet::variable(0.0, 10).cos();
        let j = lemma9_jet(&phi, 1.0 / 3.0).unwrap();
        let t = 0.2;
        let q = lemma9_quotient(f64::cos, 1.0 / 3.0, t).unwrap();
        assert!((j.eval(t) - q).abs() < 1e-12);
    }

    #[test]
    fn rejects_nonpositive_alpha() {
        assert!(lemma9_quotient(|_| 1.0, 0.0, 0.5).is_err());
    }

    #[test]
    fn smooth_integral() {
        let v = integrate(0.0, std::f64::consts::PI, |x| Ok(x.sin())).unwrap();
        assert!((v - 2.0).abs() < 1e-14);
    }
}
