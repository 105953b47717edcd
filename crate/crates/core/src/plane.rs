//! Plane vectors, 2x2 maps and jets of plane curves.

use std::ops::{Add, Mul, Neg, Sub};

use crate::jet::{factorial, Jet, JetError};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// The bracket `[self, o] = det(self, o)`.
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

/// Row-major 2x2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(1.0, 0.0, 0.0, 1.0);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    /// Matrix with the given columns.
    pub fn from_columns(c0: Vec2, c1: Vec2) -> Self {
        Self::new(c0.x, c1.x, c0.y, c1.y)
    }

    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new(c, -s, s, c)
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let det = self.det();
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        Some(Mat2::new(
            self.d / det,
            -self.b / det,
            -self.c / det,
            self.a / det,
        ))
    }

    pub fn apply(&self, v: Vec2) -> Vec2 {
        Vec2::new(self.a * v.x + self.b * v.y, self.c * v.x + self.d * v.y)
    }

    pub fn column(&self, i: usize) -> Vec2 {
        match i {
            0 => Vec2::new(self.a, self.c),
            _ => Vec2::new(self.b, self.d),
        }
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

/// Jet of a parametrized plane curve: one [`Jet`] per coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneJet {
    pub x: Jet,
    pub y: Jet,
}

impl PlaneJet {
    pub fn new(x: Jet, y: Jet) -> Result<Self, JetError> {
        if x.base() != y.base() {
            return Err(JetError::BaseMismatch(x.base(), y.base()));
        }
        let order = x.order().min(y.order());
        Ok(Self {
            x: x.truncate(order),
            y: y.truncate(order),
        })
    }

    pub fn base(&self) -> f64 {
        self.x.base()
    }

    pub fn order(&self) -> usize {
        self.x.order()
    }

    pub fn point(&self) -> Vec2 {
        Vec2::new(self.x.value(), self.y.value())
    }

    /// `k`-th derivative vector at the base point.
    pub fn derivative(&self, k: usize) -> Vec2 {
        Vec2::new(self.x.derivative(k), self.y.derivative(k))
    }

    /// `k`-th normalized Taylor coefficient vector.
    pub fn coeff(&self, k: usize) -> Vec2 {
        Vec2::new(self.x.coeff(k), self.y.coeff(k))
    }

    /// Jet of the velocity.
    pub fn differentiate(&self) -> PlaneJet {
        PlaneJet {
            x: self.x.differentiate(),
            y: self.y.differentiate(),
        }
    }

    /// Bracket `[γ^(i), γ^(j)]` at the base point.
    pub fn bracket(&self, i: usize, j: usize) -> f64 {
        self.derivative(i).cross(self.derivative(j))
    }

    pub fn transform(&self, m: &Mat2, offset: Vec2) -> PlaneJet {
        PlaneJet {
            x: &(&self.x * m.a) + &(&self.y * m.b) + offset.x,
            y: &(&self.x * m.c) + &(&self.y * m.d) + offset.y,
        }
    }

    pub fn translate(&self, offset: Vec2) -> PlaneJet {
        self.transform(&Mat2::IDENTITY, offset)
    }

    /// Reparametrize by a scalar jet `t(s)` whose value is this jet's base.
    pub fn compose(&self, inner: &Jet) -> Result<PlaneJet, JetError> {
        Ok(PlaneJet {
            x: self.x.compose(inner)?,
            y: self.y.compose(inner)?,
        })
    }

    pub fn recenter(&self, base: f64) -> PlaneJet {
        PlaneJet {
            x: self.x.recenter(base),
            y: self.y.recenter(base),
        }
    }

    pub fn truncate(&self, order: usize) -> PlaneJet {
        PlaneJet {
            x: self.x.truncate(order),
            y: self.y.truncate(order),
        }
    }

    pub fn eval(&self, t: f64) -> Vec2 {
        Vec2::new(self.x.eval(t), self.y.eval(t))
    }
}

/// Jet of `[u, v]` for jets of two plane vectors.
pub fn cross_jet(ux: &Jet, uy: &Jet, vx: &Jet, vy: &Jet) -> Jet {
    &(ux * vy) - &(uy * vx)
}

/// Jets of `[γ', γ'']` and `[γ'', γ''']` for a curve jet.
///
/// The first drops two orders relative to `gamma`, the second three.
pub fn bracket_jets(gamma: &PlaneJet) -> (Jet, Jet) {
    let d1 = gamma.differentiate();
    let d2 = d1.differentiate();
    let d3 = d2.differentiate();
    let b = cross_jet(&d1.x, &d1.y, &d2.x, &d2.y);
    let n = cross_jet(&d2.x, &d2.y, &d3.x, &d3.y);
    (b, n)
}

/// `k!` as a float.
pub fn fact(k: usize) -> f64 {
    factorial(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cusp_brackets() {
        let t = Jet::variable(0.0, 6);
        let g = PlaneJet::new(&t * &t, &(&t * &t) * &t).unwrap();
        assert_eq!(g.bracket(2, 3), 12.0);
        assert_eq!(g.bracket(1, 2), 0.0);
        let (b, n) = bracket_jets(&g);
        // [γ', γ''] = 6 t^2, [γ'', γ'''] = 12
        assert_eq!(b.coeffs()[..3], [0.0, 0.0, 6.0]);
        assert_eq!(n.value(), 12.0);
    }

    #[test]
    fn matrix_inverse() {
        let m = Mat2::new(2.0, 1.0, 1.0, 1.0);
        let p = m * m.inverse().unwrap();
        assert!((p.a - 1.0).abs() < 1e-15 && p.b.abs() < 1e-15);
        assert!(Mat2::new(1.0, 2.0, 2.0, 4.0).inverse().is_none());
    }
}
