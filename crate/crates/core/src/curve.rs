//! Curves and scalar functions as sources of jets.

use std::collections::BTreeMap;

use crate::dsl::{parse_expr, Expr};
use crate::error::Result;
use crate::jet::Jet;
use crate::plane::{Mat2, PlaneJet, Vec2};

/// A parametrized plane curve that can be expanded at any parameter value.
pub trait Curve {
    /// Taylor jet of the curve at `t`.
    fn jet(&self, t: f64, order: usize) -> Result<PlaneJet>;

    fn point(&self, t: f64) -> Result<Vec2> {
        Ok(self.jet(t, 0)?.point())
    }

    /// Highest order this curve can expand to with full accuracy.
    fn max_order(&self) -> usize {
        usize::MAX
    }
}

impl<C: Curve + ?Sized> Curve for &C {
    fn jet(&self, t: f64, order: usize) -> Result<PlaneJet> {
        (**self).jet(t, order)
    }
    fn point(&self, t: f64) -> Result<Vec2> {
        (**self).point(t)
    }
    fn max_order(&self) -> usize {
        (**self).max_order()
    }
}

impl<C: Curve + ?Sized> Curve for Box<C> {
    fn jet(&self, t: f64, order: usize) -> Result<PlaneJet> {
        (**self).jet(t, order)
    }
    fn point(&self, t: f64) -> Result<Vec2> {
        (**self).point(t)
    }
    fn max_order(&self) -> usize {
        (**self).max_order()
    }
}

/// `t -> m γ(t) + offset`.
#[derive(Debug, Clone)]
pub struct AffineImage<C> {
    pub curve: C,
    pub matrix: Mat2,
    pub offset: Vec2,
}

impl<C: Curve> Curve for AffineImage<C> {
    fn jet(&self, t: f64, order: usize) -> Result<PlaneJet> {
        Ok(self.curve.jet(t, order)?.transform(&self.matrix, self.offset))
    }
    fn max_order(&self) -> usize {
        self.curve.max_order()
    }
}

/// `t -> γ(-t)`.
#[derive(Debug, Clone)]
pub struct Reversed<C>(pub C);

impl<C: Curve> Curve for Reversed<C> {
    fn jet(&self, t: f64, order: usize) -> Result<PlaneJet> {
        let j = self.0.jet(-t, order)?;
        let flip = |c: &[f64]| {
            c.iter()
                .enumerate()
                .map(|(k, v)| if k % 2 == 1 { -v } else { *v })
                .collect::<Vec<_>>()
        };
        Ok(PlaneJet::new(
            Jet::new(t, flip(j.x.coeffs())),
            Jet::new(t, flip(j.y.coeffs())),
        )?)
    }
    fn max_order(&self) -> usize {
        self.0.max_order()
    }
}

/// `t -> γ(φ(t))`.
pub struct Reparametrized<C, F> {
    pub curve: C,
    pub phi: F,
}

impl<C: Curve, F: ScalarFn> Curve for Reparametrized<C, F> {
    fn jet(&self, t: f64, order: usize) -> Result<PlaneJet> {
        let inner = self.phi.jet(t, order)?;
        let outer = self.curve.jet(inner.value(), order)?;
        Ok(outer.compose(&inner)?)
    }
    fn max_order(&self) -> usize {
        self.curve.max_order()
    }
}

/// A polynomial curve given by its coefficient vectors at 0.
#[derive(Debug, Clone)]
pub struct PolynomialCurve {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl Curve for PolynomialCurve {
    fn jet(&self, t: f64, order: usize) -> Result<PlaneJet> {
        let pad = |c: &[f64]| {
            let mut v = c.to_vec();
            v.resize(v.len().max(order + 1), 0.0);
            Jet::new(0.0, v).recenter(t).truncate(order)
        };
        Ok(PlaneJet::new(pad(&self.x), pad(&self.y))?)
    }
}

/// A smooth scalar function of one variable.
pub trait ScalarFn {
    fn jet(&self, t: f64, order: usize) -> Result<Jet>;

    fn value(&self, t: f64) -> Result<f64> {
        Ok(self.jet(t, 0)?.value())
    }
}

impl<S: ScalarFn + ?Sized> ScalarFn for &S {
    fn jet(&self, t: f64, order: usize) -> Result<Jet> {
        (**self).jet(t, order)
    }
    fn value(&self, t: f64) -> Result<f64> {
        (**self).value(t)
    }
}

impl<S: ScalarFn + ?Sized> ScalarFn for Box<S> {
    fn jet(&self, t: f64, order: usize) -> Result<Jet> {
        (**self).jet(t, order)
    }
    fn value(&self, t: f64) -> Result<f64> {
        (**self).value(t)
    }
}

impl ScalarFn for f64 {
    fn jet(&self, t: f64, order: usize) -> Result<Jet> {
        Ok(Jet::constant(t, *self, order))
    }
    fn value(&self, _t: f64) -> Result<f64> {
        Ok(*self)
    }
}

/// A scalar function written in the curve language, in the variable `t`
/// (`tau` is accepted as a synonym).
#[derive(Debug, Clone, PartialEq)]
pub struct ExprFn {
    pub expr: Expr,
    pub params: BTreeMap<String, f64>,
}

impl ExprFn {
    pub fn parse(text: &str) -> Result<ExprFn> {
        let f = ExprFn {
            expr: tau_as_param(parse_expr(text)?),
            params: BTreeMap::new(),
        };
        let mut names = Vec::new();
        f.expr.constants(&mut names);
        if let Some(n) = names.into_iter().next() {
            return Err(crate::error::Error::UnboundParameter(n));
        }
        Ok(f)
    }
}

fn tau_as_param(e: Expr) -> Expr {
    let r = |b: Box<Expr>| Box::new(tau_as_param(*b));
    match e {
        Expr::Const(n) if n == "tau" => Expr::Param,
        Expr::Neg(a) => Expr::Neg(r(a)),
        Expr::Binary(op, a, b) => Expr::Binary(op, r(a), r(b)),
        Expr::Pow(a, q) => Expr::Pow(r(a), q),
        Expr::Call(f, a) => Expr::Call(f, r(a)),
        other => other,
    }
}

impl ScalarFn for ExprFn {
    fn jet(&self, t: f64, order: usize) -> Result<Jet> {
        self.expr.eval_jet(&Jet::variable(t, order), &self.params)
    }
    fn value(&self, t: f64) -> Result<f64> {
        self.expr.eval(t, &self.params)
    }
}

/// A scalar function given by a closure over the jet of the variable.
pub struct JetFn<F>(pub F);

impl<F: Fn(&Jet) -> Result<Jet>> ScalarFn for JetFn<F> {
    fn jet(&self, t: f64, order: usize) -> Result<Jet> {
        (self.0)(&Jet::variable(t, order))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reversal_negates_odd_coefficients() {
        let c = PolynomialCurve {
            x: vec![0.0, 0.0, 1.0],
            y: vec![0.0, 0.0, 0.0, 1.0],
        };
        let r = Reversed(&c).jet(0.5, 3).unwrap();
        let direct = c.jet(-0.5, 3).unwrap();
        assert_eq!(r.y.value(), direct.y.value());
        assert_eq!(r.y.coeff(1), -direct.y.coeff(1));
        assert_eq!(r.base(), 0.5);
    }

    #[test]
    fn reparametrization_chain_rule() {
        let c = PolynomialCurve {
            x: vec![0.0, 1.0],
            y: vec![0.0, 0.0, 1.0],
        };
        let phi = JetFn(|t: &Jet| Ok(t * 2.0));
        let r = Reparametrized { curve: &c, phi };
        let j = r.jet(0.0, 2).unwrap();
        assert_eq!(j.x.coeffs(), &[0.0, 2.0, 0.0]);
        assert_eq!(j.y.coeffs(), &[0.0, 0.0, 4.0]);
    }

    #[test]
    fn expression_functions() {
        let f = ExprFn::parse("1 + t + t^2").unwrap();
        assert_eq!(f.value(2.0).unwrap(), 7.0);
        assert!(ExprFn::parse("a*t").is_err());
    }
}
