//! A small expression language for parametrized plane curves.
//!
//! ```text
//! (a*(t - sin(t)), a*(-1 + cos(t))) with a=1
//! ```
//!
//! Expressions are evaluated either on plain floats or on [`Jet`]s, the
//! latter giving exact Taylor coefficients of the written formula.

mod catalog;
mod parser;

use std::collections::BTreeMap;
use std::fmt;

pub use catalog::{catalog_lookup, catalog_names, catalog_source, CatalogEntry, CATALOG};
pub use parser::{parse_curve, parse_curve_with, parse_expr, ParseError};

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::jet::{reduce_ratio, signed_frac_pow, Jet};
use crate::plane::PlaneJet;

/// Reduced rational exponent `num/den` with `den > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rational {
    pub num: i64,
    pub den: i64,
}

impl Rational {
    /// # Panics
    ///
    /// Panics when `den == 0`; the parser rejects that case before construction.
    pub fn new(num: i64, den: i64) -> Self {
        let (num, den) = reduce_ratio(num, den);
        Self { num, den }
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Sinh,
    Cosh,
    Exp,
}

impl Func {
    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "exp" => Func::Exp,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Exp => "exp",
        }
    }

    fn apply(self, x: f64) -> f64 {
        match self {
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Sinh => x.sinh(),
            Func::Cosh => x.cosh(),
            Func::Exp => x.exp(),
        }
    }

    fn apply_jet(self, x: &Jet) -> Jet {
        match self {
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Sinh => x.sinh(),
            Func::Cosh => x.cosh(),
            Func::Exp => x.exp(),
        }
    }
}

/// Name of the curve parameter.
pub const PARAM: &str = "t";

/// Expression tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    /// The curve parameter `t`.
    Param,
    /// A named constant such as `a`, bound at evaluation time.
    Const(String),
    Literal(f64),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Rational),
    Call(Func, Box<Expr>),
}

/// Constants available without a binding.
fn builtin(name: &str) -> Option<f64> {
    match name {
        "pi" => Some(std::f64::consts::PI),
        _ => None,
    }
}

fn lookup(name: &str, params: &BTreeMap<String, f64>) -> Result<f64> {
    params
        .get(name)
        .copied()
        .or_else(|| builtin(name))
        .ok_or_else(|| Error::UnboundParameter(name.to_string()))
}

impl Expr {
    pub fn binary(op: BinOp, l: Expr, r: Expr) -> Expr {
        Expr::Binary(op, Box::new(l), Box::new(r))
    }

    /// Names of constants used, excluding builtins.
    pub fn constants(&self, out: &mut Vec<String>) {
        match self {
            Expr::Const(name) => {
                if builtin(name).is_none() && !out.contains(name) {
                    out.push(name.clone());
                }
            }
            Expr::Param | Expr::Literal(_) => {}
            Expr::Neg(e) | Expr::Pow(e, _) | Expr::Call(_, e) => e.constants(out),
            Expr::Binary(_, l, r) => {
                l.constants(out);
                r.constants(out);
            }
        }
    }

    pub fn eval(&self, t: f64, params: &BTreeMap<String, f64>) -> Result<f64> {
        Ok(match self {
            Expr::Param => t,
            Expr::Const(name) => lookup(name, params)?,
            Expr::Literal(v) => *v,
            Expr::Neg(e) => -e.eval(t, params)?,
            Expr::Binary(op, l, r) => {
                let (a, b) = (l.eval(t, params)?, r.eval(t, params)?);
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => {
                        if b == 0.0 {
                            return Err(Error::domain("eval", "division by zero"));
                        }
                        a / b
                    }
                }
            }
            Expr::Pow(e, r) => {
                let b = e.eval(t, params)?;
                if r.is_integer() {
                    if b == 0.0 && r.num < 0 {
                        return Err(crate::jet::JetError::Pole(b, r.num as f64).into());
                    }
                    b.powi(r.num as i32)
                } else {
                    signed_frac_pow(b, r.num, r.den)?
                }
            }
            Expr::Call(f, e) => f.apply(e.eval(t, params)?),
        })
    }

    /// Evaluate on the jet `t` of the independent variable.
    pub fn eval_jet(&self, t: &Jet, params: &BTreeMap<String, f64>) -> Result<Jet> {
        let order = t.order();
        let base = t.base();
        Ok(match self {
            Expr::Param => t.clone(),
            Expr::Const(name) => Jet::constant(base, lookup(name, params)?, order),
            Expr::Literal(v) => Jet::constant(base, *v, order),
            Expr::Neg(e) => -e.eval_jet(t, params)?,
            Expr::Binary(op, l, r) => {
                let (a, b) = (l.eval_jet(t, params)?, r.eval_jet(t, params)?);
                match op {
                    BinOp::Add => a.try_add(&b)?,
                    BinOp::Sub => a.try_sub(&b)?,
                    BinOp::Mul => a.try_mul(&b)?,
                    BinOp::Div => a.try_div(&b)?,
                }
            }
            Expr::Pow(e, r) => e.eval_jet(t, params)?.pow_ratio(r.num, r.den)?,
            Expr::Call(f, e) => f.apply_jet(&e.eval_jet(t, params)?),
        })
    }

    /// Replace bound constants by literals and fold trivial arithmetic.
    pub fn substitute(&self, params: &BTreeMap<String, f64>) -> Expr {
        match self {
            Expr::Const(name) => match params.get(name) {
                Some(v) => Expr::Literal(*v),
                None => self.clone(),
            },
            Expr::Param | Expr::Literal(_) => self.clone(),
            Expr::Neg(e) => match e.substitute(params) {
                Expr::Literal(v) if v < 0.0 => Expr::Literal(-v),
                s => Expr::Neg(Box::new(s)),
            },
            Expr::Pow(e, r) => match (e.substitute(params), r) {
                (Expr::Literal(v), r) if r.is_integer() && r.num >= 0 => {
                    Expr::Literal(v.powi(r.num as i32))
                }
                (s, r) => Expr::Pow(Box::new(s), *r),
            },
            Expr::Call(f, e) => Expr::Call(*f, Box::new(e.substitute(params))),
            Expr::Binary(op, l, r) => {
                let (l, r) = (l.substitute(params), r.substitute(params));
                match (op, l, r) {
                    (BinOp::Mul, Expr::Literal(a), Expr::Literal(b)) => Expr::Literal(a * b),
                    (BinOp::Mul, Expr::Literal(a), e) | (BinOp::Mul, e, Expr::Literal(a))
                        if a == 1.0 =>
                    {
                        e
                    }
                    (BinOp::Div, e, Expr::Literal(1.0)) => e,
                    (op, l, r) => Expr::binary(*op, l, r),
                }
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(BinOp::Add | BinOp::Sub, ..) => 1,
            Expr::Binary(BinOp::Mul | BinOp::Div, ..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Literal(v) if *v < 0.0 => 0,
            _ => 5,
        }
    }
}

fn write_wrapped(f: &mut fmt::Formatter<'_>, e: &Expr, wrap: bool) -> fmt::Result {
    if wrap {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Param => f.write_str(PARAM),
            Expr::Const(name) => f.write_str(name),
            Expr::Literal(v) => {
                if *v < 0.0 {
                    write!(f, "({v})")
                } else {
                    write!(f, "{v}")
                }
            }
            Expr::Neg(e) => {
                f.write_str("-")?;
                write_wrapped(f, e, e.precedence() < 3)
            }
            Expr::Binary(op, l, r) => {
                let p = self.precedence();
                write_wrapped(f, l, l.precedence() < p)?;
                f.write_str(match op {
                    BinOp::Add => " + ",
                    BinOp::Sub => " - ",
                    BinOp::Mul => "*",
                    BinOp::Div => "/",
                })?;
                write_wrapped(f, r, r.precedence() <= p)
            }
            Expr::Pow(e, r) => {
                write_wrapped(f, e, e.precedence() < 5)?;
                if r.is_integer() && r.num >= 0 {
                    write!(f, "^{r}")
                } else {
                    write!(f, "^({r})")
                }
            }
            Expr::Call(func, e) => write!(f, "{}({e})", func.name()),
        }
    }
}

/// A parsed plane curve `t -> (x(t), y(t))`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSpec {
    pub x: Expr,
    pub y: Expr,
    pub params: BTreeMap<String, f64>,
    pub label: String,
}

impl CurveSpec {
    /// Check every constant is bound.
    pub fn validate(&self) -> Result<()> {
        let mut names = Vec::new();
        self.x.constants(&mut names);
        self.y.constants(&mut names);
        match names.into_iter().find(|n| !self.params.contains_key(n)) {
            Some(n) => Err(Error::UnboundParameter(n)),
            None => Ok(()),
        }
    }

    /// Copy with every bound constant replaced by its value.
    pub fn substituted(&self) -> CurveSpec {
        CurveSpec {
            x: self.x.substitute(&self.params),
            y: self.y.substitute(&self.params),
            params: self.params.clone(),
            label: self.label.clone(),
        }
    }

    pub fn point(&self, t: f64) -> Result<(f64, f64)> {
        Ok((self.x.eval(t, &self.params)?, self.y.eval(t, &self.params)?))
    }

    /// Source text including the `with` bindings.
    pub fn source(&self) -> String {
        let mut s = self.to_string();
        if !self.params.is_empty() {
            let bindings: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            s.push_str(" with ");
            s.push_str(&bindings.join(", "));
        }
        s
    }
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Curve for CurveSpec {
    fn jet(&self, t: f64, order: usize) -> Result<PlaneJet> {
        let var = Jet::variable(t, order);
        let x = self.x.eval_jet(&var, &self.params)?;
        let y = self.y.eval_jet(&var, &self.params)?;
        Ok(PlaneJet::new(x, y)?)
    }

    fn point(&self, t: f64) -> Result<crate::plane::Vec2> {
        let (x, y) = CurveSpec::point(self, t)?;
        Ok(crate::plane::Vec2::new(x, y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycloid_jet() {
        let spec = parse_curve("(a*(t - sin(t)), a*(-1 + cos(t))) with a=1").unwrap();
        let j = spec.jet(0.0, 3).unwrap();
        let close = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-15);
        assert!(close(j.x.coeffs(), &[0.0, 0.0, 0.0, 1.0 / 6.0]));
        assert!(close(j.y.coeffs(), &[0.0, 0.0, -0.5, 0.0]));
    }

    #[test]
    fn line_has_no_curvature_terms() {
        let spec = parse_curve("(t, 2*t)").unwrap();
        let j = spec.jet(0.7, 5).unwrap();
        for k in 2..=5 {
            assert_eq!(j.coeff(k).x, 0.0);
            assert_eq!(j.coeff(k).y, 0.0);
        }
    }

    #[test]
    fn unbound_constant() {
        assert_eq!(
            parse_curve("(a*t, t)"),
            Err(Error::UnboundParameter("a".into()))
        );
    }

    #[test]
    fn printing() {
        let spec = parse_curve("(-t^2 + (1 - t), t^(-2/4) * -(t))").unwrap();
        assert_eq!(spec.to_string(), "(-t^2 + (1 - t), t^(-1/2)*-t)");
        let again = parse_curve(&spec.to_string()).unwrap();
        assert_eq!(again.x, spec.x);
        assert_eq!(again.y, spec.y);
    }

    #[test]
    fn fractional_power_sign() {
        let spec = parse_curve("(t^(1/3), t^(2/3))").unwrap();
        let (x, y) = spec.point(-8.0).unwrap();
        assert!((x + 2.0).abs() < 1e-14 && (y - 4.0).abs() < 1e-13);
    }
}
