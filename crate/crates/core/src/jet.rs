//! Truncated Taylor series ("jets") of scalar quantities.
//!
//! A [`Jet`] stores the normalized Taylor coefficients `c[k] = f^(k)(t0) / k!`
//! of a quantity at a base parameter value `t0`. Arithmetic propagates the
//! coefficients exactly up to the retained order, which makes jets the
//! automatic-differentiation carrier for every curvature formula in the crate.

use std::ops::{Add, Div, Mul, Neg, Sub};

use thiserror::Error;

/// Default truncation order for curve germs.
pub const DEFAULT_ORDER: usize = 8;

/// Relative factor used by [`Jet::deflate_default`].
pub const DEFLATION_RTOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JetError {
    #[error("jets have different base points ({0} vs {1})")]
    BaseMismatch(f64, f64),
    #[error("division by a jet with zero constant coefficient")]
    DivisionByZero,
    #[error("composition requires the inner constant coefficient {inner} to equal the outer base point {outer}")]
    CompositionMismatch { inner: f64, outer: f64 },
    #[error("coefficient {index} is {value:e}, not divisible by t^{power} within tolerance {tol:e}")]
    NotDivisible {
        index: usize,
        value: f64,
        power: usize,
        tol: f64,
    },
    #[error("cannot deflate by t^{power}: jet order is only {order}")]
    OrderTooLow { power: usize, order: usize },
    #[error("fractional power {m}/{n} of a quantity vanishing at the base point")]
    FractionalPowerAtZero { m: i64, n: i64 },
    #[error("pole: {0}^({1}) with negative exponent at zero")]
    Pole(f64, f64),
    #[error("series reversion needs a nonzero linear coefficient")]
    NotInvertible,
    #[error("operation requires a jet based at the origin, got base point {0}")]
    NotAtOrigin(f64),
}

/// Signed fractional power `sgn(t)^(m n) |t|^(m/n)` with `m/n` reduced first.
///
/// Even `m n` gives a nonnegative result, odd `m n` carries the sign of `t`.
/// `t^(1/2)` is therefore `sqrt(|t|)`, and `t^(8/3)` is never negative.
pub fn signed_frac_pow(t: f64, m: i64, n: i64) -> Result<f64, JetError> {
    let (m, n) = reduce_ratio(m, n);
    if t == 0.0 {
        return if m < 0 {
            Err(JetError::Pole(t, m as f64 / n as f64))
        } else if m == 0 {
            Ok(1.0)
        } else {
            Ok(0.0)
        };
    }
    let magnitude = if n == 1 {
        t.abs().powi(m as i32)
    } else {
        t.abs().powf(m as f64 / n as f64)
    };
    if (m * n) % 2 != 0 && t < 0.0 {
        Ok(-magnitude)
    } else {
        Ok(magnitude)
    }
}

/// Reduce `m/n` to lowest terms with a positive denominator.
///
/// # Panics
///
/// Panics when `n == 0`.
pub fn reduce_ratio(m: i64, n: i64) -> (i64, i64) {
    assert!(n != 0, "zero denominator");
    let g = gcd(m.unsigned_abs(), n.unsigned_abs()).max(1) as i64;
    let s = if n < 0 { -1 } else { 1 };
    (s * m / g, s * n / g)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Truncated Taylor series at a base point.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    base: f64,
    coeffs: Vec<f64>,
}

impl Jet {
    /// Build a jet from its normalized coefficients. An empty slice is
    /// treated as the order-0 zero jet.
    pub fn new(base: f64, coeffs: Vec<f64>) -> Self {
        let coeffs = if coeffs.is_empty() { vec![0.0] } else { coeffs };
        Self { base, coeffs }
    }

    pub fn constant(base: f64, value: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = value;
        Self { base, coeffs }
    }

    /// The jet of the independent variable itself.
    pub fn variable(base: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = base;
        if order >= 1 {
            coeffs[1] = 1.0;
        }
        Self { base, coeffs }
    }

    /// The jet of `(t - base)`, the local coordinate at the base point.
    pub fn offset(base: f64, order: usize) -> Self {
        let mut j = Self::variable(base, order);
        j.coeffs[0] = 0.0;
        j
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// `k`-th derivative at the base point.
    pub fn derivative(&self, k: usize) -> f64 {
        self.coeff(k) * factorial(k)
    }

    /// Largest coefficient magnitude.
    pub fn scale(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = (order + 1).min(self.coeffs.len());
        Self::new(self.base, self.coeffs[..n].to_vec())
    }

    /// Evaluate the truncated polynomial at `t`.
    pub fn eval(&self, t: f64) -> f64 {
        let h = t - self.base;
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * h + c)
    }

    /// Jet of the derivative quantity; the order drops by one.
    pub fn differentiate(&self) -> Self {
        if self.order() == 0 {
            return Self::constant(self.base, 0.0, 0);
        }
        let coeffs = (1..self.coeffs.len())
            .map(|k| k as f64 * self.coeffs[k])
            .collect();
        Self::new(self.base, coeffs)
    }

    /// Jet of the antiderivative with the given value at the base point.
    pub fn integrate(&self, value: f64) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(value);
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / (k + 1) as f64),
        );
        Self::new(self.base, coeffs)
    }

    /// Re-expand the truncated polynomial about a new base point.
    pub fn recenter(&self, base: f64) -> Self {
        let h = base - self.base;
        if h == 0.0 {
            return self.clone();
        }
        let n = self.coeffs.len();
        let mut c = self.coeffs.clone();
        // repeated synthetic division (Taylor shift)
        for i in 0..n {
            for k in (i..n - 1).rev() {
                c[k] += h * c[k + 1];
            }
        }
        Self::new(base, c)
    }

    fn check_base(&self, other: &Jet) -> Result<(), JetError> {
        if self.base == other.base {
            Ok(())
        } else {
            Err(JetError::BaseMismatch(self.base, other.base))
        }
    }

    fn common_order(&self, other: &Jet) -> usize {
        self.order().min(other.order())
    }

    pub fn try_add(&self, other: &Jet) -> Result<Jet, JetError> {
        self.check_base(other)?;
        let n = self.common_order(other) + 1;
        let coeffs = (0..n).map(|k| self.coeffs[k] + other.coeffs[k]).collect();
        Ok(Jet::new(self.base, coeffs))
    }

    pub fn try_sub(&self, other: &Jet) -> Result<Jet, JetError> {
        self.check_base(other)?;
        let n = self.common_order(other) + 1;
        let coeffs = (0..n).map(|k| self.coeffs[k] - other.coeffs[k]).collect();
        Ok(Jet::new(self.base, coeffs))
    }

    pub fn try_mul(&self, other: &Jet) -> Result<Jet, JetError> {
        self.check_base(other)?;
        let n = self.common_order(other) + 1;
        let coeffs = (0..n)
            .map(|k| (0..=k).map(|j| self.coeffs[j] * other.coeffs[k - j]).sum())
            .collect();
        Ok(Jet::new(self.base, coeffs))
    }

    pub fn try_div(&self, other: &Jet) -> Result<Jet, JetError> {
        self.check_base(other)?;
        let b0 = other.coeffs[0];
        if b0 == 0.0 {
            return Err(JetError::DivisionByZero);
        }
        let n = self.common_order(other) + 1;
        let mut q = vec![0.0; n];
        for k in 0..n {
            let s: f64 = (1..=k).map(|j| other.coeffs[j] * q[k - j]).sum();
            q[k] = (self.coeffs[k] - s) / b0;
        }
        Ok(Jet::new(self.base, q))
    }

    pub fn recip(&self) -> Result<Jet, JetError> {
        Jet::constant(self.base, 1.0, self.order()).try_div(self)
    }

    /// `self ∘ inner`: the jet of `self(inner(s))` at `inner`'s base point.
    pub fn compose(&self, inner: &Jet) -> Result<Jet, JetError> {
        let p = inner.coeffs[0];
        let tol = 1e-12 * self.base.abs().max(1.0);
        if (p - self.base).abs() > tol {
            return Err(JetError::CompositionMismatch {
                inner: p,
                outer: self.base,
            });
        }
        let order = self.common_order(inner);
        let mut d = inner.truncate(order);
        d.coeffs[0] = 0.0;
        let mut acc = Jet::constant(inner.base, self.coeffs[order], order);
        for k in (0..order).rev() {
            acc = &acc * &d;
            acc.coeffs[0] += self.coeffs[k];
        }
        Ok(acc)
    }

    /// Series reversion: the jet of the inverse function at `self.value()`.
    pub fn invert(&self) -> Result<Jet, JetError> {
        let order = self.order();
        let d1 = self.coeff(1);
        if order == 0 || d1 == 0.0 {
            return Err(JetError::NotInvertible);
        }
        let y0 = self.coeffs[0];
        // Local map D(u) = self(base + u) - y0, solve D(X(s)) = s for X.
        let s = Jet::offset(y0, order);
        let mut x = &s * (1.0 / d1);
        for _ in 1..order {
            let mut higher = Jet::constant(y0, 0.0, order);
            let mut power = x.clone();
            for k in 2..=order {
                power = &power * &x;
                higher = &higher + &(&power * self.coeffs[k]);
            }
            x = &(&s - &higher) * (1.0 / d1);
        }
        x.coeffs[0] = self.base;
        Ok(x)
    }

    /// Divide by `(t - base)^power`, checking the leading coefficients vanish
    /// within `tol`.
    pub fn deflate(&self, power: usize, tol: f64) -> Result<Jet, JetError> {
        if power > self.order() {
            return Err(JetError::OrderTooLow {
                power,
                order: self.order(),
            });
        }
        for (index, &value) in self.coeffs[..power].iter().enumerate() {
            if value.abs() > tol {
                return Err(JetError::NotDivisible {
                    index,
                    value,
                    power,
                    tol,
                });
            }
        }
        Ok(Jet::new(self.base, self.coeffs[power..].to_vec()))
    }

    /// [`deflate`](Self::deflate) with tolerance relative to the largest coefficient.
    pub fn deflate_default(&self, power: usize) -> Result<Jet, JetError> {
        self.deflate(power, DEFLATION_RTOL * self.scale())
    }

    /// Multiply by `(t - base)^power`; exact, the order grows by `power`.
    pub fn inflate(&self, power: usize) -> Jet {
        let mut coeffs = vec![0.0; power];
        coeffs.extend_from_slice(&self.coeffs);
        Jet::new(self.base, coeffs)
    }

    pub fn exp(&self) -> Jet {
        let a = &self.coeffs;
        let n = a.len();
        let mut e = vec![0.0; n];
        e[0] = a[0].exp();
        for k in 1..n {
            let s: f64 = (1..=k).map(|j| j as f64 * a[j] * e[k - j]).sum();
            e[k] = s / k as f64;
        }
        Jet::new(self.base, e)
    }

    /// Simultaneous `(sin, cos)`.
    pub fn sin_cos(&self) -> (Jet, Jet) {
        self.trig_pair(-1.0)
    }

    /// Simultaneous `(sinh, cosh)`.
    pub fn sinh_cosh(&self) -> (Jet, Jet) {
        self.trig_pair(1.0)
    }

    fn trig_pair(&self, sign: f64) -> (Jet, Jet) {
        let a = &self.coeffs;
        let n = a.len();
        let mut s = vec![0.0; n];
        let mut c = vec![0.0; n];
        if sign < 0.0 {
            s[0] = a[0].sin();
            c[0] = a[0].cos();
        } else {
            s[0] = a[0].sinh();
            c[0] = a[0].cosh();
        }
        for k in 1..n {
            let mut ss = 0.0;
            let mut cc = 0.0;
            for j in 1..=k {
                let w = j as f64 * a[j];
                ss += w * c[k - j];
                cc += w * s[k - j];
            }
            s[k] = ss / k as f64;
            c[k] = sign * cc / k as f64;
        }
        (Jet::new(self.base, s), Jet::new(self.base, c))
    }

    pub fn sin(&self) -> Jet {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Jet {
        self.sin_cos().1
    }

    pub fn sinh(&self) -> Jet {
        self.sinh_cosh().0
    }

    pub fn cosh(&self) -> Jet {
        self.sinh_cosh().1
    }

    /// Real power of a jet with positive constant term.
    fn powf_positive(&self, p: f64) -> Jet {
        let a = &self.coeffs;
        let n = a.len();
        let mut y = vec![0.0; n];
        y[0] = a[0].powf(p);
        for k in 1..n {
            let s: f64 = (1..=k)
                .map(|j| ((p + 1.0) * j as f64 - k as f64) * a[j] * y[k - j])
                .sum();
            y[k] = s / (k as f64 * a[0]);
        }
        Jet::new(self.base, y)
    }

    /// Integer power by repeated multiplication (division for negative `n`).
    pub fn powi(&self, n: i64) -> Result<Jet, JetError> {
        if n < 0 {
            return self.powi(-n)?.recip().map_err(|_| Jet::pole(self, n as f64));
        }
        let mut result = Jet::constant(self.base, 1.0, self.order());
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    fn pole(&self, exponent: f64) -> JetError {
        JetError::Pole(self.value(), exponent)
    }

    /// Rational power `m/n` with the signed convention of [`signed_frac_pow`].
    ///
    /// Integer exponents use repeated multiplication; genuinely fractional
    /// exponents need a nonzero constant term.
    pub fn pow_ratio(&self, m: i64, n: i64) -> Result<Jet, JetError> {
        let (m, n) = reduce_ratio(m, n);
        if n == 1 {
            return self.powi(m);
        }
        let a0 = self.coeffs[0];
        if a0 == 0.0 {
            return Err(JetError::FractionalPowerAtZero { m, n });
        }
        let sign = a0.signum();
        let magnitude = (self * sign).powf_positive(m as f64 / n as f64);
        if (m * n) % 2 != 0 {
            Ok(&magnitude * sign)
        } else {
            Ok(magnitude)
        }
    }

    /// Real power of `|self|`, requiring a nonzero constant term.
    pub fn abs_powf(&self, p: f64) -> Result<Jet, JetError> {
        let a0 = self.coeffs[0];
        if a0 == 0.0 {
            return Err(JetError::DivisionByZero);
        }
        Ok((self * a0.signum()).powf_positive(p))
    }

    pub fn sqrt(&self) -> Result<Jet, JetError> {
        if self.coeffs[0] <= 0.0 {
            return Err(JetError::FractionalPowerAtZero { m: 1, n: 2 });
        }
        Ok(self.powf_positive(0.5))
    }
}

pub(crate) fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

macro_rules! binary_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Jet> for &Jet {
            type Output = Jet;
            /// Panics on base-point mismatch; use the `try_` form for fallible input.
            fn $method(self, rhs: &Jet) -> Jet {
                self.$checked(rhs).expect("jet arithmetic on incompatible jets")
            }
        }
        impl $trait<Jet> for Jet {
            type Output = Jet;
            fn $method(self, rhs: Jet) -> Jet {
                (&self).$method(&rhs)
            }
        }
    };
}

binary_op!(Add, add, try_add);
binary_op!(Sub, sub, try_sub);
binary_op!(Mul, mul, try_mul);

impl Div<&Jet> for &Jet {
    type Output = Jet;
    /// Panics on a zero constant denominator or a base mismatch.
    fn div(self, rhs: &Jet) -> Jet {
        self.try_div(rhs).expect("jet division")
    }
}

impl Add<f64> for &Jet {
    type Output = Jet;
    fn add(self, rhs: f64) -> Jet {
        let mut j = self.clone();
        j.coeffs[0] += rhs;
        j
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, rhs: f64) -> Jet {
        self.coeffs[0] += rhs;
        self
    }
}

impl Sub<f64> for &Jet {
    type Output = Jet;
    fn sub(self, rhs: f64) -> Jet {
        self + (-rhs)
    }
}

impl Mul<f64> for &Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        Jet::new(self.base, self.coeffs.iter().map(|c| c * rhs).collect())
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(mut self, rhs: f64) -> Jet {
        self.coeffs.iter_mut().for_each(|c| *c *= rhs);
        self
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self * -1.0
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self * -1.0
    }
}
