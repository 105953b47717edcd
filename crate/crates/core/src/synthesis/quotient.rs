//! Smooth quotients `φ(t) / t^k` of functions vanishing to order `k` at 0.

use std::rc::Rc;

use crate::curve::ScalarFn;
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::singular::SWITCH_RADIUS;

/// Order of the germ kept for evaluation near 0.
pub const QUOTIENT_GERM_ORDER: usize = 40;

pub struct SmoothQuotient {
    numerator: Rc<dyn ScalarFn>,
    k: usize,
    germ: Jet,
}

impl SmoothQuotient {
    pub fn new(numerator: Rc<dyn ScalarFn>, k: usize) -> Result<Self> {
        Self::with_order(numerator, k, QUOTIENT_GERM_ORDER)
    }

    pub fn with_order(numerator: Rc<dyn ScalarFn>, k: usize, order: usize) -> Result<Self> {
        let germ = numerator
            .jet(0.0, order + k)?
            .deflate_default(k)
            .map_err(|e| Error::domain("smooth quotient", e.to_string()))?;
        Ok(SmoothQuotient { numerator, k, germ })
    }

    pub fn germ(&self) -> &Jet {
        &self.germ
    }
}

impl ScalarFn for SmoothQuotient {
    fn jet(&self, t: f64, order: usize) -> Result<Jet> {
        if t.abs() < SWITCH_RADIUS && order <= self.germ.order() {
            if order == 0 {
                return Ok(Jet::constant(t, self.germ.eval(t), 0));
            }
            return Ok(self.germ.recenter(t).truncate(order));
        }
        let num = self.numerator.jet(t, order)?;
        let den = Jet::variable(t, order).powi(self.k as i64)?;
        Ok(num.try_div(&den)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::JetFn;

    #[test]
    fn sine_over_t() {
        let sin: Rc<dyn ScalarFn> = Rc::new(JetFn(|t: &Jet| Ok(t.sin())));
        let q = SmoothQuotient::new(sin, 1).unwrap();
        for t in [0.0, 1e-9, 0.03, 0.049, 0.05, 0.3] {
            let expected = if t == 0.0 { 1.0 } else { f64::sin(t) / t };
            assert!((q.value(t).unwrap() - expected).abs() < 1e-15, "{t}");
        }
        // derivative of sin(t)/t at 0.04 on both paths
        let a = q.jet(0.04, 3).unwrap();
        let b = q.jet(0.06, 3).unwrap().recenter(0.04);
        assert!((a.coeff(1) - b.coeff(1)).abs() < 1e-6);
    }

    #[test]
    fn rejects_nonvanishing_numerator() {
        let one: Rc<dyn ScalarFn> = Rc::new(1.0);
        assert!(SmoothQuotient::new(one, 1).is_err());
    }
}
