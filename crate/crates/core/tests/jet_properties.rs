use cuspidal::jet::{signed_frac_pow, Jet};
use proptest::prelude::*;

fn coeffs(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0..2.0f64, n)
}

fn close(a: &Jet, b: &Jet, tol: f64) -> bool {
    a.coeffs()
        .iter()
        .zip(b.coeffs())
        .all(|(x, y)| (x - y).abs() <= tol * (1.0 + x.abs().max(y.abs())))
}

proptest! {
    #[test]
    fn product_then_quotient(a in coeffs(9), mut b in coeffs(9), base in -1.0..1.0f64) {
        b[0] = 1.0 + b[0].abs();
        let a = Jet::new(base, a);
        let b = Jet::new(base, b);
        let back = (&a * &b).try_div(&b).unwrap();
        prop_assert!(close(&back, &a, 1e-10));
    }

    #[test]
    fn pythagoras(c in coeffs(10)) {
        let j = Jet::new(0.3, c);
        let (s, co) = j.sin_cos();
        let one = &(&s * &s) + &(&co * &co);
        prop_assert!(close(&one, &Jet::constant(0.3, 1.0, 9), 1e-12));
    }

    #[test]
    fn exp_is_a_homomorphism(a in coeffs(8), b in coeffs(8)) {
        let a = Jet::new(0.0, a);
        let b = Jet::new(0.0, b);
        prop_assert!(close(&(&a + &b).exp(), &(&a.exp() * &b.exp()), 1e-11));
    }

    #[test]
    fn series_reversion(c in prop::collection::vec(-0.3..0.3f64, 9), lead in 1.0..2.0f64) {
        // small higher coefficients keep the reversed series well scaled
        let mut c = c;
        c[0] = 0.0;
        c[1] = lead;
        let f = Jet::new(0.0, c);
        let g = f.invert().unwrap();
        prop_assert!(close(&f.compose(&g).unwrap(), &Jet::variable(0.0, 8), 1e-12));
        prop_assert!(close(&g.compose(&f).unwrap(), &Jet::variable(0.0, 8), 1e-12));
    }

    #[test]
    fn recentering_preserves_the_polynomial(c in coeffs(7), t in -1.0..1.0f64, s in -0.5..0.5f64) {
        let j = Jet::new(0.0, c);
        let r = j.recenter(t);
        prop_assert!((r.eval(t + s) - j.eval(t + s)).abs() < 1e-10);
    }

    #[test]
    fn integrate_then_differentiate(c in coeffs(6), v in -1.0..1.0f64) {
        let j = Jet::new(0.2, c);
        let back = j.integrate(v).differentiate();
        prop_assert!(close(&back, &j, 1e-14));
    }

    #[test]
    fn deflation_inverts_inflation(c in coeffs(6), k in 1usize..4) {
        let j = Jet::new(0.0, c);
        let d = j.inflate(k).deflate_default(k).unwrap();
        prop_assert!(close(&d, &j, 0.0));
    }

    #[test]
    fn fractional_power_of_a_square(c in coeffs(6)) {
        let mut c = c;
        c[0] = 1.0 + c[0].abs();
        let j = Jet::new(0.0, c);
        let sq = (&j * &j).sqrt().unwrap();
        prop_assert!(close(&sq, &j, 1e-11));
        let third = j.pow_ratio(1, 3).unwrap().powi(3).unwrap();
        prop_assert!(close(&third, &j, 1e-11));
    }

    #[test]
    fn signed_power_signs(t in -10.0..10.0f64) {
        prop_assume!(t != 0.0);
        // m n even: even function
        prop_assert_eq!(signed_frac_pow(t, 12, 5).unwrap(), signed_frac_pow(-t, 12, 5).unwrap());
        // m n odd: odd function
        prop_assert_eq!(signed_frac_pow(t, 1, 3).unwrap(), -signed_frac_pow(-t, 1, 3).unwrap());
    }
}

#[test]
fn reduced_exponent_is_used_for_the_sign() {
    // 2/6 reduces to 1/3, which is odd
    assert!((signed_frac_pow(-8.0, 2, 6).unwrap() + 2.0).abs() < 1e-15);
}
