use std::collections::BTreeMap;

use cuspidal::dsl::{catalog_lookup, catalog_names, parse_curve, parse_expr, BinOp, Expr, Func, Rational};
use cuspidal::{Curve, Jet};
use proptest::prelude::*;

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        Just(Expr::Param),
        Just(Expr::Const("a".into())),
        (0u32..40).prop_map(|n| Expr::Literal(n as f64 / 4.0)),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 24, 2, |inner| {
        let op = prop_oneof![
            Just(BinOp::Add),
            Just(BinOp::Sub),
            Just(BinOp::Mul),
            Just(BinOp::Div)
        ];
        let func = prop_oneof![
            Just(Func::Sin),
            Just(Func::Cos),
            Just(Func::Sinh),
            Just(Func::Cosh),
            Just(Func::Exp)
        ];
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (op, inner.clone(), inner.clone())
                .prop_map(|(op, l, r)| Expr::Binary(op, Box::new(l), Box::new(r))),
            (inner.clone(), 1i64..4, 1i64..4)
                .prop_map(|(e, n, d)| Expr::Pow(Box::new(e), Rational::new(n, d))),
            (func, inner).prop_map(|(f, e)| Expr::Call(f, Box::new(e))),
        ]
    })
}

fn params() -> BTreeMap<String, f64> {
    BTreeMap::from([("a".to_string(), 1.3)])
}

fn same(x: f64, y: f64) -> bool {
    (x.is_nan() && y.is_nan()) || x == y || (x - y).abs() <= 1e-12 * (1.0 + x.abs())
}

proptest! {
    #[test]
    fn printing_round_trips(e in expr(), t in -2.0..2.0f64) {
        let text = e.to_string();
        let back = parse_expr(&text).unwrap_or_else(|err| panic!("{text}: {err}"));
        prop_assert_eq!(back.to_string(), text.clone());
        match (e.eval(t, &params()), back.eval(t, &params())) {
            (Ok(x), Ok(y)) => prop_assert!(same(x, y), "{} -> {} vs {}", text, x, y),
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "{}: {:?} vs {:?}", text, a, b),
        }
    }

    #[test]
    fn jet_derivative_matches_finite_difference(e in expr(), t in -1.0..1.0f64) {
        let p = params();
        let h = 1e-5;
        let (Ok(j), Ok(fp), Ok(fm), Ok(f0)) = (
            e.eval_jet(&Jet::variable(t, 2), &p),
            e.eval(t + h, &p),
            e.eval(t - h, &p),
            e.eval(t, &p),
        ) else {
            return Ok(());
        };
        prop_assume!(j.coeffs().iter().all(|c| c.is_finite() && c.abs() < 1e4));
        prop_assume!(f0.abs() < 1e4);
        let fd = (fp - fm) / (2.0 * h);
        prop_assert!((j.value() - f0).abs() <= 1e-9 * (1.0 + f0.abs()));
        // second-order difference error is h² f''' / 6; allow for it
        prop_assert!((j.derivative(1) - fd).abs() <= 1e-4 * (1.0 + fd.abs()), "{}", e);
    }
}

#[test]
fn catalog_entries_parse_and_expand() {
    for name in catalog_names() {
        let params = BTreeMap::from([("a".to_string(), 1.0), ("r".to_string(), 2.0)]);
        let spec = match catalog_lookup(name, &params) {
            Ok(s) => s,
            Err(e) => panic!("{name}: {e}"),
        };
        let j = spec.jet(0.0, 6).unwrap();
        let (x, y) = spec.point(0.0).unwrap();
        assert_eq!(j.point().x, x);
        assert_eq!(j.point().y, y);
    }
}

#[test]
fn parse_errors_carry_positions() {
    let err = parse_curve("(t^2,\n t^3 + )").unwrap_err().to_string();
    assert!(err.contains("line 2"), "{err}");
    assert!(parse_curve("(t, t^(1/0))").is_err());
    assert!(parse_curve("(a*t, t) with a=").is_err());
}
