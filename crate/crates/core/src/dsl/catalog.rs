//! Named example curves, stored as source text.

use std::collections::BTreeMap;

use super::{parse_curve_with, CurveSpec};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub source: &'static str,
    /// Required parameters; each must be positive.
    pub params: &'static [&'static str],
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "cuspidal_cubic",
        source: "(a*t^2, a*t^3)",
        params: &["a"],
    },
    CatalogEntry {
        name: "cycloid",
        source: "(a*(t - sin(t)), a*(-1 + cos(t)))",
        params: &["a"],
    },
    CatalogEntry {
        name: "canonical_cusp",
        source: "((2*a*t*sin(2*a*t) + cos(2*a*t))/(2*a^2), (sin(2*a*t) - 2*a*t*cos(2*a*t))/(2*a^2))",
        params: &["a"],
    },
    CatalogEntry {
        name: "hyperbolic_cycloid",
        source: "(a*(t - sinh(t)), a*(-1 + cosh(t)))",
        params: &["a"],
    },
    CatalogEntry {
        name: "cubic_graph",
        source: "(a*t, a*t^3)",
        params: &["a"],
    },
    CatalogEntry {
        name: "skew_cycloid",
        source: "(a*(t - sin(t)), a*(-t + cos(t)))",
        params: &["a"],
    },
    CatalogEntry {
        name: "circle",
        source: "(r*cos(t), r*sin(t))",
        params: &["r"],
    },
    CatalogEntry {
        name: "parabola",
        source: "(t, t^2)",
        params: &[],
    },
    CatalogEntry {
        name: "line",
        source: "(t, 2*t)",
        params: &[],
    },
];

pub fn catalog_names() -> impl Iterator<Item = &'static str> {
    CATALOG.iter().map(|e| e.name)
}

pub fn catalog_source(name: &str) -> Option<&'static str> {
    CATALOG.iter().find(|e| e.name == name).map(|e| e.source)
}

/// Look up a named curve and substitute its parameters.
///
/// Parameters not used by the entry are ignored.
pub fn catalog_lookup(name: &str, params: &BTreeMap<String, f64>) -> Result<CurveSpec> {
    let entry = CATALOG
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownCurve(name.to_string()))?;
    let mut bound = BTreeMap::new();
    for &p in entry.params {
        let value = *params
            .get(p)
            .ok_or_else(|| Error::MissingParameter(p.to_string()))?;
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::InvalidParameter {
                name: p.to_string(),
                value,
            });
        }
        bound.insert(p.to_string(), value);
    }
    let mut spec = parse_curve_with(entry.source, &bound)?.substituted();
    spec.label = name.to_string();
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn substituted_sources() {
        let c = catalog_lookup("cycloid", &with(&[("a", 2.0)])).unwrap();
        assert_eq!(c.to_string(), "(2*(t - sin(t)), 2*(-1 + cos(t)))");
        let h = catalog_lookup("hyperbolic_cycloid", &with(&[("a", 1.0)])).unwrap();
        assert_eq!(h.to_string(), "(t - sinh(t), -1 + cosh(t))");
        let s = catalog_lookup("skew_cycloid", &with(&[("a", 1.0)])).unwrap();
        assert_eq!(s.to_string(), "(t - sin(t), -t + cos(t))");
    }

    #[test]
    fn parameter_errors() {
        assert_eq!(
            catalog_lookup("cycloid", &BTreeMap::new()),
            Err(Error::MissingParameter("a".into()))
        );
        assert!(matches!(
            catalog_lookup("circle", &with(&[("r", -1.0)])),
            Err(Error::InvalidParameter { .. })
        ));
        assert!(matches!(
            catalog_lookup("astroid", &BTreeMap::new()),
            Err(Error::UnknownCurve(_))
        ));
        assert!(catalog_lookup("parabola", &BTreeMap::new()).is_ok());
    }
}
