//! Plain SVG output: one stroked polyline, optionally with axes.

use std::fmt::Write as _;

use anyhow::{bail, Result};

/// Width in pixels of the longer side of the drawing.
const CANVAS: f64 = 600.0;

/// Fraction of the data extent added on every side.
pub const MARGIN: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    /// `[xmin, ymin, xmax, ymax]` in data units; fitted to the samples when absent.
    pub viewport: Option<[f64; 4]>,
    pub stroke_width: f64,
    pub axes: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            viewport: None,
            stroke_width: 1.5,
            axes: false,
        }
    }
}

/// Bounding box of the samples with a [`MARGIN`] on every side.
pub fn fit_viewport(points: &[(f64, f64)]) -> [f64; 4] {
    let (mut x0, mut y0) = (f64::INFINITY, f64::INFINITY);
    let (mut x1, mut y1) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(x, y) in points {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    // a degenerate extent borrows the other one, or 1
    let extent = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let pad = |lo: f64, hi: f64| {
        let w = if hi > lo { hi - lo } else { extent };
        let c = 0.5 * (lo + hi);
        let half = 0.5 * w * (1.0 + 2.0 * MARGIN);
        (c - half, c + half)
    };
    let (x0, x1) = pad(x0, x1);
    let (y0, y1) = pad(y0, y1);
    [x0, y0, x1, y1]
}

/// Standalone SVG 1.1 document with a single polyline through `points`.
pub fn render_svg(points: &[(f64, f64)], spec: &RenderSpec) -> Result<String> {
    if points.len() < 2 {
        bail!("render_svg: need at least 2 samples, got {}", points.len());
    }
    if let Some(p) = points.iter().find(|(x, y)| !x.is_finite() || !y.is_finite()) {
        bail!("render_svg: non-finite sample ({}, {})", p.0, p.1);
    }
    let [x0, y0, x1, y1] = spec.viewport.unwrap_or_else(|| fit_viewport(points));
    if !(x1 > x0 && y1 > y0) {
        bail!("render_svg: empty viewport");
    }
    if let Some(p) = points
        .iter()
        .find(|(x, y)| *x < x0 || *x > x1 || *y < y0 || *y > y1)
    {
        bail!("render_svg: sample ({}, {}) outside the viewport", p.0, p.1);
    }
    let scale = CANVAS / (x1 - x0).max(y1 - y0);
    let width = (x1 - x0) * scale;
    let height = (y1 - y0) * scale;
    // SVG's y axis points down
    let px = |x: f64| (x - x0) * scale;
    let py = |y: f64| (y1 - y) * scale;

    let mut svg = String::new();
    writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#)?;
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.2}" height="{height:.2}" viewBox="0 0 {width:.2} {height:.2}">"#
    )?;
    if spec.axes {
        if (x0..=x1).contains(&0.0) {
            writeln!(
                svg,
                r##"  <line x1="{0:.3}" y1="0" x2="{0:.3}" y2="{height:.2}" stroke="#999999" stroke-width="0.5"/>"##,
                px(0.0)
            )?;
        }
        if (y0..=y1).contains(&0.0) {
            writeln!(
                svg,
                r##"  <line x1="0" y1="{0:.3}" x2="{width:.2}" y2="{0:.3}" stroke="#999999" stroke-width="0.5"/>"##,
                py(0.0)
            )?;
        }
    }
    let mut path = String::new();
    for (i, &(x, y)) in points.iter().enumerate() {
        if i > 0 {
            path.push(' ');
        }
        write!(path, "{:.3},{:.3}", px(x), py(y))?;
    }
    writeln!(
        svg,
        r#"  <polyline fill="none" stroke="black" stroke-width="{}" stroke-linejoin="round" points="{path}"/>"#,
        spec.stroke_width
    )?;
    writeln!(svg, "</svg>")?;
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points() {
        let svg = render_svg(&[(0.0, 0.0), (1.0, 1.0)], &RenderSpec::default()).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 1);
        // 5% margin of a unit square on a 600 px canvas
        assert!(svg.contains(r#"points="27.273,572.727 572.727,27.273""#), "{svg}");
    }

    #[test]
    fn single_point_is_an_error() {
        assert!(render_svg(&[(0.0, 0.0)], &RenderSpec::default()).is_err());
    }

    #[test]
    fn flat_data_gets_a_height() {
        let v = fit_viewport(&[(0.0, 2.0), (4.0, 2.0)]);
        assert!(v[3] > v[1]);
        assert!(render_svg(&[(0.0, 2.0), (4.0, 2.0)], &RenderSpec::default()).is_ok());
    }

    #[test]
    fn viewport_must_contain_samples() {
        let spec = RenderSpec {
            viewport: Some([0.0, 0.0, 0.5, 0.5]),
            ..RenderSpec::default()
        };
        assert!(render_svg(&[(0.0, 0.0), (1.0, 1.0)], &spec).is_err());
    }
}
