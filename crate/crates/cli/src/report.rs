//! The JSON report of the `invariants` command.

use std::collections::BTreeMap;

use anyhow::Result;
use cuspidal::affine::{affine_cusp_report, inflection_report};
use cuspidal::euclid::{classify_curve, euclidean_report, SingularityKind};
use cuspidal::normal_form::{normal_form, NormalFormKind, NORMAL_FORM_ORDER};
use cuspidal::{Curve, CurveSpec};
use serde::Serialize;

/// Invariants of a curve at `t = 0`; only fields that apply to the
/// detected class are serialized.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[allow(non_snake_case)]
pub struct InvariantReport {
    pub label: String,
    pub params: BTreeMap<String, f64>,
    pub class: SingularityKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_g: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_A: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_I: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_I: Option<f64>,
    /// Euclidean normalized curvature at the cusp, `μ_g / (2√2)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f0_g: Option<f64>,
    /// Affine normalized curvature at the singular point.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fdot0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identity_residual_t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identity_residual_tau: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal_form_c: Option<f64>,
}

impl InvariantReport {
    fn empty(spec: &CurveSpec, class: SingularityKind) -> Self {
        InvariantReport {
            label: spec.label.clone(),
            params: spec.params.clone(),
            class,
            mu_g: None,
            mu_A: None,
            mu_I: None,
            eps_I: None,
            f0_g: None,
            f0: None,
            fdot0: None,
            h0: None,
            g0: None,
            identity_residual_t: None,
            identity_residual_tau: None,
            normal_form_c: None,
        }
    }
}

pub fn invariant_report(spec: &CurveSpec) -> Result<InvariantReport> {
    let class = classify_curve(spec)?.kind;
    let mut r = InvariantReport::empty(spec, class);
    let germ = spec.jet(0.0, NORMAL_FORM_ORDER)?;
    if class.is_cusp() {
        let e = euclidean_report(&germ)?;
        let a = affine_cusp_report(spec)?;
        r.mu_g = Some(e.mu_g);
        r.f0_g = Some(e.f0);
        r.mu_A = Some(a.mu_a);
        r.f0 = Some(a.f0);
        r.fdot0 = Some(a.fdot0);
        r.h0 = Some(a.h0);
        r.normal_form_c = Some(normal_form(&germ, NormalFormKind::Cusp)?.c);
    } else if class.is_inflection() {
        let i = inflection_report(spec)?;
        r.mu_I = Some(i.mu_i);
        r.eps_I = Some(i.eps_i);
        r.f0 = Some(i.f0);
        r.g0 = Some(i.g0);
        r.identity_residual_t = Some(i.identity_residual_t);
        r.identity_residual_tau = Some(i.identity_residual_tau);
        r.normal_form_c = Some(normal_form(&germ, NormalFormKind::Inflection)?.c);
    }
    Ok(r)
}
