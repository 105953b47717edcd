//! Linear frame equations `F' = F M(τ)`, `γ' = F v(τ)` in the plane.
//!
//! The columns of `F` are two moving vectors (an orthonormal frame, or the
//! second and third derivatives of the curve). Integration uses classical
//! fourth-order Runge–Kutta with a fixed step; at every node the exact
//! Taylor expansion of the solution through the node state is available,
//! so the resulting curve can be expanded to high order anywhere.

use std::sync::OnceLock;

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::plane::{Mat2, PlaneJet, Vec2};

/// Largest integration step.
pub const MAX_STEP: f64 = 1e-3;

/// Order of the node expansions.
pub const NODE_ORDER: usize = 15;

/// Coefficients of a frame system.
pub trait FrameCoefficients {
    /// Jets at `tau` of `M` (row-major `[m00, m01, m10, m11]`) and of `v`.
    fn coefficients(&self, tau: f64, order: usize) -> Result<([Jet; 4], [Jet; 2])>;

    /// Columns of the frame at `τ = 0`.
    fn initial_frame(&self) -> Mat2;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameState {
    pub frame: Mat2,
    pub position: Vec2,
}

impl FrameState {
    fn to_array(self) -> [f64; 6] {
        let f = self.frame;
        [f.a, f.b, f.c, f.d, self.position.x, self.position.y]
    }

    fn from_array(y: [f64; 6]) -> Self {
        FrameState {
            frame: Mat2::new(y[0], y[1], y[2], y[3]),
            position: Vec2::new(y[4], y[5]),
        }
    }
}

fn values<S: FrameCoefficients + ?Sized>(sys: &S, tau: f64) -> Result<(Mat2, Vec2)> {
    let (m, v) = sys.coefficients(tau, 0)?;
    Ok((
        Mat2::new(m[0].value(), m[1].value(), m[2].value(), m[3].value()),
        Vec2::new(v[0].value(), v[1].value()),
    ))
}

fn rhs<S: FrameCoefficients + ?Sized>(sys: &S, tau: f64, y: &[f64; 6]) -> Result<[f64; 6]> {
    let (m, v) = values(sys, tau)?;
    let f = Mat2::new(y[0], y[1], y[2], y[3]);
    let dm = f * m;
    let dg = f.apply(v);
    Ok([dm.a, dm.b, dm.c, dm.d, dg.x, dg.y])
}

fn rk4_step<S: FrameCoefficients + ?Sized>(
    sys: &S,
    tau: f64,
    y: [f64; 6],
    h: f64,
) -> Result<[f64; 6]> {
    let add = |a: &[f64; 6], b: &[f64; 6], s: f64| {
        let mut out = *a;
        out.iter_mut().zip(b).for_each(|(o, x)| *o += s * x);
        out
    };
    let k1 = rhs(sys, tau, &y)?;
    let k2 = rhs(sys, tau + 0.5 * h, &add(&y, &k1, 0.5 * h))?;
    let k3 = rhs(sys, tau + 0.5 * h, &add(&y, &k2, 0.5 * h))?;
    let k4 = rhs(sys, tau + h, &add(&y, &k3, h))?;
    let mut out = y;
    for i in 0..6 {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    Ok(out)
}

/// Integrate from 0 with `n` steps of size `h` (negative `h` goes left).
fn integrate_side<S: FrameCoefficients + ?Sized>(
    sys: &S,
    start: FrameState,
    h: f64,
    n: usize,
) -> Result<Vec<FrameState>> {
    let mut out = Vec::with_capacity(n + 1);
    let mut y = start.to_array();
    out.push(start);
    for i in 0..n {
        y = rk4_step(sys, i as f64 * h, y, h)?;
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("synthesis", "integration diverged"));
        }
        out.push(FrameState::from_array(y));
    }
    Ok(out)
}

/// Taylor expansion of the solution through `state` at `tau`.
pub fn node_expansion<S: FrameCoefficients + ?Sized>(
    sys: &S,
    tau: f64,
    state: FrameState,
    order: usize,
) -> Result<(PlaneJet, [Jet; 4])> {
    let (m, v) = sys.coefficients(tau, order.saturating_sub(1))?;
    let k = m[0].order().min(v[0].order()) + 1;
    // frame coefficients f[i][c], i = row-major entry
    let mut fc = vec![[0.0; 4]; k + 1];
    let mut gc = vec![[0.0; 2]; k + 1];
    let f0 = state.frame;
    fc[0] = [f0.a, f0.b, f0.c, f0.d];
    gc[0] = [state.position.x, state.position.y];
    for n in 0..k {
        let mut df = [0.0; 4];
        let mut dg = [0.0; 2];
        for (j, f) in fc.iter().enumerate().take(n + 1) {
            let mm = [
                m[0].coeff(n - j),
                m[1].coeff(n - j),
                m[2].coeff(n - j),
                m[3].coeff(n - j),
            ];
            let (vx, vy) = (v[0].coeff(n - j), v[1].coeff(n - j));
            df[0] += f[0] * mm[0] + f[1] * mm[2];
            df[1] += f[0] * mm[1] + f[1] * mm[3];
            df[2] += f[2] * mm[0] + f[3] * mm[2];
            df[3] += f[2] * mm[1] + f[3] * mm[3];
            dg[0] += f[0] * vx + f[1] * vy;
            dg[1] += f[2] * vx + f[3] * vy;
        }
        let s = 1.0 / (n + 1) as f64;
        fc[n + 1] = df.map(|x| x * s);
        gc[n + 1] = dg.map(|x| x * s);
    }
    let col = |i: usize| Jet::new(tau, fc.iter().map(|c| c[i]).collect());
    let gamma = PlaneJet::new(
        Jet::new(tau, gc.iter().map(|c| c[0]).collect()),
        Jet::new(tau, gc.iter().map(|c| c[1]).collect()),
    )?;
    Ok((gamma, [col(0), col(1), col(2), col(3)]))
}

/// Curve obtained by integrating a frame system on `[-tau_max, tau_max]`.
pub struct FrameCurve<S> {
    system: S,
    step: f64,
    steps: usize,
    /// Node states for `τ = (i - steps) h`.
    states: Vec<FrameState>,
    expansions: Vec<OnceLock<PlaneJet>>,
    error_estimate: f64,
}

impl<S: FrameCoefficients> FrameCurve<S> {
    pub fn integrate(system: S, tau_max: f64) -> Result<Self> {
        if !(tau_max > 0.0 && tau_max.is_finite()) {
            return Err(Error::domain("synthesis", "tau_max must be positive"));
        }
        let steps = (tau_max / MAX_STEP).ceil() as usize;
        let h = tau_max / steps as f64;
        let start = FrameState {
            frame: system.initial_frame(),
            position: Vec2::default(),
        };
        let right = integrate_side(&system, start, h, steps)?;
        let left = integrate_side(&system, start, -h, steps)?;
        // same range with half the step for the error estimate
        let fine_r = integrate_side(&system, start, 0.5 * h, 2 * steps)?;
        let fine_l = integrate_side(&system, start, -0.5 * h, 2 * steps)?;
        let err = |a: &FrameState, b: &FrameState| (a.position - b.position).norm() / 15.0;
        let error_estimate = err(&right[steps], &fine_r[2 * steps]).max(err(&left[steps], &fine_l[2 * steps]));
        let mut states: Vec<FrameState> = left.into_iter().rev().collect();
        states.extend_from_slice(&right[1..]);
        let expansions = (0..states.len()).map(|_| OnceLock::new()).collect();
        Ok(FrameCurve {
            system,
            step: h,
            steps,
            states,
            expansions,
            error_estimate,
        })
    }

    pub fn system(&self) -> &S {
        &self.system
    }

    pub fn tau_max(&self) -> f64 {
        self.step * self.steps as f64
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// Estimated endpoint position error from the half-step comparison.
    pub fn error_estimate(&self) -> f64 {
        self.error_estimate
    }

    /// Node parameter values and states.
    pub fn nodes(&self) -> impl Iterator<Item = (f64, &FrameState)> + '_ {
        self.states
            .iter()
            .enumerate()
            .map(|(i, s)| ((i as f64 - self.steps as f64) * self.step, s))
    }

    fn node_index(&self, tau: f64) -> Result<usize> {
        let limit = self.tau_max() + 0.05;
        if !(tau.abs() <= limit) {
            return Err(Error::domain(
                "synthesized curve",
                format!("parameter {tau} outside the integrated range ±{}", self.tau_max()),
            ));
        }
        let i = (tau / self.step).round() + self.steps as f64;
        Ok(i.clamp(0.0, (self.states.len() - 1) as f64) as usize)
    }

    fn expansion(&self, i: usize) -> Result<&PlaneJet> {
        if let Some(j) = self.expansions[i].get() {
            return Ok(j);
        }
        let tau = (i as f64 - self.steps as f64) * self.step;
        let (gamma, _) = node_expansion(&self.system, tau, self.states[i], NODE_ORDER)?;
        Ok(self.expansions[i].get_or_init(|| gamma))
    }

    /// Frame jets at the node nearest to `tau`, recentered at `tau`.
    pub fn frame_jet(&self, tau: f64, order: usize) -> Result<[Jet; 4]> {
        let i = self.node_index(tau)?;
        let node = (i as f64 - self.steps as f64) * self.step;
        let (_, f) = node_expansion(&self.system, node, self.states[i], NODE_ORDER)?;
        Ok(f.map(|j| j.recenter(tau).truncate(order)))
    }
}

impl<S: FrameCoefficients> Curve for FrameCurve<S> {
    fn jet(&self, t: f64, order: usize) -> Result<PlaneJet> {
        if order > self.max_order() {
            return Err(Error::OrderTooLow {
                op: "synthesized curve jet",
                order: self.max_order(),
                needed: order,
            });
        }
        let i = self.node_index(t)?;
        Ok(self.expansion(i)?.recenter(t).truncate(order))
    }

    fn max_order(&self) -> usize {
        NODE_ORDER - 1
    }
}
