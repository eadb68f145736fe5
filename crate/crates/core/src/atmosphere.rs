//! Exponentially stratified background, acoustic rays of a vertically
//! ascending plane wave, and the attenuation coefficient χ.

use crate::error::{Error, Result};
use crate::hyperbolic::BackgroundGradients;
use crate::ode::Dopri5;
use crate::thermo::{EosSlopes, GasParams, ThermoState};

/// Below this ω the `ln(1+ωt)/ω` forms switch to their series.
pub const SMALL_OMEGA: f64 = 1e-10;

/// Attenuation rates of `ρ₀ = e^{−θx₃}` and `a₀ = e^{−ωx₃}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtmosphereParams {
    pub theta: f64,
    pub omega: f64,
}

impl AtmosphereParams {
    pub fn new(theta: f64, omega: f64) -> Result<Self> {
        if !(theta >= 0.0 && theta.is_finite()) {
            return Err(Error::Inadmissible(format!("theta >= 0 violated (theta = {theta})")));
        }
        if !(omega >= 0.0 && omega.is_finite()) {
            return Err(Error::Inadmissible(format!("omega >= 0 violated (omega = {omega})")));
        }
        Ok(Self { theta, omega })
    }

    /// `1 + ωt`, the growth factor of `|∇φ|`.
    pub fn u(&self, t: f64) -> f64 {
        1.0 + self.omega * t
    }
}

/// `(ρ₀, a₀)` at height `x3`.
pub fn profiles(ap: &AtmosphereParams, x3: f64) -> (f64, f64) {
    ((-ap.theta * x3).exp(), (-ap.omega * x3).exp())
}

/// Wavefront data along the ray at time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseState {
    pub t: f64,
    pub x3: f64,
    pub grad_phi: [f64; 3],
    pub n: [f64; 3],
}

impl PhaseState {
    pub fn grad_phi_norm(&self) -> f64 {
        let g = self.grad_phi;
        (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]).sqrt()
    }
}

/// `ln(1 + ωt)/ω`, with its series below [`SMALL_OMEGA`].
pub fn height_at(omega: f64, t: f64) -> f64 {
    if omega.abs() < SMALL_OMEGA {
        let w = omega;
        t - w * t * t / 2.0 + w * w * t * t * t / 3.0
    } else {
        (omega * t).ln_1p() / omega
    }
}

/// `∇φ = (0, 0, 1+ωt)`, `x₃ = ω⁻¹ ln(1+ωt)`, `n = (0, 0, 1)`.
pub fn phase_closed_form(ap: &AtmosphereParams, t: f64) -> Result<PhaseState> {
    let u = ap.u(t);
    if !(u > 0.0) {
        return Err(Error::Domain(format!("1 + omega t must be positive (got {u})")));
    }
    Ok(PhaseState { t, x3: height_at(ap.omega, t), grad_phi: [0.0, 0.0, u], n: [0.0, 0.0, 1.0] })
}

/// Integrates the ray equations `dx/dt = a₀ ∇φ/|∇φ|`,
/// `d(∂φ/∂x_i)/dt = −|∇φ| ∂a₀/∂x_i` from the plane `x₃ = 0` with
/// `∇φ = (0, 0, 1)`, sampling every `dt` up to `t_end`.
pub fn trace_ray(ap: &AtmosphereParams, t_end: f64, dt: f64) -> Result<Vec<PhaseState>> {
    trace_ray_with(ap, t_end, dt, &Dopri5::new(1e-10))
}

pub fn trace_ray_with(ap: &AtmosphereParams, t_end: f64, dt: f64, ode: &Dopri5) -> Result<Vec<PhaseState>> {
    if !(dt > 0.0) {
        return Err(Error::Domain(format!("sampling step must be positive (dt = {dt})")));
    }
    if !(t_end >= 0.0) {
        return Err(Error::Domain(format!("t_end must be nonnegative (t_end = {t_end})")));
    }
    let omega = ap.omega;
    let rhs = |_t: f64, y: &[f64; 6]| {
        let a0 = (-omega * y[2]).exp();
        let k = (y[3] * y[3] + y[4] * y[4] + y[5] * y[5]).sqrt();
        [a0 * y[3] / k, a0 * y[4] / k, a0 * y[5] / k, 0.0, 0.0, omega * a0 * k]
    };
    let to_state = |t: f64, y: &[f64; 6]| {
        let k = (y[3] * y[3] + y[4] * y[4] + y[5] * y[5]).sqrt();
        PhaseState { t, x3: y[2], grad_phi: [y[3], y[4], y[5]], n: [y[3] / k, y[4] / k, y[5] / k] }
    };

    let mut y = [0.0, 0.0, 0.0, 0.0, 0.0, 1.0];
    let mut t = 0.0;
    let mut path = vec![to_state(0.0, &y)];
    let steps = (t_end / dt).ceil() as usize;
    for i in 1..=steps {
        let t_next = (i as f64 * dt).min(t_end);
        y = ode.integrate(rhs, t, y, t_next)?;
        t = t_next;
        path.push(to_state(t, &y));
    }
    Ok(path)
}

/// `a_{,s0} s₀,_k n_k = γθ e^{−ωx₃} / (2(1 − β e^{−θx₃}))` at `x₃(t)`.
pub fn entropy_gradient_term(g: &GasParams, ap: &AtmosphereParams, t: f64) -> Result<f64> {
    let ph = phase_closed_form(ap, t)?;
    entropy_gradient_at_height(g, ap, ph.x3)
}

pub fn entropy_gradient_at_height(g: &GasParams, ap: &AtmosphereParams, x3: f64) -> Result<f64> {
    let (rho0, a0) = profiles(ap, x3);
    let den = 1.0 - g.beta * rho0;
    if !(den > 0.0) {
        return Err(Error::Covolume(g.beta * rho0));
    }
    Ok(g.gamma * ap.theta * a0 / (2.0 * den))
}

/// `χ = (a₀ ∇·n + a_{,s0} s₀,_k n_k)/2`.
pub fn chi(g: &GasParams, ap: &AtmosphereParams, t: f64, mean_curvature: f64) -> Result<f64> {
    let ph = phase_closed_form(ap, t)?;
    let (_, a0) = profiles(ap, ph.x3);
    Ok(0.5 * (a0 * mean_curvature + entropy_gradient_at_height(g, ap, ph.x3)?))
}

/// The equation-of-state point with density `e^{−θx₃}` and sound speed
/// `e^{−ωx₃}`.
pub fn background_state(g: &GasParams, ap: &AtmosphereParams, x3: f64) -> Result<ThermoState> {
    let (rho, a) = profiles(ap, x3);
    let one_m = 1.0 - g.beta * rho;
    if !(one_m > 0.0) {
        return Err(Error::Covolume(g.beta * rho));
    }
    let q = (a * a + 2.0 * g.alpha * rho) * rho * one_m / g.gamma;
    ThermoState::new(g, rho, q - g.alpha * rho * rho)
}

/// Vertical gradients of the background at `x3`, with the entropy slope
/// fixed by `p_s s₀′ = −a₀² ρ₀′`.
pub fn background_gradients(
    g: &GasParams,
    ap: &AtmosphereParams,
    x3: f64,
) -> Result<(ThermoState, BackgroundGradients)> {
    let st = background_state(g, ap, x3)?;
    let sl = EosSlopes::of_state(g, &st)?;
    let drho = -ap.theta * st.rho;
    let ds = -st.a * st.a * drho / sl.p_s;
    Ok((st, BackgroundGradients { grad_n: [[0.0; 3]; 3], grad_rho: [0.0, 0.0, drho], grad_s: [0.0, 0.0, ds] }))
}

/// `(a_{,s0}/p_{,s0})·(−a₀² ρ₀′)` from equation-of-state derivatives; equals
/// [`entropy_gradient_at_height`].
pub fn entropy_gradient_from_eos(g: &GasParams, ap: &AtmosphereParams, x3: f64) -> Result<f64> {
    let st = background_state(g, ap, x3)?;
    let sl = EosSlopes::of_state(g, &st)?;
    let drho = -ap.theta * st.rho;
    Ok(sl.a_s / sl.p_s * (-st.a * st.a * drho))
}
