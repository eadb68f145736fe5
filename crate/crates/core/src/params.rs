//! Admissibility of the parameters under `Γ = O(ε)` and the anchor time.

use crate::atmosphere::{height_at, profiles, AtmosphereParams};
use crate::error::{Error, Result};
use crate::thermo::{self, GasParams};

/// Default search horizon for [`gamma_root_general`].
pub const ROOT_T_MAX: f64 = 1000.0;

/// `t₀ = (1/ω)[((γ+1)/(2α) + 3β)/(2−γ) − 1]`, the time at which the Γ
/// bracket vanishes when `θ = ω`.
pub fn t0_paper(g: &GasParams, ap: &AtmosphereParams) -> Result<f64> {
    if ap.theta != ap.omega {
        return Err(Error::Config(format!(
            "the anchor-time formula assumes theta = omega (theta = {}, omega = {})",
            ap.theta, ap.omega
        )));
    }
    if !(g.alpha > 0.0) || !(g.gamma < 2.0) || !(ap.omega > 0.0) {
        return Err(Error::Config("the anchor-time formula needs alpha > 0, gamma < 2, omega > 0".into()));
    }
    if g.alpha == alpha_bound(g) {
        return Ok(0.0);
    }
    let excess = (g.gamma + 1.0) / (2.0 * g.alpha) - (2.0 - g.gamma - 3.0 * g.beta);
    let t = excess / ((2.0 - g.gamma) * ap.omega);
    if t < 0.0 {
        return Err(Error::Inadmissible(format!("(gamma+1)/(2 alpha) + 3 beta >= 2 - gamma violated: t0 = {t} < 0")));
    }
    Ok(t)
}

/// Largest α with `(γ+1)/(2α) + 3β ≥ 2 − γ`; infinite once `2 − γ − 3β ≤ 0`.
/// At γ = 1.01 this is `67/(66 − 200β)`.
pub fn alpha_bound(g: &GasParams) -> f64 {
    let d = 2.0 - g.gamma - 3.0 * g.beta;
    if d <= 0.0 {
        f64::INFINITY
    } else {
        (g.gamma + 1.0) / (2.0 * d)
    }
}

pub fn check_alpha_bound(g: &GasParams) -> bool {
    g.alpha <= alpha_bound(g)
}

/// `Γ(t)` along the vertical ray, from the profiles at `x₃(t)` and
/// `|∇φ| = 1 + ωt`.
pub fn gamma_along_ray(g: &GasParams, ap: &AtmosphereParams, t: f64) -> Result<f64> {
    let (rho0, a0) = profiles(ap, height_at(ap.omega, t));
    thermo::capital_gamma(g, rho0, a0, ap.u(t))
}

/// First `t ∈ [0, t_max]` with `Γ(t) = ε(γ+1)/2`, i.e. `Γ = εΓ̂`, by
/// sampling for a sign change and bisecting.
pub fn gamma_root_general(g: &GasParams, ap: &AtmosphereParams, epsilon: f64, t_max: f64) -> Result<f64> {
    g.validate()?;
    let target = 0.5 * epsilon * (g.gamma + 1.0);
    let f = |t: f64| gamma_along_ray(g, ap, t).map(|v| v - target);
    const SAMPLES: usize = 4000;
    let mut a = 0.0;
    let mut fa = f(a)?;
    if fa == 0.0 {
        return Ok(0.0);
    }
    for k in 1..=SAMPLES {
        let b = t_max * k as f64 / SAMPLES as f64;
        if ap.u(b) <= 0.0 {
            break;
        }
        let fb = f(b)?;
        if fb == 0.0 {
            return Ok(b);
        }
        if fa.signum() != fb.signum() {
            let (mut lo, mut hi, mut flo) = (a, b, fa);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid == lo || mid == hi {
                    break;
                }
                let fm = f(mid)?;
                if fm == 0.0 {
                    return Ok(mid);
                }
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            return Ok(0.5 * (lo + hi));
        }
        a = b;
        fa = fb;
    }
    Err(Error::NoRoot(format!("Gamma(t) - eps (gamma+1)/2 keeps one sign on [0, {t_max}] (eps = {epsilon})")))
}

/// Parameters that passed every admissibility check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissibleRun {
    pub g: GasParams,
    pub ap: AtmosphereParams,
    /// Anchor time at which the Γ bracket vanishes, when one exists.
    pub t0: Option<f64>,
    /// The Γ bracket at `t0`.
    pub gamma_residual: Option<f64>,
}

/// Validates `g` and `ap` and locates the anchor time: the printed
/// formula when `θ = ω`, the general root otherwise.
pub fn admit(g: &GasParams, ap: &AtmosphereParams) -> Result<AdmissibleRun> {
    g.validate()?;
    if g.beta >= 1.0 {
        return Err(Error::Inadmissible(format!("beta < 1 violated (beta = {})", g.beta)));
    }
    if !check_alpha_bound(g) {
        return Err(Error::Inadmissible(format!(
            "(gamma+1)/(2 alpha) + 3 beta >= 2 - gamma violated: alpha = {} > {}",
            g.alpha,
            alpha_bound(g)
        )));
    }
    let t0 = if g.alpha == 0.0 {
        None
    } else if ap.theta == ap.omega && ap.omega > 0.0 && g.gamma < 2.0 {
        Some(t0_paper(g, ap)?)
    } else {
        gamma_root_general(g, ap, 0.0, ROOT_T_MAX).ok()
    };
    let gamma_residual = t0.map(|t| {
        let (rho0, a0) = profiles(ap, height_at(ap.omega, t));
        thermo::gamma_bracket(g, rho0, a0)
    });
    Ok(AdmissibleRun { g: *g, ap: *ap, t0, gamma_residual })
}
