use super::{CoefficientProvider, EvolutionModel};
use crate::atmosphere::{height_at, AtmosphereParams};
use crate::error::{Error, Result};
use crate::ode::Dopri5;
use crate::thermo::GasParams;

/// `(e^z − 1)/z`, continuous at zero.
pub(crate) fn phi1(z: f64) -> f64 {
    if z.abs() < 1e-5 {
        1.0 + z * (0.5 + z / 6.0)
    } else {
        z.exp_m1() / z
    }
}

/// Closed-form amplitude along a characteristic, exact at β = 0 and with
/// the first-order correction in β, for data `σ(t_start) = sigma0`.
///
/// With `k = γθ/(4ω)`, `D = 4ω + γθ` and `u = 1 + ωt` the β = 0 part is
/// `σ = (σ₀ + 2u_s/D)(u_s/u)^k − 2u/D`. Everything is evaluated through the
/// height `x₃ = ln(u)/ω` so the ω → 0 and D → 0 limits are regular.
pub fn sigma_closed(g: &GasParams, ap: &AtmosphereParams, sigma0: f64, t: f64, t_start: f64) -> Result<f64> {
    let (u, us) = (ap.u(t), ap.u(t_start));
    if !(u > 0.0 && us > 0.0) {
        return Err(Error::Domain("1 + omega t must be positive".into()));
    }
    if ap.theta == 0.0 {
        return Ok(sigma0 - 0.5 * (t - t_start));
    }
    let (gm, th, om) = (g.gamma, ap.theta, ap.omega);
    let l = height_at(om, t);
    let ls = height_at(om, t_start);
    let dl = l - ls;
    let d = 4.0 * om + gm * th;
    let d2 = 4.0 * om + th * (gm - 4.0);
    let decay = (-0.25 * gm * th * dl).exp();

    let zeroth = sigma0 * decay - u * 0.5 * dl * phi1(-0.25 * d * dl);

    let rho_s = (-th * ls).exp();
    let first = 0.25 * gm * (sigma0 + 2.0 * us / d) * decay * ((-th * l).exp() - rho_s)
        + gm * th / (2.0 * d) * decay * us * rho_s * dl * phi1(0.25 * d2 * dl);

    Ok(zeroth + g.beta * first)
}

/// Integrates `dσ/dt = −g(t)σ − 1/2` with the corrected attenuation.
pub fn sigma_ode(g: &GasParams, ap: &AtmosphereParams, sigma0: f64, t: f64, t_start: f64, tol: f64) -> Result<f64> {
    let model = EvolutionModel::new(*g, *ap)?;
    sigma_ode_with(&model, sigma0, t_start, t, &Dopri5::new(tol))
}

/// Integrates `dσ/dt = −g(t)σ − c(t)` for any coefficient provider.
pub fn sigma_ode_with<P: CoefficientProvider + ?Sized>(
    coeffs: &P,
    sigma0: f64,
    t_start: f64,
    t: f64,
    ode: &Dopri5,
) -> Result<f64> {
    let y = ode.integrate(
        |tt, y: &[f64; 1]| {
            let c = coeffs.at(tt);
            [-c.g * y[0] - c.c]
        },
        t_start,
        [sigma0],
        t,
    )?;
    Ok(y[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchored_identity() {
        let g = GasParams::new(0.35, 0.06, 1.01, 0.01).unwrap();
        let ap = AtmosphereParams::new(0.1, 0.1).unwrap();
        assert_eq!(sigma_closed(&g, &ap, 0.7, 2.0, 2.0).unwrap(), 0.7);
    }

    #[test]
    fn flat_density_is_pure_forcing() {
        let g = GasParams::new(0.35, 0.06, 1.01, 0.01).unwrap();
        let ap = AtmosphereParams::new(0.0, 0.1).unwrap();
        assert!((sigma_ode(&g, &ap, 0.0, 2.0, 0.0, 1e-10).unwrap() + 1.0).abs() < 1e-12);
        assert!((sigma_ode(&g, &ap, 0.3, 3.0, 0.5, 1e-10).unwrap() - (0.3 - 1.25)).abs() < 1e-12);
    }

    #[test]
    fn closed_form_matches_ode_at_zero_covolume() {
        let g = GasParams::new(0.35, 0.0, 1.01, 0.01).unwrap();
        for (th, om) in [(0.1, 0.1), (0.05, 0.2), (0.2, 0.05), (0.1, 0.0), (0.3, 1e-12)] {
            let ap = AtmosphereParams::new(th, om).unwrap();
            for (t0, t) in [(0.0, 1.4), (0.5, 5.0), (2.0, 0.3)] {
                let a = sigma_closed(&g, &ap, 0.8, t, t0).unwrap();
                let b = sigma_ode(&g, &ap, 0.8, t, t0, 1e-12).unwrap();
                assert!((a - b).abs() < 1e-10, "theta={th} omega={om}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn matches_printed_form_at_zero_anchor() {
        // the printed closed form, with the exponent inside the first
        // bracket read as 1 + γθ/(4ω)
        let (gm, th, om, be, s0, t) = (1.01f64, 0.1f64, 0.1f64, 0.06f64, 1.0f64, 1.4f64);
        let g = GasParams::new(0.35, be, gm, 0.01).unwrap();
        let ap = AtmosphereParams::new(th, om).unwrap();
        let u = 1.0 + om * t;
        let k = gm * th / (4.0 * om);
        let m = th / om;
        let printed = (s0 + 2.0 * (1.0 - u.powf(1.0 + k)) / (gm * th + 4.0 * om)) * u.powf(-k)
            + gm * be / 4.0
                * (s0 * u.powf(-k) * (u.powf(-m) - 1.0)
                    - 2.0 * (u.powf(1.0 - m) - u.powf(-m * (1.0 + gm / 4.0))) / (4.0 * om + gm * th)
                    + 2.0 * (u.powf(1.0 - m) - u.powf(-k)) / (4.0 * om + th * (gm - 4.0)));
        let ours = sigma_closed(&g, &ap, s0, t, 0.0).unwrap();
        assert!((printed - ours).abs() < 1e-13, "{printed} vs {ours}");
    }
}
