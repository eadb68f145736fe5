use crate::atmosphere::{self, background_gradients, height_at, AtmosphereParams};
use crate::error::Result;
use crate::hyperbolic::{
    acoustic_eigenpair, build_matrices, chi_numeric, numeric_coefficients, omega_delta_closed_form, DerivativeSource,
    EntryDerivatives, Truncation,
};
use crate::thermo::{self, GasParams, ThermoState};

/// One comparison of an eigen-algebra quantity with its closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleCheck {
    pub name: String,
    pub t: f64,
    pub value: f64,
    pub reference: f64,
    /// Relative difference, or absolute when the reference is tiny.
    pub residual: f64,
    pub tolerance: f64,
}

impl OracleCheck {
    fn new(name: &str, t: f64, value: f64, reference: f64, tolerance: f64) -> Self {
        let residual = (value - reference).abs() / reference.abs().max(1.0);
        Self { name: name.into(), t, value, reference, residual, tolerance }
    }

    pub fn passed(&self) -> bool {
        self.residual <= self.tolerance
    }
}

/// Cross-checks along the vertical ray at each of `times`: Γ, the truncated
/// Λ, the correction term, ω/δ, eigen-residuals and χ, with analytic entry
/// derivatives, plus Γ from finite-difference derivatives, and Ω on the
/// Γ = 0 manifold.
pub fn oracle_checks(g: &GasParams, ap: &AtmosphereParams, times: &[f64]) -> Result<Vec<OracleCheck>> {
    let mut out = Vec::new();
    for &t in times {
        let u = ap.u(t);
        let x3 = height_at(ap.omega, t);
        let (st, bg) = background_gradients(g, ap, x3)?;
        let grad_phi = [0.0, 0.0, u];

        let exact = numeric_coefficients(g, &st, grad_phi, Truncation::Exact, DerivativeSource::Analytic)?;
        let closed_gamma = thermo::capital_gamma(g, st.rho, st.a, u)?;
        out.push(OracleCheck::new("gamma", t, exact.gamma, closed_gamma, 1e-10));

        let fd = numeric_coefficients(g, &st, grad_phi, Truncation::Exact, DerivativeSource::FiniteDifference(1e-4))?;
        out.push(OracleCheck::new("gamma-finite-difference", t, fd.gamma, closed_gamma, 1e-6));

        let tr = numeric_coefficients(g, &st, grad_phi, Truncation::NeglectGamma, DerivativeSource::Analytic)?;
        out.push(OracleCheck::new("lambda-truncated", t, tr.lambda, tr.omega_param * u / st.a, 1e-10));
        out.push(OracleCheck::new("correction-term", t, tr.correction, 6.0 * u / st.a, 1e-10));

        let m = build_matrices(g, &st)?;
        let ep = acoustic_eigenpair(&m, grad_phi)?;
        let closed = omega_delta_closed_form(&m, &ep);
        let scale = closed.amax().max(1.0);
        out.push(OracleCheck::new("omega-vs-closed-form", t, (tr.omega - closed).amax() / scale, 0.0, 1e-10));
        out.push(OracleCheck::new("delta-vs-closed-form", t, (tr.delta - closed).amax() / scale, 0.0, 1e-10));

        let (rl, rr) = ep.residuals(&m);
        out.push(OracleCheck::new("eigen-residual", t, rl.max(rr) / ep.speed.max(1.0), 0.0, 1e-10));

        let tsl = m.slopes.gamma_truncated();
        let chi = chi_numeric(&m, &EntryDerivatives::analytic(&tsl), &tsl, &ep, &bg);
        out.push(OracleCheck::new("chi", t, chi, atmosphere::chi(g, ap, t, 0.0)?, 1e-10));

        // the manifold only exists for attracting gases
        if let Ok(on) = ThermoState::on_gamma_zero_manifold(g, st.rho) {
            let man = numeric_coefficients(g, &on, grad_phi, Truncation::NeglectGamma, DerivativeSource::Analytic)?;
            let closed = thermo::omega_param(g, on.rho, on.a)?;
            out.push(OracleCheck::new("omega-on-manifold", t, man.omega_param, closed, 1e-10));
        }
    }
    Ok(out)
}
