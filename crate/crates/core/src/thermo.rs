//! Van der Waals equation of state and the closed-form nonlinearity
//! parameters evaluated at a background state.
//!
//! The equation of state is `(p + α ρ²)(1 − β ρ) = ρ R T`, with the
//! isentropes `ρ^γ exp((s − s_ref)/c_v) = (p + α ρ²)(1 − β ρ)^γ`. All
//! quantities are nondimensional; `R`, `c_v` default to one and `s_ref` to
//! zero. Setting `α = β = 0` recovers the polytropic ideal gas.

use crate::error::{Error, Result};

/// Thermodynamic identity of the fluid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasParams {
    /// Attraction constant α.
    pub alpha: f64,
    /// Covolume constant β.
    pub beta: f64,
    /// Ratio of specific heats γ.
    pub gamma: f64,
    /// Amplitude parameter ε.
    pub epsilon: f64,
    pub r_gas: f64,
    pub cv: f64,
    pub s_ref: f64,
}

impl GasParams {
    /// Validated constructor. Requires `1 < γ ≤ 5/3`, `α, β ≥ 0`, `ε > 0`.
    pub fn new(alpha: f64, beta: f64, gamma: f64, epsilon: f64) -> Result<Self> {
        let g = Self { alpha, beta, gamma, epsilon, r_gas: 1.0, cv: 1.0, s_ref: 0.0 };
        g.validate()?;
        Ok(g)
    }

    pub fn ideal(gamma: f64) -> Result<Self> {
        Self::new(0.0, 0.0, gamma, 0.01)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.alpha, self.beta, self.gamma, self.epsilon, self.r_gas, self.cv, self.s_ref];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::Inadmissible("gas parameters must be finite".into()));
        }
        if !(self.gamma > 1.0 && self.gamma <= 5.0 / 3.0 + 1e-12) {
            return Err(Error::Inadmissible(format!("1 < gamma <= 5/3 violated (gamma = {})", self.gamma)));
        }
        if self.alpha < 0.0 {
            return Err(Error::Inadmissible(format!("alpha >= 0 violated (alpha = {})", self.alpha)));
        }
        if self.beta < 0.0 {
            return Err(Error::Inadmissible(format!("beta >= 0 violated (beta = {})", self.beta)));
        }
        if self.epsilon <= 0.0 {
            return Err(Error::Inadmissible(format!("epsilon > 0 violated (epsilon = {})", self.epsilon)));
        }
        if self.r_gas <= 0.0 || self.cv <= 0.0 {
            return Err(Error::Inadmissible("R and c_v must be positive".into()));
        }
        Ok(())
    }

    fn check_density(&self, rho: f64) -> Result<()> {
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(Error::Domain(format!("density must be positive (rho = {rho})")));
        }
        let br = self.beta * rho;
        if br >= 1.0 {
            return Err(Error::Covolume(br));
        }
        Ok(())
    }
}

/// A point on the equation of state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoState {
    pub rho: f64,
    pub p: f64,
    pub s: f64,
    pub a: f64,
}

impl ThermoState {
    /// State from density and pressure; rejects covolume violation and
    /// loss of hyperbolicity.
    pub fn new(g: &GasParams, rho: f64, p: f64) -> Result<Self> {
        let s = entropy_relation(g, rho, p)?;
        let a = sound_speed(g, rho, p)?;
        Ok(Self { rho, p, s, a })
    }

    pub fn from_entropy(g: &GasParams, rho: f64, s: f64) -> Result<Self> {
        let p = pressure_from_entropy(g, rho, s)?;
        Self::new(g, rho, p)
    }

    /// The state at density `rho` whose quadratic nonlinearity parameter
    /// vanishes exactly (the mixed-nonlinearity regime). Needs `α > 0` and
    /// `2 − γ − 3βρ > 0`.
    pub fn on_gamma_zero_manifold(g: &GasParams, rho: f64) -> Result<Self> {
        g.check_density(rho)?;
        let d = 2.0 - g.gamma - 3.0 * g.beta * rho;
        if g.alpha <= 0.0 || d <= 0.0 {
            return Err(Error::Domain(format!(
                "no vanishing-Gamma state: need alpha > 0 and 2 - gamma - 3 beta rho > 0 (alpha = {}, 2 - gamma - 3 beta rho = {d})",
                g.alpha
            )));
        }
        let a2 = 2.0 * g.alpha * rho * d / (g.gamma + 1.0);
        let p = (a2 + 2.0 * g.alpha * rho) * rho * (1.0 - g.beta * rho) / g.gamma - g.alpha * rho * rho;
        Self::new(g, rho, p)
    }

    /// Temperature from the equation of state.
    pub fn temperature(&self, g: &GasParams) -> f64 {
        (self.p + g.alpha * self.rho * self.rho) * (1.0 - g.beta * self.rho) / (self.rho * g.r_gas)
    }
}

/// `p = ρRT/(1 − βρ) − αρ²`.
pub fn pressure(g: &GasParams, rho: f64, temperature: f64) -> Result<f64> {
    g.check_density(rho)?;
    if !(temperature > 0.0) {
        return Err(Error::Domain(format!("temperature must be positive (T = {temperature})")));
    }
    Ok(rho * g.r_gas * temperature / (1.0 - g.beta * rho) - g.alpha * rho * rho)
}

/// `a = sqrt(γ(p + αρ²)/(ρ(1 − βρ)) − 2αρ)`.
pub fn sound_speed(g: &GasParams, rho: f64, p: f64) -> Result<f64> {
    g.check_density(rho)?;
    let a2 = g.gamma * (p + g.alpha * rho * rho) / (rho * (1.0 - g.beta * rho)) - 2.0 * rho * g.alpha;
    if !(a2 > 0.0) {
        return Err(Error::NotHyperbolic(a2));
    }
    Ok(a2.sqrt())
}

/// `s = s_ref + c_v ln[(p + αρ²)(1 − βρ)^γ / ρ^γ]`.
pub fn entropy_relation(g: &GasParams, rho: f64, p: f64) -> Result<f64> {
    g.check_density(rho)?;
    let q = p + g.alpha * rho * rho;
    if !(q > 0.0) {
        return Err(Error::Domain(format!("p + alpha rho^2 must be positive (got {q})")));
    }
    let arg = q * ((1.0 - g.beta * rho) / rho).powf(g.gamma);
    Ok(g.s_ref + g.cv * arg.ln())
}

/// Inverse of [`entropy_relation`]: pressure on the isentrope through `s`.
pub fn pressure_from_entropy(g: &GasParams, rho: f64, s: f64) -> Result<f64> {
    g.check_density(rho)?;
    Ok(isentrope_q(g, rho, s) - g.alpha * rho * rho)
}

// q = p + αρ² = K(s) ρ^γ (1 − βρ)^{−γ}
fn isentrope_q(g: &GasParams, rho: f64, s: f64) -> f64 {
    ((s - g.s_ref) / g.cv).exp() * (rho / (1.0 - g.beta * rho)).powf(g.gamma)
}

/// Analytic partial derivatives of `p(ρ, s)` up to third order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EosPartials {
    pub p: f64,
    pub p_r: f64,
    pub p_rr: f64,
    pub p_rrr: f64,
    pub p_s: f64,
    pub p_rs: f64,
    pub p_rrs: f64,
    pub p_ss: f64,
    pub p_rss: f64,
    pub p_sss: f64,
}

impl EosPartials {
    pub fn at(g: &GasParams, rho: f64, s: f64) -> Result<Self> {
        g.check_density(rho)?;
        let gm = g.gamma;
        let q = isentrope_q(g, rho, s);
        let h = rho * (1.0 - g.beta * rho);
        let c = gm - 1.0 + 2.0 * g.beta * rho;
        let q_r = gm * q / h;
        let q_rr = gm * q * c / (h * h);
        let q_rrr = gm * q / (h * h * h) * (c * (gm - 2.0 + 4.0 * g.beta * rho) + 2.0 * g.beta * h);
        let cv = g.cv;
        Ok(Self {
            p: q - g.alpha * rho * rho,
            p_r: q_r - 2.0 * g.alpha * rho,
            p_rr: q_rr - 2.0 * g.alpha,
            p_rrr: q_rrr,
            p_s: q / cv,
            p_rs: q_r / cv,
            p_rrs: q_rr / cv,
            p_ss: q / (cv * cv),
            p_rss: q_r / (cv * cv),
            p_sss: q / (cv * cv * cv),
        })
    }
}

/// Sound-speed and pressure slopes at a background state: the data every
/// coefficient formula is built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EosSlopes {
    pub rho: f64,
    pub a: f64,
    pub a_r: f64,
    pub a_rr: f64,
    pub a_s: f64,
    pub a_rs: f64,
    pub a_ss: f64,
    pub p_s: f64,
    pub p_ss: f64,
    pub p_sss: f64,
}

impl EosSlopes {
    pub fn at(g: &GasParams, rho: f64, s: f64) -> Result<Self> {
        let d = EosPartials::at(g, rho, s)?;
        if !(d.p_r > 0.0) {
            return Err(Error::NotHyperbolic(d.p_r));
        }
        let a = d.p_r.sqrt();
        let a_r = d.p_rr / (2.0 * a);
        let a_s = d.p_rs / (2.0 * a);
        Ok(Self {
            rho,
            a,
            a_r,
            a_rr: (d.p_rrr - 2.0 * a_r * a_r) / (2.0 * a),
            a_s,
            a_rs: (d.p_rrs - 2.0 * a_r * a_s) / (2.0 * a),
            a_ss: (d.p_rss - 2.0 * a_s * a_s) / (2.0 * a),
            p_s: d.p_s,
            p_ss: d.p_ss,
            p_sss: d.p_sss,
        })
    }

    pub fn of_state(g: &GasParams, st: &ThermoState) -> Result<Self> {
        Self::at(g, st.rho, st.s)
    }

    /// Projects the first density slope onto the vanishing-Γ relation
    /// `(ρ/a) a_ρ = −1`, holding every higher slope fixed. States on the
    /// Γ = 0 manifold are left unchanged.
    pub fn gamma_truncated(&self) -> Self {
        Self { a_r: -self.a / self.rho, ..*self }
    }

    pub fn p_r(&self) -> f64 {
        self.a * self.a
    }
    pub fn p_rr(&self) -> f64 {
        2.0 * self.a * self.a_r
    }
    pub fn p_rrr(&self) -> f64 {
        2.0 * self.a_r * self.a_r + 2.0 * self.a * self.a_rr
    }
    pub fn p_rs(&self) -> f64 {
        2.0 * self.a * self.a_s
    }
    pub fn p_rrs(&self) -> f64 {
        2.0 * (self.a_r * self.a_s + self.a * self.a_rs)
    }
    pub fn p_rss(&self) -> f64 {
        2.0 * (self.a_s * self.a_s + self.a * self.a_ss)
    }

    /// `Γ/|∇φ| = 1 + (ρ/a) a_ρ`.
    pub fn gamma_bar(&self) -> f64 {
        1.0 + self.rho * self.a_r / self.a
    }

    /// `Ω = (ρ²/a) ∂Σ/∂ρ` with `Σ = (1/ρ) ∂(aρ)/∂ρ`, analytically.
    pub fn omega_definition(&self) -> f64 {
        let r = self.rho;
        (r * self.a_r + r * r * self.a_rr - self.a) / self.a
    }
}

/// `Γ = ((γ+1)/2)[1/(1−βρ₀) − 2αρ₀(2−γ−3βρ₀)/(a₀²(γ+1)(1−βρ₀))] |∇φ|`.
pub fn capital_gamma(g: &GasParams, rho0: f64, a0: f64, grad_phi_norm: f64) -> Result<f64> {
    g.check_density(rho0)?;
    if !(a0 > 0.0) {
        return Err(Error::Domain(format!("sound speed must be positive (a0 = {a0})")));
    }
    Ok(0.5 * (g.gamma + 1.0) * gamma_bracket(g, rho0, a0) * grad_phi_norm)
}

/// The bracket of [`capital_gamma`]; choosing parameters so that it equals
/// ε makes Γ = O(ε).
pub fn gamma_bracket(g: &GasParams, rho0: f64, a0: f64) -> f64 {
    let one_m = 1.0 - g.beta * rho0;
    1.0 / one_m - 2.0 * g.alpha * rho0 * (2.0 - g.gamma - 3.0 * g.beta * rho0) / (a0 * a0 * (g.gamma + 1.0) * one_m)
}

/// `Γ̂ = Γ/ε = (γ+1)/2`.
pub fn gamma_hat(g: &GasParams) -> f64 {
    0.5 * (g.gamma + 1.0)
}

/// Cubic nonlinearity parameter, closed form valid where Γ vanishes:
/// `Ω = −(3(1+γ)/(2(1−βρ₀)) − 3αβρ₀²/((1−βρ₀)a₀²))`.
pub fn omega_param(g: &GasParams, rho0: f64, a0: f64) -> Result<f64> {
    g.check_density(rho0)?;
    if !(a0 > 0.0) {
        return Err(Error::Domain(format!("sound speed must be positive (a0 = {a0})")));
    }
    let one_m = 1.0 - g.beta * rho0;
    Ok(-(3.0 * (1.0 + g.gamma) / (2.0 * one_m) - 3.0 * g.alpha * g.beta * rho0 * rho0 / (one_m * a0 * a0)))
}

/// `Λ = −(3(1+γ)/(2a₀))(1+βρ₀)|∇φ| + (3αβρ₀²/a₀³)|∇φ|`, i.e. `Ω|∇φ|/a₀`
/// with O(β²) terms dropped.
pub fn lambda_param(g: &GasParams, rho0: f64, a0: f64, grad_phi_norm: f64) -> Result<f64> {
    if !(a0 > 0.0) {
        return Err(Error::Domain(format!("sound speed must be positive (a0 = {a0})")));
    }
    g.check_density(rho0)?;
    Ok(lambda_unchecked(g, rho0, a0, grad_phi_norm))
}

pub(crate) fn lambda_unchecked(g: &GasParams, rho0: f64, a0: f64, grad_phi_norm: f64) -> f64 {
    (-(3.0 * (1.0 + g.gamma) / (2.0 * a0)) * (1.0 + g.beta * rho0)
        + 3.0 * g.alpha * g.beta * rho0 * rho0 / (a0 * a0 * a0))
        * grad_phi_norm
}

/// `Σ(ρ) = (1/ρ) ∂(aρ)/∂ρ` along the isentrope `s`.
pub fn sigma_function(g: &GasParams, rho: f64, s: f64) -> Result<f64> {
    let sl = EosSlopes::at(g, rho, s)?;
    Ok(sl.a / rho + sl.a_r)
}

/// `Ω = (ρ²/a)∂Σ/∂ρ` by central differencing of `Σ` (self-check for the
/// closed forms).
pub fn omega_from_sigma(g: &GasParams, st: &ThermoState) -> Result<f64> {
    let h = 1e-5 * st.rho;
    let sp = sigma_function(g, st.rho + h, st.s)?;
    let sm = sigma_function(g, st.rho - h, st.s)?;
    Ok(st.rho * st.rho / st.a * (sp - sm) / (2.0 * h))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vdw() -> GasParams {
        GasParams::new(0.35, 0.06, 1.01, 0.01).unwrap()
    }

    #[test]
    fn pressure_examples() {
        let ideal = GasParams { gamma: 1.4, ..GasParams::ideal(1.4).unwrap() };
        assert_eq!(pressure(&ideal, 1.0, 1.0).unwrap(), 1.0);
        let p = pressure(&vdw(), 1.0, 1.0).unwrap();
        assert!((p - (1.0 / 0.94 - 0.35)).abs() < 1e-15);
        let g = GasParams::new(0.15, 0.5, 1.01, 0.01).unwrap();
        assert!(matches!(pressure(&g, 2.0, 1.0), Err(Error::Covolume(_))));
    }

    #[test]
    fn sound_speed_examples() {
        let ideal = GasParams::ideal(1.4).unwrap();
        assert!((sound_speed(&ideal, 1.0, 1.0).unwrap() - 1.4f64.sqrt()).abs() < 1e-15);
        let a = sound_speed(&vdw(), 1.0, 1.0).unwrap();
        assert!((a - (1.01 * 1.35 / 0.94 - 0.7f64).sqrt()).abs() < 1e-15);
        let g = GasParams::new(1.0, 0.0, 1.01, 0.01).unwrap();
        assert!(matches!(sound_speed(&g, 1.0, 0.1), Err(Error::NotHyperbolic(_))));
    }

    #[test]
    fn entropy_examples() {
        let ideal = GasParams::ideal(1.4).unwrap();
        assert_eq!(entropy_relation(&ideal, 1.0, 1.0).unwrap(), 0.0);
        assert!((entropy_relation(&ideal, 1.0, std::f64::consts::E).unwrap() - 1.0).abs() < 1e-15);
        let s = entropy_relation(&vdw(), 1.0, 1.0).unwrap();
        assert!((s - (1.35 * 0.94f64.powf(1.01)).ln()).abs() < 1e-15);
        let g = GasParams::new(0.0, 0.0, 1.4, 0.01).unwrap();
        assert!(entropy_relation(&g, 1.0, -1.0).is_err());
    }

    #[test]
    fn gamma_examples() {
        let ideal = GasParams::ideal(1.4).unwrap();
        assert!((capital_gamma(&ideal, 0.7, 2.0, 1.0).unwrap() - 1.2).abs() < 1e-15);
        let v = capital_gamma(&vdw(), 1.0, 1.0, 1.0).unwrap();
        let expect = 2.01 / 2.0 * (1.0 / 0.94 - 0.7 * 0.81 / (2.01 * 0.94));
        assert!((v - expect).abs() < 1e-14);
        let g = GasParams::new(0.15, 0.5, 1.01, 0.01).unwrap();
        assert!(capital_gamma(&g, 2.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn gamma_hat_examples() {
        let mut g = vdw();
        assert!((gamma_hat(&g) - 1.005).abs() < 1e-15);
        g.gamma = 1.0;
        assert_eq!(gamma_hat(&g), 1.0);
        g.gamma = 5.0 / 3.0;
        assert!((gamma_hat(&g) - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn omega_and_lambda_examples() {
        let ideal = GasParams::ideal(1.01).unwrap();
        assert!((omega_param(&ideal, 1.0, 1.0).unwrap() + 3.015).abs() < 1e-14);
        let o = omega_param(&vdw(), 1.0, 1.0).unwrap();
        assert!((o + (6.03 / 1.88 - 0.063 / 0.94)).abs() < 1e-14);
        assert!((o + 3.1404).abs() < 5e-5);
        let dilute = omega_param(&vdw(), 1e-12, 1.0).unwrap();
        assert!((dilute + 3.015).abs() < 1e-10);

        assert!((lambda_param(&ideal, 1.0, 1.0, 1.0).unwrap() + 3.015).abs() < 1e-14);
        let l = lambda_param(&vdw(), 1.0, 1.0, 1.0).unwrap();
        assert!((l - (-3.015 * 1.06 + 0.063)).abs() < 1e-14);
        assert!(lambda_param(&vdw(), 1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn lambda_matches_omega_at_zero_covolume() {
        let g = GasParams::new(0.3, 0.0, 1.3, 0.01).unwrap();
        for &(rho, a, k) in &[(1.0, 1.0, 1.0), (0.5, 0.8, 1.3), (2.0, 1.7, 0.4)] {
            let l = lambda_param(&g, rho, a, k).unwrap();
            let o = omega_param(&g, rho, a).unwrap();
            assert!((l * a / k - o).abs() < 1e-13);
        }
    }

    #[test]
    fn sound_speed_is_isentropic_pressure_slope() {
        let g = vdw();
        let st = ThermoState::new(&g, 1.0, 1.0).unwrap();
        let h = 1e-4;
        let pp = pressure_from_entropy(&g, st.rho + h, st.s).unwrap();
        let pm = pressure_from_entropy(&g, st.rho - h, st.s).unwrap();
        assert!(((pp - pm) / (2.0 * h) - st.a * st.a).abs() < 1e-6);
    }

    #[test]
    fn analytic_partials_match_finite_differences() {
        for g in [vdw(), GasParams::new(0.2, 0.1, 1.4, 0.01).unwrap(), GasParams::ideal(5.0 / 3.0).unwrap()] {
            let (rho, s) = (0.9, 0.3);
            let d = EosPartials::at(&g, rho, s).unwrap();
            let h = 1e-4;
            let p = |r: f64, s: f64| pressure_from_entropy(&g, r, s).unwrap();
            let dr = |f: &dyn Fn(f64, f64) -> f64, r: f64, s: f64| (f(r + h, s) - f(r - h, s)) / (2.0 * h);
            let ds = |f: &dyn Fn(f64, f64) -> f64, r: f64, s: f64| (f(r, s + h) - f(r, s - h)) / (2.0 * h);
            let part = |r: f64, s: f64| EosPartials::at(&g, r, s).unwrap();
            let close = |a: f64, b: f64| (a - b).abs() <= 1e-6 * (1.0 + b.abs());
            assert!(close(dr(&p, rho, s), d.p_r));
            assert!(close(ds(&p, rho, s), d.p_s));
            assert!(close(dr(&|r, s| part(r, s).p_r, rho, s), d.p_rr));
            assert!(close(dr(&|r, s| part(r, s).p_rr, rho, s), d.p_rrr));
            assert!(close(ds(&|r, s| part(r, s).p_r, rho, s), d.p_rs));
            assert!(close(ds(&|r, s| part(r, s).p_rr, rho, s), d.p_rrs));
            assert!(close(ds(&|r, s| part(r, s).p_s, rho, s), d.p_ss));
            assert!(close(ds(&|r, s| part(r, s).p_rs, rho, s), d.p_rss));
            assert!(close(ds(&|r, s| part(r, s).p_ss, rho, s), d.p_sss));
        }
    }

    #[test]
    fn slopes_reassemble_pressure_partials() {
        let g = vdw();
        let d = EosPartials::at(&g, 1.1, -0.2).unwrap();
        let sl = EosSlopes::at(&g, 1.1, -0.2).unwrap();
        for (a, b) in [
            (sl.p_r(), d.p_r),
            (sl.p_rr(), d.p_rr),
            (sl.p_rrr(), d.p_rrr),
            (sl.p_rs(), d.p_rs),
            (sl.p_rrs(), d.p_rrs),
            (sl.p_rss(), d.p_rss),
        ] {
            assert!((a - b).abs() < 1e-12 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn closed_form_gamma_is_the_sound_speed_slope() {
        let g = vdw();
        for &(rho, p) in &[(1.0, 1.0), (0.5, 0.3), (1.4, 2.0)] {
            let st = ThermoState::new(&g, rho, p).unwrap();
            let sl = EosSlopes::of_state(&g, &st).unwrap();
            let closed = capital_gamma(&g, rho, st.a, 1.0).unwrap();
            assert!((closed - sl.gamma_bar()).abs() < 1e-13);
        }
    }

    #[test]
    fn omega_closed_form_holds_on_the_vanishing_gamma_manifold() {
        for gamma in [1.01, 1.4, 5.0 / 3.0] {
            for beta in [0.0, 0.02, 0.06] {
                let g = GasParams::new(0.35, beta, gamma, 0.01).unwrap();
                for rho in [0.3, 0.87, 1.0, 1.6] {
                    let st = ThermoState::on_gamma_zero_manifold(&g, rho).unwrap();
                    let sl = EosSlopes::of_state(&g, &st).unwrap();
                    assert!(sl.gamma_bar().abs() < 1e-12);
                    let closed = omega_param(&g, st.rho, st.a).unwrap();
                    assert!((closed - sl.omega_definition()).abs() < 1e-12);
                    assert!((closed - omega_from_sigma(&g, &st).unwrap()).abs() < 1e-6);
                }
            }
        }
    }

    #[test]
    fn gamma_monotone_in_van_der_waals_constants() {
        let h = 1e-6;
        for i in 0..=10 {
            for j in 0..=6 {
                let alpha = 0.05 * i as f64;
                let beta = 0.05 * j as f64;
                let at = |a: f64, b: f64| {
                    let g = GasParams { alpha: a, beta: b, ..GasParams::ideal(1.01).unwrap() };
                    capital_gamma(&g, 1.0, 1.0, 1.0).unwrap()
                };
                let d_alpha = (at(alpha + h, beta) - at((alpha - h).max(0.0), beta)) / (2.0 * h);
                let d_beta = (at(alpha, beta + h) - at(alpha, (beta - h).max(0.0))) / (2.0 * h);
                assert!(d_alpha < 0.0, "alpha={alpha} beta={beta}");
                assert!(d_beta > 0.0, "alpha={alpha} beta={beta}");
            }
        }
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(GasParams::new(0.1, 0.0, 1.0, 0.01).is_err());
        assert!(GasParams::new(0.1, 0.0, 1.7, 0.01).is_err());
        assert!(GasParams::new(-0.1, 0.0, 1.4, 0.01).is_err());
        assert!(GasParams::new(0.1, -0.1, 1.4, 0.01).is_err());
        assert!(GasParams::new(0.1, 0.1, 1.4, 0.0).is_err());
        assert!(GasParams::new(0.1, 0.1, 5.0 / 3.0, 0.5).is_ok());
    }
}
