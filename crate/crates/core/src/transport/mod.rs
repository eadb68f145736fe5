//! Coefficients of the amplitude equation
//!
//! ```text
//! σ_t + A(t) σ σ_ξ − B(t) σ² σ_ξ + g(t) σ + c = 0
//! ```
//!
//! and its solution along characteristics.

mod amplitude;
mod breaking;
mod characteristics;
mod paper_jacobian;
mod profile;

pub use amplitude::{sigma_closed, sigma_ode, sigma_ode_with};
pub use breaking::{breaking_time, breaking_time_on, BreakingOptions, BreakingReport};
pub use characteristics::{advance_characteristics, CharacteristicBundle, CharacteristicMap, MapMoments};
pub use paper_jacobian::{jacobian_paper_general, jacobian_paper_omega0, jacobian_paper_theta0};
pub use profile::InitialProfile;

use crate::atmosphere::{height_at, AtmosphereParams};
use crate::error::{Error, Result};
use crate::thermo::{self, GasParams};

/// Which cubic coefficient to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CubicMode {
    /// The printed coefficient `(3/4)(γ+1)u²[1 + βu^{−θ/ω} − 2αβu^{2−2θ/ω}]`.
    #[default]
    PaperExact,
    /// `B = −Λ/2` from the closed-form Λ with the profile values.
    LambdaDerived,
}

/// Which attenuation coefficient to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DampingForm {
    /// `γθ u^{θ/ω−1} / (4(u^{θ/ω} − β))`, consistent with the profiles.
    #[default]
    Corrected,
    /// The printed `γθ u^{θ/ω−1} / (4(u^θ − β))`.
    Verbatim,
}

impl std::fmt::Display for CubicMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CubicMode::PaperExact => "paper-exact",
            CubicMode::LambdaDerived => "lambda-derived",
        })
    }
}

impl std::fmt::Display for DampingForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DampingForm::Corrected => "corrected",
            DampingForm::Verbatim => "verbatim",
        })
    }
}

/// Coefficients at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransportCoeffs {
    pub a: f64,
    pub b: f64,
    pub g: f64,
    pub c: f64,
}

impl TransportCoeffs {
    /// Characteristic speed `F'(σ) = Aσ − Bσ²`.
    #[inline]
    pub fn speed(&self, sigma: f64) -> f64 {
        sigma * (self.a - self.b * sigma)
    }

    /// Flux `F(σ) = Aσ²/2 − Bσ³/3`.
    #[inline]
    pub fn flux(&self, sigma: f64) -> f64 {
        sigma * sigma * (0.5 * self.a - self.b * sigma / 3.0)
    }
}

/// Anything that supplies coefficients as a function of time.
pub trait CoefficientProvider: Sync {
    fn at(&self, t: f64) -> TransportCoeffs;
}

/// Fixed coefficients, for model problems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantCoeffs(pub TransportCoeffs);

impl CoefficientProvider for ConstantCoeffs {
    fn at(&self, _t: f64) -> TransportCoeffs {
        self.0
    }
}

/// The stratified-atmosphere evolution equation with switches for each term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionModel {
    pub gas: GasParams,
    pub atm: AtmosphereParams,
    pub cubic_mode: CubicMode,
    pub damping: DampingForm,
    pub cubic: bool,
    pub forcing: bool,
    pub attenuation: bool,
}

impl EvolutionModel {
    /// All terms on, paper-exact cubic, corrected attenuation. Fails on
    /// parameters for which some coefficient is undefined for `t ≥ 0`.
    pub fn new(gas: GasParams, atm: AtmosphereParams) -> Result<Self> {
        gas.validate()?;
        if gas.beta >= 1.0 {
            return Err(Error::Inadmissible(format!(
                "beta < 1 required so that beta rho0 < 1 along the ray (beta = {})",
                gas.beta
            )));
        }
        Ok(Self {
            gas,
            atm,
            cubic_mode: CubicMode::PaperExact,
            damping: DampingForm::Corrected,
            cubic: true,
            forcing: true,
            attenuation: true,
        })
    }

    pub fn with_cubic_mode(mut self, mode: CubicMode) -> Self {
        self.cubic_mode = mode;
        self
    }

    pub fn with_damping(mut self, form: DampingForm) -> Self {
        self.damping = form;
        self
    }

    pub fn without_cubic(mut self) -> Self {
        self.cubic = false;
        self
    }

    pub fn without_forcing(mut self) -> Self {
        self.forcing = false;
        self
    }

    pub fn without_attenuation(mut self) -> Self {
        self.attenuation = false;
        self
    }

    /// Unchecked evaluation; `t` must keep `1 + ωt > 0`.
    pub fn eval(&self, t: f64) -> TransportCoeffs {
        let (g, ap) = (&self.gas, &self.atm);
        let u = ap.u(t);
        let x3 = height_at(ap.omega, t);
        // u^{−θ/ω} = ρ₀(x₃), 1/u = a₀(x₃)
        let rho0 = (-ap.theta * x3).exp();
        let a = 0.5 * (g.gamma + 1.0) * u;
        let b = if !self.cubic {
            0.0
        } else {
            match self.cubic_mode {
                CubicMode::PaperExact => {
                    0.75 * (g.gamma + 1.0)
                        * u
                        * u
                        * (1.0 + g.beta * rho0 - 2.0 * g.alpha * g.beta * u * u * rho0 * rho0)
                }
                CubicMode::LambdaDerived => -0.5 * thermo::lambda_unchecked(g, rho0, 1.0 / u, u),
            }
        };
        let damping = if !self.attenuation || ap.theta == 0.0 {
            0.0
        } else {
            match self.damping {
                DampingForm::Corrected => g.gamma * ap.theta / (4.0 * u * (1.0 - g.beta * rho0)),
                DampingForm::Verbatim => g.gamma * ap.theta / (4.0 * u * rho0 * (u.powf(ap.theta) - g.beta)),
            }
        };
        TransportCoeffs { a, b, g: damping, c: if self.forcing { 0.5 } else { 0.0 } }
    }
}

impl CoefficientProvider for EvolutionModel {
    fn at(&self, t: f64) -> TransportCoeffs {
        self.eval(t)
    }
}

/// Coefficients at time `t` with all terms on and the corrected attenuation.
pub fn coeffs(g: &GasParams, ap: &AtmosphereParams, t: f64, mode: CubicMode) -> Result<TransportCoeffs> {
    let model = EvolutionModel::new(*g, *ap)?.with_cubic_mode(mode);
    if !(ap.u(t) > 0.0) {
        return Err(Error::Domain(format!("1 + omega t must be positive (t = {t})")));
    }
    let c = model.eval(t);
    if [c.a, c.b, c.g].iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite(format!("transport coefficients at t = {t:e}")));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_examples() {
        let ap = AtmosphereParams::new(0.1, 0.1).unwrap();
        let g = GasParams::new(0.35, 0.06, 1.01, 0.01).unwrap();
        assert!((coeffs(&g, &ap, 0.0, CubicMode::PaperExact).unwrap().a - 1.005).abs() < 1e-15);

        let g0 = GasParams::new(0.0, 0.0, 1.01, 0.01).unwrap();
        let c = coeffs(&g0, &ap, 0.0, CubicMode::PaperExact).unwrap();
        assert!((c.b - 1.5075).abs() < 1e-14);
        assert!((c.g - 0.02525).abs() < 1e-15);
        assert_eq!(c.c, 0.5);

        let flat = AtmosphereParams::new(0.0, 0.1).unwrap();
        for t in [0.0, 1.0, 7.5] {
            assert_eq!(coeffs(&g, &flat, t, CubicMode::PaperExact).unwrap().g, 0.0);
        }
    }

    #[test]
    fn paper_cubic_matches_printed_powers() {
        let ap = AtmosphereParams::new(0.07, 0.13).unwrap();
        let g = GasParams::new(0.3, 0.05, 1.2, 0.01).unwrap();
        let t = 2.3;
        let u: f64 = 1.0 + 0.13 * t;
        let m = 0.07 / 0.13;
        let printed = 0.75 * 2.2 * u * u * (1.0 + 0.05 * u.powf(-m) - 2.0 * 0.3 * 0.05 * u.powf(2.0 - 2.0 * m));
        let c = coeffs(&g, &ap, t, CubicMode::PaperExact).unwrap();
        assert!((c.b - printed).abs() < 1e-13);
        let damp = 1.2 * 0.07 * u.powf(m - 1.0) / (4.0 * (u.powf(m) - 0.05));
        assert!((c.g - damp).abs() < 1e-15);
        let verbatim = EvolutionModel::new(g, ap).unwrap().with_damping(DampingForm::Verbatim).eval(t);
        let vd = 1.2 * 0.07 * u.powf(m - 1.0) / (4.0 * (u.powf(0.07) - 0.05));
        assert!((verbatim.g - vd).abs() < 1e-14);
    }

    #[test]
    fn lambda_mode_is_half_minus_lambda() {
        let ap = AtmosphereParams::new(0.1, 0.1).unwrap();
        let g = GasParams::new(0.35, 0.06, 1.01, 0.01).unwrap();
        let t = 1.4;
        let u: f64 = 1.14;
        let c = coeffs(&g, &ap, t, CubicMode::LambdaDerived).unwrap();
        let expect = 0.75 * 2.01 * u * u * (1.0 + 0.06 / u) - 1.5 * 0.35 * 0.06 * u.powi(2);
        assert!((c.b - expect).abs() < 1e-13);
    }

    #[test]
    fn damping_equals_plane_wave_chi() {
        let ap = AtmosphereParams::new(0.1, 0.15).unwrap();
        let g = GasParams::new(0.35, 0.06, 1.01, 0.01).unwrap();
        for t in [0.0, 0.7, 3.0] {
            let c = coeffs(&g, &ap, t, CubicMode::PaperExact).unwrap();
            let chi = crate::atmosphere::chi(&g, &ap, t, 0.0).unwrap();
            assert!((c.g - chi).abs() < 1e-15);
        }
    }
}
