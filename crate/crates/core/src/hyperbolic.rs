//! The 5×5 quasilinear Euler system `U_t + A^k(U) U_{,k} = F` with
//! `U = (u₁, u₂, u₃, ρ, s)`, its acoustic eigenpair, and the generic
//! eigen-algebra formulas for the transport coefficients.
//!
//! Everything here is evaluated numerically from matrix entries and their
//! derivatives, so it serves as an independent oracle for the closed forms
//! in [`crate::thermo`] and [`crate::atmosphere`].

use nalgebra::{SMatrix, SVector, Vector4};

use crate::error::{Error, Result};
use crate::thermo::{EosPartials, EosSlopes, GasParams, ThermoState};

pub type Vec5 = SVector<f64, 5>;
pub type Mat5 = SMatrix<f64, 5, 5>;

/// Whether terms proportional to Γ are kept when assembling the cubic
/// coefficient and the attenuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Truncation {
    /// Every term kept.
    #[default]
    Exact,
    /// Explicit `Γ I₁`, `Γ l` terms dropped and the first density slope of
    /// the sound speed replaced by its Γ = 0 value `−a/ρ`.
    NeglectGamma,
}

/// How `∇_U A^k` is obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DerivativeSource {
    Analytic,
    /// Central differences of [`matrices_at`] with the given relative step.
    FiniteDifference(f64),
}

/// Coefficient matrices at the background state, plus the gravity source.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemMatrices {
    pub a: [Mat5; 3],
    pub f0: Vec5,
    pub u0: Vec5,
    pub gas: GasParams,
    pub state: ThermoState,
    pub slopes: EosSlopes,
}

/// `A^k(U)` at an arbitrary state: diagonal `u_k`, `A^k_{4k} = ρ`,
/// `A^k_{k4} = p_ρ/ρ`, `A^k_{k5} = p_s/ρ`.
pub fn matrices_at(g: &GasParams, u: &Vec5) -> Result<[Mat5; 3]> {
    let (rho, s) = (u[3], u[4]);
    let d = EosPartials::at(g, rho, s)?;
    if !(d.p_r > 0.0) {
        return Err(Error::NotHyperbolic(d.p_r));
    }
    let mut out = [Mat5::zeros(); 3];
    for (k, a) in out.iter_mut().enumerate() {
        for i in 0..5 {
            a[(i, i)] = u[k];
        }
        a[(3, k)] = rho;
        a[(k, 3)] = d.p_r / rho;
        a[(k, 4)] = d.p_s / rho;
    }
    Ok(out)
}

/// Matrices at the quiescent background `U₀ = (0, 0, 0, ρ₀, s₀)`.
pub fn build_matrices(g: &GasParams, state: &ThermoState) -> Result<SystemMatrices> {
    let u0 = Vec5::new(0.0, 0.0, 0.0, state.rho, state.s);
    let a = matrices_at(g, &u0)?;
    Ok(SystemMatrices {
        a,
        f0: Vec5::new(0.0, 0.0, 1.0, 0.0, 0.0),
        u0,
        gas: *g,
        state: *state,
        slopes: EosSlopes::of_state(g, state)?,
    })
}

impl SystemMatrices {
    /// `Σ_k (∂φ/∂x_k) A^k`.
    pub fn flux_matrix(&self, grad_phi: [f64; 3]) -> Mat5 {
        self.a[0] * grad_phi[0] + self.a[1] * grad_phi[1] + self.a[2] * grad_phi[2]
    }

    /// `φ_t I + Σ_k φ_k A^k` with `φ_t = −a|∇φ|` from the eikonal equation.
    pub fn characteristic_matrix(&self, grad_phi: [f64; 3]) -> Mat5 {
        let phi_t = -self.state.a * norm3(grad_phi);
        self.flux_matrix(grad_phi) + Mat5::identity() * phi_t
    }
}

/// Acoustic eigenvectors and speed of the right-running family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair {
    pub l: Vec5,
    pub r: Vec5,
    pub speed: f64,
    pub n: [f64; 3],
    pub grad_phi: [f64; 3],
}

impl EigenPair {
    pub fn grad_phi_norm(&self) -> f64 {
        norm3(self.grad_phi)
    }

    /// Max-norm residuals of the left and right eigen-equations.
    pub fn residuals(&self, m: &SystemMatrices) -> (f64, f64) {
        let k = m.flux_matrix(self.grad_phi);
        let left = (k.transpose() * self.l - self.l * self.speed).amax();
        let right = (k * self.r - self.r * self.speed).amax();
        (left, right)
    }

    /// Same pair with `r` multiplied by `c`.
    pub fn with_r_scaled(&self, c: f64) -> Self {
        Self { r: self.r * c, ..*self }
    }
}

/// `l = (n, a/ρ, p_s/(ρa))`, `r = (n, ρ/a, 0)`, speed `a|∇φ|`.
pub fn acoustic_eigenpair(m: &SystemMatrices, grad_phi: [f64; 3]) -> Result<EigenPair> {
    let norm = norm3(grad_phi);
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::Domain("phase gradient must be nonzero".into()));
    }
    let n = [grad_phi[0] / norm, grad_phi[1] / norm, grad_phi[2] / norm];
    let ThermoState { rho, a, .. } = m.state;
    let p_s = m.slopes.p_s;
    Ok(EigenPair {
        l: Vec5::new(n[0], n[1], n[2], a / rho, p_s / (rho * a)),
        r: Vec5::new(n[0], n[1], n[2], rho / a, 0.0),
        speed: a * norm,
        n,
        grad_phi,
    })
}

/// First and second derivatives of every entry of `A^k` with respect to
/// the components of `U`, at the background.
#[derive(Debug, Clone, PartialEq)]
pub struct EntryDerivatives {
    /// `first[k][m] = ∂A^k/∂U_m`.
    pub first: [[Mat5; 5]; 3],
    /// `second[k][m][n] = ∂²A^k/∂U_m∂U_n`.
    pub second: [[[Mat5; 5]; 5]; 3],
}

impl EntryDerivatives {
    /// Closed-form derivatives assembled from the pressure partials implied
    /// by `slopes` (which may be Γ-truncated).
    pub fn analytic(sl: &EosSlopes) -> Self {
        let r = sl.rho;
        let (p_r, p_rr, p_rrr) = (sl.p_r(), sl.p_rr(), sl.p_rrr());
        let (p_s, p_rs, p_rrs) = (sl.p_s, sl.p_rs(), sl.p_rrs());
        let (p_ss, p_rss, p_sss) = (sl.p_ss, sl.p_rss(), sl.p_sss);
        let r2 = r * r;
        let r3 = r2 * r;

        // derivatives of p_ρ/ρ and p_s/ρ in (ρ, s)
        let f4 = [
            p_rr / r - p_r / r2,
            p_rs / r,
            p_rrr / r - 2.0 * p_rr / r2 + 2.0 * p_r / r3,
            p_rrs / r - p_rs / r2,
            p_rss / r,
        ];
        let f5 = [
            p_rs / r - p_s / r2,
            p_ss / r,
            p_rrs / r - 2.0 * p_rs / r2 + 2.0 * p_s / r3,
            p_rss / r - p_ss / r2,
            p_sss / r,
        ];

        let mut first = [[Mat5::zeros(); 5]; 3];
        let mut second = [[[Mat5::zeros(); 5]; 5]; 3];
        for k in 0..3 {
            first[k][k] = Mat5::identity();
            first[k][3][(3, k)] = 1.0;
            first[k][3][(k, 3)] = f4[0];
            first[k][3][(k, 4)] = f5[0];
            first[k][4][(k, 3)] = f4[1];
            first[k][4][(k, 4)] = f5[1];

            second[k][3][3][(k, 3)] = f4[2];
            second[k][3][3][(k, 4)] = f5[2];
            for (m, n) in [(3, 4), (4, 3)] {
                second[k][m][n][(k, 3)] = f4[3];
                second[k][m][n][(k, 4)] = f5[3];
            }
            second[k][4][4][(k, 3)] = f4[4];
            second[k][4][4][(k, 4)] = f5[4];
        }
        Self { first, second }
    }

    /// Central differences of the true matrices around `u0`. The step is
    /// `rel_step` times the component scale (one for velocities, `ρ₀` for
    /// density, one for entropy); second derivatives use ten times that step.
    pub fn finite_difference(g: &GasParams, u0: &Vec5, rel_step: f64) -> Result<Self> {
        let scale = [1.0, 1.0, 1.0, u0[3], 1.0];
        let h: [f64; 5] = std::array::from_fn(|m| rel_step * scale[m]);
        let h2: [f64; 5] = std::array::from_fn(|m| 10.0 * h[m]);
        let shifted = |du: &[(usize, f64)]| {
            let mut u = *u0;
            for &(m, d) in du {
                u[m] += d;
            }
            matrices_at(g, &u)
        };

        let mut first = [[Mat5::zeros(); 5]; 3];
        for m in 0..5 {
            let p = shifted(&[(m, h[m])])?;
            let q = shifted(&[(m, -h[m])])?;
            for k in 0..3 {
                first[k][m] = (p[k] - q[k]) / (2.0 * h[m]);
            }
        }

        let base = matrices_at(g, u0)?;
        let mut second = [[[Mat5::zeros(); 5]; 5]; 3];
        for m in 0..5 {
            for n in m..5 {
                let d = if m == n {
                    let p = shifted(&[(m, h2[m])])?;
                    let q = shifted(&[(m, -h2[m])])?;
                    std::array::from_fn::<Mat5, 3, _>(|k| (p[k] - base[k] * 2.0 + q[k]) / (h2[m] * h2[m]))
                } else {
                    let pp = shifted(&[(m, h2[m]), (n, h2[n])])?;
                    let pm = shifted(&[(m, h2[m]), (n, -h2[n])])?;
                    let mp = shifted(&[(m, -h2[m]), (n, h2[n])])?;
                    let mm = shifted(&[(m, -h2[m]), (n, -h2[n])])?;
                    std::array::from_fn(|k| (pp[k] - pm[k] - mp[k] + mm[k]) / (4.0 * h2[m] * h2[n]))
                };
                for k in 0..3 {
                    second[k][m][n] = d[k];
                    second[k][n][m] = d[k];
                }
            }
        }
        Ok(Self { first, second })
    }

    /// `v·∇_U A^k = Σ_m v_m ∂A^k/∂U_m`.
    pub fn directional(&self, k: usize, v: &Vec5) -> Mat5 {
        (0..5).fold(Mat5::zeros(), |acc, m| acc + self.first[k][m] * v[m])
    }

    /// `vv:∇_U∇_U A^k = Σ_{m,n} v_m v_n ∂²A^k/∂U_m∂U_n`.
    pub fn hessian_contract(&self, k: usize, v: &Vec5) -> Mat5 {
        let mut acc = Mat5::zeros();
        for m in 0..5 {
            for n in 0..5 {
                acc += self.second[k][m][n] * (v[m] * v[n]);
            }
        }
        acc
    }
}

/// `Γ = φ_{,k} (l·r)⁻¹ l·[r·(∇_U A^k)₀]·r`.
pub fn gamma_numeric(d: &EntryDerivatives, ep: &EigenPair) -> f64 {
    let lr = ep.l.dot(&ep.r);
    (0..3).map(|k| ep.grad_phi[k] * ep.l.dot(&(d.directional(k, &ep.r) * ep.r))).sum::<f64>() / lr
}

/// `E = ½ φ_{,k} l·[rr:(∇_U∇_U A^k)₀]·r`.
pub fn e_numeric(d: &EntryDerivatives, ep: &EigenPair) -> f64 {
    0.5 * (0..3).map(|k| ep.grad_phi[k] * ep.l.dot(&(d.hessian_contract(k, &ep.r) * ep.r))).sum::<f64>()
}

/// `M_m = ½{φ_{,k} l·(∂A^k/∂U_m)·r − Γ l_m}` and
/// `N_j = ½{φ_{,k} (l·[r·∇_U A^k])_j − Γ l_j}`. Pass `gamma = 0` for the
/// truncated vectors.
pub fn mn_numeric(d: &EntryDerivatives, ep: &EigenPair, gamma: f64) -> (Vec5, Vec5) {
    let mut mv = Vec5::zeros();
    let mut nv = Vec5::zeros();
    for k in 0..3 {
        let w = ep.grad_phi[k];
        for m in 0..5 {
            mv[m] += w * ep.l.dot(&(d.first[k][m] * ep.r));
        }
        nv += (d.directional(k, &ep.r).transpose() * ep.l) * w;
    }
    ((mv - ep.l * gamma) * 0.5, (nv - ep.l * gamma) * 0.5)
}

/// Components of `M` and `N` on the four independent rows of the
/// characteristic matrix, by least squares on the full five-component
/// identity `M = Σ_α ω_α B_α`.
pub fn omega_delta_coeffs(
    m: &SystemMatrices,
    ep: &EigenPair,
    mv: &Vec5,
    nv: &Vec5,
) -> Result<(Vector4<f64>, Vector4<f64>)> {
    if m.slopes.p_s.abs() <= f64::EPSILON * m.slopes.p_r() {
        return Err(Error::Degenerate("(dp/ds) vanishes at the background; omega and delta are undefined".into()));
    }
    let b = m.characteristic_matrix(ep.grad_phi);
    let c: SMatrix<f64, 5, 4> = b.fixed_rows::<4>(0).transpose();
    let svd = c.svd(true, true);
    let smax = svd.singular_values.max();
    if svd.singular_values.min() <= 1e-12 * smax {
        return Err(Error::Degenerate("characteristic matrix rows are rank deficient".into()));
    }
    let solve = |rhs: &Vec5| -> Result<Vector4<f64>> {
        let x = svd.solve(rhs, 0.0).map_err(|e| Error::Degenerate(e.to_string()))?;
        let resid = (c * x - rhs).amax();
        if resid > 1e-9 * (1.0 + rhs.amax()) {
            return Err(Error::Degenerate(format!(
                "vector is not in the row space of the characteristic matrix (residual {resid:.3e})"
            )));
        }
        Ok(x)
    };
    Ok((solve(mv)?, solve(nv)?))
}

/// Closed forms `ω_α = δ_α = n_α ρa_s/p_s` (α ≤ 3) and
/// `ω₄ = δ₄ = (aρa_s/p_s + 1)/ρ`, valid for the truncated vectors.
pub fn omega_delta_closed_form(m: &SystemMatrices, ep: &EigenPair) -> Vector4<f64> {
    let sl = &m.slopes;
    let ratio = sl.a * sl.rho * sl.a_s / sl.p_s;
    Vector4::new(ep.n[0] * ratio / sl.a, ep.n[1] * ratio / sl.a, ep.n[2] * ratio / sl.a, (ratio + 1.0) / sl.rho)
}

/// `(ω + 2δ)·(φ_{,k}[r·∇_U A₁^k] − Γ I₁)·r`.
pub fn correction_term(
    d: &EntryDerivatives,
    ep: &EigenPair,
    gamma: f64,
    omega: &Vector4<f64>,
    delta: &Vector4<f64>,
) -> f64 {
    let mut v = Vec5::zeros();
    for k in 0..3 {
        v += d.directional(k, &ep.r) * ep.r * ep.grad_phi[k];
    }
    v -= ep.r * gamma;
    (omega + delta * 2.0).dot(&v.fixed_rows::<4>(0))
}

/// Background gradients entering the attenuation coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BackgroundGradients {
    /// `grad_n[k][i] = ∂n_i/∂x_k`.
    pub grad_n: [[f64; 3]; 3],
    pub grad_rho: [f64; 3],
    pub grad_s: [f64; 3],
}

/// `χ = ½{l A₀^k ∂_k r + l[r·∇_U A^k]∂_k U₀ + l[r·∇_U F]}` with a
/// state-independent source, so the last term vanishes.
pub fn chi_numeric(
    m: &SystemMatrices,
    d: &EntryDerivatives,
    sl: &EosSlopes,
    ep: &EigenPair,
    bg: &BackgroundGradients,
) -> f64 {
    let (rho, a) = (sl.rho, sl.a);
    // ∂(ρ/a)/∂ρ and ∂(ρ/a)/∂s along the background
    let d4_drho = 1.0 / a - rho * sl.a_r / (a * a);
    let d4_ds = -rho * sl.a_s / (a * a);
    let mut total = 0.0;
    for k in 0..3 {
        let dr = Vec5::new(
            bg.grad_n[k][0],
            bg.grad_n[k][1],
            bg.grad_n[k][2],
            d4_drho * bg.grad_rho[k] + d4_ds * bg.grad_s[k],
            0.0,
        );
        let du0 = Vec5::new(0.0, 0.0, 0.0, bg.grad_rho[k], bg.grad_s[k]);
        total += ep.l.dot(&(m.a[k] * dr));
        total += ep.l.dot(&(d.directional(k, &ep.r) * du0));
    }
    0.5 * total
}

/// All eigen-algebra coefficients at one background, under one truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericCoefficients {
    pub truncation: Truncation,
    /// Quadratic coefficient (always untruncated).
    pub gamma: f64,
    pub e: f64,
    pub m: Vec5,
    pub n: Vec5,
    pub omega: Vector4<f64>,
    pub delta: Vector4<f64>,
    pub correction: f64,
    pub lambda: f64,
    /// `Ω` implied by the slopes used, `(ρ²/a)∂Σ/∂ρ`.
    pub omega_param: f64,
}

/// Runs the full eigen-algebra chain.
pub fn numeric_coefficients(
    g: &GasParams,
    state: &ThermoState,
    grad_phi: [f64; 3],
    truncation: Truncation,
    source: DerivativeSource,
) -> Result<NumericCoefficients> {
    let m = build_matrices(g, state)?;
    let ep = acoustic_eigenpair(&m, grad_phi)?;
    let exact = match source {
        DerivativeSource::Analytic => EntryDerivatives::analytic(&m.slopes),
        DerivativeSource::FiniteDifference(h) => EntryDerivatives::finite_difference(g, &m.u0, h)?,
    };
    let gamma = gamma_numeric(&exact, &ep);
    let (d, sl, gamma_used) = match truncation {
        Truncation::Exact => (exact, m.slopes, gamma),
        Truncation::NeglectGamma => {
            if let DerivativeSource::FiniteDifference(_) = source {
                return Err(Error::Config("Gamma truncation needs analytic entry derivatives".into()));
            }
            let t = m.slopes.gamma_truncated();
            (EntryDerivatives::analytic(&t), t, 0.0)
        }
    };
    let e = e_numeric(&d, &ep);
    let (mv, nv) = mn_numeric(&d, &ep, gamma_used);
    let (omega, delta) = omega_delta_coeffs(&m, &ep, &mv, &nv)?;
    let correction = correction_term(&d, &ep, gamma_used, &omega, &delta);
    Ok(NumericCoefficients {
        truncation,
        gamma,
        e,
        m: mv,
        n: nv,
        omega,
        delta,
        correction,
        lambda: e - correction,
        omega_param: sl.omega_definition(),
    })
}

/// `Λ = E − (ω + 2δ)(…)r`.
pub fn lambda_numeric(g: &GasParams, state: &ThermoState, grad_phi: [f64; 3], truncation: Truncation) -> Result<f64> {
    numeric_coefficients(g, state, grad_phi, truncation, DerivativeSource::Analytic).map(|c| c.lambda)
}

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}
