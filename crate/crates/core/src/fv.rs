//! Conservative finite-volume solver for
//!
//! ```text
//! σ_t + F(σ, t)_ξ = −g(t)σ − c,   F = Aσ²/2 − Bσ³/3
//! ```
//!
//! Rusanov fluxes with a per-interface speed bound that accounts for the
//! inflection of the cubic flux, optional minmod reconstruction with a two
//! stage SSP Runge–Kutta step, and Strang splitting of the source.

use crate::error::{Error, Result};
use crate::ode::Dopri5;
use crate::transport::{CoefficientProvider, InitialProfile, TransportCoeffs};

/// Fewest cells a field may have.
pub const MIN_CELLS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Boundary {
    /// Zero-gradient extrapolation.
    #[default]
    Outflow,
    Periodic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Reconstruction {
    /// Piecewise constant, forward Euler in time.
    FirstOrder,
    /// Minmod-limited linear, two-stage SSP Runge–Kutta in time.
    #[default]
    Minmod,
}

impl std::fmt::Display for Boundary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Boundary::Outflow => "outflow",
            Boundary::Periodic => "periodic",
        })
    }
}

impl std::fmt::Display for Reconstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Reconstruction::FirstOrder => "first-order",
            Reconstruction::Minmod => "minmod",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Courant number in `(0, 1]`.
    pub cfl: f64,
    pub boundary: Boundary,
    pub reconstruction: Reconstruction,
    /// Apply `−gσ − c`; when false only the flux is advanced.
    pub source: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { cfl: 0.45, boundary: Boundary::Outflow, reconstruction: Reconstruction::Minmod, source: true }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(Error::Config(format!("cfl must lie in (0, 1], got {}", self.cfl)));
        }
        Ok(())
    }
}

/// Cell averages of `σ` on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeField {
    pub xi_min: f64,
    pub xi_max: f64,
    pub sigma: Vec<f64>,
    pub t: f64,
}

impl AmplitudeField {
    pub fn new(xi_min: f64, xi_max: f64, sigma: Vec<f64>, t: f64) -> Result<Self> {
        if !(xi_max > xi_min) || !xi_min.is_finite() || !xi_max.is_finite() {
            return Err(Error::Config(format!("bad window ({xi_min}, {xi_max})")));
        }
        if sigma.len() < MIN_CELLS {
            return Err(Error::Config(format!("need at least {MIN_CELLS} cells, got {}", sigma.len())));
        }
        let f = Self { xi_min, xi_max, sigma, t };
        f.check_finite()?;
        Ok(f)
    }

    /// Exact cell averages of `profile`.
    pub fn from_profile(profile: &InitialProfile, xi_min: f64, xi_max: f64, n: usize, t: f64) -> Result<Self> {
        let h = (xi_max - xi_min) / n as f64;
        let sigma = (0..n)
            .map(|i| {
                let a = xi_min + i as f64 * h;
                profile.cell_average(a, a + h)
            })
            .collect();
        Self::new(xi_min, xi_max, sigma, t)
    }

    pub fn n_cells(&self) -> usize {
        self.sigma.len()
    }

    pub fn dx(&self) -> f64 {
        (self.xi_max - self.xi_min) / self.n_cells() as f64
    }

    pub fn centers(&self) -> Vec<f64> {
        let h = self.dx();
        (0..self.n_cells()).map(|i| self.xi_min + (i as f64 + 0.5) * h).collect()
    }

    /// The `n + 1` cell boundaries.
    pub fn edges(&self) -> Vec<f64> {
        let h = self.dx();
        (0..=self.n_cells()).map(|i| self.xi_min + i as f64 * h).collect()
    }

    /// `Σ σ_i Δξ`.
    pub fn mass(&self) -> f64 {
        self.sigma.iter().sum::<f64>() * self.dx()
    }

    pub fn total_variation(&self) -> f64 {
        self.sigma.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
    }

    /// Largest `|Δσ/Δξ|` between neighbouring cells.
    pub fn max_gradient(&self) -> f64 {
        let h = self.dx();
        self.sigma.windows(2).map(|w| (w[1] - w[0]).abs() / h).fold(0.0, f64::max)
    }

    /// `Σ |σ_i − other_i| Δξ`.
    pub fn l1_distance(&self, other: &[f64]) -> f64 {
        self.sigma.iter().zip(other).map(|(a, b)| (a - b).abs()).sum::<f64>() * self.dx()
    }

    fn check_finite(&self) -> Result<()> {
        match self.sigma.iter().position(|v| !v.is_finite()) {
            Some(i) => Err(Error::NonFinite(format!("sigma in cell {i} at t = {}", self.t))),
            None => Ok(()),
        }
    }
}

/// Largest `|F'(σ)|` for `σ` between `lo` and `hi`.
#[inline]
fn speed_bound(c: &TransportCoeffs, lo: f64, hi: f64) -> f64 {
    let mut s = c.speed(lo).abs().max(c.speed(hi).abs());
    if c.b != 0.0 {
        let star = c.a / (2.0 * c.b);
        if star > lo.min(hi) && star < lo.max(hi) {
            s = s.max(c.speed(star).abs());
        }
    }
    s
}

/// Largest characteristic speed over the field at time `t`.
pub fn max_speed(field: &AmplitudeField, c: &TransportCoeffs) -> f64 {
    let lo = field.sigma.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = field.sigma.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    speed_bound(c, lo, hi)
}

/// Largest step allowed by the configured Courant number; infinite when
/// nothing moves.
pub fn stable_dt<P: CoefficientProvider + ?Sized>(field: &AmplitudeField, coeffs: &P, cfg: &SolverConfig) -> f64 {
    let s = max_speed(field, &coeffs.at(field.t));
    if s > 0.0 {
        cfg.cfl * field.dx() / s
    } else {
        f64::INFINITY
    }
}

#[inline]
fn minmod(a: f64, b: f64) -> f64 {
    if a * b <= 0.0 {
        0.0
    } else if a.abs() < b.abs() {
        a
    } else {
        b
    }
}

#[inline]
fn rusanov(c: &TransportCoeffs, ul: f64, ur: f64) -> f64 {
    0.5 * (c.flux(ul) + c.flux(ur)) - 0.5 * speed_bound(c, ul, ur) * (ur - ul)
}

/// `−(F_{i+1/2} − F_{i−1/2})/Δξ` for every cell.
fn flux_divergence(sigma: &[f64], c: &TransportCoeffs, dx: f64, cfg: &SolverConfig) -> Vec<f64> {
    let n = sigma.len();
    let at = |i: isize| -> f64 {
        match cfg.boundary {
            Boundary::Outflow => sigma[i.clamp(0, n as isize - 1) as usize],
            Boundary::Periodic => sigma[i.rem_euclid(n as isize) as usize],
        }
    };
    let slope = |i: isize| -> f64 {
        match cfg.reconstruction {
            Reconstruction::FirstOrder => 0.0,
            Reconstruction::Minmod => minmod(at(i) - at(i - 1), at(i + 1) - at(i)),
        }
    };
    // interface k sits between cells k−1 and k
    let fluxes: Vec<f64> = (0..=n as isize)
        .map(|k| {
            let ul = at(k - 1) + 0.5 * slope(k - 1);
            let ur = at(k) - 0.5 * slope(k);
            rusanov(c, ul, ur)
        })
        .collect();
    fluxes.windows(2).map(|w| -(w[1] - w[0]) / dx).collect()
}

/// Coefficients `(P, Q)` of the exact affine source map `σ ↦ Pσ + Q`
/// over `[t0, t1]`.
fn source_map<P: CoefficientProvider + ?Sized>(coeffs: &P, t0: f64, t1: f64) -> Result<(f64, f64)> {
    let y = Dopri5::new(1e-13).integrate(
        |t, y: &[f64; 2]| {
            let c = coeffs.at(t);
            [-c.g * y[0], -c.g * y[1] - c.c]
        },
        t0,
        [1.0, 0.0],
        t1,
    )?;
    Ok((y[0], y[1]))
}

fn apply_source<P: CoefficientProvider + ?Sized>(sigma: &mut [f64], coeffs: &P, t0: f64, t1: f64) -> Result<()> {
    let (p, q) = source_map(coeffs, t0, t1)?;
    for s in sigma.iter_mut() {
        *s = p * *s + q;
    }
    Ok(())
}

fn transport<P: CoefficientProvider + ?Sized>(
    sigma: &[f64],
    coeffs: &P,
    t: f64,
    dt: f64,
    dx: f64,
    cfg: &SolverConfig,
) -> Vec<f64> {
    let c0 = coeffs.at(t);
    let l0 = flux_divergence(sigma, &c0, dx, cfg);
    let s1: Vec<f64> = sigma.iter().zip(&l0).map(|(s, l)| s + dt * l).collect();
    match cfg.reconstruction {
        Reconstruction::FirstOrder => s1,
        Reconstruction::Minmod => {
            let c1 = coeffs.at(t + dt);
            let l1 = flux_divergence(&s1, &c1, dx, cfg);
            sigma.iter().zip(s1.iter().zip(&l1)).map(|(s, (s1, l))| 0.5 * s + 0.5 * (s1 + dt * l)).collect()
        }
    }
}

/// One step of size `dt`: half source, full transport, half source.
pub fn step<P: CoefficientProvider + ?Sized>(
    field: &AmplitudeField,
    coeffs: &P,
    cfg: &SolverConfig,
    dt: f64,
) -> Result<AmplitudeField> {
    cfg.validate()?;
    if !(dt > 0.0) {
        return Err(Error::Config(format!("time step must be positive, got {dt}")));
    }
    let dx = field.dx();
    let t = field.t;
    let mut sigma = field.sigma.clone();
    if cfg.source {
        apply_source(&mut sigma, coeffs, t, t + 0.5 * dt)?;
    }
    let s = max_speed(&AmplitudeField { sigma: sigma.clone(), ..field.clone() }, &coeffs.at(t));
    let limit = dx / s;
    if dt > limit * (1.0 + 1e-12) {
        return Err(Error::Cfl { dt, limit });
    }
    let mut sigma = transport(&sigma, coeffs, t, dt, dx, cfg);
    if cfg.source {
        apply_source(&mut sigma, coeffs, t + 0.5 * dt, t + dt)?;
    }
    let out = AmplitudeField { sigma, t: t + dt, ..field.clone() };
    out.check_finite()?;
    Ok(out)
}

/// Largest step up to `max_dt` that respects the Courant number both
/// before and after the first half of the source update.
fn step_size<P: CoefficientProvider + ?Sized>(
    field: &AmplitudeField,
    coeffs: &P,
    cfg: &SolverConfig,
    max_dt: f64,
) -> Result<f64> {
    let (lo, hi) = field.sigma.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
    let mut dt = stable_dt(field, coeffs, cfg).min(max_dt);
    for _ in 0..60 {
        let (p, q) = if cfg.source { source_map(coeffs, field.t, field.t + 0.5 * dt)? } else { (1.0, 0.0) };
        let (a, b) = (p * lo + q, p * hi + q);
        let (l, h) = (lo.min(a.min(b)), hi.max(a.max(b)));
        let s = speed_bound(&coeffs.at(field.t), l, h).max(speed_bound(&coeffs.at(field.t + dt), l, h));
        let limit = if s > 0.0 { cfg.cfl * field.dx() / s } else { f64::INFINITY };
        if dt <= limit {
            return Ok(dt);
        }
        dt = limit;
    }
    Ok(dt)
}

/// A recorded state with its total variation.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub total_variation: f64,
    pub field: AmplitudeField,
}

impl Snapshot {
    /// `(t, ξ_center, σ)` triples.
    pub fn rows(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.field.centers().into_iter().zip(self.field.sigma.iter().copied()).map(move |(x, s)| (self.t, x, s))
    }
}

/// Advances `initial` through the given (non-decreasing, `≥ initial.t`)
/// output times and records a snapshot at each.
pub fn solve<P: CoefficientProvider + ?Sized>(
    initial: &AmplitudeField,
    coeffs: &P,
    output_times: &[f64],
    cfg: &SolverConfig,
) -> Result<Vec<Snapshot>> {
    cfg.validate()?;
    if output_times.windows(2).any(|w| w[1] < w[0]) || output_times.first().is_some_and(|&t| t < initial.t) {
        return Err(Error::Config("output times must be non-decreasing and not before the initial time".into()));
    }
    let mut field = initial.clone();
    let mut out = Vec::with_capacity(output_times.len());
    for &target in output_times {
        while field.t < target {
            let remaining = target - field.t;
            let mut dt = step_size(&field, coeffs, cfg, remaining)?;
            // absorb a sliver so the last step does not land just short
            if remaining - dt < 1e-9 * remaining.max(1.0) {
                dt = remaining;
            }
            field = step(&field, coeffs, cfg, dt)?;
            if remaining == dt {
                field.t = target;
            }
        }
        out.push(Snapshot { t: field.t, total_variation: field.total_variation(), field: field.clone() });
    }
    Ok(out)
}
