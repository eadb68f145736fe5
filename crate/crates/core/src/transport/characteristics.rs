use rayon::prelude::*;

use super::{CoefficientProvider, InitialProfile};
use crate::error::{Error, Result};
use crate::ode::Dopri5;

/// Characteristic labels with their position `ξ`, amplitude `σ`, and the
/// variational pair `(ξ_η, σ_η)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicBundle {
    pub eta: Vec<f64>,
    pub xi: Vec<f64>,
    pub sigma: Vec<f64>,
    pub jac: Vec<f64>,
    pub sigma_eta: Vec<f64>,
    pub t: f64,
    pub t_start: f64,
    /// Number of labels outside the grid at each end.
    pub ghosts: usize,
}

impl CharacteristicBundle {
    /// `n` uniform labels on `[lo, hi]` plus one ghost label beyond each end.
    pub fn new(profile: &InitialProfile, lo: f64, hi: f64, n: usize, t_start: f64) -> Result<Self> {
        if n < 2 || !(hi > lo) {
            return Err(Error::Config(format!("label grid needs n >= 2 and hi > lo (n = {n}, [{lo}, {hi}])")));
        }
        let h = (hi - lo) / (n - 1) as f64;
        let mut eta = Vec::with_capacity(n + 2);
        eta.push(lo - h);
        eta.extend((0..n).map(|i| lo + i as f64 * h));
        eta.push(hi + h);
        let (sigma, sigma_eta): (Vec<f64>, Vec<f64>) = eta.iter().map(|&e| profile.inside_limits(e)).unzip();
        Ok(Self { xi: eta.clone(), jac: vec![1.0; eta.len()], eta, sigma, sigma_eta, t: t_start, t_start, ghosts: 1 })
    }

    /// Labels spanning the profile's support.
    pub fn on_support(profile: &InitialProfile, n: usize, t_start: f64) -> Result<Self> {
        let (lo, hi) = profile
            .support()
            .filter(|(a, b)| b > a)
            .ok_or_else(|| Error::Config("profile has no finite support to place labels on".into()))?;
        Self::new(profile, lo, hi, n, t_start)
    }

    /// Index range of the non-ghost labels.
    pub fn interior(&self) -> std::ops::Range<usize> {
        self.ghosts..self.eta.len() - self.ghosts
    }

    /// `(index, value)` of the smallest Jacobian over the interior labels.
    pub fn min_jacobian(&self) -> (usize, f64) {
        self.interior()
            .map(|i| (i, self.jac[i]))
            .fold((usize::MAX, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a })
    }
}

/// Evolves every label of `bundle` to `t_end` by integrating
/// `ξ' = Aσ − Bσ²`, `σ' = −gσ − c`, `ξ_η' = (A − 2Bσ)σ_η`, `σ_η' = −gσ_η`.
/// Labels are independent and processed in parallel.
pub fn advance_characteristics<P: CoefficientProvider + ?Sized>(
    bundle: &CharacteristicBundle,
    coeffs: &P,
    t_end: f64,
    ode: &Dopri5,
) -> Result<CharacteristicBundle> {
    let t0 = bundle.t;
    let states: Vec<[f64; 4]> = (0..bundle.eta.len())
        .into_par_iter()
        .map(|i| {
            let y0 = [bundle.xi[i], bundle.sigma[i], bundle.jac[i], bundle.sigma_eta[i]];
            ode.integrate(
                |t, y: &[f64; 4]| {
                    let c = coeffs.at(t);
                    [c.speed(y[1]), -c.g * y[1] - c.c, (c.a - 2.0 * c.b * y[1]) * y[3], -c.g * y[3]]
                },
                t0,
                y0,
                t_end,
            )
        })
        .collect::<Result<_>>()?;
    let mut out = bundle.clone();
    for (i, y) in states.into_iter().enumerate() {
        out.xi[i] = y[0];
        out.sigma[i] = y[1];
        out.jac[i] = y[2];
        out.sigma_eta[i] = y[3];
    }
    out.t = t_end;
    Ok(out)
}

/// Time-dependent moments that determine the characteristic map for every
/// initial profile at once:
/// `σ = Pσ₀ + Q`, `ξ = η + I₀ + I₁σ₀ + I₂σ₀²`, `ξ_η = 1 + σ₀'(I₁ + 2I₂σ₀)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapMoments {
    pub t: f64,
    pub p: f64,
    pub q: f64,
    pub i0: f64,
    pub i1: f64,
    pub i2: f64,
}

impl MapMoments {
    fn from_state(t: f64, y: &[f64; 5]) -> Self {
        Self { t, p: y[0], q: y[1], i0: y[2], i1: y[3], i2: y[4] }
    }

    fn state(&self) -> [f64; 5] {
        [self.p, self.q, self.i0, self.i1, self.i2]
    }

    pub fn sigma(&self, s0: f64) -> f64 {
        self.p * s0 + self.q
    }

    pub fn xi(&self, eta: f64, s0: f64) -> f64 {
        eta + self.i0 + s0 * (self.i1 + self.i2 * s0)
    }

    pub fn jac(&self, s0: f64, ds0: f64) -> f64 {
        1.0 + ds0 * (self.i1 + 2.0 * self.i2 * s0)
    }

    /// Label `η` whose characteristic sits at `xi`; requires a monotone map.
    pub fn label_at(&self, profile: &InitialProfile, xi: f64) -> f64 {
        let f = |e: f64| self.xi(e, profile.value(e)) - xi;
        let mut lo = xi - self.i0 - 1.0;
        let mut hi = xi - self.i0 + 1.0;
        while f(lo) > 0.0 {
            lo -= 2.0 * (hi - lo);
        }
        while f(hi) < 0.0 {
            hi += 2.0 * (hi - lo);
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            if f(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Exact cell means of `σ(·, t)` over the cells delimited by `edges`,
    /// by changing variables to labels and four-point Gauss quadrature
    /// between kinks of the data.
    pub fn cell_averages(&self, profile: &InitialProfile, edges: &[f64]) -> Vec<f64> {
        const NODES: [f64; 4] =
            [-0.861_136_311_594_052_6, -0.339_981_043_584_856_3, 0.339_981_043_584_856_3, 0.861_136_311_594_052_6];
        const WEIGHTS: [f64; 4] =
            [0.347_854_845_137_453_9, 0.652_145_154_862_546_1, 0.652_145_154_862_546_1, 0.347_854_845_137_453_9];
        let labels: Vec<f64> = edges.iter().map(|&x| self.label_at(profile, x)).collect();
        let kinks = profile.kinks();
        let integrand = |e: f64| {
            let s0 = profile.value(e);
            let ds0 = profile.derivative(e);
            self.sigma(s0) * self.jac(s0, ds0)
        };
        labels
            .windows(2)
            .zip(edges.windows(2))
            .map(|(l, x)| {
                let mut pts = vec![l[0]];
                pts.extend(kinks.iter().copied().filter(|&k| k > l[0] && k < l[1]));
                pts.push(l[1]);
                let total: f64 = pts
                    .windows(2)
                    .map(|w| {
                        let (c, r) = (0.5 * (w[0] + w[1]), 0.5 * (w[1] - w[0]));
                        r * NODES.iter().zip(WEIGHTS).map(|(n, wt)| wt * integrand(c + r * n)).sum::<f64>()
                    })
                    .sum();
                total / (x[1] - x[0])
            })
            .collect()
    }
}

/// Integrator for the moments `(P, Q, I₀, I₁, I₂)` of the characteristic map.
pub struct CharacteristicMap<'a, P: CoefficientProvider + ?Sized> {
    pub coeffs: &'a P,
    pub t_start: f64,
    pub ode: Dopri5,
}

impl<'a, P: CoefficientProvider + ?Sized> CharacteristicMap<'a, P> {
    pub fn new(coeffs: &'a P, t_start: f64, ode: Dopri5) -> Self {
        Self { coeffs, t_start, ode }
    }

    pub fn initial(&self) -> MapMoments {
        MapMoments::from_state(self.t_start, &[1.0, 0.0, 0.0, 0.0, 0.0])
    }

    /// Moments at `t`, integrated from `t_start`.
    pub fn moments(&self, t: f64) -> Result<MapMoments> {
        self.advance(&self.initial(), t)
    }

    /// Continues from `from` to `t`.
    pub fn advance(&self, from: &MapMoments, t: f64) -> Result<MapMoments> {
        let c = self.coeffs;
        let y = self.ode.integrate(
            |tt, y: &[f64; 5]| {
                let k = c.at(tt);
                let (p, q) = (y[0], y[1]);
                [-k.g * p, -k.g * q - k.c, k.speed(q), k.a * p - 2.0 * k.b * p * q, -k.b * p * p]
            },
            from.t,
            from.state(),
            t,
        )?;
        Ok(MapMoments::from_state(t, &y))
    }
}
