//! Adaptive Dormand–Prince 5(4) integrator for small fixed-size systems.
//!
//! Every ODE in this crate (rays, amplitudes, characteristic labels) is a
//! smooth non-stiff system with at most a handful of components, so the
//! state is a plain `[f64; N]` and the integrator is allocation free.

use crate::error::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// difference between the 5th and embedded 4th order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Step-size controlled Dormand–Prince integrator.
#[derive(Debug, Clone, Copy)]
pub struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    /// Smallest admissible step relative to the integration span.
    pub min_step_fraction: f64,
}

/// Counters from one integration.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
}

impl Default for Dopri5 {
    fn default() -> Self {
        Self::new(1e-10)
    }
}

#[inline]
fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for (c, k) in terms {
        if *c != 0.0 {
            for i in 0..N {
                out[i] += h * c * k[i];
            }
        }
    }
    out
}

impl Dopri5 {
    /// Same relative and absolute tolerance.
    pub fn new(tol: f64) -> Self {
        Self { rtol: tol, atol: tol, max_steps: 1_000_000, min_step_fraction: 1e-14 }
    }

    pub fn with_tolerances(rtol: f64, atol: f64) -> Self {
        Self { rtol, atol, ..Self::new(rtol) }
    }

    /// Integrate `y' = f(t, y)` from `t0` to `t1` and return `y(t1)`.
    pub fn integrate<const N: usize, F>(&self, f: F, t0: f64, y0: [f64; N], t1: f64) -> Result<[f64; N]>
    where
        F: FnMut(f64, &[f64; N]) -> [f64; N],
    {
        self.integrate_observed(f, t0, y0, t1, |_, _| {}).map(|(y, _)| y)
    }

    /// Like [`integrate`](Self::integrate) but calls `observe(t, y)` after
    /// every accepted step (and once at `t0`).
    pub fn integrate_observed<const N: usize, F, O>(
        &self,
        mut f: F,
        t0: f64,
        y0: [f64; N],
        t1: f64,
        mut observe: O,
    ) -> Result<([f64; N], Stats)>
    where
        F: FnMut(f64, &[f64; N]) -> [f64; N],
        O: FnMut(f64, &[f64; N]),
    {
        if !(self.rtol > 0.0 && self.atol > 0.0) {
            return Err(Error::Integrator(format!(
                "tolerances must be positive (rtol={}, atol={})",
                self.rtol, self.atol
            )));
        }
        if !t0.is_finite() || !t1.is_finite() {
            return Err(Error::Integrator("non-finite time bounds".into()));
        }
        let mut stats = Stats::default();
        observe(t0, &y0);
        let span = t1 - t0;
        if span == 0.0 {
            return Ok((y0, stats));
        }
        let dir = span.signum();
        let h_min = span.abs() * self.min_step_fraction;

        let mut t = t0;
        let mut y = y0;
        let mut k1 = f(t, &y);
        stats.evaluations += 1;
        let mut h = dir * self.initial_step(&mut f, t, &y, &k1, span.abs(), &mut stats);

        loop {
            if stats.accepted + stats.rejected >= self.max_steps {
                return Err(Error::Integrator(format!("step budget of {} exhausted at t = {t:e}", self.max_steps)));
            }
            let last = (t + h - t1) * dir >= 0.0;
            if last {
                h = t1 - t;
            }

            let y2 = axpy(&y, h, &[(A21, &k1)]);
            let k2 = f(t + C2 * h, &y2);
            let y3 = axpy(&y, h, &[(A31, &k1), (A32, &k2)]);
            let k3 = f(t + C3 * h, &y3);
            let y4 = axpy(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]);
            let k4 = f(t + C4 * h, &y4);
            let y5 = axpy(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]);
            let k5 = f(t + C5 * h, &y5);
            let y6 = axpy(&y, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]);
            let k6 = f(t + h, &y6);
            let y_new = axpy(&y, h, &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)]);
            let k7 = f(t + h, &y_new);
            stats.evaluations += 6;

            let mut err_sq = 0.0;
            let mut finite = true;
            for i in 0..N {
                let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                let scale = self.atol + self.rtol * y[i].abs().max(y_new[i].abs());
                let r = e / scale;
                err_sq += r * r;
                finite &= y_new[i].is_finite();
            }
            let err = if N == 0 { 0.0 } else { (err_sq / N as f64).sqrt() };
            if !finite || !err.is_finite() {
                // shrink hard and retry; persistent blow-up ends in the h_min check
                stats.rejected += 1;
                h *= 0.1;
                if h.abs() < h_min {
                    return Err(Error::Integrator(format!("non-finite state near t = {t:e}")));
                }
                continue;
            }

            if err <= 1.0 {
                stats.accepted += 1;
                t = if last { t1 } else { t + h };
                y = y_new;
                k1 = k7;
                observe(t, &y);
                if last {
                    return Ok((y, stats));
                }
                let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                h *= fac;
            } else {
                stats.rejected += 1;
                let fac = (0.9 * err.powf(-0.2)).clamp(0.1, 1.0);
                h *= fac;
                if h.abs() < h_min {
                    return Err(Error::Integrator(format!(
                        "step size underflow at t = {t:e} (local error estimate {err:.3e} above tolerance)"
                    )));
                }
            }
        }
    }

    // Hairer–Nørsett–Wanner starting step heuristic.
    fn initial_step<const N: usize, F>(
        &self,
        f: &mut F,
        t: f64,
        y: &[f64; N],
        k1: &[f64; N],
        span: f64,
        stats: &mut Stats,
    ) -> f64
    where
        F: FnMut(f64, &[f64; N]) -> [f64; N],
    {
        let scale = |i: usize| self.atol + self.rtol * y[i].abs();
        let norm = |v: &[f64; N]| {
            if N == 0 {
                return 0.0;
            }
            ((0..N).map(|i| (v[i] / scale(i)).powi(2)).sum::<f64>() / N as f64).sqrt()
        };
        let d0 = norm(y);
        let d1 = norm(k1);
        let mut h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
        h0 = h0.min(span);
        let y1 = axpy(y, h0, &[(1.0, k1)]);
        let k2 = f(t + h0, &y1);
        stats.evaluations += 1;
        let mut diff = [0.0; N];
        for i in 0..N {
            diff[i] = k2[i] - k1[i];
        }
        let d2 = norm(&diff) / h0;
        let h1 = if d1.max(d2) <= 1e-15 { (h0 * 1e-3).max(1e-6) } else { (0.01 / d1.max(d2)).powf(0.2) };
        (100.0 * h0).min(h1).min(span)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay() {
        let y = Dopri5::new(1e-12).integrate(|_, y: &[f64; 1]| [-y[0]], 0.0, [1.0], 3.0).unwrap();
        assert!((y[0] - (-3.0f64).exp()).abs() < 1e-11);
    }

    #[test]
    fn harmonic_oscillator_backwards() {
        let y = Dopri5::new(1e-12)
            .integrate(|_, y: &[f64; 2]| [y[1], -y[0]], 2.0, [2.0f64.sin(), 2.0f64.cos()], 0.0)
            .unwrap();
        assert!(y[0].abs() < 1e-10);
        assert!((y[1] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn zero_span_is_identity() {
        let (y, stats) =
            Dopri5::default().integrate_observed(|_, y: &[f64; 1]| [y[0]], 1.0, [4.0], 1.0, |_, _| {}).unwrap();
        assert_eq!(y, [4.0]);
        assert_eq!(stats.accepted, 0);
    }

    #[test]
    fn finite_time_blowup_is_an_error() {
        // y' = y^2, y(0) = 1 blows up at t = 1
        let r = Dopri5::new(1e-10).integrate(|_, y: &[f64; 1]| [y[0] * y[0]], 0.0, [1.0], 2.0);
        assert!(matches!(r, Err(Error::Integrator(_))));
    }

    #[test]
    fn observer_sees_monotone_times() {
        let mut times = Vec::new();
        Dopri5::new(1e-8)
            .integrate_observed(|t, _: &[f64; 1]| [t.cos()], 0.0, [0.0], 5.0, |t, _| times.push(t))
            .unwrap();
        assert_eq!(times.first(), Some(&0.0));
        assert_eq!(times.last(), Some(&5.0));
        assert!(times.windows(2).all(|w| w[1] > w[0]));
    }
}
