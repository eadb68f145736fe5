use super::{CharacteristicMap, CoefficientProvider, InitialProfile, MapMoments};
use crate::error::{Error, Result};
use crate::ode::Dopri5;

/// Controls for [`breaking_time`].
#[derive(Debug, Clone, Copy)]
pub struct BreakingOptions {
    /// Labels on the support.
    pub n_eta: usize,
    /// Spacing of the checkpoints at which the sign of `min ξ_η` is sampled.
    pub checkpoint_dt: f64,
    /// Width of the final time bracket.
    pub t_tol: f64,
    pub ode: Dopri5,
}

impl Default for BreakingOptions {
    fn default() -> Self {
        Self { n_eta: 4097, checkpoint_dt: 0.02, t_tol: 1e-6, ode: Dopri5::new(1e-10) }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BreakingReport {
    /// First time at which `min_η ξ_η` reaches zero, if before `t_max`.
    pub t_b: Option<f64>,
    /// Label at which it does.
    pub eta_b: Option<f64>,
    /// `min_η ξ_η` at the end of the search (`t_b` or `t_max`).
    pub min_jac: f64,
    /// Set when the minimizing label is at an end of the label grid that is
    /// not a kink of the data, so the true minimum may lie outside the grid.
    pub warning: Option<String>,
}

/// Minimum of `ξ_η` over the labels, refined by golden-section search in
/// the cells next to the grid minimizer.
pub(crate) fn min_jacobian(m: &MapMoments, profile: &InitialProfile, labels: &[f64]) -> (f64, f64, usize) {
    let jac = |e: f64| {
        let (s0, ds0) = profile.inside_limits(e);
        m.jac(s0, ds0)
    };
    let (mut best_i, mut best) = (0, f64::INFINITY);
    for (i, &e) in labels.iter().enumerate() {
        let j = jac(e);
        if j < best {
            best = j;
            best_i = i;
        }
    }
    let lo = labels[best_i.saturating_sub(1)];
    let hi = labels[(best_i + 1).min(labels.len() - 1)];
    let (e, j) = golden_min(jac, lo, hi, 1e-12);
    if j < best {
        (j, e, best_i)
    } else {
        (best, labels[best_i], best_i)
    }
}

fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const R: f64 = 0.618_033_988_749_894_8;
    let mut c = b - R * (b - a);
    let mut d = a + R * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - R * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + R * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// `t_b = inf{t ≤ t_max : min_η ξ_η(η, t) ≤ 0}` for labels spanning the
/// profile's support, or one period of [`InitialProfile::Sine`].
///
/// The sign of the minimum is sampled at checkpoints; the first bracket
/// with a sign change is bisected to `t_tol`.
pub fn breaking_time<P: CoefficientProvider + ?Sized>(
    coeffs: &P,
    profile: &InitialProfile,
    t_start: f64,
    t_max: f64,
    opts: &BreakingOptions,
) -> Result<BreakingReport> {
    let (lo, hi) = match profile {
        InitialProfile::Sine => (0.0, std::f64::consts::TAU),
        _ => profile.support().filter(|(a, b)| b > a).ok_or_else(|| {
            Error::Config("breaking detection needs a periodic or compactly supported profile".into())
        })?,
    };
    breaking_time_on(coeffs, profile, lo, hi, t_start, t_max, opts)
}

/// As [`breaking_time`] with an explicit label window `[lo, hi]`.
pub fn breaking_time_on<P: CoefficientProvider + ?Sized>(
    coeffs: &P,
    profile: &InitialProfile,
    lo: f64,
    hi: f64,
    t_start: f64,
    t_max: f64,
    opts: &BreakingOptions,
) -> Result<BreakingReport> {
    if !(t_max >= t_start) {
        return Err(Error::Config(format!("t_max must be >= t_start ({t_max} < {t_start})")));
    }
    if opts.n_eta < 3 || !(opts.checkpoint_dt > 0.0) || !(opts.t_tol > 0.0) {
        return Err(Error::Config("breaking options need n_eta >= 3 and positive steps".into()));
    }
    let h = (hi - lo) / (opts.n_eta - 1) as f64;
    let labels: Vec<f64> = (0..opts.n_eta).map(|i| lo + i as f64 * h).collect();
    let map = CharacteristicMap::new(coeffs, t_start, opts.ode);
    let kinks = profile.kinks();
    let warn = |i: usize| -> Option<String> {
        let at_end = i == 0 || i == labels.len() - 1;
        let e = labels[i];
        let on_kink = kinks.iter().any(|k| (k - e).abs() <= 1e-12 * (1.0 + e.abs()));
        (at_end && !on_kink).then(|| format!("minimizing label {e} sits at the end of the label grid; widen the grid"))
    };

    let mut prev = map.initial();
    let (mut jmin, _, mut imin) = min_jacobian(&prev, profile, &labels);
    if jmin <= 0.0 {
        return Ok(BreakingReport {
            t_b: Some(t_start),
            eta_b: Some(labels[imin]),
            min_jac: jmin,
            warning: warn(imin),
        });
    }
    let n_chk = ((t_max - t_start) / opts.checkpoint_dt).ceil().max(1.0) as usize;
    for k in 1..=n_chk {
        let t = (t_start + k as f64 * opts.checkpoint_dt).min(t_max);
        let cur = map.advance(&prev, t)?;
        let (j, _, i) = min_jacobian(&cur, profile, &labels);
        if j <= 0.0 {
            let (mut a, mut b) = (prev, cur);
            while b.t - a.t > opts.t_tol {
                let mid = map.advance(&a, 0.5 * (a.t + b.t))?;
                if min_jacobian(&mid, profile, &labels).0 <= 0.0 {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            let (jb, eb, ib) = min_jacobian(&b, profile, &labels);
            return Ok(BreakingReport { t_b: Some(b.t), eta_b: Some(eb), min_jac: jb, warning: warn(ib) });
        }
        prev = cur;
        jmin = j;
        imin = i;
    }
    Ok(BreakingReport { t_b: None, eta_b: None, min_jac: jmin, warning: warn(imin) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transport::{ConstantCoeffs, TransportCoeffs};

    #[test]
    fn burgers_breaking_time() {
        // σ_t + σσ_ξ = 0 with sin data breaks at t = 1/max(−σ₀') = 1
        let c = ConstantCoeffs(TransportCoeffs { a: 1.0, b: 0.0, g: 0.0, c: 0.0 });
        let r = breaking_time(&c, &InitialProfile::full_sine(), 0.0, 5.0, &BreakingOptions::default()).unwrap();
        assert!((r.t_b.unwrap() - 1.0).abs() < 2e-6);
        assert!((r.eta_b.unwrap() - std::f64::consts::PI).abs() < 1e-9);
        assert!(r.warning.is_none());
    }

    #[test]
    fn expansion_never_breaks_without_cubic_term() {
        let c = ConstantCoeffs(TransportCoeffs { a: 1.0, b: 0.0, g: 0.0, c: 0.0 });
        let r = breaking_time(&c, &InitialProfile::quarter_sine(), 0.0, 20.0, &BreakingOptions::default()).unwrap();
        assert_eq!(r.t_b, None);
        assert!(r.min_jac >= 1.0 - 1e-12);
    }

    #[test]
    fn truncated_grid_warns() {
        let c = ConstantCoeffs(TransportCoeffs { a: 1.0, b: 0.0, g: 0.0, c: 0.0 });
        let r = breaking_time_on(&c, &InitialProfile::full_sine(), 0.0, 3.0, 0.0, 5.0, &BreakingOptions::default())
            .unwrap();
        assert!(r.warning.is_some());
    }
}
