//! The printed closed-form Jacobians for `σ₀ = sin η`, transcribed
//! verbatim (data placed at `t = 0`). They are kept for comparison only;
//! the variational system is the reference.

use crate::atmosphere::AtmosphereParams;
use crate::thermo::GasParams;

/// The general display, with `u = 1 + ωt`.
pub fn jacobian_paper_general(eta: f64, t: f64, g: &GasParams, ap: &AtmosphereParams) -> f64 {
    let (al, be, ga, th, om) = (g.alpha, g.beta, g.gamma, ap.theta, ap.omega);
    let u = 1.0 + om * t;
    let m = th / om;
    let (c, s) = (eta.cos(), eta.sin());
    let pw = |e: f64| u.powf(e) - 1.0;
    let k = (ga / (ga * (th - 4.0) + 4.0 * om) - 2.0 * (2.0 + ga) / (ga * th + 4.0 * om)) * (1.0 + ga) * be * c;

    pw(6.0 - m * (2.0 + ga / 4.0)) / (24.0 * om - th * (8.0 + ga)) * (-24.0 * al * be * c / (ga * th + 4.0 * om))
        + pw(5.0 - m * (2.0 + ga / 4.0)) / (20.0 * om - th * (8.0 + ga))
            * (24.0 * al * be * c / (ga * th + 4.0 * om) + 12.0 * al * be * c * s)
        - pw(4.0 - m * (2.0 + ga / 4.0)) / (16.0 * om - th * (8.0 + ga)) * k
        - pw(3.0 - m * (1.0 + ga / 2.0)) / (6.0 * om - th * (2.0 + ga)) * k
        + pw(2.0 - m * (1.0 + ga / 2.0)) / (4.0 * om - th * (2.0 + ga)) * ((1.0 + ga) * ga * be / 8.0) * c
        + pw(4.0 - ga * th / (4.0 * om)) / (16.0 * om - ga * th)
            * ((4.0 - ga * be) / (ga * th + 4.0 * om))
            * 3.0
            * (ga + 1.0)
            * c
        + pw(3.0 - ga * th / (4.0 * om)) / (12.0 * om - ga * th)
            * (ga * be / ((ga - 4.0) * th + 4.0 * om))
            * 3.0
            * (ga + 1.0)
            * c
        + pw(2.0 - ga * th / (4.0 * om)) / (8.0 * om - ga * th) * (1.0 - ga * be / 4.0) * 2.0 * (ga + 1.0) * c
        - pw(3.0 - ga * th / (2.0 * om)) / (6.0 * om - ga * th)
            * ((4.0 - ga * be) / (ga * th + 4.0 * om) + 2.0 * s * (1.0 - ga * be / 2.0))
            * (3.0 * (1.0 + ga) * c / 2.0)
        + 1.0
}

/// The constant-density (θ = 0) display, a polynomial in `t` ending in
/// `+2`. The unbalanced bracket of the `t²` term is read as
/// `3(1+γ)(1+β)(1/4 − ω sin η) − 3αβ(1/2 − 4ω sin η) + ω(1+γ)/2`.
pub fn jacobian_paper_theta0(eta: f64, t: f64, g: &GasParams, ap: &AtmosphereParams) -> f64 {
    let (al, be, ga, om) = (g.alpha, g.beta, g.gamma, ap.omega);
    let (c, s) = (eta.cos(), eta.sin());
    let ab = al * be;
    let gb = (1.0 + ga) * (1.0 + be);
    t.powi(6) * (-om / 2.0 * ab * c)
        + t.powi(5) * (1.2 * (om * c - 2.0) * om.powi(3) * ab)
        + t.powi(4) * (gb / 8.0 - 1.5 * ab + 2.0 * s * ab * om) * 3.0 * om * om * c
        + t.powi(3) * (gb * (1.0 - om * s) - 4.0 * ab * (1.0 - 3.0 * om * s)) * om * c
        + t * t * (3.0 * gb * (0.25 - om * s) - 3.0 * ab * (0.5 - 4.0 * om * s) + om * (1.0 + ga) / 2.0) * c
        + t * (6.0 * s * (ab - gb / 2.0) + (1.0 + ga)) * c
        + 2.0
}

/// The ω → 0 display.
pub fn jacobian_paper_omega0(eta: f64, t: f64, g: &GasParams, ap: &AtmosphereParams) -> f64 {
    let (al, be, ga, th) = (g.alpha, g.beta, g.gamma, ap.theta);
    let (c, s) = (eta.cos(), eta.sin());
    let gt = ga * th;
    -(-th * (2.0 + ga / 4.0) * t).exp_m1() * 3.0 * c / (th * (8.0 + ga))
        * (4.0 * al * (2.0 / gt * (1.0 - be) + s) - (1.0 + ga) * be * (th / (ga - 4.0) - 2.0 * (2.0 - ga) / gt))
        - (-th * (1.0 + ga / 2.0) * t).exp_m1() * be * c / (2.0 * th * (2.0 + ga))
            * (-3.0 * (2.0 + ga) * (2.0 / gt + s) + ga / 4.0)
        - (-gt * t / 4.0).exp_m1() * (1.0 + ga) * c / gt
            * (3.0 * (4.0 - ga * be) / gt + 3.0 * ga * be / (th * (ga - 4.0)) + 2.0 * (1.0 - ga * be / 4.0))
        + (-gt * t / 2.0).exp_m1() * 3.0 * (1.0 + ga) * c / (2.0 * gt)
            * ((4.0 - ga * be) / gt + 2.0 * s * (1.0 - ga * be / 2.0))
        + 1.0
}
