use std::f64::consts::PI;

/// Initial amplitude `σ₀(η)` at the anchor time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialProfile {
    /// `sin η` on `(lo, hi)`, zero elsewhere.
    SineBump {
        lo: f64,
        hi: f64,
    },
    /// `sin η` everywhere; smooth and `2π`-periodic.
    Sine,
    /// `left` for `η < x0`, `right` otherwise.
    Riemann {
        x0: f64,
        left: f64,
        right: f64,
    },
    Constant(f64),
}

impl InitialProfile {
    /// `sin η` on `(0, π)`: a compressive and an expansive phase.
    pub fn full_sine() -> Self {
        Self::SineBump { lo: 0.0, hi: PI }
    }

    /// `sin η` on `(0, π/2)`: monotone increasing, expansion only.
    pub fn quarter_sine() -> Self {
        Self::SineBump { lo: 0.0, hi: PI / 2.0 }
    }

    pub fn value(&self, eta: f64) -> f64 {
        match *self {
            Self::SineBump { lo, hi } => {
                if eta > lo && eta < hi {
                    eta.sin()
                } else {
                    0.0
                }
            }
            Self::Riemann { x0, left, right } => {
                if eta < x0 {
                    left
                } else {
                    right
                }
            }
            Self::Sine => eta.sin(),
            Self::Constant(v) => v,
        }
    }

    /// `σ₀'(η)`, zero at jumps.
    pub fn derivative(&self, eta: f64) -> f64 {
        match *self {
            Self::SineBump { lo, hi } if eta > lo && eta < hi => eta.cos(),
            Self::Sine => eta.cos(),
            _ => 0.0,
        }
    }

    /// `(σ₀, σ₀')` with one-sided limits taken from inside the support, so
    /// labels sitting exactly on a support endpoint see the bump.
    pub fn inside_limits(&self, eta: f64) -> (f64, f64) {
        match *self {
            Self::SineBump { lo, hi } if eta >= lo && eta <= hi => (eta.sin(), eta.cos()),
            _ => (self.value(eta), self.derivative(eta)),
        }
    }

    /// Exact mean of `σ₀` over `[a, b]`.
    pub fn cell_average(&self, a: f64, b: f64) -> f64 {
        let w = b - a;
        match *self {
            Self::SineBump { lo, hi } => {
                let (l, r) = (a.max(lo), b.min(hi));
                if r <= l {
                    0.0
                } else {
                    (l.cos() - r.cos()) / w
                }
            }
            Self::Riemann { x0, left, right } => {
                if b <= x0 {
                    left
                } else if a >= x0 {
                    right
                } else {
                    (left * (x0 - a) + right * (b - x0)) / w
                }
            }
            Self::Sine => (a.cos() - b.cos()) / w,
            Self::Constant(v) => v,
        }
    }

    /// Interval outside which the profile is constant, if any.
    pub fn support(&self) -> Option<(f64, f64)> {
        match *self {
            Self::SineBump { lo, hi } => Some((lo, hi)),
            Self::Riemann { x0, .. } => Some((x0, x0)),
            Self::Sine | Self::Constant(_) => None,
        }
    }

    /// Points where the profile or its derivative jumps.
    pub fn kinks(&self) -> Vec<f64> {
        match *self {
            Self::SineBump { lo, hi } => vec![lo, hi],
            Self::Riemann { x0, .. } => vec![x0],
            Self::Sine | Self::Constant(_) => vec![],
        }
    }
}

impl std::fmt::Display for InitialProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::SineBump { lo, hi } => write!(f, "sine on ({lo}, {hi})"),
            Self::Riemann { x0, left, right } => write!(f, "riemann at {x0}: {left} | {right}"),
            Self::Sine => write!(f, "sine"),
            Self::Constant(v) => write!(f, "constant {v}"),
        }
    }
}
