//! Resolved run configuration: defaults, then a preset, then a key=value
//! file, then command-line flags.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;

use crate::atmosphere::AtmosphereParams;
use crate::error::{Error, Result};
use crate::fv::{Boundary, Reconstruction, SolverConfig};
use crate::thermo::GasParams;
use crate::transport::{CubicMode, DampingForm, EvolutionModel, InitialProfile};

/// Parameters that may be swept.
pub const SWEEPABLE: [&str; 6] = ["alpha", "beta", "gamma", "theta", "omega", "epsilon"];

/// A named parameter with the values it takes.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub key: String,
    pub values: Vec<f64>,
}

impl Sweep {
    /// Parses `key=v1,v2,...`.
    pub fn parse(s: &str) -> Result<Self> {
        let (k, v) = s
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("sweep must look like key=v1,v2,... (got {s:?})")))?;
        let key = normalize(k);
        if !SWEEPABLE.contains(&key.as_str()) {
            return Err(Error::Config(format!("cannot sweep {key:?}; choose one of {SWEEPABLE:?}")));
        }
        let values = v.split(',').map(|x| parse_f64(&key, x)).collect::<Result<Vec<_>>>()?;
        if values.is_empty() {
            return Err(Error::Config(format!("sweep over {key} has no values")));
        }
        Ok(Self { key, values })
    }
}

impl std::fmt::Display for Sweep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let v: Vec<String> = self.values.iter().map(|x| x.to_string()).collect();
        write!(f, "{}={}", self.key, v.join(","))
    }
}

/// Everything a subcommand needs, fully resolved.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub theta: f64,
    pub omega: f64,
    pub epsilon: f64,
    pub t_start: f64,
    pub t_eval: f64,
    pub t_max: f64,
    pub n_eta: usize,
    pub n_cells: usize,
    pub xi_min: f64,
    pub xi_max: f64,
    pub support: (f64, f64),
    /// Sine bump on `support`, or a sine on the whole line.
    pub periodic_sine: bool,
    pub samples: usize,
    pub snapshots: usize,
    pub mode: CubicMode,
    pub damping: DampingForm,
    pub compare: bool,
    pub paper_jacobian: bool,
    pub cubic: bool,
    pub forcing: bool,
    pub attenuation: bool,
    pub reconstruction: Reconstruction,
    pub boundary: Boundary,
    pub cfl: f64,
    pub tol: f64,
    pub sweep: Option<Sweep>,
    pub grid: Vec<Sweep>,
    pub preset: Option<String>,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            alpha: 0.35,
            beta: 0.06,
            gamma: 1.01,
            theta: 0.1,
            omega: 0.1,
            epsilon: 0.01,
            t_start: 0.0,
            t_eval: 1.4,
            t_max: 50.0,
            n_eta: 4097,
            n_cells: 1024,
            xi_min: -1.0,
            xi_max: PI + 3.0,
            support: (0.0, PI),
            periodic_sine: false,
            samples: 15,
            snapshots: 1,
            mode: CubicMode::PaperExact,
            damping: DampingForm::Corrected,
            compare: false,
            paper_jacobian: false,
            cubic: true,
            forcing: true,
            attenuation: true,
            reconstruction: Reconstruction::Minmod,
            boundary: Boundary::Outflow,
            cfl: 0.45,
            tol: 1e-10,
            sweep: None,
            grid: Vec::new(),
            preset: None,
            out: None,
        }
    }
}

fn normalize(key: &str) -> String {
    key.trim().replace('_', "-").to_ascii_lowercase()
}

fn parse_f64(key: &str, v: &str) -> Result<f64> {
    let v = v.trim();
    let x = match v {
        "pi" => PI,
        "pi/2" => PI / 2.0,
        _ => v.parse::<f64>().map_err(|_| Error::Config(format!("{key}: not a number: {v:?}")))?,
    };
    if !x.is_finite() {
        return Err(Error::Config(format!("{key}: must be finite")));
    }
    Ok(x)
}

fn parse_usize(key: &str, v: &str) -> Result<usize> {
    v.trim().parse().map_err(|_| Error::Config(format!("{key}: not a nonnegative integer: {v:?}")))
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v.trim() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(Error::Config(format!("{key}: expected true or false, got {v:?}"))),
    }
}

impl RunConfig {
    /// Sets one key; unknown keys are errors.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = normalize(key);
        let k = key.as_str();
        let v = value.trim();
        match k {
            "alpha" => self.alpha = parse_f64(k, v)?,
            "beta" => self.beta = parse_f64(k, v)?,
            "gamma" => self.gamma = parse_f64(k, v)?,
            "theta" => self.theta = parse_f64(k, v)?,
            "omega" => self.omega = parse_f64(k, v)?,
            "epsilon" => self.epsilon = parse_f64(k, v)?,
            "t-start" => self.t_start = parse_f64(k, v)?,
            "t-eval" => self.t_eval = parse_f64(k, v)?,
            "t-max" => self.t_max = parse_f64(k, v)?,
            "n-eta" => self.n_eta = parse_usize(k, v)?,
            "n-cells" => self.n_cells = parse_usize(k, v)?,
            "xi-min" => self.xi_min = parse_f64(k, v)?,
            "xi-max" => self.xi_max = parse_f64(k, v)?,
            "support" => {
                let (a, b) =
                    v.split_once(',').ok_or_else(|| Error::Config(format!("support: expected lo,hi, got {v:?}")))?;
                self.support = (parse_f64(k, a)?, parse_f64(k, b)?);
            }
            "profile" => {
                self.periodic_sine = match v {
                    "sine-bump" => false,
                    "sine" => true,
                    _ => return Err(Error::Config(format!("profile: expected sine-bump or sine, got {v:?}"))),
                }
            }
            "samples" => self.samples = parse_usize(k, v)?,
            "snapshots" => self.snapshots = parse_usize(k, v)?,
            "mode" => {
                self.mode = match v {
                    "paper-exact" => CubicMode::PaperExact,
                    "lambda-derived" => CubicMode::LambdaDerived,
                    _ => return Err(Error::Config(format!("mode: expected paper-exact or lambda-derived, got {v:?}"))),
                }
            }
            "damping" => {
                self.damping = match v {
                    "corrected" => DampingForm::Corrected,
                    "verbatim" => DampingForm::Verbatim,
                    _ => return Err(Error::Config(format!("damping: expected corrected or verbatim, got {v:?}"))),
                }
            }
            "compare" => self.compare = parse_bool(k, v)?,
            "paper-jacobian" => self.paper_jacobian = parse_bool(k, v)?,
            "cubic" => self.cubic = parse_bool(k, v)?,
            "forcing" => self.forcing = parse_bool(k, v)?,
            "attenuation" => self.attenuation = parse_bool(k, v)?,
            "reconstruction" => {
                self.reconstruction = match v {
                    "first-order" => Reconstruction::FirstOrder,
                    "minmod" => Reconstruction::Minmod,
                    _ => {
                        return Err(Error::Config(format!("reconstruction: expected first-order or minmod, got {v:?}")))
                    }
                }
            }
            "boundary" => {
                self.boundary = match v {
                    "outflow" => Boundary::Outflow,
                    "periodic" => Boundary::Periodic,
                    _ => return Err(Error::Config(format!("boundary: expected outflow or periodic, got {v:?}"))),
                }
            }
            "cfl" => self.cfl = parse_f64(k, v)?,
            "tol" => self.tol = parse_f64(k, v)?,
            "sweep" => self.sweep = Some(Sweep::parse(v)?),
            "grid" => self.grid.push(Sweep::parse(v)?),
            "preset" => self.apply_preset(v)?,
            "out" => self.out = Some(PathBuf::from(v)),
            _ => return Err(Error::Config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    /// Applies a `key = value` file; `#` starts a comment. A `preset`
    /// line is applied before every other line wherever it appears.
    pub fn apply_file(&mut self, text: &str) -> Result<()> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("config line {}: expected key = value", i + 1)))?;
            entries.push((i + 1, k, v));
        }
        entries.sort_by_key(|(_, k, _)| normalize(k) != "preset");
        for (line, k, v) in entries {
            self.set(k, v).map_err(|e| match e {
                Error::Config(m) => Error::Config(format!("config line {line}: {m}")),
                other => other,
            })?;
        }
        Ok(())
    }

    /// Named experiment setups. `fig1`..`fig4` are the Jacobian sweeps,
    /// `fig5`/`fig6` the finite-volume sweeps.
    pub fn apply_preset(&mut self, name: &str) -> Result<()> {
        let base = RunConfig { out: self.out.clone(), ..RunConfig::default() };
        *self = base;
        let sweep = match name {
            "baseline" => None,
            "fig1" | "fig6" => Some("beta=0.02,0.04,0.06"),
            "fig2" | "fig5" => Some("alpha=0.15,0.25,0.35"),
            "fig3" => Some("theta=0.05,0.1,0.15,0.2"),
            "fig4" => Some("omega=0.05,0.1,0.15,0.2"),
            _ => return Err(Error::Config(format!("unknown preset {name:?} (baseline, fig1..fig6)"))),
        };
        self.sweep = sweep.map(Sweep::parse).transpose()?;
        self.preset = Some(name.to_string());
        Ok(())
    }

    pub fn gas(&self) -> Result<GasParams> {
        GasParams::new(self.alpha, self.beta, self.gamma, self.epsilon)
    }

    pub fn atmosphere(&self) -> Result<AtmosphereParams> {
        AtmosphereParams::new(self.theta, self.omega)
    }

    pub fn profile(&self) -> InitialProfile {
        if self.periodic_sine {
            InitialProfile::Sine
        } else {
            InitialProfile::SineBump { lo: self.support.0, hi: self.support.1 }
        }
    }

    pub fn solver(&self) -> SolverConfig {
        SolverConfig {
            cfl: self.cfl,
            boundary: self.boundary,
            reconstruction: self.reconstruction,
            source: self.forcing || self.attenuation,
        }
    }

    /// The evolution model with every switch applied.
    pub fn model(&self) -> Result<EvolutionModel> {
        let mut m =
            EvolutionModel::new(self.gas()?, self.atmosphere()?)?.with_cubic_mode(self.mode).with_damping(self.damping);
        if !self.cubic {
            m = m.without_cubic();
        }
        if !self.forcing {
            m = m.without_forcing();
        }
        if !self.attenuation {
            m = m.without_attenuation();
        }
        Ok(m)
    }

    /// Copy with `key` set to `value`.
    pub fn with_param(&self, key: &str, value: f64) -> Result<Self> {
        let mut c = self.clone();
        c.set(key, &format!("{value:e}"))?;
        Ok(c)
    }

    /// Checks that do not depend on the physics.
    pub fn validate_numerics(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        if !(self.t_eval >= self.t_start) {
            return bad("t-eval must be >= t-start");
        }
        if !(self.t_max >= self.t_start) {
            return bad("t-max must be >= t-start");
        }
        if self.n_eta < 3 {
            return bad("n-eta must be at least 3");
        }
        if self.n_cells < crate::fv::MIN_CELLS {
            return bad("n-cells must be at least 16");
        }
        if !(self.xi_max > self.xi_min) {
            return bad("xi-max must exceed xi-min");
        }
        if !(self.support.1 > self.support.0) {
            return bad("support must be a nonempty interval lo,hi");
        }
        if self.samples == 0 || self.snapshots == 0 {
            return bad("samples and snapshots must be positive");
        }
        if !(self.tol > 0.0) {
            return bad("tol must be positive");
        }
        self.solver().validate()
    }

    /// `# key = value` lines recording the resolved configuration.
    pub fn header(&self, command: &str) -> String {
        let mut h = String::new();
        let e = |x: f64| format!("{x:.16e}");
        let _ = writeln!(h, "# geoacoustics {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(h, "# command = {command}");
        if let Some(p) = &self.preset {
            let _ = writeln!(h, "# preset = {p}");
        }
        for (k, v) in [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("gamma", self.gamma),
            ("theta", self.theta),
            ("omega", self.omega),
            ("epsilon", self.epsilon),
            ("t-start", self.t_start),
            ("t-eval", self.t_eval),
            ("t-max", self.t_max),
            ("xi-min", self.xi_min),
            ("xi-max", self.xi_max),
            ("cfl", self.cfl),
            ("tol", self.tol),
        ] {
            let _ = writeln!(h, "# {k} = {}", e(v));
        }
        let _ = writeln!(h, "# support = {},{}", e(self.support.0), e(self.support.1));
        let _ = writeln!(h, "# profile = {}", if self.periodic_sine { "sine" } else { "sine-bump" });
        let _ = writeln!(h, "# n-eta = {}", self.n_eta);
        let _ = writeln!(h, "# n-cells = {}", self.n_cells);
        let _ = writeln!(h, "# samples = {}", self.samples);
        let _ = writeln!(h, "# snapshots = {}", self.snapshots);
        let _ = writeln!(h, "# mode = {}", self.mode);
        let _ = writeln!(h, "# damping = {}", self.damping);
        let _ = writeln!(h, "# cubic = {}", self.cubic);
        let _ = writeln!(h, "# forcing = {}", self.forcing);
        let _ = writeln!(h, "# attenuation = {}", self.attenuation);
        let _ = writeln!(h, "# compare = {}", self.compare);
        let _ = writeln!(h, "# paper-jacobian = {}", self.paper_jacobian);
        let _ = writeln!(h, "# reconstruction = {}", self.reconstruction);
        let _ = writeln!(h, "# boundary = {}", self.boundary);
        if let Some(s) = &self.sweep {
            let _ = writeln!(h, "# sweep = {s}");
        }
        for g in &self.grid {
            let _ = writeln!(h, "# grid = {g}");
        }
        h
    }
}
