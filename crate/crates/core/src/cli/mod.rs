//! Command-line front end. Every subcommand writes CSV with a `#` header
//! recording the resolved configuration.

mod commands;
mod config;
mod verify;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{execute, fmt_num, Report};
pub use config::{RunConfig, Sweep, SWEEPABLE};
pub use verify::{oracle_checks, OracleCheck};

use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "geoacoustics", version, about = "Nonlinear acoustic waves in a stratified van der Waals gas")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Transport coefficients sampled in time.
    Coeffs,
    /// Numerical ray against its closed form.
    Rays,
    /// Jacobian of the characteristic map over the labels.
    Jacobian,
    /// Breaking times.
    Break,
    /// Finite-volume solution with snapshots.
    Solve,
    /// Cartesian parameter grid of breaking diagnostics.
    Sweep,
    /// Eigen-algebra cross-checks.
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Coeffs => "coeffs",
            Command::Rays => "rays",
            Command::Jacobian => "jacobian",
            Command::Break => "break",
            Command::Solve => "solve",
            Command::Sweep => "sweep",
            Command::Verify => "verify",
        }
    }
}

/// Overrides; anything left unset keeps its preset, file, or default value.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Key=value configuration file.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// baseline, fig1 .. fig6.
    #[arg(long, global = true)]
    pub preset: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub theta: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub omega: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub epsilon: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub t_start: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub t_eval: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub t_max: Option<String>,
    #[arg(long, global = true)]
    pub n_eta: Option<String>,
    #[arg(long, global = true)]
    pub n_cells: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub xi_min: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub xi_max: Option<String>,
    /// Sine support as `lo,hi`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub support: Option<String>,
    /// sine-bump (on the support) or sine.
    #[arg(long, global = true)]
    pub profile: Option<String>,
    /// Rows for `coeffs` and `rays`.
    #[arg(long, global = true)]
    pub samples: Option<String>,
    /// Output times for `solve`.
    #[arg(long, global = true)]
    pub snapshots: Option<String>,
    /// paper-exact or lambda-derived.
    #[arg(long, global = true)]
    pub mode: Option<String>,
    /// corrected or verbatim.
    #[arg(long, global = true)]
    pub damping: Option<String>,
    /// first-order or minmod.
    #[arg(long, global = true)]
    pub reconstruction: Option<String>,
    /// outflow or periodic.
    #[arg(long, global = true)]
    pub boundary: Option<String>,
    #[arg(long, global = true)]
    pub cfl: Option<String>,
    #[arg(long, global = true)]
    pub tol: Option<String>,
    /// One parameter, `key=v1,v2,...`.
    #[arg(long, global = true)]
    pub sweep: Option<String>,
    /// Grid axis for `sweep`, repeatable.
    #[arg(long, global = true)]
    pub grid: Vec<String>,
    /// Emit both cubic coefficients with their difference.
    #[arg(long, global = true)]
    pub compare: bool,
    /// Add the printed closed-form Jacobian.
    #[arg(long, global = true)]
    pub paper_jacobian: bool,
    #[arg(long, global = true)]
    pub no_cubic: bool,
    #[arg(long, global = true)]
    pub no_forcing: bool,
    #[arg(long, global = true)]
    pub no_attenuation: bool,
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

impl Flags {
    /// Defaults, then the preset, then the file, then the flags.
    pub fn resolve(&self) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        if let Some(p) = &self.preset {
            cfg.apply_preset(p)?;
        }
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            let preset = cfg.preset.clone();
            cfg.apply_file(&text)?;
            // a flag preset outranks one named in the file
            if let (Some(p), Some(q)) = (&preset, &cfg.preset) {
                if p != q {
                    return Err(Error::Config(format!(
                        "preset {p:?} on the command line conflicts with {q:?} in the file"
                    )));
                }
            }
        }
        let pairs: [(&str, &Option<String>); 24] = [
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("gamma", &self.gamma),
            ("theta", &self.theta),
            ("omega", &self.omega),
            ("epsilon", &self.epsilon),
            ("t-start", &self.t_start),
            ("t-eval", &self.t_eval),
            ("t-max", &self.t_max),
            ("n-eta", &self.n_eta),
            ("n-cells", &self.n_cells),
            ("xi-min", &self.xi_min),
            ("xi-max", &self.xi_max),
            ("support", &self.support),
            ("profile", &self.profile),
            ("samples", &self.samples),
            ("snapshots", &self.snapshots),
            ("mode", &self.mode),
            ("damping", &self.damping),
            ("reconstruction", &self.reconstruction),
            ("boundary", &self.boundary),
            ("cfl", &self.cfl),
            ("tol", &self.tol),
            ("sweep", &self.sweep),
        ];
        for (k, v) in pairs {
            if let Some(v) = v {
                cfg.set(k, v)?;
            }
        }
        if !self.grid.is_empty() {
            cfg.grid.clear();
            for g in &self.grid {
                cfg.set("grid", g)?;
            }
        }
        for (k, on) in [
            ("compare", self.compare),
            ("paper-jacobian", self.paper_jacobian),
            ("cubic", !self.no_cubic),
            ("forcing", !self.no_forcing),
            ("attenuation", !self.no_attenuation),
        ] {
            let default = k == "cubic" || k == "forcing" || k == "attenuation";
            if on != default {
                cfg.set(k, if on { "true" } else { "false" })?;
            }
        }
        if let Some(o) = &self.out {
            cfg.out = Some(o.clone());
        }
        Ok(cfg)
    }
}

/// Parses `args`, runs the subcommand, writes its output, and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run_parsed(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn run_parsed(cli: &Cli) -> Result<()> {
    let cfg = cli.flags.resolve()?;
    let Report { text, failure } = execute(cli.command, &cfg)?;
    match &cfg.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Error::Config(format!("cannot write output: {e}")))
        }
    }?;
    failure.map_or(Ok(()), Err)
}
