use std::fmt::Write as _;

use rayon::prelude::*;

use super::config::RunConfig;
use super::verify::oracle_checks;
use super::Command;
use crate::atmosphere::{self, height_at, phase_closed_form, profiles, trace_ray_with};
use crate::error::{Error, Result};
use crate::fv::{self, AmplitudeField};
use crate::ode::Dopri5;
use crate::params;
use crate::thermo;
use crate::transport::{
    breaking_time, jacobian_paper_general, jacobian_paper_omega0, jacobian_paper_theta0, BreakingOptions,
    CharacteristicMap, CubicMode, EvolutionModel,
};

/// Text produced by a subcommand, and the failure to report after writing
/// it, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub text: String,
    pub failure: Option<Error>,
}

/// Seventeen significant digits.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n).map(|i| if i + 1 == n { b } else { a + (b - a) * i as f64 / (n - 1) as f64 }).collect()
}

/// One configured run: the swept `(key, value)` pairs and its model.
struct Run {
    tags: Vec<(String, f64)>,
    model: EvolutionModel,
}

impl Run {
    fn prefix(&self) -> String {
        self.tags.iter().map(|(_, v)| format!("{},", fmt_num(*v))).collect()
    }
}

fn admit(tags: Vec<(String, f64)>, cfg: RunConfig) -> Result<Run> {
    let gas = cfg.gas()?;
    let atm = cfg.atmosphere()?;
    params::admit(&gas, &atm).map_err(|e| match e {
        Error::Inadmissible(m) if !tags.is_empty() => {
            let at: Vec<String> = tags.iter().map(|(k, v)| format!("{k}={v}")).collect();
            Error::Inadmissible(format!("{m} (at {})", at.join(", ")))
        }
        other => other,
    })?;
    let model = cfg.model()?;
    Ok(Run { tags, model })
}

/// The base run, or one run per value of the single sweep.
fn sweep_runs(cfg: &RunConfig) -> Result<Vec<Run>> {
    match &cfg.sweep {
        None => Ok(vec![admit(Vec::new(), cfg.clone())?]),
        Some(s) => s.values.iter().map(|&v| admit(vec![(s.key.clone(), v)], cfg.with_param(&s.key, v)?)).collect(),
    }
}

/// Cartesian product of the grid axes, first axis outermost; a lone
/// `--sweep` serves as the only axis.
fn grid_runs(cfg: &RunConfig) -> Result<Vec<Run>> {
    let axes = match (&cfg.grid[..], &cfg.sweep) {
        ([], Some(s)) => std::slice::from_ref(s),
        ([], None) => return Err(Error::Config("sweep needs --grid key=v1,v2,... or --sweep key=v1,v2,...".into())),
        (g, _) => g,
    };
    let mut points: Vec<Vec<(String, f64)>> = vec![Vec::new()];
    for axis in axes {
        points = points
            .into_iter()
            .flat_map(|p| {
                axis.values.iter().map(move |&v| {
                    let mut q = p.clone();
                    q.push((axis.key.clone(), v));
                    q
                })
            })
            .collect();
    }
    points
        .into_iter()
        .map(|tags| {
            let mut c = cfg.clone();
            for (k, v) in &tags {
                c = c.with_param(k, *v)?;
            }
            admit(tags, c)
        })
        .collect()
}

fn tag_columns(runs: &[Run]) -> String {
    runs.first().map(|r| r.tags.iter().map(|(k, _)| format!("{k},")).collect()).unwrap_or_default()
}

fn metadata(cfg: &RunConfig) -> Result<String> {
    let mut h = String::new();
    let run = params::admit(&cfg.gas()?, &cfg.atmosphere()?)?;
    match run.t0 {
        Some(t0) => {
            let _ = writeln!(h, "# t0 = {}", fmt_num(t0));
        }
        None => {
            let _ = writeln!(h, "# t0 = none");
        }
    }
    let _ = writeln!(
        h,
        "# note = paper-exact B multiplies the alpha*beta term by (gamma+1); lambda-derived B = -Lambda/2 does not"
    );
    let _ = writeln!(h, "# note = corrected damping uses (1+omega t)^(theta/omega); verbatim uses (1+omega t)^theta");
    let _ = writeln!(h, "# note = t0 is the closed-form anchor, which omits the a0^-2 factor of the full Gamma(t)");
    Ok(h)
}

/// Runs `cmd` on the resolved configuration.
pub fn execute(cmd: Command, cfg: &RunConfig) -> Result<Report> {
    cfg.validate_numerics()?;
    let mut text = cfg.header(cmd.name());
    text.push_str(&metadata(cfg)?);
    let mut failure = None;
    match cmd {
        Command::Coeffs => coeffs(cfg, &mut text)?,
        Command::Rays => rays(cfg, &mut text)?,
        Command::Jacobian => jacobian(cfg, &mut text)?,
        Command::Break => breaking(cfg, &mut text)?,
        Command::Solve => solve(cfg, &mut text)?,
        Command::Sweep => sweep(cfg, &mut text)?,
        Command::Verify => failure = verify(cfg, &mut text)?,
    }
    Ok(Report { text, failure })
}

fn coeffs(cfg: &RunConfig, out: &mut String) -> Result<()> {
    let runs = sweep_runs(cfg)?;
    let _ = write!(out, "{}t,A,B,g,Gamma,Gamma_hat,Omega,Lambda,chi", tag_columns(&runs));
    if cfg.compare {
        out.push_str(",B_paper,B_lambda,B_discrepancy");
    }
    out.push('\n');
    for run in &runs {
        let (g, ap) = (run.model.gas, run.model.atm);
        for t in linspace(cfg.t_start, cfg.t_eval, cfg.samples) {
            if !(ap.u(t) > 0.0) {
                return Err(Error::Domain(format!("1 + omega t must be positive (t = {t})")));
            }
            let c = run.model.eval(t);
            let u = ap.u(t);
            let (rho0, a0) = profiles(&ap, height_at(ap.omega, t));
            let row = [
                t,
                c.a,
                c.b,
                c.g,
                thermo::capital_gamma(&g, rho0, a0, u)?,
                thermo::gamma_hat(&g),
                thermo::omega_param(&g, rho0, a0)?,
                thermo::lambda_param(&g, rho0, a0, u)?,
                atmosphere::chi(&g, &ap, t, 0.0)?,
            ];
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite(format!("coefficients at t = {t:e} overflow")));
            }
            out.push_str(&run.prefix());
            out.push_str(&row.map(fmt_num).join(","));
            if cfg.compare {
                let bp = run.model.with_cubic_mode(CubicMode::PaperExact).eval(t).b;
                let bl = run.model.with_cubic_mode(CubicMode::LambdaDerived).eval(t).b;
                let _ = write!(out, ",{},{},{}", fmt_num(bp), fmt_num(bl), fmt_num(bp - bl));
            }
            out.push('\n');
        }
    }
    Ok(())
}

fn rays(cfg: &RunConfig, out: &mut String) -> Result<()> {
    if cfg.samples < 2 || !(cfg.t_max > 0.0) {
        return Err(Error::Config("rays needs samples >= 2 and t-max > 0".into()));
    }
    let runs = sweep_runs(cfg)?;
    let _ = writeln!(out, "{}t,x3,grad_phi_3,x3_closed,grad_phi_3_closed,max_rel_err", tag_columns(&runs));
    let dt = cfg.t_max / (cfg.samples - 1) as f64;
    for run in &runs {
        let ap = run.model.atm;
        let path = trace_ray_with(&ap, cfg.t_max, dt, &Dopri5::new(cfg.tol))?;
        for s in path {
            let c = phase_closed_form(&ap, s.t)?;
            let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1e-300);
            let err = if s.t == 0.0 { 0.0 } else { rel(s.x3, c.x3).max(rel(s.grad_phi[2], c.grad_phi[2])) };
            let row = [s.t, s.x3, s.grad_phi[2], c.x3, c.grad_phi[2], err];
            let _ = writeln!(out, "{}{}", run.prefix(), row.map(fmt_num).join(","));
        }
    }
    Ok(())
}

fn paper_jacobian(run: &Run, eta: f64, t: f64) -> f64 {
    let (g, ap) = (&run.model.gas, &run.model.atm);
    if ap.theta == 0.0 {
        jacobian_paper_theta0(eta, t, g, ap)
    } else if ap.omega == 0.0 {
        jacobian_paper_omega0(eta, t, g, ap)
    } else {
        jacobian_paper_general(eta, t, g, ap)
    }
}

fn jacobian(cfg: &RunConfig, out: &mut String) -> Result<()> {
    let runs = sweep_runs(cfg)?;
    if cfg.paper_jacobian {
        let _ = writeln!(out, "# note = printed Jacobians assume sine data placed at t = 0");
    }
    let _ = write!(out, "{}eta,jac_variational", tag_columns(&runs));
    out.push_str(if cfg.paper_jacobian { ",jac_paper_closed\n" } else { "\n" });
    let profile = cfg.profile();
    let labels = linspace(cfg.support.0, cfg.support.1, cfg.n_eta);
    let blocks: Vec<Result<(String, f64, f64)>> = runs
        .par_iter()
        .map(|run| {
            let m = CharacteristicMap::new(&run.model, cfg.t_start, Dopri5::new(cfg.tol)).moments(cfg.t_eval)?;
            let mut s = String::new();
            let (mut jmin, mut emin) = (f64::INFINITY, f64::NAN);
            for &e in &labels {
                let (s0, ds0) = profile.inside_limits(e);
                let j = m.jac(s0, ds0);
                if j < jmin {
                    jmin = j;
                    emin = e;
                }
                let _ = write!(s, "{}{},{}", run.prefix(), fmt_num(e), fmt_num(j));
                if cfg.paper_jacobian {
                    let _ = write!(s, ",{}", fmt_num(paper_jacobian(run, e, cfg.t_eval)));
                }
                s.push('\n');
            }
            Ok((s, jmin, emin))
        })
        .collect();
    let mut summary = String::new();
    for (run, b) in runs.iter().zip(blocks) {
        let (s, jmin, emin) = b?;
        out.push_str(&s);
        let _ = writeln!(summary, "# min {}min_jac={} eta={}", tag_text(run), fmt_num(jmin), fmt_num(emin));
    }
    out.push_str(&summary);
    Ok(())
}

fn tag_text(run: &Run) -> String {
    run.tags.iter().map(|(k, v)| format!("{k}={} ", fmt_num(*v))).collect()
}

fn breaking(cfg: &RunConfig, out: &mut String) -> Result<()> {
    let runs = sweep_runs(cfg)?;
    let _ = writeln!(out, "{}t_b,eta_b,min_jac,warning", tag_columns(&runs));
    let opts = BreakingOptions { n_eta: cfg.n_eta, ode: Dopri5::new(cfg.tol), ..BreakingOptions::default() };
    let profile = cfg.profile();
    let rows: Vec<Result<String>> = runs
        .par_iter()
        .map(|run| {
            let r = breaking_time(&run.model, &profile, cfg.t_start, cfg.t_max, &opts)?;
            let opt = |x: Option<f64>| x.map(fmt_num).unwrap_or_else(|| "none".into());
            Ok(format!(
                "{}{},{},{},{}\n",
                run.prefix(),
                opt(r.t_b),
                opt(r.eta_b),
                fmt_num(r.min_jac),
                r.warning.unwrap_or_default().replace(',', ";")
            ))
        })
        .collect();
    for r in rows {
        out.push_str(&r?);
    }
    Ok(())
}

fn solve(cfg: &RunConfig, out: &mut String) -> Result<()> {
    let runs = sweep_runs(cfg)?;
    let _ = writeln!(out, "{}t,xi,sigma,sigma_characteristics", tag_columns(&runs));
    let profile = cfg.profile();
    let times: Vec<f64> = if cfg.t_eval == cfg.t_start {
        vec![cfg.t_start]
    } else {
        (1..=cfg.snapshots)
            .map(|k| {
                if k == cfg.snapshots {
                    cfg.t_eval
                } else {
                    cfg.t_start + (cfg.t_eval - cfg.t_start) * k as f64 / cfg.snapshots as f64
                }
            })
            .collect()
    };
    let opts = BreakingOptions { n_eta: cfg.n_eta, ode: Dopri5::new(cfg.tol), ..BreakingOptions::default() };
    let blocks: Vec<Result<(String, String)>> = runs
        .par_iter()
        .map(|run| {
            let init = AmplitudeField::from_profile(&profile, cfg.xi_min, cfg.xi_max, cfg.n_cells, cfg.t_start)?;
            let snaps = fv::solve(&init, &run.model, &times, &cfg.solver())?;
            let tb = breaking_time(&run.model, &profile, cfg.t_start, cfg.t_eval, &opts)?.t_b;
            let map = CharacteristicMap::new(&run.model, cfg.t_start, Dopri5::new(cfg.tol));
            let mut s = String::new();
            let mut summary = String::new();
            for snap in &snaps {
                let exact = match tb {
                    Some(tb) if snap.t >= tb => None,
                    _ => Some(map.moments(snap.t)?.cell_averages(&profile, &snap.field.edges())),
                };
                for (i, (t, x, v)) in snap.rows().enumerate() {
                    let e = exact.as_ref().map(|e| fmt_num(e[i])).unwrap_or_else(|| "none".into());
                    let _ = writeln!(s, "{}{},{},{},{}", run.prefix(), fmt_num(t), fmt_num(x), fmt_num(v), e);
                }
                let l1 = exact.as_ref().map(|e| fmt_num(snap.field.l1_distance(e))).unwrap_or_else(|| "none".into());
                let _ = writeln!(
                    summary,
                    "# snapshot {}t={} total_variation={} max_gradient={} l1_vs_characteristics={}",
                    tag_text(run),
                    fmt_num(snap.t),
                    fmt_num(snap.total_variation),
                    fmt_num(snap.field.max_gradient()),
                    l1
                );
            }
            Ok((s, summary))
        })
        .collect();
    let mut summary = String::new();
    for b in blocks {
        let (s, m) = b?;
        out.push_str(&s);
        summary.push_str(&m);
    }
    out.push_str(&summary);
    Ok(())
}

fn sweep(cfg: &RunConfig, out: &mut String) -> Result<()> {
    let runs = grid_runs(cfg)?;
    let _ = writeln!(out, "{}t0,min_jac,eta_min,t_b", tag_columns(&runs));
    let profile = cfg.profile();
    let labels = linspace(cfg.support.0, cfg.support.1, cfg.n_eta);
    let opts = BreakingOptions { n_eta: cfg.n_eta, ode: Dopri5::new(cfg.tol), ..BreakingOptions::default() };
    let rows: Vec<Result<String>> = runs
        .par_iter()
        .map(|run| {
            let t0 = params::admit(&run.model.gas, &run.model.atm)?.t0;
            let m = CharacteristicMap::new(&run.model, cfg.t_start, Dopri5::new(cfg.tol)).moments(cfg.t_eval)?;
            let (jmin, emin) = labels
                .iter()
                .map(|&e| {
                    let (s0, ds0) = profile.inside_limits(e);
                    (m.jac(s0, ds0), e)
                })
                .fold((f64::INFINITY, f64::NAN), |a, b| if b.0 < a.0 { b } else { a });
            let tb = breaking_time(&run.model, &profile, cfg.t_start, cfg.t_max, &opts)?.t_b;
            let opt = |x: Option<f64>| x.map(fmt_num).unwrap_or_else(|| "none".into());
            Ok(format!("{}{},{},{},{}\n", run.prefix(), opt(t0), fmt_num(jmin), fmt_num(emin), opt(tb)))
        })
        .collect();
    for r in rows {
        out.push_str(&r?);
    }
    Ok(())
}

fn verify(cfg: &RunConfig, out: &mut String) -> Result<Option<Error>> {
    let g = cfg.gas()?;
    let ap = cfg.atmosphere()?;
    let checks = oracle_checks(&g, &ap, &[cfg.t_start, 0.5 * (cfg.t_start + cfg.t_eval), cfg.t_eval])?;
    let _ = writeln!(out, "check,t,value,reference,residual,tolerance,status");
    let mut failed = Vec::new();
    for c in &checks {
        let status = if c.passed() { "PASS" } else { "FAIL" };
        if !c.passed() {
            failed.push(format!("{} at t={}", c.name, c.t));
        }
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            c.name,
            fmt_num(c.t),
            fmt_num(c.value),
            fmt_num(c.reference),
            fmt_num(c.residual),
            fmt_num(c.tolerance),
            status
        );
    }
    Ok((!failed.is_empty()).then(|| Error::Verification(failed.join("; "))))
}
