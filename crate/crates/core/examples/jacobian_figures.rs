//! Curves of the Jacobian `ξ_η(η)` at t = 1.4 for the β values of the first
//! figure, written as CSV to stdout.

use std::f64::consts::PI;

use geoacoustics::atmosphere::AtmosphereParams;
use geoacoustics::ode::Dopri5;
use geoacoustics::thermo::GasParams;
use geoacoustics::transport::{CharacteristicMap, EvolutionModel, InitialProfile};

fn main() -> geoacoustics::Result<()> {
    let betas = [0.02, 0.04, 0.06];
    let profile = InitialProfile::full_sine();
    let mut moments = Vec::new();
    for beta in betas {
        let model = EvolutionModel::new(GasParams::new(0.35, beta, 1.01, 0.01)?, AtmosphereParams::new(0.1, 0.1)?)?;
        moments.push(CharacteristicMap::new(&model, 0.0, Dopri5::new(1e-10)).moments(1.4)?);
    }
    println!("eta,{}", betas.map(|b| format!("beta={b}")).join(","));
    for i in 0..=32 {
        let eta = PI * i as f64 / 32.0;
        let (s0, ds0) = profile.inside_limits(eta);
        let cols: Vec<String> = moments.iter().map(|m| format!("{:.6}", m.jac(s0, ds0))).collect();
        println!("{eta:.6},{}", cols.join(","));
    }
    Ok(())
}
