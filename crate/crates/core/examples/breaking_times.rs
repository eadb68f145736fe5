//! When and where the characteristics first cross, for sine data on (0, π),
//! and the contrast with a purely quadratic flux on an expansion phase.

use geoacoustics::atmosphere::AtmosphereParams;
use geoacoustics::thermo::GasParams;
use geoacoustics::transport::{breaking_time, BreakingOptions, EvolutionModel, InitialProfile};

fn main() -> geoacoustics::Result<()> {
    let opts = BreakingOptions::default();
    let atm = AtmosphereParams::new(0.1, 0.1)?;
    for (alpha, beta) in [(0.15, 0.06), (0.35, 0.02), (0.35, 0.06)] {
        let model = EvolutionModel::new(GasParams::new(alpha, beta, 1.01, 0.01)?, atm)?;
        let r = breaking_time(&model, &InitialProfile::full_sine(), 0.0, 50.0, &opts)?;
        println!("alpha = {alpha}, beta = {beta}: t_b = {:.6}, eta_b = {:.6}", r.t_b.unwrap(), r.eta_b.unwrap());
    }

    let model = EvolutionModel::new(GasParams::new(0.35, 0.06, 1.01, 0.01)?, atm)?;
    let quarter = InitialProfile::quarter_sine();
    let quad = breaking_time(&model.without_cubic(), &quarter, 0.0, 50.0, &opts)?;
    let full = breaking_time(&model, &quarter, 0.0, 50.0, &opts)?;
    println!("expansion only, quadratic flux: t_b = {:?} (min jacobian {:.4})", quad.t_b, quad.min_jac);
    println!("expansion only, cubic flux:     t_b = {:?}", full.t_b);
    Ok(())
}
