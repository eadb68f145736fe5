//! Shock-capturing solution through breaking: total variation and the
//! steepest gradient at a few times, and the pre-breaking error against
//! the characteristic solution.

use std::f64::consts::PI;

use geoacoustics::atmosphere::AtmosphereParams;
use geoacoustics::fv::{self, AmplitudeField, SolverConfig};
use geoacoustics::ode::Dopri5;
use geoacoustics::thermo::GasParams;
use geoacoustics::transport::{CharacteristicMap, EvolutionModel, InitialProfile};

fn main() -> geoacoustics::Result<()> {
    let model = EvolutionModel::new(GasParams::new(0.35, 0.06, 1.01, 0.01)?, AtmosphereParams::new(0.1, 0.1)?)?;
    let profile = InitialProfile::full_sine();
    let init = AmplitudeField::from_profile(&profile, -1.0, PI + 3.0, 1024, 0.0)?;
    let times = [0.3, 0.6, 1.0, 1.4];
    let snaps = fv::solve(&init, &model, &times, &SolverConfig::default())?;
    let map = CharacteristicMap::new(&model, 0.0, Dopri5::new(1e-12));
    for s in &snaps {
        let err = if s.t < 0.6 {
            let exact = map.moments(s.t)?.cell_averages(&profile, &s.field.edges());
            format!("{:.2e}", s.field.l1_distance(&exact))
        } else {
            "after breaking".into()
        };
        println!(
            "t = {:.1}: TV = {:.5}, max gradient = {:8.3}, L1 vs characteristics = {err}",
            s.t,
            s.total_variation,
            s.field.max_gradient()
        );
    }
    Ok(())
}
