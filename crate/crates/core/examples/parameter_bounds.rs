//! Admissible van der Waals constants and the anchor time at which the
//! quadratic nonlinearity has decayed to O(ε).

use geoacoustics::atmosphere::AtmosphereParams;
use geoacoustics::params::{admit, alpha_bound, gamma_root_general, t0_paper, ROOT_T_MAX};
use geoacoustics::thermo::GasParams;

fn main() -> geoacoustics::Result<()> {
    let atm = AtmosphereParams::new(0.1, 0.1)?;
    for beta in [0.0, 0.02, 0.06, 0.2] {
        let g = GasParams::new(0.35, beta, 1.01, 0.01)?;
        println!("beta = {beta:.2}: alpha <= {:.6}, t0 = {:.4}", alpha_bound(&g), t0_paper(&g, &atm)?);
    }

    let g = GasParams::new(0.35, 0.06, 1.01, 0.01)?;
    let skewed = AtmosphereParams::new(0.05, 0.1)?;
    let root = gamma_root_general(&g, &skewed, g.epsilon, ROOT_T_MAX)?;
    println!("theta = 0.05, omega = 0.1: Gamma reaches eps (gamma+1)/2 at t = {root:.4}");

    let run = admit(&GasParams::new(0.1, 0.0, 1.01, 0.01)?, &atm)?;
    println!("alpha = 0.1 admitted, anchor {:?}", run.t0);
    match admit(&GasParams::new(2.0, 0.0, 1.01, 0.01)?, &atm) {
        Ok(_) => println!("alpha = 2 admitted"),
        Err(e) => println!("alpha = 2 rejected: {e}"),
    }
    Ok(())
}
