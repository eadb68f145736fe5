//! The amplitude carried by one characteristic: closed form against the
//! integrated ODE, and the size of the neglected O(β²) remainder.

use geoacoustics::atmosphere::AtmosphereParams;
use geoacoustics::thermo::GasParams;
use geoacoustics::transport::{sigma_closed, sigma_ode};

fn main() -> geoacoustics::Result<()> {
    let atm = AtmosphereParams::new(0.1, 0.1)?;
    for beta in [0.0, 0.01, 0.02, 0.04] {
        let gas = GasParams::new(0.35, beta, 1.01, 0.01)?;
        let mut worst = 0.0f64;
        for i in 0..=50 {
            let t = 0.1 * i as f64;
            let d = sigma_closed(&gas, &atm, 1.0, t, 0.0)? - sigma_ode(&gas, &atm, 1.0, t, 0.0, 1e-12)?;
            worst = worst.max(d.abs());
        }
        println!(
            "beta = {beta:.2}: sigma(5) = {:.8}, max |closed - ode| = {worst:.2e}",
            sigma_ode(&gas, &atm, 1.0, 5.0, 0.0, 1e-12)?
        );
    }
    Ok(())
}
