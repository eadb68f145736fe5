//! Transport coefficients along the vertical ray, with the eigen-algebra
//! cross-check of Γ and Λ at each sample.
//!
//! ```text
//! cargo run --example coefficients
//! ```

use geoacoustics::atmosphere::{background_state, height_at, AtmosphereParams};
use geoacoustics::hyperbolic::{numeric_coefficients, DerivativeSource, Truncation};
use geoacoustics::thermo::{self, GasParams};
use geoacoustics::transport::{CubicMode, EvolutionModel};

fn main() -> geoacoustics::Result<()> {
    let gas = GasParams::new(0.35, 0.06, 1.01, 0.01)?;
    let atm = AtmosphereParams::new(0.1, 0.1)?;
    let paper = EvolutionModel::new(gas, atm)?;
    let derived = paper.with_cubic_mode(CubicMode::LambdaDerived);

    println!("{:>5} {:>9} {:>9} {:>9} {:>9} {:>10} {:>10}", "t", "A", "B", "B(Λ)", "g", "Γ", "Γ−Γ_num");
    for i in 0..=10 {
        let t = 0.5 * i as f64;
        let u = atm.u(t);
        let st = background_state(&gas, &atm, height_at(atm.omega, t))?;
        let num = numeric_coefficients(&gas, &st, [0.0, 0.0, u], Truncation::Exact, DerivativeSource::Analytic)?;
        let gamma = thermo::capital_gamma(&gas, st.rho, st.a, u)?;
        let (c, d) = (paper.eval(t), derived.eval(t));
        println!(
            "{t:>5.2} {:>9.5} {:>9.5} {:>9.5} {:>9.5} {:>10.6} {:>10.1e}",
            c.a,
            c.b,
            d.b,
            c.g,
            gamma,
            gamma - num.gamma
        );
    }
    Ok(())
}
