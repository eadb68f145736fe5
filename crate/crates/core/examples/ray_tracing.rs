//! Integrates the ray equations through the stratified atmosphere and
//! compares with `x₃ = ln(1+ωt)/ω`, `|∇φ| = 1+ωt`.

use geoacoustics::atmosphere::{phase_closed_form, trace_ray, AtmosphereParams};

fn main() -> geoacoustics::Result<()> {
    for omega in [0.05, 0.1, 0.2] {
        let atm = AtmosphereParams::new(0.1, omega)?;
        let path = trace_ray(&atm, 30.0, 5.0)?;
        let mut worst = 0.0f64;
        for s in &path {
            let c = phase_closed_form(&atm, s.t)?;
            if s.t > 0.0 {
                worst = worst.max((s.x3 - c.x3).abs() / c.x3);
            }
            worst = worst.max((s.grad_phi[2] - c.grad_phi[2]).abs() / c.grad_phi[2]);
        }
        let end = path.last().unwrap();
        println!(
            "omega = {omega:.2}: x3(30) = {:.6}, |grad phi|(30) = {:.4}, max relative error {worst:.1e}",
            end.x3,
            end.grad_phi_norm()
        );
    }
    Ok(())
}
