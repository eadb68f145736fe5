use geoacoustics::thermo::{
    capital_gamma, gamma_hat, lambda_param, omega_from_sigma, omega_param, pressure_from_entropy, GasParams,
    ThermoState,
};
use proptest::prelude::*;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

proptest! {
    #[test]
    fn ideal_gas_recovers_classical_coefficients(
        gamma in 1.01f64..1.66,
        rho in 0.1f64..3.0,
        a in 0.2f64..2.0,
    ) {
        let g = GasParams::ideal(gamma).unwrap();
        prop_assert_eq!(gamma_hat(&g), (gamma + 1.0) / 2.0);
        prop_assert!(close(omega_param(&g, rho, a).unwrap(), -1.5 * (1.0 + gamma), 1e-15));
        prop_assert!(close(capital_gamma(&g, rho, a, 1.0).unwrap(), (gamma + 1.0) / 2.0, 1e-15));
    }

    #[test]
    fn lambda_is_omega_over_sound_speed_without_covolume(
        alpha in 0.0f64..0.6,
        gamma in 1.01f64..1.66,
        rho in 0.1f64..3.0,
        a in 0.2f64..2.0,
        k in 0.1f64..5.0,
    ) {
        let g = GasParams::new(alpha, 0.0, gamma, 0.01).unwrap();
        let lhs = lambda_param(&g, rho, a, k).unwrap();
        prop_assert!(close(lhs, omega_param(&g, rho, a).unwrap() * k / a, 1e-13));
    }

    #[test]
    fn gamma_decreases_with_attraction_and_grows_with_covolume(
        alpha in 0.0f64..0.5,
        beta in 0.0f64..0.3,
    ) {
        let h = 1e-6;
        let at = |a: f64, b: f64| capital_gamma(&GasParams::new(a, b, 1.01, 0.01).unwrap(), 1.0, 1.0, 1.0).unwrap();
        prop_assert!(at(alpha + h, beta) - at(alpha, beta) < 0.0);
        prop_assert!(at(alpha, beta + h) - at(alpha, beta) > 0.0);
    }

    #[test]
    fn sound_speed_is_the_isentropic_pressure_slope(
        alpha in 0.0f64..0.5,
        beta in 0.0f64..0.2,
        gamma in 1.01f64..1.66,
        rho in 0.2f64..2.0,
        s in -1.0f64..1.0,
    ) {
        let g = GasParams::new(alpha, beta, gamma, 0.01).unwrap();
        let st = ThermoState::from_entropy(&g, rho, s);
        prop_assume!(st.is_ok());
        let st = st.unwrap();
        let h = 1e-4;
        let dp = (pressure_from_entropy(&g, rho + h, s).unwrap() - pressure_from_entropy(&g, rho - h, s).unwrap()) / (2.0 * h);
        prop_assert!(close(dp, st.a * st.a, 1e-6));
    }

    #[test]
    fn omega_closed_form_is_the_sigma_slope_where_gamma_vanishes(
        alpha in 0.1f64..0.6,
        beta in 0.0f64..0.1,
        gamma in 1.01f64..1.5,
        rho in 0.3f64..1.5,
    ) {
        let g = GasParams::new(alpha, beta, gamma, 0.01).unwrap();
        let st = ThermoState::on_gamma_zero_manifold(&g, rho);
        prop_assume!(st.is_ok());
        let st = st.unwrap();
        prop_assert!(close(omega_from_sigma(&g, &st).unwrap(), omega_param(&g, st.rho, st.a).unwrap(), 1e-7));
        prop_assert!(capital_gamma(&g, st.rho, st.a, 1.0).unwrap().abs() < 1e-12);
    }
}

/// `λ` drops the O(β²) part of `Ω|∇φ|/a`; the remainder over β² settles to
/// a constant under refinement.
#[test]
fn lambda_and_omega_differ_at_second_order_in_covolume() {
    let (rho, a) = (1.0, 1.0);
    let ratios: Vec<f64> = [0.02, 0.01, 0.005, 0.0025]
        .iter()
        .map(|&b| {
            let g = GasParams::new(0.35, b, 1.01, 0.01).unwrap();
            let d = lambda_param(&g, rho, a, 1.0).unwrap() - omega_param(&g, rho, a).unwrap() / a;
            d.abs() / (b * b)
        })
        .collect();
    for w in ratios.windows(2) {
        assert!((w[0] / w[1] - 1.0).abs() < 0.05, "{ratios:?}");
    }
    assert!(ratios[3] < 10.0);
}
