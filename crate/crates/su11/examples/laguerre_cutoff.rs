//! Cut-off squeezed states: at `beta' = e^{i theta} sinh(2r)(M + k)` the
//! transformed state truncates to a degree-M polynomial in `J+` (a Laguerre
//! polynomial acting on the vacuum), and the full state is reached from the
//! coherent state by a finite operator polynomial.
//!
//! ```text
//! cargo run --example laguerre_cutoff
//! ```

use num_complex::Complex64;
use su11::algebra::RepLabel;
use su11::squeezed::{
    bridge_operator_state, displaced_state, laguerre_state, phase_aligned_distance,
    recursion_residual, SqueezeParams,
};

fn main() -> su11::Result<()> {
    let k = 0.75;
    let (r, theta) = (0.5, -1.0);
    let base = SqueezeParams::from_r_theta(r, theta, Complex64::ZERO)?;

    println!("cut-off family at k = {k}, r = {r}, theta = {theta}:");
    for m in 0..=4usize {
        let params = base.with_beta_prime(base.cutoff_beta_prime(m, k));
        let rep = RepLabel::new(k, 48)?;
        let state = laguerre_state(m, &params, rep)?;
        let nonzero = (0..rep.dim()).filter(|&n| state.coeff(n) != Complex64::ZERO).count();
        println!(
            "  M = {m}: beta' = {:+.5}, {nonzero} nonzero coefficients, recursion residual {:.2e}",
            params.beta_prime(),
            recursion_residual(&params, &state),
        );
    }

    // M = 1 in detail: C_1/C_0 = -xi for k = 1/2.
    let base_half = SqueezeParams::from_r_theta(r, theta, Complex64::ZERO)?;
    let params = base_half.with_beta_prime(base_half.cutoff_beta_prime(1, 0.5));
    let rep = RepLabel::new(0.5, 16)?;
    let state = laguerre_state(1, &params, rep)?;
    println!(
        "\nk = 1/2, M = 1: C_1/C_0 = {:.6}, -xi = {:.6}",
        state.coeff(1) / state.coeff(0),
        -params.xi()
    );

    // The bridge operator E(M, alpha) applied to the coherent state gives
    // the same full state as displacing the Laguerre form.
    println!("\nbridge-operator route vs displaced route:");
    for m in 0..=3usize {
        let params = base.with_beta_prime(base.cutoff_beta_prime(m, k));
        let rep = RepLabel::new(k, params.suggested_dim(m, 1e-13))?;
        let via_bridge = bridge_operator_state(m, params.alpha(), rep)?;
        let via_displacement = displaced_state(&params, rep)?;
        println!(
            "  M = {m}: componentwise distance {:.3e}",
            phase_aligned_distance(&via_bridge, &via_displacement)?
        );
    }
    Ok(())
}
