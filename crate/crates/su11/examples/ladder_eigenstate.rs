//! Solve the ladder-operator eigenvalue problem
//! `(mu J- + nu J+)|beta> = beta |beta>` and inspect the state.
//!
//! ```text
//! cargo run --example ladder_eigenstate
//! ```

use num_complex::Complex64;
use su11::algebra::RepLabel;
use su11::squeezed::{
    displaced_state, eigen_residual, exponential_state, ladder_eigenstate,
    phase_aligned_distance, solve_recursion, squeezed_state, SqueezeParams,
};

fn main() -> su11::Result<()> {
    let mu = Complex64::new(1.0, 0.0);
    let nu = Complex64::from_polar(0.35, 1.1);
    let beta = Complex64::new(0.3, -0.2);
    let k = 1.25;

    let params = SqueezeParams::from_mu_nu_beta(mu, nu, beta)?;
    println!("eigenvalue problem: mu = {mu}, nu = {nu}, beta = {beta}, k = {k}");
    println!(
        "displacement condition: r = {:.6}, theta = {:.6}, alpha = {:.6}",
        params.r(),
        params.theta(),
        params.alpha()
    );
    println!(
        "transformed eigenvalue beta' = {:.6}, coefficient-ratio limit xi = {:.6} (|xi| = {:.6})",
        params.beta_prime(),
        params.xi(),
        params.xi().norm()
    );

    // The robust constructor: picks a truncation, certifies by doubling.
    let state = ladder_eigenstate(&params, k)?;
    println!(
        "\nstate built at dim {} with tail bound {:.3e}",
        state.rep().dim(),
        state.tail_bound()
    );
    println!(
        "eigenvalue-equation residual: {:.3e}",
        eigen_residual(&params, &state)?
    );

    println!("\nfirst coefficients (C_0 fixed real positive):");
    for n in 0..8 {
        let c = state.coeff(n);
        println!("  C_{n} = {:+.6e} {:+.6e} i   |C|^2 = {:.6e}", c.re, c.im, c.norm_sqr());
    }

    // Route equivalence: the same state through the displacement transform.
    let rep = RepLabel::new(k, params.suggested_dim(0, 1e-13))?;
    let direct = squeezed_state(&params, rep)?;
    let transformed = solve_recursion(&params, rep)?;
    let product_form = exponential_state(&params, rep)?;
    let displaced = displaced_state(&params, rep)?;
    println!(
        "\nroute agreement at dim {}:",
        rep.dim()
    );
    println!(
        "  recursion vs exponential form (transformed frame): {:.3e}",
        phase_aligned_distance(&product_form, &transformed)?
    );
    println!(
        "  D(alpha) * transformed vs direct recursion:        {:.3e}",
        phase_aligned_distance(&displaced, &direct)?
    );

    // The -alpha companion solves the same problem.
    let companion = params.companion();
    let other = ladder_eigenstate(&companion, k)?;
    println!(
        "  companion root residual:                           {:.3e}",
        eigen_residual(&companion, &other)?
    );
    Ok(())
}
