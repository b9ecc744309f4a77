//! The displacement-operator coherent state `D(alpha)|k,0>` is itself a
//! ladder eigenstate (of `J- - e^{2 i theta} tanh^2 r J+`, with eigenvalue
//! `2 e^{i theta} k tanh r`) and saturates the Schroedinger-Robertson
//! uncertainty bound.
//!
//! ```text
//! cargo run --example perelomov_minimum_uncertainty
//! ```

use num_complex::Complex64;
use su11::algebra::RepLabel;
use su11::squeezed::{
    perelomov_eigen_check, perelomov_state, perelomov_suggested_dim, uncertainty_report,
};

fn main() -> su11::Result<()> {
    let k = 0.75;
    let (r, theta) = (0.6, -0.9);
    let alpha = Complex64::from_polar(r, theta);
    let dim = perelomov_suggested_dim(alpha, k, 1e-13);
    let rep = RepLabel::new(k, dim)?;

    let check = perelomov_eigen_check(alpha, rep)?;
    println!("coherent state at k = {k}, alpha = {alpha:.4} (dim {dim})");
    println!("  eigenvalue 2 e^(i theta) k tanh r = {:.10}", check.eigenvalue);
    println!("  Rayleigh quotient                 = {:.10}", check.rayleigh);
    println!("  eigenvalue-equation residual      = {:.3e}", check.residual);

    // Residual decays with the truncation.
    println!("\ntruncation refinement:");
    for dim in [40, 80, 160] {
        let rep = RepLabel::new(k, dim)?;
        let c = perelomov_eigen_check(alpha, rep)?;
        println!("  dim {dim:4}: residual {:.3e}", c.residual);
    }

    // Uncertainty data: the gap Var1*Var2 - Cov^2 - <J0>^2/4 closes.
    let state = perelomov_state(alpha, rep)?;
    let u = uncertainty_report(&state)?;
    println!("\nuncertainty report:");
    println!("  Var(J1) = {:.8}", u.var1);
    println!("  Var(J2) = {:.8}", u.var2);
    println!("  Cov     = {:+.8}", u.cov);
    println!("  <J0>    = {:.8}  (k cosh 2r = {:.8})", u.j0_mean, k * (2.0 * r).cosh());
    println!("  Schroedinger-Robertson gap = {:+.3e}", u.sr_gap);

    // A generic superposition does not saturate.
    let rep_small = RepLabel::new(k, 12)?;
    let e0 = su11::StateVector::basis_vector(rep_small, 0);
    let e2 = su11::StateVector::basis_vector(rep_small, 2);
    let mixed = e0.add(&e2)?.scaled(Complex64::new(1.0 / 2.0f64.sqrt(), 0.0));
    let u = uncertainty_report(&mixed)?;
    println!("\n(e_0 + e_2)/sqrt(2) for contrast: gap = {:+.3e}", u.sr_gap);
    Ok(())
}
