//! The same discrete-series states expressed in four bosonic systems:
//! Holstein-Primakoff, amplitude-squared sectors, two-mode sectors and the
//! four-mode Clebsch-Gordan blocks.
//!
//! ```text
//! cargo run --example optical_realizations
//! ```

use num_complex::Complex64;
use su11::realizations::{
    cg_vacuum, embed_state, matrix_element_check, squeezed_vacuum_amp2, ModeBasisMap, Realization,
};
use su11::squeezed::perelomov_state;
use su11::RepLabel;

fn main() -> su11::Result<()> {
    // Every realization carries the discrete series exactly.
    let reals = [
        Realization::HolsteinPrimakoff { k: 1.7 },
        Realization::AmplitudeSquared { j: 0 },
        Realization::AmplitudeSquared { j: 1 },
        Realization::TwoMode { p: 3, minus: true },
        Realization::FourMode { p1: 1, p2: 0, level: 0 },
    ];
    println!("matrix-element residuals over n <= 30:");
    for real in reals {
        let worst = (0..=30)
            .map(|n| matrix_element_check(&real, n).unwrap())
            .fold(0.0f64, f64::max);
        println!("  {real:?} (k_eff = {}): {worst:.3e}", real.effective_k());
    }

    // The even-sector coherent state is the single-mode squeezed vacuum.
    let alpha = Complex64::from_polar(0.5, 0.0);
    let table = squeezed_vacuum_amp2(alpha, 0, 24)?;
    println!("\nsqueezed vacuum over the even sector (r = 0.5):");
    for (label, amp) in table.rows.iter().take(5) {
        println!("  |{}>  amp {:+.6e}", label[0], amp.re);
    }

    // Two-mode sector embedding: |n+p, n> labels.
    let real = Realization::TwoMode { p: 3, minus: true };
    let rep = RepLabel::new(real.effective_k(), 32)?;
    let coherent = perelomov_state(Complex64::from_polar(0.4, 0.7), rep)?;
    let table = embed_state(&coherent, &real)?;
    println!("\ntwo-mode coherent state (p = 3, minus sector), first labels:");
    for (label, amp) in table.rows.iter().take(4) {
        println!("  |{}, {}>  |amp| {:.6e}", label[0], label[1], amp.norm());
    }

    // Four-mode Clebsch-Gordan vacua: annihilated by ab + cd.
    println!("\nfour-mode lowest-weight vectors:");
    for (p1, p2, n) in [(0, 0, 1), (1, 2, 2)] {
        let v = cg_vacuum(p1, p2, n)?;
        println!(
            "  p1={p1} p2={p2} n={n}: {} terms, norm {:.12}, ||(ab+cd)v|| = {:.3e}",
            v.amps.len(),
            v.norm(),
            v.apply_lowering().norm()
        );
    }

    // Climbing the four-mode ladder reproduces the abstract matrix elements.
    let map = ModeBasisMap::new(Realization::FourMode { p1: 0, p2: 0, level: 1 });
    let k = map.realization.effective_k();
    println!("\nfour-mode ladder (level 1 block, k_eff = {k}):");
    for m in 0..4usize {
        let v = map.four_mode_basis(m)?;
        let raised_norm = v.apply_raising().norm();
        let expected = (((m + 1) as f64) * (2.0 * k + m as f64)).sqrt();
        println!(
            "  ||J+ e_{m}|| = {raised_norm:.10}  vs  sqrt((m+1)(2k+m)) = {expected:.10}"
        );
    }
    Ok(())
}
