//! Gauss-Legendre quadrature with adaptive panel splitting.
//!
//! The integrands in this crate are smooth products of polynomials,
//! `x^lambda` powers and gaussians on a finite interval `[0, x_max]`, so a
//! fixed-order rule per panel with recursive bisection is accurate and cheap.

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
///
/// Roots of the Legendre polynomial are found by Newton iteration from the
/// Chebyshev-like initial guess; weights are `2 / ((1-x^2) P'_n(x)^2)`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Initial guess (Abramowitz & Stegun 22.16.6).
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Evaluate P_n and P'_n by the three-term recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for j in 2..=n {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn panel(f: &impl Fn(f64) -> f64, a: f64, b: f64, nodes: &[f64], weights: &[f64]) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    nodes
        .iter()
        .zip(weights)
        .map(|(&x, &w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

/// Integrate `f` over `[a, b]`, bisecting panels until the 32-point estimate
/// is stable against its two-half refinement.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let (nodes, weights) = gauss_legendre(32);
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        whole: f64,
        tol: f64,
        depth: usize,
        nodes: &[f64],
        weights: &[f64],
    ) -> f64 {
        let mid = 0.5 * (a + b);
        let left = panel(f, a, mid, nodes, weights);
        let right = panel(f, mid, b, nodes, weights);
        if (left + right - whole).abs() <= tol || depth >= 24 {
            return left + right;
        }
        recurse(f, a, mid, left, tol / 2.0, depth + 1, nodes, weights)
            + recurse(f, mid, b, right, tol / 2.0, depth + 1, nodes, weights)
    }
    let whole = panel(&f, a, b, &nodes, &weights);
    recurse(&f, a, b, whole, tol, 0, &nodes, &weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn nodes_integrate_polynomials_exactly() {
        let (nodes, weights) = gauss_legendre(8);
        // Exact for degree <= 15.
        let int: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(&x, &w)| w * x.powi(14))
            .sum();
        assert_relative_eq!(int, 2.0 / 15.0, max_relative = 1e-13);
        let odd: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(&x, &w)| w * x.powi(7))
            .sum();
        assert!(odd.abs() < 1e-15);
    }

    #[test]
    fn weights_sum_to_interval_length() {
        for n in [2, 5, 32, 96, 200] {
            let (_, weights) = gauss_legendre(n);
            assert_relative_eq!(weights.iter().sum::<f64>(), 2.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn adaptive_gaussian_moment() {
        // int_0^inf x^2 exp(-x^2) dx = sqrt(pi)/4; the tail past 12 is
        // far below the tolerance.
        let v = integrate(|x| x * x * (-x * x).exp(), 0.0, 12.0, 1e-12);
        assert_relative_eq!(v, std::f64::consts::PI.sqrt() / 4.0, epsilon = 1e-12);
    }

    #[test]
    fn adaptive_handles_narrow_feature() {
        let v = integrate(|x| (-(x - 3.0) * (x - 3.0) * 400.0).exp(), 0.0, 6.0, 1e-12);
        assert_relative_eq!(
            v,
            (std::f64::consts::PI / 400.0).sqrt(),
            max_relative = 1e-10
        );
    }
}
