//! Dense complex matrices: discrete-series generators and the matrix
//! exponential.
//!
//! Band-wise application in [`crate::algebra`] covers everything the state
//! constructors need; dense matrices are materialized only where a matrix
//! exponential is unavoidable: the convergence checks of the displacement
//! operator and the oracle comparisons in the test suites.
//!
//! The exponential uses scaling-and-squaring with the Pade(13) approximant
//! (Higham 2005).  The generators fed to it here are anti-hermitian, so the
//! result is unitary and the squaring phase is well conditioned.

use ndarray::Array2;
use num_complex::Complex64;

use crate::algebra::{RepLabel, StateVector};

/// Dense matrix of `J+` on the truncated basis.
pub fn jplus_matrix(rep: RepLabel) -> Array2<Complex64> {
    let (k, dim) = (rep.k(), rep.dim());
    let mut m = Array2::zeros((dim, dim));
    for n in 0..dim - 1 {
        m[[n + 1, n]] = Complex64::new((((n + 1) as f64) * (2.0 * k + n as f64)).sqrt(), 0.0);
    }
    m
}

/// Dense matrix of `J-` on the truncated basis.
pub fn jminus_matrix(rep: RepLabel) -> Array2<Complex64> {
    let (k, dim) = (rep.k(), rep.dim());
    let mut m = Array2::zeros((dim, dim));
    for n in 1..dim {
        m[[n - 1, n]] = Complex64::new(((n as f64) * (2.0 * k + (n - 1) as f64)).sqrt(), 0.0);
    }
    m
}

/// Dense matrix of `J0` on the truncated basis.
pub fn j0_matrix(rep: RepLabel) -> Array2<Complex64> {
    let (k, dim) = (rep.k(), rep.dim());
    let mut m = Array2::zeros((dim, dim));
    for n in 0..dim {
        m[[n, n]] = Complex64::new(n as f64 + k, 0.0);
    }
    m
}

/// The displacement generator `alpha J+ - conj(alpha) J-` (anti-hermitian).
pub fn displacement_generator(alpha: Complex64, rep: RepLabel) -> Array2<Complex64> {
    let mut m = jplus_matrix(rep);
    m.mapv_inplace(|v| alpha * v);
    let minus = jminus_matrix(rep);
    m - minus.mapv(|v| alpha.conj() * v)
}

/// Apply a dense matrix to a state vector.
pub fn apply_matrix(m: &Array2<Complex64>, v: &StateVector) -> StateVector {
    let dim = v.rep().dim();
    assert_eq!(m.nrows(), dim);
    let mut out = vec![Complex64::ZERO; dim];
    for i in 0..dim {
        let mut acc = Complex64::ZERO;
        for j in 0..dim {
            acc += m[[i, j]] * v.coeff(j);
        }
        out[i] = acc;
    }
    StateVector::new(v.rep(), out, v.tail_bound()).expect("dims agree")
}

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

// theta_13 from Higham's analysis.
const THETA13: f64 = 5.371920351148152;

/// Matrix exponential `exp(A)` by Pade(13) scaling-and-squaring.
pub fn expm(a: &Array2<Complex64>) -> Array2<Complex64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm needs a square matrix");
    let norm = one_norm(a);
    let s = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a.mapv(|v| v / 2.0f64.powi(s as i32));
    let mut result = pade13(&scaled);
    for _ in 0..s {
        result = result.dot(&result);
    }
    result
}

fn pade13(a: &Array2<Complex64>) -> Array2<Complex64> {
    let n = a.nrows();
    let eye = Array2::from_diag_elem(n, Complex64::ONE);
    let a2 = a.dot(a);
    let a4 = a2.dot(&a2);
    let a6 = a2.dot(&a4);

    let b = |i: usize| Complex64::new(PADE13[i], 0.0);
    let u_inner = a6.mapv(|v| v * b(13)) + a4.mapv(|v| v * b(11)) + a2.mapv(|v| v * b(9));
    let u_poly = a6.dot(&u_inner)
        + a6.mapv(|v| v * b(7))
        + a4.mapv(|v| v * b(5))
        + a2.mapv(|v| v * b(3))
        + eye.mapv(|v| v * b(1));
    let u = a.dot(&u_poly);

    let v_inner = a6.mapv(|v| v * b(12)) + a4.mapv(|v| v * b(10)) + a2.mapv(|v| v * b(8));
    let v = a6.dot(&v_inner)
        + a6.mapv(|v| v * b(6))
        + a4.mapv(|v| v * b(4))
        + a2.mapv(|v| v * b(2))
        + eye.mapv(|v| v * b(0));

    let num = &v + &u;
    let den = &v - &u;
    solve(den, num)
}

/// Solve `A X = B` by Gaussian elimination with partial pivoting.
pub fn solve(a: Array2<Complex64>, b: Array2<Complex64>) -> Array2<Complex64> {
    let n = a.nrows();
    let m = b.ncols();
    assert_eq!(n, a.ncols());
    assert_eq!(n, b.nrows());
    let mut aug = Array2::<Complex64>::zeros((n, n + m));
    for i in 0..n {
        for j in 0..n {
            aug[[i, j]] = a[[i, j]];
        }
        for j in 0..m {
            aug[[i, n + j]] = b[[i, j]];
        }
    }
    for col in 0..n {
        let mut max_val = 0.0;
        let mut max_row = col;
        for row in col..n {
            let v = aug[[row, col]].norm();
            if v > max_val {
                max_val = v;
                max_row = row;
            }
        }
        assert!(max_val > 0.0, "singular matrix in solve");
        if max_row != col {
            for j in 0..n + m {
                aug.swap([col, j], [max_row, j]);
            }
        }
        let pivot = aug[[col, col]];
        for row in col + 1..n {
            let factor = aug[[row, col]] / pivot;
            if factor == Complex64::ZERO {
                continue;
            }
            for j in col..n + m {
                let v = aug[[col, j]];
                aug[[row, j]] -= factor * v;
            }
        }
    }
    let mut x = Array2::<Complex64>::zeros((n, m));
    for col in (0..n).rev() {
        let pivot = aug[[col, col]];
        for j in 0..m {
            let mut sum = aug[[col, n + j]];
            for kk in col + 1..n {
                sum -= aug[[col, kk]] * x[[kk, j]];
            }
            x[[col, j]] = sum / pivot;
        }
    }
    x
}

fn one_norm(a: &Array2<Complex64>) -> f64 {
    let mut max = 0.0f64;
    for j in 0..a.ncols() {
        let s: f64 = (0..a.nrows()).map(|i| a[[i, j]].norm()).sum();
        max = max.max(s);
    }
    max
}
