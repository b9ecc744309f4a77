//! Truncated realization of the su(1,1) discrete-series representation.
//!
//! The positive discrete series with Bargmann index `k > 0` acts on the
//! orthonormal basis `|k,n>`, `n = 0, 1, 2, ...` as
//!
//! ```text
//! J+ |k,n> = sqrt((n+1)(2k+n))   |k,n+1>
//! J- |k,n> = sqrt(n(2k+n-1))     |k,n-1>
//! J0 |k,n> = (n+k)               |k,n>
//! ```
//!
//! so that `[J+, J-] = -2 J0` and `[J0, J±] = ±J±`.  Everything here works on
//! a finite truncation of that basis: a state stores `dim` coefficients plus
//! a running `tail_bound` accounting for probability pushed past the
//! truncation edge.  Operators are applied band-wise; no matrices are stored.

use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;

use crate::error::{Result, Su11Error};

/// Label of a truncated discrete-series representation space: the Bargmann
/// index `k` and the number of retained basis states.
///
/// Half-integer `k` gives the classical discrete series; any `k > 0` is
/// accepted because the Calogero-Sutherland application needs
/// `k = lambda/2 + 1/4` with generic real `lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepLabel {
    k: f64,
    dim: usize,
}

impl RepLabel {
    pub fn new(k: f64, dim: usize) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(Su11Error::InvalidRep(format!("k = {k} must be > 0")));
        }
        if dim < 2 {
            return Err(Su11Error::InvalidRep(format!("dim = {dim} must be >= 2")));
        }
        Ok(Self { k, dim })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Same `k`, twice the truncation.  Used by refinement checks.
    pub fn doubled(&self) -> Self {
        Self {
            k: self.k,
            dim: self.dim * 2,
        }
    }

    /// Same `k`, truncation grown by `extra` rows.
    pub fn padded(&self, extra: usize) -> Self {
        Self {
            k: self.k,
            dim: self.dim + extra,
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if (self.k - other.k).abs() > 1e-12 || self.dim != other.dim {
            return Err(Su11Error::RepMismatch {
                k_a: self.k,
                dim_a: self.dim,
                k_b: other.k,
                dim_b: other.dim,
            });
        }
        Ok(())
    }
}

/// Finite coefficient vector over the basis `|k,n>`.
///
/// `tail_bound` is an upper bound on the squared norm of the part of the
/// (conceptually infinite) state that truncation discarded.  Operations that
/// drop amplitude past the edge add to it; everything else propagates it.
#[derive(Debug, Clone)]
pub struct StateVector {
    rep: RepLabel,
    coeffs: Vec<Complex64>,
    tail_bound: f64,
}

impl StateVector {
    pub fn new(rep: RepLabel, coeffs: Vec<Complex64>, tail_bound: f64) -> Result<Self> {
        if coeffs.len() != rep.dim() {
            return Err(Su11Error::LengthMismatch {
                got: coeffs.len(),
                want: rep.dim(),
            });
        }
        Ok(Self {
            rep,
            coeffs,
            tail_bound,
        })
    }

    /// The lowest-weight state `|k,0>`.
    pub fn lowest_weight(rep: RepLabel) -> Self {
        Self::basis_vector(rep, 0)
    }

    /// The basis vector `|k,n>`.  Panics if `n` is outside the truncation.
    pub fn basis_vector(rep: RepLabel, n: usize) -> Self {
        assert!(n < rep.dim(), "basis index {n} outside dim {}", rep.dim());
        let mut coeffs = vec![Complex64::ZERO; rep.dim()];
        coeffs[n] = Complex64::ONE;
        Self {
            rep,
            coeffs,
            tail_bound: 0.0,
        }
    }

    pub fn zero(rep: RepLabel) -> Self {
        Self {
            rep,
            coeffs: vec![Complex64::ZERO; rep.dim()],
            tail_bound: 0.0,
        }
    }

    pub fn rep(&self) -> RepLabel {
        self.rep
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs[n]
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn set_tail_bound(&mut self, bound: f64) {
        self.tail_bound = bound;
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Whether the normalization invariant holds given the recorded tail.
    pub fn check_normalized(&self) -> Result<()> {
        let norm_sq = self.norm_sq();
        if (norm_sq - 1.0).abs() <= 10.0 * self.tail_bound + 1e-12 {
            Ok(())
        } else {
            Err(Su11Error::NotNormalized { norm_sq })
        }
    }

    /// Scale to unit norm and rotate the global phase so the first
    /// coefficient with non-negligible magnitude is real positive.
    pub fn normalized(mut self) -> Self {
        let norm = self.norm();
        if norm == 0.0 {
            return self;
        }
        let scale = 1.0 / norm;
        let pivot = self
            .coeffs
            .iter()
            .find(|c| c.norm() > 1e-14 * norm)
            .copied()
            .unwrap_or(Complex64::ONE);
        let phase = pivot / pivot.norm();
        let factor = scale / phase;
        for c in &mut self.coeffs {
            *c *= factor;
        }
        self.tail_bound *= scale * scale;
        self
    }

    /// Re-embed into a (usually larger) truncation of the same `k`.
    /// Shrinking adds the discarded mass to the tail bound.
    pub fn resized(&self, dim: usize) -> Result<Self> {
        let rep = RepLabel::new(self.rep.k(), dim)?;
        let mut coeffs = vec![Complex64::ZERO; dim];
        let keep = dim.min(self.rep.dim());
        coeffs[..keep].copy_from_slice(&self.coeffs[..keep]);
        let lost: f64 = self.coeffs[keep..].iter().map(|c| c.norm_sqr()).sum();
        Ok(Self {
            rep,
            coeffs,
            tail_bound: self.tail_bound + lost,
        })
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            rep: self.rep,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
            tail_bound: self.tail_bound * factor.norm_sqr(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.rep.check_same(&other.rep)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            rep: self.rep,
            coeffs,
            tail_bound: self.tail_bound + other.tail_bound,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.rep.check_same(&other.rep)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            rep: self.rep,
            coeffs,
            tail_bound: self.tail_bound + other.tail_bound,
        })
    }
}

/// `J+` applied band-wise: `C'_{n+1} = sqrt((n+1)(2k+n)) C_n`.
///
/// The top input component falls off the truncation; its squared magnitude
/// times the matrix element it would have acquired is added to the tail
/// bound rather than raised as an error.
pub fn apply_jplus(state: &StateVector) -> StateVector {
    let k = state.rep.k();
    let dim = state.rep.dim();
    let mut coeffs = vec![Complex64::ZERO; dim];
    for n in 0..dim - 1 {
        let elem = (((n + 1) as f64) * (2.0 * k + n as f64)).sqrt();
        coeffs[n + 1] = elem * state.coeffs[n];
    }
    let lost_elem_sq = (dim as f64) * (2.0 * k + (dim - 1) as f64);
    let tail_bound = state.tail_bound + state.coeffs[dim - 1].norm_sqr() * lost_elem_sq;
    StateVector {
        rep: state.rep,
        coeffs,
        tail_bound,
    }
}

/// `J-` applied band-wise: `C'_{n-1} = sqrt(n(2k+n-1)) C_n`.
pub fn apply_jminus(state: &StateVector) -> StateVector {
    let k = state.rep.k();
    let dim = state.rep.dim();
    let mut coeffs = vec![Complex64::ZERO; dim];
    for n in 1..dim {
        let elem = ((n as f64) * (2.0 * k + (n - 1) as f64)).sqrt();
        coeffs[n - 1] = elem * state.coeffs[n];
    }
    StateVector {
        rep: state.rep,
        coeffs,
        tail_bound: state.tail_bound,
    }
}

/// `J0` applied diagonally: `C'_n = (n+k) C_n`.
pub fn apply_j0(state: &StateVector) -> StateVector {
    let k = state.rep.k();
    let coeffs = state
        .coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| (n as f64 + k) * c)
        .collect();
    StateVector {
        rep: state.rep,
        coeffs,
        tail_bound: state.tail_bound,
    }
}

/// Sesquilinear inner product `<a|b> = sum conj(a_n) b_n`.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    a.rep.check_same(&b.rep)?;
    Ok(a.coeffs
        .iter()
        .zip(&b.coeffs)
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// Factorial bracket `[[f(n)]]! = f(n) f(n-1) ... f(1)`, `[[f(0)]]! = 1`.
///
/// Evaluated as a direct product while it stays in range; once the running
/// magnitude risks overflow the remaining factors are accumulated in the log
/// domain.  An error is returned only if the final magnitude cannot be
/// represented at all.
pub fn bracket_factorial(f: impl Fn(u64) -> f64, n: u64) -> Result<f64> {
    let mut product = 1.0f64;
    let mut log_extra = 0.0f64;
    let mut sign = 1.0f64;
    for m in 1..=n {
        let v = f(m);
        if v == 0.0 {
            return Ok(0.0);
        }
        if v < 0.0 {
            sign = -sign;
        }
        let av = v.abs();
        if product.abs() > 1e270 || (log_extra != 0.0) {
            log_extra += av.ln();
        } else {
            product *= av;
        }
    }
    let ln_total = product.ln() + log_extra;
    if ln_total > f64::MAX.ln() {
        return Err(Su11Error::BracketOverflow);
    }
    Ok(sign * ln_total.exp())
}

/// `ln [[A+n]]! = ln Gamma(A+n+1) - ln Gamma(A+1)` for `A > -1`.
///
/// This is the linear-argument bracket used throughout the coefficient
/// formulas; the log form never overflows for the `n` the crate needs.
pub fn ln_bracket_linear(a: f64, n: u64) -> f64 {
    ln_gamma(a + n as f64 + 1.0) - ln_gamma(a + 1.0)
}

/// `[[A+n]]!` in the linear domain, via [`ln_bracket_linear`] for large `n`.
pub fn bracket_linear(a: f64, n: u64) -> f64 {
    if n <= 30 {
        (1..=n).map(|m| a + m as f64).product()
    } else {
        ln_bracket_linear(a, n).exp()
    }
}

/// `ln n!`.
pub fn ln_factorial(n: u64) -> f64 {
    ln_gamma(n as f64 + 1.0)
}
