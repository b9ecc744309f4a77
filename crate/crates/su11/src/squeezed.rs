//! Ladder-operator squeezed states of su(1,1).
//!
//! The eigenvalue problem `(mu J- + nu J+) |beta> = beta |beta>` with
//! `|nu/mu| < 1` is solved three ways, all agreeing on the same state:
//!
//! * [`squeezed_state`] runs the three-term recursion of the eigenvalue
//!   equation directly in the original frame; it is the numerically robust
//!   constructor for any admissible `(mu, nu, beta)`.
//! * [`solve_recursion`] first removes the `J+` term with a displacement
//!   `D(alpha)`, `exp(2 i theta) tanh^2 r = -nu/mu`, and solves the resulting
//!   two-term recursion for the transformed state `||beta'>`; the full state
//!   is recovered by [`displaced_state`] as `D(alpha) ||beta'>`.
//! * [`exponential_state`] evaluates the closed product form
//!   `C_0 exp(f(N) J+) |k,0>` of the transformed state.
//!
//! When `beta' = exp(i theta) sinh(2r) (M + k)` the series cuts off at
//! degree `M` and the transformed state becomes a Laguerre polynomial in
//! `J+` acting on the vacuum ([`laguerre_state`]); the same cut-off states
//! are reachable from the displacement-operator coherent state through the
//! finite operator polynomial of [`bridge_operator_state`].

use num_complex::Complex64;

use crate::algebra::{
    apply_j0, apply_jminus, apply_jplus, bracket_linear, ln_bracket_linear, ln_factorial,
    RepLabel, StateVector,
};
use crate::error::{Result, Su11Error};

/// Hard ceiling on the relative tail estimate before a state constructor
/// reports its truncation as insufficient.
const TRUNC_TOL: f64 = 1e-7;

/// Default guard on `|alpha|` for the disentangled displacement product; the
/// factors stay separately convergent for any `r` but their conditioning
/// degrades with `r`, so larger displacements must be requested explicitly.
pub const ALPHA_GUARD: f64 = 1.5;

fn phase(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

fn normalize_angle(t: f64) -> f64 {
    // Wrap into (-pi, pi].
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut t = t.rem_euclid(two_pi);
    if t > std::f64::consts::PI {
        t -= two_pi;
    }
    t
}

/// Parameters of the eigenvalue problem, carried in both forms: the raw
/// `(mu, nu, beta)` of the eigenvalue equation and the transformed
/// `(r, theta, beta')` fixed by `exp(2 i theta) tanh^2 r = -nu/mu` and
/// `beta' = cosh^2 r beta / mu`.
///
/// The canonical root has `theta` in `(-pi/2, pi/2]`; [`Self::companion`]
/// yields the `-alpha` root, which solves the same `(mu, nu)` problem.
/// Derived quantities: `alpha = r exp(i theta)`,
/// `zeta = exp(i theta) tanh r` (displacement parameter) and
/// `xi = -exp(i theta) tanh 2r` (the limit of the coefficient ratio
/// `C_{n+1}/C_n`, with `|xi| < 1` for every finite `r`).
#[derive(Debug, Clone, Copy)]
pub struct SqueezeParams {
    mu: Complex64,
    nu: Complex64,
    beta: Complex64,
    r: f64,
    theta: f64,
    beta_prime: Complex64,
}

impl SqueezeParams {
    /// Construct from the eigenvalue-equation data.  Requires `mu != 0` and
    /// `|nu/mu| < 1` strictly.
    pub fn from_mu_nu_beta(mu: Complex64, nu: Complex64, beta: Complex64) -> Result<Self> {
        if mu.norm() == 0.0 {
            return Err(Su11Error::DegenerateMu);
        }
        let ratio = nu / mu;
        if !(ratio.norm() < 1.0) {
            return Err(Su11Error::NuRatioTooLarge {
                ratio: ratio.norm(),
            });
        }
        let (r, theta) = if ratio.norm() == 0.0 {
            (0.0, 0.0)
        } else {
            // exp(2 i theta) tanh^2 r = -nu/mu.  Flush a negative-zero
            // imaginary part so the argument lands on the +pi branch and
            // theta stays inside the canonical (-pi/2, pi/2].
            let target = -ratio;
            let target = Complex64::new(target.re, if target.im == 0.0 { 0.0 } else { target.im });
            (target.norm().sqrt().atanh(), 0.5 * target.arg())
        };
        let cosh_r = r.cosh();
        let beta_prime = cosh_r * cosh_r * beta / mu;
        Ok(Self {
            mu,
            nu,
            beta,
            r,
            theta,
            beta_prime,
        })
    }

    /// Construct from the transformed data, normalizing `mu = 1`.
    pub fn from_r_theta(r: f64, theta: f64, beta_prime: Complex64) -> Result<Self> {
        if !(r >= 0.0) || !r.is_finite() {
            return Err(Su11Error::InvalidArgument(format!(
                "r = {r} must be finite and >= 0"
            )));
        }
        let theta = normalize_angle(theta);
        let tanh_r = r.tanh();
        let nu = -phase(2.0 * theta) * tanh_r * tanh_r;
        let cosh_r = r.cosh();
        let beta = beta_prime / (cosh_r * cosh_r);
        Ok(Self {
            mu: Complex64::ONE,
            nu,
            beta,
            r,
            theta,
            beta_prime,
        })
    }

    /// The `-alpha` root of the same `(mu, nu)` condition.
    pub fn companion(&self) -> Self {
        Self {
            theta: normalize_angle(self.theta + std::f64::consts::PI),
            ..*self
        }
    }

    pub fn mu(&self) -> Complex64 {
        self.mu
    }

    pub fn nu(&self) -> Complex64 {
        self.nu
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn beta_prime(&self) -> Complex64 {
        self.beta_prime
    }

    pub fn alpha(&self) -> Complex64 {
        Complex64::from_polar(self.r, self.theta)
    }

    /// `zeta = exp(i theta) tanh r`.
    pub fn zeta(&self) -> Complex64 {
        phase(self.theta) * self.r.tanh()
    }

    /// `xi = -exp(i theta) tanh 2r`; `|xi| < 1` bounds the coefficient
    /// ratio of every transformed state.
    pub fn xi(&self) -> Complex64 {
        -phase(self.theta) * (2.0 * self.r).tanh()
    }

    /// The cut-off eigenvalue `beta' = exp(i theta) sinh(2r) (M + k)`.
    pub fn cutoff_beta_prime(&self, m: usize, k: f64) -> Complex64 {
        phase(self.theta) * (2.0 * self.r).sinh() * (k + m as f64)
    }

    /// Copy with `beta'` replaced (recomputes `beta` accordingly).
    pub fn with_beta_prime(&self, beta_prime: Complex64) -> Self {
        let cosh_r = self.r.cosh();
        Self {
            beta: beta_prime * self.mu / (cosh_r * cosh_r),
            beta_prime,
            ..*self
        }
    }

    /// Truncation suggestion for transformed-frame states: the coefficient
    /// ratio tends to `|xi| = tanh 2r`, plus a growth allowance while
    /// `|beta'|` dominates the recursion, plus `extra` for cut-off degrees.
    ///
    /// The ratio falls below one once `cosh(2r) sqrt(n(2k+n))` outgrows
    /// `|beta'| + sinh(2r)(k+n)`, which happens by `n ~ |beta'|` for every
    /// `r`; the geometric tail term covers the rest.
    pub fn suggested_dim(&self, extra: usize, tol: f64) -> usize {
        let xi = self.xi().norm();
        let tail = if xi > 1e-9 {
            (tol.ln() / xi.ln()).ceil() as usize
        } else {
            0
        };
        let growth = (3.0 * self.beta_prime.norm()).ceil() as usize + 40;
        (tail + growth + extra + 20).max(64)
    }

    /// Truncation suggestion for original-frame states: the eigenstate decays
    /// with ratio `sqrt(|nu/mu|) = tanh r`.
    pub fn suggested_dim_direct(&self, tol: f64) -> usize {
        let q = self.r.tanh();
        let tail = if q > 1e-9 {
            (tol.ln() / q.ln()).ceil() as usize
        } else {
            0
        };
        let growth = (3.0 * (self.beta / self.mu).norm()).ceil() as usize + 40;
        (tail + growth + 20).max(64)
    }
}

fn geometric_tail(coeffs: &[Complex64], xi_mag: f64) -> f64 {
    let dim = coeffs.len();
    let last = coeffs[dim - 1].norm();
    if last == 0.0 {
        return 0.0;
    }
    let prev = coeffs[dim - 2].norm();
    let ratio = if prev > 0.0 { last / prev } else { 0.0 };
    let q = xi_mag.max(ratio).clamp(0.0, 0.999);
    last * q / (1.0 - q)
}

fn finish_state(rep: RepLabel, coeffs: Vec<Complex64>, xi_mag: f64) -> Result<StateVector> {
    let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Su11Error::TruncationInsufficient(
            "state vanished in truncation".into(),
        ));
    }
    let tail = geometric_tail(&coeffs, xi_mag) / norm;
    if tail > TRUNC_TOL {
        return Err(Su11Error::TruncationInsufficient(format!(
            "relative tail estimate {tail:.3e} at dim {}",
            rep.dim()
        )));
    }
    let mut state = StateVector::new(rep, coeffs, 0.0)?.normalized();
    state.set_tail_bound(tail * tail);
    Ok(state)
}

/// Solve the transformed eigenvalue equation
/// `[exp(i theta) sinh(2r) J0 + cosh(2r) J-] ||b'> = beta' ||b'>`
/// by its two-term recursion
/// `cosh(2r) sqrt((n+1)(2k+n)) C_{n+1} = [beta' - exp(i theta) sinh(2r)(k+n)] C_n`,
/// normalized with `C_0` real positive.
pub fn solve_recursion(params: &SqueezeParams, rep: RepLabel) -> Result<StateVector> {
    let k = rep.k();
    let dim = rep.dim();
    let c2r = (2.0 * params.r).cosh();
    let s2r = (2.0 * params.r).sinh();
    let ph = phase(params.theta);
    let bp = params.beta_prime;

    let mut coeffs = vec![Complex64::ZERO; dim];
    coeffs[0] = Complex64::ONE;
    for n in 0..dim - 1 {
        let numer = bp - ph * s2r * (k + n as f64);
        let denom = c2r * (((n + 1) as f64) * (2.0 * k + n as f64)).sqrt();
        coeffs[n + 1] = numer * coeffs[n] / denom;
        if coeffs[n + 1].norm() > 1e250 {
            let scale = 1e-250;
            for c in coeffs[..=n + 1].iter_mut() {
                *c *= scale;
            }
        }
    }
    finish_state(rep, coeffs, params.xi().norm())
}

/// Evaluate the transformed state through its exponential product form
/// `C_0 exp(f(N) J+) |k,0>` with
/// `f(N) = (beta' - exp(i theta) sinh(2r)(k+N-1)) / (cosh(2r)(2k+N-1))`,
/// accumulating magnitudes in the log domain.  Same state as
/// [`solve_recursion`], computed along a different arithmetic path.
pub fn exponential_state(params: &SqueezeParams, rep: RepLabel) -> Result<StateVector> {
    let k = rep.k();
    let dim = rep.dim();
    let c2r = (2.0 * params.r).cosh();
    let s2r = (2.0 * params.r).sinh();
    let ph = phase(params.theta);
    let bp = params.beta_prime;

    // C_n = prod_{j=1..n} f(j) * sqrt([[2k+n-1]]! / n!), tracked as
    // (log magnitude, phase) to stay overflow-free.
    let mut ln_mags = vec![f64::NEG_INFINITY; dim];
    let mut phases = vec![0.0f64; dim];
    ln_mags[0] = 0.0;
    let mut lf = 0.0f64;
    let mut pf = 0.0f64;
    let mut cut = false;
    for n in 1..dim {
        if cut {
            break;
        }
        let j = n as f64;
        let f_j = (bp - ph * s2r * (k + j - 1.0)) / (c2r * (2.0 * k + j - 1.0));
        if f_j == Complex64::ZERO {
            cut = true;
            continue;
        }
        lf += f_j.norm().ln();
        pf += f_j.arg();
        let ln_pref = 0.5 * (ln_bracket_linear(2.0 * k - 1.0, n as u64) - ln_factorial(n as u64));
        ln_mags[n] = lf + ln_pref;
        phases[n] = pf;
    }
    let max_ln = ln_mags.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let coeffs: Vec<Complex64> = ln_mags
        .iter()
        .zip(&phases)
        .map(|(&lm, &p)| {
            if lm.is_finite() {
                Complex64::from_polar((lm - max_ln).exp(), p)
            } else {
                Complex64::ZERO
            }
        })
        .collect();
    finish_state(rep, coeffs, params.xi().norm())
}

/// The Laguerre cut-off state at degree `M`:
/// `C_n = (-xi)^n M! / (sqrt(n! [[2k+n-1]]!) (M-n)!) C_0` for `n <= M` and
/// exactly zero beyond.  The `beta'` field of `params` is overridden by the
/// cut-off value `exp(i theta) sinh(2r) (M + k)`.
pub fn laguerre_state(m: usize, params: &SqueezeParams, rep: RepLabel) -> Result<StateVector> {
    let k = rep.k();
    let dim = rep.dim();
    if m >= dim {
        return Err(Su11Error::CutoffTooLarge { m, dim });
    }
    // -xi = exp(i theta) tanh 2r.
    let minus_xi_mag = (2.0 * params.r).tanh();
    let mut coeffs = vec![Complex64::ZERO; dim];
    for (n, c) in coeffs.iter_mut().enumerate().take(m + 1) {
        if n > 0 && minus_xi_mag == 0.0 {
            break;
        }
        let ln_mag = n as f64 * if n > 0 { minus_xi_mag.ln() } else { 0.0 }
            + ln_factorial(m as u64)
            - ln_factorial((m - n) as u64)
            - 0.5 * (ln_factorial(n as u64) + ln_bracket_linear(2.0 * k - 1.0, n as u64));
        *c = Complex64::from_polar(ln_mag.exp(), n as f64 * params.theta);
    }
    let state = StateVector::new(rep, coeffs, 0.0)?.normalized();
    Ok(state)
}

/// The displacement-operator coherent state `D(alpha)|k,0>` in its
/// normal-ordered closed form
/// `(1-|zeta|^2)^k exp(zeta J+) |k,0>`, `zeta = exp(i theta) tanh r`,
/// which converges for every finite `alpha`.  The recorded tail bound is the
/// analytically known mass beyond the truncation.
pub fn perelomov_state(alpha: Complex64, rep: RepLabel) -> Result<StateVector> {
    let k = rep.k();
    let dim = rep.dim();
    let r = alpha.norm();
    let theta = alpha.arg();
    let zeta_mag = r.tanh();
    let ln_pref = k * (1.0 - zeta_mag * zeta_mag).ln();
    let mut coeffs = vec![Complex64::ZERO; dim];
    let mut mass = 0.0;
    for (n, c) in coeffs.iter_mut().enumerate() {
        if n > 0 && zeta_mag == 0.0 {
            break;
        }
        let ln_mag = ln_pref
            + n as f64 * if n > 0 { zeta_mag.ln() } else { 0.0 }
            + 0.5 * (ln_bracket_linear(2.0 * k - 1.0, n as u64) - ln_factorial(n as u64));
        *c = Complex64::from_polar(ln_mag.exp(), n as f64 * theta);
        mass += c.norm_sqr();
    }
    // The infinite sum has unit norm, so the discarded mass is known exactly.
    let tail = (1.0 - mass).max(0.0);
    let mut state = StateVector::new(rep, coeffs, 0.0)?.normalized();
    state.set_tail_bound(tail);
    Ok(state)
}

/// Truncation at which the analytic Perelomov coefficients, and the edge row
/// of the eigenvalue identity they satisfy, drop below `tol`.
pub fn perelomov_suggested_dim(alpha: Complex64, k: f64, tol: f64) -> usize {
    let zeta_mag = alpha.norm().tanh();
    let mut dim = 64usize;
    loop {
        let n = (dim - 1) as u64;
        let ln_c = k * (1.0 - zeta_mag * zeta_mag).ln()
            + n as f64 * if zeta_mag > 0.0 { zeta_mag.ln() } else { f64::NEG_INFINITY }
            + 0.5 * (ln_bracket_linear(2.0 * k - 1.0, n) - ln_factorial(n));
        // Edge-row contribution scales like the matrix element sqrt(dim(2k+dim)).
        let edge = ln_c + 0.5 * ((dim as f64) * (2.0 * k + dim as f64)).ln();
        if edge < tol.ln() || dim > 1 << 22 {
            return dim;
        }
        dim = dim * 3 / 2;
    }
}

/// Apply `exp(coef * J-) v` by its power series.  `J-` is nilpotent on the
/// truncated space, so the series is finite; it is cut earlier once the
/// terms stop contributing.
fn exp_jminus_apply(coef: Complex64, v: &StateVector) -> Result<StateVector> {
    let mut acc = v.clone();
    let mut term = v.clone();
    let mut small = 0;
    for m in 1..=v.rep().dim() {
        term = apply_jminus(&term).scaled(coef / m as f64);
        let t = term.norm();
        acc = acc.add(&term)?;
        if t <= 1e-20 * acc.norm() {
            small += 1;
            if small >= 2 {
                break;
            }
        } else {
            small = 0;
        }
    }
    Ok(acc)
}

/// Apply `exp(coef * J+) v` by its power series (finite on the truncation;
/// mass pushed past the edge lands in the tail bound).
fn exp_jplus_apply(coef: Complex64, v: &StateVector) -> Result<StateVector> {
    let mut acc = v.clone();
    let mut term = v.clone();
    let mut small = 0;
    for m in 1..=v.rep().dim() {
        term = apply_jplus(&term).scaled(coef / m as f64);
        let t = term.norm();
        acc = acc.add(&term)?;
        if t <= 1e-20 * acc.norm() {
            small += 1;
            if small >= 2 {
                break;
            }
        } else {
            small = 0;
        }
    }
    Ok(acc)
}

/// Apply the displacement operator `D(alpha) = exp(alpha J+ - conj(alpha) J-)`
/// through its disentangled product
/// `exp(zeta J+) exp(-ln(cosh r) 2 J0) exp(-conj(zeta) J-)`,
/// whose factors are separately convergent on the truncated space.
///
/// Colinear displacements form a one-parameter subgroup,
/// `D(alpha) = D(alpha/s)^s`, and the product is applied in substeps sized
/// so that `|zeta_s|` times the largest band element stays of order one.
/// A single full-size step is exact in exact arithmetic but loses all
/// precision in the upper components once the state's tail is long: the
/// factors individually pump those components up by an exponential factor
/// that only cancels between the factors.
pub fn apply_displacement(alpha: Complex64, v: &StateVector) -> Result<StateVector> {
    let r = alpha.norm();
    if r == 0.0 {
        return Ok(v.clone());
    }
    let theta = alpha.arg();
    let k = v.rep().k();
    let band = v.rep().dim() as f64 + 2.0 * k;
    let steps = ((r.tanh() * band) / 1.5).ceil().max(1.0) as usize;
    let r_s = r / steps as f64;
    let zeta_s = phase(theta) * r_s.tanh();
    let ln_sech2_s = -2.0 * r_s.cosh().ln();

    let mut w = v.clone();
    for _ in 0..steps {
        w = exp_jminus_apply(-zeta_s.conj(), &w)?;
        let coeffs: Vec<Complex64> = w
            .coeffs()
            .iter()
            .enumerate()
            .map(|(n, c)| c * (ln_sech2_s * (n as f64 + k)).exp())
            .collect();
        w = StateVector::new(w.rep(), coeffs, w.tail_bound())?;
        w = exp_jplus_apply(zeta_s, &w)?;
    }
    Ok(w)
}

/// The full squeezed state `|beta> = D(alpha) ||beta'>`, normalized.
///
/// Uses the disentangled displacement on the [`solve_recursion`] output.
/// Guarded to `|alpha| <= guard` (default [`ALPHA_GUARD`]); see
/// [`squeezed_state`] for the unrestricted direct construction.
pub fn displaced_state(params: &SqueezeParams, rep: RepLabel) -> Result<StateVector> {
    displaced_state_with_guard(params, rep, ALPHA_GUARD)
}

/// [`displaced_state`] with an explicit `|alpha|` guard.
pub fn displaced_state_with_guard(
    params: &SqueezeParams,
    rep: RepLabel,
    guard: f64,
) -> Result<StateVector> {
    let alpha = params.alpha();
    if alpha.norm() > guard {
        return Err(Su11Error::AlphaOutOfRange {
            alpha: alpha.norm(),
            guard,
        });
    }
    let transformed = solve_recursion(params, rep)?;
    let displaced = apply_displacement(alpha, &transformed)?;
    finish_state(rep, displaced.coeffs().to_vec(), params.r.tanh())
}

/// Solve `(mu J- + nu J+) |beta> = beta |beta>` by its three-term recursion
/// in the original frame:
/// `mu sqrt((n+1)(2k+n)) C_{n+1} = beta C_n - nu sqrt(n(2k+n-1)) C_{n-1}`.
///
/// Both characteristic solutions of the recursion decay with the same ratio
/// `sqrt(|nu/mu|) = tanh r`, so the forward sweep is numerically neutral and
/// this constructor is reliable at any admissible squeezing.
pub fn squeezed_state(params: &SqueezeParams, rep: RepLabel) -> Result<StateVector> {
    let k = rep.k();
    let dim = rep.dim();
    let (mu, nu, beta) = (params.mu, params.nu, params.beta);
    let mut coeffs = vec![Complex64::ZERO; dim];
    coeffs[0] = Complex64::ONE;
    for n in 0..dim - 1 {
        let up = mu * (((n + 1) as f64) * (2.0 * k + n as f64)).sqrt();
        let mut rhs = beta * coeffs[n];
        if n > 0 {
            rhs -= nu * ((n as f64) * (2.0 * k + n as f64 - 1.0)).sqrt() * coeffs[n - 1];
        }
        coeffs[n + 1] = rhs / up;
        if coeffs[n + 1].norm() > 1e250 {
            let scale = 1e-250;
            for c in coeffs[..=n + 1].iter_mut() {
                *c *= scale;
            }
        }
    }
    finish_state(rep, coeffs, params.r.tanh())
}

/// Build with `build` at `rep` and at twice the truncation, and require the
/// two results to agree componentwise below `tol` after phase alignment.
/// Returns the refined state.
pub fn with_refinement(
    build: impl Fn(RepLabel) -> Result<StateVector>,
    rep: RepLabel,
    tol: f64,
) -> Result<StateVector> {
    let coarse = build(rep)?;
    let fine = build(rep.doubled())?;
    let drift = phase_aligned_distance(&coarse.resized(fine.rep().dim())?, &fine)?;
    if drift > tol {
        return Err(Su11Error::TruncationInsufficient(format!(
            "doubling dim {} moved coefficients by {drift:.3e}",
            rep.dim()
        )));
    }
    Ok(fine)
}

/// The blessed constructor for a ladder eigenstate from `(mu, nu, beta)` on
/// the index-`k` representation: picks a truncation from the decay rate,
/// builds the state directly in the original frame, and certifies it by
/// re-running at twice the dimension.
pub fn ladder_eigenstate(params: &SqueezeParams, k: f64) -> Result<StateVector> {
    let dim = params.suggested_dim_direct(1e-13);
    let rep = RepLabel::new(k, dim)?;
    with_refinement(|r| squeezed_state(params, r), rep, 1e-10)
}

/// Verify that `D(alpha)|k,0>` is the ladder eigenstate of
/// `J- - exp(2 i theta) tanh^2 r J+` with eigenvalue
/// `beta = 2 exp(i theta) k tanh r`.
///
/// Returns the formula eigenvalue, the measured Rayleigh quotient and the
/// residual norm (all rows of the truncation included, so the residual
/// shrinks as `dim` grows).
pub fn perelomov_eigen_check(alpha: Complex64, rep: RepLabel) -> Result<EigenCheck> {
    let r = alpha.norm();
    let theta = alpha.arg();
    let v = perelomov_state(alpha, rep)?;
    let t2 = r.tanh() * r.tanh();
    let op_v = apply_jminus(&v)
        .sub(&apply_jplus(&v).scaled(phase(2.0 * theta) * t2))?;
    let formula = 2.0 * phase(theta) * rep.k() * r.tanh();
    let measured = crate::algebra::inner_product(&v, &op_v)?;
    let residual = op_v.sub(&v.scaled(formula))?.norm();
    Ok(EigenCheck {
        eigenvalue: formula,
        rayleigh: measured,
        residual,
    })
}

/// Result of [`perelomov_eigen_check`].
#[derive(Debug, Clone, Copy)]
pub struct EigenCheck {
    /// `2 exp(i theta) k tanh r`.
    pub eigenvalue: Complex64,
    /// `<v| (J- - exp(2 i theta) tanh^2 r J+) |v>` as computed.
    pub rayleigh: Complex64,
    /// Norm of the eigenvalue-equation residual at the formula eigenvalue.
    pub residual: f64,
}

/// The operator polynomial `E(M, alpha)` applied to the Perelomov state:
/// `sum_{n=0}^{M} (-xi)^n / [[2k+n-1]]! binom(M, n) G^n  D(alpha)|k,0>`
/// with `G = cosh^2 r J+ + sinh^2 r exp(-2 i theta) J- - exp(-i theta) sinh 2r J0`.
///
/// Equals [`displaced_state`] at the cut-off `beta'` up to a global phase.
pub fn bridge_operator_state(m: usize, alpha: Complex64, rep: RepLabel) -> Result<StateVector> {
    let k = rep.k();
    let r = alpha.norm();
    let theta = alpha.arg();
    let pad = rep.padded(m + 2);
    let p = perelomov_state(alpha, pad)?;

    let ch2 = r.cosh() * r.cosh();
    let sh2 = r.sinh() * r.sinh();
    let s2r = (2.0 * r).sinh();
    let g = |v: &StateVector| -> Result<StateVector> {
        apply_jplus(v)
            .scaled(Complex64::new(ch2, 0.0))
            .add(&apply_jminus(v).scaled(phase(-2.0 * theta) * sh2))?
            .sub(&apply_j0(v).scaled(phase(-theta) * s2r))
    };

    let minus_xi = phase(theta) * (2.0 * r).tanh();
    let mut acc = p.clone();
    let mut gn = p;
    let mut coef = Complex64::ONE;
    for n in 1..=m {
        gn = g(&gn)?;
        coef *= minus_xi;
        let weight = binomial(m, n) / bracket_linear(2.0 * k - 1.0, n as u64);
        acc = acc.add(&gn.scaled(coef * weight))?;
    }
    let truncated = acc.resized(rep.dim())?;
    finish_state(rep, truncated.coeffs().to_vec(), (2.0 * r).tanh())
}

fn binomial(n: usize, k: usize) -> f64 {
    (ln_factorial(n as u64) - ln_factorial(k as u64) - ln_factorial((n - k) as u64)).exp()
}

/// Variances and covariance of `J1 = (J+ + J-)/2`, `J2 = (J+ - J-)/(2i)`,
/// the mean of `J0`, and the Schroedinger-Robertson gap
/// `Var(J1) Var(J2) - Cov^2 - <J0>^2/4`.
///
/// The gap is non-negative for every state and vanishes on ladder
/// eigenstates.  The input must be normalized.
pub fn uncertainty_report(state: &StateVector) -> Result<UncertaintyReport> {
    state.check_normalized()?;
    // Work two rows above the truncation so no matrix element is lost.
    let v = state.resized(state.rep().dim() + 2)?;
    let w_p = apply_jplus(&v);
    let w_m = apply_jminus(&v);
    let m_p = crate::algebra::inner_product(&v, &w_p)?;
    let j1_mean = m_p.re;
    let j2_mean = m_p.im;

    let half = Complex64::new(0.5, 0.0);
    let minus_half_i = Complex64::new(0.0, -0.5);
    let j1v = w_p.add(&w_m)?.scaled(half);
    let j2v = w_p.sub(&w_m)?.scaled(minus_half_i);
    let e_j1sq = j1v.norm_sq();
    let e_j2sq = j2v.norm_sq();
    let sym = crate::algebra::inner_product(&j1v, &j2v)?.re;

    let j0_mean = crate::algebra::inner_product(&v, &apply_j0(&v))?.re;
    let var1 = e_j1sq - j1_mean * j1_mean;
    let var2 = e_j2sq - j2_mean * j2_mean;
    let cov = sym - j1_mean * j2_mean;
    Ok(UncertaintyReport {
        var1,
        var2,
        cov,
        j0_mean,
        sr_gap: var1 * var2 - cov * cov - 0.25 * j0_mean * j0_mean,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct UncertaintyReport {
    pub var1: f64,
    pub var2: f64,
    pub cov: f64,
    pub j0_mean: f64,
    pub sr_gap: f64,
}

/// Relative residual of the original eigenvalue equation on `state`,
/// projected on the interior rows (the two rows at the truncation edge see
/// amplitudes the truncation discarded and are excluded).
pub fn eigen_residual(params: &SqueezeParams, state: &StateVector) -> Result<f64> {
    let dim = state.rep().dim();
    let v = state.resized(dim + 2)?;
    let w = apply_jminus(&v)
        .scaled(params.mu)
        .add(&apply_jplus(&v).scaled(params.nu))?
        .sub(&v.scaled(params.beta))?;
    let interior: f64 = (0..dim.saturating_sub(1))
        .map(|n| w.coeff(n).norm_sqr())
        .sum();
    Ok(interior.sqrt() / state.norm())
}

/// Worst relative violation of the transformed-frame recursion
/// `cosh(2r) sqrt((n+1)(2k+n)) C_{n+1} = [beta' - e^{i theta} sinh(2r)(k+n)] C_n`
/// over the interior rows.
pub fn recursion_residual(params: &SqueezeParams, state: &StateVector) -> f64 {
    let rep = state.rep();
    let k = rep.k();
    let c2r = (2.0 * params.r).cosh();
    let s2r = (2.0 * params.r).sinh();
    let ph = phase(params.theta);
    let norm = state.norm();
    let mut worst = 0.0f64;
    for n in 0..rep.dim() - 1 {
        let lhs = c2r * (((n + 1) as f64) * (2.0 * k + n as f64)).sqrt() * state.coeff(n + 1);
        let rhs = (params.beta_prime - ph * s2r * (k + n as f64)) * state.coeff(n);
        let scale = c2r * (((n + 1) as f64) * (2.0 * k + n as f64)).sqrt()
            + params.beta_prime.norm()
            + s2r * (k + n as f64);
        worst = worst.max((lhs - rhs).norm() / (scale * norm));
    }
    worst
}

/// Largest componentwise distance between `a` and `b` after aligning the
/// global phase of `a` on the largest-magnitude coefficient of `b`.
pub fn phase_aligned_distance(a: &StateVector, b: &StateVector) -> Result<f64> {
    if a.rep().dim() != b.rep().dim() || (a.rep().k() - b.rep().k()).abs() > 1e-12 {
        return Err(Su11Error::RepMismatch {
            k_a: a.rep().k(),
            dim_a: a.rep().dim(),
            k_b: b.rep().k(),
            dim_b: b.rep().dim(),
        });
    }
    let pivot = (0..b.rep().dim())
        .max_by(|&i, &j| {
            b.coeff(i)
                .norm()
                .partial_cmp(&b.coeff(j).norm())
                .unwrap()
        })
        .unwrap();
    let (ca, cb) = (a.coeff(pivot), b.coeff(pivot));
    let rot = if ca.norm() > 0.0 && cb.norm() > 0.0 {
        (cb / ca) / (cb / ca).norm()
    } else {
        Complex64::ONE
    };
    let mut worst = 0.0f64;
    for n in 0..a.rep().dim() {
        worst = worst.max((a.coeff(n) * rot - b.coeff(n)).norm());
    }
    Ok(worst)
}
