//! Bosonic realizations of the su(1,1) discrete series.
//!
//! Four constructions are covered:
//!
//! * density-dependent Holstein-Primakoff on a single mode,
//!   `J+ = a† sqrt(2k+N)`, any `k > 0`;
//! * amplitude-squared, `J+ = a†²/2`, splitting the Fock space into the
//!   even/odd sectors `S_j = span{|2n+j>}` with `k = j/2 + 1/4`;
//! * two-mode, `J+ = a†b†`, on the fixed-difference sectors
//!   `|n, n+p>` / `|n+p, n>` with `k = (p+1)/2`;
//! * four-mode, `J+ = a†b† + c†d†`, whose lowest-weight vectors inside the
//!   product of two two-mode sectors are Clebsch-Gordan combinations.
//!
//! Sectors are one-dimensional ladders, so concrete states are kept as
//! sparse label -> amplitude maps; no multimode tensor is ever materialized.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::algebra::{ln_factorial, RepLabel, StateVector};
use crate::error::{Result, Su11Error};
use crate::squeezed::perelomov_state;

/// Which bosonic construction carries the representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Realization {
    /// Single mode, `J+ = a† sqrt(2k+N)`; the abstract index is the photon
    /// number.
    HolsteinPrimakoff { k: f64 },
    /// Single mode, `J+ = a†²/2`, sector `j` in {0, 1}: `n ↦ |2n+j>`.
    AmplitudeSquared { j: u8 },
    /// Two modes, `J+ = a†b†`; `minus` selects `|n+p, n>` over `|n, n+p>`.
    TwoMode { p: u32, minus: bool },
    /// Four modes, `J+ = a†b† + c†d†`, acting on the `P = p1+p2+2*level+1`
    /// block of the product of two lowered two-mode sectors.
    FourMode { p1: u32, p2: u32, level: u32 },
}

impl Realization {
    /// Bargmann index of the discrete series the realization carries.
    pub fn effective_k(&self) -> f64 {
        match *self {
            Realization::HolsteinPrimakoff { k } => k,
            Realization::AmplitudeSquared { j } => f64::from(j) / 2.0 + 0.25,
            Realization::TwoMode { p, .. } => (f64::from(p) + 1.0) / 2.0,
            Realization::FourMode { p1, p2, level } => {
                (f64::from(p1 + p2 + 2 * level + 1) + 1.0) / 2.0
            }
        }
    }

    /// Photon-number label of the `n`-th sector basis state, for the
    /// realizations whose basis states are single Fock products.
    pub fn label(&self, n: usize) -> Result<Vec<u32>> {
        let n = u32::try_from(n).expect("basis index fits in u32");
        match *self {
            Realization::HolsteinPrimakoff { .. } => Ok(vec![n]),
            Realization::AmplitudeSquared { j } => Ok(vec![2 * n + u32::from(j)]),
            Realization::TwoMode { p, minus: false } => Ok(vec![n, n + p]),
            Realization::TwoMode { p, minus: true } => Ok(vec![n + p, n]),
            Realization::FourMode { .. } => Err(Su11Error::InvalidArgument(
                "four-mode basis states are superpositions; use four_mode_basis".into(),
            )),
        }
    }
}

/// The index -> label bijection of a sector, bundled with its realization.
#[derive(Debug, Clone, Copy)]
pub struct ModeBasisMap {
    pub realization: Realization,
}

impl ModeBasisMap {
    pub fn new(realization: Realization) -> Self {
        Self { realization }
    }

    pub fn label(&self, n: usize) -> Result<Vec<u32>> {
        self.realization.label(n)
    }

    /// The `n`-th normalized four-mode ladder state of the block.
    pub fn four_mode_basis(&self, n: usize) -> Result<FourModeState> {
        match self.realization {
            Realization::FourMode { p1, p2, level } => {
                let mut v = cg_vacuum(p1, p2, level)?;
                for _ in 0..n {
                    v = v.apply_raising();
                    let norm = v.norm();
                    v = v.scaled(Complex64::new(1.0 / norm, 0.0));
                }
                Ok(v)
            }
            _ => Err(Su11Error::InvalidArgument(
                "four_mode_basis needs a four-mode realization".into(),
            )),
        }
    }
}

/// Concrete amplitudes with physical photon-number labels.
#[derive(Debug, Clone)]
pub struct LabeledTable {
    pub effective_k: f64,
    pub rows: Vec<(Vec<u32>, Complex64)>,
}

/// Express an abstract state concretely.  The abstract `k` must equal the
/// realization's `effective_k`.
pub fn embed_state(abstract_state: &StateVector, real: &Realization) -> Result<LabeledTable> {
    let k = real.effective_k();
    if (abstract_state.rep().k() - k).abs() > 1e-12 {
        return Err(Su11Error::RepMismatch {
            k_a: abstract_state.rep().k(),
            dim_a: abstract_state.rep().dim(),
            k_b: k,
            dim_b: abstract_state.rep().dim(),
        });
    }
    let rows = match *real {
        Realization::FourMode { .. } => {
            let map = ModeBasisMap::new(*real);
            let mut acc: BTreeMap<[u32; 4], Complex64> = BTreeMap::new();
            for n in 0..abstract_state.rep().dim() {
                let c = abstract_state.coeff(n);
                if c.norm_sqr() == 0.0 {
                    continue;
                }
                for (label, amp) in map.four_mode_basis(n)?.amps {
                    *acc.entry(label).or_insert(Complex64::ZERO) += c * amp;
                }
            }
            acc.into_iter()
                .filter(|(_, a)| a.norm() > 0.0)
                .map(|(l, a)| (l.to_vec(), a))
                .collect()
        }
        _ => (0..abstract_state.rep().dim())
            .filter(|&n| abstract_state.coeff(n).norm_sqr() > 0.0)
            .map(|n| Ok((real.label(n)?, abstract_state.coeff(n))))
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(LabeledTable {
        effective_k: k,
        rows,
    })
}

/// Largest deviation between the realization's concrete `J±`/`J0` matrix
/// elements at index `n` and the abstract discrete-series values with
/// `k = effective_k`.
pub fn matrix_element_check(real: &Realization, n: usize) -> Result<f64> {
    let k = real.effective_k();
    let nf = n as f64;
    let abstract_up = ((nf + 1.0) * (2.0 * k + nf)).sqrt();
    let abstract_down = (nf * (2.0 * k + nf - 1.0)).sqrt();
    let abstract_j0 = nf + k;
    let (up, down, j0) = match *real {
        Realization::HolsteinPrimakoff { k } => {
            // a† sqrt(2k+N) |n> and sqrt(2k+N) a |n>.
            let m = nf;
            (
                (m + 1.0).sqrt() * (2.0 * k + m).sqrt(),
                m.sqrt() * (2.0 * k + m - 1.0).sqrt(),
                k + m,
            )
        }
        Realization::AmplitudeSquared { j } => {
            let m = 2.0 * nf + f64::from(j);
            (
                0.5 * ((m + 1.0) * (m + 2.0)).sqrt(),
                0.5 * (m * (m - 1.0)).sqrt(),
                0.5 * (m + 0.5),
            )
        }
        Realization::TwoMode { p, .. } => {
            let pf = f64::from(p);
            (
                ((nf + 1.0) * (nf + pf + 1.0)).sqrt(),
                (nf * (nf + pf)).sqrt(),
                nf + (pf + 1.0) / 2.0,
            )
        }
        Realization::FourMode { .. } => {
            let map = ModeBasisMap::new(*real);
            let v_n = map.four_mode_basis(n)?;
            let raised = v_n.apply_raising();
            let up = raised.norm();
            let v_n1 = raised.scaled(Complex64::new(1.0 / up, 0.0));
            let lowered = v_n1.apply_lowering();
            // J- on the (n+1)-th state must come back along v_n with the
            // same element.
            let down_back = lowered.inner(&v_n);
            let j0_vec = v_n.apply_j0();
            let j0 = j0_vec.inner(&v_n).re;
            let mismatch = (up - abstract_up).abs().max((down_back.re - abstract_up).abs());
            let j0_err = (j0 - abstract_j0).abs();
            return Ok(mismatch.max(j0_err).max(down_back.im.abs()));
        }
    };
    Ok((up - abstract_up)
        .abs()
        .max((down - abstract_down).abs())
        .max((j0 - abstract_j0).abs()))
}

/// Coefficients of `D(alpha)||0>_j` over the amplitude-squared sector `j`:
/// the single-mode squeezed vacuum (j = 0) or squeezed one-photon state
/// (j = 1), labeled by physical photon number.
pub fn squeezed_vacuum_amp2(alpha: Complex64, j: u8, truncation: usize) -> Result<LabeledTable> {
    if j > 1 {
        return Err(Su11Error::InvalidArgument(format!(
            "sector j = {j} must be 0 or 1"
        )));
    }
    let real = Realization::AmplitudeSquared { j };
    let rep = RepLabel::new(real.effective_k(), truncation)?;
    let state = perelomov_state(alpha, rep)?;
    embed_state(&state, &real)
}

/// Sparse four-mode Fock state: photon labels `[n_a, n_b, n_c, n_d]` with
/// complex amplitudes.
#[derive(Debug, Clone, Default)]
pub struct FourModeState {
    pub amps: BTreeMap<[u32; 4], Complex64>,
}

impl FourModeState {
    pub fn norm_sq(&self) -> f64 {
        self.amps.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            amps: self
                .amps
                .iter()
                .map(|(&l, &a)| (l, a * factor))
                .collect(),
        }
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        // <other | self>: sum over shared labels.
        self.amps
            .iter()
            .filter_map(|(l, a)| other.amps.get(l).map(|b| b.conj() * a))
            .sum()
    }

    /// `J- = ab + cd`.
    pub fn apply_lowering(&self) -> Self {
        let mut out = BTreeMap::new();
        for (&[na, nb, nc, nd], &amp) in &self.amps {
            if na > 0 && nb > 0 {
                let elem = (f64::from(na) * f64::from(nb)).sqrt();
                *out.entry([na - 1, nb - 1, nc, nd]).or_insert(Complex64::ZERO) += amp * elem;
            }
            if nc > 0 && nd > 0 {
                let elem = (f64::from(nc) * f64::from(nd)).sqrt();
                *out.entry([na, nb, nc - 1, nd - 1]).or_insert(Complex64::ZERO) += amp * elem;
            }
        }
        Self { amps: out }
    }

    /// `J+ = a†b† + c†d†`.
    pub fn apply_raising(&self) -> Self {
        let mut out = BTreeMap::new();
        for (&[na, nb, nc, nd], &amp) in &self.amps {
            let elem = ((f64::from(na) + 1.0) * (f64::from(nb) + 1.0)).sqrt();
            *out.entry([na + 1, nb + 1, nc, nd]).or_insert(Complex64::ZERO) += amp * elem;
            let elem = ((f64::from(nc) + 1.0) * (f64::from(nd) + 1.0)).sqrt();
            *out.entry([na, nb, nc + 1, nd + 1]).or_insert(Complex64::ZERO) += amp * elem;
        }
        Self { amps: out }
    }

    /// `J0 = (N_a + N_b + N_c + N_d + 2)/2`.
    pub fn apply_j0(&self) -> Self {
        Self {
            amps: self
                .amps
                .iter()
                .map(|(&l, &a)| {
                    let total: u32 = l.iter().sum();
                    (l, a * ((f64::from(total) + 2.0) / 2.0))
                })
                .collect(),
        }
    }
}

fn ln_binomial(n: u64, k: u64) -> f64 {
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// Lowest-weight vector of the `P = p1 + p2 + 2n + 1` block inside
/// `R-_{p1} x R-_{p2}`:
///
/// ```text
/// |0,n,p1,p2> = binom(2n+p1+p2, n+p1)^{-1/2} sum_{n1=0}^{n} (-1)^{n1}
///               [binom(n,n1) binom(n+p1+p2, n1+p1)]^{1/2}
///               |n1+p1, n1> ⊗ |n-n1+p2, n-n1>
/// ```
///
/// normalized (Vandermonde sums the squared weights to the prefactor) and
/// annihilated by `ab + cd`.
pub fn cg_vacuum(p1: u32, p2: u32, n: u32) -> Result<FourModeState> {
    let mut amps = BTreeMap::new();
    let ln_pref = -0.5 * ln_binomial(u64::from(2 * n + p1 + p2), u64::from(n + p1));
    for n1 in 0..=n {
        let ln_w = 0.5
            * (ln_binomial(u64::from(n), u64::from(n1))
                + ln_binomial(u64::from(n + p1 + p2), u64::from(n1 + p1)));
        let sign = if n1 % 2 == 0 { 1.0 } else { -1.0 };
        amps.insert(
            [n1 + p1, n1, n - n1 + p2, n - n1],
            Complex64::new(sign * (ln_pref + ln_w).exp(), 0.0),
        );
    }
    Ok(FourModeState { amps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense;
    use approx::assert_relative_eq;
    use ndarray::Array2;

    #[test]
    fn effective_k_values() {
        assert_eq!(
            Realization::HolsteinPrimakoff { k: 0.7 }.effective_k(),
            0.7
        );
        assert_eq!(Realization::AmplitudeSquared { j: 0 }.effective_k(), 0.25);
        assert_eq!(Realization::AmplitudeSquared { j: 1 }.effective_k(), 0.75);
        assert_eq!(
            Realization::TwoMode { p: 3, minus: false }.effective_k(),
            2.0
        );
        assert_eq!(
            Realization::FourMode { p1: 0, p2: 0, level: 0 }.effective_k(),
            1.0
        );
        assert_eq!(
            Realization::FourMode { p1: 1, p2: 2, level: 1 }.effective_k(),
            3.5
        );
    }

    #[test]
    fn labels_follow_sector_definitions() {
        let hp = Realization::HolsteinPrimakoff { k: 0.5 };
        assert_eq!(hp.label(0).unwrap(), vec![0]);
        // |2n+j> with j = 1, n = 2.
        let amp2 = Realization::AmplitudeSquared { j: 1 };
        assert_eq!(amp2.label(2).unwrap(), vec![5]);
        // |n+p, n> on the minus sector: p = 3, n = 1 -> |4, 1>.
        let tm = Realization::TwoMode { p: 3, minus: true };
        assert_eq!(tm.label(1).unwrap(), vec![4, 1]);
        let tm = Realization::TwoMode { p: 3, minus: false };
        assert_eq!(tm.label(1).unwrap(), vec![1, 4]);
    }

    #[test]
    fn embed_lowest_weight_states() {
        let rep = RepLabel::new(0.5, 8).unwrap();
        let e0 = StateVector::lowest_weight(rep);
        let table = embed_state(&e0, &Realization::HolsteinPrimakoff { k: 0.5 }).unwrap();
        assert_eq!(table.rows, vec![(vec![0u32], Complex64::ONE)]);

        // k mismatch must be rejected.
        assert!(embed_state(&e0, &Realization::AmplitudeSquared { j: 0 }).is_err());
    }

    #[test]
    fn matrix_elements_match_discrete_series() {
        let reals = [
            Realization::HolsteinPrimakoff { k: 0.5 },
            Realization::HolsteinPrimakoff { k: 2.3 },
            Realization::AmplitudeSquared { j: 0 },
            Realization::AmplitudeSquared { j: 1 },
            Realization::TwoMode { p: 0, minus: false },
            Realization::TwoMode { p: 2, minus: true },
            Realization::TwoMode { p: 5, minus: false },
            Realization::FourMode { p1: 0, p2: 0, level: 0 },
            Realization::FourMode { p1: 1, p2: 2, level: 0 },
            Realization::FourMode { p1: 0, p2: 1, level: 2 },
        ];
        for real in reals {
            for n in 0..=30 {
                let res = matrix_element_check(&real, n).unwrap();
                assert!(res < 1e-13, "{real:?} at n = {n}: residual {res:.3e}");
            }
        }
    }

    #[test]
    fn amp2_element_identity_examples() {
        // j = 0, n = 1: (1/2) sqrt(2*1) = sqrt(1 * 1/2).
        let half_sqrt2 = 0.5 * 2.0f64.sqrt();
        assert_relative_eq!(half_sqrt2, (0.5f64).sqrt(), max_relative = 1e-15);
        // j = 1, n = 0: J- annihilates the sector bottom |1>.
        let real = Realization::AmplitudeSquared { j: 1 };
        assert!(matrix_element_check(&real, 0).unwrap() < 1e-15);
        // Two-mode p = 2: a†b† on |3,5> gives sqrt(4 * 6) = sqrt(24).
        let real = Realization::TwoMode { p: 2, minus: false };
        let up = (4.0f64 * 6.0).sqrt();
        assert_relative_eq!(up, 24.0f64.sqrt(), max_relative = 1e-15);
        assert!(matrix_element_check(&real, 3).unwrap() < 1e-14);
    }

    #[test]
    fn squeezed_vacuum_matches_textbook_form() {
        // <2n|S(alpha)|0> = e^{i n theta} tanh^n r sqrt((2n)!)/(2^n n! sqrt(cosh r)).
        let (r, theta) = (0.5, 0.0);
        let table = squeezed_vacuum_amp2(Complex64::from_polar(r, theta), 0, 40).unwrap();
        for (label, amp) in table.rows.iter().take(8) {
            let n = (label[0] / 2) as u64;
            let ln_mag = n as f64 * r.tanh().ln() + 0.5 * ln_factorial(2 * n)
                - n as f64 * 2.0f64.ln()
                - ln_factorial(n)
                - 0.5 * r.cosh().ln();
            let want = Complex64::from_polar(ln_mag.exp(), theta * n as f64);
            assert!(
                (amp - want).norm() < 1e-13,
                "label {label:?}: {amp} vs {want}"
            );
        }
    }

    #[test]
    fn squeezed_vacuum_matches_single_mode_matrix_exponential() {
        // Generator (alpha a†² - alpha* a²)/2 on a 160-dim single mode.
        let alpha = Complex64::from_polar(0.5, 0.0);
        let dim = 160;
        let mut gen = Array2::<Complex64>::zeros((dim, dim));
        for m in 0..dim - 2 {
            let elem = (((m + 1) * (m + 2)) as f64).sqrt();
            gen[[m + 2, m]] = 0.5 * alpha * elem;
            gen[[m, m + 2]] = -0.5 * alpha.conj() * elem;
        }
        let u = dense::expm(&gen);
        let table = squeezed_vacuum_amp2(alpha, 0, 60).unwrap();
        for (label, amp) in table.rows.iter().take(20) {
            let want = u[[label[0] as usize, 0]];
            assert!(
                (amp - want).norm() < 1e-10,
                "label {label:?}: {amp} vs {want}"
            );
        }
    }

    #[test]
    fn squeezed_vacuum_at_zero_is_vacuum() {
        let table = squeezed_vacuum_amp2(Complex64::ZERO, 0, 16).unwrap();
        assert_eq!(table.rows, vec![(vec![0u32], Complex64::ONE)]);
        let table = squeezed_vacuum_amp2(Complex64::ZERO, 1, 16).unwrap();
        assert_eq!(table.rows, vec![(vec![1u32], Complex64::ONE)]);
    }

    #[test]
    fn cg_vacuum_smallest_cases() {
        // n = 0: the single product |p1, 0> ⊗ |p2, 0>.
        let v = cg_vacuum(1, 2, 0).unwrap();
        assert_eq!(v.amps.len(), 1);
        assert_relative_eq!(v.norm(), 1.0, max_relative = 1e-14);
        assert!(v.amps.contains_key(&[1, 0, 2, 0]));

        // p1 = p2 = 0, n = 1: the antisymmetric pair
        // (|1,1,0,0> - |0,0,1,1>)/sqrt(2) up to a global sign, pinned by
        // (ab + cd) v = 0 in the two-dimensional candidate space.
        let v = cg_vacuum(0, 0, 1).unwrap();
        assert_eq!(v.amps.len(), 2);
        let a = v.amps[&[1, 1, 0, 0]];
        let b = v.amps[&[0, 0, 1, 1]];
        assert_relative_eq!(a.re.abs(), 1.0 / 2.0f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!((a + b).norm(), 0.0, epsilon = 1e-15);
        assert!(v.apply_lowering().norm() < 1e-15);
    }

    #[test]
    fn cg_vacuum_general_annihilation() {
        let v = cg_vacuum(1, 2, 2).unwrap();
        assert_relative_eq!(v.norm(), 1.0, max_relative = 1e-13);
        assert!(v.apply_lowering().norm() < 1e-13);
        for (p1, p2, n) in [(2, 2, 0), (0, 2, 1), (2, 0, 2), (1, 1, 2)] {
            let v = cg_vacuum(p1, p2, n).unwrap();
            assert_relative_eq!(v.norm(), 1.0, max_relative = 1e-13);
            assert!(
                v.apply_lowering().norm() < 1e-12,
                "p1={p1} p2={p2} n={n}"
            );
        }
    }

    #[test]
    fn cg_ladder_j0_eigenvalues_are_consistent() {
        let real = Realization::FourMode { p1: 1, p2: 0, level: 1 };
        let k = real.effective_k();
        let map = ModeBasisMap::new(real);
        for m in 0..6usize {
            let v = map.four_mode_basis(m).unwrap();
            let j0v = v.apply_j0();
            let got = j0v.inner(&v).re;
            assert_relative_eq!(got, m as f64 + k, max_relative = 1e-13);
            // And the ladder states are orthonormal along the way.
            assert_relative_eq!(v.norm(), 1.0, max_relative = 1e-12);
            if m > 0 {
                let prev = map.four_mode_basis(m - 1).unwrap();
                assert!(v.inner(&prev).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn amp2_action_never_mixes_sectors() {
        // Concrete single-mode operators on sparse photon-number states.
        type Mode = BTreeMap<u32, Complex64>;
        let jplus = |s: &Mode| -> Mode {
            s.iter()
                .map(|(&m, &a)| {
                    (m + 2, a * 0.5 * (((m + 1) * (m + 2)) as f64).sqrt())
                })
                .collect()
        };
        let jminus = |s: &Mode| -> Mode {
            s.iter()
                .filter(|&(&m, _)| m >= 2)
                .map(|(&m, &a)| (m - 2, a * 0.5 * ((m * (m - 1)) as f64).sqrt()))
                .collect()
        };
        let j0 = |s: &Mode| -> Mode {
            s.iter()
                .map(|(&m, &a)| (m, a * 0.5 * (m as f64 + 0.5)))
                .collect()
        };

        // All 3^6 ladder words of length <= 6 over {J+, J-, J0}.
        for j in [0u32, 1] {
            for start_n in [0u32, 1, 2] {
                let mut states: Vec<Mode> =
                    vec![BTreeMap::from([(2 * start_n + j, Complex64::ONE)])];
                for _ in 0..6 {
                    let mut next = Vec::new();
                    for s in &states {
                        next.push(jplus(s));
                        next.push(jminus(s));
                        next.push(j0(s));
                    }
                    for s in &next {
                        for (&label, amp) in s {
                            assert!(
                                label % 2 == j || amp.norm() == 0.0,
                                "sector {j} leaked to label {label}"
                            );
                        }
                    }
                    states = next;
                }
            }
        }
    }

    #[test]
    fn embed_perelomov_through_amp2_equals_direct_table() {
        let alpha = Complex64::from_polar(0.45, 1.2);
        let rep = RepLabel::new(0.25, 48).unwrap();
        let state = perelomov_state(alpha, rep).unwrap();
        let via_embed = embed_state(&state, &Realization::AmplitudeSquared { j: 0 }).unwrap();
        let direct = squeezed_vacuum_amp2(alpha, 0, 48).unwrap();
        assert_eq!(via_embed.rows.len(), direct.rows.len());
        for (a, b) in via_embed.rows.iter().zip(&direct.rows) {
            assert_eq!(a.0, b.0);
            assert!((a.1 - b.1).norm() < 1e-14);
        }
    }

    #[test]
    fn four_mode_embedding_is_unit_norm() {
        let real = Realization::FourMode { p1: 0, p2: 1, level: 0 };
        let rep = RepLabel::new(real.effective_k(), 24).unwrap();
        let state = perelomov_state(Complex64::from_polar(0.3, -0.5), rep).unwrap();
        let table = embed_state(&state, &real).unwrap();
        let norm_sq: f64 = table.rows.iter().map(|(_, a)| a.norm_sqr()).sum();
        assert!((norm_sq - 1.0).abs() < 1e-9, "norm^2 = {norm_sq}");
    }
}
