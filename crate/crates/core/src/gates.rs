//! Fourier gate, two-mode Kerr evolution and the calibrated SUM gate.
//!
//! Mode 2 of the SUM gate is encoded in oscillator phase states
//! `|θ_s⟩ = d^{-1/2} Σ_n exp(σ·2πi·n·s/d)|n⟩`. The Kerr Hamiltonian
//! `χN̂₁N̂₂` is diagonal in the two-mode number basis, so on an input
//! `|s₁⟩ ⊗ |θ_{s₂}⟩` it multiplies mode 2 by `exp(-iχt·s₁·n₂)`, which moves
//! the phase label by `-σ·s₁·χt·d/2π`. With `σ = -1` a SUM needs
//! `χt = 2π/d`; the calibration below finds this rather than assuming it.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::dim::{BasisTag, QuditDim};
use crate::error::{Error, Result};
use crate::number_rep::{clock_matrix, shift_matrix};
use crate::tensor::{dft_matrix, kron, ComplexMatrix, DftSign, StateVector};

/// Phase-state sign used throughout this module. With `-1` the phase states
/// are eigenvectors of `X_d` with eigenvalue `ω^s`, matching the number
/// representation's `θ̂_z`.
pub const PHASE_CONVENTION: DftSign = DftSign::Minus;

/// Fidelity floor a SUM calibration must reach on every basis input.
pub const SUM_FIDELITY_FLOOR: f64 = 1.0 - 1e-9;

/// Phase state `|θ_s⟩` in number-basis coordinates.
pub fn phase_state(d: QuditDim, s: usize, sign: DftSign) -> StateVector {
    let f = dft_matrix(d, sign);
    StateVector::new(f.column(s % d.get()), BasisTag::NumberBasis)
        .expect("DFT columns are normalized")
}

/// Unitary taking `|n⟩` to `|θ_n⟩` under [`PHASE_CONVENTION`]; the
/// Hadamard gate at `d = 2`.
pub fn fourier_gate(d: QuditDim) -> ComplexMatrix {
    dft_matrix(d, PHASE_CONVENTION)
}

/// How conjugation by the Fourier gate exchanges clock and shift.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FourierConjugation {
    /// `‖F†XF - Z‖_max`.
    pub shift_to_clock: f64,
    /// `‖F†ZF - X‖_max`.
    pub clock_to_shift: f64,
    /// `‖F†ZF - X†‖_max`.
    pub clock_to_inverse_shift: f64,
}

pub fn fourier_conjugation(d: QuditDim) -> FourierConjugation {
    let f = fourier_gate(d);
    let fd = f.adjoint();
    let x = shift_matrix(d);
    let z = clock_matrix(d);
    let conj = |m: &ComplexMatrix| &(&fd * m) * &f;
    let zc = conj(&z);
    FourierConjugation {
        shift_to_clock: conj(&x).max_abs_diff(&z),
        clock_to_shift: zc.max_abs_diff(&x),
        clock_to_inverse_shift: zc.max_abs_diff(&x.adjoint()),
    }
}

/// Two-mode pure state. Amplitudes are always in the two-mode number basis,
/// index `n₁·d + n₂`; `encodings` records how each mode carries its label.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoModeState {
    d: QuditDim,
    amplitudes: Vec<Complex64>,
    encodings: (BasisTag, BasisTag),
}

impl TwoModeState {
    pub fn new(
        d: QuditDim,
        amplitudes: Vec<Complex64>,
        encodings: (BasisTag, BasisTag),
    ) -> Result<Self> {
        let n = d.get();
        if amplitudes.len() != n * n {
            return Err(Error::DimMismatch {
                expected: format!("{} amplitudes", n * n),
                found: amplitudes.len().to_string(),
            });
        }
        // Validates finiteness and normalization.
        StateVector::new(amplitudes.clone(), BasisTag::NumberBasis)?;
        Ok(Self {
            d,
            amplitudes,
            encodings,
        })
    }

    /// `first ⊗ second`, both given in number-basis coordinates.
    pub fn product(
        first: &StateVector,
        second: &StateVector,
        encodings: (BasisTag, BasisTag),
    ) -> Result<Self> {
        if first.dim() != second.dim() {
            return Err(Error::DimMismatch {
                expected: first.dim().to_string(),
                found: second.dim().to_string(),
            });
        }
        let d = QuditDim::new(first.dim())?;
        let amplitudes = first
            .amplitudes()
            .iter()
            .flat_map(|a| second.amplitudes().iter().map(move |b| a * b))
            .collect();
        Self::new(d, amplitudes, encodings)
    }

    /// `|s₁⟩ ⊗ |θ_{s₂}⟩`, the SUM gate input.
    pub fn hybrid_basis_input(d: QuditDim, s1: usize, s2: usize, sign: DftSign) -> Self {
        let first = StateVector::basis_state(d.get(), s1 % d.get(), BasisTag::NumberBasis)
            .expect("label reduced mod d");
        let second = phase_state(d, s2, sign);
        Self::product(&first, &second, (BasisTag::NumberBasis, BasisTag::PhaseBasis))
            .expect("same dimension")
    }

    pub fn dim(&self) -> QuditDim {
        self.d
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn encodings(&self) -> (BasisTag, BasisTag) {
        self.encodings
    }

    pub fn evolved(&self, op: &ComplexMatrix) -> Result<Self> {
        if op.cols() != self.amplitudes.len() {
            return Err(Error::DimMismatch {
                expected: format!("{} operator columns", self.amplitudes.len()),
                found: op.cols().to_string(),
            });
        }
        Self::new(self.d, op.apply(&self.amplitudes), self.encodings)
    }

    /// Elementwise multiplication by a diagonal operator.
    pub fn evolved_diagonal(&self, phases: &[Complex64]) -> Result<Self> {
        if phases.len() != self.amplitudes.len() {
            return Err(Error::DimMismatch {
                expected: self.amplitudes.len().to_string(),
                found: phases.len().to_string(),
            });
        }
        let amplitudes = self.amplitudes.iter().zip(phases).map(|(a, p)| a * p).collect();
        Self::new(self.d, amplitudes, self.encodings)
    }

    /// Probability that mode 1 is found in number state `n`.
    pub fn mode1_number_probability(&self, n: usize) -> f64 {
        let d = self.d.get();
        self.amplitudes[n * d..(n + 1) * d].iter().map(|z| z.norm_sqr()).sum()
    }

    /// Probability that a projective measurement of mode 2 onto `target`
    /// (number-basis coordinates) succeeds.
    pub fn mode2_overlap_probability(&self, target: &StateVector) -> f64 {
        let d = self.d.get();
        (0..d)
            .map(|n1| {
                self.amplitudes[n1 * d..(n1 + 1) * d]
                    .iter()
                    .zip(target.amplitudes())
                    .map(|(a, t)| t.conj() * a)
                    .sum::<Complex64>()
                    .norm_sqr()
            })
            .sum()
    }
}

/// Diagonal of `exp(-iχt N̂₁N̂₂)`, index `n₁·d + n₂`.
pub fn kerr_phases(d: QuditDim, chi: f64, t: f64) -> Result<Vec<Complex64>> {
    if !chi.is_finite() || !t.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "chi and t must be finite (chi = {chi}, t = {t})"
        )));
    }
    let n = d.get();
    let chi_t = chi * t;
    Ok((0..n * n)
        .map(|idx| {
            let (n1, n2) = (idx / n, idx % n);
            Complex64::from_polar(1.0, -chi_t * (n1 * n2) as f64)
        })
        .collect())
}

/// Dense `exp(-iχt N̂₁N̂₂)` on the `d²`-dimensional two-mode space.
pub fn kerr_evolution(d: QuditDim, chi: f64, t: f64) -> Result<ComplexMatrix> {
    let size = d.get() * d.get();
    if size > crate::MAX_DENSE_DIM {
        return Err(Error::DimensionOverflow {
            rows: size,
            cols: size,
            max: crate::MAX_DENSE_DIM,
        });
    }
    Ok(ComplexMatrix::from_diagonal(&kerr_phases(d, chi, t)?))
}

/// One point of the calibration search.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CandidateResult {
    pub chi_t: f64,
    pub t: f64,
    #[serde(serialize_with = "serialize_sign")]
    pub sign: DftSign,
    pub worst_fidelity: f64,
}

fn serialize_sign<S: Serializer>(sign: &DftSign, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_i32(sign.value())
}

/// Calibrated SUM gate: coupling, gate time and phase-state sign.
#[derive(Clone, Debug, PartialEq)]
pub struct SumCalibration {
    pub d: QuditDim,
    pub chi: f64,
    pub t_star: f64,
    pub sign: DftSign,
    /// Worst-case fidelity over all `d²` basis inputs.
    pub fidelity: f64,
    /// Every candidate examined, in search order.
    pub candidates: Vec<CandidateResult>,
}

impl SumCalibration {
    pub fn chi_t(&self) -> f64 {
        self.chi * self.t_star
    }
}

#[derive(Serialize)]
struct SumCalibrationRecord {
    d: usize,
    chi: f64,
    t_star: f64,
    sign: i32,
    fidelity: f64,
}

impl Serialize for SumCalibration {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SumCalibrationRecord {
            d: self.d.get(),
            chi: self.chi,
            t_star: self.t_star,
            sign: self.sign.value(),
            fidelity: self.fidelity,
        }
        .serialize(s)
    }
}

/// Fidelities `|⟨θ_{s₁+s₂}| D_{s₁} |θ_{s₂}⟩|²` for every `(s₁, s₂)`, where
/// `D_{s₁} = diag(exp(-iχt·s₁·n))` is the Kerr action on mode 2 given
/// mode 1 in `|s₁⟩`. Row-major in `(s₁, s₂)`.
pub fn sum_fidelity_table(d: QuditDim, chi_t: f64, sign: DftSign) -> Vec<f64> {
    let n = d.get();
    let f = dft_matrix(d, sign);
    let mut out = Vec::with_capacity(n * n);
    for s1 in 0..n {
        let mode2: Vec<Complex64> = (0..n)
            .map(|n2| Complex64::from_polar(1.0, -chi_t * (s1 * n2) as f64))
            .collect();
        for s2 in 0..n {
            let target = (s1 + s2) % n;
            let overlap: Complex64 = (0..n)
                .map(|n2| f[(n2, target)].conj() * mode2[n2] * f[(n2, s2)])
                .sum();
            out.push(overlap.norm_sqr());
        }
    }
    out
}

/// Worst-case SUM fidelity over all basis inputs.
pub fn worst_sum_fidelity(d: QuditDim, chi_t: f64, sign: DftSign) -> f64 {
    sum_fidelity_table(d, chi_t, sign)
        .into_iter()
        .fold(f64::INFINITY, f64::min)
}

/// Searches `t ∈ {2π/χ, 2π/(dχ)}` × `sign ∈ {-1, +1}` for the pair that
/// realizes `|s₁⟩ ⊗ |θ_{s₂}⟩ → |s₁⟩ ⊗ |θ_{s₁+s₂}⟩` on every basis input.
pub fn calibrate_sum(d: QuditDim, chi: f64) -> Result<SumCalibration> {
    if !chi.is_finite() || chi == 0.0 {
        return Err(Error::InvalidArgument(format!(
            "chi must be finite and non-zero, got {chi}"
        )));
    }
    let times = [2.0 * PI / chi, 2.0 * PI / (d.get() as f64 * chi)];
    let signs = [PHASE_CONVENTION, PHASE_CONVENTION.flipped()];
    let mut candidates = Vec::with_capacity(4);
    for &t in &times {
        for &sign in &signs {
            let chi_t = chi * t;
            candidates.push(CandidateResult {
                chi_t,
                t,
                sign,
                worst_fidelity: worst_sum_fidelity(d, chi_t, sign),
            });
        }
    }
    // Earlier candidates win ties.
    let best = candidates
        .iter()
        .fold(None::<&CandidateResult>, |acc, c| match acc {
            Some(b) if c.worst_fidelity <= b.worst_fidelity + 1e-12 => Some(b),
            _ => Some(c),
        })
        .expect("candidate set is non-empty")
        .clone();
    if best.worst_fidelity < SUM_FIDELITY_FLOOR {
        return Err(Error::CalibrationFailed {
            best_fidelity: best.worst_fidelity,
            best_chi_t: best.chi_t,
            best_sign: best.sign.value(),
        });
    }
    Ok(SumCalibration {
        d,
        chi,
        t_star: best.t,
        sign: best.sign,
        fidelity: best.worst_fidelity,
        candidates,
    })
}

/// The calibrated Kerr evolution in the two-mode number basis.
pub fn sum_gate(cal: &SumCalibration) -> Result<ComplexMatrix> {
    kerr_evolution(cal.d, cal.chi, cal.t_star)
}

/// `I ⊗ F_σ`: columns are `|s₁⟩ ⊗ |θ_{s₂}⟩`.
pub fn hybrid_basis_change(d: QuditDim, sign: DftSign) -> Result<ComplexMatrix> {
    kron(&ComplexMatrix::identity(d.get()), &dft_matrix(d, sign))
}

/// The SUM gate expressed in the hybrid basis (mode 1 number, mode 2 phase).
pub fn hybrid_sum_matrix(cal: &SumCalibration) -> Result<ComplexMatrix> {
    let basis = hybrid_basis_change(cal.d, cal.sign)?;
    let gate = sum_gate(cal)?;
    Ok(&(&basis.adjoint() * &gate) * &basis)
}

/// Permutation `|s₁, s₂⟩ → |s₁, s₁+s₂ mod d⟩`.
pub fn sum_permutation(d: QuditDim) -> Result<ComplexMatrix> {
    let n = d.get();
    let size = n * n;
    if size > crate::MAX_DENSE_DIM {
        return Err(Error::DimensionOverflow {
            rows: size,
            cols: size,
            max: crate::MAX_DENSE_DIM,
        });
    }
    Ok(ComplexMatrix::from_fn(size, size, |r, c| {
        let (s1, s2) = (c / n, c % n);
        if r == s1 * n + (s1 + s2) % n {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// Evolves `|s₁⟩ ⊗ |θ_{s₂}⟩` for time `t` and decodes mode 2 against all
/// `d` phase states; returns the most likely label and its probability.
pub fn fractional_sum_label(
    cal: &SumCalibration,
    s1: usize,
    s2: usize,
    t: f64,
) -> Result<(usize, f64)> {
    let d = cal.d;
    let input = TwoModeState::hybrid_basis_input(d, s1, s2, cal.sign);
    let output = input.evolved_diagonal(&kerr_phases(d, cal.chi, t)?)?;
    let mut best = (0, f64::NEG_INFINITY);
    for k in 0..d.get() {
        let p = output.mode2_overlap_probability(&phase_state(d, k, cal.sign));
        if p > best.1 + 1e-12 {
            best = (k, p);
        }
    }
    Ok(best)
}
