//! Finite-dimensional realizations of the generalized qudit Pauli group.
//!
//! Three representations of the clock `Z_d` and shift `X_d` are built as
//! dense matrices:
//!
//! - the **number representation** on the lowest `d` oscillator levels, with
//!   `Z_d = exp(2πi N̂/d)` and `X_d = exp(2πi θ̂_z/d)` for the truncated
//!   (Pegg–Barnett style) phase operator `θ̂_z`;
//! - the **weight representation** on the spin `j = (d-1)/2` irrep of SU(2),
//!   with `Z_d = exp(2πi (j - Ĵ_z)/d)`;
//! - the **phase representation**, whose computational basis is a set of
//!   SU(2) phase states built on the `Ĵ_x` weight basis, with
//!   `X_d = exp(2πi Ĵ_x/d)` (times `exp(-iπ/d)` for even `d`) and
//!   `Z_d = exp(2πi θ̂_x/d)`.
//!
//! On top of these sit the continuous one-parameter families `X(x)`, `Z(z)`,
//! the Fourier gate, the two-mode Kerr evolution `exp(-iχt N̂₁N̂₂)` with a
//! calibrated SUM gate, and finite-`d` sweep diagnostics.
//!
//! ```
//! use qudit_cv::{build_number_rep, commutation_phase, QuditDim, Tolerance};
//!
//! let d = QuditDim::new(5).unwrap();
//! let rep = build_number_rep(d).unwrap();
//! let report = commutation_phase(&rep, Tolerance::default()).unwrap();
//! assert!(report.residual < 1e-12);
//! ```

pub mod dim;
pub mod error;
pub mod gates;
pub mod json;
pub mod number_rep;
pub mod pauli;
pub mod su2_rep;
pub mod sweep;
pub mod tensor;
pub mod verify;

pub use dim::{root_of_unity, BasisTag, QuditDim, Tolerance, MAX_DENSE_DIM};
pub use error::{Error, Result};
pub use gates::{
    calibrate_sum, fourier_gate, fractional_sum_label, hybrid_basis_change, hybrid_sum_matrix,
    kerr_evolution, kerr_phases, phase_state, sum_gate, sum_permutation, CandidateResult,
    FourierConjugation, SumCalibration, TwoModeState, PHASE_CONVENTION,
};
pub use number_rep::{build_number_rep, continuous_x, continuous_z, NumberRep};
pub use pauli::{
    basis_gram, basis_gram_sampled, commutation_phase, pauli_element, CommutationReport,
    GramReport, PauliElement, PauliRep, RepKind,
};
pub use su2_rep::{
    build_phase_rep, build_su2, build_weight_rep, qubit_rotation_identity_check,
    x_weight_basis, x_weight_basis_by_eigensolver, PhaseRep, QubitRotationReport, SU2Generators,
    WeightRep,
};
pub use sweep::{default_dims, parse_dims, run_sweep, write_csv, Metric, SweepRecord};
pub use tensor::{
    dft_matrix, exp_i_hermitian, hermitian_eigen, hs_inner, kron, unitarity_residual,
    ComplexMatrix, DftSign, StateVector,
};
