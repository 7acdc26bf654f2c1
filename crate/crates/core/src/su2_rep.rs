//! SU(2) realizations on the spin `j = (d-1)/2` irrep.
//!
//! Weight states are stored in the order `m = j, j-1, …, -j`, so storage
//! index `k` carries weight `m = j - k`. Under the computational labelling
//! `|s⟩ ≡ |j, j-s)_z` this order is exactly `s = 0, 1, …, d-1`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::dim::{root_of_unity, BasisTag, QuditDim};
use crate::error::{Error, Result};
use crate::number_rep::{build_number_rep, phase_operator_for_shift, CONVENTION_TOL};
use crate::tensor::{
    exp_i_hermitian, hermitian_eigen, spectral_product, ComplexMatrix, DftSign, StateVector,
};

/// Residual allowed for `(X_d)^d = I` in the phase representation.
pub const CYCLE_TOL: f64 = 1e-9;

/// Spin-`j` generators in the z-weight basis.
#[derive(Clone, Debug)]
pub struct SU2Generators {
    d: QuditDim,
    jz: ComplexMatrix,
    jp: ComplexMatrix,
    jm: ComplexMatrix,
    jx: ComplexMatrix,
    jy: ComplexMatrix,
}

impl SU2Generators {
    pub fn dim(&self) -> QuditDim {
        self.d
    }

    pub fn spin(&self) -> f64 {
        self.d.spin()
    }

    pub fn jz(&self) -> &ComplexMatrix {
        &self.jz
    }

    /// Raising operator `Ĵ₊`.
    pub fn jp(&self) -> &ComplexMatrix {
        &self.jp
    }

    /// Lowering operator `Ĵ₋`.
    pub fn jm(&self) -> &ComplexMatrix {
        &self.jm
    }

    pub fn jx(&self) -> &ComplexMatrix {
        &self.jx
    }

    pub fn jy(&self) -> &ComplexMatrix {
        &self.jy
    }

    /// `Ĵ_x² + Ĵ_y² + Ĵ_z²`.
    pub fn casimir(&self) -> ComplexMatrix {
        let sq = |m: &ComplexMatrix| m * m;
        &(&sq(&self.jx) + &sq(&self.jy)) + &sq(&self.jz)
    }
}

/// `2m` for the weight stored at index `k`.
pub fn twice_weight(d: QuditDim, k: usize) -> i64 {
    d.twice_spin() as i64 - 2 * k as i64
}

/// Storage index of the weight `m = twice_m/2`, with weights taken mod `d`
/// so that `|j, j+1) ≡ |j, -j)`.
pub fn weight_index(d: QuditDim, twice_m: i64) -> usize {
    let n = d.get() as i64;
    let k = (d.twice_spin() as i64 - twice_m) / 2;
    k.rem_euclid(n) as usize
}

/// Computational label `s = j - m` of the weight state `|j, m)_z`.
pub fn computational_label(d: QuditDim, twice_m: i64) -> usize {
    let n = d.get() as i64;
    ((d.twice_spin() as i64 - twice_m) / 2).rem_euclid(n) as usize
}

/// Re-expresses an operator given in weight storage order in the
/// computational order `s = j - m`.
pub fn relabel_weight_to_computational(d: QuditDim, op: &ComplexMatrix) -> ComplexMatrix {
    let n = d.get();
    let perm: Vec<usize> = (0..n)
        .map(|k| computational_label(d, twice_weight(d, k)))
        .collect();
    let mut inverse = vec![0; n];
    for (k, &s) in perm.iter().enumerate() {
        inverse[s] = k;
    }
    ComplexMatrix::from_fn(n, n, |r, c| op[(inverse[r], inverse[c])])
}

pub fn build_su2(d: QuditDim) -> SU2Generators {
    let n = d.get();
    let tj = d.twice_spin() as i64;
    let jz = ComplexMatrix::from_real_diagonal(
        &(0..n).map(|k| twice_weight(d, k) as f64 / 2.0).collect::<Vec<_>>(),
    );
    // Ĵ₊|j,m) = √(j(j+1) - m(m+1)) |j,m+1), and m+1 sits one index lower.
    let jp = ComplexMatrix::from_fn(n, n, |r, c| {
        if c >= 1 && r == c - 1 {
            let tm = twice_weight(d, c);
            let quad = (tj * (tj + 2) - tm * (tm + 2)) as f64 / 4.0;
            Complex64::new(quad.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let jm = jp.adjoint();
    let jx = (&jp + &jm).scale(Complex64::new(0.5, 0.0));
    let jy = (&jp - &jm).scale(Complex64::new(0.0, -0.5));
    SU2Generators {
        d,
        jz,
        jp,
        jm,
        jx,
        jy,
    }
}

/// The weight representation: `Z_d = exp(2πi(j - Ĵ_z)/d)` and `X_d` the
/// cyclic weight lowering `Σ_m |j,m)(j,m+1|`, both in computational order.
#[derive(Clone, Debug)]
pub struct WeightRep {
    d: QuditDim,
    x_op: ComplexMatrix,
    z_op: ComplexMatrix,
    theta_z: ComplexMatrix,
    phase_sign: DftSign,
}

impl WeightRep {
    pub fn dim(&self) -> QuditDim {
        self.d
    }

    pub fn x_op(&self) -> &ComplexMatrix {
        &self.x_op
    }

    pub fn z_op(&self) -> &ComplexMatrix {
        &self.z_op
    }

    /// SU(2) phase operator with `X_d = exp(2πi θ̂_z/d)`.
    pub fn theta_z(&self) -> &ComplexMatrix {
        &self.theta_z
    }

    pub fn phase_sign(&self) -> DftSign {
        self.phase_sign
    }
}

/// Largest deviation from `X|s⟩ = |s+1⟩` and `Z|s⟩ = ω^s|s⟩` on the
/// computational basis.
fn computational_action_residual(d: QuditDim, x: &ComplexMatrix, z: &ComplexMatrix) -> f64 {
    let n = d.get();
    let mut worst: f64 = 0.0;
    for s in 0..n {
        for r in 0..n {
            let x_target = if r == (s + 1) % n { 1.0 } else { 0.0 };
            worst = worst.max((x[(r, s)] - Complex64::new(x_target, 0.0)).norm());
            let z_target = if r == s {
                root_of_unity(s as i64, n)
            } else {
                Complex64::new(0.0, 0.0)
            };
            worst = worst.max((z[(r, s)] - z_target).norm());
        }
    }
    worst
}

pub fn build_weight_rep(d: QuditDim) -> Result<WeightRep> {
    let n = d.get();
    let g = build_su2(d);
    let tj = d.twice_spin() as i64;

    let lowered = &ComplexMatrix::identity(n).scale(Complex64::new(d.spin(), 0.0)) - g.jz();
    let z_weight = exp_i_hermitian(&lowered, d.unit_angle())?;

    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for k in 0..n {
        let tm = twice_weight(d, k);
        let mut t_next = tm + 2;
        if t_next > tj {
            t_next -= 2 * n as i64;
        }
        let (row, col) = (weight_index(d, tm), weight_index(d, t_next));
        entries[row * n + col] = Complex64::new(1.0, 0.0);
    }
    let x_weight = ComplexMatrix::new(n, n, entries)?;

    let x_op = relabel_weight_to_computational(d, &x_weight);
    let z_op = relabel_weight_to_computational(d, &z_weight);
    let residual = computational_action_residual(d, &x_op, &z_op);
    if residual > CONVENTION_TOL {
        return Err(Error::ConventionMismatch {
            what: format!("weight-basis X_d, Z_d actions at d = {d}"),
            residual,
        });
    }
    let (theta_z, phase_sign) = phase_operator_for_shift(d, &x_op)?;
    Ok(WeightRep {
        d,
        x_op,
        z_op,
        theta_z,
        phase_sign,
    })
}

/// Columns are `|j,m)_x = exp(-i(π/2)Ĵ_y)|j,m)_z` in z-weight coordinates,
/// ordered `m = j, …, -j`.
pub fn x_weight_basis(g: &SU2Generators) -> Result<ComplexMatrix> {
    exp_i_hermitian(g.jy(), -PI / 2.0)
}

/// Eigenvectors of `Ĵ_x` from the eigensolver, ordered `m = j, …, -j`.
/// Column phases are whatever the solver returns; use only as a cross-check
/// of [`x_weight_basis`].
pub fn x_weight_basis_by_eigensolver(g: &SU2Generators) -> Result<ComplexMatrix> {
    let (_, vectors) = hermitian_eigen(g.jx())?;
    let n = vectors.cols();
    Ok(ComplexMatrix::from_fn(n, n, |r, c| vectors[(r, n - 1 - c)]))
}

/// The phase representation: SU(2) phase states as the computational basis.
///
/// Every matrix here is in z-weight coordinates; the phase states are also
/// available as coefficient vectors on the `|j,m)_x` basis.
#[derive(Clone, Debug)]
pub struct PhaseRep {
    d: QuditDim,
    x_weight: ComplexMatrix,
    coefficients: Vec<Vec<Complex64>>,
    phase_states: Vec<StateVector>,
    x_op: ComplexMatrix,
    z_op: ComplexMatrix,
    theta_x: ComplexMatrix,
    jx: ComplexMatrix,
    sign: DftSign,
    twice_offset: i64,
}

impl PhaseRep {
    pub fn dim(&self) -> QuditDim {
        self.d
    }

    /// Phase states `|s⟩`, `s = 0, …, d-1`, in z-weight coordinates.
    pub fn phase_states(&self) -> &[StateVector] {
        &self.phase_states
    }

    /// Phase state `s` expanded on `|j,m)_x`, `m = j, …, -j`.
    pub fn phase_state_x_coefficients(&self, s: usize) -> &[Complex64] {
        &self.coefficients[s]
    }

    /// Matrix whose columns are the phase states.
    pub fn phase_state_matrix(&self) -> ComplexMatrix {
        let cols: Vec<Vec<Complex64>> = self
            .phase_states
            .iter()
            .map(|s| s.amplitudes().to_vec())
            .collect();
        ComplexMatrix::from_columns(&cols).expect("phase states share one dimension")
    }

    pub fn x_weight_basis(&self) -> &ComplexMatrix {
        &self.x_weight
    }

    pub fn x_op(&self) -> &ComplexMatrix {
        &self.x_op
    }

    pub fn z_op(&self) -> &ComplexMatrix {
        &self.z_op
    }

    /// SU(2) phase operator `θ̂_x = Σ_s s|s⟩⟨s|`.
    pub fn theta_x(&self) -> &ComplexMatrix {
        &self.theta_x
    }

    /// `Ĵ_x`, which generates the shift.
    pub fn jx(&self) -> &ComplexMatrix {
        &self.jx
    }

    /// Sign of the exponent used when building the phase states.
    pub fn sign(&self) -> DftSign {
        self.sign
    }

    /// Offset added to `m` in the phase-state exponent: `0` for odd `d`,
    /// `±½` for even `d` depending on which one makes `X` a plain shift.
    pub fn half_offset(&self) -> f64 {
        self.twice_offset as f64 / 2.0
    }

    /// `exp(-iπ/d)` for even `d`, `1` for odd `d`.
    pub fn spinor_prefactor(&self) -> Complex64 {
        spinor_prefactor(self.d)
    }
}

fn spinor_prefactor(d: QuditDim) -> Complex64 {
    if d.is_even() {
        Complex64::from_polar(1.0, -PI / d.get() as f64)
    } else {
        Complex64::new(1.0, 0.0)
    }
}

/// Integer phase index `m + offset/2` of weight `k`; `twice_offset` is `0`
/// for odd `d` and `±1` for even `d`.
fn phase_weight(d: QuditDim, k: usize, twice_offset: i64) -> i64 {
    (twice_weight(d, k) + twice_offset) / 2
}

fn phase_coefficients(d: QuditDim, sign: DftSign, twice_offset: i64) -> Vec<Vec<Complex64>> {
    let n = d.get();
    let norm = 1.0 / (n as f64).sqrt();
    (0..n)
        .map(|s| {
            (0..n)
                .map(|k| root_of_unity(sign.value() as i64 * phase_weight(d, k, twice_offset) * s as i64, n) * norm)
                .collect()
        })
        .collect()
}

/// Worst deviation from `X|s⟩ = |s+1 mod d⟩` over the given basis columns.
fn shift_action_residual(x: &ComplexMatrix, basis: &ComplexMatrix) -> f64 {
    let n = basis.cols();
    let image = x * basis;
    let mut worst: f64 = 0.0;
    for s in 0..n {
        let target = (s + 1) % n;
        for r in 0..basis.rows() {
            worst = worst.max((image[(r, s)] - basis[(r, target)]).norm());
        }
    }
    worst
}

pub fn build_phase_rep(d: QuditDim) -> Result<PhaseRep> {
    let n = d.get();
    let g = build_su2(d);
    let x_weight = x_weight_basis(&g)?;
    let x_op = exp_i_hermitian(g.jx(), d.unit_angle())?.scale(spinor_prefactor(d));
    let cycle = x_op.pow(n as u64).max_abs_diff(&ComplexMatrix::identity(n));

    // With the exp(-iπ/d) prefactor, the m + ½ states pick up e^{-2πi/d} per
    // shift at even d; the m - ½ states are the same rays and shift cleanly.
    let offsets: &[i64] = if d.is_even() { &[1, -1] } else { &[0] };
    let candidates = [DftSign::Plus, DftSign::Minus]
        .into_iter()
        .flat_map(|sign| offsets.iter().map(move |&o| (sign, o)));
    let mut best = f64::INFINITY;
    for (sign, twice_offset) in candidates {
        let coefficients = phase_coefficients(d, sign, twice_offset);
        let in_x = ComplexMatrix::from_columns(&coefficients)?;
        let basis = &x_weight * &in_x;
        let residual = shift_action_residual(&x_op, &basis);
        if residual > CONVENTION_TOL || cycle > CYCLE_TOL {
            best = best.min(residual.max(cycle));
            continue;
        }
        let phase_states = (0..n)
            .map(|s| StateVector::normalized(basis.column(s), BasisTag::ZWeightBasis))
            .collect::<Result<Vec<_>>>()?;
        let clock: Vec<Complex64> = (0..n).map(|s| root_of_unity(s as i64, n)).collect();
        let labels: Vec<Complex64> = (0..n).map(|s| Complex64::new(s as f64, 0.0)).collect();
        let z_op = spectral_product(&basis, &clock);
        let theta_x = spectral_product(&basis, &labels);
        return Ok(PhaseRep {
            d,
            x_weight,
            coefficients,
            phase_states,
            x_op,
            z_op,
            theta_x,
            jx: g.jx().clone(),
            sign,
            twice_offset,
        });
    }
    Err(Error::ConventionMismatch {
        what: format!("phase-state shift action at d = {d}"),
        residual: best,
    })
}

/// Residuals of the qubit identity `|1⟩ = (-i)·exp(i(π/2)X₂)|0⟩` with
/// `X₂ = 2Ĵ_x`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QubitRotationReport {
    /// `‖(-i)exp(i(π/2)X₂)|0⟩ - |1⟩‖_max`.
    pub residual: f64,
    /// `1 - |⟨0|R²|0⟩|` for the rotation applied twice.
    pub double_application_residual: f64,
    /// `‖2Ĵ_x - X₂(number rep)‖_max`.
    pub cross_rep_residual: f64,
}

pub fn qubit_rotation_identity_check() -> Result<QubitRotationReport> {
    let d = QuditDim::new(2)?;
    let g = build_su2(d);
    let x2 = g.jx().scale(Complex64::new(2.0, 0.0));
    let rotation = exp_i_hermitian(&x2, PI / 2.0)?.scale(Complex64::new(0.0, -1.0));

    let zero = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
    let one = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
    let image = rotation.apply(&zero);
    let residual = image
        .iter()
        .zip(&one)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);

    let twice = rotation.apply(&image);
    let double_application_residual = 1.0 - twice[0].norm();

    let number = build_number_rep(d)?;
    let cross_rep_residual = x2.max_abs_diff(number.x_op());
    Ok(QubitRotationReport {
        residual,
        double_application_residual,
        cross_rep_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::unitarity_residual;

    fn dim(n: usize) -> QuditDim {
        QuditDim::new(n).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn spin_half_generators() {
        let g = build_su2(dim(2));
        let half_x =
            ComplexMatrix::new(2, 2, vec![c(0., 0.), c(0.5, 0.), c(0.5, 0.), c(0., 0.)]).unwrap();
        assert!(g.jx().max_abs_diff(&half_x) < 1e-15);
        assert!(g.jz().max_abs_diff(&ComplexMatrix::from_real_diagonal(&[0.5, -0.5])) == 0.0);
    }

    #[test]
    fn spin_one_ladder() {
        let g = build_su2(dim(3));
        assert_eq!(g.jz(), &ComplexMatrix::from_real_diagonal(&[1., 0., -1.]));
        // j = 1: √(2 - m(m+1)) at m = 0 and m = -1.
        let r2 = 2f64.sqrt();
        for k in 0..3 {
            for l in 0..3 {
                let expected = if l == k + 1 { r2 } else { 0.0 };
                assert!((g.jp()[(k, l)] - c(expected, 0.)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn su2_algebra() {
        for n in 2..=32 {
            let g = build_su2(dim(n));
            let comm = g.jz().commutator(g.jp());
            assert!(comm.max_abs_diff(g.jp()) <= 1e-10);
            let comm = g.jz().commutator(g.jm());
            assert!(comm.max_abs_diff(&g.jm().scale(c(-1., 0.))) <= 1e-10);
            let comm = g.jp().commutator(g.jm());
            assert!(comm.max_abs_diff(&g.jz().scale(c(2., 0.))) <= 1e-10);
            assert!(g.jx().hermiticity_residual() <= 1e-12);
            assert!(g.jy().hermiticity_residual() <= 1e-12);

            let j = g.spin();
            let casimir = ComplexMatrix::identity(n).scale(c(j * (j + 1.0), 0.));
            assert!(g.casimir().max_abs_diff(&casimir) <= 1e-9, "d={n}");
        }
    }

    #[test]
    fn weight_labels() {
        let d = dim(4);
        assert_eq!(twice_weight(d, 0), 3);
        assert_eq!(twice_weight(d, 3), -3);
        assert_eq!(weight_index(d, 3), 0);
        // j + 1 wraps to -j.
        assert_eq!(weight_index(d, 5), weight_index(d, -3));
        assert_eq!(computational_label(d, 1), 1);
    }

    #[test]
    fn weight_rep_qubit_and_qutrit() {
        let w2 = build_weight_rep(dim(2)).unwrap();
        let n2 = build_number_rep(dim(2)).unwrap();
        assert!(w2.x_op().max_abs_diff(n2.x_op()) == 0.0);
        assert!(w2.z_op().max_abs_diff(n2.z_op()) <= 1e-15);

        let w3 = build_weight_rep(dim(3)).unwrap();
        let omega = dim(3).omega();
        let expected = ComplexMatrix::from_diagonal(&[c(1., 0.), omega, omega * omega]);
        assert!(w3.z_op().max_abs_diff(&expected) <= 1e-12);
        let n3 = build_number_rep(dim(3)).unwrap();
        assert_eq!(w3.x_op(), n3.x_op());
    }

    #[test]
    fn weight_rep_matches_number_rep() {
        for n in 2..=32 {
            let w = build_weight_rep(dim(n)).unwrap();
            let num = build_number_rep(dim(n)).unwrap();
            assert!(w.x_op().max_abs_diff(num.x_op()) <= 1e-10, "d={n}");
            assert!(w.z_op().max_abs_diff(num.z_op()) <= 1e-10, "d={n}");
            assert_eq!(w.phase_sign(), num.phase_sign());
        }
    }

    #[test]
    fn x_weight_basis_diagonalizes_jx() {
        for n in [2, 3, 4, 7, 12] {
            let g = build_su2(dim(n));
            let basis = x_weight_basis(&g).unwrap();
            assert!(unitarity_residual(&basis) <= 1e-12);
            for k in 0..n {
                let m = twice_weight(dim(n), k) as f64 / 2.0;
                let col = basis.column(k);
                let img = g.jx().apply(&col);
                let res: f64 = img
                    .iter()
                    .zip(&col)
                    .map(|(a, b)| (a - b * m).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                assert!(res <= 1e-10, "d={n} m={m} residual {res}");
            }
        }
    }

    #[test]
    fn x_weight_basis_qubit_columns() {
        let basis = x_weight_basis(&build_su2(dim(2))).unwrap();
        let s = 1.0 / 2f64.sqrt();
        // Rotation by π/2 about y: |↑) → (|↑)+|↓))/√2, |↓) → (-|↑)+|↓))/√2.
        let expected =
            ComplexMatrix::new(2, 2, vec![c(s, 0.), c(-s, 0.), c(s, 0.), c(s, 0.)]).unwrap();
        assert!(basis.max_abs_diff(&expected) <= 1e-15);
    }

    #[test]
    fn eigensolver_cross_check() {
        for n in [2, 3, 5, 8] {
            let g = build_su2(dim(n));
            let rotated = x_weight_basis(&g).unwrap();
            let solved = x_weight_basis_by_eigensolver(&g).unwrap();
            let overlap = &rotated.adjoint() * &solved;
            for k in 0..n {
                assert!((overlap[(k, k)].norm() - 1.0).abs() <= 1e-10, "d={n} k={k}");
            }
        }
    }

    #[test]
    fn phase_states_orthonormal() {
        for n in 2..=12 {
            let rep = build_phase_rep(dim(n)).unwrap();
            let states = rep.phase_states();
            for (a, sa) in states.iter().enumerate() {
                for (b, sb) in states.iter().enumerate() {
                    let ip = sa.inner(sb).unwrap();
                    let target = if a == b { 1.0 } else { 0.0 };
                    assert!((ip - c(target, 0.)).norm() <= 1e-10, "d={n} <{a}|{b}>");
                }
            }
        }
    }

    #[test]
    fn printed_half_offset_picks_up_a_phase() {
        // m + ½ states: X|s⟩ = e^{-2πi/d}|s+1⟩ at even d.
        for n in [2usize, 4, 6] {
            let d = dim(n);
            let g = build_su2(d);
            let x = exp_i_hermitian(g.jx(), d.unit_angle()).unwrap().scale(spinor_prefactor(d));
            let basis = &x_weight_basis(&g).unwrap()
                * &ComplexMatrix::from_columns(&phase_coefficients(d, DftSign::Plus, 1)).unwrap();
            let phase = root_of_unity(-1, n);
            let image = &x * &basis;
            for s in 0..n {
                for r in 0..n {
                    let want = basis[(r, (s + 1) % n)] * phase;
                    assert!((image[(r, s)] - want).norm() <= 1e-10, "d={n}");
                }
            }
        }
    }

    #[test]
    fn phase_rep_relations() {
        for n in 2..=12 {
            let rep = build_phase_rep(dim(n)).unwrap();
            assert_eq!(rep.sign(), DftSign::Plus);
            let offset = if n % 2 == 0 { -0.5 } else { 0.0 };
            assert_eq!(rep.half_offset(), offset, "d={n}");
            assert!(unitarity_residual(rep.x_op()) <= 1e-12);
            assert!(unitarity_residual(rep.z_op()) <= 1e-12);
            assert!(rep.theta_x().hermiticity_residual() <= 1e-12);
            let gen_z = exp_i_hermitian(rep.theta_x(), dim(n).unit_angle()).unwrap();
            assert!(gen_z.max_abs_diff(rep.z_op()) <= 1e-10);
            let gen_x = exp_i_hermitian(rep.jx(), dim(n).unit_angle())
                .unwrap()
                .scale(rep.spinor_prefactor());
            assert!(gen_x.max_abs_diff(rep.x_op()) <= 1e-10);
            assert!(rep.x_op().pow(n as u64).max_abs_diff(&ComplexMatrix::identity(n)) <= 1e-9);
        }
    }

    #[test]
    fn qubit_phase_rep() {
        let rep = build_phase_rep(dim(2)).unwrap();
        let x2 = rep.x_op();
        assert!((x2 * x2).max_abs_diff(&ComplexMatrix::identity(2)) <= 1e-12);
        let expected = exp_i_hermitian(rep.jx(), PI)
            .unwrap()
            .scale(Complex64::from_polar(1.0, -PI / 2.0));
        assert!(x2.max_abs_diff(&expected) <= 1e-15);
    }

    #[test]
    fn qutrit_clock_spectrum() {
        let rep = build_phase_rep(dim(3)).unwrap();
        let omega = dim(3).omega();
        for (s, state) in rep.phase_states().iter().enumerate() {
            let img = rep.z_op().apply(state.amplitudes());
            let w = omega.powu(s as u32);
            for (a, b) in img.iter().zip(state.amplitudes()) {
                assert!((a - b * w).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn even_d_prefactor_is_needed() {
        // Without exp(-iπ/d) the spinor shift picks up (-1) after d steps.
        let d = dim(4);
        let g = build_su2(d);
        let bare = exp_i_hermitian(g.jx(), d.unit_angle()).unwrap();
        let cycled = bare.pow(4);
        assert!(cycled.max_abs_diff(&ComplexMatrix::identity(4).scale(c(-1., 0.))) <= 1e-10);
    }

    #[test]
    fn qubit_z_states_are_phase_states() {
        let rep = build_phase_rep(dim(2)).unwrap();
        for k in 0..2 {
            let z_state = StateVector::basis_state(2, k, BasisTag::ZWeightBasis).unwrap();
            let best = rep
                .phase_states()
                .iter()
                .map(|p| p.inner(&z_state).unwrap().norm())
                .fold(0.0, f64::max);
            assert!((best - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn qubit_rotation_identity() {
        let report = qubit_rotation_identity_check().unwrap();
        assert!(report.residual <= 1e-12);
        assert!(report.double_application_residual.abs() <= 1e-12);
        assert!(report.cross_rep_residual <= 1e-12);
    }
}
