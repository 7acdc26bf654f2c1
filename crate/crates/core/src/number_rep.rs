//! Number representation: the computational basis is the lowest `d`
//! oscillator number states, `Z_d` is generated by `N̂` and `X_d` by the
//! truncated phase operator `θ̂_z`.

use num_complex::Complex64;

use crate::dim::{root_of_unity, QuditDim};
use crate::error::{Error, Result};
use crate::tensor::{dft_matrix, exp_i_hermitian, spectral_product, ComplexMatrix, DftSign};

/// Residual allowed when checking that a phase operator generates its shift.
pub const CONVENTION_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct NumberRep {
    d: QuditDim,
    n_op: ComplexMatrix,
    x_op: ComplexMatrix,
    z_op: ComplexMatrix,
    theta_z: ComplexMatrix,
    phase_sign: DftSign,
}

impl NumberRep {
    pub fn dim(&self) -> QuditDim {
        self.d
    }

    /// `N̂ = diag(0, 1, …, d-1)`.
    pub fn n_op(&self) -> &ComplexMatrix {
        &self.n_op
    }

    /// Shift `X_d`, `|s⟩ → |s+1 mod d⟩`.
    pub fn x_op(&self) -> &ComplexMatrix {
        &self.x_op
    }

    /// Clock `Z_d = diag(ω^s)`.
    pub fn z_op(&self) -> &ComplexMatrix {
        &self.z_op
    }

    /// Label-valued phase operator with spectrum `{0, …, d-1}` and
    /// `exp(2πi θ̂_z/d) = X_d`.
    pub fn theta_z(&self) -> &ComplexMatrix {
        &self.theta_z
    }

    /// Angle-valued phase operator `θ̂_z·2π/d`, spectrum `{2πk/d}`.
    pub fn angle_operator(&self) -> ComplexMatrix {
        self.theta_z.scale(Complex64::new(self.d.unit_angle(), 0.0))
    }

    /// DFT sign whose columns are the eigenvectors of `θ̂_z`.
    pub fn phase_sign(&self) -> DftSign {
        self.phase_sign
    }
}

/// Builds the phase operator `θ = F·diag(0..d)·F†` that generates `shift`
/// through `exp(2πi θ/d)`.
///
/// `F = dft_matrix(d, +1)` is tried first, then `-1`; the sign that worked is
/// returned alongside the operator. If neither reproduces `shift` the call
/// fails with [`Error::ConventionMismatch`].
pub fn phase_operator_for_shift(
    d: QuditDim,
    shift: &ComplexMatrix,
) -> Result<(ComplexMatrix, DftSign)> {
    let labels: Vec<Complex64> = (0..d.get()).map(|k| Complex64::new(k as f64, 0.0)).collect();
    let mut best = f64::INFINITY;
    for sign in [DftSign::Plus, DftSign::Minus] {
        let theta = spectral_product(&dft_matrix(d, sign), &labels);
        let generated = exp_i_hermitian(&theta, d.unit_angle())?;
        let residual = generated.max_abs_diff(shift);
        if residual <= CONVENTION_TOL {
            return Ok((theta, sign));
        }
        best = best.min(residual);
    }
    Err(Error::ConventionMismatch {
        what: format!("exp(2πiθ/d) = X_d at d = {d}"),
        residual: best,
    })
}

/// Cyclic shift `|s⟩ → |s+1 mod d⟩` as a permutation matrix.
pub fn shift_matrix(d: QuditDim) -> ComplexMatrix {
    let n = d.get();
    ComplexMatrix::from_fn(n, n, |r, c| {
        if r == (c + 1) % n {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Clock `diag(exp(2πi s/d))`.
pub fn clock_matrix(d: QuditDim) -> ComplexMatrix {
    let diag: Vec<Complex64> = (0..d.get()).map(|s| root_of_unity(s as i64, d.get())).collect();
    ComplexMatrix::from_diagonal(&diag)
}

pub fn build_number_rep(d: QuditDim) -> Result<NumberRep> {
    let n = d.get();
    let n_op = ComplexMatrix::from_real_diagonal(&(0..n).map(|k| k as f64).collect::<Vec<_>>());
    let x_op = shift_matrix(d);
    let z_op = clock_matrix(d);
    let (theta_z, phase_sign) = phase_operator_for_shift(d, &x_op)?;
    Ok(NumberRep {
        d,
        n_op,
        x_op,
        z_op,
        theta_z,
        phase_sign,
    })
}

/// `X(x) = exp(i·x·θ̂_z)`.
pub fn continuous_x(rep: &NumberRep, x: f64) -> Result<ComplexMatrix> {
    if !x.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite x = {x}")));
    }
    exp_i_hermitian(&rep.theta_z, x)
}

/// `Z(z) = exp(i·z·N̂) = diag(exp(i·z·n))`.
pub fn continuous_z(rep: &NumberRep, z: f64) -> Result<ComplexMatrix> {
    if !z.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite z = {z}")));
    }
    let diag: Vec<Complex64> = (0..rep.d.get())
        .map(|n| Complex64::from_polar(1.0, z * n as f64))
        .collect();
    Ok(ComplexMatrix::from_diagonal(&diag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{hermitian_eigen, unitarity_residual};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn rep(n: usize) -> NumberRep {
        build_number_rep(QuditDim::new(n).unwrap()).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn qubit_is_pauli() {
        let r = rep(2);
        let sx = ComplexMatrix::new(2, 2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]).unwrap();
        assert_eq!(r.x_op(), &sx);
        assert_eq!(r.z_op(), &ComplexMatrix::from_real_diagonal(&[1., -1.]));
    }

    #[test]
    fn qutrit_actions() {
        let r = rep(3);
        let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        for s in 0..3 {
            assert_eq!(r.x_op()[((s + 1) % 3, s)], c(1., 0.));
            assert!((r.z_op()[(s, s)] - w.powu(s as u32)).norm() < 1e-15);
        }
    }

    #[test]
    fn qubit_phase_operator_hand_checked() {
        let r = rep(2);
        let expected =
            ComplexMatrix::new(2, 2, vec![c(0.5, 0.), c(-0.5, 0.), c(-0.5, 0.), c(0.5, 0.)]).unwrap();
        assert!(r.theta_z().max_abs_diff(&expected) < 1e-15);
        let sx = exp_i_hermitian(r.theta_z(), PI).unwrap();
        assert!(sx.max_abs_diff(r.x_op()) < 1e-15);
    }

    #[test]
    fn phase_sign_is_reported() {
        // At d = 2 the two DFT signs coincide, so the first one tried wins.
        assert_eq!(rep(2).phase_sign(), DftSign::Plus);
        // For d ≥ 3 the +1 DFT columns are eigenvectors of X_d with
        // eigenvalue ω^{-k}, so only the -1 convention generates X_d.
        for n in 3..=12 {
            assert_eq!(rep(n).phase_sign(), DftSign::Minus, "d={n}");
        }
    }

    #[test]
    fn convention_mismatch_is_loud() {
        let d = QuditDim::new(4).unwrap();
        let bogus = clock_matrix(d);
        assert!(matches!(
            phase_operator_for_shift(d, &bogus),
            Err(Error::ConventionMismatch { .. })
        ));
    }

    #[test]
    fn representation_invariants() {
        for n in [2, 3, 4, 7, 16] {
            let r = rep(n);
            let diag: Vec<f64> = r.n_op().diagonal().iter().map(|z| z.re).collect();
            assert_eq!(diag, (0..n).map(|k| k as f64).collect::<Vec<_>>());
            assert!(unitarity_residual(r.x_op()) <= 1e-12);
            assert!(unitarity_residual(r.z_op()) <= 1e-12);
            assert!(r.theta_z().hermiticity_residual() <= 1e-12);
            let gen = exp_i_hermitian(r.theta_z(), 2.0 * PI / n as f64).unwrap();
            assert!(gen.max_abs_diff(r.x_op()) <= 1e-10);
        }
    }

    #[test]
    fn shift_is_cyclic() {
        for n in 2..=64 {
            let r = rep(n);
            assert!(r.x_op().pow(n as u64).max_abs_diff(&ComplexMatrix::identity(n)) <= 1e-10);
            for s in 0..n {
                let col = r.x_op().column(s);
                for (row, v) in col.iter().enumerate() {
                    let expected = if row == (s + 1) % n { 1.0 } else { 0.0 };
                    assert_eq!(*v, c(expected, 0.0));
                }
            }
        }
    }

    #[test]
    fn phase_operator_spectrum_is_labels() {
        for n in [2, 3, 5, 8, 17, 32] {
            let (vals, _) = hermitian_eigen(rep(n).theta_z()).unwrap();
            for (k, v) in vals.iter().enumerate() {
                assert!((v - k as f64).abs() <= 1e-9, "d={n} k={k} got {v}");
            }
        }
    }

    #[test]
    fn angle_operator_scales_labels() {
        let r = rep(5);
        let (vals, _) = hermitian_eigen(&r.angle_operator()).unwrap();
        for (k, v) in vals.iter().enumerate() {
            assert!((v - 2.0 * PI * k as f64 / 5.0).abs() < 1e-12);
        }
    }

    #[test]
    fn continuous_examples() {
        for n in [2, 3, 6] {
            let r = rep(n);
            let angle = 2.0 * PI / n as f64;
            assert!(continuous_x(&r, 0.0).unwrap().max_abs_diff(&ComplexMatrix::identity(n)) < 1e-12);
            assert!(continuous_z(&r, 0.0).unwrap().max_abs_diff(&ComplexMatrix::identity(n)) < 1e-15);
            assert!(continuous_x(&r, angle).unwrap().max_abs_diff(r.x_op()) <= 1e-10);
            assert!(continuous_z(&r, angle).unwrap().max_abs_diff(r.z_op()) <= 1e-12);
        }
        let r3 = rep(3);
        let x_sq = r3.x_op() * r3.x_op();
        assert!(continuous_x(&r3, 4.0 * PI / 3.0).unwrap().max_abs_diff(&x_sq) <= 1e-10);
        let r2 = rep(2);
        assert!(continuous_z(&r2, PI).unwrap().max_abs_diff(r2.z_op()) <= 1e-15);
        assert!(continuous_x(&r2, f64::NAN).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn continuous_x_group_law(n in 2usize..=12, a in -10.0f64..10.0, b in -10.0f64..10.0) {
            let r = rep(n);
            let lhs = &continuous_x(&r, a).unwrap() * &continuous_x(&r, b).unwrap();
            prop_assert!(lhs.max_abs_diff(&continuous_x(&r, a + b).unwrap()) <= 1e-9);
        }

        #[test]
        fn continuous_z_group_law(n in 2usize..=12, a in -10.0f64..10.0, b in -10.0f64..10.0) {
            let r = rep(n);
            let lhs = &continuous_z(&r, a).unwrap() * &continuous_z(&r, b).unwrap();
            prop_assert!(lhs.max_abs_diff(&continuous_z(&r, a + b).unwrap()) <= 1e-9);
        }
    }
}
