//! Named invariant suites, each check reporting its residual against a
//! threshold.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::dim::{BasisTag, QuditDim, Tolerance};
use crate::error::{Error, Result};
use crate::gates::{
    calibrate_sum, fourier_conjugation, fourier_gate, hybrid_sum_matrix, kerr_phases,
    sum_permutation,
};
use crate::number_rep::{build_number_rep, continuous_x, continuous_z};
use crate::pauli::{basis_gram, basis_gram_sampled, PauliRep, RepKind, DEFAULT_GRAM_SAMPLES};
use crate::su2_rep::{
    build_phase_rep, build_su2, build_weight_rep, qubit_rotation_identity_check, twice_weight,
    x_weight_basis,
};
use crate::tensor::{exp_i_hermitian, hermitian_eigen, unitarity_residual, ComplexMatrix, StateVector};

/// Full Gram matrices are built up to this `d`; above it quadruples are sampled.
pub const FULL_GRAM_LIMIT: usize = 12;

/// Seed for sampled Gram checks.
pub const GRAM_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Pauli,
    Number,
    Su2,
    Phase,
    Gates,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Pauli => "pauli",
            Suite::Number => "number",
            Suite::Su2 => "su2",
            Suite::Phase => "phase",
            Suite::Gates => "gates",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Suite::Pauli,
            Suite::Number,
            Suite::Su2,
            Suite::Phase,
            Suite::Gates,
            Suite::All,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub d: usize,
    /// Measured residual; absent if the check could not be evaluated.
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

/// Collects checks for one suite and dimension.
struct Recorder<'a> {
    suite: &'static str,
    d: usize,
    tol_override: Option<Tolerance>,
    out: &'a mut Vec<Check>,
}

impl Recorder<'_> {
    fn tol(&self, default: f64) -> f64 {
        self.tol_override.map_or(default, Tolerance::get)
    }

    fn residual(&mut self, name: impl Into<String>, residual: f64, default_tol: f64) {
        self.detailed(name, residual, default_tol, String::new());
    }

    fn detailed(&mut self, name: impl Into<String>, residual: f64, default_tol: f64, detail: String) {
        let tolerance = self.tol(default_tol);
        self.out.push(Check {
            suite: self.suite,
            name: name.into(),
            d: self.d,
            residual: Some(residual),
            tolerance,
            passed: residual.is_finite() && residual <= tolerance,
            detail,
        });
    }

    fn failed(&mut self, name: impl Into<String>, err: &Error, default_tol: f64) {
        let tolerance = self.tol(default_tol);
        self.out.push(Check {
            suite: self.suite,
            name: name.into(),
            d: self.d,
            residual: None,
            tolerance,
            passed: false,
            detail: err.to_string(),
        });
    }
}

fn identity_distance(m: &ComplexMatrix) -> f64 {
    m.max_abs_diff(&ComplexMatrix::identity(m.rows()))
}

fn pauli_checks(rec: &mut Recorder, rep: &dyn PauliRep) {
    let d = rep.dim();
    let n = d.get();
    let kind = rep.kind();
    let zx = rep.clock() * rep.shift();
    let xz = rep.shift() * rep.clock();
    rec.residual(format!("{kind}: commutation ZX = ωXZ"), zx.max_abs_diff(&xz.scale(d.omega())), 1e-10);
    rec.residual(format!("{kind}: X unitary"), unitarity_residual(rep.shift()), 1e-10);
    rec.residual(format!("{kind}: Z unitary"), unitarity_residual(rep.clock()), 1e-10);
    rec.residual(format!("{kind}: X^d = I"), identity_distance(&rep.shift().pow(n as u64)), 1e-9);
    rec.residual(format!("{kind}: Z^d = I"), identity_distance(&rep.clock().pow(n as u64)), 1e-9);

    // The Gram functions enforce their own tolerance; ask for a loose one
    // and judge the residual here.
    let loose = Tolerance::new(9e-4).expect("valid tolerance");
    let (label, gram) = if n <= FULL_GRAM_LIMIT {
        ("full", basis_gram(rep, loose))
    } else {
        ("sampled", basis_gram_sampled(rep, DEFAULT_GRAM_SAMPLES, GRAM_SEED, loose))
    };
    let name = format!("{kind}: operator basis Gram = d·I ({label})");
    match gram {
        Ok(g) => rec.detailed(name, g.residual, 1e-9, format!("{} entries", g.checked)),
        Err(e) => rec.failed(name, &e, 1e-9),
    }
}

fn number_checks(rec: &mut Recorder, d: QuditDim) -> Result<()> {
    let rep = build_number_rep(d)?;
    let angle = d.unit_angle();
    rec.detailed(
        "exp(2πiθ_z/d) = X",
        exp_i_hermitian(rep.theta_z(), angle)?.max_abs_diff(rep.x_op()),
        1e-10,
        format!("dft sign {}", rep.phase_sign().value()),
    );
    rec.residual("θ_z Hermitian", rep.theta_z().hermiticity_residual(), 1e-12);
    let (values, _) = hermitian_eigen(rep.theta_z())?;
    let spectrum = values
        .iter()
        .enumerate()
        .map(|(k, v)| (v - k as f64).abs())
        .fold(0.0, f64::max);
    rec.residual("spec(θ_z) = {0..d-1}", spectrum, 1e-9);
    rec.residual("X(2π/d) = X_d", continuous_x(&rep, angle)?.max_abs_diff(rep.x_op()), 1e-10);
    rec.residual("Z(2π/d) = Z_d", continuous_z(&rep, angle)?.max_abs_diff(rep.z_op()), 1e-10);

    let pairs = [(0.3, 1.1), (-2.0, 0.7), (5.5, -3.25), (PI, PI / 3.0)];
    let mut group = 0.0f64;
    for (a, b) in pairs {
        let lhs = &continuous_x(&rep, a)? * &continuous_x(&rep, b)?;
        group = group.max(lhs.max_abs_diff(&continuous_x(&rep, a + b)?));
        let lhs = &continuous_z(&rep, a)? * &continuous_z(&rep, b)?;
        group = group.max(lhs.max_abs_diff(&continuous_z(&rep, a + b)?));
    }
    rec.residual("X(a)X(b) = X(a+b), Z(a)Z(b) = Z(a+b)", group, 1e-9);
    Ok(())
}

fn su2_checks(rec: &mut Recorder, d: QuditDim) -> Result<()> {
    let g = build_su2(d);
    let comm = g
        .jz()
        .commutator(g.jp())
        .max_abs_diff(g.jp())
        .max(g.jz().commutator(g.jm()).max_abs_diff(&g.jm().scale(Complex64::new(-1.0, 0.0))))
        .max(g.jp().commutator(g.jm()).max_abs_diff(&g.jz().scale(Complex64::new(2.0, 0.0))));
    rec.residual("su(2) commutators", comm, 1e-10);
    let j = d.spin();
    let casimir = ComplexMatrix::identity(d.get()).scale(Complex64::new(j * (j + 1.0), 0.0));
    rec.residual("Casimir = j(j+1)", g.casimir().max_abs_diff(&casimir), 1e-9);

    let weight = build_weight_rep(d)?;
    let number = build_number_rep(d)?;
    rec.residual("weight X = number X", weight.x_op().max_abs_diff(number.x_op()), 1e-10);
    rec.residual("weight Z = number Z", weight.z_op().max_abs_diff(number.z_op()), 1e-10);

    let basis = x_weight_basis(&g)?;
    let mut eigen = 0.0f64;
    for k in 0..d.get() {
        let m = twice_weight(d, k) as f64 / 2.0;
        let col = basis.column(k);
        let image = g.jx().apply(&col);
        let res = image
            .iter()
            .zip(&col)
            .map(|(a, b)| (a - b * m).norm_sqr())
            .sum::<f64>()
            .sqrt();
        eigen = eigen.max(res);
    }
    rec.residual("Ĵ_x |j,m)_x = m |j,m)_x", eigen, 1e-9);
    rec.residual("x-weight basis unitary", unitarity_residual(&basis), 1e-12);

    let qubit = qubit_rotation_identity_check()?;
    rec.residual("qubit rotation |1⟩ = (-i)exp(i(π/2)X₂)|0⟩", qubit.residual, 1e-12);
    rec.residual("qubit rotation X₂ = 2Ĵ_x = number X₂", qubit.cross_rep_residual, 1e-12);
    Ok(())
}

fn phase_checks(rec: &mut Recorder, d: QuditDim) -> Result<()> {
    let rep = build_phase_rep(d)?;
    let n = d.get();
    let p = rep.phase_state_matrix();
    rec.detailed(
        "phase states orthonormal",
        identity_distance(&(&p.adjoint() * &p)),
        1e-10,
        format!("phase-state sign {}, offset {:+}", rep.sign().value(), rep.half_offset()),
    );
    let mut eigen = 0.0f64;
    for (s, state) in rep.phase_states().iter().enumerate() {
        let image = rep.theta_x().apply(state.amplitudes());
        for (a, b) in image.iter().zip(state.amplitudes()) {
            eigen = eigen.max((a - b * s as f64).norm());
        }
    }
    rec.residual("θ_x|s⟩ = s|s⟩", eigen, 1e-9);
    rec.residual(
        "exp(2πiθ_x/d) = Z",
        exp_i_hermitian(rep.theta_x(), d.unit_angle())?.max_abs_diff(rep.z_op()),
        1e-10,
    );
    let generated = exp_i_hermitian(rep.jx(), d.unit_angle())?.scale(rep.spinor_prefactor());
    rec.residual("prefactor·exp(2πiĴ_x/d) = X", generated.max_abs_diff(rep.x_op()), 1e-10);
    rec.residual("X^d = I (spinor prefactor)", identity_distance(&rep.x_op().pow(n as u64)), 1e-9);
    if n == 2 {
        let mut worst = 0.0f64;
        for k in 0..2 {
            let z_state = StateVector::basis_state(2, k, BasisTag::ZWeightBasis)?;
            let best = rep
                .phase_states()
                .iter()
                .map(|ps| ps.inner(&z_state).map(|z| z.norm()))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            worst = worst.max((best - 1.0).abs());
        }
        rec.residual("qubit z-weight states are θ_x eigenstates", worst, 1e-10);
    }
    Ok(())
}

fn gate_checks(rec: &mut Recorder, d: QuditDim) -> Result<()> {
    let n = d.get();
    let f = fourier_gate(d);
    rec.residual("Fourier unitary", unitarity_residual(&f), 1e-12);
    rec.residual("F^4 = I", identity_distance(&f.pow(4)), 1e-9);
    let conj = fourier_conjugation(d);
    rec.residual("F†XF = Z", conj.shift_to_clock, 1e-12);
    rec.residual("F†ZF = X†", conj.clock_to_inverse_shift, 1e-12);

    let name = "SUM calibration worst fidelity ≥ 1 - 1e-9";
    match calibrate_sum(d, 1.0) {
        Ok(cal) => {
            rec.detailed(
                name,
                1.0 - cal.fidelity,
                1e-9,
                format!("chi*t = {:.17e}, sign = {}", cal.chi_t(), cal.sign.value()),
            );
            let phases = kerr_phases(d, cal.chi, cal.t_star)?;
            let order = phases
                .iter()
                .map(|p| (p.powu(n as u32) - Complex64::new(1.0, 0.0)).norm())
                .fold(0.0, f64::max);
            rec.residual("SUM^d = I", order, 1e-8);
            if n * n <= crate::MAX_DENSE_DIM {
                let hybrid = hybrid_sum_matrix(&cal)?;
                rec.residual(
                    "hybrid-basis SUM = |s1,s2⟩→|s1,s1+s2⟩",
                    hybrid.max_abs_diff(&sum_permutation(d)?),
                    1e-9,
                );
            }
        }
        Err(e) => rec.failed(name, &e, 1e-9),
    }
    Ok(())
}

/// Runs `suite` at dimension `d`. `reps` selects representations for the
/// Pauli suite. `tol_override`, if given, replaces every per-check
/// threshold.
pub fn run_suite(
    suite: Suite,
    d: QuditDim,
    reps: &[RepKind],
    tol_override: Option<Tolerance>,
) -> Vec<Check> {
    let mut out = Vec::new();
    let suites: Vec<Suite> = match suite {
        Suite::All => vec![Suite::Pauli, Suite::Number, Suite::Su2, Suite::Phase, Suite::Gates],
        s => vec![s],
    };
    for s in suites {
        let mut rec = Recorder {
            suite: s.name(),
            d: d.get(),
            tol_override,
            out: &mut out,
        };
        let outcome = match s {
            Suite::Pauli => {
                for &kind in reps {
                    match kind.build(d) {
                        Ok(rep) => pauli_checks(&mut rec, rep.as_ref()),
                        Err(e) => rec.failed(format!("{kind}: build"), &e, 0.0),
                    }
                }
                Ok(())
            }
            Suite::Number => number_checks(&mut rec, d),
            Suite::Su2 => su2_checks(&mut rec, d),
            Suite::Phase => phase_checks(&mut rec, d),
            Suite::Gates => gate_checks(&mut rec, d),
            Suite::All => unreachable!(),
        };
        if let Err(e) = outcome {
            rec.failed("suite aborted", &e, 0.0);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_small_dims() {
        for n in [2, 3, 4, 7] {
            let checks = run_suite(Suite::All, QuditDim::new(n).unwrap(), &RepKind::ALL, None);
            for c in &checks {
                assert!(c.passed, "{c:?}");
            }
        }
    }

    #[test]
    fn qubit_run_includes_rotation_identity() {
        let checks = run_suite(Suite::All, QuditDim::new(2).unwrap(), &RepKind::ALL, None);
        assert!(checks.iter().any(|c| c.name.starts_with("qubit rotation ")));
        assert!(checks.iter().any(|c| c.name.contains("θ_x eigenstates")));
    }

    #[test]
    fn sampled_gram_above_limit() {
        let checks = run_suite(Suite::Pauli, QuditDim::new(16).unwrap(), &[RepKind::Number], None);
        let gram = checks.iter().find(|c| c.name.contains("Gram")).unwrap();
        assert!(gram.name.contains("sampled"));
        assert!(gram.passed);
    }

    #[test]
    fn override_tightens_thresholds() {
        let tight = Tolerance::new(1e-300).unwrap();
        let checks = run_suite(Suite::Number, QuditDim::new(5).unwrap(), &[], Some(tight));
        assert!(checks.iter().all(|c| c.tolerance == 1e-300));
        assert!(checks.iter().any(|c| !c.passed));
    }

    #[test]
    fn suite_names_parse() {
        assert_eq!("gates".parse::<Suite>().unwrap(), Suite::Gates);
        assert!("bogus".parse::<Suite>().is_err());
    }
}
