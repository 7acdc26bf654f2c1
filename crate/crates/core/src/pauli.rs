//! Generalized Pauli group `{X^a Z^b}` over any representation.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dim::QuditDim;
use crate::error::{Error, Result};
use crate::number_rep::{build_number_rep, NumberRep};
use crate::su2_rep::{build_phase_rep, build_weight_rep, PhaseRep, WeightRep};
use crate::tensor::{hs_inner, ComplexMatrix};

/// Largest `d` for which the full `d²×d²` Gram matrix is built.
pub const MAX_FULL_GRAM_DIM: usize = 64;

/// Number of sampled quadruples used above [`MAX_FULL_GRAM_DIM`].
pub const DEFAULT_GRAM_SAMPLES: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepKind {
    Number,
    Weight,
    Phase,
}

impl RepKind {
    pub const ALL: [RepKind; 3] = [RepKind::Number, RepKind::Weight, RepKind::Phase];

    pub fn name(self) -> &'static str {
        match self {
            RepKind::Number => "number",
            RepKind::Weight => "weight",
            RepKind::Phase => "phase",
        }
    }

    pub fn build(self, d: QuditDim) -> Result<Box<dyn PauliRep>> {
        Ok(match self {
            RepKind::Number => Box::new(build_number_rep(d)?),
            RepKind::Weight => Box::new(build_weight_rep(d)?),
            RepKind::Phase => Box::new(build_phase_rep(d)?),
        })
    }
}

impl fmt::Display for RepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RepKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "number" => Ok(RepKind::Number),
            "weight" => Ok(RepKind::Weight),
            "phase" => Ok(RepKind::Phase),
            other => Err(Error::InvalidArgument(format!(
                "unknown representation `{other}` (expected number, weight or phase)"
            ))),
        }
    }
}

/// A representation supplying unitary shift and clock matrices.
pub trait PauliRep: Send + Sync {
    fn dim(&self) -> QuditDim;
    fn shift(&self) -> &ComplexMatrix;
    fn clock(&self) -> &ComplexMatrix;
    fn kind(&self) -> RepKind;
}

impl PauliRep for NumberRep {
    fn dim(&self) -> QuditDim {
        NumberRep::dim(self)
    }
    fn shift(&self) -> &ComplexMatrix {
        self.x_op()
    }
    fn clock(&self) -> &ComplexMatrix {
        self.z_op()
    }
    fn kind(&self) -> RepKind {
        RepKind::Number
    }
}

impl PauliRep for WeightRep {
    fn dim(&self) -> QuditDim {
        WeightRep::dim(self)
    }
    fn shift(&self) -> &ComplexMatrix {
        self.x_op()
    }
    fn clock(&self) -> &ComplexMatrix {
        self.z_op()
    }
    fn kind(&self) -> RepKind {
        RepKind::Weight
    }
}

impl PauliRep for PhaseRep {
    fn dim(&self) -> QuditDim {
        PhaseRep::dim(self)
    }
    fn shift(&self) -> &ComplexMatrix {
        self.x_op()
    }
    fn clock(&self) -> &ComplexMatrix {
        self.z_op()
    }
    fn kind(&self) -> RepKind {
        RepKind::Phase
    }
}

/// `X^a Z^b` with exponents reduced mod `d`.
#[derive(Clone, Debug)]
pub struct PauliElement {
    pub d: QuditDim,
    pub a: usize,
    pub b: usize,
    pub matrix: ComplexMatrix,
}

fn power_by_repetition(m: &ComplexMatrix, k: usize) -> ComplexMatrix {
    let mut out = ComplexMatrix::identity(m.rows());
    for _ in 0..k {
        out = &out * m;
    }
    out
}

pub fn pauli_element(rep: &dyn PauliRep, a: i64, b: i64) -> PauliElement {
    let d = rep.dim();
    let n = d.get() as i64;
    let (a, b) = (a.rem_euclid(n) as usize, b.rem_euclid(n) as usize);
    let matrix = &power_by_repetition(rep.shift(), a) * &power_by_repetition(rep.clock(), b);
    PauliElement { d, a, b, matrix }
}

/// Powers `M^0 … M^{d-1}` by successive multiplication.
fn power_table(m: &ComplexMatrix, d: usize) -> Vec<ComplexMatrix> {
    let mut table = Vec::with_capacity(d);
    table.push(ComplexMatrix::identity(m.rows()));
    for k in 1..d {
        let next = &table[k - 1] * m;
        table.push(next);
    }
    table
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommutationReport {
    pub d: usize,
    pub rep: RepKind,
    /// `exp(2πi/d)`.
    pub expected: Complex64,
    /// Least-squares `ω` in `ZX = ω XZ`.
    pub measured: Complex64,
    /// `‖ZX - exp(2πi/d)·XZ‖_max`.
    pub residual: f64,
}

/// Checks `Z·X = ω·X·Z` for `ω = exp(2πi/d)`.
pub fn commutation_phase(
    rep: &dyn PauliRep,
    tol: crate::Tolerance,
) -> Result<CommutationReport> {
    let d = rep.dim();
    let zx = rep.clock() * rep.shift();
    let xz = rep.shift() * rep.clock();
    let expected = d.omega();
    let residual = zx.max_abs_diff(&xz.scale(expected));
    let measured = hs_inner(&xz, &zx)? / hs_inner(&xz, &xz)?;
    if !tol.accepts(residual) {
        return Err(Error::RelationViolated {
            relation: format!("ZX = ωXZ ({} rep, d = {d})", rep.kind()),
            residual,
            tolerance: tol.get(),
        });
    }
    Ok(CommutationReport {
        d: d.get(),
        rep: rep.kind(),
        expected,
        measured,
        residual,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GramReport {
    pub d: usize,
    pub rep: RepKind,
    /// Full Gram matrix, indexed by `a·d + b`; absent for sampled checks.
    #[serde(skip)]
    pub gram: Option<ComplexMatrix>,
    /// `max |Gram - d·I|` over the entries examined.
    pub residual: f64,
    /// Largest deviation of a diagonal entry from `d`.
    pub diagonal_residual: f64,
    /// Number of `(a, b, c, e)` quadruples examined.
    pub checked: usize,
}

fn gram_report(
    rep: &dyn PauliRep,
    tol: crate::Tolerance,
    gram: Option<ComplexMatrix>,
    residual: f64,
    diagonal_residual: f64,
    checked: usize,
) -> Result<GramReport> {
    let worst = residual.max(diagonal_residual);
    if !tol.accepts(worst) {
        return Err(Error::BasisDegenerate {
            residual: worst,
            tolerance: tol.get(),
        });
    }
    Ok(GramReport {
        d: rep.dim().get(),
        rep: rep.kind(),
        gram,
        residual,
        diagonal_residual,
        checked,
    })
}

/// Full `d²×d²` Gram matrix `Tr[(X^aZ^b)† X^cZ^e]`; requires `d ≤ 64`.
pub fn basis_gram(rep: &dyn PauliRep, tol: crate::Tolerance) -> Result<GramReport> {
    let n = rep.dim().get();
    if n > MAX_FULL_GRAM_DIM {
        return Err(Error::InvalidArgument(format!(
            "full Gram matrix limited to d ≤ {MAX_FULL_GRAM_DIM}; use basis_gram_sampled for d = {n}"
        )));
    }
    let xs = power_table(rep.shift(), n);
    let zs = power_table(rep.clock(), n);
    let elements: Vec<ComplexMatrix> = (0..n * n)
        .into_par_iter()
        .map(|idx| &xs[idx / n] * &zs[idx % n])
        .collect();
    let size = n * n;
    let rows: Vec<Vec<Complex64>> = (0..size)
        .into_par_iter()
        .map(|r| {
            elements
                .iter()
                .map(|e| hs_inner(&elements[r], e).expect("elements share one shape"))
                .collect()
        })
        .collect();
    let gram = ComplexMatrix::new(size, size, rows.into_iter().flatten().collect())?;
    let target = ComplexMatrix::identity(size).scale(Complex64::new(n as f64, 0.0));
    let residual = gram.max_abs_diff(&target);
    let diagonal_residual = gram
        .diagonal()
        .iter()
        .map(|z| (z - Complex64::new(n as f64, 0.0)).norm())
        .fold(0.0, f64::max);
    gram_report(rep, tol, Some(gram), residual, diagonal_residual, size * size)
}

/// Gram entries on `samples` uniformly drawn `(a, b, c, e)` quadruples.
pub fn basis_gram_sampled(
    rep: &dyn PauliRep,
    samples: usize,
    seed: u64,
    tol: crate::Tolerance,
) -> Result<GramReport> {
    let n = rep.dim().get();
    let xs = power_table(rep.shift(), n);
    let zs = power_table(rep.clock(), n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let quads: Vec<[usize; 4]> = (0..samples)
        .map(|_| std::array::from_fn(|_| rng.random_range(0..n)))
        .collect();
    let deviations: Vec<(bool, f64)> = quads
        .par_iter()
        .map(|&[a, b, c, e]| {
            let left = &xs[a] * &zs[b];
            let right = &xs[c] * &zs[e];
            let value = hs_inner(&left, &right).expect("elements share one shape");
            let diagonal = a == c && b == e;
            let target = if diagonal { n as f64 } else { 0.0 };
            (diagonal, (value - Complex64::new(target, 0.0)).norm())
        })
        .collect();
    let residual = deviations.iter().map(|&(_, r)| r).fold(0.0, f64::max);
    let diagonal_residual = deviations
        .iter()
        .filter(|&&(diag, _)| diag)
        .map(|&(_, r)| r)
        .fold(0.0, f64::max);
    gram_report(rep, tol, None, residual, diagonal_residual, samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::unitarity_residual;
    use crate::Tolerance;
    use proptest::prelude::*;

    fn dim(n: usize) -> QuditDim {
        QuditDim::new(n).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn element_examples() {
        let rep = build_number_rep(dim(2)).unwrap();
        let id = pauli_element(&rep, 0, 0);
        assert_eq!(id.matrix, ComplexMatrix::identity(2));
        let xz = pauli_element(&rep, 1, 1);
        let expected =
            ComplexMatrix::new(2, 2, vec![c(0., 0.), c(-1., 0.), c(1., 0.), c(0., 0.)]).unwrap();
        assert_eq!(xz.matrix, expected);

        let rep3 = build_number_rep(dim(3)).unwrap();
        let e = pauli_element(&rep3, 2, 1);
        let oracle = &(rep3.x_op() * rep3.x_op()) * rep3.z_op();
        assert!(e.matrix.max_abs_diff(&oracle) <= 1e-15);
        let wrapped = pauli_element(&rep3, -1, 4);
        assert_eq!((wrapped.a, wrapped.b), (2, 1));
        assert!(unitarity_residual(&wrapped.matrix) <= 1e-10);
    }

    #[test]
    fn commutation_examples() {
        let r2 = build_number_rep(dim(2)).unwrap();
        let rep = commutation_phase(&r2, Tolerance::default()).unwrap();
        assert!((rep.measured - c(-1., 0.)).norm() < 1e-15);

        let r3 = build_number_rep(dim(3)).unwrap();
        let rep = commutation_phase(&r3, Tolerance::default()).unwrap();
        assert!(rep.residual <= 1e-12);
        assert!((rep.measured - dim(3).omega()).norm() <= 1e-12);
    }

    #[test]
    fn commutation_is_representation_independent() {
        for n in 2..=16 {
            let omegas: Vec<Complex64> = RepKind::ALL
                .iter()
                .map(|k| {
                    let rep = k.build(dim(n)).unwrap();
                    commutation_phase(rep.as_ref(), Tolerance::default()).unwrap().measured
                })
                .collect();
            assert!((omegas[0] - omegas[1]).norm() <= 1e-10, "d={n}");
            assert!((omegas[0] - omegas[2]).norm() <= 1e-10, "d={n}");
        }
    }

    #[test]
    fn violated_relation_is_an_error() {
        struct Swapped(NumberRep);
        impl PauliRep for Swapped {
            fn dim(&self) -> QuditDim {
                self.0.dim()
            }
            fn shift(&self) -> &ComplexMatrix {
                self.0.z_op()
            }
            fn clock(&self) -> &ComplexMatrix {
                self.0.x_op()
            }
            fn kind(&self) -> RepKind {
                RepKind::Number
            }
        }
        let bad = Swapped(build_number_rep(dim(3)).unwrap());
        assert!(matches!(
            commutation_phase(&bad, Tolerance::default()),
            Err(Error::RelationViolated { .. })
        ));
    }

    #[test]
    fn gram_examples() {
        let r2 = build_number_rep(dim(2)).unwrap();
        let g = basis_gram(&r2, Tolerance::new(1e-9).unwrap()).unwrap();
        let gram = g.gram.unwrap();
        assert_eq!(gram, ComplexMatrix::identity(4).scale(c(2., 0.)));

        let r3 = build_phase_rep(dim(3)).unwrap();
        let g = basis_gram(&r3, Tolerance::new(1e-9).unwrap()).unwrap();
        // brute-force trace oracle, element by element
        let gram = g.gram.unwrap();
        for idx in 0..9 {
            for jdx in 0..9 {
                let p = pauli_element(&r3, (idx / 3) as i64, (idx % 3) as i64).matrix;
                let q = pauli_element(&r3, (jdx / 3) as i64, (jdx % 3) as i64).matrix;
                let tr = (&p.adjoint() * &q).trace();
                assert!((gram[(idx, jdx)] - tr).norm() <= 1e-12);
            }
        }
        assert!(g.residual <= 1e-10);
        assert!(g.diagonal_residual <= 1e-12);
    }

    #[test]
    fn degenerate_basis_detected() {
        struct Commuting(NumberRep);
        impl PauliRep for Commuting {
            fn dim(&self) -> QuditDim {
                self.0.dim()
            }
            fn shift(&self) -> &ComplexMatrix {
                self.0.z_op()
            }
            fn clock(&self) -> &ComplexMatrix {
                self.0.z_op()
            }
            fn kind(&self) -> RepKind {
                RepKind::Number
            }
        }
        let bad = Commuting(build_number_rep(dim(3)).unwrap());
        assert!(matches!(
            basis_gram(&bad, Tolerance::default()),
            Err(Error::BasisDegenerate { .. })
        ));
    }

    #[test]
    fn gram_size_guard() {
        let rep = build_number_rep(dim(65)).unwrap();
        assert!(matches!(basis_gram(&rep, Tolerance::default()), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn sampled_gram_is_deterministic() {
        let rep = build_number_rep(dim(16)).unwrap();
        let tol = Tolerance::new(1e-9).unwrap();
        let a = basis_gram_sampled(&rep, 200, 7, tol).unwrap();
        let b = basis_gram_sampled(&rep, 200, 7, tol).unwrap();
        assert_eq!(a.residual.to_bits(), b.residual.to_bits());
        assert_eq!(a.checked, 200);
    }

    #[test]
    fn cyclic_generators() {
        for kind in RepKind::ALL {
            for n in [2, 3, 4, 5, 8] {
                let rep = kind.build(dim(n)).unwrap();
                let id = ComplexMatrix::identity(n);
                assert!(rep.shift().pow(n as u64).max_abs_diff(&id) <= 1e-9);
                assert!(rep.clock().pow(n as u64).max_abs_diff(&id) <= 1e-9);
            }
        }
    }

    #[test]
    fn rep_kind_parsing() {
        assert_eq!("phase".parse::<RepKind>().unwrap(), RepKind::Phase);
        assert!("position".parse::<RepKind>().is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        /// X^aZ^b · X^cZ^e = ω^{bc} X^{a+c} Z^{b+e}.
        #[test]
        fn group_law_with_phases(
            n in 2usize..=8,
            kind in prop::sample::select(RepKind::ALL.to_vec()),
            exps in prop::array::uniform4(0i64..8),
        ) {
            let rep = kind.build(dim(n)).unwrap();
            let [a, b, cc, e] = exps;
            let lhs = &pauli_element(rep.as_ref(), a, b).matrix * &pauli_element(rep.as_ref(), cc, e).matrix;
            let phase = crate::root_of_unity(b * cc, n);
            let rhs = pauli_element(rep.as_ref(), a + cc, b + e).matrix.scale(phase);
            prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-9);
        }
    }
}
