//! Finite-`d` sweeps of residuals and structural diagnostics, exported as
//! `d,metric,value` CSV rows.

use std::cell::OnceCell;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::dim::QuditDim;
use crate::error::{Error, Result};
use crate::gates::{calibrate_sum, fourier_gate, kerr_phases};
use crate::json::fmt_f64;
use crate::number_rep::{build_number_rep, NumberRep};
use crate::pauli::PauliRep;
use crate::su2_rep::{build_phase_rep, build_weight_rep, PhaseRep, WeightRep};
use crate::tensor::{hermitian_eigen, unitarity_residual, ComplexMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    /// `max_rep ‖ZX - ωXZ‖_max`.
    Eq4Residual,
    XUnitarity,
    ZUnitarity,
    FourierUnitarity,
    SumUnitarity,
    /// `max_rep ‖X^d - I‖_max`.
    XdPowerResidual,
    /// `max_rep ‖Z^d - I‖_max`.
    ZdPowerResidual,
    /// `‖G - I‖_max` for the Gram matrix of the SU(2) phase states.
    PhaseStateGramResidual,
    /// `max_k |eig_k(θ̂_z) - k|`.
    ThetaSpectrumDeviation,
    /// Worst basis-input fidelity of the calibrated SUM gate.
    SumFidelityWorst,
    /// `‖[θ̂_z·2π/d, N̂] - i·I‖_max` on the central `⌊d/2⌋` block.
    /// Descriptive only: no convergence is asserted.
    ConjugacyDiagnostic,
}

impl Metric {
    pub const ALL: [Metric; 11] = [
        Metric::Eq4Residual,
        Metric::XUnitarity,
        Metric::ZUnitarity,
        Metric::FourierUnitarity,
        Metric::SumUnitarity,
        Metric::XdPowerResidual,
        Metric::ZdPowerResidual,
        Metric::PhaseStateGramResidual,
        Metric::ThetaSpectrumDeviation,
        Metric::SumFidelityWorst,
        Metric::ConjugacyDiagnostic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Eq4Residual => "eq4_residual",
            Metric::XUnitarity => "x_unitarity_residual",
            Metric::ZUnitarity => "z_unitarity_residual",
            Metric::FourierUnitarity => "fourier_unitarity_residual",
            Metric::SumUnitarity => "sum_unitarity_residual",
            Metric::XdPowerResidual => "xd_power_residual",
            Metric::ZdPowerResidual => "zd_power_residual",
            Metric::PhaseStateGramResidual => "phase_state_gram_residual",
            Metric::ThetaSpectrumDeviation => "theta_spectrum_deviation",
            Metric::SumFidelityWorst => "sum_fidelity_worst",
            Metric::ConjugacyDiagnostic => "conjugacy_diagnostic",
        }
    }

    /// Residual metrics are correctness checks that should sit near zero;
    /// the others are fidelities or descriptive numbers.
    pub fn is_residual(self) -> bool {
        !matches!(self, Metric::SumFidelityWorst | Metric::ConjugacyDiagnostic)
    }

    pub fn parse_list(names: &str) -> Result<Vec<Metric>> {
        let mut out = Vec::new();
        for name in names.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if name == "all" {
                out.extend(Metric::ALL);
            } else {
                out.push(name.parse()?);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::UnknownMetric(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRecord {
    pub d: usize,
    pub metric: String,
    pub value: f64,
}

/// Powers of two from 2 to 256 plus 3, 5, 9, 17.
pub fn default_dims() -> Vec<usize> {
    let mut dims: Vec<usize> = (1..=8).map(|k| 1usize << k).collect();
    dims.extend([3, 5, 9, 17]);
    dims.sort_unstable();
    dims
}

/// Parses a dimension list: comma-separated integers, inclusive ranges
/// `a:b`, stepped ranges `a:b:k`, power-of-two ranges `a:b:pow2`, or
/// `default`.
pub fn parse_dims(text: &str) -> Result<Vec<usize>> {
    let bad = |item: &str| Error::InvalidArgument(format!("cannot parse dimension list item `{item}`"));
    let num = |s: &str, item: &str| s.trim().parse::<usize>().map_err(|_| bad(item));
    let mut dims = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if item == "default" {
            dims.extend(default_dims());
            continue;
        }
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [single] => dims.push(num(single, item)?),
            [lo, hi] => dims.extend(num(lo, item)?..=num(hi, item)?),
            [lo, hi, "pow2"] => {
                let (lo, hi) = (num(lo, item)?, num(hi, item)?);
                let mut p = 1usize;
                while p <= hi {
                    if p >= lo {
                        dims.push(p);
                    }
                    p = p.checked_mul(2).ok_or_else(|| bad(item))?;
                }
            }
            [lo, hi, step] => {
                let step = num(step, item)?;
                if step == 0 {
                    return Err(bad(item));
                }
                dims.extend((num(lo, item)?..=num(hi, item)?).step_by(step));
            }
            _ => return Err(bad(item)),
        }
    }
    if dims.is_empty() {
        return Err(Error::InvalidArgument("empty dimension list".into()));
    }
    for &d in &dims {
        QuditDim::new(d)?;
    }
    dims.sort_unstable();
    dims.dedup();
    Ok(dims)
}

/// Lazily built operators for one dimension, shared across metrics.
struct Context {
    d: QuditDim,
    number: OnceCell<Result<NumberRep>>,
    weight: OnceCell<Result<WeightRep>>,
    phase: OnceCell<Result<PhaseRep>>,
}

impl Context {
    fn new(d: QuditDim) -> Self {
        Self {
            d,
            number: OnceCell::new(),
            weight: OnceCell::new(),
            phase: OnceCell::new(),
        }
    }

    fn number(&self) -> Result<&NumberRep> {
        self.number
            .get_or_init(|| build_number_rep(self.d))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn weight(&self) -> Result<&WeightRep> {
        self.weight
            .get_or_init(|| build_weight_rep(self.d))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn phase(&self) -> Result<&PhaseRep> {
        self.phase
            .get_or_init(|| build_phase_rep(self.d))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn max_over_reps(&self, f: impl Fn(&dyn PauliRep) -> f64) -> Result<f64> {
        let reps: [&dyn PauliRep; 3] = [self.number()?, self.weight()?, self.phase()?];
        Ok(reps.into_iter().map(f).fold(0.0, f64::max))
    }

    fn evaluate(&self, metric: Metric) -> Result<f64> {
        let n = self.d.get();
        let identity = || ComplexMatrix::identity(n);
        match metric {
            Metric::Eq4Residual => self.max_over_reps(|r| {
                let zx = r.clock() * r.shift();
                let xz = r.shift() * r.clock();
                zx.max_abs_diff(&xz.scale(self.d.omega()))
            }),
            Metric::XUnitarity => self.max_over_reps(|r| unitarity_residual(r.shift())),
            Metric::ZUnitarity => self.max_over_reps(|r| unitarity_residual(r.clock())),
            Metric::FourierUnitarity => Ok(unitarity_residual(&fourier_gate(self.d))),
            Metric::SumUnitarity => {
                // The gate is diagonal, so u†u - I = diag(|p|² - 1).
                let cal = calibrate_sum(self.d, 1.0)?;
                let phases = kerr_phases(self.d, cal.chi, cal.t_star)?;
                Ok(phases
                    .iter()
                    .map(|p| (p.norm_sqr() - 1.0).abs())
                    .fold(0.0, f64::max))
            }
            Metric::XdPowerResidual => {
                self.max_over_reps(|r| r.shift().pow(n as u64).max_abs_diff(&identity()))
            }
            Metric::ZdPowerResidual => {
                self.max_over_reps(|r| r.clock().pow(n as u64).max_abs_diff(&identity()))
            }
            Metric::PhaseStateGramResidual => {
                let p = self.phase()?.phase_state_matrix();
                Ok((&p.adjoint() * &p).max_abs_diff(&identity()))
            }
            Metric::ThetaSpectrumDeviation => {
                let (values, _) = hermitian_eigen(self.number()?.theta_z())?;
                Ok(values
                    .iter()
                    .enumerate()
                    .map(|(k, v)| (v - k as f64).abs())
                    .fold(0.0, f64::max))
            }
            Metric::SumFidelityWorst => match calibrate_sum(self.d, 1.0) {
                Ok(cal) => Ok(cal.fidelity),
                Err(Error::CalibrationFailed { best_fidelity, .. }) => Ok(best_fidelity),
                Err(e) => Err(e),
            },
            Metric::ConjugacyDiagnostic => {
                let rep = self.number()?;
                let comm = rep.angle_operator().commutator(rep.n_op());
                let shifted = &comm - &identity().scale(Complex64::new(0.0, 1.0));
                let len = n / 2;
                let start = (n - len) / 2;
                Ok(shifted.block(start, start, len, len).max_abs())
            }
        }
    }
}

/// One record per `(metric, d)`, sorted by metric name then `d`.
pub fn run_sweep(metrics: &[Metric], dims: &[usize]) -> Result<Vec<SweepRecord>> {
    let dims: Vec<QuditDim> = dims.iter().map(|&d| QuditDim::new(d)).collect::<Result<_>>()?;
    let per_dim: Vec<Vec<SweepRecord>> = dims
        .par_iter()
        .map(|&d| {
            let ctx = Context::new(d);
            metrics
                .iter()
                .map(|&m| {
                    let value = ctx.evaluate(m)?;
                    if !value.is_finite() {
                        return Err(Error::NonFinite(0));
                    }
                    Ok(SweepRecord {
                        d: d.get(),
                        metric: m.name().to_string(),
                        value,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut records: Vec<SweepRecord> = per_dim.into_iter().flatten().collect();
    records.sort_by(|a, b| a.metric.cmp(&b.metric).then(a.d.cmp(&b.d)));
    records.dedup_by(|a, b| a.metric == b.metric && a.d == b.d);
    Ok(records)
}

/// Same as [`run_sweep`] but looks metrics up by name.
pub fn run_sweep_by_name(names: &[&str], dims: &[usize]) -> Result<Vec<SweepRecord>> {
    let metrics = names.iter().map(|n| n.parse()).collect::<Result<Vec<Metric>>>()?;
    run_sweep(&metrics, dims)
}

/// Writes `d,metric,value` rows with 17-significant-digit values.
pub fn write_csv<W: Write>(records: &[SweepRecord], mut out: W) -> io::Result<()> {
    writeln!(out, "d,metric,value")?;
    for r in records {
        writeln!(out, "{},{},{}", r.d, r.metric, fmt_f64(r.value))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metric_names_round_trip() {
        for m in Metric::ALL {
            assert_eq!(m.name().parse::<Metric>().unwrap(), m);
        }
        assert!(matches!("nope".parse::<Metric>(), Err(Error::UnknownMetric(_))));
        assert_eq!(Metric::parse_list("all").unwrap().len(), Metric::ALL.len());
    }

    #[test]
    fn dims_parsing() {
        assert_eq!(parse_dims("2,3,4").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_dims("2:256:pow2").unwrap(), vec![2, 4, 8, 16, 32, 64, 128, 256]);
        assert_eq!(parse_dims("3:9:3").unwrap(), vec![3, 6, 9]);
        assert_eq!(parse_dims("4:6,2").unwrap(), vec![2, 4, 5, 6]);
        assert_eq!(parse_dims("default").unwrap(), default_dims());
        assert!(parse_dims("1,2").is_err());
        assert!(parse_dims("x").is_err());
        assert!(parse_dims("").is_err());
    }

    #[test]
    fn default_grid() {
        assert_eq!(default_dims(), vec![2, 3, 4, 5, 8, 9, 16, 17, 32, 64, 128, 256]);
    }

    #[test]
    fn sweep_examples() {
        let recs = run_sweep(&[Metric::Eq4Residual], &[2, 4, 8]).unwrap();
        assert_eq!(recs.len(), 3);
        assert!(recs.iter().all(|r| r.value <= 1e-12));

        let recs = run_sweep(&[Metric::XdPowerResidual], &[16]).unwrap();
        assert!(recs[0].value <= 1e-10);

        let recs = run_sweep(&[Metric::SumFidelityWorst], &(2..=8).collect::<Vec<_>>()).unwrap();
        assert!(recs.iter().all(|r| r.value >= 1.0 - 1e-9));
    }

    #[test]
    fn unknown_metric_by_name() {
        assert!(matches!(
            run_sweep_by_name(&["eq4_residual", "bogus"], &[2]),
            Err(Error::UnknownMetric(_))
        ));
    }

    #[test]
    fn residual_metrics_small_through_64() {
        let residuals: Vec<Metric> = Metric::ALL.into_iter().filter(|m| m.is_residual()).collect();
        let recs = run_sweep(&residuals, &[2, 3, 5, 8, 17, 32, 64]).unwrap();
        for r in &recs {
            assert!(r.value <= 1e-9, "{} at d={} = {:e}", r.metric, r.d, r.value);
        }
    }

    #[test]
    fn conjugacy_diagnostic_is_reported() {
        let recs = run_sweep(&[Metric::ConjugacyDiagnostic], &[2, 8, 32]).unwrap();
        // The commutator has a zero diagonal, so the distance from i·I is at least 1.
        assert!(recs.iter().all(|r| r.value >= 1.0 - 1e-12 && r.value.is_finite()));
    }

    #[test]
    fn csv_is_deterministic() {
        let metrics = Metric::parse_list("eq4_residual,theta_spectrum_deviation").unwrap();
        let render = || {
            let mut buf = Vec::new();
            write_csv(&run_sweep(&metrics, &[2, 3, 5]).unwrap(), &mut buf).unwrap();
            buf
        };
        let a = render();
        assert_eq!(a, render());
        let text = String::from_utf8(a).unwrap();
        assert!(text.starts_with("d,metric,value\n"));
        assert_eq!(text.lines().count(), 7);
        assert!(text.lines().nth(1).unwrap().starts_with("2,eq4_residual,"));
    }
}
