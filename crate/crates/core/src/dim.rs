use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest row or column count of any dense matrix this crate will allocate.
pub const MAX_DENSE_DIM: usize = 4096;

/// A validated qudit dimension `d ≥ 2`.
///
/// Carries the spin `j = (d - 1)/2` of the SU(2) irrep of the same dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct QuditDim(usize);

impl QuditDim {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::DimTooSmall(d));
        }
        if d > MAX_DENSE_DIM {
            return Err(Error::DimTooLarge {
                dim: d,
                max: MAX_DENSE_DIM,
            });
        }
        Ok(Self(d))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }

    /// Spin of the irrep, `(d - 1)/2`.
    pub fn spin(self) -> f64 {
        (self.0 as f64 - 1.0) / 2.0
    }

    /// `2j = d - 1`, exact.
    pub fn twice_spin(self) -> usize {
        self.0 - 1
    }

    pub fn is_even(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// Primitive root of unity `ω = exp(2πi/d)`.
    pub fn omega(self) -> Complex64 {
        root_of_unity(1, self.0)
    }

    /// The angle `2π/d`.
    pub fn unit_angle(self) -> f64 {
        2.0 * PI / self.0 as f64
    }
}

impl TryFrom<usize> for QuditDim {
    type Error = Error;

    fn try_from(d: usize) -> Result<Self> {
        Self::new(d)
    }
}

impl From<QuditDim> for usize {
    fn from(d: QuditDim) -> usize {
        d.0
    }
}

impl fmt::Display for QuditDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `exp(2πi k/d)` with `k` reduced mod `d`; quarter turns are exact.
pub fn root_of_unity(k: i64, d: usize) -> Complex64 {
    let d_i = d as i64;
    let k = k.rem_euclid(d_i);
    if (4 * k) % d_i == 0 {
        return match 4 * k / d_i {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / d as f64)
}

/// Absolute tolerance used by the verification predicates.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
pub struct Tolerance(f64);

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance(1e-10);

    pub fn new(abs_tol: f64) -> Result<Self> {
        if abs_tol > 0.0 && abs_tol < 1e-3 {
            Ok(Self(abs_tol))
        } else {
            Err(Error::InvalidTolerance(abs_tol))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    pub fn accepts(self, residual: f64) -> bool {
        residual <= self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Which basis a state's amplitudes are expressed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisTag {
    /// Oscillator number states `|n⟩`, equivalently `|j, j-n)_z`.
    NumberBasis,
    /// SU(2) weight states `|j,m)_z`, ordered `m = j, j-1, …, -j`.
    ZWeightBasis,
    /// SU(2) weight states `|j,m)_x`, ordered `m = j, j-1, …, -j`.
    XWeightBasis,
    /// Phase states (eigenstates of a phase operator).
    PhaseBasis,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_and_large_dims() {
        assert_eq!(QuditDim::new(1), Err(Error::DimTooSmall(1)));
        assert_eq!(QuditDim::new(0), Err(Error::DimTooSmall(0)));
        assert!(QuditDim::new(MAX_DENSE_DIM + 1).is_err());
        assert!(QuditDim::new(2).is_ok());
    }

    #[test]
    fn spin_metadata() {
        let d = QuditDim::new(4).unwrap();
        assert_eq!(d.spin(), 1.5);
        assert_eq!(d.twice_spin(), 3);
        assert!(d.is_even());
        assert!(!QuditDim::new(5).unwrap().is_even());
    }

    #[test]
    fn roots_of_unity_exact_quarters() {
        assert_eq!(root_of_unity(1, 2), Complex64::new(-1.0, 0.0));
        assert_eq!(root_of_unity(1, 4), Complex64::new(0.0, 1.0));
        assert_eq!(root_of_unity(-1, 4), Complex64::new(0.0, -1.0));
        assert_eq!(root_of_unity(7, 7), Complex64::new(1.0, 0.0));
        let w = root_of_unity(1, 3);
        assert!((w - Complex64::new(-0.5, 3f64.sqrt() / 2.0)).norm() < 1e-15);
    }

    #[test]
    fn tolerance_bounds() {
        assert!(Tolerance::new(0.0).is_err());
        assert!(Tolerance::new(1e-3).is_err());
        assert!(Tolerance::new(-1e-9).is_err());
        assert_eq!(Tolerance::new(1e-9).unwrap().get(), 1e-9);
        assert_eq!(Tolerance::default().get(), 1e-10);
    }
}
