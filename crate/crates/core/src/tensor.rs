//! Dense complex linear algebra: the operator carrier and the handful of
//! kernels every representation is built from.

use std::fmt;
use std::ops::{Add, Index, Mul, Sub};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dim::{root_of_unity, BasisTag, QuditDim, MAX_DENSE_DIM};
use crate::error::{Error, Result};

/// Hermiticity threshold for [`exp_i_hermitian`], in `‖h - h†‖_max`.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Normalization threshold for [`StateVector`], in `|Σ|a|² - 1|`.
pub const NORM_TOL: f64 = 1e-12;

/// Dense row-major complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument(format!(
                "matrix dims must be positive, got {rows}x{cols}"
            )));
        }
        check_dense_dims(rows, cols)?;
        if entries.len() != rows * cols {
            return Err(Error::EntryCount {
                rows,
                cols,
                found: entries.len(),
            });
        }
        if let Some(i) = entries.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix entry by entry. Panics on non-finite output.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self::new(rows, cols, entries).expect("from_fn produced an invalid matrix")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![Complex64::new(1.0, 0.0); n])
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in diag.iter().enumerate() {
            m.entries[i * n + i] = v;
        }
        m
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let diag: Vec<Complex64> = diag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_diagonal(&diag)
    }

    /// Matrix whose `k`-th column is `columns[k]`.
    pub fn from_columns(columns: &[Vec<Complex64>]) -> Result<Self> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        if let Some(bad) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::DimMismatch {
                expected: format!("column length {rows}"),
                found: format!("{}", bad.len()),
            });
        }
        let mut entries = vec![Complex64::new(0.0, 0.0); rows * cols];
        for (c, col) in columns.iter().enumerate() {
            for (r, &v) in col.iter().enumerate() {
                entries[r * cols + c] = v;
            }
        }
        Self::new(rows, cols, entries)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map(|z| z * s)
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self::new(self.rows, self.cols, self.entries.iter().map(|&z| f(z)).collect())
            .expect("map produced an invalid matrix")
    }

    pub fn trace(&self) -> Complex64 {
        self.diagonal().iter().sum()
    }

    /// Matrix product, checked.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimMismatch {
                expected: format!("{} rows on the right", self.cols),
                found: format!("{}", rhs.rows),
            });
        }
        let (n, k, m) = (self.rows, self.cols, rhs.cols);
        let mut out = vec![Complex64::new(0.0, 0.0); n * m];
        for i in 0..n {
            let row = &mut out[i * m..(i + 1) * m];
            for l in 0..k {
                let a = self.entries[i * k + l];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let rhs_row = &rhs.entries[l * m..(l + 1) * m];
                for (o, &b) in row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Self::new(n, m, out)
    }

    /// `self^exp` by repeated squaring. Square matrices only.
    pub fn pow(&self, mut exp: u64) -> Self {
        assert!(self.is_square(), "pow of a non-square matrix");
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = &result * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix");
        (0..self.rows)
            .map(|r| {
                self.entries[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `‖self - other‖_max`; infinite if the shapes differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `‖h - h†‖_max`.
    pub fn hermiticity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst: f64 = 0.0;
        for r in 0..n {
            for c in r..n {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// Contiguous block `rows[r0..r0+nr] x cols[c0..c0+nc]`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols, "block out of range");
        Self::from_fn(nr, nc, |r, c| self[(r0 + r, c0 + c)])
    }

    /// Commutator `[self, other]`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.entries)
    }

    fn from_nalgebra(m: &DMatrix<Complex64>) -> Result<Self> {
        let (rows, cols) = m.shape();
        let entries = (0..rows)
            .flat_map(|r| (0..cols).map(move |c| (r, c)))
            .map(|(r, c)| m[(r, c)])
            .collect();
        Self::new(rows, cols, entries)
    }
}

fn check_dense_dims(rows: usize, cols: usize) -> Result<()> {
    if rows > MAX_DENSE_DIM || cols > MAX_DENSE_DIM {
        return Err(Error::DimensionOverflow {
            rows,
            cols,
            max: MAX_DENSE_DIM,
        });
    }
    Ok(())
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of range");
        &self.entries[r * self.cols + c]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_mul(rhs).expect("matrix product dimension mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect();
        ComplexMatrix::new(self.rows, self.cols, entries).expect("sum overflowed")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect();
        ComplexMatrix::new(self.rows, self.cols, entries).expect("difference overflowed")
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRecord {
    rows: usize,
    cols: usize,
    entries: Vec<[f64; 2]>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRecord {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| [z.re, z.im]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rec = MatrixRecord::deserialize(deserializer)?;
        let entries = rec
            .entries
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect();
        ComplexMatrix::new(rec.rows, rec.cols, entries).map_err(serde::de::Error::custom)
    }
}

/// Normalized amplitude vector tagged with the basis it is expressed in.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
    basis: BasisTag,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>, basis: BasisTag) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidArgument("empty state vector".into()));
        }
        if let Some(i) = amplitudes.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self { amplitudes, basis })
    }

    /// Rescales to unit norm before validating.
    pub fn normalized(amplitudes: Vec<Complex64>, basis: BasisTag) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized {
                norm_sqr: norm * norm,
            });
        }
        Self::new(amplitudes.into_iter().map(|z| z / norm).collect(), basis)
    }

    pub fn basis_state(dim: usize, index: usize, basis: BasisTag) -> Result<Self> {
        if index >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for dim {dim}"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self::new(amplitudes, basis)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    /// `⟨self|other⟩`; both states must be expressed in the same basis.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch {
                left: self.basis,
                right: other.basis,
            });
        }
        if self.dim() != other.dim() {
            return Err(Error::DimMismatch {
                expected: self.dim().to_string(),
                found: other.dim().to_string(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Applies an operator; the result is tagged `basis`, which is how basis
    /// changes are expressed.
    pub fn transformed(&self, op: &ComplexMatrix, basis: BasisTag) -> Result<Self> {
        if op.cols() != self.dim() {
            return Err(Error::DimMismatch {
                expected: format!("{} operator columns", self.dim()),
                found: op.cols().to_string(),
            });
        }
        Self::new(op.apply(&self.amplitudes), basis)
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let rows = a.rows.checked_mul(b.rows).ok_or(Error::DimensionOverflow {
        rows: usize::MAX,
        cols: 0,
        max: MAX_DENSE_DIM,
    })?;
    let cols = a.cols.checked_mul(b.cols).ok_or(Error::DimensionOverflow {
        rows: 0,
        cols: usize::MAX,
        max: MAX_DENSE_DIM,
    })?;
    check_dense_dims(rows, cols)?;
    let mut entries = vec![Complex64::new(0.0, 0.0); rows * cols];
    for ar in 0..a.rows {
        for ac in 0..a.cols {
            let av = a[(ar, ac)];
            for br in 0..b.rows {
                let row = ar * b.rows + br;
                for bc in 0..b.cols {
                    entries[row * cols + ac * b.cols + bc] = av * b[(br, bc)];
                }
            }
        }
    }
    ComplexMatrix::new(rows, cols, entries)
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns ascending eigenvalues and the unitary whose columns are the
/// matching eigenvectors.
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let residual = h.hermiticity_residual();
    if residual > HERMITIAN_TOL {
        return Err(Error::NotHermitian { residual });
    }
    let n = h.rows();
    // Remove the sub-tolerance anti-Hermitian part before handing off.
    let sym = {
        let m = h.to_nalgebra();
        (&m + m.adjoint()) * Complex64::new(0.5, 0.0)
    };
    let eig = SymmetricEigen::try_new(sym, f64::EPSILON, 0).ok_or(Error::EigenFailure(n))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::EigenFailure(n));
    }
    let vectors = ComplexMatrix::from_nalgebra(&eig.eigenvectors.select_columns(order.iter()))?;
    Ok((values, vectors))
}

/// `exp(i·scale·h)` for Hermitian `h`, through its eigendecomposition.
pub fn exp_i_hermitian(h: &ComplexMatrix, scale: f64) -> Result<ComplexMatrix> {
    if !scale.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite scale {scale}")));
    }
    let (values, vectors) = hermitian_eigen(h)?;
    let phases: Vec<Complex64> = values
        .iter()
        .map(|&lambda| Complex64::from_polar(1.0, scale * lambda))
        .collect();
    Ok(spectral_product(&vectors, &phases))
}

/// `V · diag(values) · V†`.
pub fn spectral_product(vectors: &ComplexMatrix, values: &[Complex64]) -> ComplexMatrix {
    assert_eq!(vectors.cols(), values.len(), "one value per eigenvector");
    let n = vectors.rows();
    let scaled = ComplexMatrix::from_fn(n, values.len(), |r, c| vectors[(r, c)] * values[c]);
    &scaled * &vectors.adjoint()
}

/// Sign of the exponent in a discrete Fourier transform.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DftSign {
    Plus,
    Minus,
}

impl DftSign {
    pub fn value(self) -> i32 {
        match self {
            DftSign::Plus => 1,
            DftSign::Minus => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            DftSign::Plus => DftSign::Minus,
            DftSign::Minus => DftSign::Plus,
        }
    }

    pub fn from_value(v: i32) -> Result<Self> {
        match v {
            1 => Ok(DftSign::Plus),
            -1 => Ok(DftSign::Minus),
            _ => Err(Error::InvalidArgument(format!("sign must be ±1, got {v}"))),
        }
    }
}

/// `F[n, s] = exp(sign·2πi·n·s/d)/√d`.
pub fn dft_matrix(d: QuditDim, sign: DftSign) -> ComplexMatrix {
    let n = d.get();
    let norm = 1.0 / (n as f64).sqrt();
    let sign = sign.value() as i64;
    ComplexMatrix::from_fn(n, n, |r, c| {
        let k = sign * ((r * c) % n) as i64;
        root_of_unity(k, n) * norm
    })
}

/// Hilbert–Schmidt inner product `Tr(a†·b)`.
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Complex64> {
    if !a.is_square() || a.rows != b.rows || a.cols != b.cols {
        return Err(Error::DimMismatch {
            expected: format!("{}x{} square", a.rows, a.cols),
            found: format!("{}x{}", b.rows, b.cols),
        });
    }
    Ok(a.entries.iter().zip(&b.entries).map(|(x, y)| x.conj() * y).sum())
}

/// `‖u†u - I‖_max`.
pub fn unitarity_residual(u: &ComplexMatrix) -> f64 {
    let gram = &u.adjoint() * u;
    gram.max_abs_diff(&ComplexMatrix::identity(u.cols()))
}

/// `‖a - b‖_max`, checked for equal shapes.
pub fn max_norm_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if a.rows != b.rows || a.cols != b.cols {
        return Err(Error::DimMismatch {
            expected: format!("{}x{}", a.rows, a.cols),
            found: format!("{}x{}", b.rows, b.cols),
        });
    }
    Ok(a.max_abs_diff(b))
}
