//! Dense complex matrices, the fixed structural matrices (lifted Paulis,
//! symplectic form, Cayley matrix) and tolerance-governed predicates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const I: C64 = C64::new(0.0, 1.0);

pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Tolerances shared by every equality and membership test.
///
/// Comparisons are relative to `max(1, ‖·‖)` of the matrices involved.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ToleranceConfig {
    pub atol: f64,
    pub psd_slack: f64,
    pub cond_max: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self { atol: 1e-9, psd_slack: 1e-9, cond_max: 1e12 }
    }
}

impl ToleranceConfig {
    pub fn new(atol: f64, psd_slack: f64, cond_max: f64) -> Result<Self> {
        for (name, v) in [("atol", atol), ("psd_slack", psd_slack), ("cond_max", cond_max)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Parameter(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(Self { atol, psd_slack, cond_max })
    }

    pub fn with_atol(self, atol: f64) -> Result<Self> {
        Self::new(atol, self.psd_slack, self.cond_max)
    }

    /// Absolute threshold for a residual measured against a quantity of size `norm`.
    pub fn abs(&self, norm: f64) -> f64 {
        self.atol * norm.max(1.0)
    }

    pub fn slack(&self, norm: f64) -> f64 {
        self.psd_slack * norm.max(1.0)
    }
}

/// Dense complex matrix. Entries are always finite when built through the
/// checked constructors.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<C64>);

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix{}", self.0)
    }
}

impl ComplexMatrix {
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            Ok(Self(m))
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let r = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(DMatrix::from_fn(r, cols, |i, j| rows[i][j]))
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<C64>> =
            rows.iter().map(|r| r.iter().map(|&x| c(x, 0.0)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn from_real(m: &DMatrix<f64>) -> Self {
        Self(m.map(|x| c(x, 0.0)))
    }

    pub fn from_fn(r: usize, cols: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        Self(DMatrix::from_fn(r, cols, f))
    }

    pub fn zeros(r: usize, cols: usize) -> Self {
        Self(DMatrix::zeros(r, cols))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn scalar(n: usize, s: C64) -> Self {
        Self(DMatrix::from_diagonal_element(n, n, s))
    }

    pub fn diag_real(d: &[f64]) -> Self {
        let n = d.len();
        Self::from_fn(n, n, |i, j| if i == j { c(d[i], 0.0) } else { C64::default() })
    }

    pub fn inner(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<C64> {
        self.0
    }

    pub fn nrows(&self) -> usize {
        self.0.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    pub fn rows(&self) -> Vec<Vec<C64>> {
        (0..self.nrows()).map(|i| (0..self.ncols()).map(|j| self.0[(i, j)]).collect()).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn conj(&self) -> Self {
        Self(self.0.map(|z| z.conj()))
    }

    pub fn re(&self) -> DMatrix<f64> {
        self.0.map(|z| z.re)
    }

    pub fn im(&self) -> DMatrix<f64> {
        self.0.map(|z| z.im)
    }

    pub fn scale(&self, s: C64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    pub fn scale_re(&self, s: f64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn determinant(&self) -> C64 {
        self.0.determinant()
    }

    /// Spectral norm (largest singular value).
    pub fn norm(&self) -> f64 {
        if self.0.is_empty() {
            return 0.0;
        }
        self.0.clone().svd(false, false).singular_values.max()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Spectral norm of `self - other`.
    pub fn dist(&self, other: &Self) -> f64 {
        (self - other).norm()
    }

    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        Self(self.0.view((r0, c0), (nr, nc)).into_owned())
    }

    /// `[[a, b], [c, d]]` from four equally sized square blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let (n, m) = (a.nrows(), a.ncols());
        let mut out = DMatrix::zeros(2 * n, 2 * m);
        out.view_mut((0, 0), (n, m)).copy_from(&a.0);
        out.view_mut((0, m), (n, m)).copy_from(&b.0);
        out.view_mut((n, 0), (n, m)).copy_from(&c.0);
        out.view_mut((n, m), (n, m)).copy_from(&d.0);
        Self(out)
    }

    pub fn direct_sum(a: &Self, b: &Self) -> Self {
        let mut out = DMatrix::zeros(a.nrows() + b.nrows(), a.ncols() + b.ncols());
        out.view_mut((0, 0), (a.nrows(), a.ncols())).copy_from(&a.0);
        out.view_mut((a.nrows(), a.ncols()), (b.nrows(), b.ncols())).copy_from(&b.0);
        Self(out)
    }

    pub fn hermitian_part(&self) -> Self {
        Self((&self.0 + self.0.adjoint()) * c(0.5, 0.0))
    }

    pub fn symmetric_part(&self) -> Self {
        Self((&self.0 + self.0.transpose()) * c(0.5, 0.0))
    }

    pub fn ensure_finite(self) -> Result<Self> {
        Self::new(self.0)
    }

    /// Ratio of extreme singular values; infinite for exactly singular input.
    pub fn condition(&self) -> f64 {
        let sv = self.0.clone().svd(false, false).singular_values;
        let (max, min) = (sv.max(), sv.min());
        if min == 0.0 || !min.is_finite() {
            f64::INFINITY
        } else {
            max / min
        }
    }

    /// Inverse guarded by the condition estimate.
    pub fn inverse(&self, tol: &ToleranceConfig) -> Result<Self> {
        self.inverse_or(tol, |condition| Error::Singular { condition })
    }

    pub(crate) fn inverse_or(
        &self,
        tol: &ToleranceConfig,
        err: impl Fn(f64) -> Error,
    ) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "cannot invert {}x{} matrix",
                self.nrows(),
                self.ncols()
            )));
        }
        let condition = self.condition();
        if !(condition <= tol.cond_max) {
            return Err(err(condition));
        }
        match self.0.clone().lu().try_inverse() {
            Some(inv) => Self::new(inv).map_err(|_| err(condition)),
            None => Err(err(condition)),
        }
    }

    /// Eigenvalues (ascending) and orthonormal eigenvectors of the Hermitian part.
    pub fn hermitian_eigen(&self) -> (Vec<f64>, Self) {
        let h = self.hermitian_part();
        let eig = SymmetricEigen::new(h.0);
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let n = eig.eigenvectors.nrows();
        let vectors = DMatrix::from_fn(n, order.len(), |i, j| eig.eigenvectors[(i, order[j])]);
        (values, Self(vectors))
    }

    /// Apply a real function to the spectrum of the Hermitian part.
    pub(crate) fn hermitian_map(&self, f: impl Fn(f64) -> f64) -> Self {
        let (vals, v) = self.hermitian_eigen();
        let n = vals.len();
        let d = DMatrix::from_fn(n, n, |i, j| if i == j { c(f(vals[i]), 0.0) } else { C64::default() });
        Self(&v.0 * d * v.0.adjoint())
    }

    /// `‖M - M†‖`, measured in the spectral norm.
    pub fn hermitian_residual(&self) -> f64 {
        self.dist(&self.adjoint())
    }

    pub fn symmetric_residual(&self) -> f64 {
        self.dist(&self.transpose())
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $op:tt) => {
        impl $tr<&ComplexMatrix> for &ComplexMatrix {
            type Output = ComplexMatrix;
            fn $f(self, rhs: &ComplexMatrix) -> ComplexMatrix {
                ComplexMatrix(&self.0 $op &rhs.0)
            }
        }
        impl $tr<ComplexMatrix> for ComplexMatrix {
            type Output = ComplexMatrix;
            fn $f(self, rhs: ComplexMatrix) -> ComplexMatrix {
                ComplexMatrix(self.0 $op rhs.0)
            }
        }
        impl $tr<&ComplexMatrix> for ComplexMatrix {
            type Output = ComplexMatrix;
            fn $f(self, rhs: &ComplexMatrix) -> ComplexMatrix {
                ComplexMatrix(self.0 $op &rhs.0)
            }
        }
        impl $tr<ComplexMatrix> for &ComplexMatrix {
            type Output = ComplexMatrix;
            fn $f(self, rhs: ComplexMatrix) -> ComplexMatrix {
                ComplexMatrix(&self.0 $op rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix(-&self.0)
    }
}

impl Neg for ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix(-self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Lifted Pauli matrix of size 2m×2m built from m×m identity blocks.
pub fn pauli_lifted(axis: Axis, m: usize) -> Result<ComplexMatrix> {
    if m == 0 {
        return Err(Error::Parameter("block size must be at least 1".into()));
    }
    Ok(sigma(axis, m))
}

pub(crate) fn sigma(axis: Axis, m: usize) -> ComplexMatrix {
    let id = ComplexMatrix::identity(m);
    let zero = ComplexMatrix::zeros(m, m);
    match axis {
        Axis::X => ComplexMatrix::from_blocks(&zero, &id, &id, &zero),
        Axis::Y => ComplexMatrix::from_blocks(&zero, &id.scale(-I), &id.scale(I), &zero),
        Axis::Z => ComplexMatrix::from_blocks(&id, &zero, &zero, &-&id),
    }
}

pub fn sigma_x(m: usize) -> ComplexMatrix {
    sigma(Axis::X, m)
}

pub fn sigma_y(m: usize) -> ComplexMatrix {
    sigma(Axis::Y, m)
}

pub fn sigma_z(m: usize) -> ComplexMatrix {
    sigma(Axis::Z, m)
}

/// Standard symplectic form `[[0, I], [-I, 0]]`.
pub fn omega(n: usize) -> ComplexMatrix {
    let id = ComplexMatrix::identity(n);
    let zero = ComplexMatrix::zeros(n, n);
    ComplexMatrix::from_blocks(&zero, &id, &-&id, &zero)
}

pub fn omega_real(n: usize) -> DMatrix<f64> {
    omega(n).re()
}

/// Cayley matrix `(1/√2)[[I, -iI], [I, iI]]`.
pub fn cayley_gamma(n: usize) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::Parameter("mode count must be at least 1".into()));
    }
    Ok(gamma(n))
}

pub(crate) fn gamma(n: usize) -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let id = ComplexMatrix::identity(n).scale_re(s);
    ComplexMatrix::from_blocks(&id, &id.scale(-I), &id, &id.scale(I))
}

pub(crate) fn even_half(m: &ComplexMatrix) -> Result<usize> {
    if !m.is_square() || m.nrows() % 2 != 0 || m.nrows() == 0 {
        return Err(Error::Dimension(format!(
            "expected non-empty square matrix of even size, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(m.nrows() / 2)
}

/// `Γ X Γ†` for a 2n×2n input.
pub fn abc_conjugate(x: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = even_half(x)?;
    let g = gamma(n);
    Ok(&g * x * g.adjoint())
}

/// Inverse of [`abc_conjugate`]: `Γ† X Γ`.
pub fn abc_unconjugate(x: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = even_half(x)?;
    let g = gamma(n);
    Ok(g.adjoint() * x * &g)
}

pub fn abc_residual(m: &ComplexMatrix) -> Result<f64> {
    let n = even_half(m)?;
    let sx = sigma_x(n);
    Ok((m * &sx).dist(&(&sx * m.conj())))
}

pub fn is_abc(m: &ComplexMatrix, tol: &ToleranceConfig) -> Result<bool> {
    Ok(abc_residual(m)? <= tol.abs(m.norm()))
}

/// Position of the smallest eigenvalue relative to the slack band.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsdStatus {
    Positive,
    Boundary,
    Negative,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsdReport {
    pub min_eigenvalue: f64,
    pub slack: f64,
}

impl PsdReport {
    pub fn status(&self) -> PsdStatus {
        if self.min_eigenvalue > self.slack {
            PsdStatus::Positive
        } else if self.min_eigenvalue >= -self.slack {
            PsdStatus::Boundary
        } else {
            PsdStatus::Negative
        }
    }

    pub fn semidefinite(&self) -> bool {
        self.status() != PsdStatus::Negative
    }

    pub fn definite(&self) -> bool {
        self.status() == PsdStatus::Positive
    }
}

/// Hermitize (rejecting non-Hermitian input) and locate λ_min against the slack band.
pub fn psd_report(m: &ComplexMatrix, tol: &ToleranceConfig) -> Result<PsdReport> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("{}x{} is not square", m.nrows(), m.ncols())));
    }
    let norm = m.norm();
    let residual = m.hermitian_residual();
    if residual > tol.abs(norm) {
        return Err(Error::NotHermitian { residual });
    }
    let (vals, _) = m.hermitian_eigen();
    Ok(PsdReport { min_eigenvalue: vals[0], slack: tol.slack(norm) })
}

pub fn psd_check(m: &ComplexMatrix, strict: bool, tol: &ToleranceConfig) -> Result<bool> {
    let r = psd_report(m, tol)?;
    Ok(if strict { r.definite() } else { r.semidefinite() })
}

fn require_pd(m: &ComplexMatrix, tol: &ToleranceConfig) -> Result<()> {
    let r = psd_report(m, tol)?;
    if !r.definite() {
        return Err(Error::NotPositiveDefinite { min_eigenvalue: r.min_eigenvalue });
    }
    Ok(())
}

/// Principal square root of a Hermitian positive-definite matrix.
pub fn hermitian_sqrt_pd(m: &ComplexMatrix, tol: &ToleranceConfig) -> Result<ComplexMatrix> {
    require_pd(m, tol)?;
    Ok(m.hermitian_map(f64::sqrt))
}

pub fn hermitian_inv_sqrt_pd(m: &ComplexMatrix, tol: &ToleranceConfig) -> Result<ComplexMatrix> {
    require_pd(m, tol)?;
    Ok(m.hermitian_map(|x| 1.0 / x.sqrt()))
}
