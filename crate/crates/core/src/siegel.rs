//! Siegel half-plane and disk, the DCBA fractional action and membership
//! classification for the symplectic groups and their semigroups.

use crate::error::{Error, Result};
use crate::linalg::{
    even_half, gamma, hermitian_inv_sqrt_pd, psd_report, sigma_x, sigma_y, sigma_z, ComplexMatrix,
    PsdReport, PsdStatus, ToleranceConfig, C64, I,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    Interior,
    Boundary,
    Outside,
}

/// Result of testing a square matrix against one of the open Siegel domains.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DomainMembership {
    pub symmetric_residual: f64,
    pub symmetric: bool,
    /// λ_min of `I - K†K` (disk) or of `Im Z` (half-plane).
    pub gap: PsdReport,
}

impl DomainMembership {
    pub fn domain(&self) -> Domain {
        if !self.symmetric {
            return Domain::Outside;
        }
        match self.gap.status() {
            PsdStatus::Positive => Domain::Interior,
            PsdStatus::Boundary => Domain::Boundary,
            PsdStatus::Negative => Domain::Outside,
        }
    }

    /// Accepted by predicates; boundary points are accepted with a warning flag.
    pub fn accepted(&self) -> bool {
        self.domain() != Domain::Outside
    }

    pub fn near_boundary(&self) -> bool {
        self.domain() == Domain::Boundary
    }
}

fn square(m: &ComplexMatrix) -> Result<usize> {
    if !m.is_square() || m.nrows() == 0 {
        return Err(Error::Dimension(format!("expected square matrix, got {}x{}", m.nrows(), m.ncols())));
    }
    Ok(m.nrows())
}

pub fn disk_membership(k: &ComplexMatrix, tol: &ToleranceConfig) -> Result<DomainMembership> {
    let n = square(k)?;
    let symmetric_residual = k.symmetric_residual();
    let gap = ComplexMatrix::identity(n) - k.adjoint() * k;
    Ok(DomainMembership {
        symmetric_residual,
        symmetric: symmetric_residual <= tol.abs(k.norm()),
        gap: psd_report(&gap.hermitian_part(), tol)?,
    })
}

pub fn im_part(z: &ComplexMatrix) -> ComplexMatrix {
    (z - z.adjoint()).scale(C64::new(0.0, -0.5))
}

pub fn uhp_membership(z: &ComplexMatrix, tol: &ToleranceConfig) -> Result<DomainMembership> {
    square(z)?;
    let symmetric_residual = z.symmetric_residual();
    Ok(DomainMembership {
        symmetric_residual,
        symmetric: symmetric_residual <= tol.abs(z.norm()),
        gap: psd_report(&im_part(z).hermitian_part(), tol)?,
    })
}

fn require_interior(m: DomainMembership, what: &'static str) -> Result<()> {
    if !m.symmetric {
        return Err(Error::invariant("symmetry", m.symmetric_residual));
    }
    if m.domain() != Domain::Interior {
        return Err(Error::invariant(what, m.gap.min_eigenvalue));
    }
    Ok(())
}

/// Point of the Siegel upper half-plane Σₙ.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfPlanePoint {
    z: ComplexMatrix,
}

impl HalfPlanePoint {
    pub fn new(z: ComplexMatrix, tol: &ToleranceConfig) -> Result<Self> {
        require_interior(uhp_membership(&z, tol)?, "half-plane membership")?;
        Ok(Self { z })
    }

    pub fn z(&self) -> &ComplexMatrix {
        &self.z
    }

    pub fn n(&self) -> usize {
        self.z.nrows()
    }
}

/// Point of the Siegel disk Δₙ.
#[derive(Clone, Debug, PartialEq)]
pub struct DiskPoint {
    k: ComplexMatrix,
}

impl DiskPoint {
    pub fn new(k: ComplexMatrix, tol: &ToleranceConfig) -> Result<Self> {
        require_interior(disk_membership(&k, tol)?, "disk membership")?;
        Ok(Self { k })
    }

    pub fn origin(n: usize) -> Self {
        Self { k: ComplexMatrix::zeros(n, n) }
    }

    pub fn k(&self) -> &ComplexMatrix {
        &self.k
    }

    pub fn n(&self) -> usize {
        self.k.nrows()
    }
}

/// 2n×2n acting matrix `[[A, B], [C, D]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockMap2x2 {
    t: ComplexMatrix,
    n: usize,
}

impl BlockMap2x2 {
    pub fn new(t: ComplexMatrix) -> Result<Self> {
        let n = even_half(&t)?;
        Ok(Self { t, n })
    }

    pub fn from_blocks(a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix, d: &ComplexMatrix) -> Result<Self> {
        let n = a.nrows();
        for m in [a, b, c, d] {
            if m.nrows() != n || m.ncols() != n {
                return Err(Error::Dimension("blocks must share one square size".into()));
            }
        }
        Self::new(ComplexMatrix::from_blocks(a, b, c, d))
    }

    pub fn identity(n: usize) -> Self {
        Self { t: ComplexMatrix::identity(2 * n), n }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.t
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.t
    }

    /// Block size n (the matrix is 2n×2n).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> ComplexMatrix {
        self.t.block(0, 0, self.n, self.n)
    }

    pub fn b(&self) -> ComplexMatrix {
        self.t.block(0, self.n, self.n, self.n)
    }

    pub fn c(&self) -> ComplexMatrix {
        self.t.block(self.n, 0, self.n, self.n)
    }

    pub fn d(&self) -> ComplexMatrix {
        self.t.block(self.n, self.n, self.n, self.n)
    }

    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        if self.n != rhs.n {
            return Err(Error::Dimension(format!("cannot compose {} with {}", self.n, rhs.n)));
        }
        Ok(Self { t: &self.t * &rhs.t, n: self.n })
    }

    pub fn inverse(&self, tol: &ToleranceConfig) -> Result<Self> {
        Ok(Self { t: self.t.inverse(tol)?, n: self.n })
    }
}

/// `φ_T(Z) = (DZ + C)(BZ + A)⁻¹`.
pub fn mobius(t: &BlockMap2x2, z: &ComplexMatrix, tol: &ToleranceConfig) -> Result<ComplexMatrix> {
    if z.nrows() != t.n() || z.ncols() != t.n() {
        return Err(Error::Dimension(format!(
            "acting matrix has blocks {n}x{n} but argument is {}x{}",
            z.nrows(),
            z.ncols(),
            n = t.n()
        )));
    }
    let den = t.b() * z + t.a();
    let inv = den.inverse_or(tol, |condition| Error::SingularDenominator { condition })?;
    ((t.d() * z + t.c()) * inv).ensure_finite()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComposeCheck {
    pub lhs: ComplexMatrix,
    pub rhs: ComplexMatrix,
}

impl ComposeCheck {
    pub fn residual(&self) -> f64 {
        self.lhs.dist(&self.rhs)
    }
}

/// Evaluate `φ_{T2}(φ_{T1}(Z))` and `φ_{T2T1}(Z)` independently.
pub fn compose_check(
    t2: &BlockMap2x2,
    t1: &BlockMap2x2,
    z: &ComplexMatrix,
    tol: &ToleranceConfig,
) -> Result<ComposeCheck> {
    let lhs = mobius(t2, &mobius(t1, z, tol)?, tol)?;
    let rhs = mobius(&t2.compose(t1)?, z, tol)?;
    Ok(ComposeCheck { lhs, rhs })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CayleyDirection {
    UhpToDisk,
    DiskToUhp,
}

/// Change of coordinates between Σₙ and Δₙ induced by the Cayley matrix.
pub fn cayley_point(m: &ComplexMatrix, direction: CayleyDirection, tol: &ToleranceConfig) -> Result<ComplexMatrix> {
    let n = square(m)?;
    let g = gamma(n);
    match direction {
        CayleyDirection::UhpToDisk => {
            let z = HalfPlanePoint::new(m.clone(), tol)?;
            mobius(&BlockMap2x2::new(g)?, z.z(), tol)
        }
        CayleyDirection::DiskToUhp => {
            let k = DiskPoint::new(m.clone(), tol)?;
            mobius(&BlockMap2x2::new(g.adjoint())?, k.k(), tol)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MembershipResiduals {
    /// Largest imaginary part of any entry.
    pub real: f64,
    /// `‖Tᵀσ_yT - σ_y‖`.
    pub symplectic: f64,
    /// `‖Tσ_x - σ_xT*‖`.
    pub abc: f64,
    /// λ_min of `T†σ_zT - σ_z`.
    pub disk_gap: f64,
    /// λ_min of `T†σ_yT - σ_y`.
    pub uhp_gap: f64,
    /// `‖T†σ_zT - σ_z‖`.
    pub disk_saturation: f64,
    /// `‖T†σ_yT - σ_y‖`.
    pub uhp_saturation: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MembershipReport {
    pub sp_real: bool,
    pub sp_complex: bool,
    pub sp_abc: bool,
    pub sp_plus_uhp: bool,
    pub sp_plus_disk: bool,
    /// The disk inequality holds with equality.
    pub boundary_saturated: bool,
    /// The half-plane inequality holds with equality.
    pub uhp_boundary_saturated: bool,
    pub residuals: MembershipResiduals,
}

pub fn classify(t: &BlockMap2x2, tol: &ToleranceConfig) -> MembershipReport {
    let n = t.n();
    let m = t.matrix();
    let norm = m.norm();
    let quad = tol.abs(norm * norm);
    let slack = tol.slack(norm * norm);
    let (sy, sz) = (sigma_y(n), sigma_z(n));
    let sx = sigma_x(n);

    let real = m.im().iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
    let symplectic = (m.transpose() * &sy * m).dist(&sy);
    let abc = (m * &sx).dist(&(&sx * m.conj()));
    let disk = (m.adjoint() * &sz * m - &sz).hermitian_part();
    let uhp = (m.adjoint() * &sy * m - &sy).hermitian_part();
    let disk_gap = disk.hermitian_eigen().0[0];
    let uhp_gap = uhp.hermitian_eigen().0[0];
    let residuals = MembershipResiduals {
        real,
        symplectic,
        abc,
        disk_gap,
        uhp_gap,
        disk_saturation: disk.norm(),
        uhp_saturation: uhp.norm(),
    };

    let sp_complex = symplectic <= quad;
    MembershipReport {
        sp_real: sp_complex && real <= tol.abs(norm),
        sp_complex,
        sp_abc: sp_complex && abc <= tol.abs(norm),
        sp_plus_uhp: sp_complex && uhp_gap >= -slack,
        sp_plus_disk: sp_complex && disk_gap >= -slack,
        boundary_saturated: sp_complex && residuals.disk_saturation <= quad,
        uhp_boundary_saturated: sp_complex && residuals.uhp_saturation <= quad,
        residuals,
    }
}

/// `S_ε = [[I, 0], [iεI, I]]`, acting as `Z ↦ Z + iε`.
pub fn shear_element(eps: f64, n: usize) -> Result<BlockMap2x2> {
    if n == 0 {
        return Err(Error::Parameter("mode count must be at least 1".into()));
    }
    let id = ComplexMatrix::identity(n);
    BlockMap2x2::from_blocks(&id, &ComplexMatrix::zeros(n, n), &id.scale(I * eps), &id)
}

/// Explicit element of Sp₂ₙᴳ sending the origin to `K`.
pub fn vacuum_to_disk(k: &DiskPoint, tol: &ToleranceConfig) -> Result<BlockMap2x2> {
    let n = k.n();
    let k = k.k();
    let alpha = hermitian_inv_sqrt_pd(&(ComplexMatrix::identity(n) - k.adjoint() * k), tol)?;
    let beta_conj = k * &alpha;
    BlockMap2x2::from_blocks(&alpha, &beta_conj.conj(), &beta_conj, &alpha.conj())
}

/// Homogeneous coordinates `[P; Q]`, defined modulo right multiplication.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveStack {
    pub p: ComplexMatrix,
    pub q: ComplexMatrix,
}

impl ProjectiveStack {
    pub fn new(p: ComplexMatrix, q: ComplexMatrix) -> Result<Self> {
        let n = square(&p)?;
        if q.nrows() != n || q.ncols() != n {
            return Err(Error::Dimension("P and Q must have equal square size".into()));
        }
        Ok(Self { p, q })
    }

    pub fn from_point(z: &ComplexMatrix) -> Result<Self> {
        Self::new(ComplexMatrix::identity(square(z)?), z.clone())
    }

    /// `T · [P; Q]`.
    pub fn act(&self, t: &BlockMap2x2) -> Result<Self> {
        if t.n() != self.p.nrows() {
            return Err(Error::Dimension("acting matrix and stack sizes differ".into()));
        }
        Ok(Self { p: t.a() * &self.p + t.b() * &self.q, q: t.c() * &self.p + t.d() * &self.q })
    }
}

/// Canonical representative `[I; QP⁻¹]`.
pub fn stack_normalize(s: &ProjectiveStack, tol: &ToleranceConfig) -> Result<ProjectiveStack> {
    let inv = s.p.inverse_or(tol, |condition| Error::NoCanonicalRepresentative { condition })?;
    Ok(ProjectiveStack { p: ComplexMatrix::identity(s.p.nrows()), q: &s.q * inv })
}
