//! Unitaries, single-Kraus operations and (X, Y) channels acting on the double disk.

use crate::error::{Error, Result};
use crate::linalg::{
    abc_residual, even_half, is_abc, psd_report, sigma_x, sigma_z, ComplexMatrix, ToleranceConfig,
};
use crate::siegel::{classify, mobius, BlockMap2x2};
use crate::states::{ComplexCovariance, DoubleDiskPoint};

/// `Z ⊕ Z*`.
pub fn lift_oplus(z: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::direct_sum(z, &z.conj())
}

/// A matrix together with its doubled-dimension lift.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftedMatrix {
    source: ComplexMatrix,
    lifted: ComplexMatrix,
}

impl LiftedMatrix {
    pub fn oplus(z: &ComplexMatrix) -> Self {
        Self { source: z.clone(), lifted: lift_oplus(z) }
    }

    pub fn boxplus(t: &BlockMap2x2) -> Self {
        Self { source: t.matrix().clone(), lifted: embed_boxplus(t).into_matrix() }
    }

    pub fn source(&self) -> &ComplexMatrix {
        &self.source
    }

    pub fn lifted(&self) -> &ComplexMatrix {
        &self.lifted
    }
}

/// Apply `⊕*` to each n×n block of a 2n×2n acting matrix.
pub fn embed_boxplus(t: &BlockMap2x2) -> BlockMap2x2 {
    let m = ComplexMatrix::from_blocks(&lift_oplus(&t.a()), &lift_oplus(&t.b()), &lift_oplus(&t.c()), &lift_oplus(&t.d()));
    BlockMap2x2::new(m).expect("lift of an even square matrix is even and square")
}

/// Deterministic Gaussian channel `σ ↦ XσX† + Y` in complex (ABC) coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianChannel {
    x: ComplexMatrix,
    y: ComplexMatrix,
    n: usize,
}

impl GaussianChannel {
    /// Checks shape, ABC form, Hermitian Y and invertible X. Validity is checked on use.
    pub fn new(x: ComplexMatrix, y: ComplexMatrix, tol: &ToleranceConfig) -> Result<Self> {
        let n = even_half(&x)?;
        if y.nrows() != x.nrows() || y.ncols() != x.ncols() {
            return Err(Error::Dimension(format!(
                "X is {0}x{0} but Y is {1}x{2}",
                x.nrows(),
                y.nrows(),
                y.ncols()
            )));
        }
        if !is_abc(&x, tol)? {
            return Err(Error::invariant("ABC form of X", abc_residual(&x)?));
        }
        if !is_abc(&y, tol)? {
            return Err(Error::invariant("ABC form of Y", abc_residual(&y)?));
        }
        let herm = y.hermitian_residual();
        if herm > tol.abs(y.norm()) {
            return Err(Error::NotHermitian { residual: herm });
        }
        x.inverse(tol)?;
        Ok(Self { x, y, n })
    }

    pub fn identity(n: usize) -> Self {
        Self { x: ComplexMatrix::identity(2 * n), y: ComplexMatrix::zeros(2 * n, 2 * n), n }
    }

    pub fn x(&self) -> &ComplexMatrix {
        &self.x
    }

    pub fn y(&self) -> &ComplexMatrix {
        &self.y
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelValidity {
    /// `Y + ½σ_z - ½Xσ_zX† ⪰ 0`.
    pub valid: bool,
    pub residual: f64,
    /// `Xσ_zX† + Y - σ_z ⪰ 0`, the inequality without the ½ factors.
    pub paper_mode_valid: bool,
    pub paper_mode_residual: f64,
}

pub fn channel_validate(ch: &GaussianChannel, tol: &ToleranceConfig) -> Result<ChannelValidity> {
    ch.x.inverse(tol)?;
    let sz = sigma_z(ch.n);
    let xzx = &ch.x * &sz * ch.x.adjoint();
    let half = (&ch.y + (&sz - &xzx).scale_re(0.5)).hermitian_part();
    let literal = (&xzx + &ch.y - &sz).hermitian_part();
    let r = psd_report(&half, tol)?;
    let p = psd_report(&literal, tol)?;
    Ok(ChannelValidity {
        valid: r.semidefinite(),
        residual: r.min_eigenvalue,
        paper_mode_valid: p.semidefinite(),
        paper_mode_residual: p.min_eigenvalue,
    })
}

fn require_valid(ch: &GaussianChannel, tol: &ToleranceConfig) -> Result<()> {
    let v = channel_validate(ch, tol)?;
    if !v.valid {
        return Err(Error::invariant("channel validity", v.residual));
    }
    Ok(())
}

fn check_modes(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::Dimension(format!("mode counts differ: {a} vs {b}")));
    }
    Ok(())
}

/// `σ' = XσX† + Y` for a valid channel and a state σ.
pub fn channel_apply_cov(
    ch: &GaussianChannel,
    sigma: &ComplexCovariance,
    tol: &ToleranceConfig,
) -> Result<ComplexCovariance> {
    check_modes(ch.n, sigma.n())?;
    require_valid(ch, tol)?;
    let up = sigma.uncertainty(tol)?;
    if !up.semidefinite() {
        return Err(Error::invariant("uncertainty principle", up.min_eigenvalue));
    }
    ComplexCovariance::new(&ch.x * sigma.matrix() * ch.x.adjoint() + &ch.y, tol)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    FromChannel,
    FromUnitary,
    FromKraus,
    Raw,
}

/// 4n×4n acting matrix on the double disk.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddedDiskMap {
    e: BlockMap2x2,
    provenance: Provenance,
}

impl EmbeddedDiskMap {
    pub fn raw(e: BlockMap2x2) -> Result<Self> {
        if e.n() % 2 != 0 {
            return Err(Error::Dimension(format!("embedded map must be 4n×4n, got {0}x{0}", 2 * e.n())));
        }
        Ok(Self { e, provenance: Provenance::Raw })
    }

    pub fn map(&self) -> &BlockMap2x2 {
        &self.e
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.e.matrix()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Mode count n (the map is 4n×4n).
    pub fn n(&self) -> usize {
        self.e.n() / 2
    }

    /// 2n×2n block (i, j) of Ē, with i, j ∈ {1, 2}.
    pub fn block(&self, i: usize, j: usize) -> ComplexMatrix {
        match (i, j) {
            (1, 1) => self.e.a(),
            (1, 2) => self.e.b(),
            (2, 1) => self.e.c(),
            (2, 2) => self.e.d(),
            _ => panic!("block index ({i}, {j}) out of range"),
        }
    }

    /// Every 2n×2n block is ABC (the 8-matrix pattern).
    pub fn matches_abc_pattern(&self, tol: &ToleranceConfig) -> bool {
        [(1, 1), (1, 2), (2, 1), (2, 2)]
            .iter()
            .all(|&(i, j)| is_abc(&self.block(i, j), tol).unwrap_or(false))
    }

    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        Ok(Self { e: self.e.compose(&rhs.e)?, provenance: Provenance::Raw })
    }
}

/// Ē from the four block formulas.
pub fn channel_embed(ch: &GaussianChannel, tol: &ToleranceConfig) -> Result<EmbeddedDiskMap> {
    let x = &ch.x;
    let y = &ch.y;
    let x_inv_adj = x.inverse(tol)?.adjoint();
    let x_inv_t = x_inv_adj.conj();
    let sx = sigma_x(ch.n);
    let y_xia = (y * &x_inv_adj).scale_re(2.0);
    let yc_xit = (y.conj() * &x_inv_t).scale_re(2.0);
    let e11 = x + &x_inv_adj + &y_xia;
    let e12 = (x - &x_inv_adj - &y_xia) * &sx;
    let e21 = (x.conj() - &x_inv_t + &yc_xit) * &sx;
    let e22 = x.conj() + &x_inv_t - &yc_xit;
    let e = ComplexMatrix::from_blocks(&e11, &e12, &e21, &e22).scale_re(0.5);
    Ok(EmbeddedDiskMap { e: BlockMap2x2::new(e)?, provenance: Provenance::FromChannel })
}

/// `Λ = [[½, 1], [-½σ_x, σ_x]]`, the fractional form of the coordinate change σ ↦ 𝒜.
pub fn lambda_matrix(n: usize) -> ComplexMatrix {
    let id = ComplexMatrix::identity(2 * n);
    let sx = sigma_x(n);
    ComplexMatrix::from_blocks(&id.scale_re(0.5), &id, &sx.scale_re(-0.5), &sx)
}

pub fn lambda_inverse(n: usize) -> ComplexMatrix {
    let id = ComplexMatrix::identity(2 * n);
    let sx = sigma_x(n);
    ComplexMatrix::from_blocks(&id, &-&sx, &id.scale_re(0.5), &sx.scale_re(0.5))
}

/// `L_Y = [[1, 0], [Y, 1]]`.
pub fn l_y(y: &ComplexMatrix) -> ComplexMatrix {
    let m = y.nrows();
    let id = ComplexMatrix::identity(m);
    ComplexMatrix::from_blocks(&id, &ComplexMatrix::zeros(m, m), y, &id)
}

/// `B_X = [[X^{-†}, 0], [0, X]]`.
pub fn b_x(x: &ComplexMatrix, tol: &ToleranceConfig) -> Result<ComplexMatrix> {
    let m = x.nrows();
    let zero = ComplexMatrix::zeros(m, m);
    Ok(ComplexMatrix::from_blocks(&x.inverse(tol)?.adjoint(), &zero, &zero, x))
}

/// Ē as `Λ L_Y B_X Λ⁻¹`.
pub fn channel_embed_factored(ch: &GaussianChannel, tol: &ToleranceConfig) -> Result<ComplexMatrix> {
    Ok(lambda_matrix(ch.n) * l_y(&ch.y) * b_x(&ch.x, tol)? * lambda_inverse(ch.n))
}

/// `𝒜' = φ_Ē(𝒜)` for a state 𝒜.
pub fn channel_apply_disk(
    e: &EmbeddedDiskMap,
    a: &DoubleDiskPoint,
    tol: &ToleranceConfig,
) -> Result<DoubleDiskPoint> {
    check_modes(e.n(), a.n())?;
    if !a.is_state() {
        return Err(Error::invariant("state condition W ⪰ 0", a.w().hermitian_part().hermitian_eigen().0[0]));
    }
    DoubleDiskPoint::new(mobius(&e.e, a.matrix(), tol)?, tol)
}

/// `(X₂X₁, X₂Y₁X₂† + Y₂)`: first `ch1`, then `ch2`.
pub fn channel_compose(ch2: &GaussianChannel, ch1: &GaussianChannel) -> Result<GaussianChannel> {
    check_modes(ch2.n, ch1.n)?;
    Ok(GaussianChannel {
        x: &ch2.x * &ch1.x,
        y: &ch2.x * &ch1.y * ch2.x.adjoint() + &ch2.y,
        n: ch2.n,
    })
}

/// `Y = ½(1 - XX†)`, the condition for φ_Ē(0) = 0.
pub fn vacuum_preserving(ch: &GaussianChannel, tol: &ToleranceConfig) -> bool {
    let target = (ComplexMatrix::identity(2 * ch.n) - &ch.x * ch.x.adjoint()).scale_re(0.5);
    ch.y.dist(&target) <= tol.abs(ch.y.norm().max(target.norm()))
}

#[derive(Clone, Debug, PartialEq)]
pub enum ChannelKind {
    Loss(f64),
    Noise(ComplexMatrix),
    Unitary(BlockMap2x2),
}

pub fn canonical_channel(kind: &ChannelKind, n: usize, tol: &ToleranceConfig) -> Result<GaussianChannel> {
    if n == 0 {
        return Err(Error::Parameter("mode count must be at least 1".into()));
    }
    let id = ComplexMatrix::identity(2 * n);
    match kind {
        ChannelKind::Loss(eta) => {
            if !(*eta > 0.0 && *eta <= 1.0) {
                return Err(Error::Parameter(format!("loss transmissivity must lie in (0, 1], got {eta}")));
            }
            GaussianChannel::new(id.scale_re(eta.sqrt()), id.scale_re((1.0 - eta) / 2.0), tol)
        }
        ChannelKind::Noise(y0) => {
            if !psd_report(y0, tol)?.semidefinite() {
                return Err(Error::Parameter("noise matrix must be positive semidefinite".into()));
            }
            GaussianChannel::new(id, y0.clone(), tol)
        }
        ChannelKind::Unitary(s) => {
            check_modes(n, s.n())?;
            let r = classify(s, tol);
            if !(r.sp_abc) {
                return Err(Error::invariant("membership in Sp(2n)ᴳ", r.residuals.symplectic.max(r.residuals.abc)));
            }
            GaussianChannel::new(s.matrix().clone(), ComplexMatrix::zeros(2 * n, 2 * n), tol)
        }
    }
}

/// `T_⊞*` for T in the disk semigroup.
pub fn kraus_embed(t: &BlockMap2x2, tol: &ToleranceConfig) -> Result<EmbeddedDiskMap> {
    let r = classify(t, tol);
    if !r.sp_plus_disk {
        return Err(Error::invariant("disk semigroup membership", r.residuals.disk_gap.min(-r.residuals.symplectic)));
    }
    Ok(EmbeddedDiskMap { e: embed_boxplus(t), provenance: Provenance::FromKraus })
}

/// `S_⊞*` for S ∈ Sp₂ₙᴳ.
pub fn unitary_embed(s: &BlockMap2x2, tol: &ToleranceConfig) -> Result<EmbeddedDiskMap> {
    let r = classify(s, tol);
    if !r.sp_abc {
        return Err(Error::invariant("membership in Sp(2n)ᴳ", r.residuals.symplectic.max(r.residuals.abc)));
    }
    Ok(EmbeddedDiskMap { e: embed_boxplus(s), provenance: Provenance::FromUnitary })
}
