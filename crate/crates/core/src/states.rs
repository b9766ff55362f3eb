//! Covariance matrices, Williamson normal form and the double-disk state space.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{
    abc_conjugate, abc_unconjugate, even_half, is_abc, omega_real, psd_report, sigma_x, sigma_z,
    ComplexMatrix, PsdStatus, ToleranceConfig, I,
};
use crate::siegel::{disk_membership, BlockMap2x2, DiskPoint, Domain};

/// Real covariance matrix Σ in (q, p) ordering, vacuum ½I.
#[derive(Clone, Debug, PartialEq)]
pub struct RealCovariance {
    sigma: ComplexMatrix,
}

impl RealCovariance {
    pub fn new(sigma: ComplexMatrix, tol: &ToleranceConfig) -> Result<Self> {
        even_half(&sigma)?;
        let norm = sigma.norm();
        let imag = sigma.im().iter().fold(0.0_f64, |a, x| a.max(x.abs()));
        if imag > tol.abs(norm) {
            return Err(Error::invariant("real entries", imag));
        }
        let sigma = ComplexMatrix::from_real(&sigma.re());
        let asym = sigma.symmetric_residual();
        if asym > tol.abs(norm) {
            return Err(Error::invariant("symmetry", asym));
        }
        let r = psd_report(&sigma.hermitian_part(), tol)?;
        if !r.definite() {
            return Err(Error::NotPositiveDefinite { min_eigenvalue: r.min_eigenvalue });
        }
        Ok(Self { sigma })
    }

    pub fn from_real(sigma: &DMatrix<f64>, tol: &ToleranceConfig) -> Result<Self> {
        Self::new(ComplexMatrix::from_real(sigma), tol)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.sigma
    }

    pub fn real(&self) -> DMatrix<f64> {
        self.sigma.re()
    }

    pub fn n(&self) -> usize {
        self.sigma.nrows() / 2
    }

    pub fn is_state(&self, tol: &ToleranceConfig) -> bool {
        symplectic_spectrum(self).iter().all(|&nu| nu >= 1.0 - tol.psd_slack)
    }
}

/// Complex (ABC) covariance matrix σ = ΓΣΓ†.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexCovariance {
    sigma: ComplexMatrix,
}

impl ComplexCovariance {
    pub fn new(sigma: ComplexMatrix, tol: &ToleranceConfig) -> Result<Self> {
        even_half(&sigma)?;
        let norm = sigma.norm();
        let herm = sigma.hermitian_residual();
        if herm > tol.abs(norm) {
            return Err(Error::NotHermitian { residual: herm });
        }
        if !is_abc(&sigma, tol)? {
            return Err(Error::invariant("ABC form", crate::linalg::abc_residual(&sigma)?));
        }
        let r = psd_report(&sigma, tol)?;
        if !r.definite() {
            return Err(Error::NotPositiveDefinite { min_eigenvalue: r.min_eigenvalue });
        }
        Ok(Self { sigma })
    }

    pub fn vacuum(n: usize) -> Self {
        Self { sigma: ComplexMatrix::identity(2 * n).scale_re(0.5) }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.sigma
    }

    pub fn n(&self) -> usize {
        self.sigma.nrows() / 2
    }

    /// λ_min of σ - ½σ_z against the slack band.
    pub fn uncertainty(&self, tol: &ToleranceConfig) -> Result<crate::linalg::PsdReport> {
        psd_report(&(&self.sigma - sigma_z(self.n()).scale_re(0.5)), tol)
    }

    pub fn satisfies_up(&self, tol: &ToleranceConfig) -> Result<bool> {
        Ok(self.uncertainty(tol)?.semidefinite())
    }
}

/// Symmetric 2n×2n matrix in the double disk, `𝒜 = [[K, W], [W*, K*]]` when ABC.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleDiskPoint {
    a: ComplexMatrix,
    n: usize,
    abc: bool,
    state: bool,
}

impl DoubleDiskPoint {
    pub fn new(a: ComplexMatrix, tol: &ToleranceConfig) -> Result<Self> {
        let n = even_half(&a)?;
        let m = disk_membership(&a, tol)?;
        if !m.symmetric {
            return Err(Error::invariant("symmetry", m.symmetric_residual));
        }
        if m.domain() != Domain::Interior {
            return Err(Error::invariant("double-disk membership", m.gap.min_eigenvalue));
        }
        let abc = is_abc(&a, tol)?;
        let w = a.block(0, n, n, n);
        let state = abc && psd_report(&w.hermitian_part(), tol)?.semidefinite();
        Ok(Self { a, n, abc, state })
    }

    pub fn vacuum(n: usize) -> Self {
        Self { a: ComplexMatrix::zeros(2 * n, 2 * n), n, abc: true, state: true }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> ComplexMatrix {
        self.a.block(0, 0, self.n, self.n)
    }

    pub fn w(&self) -> ComplexMatrix {
        self.a.block(0, self.n, self.n, self.n)
    }

    pub fn is_abc(&self) -> bool {
        self.abc
    }

    pub fn is_state(&self) -> bool {
        self.state
    }
}

/// Symplectic eigenvalues ν with the thermal parameters ξ = (ν-1)/(ν+1).
#[derive(Clone, Debug, PartialEq)]
pub struct ThermalSpectrum {
    nu: Vec<f64>,
    xi: Vec<f64>,
}

impl ThermalSpectrum {
    pub fn new(nu: Vec<f64>, tol: &ToleranceConfig) -> Result<Self> {
        if let Some(&bad) = nu.iter().find(|&&v| !(v >= 1.0 - tol.psd_slack)) {
            return Err(Error::invariant("symplectic eigenvalue ≥ 1", bad));
        }
        Ok(Self::permissive(nu, tol))
    }

    /// Accepts ν < 1; the resulting disk point is flagged as not a state.
    pub fn permissive(nu: Vec<f64>, tol: &ToleranceConfig) -> Self {
        let xi = nu
            .iter()
            .map(|&v| if (v - 1.0).abs() <= tol.psd_slack { 0.0 } else { (v - 1.0) / (v + 1.0) })
            .collect();
        Self { nu, xi }
    }

    pub fn nu(&self) -> &[f64] {
        &self.nu
    }

    pub fn xi(&self) -> &[f64] {
        &self.xi
    }

    pub fn n(&self) -> usize {
        self.nu.len()
    }
}

pub fn complex_from_real(sigma: &RealCovariance, tol: &ToleranceConfig) -> Result<ComplexCovariance> {
    ComplexCovariance::new(abc_conjugate(sigma.matrix())?, tol)
}

pub fn real_from_complex(sigma: &ComplexCovariance, tol: &ToleranceConfig) -> Result<RealCovariance> {
    RealCovariance::new(abc_unconjugate(sigma.matrix())?, tol)
}

/// `Σ = ½ S (ν ⊕ ν) Sᵀ` with S real symplectic and ν descending.
#[derive(Clone, Debug, PartialEq)]
pub struct WilliamsonForm {
    pub s: DMatrix<f64>,
    pub nu: Vec<f64>,
}

impl WilliamsonForm {
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            2 * self.nu.len(),
            self.nu.iter().chain(self.nu.iter()).map(|v| 0.5 * v),
        ));
        &self.s * d * self.s.transpose()
    }

    pub fn symplectic_residual(&self) -> f64 {
        let om = omega_real(self.nu.len());
        (self.s.transpose() * &om * &self.s - om).norm()
    }
}

/// Williamson decomposition read off the Hermitian eigenproblem of `i Σ^{1/2} Ω Σ^{1/2}`.
///
/// An eigenvector `a + ib` with eigenvalue `d > 0` contributes the column pair
/// `(√2 b, √2 a)` to an orthogonal `O` with `Σ^{1/2} Ω Σ^{1/2} = O (Ω d) Oᵀ`.
pub fn williamson(sigma: &RealCovariance) -> Result<WilliamsonForm> {
    let n = sigma.n();
    let root = sigma.matrix().hermitian_map(f64::sqrt).re();
    let m = &root * omega_real(n) * &root;
    let h = ComplexMatrix::from_real(&m).scale(I);
    let (vals, vecs) = h.hermitian_eigen();
    let mut o = DMatrix::<f64>::zeros(2 * n, 2 * n);
    let mut d = vec![0.0; n];
    for j in 0..n {
        let col = 2 * n - 1 - j;
        d[j] = vals[col];
        if !(d[j] > 0.0) {
            return Err(Error::NotPositiveDefinite { min_eigenvalue: d[j] });
        }
        for i in 0..2 * n {
            let v = vecs.get(i, col);
            o[(i, j)] = std::f64::consts::SQRT_2 * v.im;
            o[(i, n + j)] = std::f64::consts::SQRT_2 * v.re;
        }
    }
    let scale = DMatrix::from_fn(2 * n, 2 * n, |i, j| if i == j { 1.0 / d[i % n].sqrt() } else { 0.0 });
    let s = root * o * scale;
    Ok(WilliamsonForm { s, nu: d.iter().map(|x| 2.0 * x).collect() })
}

/// Moduli of the eigenvalues of `iΩ(2Σ)`, paired and sorted descending.
pub fn symplectic_spectrum(sigma: &RealCovariance) -> Vec<f64> {
    let n = sigma.n();
    let m = omega_real(n) * sigma.real() * 2.0;
    let mut moduli: Vec<f64> = m.complex_eigenvalues().iter().map(|z| z.norm()).collect();
    moduli.sort_by(|a, b| b.total_cmp(a));
    moduli.iter().step_by(2).copied().collect()
}

/// `𝒜 = σ_x (σ - ½)(σ + ½)⁻¹`.
pub fn cov_to_disk(sigma: &ComplexCovariance, tol: &ToleranceConfig) -> Result<DoubleDiskPoint> {
    let n = sigma.n();
    let id = ComplexMatrix::identity(2 * n).scale_re(0.5);
    let den = (sigma.matrix() + &id).inverse_or(tol, |condition| Error::SingularDenominator { condition })?;
    DoubleDiskPoint::new(sigma_x(n) * (sigma.matrix() - &id) * den, tol)
}

/// `σ = ½ (1 + σ_x𝒜)(1 - σ_x𝒜)⁻¹`.
pub fn disk_to_cov(a: &DoubleDiskPoint, tol: &ToleranceConfig) -> Result<ComplexCovariance> {
    if !a.is_abc() {
        return Err(Error::invariant("ABC form", crate::linalg::abc_residual(a.matrix())?));
    }
    let n = a.n();
    let id = ComplexMatrix::identity(2 * n);
    let xa = sigma_x(n) * a.matrix();
    let den = (&id - &xa).inverse_or(tol, |condition| Error::SingularDenominator { condition })?;
    ComplexCovariance::new(((&id + &xa) * den).scale_re(0.5), tol)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateMembership {
    pub in_disk: bool,
    pub near_boundary: bool,
    pub abc: bool,
    pub up_fractional: bool,
    pub w_psd: bool,
    /// λ_min of `(1+σ_x𝒜)(1-σ_x𝒜)⁻¹ - σ_z` (Hermitian part).
    pub up_min_eigenvalue: f64,
    pub up_slack: f64,
    /// λ_min of W (Hermitian part).
    pub w_min_eigenvalue: f64,
    pub w_slack: f64,
}

impl StateMembership {
    pub fn up_status(&self) -> PsdStatus {
        band(self.up_min_eigenvalue, self.up_slack)
    }

    pub fn w_status(&self) -> PsdStatus {
        band(self.w_min_eigenvalue, self.w_slack)
    }

    /// The two state predicates disagree with both values outside the slack band.
    pub fn predicates_disagree(&self) -> bool {
        matches!(
            (self.up_status(), self.w_status()),
            (PsdStatus::Positive, PsdStatus::Negative) | (PsdStatus::Negative, PsdStatus::Positive)
        )
    }
}

fn band(x: f64, slack: f64) -> PsdStatus {
    if x > slack {
        PsdStatus::Positive
    } else if x >= -slack {
        PsdStatus::Boundary
    } else {
        PsdStatus::Negative
    }
}

pub fn state_membership(a: &ComplexMatrix, tol: &ToleranceConfig) -> Result<StateMembership> {
    let n = even_half(a)?;
    let disk = disk_membership(a, tol)?;
    let in_disk = disk.accepted();
    let abc = is_abc(a, tol)?;

    let id = ComplexMatrix::identity(2 * n);
    let xa = sigma_x(n) * a;
    let (up_min_eigenvalue, up_slack) = match (&id - &xa).inverse(tol) {
        Ok(inv) => {
            let f = ((&id + &xa) * inv - sigma_z(n)).hermitian_part();
            (f.hermitian_eigen().0[0], tol.slack(f.norm()))
        }
        Err(_) => (f64::NEG_INFINITY, tol.psd_slack),
    };
    let w = a.block(0, n, n, n).hermitian_part();
    let w_min_eigenvalue = w.hermitian_eigen().0[0];
    let w_slack = tol.slack(w.norm());

    let ok = in_disk && abc;
    Ok(StateMembership {
        in_disk,
        near_boundary: disk.near_boundary(),
        abc,
        up_fractional: ok && up_min_eigenvalue >= -up_slack,
        w_psd: ok && w_min_eigenvalue >= -w_slack,
        up_min_eigenvalue,
        up_slack,
        w_min_eigenvalue,
        w_slack,
    })
}

/// `𝒜 = K ⊕ K*`.
pub fn pure_embed(k: &DiskPoint, tol: &ToleranceConfig) -> Result<DoubleDiskPoint> {
    DoubleDiskPoint::new(ComplexMatrix::direct_sum(k.k(), &k.k().conj()), tol)
}

/// `𝒜_ξ = ξ_⊕* σ_x`.
pub fn thermal_disk(nu: &ThermalSpectrum, tol: &ToleranceConfig) -> Result<DoubleDiskPoint> {
    let xi = ComplexMatrix::diag_real(nu.xi());
    DoubleDiskPoint::new(ComplexMatrix::direct_sum(&xi, &xi) * sigma_x(nu.n()), tol)
}

/// `𝒜 = φ_{S⊞*}(𝒜_ξ)` with S ∈ Sp₂ₙᴳ.
#[derive(Clone, Debug, PartialEq)]
pub struct DiskWilliamson {
    pub s: BlockMap2x2,
    pub nu: ThermalSpectrum,
}

pub fn disk_williamson(a: &DoubleDiskPoint, tol: &ToleranceConfig) -> Result<DiskWilliamson> {
    if !a.is_state() {
        let m = state_membership(a.matrix(), tol)?;
        return Err(Error::invariant("state condition W ⪰ 0", m.w_min_eigenvalue));
    }
    let sigma = disk_to_cov(a, tol)?;
    let real = real_from_complex(&sigma, tol)?;
    let form = williamson(&real)?;
    let s = BlockMap2x2::new(abc_conjugate(&ComplexMatrix::from_real(&form.s))?)?;
    Ok(DiskWilliamson { s, nu: ThermalSpectrum::new(form.nu, tol)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn real_cov(rows: &[Vec<f64>]) -> RealCovariance {
        RealCovariance::new(ComplexMatrix::from_real_rows(rows).unwrap(), &tol()).unwrap()
    }

    #[test]
    fn vacuum_is_fixed_by_gamma() {
        let s = real_cov(&[vec![0.5, 0.0], vec![0.0, 0.5]]);
        let sc = complex_from_real(&s, &tol()).unwrap();
        assert!(sc.matrix().dist(&ComplexMatrix::identity(2).scale_re(0.5)) < 1e-15);
        let thermal = RealCovariance::new(ComplexMatrix::diag_real(&[1.0, 2.5, 1.0, 2.5]), &tol()).unwrap();
        let tc = complex_from_real(&thermal, &tol()).unwrap();
        assert!(tc.matrix().dist(thermal.matrix()) < 1e-15);
    }

    #[test]
    fn squeezed_vacuum_conjugation() {
        let e2 = 2.0_f64.exp();
        let s = real_cov(&[vec![0.5 * e2, 0.0], vec![0.0, 0.5 / e2]]);
        let sc = complex_from_real(&s, &tol()).unwrap();
        let (ch, sh) = (2.0_f64.cosh(), 2.0_f64.sinh());
        let expect = ComplexMatrix::from_real_rows(&[vec![ch, sh], vec![sh, ch]]).unwrap().scale_re(0.5);
        assert!(sc.matrix().dist(&expect) < 1e-14);
    }

    #[test]
    fn williamson_vacuum_and_thermal() {
        let w = williamson(&real_cov(&[vec![0.5, 0.0], vec![0.0, 0.5]])).unwrap();
        assert!((w.nu[0] - 1.0).abs() < 1e-14);
        assert!((w.s.clone() * w.s.transpose() - DMatrix::identity(2, 2)).norm() < 1e-14);
        let w = williamson(&real_cov(&[vec![1.5, 0.0], vec![0.0, 1.5]])).unwrap();
        assert!((w.nu[0] - 3.0).abs() < 1e-14);
        assert!((w.s.clone() * w.s.transpose() - DMatrix::identity(2, 2)).norm() < 1e-13);
        assert!(w.symplectic_residual() < 1e-13);
    }

    #[test]
    fn williamson_squeezed() {
        let e = 1.0_f64.exp();
        let sigma = real_cov(&[vec![0.5 * e * e, 0.0], vec![0.0, 0.5 / (e * e)]]);
        let w = williamson(&sigma).unwrap();
        assert!((w.nu[0] - 1.0).abs() < 1e-12);
        assert!((w.reconstruct() - sigma.real()).norm() < 1e-8);
        assert!(w.symplectic_residual() < 1e-12);
    }

    #[test]
    fn williamson_descending_order() {
        let sigma = RealCovariance::new(ComplexMatrix::diag_real(&[1.0, 2.5, 1.0, 2.5]), &tol()).unwrap();
        let w = williamson(&sigma).unwrap();
        assert!((w.nu[0] - 5.0).abs() < 1e-13 && (w.nu[1] - 2.0).abs() < 1e-13);
        assert!((w.reconstruct() - sigma.real()).norm() < 1e-12);
        let spec = symplectic_spectrum(&sigma);
        assert!((spec[0] - 5.0).abs() < 1e-13 && (spec[1] - 2.0).abs() < 1e-13);
    }

    #[test]
    fn spectrum_of_scalar_covariances() {
        let spec = symplectic_spectrum(&RealCovariance::new(ComplexMatrix::identity(6).scale_re(0.5), &tol()).unwrap());
        assert!(spec.iter().all(|v| (v - 1.0).abs() < 1e-14) && spec.len() == 3);
        let spec = symplectic_spectrum(&real_cov(&[vec![1.5, 0.0], vec![0.0, 1.5]]));
        assert!((spec[0] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn coordinate_change_examples() {
        let t = tol();
        let vac = cov_to_disk(&ComplexCovariance::vacuum(1), &t).unwrap();
        assert!(vac.matrix().norm() < 1e-15 && vac.is_state());
        let thermal = ComplexCovariance::new(ComplexMatrix::identity(2).scale_re(1.5), &t).unwrap();
        let a = cov_to_disk(&thermal, &t).unwrap();
        assert!(a.matrix().dist(&sigma_x(1).scale_re(0.5)) < 1e-15);
        let back = disk_to_cov(&a, &t).unwrap();
        assert!(back.matrix().dist(thermal.matrix()) < 1e-14);
        let back = disk_to_cov(&DoubleDiskPoint::vacuum(2), &t).unwrap();
        assert!(back.matrix().dist(&ComplexMatrix::identity(4).scale_re(0.5)) < 1e-15);
    }

    #[test]
    fn up_violating_covariance() {
        let t = tol();
        let bad = ComplexCovariance::new(ComplexMatrix::identity(2).scale_re(0.25), &t).unwrap();
        assert!(!bad.satisfies_up(&t).unwrap());
        let a = cov_to_disk(&bad, &t).unwrap();
        assert!(a.is_abc() && !a.is_state());
        assert!((a.w().get(0, 0) - c(-1.0 / 3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn membership_examples() {
        let t = tol();
        let m = state_membership(&ComplexMatrix::zeros(2, 2), &t).unwrap();
        assert!(m.in_disk && m.abc && m.up_fractional && m.w_psd);
        let m = state_membership(&sigma_x(1).scale_re(0.5), &t).unwrap();
        assert!(m.in_disk && m.abc && m.up_fractional && m.w_psd);
        let m = state_membership(&sigma_x(1).scale_re(-0.2), &t).unwrap();
        assert!(m.in_disk && m.abc && !m.up_fractional && !m.w_psd);
        assert!(!m.predicates_disagree());
    }

    #[test]
    fn pure_embed_examples() {
        let t = tol();
        let a = pure_embed(&DiskPoint::origin(2), &t).unwrap();
        assert!(a.matrix().norm() == 0.0);
        let k = DiskPoint::new(ComplexMatrix::scalar(1, c(0.5, 0.0)), &t).unwrap();
        let a = pure_embed(&k, &t).unwrap();
        assert!(a.matrix().dist(&ComplexMatrix::diag_real(&[0.5, 0.5])) < 1e-15);
        assert!(a.is_state() && a.w().norm() == 0.0);
        let k = DiskPoint::new(ComplexMatrix::scalar(1, c(0.3, -0.6)), &t).unwrap();
        let sigma = real_from_complex(&disk_to_cov(&pure_embed(&k, &t).unwrap(), &t).unwrap(), &t).unwrap();
        assert!(symplectic_spectrum(&sigma).iter().all(|v| (v - 1.0).abs() < 1e-9));
    }

    #[test]
    fn thermal_examples() {
        let t = tol();
        let a = thermal_disk(&ThermalSpectrum::new(vec![1.0], &t).unwrap(), &t).unwrap();
        assert!(a.matrix().norm() == 0.0);
        let spec = ThermalSpectrum::new(vec![3.0], &t).unwrap();
        assert_eq!(spec.xi(), &[0.5]);
        let a = thermal_disk(&spec, &t).unwrap();
        assert!(a.matrix().dist(&sigma_x(1).scale_re(0.5)) < 1e-15 && a.is_state());
        let spec = ThermalSpectrum::new(vec![2.0, 5.0], &t).unwrap();
        let a = thermal_disk(&spec, &t).unwrap();
        assert!(a.w().dist(&ComplexMatrix::diag_real(&[1.0 / 3.0, 2.0 / 3.0])) < 1e-15);
        assert!(a.k().norm() == 0.0);
        assert!(ThermalSpectrum::new(vec![0.5], &t).is_err());
        let a = thermal_disk(&ThermalSpectrum::permissive(vec![0.5], &t), &t).unwrap();
        assert!(!a.is_state());
    }

    #[test]
    fn clamp_at_unit_nu() {
        let spec = ThermalSpectrum::new(vec![1.0 + 1e-12, 1.0 - 1e-12], &tol()).unwrap();
        assert!(spec.xi().iter().all(|&x| x == 0.0 && x.is_sign_positive()));
    }

    #[test]
    fn disk_williamson_thermal() {
        let t = tol();
        let a = DoubleDiskPoint::new(sigma_x(1).scale_re(0.5), &t).unwrap();
        let dw = disk_williamson(&a, &t).unwrap();
        assert!((dw.nu.nu()[0] - 3.0).abs() < 1e-13);
        assert!(dw.s.b().norm() < 1e-12);
        let dw = disk_williamson(&DoubleDiskPoint::vacuum(1), &t).unwrap();
        assert!((dw.nu.nu()[0] - 1.0).abs() < 1e-14);
        let bad = DoubleDiskPoint::new(sigma_x(1).scale_re(-0.2), &t).unwrap();
        assert!(disk_williamson(&bad, &t).is_err());
    }

    #[test]
    fn constructors_reject() {
        let t = tol();
        let not_abc = ComplexMatrix::diag_real(&[1.0, 2.0]);
        assert!(ComplexCovariance::new(not_abc, &t).is_err());
        let not_pd = ComplexMatrix::diag_real(&[1.0, -2.0]);
        assert!(RealCovariance::new(not_pd, &t).is_err());
        let complex = ComplexMatrix::scalar(2, c(1.0, 0.1));
        assert!(RealCovariance::new(complex, &t).is_err());
        let outside = sigma_x(1).scale_re(1.5);
        assert!(DoubleDiskPoint::new(outside, &t).is_err());
    }
}
