//! Fock–Bargmann wavefunctions, Gauss kernels, Husimi functions and the
//! kernel ↔ acting-matrix correspondence, with a single-mode quadrature check.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{even_half, psd_report, sigma_x, ComplexMatrix, ToleranceConfig, C64};
use crate::siegel::{mobius, BlockMap2x2, DiskPoint};
use crate::states::{cov_to_disk, ComplexCovariance, DoubleDiskPoint};

fn check_len(v: &[C64], n: usize, what: &str) -> Result<()> {
    if v.len() != n {
        return Err(Error::Dimension(format!("{what} has length {} but {n} is required", v.len())));
    }
    Ok(())
}

/// `vᵀ M w` without conjugation.
fn bilinear(v: &[C64], m: &ComplexMatrix, w: &[C64]) -> C64 {
    let mut acc = C64::default();
    for (i, vi) in v.iter().enumerate() {
        for (j, wj) in w.iter().enumerate() {
            acc += vi * m.get(i, j) * wj;
        }
    }
    acc
}

fn doubled(zeta: &[C64]) -> Vec<C64> {
    zeta.iter().copied().chain(zeta.iter().map(|z| z.conj())).collect()
}

/// Pure Gaussian wavefunction `det(1-KK*)^{1/4} exp(½ζᵀKζ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PureFB {
    k: DiskPoint,
    normalization: f64,
}

impl PureFB {
    pub fn new(k: DiskPoint) -> Self {
        let n = k.n();
        let m = ComplexMatrix::identity(n) - k.k() * k.k().conj();
        let normalization = m.determinant().re.powf(0.25);
        Self { k, normalization }
    }

    pub fn k(&self) -> &DiskPoint {
        &self.k
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    pub fn eval(&self, zeta: &[C64]) -> Result<C64> {
        check_len(zeta, self.k.n(), "ζ")?;
        Ok(self.normalization * (0.5 * bilinear(zeta, self.k.k(), zeta)).exp())
    }
}

pub fn fb_pure_eval(k: &DiskPoint, zeta: &[C64]) -> Result<C64> {
    PureFB::new(k.clone()).eval(zeta)
}

/// Gauss kernel `c exp(½(ζᵀAζ + 2ζᵀBω* + ω†Dω*))` with `𝒜 = [[A, B], [Bᵀ, D]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussKernel {
    a2n: ComplexMatrix,
    c: C64,
    n: usize,
}

impl GaussKernel {
    pub fn new(a2n: ComplexMatrix, c: C64, tol: &ToleranceConfig) -> Result<Self> {
        let n = even_half(&a2n)?;
        let asym = a2n.symmetric_residual();
        if asym > tol.abs(a2n.norm()) {
            return Err(Error::invariant("symmetry", asym));
        }
        if c == C64::default() || !(c.re.is_finite() && c.im.is_finite()) {
            return Err(Error::Parameter("kernel scalar must be finite and non-zero".into()));
        }
        Ok(Self { a2n, c, n })
    }

    /// The reproducing kernel `exp(ζᵀω*)`.
    pub fn identity(n: usize) -> Self {
        Self { a2n: sigma_x(n), c: C64::new(1.0, 0.0), n }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.a2n
    }

    pub fn scalar(&self) -> C64 {
        self.c
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> ComplexMatrix {
        self.a2n.block(0, 0, self.n, self.n)
    }

    pub fn b(&self) -> ComplexMatrix {
        self.a2n.block(0, self.n, self.n, self.n)
    }

    pub fn d(&self) -> ComplexMatrix {
        self.a2n.block(self.n, self.n, self.n, self.n)
    }

    pub fn eval(&self, zeta: &[C64], omega_star: &[C64]) -> Result<C64> {
        check_len(zeta, self.n, "ζ")?;
        check_len(omega_star, self.n, "ω*")?;
        let z: Vec<C64> = zeta.iter().chain(omega_star).copied().collect();
        Ok(self.c * (0.5 * bilinear(&z, &self.a2n, &z)).exp())
    }
}

pub fn gauss_kernel_eval(k: &GaussKernel, zeta: &[C64], omega_star: &[C64]) -> Result<C64> {
    k.eval(zeta, omega_star)
}

/// `exp(½ zᵀ𝒜z)` with `z = (ζ, ζ*)`.
pub fn mixed_kernel_eval(a: &DoubleDiskPoint, zeta: &[C64]) -> Result<C64> {
    check_len(zeta, a.n(), "ζ")?;
    let z = doubled(zeta);
    Ok((0.5 * bilinear(&z, a.matrix(), &z)).exp())
}

/// Gaussian Husimi function with `σ_Q = σ* + ½`.
#[derive(Clone, Debug, PartialEq)]
pub struct HusimiGaussian {
    sigma_q: ComplexMatrix,
    inv: ComplexMatrix,
    det: f64,
    n: usize,
}

impl HusimiGaussian {
    pub fn new(sigma_q: ComplexMatrix, tol: &ToleranceConfig) -> Result<Self> {
        let n = even_half(&sigma_q)?;
        let r = psd_report(&sigma_q, tol)?;
        if !r.definite() {
            return Err(Error::NotPositiveDefinite { min_eigenvalue: r.min_eigenvalue });
        }
        let inv = sigma_q.inverse(tol)?;
        let det = sigma_q.determinant().re;
        Ok(Self { sigma_q, inv, det, n })
    }

    pub fn sigma_q(&self) -> &ComplexMatrix {
        &self.sigma_q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `π⁻ⁿ det(σ_Q)^{-1/2} exp(-½ z†σ_Q⁻¹z)` for `z = (ζ, ζ*)`.
    pub fn eval(&self, z: &[C64], tol: &ToleranceConfig) -> Result<f64> {
        check_len(z, 2 * self.n, "z")?;
        let (top, bottom) = z.split_at(self.n);
        let scale = z.iter().map(|w| w.norm()).fold(1.0, f64::max);
        if top.iter().zip(bottom).any(|(a, b)| (a.conj() - b).norm() > tol.atol * scale) {
            return Err(Error::Parameter("z must have the form (ζ, ζ*)".into()));
        }
        let zc: Vec<C64> = z.iter().map(|w| w.conj()).collect();
        let quad = bilinear(&zc, &self.inv, z).re;
        Ok(PI.powi(-(self.n as i32)) * self.det.powf(-0.5) * (-0.5 * quad).exp())
    }

    pub fn eval_at(&self, zeta: &[C64], tol: &ToleranceConfig) -> Result<f64> {
        self.eval(&doubled(zeta), tol)
    }
}

pub fn husimi_from_cov(sigma: &ComplexCovariance, tol: &ToleranceConfig) -> Result<HusimiGaussian> {
    let n = sigma.n();
    HusimiGaussian::new(sigma.matrix().conj() + ComplexMatrix::identity(2 * n).scale_re(0.5), tol)
}

pub fn husimi_eval(h: &HusimiGaussian, z: &[C64], tol: &ToleranceConfig) -> Result<f64> {
    h.eval(z, tol)
}

/// `‖𝒜* - σ_x(1 - σ_Q⁻¹)‖` for the disk point of the same state.
pub fn husimi_disk_residual(sigma: &ComplexCovariance, tol: &ToleranceConfig) -> Result<f64> {
    let h = husimi_from_cov(sigma, tol)?;
    let a = cov_to_disk(sigma, tol)?;
    let n = sigma.n();
    let rhs = sigma_x(n) * (ComplexMatrix::identity(2 * n) - &h.inv);
    Ok(a.matrix().conj().dist(&rhs))
}

/// Kernel of the state normalized so that `K(ζ,ζ*) = π⁻ⁿ e^{|ζ|²} Q(ζ*)`:
/// `π⁻²ⁿ det(σ_Q)^{-1/2} exp(½zᵀ𝒜z)`.
pub fn state_kernel_eval(sigma: &ComplexCovariance, zeta: &[C64], tol: &ToleranceConfig) -> Result<C64> {
    let n = sigma.n();
    let h = husimi_from_cov(sigma, tol)?;
    let a = cov_to_disk(sigma, tol)?;
    let bare = mixed_kernel_eval(&a, zeta)?;
    Ok(bare * PI.powi(-2 * n as i32) * h.det.powf(-0.5))
}

/// Acting matrix `T(𝒜) = [[B^{-T}, -B^{-T}D], [AB^{-T}, B - AB^{-T}D]]` of a kernel.
pub fn kernel_to_matrix(k: &GaussKernel, tol: &ToleranceConfig) -> Result<BlockMap2x2> {
    let b = k.b();
    let bit = b
        .inverse_or(tol, |condition| Error::HomomorphismUndefined { block: "B", condition })?
        .transpose();
    let a = k.a();
    let d = k.d();
    let abit = &a * &bit;
    BlockMap2x2::from_blocks(&bit, &-(&bit * &d), &abit, &(&b - &abit * &d))
}

/// Kernel parameter `𝒜(T) = [[γα⁻¹, α^{-T}], [α⁻¹, -α⁻¹β]]` for `T = [[α, β], [γ, δ]]`.
pub fn matrix_to_kernel(t: &BlockMap2x2, tol: &ToleranceConfig) -> Result<GaussKernel> {
    let alpha_inv = t
        .a()
        .inverse_or(tol, |condition| Error::HomomorphismUndefined { block: "α", condition })?;
    let m = ComplexMatrix::from_blocks(
        &(t.c() * &alpha_inv),
        &alpha_inv.transpose(),
        &alpha_inv,
        &-(&alpha_inv * t.b()),
    );
    GaussKernel::new(m, C64::new(1.0, 0.0), tol)
}

/// Square midpoint grid of side 2R with N² nodes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureGrid {
    pub radius: f64,
    pub points: usize,
}

impl Default for QuadratureGrid {
    fn default() -> Self {
        Self { radius: 6.0, points: 201 }
    }
}

impl QuadratureGrid {
    pub fn step(&self) -> f64 {
        2.0 * self.radius / self.points as f64
    }

    pub fn nodes(&self) -> impl Iterator<Item = C64> + '_ {
        let h = self.step();
        let r = self.radius;
        (0..self.points).flat_map(move |i| {
            (0..self.points).map(move |j| C64::new(-r + (i as f64 + 0.5) * h, -r + (j as f64 + 0.5) * h))
        })
    }
}

/// Fixed evaluation points inside |ζ| ≤ 0.5.
pub fn default_samples() -> Vec<C64> {
    [
        (0.0, 0.0),
        (0.3, 0.0),
        (-0.3, 0.0),
        (0.0, 0.3),
        (0.0, -0.3),
        (0.2, 0.2),
        (-0.2, 0.2),
        (0.2, -0.2),
        (-0.2, -0.2),
        (0.45, 0.0),
        (0.0, 0.45),
        (-0.1, 0.4),
    ]
    .iter()
    .map(|&(re, im)| C64::new(re, im))
    .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureReport {
    pub samples: Vec<C64>,
    pub integrated: Vec<C64>,
    pub predicted: Vec<C64>,
    pub image: C64,
    pub constant: C64,
    pub max_relative_deviation: f64,
}

/// Integrate `∫dμ(ω) K(ζ, ω*) ψ_K(ω)` on the grid and compare, up to one fitted
/// constant, with the wavefunction at the Möbius image of K.
pub fn quadrature_apply(
    k: &GaussKernel,
    psi: &PureFB,
    grid: &QuadratureGrid,
    samples: &[C64],
    tol: &ToleranceConfig,
) -> Result<QuadratureReport> {
    if k.n() != 1 || psi.k().n() != 1 {
        return Err(Error::Parameter("quadrature is implemented for a single mode only".into()));
    }
    let rate = 1.0 - 0.5 * (k.d().get(0, 0).norm() + psi.k().k().get(0, 0).norm());
    if rate * grid.radius * grid.radius < 16.0 {
        return Err(Error::Parameter(format!(
            "boundary-proximate kernel: integrand decay rate {rate:.3} too small for radius {}",
            grid.radius
        )));
    }
    let t = kernel_to_matrix(k, tol)?;
    let image = DiskPoint::new(mobius(&t, psi.k().k(), tol)?, tol)?;
    let out = PureFB::new(image.clone());

    let h2 = grid.step() * grid.step();
    let nodes: Vec<C64> = grid.nodes().collect();
    let integrated: Vec<C64> = samples
        .par_iter()
        .map(|&zeta| {
            let mut acc = C64::default();
            for &w in &nodes {
                let weight = (-w.norm_sqr()).exp() / PI;
                let kv = k.eval(&[zeta], &[w.conj()]).expect("single mode");
                let pv = psi.eval(&[w]).expect("single mode");
                acc += kv * pv * weight;
            }
            acc * h2
        })
        .collect();
    let predicted: Vec<C64> = samples.iter().map(|&z| out.eval(&[z]).expect("single mode")).collect();

    let num: C64 = predicted.iter().zip(&integrated).map(|(p, v)| p.conj() * v).sum();
    let den: f64 = predicted.iter().map(|p| p.norm_sqr()).sum();
    let constant = num / den;
    let max_relative_deviation = predicted
        .iter()
        .zip(&integrated)
        .map(|(p, v)| (v - constant * p).norm() / (constant * p).norm())
        .fold(0.0, f64::max);
    Ok(QuadratureReport {
        samples: samples.to_vec(),
        integrated,
        predicted,
        image: image.k().get(0, 0),
        constant,
        max_relative_deviation,
    })
}

/// `∫ Q d²ζ` over the grid, single mode.
pub fn husimi_integral(h: &HusimiGaussian, grid: &QuadratureGrid, tol: &ToleranceConfig) -> Result<f64> {
    if h.n() != 1 {
        return Err(Error::Parameter("quadrature is implemented for a single mode only".into()));
    }
    let h2 = grid.step() * grid.step();
    let mut acc = 0.0;
    for z in grid.nodes() {
        acc += h.eval_at(&[z], tol)?;
    }
    Ok(acc * h2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{abc_conjugate, c, I};
    use crate::siegel::{shear_element, vacuum_to_disk};
    use crate::states::pure_embed;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn disk(z: C64) -> DiskPoint {
        DiskPoint::new(ComplexMatrix::scalar(1, z), &tol()).unwrap()
    }

    #[test]
    fn pure_values() {
        let one = [c(1.0, 0.0)];
        assert!((fb_pure_eval(&DiskPoint::origin(1), &[c(0.7, -0.2)]).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        let v = fb_pure_eval(&disk(c(0.5, 0.0)), &one).unwrap();
        assert!((v - c(0.75_f64.powf(0.25) * 0.25_f64.exp(), 0.0)).norm() < 1e-14);
        assert!((v.re - 1.19486).abs() < 1e-4);
        let v = fb_pure_eval(&disk(c(0.5, 0.0)), &[c(0.0, 0.0)]).unwrap();
        assert!((v.re - 0.93060).abs() < 1e-5);
    }

    #[test]
    fn gauss_kernel_values() {
        let t = tol();
        let k = GaussKernel::identity(1);
        let (z, w) = (c(0.3, 0.4), c(-0.2, 0.9));
        assert!((k.eval(&[z], &[w]).unwrap() - (z * w).exp()).norm() < 1e-14);
        let k = GaussKernel::new(sigma_x(1).scale_re(0.7), c(2.0, -1.0), &t).unwrap();
        assert_eq!(k.eval(&[c(0.0, 0.0)], &[c(0.0, 0.0)]).unwrap(), c(2.0, -1.0));
        let m = ComplexMatrix::from_real_rows(&[vec![0.2, 1.0], vec![1.0, 0.1]]).unwrap();
        let k = GaussKernel::new(m, c(1.0, 0.0), &t).unwrap();
        // ½(0.2·1 + 2·1·i + 0.1·i²)
        let expect = (0.5 * (c(0.2, 0.0) + c(0.0, 2.0) + c(-0.1, 0.0))).exp();
        assert!((k.eval(&[c(1.0, 0.0)], &[I]).unwrap() - expect).norm() < 1e-14);
    }

    #[test]
    fn mixed_kernel_values() {
        let t = tol();
        assert_eq!(mixed_kernel_eval(&DoubleDiskPoint::vacuum(1), &[c(0.4, 0.1)]).unwrap(), c(1.0, 0.0));
        let a = DoubleDiskPoint::new(sigma_x(1).scale_re(0.5), &t).unwrap();
        assert!((mixed_kernel_eval(&a, &[c(1.0, 0.0)]).unwrap() - c(0.5_f64.exp(), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn mixed_kernel_of_pure_embed() {
        let t = tol();
        let k = disk(c(0.3, -0.4));
        let psi = PureFB::new(k.clone());
        let a = pure_embed(&k, &t).unwrap();
        let zeta = [c(0.6, 0.2)];
        let v = psi.eval(&zeta).unwrap();
        let lhs = mixed_kernel_eval(&a, &zeta).unwrap();
        let rhs = v * v.conj() / (psi.normalization() * psi.normalization());
        assert!((lhs - rhs).norm() < 1e-14);
    }

    #[test]
    fn husimi_values() {
        let t = tol();
        let h = husimi_from_cov(&ComplexCovariance::vacuum(1), &t).unwrap();
        assert!(h.sigma_q().dist(&ComplexMatrix::identity(2)) < 1e-15);
        assert!((h.eval_at(&[c(0.0, 0.0)], &t).unwrap() - 1.0 / PI).abs() < 1e-15);
        assert!((h.eval_at(&[c(0.6, 0.8)], &t).unwrap() - (-1.0_f64).exp() / PI).abs() < 1e-15);
        let thermal = ComplexCovariance::new(ComplexMatrix::identity(2).scale_re(1.5), &t).unwrap();
        let h = husimi_from_cov(&thermal, &t).unwrap();
        assert!(h.sigma_q().dist(&ComplexMatrix::identity(2).scale_re(2.0)) < 1e-15);
        assert!((husimi_integral(&h, &QuadratureGrid::default(), &t).unwrap() - 1.0).abs() < 1e-4);
        assert!(h.eval(&[c(1.0, 0.0), c(0.0, 1.0)], &t).is_err());
    }

    #[test]
    fn identity_homomorphism() {
        let t = tol();
        let m = kernel_to_matrix(&GaussKernel::identity(2), &t).unwrap();
        assert!(m.matrix().dist(&ComplexMatrix::identity(4)) < 1e-15);
        let k = matrix_to_kernel(&BlockMap2x2::identity(2), &t).unwrap();
        assert!(k.matrix().dist(&sigma_x(2)) < 1e-15);
        let singular = GaussKernel::new(ComplexMatrix::diag_real(&[0.1, 0.2]), c(1.0, 0.0), &t).unwrap();
        assert!(matches!(kernel_to_matrix(&singular, &t), Err(Error::HomomorphismUndefined { block: "B", .. })));
    }

    #[test]
    fn shear_kernel_is_symmetric() {
        let t = tol();
        let shear = BlockMap2x2::new(abc_conjugate(shear_element(0.2, 1).unwrap().matrix()).unwrap()).unwrap();
        let k = matrix_to_kernel(&shear, &t).unwrap();
        assert!(k.matrix().symmetric_residual() < 1e-15);
        let back = kernel_to_matrix(&k, &t).unwrap();
        assert!(back.matrix().dist(shear.matrix()) < 1e-14);
    }

    #[test]
    fn identity_kernel_reproduces() {
        let t = tol();
        let psi = PureFB::new(DiskPoint::origin(1));
        let r = quadrature_apply(&GaussKernel::identity(1), &psi, &QuadratureGrid::default(), &default_samples(), &t)
            .unwrap();
        for v in &r.integrated {
            assert!((v - c(1.0, 0.0)).norm() < 1e-6);
        }
        assert!(r.max_relative_deviation < 1e-6);
    }

    #[test]
    fn unitary_kernel_action() {
        let t = tol();
        let s = vacuum_to_disk(&disk(c(0.4, 0.1)), &t).unwrap();
        let k = matrix_to_kernel(&s, &t).unwrap();
        let psi = PureFB::new(disk(c(0.3, 0.0)));
        let r = quadrature_apply(&k, &psi, &QuadratureGrid::default(), &default_samples(), &t).unwrap();
        assert!(r.max_relative_deviation < 1e-5, "{}", r.max_relative_deviation);
    }

    #[test]
    fn contraction_kernel_action() {
        let t = tol();
        let shear = BlockMap2x2::new(abc_conjugate(shear_element(0.2, 1).unwrap().matrix()).unwrap()).unwrap();
        let k = matrix_to_kernel(&shear, &t).unwrap();
        let psi = PureFB::new(disk(c(0.2, 0.0)));
        let r = quadrature_apply(&k, &psi, &QuadratureGrid::default(), &default_samples(), &t).unwrap();
        assert!(r.max_relative_deviation < 1e-5, "{}", r.max_relative_deviation);
        assert!((r.image - mobius(&shear, psi.k().k(), &t).unwrap().get(0, 0)).norm() < 1e-15);
    }

    #[test]
    fn quadrature_guards() {
        let t = tol();
        let psi = PureFB::new(DiskPoint::origin(2));
        assert!(quadrature_apply(&GaussKernel::identity(2), &psi, &QuadratureGrid::default(), &[], &t).is_err());
        let near = disk(c(0.99, 0.0));
        let k = matrix_to_kernel(&vacuum_to_disk(&near, &t).unwrap(), &t).unwrap();
        let psi = PureFB::new(disk(c(0.9, 0.0)));
        assert!(quadrature_apply(&k, &psi, &QuadratureGrid::default(), &default_samples(), &t).is_err());
    }
}
