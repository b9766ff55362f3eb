//! Deterministic random generators and the cross-picture verification suites.
//!
//! Every trial draws from its own ChaCha stream keyed by `(seed, index)`, so
//! reports do not depend on how trials are scheduled across threads.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::{
    channel_apply_cov, channel_apply_disk, channel_compose, channel_embed, channel_embed_factored,
    embed_boxplus, GaussianChannel,
};
use crate::error::{Error, Result};
use crate::fock_bargmann::{kernel_to_matrix, matrix_to_kernel, GaussKernel, PureFB};
use crate::linalg::{abc_conjugate, gamma, omega_real, sigma_z, ComplexMatrix, ToleranceConfig, C64};
use crate::siegel::{
    classify, compose_check, disk_membership, mobius, shear_element, uhp_membership, BlockMap2x2,
    DiskPoint, HalfPlanePoint,
};
use crate::states::{
    cov_to_disk, disk_to_cov, disk_williamson, real_from_complex, state_membership,
    symplectic_spectrum, thermal_disk, williamson, ComplexCovariance, DoubleDiskPoint,
};

pub type TrialRng = ChaCha8Rng;

/// RNG for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn uniform_matrix(rows: usize, cols: usize, lo: f64, hi: f64, rng: &mut TrialRng) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| rng.gen_range(lo..hi))
}

fn symmetrize(m: DMatrix<f64>) -> DMatrix<f64> {
    (&m + m.transpose()) * 0.5
}

fn complex_symmetric(n: usize, rng: &mut TrialRng) -> ComplexMatrix {
    let re = uniform_matrix(n, n, -1.0, 1.0, rng);
    let im = uniform_matrix(n, n, -1.0, 1.0, rng);
    ComplexMatrix::from_fn(n, n, |i, j| C64::new(re[(i, j)], im[(i, j)])).symmetric_part()
}

fn with_norm(m: ComplexMatrix, norm: f64) -> ComplexMatrix {
    let current = m.norm();
    if current == 0.0 {
        m
    } else {
        m.scale_re(norm / current)
    }
}

/// `exp(ΩH)` with H symmetric, entries uniform in (-0.5, 0.5).
pub fn rand_symplectic(n: usize, rng: &mut TrialRng) -> DMatrix<f64> {
    let h = symmetrize(uniform_matrix(2 * n, 2 * n, -0.5, 0.5, rng));
    (omega_real(n) * h).exp()
}

/// Γ S_r Γ† for a random real symplectic S_r.
pub fn rand_unitary(n: usize, rng: &mut TrialRng) -> BlockMap2x2 {
    let s = abc_conjugate(&ComplexMatrix::from_real(&rand_symplectic(n, rng))).expect("even dimension");
    BlockMap2x2::new(s).expect("even dimension")
}

/// State drawn in Williamson form, with the parameters used to build it.
#[derive(Clone, Debug)]
pub struct DrawnState {
    pub sigma: ComplexCovariance,
    pub nu: Vec<f64>,
    pub s: DMatrix<f64>,
}

/// `σ = ½ S (ν ⊕ ν) S†` with the given ν (not required to be ≥ 1).
pub fn state_with_spectrum(nu: &[f64], rng: &mut TrialRng, tol: &ToleranceConfig) -> Result<DrawnState> {
    let n = nu.len();
    let s = rand_symplectic(n, rng);
    let sc = abc_conjugate(&ComplexMatrix::from_real(&s))?;
    let d: Vec<f64> = nu.iter().chain(nu).map(|v| 0.5 * v).collect();
    let sigma = (&sc * ComplexMatrix::diag_real(&d) * sc.adjoint()).hermitian_part();
    Ok(DrawnState { sigma: ComplexCovariance::new(sigma, tol)?, nu: nu.to_vec(), s })
}

/// Random state with ν uniform in (1, nu_max).
pub fn rand_state(n: usize, rng: &mut TrialRng, nu_max: f64, tol: &ToleranceConfig) -> Result<DrawnState> {
    if !(nu_max >= 1.0) {
        return Err(Error::Parameter(format!("nu_max must be at least 1, got {nu_max}")));
    }
    let nu: Vec<f64> = (0..n).map(|_| if nu_max > 1.0 { rng.gen_range(1.0..nu_max) } else { 1.0 }).collect();
    state_with_spectrum(&nu, rng, tol)
}

fn random_orthogonal(m: usize, rng: &mut TrialRng) -> DMatrix<f64> {
    uniform_matrix(m, m, -1.0, 1.0, rng).qr().q()
}

/// Valid channel: X = Γ X_r Γ† with cond(X_r) ≤ 10, Y = |½(Xσ_zX† - σ_z)| + ρI.
pub fn rand_channel(n: usize, rng: &mut TrialRng, tol: &ToleranceConfig) -> Result<GaussianChannel> {
    let m = 2 * n;
    let singular: Vec<f64> = (0..m).map(|_| rng.gen_range(0.3..3.0)).collect();
    let xr = random_orthogonal(m, rng) * DMatrix::from_diagonal(&nalgebra::DVector::from_vec(singular)) * random_orthogonal(m, rng);
    let x = abc_conjugate(&ComplexMatrix::from_real(&xr))?;
    let sz = sigma_z(n);
    let gap = (&x * &sz * x.adjoint() - &sz).scale_re(0.5).hermitian_part();
    let rho = rng.gen_range(0.0..0.5);
    let y = gap.hermitian_map(f64::abs) + ComplexMatrix::identity(m).scale_re(rho);
    GaussianChannel::new(x, y.hermitian_part(), tol)
}

/// Random K ∈ Δₙ with ‖K‖ uniform in (0, max_norm).
pub fn rand_disk_point(n: usize, rng: &mut TrialRng, max_norm: f64, tol: &ToleranceConfig) -> Result<DiskPoint> {
    let r = rng.gen_range(0.0..max_norm);
    disk_point_with_norm(n, rng, r, tol)
}

pub fn disk_point_with_norm(n: usize, rng: &mut TrialRng, norm: f64, tol: &ToleranceConfig) -> Result<DiskPoint> {
    DiskPoint::new(with_norm(complex_symmetric(n, rng), norm), tol)
}

/// Random Z ∈ Σₙ: real symmetric part plus a positive-definite imaginary part.
pub fn rand_uhp_point(n: usize, rng: &mut TrialRng, tol: &ToleranceConfig) -> Result<HalfPlanePoint> {
    let x = symmetrize(uniform_matrix(n, n, -1.0, 1.0, rng));
    let g = uniform_matrix(n, n, -1.0, 1.0, rng);
    let y = &g * g.transpose() + DMatrix::identity(n, n) * 0.2;
    HalfPlanePoint::new(ComplexMatrix::from_fn(n, n, |i, j| C64::new(x[(i, j)], y[(i, j)])), tol)
}

/// `S₂ · Γ S_E Γ† · S₁` with `S_E = [[1, 0], [iE, 1]]`, E ⪰ 0 real symmetric.
pub fn rand_disk_semigroup(n: usize, rng: &mut TrialRng) -> BlockMap2x2 {
    let g = uniform_matrix(n, n, -0.5, 0.5, rng);
    let e = &g * g.transpose() * rng.gen_range(0.0..2.0);
    let id = ComplexMatrix::identity(n);
    let shear = ComplexMatrix::from_blocks(
        &id,
        &ComplexMatrix::zeros(n, n),
        &ComplexMatrix::from_real(&e).scale(crate::linalg::I),
        &id,
    );
    let shear = abc_conjugate(&shear).expect("even dimension");
    let s1 = rand_unitary(n, rng);
    let s2 = rand_unitary(n, rng);
    BlockMap2x2::new(s2.matrix() * shear * s1.matrix()).expect("even dimension")
}

/// Half-plane counterpart `Γ† T Γ` of a disk acting matrix.
pub fn to_half_plane(t: &BlockMap2x2) -> BlockMap2x2 {
    let g = gamma(t.n());
    BlockMap2x2::new(g.adjoint() * t.matrix() * &g).expect("even dimension")
}

/// Random symmetric ABC matrix `[[K, W], [W*, K*]]` with W Hermitian (possibly indefinite).
pub fn rand_abc_disk_point(n: usize, rng: &mut TrialRng, tol: &ToleranceConfig) -> Result<DoubleDiskPoint> {
    let k = complex_symmetric(n, rng);
    let wr = symmetrize(uniform_matrix(n, n, -1.0, 1.0, rng));
    let wi = uniform_matrix(n, n, -1.0, 1.0, rng);
    let wi = (&wi - wi.transpose()) * 0.5;
    let w = ComplexMatrix::from_fn(n, n, |i, j| C64::new(wr[(i, j)], wi[(i, j)]));
    let a = ComplexMatrix::from_blocks(&k, &w, &w.conj(), &k.conj());
    DoubleDiskPoint::new(with_norm(a, rng.gen_range(0.05..0.95)), tol)
}

/// Random symmetric 2n×2n kernel parameter inside Δ₂ₙ.
pub fn rand_kernel(n: usize, rng: &mut TrialRng, tol: &ToleranceConfig) -> Result<GaussKernel> {
    let a = with_norm(complex_symmetric(2 * n, rng), rng.gen_range(0.3..0.9));
    GaussKernel::new(a, C64::new(1.0, 0.0), tol)
}

/// Single-mode kernel from a random disk semigroup element, and a state, with
/// enough integrand decay for the default quadrature grid.
pub fn rand_fb_case(rng: &mut TrialRng, tol: &ToleranceConfig) -> Result<(GaussKernel, PureFB)> {
    loop {
        let t = rand_disk_semigroup(1, rng);
        let k = match matrix_to_kernel(&t, tol) {
            Ok(k) => k,
            Err(_) => continue,
        };
        let psi = PureFB::new(rand_disk_point(1, rng, 0.5, tol)?);
        let d = k.d().get(0, 0).norm();
        let kk = psi.k().k().get(0, 0).norm();
        let b = k.b().get(0, 0).norm();
        if d + kk <= 1.1 && b >= 0.2 {
            return Ok((k, psi));
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    ChannelSquare,
    UnitaryCongruence,
    Composition,
    Characterization,
    DiskPreservation,
    HomomorphismRoundtrip,
    Williamson,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::ChannelSquare,
        Suite::UnitaryCongruence,
        Suite::Composition,
        Suite::Characterization,
        Suite::DiskPreservation,
        Suite::HomomorphismRoundtrip,
        Suite::Williamson,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::ChannelSquare => "channel_square",
            Suite::UnitaryCongruence => "unitary_congruence",
            Suite::Composition => "composition",
            Suite::Characterization => "characterization",
            Suite::DiskPreservation => "disk_preservation",
            Suite::HomomorphismRoundtrip => "homomorphism_roundtrip",
            Suite::Williamson => "williamson",
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
        Suite::ALL
            .iter()
            .find(|suite| suite.name() == s)
            .copied()
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
}

impl Check {
    pub fn pass(&self) -> bool {
        self.residual <= self.threshold
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NamedMatrix {
    pub name: String,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl NamedMatrix {
    fn new(name: &str, m: &ComplexMatrix) -> Self {
        let entries = m.rows().iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect();
        Self { name: name.to_string(), entries }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialReport {
    pub suite: String,
    pub trial: u64,
    pub n: usize,
    pub max_residual: f64,
    pub pass: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Inputs of a failing trial; empty when the trial passed.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub payload: Vec<NamedMatrix>,
}

#[derive(Default)]
struct TrialCtx {
    checks: Vec<Check>,
    payload: Vec<NamedMatrix>,
}

impl TrialCtx {
    fn check(&mut self, name: &str, residual: f64, threshold: f64) {
        let residual = if residual.is_nan() { f64::INFINITY } else { residual };
        self.checks.push(Check { name: name.to_string(), residual, threshold });
    }

    fn flag(&mut self, name: &str, ok: bool) {
        self.check(name, if ok { 0.0 } else { 1.0 }, 0.0);
    }

    fn echo(&mut self, name: &str, m: &ComplexMatrix) {
        self.payload.push(NamedMatrix::new(name, m));
    }
}

fn stress_nu(index: u64, n: usize) -> Option<Vec<f64>> {
    match index % 10 {
        7 => Some(vec![1.0; n]),
        8 => Some(vec![1.0 + 1e-6; n]),
        _ => None,
    }
}

fn draw_state(index: u64, n: usize, rng: &mut TrialRng, tol: &ToleranceConfig) -> Result<DrawnState> {
    match stress_nu(index, n) {
        Some(nu) => state_with_spectrum(&nu, rng, tol),
        None => rand_state(n, rng, 5.0, tol),
    }
}

fn channel_square(ctx: &mut TrialCtx, index: u64, n: usize, rng: &mut TrialRng, tol: &ToleranceConfig) -> Result<()> {
    let state = draw_state(index, n, rng, tol)?;
    let ch = rand_channel(n, rng, tol)?;
    ctx.echo("sigma", state.sigma.matrix());
    ctx.echo("X", ch.x());
    ctx.echo("Y", ch.y());
    let cov_route = cov_to_disk(&channel_apply_cov(&ch, &state.sigma, tol)?, tol)?;
    let disk_route = channel_apply_disk(&channel_embed(&ch, tol)?, &cov_to_disk(&state.sigma, tol)?, tol)?;
    ctx.check("square", cov_route.matrix().dist(disk_route.matrix()), 1e-9);
    ctx.flag("image_is_state", disk_route.is_state());
    Ok(())
}

fn unitary_congruence(ctx: &mut TrialCtx, index: u64, n: usize, rng: &mut TrialRng, tol: &ToleranceConfig) -> Result<()> {
    let state = draw_state(index, n, rng, tol)?;
    let s = rand_unitary(n, rng);
    ctx.echo("sigma", state.sigma.matrix());
    ctx.echo("S", s.matrix());
    let a = cov_to_disk(&state.sigma, tol)?;
    let image = DoubleDiskPoint::new(mobius(&embed_boxplus(&s), a.matrix(), tol)?, tol)?;
    let via_disk = disk_to_cov(&image, tol)?;
    let direct = s.matrix() * state.sigma.matrix() * s.matrix().adjoint();
    ctx.check("congruence", via_disk.matrix().dist(&direct) / direct.norm().max(1.0), 1e-9);
    let sz = sigma_z(n).scale_re(0.5);
    let moved = s.matrix() * (state.sigma.matrix() - &sz) * s.matrix().adjoint();
    let up = ComplexCovariance::new(direct.clone(), tol)?.uncertainty(tol)?;
    let lhs = &direct - &sz;
    ctx.check("up_congruence", lhs.dist(&moved) / moved.norm().max(1.0), 1e-9);
    ctx.flag("up_preserved", up.semidefinite());
    ctx.flag("image_is_state", image.is_state());
    Ok(())
}

fn composition(ctx: &mut TrialCtx, index: u64, n: usize, rng: &mut TrialRng, tol: &ToleranceConfig) -> Result<()> {
    let ch1 = rand_channel(n, rng, tol)?;
    let ch2 = rand_channel(n, rng, tol)?;
    let state = draw_state(index, n, rng, tol)?;
    for (name, m) in [("X1", ch1.x()), ("Y1", ch1.y()), ("X2", ch2.x()), ("Y2", ch2.y())] {
        ctx.echo(name, m);
    }
    let composed = channel_compose(&ch2, &ch1)?;
    let e1 = channel_embed(&ch1, tol)?;
    let e2 = channel_embed(&ch2, tol)?;
    let e21 = channel_embed(&composed, tol)?;
    let product = e2.compose(&e1)?;
    ctx.check("product", product.matrix().dist(e21.matrix()), 1e-9);

    let sequential = channel_apply_cov(&ch2, &channel_apply_cov(&ch1, &state.sigma, tol)?, tol)?;
    let at_once = channel_apply_cov(&composed, &state.sigma, tol)?;
    let scale = at_once.matrix().norm().max(1.0);
    ctx.check("affine", sequential.matrix().dist(at_once.matrix()) / scale, 1e-10);

    let factored = channel_embed_factored(&ch1, tol)?;
    ctx.check("factorization", factored.dist(e1.matrix()) / e1.matrix().norm().max(1.0), 1e-10);
    ctx.flag("abc_pattern", e1.matches_abc_pattern(tol) && e21.matches_abc_pattern(tol));
    ctx.flag("embedding_in_semigroup", classify(e21.map(), tol).sp_plus_disk);
    Ok(())
}

fn characterization(ctx: &mut TrialCtx, index: u64, n: usize, rng: &mut TrialRng, tol: &ToleranceConfig) -> Result<()> {
    if index % 2 == 0 {
        let a = rand_abc_disk_point(n, rng, tol)?;
        ctx.echo("A", a.matrix());
        let m = state_membership(a.matrix(), tol)?;
        ctx.flag("in_disk_abc", m.in_disk && m.abc);
        ctx.flag("agree", !m.predicates_disagree());
        ctx.flag("state_flag", m.predicates_disagree() || a.is_state() == m.w_psd || m.w_status() == crate::linalg::PsdStatus::Boundary);
    } else {
        // Covariance-built points; every third one violates the uncertainty principle.
        let mut nu: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2..4.0)).collect();
        if index % 3 == 0 {
            nu[0] = rng.gen_range(0.2..0.95);
        }
        let state = state_with_spectrum(&nu, rng, tol)?;
        ctx.echo("sigma", state.sigma.matrix());
        let a = cov_to_disk(&state.sigma, tol)?;
        let m = state_membership(a.matrix(), tol)?;
        ctx.flag("in_disk_abc", m.in_disk && m.abc);
        ctx.flag("agree", !m.predicates_disagree());
        let up = state.sigma.uncertainty(tol)?;
        let cov_state = up.semidefinite();
        let neutral = up.status() == crate::linalg::PsdStatus::Boundary || m.w_status() == crate::linalg::PsdStatus::Boundary;
        ctx.flag("cov_agrees", neutral || cov_state == m.w_psd);
        let spectral = nu.iter().all(|&v| v >= 1.0);
        ctx.flag("spectrum_agrees", neutral || spectral == m.w_psd);
    }
    Ok(())
}

fn disk_preservation(ctx: &mut TrialCtx, index: u64, n: usize, rng: &mut TrialRng, tol: &ToleranceConfig) -> Result<()> {
    let t1 = rand_disk_semigroup(n, rng);
    let t2 = rand_disk_semigroup(n, rng);
    let k = if index % 10 == 9 {
        disk_point_with_norm(n, rng, 0.999, tol)?
    } else {
        rand_disk_point(n, rng, 0.9, tol)?
    };
    ctx.echo("T1", t1.matrix());
    ctx.echo("T2", t2.matrix());
    ctx.echo("K", k.k());
    let r = classify(&t1, tol);
    ctx.flag("semigroup_member", r.sp_plus_disk && classify(&t2, tol).sp_plus_disk);
    let image = mobius(&t1, k.k(), tol)?;
    let m = disk_membership(&image, tol)?;
    ctx.flag("disk_image", m.accepted());
    ctx.check("disk_symmetry", m.symmetric_residual, tol.abs(image.norm()));
    ctx.check("disk_composition", compose_check(&t2, &t1, k.k(), tol)?.residual(), 1e-9);

    let u1 = to_half_plane(&t1);
    let u2 = to_half_plane(&t2);
    let z = rand_uhp_point(n, rng, tol)?;
    ctx.echo("Z", z.z());
    ctx.flag("uhp_member", classify(&u1, tol).sp_plus_uhp);
    let image = mobius(&u1, z.z(), tol)?;
    let m = uhp_membership(&image, tol)?;
    ctx.flag("uhp_image", m.accepted());
    let chk = compose_check(&u2, &u1, z.z(), tol)?;
    ctx.check("uhp_composition", chk.residual() / chk.rhs.norm().max(1.0), 1e-9);
    Ok(())
}

fn homomorphism_roundtrip(ctx: &mut TrialCtx, _index: u64, n: usize, rng: &mut TrialRng, tol: &ToleranceConfig) -> Result<()> {
    let k = rand_kernel(n, rng, tol)?;
    ctx.echo("A", k.matrix());
    let t = kernel_to_matrix(&k, tol)?;
    let back = matrix_to_kernel(&t, tol)?;
    ctx.check("kernel_roundtrip", back.matrix().dist(k.matrix()), 1e-10);
    let r = classify(&t, tol);
    ctx.flag("image_in_semigroup", r.sp_plus_disk);

    let t = rand_disk_semigroup(n, rng);
    ctx.echo("T", t.matrix());
    let back = kernel_to_matrix(&matrix_to_kernel(&t, tol)?, tol)?;
    ctx.check("matrix_roundtrip", back.matrix().dist(t.matrix()) / t.matrix().norm().max(1.0), 1e-10);
    Ok(())
}

fn williamson_trial(ctx: &mut TrialCtx, index: u64, n: usize, rng: &mut TrialRng, tol: &ToleranceConfig) -> Result<()> {
    let state = draw_state(index, n, rng, tol)?;
    ctx.echo("sigma", state.sigma.matrix());
    let real = real_from_complex(&state.sigma, tol)?;
    let form = williamson(&real)?;
    ctx.check("reconstruction", (form.reconstruct() - real.real()).norm(), 1e-8);
    ctx.check("symplecticity", form.symplectic_residual(), 1e-9);
    let mut drawn = state.nu.clone();
    drawn.sort_by(|a, b| b.total_cmp(a));
    let nu_err = drawn.iter().zip(&form.nu).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    ctx.check("nu", nu_err, 1e-9);
    let spec = symplectic_spectrum(&real);
    let spec_err = drawn.iter().zip(&spec).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    ctx.check("spectrum", spec_err, 1e-9);

    let a = cov_to_disk(&state.sigma, tol)?;
    let dw = disk_williamson(&a, tol)?;
    let thermal = thermal_disk(&dw.nu, tol)?;
    let rebuilt = mobius(&embed_boxplus(&dw.s), thermal.matrix(), tol)?;
    ctx.check("disk_reconstruction", rebuilt.dist(a.matrix()), 1e-8);
    ctx.flag("disk_symplectic_abc", classify(&dw.s, tol).sp_abc);
    Ok(())
}

/// Run one trial of `suite`.
pub fn run_trial(suite: Suite, seed: u64, index: u64, n: usize, tol: &ToleranceConfig) -> TrialReport {
    let mut rng = trial_rng(seed, index);
    let mut ctx = TrialCtx::default();
    let f = match suite {
        Suite::ChannelSquare => channel_square,
        Suite::UnitaryCongruence => unitary_congruence,
        Suite::Composition => composition,
        Suite::Characterization => characterization,
        Suite::DiskPreservation => disk_preservation,
        Suite::HomomorphismRoundtrip => homomorphism_roundtrip,
        Suite::Williamson => williamson_trial,
    };
    let outcome = f(&mut ctx, index, n, &mut rng, tol);
    let error = outcome.err().map(|e| e.to_string());
    let pass = error.is_none() && ctx.checks.iter().all(Check::pass);
    let max_residual = ctx.checks.iter().map(|c| c.residual).fold(0.0, f64::max);
    TrialReport {
        suite: suite.name().to_string(),
        trial: index,
        n,
        max_residual,
        pass,
        checks: ctx.checks,
        error,
        payload: if pass { Vec::new() } else { ctx.payload },
    }
}

/// Run `trials` trials; trial `i` uses `n_list[i % n_list.len()]` modes.
pub fn equivalence_run(
    suite: Suite,
    trials: u64,
    seed: u64,
    n_list: &[usize],
    tol: &ToleranceConfig,
) -> Result<Vec<TrialReport>> {
    if n_list.is_empty() || n_list.contains(&0) {
        return Err(Error::Parameter("mode list must be non-empty with positive entries".into()));
    }
    Ok((0..trials)
        .into_par_iter()
        .map(|i| run_trial(suite, seed, i, n_list[(i % n_list.len() as u64) as usize], tol))
        .collect())
}

pub fn equivalence_run_named(
    suite: &str,
    trials: u64,
    seed: u64,
    n_list: &[usize],
    tol: &ToleranceConfig,
) -> Result<Vec<TrialReport>> {
    equivalence_run(suite.parse()?, trials, seed, n_list, tol)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunSummary {
    pub suite: String,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub max_residual: f64,
}

impl RunSummary {
    pub fn from_reports(suite: Suite, reports: &[TrialReport]) -> Self {
        let passed = reports.iter().filter(|r| r.pass).count();
        Self {
            suite: suite.name().to_string(),
            trials: reports.len(),
            passed,
            failed: reports.len() - passed,
            max_residual: reports.iter().map(|r| r.max_residual).fold(0.0, f64::max),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Shear conjugated into the disk picture, `Γ S_ε Γ†`.
pub fn disk_shear(eps: f64, n: usize) -> Result<BlockMap2x2> {
    BlockMap2x2::new(abc_conjugate(shear_element(eps, n)?.matrix())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn streams_are_reproducible() {
        let a: Vec<f64> = (0..5).map(|_| trial_rng(7, 3).gen()).collect();
        let b: Vec<f64> = (0..5).map(|_| trial_rng(7, 3).gen()).collect();
        assert_eq!(a, b);
        let x: f64 = trial_rng(7, 3).gen();
        let y: f64 = trial_rng(7, 4).gen();
        assert_ne!(x, y);
    }

    #[test]
    fn generators_are_sound() {
        let t = tol();
        for i in 0..50 {
            let mut rng = trial_rng(11, i);
            let n = 1 + (i as usize % 3);
            let s = BlockMap2x2::new(ComplexMatrix::from_real(&rand_symplectic(n, &mut rng))).unwrap();
            assert!(classify(&s, &t).sp_real);
            assert!(classify(&rand_unitary(n, &mut rng), &t).sp_abc);
            let st = rand_state(n, &mut rng, 4.0, &t).unwrap();
            let m = state_membership(cov_to_disk(&st.sigma, &t).unwrap().matrix(), &t).unwrap();
            assert!(m.in_disk && m.abc && m.up_fractional && m.w_psd);
            let ch = rand_channel(n, &mut rng, &t).unwrap();
            assert!(crate::dynamics::channel_validate(&ch, &t).unwrap().valid);
            assert!(ch.x().condition() <= 1e3);
            assert!(classify(&rand_disk_semigroup(n, &mut rng), &t).sp_plus_disk);
        }
    }

    #[test]
    fn pure_draw_when_nu_max_is_one() {
        let t = tol();
        let st = rand_state(2, &mut trial_rng(1, 0), 1.0, &t).unwrap();
        assert_eq!(st.nu, vec![1.0, 1.0]);
        assert!(rand_state(1, &mut trial_rng(1, 0), 0.5, &t).is_err());
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!("nope".parse::<Suite>(), Err(Error::UnknownSuite(_))));
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
    }

    #[test]
    fn small_runs_pass() {
        let t = tol();
        for suite in Suite::ALL {
            let reports = equivalence_run(suite, 30, 5, &[1, 2, 3], &t).unwrap();
            for r in &reports {
                assert!(r.pass, "{suite} trial {}: {:?} {:?}", r.trial, r.checks, r.error);
            }
        }
    }

    #[test]
    fn runs_are_deterministic() {
        let t = tol();
        let a = equivalence_run(Suite::ChannelSquare, 40, 99, &[1, 2], &t).unwrap();
        let b = equivalence_run(Suite::ChannelSquare, 40, 99, &[1, 2], &t).unwrap();
        assert_eq!(a, b);
    }
}
