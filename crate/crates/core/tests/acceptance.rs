use std::process::ExitCode;
use std::time::{Duration, Instant};

use gaussdisk::dynamics::{
    canonical_channel, channel_apply_cov, channel_apply_disk, channel_embed, channel_validate, embed_boxplus,
    vacuum_preserving, ChannelKind, GaussianChannel,
};
use gaussdisk::fock_bargmann::{default_samples, quadrature_apply, GaussKernel, PureFB, QuadratureGrid};
use gaussdisk::linalg::{abc_conjugate, sigma_x};
use gaussdisk::oracle::{equivalence_run, rand_fb_case, rand_unitary, trial_rng, RunSummary, Suite, TrialReport};
use gaussdisk::siegel::{mobius, shear_element, uhp_membership, DiskPoint, Domain};
use gaussdisk::states::{cov_to_disk, ComplexCovariance};
use gaussdisk::{ComplexMatrix, ToleranceConfig, C64};
use rand::Rng;

const SEED: u64 = 20240611;

struct Outcome {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn suite_run(suite: Suite, trials: u64, n_list: &[usize], tol: &ToleranceConfig) -> (RunSummary, Vec<TrialReport>) {
    let reports = equivalence_run(suite, trials, SEED, n_list, tol).expect("valid run parameters");
    (RunSummary::from_reports(suite, &reports), reports)
}

fn first_failure(reports: &[TrialReport]) -> String {
    match reports.iter().find(|r| !r.pass) {
        None => String::new(),
        Some(r) => {
            let bad: Vec<String> = r
                .checks
                .iter()
                .filter(|c| !c.pass())
                .map(|c| format!("{}={:.3e}>{:.0e}", c.name, c.residual, c.threshold))
                .collect();
            format!("; first failure trial {} n={} [{}] {}", r.trial, r.n, bad.join(", "), r.error.clone().unwrap_or_default())
        }
    }
}

fn describe(s: &RunSummary, reports: &[TrialReport]) -> String {
    format!("{}/{} trials, max residual {:.2e}{}", s.passed, s.trials, s.max_residual, first_failure(reports))
}

fn channel_square(tol: &ToleranceConfig) -> Outcome {
    let start = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    for n in 1..=3 {
        let (s, reports) = suite_run(Suite::ChannelSquare, 1000, &[n], tol);
        pass &= s.all_passed();
        parts.push(format!("n={n}: {}", describe(&s, &reports)));
    }
    let elapsed = start.elapsed();
    pass &= elapsed <= Duration::from_secs(60);
    Outcome { name: "channel-square commutation", pass, detail: format!("{}; {:.1}s", parts.join("; "), elapsed.as_secs_f64()) }
}

fn composition(tol: &ToleranceConfig) -> Outcome {
    let (s, reports) = suite_run(Suite::Composition, 500, &[1, 2, 3], tol);
    Outcome { name: "composition by multiplication", pass: s.all_passed(), detail: describe(&s, &reports) }
}

fn characterization(tol: &ToleranceConfig) -> Outcome {
    let (s, reports) = suite_run(Suite::Characterization, 500, &[1, 2, 3], tol);
    let violators = reports.iter().filter(|r| r.trial % 2 == 1 && r.trial % 3 == 0).count();
    Outcome {
        name: "characterization theorem",
        pass: s.all_passed(),
        detail: format!("{} ({violators} constructed violators)", describe(&s, &reports)),
    }
}

fn williamson(tol: &ToleranceConfig) -> Outcome {
    let (s, reports) = suite_run(Suite::Williamson, 500, &[1, 2, 3], tol);
    Outcome { name: "williamson decomposition", pass: s.all_passed(), detail: describe(&s, &reports) }
}

fn preservation(tol: &ToleranceConfig) -> Outcome {
    let (s, reports) = suite_run(Suite::DiskPreservation, 500, &[1, 2, 3], tol);
    let shear = shear_element(-1.0, 1).expect("valid shear");
    let z = ComplexMatrix::scalar(1, C64::new(0.0, 0.5));
    let image = mobius(&shear, &z, tol).expect("regular denominator");
    let regression = image.dist(&ComplexMatrix::scalar(1, C64::new(0.0, -0.5))) <= 1e-15
        && uhp_membership(&image, tol).expect("symmetric").domain() == Domain::Outside;
    Outcome {
        name: "disk/half-plane preservation and composition",
        pass: s.all_passed() && regression,
        detail: format!("{}; shear counterexample {}", describe(&s, &reports), if regression { "reproduced" } else { "missing" }),
    }
}

fn unitary_coincidence(tol: &ToleranceConfig) -> Outcome {
    let mut worst_embed = 0.0f64;
    let mut vacuum_ok = 0;
    let mut negatives_ok = 0;
    for i in 0..200u64 {
        let mut rng = trial_rng(SEED, i);
        let n = 1 + (i as usize % 3);
        let s = rand_unitary(n, &mut rng);
        let ch = GaussianChannel::new(s.matrix().clone(), ComplexMatrix::zeros(2 * n, 2 * n), tol).expect("invertible");
        let e = channel_embed(&ch, tol).expect("valid unitary channel");
        worst_embed = worst_embed.max(e.matrix().dist(embed_boxplus(&s).matrix()));

        let x = abc_conjugate(&ComplexMatrix::from_fn(2 * n, 2 * n, |_, _| C64::new(rng.gen_range(-1.0..1.0), 0.0)))
            .expect("even dimension");
        if x.condition() > 1e6 {
            continue;
        }
        let y = (ComplexMatrix::identity(2 * n) - &x * x.adjoint()).scale_re(0.5).hermitian_part();
        let ch = GaussianChannel::new(x.clone(), y.clone(), tol).expect("invertible");
        let e21 = channel_embed(&ch, tol).expect("embedding").block(2, 1).norm();
        if vacuum_preserving(&ch, tol) && e21 <= 1e-10 {
            vacuum_ok += 1;
        }
        let bump = ComplexMatrix::identity(2 * n).scale_re(rng.gen_range(1e-3..1e-1));
        let perturbed = GaussianChannel::new(x, y + bump, tol).expect("invertible");
        let e21 = channel_embed(&perturbed, tol).expect("embedding").block(2, 1).norm();
        if !vacuum_preserving(&perturbed, tol) && e21 > 1e-10 {
            negatives_ok += 1;
        }
    }
    let pass = worst_embed <= 1e-10 && vacuum_ok == 200 && negatives_ok == 200;
    Outcome {
        name: "unitary coincidence",
        pass,
        detail: format!(
            "embedding residual {worst_embed:.2e}; vacuum-preserving {vacuum_ok}/200 with E21 = 0; perturbed {negatives_ok}/200 with E21 ≠ 0"
        ),
    }
}

fn homomorphism(tol: &ToleranceConfig) -> Outcome {
    let (s, reports) = suite_run(Suite::HomomorphismRoundtrip, 200, &[1, 2, 3], tol);
    Outcome { name: "oscillator homomorphism", pass: s.all_passed(), detail: describe(&s, &reports) }
}

fn quadrature(tol: &ToleranceConfig) -> Outcome {
    let start = Instant::now();
    let grid = QuadratureGrid::default();
    let samples = default_samples();
    let psi = PureFB::new(DiskPoint::new(ComplexMatrix::scalar(1, C64::new(0.3, -0.2)), tol).expect("inside disk"));
    let id = quadrature_apply(&GaussKernel::identity(1), &psi, &grid, &samples, tol).expect("identity quadrature");
    let id_dev = id.max_relative_deviation.max((id.constant - 1.0).norm());
    let mut worst = 0.0f64;
    for i in 0..20u64 {
        let mut rng = trial_rng(SEED, 10_000 + i);
        let (k, psi) = rand_fb_case(&mut rng, tol).expect("kernel case");
        let r = quadrature_apply(&k, &psi, &grid, &samples, tol).expect("kernel quadrature");
        worst = worst.max(r.max_relative_deviation);
    }
    let elapsed = start.elapsed();
    let pass = id_dev <= 1e-6 && worst <= 1e-5 && elapsed <= Duration::from_secs(120);
    Outcome {
        name: "fock-bargmann quadrature",
        pass,
        detail: format!("identity deviation {id_dev:.2e}; worst kernel deviation {worst:.2e}; {:.1}s", elapsed.as_secs_f64()),
    }
}

fn loss_golden(tol: &ToleranceConfig) -> Outcome {
    let ch = canonical_channel(&ChannelKind::Loss(0.5), 1, tol).expect("loss channel");
    let sigma = ComplexCovariance::new(ComplexMatrix::identity(2).scale_re(1.5), tol).expect("thermal state");
    let target = sigma_x(1).scale_re(1.0 / 3.0);
    let cov_route = cov_to_disk(&channel_apply_cov(&ch, &sigma, tol).expect("apply"), tol).expect("to disk");
    let disk_route = channel_apply_disk(&channel_embed(&ch, tol).expect("embed"), &cov_to_disk(&sigma, tol).expect("to disk"), tol)
        .expect("apply");
    let r_cov = cov_route.matrix().dist(&target);
    let r_disk = disk_route.matrix().dist(&target);
    let v = channel_validate(&ch, tol).expect("validate");
    let pass = r_cov <= 1e-12 && r_disk <= 1e-12 && v.valid && !v.paper_mode_valid;
    Outcome {
        name: "loss channel golden case",
        pass,
        detail: format!(
            "covariance route {r_cov:.2e}, disk route {r_disk:.2e}; normalized predicate {} ({:.3}), unnormalized predicate {} ({:.3})",
            if v.valid { "valid" } else { "invalid" },
            v.residual,
            if v.paper_mode_valid { "valid" } else { "invalid" },
            v.paper_mode_residual
        ),
    }
}

fn main() -> ExitCode {
    let tol = ToleranceConfig::default();
    let criteria: [fn(&ToleranceConfig) -> Outcome; 9] = [
        channel_square,
        composition,
        characterization,
        williamson,
        preservation,
        unitary_coincidence,
        homomorphism,
        quadrature,
        loss_golden,
    ];
    let mut failed = 0;
    for criterion in criteria {
        let o = criterion(&tol);
        if !o.pass {
            failed += 1;
        }
        println!("{} {}: {}", if o.pass { "PASS" } else { "FAIL" }, o.name, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
