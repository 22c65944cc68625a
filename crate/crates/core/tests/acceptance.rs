//! Acceptance criteria, one test each. Every test prints a single
//! `PASS`/`FAIL` line with the measured quantities.

use std::f64::consts::TAU;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use finite_type_lindelof::cli::run_scenario;
use finite_type_lindelof::curves::{
    non_special_family, restricted_family, Capture, ClassifyOptions,
};
use finite_type_lindelof::geometry::project_to_normal_line;
use finite_type_lindelof::holo::{interior_samples, CATALOG};
use finite_type_lindelof::lindelof::{
    estimate_limit, slice_trace, tail_len, LimitStatus, SchwarzStatus,
};
use finite_type_lindelof::scenario::{Overrides, ScenarioFile};
use finite_type_lindelof::type_analysis::compose_rho_disc;
use finite_type_lindelof::{
    classify, eventually_in_admissible, point_type, verify_theorem, AnalyticDisc, ComplexPoint,
    DomainModel, Error, ExponentFamily, ScenarioVerdict, Verdict, ZetaCurve,
};

fn report(name: &str, ok: bool, detail: String) {
    println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{name}: {detail}");
}

fn scenario_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(format!("{name}.scn"))
}

fn load(name: &str) -> ScenarioFile {
    ScenarioFile::load(&scenario_path(name)).unwrap()
}

/// Scenario files spanning the Schwarz-bound setups.
const SETUPS: [&str; 4] = ["egg1_product", "egg2_inner", "egg3_inner", "ball_tilted"];
const THEOREM_SCENARIOS: [&str; 6] = [
    "egg1_product",
    "egg2_inner",
    "egg2_coord",
    "egg2_curves",
    "egg3_inner",
    "ball_tilted",
];

#[test]
fn type_computation() {
    let start = Instant::now();
    let mut wrong = Vec::new();
    for m in 1..=3u32 {
        let got = point_type(&DomainModel::egg(m), ComplexPoint::real(1.0, 0.0), 4, 64).unwrap();
        if got != 2 * m {
            wrong.push(format!("egg {m}: {got}"));
        }
    }
    let ball = DomainModel::ball();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..8 {
        let v: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let p = ComplexPoint::new(
            Complex64::new(v[0] / n, v[1] / n),
            Complex64::new(v[2] / n, v[3] / n),
        );
        let got = point_type(&ball, p, 4, 64).unwrap();
        if got != 2 {
            wrong.push(format!("ball at {p}: {got}"));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    report(
        "type computation",
        wrong.is_empty() && secs < 10.0,
        format!("{} mismatches {wrong:?}, {secs:.2} s", wrong.len()),
    );
}

#[test]
fn classification_oracle_equivalence() {
    let start = Instant::now();
    let opts = ClassifyOptions::default();
    let mut cases = 0;
    let mut disagreements = Vec::new();
    for m_egg in [1u32, 2, 3] {
        let domain = DomainModel::egg_vertex(m_egg);
        let frame = domain
            .boundary_frame(ComplexPoint::ORIGIN, 2 * m_egg)
            .unwrap();
        let m = frame.type_m as f64;
        for a in [0.5, 1.0, 2.0] {
            for b in [0.125, 0.25, 0.375, 0.5, 1.0] {
                if (m * b - a).abs() < 1e-12 {
                    continue;
                }
                let family = ExponentFamily::new(a, 1.0, b, 0.1);
                let exact = family.exact_special(frame.type_m);
                let curve = ZetaCurve::Family(family);
                let sampled = ZetaCurve::Sampled(curve.to_sampled(&frame, &opts.schedule).unwrap());
                let numeric = classify(&sampled, &frame, &opts).unwrap().special;
                cases += 1;
                if numeric != exact || exact != Verdict::from(m * b > a) {
                    disagreements.push(format!(
                        "m={m} a={a} b={b}: numeric {numeric}, exact {exact}"
                    ));
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    report(
        "classification oracle equivalence",
        disagreements.is_empty() && secs < 30.0,
        format!(
            "{cases} cases, {} disagreements {disagreements:?}, {secs:.2} s",
            disagreements.len()
        ),
    );
}

#[test]
fn lemma_capture() {
    let mut exceptions = Vec::new();
    let mut checked = 0;
    for m_egg in [1u32, 2, 3] {
        let frame = DomainModel::egg(m_egg)
            .boundary_frame(ComplexPoint::real(1.0, 0.0), 2 * m_egg)
            .unwrap();
        let sch = ClassifyOptions::default().schedule;
        let grid = ClassifyOptions::default().alpha_grid;
        for c in restricted_family(frame.type_m) {
            checked += 1;
            if eventually_in_admissible(&c.curve, &frame, &grid, &sch) == Capture::NotCaptured {
                exceptions.push(format!("m={} {} not captured", frame.type_m, c.name));
            }
        }
        for c in non_special_family(frame.type_m) {
            for &alpha in &grid {
                checked += 1;
                if eventually_in_admissible(&c.curve, &frame, &[alpha], &sch)
                    != Capture::NotCaptured
                {
                    exceptions.push(format!(
                        "m={} {} captured at alpha={alpha}",
                        frame.type_m, c.name
                    ));
                }
            }
        }
    }
    report(
        "restricted curves are eventually admissible",
        exceptions.is_empty(),
        format!(
            "{checked} checks, {} exceptions {exceptions:?}",
            exceptions.len()
        ),
    );
}

#[test]
fn schwarz_bound() {
    let mut applicable = 0;
    let mut failures = Vec::new();
    let mut worst_tail: f64 = 0.0;
    let mut combos = 0;
    for name in SETUPS {
        let file = load(name);
        let base = file.theorem(&Overrides::default()).unwrap();
        assert_eq!(base.tests.len(), 6, "{name}");
        for f in CATALOG {
            for c in &base.tests {
                combos += 1;
                let rows = slice_trace(
                    f,
                    &base.domain,
                    &base.frame,
                    &c.curve,
                    &base.schedule,
                    &base.lambda_grid,
                    &base.tolerances,
                )
                .unwrap();
                for r in &rows {
                    match r.status {
                        SchwarzStatus::Pass => applicable += 1,
                        SchwarzStatus::Fail => {
                            applicable += 1;
                            failures.push(format!(
                                "{name}/{f}/{} t={}: gap {} > {:?}",
                                c.name, r.t, r.gap, r.bound
                            ));
                        }
                        _ => {}
                    }
                }
                let tail = &rows[rows.len() - tail_len(rows.len())..];
                let max_gap = tail.iter().map(|r| r.gap).fold(0.0, f64::max);
                worst_tail = worst_tail.max(max_gap);
                if max_gap > 1e-4 {
                    failures.push(format!("{name}/{f}/{}: gap tail {max_gap:e}", c.name));
                }
            }
        }
    }
    report(
        "Schwarz gap bound",
        failures.is_empty() && combos >= 72,
        format!(
            "{combos} curve/function pairs, {applicable} applicable samples, worst gap tail {worst_tail:.2e}, {} failures {failures:?}",
            failures.len()
        ),
    );
}

fn theorem_case(name: &str, expected: Complex64) -> (bool, String) {
    let start = Instant::now();
    let scn = load(name).theorem(&Overrides::default()).unwrap();
    let rep = verify_theorem(&scn).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let limits = rep.restricted_limits();
    let worst = limits
        .iter()
        .map(|l| (l - expected).norm())
        .fold(0.0, f64::max);
    let ok =
        rep.verdict == ScenarioVerdict::Pass && limits.len() == 7 && worst <= 1e-5 && secs < 60.0;
    (
        ok,
        format!(
            "{name}: {:?}, {} limits, max |L - {expected}| = {worst:.1e}, {secs:.2} s",
            rep.verdict,
            limits.len()
        ),
    )
}

#[test]
fn theorem_end_to_end() {
    let (ok1, d1) = theorem_case("egg2_inner", Complex64::new(0.0, 0.0));
    let (ok2, d2) = theorem_case("egg2_coord", Complex64::new(1.0, 0.0));
    report(
        "restricted admissible limit end to end",
        ok1 && ok2,
        format!("{d1}; {d2}"),
    );
}

fn golden(name: &str) -> String {
    fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(format!("{name}.json")),
    )
    .unwrap()
}

#[test]
fn necessity_of_hypotheses() {
    let dir = tempfile::tempdir().unwrap();
    let mut problems = Vec::new();

    let spiral = load("egg2_spiral").theorem(&Overrides::default()).unwrap();
    let est = estimate_limit(
        spiral.function,
        &spiral.domain,
        &spiral.frame,
        &spiral.reference.curve,
        &spiral.schedule,
        spiral.tolerances.limit_tol,
    )
    .unwrap();
    if !matches!(est.status, LimitStatus::Oscillating { .. }) {
        problems.push(format!("SPIRAL along reference: {:?}", est.status));
    }
    if !matches!(verify_theorem(&spiral), Err(Error::BadScenario(_))) {
        problems.push("SPIRAL scenario not rejected".into());
    }

    let tangential = load("egg2_tangential")
        .theorem(&Overrides::default())
        .unwrap();
    let class = classify(
        &tangential.reference.curve,
        &tangential.frame,
        &tangential.classify_options(),
    )
    .unwrap();
    if class.special != Verdict::Yes || class.restricted != Verdict::No {
        problems.push(format!("tangential reference classified {class:?}"));
    }
    if !matches!(verify_theorem(&tangential), Err(Error::BadScenario(_))) {
        problems.push("tangential scenario not rejected".into());
    }

    for name in ["egg2_spiral", "egg2_tangential"] {
        let (rep, out) = run_scenario(
            &scenario_path(name),
            &Overrides::default(),
            Some(dir.path()),
        )
        .unwrap();
        if rep.verdict != ScenarioVerdict::BadScenario {
            problems.push(format!("{name}: {:?}", rep.verdict));
        }
        if fs::read_to_string(out.join("report.json")).unwrap() != golden(name) {
            problems.push(format!("{name}: report differs from golden file"));
        }
    }
    report(
        "necessity of hypotheses",
        problems.is_empty(),
        format!("{} problems {problems:?}", problems.len()),
    );
}

#[test]
fn disc_membership_soundness() {
    let mut violations = 0;
    let mut samples = 0;
    for name in THEOREM_SCENARIOS {
        let scn = load(name).theorem(&Overrides::default()).unwrap();
        let rep = verify_theorem(&scn).unwrap();
        for c in &rep.curves {
            for r in &c.trace {
                samples += 1;
                violations += r.membership_violations;
            }
        }
        for f in CATALOG {
            for c in &scn.tests {
                if !classify(&c.curve, &scn.frame, &scn.classify_options())
                    .unwrap()
                    .special
                    .is_yes()
                {
                    continue;
                }
                let rows = slice_trace(
                    f,
                    &scn.domain,
                    &scn.frame,
                    &c.curve,
                    &scn.schedule,
                    &scn.lambda_grid,
                    &scn.tolerances,
                )
                .unwrap();
                samples += rows.len();
                violations += rows.iter().map(|r| r.membership_violations).sum::<usize>();
            }
        }
    }
    report(
        "disc membership soundness",
        violations == 0,
        format!("{samples} slices sampled, {violations} violations"),
    );
}

fn random_point(rng: &mut ChaCha8Rng, scale: f64) -> ComplexPoint {
    let mut c = || Complex64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale));
    ComplexPoint::new(c(), c())
}

/// Random point on the boundary of `egg(m)`.
fn random_egg_boundary(rng: &mut ChaCha8Rng, m: u32) -> ComplexPoint {
    let r2: f64 = rng.gen_range(0.0..1.0);
    let z2 = Complex64::from_polar(r2, rng.gen_range(0.0..TAU));
    let r1 = (1.0 - r2.powi(2 * m as i32)).sqrt();
    ComplexPoint::new(Complex64::from_polar(r1, rng.gen_range(0.0..TAU)), z2)
}

#[test]
fn numerical_hygiene() {
    const CASES: usize = 1000;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    let mut worst_reality: f64 = 0.0;
    for i in 0..CASES {
        let m = 1 + (i % 3) as u32;
        let domain = DomainModel::egg(m);
        let base = random_point(&mut rng, 1.0);
        let coeffs = vec![random_point(&mut rng, 1.0), random_point(&mut rng, 0.5)];
        let disc = AnalyticDisc::new(base, coeffs).unwrap();
        let jet = compose_rho_disc(&domain, &disc, 4 * m as usize).unwrap();
        worst_reality = worst_reality.max(jet.reality_defect());
    }

    let mut worst_idem: f64 = 0.0;
    let mut worst_tangential: f64 = 0.0;
    for i in 0..CASES {
        let m = 1 + (i % 3) as u32;
        let domain = DomainModel::egg(m);
        let frame = domain
            .boundary_frame(random_egg_boundary(&mut rng, m), 2)
            .unwrap();
        let p = random_point(&mut rng, 1.0);
        let once = project_to_normal_line(&p, &frame);
        let twice = project_to_normal_line(&once, &frame);
        worst_idem = worst_idem.max(once.distance(&twice));
        worst_tangential = worst_tangential.max(frame.tangential_offset(&once).norm());
    }

    let mut worst_cr: f64 = 0.0;
    let mut evaluated = 0;
    for m in 1..=3u32 {
        let domain = DomainModel::egg(m);
        for p in interior_samples(&domain, CASES, 0.2) {
            for f in CATALOG {
                worst_cr = worst_cr.max(f.cauchy_riemann_residual(&p, 1e-5));
                evaluated += 1;
            }
        }
    }

    report(
        "numerical hygiene",
        worst_reality <= 1e-10 && worst_idem <= 1e-12 && worst_tangential <= 1e-12 && worst_cr <= 1e-6,
        format!(
            "{CASES} jets: reality defect {worst_reality:.1e}; {CASES} projections: idempotence {worst_idem:.1e}, \
             tangential residual {worst_tangential:.1e}; {evaluated} holomorphy residuals: max {worst_cr:.1e}"
        ),
    );
}
