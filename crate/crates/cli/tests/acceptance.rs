//! Acceptance run: one PASS/FAIL line per criterion. Thresholds are the
//! constants below; none are adjusted at run time.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::TestRunner;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tck_cli::sweep::{range_jobs, run_sweep, Format, SweepSpec};
use tck_core::betti::{betti_numbers, betti_numbers_taylor, euler_check, initial_ideal, TAYLOR_GENERATOR_CAP};
use tck_core::monomial::{binomial_of, initial_form, LatticeVector, Monomial};
use tck_core::oracle::{verify_prediction, OracleConfig, VerificationReport};
use tck_core::semigroup::{validate_semigroup, validate_up_to_scaling, CaseTag, Semigroup};
use tck_core::tangent_cone::tangent_cone_generators;

const GOLDEN_TIME_LIMIT: Duration = Duration::from_secs(1);
const SWEEP_N3_MAX: i64 = 60;
const ORACLE_BOUND: i64 = 30;
const SWEEP_TIME_LIMIT_SERIAL: Duration = Duration::from_secs(300);
const SWEEP_TIME_LIMIT_PARALLEL: Duration = Duration::from_secs(60);
const PARALLEL_WORKERS: usize = 8;
const RANDOM_SAMPLE: usize = 200;
const RANDOM_N3_MAX: i64 = 2000;
const RANDOM_SEED: u64 = 0x7c6b_2d11;
const PROPERTY_CASES: u32 = 256;

/// Triple, case, printed generators.
type Example = ((i64, i64, i64), CaseTag, &'static [&'static str]);

const EXAMPLES: &[Example] = &[
    ((20, 30, 37), CaseTag::CI_R13_ZERO, &["y^2", "z^10"]),
    (
        (332, 345, 450),
        CaseTag::CI_R21_ZERO,
        &["z^23", "y^4 z^8", "y^42 z", "y^80", "x^15 z^15", "x^30 z^7"],
    ),
    ((20, 23, 30), CaseTag::CI_R12_ZERO_LT, &["y^10", "z^2"]),
    ((160, 163, 170), CaseTag::CI_R12_ZERO_EQ, &["z^16", "y^10 - x^7 z^3"]),
    (
        (480, 503, 1950),
        CaseTag::CI_R12_ZERO_GT,
        &["x^3 z^7", "z^16", "y^30 z^9", "y^60 z^2", "x^74 z^5", "x^145 z^3", "y^210"],
    ),
    (
        (160, 169, 460),
        CaseTag::CI_R12_ZERO_GT,
        &["x z^7", "z^8", "y^20 z", "x^25 z^6", "x^49 z^5", "x^73 z^4", "y^100 - x^97 z^3"],
    ),
    ((13, 20, 31), CaseTag::NCI_LT, &["z^3", "y^3 z", "y^7"]),
    ((193, 200, 211), CaseTag::NCI_EQ, &["y^7 z^8", "y^18 - x^11 z^7", "z^15"]),
    (
        (265, 280, 655),
        CaseTag::NCI_GT,
        &["y z^2", "x z^9", "z^11", "x^7 z^7", "x^13 z^5", "x^19 z^3", "y^26 - x^25 z"],
    ),
];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn sorted(v: impl IntoIterator<Item = String>) -> Vec<String> {
    let mut v: Vec<String> = v.into_iter().collect();
    v.sort();
    v
}

fn golden() -> Outcome {
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    for &((n1, n2, n3), tag, expected) in EXAMPLES {
        let start = Instant::now();
        let ok = validate_up_to_scaling(n1, n2, n3)
            .ok()
            .and_then(|(s, _)| tangent_cone_generators(&s).ok())
            .is_some_and(|gs| {
                gs.case_tag == tag
                    && sorted(gs.forms().iter().map(|f| f.to_string()))
                        == sorted(expected.iter().map(|e| e.to_string()))
            });
        let took = start.elapsed();
        slowest = slowest.max(took);
        if !ok || took > GOLDEN_TIME_LIMIT {
            failures.push(format!("<{n1},{n2},{n3}>"));
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "{}/{} exact, slowest {:.3} s (limit {:?}){}",
            EXAMPLES.len() - failures.len(),
            EXAMPLES.len(),
            slowest.as_secs_f64(),
            GOLDEN_TIME_LIMIT,
            if failures.is_empty() { String::new() } else { format!(", failed {}", failures.join(" ")) }
        ),
    )
}

fn sweep_config() -> OracleConfig {
    OracleConfig {
        coeff_bound: ORACLE_BOUND,
        auto_raise: false,
        ..OracleConfig::default()
    }
}

type Sweep = Vec<(Semigroup, VerificationReport)>;

fn oracle_sweep() -> (Outcome, Sweep) {
    let cfg = sweep_config();
    let start = Instant::now();
    let mut reports = Vec::new();
    let mut failed = Vec::new();
    let mut errors = 0;
    for job in range_jobs(SWEEP_N3_MAX) {
        match verify_prediction(&job.semigroup, &cfg) {
            Ok(r) => {
                if !r.prediction_matches_oracle {
                    failed.push(job.semigroup.to_string());
                }
                reports.push((job.semigroup, r));
            }
            Err(_) => errors += 1,
        }
    }
    let serial = start.elapsed();

    let spec = SweepSpec {
        jobs: range_jobs(SWEEP_N3_MAX),
        oracle: Some(cfg),
        workers: PARALLEL_WORKERS,
        format: Format::Csv,
    };
    let start = Instant::now();
    let mut sink = Vec::new();
    let parallel_ok = run_sweep(&spec, &mut sink).is_ok_and(|s| s.rows == spec.jobs.len());
    let parallel = start.elapsed();
    let csv = String::from_utf8(sink).unwrap_or_default();
    let rows_ok = csv.lines().skip(1).all(|l| l.split(',').nth(10) == Some("true"));

    let cases: BTreeSet<CaseTag> = reports.iter().map(|(_, r)| r.case_tag).collect();
    let pass = failed.is_empty()
        && errors == 0
        && parallel_ok
        && rows_ok
        && serial <= SWEEP_TIME_LIMIT_SERIAL
        && parallel <= SWEEP_TIME_LIMIT_PARALLEL;
    let detail = format!(
        "{} triples with n3 <= {SWEEP_N3_MAX}, N = {ORACLE_BOUND} fixed, {} mismatches, {errors} errors, \
         {} of 8 cases; {:.1} s serial (limit {:?}), {:.1} s with {PARALLEL_WORKERS} workers on {} cpu(s) (limit {:?}){}",
        reports.len() + errors,
        failed.len(),
        cases.len(),
        serial.as_secs_f64(),
        SWEEP_TIME_LIMIT_SERIAL,
        parallel.as_secs_f64(),
        std::thread::available_parallelism().map_or(1, |n| n.get()),
        SWEEP_TIME_LIMIT_PARALLEL,
        failed.first().map(|f| format!(", first {f}")).unwrap_or_default()
    );
    (Outcome::new(pass, detail), reports)
}

fn groebner(sweep: &Sweep) -> Outcome {
    let relevant: Vec<&VerificationReport> = sweep
        .iter()
        .map(|(_, r)| r)
        .filter(|r| matches!(r.case_tag, CaseTag::CI_R21_ZERO | CaseTag::CI_R12_ZERO_GT | CaseTag::NCI_GT))
        .collect();
    let bad: Vec<String> = relevant
        .iter()
        .filter(|r| !r.gb_certified || r.gb_added != 0)
        .map(|r| format!("{:?}", r.triple))
        .collect();
    Outcome::new(
        bad.is_empty() && !relevant.is_empty(),
        format!("{} triples in the index-set cases, {} with additions", relevant.len(), bad.len()),
    )
}

fn random_sample() -> Vec<Semigroup> {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    let mut out = Vec::new();
    while out.len() < RANDOM_SAMPLE {
        let mut t = [0i64; 3];
        for x in &mut t {
            *x = rng.gen_range(3..=RANDOM_N3_MAX);
        }
        t.sort_unstable();
        if let Ok(s) = validate_semigroup(t[0], t[1], t[2]) {
            out.push(s);
        }
    }
    out
}

fn bounds(sweep: &Sweep) -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut check = |s: &Semigroup, r: &VerificationReport| {
        checked += 1;
        let theorem = r.theorem_bounds.as_ref().is_some_and(|t| t.mu_ok && t.beta1_ok && t.beta2_ok);
        if !(r.mu_bounds.global_ok && r.mu_bounds.case_ok && theorem) {
            bad.push(s.to_string());
        }
    };
    for (s, r) in sweep {
        check(s, r);
    }
    let cfg = OracleConfig::default();
    let mut errors = 0;
    for s in random_sample() {
        match verify_prediction(&s, &cfg) {
            Ok(r) => check(&s, &r),
            Err(_) => errors += 1,
        }
    }
    Outcome::new(
        bad.is_empty() && errors == 0,
        format!(
            "{checked} triples ({} sweep + {RANDOM_SAMPLE} random, n3 <= {RANDOM_N3_MAX}, seed {RANDOM_SEED:#x}), \
             {} violations, {errors} errors",
            sweep.len(),
            bad.len()
        ),
    )
}

fn koszul_vs_taylor(sweep: &Sweep) -> Outcome {
    let mut ideals: BTreeSet<Vec<Monomial>> = BTreeSet::new();
    for (s, _) in sweep {
        if let Ok(lead) = tangent_cone_generators(s).map_err(|_| ()).and_then(|gs| initial_ideal(&gs).map_err(|_| ())) {
            if lead.len() <= TAYLOR_GENERATOR_CAP {
                let mut lead = lead;
                lead.sort();
                ideals.insert(lead);
            }
        }
    }
    let bad = ideals
        .iter()
        .filter(|gens| match (betti_numbers(gens), betti_numbers_taylor(gens, None)) {
            (Ok(k), Ok(t)) => k != t,
            _ => true,
        })
        .count();
    Outcome::new(
        bad == 0 && !ideals.is_empty(),
        format!("{} distinct initial ideals with <= {TAYLOR_GENERATOR_CAP} generators, {bad} disagreements", ideals.len()),
    )
}

fn threshold(sweep: &Sweep) -> Outcome {
    let applicable: Vec<&VerificationReport> = sweep.iter().map(|(_, r)| r).filter(|r| r.threshold.applies).collect();
    let bad = applicable.iter().filter(|r| !r.threshold.ok).count();
    Outcome::new(
        bad == 0,
        format!("{} sweep triples with n1 >= k_ab, {bad} with the wrong mu", applicable.len()),
    )
}

fn properties() -> Result<(), String> {
    let mut runner = TestRunner::new(ProptestConfig {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..ProptestConfig::default()
    });
    let triples = (3i64..=300, 1i64..=300, 1i64..=300)
        .prop_filter_map("not minimal", |(n1, a, b)| validate_semigroup(n1, n1 + a, n1 + a + b).ok());
    runner
        .run(&triples, |s| {
            let gs = tangent_cone_generators(&s).map_err(|e| TestCaseError::fail(e.to_string()))?;
            for g in &gs.generators {
                prop_assert!(s.contains_relation(&g.witness));
                prop_assert_eq!(initial_form(&binomial_of(&g.witness).unwrap()).normalized(), g.form);
            }
            Ok(())
        })
        .map_err(|e| format!("witnesses: {e}"))?;

    let vectors = prop::array::uniform3(-30i64..=30).prop_filter("zero", |v| v != &[0, 0, 0]);
    runner
        .run(&vectors, |v| {
            let f = binomial_of(&LatticeVector(v)).unwrap();
            prop_assert_eq!(initial_form(&f).degree(), f.plus.degree().min(f.minus.degree()));
            Ok(())
        })
        .map_err(|e| format!("initial forms: {e}"))?;

    let ideals = prop::collection::vec(prop::array::uniform3(0u64..=5), 1..=7).prop_map(|raw| {
        let mut gens: Vec<Monomial> = Vec::new();
        for e in raw {
            let m = Monomial(e);
            if m.degree() == 0 || gens.iter().any(|g| g.divides(&m)) {
                continue;
            }
            gens.retain(|g| !m.divides(g));
            gens.push(m);
        }
        gens
    });
    runner
        .run(&ideals, |gens| {
            prop_assume!(!gens.is_empty());
            let k = betti_numbers(&gens).unwrap();
            prop_assert_eq!(&betti_numbers_taylor(&gens, None).unwrap(), &k);
            prop_assert_eq!(euler_check(&gens, &k), None);
            Ok(())
        })
        .map_err(|e| format!("betti: {e}"))
}

fn determinism() -> Result<usize, String> {
    let run = |jobs: &str| {
        Command::new(env!("CARGO_BIN_EXE_tck"))
            .args(["sweep", "--n3-max", "40", "--verify", "--jobs", jobs])
            .env_remove("TCK_DEGREE_CAP")
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run("1")?, run("8")?);
    if !a.status.success() || !b.status.success() {
        return Err(format!("exit {:?} / {:?}", a.status.code(), b.status.code()));
    }
    if a.stdout != b.stdout {
        return Err("outputs differ".to_string());
    }
    Ok(a.stdout.len())
}

fn headless() -> Outcome {
    let props = properties();
    let det = determinism();
    let detail = format!(
        "in-process properties {} ({PROPERTY_CASES} cases each); sweep --jobs 1 vs 8: {}",
        match &props {
            Ok(()) => "hold".to_string(),
            Err(e) => format!("failed: {e}"),
        },
        match &det {
            Ok(n) => format!("{n} bytes identical"),
            Err(e) => e.clone(),
        }
    );
    Outcome::new(props.is_ok() && det.is_ok(), detail)
}

fn main() -> ExitCode {
    let mut all = true;
    let mut report = |n: u32, name: &str, o: Outcome| {
        println!("[{}] {n} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        all &= o.pass;
    };
    report(1, "golden examples", golden());
    let (o, sweep) = oracle_sweep();
    report(2, "oracle sweep", o);
    report(3, "groebner certification", groebner(&sweep));
    report(4, "bound checks", bounds(&sweep));
    report(5, "koszul vs taylor", koszul_vs_taylor(&sweep));
    report(6, "k_ab threshold", threshold(&sweep));
    report(7, "headless properties and determinism", headless());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
