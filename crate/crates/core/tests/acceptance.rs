use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use reedylab_core::cube::dedekind_homs;
use reedylab_core::suites::{run_suite, SuiteConfig, SUITES};
use reedylab_core::{Budget, Certificate, Status};

const PRE_ELEGANCE_LIMIT: Duration = Duration::from_secs(5);
const OBSTRUCTION_U_LIMIT: Duration = Duration::from_secs(1);
const SIEVE_CHAIN_LIMIT: Duration = Duration::from_secs(30);
const HOM_COUNT_BUDGET: u128 = 20_000_000;

enum Verdict {
    Pass,
    Fail,
    Unattainable,
}

struct Outcome {
    verdict: Verdict,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        detail: detail.into(),
    }
}

fn config(name: &str) -> SuiteConfig {
    let mut c = SuiteConfig::new(name);
    if name == "hom-counts" {
        c.budget = c.budget.with_candidates(HOM_COUNT_BUDGET);
    }
    c
}

fn summary(c: &Certificate) -> String {
    let failed: Vec<&str> = c.failures().iter().map(|f| f.id.as_str()).collect();
    let skipped: Vec<&str> = c
        .checks
        .iter()
        .filter(|f| f.status == Status::Skipped)
        .map(|f| f.id.as_str())
        .collect();
    format!(
        "{} checks, failed {:?}, skipped {:?}",
        c.checks.len(),
        failed,
        skipped
    )
}

fn count(c: &Certificate, id: &str) -> u64 {
    c.check(id).map_or(0, |ch| ch.count)
}

fn main() -> ExitCode {
    let mut certs: BTreeMap<&str, (Certificate, Duration)> = BTreeMap::new();
    for name in SUITES {
        let start = Instant::now();
        let cert = run_suite(&config(name)).expect("registered suite");
        certs.insert(name, (cert, start.elapsed()));
    }
    let get = |name: &str| &certs[name];
    let mut outcomes: Vec<(usize, &str, Outcome)> = Vec::new();

    let (c, _) = get("hom-counts");
    outcomes.push((
        1,
        "hom counts",
        outcome(
            c.all_passed() && count(c, "formula-matches-brute-force") == 16 && count(c, "known-values") == 4,
            summary(c),
        ),
    ));

    let b = Budget::default();
    let d2 = dedekind_homs(2, 1, &b).map(|v| v.len()).unwrap_or(0);
    let d3 = dedekind_homs(3, 1, &b).map(|v| v.len()).unwrap_or(0);
    outcomes.push((
        2,
        "dedekind counts",
        outcome(d2 == 6 && d3 == 20, format!("n=2: {d2}, n=3: {d3}")),
    ));

    let (c, t) = get("pre-elegance");
    let ids = [
        "degree-compatibility",
        "orthogonal-lifting",
        "lowering-right-cancellation",
        "raising-left-cancellation",
        "isos-act-freely-on-lowering",
        "lowering-pushout-closure",
        "lowering-maps-are-epi",
    ];
    outcomes.push((
        3,
        "pre-elegance of the three-element truncation",
        outcome(
            c.all_passed() && ids.iter().all(|i| c.passed(i)) && *t < PRE_ELEGANCE_LIMIT,
            format!("{}; {:?} (limit {:?})", summary(c), t, PRE_ELEGANCE_LIMIT),
        ),
    ));

    let (c, _) = get("elegant-core");
    outcomes.push((
        4,
        "elegant-core agreement",
        outcome(
            c.all_passed() && count(c, "triple-agreement") == 9 && c.passed("tripod-fails-all-three"),
            summary(c),
        ),
    ));

    let (c, _) = get("relative-elegance");
    let hom_checks: Vec<_> = c.checks.iter().filter(|ch| ch.id.starts_with("hom-")).collect();
    outcomes.push((
        5,
        "relative elegance of cubes and simplices",
        outcome(
            c.all_passed() && hom_checks.len() == 6 && hom_checks.iter().all(|ch| ch.count == 630),
            format!("{}; squares per source {}", summary(c), hom_checks.first().map_or(0, |h| h.count)),
        ),
    ));

    let (c, _) = get("presheaf-ez");
    let agree = c.passed("n2-triple-agreement")
        && c.passed("n3-triple-agreement")
        && count(c, "n2-triple-agreement") == 6
        && count(c, "n3-triple-agreement") >= 200
        && c.passed("n5-witness-fails-all-three");
    let both = c.passed("both-verdicts-in-corpus");
    outcomes.push((
        6,
        "Reedy-mono triple agreement",
        Outcome {
            verdict: match (agree, both) {
                (false, _) => Verdict::Fail,
                (true, true) => Verdict::Pass,
                (true, false) => Verdict::Unattainable,
            },
            detail: format!(
                "agreement on {} + {} instances; only the Reedy monomorphic verdict occurs on these truncations, \
                 the other verdict is shown by the five-element witness",
                count(c, "n2-triple-agreement"),
                count(c, "n3-triple-agreement")
            ),
        },
    ));

    outcomes.push((
        7,
        "latching objects two ways",
        outcome(
            c.passed("n2-latching-routes-agree")
                && c.passed("n3-latching-routes-agree")
                && c.passed("yoneda-V-latching-size-7-injective"),
            format!(
                "routes agree on {} + {} instances; yo(V) latching size 7, injective",
                count(c, "n2-latching-routes-agree"),
                count(c, "n3-latching-routes-agree")
            ),
        ),
    ));

    let (c, _) = get("cell-presentation");
    outcomes.push((8, "cell presentation", outcome(c.all_passed(), summary(c))));

    let (c, _) = get("idempotent-completion");
    outcomes.push((
        9,
        "idempotent completion",
        outcome(
            c.all_passed()
                && c.passed("cube-idempotents-split")
                && c.passed("distributive-classes-are-cube-retracts")
                && c.passed("example-splits-through-chain"),
            summary(c),
        ),
    ));

    let (c, t) = get("obstruction-u");
    outcomes.push((
        10,
        "obstruction u",
        outcome(
            c.all_passed() && count(c, "t-has-no-lift-through-d1") == 9 && *t < OBSTRUCTION_U_LIMIT,
            format!("{}; {:?} (limit {:?})", summary(c), t, OBSTRUCTION_U_LIMIT),
        ),
    ));

    let (c, _) = get("crown-winding");
    outcomes.push((11, "crown winding", outcome(c.all_passed(), summary(c))));

    let (c, t) = get("sieve-chain");
    outcomes.push((
        12,
        "sieve chain",
        outcome(
            c.all_passed() && *t < SIEVE_CHAIN_LIMIT,
            format!(
                "{}; {} search nodes; {:?} (limit {:?})",
                summary(c),
                count(c, "no-factorization-of-f1-through-f2"),
                t,
                SIEVE_CHAIN_LIMIT
            ),
        ),
    ));

    let (c, _) = get("triangulation");
    outcomes.push((13, "triangulation", outcome(c.all_passed(), summary(c))));

    let mut differing = Vec::new();
    for name in SUITES {
        let again = run_suite(&config(name)).expect("registered suite");
        let a = serde_json::to_string(&certs[name].0.without_duration()).expect("json");
        let b = serde_json::to_string(&again.without_duration()).expect("json");
        if a != b {
            differing.push(name);
        }
    }
    outcomes.push((
        14,
        "determinism",
        outcome(differing.is_empty(), format!("{} suites re-run, differing {:?}", SUITES.len(), differing)),
    ));

    let mut failed = false;
    for (k, name, o) in &outcomes {
        let tag = match o.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => {
                failed = true;
                "FAIL"
            }
            Verdict::Unattainable => "UNATTAINABLE",
        };
        println!("{tag} {k:>2} {name}: {}", o.detail);
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
