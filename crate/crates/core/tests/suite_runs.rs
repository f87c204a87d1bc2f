use reedylab_core::dot::{crown_dot, dot_counts, semilattice_dot};
use reedylab_core::obstruction::crown;
use reedylab_core::semilattice::{cube, terminal};
use reedylab_core::suites::{run_suite, SuiteConfig, SUITES};
use reedylab_core::{Error, Status};

#[test]
fn registered_suites_are_twelve() {
    assert_eq!(SUITES.len(), 12);
    assert!(matches!(run_suite(&SuiteConfig::new("unknown")), Err(Error::UnknownSuite(_))));
}

#[test]
fn cheap_suites_pass_and_repeat() {
    for name in ["reedy-axioms", "pre-elegance", "elegant-core", "obstruction-u", "triangulation", "idempotent-completion"] {
        let config = SuiteConfig::new(name);
        let a = run_suite(&config).unwrap();
        let b = run_suite(&config).unwrap();
        assert!(a.all_passed(), "{name}: {:?}", a.failures());
        assert_eq!(
            serde_json::to_string(&a.without_duration()).unwrap(),
            serde_json::to_string(&b.without_duration()).unwrap()
        );
        assert_eq!(a.config["suite"], name);
    }
}

#[test]
fn elegant_core_examines_nine_classes() {
    let cert = run_suite(&SuiteConfig::new("elegant-core")).unwrap();
    assert_eq!(cert.check("triple-agreement").unwrap().count, 9);
}

#[test]
fn budget_overrun_is_a_skip() {
    let mut config = SuiteConfig::new("hom-counts");
    config.cube_dim = 3;
    let cert = run_suite(&config).unwrap();
    assert_eq!(cert.check("brute-force-3-3").unwrap().status, Status::Skipped);
    assert!(!cert.any_failed());
}

#[test]
fn dot_exports() {
    assert_eq!(dot_counts(&semilattice_dot(&cube(2), "sq")), (4, 4));
    assert_eq!(dot_counts(&semilattice_dot(&terminal(), "pt")), (1, 0));
    let c4 = crown_dot(&crown(4).unwrap());
    assert_eq!(dot_counts(&c4), (8, 8));
    assert_eq!(c4, crown_dot(&crown(4).unwrap()));
}
