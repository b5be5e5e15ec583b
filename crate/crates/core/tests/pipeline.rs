//! Cross-module flows: datasets through coset actions to scans, and
//! agreement between the sequential and parallel paths.

use num_bigint::BigUint;
use qsrlab_core::actions::{coset_action, ksubset_action};
use qsrlab_core::constructors::make_sym_alt;
use qsrlab_core::dataset::{dataset_path, default_data_dir, load_dataset};
use qsrlab_core::harness::{self, RunConfig, Status};
use qsrlab_core::par::Exec;
use qsrlab_core::qsr::{primes_up_to, scan_action};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const ORDERS: &[(&str, u64)] = &[
    ("M11", 7920),
    ("M12", 95040),
    ("M22", 443520),
    ("M22.2", 887040),
    ("M23", 10200960),
    ("M12.2", 190080),
];

#[test]
fn datasets_load_with_consistent_indices() {
    for &(name, order) in ORDERS {
        let d = load_dataset(&dataset_path(&default_data_dir(), name)).unwrap();
        assert_eq!(d.group.order(), BigUint::from(order), "{name}");
        assert!(d.group.is_transitive(), "{name}");
        for s in &d.subgroups {
            assert!(s.group.is_subgroup_of(&d.group), "{name} {}", s.name);
            assert_eq!(
                d.group.index_of(&s.group).unwrap(),
                s.index,
                "{name} {}",
                s.name
            );
        }
    }
}

#[test]
fn m11_on_twelve_points() {
    let d = load_dataset(&dataset_path(&default_data_dir(), "M11")).unwrap();
    let h = &d.subgroup("L2(11)").unwrap().group;
    let a = coset_action(&d.group, h, "M11 on 12").unwrap();
    assert_eq!(a.degree(), 12);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let r = scan_action(&a, &primes_up_to(11), &mut rng, Exec::Sequential).unwrap();
    assert_eq!(r.primes_with_qsr(), vec![11]);
    assert_eq!(r.verdict(11).unwrap().classes.len(), 2);
    for c in &r.certificates {
        assert_eq!((a.degree() as u64 - 1) % c.order, 0);
    }
}

#[test]
fn sequential_and_parallel_scans_agree() {
    let g = make_sym_alt(9, false).unwrap();
    let a = ksubset_action(&g, 3).unwrap();
    let primes = primes_up_to(9);
    let run = |exec| {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        scan_action(&a, &primes, &mut rng, exec).unwrap().verdicts
    };
    assert_eq!(run(Exec::Sequential), run(Exec::Parallel));
}

#[test]
fn reports_are_deterministic_and_exec_independent() {
    let render = |exec| {
        let cfg = RunConfig {
            exec,
            ..RunConfig::default()
        };
        let rep = harness::structural::run(&cfg).unwrap();
        let mut buf = Vec::new();
        rep.write_jsonl(&mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    };
    let a = render(Exec::Parallel);
    assert_eq!(a, render(Exec::Parallel));
    assert_eq!(a, render(Exec::Sequential));
}

#[test]
fn verify_suites_pass() {
    let cfg = RunConfig::default();
    let rep = harness::verify::run(&cfg, None).unwrap();
    let failing: Vec<_> = rep.failures().map(|r| format!("{:?}", r.fields)).collect();
    assert!(failing.is_empty(), "{failing:#?}");
    assert!(rep.count(Status::Pass) > 50);
}

#[test]
fn unknown_suite_is_rejected() {
    let cfg = RunConfig::default();
    assert!(harness::verify::run(&cfg, Some("nope")).is_err());
    assert!(harness::sporadic::run(&cfg, Some("M99")).is_err());
}

#[test]
fn readme_example() {
    let g = make_sym_alt(9, false).unwrap();
    let a = ksubset_action(&g, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let report = scan_action(&a, &primes_up_to(9), &mut rng, Exec::Parallel).unwrap();
    assert_eq!(report.primes_with_qsr(), vec![7]);
}
