use tl_core::filtered::check_invariance1;
use tl_core::generate::{Bounds, Gen};
use tl_core::suites::{run_suite, SUITES};
use tl_core::Error;

fn small() -> Bounds {
    Bounds { max_rank: 3, max_degree: 3 }
}

#[test]
fn reports_are_deterministic() {
    for name in SUITES {
        let mut a = run_suite(name, 3, 7, small()).unwrap();
        let mut b = run_suite(name, 3, 7, small()).unwrap();
        a.elapsed_secs = 0.0;
        b.elapsed_secs = 0.0;
        assert_eq!(a, b, "{name}");
        assert!(a.pass, "{name}: {:?}", a.failures);
    }
    let one = run_suite("signmod4", 1, 7, small()).unwrap();
    assert_eq!((one.trials, one.seed, one.pass), (1, 7, true));
}

#[test]
fn det_mod4_holds_on_500_forms() {
    assert!(run_suite("det-mod4", 500, 99, Bounds::default()).unwrap().pass);
}

#[test]
fn unknown_suites_are_rejected() {
    assert!(matches!(run_suite("bogus", 1, 0, small()), Err(Error::UnknownSuite(_))));
}

#[test]
fn invariance_sees_both_torsion_values() {
    let mut seen = [0usize; 2];
    for t in 0..100 {
        let mut g = Gen::new(4, t, Bounds::default());
        let f = g.filtered_contractible(3, 4);
        let r = check_invariance1(&f).unwrap();
        assert!(r.holds);
        seen[r.total.bit() as usize] += 1;
    }
    assert!(seen[0] > 10 && seen[1] > 10, "{seen:?}");
}

#[test]
fn different_seeds_give_different_instances() {
    let a = Gen::new(1, 0, small()).symmetric(4);
    let b = Gen::new(2, 0, small()).symmetric(4);
    let c = Gen::new(1, 1, small()).symmetric(4);
    assert!(a != b || a != c);
    assert_eq!(Gen::new(1, 0, small()).symmetric(4), a);
}
