// Lives in its own test binary: the cap is read from the process environment.

use osshift::cli::run_with;
use osshift::montecarlo::{simulate_sides, MAX_DRAWS_ENV};
use osshift::orderstats::sample_uniform_order_stat;
use osshift::{AdjacentShiftFamily, Error, RandomStream, RankSpec, RelationSpec, ShiftPair};

#[test]
fn draw_cap_is_enforced_and_overridable() {
    std::env::set_var(MAX_DRAWS_ENV, "1000");
    let rank = RankSpec::new(2, 10).unwrap();
    assert!(sample_uniform_order_stat(rank, 100, &mut RandomStream::new(0, 0)).is_ok());
    let err = sample_uniform_order_stat(rank, 101, &mut RandomStream::new(0, 0)).unwrap_err();
    assert!(matches!(err, Error::Resource { requested: 1010, cap: 1000 }), "{err}");

    let fam = AdjacentShiftFamily::new(3, 1, ShiftPair::new(1.0, 1.0).unwrap(), 0.0).unwrap();
    let rel = RelationSpec::matching(&fam.clone().into());
    let err = simulate_sides(&rel, &fam, 1000, &mut RandomStream::new(0, 0)).unwrap_err();
    assert!(matches!(err, Error::Resource { .. }), "{err}");

    let (mut out, mut errs) = (Vec::new(), Vec::new());
    let argv = ["osshift", "verify", "ks", "--family", "t1", "--n", "3", "--k", "1", "--a", "1", "--b", "1", "--seed", "1"];
    assert_eq!(run_with(argv, &mut out, &mut errs), 2);
    assert!(!errs.is_empty());

    std::env::remove_var(MAX_DRAWS_ENV);
    assert!(sample_uniform_order_stat(rank, 101, &mut RandomStream::new(0, 0)).is_ok());
}
