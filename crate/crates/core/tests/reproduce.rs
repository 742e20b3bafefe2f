use altcenter::freealt::IdentityOpts;
use altcenter::reproduce::*;

fn cheap() -> RunConfig {
    RunConfig { trials: 5, ..RunConfig::default() }
}

#[test]
fn reports_are_stable_under_rerun() {
    let a = reproduce("u-center", &cheap()).unwrap().to_json();
    let b = reproduce("u-center", &cheap()).unwrap().to_json();
    assert_eq!(a, b);
    let other = reproduce("u-center", &RunConfig { seed: 9, ..cheap() }).unwrap();
    assert_eq!(other.seed, 9);
}

#[test]
fn cap_skips_instead_of_failing() {
    let cfg = RunConfig { opts: IdentityOpts::with_cap(4), ..cheap() };
    let r = reproduce("identities", &cfg).unwrap();
    assert!(r.checks.iter().any(|c| c.status == Status::Skipped && c.detail.contains("cap is 4")));
    assert!(r.checks.iter().all(|c| c.status != Status::Fail));
    assert_eq!(r.overall, Status::Pass);
}

#[test]
fn witness_targets_report_values() {
    let r = reproduce("prop5-s", &cheap()).unwrap();
    assert_eq!(r.checks.len(), 1);
    assert!(r.checks[0].witness.is_some());
    assert_eq!(r.overall, r.checks[0].status);
}

#[test]
fn text_report_lists_every_check() {
    let r = reproduce("ms-table", &cheap()).unwrap();
    let text = r.to_text();
    assert_eq!(text.lines().count(), r.checks.len() + 2);
    assert!(text.ends_with("overall: pass\n"));
}

#[test]
fn unknown_target() {
    assert!(reproduce("nope", &cheap()).is_err());
}
