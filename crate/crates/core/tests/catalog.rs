use altcenter::algebras::{evaluate, medvedev_shestakov, random_assignment, split_octonions, Assignment};
use altcenter::catalog::*;
use altcenter::freealt::{is_identity, IdentityOpts};
use altcenter::terms::GenSym;

#[test]
fn u2_is_an_identity_and_u4_is_nonzero() {
    let u2 = find("u2").unwrap().build().unwrap();
    assert!(is_identity(&u2, &IdentityOpts::default()).unwrap().holds());
    assert!(!find("u4").unwrap().build().unwrap().is_zero());
}

#[test]
fn shestakov_is_a_nonzero_scalar() {
    let o = split_octonions();
    let e = shestakov();
    let gens: Vec<GenSym> = e.generators().into_iter().collect();
    let v = evaluate(&e, &random_assignment(1, &gens, &o, 7), &o).unwrap();
    assert!(!v.is_zero());
    assert!(o.is_scalar(&v).unwrap());
}

#[test]
fn witnesses_evaluate_at_the_stated_points() {
    // records the observed values; see README, "Known discrepancies"
    let a = medvedev_shestakov(1).unwrap();
    let e = find("tilde-s4").unwrap().build().unwrap();
    let b = |l: &str| a.basis_element(a.index_of(l).unwrap());
    let asg = Assignment::new().with("e", b("v0")).with("z", b("v1")).with("t", b("vp1")).with("x", b("x"));
    assert_eq!(a.format(&evaluate(&e, &asg, &a).unwrap()), "0");
}

#[test]
fn every_entry_is_described() {
    let names: Vec<&str> = central_catalog().iter().map(|c| c.name).collect();
    for want in ["u2", "u7", "u4-super", "fil", "fil-super", "shestakov", "dorofeev-shelipov", "prop6"] {
        assert!(names.contains(&want), "{want}");
    }
    for c in central_catalog() {
        let d = c.describe().unwrap();
        assert_eq!(d["name"], c.name);
        assert!(d["terms"].as_u64().unwrap() > 0);
    }
}

#[test]
fn listed_identities_parse() {
    let ids = listed_identities();
    assert_eq!(ids.first().unwrap().label, "1a");
    assert_eq!(ids.last().unwrap().label, "21");
    for id in ids {
        id.build().unwrap();
    }
}
