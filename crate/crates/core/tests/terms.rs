use altcenter::reproduce::random_expr;
use altcenter::terms::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gens() -> Vec<GenSym> {
    vec![GenSym::even("a"), GenSym::even("b"), GenSym::odd("x"), GenSym::odd("y")]
}

fn expr(seed: u64, terms: usize, degree: usize) -> Expr {
    random_expr(&mut ChaCha8Rng::seed_from_u64(seed), &gens(), terms, degree)
}

fn p(s: &str) -> Expr {
    parse(s, &Parities::with_odd(&["x", "y"])).unwrap()
}

#[test]
fn dsl_operators_expand_as_defined() {
    assert_eq!(p("(a,b,a)"), &p("(a b) a") - &p("a (b a)"));
    assert_eq!(p("[a,b,x]"), p("[[a,b],x]"));
    assert_eq!(p("a o x"), &p("a x") + &p("x a"));
    assert_eq!(p("[x,y]"), &p("x y") + &p("y x"));
    assert_eq!(p("x o y"), &p("x y") - &p("y x"));
    assert_eq!(p("a^3"), p("(a a) a"));
}

#[test]
fn parse_errors_are_reported() {
    assert!(matches!(parse("(a,b", &Parities::default()), Err(altcenter::Error::Syntax { .. })));
    assert!(parse("a $ b", &Parities::default()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn format_parse_round_trip(seed in any::<u64>()) {
        let e = expr(seed, 4, 6);
        prop_assert_eq!(parse(&format(&e), &Parities::with_odd(&["x", "y"])).unwrap(), e);
    }

    #[test]
    fn super_commutator_is_super_antisymmetric(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (e, f) = (expr(s1, 1, 3), expr(s2, 1, 3));
        let (ep, fp) = (e.parity().unwrap(), f.parity().unwrap());
        let sign = if ep.is_odd() && fp.is_odd() { 1 } else { -1 };
        prop_assert_eq!(commutator(&e, &f), commutator(&f, &e).scale_int(sign));
        prop_assert_eq!(jordan(&e, &f), jordan(&f, &e).scale_int(-sign));
    }

    #[test]
    fn polarization_is_multilinear(seed in any::<u64>()) {
        let e = expr(seed, 1, 5);
        let (pol, info) = polarize_all(&e).unwrap();
        prop_assert_eq!(pol.degree(), e.degree());
        for (m, _) in pol.terms() {
            prop_assert!(m.multidegree().values().all(|&d| d == 1));
        }
        let total: usize = info.copies.iter().map(|(_, c)| c.len()).sum();
        prop_assert_eq!(total, e.degree());
    }
}
