use altcenter::algebras::{evaluate, random_assignment, split_octonions};
use altcenter::freealt::*;
use altcenter::reproduce::random_expr;
use altcenter::terms::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn p(s: &str) -> Expr {
    parse(s, &Parities::default()).unwrap()
}

fn opts() -> IdentityOpts {
    IdentityOpts::default()
}

#[test]
fn dimensions_match_frozen_values() {
    for d in 1..=5 {
        assert_eq!(alt_dim(d, &opts()).unwrap(), KNOWN_ALT_DIMS[d - 1], "degree {d}");
    }
    assert_eq!(alt_dim(5, &opts()).unwrap(), 175);
    assert_eq!(MultilinearBasis::standard(3).unwrap().len(), 12);
    assert_eq!(MultilinearBasis::standard(6).unwrap().len(), 30240);
}

#[test]
fn flat_elimination_agrees_with_the_tower() {
    for d in 3..=4 {
        let basis = MultilinearBasis::standard(d).unwrap();
        let rank = reduce_basis(basis.len(), consequence_generators(&basis), None).unwrap().rank();
        assert_eq!(rank, consequence_rank(d, &opts()).unwrap());
    }
}

#[test]
fn associator_is_not_an_identity_and_octonions_agree() {
    let e = p("(a,b,c)");
    assert!(!is_identity(&e, &opts()).unwrap().holds());
    let o = split_octonions();
    let gens: Vec<GenSym> = e.generators().into_iter().collect();
    assert!(!evaluate(&e, &random_assignment(1, &gens, &o, 7), &o).unwrap().is_zero());
}

#[test]
fn moufang_identity_holds() {
    assert!(is_identity(&p("((a b) c) b - a (b c b)"), &opts()).unwrap().holds());
    assert!(is_identity(&p("(a b)(c a) - a (b c) a"), &opts()).unwrap().holds());
    assert!(!is_identity(&p("[a,b] c - c [a,b]"), &opts()).unwrap().holds());
}

#[test]
fn degree_seven_needs_the_flag() {
    let e = p("[(a,x,y)^2, a]");
    assert!(matches!(is_identity(&e, &opts()), Err(altcenter::Error::DegreeCap { required: 7, .. })));
    assert_eq!(required_degree(&e), 7);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Substitution instances of the alternative laws are identities.
    #[test]
    fn substitution_instances_are_identities(s1 in any::<u64>(), s2 in any::<u64>()) {
        let gens = [GenSym::even("c"), GenSym::even("d")];
        let u = random_expr(&mut ChaCha8Rng::seed_from_u64(s1), &gens, 2, 2);
        let v = random_expr(&mut ChaCha8Rng::seed_from_u64(s2), &gens, 1, 2);
        for law in [associator(&u, &u, &v), associator(&v, &u, &u)] {
            for part in law.homogeneous_components().values() {
                prop_assert!(is_identity(part, &opts()).unwrap().holds());
            }
        }
    }

    /// Certified identities vanish in the octonions.
    #[test]
    fn certificates_are_sound(seed in any::<u64>(), coeff in -3i64..=3) {
        let e = &p("(a,b,[c,b]) - [b,(a,b,c)]").scale_int(coeff) + &p("(a,a,b)");
        prop_assume!(is_identity(&e, &opts()).unwrap().holds());
        let o = split_octonions();
        let gens: Vec<GenSym> = e.generators().into_iter().collect();
        prop_assert!(evaluate(&e, &random_assignment(seed, &gens, &o, 5), &o).unwrap().is_zero());
    }

    /// Renaming generators does not change the verdict.
    #[test]
    fn verdict_is_invariant_under_renaming(seed in any::<u64>()) {
        let gens = [GenSym::even("a"), GenSym::even("b"), GenSym::even("c")];
        let e = random_expr(&mut ChaCha8Rng::seed_from_u64(seed), &gens, 3, 4);
        let comp = e.homogeneous_components().into_values().next().unwrap();
        let map = [("a", "q"), ("b", "r"), ("c", "s")]
            .into_iter()
            .map(|(x, y)| (GenSym::even(x), GenSym::even(y)))
            .collect();
        let renamed = comp.rename(&map);
        prop_assert_eq!(
            is_identity(&comp, &opts()).unwrap().holds(),
            is_identity(&renamed, &opts()).unwrap().holds()
        );
    }
}
