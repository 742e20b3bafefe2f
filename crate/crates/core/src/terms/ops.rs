//! Operator combinators on expressions: commutators, associators, the
//! swap-difference used by the δ-operation, (skew-)symmetrization and the
//! various linearizations.
//!
//! Super-operations follow the Koszul rule: whenever two homogeneous factors
//! of parities `p`, `q` are exchanged the term picks up `(-1)^{pq}`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{Expr, GenSym, Monomial, Parity};

fn swap_sign(m1: &Monomial, m2: &Monomial) -> Scalar {
    Scalar::sign(m1.parity().is_odd() && m2.parity().is_odd())
}

/// Super-commutator `xy - (-1)^{|x||y|} yx`, extended bilinearly.
pub fn commutator(e: &Expr, f: &Expr) -> Expr {
    let mut out = Expr::zero();
    for (m1, c1) in e.terms() {
        for (m2, c2) in f.terms() {
            let c = c1 * c2;
            out.add_term(Monomial::product(m1, m2), c.clone());
            out.add_term(Monomial::product(m2, m1), -(&c * &swap_sign(m1, m2)));
        }
    }
    out
}

/// Super-Jordan product `xy + (-1)^{|x||y|} yx`.
pub fn jordan(e: &Expr, f: &Expr) -> Expr {
    let mut out = Expr::zero();
    for (m1, c1) in e.terms() {
        for (m2, c2) in f.terms() {
            let c = c1 * c2;
            out.add_term(Monomial::product(m1, m2), c.clone());
            out.add_term(Monomial::product(m2, m1), &c * &swap_sign(m1, m2));
        }
    }
    out
}

/// `(a,b,c) = (ab)c - a(bc)`.
pub fn associator(a: &Expr, b: &Expr, c: &Expr) -> Expr {
    &(&(a * b) * c) - &(a * &(b * c))
}

/// `J(a,b,c) = [[a,b],c] + [[b,c],a] + [[c,a],b]`.
pub fn jacobian(a: &Expr, b: &Expr, c: &Expr) -> Expr {
    let mut out = commutator(&commutator(a, b), c);
    out = &out + &commutator(&commutator(b, c), a);
    &out + &commutator(&commutator(c, a), b)
}

/// `D(a,b,c) = (a∘b)∘c - (a∘c)∘b`.
pub fn dfun(a: &Expr, b: &Expr, c: &Expr) -> Expr {
    &jordan(&jordan(a, b), c) - &jordan(&jordan(a, c), b)
}

/// `[a, f_1, ..., f_k]`, the left-normed iterated commutator.
pub fn left_normed_comm(a: &Expr, fs: &[Expr]) -> Expr {
    fs.iter().fold(a.clone(), |acc, f| commutator(&acc, f))
}

/// Left-normed power `((a a) a) ... a`.
pub fn power(a: &Expr, k: usize) -> Expr {
    assert!(k >= 1, "power exponent must be positive");
    (1..k).fold(a.clone(), |acc, _| &acc * a)
}

fn check_linear_in(e: &Expr, g: &GenSym) -> Result<()> {
    for (m, _) in e.terms() {
        let d = m.degree_in(g);
        if d != 1 {
            return Err(Error::DegreeViolation {
                generator: g.name().to_string(),
                expected: 1,
                found: d,
            });
        }
    }
    Ok(())
}

/// `e - e[p <-> q]`: the written term minus the term with `p` and `q` exchanged.
///
/// Every monomial must contain `p` and `q` exactly once.
pub fn delta_swap(e: &Expr, p: &GenSym, q: &GenSym) -> Result<Expr> {
    check_linear_in(e, p)?;
    check_linear_in(e, q)?;
    let map = HashMap::from([(p.clone(), q.clone()), (q.clone(), p.clone())]);
    Ok(e - &e.rename(&map))
}

/// The δ-operation: `f(a², a, ...) - f(a, a², ...)` for `f` linear in the slots `p`, `q`.
pub fn delta(f: &Expr, p: &GenSym, q: &GenSym, a: &Expr) -> Result<Expr> {
    let d = delta_swap(f, p, q)?;
    let map = HashMap::from([(p.clone(), a * a), (q.clone(), a.clone())]);
    Ok(d.substitute(&map))
}

/// All permutations of `0..n` with their sign (true = odd), in lexicographic order.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push((p.clone(), permutation_is_odd(&p)));
        // next lexicographic permutation
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
            break;
        };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

/// Parity of a permutation given as a sequence of distinct keys.
pub fn permutation_is_odd<T: Ord>(seq: &[T]) -> bool {
    let mut odd = false;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                odd = !odd;
            }
        }
    }
    odd
}

fn symmetrize(e: &Expr, vars: &[GenSym], signed: bool) -> Result<Expr> {
    for v in vars {
        check_linear_in(e, v)?;
    }
    let mut out = Expr::zero();
    for (perm, odd) in permutations(vars.len()) {
        let map: HashMap<GenSym, GenSym> =
            vars.iter().zip(&perm).map(|(v, &j)| (v.clone(), vars[j].clone())).collect();
        let c = Scalar::sign(signed && odd);
        out.add_scaled(&e.rename(&map), &c);
    }
    Ok(out)
}

/// `Σ_σ sgn(σ) e(..., x_σ(1), ..., x_σ(n))`.
pub fn alt_op(e: &Expr, vars: &[GenSym]) -> Result<Expr> {
    symmetrize(e, vars, true)
}

/// `Σ_σ e(..., x_σ(1), ..., x_σ(n))`.
pub fn sym_op(e: &Expr, vars: &[GenSym]) -> Result<Expr> {
    symmetrize(e, vars, false)
}

/// `t ∂/∂x`: the sum of all single replacements of an occurrence of `x` by `t`.
///
/// The operator has parity `|t| + |x|`; an occurrence preceded (in leaf order)
/// by leaves of total parity `p` is signed `(-1)^{(|t|+|x|) p}`.
pub fn partial_linearize(e: &Expr, x: &GenSym, t: &GenSym) -> Expr {
    let op_odd = x.parity().is_odd() ^ t.parity().is_odd();
    let mut out = Expr::zero();
    for (m, c) in e.terms() {
        let leaves = m.leaves();
        let mut prefix_odd = false;
        for i in 0..leaves.len() {
            if &leaves[i] == x {
                let mut l = leaves.clone();
                l[i] = t.clone();
                out.add_term(m.relabel(&l), c * &Scalar::sign(op_odd && prefix_odd));
            }
            prefix_odd ^= leaves[i].parity().is_odd();
        }
    }
    out
}

/// Full polarization in `x`: substitute `x := Σ fresh_i` and keep the part
/// multilinear in all `fresh_i`. Every monomial must have degree `|fresh|` in `x`.
pub fn multilinearize(e: &Expr, x: &GenSym, fresh: &[GenSym]) -> Result<Expr> {
    let k = fresh.len();
    let perms = permutations(k);
    let mut out = Expr::zero();
    for (m, c) in e.terms() {
        let d = m.degree_in(x);
        if d != k {
            return Err(Error::NonHomogeneous { generator: x.name().to_string(), expected: k, found: d });
        }
        let leaves = m.leaves();
        let pos: Vec<usize> = (0..leaves.len()).filter(|&i| &leaves[i] == x).collect();
        for (perm, _) in &perms {
            let mut l = leaves.clone();
            for (j, &p) in pos.iter().enumerate() {
                l[p] = fresh[perm[j]].clone();
            }
            out.add_term(m.relabel(&l), c.clone());
        }
    }
    Ok(out)
}

/// Name used for the `i`-th polarization copy of `g` (1-based).
pub fn fresh_name(g: &GenSym, i: usize) -> String {
    format!("{}.{}", g.name(), i)
}

/// A generator renaming produced by [`polarize_all`].
#[derive(Debug, Clone, Default)]
pub struct Polarization {
    /// original generator -> its copies (a generator of degree 1 maps to itself)
    pub copies: Vec<(GenSym, Vec<GenSym>)>,
}

impl Polarization {
    pub fn variables(&self) -> Vec<GenSym> {
        self.copies.iter().flat_map(|(_, c)| c.iter().cloned()).collect()
    }
}

/// Polarize every generator of degree > 1. The input must be multihomogeneous.
pub fn polarize_all(e: &Expr) -> Result<(Expr, Polarization)> {
    let Some((m, _)) = e.terms().next() else {
        return Ok((Expr::zero(), Polarization::default()));
    };
    let md = m.multidegree();
    let mut out = e.clone();
    let mut pol = Polarization::default();
    for (g, k) in md {
        if k == 1 {
            check_linear_in(e, &g).map_err(|_| Error::NotMultihomogeneous)?;
            pol.copies.push((g.clone(), vec![g]));
            continue;
        }
        let fresh: Vec<GenSym> = (1..=k).map(|i| GenSym::new(&fresh_name(&g, i), g.parity())).collect();
        out = multilinearize(&out, &g, &fresh).map_err(|_| Error::NotMultihomogeneous)?;
        pol.copies.push((g, fresh));
    }
    Ok((out, pol))
}

/// Super-form of an ordinary element multilinear in `vars`: the listed
/// generators become odd and each monomial is multiplied by the sign of the
/// permutation its leaf order induces on them.
///
/// This is the Grassmann envelope correspondence: `e` vanishes on `G(A)` with
/// `vars` taking odd values iff the result vanishes on `A`.
pub fn superize(e: &Expr, vars: &[GenSym]) -> Result<Expr> {
    twist(e, vars, Parity::Odd)
}

/// Inverse of [`superize`]: every odd generator (each must occur exactly
/// once per monomial) becomes even, with the same permutation signs.
pub fn ordinary_form(e: &Expr) -> Result<Expr> {
    let odd: Vec<GenSym> = e.generators().into_iter().filter(|g| g.parity().is_odd()).collect();
    twist(e, &odd, Parity::Even)
}

fn twist(e: &Expr, vars: &[GenSym], to: Parity) -> Result<Expr> {
    for v in vars {
        check_linear_in(e, v)?;
    }
    let rank: HashMap<&GenSym, usize> = vars.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut out = Expr::zero();
    for (m, c) in e.terms() {
        let leaves = m.leaves();
        let order: Vec<usize> = leaves.iter().filter_map(|g| rank.get(g).copied()).collect();
        let relabeled: Vec<GenSym> =
            leaves.iter().map(|g| if rank.contains_key(g) { g.with_parity(to) } else { g.clone() }).collect();
        out.add_term(m.relabel(&relabeled), c * &Scalar::sign(permutation_is_odd(&order)));
    }
    Ok(out)
}

/// Ordinary skew-symmetric form of a super element in the odd generator `x`:
/// the occurrences of `x` are labelled `fresh[0..k]` in leaf order and the
/// result is skew-symmetrized over the labels.
pub fn desuperize(e: &Expr, x: &GenSym, fresh: &[GenSym]) -> Result<Expr> {
    let mut labelled = Expr::zero();
    for (m, c) in e.terms() {
        let d = m.degree_in(x);
        if d != fresh.len() {
            return Err(Error::NonHomogeneous { generator: x.name().to_string(), expected: fresh.len(), found: d });
        }
        let mut next = fresh.iter();
        let leaves: Vec<GenSym> =
            m.leaves().into_iter().map(|g| if &g == x { next.next().unwrap().clone() } else { g }).collect();
        labelled.add_term(m.relabel(&leaves), c.clone());
    }
    alt_op(&labelled, fresh)
}

#[cfg(test)]
mod tests {
    use super::super::{parse, Parities};
    use super::*;

    fn p(s: &str) -> Expr {
        parse(s, &Parities::default()).unwrap()
    }

    fn ps(s: &str, odd: &[&str]) -> Expr {
        parse(s, &Parities::with_odd(odd)).unwrap()
    }

    #[test]
    fn commutator_and_jordan() {
        assert_eq!(commutator(&p("a"), &p("b")), p("a b - b a"));
        assert_eq!(jordan(&p("a"), &p("a")), p("2*a a"));
        // odd with odd: the super-commutator is symmetric
        assert_eq!(commutator(&ps("x", &["x"]), &ps("x", &["x"])), ps("2*x x", &["x"]));
        assert_eq!(jordan(&ps("x", &["x"]), &ps("x", &["x"])), Expr::zero());
    }

    #[test]
    fn jacobian_has_twelve_terms() {
        let j = jacobian(&p("a"), &p("b"), &p("c"));
        assert_eq!(j.len(), 12);
        assert_eq!(j, p("J(a,b,c)"));
    }

    #[test]
    fn dfun_vanishes_on_repeated_slot() {
        assert!(dfun(&p("a"), &p("b"), &p("b")).is_zero());
    }

    #[test]
    fn left_normed_base_case() {
        assert_eq!(left_normed_comm(&p("a"), &[p("x")]), p("[a,x]"));
        assert_eq!(left_normed_comm(&p("a"), &[]), p("a"));
    }

    #[test]
    fn delta_worked_example() {
        // δ[(a², x, y), (a, x, y)] = 2[(a², x, y), (a, x, y)]
        let f = p("[(p,x,y),(q,x,y)]");
        let (pg, qg) = (GenSym::even("p"), GenSym::even("q"));
        let d = delta(&f, &pg, &qg, &p("a")).unwrap();
        assert_eq!(d, p("2*[(a a,x,y),(a,x,y)]"));
    }

    #[test]
    fn delta_of_symmetric_is_zero() {
        let f = p("p o q");
        let d = delta_swap(&f, &GenSym::even("p"), &GenSym::even("q")).unwrap();
        assert!(d.is_zero());
    }

    #[test]
    fn delta_swap_rejects_degree_violation() {
        let f = p("p p q");
        assert!(matches!(
            delta_swap(&f, &GenSym::even("p"), &GenSym::even("q")),
            Err(Error::DegreeViolation { .. })
        ));
    }

    #[test]
    fn delta_swap_nested_commutator() {
        let f = p("[q,[p,x]]");
        let d = delta(&f, &GenSym::even("p"), &GenSym::even("q"), &p("a")).unwrap();
        assert_eq!(d, p("[a,[a a,x]] - [a a,[a,x]]"));
    }

    #[test]
    fn delta_swap_twice_doubles() {
        let f = p("(p,x,q) + [p,q] x");
        let (pg, qg) = (GenSym::even("p"), GenSym::even("q"));
        let once = delta_swap(&f, &pg, &qg).unwrap();
        let twice = delta_swap(&once, &pg, &qg).unwrap();
        assert_eq!(twice, once.scale_int(2));
    }

    #[test]
    fn alt_op_basics() {
        let vars = [GenSym::even("x1"), GenSym::even("x2")];
        assert_eq!(alt_op(&p("x1 x2"), &vars).unwrap(), p("x1 x2 - x2 x1"));
        assert!(alt_op(&p("x1 o x2"), &vars).unwrap().is_zero());
        let vars3 = [GenSym::even("x"), GenSym::even("y"), GenSym::even("z")];
        let e = p("(x y) z + 3*x (z y)");
        let once = alt_op(&e, &vars3).unwrap();
        assert_eq!(alt_op(&once, &vars3).unwrap(), once.scale_int(6));
        assert!(alt_op(&p("x x y"), &vars3).is_err());
    }

    #[test]
    fn sym_op_basics() {
        let vars = [GenSym::even("x1"), GenSym::even("x2")];
        assert_eq!(sym_op(&p("x1 x2"), &vars).unwrap(), p("x1 x2 + x2 x1"));
    }

    #[test]
    fn partial_linearize_basics() {
        let (x, t) = (GenSym::even("x"), GenSym::even("t"));
        assert_eq!(partial_linearize(&p("x x"), &x, &t), p("t x + x t"));
        assert!(partial_linearize(&p("a b"), &x, &t).is_zero());
        let e = partial_linearize(&p("(x a) x + x x x"), &x, &t);
        for (m, _) in e.terms() {
            assert_eq!(m.degree_in(&t), 1);
        }
    }

    #[test]
    fn partial_linearize_odd_into_even_slot_is_signed() {
        // x even, t odd: the operator is odd and picks up the parity of the prefix
        let e = ps("y x", &["y"]);
        let x = GenSym::even("x");
        let t = GenSym::odd("t");
        assert_eq!(partial_linearize(&e, &x, &t), ps("-y t", &["y", "t"]));
        // x, t both odd: an even operator, no signs
        let e = ps("x x", &["x"]);
        let t = GenSym::odd("t");
        assert_eq!(partial_linearize(&e, &GenSym::odd("x"), &t), ps("t x + x t", &["x", "t"]));
    }

    #[test]
    fn multilinearize_basics() {
        let x = GenSym::even("x");
        let (x1, x2) = (GenSym::even("x1"), GenSym::even("x2"));
        assert_eq!(multilinearize(&p("x x"), &x, &[x1.clone(), x2.clone()]).unwrap(), p("x1 x2 + x2 x1"));
        assert_eq!(multilinearize(&p("x"), &x, &[x1.clone()]).unwrap(), p("x1"));
        assert_eq!(
            multilinearize(&p("(x,x,y)"), &x, &[x1.clone(), x2.clone()]).unwrap(),
            p("(x1,x2,y) + (x2,x1,y)")
        );
        assert!(multilinearize(&p("x x + y"), &x, &[x1, x2]).is_err());
    }

    #[test]
    fn superize_signs_follow_leaf_order() {
        let (x, y) = (GenSym::even("x"), GenSym::even("y"));
        let s = superize(&p("x y - y x"), &[x, y]).unwrap();
        assert_eq!(s, ps("x y + y x", &["x", "y"]));
        assert_eq!(ordinary_form(&s).unwrap(), p("x y - y x"));
    }

    #[test]
    fn desuperize_inverts_superize_up_to_factorial() {
        let x = GenSym::odd("x");
        let fresh: Vec<GenSym> = (1..=3).map(|i| GenSym::even(&format!("x{i}"))).collect();
        let sup = ps("(x x) x - x (x x)", &["x"]);
        let ord = desuperize(&sup, &x, &fresh).unwrap();
        let back = superize(&ord, &fresh).unwrap();
        let map: HashMap<GenSym, Expr> =
            fresh.iter().map(|f| (f.with_parity(Parity::Odd), Expr::gen(&x))).collect();
        assert_eq!(back.substitute(&map), sup.scale_int(6));
    }
}
