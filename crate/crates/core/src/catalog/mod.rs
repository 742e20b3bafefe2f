//! Named elements: the iterated commutators `g_m`, the central candidates
//! `u_n`, the nonvanishing witnesses built from `S_n` and `T_n`, and the
//! known central elements of the free alternative algebra.
//!
//! Builders that involve an odd variable produce super forms; the ordinary
//! skew-symmetric counterpart is obtained with [`desuperize`].

mod entries;
mod identities;

pub use entries::{central_catalog, find, CatalogEntry, Expected, Form};
pub use identities::{listed_identities, ListedIdentity};

use crate::error::{Error, Result};
use crate::terms::{
    associator, commutator, desuperize, jordan, left_normed_comm, partial_linearize, power, Expr, GenSym, Parity,
};

fn g(s: &GenSym) -> Expr {
    Expr::gen(s)
}

fn need_parity(s: &GenSym, p: Parity, role: &str) -> Result<()> {
    if s.parity() != p {
        return Err(Error::ParityMismatch(format!("{role} `{}` must be {p}", s.name())));
    }
    Ok(())
}

/// `g_m(a) = [a, x_1, ..., x_m]`.
pub fn g_m(a: &Expr, xs: &[GenSym]) -> Expr {
    let fs: Vec<Expr> = xs.iter().map(g).collect();
    left_normed_comm(a, &fs)
}

/// `u_n(a; x_1..x_n) = ([a,x_1..x_{n-1}], a², x_n) - ([a²,x_1..x_{n-1}], a, x_n)`,
/// the δ-image of `([a,x_1..x_{n-1}], a², x_n)`.
pub fn u_n(n: usize, a: &GenSym, xs: &[GenSym]) -> Result<Expr> {
    if n < 2 || xs.len() != n {
        return Err(Error::InvalidParameter(format!("u_n needs n >= 2 and n variables, got n = {n} with {}", xs.len())));
    }
    let a = g(a);
    let a2 = &a * &a;
    let (head, last) = xs.split_at(n - 1);
    let last = g(&last[0]);
    Ok(&associator(&g_m(&a, head), &a2, &last) - &associator(&g_m(&a2, head), &a, &last))
}

/// Standard argument names for [`u_n`]: `a` and `x1..xn`.
pub fn u_vars(n: usize) -> (GenSym, Vec<GenSym>) {
    (GenSym::even("a"), (1..=n).map(|i| GenSym::even(&format!("x{i}"))).collect())
}

/// `b_i` with `b_0 = b` and `b_{i+1} = [b_i, x]_s`.
pub fn bracket_chain(b: &Expr, x: &Expr, i: usize) -> Expr {
    (0..i).fold(b.clone(), |acc, _| commutator(&acc, x))
}

/// Super form of `u_n` for even `a` and odd `x`:
/// `((a²)_{n-1}, a, x) - (a_{n-1}, a², x)`.
pub fn u_super(n: usize, a: &GenSym, x: &GenSym) -> Result<Expr> {
    need_parity(a, Parity::Even, "a")?;
    need_parity(x, Parity::Odd, "x")?;
    if n < 2 {
        return Err(Error::InvalidParameter(format!("u_n needs n >= 2, got {n}")));
    }
    let (a, x) = (g(a), g(x));
    let a2 = &a * &a;
    Ok(&associator(&bracket_chain(&a2, &x, n - 1), &a, &x) - &associator(&bracket_chain(&a, &x, n - 1), &a2, &x))
}

/// Linearization of the super form of `u_n` in `a` along an odd `y`:
/// `((a²)_{n-1},y,x) - ((a∘y)_{n-1},a,x) - (a_{n-1},a∘y,x) + (y_{n-1},a²,x)`.
pub fn u_super_linearized(n: usize, a: &Expr, y: &Expr, x: &Expr) -> Expr {
    let a2 = a * a;
    let ay = jordan(a, y);
    let c = |b: &Expr| bracket_chain(b, x, n - 1);
    let mut out = associator(&c(&a2), y, x);
    out = &out - &associator(&c(&ay), a, x);
    out = &out - &associator(&c(a), &ay, x);
    &out + &associator(&c(y), &a2, x)
}

/// `2 u_{4m+1}(a,x) + u_{4m}(a, a_1, x)` with `a_1 = [a,x]_s`, in the
/// generators `a` (even) and `x` (odd). Expected to vanish.
pub fn prop6_relation(m: usize) -> Result<Expr> {
    if m < 1 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let (a, x) = (GenSym::even("a"), GenSym::odd("x"));
    let (ae, xe) = (g(&a), g(&x));
    let a1 = commutator(&ae, &xe);
    let lin = u_super_linearized(4 * m, &ae, &a1, &xe);
    Ok(&u_super(4 * m + 1, &a, &x)?.scale_int(2) + &lin)
}

/// `(...((a,x,x),x,x)...,x,x)` with `count` copies of `x`.
fn assoc_chain(a: &Expr, x: &Expr, count: usize) -> Expr {
    (0..count / 2).fold(a.clone(), |acc, _| associator(&acc, x, x))
}

/// `S_n(a,b,x) = ([(a,x,x),...,x,x), x], x, b)` with `n-2` inner copies of `x`; `n = 4, 6, 8, ...`.
pub fn s_n(n: usize, a: &Expr, b: &Expr, x: &Expr) -> Result<Expr> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::InvalidParameter(format!("S_n needs an even n >= 4, got {n}")));
    }
    Ok(associator(&commutator(&assoc_chain(a, x, n - 2), x), x, b))
}

/// `T_n(a,b,x) = ((a,x,x),...,x,x), x, b)` with `n-1` inner copies of `x`; `n = 3, 5, 7, ...`.
pub fn t_n(n: usize, a: &Expr, b: &Expr, x: &Expr) -> Result<Expr> {
    if n < 3 || n % 2 != 1 {
        return Err(Error::InvalidParameter(format!("T_n needs an odd n >= 3, got {n}")));
    }
    Ok(associator(&assoc_chain(a, x, n - 1), x, b))
}

/// `δ(S_n(e², e, x))` for even `e` and odd `x`.
pub fn delta_s(n: usize, e: &GenSym, x: &GenSym) -> Result<Expr> {
    need_parity(e, Parity::Even, "e")?;
    need_parity(x, Parity::Odd, "x")?;
    let (e, x) = (g(e), g(x));
    let e2 = &e * &e;
    Ok(&s_n(n, &e2, &e, &x)? - &s_n(n, &e, &e2, &x)?)
}

/// `δ(T_n(e², e, x))` for even `e` and odd `x`.
pub fn delta_t(n: usize, e: &GenSym, x: &GenSym) -> Result<Expr> {
    need_parity(e, Parity::Even, "e")?;
    need_parity(x, Parity::Odd, "x")?;
    let (e, x) = (g(e), g(x));
    let e2 = &e * &e;
    Ok(&t_n(n, &e2, &e, &x)? - &t_n(n, &e, &e2, &x)?)
}

/// Linearization of `δ(S_n(e²,e,x))` in `e` along the odd pair `z, t`:
///
/// `S(zt-tz, e) + S(e∘z, t) - S(e∘t, z) - S(e, zt-tz) + S(t, e∘z) - S(z, e∘t)`,
/// writing `S(p, q)` for `S_n(p, q, x)`.
pub fn tilde_s(n: usize, e: &GenSym, z: &GenSym, t: &GenSym, x: &GenSym) -> Result<Expr> {
    need_parity(z, Parity::Odd, "z")?;
    need_parity(t, Parity::Odd, "t")?;
    need_parity(x, Parity::Odd, "x")?;
    let (e, z, t, x) = (g(e), g(z), g(t), g(x));
    let zt = &(&z * &t) - &(&t * &z);
    let s = |p: &Expr, q: &Expr| s_n(n, p, q, &x);
    let mut out = s(&zt, &e)?;
    out = &out + &s(&jordan(&e, &z), &t)?;
    out = &out - &s(&jordan(&e, &t), &z)?;
    out = &out - &s(&e, &zt)?;
    out = &out + &s(&t, &jordan(&e, &z))?;
    Ok(&out - &s(&z, &jordan(&e, &t))?)
}

/// Partial linearization of `δ(T_n(e²,e,x))` in `e` with even `a` and odd `z`:
///
/// `T(e∘a, z) - T(e∘z, a) - T(a∘z, e) + T(z, e∘a) - T(a, e∘z) - T(e, a∘z)`.
pub fn t_prime(n: usize, e: &GenSym, a: &GenSym, z: &GenSym, x: &GenSym) -> Result<Expr> {
    need_parity(a, Parity::Even, "a")?;
    need_parity(z, Parity::Odd, "z")?;
    need_parity(x, Parity::Odd, "x")?;
    let (e, a, z, x) = (g(e), g(a), g(z), g(x));
    let t = |p: &Expr, q: &Expr| t_n(n, p, q, &x);
    let mut out = t(&jordan(&e, &a), &z)?;
    out = &out - &t(&jordan(&e, &z), &a)?;
    out = &out - &t(&jordan(&a, &z), &e)?;
    out = &out + &t(&z, &jordan(&e, &a))?;
    out = &out - &t(&a, &jordan(&e, &z))?;
    Ok(&out - &t(&e, &jordan(&a, &z))?)
}

/// `T''_n(e,a,z,t,x) = t ∂/∂x T'_n(e,a,z,x)` with odd `t`.
pub fn t_double_prime(n: usize, e: &GenSym, a: &GenSym, z: &GenSym, t: &GenSym, x: &GenSym) -> Result<Expr> {
    need_parity(t, Parity::Odd, "t")?;
    Ok(partial_linearize(&t_prime(n, e, a, z, x)?, x, t))
}

/// `x^{[1]} = x`, `x^{[i+1]} = [x^{[i]}, x]_s`.
pub fn x_bracket(x: &Expr, n: usize) -> Expr {
    bracket_chain(x, x, n.saturating_sub(1))
}

/// `z_n = [x^{[n]}, xx]` for odd `x`.
pub fn z_n(n: usize, x: &GenSym) -> Result<Expr> {
    need_parity(x, Parity::Odd, "x")?;
    if n < 1 {
        return Err(Error::InvalidParameter("z_n needs n >= 1".into()));
    }
    let x = g(x);
    Ok(commutator(&x_bracket(&x, n), &(&x * &x)))
}

/// Filippov's element in super form, for even `a` and odd `x`:
/// `([x,[xx,x]]_s∘a - [x,[xx,x]∘a]_s, a, x) - ((x∘[xx,a])∘a - x∘([xx,a]∘a), x, x)`.
pub fn fil_super(a: &GenSym, x: &GenSym) -> Result<Expr> {
    need_parity(a, Parity::Even, "a")?;
    need_parity(x, Parity::Odd, "x")?;
    let (a, x) = (g(a), g(x));
    let xx = &x * &x;
    let w = commutator(&xx, &x);
    let first = &jordan(&commutator(&x, &w), &a) - &commutator(&x, &jordan(&w, &a));
    let c = commutator(&xx, &a);
    let second = &jordan(&jordan(&x, &c), &a) - &jordan(&x, &jordan(&c, &a));
    Ok(&associator(&first, &a, &x) - &associator(&second, &x, &x))
}

/// Ordinary skew-symmetric form of a super element in the odd generator
/// named `x`, with copies `x1..xk`.
pub fn ordinary_skew(e: &Expr, x: &GenSym) -> Result<Expr> {
    let k = e.terms().next().map_or(0, |(m, _)| m.degree_in(x));
    let fresh: Vec<GenSym> = (1..=k).map(|i| GenSym::even(&format!("{}{i}", x.name()))).collect();
    desuperize(e, x, &fresh)
}

/// `[(x,y,z),t]^4`.
pub fn dorofeev_shelipov() -> Expr {
    let [x, y, z, t] = ["x", "y", "z", "t"].map(|n| g(&GenSym::even(n)));
    power(&commutator(&associator(&x, &y, &z), &t), 4)
}

/// `(x,y,z)^4`.
pub fn shestakov() -> Expr {
    let [x, y, z] = ["x", "y", "z"].map(|n| g(&GenSym::even(n)));
    power(&associator(&x, &y, &z), 4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::{parse, Parities};

    fn odd(n: &str) -> GenSym {
        GenSym::odd(n)
    }

    #[test]
    fn g_m_is_left_normed() {
        let (a, xs) = u_vars(2);
        let p = |s: &str| parse(s, &Parities::default()).unwrap();
        assert_eq!(g_m(&g(&a), &[]), p("a"));
        assert_eq!(g_m(&g(&a), &xs[..1]), p("[a,x1]"));
        assert_eq!(g_m(&g(&a), &xs), p("[[a,x1],x2]"));
    }

    #[test]
    fn u_n_multidegree() {
        let (a, xs) = u_vars(4);
        let u = u_n(4, &a, &xs).unwrap();
        for (m, _) in u.terms() {
            assert_eq!(m.degree_in(&a), 3);
            assert!(xs.iter().all(|x| m.degree_in(x) == 1));
        }
        assert!(u_n(4, &a, &xs[..3]).is_err());
        assert!(u_n(1, &a, &xs[..1]).is_err());
    }

    #[test]
    fn displayed_shapes() {
        let pars = Parities::with_odd(&["x"]);
        let p = |s: &str| parse(s, &pars).unwrap();
        let (a, b, x) = (p("a"), p("b"), p("x"));
        assert_eq!(s_n(4, &a, &b, &x).unwrap(), p("([(a,x,x),x],x,b)"));
        assert_eq!(t_n(3, &a, &b, &x).unwrap(), p("((a,x,x),x,b)"));
        assert_eq!(t_n(5, &a, &b, &x).unwrap(), p("(((a,x,x),x,x),x,b)"));
        assert!(s_n(5, &a, &b, &x).is_err());
        assert!(t_n(4, &a, &b, &x).is_err());
    }

    #[test]
    fn x_bracket_two_is_twice_the_square() {
        let x = g(&odd("x"));
        assert_eq!(x_bracket(&x, 2), (&x * &x).scale_int(2));
        assert_eq!(x_bracket(&x, 1), x);
    }

    #[test]
    fn tilde_s_is_skew_in_z_t() {
        let (e, z, t, x) = (GenSym::even("e"), odd("z"), odd("t"), odd("x"));
        let f = tilde_s(4, &e, &z, &t, &x).unwrap();
        let swapped = tilde_s(4, &e, &t, &z, &x).unwrap();
        assert!((&f + &swapped).is_zero());
        assert!(tilde_s(4, &e, &GenSym::even("z"), &t, &x).is_err());
    }

    #[test]
    fn t_double_prime_is_linear_in_t() {
        let (e, a, z, t, x) = (GenSym::even("e"), GenSym::even("a"), odd("z"), odd("t"), odd("x"));
        let f = t_double_prime(5, &e, &a, &z, &t, &x).unwrap();
        assert!(!f.is_zero());
        assert!(f.terms().all(|(m, _)| m.degree_in(&t) == 1));
    }

    #[test]
    fn super_builders_check_parities() {
        let (a, x) = (GenSym::even("a"), odd("x"));
        assert!(u_super(4, &a, &GenSym::even("x")).is_err());
        assert!(fil_super(&x, &x).is_err());
        let fil = fil_super(&a, &x).unwrap();
        assert!(fil.terms().all(|(m, _)| m.degree_in(&a) == 2 && m.degree_in(&x) == 5));
        let z5 = z_n(5, &x).unwrap();
        assert!(z5.terms().all(|(m, _)| m.degree() == 7));
    }

    #[test]
    fn prop6_has_expected_multidegree() {
        let r = prop6_relation(1).unwrap();
        let (a, x) = (GenSym::even("a"), odd("x"));
        assert!(r.terms().all(|(m, _)| m.degree_in(&a) == 3 && m.degree_in(&x) == 5));
        assert!(prop6_relation(0).is_err());
    }
}
