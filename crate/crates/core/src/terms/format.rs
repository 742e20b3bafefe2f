//! Canonical printer. Products are written with `*` and left-normed
//! bracketing is implicit, so `format` output always reparses to the same
//! `Expr`.

use std::fmt::Write;

use super::{Expr, Monomial};

pub fn format_monomial(m: &Monomial) -> String {
    let mut s = String::new();
    write_monomial(m, &mut s);
    s
}

fn write_monomial(m: &Monomial, out: &mut String) {
    match m.split() {
        None => out.push_str(m.as_leaf().unwrap().name()),
        Some((l, r)) => {
            write_monomial(l, out);
            out.push('*');
            if r.split().is_some() {
                out.push('(');
                write_monomial(r, out);
                out.push(')');
            } else {
                write_monomial(r, out);
            }
        }
    }
}

/// Terms appear in canonical monomial order.
pub fn format(e: &Expr) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in e.terms().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if !abs.is_one() {
            let _ = write!(out, "{abs}*");
        }
        write_monomial(m, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::{parse, Parities};

    fn p(s: &str) -> Expr {
        parse(s, &Parities::default()).unwrap()
    }

    #[test]
    fn commutator_prints_canonically() {
        assert_eq!(format(&p("[a,b]")), "a*b - b*a");
        assert_eq!(format(&Expr::zero()), "0");
    }

    #[test]
    fn right_factors_are_parenthesized() {
        let e = p("2*(a,b,c)");
        assert_eq!(format(&e), "-2*a*(b*c) + 2*a*b*c");
        assert_eq!(p(&format(&e)), e);
    }

    #[test]
    fn fractional_coefficients() {
        let e = p("-1/3 a (b c) + 5/2 (a b) c");
        assert_eq!(p(&format(&e)), e);
    }
}
