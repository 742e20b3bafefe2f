//! The numbered identities of alternative algebras, as DSL text.

use crate::error::Result;
use crate::terms::{delta, parse, Expr, GenSym, Parities};

pub struct ListedIdentity {
    pub label: &'static str,
    /// DSL text; for δ entries, written in the slots `p` and `q`.
    pub text: &'static str,
    /// Apply `δ_a` in the slots `p`, `q`.
    pub delta: bool,
}

impl ListedIdentity {
    pub fn build(&self) -> Result<Expr> {
        let f = parse(self.text, &Parities::default())?;
        if !self.delta {
            return Ok(f);
        }
        delta(&f, &GenSym::even("p"), &GenSym::even("q"), &Expr::gen(&GenSym::even("a")))
    }

    pub fn display(&self) -> String {
        if self.delta {
            format!("δ_a[{}]", self.text)
        } else {
            self.text.to_string()
        }
    }
}

const fn plain(label: &'static str, text: &'static str) -> ListedIdentity {
    ListedIdentity { label, text, delta: false }
}

const fn with_delta(label: &'static str, text: &'static str) -> ListedIdentity {
    ListedIdentity { label, text, delta: true }
}

/// Identities (1)-(21); multi-part equalities are split into `a`, `b` parts.
pub fn listed_identities() -> Vec<ListedIdentity> {
    vec![
        plain("1a", "([a,b],b,c) - (a,b,[c,b])"),
        plain("1b", "(a,b,[c,b]) - [b,(a,b,c)]"),
        plain("2", "J(a,b,c) - 6*(a,b,c)"),
        plain("3a", "[a^2,b] - [a, a o b]"),
        plain("3b", "[a, a o b] - [a,b] o a"),
        plain("4a", "(a^2,b,c) - (a,b,c) o a"),
        plain("4b", "(a,b,c) o a - (a, b o a, c)"),
        plain("5a", "(a,b,c) o [a,b]"),
        plain("5b", "(a,b,c o [a,b])"),
        plain("6a", "([a,b]^2,b,c)"),
        plain("6b", "([[a,b]^2,b],c,d)"),
        plain("7", "2*[J(x,y,z),t] - J([x,y],z,t) - J([y,z],x,t) - J([z,x],y,t)"),
        plain("8", "J([a,b],x,y) - [J(a,x,y),b] + [J(b,x,y),a] + 2*J(a,b,[x,y])"),
        plain("9", "D(a,b,c) - 2*(a,b,c) - [a,[b,c]]"),
        plain("10", "[(a,x,y)^2, a]"),
        with_delta("11", "[p,[q,x]]"),
        with_delta("12", "[p,(q,x,y)]"),
        with_delta("13", "(p,(q,x,y),z)"),
        with_delta("14", "[(p,x,y),(q,x,y)]"),
        with_delta("15", "([p,x],q,y)"),
        with_delta("16", "[p,x] o (q,y,z)"),
        with_delta("17", "(p,x,[[q,z],y])"),
        with_delta("18a", "(p,x,([q,z],x,y))"),
        with_delta("18b", "(p,x,([q,x],z,y))"),
        with_delta("19", "(p,x,[q,z] o y)"),
        with_delta("20a", "([p,x] o z) o (q,x,y)"),
        with_delta("20b", "([p,z] o x) o (q,x,y)"),
        with_delta("21", "(b,(p,x,y),(q,x,y))"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealt::required_degree;

    #[test]
    fn degrees() {
        for id in listed_identities() {
            let e = id.build().unwrap();
            assert!(!e.is_zero(), "{}", id.label);
            let d = required_degree(&e);
            match id.label {
                "6b" | "10" | "14" | "18a" | "18b" | "20a" | "20b" => assert_eq!(d, 7, "{}", id.label),
                "21" => assert_eq!(d, 8),
                _ => assert!(d <= 6, "{}", id.label),
            }
        }
    }

    #[test]
    fn delta_entries_mention_a() {
        let e = listed_identities().into_iter().find(|i| i.label == "11").unwrap().build().unwrap();
        assert!(e.find_gen("a").is_some());
        assert!(e.find_gen("p").is_none());
    }
}
