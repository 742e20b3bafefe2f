use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::terms::{Expr, GenSym};

use super::{
    delta_s, delta_t, dorofeev_shelipov, fil_super, ordinary_skew, prop6_relation, shestakov, t_double_prime, tilde_s, u_n,
    u_super, u_vars, z_n,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Form {
    Ordinary,
    Super,
}

/// What the element is claimed to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expected {
    /// zero in every alternative (super)algebra
    Identity,
    /// central in the free algebra
    Central,
    /// nonzero in the free algebra
    NonzeroWitness,
}

pub struct CatalogEntry {
    pub name: &'static str,
    pub params: Vec<(&'static str, usize)>,
    pub form: Form,
    pub expected: Expected,
    pub anchor: &'static str,
    builder: Box<dyn Fn() -> Result<Expr> + Send + Sync>,
}

impl CatalogEntry {
    fn new(
        name: &'static str,
        params: Vec<(&'static str, usize)>,
        form: Form,
        expected: Expected,
        anchor: &'static str,
        builder: impl Fn() -> Result<Expr> + Send + Sync + 'static,
    ) -> Self {
        CatalogEntry { name, params, form, expected, anchor, builder: Box::new(builder) }
    }

    pub fn build(&self) -> Result<Expr> {
        (self.builder)()
    }

    /// JSON description; builds the element to read off its multidegree.
    pub fn describe(&self) -> Result<Value> {
        let e = self.build()?;
        let mut multidegree = BTreeMap::new();
        let mut parity = BTreeMap::new();
        if let Some((m, _)) = e.terms().next() {
            for (g, d) in m.multidegree() {
                multidegree.insert(g.name().to_string(), d);
                parity.insert(g.name().to_string(), g.parity());
            }
        }
        let params: BTreeMap<_, _> = self.params.iter().cloned().collect();
        Ok(json!({
            "name": self.name,
            "params": params,
            "form": self.form,
            "expected": self.expected,
            "multidegree": multidegree,
            "parity": parity,
            "terms": e.len(),
            "anchor": self.anchor,
        }))
    }
}

fn ordinary_u(n: usize) -> CatalogEntry {
    let expected = match n % 4 {
        0 | 1 => Expected::Central,
        _ => Expected::Identity,
    };
    let anchor = match n {
        2 | 3 => "u_i=0 for i<=3",
        _ if expected == Expected::Identity => "u_n=0 for n=4k+2, 4k+3",
        _ => "u_n(x_1,...,x_n) in Z",
    };
    let name = ["u2", "u3", "u4", "u5", "u6", "u7"][n - 2];
    CatalogEntry::new(name, vec![("n", n)], Form::Ordinary, expected, anchor, move || {
        let (a, xs) = u_vars(n);
        u_n(n, &a, &xs)
    })
}

/// Every named element, in a fixed order.
pub fn central_catalog() -> Vec<CatalogEntry> {
    let a = || GenSym::even("a");
    let x = || GenSym::odd("x");
    let e = || GenSym::even("e");
    let mut out: Vec<CatalogEntry> = (2..=7).map(ordinary_u).collect();
    out.extend([
        CatalogEntry::new("u4-super", vec![("n", 4)], Form::Super, Expected::Central, "u_4(3a,4x)", move || {
            u_super(4, &a(), &x())
        }),
        CatalogEntry::new("u5-super", vec![("n", 5)], Form::Super, Expected::Central, "u_n=((a^2)_{n-1},a,x)-(a_{n-1},a^2,x)", move || {
            u_super(5, &a(), &x())
        }),
        CatalogEntry::new("dorofeev-shelipov", vec![], Form::Ordinary, Expected::Central, "[(x,y,z),t]^4 in Z", || {
            Ok(dorofeev_shelipov())
        }),
        CatalogEntry::new("shestakov", vec![], Form::Ordinary, Expected::Central, "(x,y,z)^4 in Z", || Ok(shestakov())),
        CatalogEntry::new("fil-super", vec![], Form::Super, Expected::Central, "Fil(2a,5x)", move || fil_super(&a(), &x())),
        CatalogEntry::new("fil", vec![], Form::Ordinary, Expected::Central, "Fil(a,x_1,...,x_5)", move || {
            ordinary_skew(&fil_super(&a(), &x())?, &x())
        }),
        CatalogEntry::new("z5-super", vec![("n", 5)], Form::Super, Expected::Central, "z_n=[x^{[n]},xx]", move || z_n(5, &x())),
        CatalogEntry::new("delta-s4", vec![("n", 4)], Form::Super, Expected::NonzeroWitness, "delta(S_n(e^2,e,x)) != 0", move || {
            delta_s(4, &e(), &x())
        }),
        CatalogEntry::new("delta-t5", vec![("n", 5)], Form::Super, Expected::NonzeroWitness, "delta(T_n(e^2,e,x)) != 0", move || {
            delta_t(5, &e(), &x())
        }),
        CatalogEntry::new("tilde-s4", vec![("n", 4)], Form::Super, Expected::NonzeroWitness, "2U-2V != 0 in A_6", move || {
            tilde_s(4, &e(), &GenSym::odd("z"), &GenSym::odd("t"), &x())
        }),
        CatalogEntry::new("t-double-prime5", vec![("n", 5)], Form::Super, Expected::NonzeroWitness, "-4U-2V != 0", move || {
            t_double_prime(5, &e(), &a(), &GenSym::odd("z"), &GenSym::odd("t"), &x())
        }),
        CatalogEntry::new("prop6", vec![("m", 1)], Form::Super, Expected::Identity, "2u_{4m+1}=-u_{4m}(a,a_1,x)", || prop6_relation(1)),
    ]);
    out
}

pub fn find(name: &str) -> Result<CatalogEntry> {
    central_catalog()
        .into_iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::InvalidParameter(format!("no catalog entry named `{name}`")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::Parity;

    #[test]
    fn entries_are_multihomogeneous() {
        for c in central_catalog() {
            let e = c.build().unwrap();
            assert!(!e.is_zero(), "{}", c.name);
            assert!(e.is_multihomogeneous(), "{}", c.name);
            let odd = e.generators().iter().any(|g| g.parity() == Parity::Odd);
            assert_eq!(odd, c.form == Form::Super, "{}", c.name);
        }
    }

    #[test]
    fn description_lists_multidegree() {
        let d = find("u4").unwrap().describe().unwrap();
        assert_eq!(d["multidegree"]["a"], 3);
        assert_eq!(d["multidegree"]["x4"], 1);
        assert_eq!(d["expected"], "central");
        let d = find("fil-super").unwrap().describe().unwrap();
        assert_eq!(d["parity"]["x"], "odd");
        assert!(find("nope").is_err());
    }
}
