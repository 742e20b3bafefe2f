//! Line-oriented structure tables.
//!
//! ```text
//! altcenter-table 1
//! name medvedev:1
//! dim 29
//! graded true
//! unit none
//! basis x:odd v0:even ...
//! weights 0,1 1,0 ...          (optional)
//! x v0 -> 1*vp1
//! ```
//!
//! Each product line is `left right -> c*label + c*label ...` with exact
//! rational coefficients; zero products are omitted.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::terms::Parity;

use super::{StructAlgebra, Weight};

const HEADER: &str = "altcenter-table 1";

pub fn write_table(a: &StructAlgebra) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{HEADER}");
    let _ = writeln!(out, "name {}", a.name());
    let _ = writeln!(out, "dim {}", a.dim());
    let _ = writeln!(out, "graded {}", a.is_graded());
    match a.unit() {
        Some(u) => {
            let _ = writeln!(out, "unit {}", a.label(u));
        }
        None => out.push_str("unit none\n"),
    }
    let basis: Vec<String> = (0..a.dim()).map(|i| format!("{}:{}", a.label(i), a.parity(i))).collect();
    let _ = writeln!(out, "basis {}", basis.join(" "));
    if let Some(w) = a.weights() {
        let ws: Vec<String> = w.iter().map(|(p, q)| format!("{p},{q}")).collect();
        let _ = writeln!(out, "weights {}", ws.join(" "));
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let p = a.product(i, j);
            if p.is_empty() {
                continue;
            }
            let terms: Vec<String> = p.iter().map(|(k, c)| format!("{c}*{}", a.label(*k as usize))).collect();
            let _ = writeln!(out, "{} {} -> {}", a.label(i), a.label(j), terms.join(" + "));
        }
    }
    out
}

fn bad(line: usize, msg: impl Into<String>) -> Error {
    Error::Table(format!("line {}: {}", line + 1, msg.into()))
}

fn field<'a>(lines: &[&'a str], i: usize, key: &str) -> Result<&'a str> {
    let l = lines.get(i).ok_or_else(|| bad(i, format!("missing `{key}` line")))?;
    l.strip_prefix(key).and_then(|r| r.strip_prefix(' ')).ok_or_else(|| bad(i, format!("expected `{key} ...`")))
}

pub fn read_table(text: &str) -> Result<StructAlgebra> {
    let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
    if lines.first() != Some(&HEADER) {
        return Err(bad(0, format!("expected `{HEADER}`")));
    }
    let name = field(&lines, 1, "name")?;
    let dim: usize = field(&lines, 2, "dim")?.parse().map_err(|_| bad(2, "bad dimension"))?;
    let graded: bool = field(&lines, 3, "graded")?.parse().map_err(|_| bad(3, "expected true or false"))?;
    let unit = field(&lines, 4, "unit")?;
    let mut labels = Vec::with_capacity(dim);
    let mut parities = Vec::with_capacity(dim);
    for tok in field(&lines, 5, "basis")?.split_whitespace() {
        let (l, p) = tok.rsplit_once(':').ok_or_else(|| bad(5, format!("bad basis entry `{tok}`")))?;
        labels.push(l.to_string());
        parities.push(match p {
            "even" => Parity::Even,
            "odd" => Parity::Odd,
            _ => return Err(bad(5, format!("bad parity `{p}`"))),
        });
    }
    if labels.len() != dim {
        return Err(bad(5, format!("expected {dim} basis elements, found {}", labels.len())));
    }
    let mut a = StructAlgebra::new(name, labels, parities)?;
    if a.is_graded() != graded {
        return Err(bad(3, "graded flag disagrees with the basis parities"));
    }
    let lookup = |a: &StructAlgebra, i: usize, l: &str| a.index_of(l).ok_or_else(|| bad(i, format!("unknown basis element `{l}`")));
    if unit != "none" {
        let u = lookup(&a, 4, unit)?;
        a.set_unit(Some(u));
    }
    let mut next = 6;
    if let Ok(ws) = field(&lines, 6, "weights") {
        let mut weights: Vec<Weight> = Vec::with_capacity(dim);
        for tok in ws.split_whitespace() {
            let w = tok
                .split_once(',')
                .and_then(|(p, q)| Some((p.parse().ok()?, q.parse().ok()?)))
                .ok_or_else(|| bad(6, format!("bad weight `{tok}`")))?;
            weights.push(w);
        }
        a.set_weights(Some(weights)).map_err(|e| bad(6, e.to_string()))?;
        next = 7;
    }
    let mut seen = std::collections::HashSet::new();
    for (i, line) in lines.iter().enumerate().skip(next) {
        let (lhs, rhs) = line.split_once("->").ok_or_else(|| bad(i, "expected `left right -> value`"))?;
        let mut it = lhs.split_whitespace();
        let (Some(l), Some(r), None) = (it.next(), it.next(), it.next()) else {
            return Err(bad(i, "expected two basis labels before `->`"));
        };
        let (l, r) = (lookup(&a, i, l)?, lookup(&a, i, r)?);
        if !seen.insert((l, r)) {
            return Err(bad(i, "product given twice"));
        }
        let mut entries = Vec::new();
        for term in rhs.split(" + ") {
            let (c, b) = term.trim().split_once('*').ok_or_else(|| bad(i, format!("bad term `{term}`")))?;
            let c: Scalar = c.trim().parse().map_err(|_| bad(i, format!("bad coefficient `{c}`")))?;
            entries.push((lookup(&a, i, b.trim())?, c));
        }
        a.set_product(l, r, &entries);
    }
    a.validate()?;
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{grassmann, medvedev_shestakov, split_octonions};

    #[test]
    fn round_trips_are_exact() {
        for a in [split_octonions(), medvedev_shestakov(1).unwrap(), grassmann(3)] {
            let text = write_table(&a);
            let b = read_table(&text).unwrap();
            assert_eq!(a, b);
            assert_eq!(write_table(&b), text);
        }
    }

    #[test]
    fn fractions_survive() {
        let mut a = grassmann(1);
        a.set_unit(None);
        a.set_product(0, 1, &[(1, Scalar::new(-3, 7))]);
        let b = read_table(&write_table(&a)).unwrap();
        assert_eq!(b.product(0, 1), &[(1, Scalar::new(-3, 7))]);
    }

    #[test]
    fn errors_name_the_line() {
        let text = write_table(&grassmann(1)).replace("1 g1 -> 1*g1", "1 g9 -> 1*g1");
        match read_table(&text) {
            Err(Error::Table(m)) => assert!(m.contains("g9"), "{m}"),
            other => panic!("{other:?}"),
        }
        assert!(read_table("nonsense").is_err());
    }
}
