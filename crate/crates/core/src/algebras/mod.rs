//! Finite-dimensional (super)algebras given by structure constants, and
//! evaluation of terms in them.

mod eval;
mod families;
mod superform;
mod table;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freealt::{RowEchelonBasis, SparseVec};
use crate::scalar::Scalar;
use crate::terms::Parity;

pub use eval::{evaluate, random_assignment, Assignment, Program};
pub use families::{
    families, grassmann, medvedev_shestakov, select, split_octonions, tensor, AlgebraFamily,
};
pub use superform::{Envelope, SuperForms};
pub use table::{read_table, write_table};

/// Bidegree used to prune exhaustive enumerations: products add weights.
pub type Weight = (u32, u32);

/// A vector in the basis of some [`StructAlgebra`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Element(Vec<Scalar>);

impl Element {
    pub fn zero(dim: usize) -> Self {
        Element(vec![Scalar::zero(); dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Self::zero(dim);
        e.0[i] = Scalar::one();
        e
    }

    pub fn from_coords(coords: Vec<Scalar>) -> Self {
        Element(coords)
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.0.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            a.add_mul(c, b);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element(self.0.iter().map(|a| a * c).collect())
    }

    fn to_sparse(&self) -> SparseVec {
        SparseVec::from_entries(self.support().map(|(i, c)| (i as u32, c.clone())).collect())
    }
}

impl std::ops::Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl std::ops::Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::from_int(-1));
        out
    }
}

/// A finite-dimensional algebra over the rationals, possibly Z/2-graded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructAlgebra {
    name: String,
    labels: Vec<String>,
    parities: Vec<Parity>,
    unit: Option<usize>,
    weights: Option<Vec<Weight>>,
    /// Row-major `dim × dim` table of sparse products.
    table: Vec<Vec<(u32, Scalar)>>,
}

impl StructAlgebra {
    /// An algebra with the given basis and an all-zero product.
    pub fn new(name: &str, labels: Vec<String>, parities: Vec<Parity>) -> Result<Self> {
        if labels.len() != parities.len() {
            return Err(Error::DimensionMismatch { expected: labels.len(), found: parities.len() });
        }
        let n = labels.len();
        Ok(StructAlgebra {
            name: name.to_string(),
            labels,
            parities,
            unit: None,
            weights: None,
            table: vec![Vec::new(); n * n],
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn is_graded(&self) -> bool {
        self.parities.iter().any(|p| p.is_odd())
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    pub fn weights(&self) -> Option<&[Weight]> {
        self.weights.as_deref()
    }

    pub fn set_unit(&mut self, unit: Option<usize>) {
        self.unit = unit;
    }

    pub fn set_weights(&mut self, weights: Option<Vec<Weight>>) -> Result<()> {
        if let Some(w) = &weights {
            if w.len() != self.dim() {
                return Err(Error::DimensionMismatch { expected: self.dim(), found: w.len() });
            }
        }
        self.weights = weights;
        Ok(())
    }

    /// Sets `b_i · b_j`, replacing any previous value.
    pub fn set_product(&mut self, i: usize, j: usize, value: &[(usize, Scalar)]) {
        let sv = SparseVec::from_entries(value.iter().map(|(k, c)| (*k as u32, c.clone())).collect());
        let n = self.dim();
        self.table[i * n + j] = sv.iter().cloned().collect();
    }

    /// `b_i · b_j` as sorted `(index, coefficient)` pairs.
    pub fn product(&self, i: usize, j: usize) -> &[(u32, Scalar)] {
        &self.table[i * self.dim() + j]
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element::basis(self.dim(), i)
    }

    pub fn element(&self, entries: &[(&str, i64)]) -> Result<Element> {
        let mut e = Element::zero(self.dim());
        for (l, c) in entries {
            let i = self.index_of(l).ok_or_else(|| Error::Table(format!("no basis element `{l}`")))?;
            e.0[i] += &Scalar::from_int(*c);
        }
        Ok(e)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for (i, x) in a.support() {
            let row = &self.table[i * n..(i + 1) * n];
            for (j, y) in b.support() {
                if row[j].is_empty() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in &row[j] {
                    out[*k as usize].add_mul(&xy, c);
                }
            }
        }
        Element(out)
    }

    pub fn associator(&self, a: &Element, b: &Element, c: &Element) -> Element {
        &self.mul(&self.mul(a, b), c) - &self.mul(a, &self.mul(b, c))
    }

    /// Whether `e` lies in the component of parity `p`.
    pub fn has_parity(&self, e: &Element, p: Parity) -> bool {
        e.support().all(|(i, _)| self.parities[i] == p)
    }

    /// Checks that the product is parity-additive and, when weights are
    /// present, weight-additive.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for (k, _) in self.product(i, j) {
                    let k = *k as usize;
                    if self.parities[i] + self.parities[j] != self.parities[k] {
                        return Err(Error::Table(format!(
                            "{}·{} has a component on {} of the wrong parity",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                    if let Some(w) = &self.weights {
                        if (w[i].0 + w[j].0, w[i].1 + w[j].1) != w[k] {
                            return Err(Error::Table(format!(
                                "{}·{} has a component on {} of the wrong weight",
                                self.labels[i], self.labels[j], self.labels[k]
                            )));
                        }
                    }
                }
            }
        }
        if let Some(u) = self.unit {
            for i in 0..n {
                let b = self.basis_element(i);
                let u = self.basis_element(u);
                if self.mul(&u, &b) != b || self.mul(&b, &u) != b {
                    return Err(Error::Table(format!("unit does not act trivially on {}", self.labels[i])));
                }
            }
        }
        Ok(())
    }

    /// The first basis triple violating the super-linearized alternative
    /// laws, if any.
    pub fn super_alternative_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let basis: Vec<Element> = (0..n).map(|i| self.basis_element(i)).collect();
        let prods: Vec<Vec<Element>> =
            (0..n).map(|i| (0..n).map(|j| self.mul(&basis[i], &basis[j])).collect()).collect();
        let assoc = |i: usize, j: usize, k: usize| {
            &self.mul(&prods[i][j], &basis[k]) - &self.mul(&basis[i], &prods[j][k])
        };
        let sign = |a: usize, b: usize| Scalar::sign(self.parities[a].is_odd() && self.parities[b].is_odd());
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let a = assoc(i, j, k);
                    let mut left = a.clone();
                    left.add_scaled(&assoc(j, i, k), &sign(i, j));
                    let mut right = a;
                    right.add_scaled(&assoc(i, k, j), &sign(j, k));
                    if !left.is_zero() || !right.is_zero() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Whether the associator is super-skew in adjacent arguments on all
    /// basis triples.
    pub fn check_super_alternative(&self) -> bool {
        self.super_alternative_violation().is_none()
    }

    /// Whether `e` is a multiple of the unit.
    pub fn is_scalar(&self, e: &Element) -> Result<bool> {
        let u = self.unit.ok_or(Error::NoUnit)?;
        Ok(e.support().all(|(i, _)| i == u))
    }

    /// Whether the unit (if any) and the given elements generate the whole algebra.
    pub fn generates_whole(&self, gens: &[Element]) -> bool {
        let n = self.dim();
        let mut span = RowEchelonBasis::new(n);
        let mut members: Vec<Element> = Vec::new();
        let add = |e: Element, span: &mut RowEchelonBasis, members: &mut Vec<Element>| {
            if span.insert(&e.to_sparse()).unwrap_or(false) {
                members.push(e);
            }
        };
        if let Some(u) = self.unit {
            add(self.basis_element(u), &mut span, &mut members);
        }
        for g in gens {
            add(g.clone(), &mut span, &mut members);
        }
        let mut done = 0;
        while done < members.len() && span.rank() < n {
            let m = members[done].clone();
            for k in 0..=done {
                let other = members[k].clone();
                add(self.mul(&m, &other), &mut span, &mut members);
                add(self.mul(&other, &m), &mut span, &mut members);
            }
            done += 1;
        }
        span.rank() == n
    }

    /// `e` written in basis labels, e.g. `2*U - 2*V`.
    pub fn format(&self, e: &Element) -> String {
        let mut out = String::new();
        for (i, c) in e.support() {
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !a.is_one() {
                out.push_str(&format!("{a}*"));
            }
            out.push_str(&self.labels[i]);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Inverse of [`format`](Self::format): a sum of `c*label` terms, e.g.
    /// `2*U - V` or `1/2*e + v1`; `0` is the zero element.
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let mut out = Element::zero(self.dim());
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "0" {
            return Ok(out);
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in s.char_indices() {
            if (ch == '+' || ch == '-') && i > start {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        for t in terms {
            let (neg, body) = match t.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, t.strip_prefix('+').unwrap_or(t)),
            };
            let (c, label) = match body.rsplit_once('*') {
                Some((c, l)) => {
                    (c.parse::<Scalar>().map_err(|_| Error::InvalidParameter(format!("bad coefficient `{c}`")))?, l)
                }
                None => (Scalar::one(), body),
            };
            let i = self
                .index_of(label)
                .ok_or_else(|| Error::InvalidParameter(format!("{} has no basis element `{label}`", self.name)))?;
            out.add_scaled(&self.basis_element(i), &(&c * &Scalar::sign(neg)));
        }
        Ok(out)
    }

    /// Every assignment of basis elements to slots such that the weighted
    /// total is the weight of some basis element. Slot `s` has multiplicity
    /// `mult` and, if given, a required parity. Without weights every tuple
    /// is produced.
    pub fn graded_tuples(&self, slots: &[(u32, Option<Parity>)]) -> Vec<Vec<usize>> {
        let n = self.dim();
        let candidates: Vec<Vec<usize>> = slots
            .iter()
            .map(|(_, p)| (0..n).filter(|&i| p.map_or(true, |p| self.parities[i] == p)).collect())
            .collect();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(slots.len());
        match &self.weights {
            None => product_rec(&candidates, &mut cur, &mut out, &mut |_, _| true),
            Some(w) => {
                let max = w.iter().fold((0, 0), |m, x| (m.0.max(x.0), m.1.max(x.1)));
                let attained: std::collections::HashSet<Weight> = w.iter().copied().collect();
                let total = |tuple: &[usize]| {
                    tuple.iter().zip(slots).fold((0u32, 0u32), |t, (&i, (m, _))| (t.0 + m * w[i].0, t.1 + m * w[i].1))
                };
                product_rec(&candidates, &mut cur, &mut out, &mut |tuple, complete| {
                    let t = total(tuple);
                    if complete {
                        attained.contains(&t)
                    } else {
                        t.0 <= max.0 && t.1 <= max.1
                    }
                });
            }
        }
        out
    }
}

fn product_rec(
    candidates: &[Vec<usize>],
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    keep: &mut dyn FnMut(&[usize], bool) -> bool,
) {
    let depth = cur.len();
    if depth == candidates.len() {
        if keep(cur, true) {
            out.push(cur.clone());
        }
        return;
    }
    for &i in &candidates[depth] {
        cur.push(i);
        if keep(cur, false) {
            product_rec(candidates, cur, out, keep);
        }
        cur.pop();
    }
}

impl fmt::Display for StructAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.name, self.dim())
    }
}
