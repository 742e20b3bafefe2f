//! The nonassociative term algebra: parity-tagged generators, binary-tree
//! monomials and finite rational combinations of them.

mod format;
mod ops;
mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use format::format;
pub use ops::*;
pub use parse::{parse, parse_with, Parities};

/// Z/2 degree of a generator or monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn from_bool(odd: bool) -> Self {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bool(self.is_odd() ^ rhs.is_odd())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_odd() { "odd" } else { "even" })
    }
}

/// A free generator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSym {
    name: Arc<str>,
    parity: Parity,
}

impl GenSym {
    pub fn new(name: &str, parity: Parity) -> Self {
        GenSym { name: Arc::from(name), parity }
    }

    pub fn even(name: &str) -> Self {
        Self::new(name, Parity::Even)
    }

    pub fn odd(name: &str) -> Self {
        Self::new(name, Parity::Odd)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn with_parity(&self, parity: Parity) -> Self {
        GenSym { name: self.name.clone(), parity }
    }
}

impl fmt::Debug for GenSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parity.is_odd() {
            write!(f, "{}'", self.name)
        } else {
            f.write_str(&self.name)
        }
    }
}

impl fmt::Display for GenSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

enum Node {
    Leaf(GenSym),
    Prod { left: Monomial, right: Monomial, degree: usize, odd: bool, hash: u64 },
}

/// A nonassociative word: a binary tree with generators at the leaves.
///
/// Subtrees are shared, so cloning is cheap.
#[derive(Clone)]
pub struct Monomial(Arc<Node>);

impl Monomial {
    pub fn leaf(g: GenSym) -> Self {
        Monomial(Arc::new(Node::Leaf(g)))
    }

    pub fn product(left: &Monomial, right: &Monomial) -> Self {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        left.hash(&mut h);
        right.hash(&mut h);
        Monomial(Arc::new(Node::Prod {
            degree: left.degree() + right.degree(),
            odd: left.parity().is_odd() ^ right.parity().is_odd(),
            hash: h.finish(),
            left: left.clone(),
            right: right.clone(),
        }))
    }

    pub fn degree(&self) -> usize {
        match &*self.0 {
            Node::Leaf(_) => 1,
            Node::Prod { degree, .. } => *degree,
        }
    }

    pub fn parity(&self) -> Parity {
        match &*self.0 {
            Node::Leaf(g) => g.parity,
            Node::Prod { odd, .. } => Parity::from_bool(*odd),
        }
    }

    pub fn as_leaf(&self) -> Option<&GenSym> {
        match &*self.0 {
            Node::Leaf(g) => Some(g),
            Node::Prod { .. } => None,
        }
    }

    pub fn split(&self) -> Option<(&Monomial, &Monomial)> {
        match &*self.0 {
            Node::Leaf(_) => None,
            Node::Prod { left, right, .. } => Some((left, right)),
        }
    }

    /// Leaves in left-to-right order.
    pub fn leaves(&self) -> Vec<GenSym> {
        let mut out = Vec::with_capacity(self.degree());
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<GenSym>) {
        match &*self.0 {
            Node::Leaf(g) => out.push(g.clone()),
            Node::Prod { left, right, .. } => {
                left.collect_leaves(out);
                right.collect_leaves(out);
            }
        }
    }

    pub fn multidegree(&self) -> BTreeMap<GenSym, usize> {
        let mut m = BTreeMap::new();
        for g in self.leaves() {
            *m.entry(g).or_insert(0) += 1;
        }
        m
    }

    pub fn degree_in(&self, g: &GenSym) -> usize {
        match &*self.0 {
            Node::Leaf(h) => usize::from(h == g),
            Node::Prod { left, right, .. } => left.degree_in(g) + right.degree_in(g),
        }
    }

    /// Rebuild the tree with leaves replaced by the corresponding entries of
    /// `leaves` (consumed left to right).
    pub fn relabel(&self, leaves: &[GenSym]) -> Monomial {
        let mut it = leaves.iter();
        let m = self.relabel_iter(&mut it);
        debug_assert!(it.next().is_none());
        m
    }

    fn relabel_iter<'a>(&self, it: &mut impl Iterator<Item = &'a GenSym>) -> Monomial {
        match &*self.0 {
            Node::Leaf(_) => Monomial::leaf(it.next().expect("leaf count").clone()),
            Node::Prod { left, right, .. } => {
                let l = left.relabel_iter(it);
                let r = right.relabel_iter(it);
                Monomial::product(&l, &r)
            }
        }
    }

    /// Apply a generator renaming to every leaf.
    pub fn rename(&self, map: &HashMap<GenSym, GenSym>) -> Monomial {
        match &*self.0 {
            Node::Leaf(g) => match map.get(g) {
                Some(h) => Monomial::leaf(h.clone()),
                None => self.clone(),
            },
            Node::Prod { left, right, .. } => Monomial::product(&left.rename(map), &right.rename(map)),
        }
    }

    pub fn left_normed(gens: &[GenSym]) -> Monomial {
        let mut it = gens.iter();
        let mut m = Monomial::leaf(it.next().expect("empty word").clone());
        for g in it {
            m = Monomial::product(&m, &Monomial::leaf(g.clone()));
        }
        m
    }
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (Node::Leaf(a), Node::Leaf(b)) => a == b,
            (
                Node::Prod { left: l1, right: r1, hash: h1, degree: d1, .. },
                Node::Prod { left: l2, right: r2, hash: h2, degree: d2, .. },
            ) => h1 == h2 && d1 == d2 && l1 == l2 && r1 == r2,
            _ => false,
        }
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &*self.0 {
            Node::Leaf(g) => g.hash(state),
            Node::Prod { hash, .. } => hash.hash(state),
        }
    }
}

impl Ord for Monomial {
    /// Leaves by name; trees by (degree, left degree, left, right).
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        match (&*self.0, &*other.0) {
            (Node::Leaf(a), Node::Leaf(b)) => a.cmp(b),
            (Node::Leaf(_), Node::Prod { .. }) => Ordering::Less,
            (Node::Prod { .. }, Node::Leaf(_)) => Ordering::Greater,
            (
                Node::Prod { left: l1, right: r1, degree: d1, .. },
                Node::Prod { left: l2, right: r2, degree: d2, .. },
            ) => d1
                .cmp(d2)
                .then_with(|| l1.degree().cmp(&l2.degree()))
                .then_with(|| l1.cmp(l2))
                .then_with(|| r1.cmp(r2)),
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format::format_monomial(self))
    }
}

/// A finite rational combination of monomials; zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Expr {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Expr {
    pub fn zero() -> Self {
        Expr::default()
    }

    pub fn gen(g: &GenSym) -> Self {
        Self::monomial(Monomial::leaf(g.clone()), Scalar::one())
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut e = Expr::zero();
        e.add_term(m, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Expr, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, k) in &other.terms {
            self.add_term(m.clone(), k * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Expr {
        if c.is_zero() {
            return Expr::zero();
        }
        Expr { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn scale_int(&self, c: i64) -> Expr {
        self.scale(&Scalar::from_int(c))
    }

    /// The bilinear tree-grafting product.
    pub fn mul(&self, other: &Expr) -> Expr {
        let mut out = Expr::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(Monomial::product(m1, m2), c1 * c2);
            }
        }
        out
    }

    /// Every generator that occurs, sorted.
    pub fn generators(&self) -> BTreeSet<GenSym> {
        let mut s = BTreeSet::new();
        for m in self.terms.keys() {
            s.extend(m.leaves());
        }
        s
    }

    /// Maximum total degree, 0 for the zero element.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Split into multihomogeneous components keyed by multidegree.
    pub fn homogeneous_components(&self) -> BTreeMap<Vec<(GenSym, usize)>, Expr> {
        let mut out: BTreeMap<Vec<(GenSym, usize)>, Expr> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<_> = m.multidegree().into_iter().collect();
            out.entry(key).or_default().add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn is_multihomogeneous(&self) -> bool {
        self.homogeneous_components().len() <= 1
    }

    /// Split by Z/2 degree.
    pub fn parity_components(&self) -> (Expr, Expr) {
        let (mut even, mut odd) = (Expr::zero(), Expr::zero());
        for (m, c) in &self.terms {
            if m.parity().is_odd() {
                odd.add_term(m.clone(), c.clone());
            } else {
                even.add_term(m.clone(), c.clone());
            }
        }
        (even, odd)
    }

    /// The common parity of all monomials, if there is one.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(Monomial::parity);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// Apply a renaming of generators.
    pub fn rename(&self, map: &HashMap<GenSym, GenSym>) -> Expr {
        let mut out = Expr::zero();
        for (m, c) in &self.terms {
            out.add_term(m.rename(map), c.clone());
        }
        out
    }

    /// Substitute expressions for generators (unmapped generators stay).
    pub fn substitute(&self, map: &HashMap<GenSym, Expr>) -> Expr {
        let mut cache: HashMap<Monomial, Expr> = HashMap::new();
        let mut out = Expr::zero();
        for (m, c) in &self.terms {
            let img = subst_monomial(m, map, &mut cache);
            out.add_scaled(&img, c);
        }
        out
    }

    /// Look up the generator named `name`.
    pub fn find_gen(&self, name: &str) -> Option<GenSym> {
        self.generators().into_iter().find(|g| g.name() == name)
    }

    /// Check the parity bookkeeping: each generator name occurs with one parity only.
    pub fn check_parities(&self) -> Result<()> {
        let mut seen: HashMap<String, Parity> = HashMap::new();
        for g in self.generators() {
            if let Some(p) = seen.insert(g.name().to_string(), g.parity()) {
                if p != g.parity() {
                    return Err(Error::ParityConflict(g.name().to_string()));
                }
            }
        }
        Ok(())
    }
}

fn subst_monomial(m: &Monomial, map: &HashMap<GenSym, Expr>, cache: &mut HashMap<Monomial, Expr>) -> Expr {
    if let Some(e) = cache.get(m) {
        return e.clone();
    }
    let e = match m.split() {
        None => {
            let g = m.as_leaf().unwrap();
            map.get(g).cloned().unwrap_or_else(|| Expr::gen(g))
        }
        Some((l, r)) => subst_monomial(l, map, cache).mul(&subst_monomial(r, map, cache)),
    };
    cache.insert(m.clone(), e.clone());
    e
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format(self))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format(self))
    }
}

impl Add<&Expr> for &Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl Sub<&Expr> for &Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::from_int(-1));
        out
    }
}

impl Mul<&Expr> for &Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        Expr::mul(self, rhs)
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        self.scale_int(-1)
    }
}

macro_rules! forward_expr {
    ($tr:ident, $m:ident) => {
        impl $tr<Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                (&self).$m(rhs)
            }
        }
        impl $tr<Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                self.$m(&rhs)
            }
        }
    };
}

forward_expr!(Add, add);
forward_expr!(Sub, sub);
forward_expr!(Mul, mul);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: &str) -> Expr {
        Expr::gen(&GenSym::even(n))
    }

    #[test]
    fn bilinear_product() {
        let (a, b, c) = (g("a"), g("b"), g("c"));
        assert_eq!((&a + &b) * &c, &(&a * &c) + &(&b * &c));
        assert!((&a * &Expr::zero()).is_zero());
        assert_eq!((&a * &b).len(), 1);
    }

    #[test]
    fn canonical_order_is_by_degree_then_split() {
        let (a, b, c) = (GenSym::even("a"), GenSym::even("b"), GenSym::even("c"));
        let la = Monomial::leaf(a.clone());
        let lb = Monomial::leaf(b.clone());
        let lc = Monomial::leaf(c.clone());
        let right = Monomial::product(&la, &Monomial::product(&lb, &lc));
        let left = Monomial::product(&Monomial::product(&la, &lb), &lc);
        assert!(la < lb);
        assert!(lb < Monomial::product(&la, &la));
        assert!(right < left);
    }

    #[test]
    fn parity_of_products_adds() {
        let x = Monomial::leaf(GenSym::odd("x"));
        let a = Monomial::leaf(GenSym::even("a"));
        assert_eq!(Monomial::product(&x, &a).parity(), Parity::Odd);
        assert_eq!(Monomial::product(&x, &x).parity(), Parity::Even);
    }

    #[test]
    fn multidegree_counts_leaves() {
        let e = parse("(a a) b", &Parities::default()).unwrap();
        let (m, _) = e.terms().next().unwrap();
        let md = m.multidegree();
        assert_eq!(md[&GenSym::even("a")], 2);
        assert_eq!(md.values().sum::<usize>(), m.degree());
    }

    #[test]
    fn substitution_is_a_homomorphism() {
        let e = parse("(a,b,a)", &Parities::default()).unwrap();
        let mut map = HashMap::new();
        map.insert(GenSym::even("a"), parse("a a", &Parities::default()).unwrap());
        let s = e.substitute(&map);
        assert_eq!(s, parse("(a a, b, a a)", &Parities::default()).unwrap());
    }
}
