//! Indexing of the multilinear component of the free nonassociative algebra.
//!
//! A labelled monomial is stored as a preorder token string: [`NODE`] for an
//! internal node, otherwise the position of a variable. Index =
//! `shape_rank * d! + perm_rank`, shapes ranked by (left size, left shape,
//! right shape) and leaf sequences ranked lexicographically.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::terms::{Expr, GenSym, Monomial};

use super::sparse::SparseVec;

pub const NODE: u8 = u8::MAX;

/// Largest supported degree; indices must fit a `u32`.
pub const MAX_DEGREE: usize = 9;

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[derive(Debug, Clone)]
struct Shapes {
    /// `count[n]` = number of shapes with `n` leaves (Catalan(n-1)).
    count: Vec<usize>,
    /// `offset[n][k]` = number of `n`-leaf shapes whose left subtree has fewer than `k` leaves.
    offset: Vec<Vec<usize>>,
}

impl Shapes {
    fn new(d: usize) -> Self {
        let mut count = vec![0usize; d + 1];
        let mut offset = vec![Vec::new(); d + 1];
        if d >= 1 {
            count[1] = 1;
        }
        for n in 2..=d {
            let mut acc = 0;
            let mut off = vec![0; n];
            for k in 1..n {
                off[k] = acc;
                acc += count[k] * count[n - k];
            }
            count[n] = acc;
            offset[n] = off;
        }
        Shapes { count, offset }
    }

    /// Returns (shape rank, leaf count, end position).
    fn rank(&self, toks: &[u8], pos: usize) -> (usize, usize, usize) {
        if toks[pos] != NODE {
            return (0, 1, pos + 1);
        }
        let (lr, ln, lend) = self.rank(toks, pos + 1);
        let (rr, rn, rend) = self.rank(toks, lend);
        let n = ln + rn;
        (self.offset[n][ln] + lr * self.count[rn] + rr, n, rend)
    }

    fn unrank(&self, n: usize, mut r: usize, out: &mut Vec<u8>) {
        if n == 1 {
            out.push(0);
            return;
        }
        let k = (1..n).rev().find(|&k| self.offset[n][k] <= r).unwrap();
        r -= self.offset[n][k];
        let rc = self.count[n - k];
        out.push(NODE);
        self.unrank(k, r / rc, out);
        self.unrank(n - k, r % rc, out);
    }
}

/// End (exclusive) of the subtree starting at `pos`.
pub fn subtree_end(toks: &[u8], pos: usize) -> usize {
    let mut need = 1usize;
    let mut i = pos;
    while need > 0 {
        if toks[i] == NODE {
            need += 1;
        } else {
            need -= 1;
        }
        i += 1;
    }
    i
}

/// Basis of the degree-`d` multilinear component in the given variables.
#[derive(Debug, Clone)]
pub struct MultilinearBasis {
    vars: Vec<GenSym>,
    var_pos: HashMap<GenSym, u8>,
    shapes: Shapes,
    fact: Vec<usize>,
}

/// Builds the basis on `vars`; `d` must equal `vars.len()`.
pub fn multilinear_basis(d: usize, vars: &[GenSym]) -> Result<MultilinearBasis> {
    if d != vars.len() || d == 0 {
        return Err(Error::DimensionMismatch { expected: d, found: vars.len() });
    }
    if d > MAX_DEGREE {
        return Err(Error::DegreeCap { required: d, cap: MAX_DEGREE });
    }
    let var_pos: HashMap<GenSym, u8> = vars.iter().enumerate().map(|(i, v)| (v.clone(), i as u8)).collect();
    if var_pos.len() != d {
        return Err(Error::NotMultilinear("repeated basis variable".into()));
    }
    Ok(MultilinearBasis {
        vars: vars.to_vec(),
        var_pos,
        shapes: Shapes::new(d),
        fact: (0..=d).map(factorial).collect(),
    })
}

/// Standard variables `x1, ..., xd`.
pub fn standard_vars(d: usize) -> Vec<GenSym> {
    (1..=d).map(|i| GenSym::even(&format!("x{i}"))).collect()
}

impl MultilinearBasis {
    pub fn standard(d: usize) -> Result<Self> {
        multilinear_basis(d, &standard_vars(d))
    }

    pub fn degree(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[GenSym] {
        &self.vars
    }

    pub fn num_shapes(&self) -> usize {
        self.shapes.count[self.degree()]
    }

    pub fn len(&self) -> usize {
        self.num_shapes() * self.fact[self.degree()]
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn perm_rank(&self, leaves: &[u8]) -> usize {
        let d = leaves.len();
        let mut r = 0;
        for i in 0..d {
            let smaller = leaves[i + 1..].iter().filter(|&&l| l < leaves[i]).count();
            r += smaller * self.fact[d - 1 - i];
        }
        r
    }

    /// Index of a token string; tokens must be a complete multilinear monomial.
    pub fn index_of(&self, toks: &[u8]) -> usize {
        let (sr, _, _) = self.shapes.rank(toks, 0);
        let mut leaves = [0u8; MAX_DEGREE];
        let mut n = 0;
        for &t in toks {
            if t != NODE {
                leaves[n] = t;
                n += 1;
            }
        }
        sr * self.fact[n] + self.perm_rank(&leaves[..n])
    }

    /// Token string of basis element `i`.
    pub fn tokens(&self, i: usize) -> Vec<u8> {
        let d = self.degree();
        let (sr, pr) = (i / self.fact[d], i % self.fact[d]);
        let mut toks = Vec::with_capacity(2 * d - 1);
        self.shapes.unrank(d, sr, &mut toks);
        let mut avail: Vec<u8> = (0..d as u8).collect();
        let mut r = pr;
        for t in toks.iter_mut().filter(|t| **t != NODE) {
            let f = self.fact[avail.len() - 1];
            *t = avail.remove(r / f);
            r %= f;
        }
        toks
    }

    fn tokens_of_monomial(&self, m: &Monomial, out: &mut Vec<u8>) -> Result<()> {
        match m.split() {
            None => {
                let g = m.as_leaf().unwrap();
                let p = self.var_pos.get(g).ok_or_else(|| Error::NotMultilinear(format!("unexpected generator `{}`", g.name())))?;
                out.push(*p);
            }
            Some((l, r)) => {
                out.push(NODE);
                self.tokens_of_monomial(l, out)?;
                self.tokens_of_monomial(r, out)?;
            }
        }
        Ok(())
    }

    /// Index of a monomial, or an error if it is not multilinear in the basis variables.
    pub fn index(&self, m: &Monomial) -> Result<usize> {
        if m.degree() != self.degree() {
            return Err(Error::NotMultilinear(format!("monomial of degree {} in a degree-{} basis", m.degree(), self.degree())));
        }
        let mut toks = Vec::with_capacity(2 * self.degree());
        self.tokens_of_monomial(m, &mut toks)?;
        let mut seen = 0u32;
        for &t in &toks {
            if t != NODE {
                if seen & (1 << t) != 0 {
                    return Err(Error::NotMultilinear(format!("repeated generator `{}`", self.vars[t as usize].name())));
                }
                seen |= 1 << t;
            }
        }
        Ok(self.index_of(&toks))
    }

    fn build(&self, toks: &[u8], pos: usize) -> (Monomial, usize) {
        if toks[pos] != NODE {
            return (Monomial::leaf(self.vars[toks[pos] as usize].clone()), pos + 1);
        }
        let (l, e) = self.build(toks, pos + 1);
        let (r, e) = self.build(toks, e);
        (Monomial::product(&l, &r), e)
    }

    pub fn monomial(&self, i: usize) -> Monomial {
        self.build(&self.tokens(i), 0).0
    }

    pub fn to_vector(&self, e: &Expr) -> Result<SparseVec> {
        let mut entries = Vec::with_capacity(e.len());
        for (m, c) in e.terms() {
            entries.push((self.index(m)? as u32, c.clone()));
        }
        Ok(SparseVec::from_entries(entries))
    }

    pub fn from_vector(&self, v: &SparseVec) -> Expr {
        let mut e = Expr::zero();
        for (i, c) in v.iter() {
            e.add_term(self.monomial(*i as usize), c.clone());
        }
        e
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::{parse, Parities};

    #[test]
    fn sizes() {
        assert_eq!(MultilinearBasis::standard(1).unwrap().len(), 1);
        assert_eq!(MultilinearBasis::standard(3).unwrap().len(), 12);
        assert_eq!(MultilinearBasis::standard(6).unwrap().len(), 30240);
        assert_eq!(MultilinearBasis::standard(7).unwrap().len(), 665280);
    }

    #[test]
    fn index_round_trip() {
        for d in 1..=5 {
            let b = MultilinearBasis::standard(d).unwrap();
            for i in 0..b.len() {
                assert_eq!(b.index_of(&b.tokens(i)), i);
                assert_eq!(b.index(&b.monomial(i)).unwrap(), i);
            }
        }
    }

    #[test]
    fn right_normed_shape_comes_first() {
        let b = MultilinearBasis::standard(3).unwrap();
        let e = parse("x1 (x2 x3)", &Parities::default()).unwrap();
        assert_eq!(b.to_vector(&e).unwrap().iter().next().unwrap().0, 0);
    }

    #[test]
    fn to_vector_examples() {
        let b = MultilinearBasis::standard(3).unwrap();
        let v = b.to_vector(&parse("(x1,x2,x3)", &Parities::default()).unwrap()).unwrap();
        assert_eq!(v.len(), 2);
        assert!(b.to_vector(&Expr::zero()).unwrap().is_empty());
        let b2 = MultilinearBasis::standard(2).unwrap();
        let v = b2.to_vector(&parse("x1 x2 - x2 x1", &Parities::default()).unwrap()).unwrap();
        assert_eq!(v.len(), 2);
        assert!(b2.to_vector(&parse("x1 x1", &Parities::default()).unwrap()).is_err());
        assert!(b.to_vector(&parse("x1 x2", &Parities::default()).unwrap()).is_err());
    }

    #[test]
    fn vector_round_trip() {
        let b = MultilinearBasis::standard(4).unwrap();
        let e = parse("J(x1 x4, x2, x3) - 3*(x4, x1, x3 x2)", &Parities::default()).unwrap();
        assert_eq!(b.from_vector(&b.to_vector(&e).unwrap()), e);
    }
}
