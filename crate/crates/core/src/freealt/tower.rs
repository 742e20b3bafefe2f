//! Degree-by-degree normal forms in the free alternative algebra.
//!
//! Write `Alt(S)` for the multilinear component on a set `S` of variables.
//! Every product of elements of `I`, the T-ideal of the alternative laws,
//! whose root is not the hole of a law lies in `I(S)·F(T) + F(S)·I(T)`, so
//!
//! ```text
//! Alt([k]) = ⊕_{S ⊔ T = [k]} Alt(S) ⊗ Alt(T)  /  span{ A(u,v,w) }
//! ```
//!
//! where `A` runs over the two linearized laws and `u, v, w` over bases of
//! lower levels. Level `k` stores a basis of this quotient (a subset of the
//! ambient columns) and the normal form of every ambient column. `Alt(S)` for
//! `|S| = k` is identified with `Alt([k])` by the order-preserving relabelling.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::terms::{Expr, GenSym, Monomial};

use super::sparse::{reduce_basis, RowEchelonBasis, SparseVec};

const NONE: u32 = u32::MAX;

/// An element of `Alt(mask)` in the basis of level `popcount(mask)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elem {
    pub mask: u32,
    pub coords: SparseVec,
}

/// Positions of the set bits of `mask`, ascending.
fn bits(mask: u32) -> Vec<u8> {
    (0..32u8).filter(|b| mask & (1 << b) != 0).collect()
}

/// Relative mask of `sub` inside `sup`.
fn compress(sub: u32, sup: u32) -> u32 {
    let mut out = 0;
    for (i, b) in bits(sup).into_iter().enumerate() {
        if sub & (1 << b) != 0 {
            out |= 1 << i;
        }
    }
    out
}

/// One level of the tower.
#[derive(Debug, Clone)]
pub struct Level {
    k: usize,
    /// (left mask, first column) for every nonempty proper subset, ascending
    blocks: Vec<(u32, usize)>,
    block_of_mask: Vec<u32>,
    ncols: usize,
    basis_cols: Vec<u32>,
    nf: Vec<SparseVec>,
    echelon: RowEchelonBasis,
}

impl Level {
    fn unit() -> Level {
        Level {
            k: 1,
            blocks: Vec::new(),
            block_of_mask: vec![NONE; 2],
            ncols: 0,
            basis_cols: vec![0],
            nf: Vec::new(),
            echelon: RowEchelonBasis::new(0),
        }
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// Dimension of the degree-`k` multilinear component of the free alternative algebra.
    pub fn dim(&self) -> usize {
        self.basis_cols.len()
    }

    /// Size of `⊕ Alt(S) ⊗ Alt(T)`.
    pub fn ambient(&self) -> usize {
        self.ncols
    }

    pub fn echelon(&self) -> &RowEchelonBasis {
        &self.echelon
    }
}

/// The levels `1..=d`.
#[derive(Debug, Clone, Default)]
pub struct Tower {
    levels: Vec<Level>,
}

impl Tower {
    pub fn new() -> Self {
        Tower { levels: vec![Level::unit()] }
    }

    pub fn max_degree(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, k: usize) -> &Level {
        &self.levels[k - 1]
    }

    pub fn dim(&self, k: usize) -> usize {
        self.level(k).dim()
    }

    fn layout(&self, k: usize) -> (Vec<(u32, usize)>, Vec<u32>, usize) {
        let full = (1u32 << k) - 1;
        let mut blocks = Vec::new();
        let mut block_of_mask = vec![NONE; 1 << k];
        let mut off = 0;
        for mask in 1..full {
            let a = mask.count_ones() as usize;
            block_of_mask[mask as usize] = blocks.len() as u32;
            blocks.push((mask, off));
            off += self.dim(a) * self.dim(k - a);
        }
        (blocks, block_of_mask, off)
    }

    /// Ambient column of `u ⊗ v` at level `k`, `left` the relative mask of `u`.
    fn column(&self, k: usize, blocks: &[(u32, usize)], block_of_mask: &[u32], left: u32, i: u32, j: u32) -> u32 {
        let (_, off) = blocks[block_of_mask[left as usize] as usize];
        let d2 = self.dim(k - left.count_ones() as usize);
        (off + i as usize * d2 + j as usize) as u32
    }

    /// Product of two elements on disjoint variable sets; both levels must exist.
    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let mask = a.mask | b.mask;
        let k = mask.count_ones() as usize;
        let lvl = self.level(k);
        let left = compress(a.mask, mask);
        let mut acc: HashMap<u32, Scalar> = HashMap::new();
        for (i, ci) in a.coords.iter() {
            for (j, cj) in b.coords.iter() {
                let col = self.column(k, &lvl.blocks, &lvl.block_of_mask, left, *i, *j);
                let c = ci * cj;
                for (t, ct) in lvl.nf[col as usize].iter() {
                    acc.entry(*t).or_default().add_mul(&c, ct);
                }
            }
        }
        Elem { mask, coords: SparseVec::from_entries(acc.into_iter().collect()) }
    }

    fn basis_elem(mask: u32, i: u32) -> Elem {
        Elem { mask, coords: SparseVec::from_entries(vec![(i, Scalar::one())]) }
    }

    /// Ambient vector (at level `|u|+|v|+|w|`) of `(uv)w - u(vw)` for basis elements.
    fn associator_row(&self, k: usize, blocks: &[(u32, usize)], bom: &[u32], u: &Elem, v: &Elem, w: &Elem, out: &mut Vec<(u32, Scalar)>) {
        let full = u.mask | v.mask | w.mask;
        let uv = self.mul(u, v);
        let left = compress(uv.mask, full);
        let wi = w.coords.iter().next().unwrap().0;
        for (b, c) in uv.coords.iter() {
            out.push((self.column(k, blocks, bom, left, *b, wi), c.clone()));
        }
        let vw = self.mul(v, w);
        let left = compress(u.mask, full);
        let ui = u.coords.iter().next().unwrap().0;
        for (b, c) in vw.coords.iter() {
            out.push((self.column(k, blocks, bom, left, ui, *b), -c));
        }
    }

    /// Builds level `max_degree() + 1`.
    pub fn extend(&mut self, budget: Option<usize>) -> Result<()> {
        let k = self.max_degree() + 1;
        if k > 12 {
            return Err(Error::DegreeCap { required: k, cap: 12 });
        }
        let (blocks, bom, ncols) = self.layout(k);
        let full = (1u32 << k) - 1;
        let mut rows = Vec::new();
        // ordered partitions of [k] into three nonempty blocks
        for mu in 1..full {
            for mv in 1..full {
                if mu & mv != 0 || (mu | mv) == full {
                    continue;
                }
                let mw = full & !(mu | mv);
                let (lu, lv, lw) = (mu.trailing_zeros(), mv.trailing_zeros(), mw.trailing_zeros());
                let law1 = lu < lv;
                let law2 = lv < lw;
                if !law1 && !law2 {
                    continue;
                }
                let (du, dv, dw) = (self.dim(mu.count_ones() as usize), self.dim(mv.count_ones() as usize), self.dim(mw.count_ones() as usize));
                for i in 0..du as u32 {
                    let u = Self::basis_elem(mu, i);
                    for j in 0..dv as u32 {
                        let v = Self::basis_elem(mv, j);
                        for l in 0..dw as u32 {
                            let w = Self::basis_elem(mw, l);
                            let mut base = Vec::new();
                            self.associator_row(k, &blocks, &bom, &u, &v, &w, &mut base);
                            if law1 {
                                let mut e = base.clone();
                                self.associator_row(k, &blocks, &bom, &v, &u, &w, &mut e);
                                rows.push(SparseVec::from_entries(e));
                            }
                            if law2 {
                                let mut e = base;
                                self.associator_row(k, &blocks, &bom, &u, &w, &v, &mut e);
                                rows.push(SparseVec::from_entries(e));
                            }
                        }
                    }
                }
            }
        }
        let echelon = reduce_basis(ncols, rows.into_iter().filter(|r| !r.is_empty()), budget)?;
        self.push_level(k, blocks, bom, ncols, echelon)
    }

    fn push_level(&mut self, k: usize, blocks: Vec<(u32, usize)>, bom: Vec<u32>, ncols: usize, echelon: RowEchelonBasis) -> Result<()> {
        let mut col_basis = vec![NONE; ncols];
        let mut basis_cols = Vec::new();
        for c in 0..ncols as u32 {
            if !echelon.is_pivot(c) {
                col_basis[c as usize] = basis_cols.len() as u32;
                basis_cols.push(c);
            }
        }
        let mut nf = vec![SparseVec::new(); ncols];
        for (c, &b) in col_basis.iter().enumerate() {
            if b != NONE {
                nf[c] = SparseVec::from_entries(vec![(b, Scalar::one())]);
            }
        }
        for row in echelon.rows() {
            let p = row.leading().unwrap();
            let tail: Vec<(u32, Scalar)> = row.iter().skip(1).map(|(c, a)| (col_basis[*c as usize], -a)).collect();
            if tail.iter().any(|(b, _)| *b == NONE) {
                return Err(Error::Cache("echelon form is not reduced".into()));
            }
            nf[p as usize] = SparseVec::from_entries(tail);
        }
        self.levels.push(Level { k, blocks, block_of_mask: bom, ncols, basis_cols, nf, echelon });
        Ok(())
    }

    /// Installs level `max_degree() + 1` from a stored echelon form.
    pub fn extend_from(&mut self, echelon: RowEchelonBasis) -> Result<()> {
        let k = self.max_degree() + 1;
        let (blocks, bom, ncols) = self.layout(k);
        if echelon.ncols() != ncols {
            return Err(Error::DimensionMismatch { expected: ncols, found: echelon.ncols() });
        }
        self.push_level(k, blocks, bom, ncols, echelon)
    }

    /// Size of the ambient space of the next level.
    pub fn next_ambient(&self) -> usize {
        self.layout(self.max_degree() + 1).2
    }

    /// Leaf positions of basis element `b` of level `k`, as a token tree over `0..k`.
    fn basis_monomial(&self, k: usize, b: u32, positions: &[GenSym]) -> Monomial {
        if k == 1 {
            return Monomial::leaf(positions[0].clone());
        }
        let lvl = self.level(k);
        let col = lvl.basis_cols[b as usize] as usize;
        let bi = lvl.blocks.partition_point(|(_, off)| *off <= col) - 1;
        let (mask, off) = lvl.blocks[bi];
        let a = mask.count_ones() as usize;
        let d2 = self.dim(k - a);
        let (i, j) = ((col - off) / d2, (col - off) % d2);
        let full = (1u32 << k) - 1;
        let lp: Vec<GenSym> = bits(mask).into_iter().map(|p| positions[p as usize].clone()).collect();
        let rp: Vec<GenSym> = bits(full & !mask).into_iter().map(|p| positions[p as usize].clone()).collect();
        Monomial::product(&self.basis_monomial(a, i as u32, &lp), &self.basis_monomial(k - a, j as u32, &rp))
    }

    /// The basis monomial of `b` at level `vars.len()` written in `vars`.
    pub fn monomial(&self, b: u32, vars: &[GenSym]) -> Monomial {
        self.basis_monomial(vars.len(), b, vars)
    }

    fn nf_monomial(&self, m: &Monomial, pos: &HashMap<&GenSym, u8>, memo: &mut HashMap<Monomial, Elem>) -> Result<Elem> {
        if let Some(e) = memo.get(m) {
            return Ok(e.clone());
        }
        let e = match m.split() {
            None => {
                let g = m.as_leaf().unwrap();
                let p = pos.get(g).ok_or_else(|| Error::NotMultilinear(format!("unexpected generator `{}`", g.name())))?;
                Self::basis_elem(1 << p, 0)
            }
            Some((l, r)) => {
                let a = self.nf_monomial(l, pos, memo)?;
                let b = self.nf_monomial(r, pos, memo)?;
                if a.mask & b.mask != 0 {
                    return Err(Error::NotMultilinear("repeated generator".into()));
                }
                self.mul(&a, &b)
            }
        };
        memo.insert(m.clone(), e.clone());
        Ok(e)
    }

    /// Normal form of an element multilinear in `vars` (all levels up to `vars.len()` must exist).
    pub fn normal_form(&self, e: &Expr, vars: &[GenSym]) -> Result<SparseVec> {
        let d = vars.len();
        if d > self.max_degree() {
            return Err(Error::DegreeCap { required: d, cap: self.max_degree() });
        }
        let pos: HashMap<&GenSym, u8> = vars.iter().enumerate().map(|(i, v)| (v, i as u8)).collect();
        let full = if d == 32 { u32::MAX } else { (1u32 << d) - 1 };
        let mut memo = HashMap::new();
        let mut out: HashMap<u32, Scalar> = HashMap::new();
        for (m, c) in e.terms() {
            let el = self.nf_monomial(m, &pos, &mut memo)?;
            if el.mask != full {
                return Err(Error::NotMultilinear(format!("monomial of degree {} in {d} variables", m.degree())));
            }
            for (i, ci) in el.coords.iter() {
                out.entry(*i).or_default().add_mul(c, ci);
            }
        }
        Ok(SparseVec::from_entries(out.into_iter().collect()))
    }

    /// The normal form as an expression in the basis monomials.
    pub fn residue(&self, e: &Expr, vars: &[GenSym]) -> Result<Expr> {
        let v = self.normal_form(e, vars)?;
        let mut out = Expr::zero();
        for (b, c) in v.iter() {
            out.add_term(self.monomial(*b, vars), c.clone());
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealt::basis::{standard_vars, MultilinearBasis};
    use crate::freealt::generators::consequence_generators;
    use crate::terms::{parse, Parities};

    fn tower(d: usize) -> Tower {
        let mut t = Tower::new();
        while t.max_degree() < d {
            t.extend(None).unwrap();
        }
        t
    }

    #[test]
    fn dimensions_agree_with_flat_elimination() {
        let t = tower(5);
        for d in 3..=5 {
            let b = MultilinearBasis::standard(d).unwrap();
            let flat = reduce_basis(b.len(), consequence_generators(&b), None).unwrap();
            assert_eq!(t.dim(d), b.len() - flat.rank(), "degree {d}");
        }
        assert_eq!(t.dim(1), 1);
        assert_eq!(t.dim(2), 2);
    }

    #[test]
    fn membership_agrees_with_flat_elimination() {
        let t = tower(4);
        let b = MultilinearBasis::standard(4).unwrap();
        let flat = reduce_basis(b.len(), consequence_generators(&b), None).unwrap();
        let vars = standard_vars(4);
        for i in (0..b.len()).step_by(7) {
            for j in (0..b.len()).step_by(11) {
                let e = Expr::monomial(b.monomial(i), Scalar::one()) - Expr::monomial(b.monomial(j), Scalar::from_int(2));
                let flat_zero = flat.contains(&b.to_vector(&e).unwrap()).unwrap();
                assert_eq!(t.normal_form(&e, &vars).unwrap().is_empty(), flat_zero);
            }
        }
    }

    #[test]
    fn basis_monomials_are_independent_representatives() {
        let t = tower(4);
        let vars = standard_vars(4);
        for b in 0..t.dim(4) as u32 {
            let e = Expr::monomial(t.monomial(b, &vars), Scalar::one());
            assert_eq!(t.normal_form(&e, &vars).unwrap(), SparseVec::from_entries(vec![(b, Scalar::one())]));
        }
    }

    #[test]
    fn laws_reduce_to_zero() {
        let t = tower(3);
        let vars = standard_vars(3);
        let law = parse("(x1,x2,x3) + (x2,x1,x3)", &Parities::default()).unwrap();
        assert!(t.normal_form(&law, &vars).unwrap().is_empty());
        let assoc = parse("(x1,x2,x3)", &Parities::default()).unwrap();
        assert!(!t.normal_form(&assoc, &vars).unwrap().is_empty());
    }
}
