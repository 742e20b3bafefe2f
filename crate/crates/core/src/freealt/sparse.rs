//! Sparse rational vectors and a streaming reduced row echelon form.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::modular::{lift, ModEchelon};

/// Sorted `(index, value)` pairs with no zero values.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseVec {
    entries: Vec<(u32, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec::default()
    }

    /// Sorts, merges repeated indices and drops zeros.
    pub fn from_entries(mut entries: Vec<(u32, Scalar)>) -> Self {
        entries.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(u32, Scalar)> = Vec::with_capacity(entries.len());
        for (i, c) in entries {
            match out.last_mut() {
                Some((j, d)) if *j == i => *d += &c,
                _ => out.push((i, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        SparseVec { entries: out }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, (u32, Scalar)> {
        self.entries.iter()
    }

    pub fn leading(&self) -> Option<u32> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn get(&self, i: u32) -> Option<&Scalar> {
        self.entries.binary_search_by_key(&i, |(j, _)| *j).ok().map(|k| &self.entries[k].1)
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &SparseVec, c: &Scalar) -> SparseVec {
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, &b[j].1 * c));
                j += 1;
            } else {
                let mut v = a[i].1.clone();
                v.add_mul(c, &b[j].1);
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn max_index(&self) -> Option<u32> {
        self.entries.last().map(|(i, _)| *i)
    }
}

const NONE: u32 = u32::MAX;

/// Echelon form of a span with leading (lowest) columns as pivots.
///
/// Rows may be inserted one at a time, each reduced against the existing
/// pivots only; [`finalize`](Self::finalize) then back-substitutes so that
/// every row is zero in all other pivot columns. The finalized form depends
/// only on the span.
#[derive(Debug, Clone)]
pub struct RowEchelonBasis {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<u32>,
    nnz: usize,
    budget: Option<usize>,
    reduced: bool,
}

impl RowEchelonBasis {
    pub fn new(ncols: usize) -> Self {
        RowEchelonBasis { ncols, rows: Vec::new(), pivot_row: vec![NONE; ncols], nnz: 0, budget: None, reduced: true }
    }

    /// Limit on stored nonzeros; exceeding it makes insertion fail.
    pub fn with_budget(mut self, budget: Option<usize>) -> Self {
        self.budget = budget;
        self
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn nnz(&self) -> usize {
        self.nnz
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<u32> {
        (0..self.ncols as u32).filter(|&c| self.pivot_row[c as usize] != NONE).collect()
    }

    pub fn is_pivot(&self, col: u32) -> bool {
        self.pivot_row[col as usize] != NONE
    }

    /// Rows sorted by pivot.
    pub fn rows(&self) -> Vec<&SparseVec> {
        self.pivot_row.iter().filter(|&&r| r != NONE).map(|&r| &self.rows[r as usize]).collect()
    }

    fn check_dim(&self, v: &SparseVec) -> Result<()> {
        match v.max_index() {
            Some(i) if i as usize >= self.ncols => Err(Error::DimensionMismatch { expected: self.ncols, found: i as usize + 1 }),
            _ => Ok(()),
        }
    }

    fn charge(&mut self, n: usize) -> Result<()> {
        self.nnz += n;
        match self.budget {
            Some(b) if self.nnz > b => Err(Error::ResourceCap(format!("echelon form exceeds {b} stored entries"))),
            _ => Ok(()),
        }
    }

    /// Makes `row` (whose leading column is not yet a pivot) a pivot row.
    fn push_pivot(&mut self, row: SparseVec) -> Result<()> {
        let lead = row.leading().unwrap();
        let inv = row.entries[0].1.recip().unwrap();
        let row = if inv.is_one() { row } else { row.scale(&inv) };
        self.charge(row.len())?;
        self.pivot_row[lead as usize] = self.rows.len() as u32;
        self.rows.push(row);
        self.reduced = false;
        Ok(())
    }

    /// Clears every pivot column of `v`.
    fn reduce_inner(&self, v: &SparseVec) -> SparseVec {
        let mut heap: BinaryHeap<Reverse<u32>> = BinaryHeap::new();
        let mut acc: BTreeMap<u32, Scalar> = BTreeMap::new();
        for (c, a) in v.iter() {
            acc.insert(*c, a.clone());
            if self.pivot_row[*c as usize] != NONE {
                heap.push(Reverse(*c));
            }
        }
        while let Some(Reverse(c)) = heap.pop() {
            let Some(a) = acc.remove(&c) else { continue };
            let row = &self.rows[self.pivot_row[c as usize] as usize];
            let na = -&a;
            for (j, b) in row.iter().skip(1) {
                let slot = acc.entry(*j).or_insert_with(|| {
                    if self.pivot_row[*j as usize] != NONE {
                        heap.push(Reverse(*j));
                    }
                    Scalar::zero()
                });
                slot.add_mul(&na, b);
                if slot.is_zero() {
                    acc.remove(j);
                }
            }
        }
        SparseVec { entries: acc.into_iter().collect() }
    }

    /// Adds `v` to the span. Returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> Result<bool> {
        self.check_dim(v)?;
        let r = self.reduce_inner(v);
        if r.is_empty() {
            return Ok(false);
        }
        self.push_pivot(r)?;
        Ok(true)
    }

    /// Back-substitution: clears every pivot column from every other row.
    pub fn finalize(&mut self) -> Result<()> {
        if self.reduced {
            return Ok(());
        }
        let order: Vec<u32> = self.pivot_row.iter().rev().copied().filter(|&r| r != NONE).collect();
        for r in order {
            let row = std::mem::take(&mut self.rows[r as usize]);
            let mut acc = row.clone();
            // rows with larger pivots are already reduced, so one pass suffices
            for (c, a) in row.iter().skip(1) {
                let pr = self.pivot_row[*c as usize];
                if pr != NONE {
                    acc = acc.add_scaled(&self.rows[pr as usize], &-a);
                }
            }
            self.nnz -= row.len();
            let n = acc.len();
            self.rows[r as usize] = acc;
            self.charge(n)?;
        }
        self.reduced = true;
        Ok(())
    }

    /// Normal form of `v` modulo the span: zero iff `v` is a member.
    pub fn reduce(&self, v: &SparseVec) -> Result<SparseVec> {
        self.check_dim(v)?;
        Ok(self.reduce_inner(v))
    }

    pub fn contains(&self, v: &SparseVec) -> Result<bool> {
        Ok(self.reduce(v)?.is_empty())
    }

    /// Wraps rows already in reduced echelon form; `Ok(None)` if they are not.
    fn from_reduced(ncols: usize, rows: Vec<SparseVec>, budget: Option<usize>) -> Result<Option<Self>> {
        let mut b = RowEchelonBasis::new(ncols).with_budget(budget);
        for row in rows {
            let Some(lead) = row.leading() else { return Ok(None) };
            if row.max_index().unwrap() as usize >= ncols || b.pivot_row[lead as usize] != NONE || !row.entries[0].1.is_one() {
                return Ok(None);
            }
            b.push_pivot(row)?;
        }
        if b.rows.iter().any(|r| r.iter().skip(1).any(|(c, _)| b.is_pivot(*c))) {
            return Ok(None);
        }
        b.reduced = true;
        Ok(Some(b))
    }

    pub(crate) fn from_rows(ncols: usize, rows: Vec<SparseVec>) -> Result<Self> {
        Self::from_reduced(ncols, rows, None)?.ok_or_else(|| Error::Cache("rows are not a reduced echelon form".into()))
    }
}

/// Echelon basis of the span of `vectors`, finalized.
///
/// The reduced form is first computed modulo a large prime and lifted by
/// rational reconstruction. The lift is accepted only if every input vector
/// reduces to zero against it: then the input span lies in the lifted span,
/// whose dimension is the modular rank, a lower bound for the rational rank,
/// so the spans coincide. Otherwise the modularly independent rows are
/// eliminated exactly (see [`exact_basis`]) and the rest checked and inserted.
pub fn reduce_basis<I>(ncols: usize, vectors: I, budget: Option<usize>) -> Result<RowEchelonBasis>
where
    I: IntoIterator<Item = SparseVec>,
{
    let b = RowEchelonBasis::new(ncols).with_budget(budget);
    let mut all: Vec<SparseVec> = Vec::new();
    for v in vectors {
        b.check_dim(&v)?;
        if !v.is_empty() {
            all.push(v);
        }
    }
    all.sort_by_key(|v| (v.leading(), v.len()));
    let mut m = ModEchelon::new(ncols);
    let mut keep = Vec::new();
    let mut ok = true;
    for (i, v) in all.iter().enumerate() {
        match m.insert(v) {
            Some(true) => keep.push(i),
            Some(false) => {}
            None => {
                ok = false;
                break;
            }
        }
    }
    if ok {
        if let Some(rows) = lift(&m.into_reduced()) {
            if let Some(b) = RowEchelonBasis::from_reduced(ncols, rows, budget)? {
                if all.iter().all(|v| b.reduce_inner(v).is_empty()) {
                    return Ok(b);
                }
            }
        }
    } else {
        keep = (0..all.len()).collect();
    }
    exact_basis(b, &all, &keep)
}

/// Exact elimination of `all[keep]`: rows are queued by leading column; the
/// queue's smallest lead is taken repeatedly, and among rows sharing it the
/// sparsest becomes the pivot if none exists yet, while the others are
/// reduced at that column only and requeued. Remaining rows are then inserted.
fn exact_basis(mut b: RowEchelonBasis, all: &[SparseVec], keep: &[usize]) -> Result<RowEchelonBasis> {
    let mut chosen = vec![false; all.len()];
    let mut store: Vec<SparseVec> = Vec::with_capacity(keep.len());
    for &i in keep {
        chosen[i] = true;
        store.push(all[i].clone());
    }
    let mut heap: BinaryHeap<Reverse<(u32, usize, usize)>> = BinaryHeap::new();
    let mut queued = 0usize;
    for (id, v) in store.iter().enumerate() {
        heap.push(Reverse((v.leading().unwrap(), v.len(), id)));
        queued += v.len();
    }
    while let Some(Reverse((lead, _, id))) = heap.pop() {
        let v = std::mem::take(&mut store[id]);
        queued -= v.len();
        let pr = b.pivot_row[lead as usize];
        if pr == NONE {
            b.push_pivot(v)?;
            continue;
        }
        let a = v.entries[0].1.clone();
        let r = v.add_scaled(&b.rows[pr as usize], &-a);
        if let Some(l) = r.leading() {
            queued += r.len();
            if let Some(cap) = b.budget {
                if queued + b.nnz > cap {
                    return Err(Error::ResourceCap(format!("elimination exceeds {cap} stored entries")));
                }
            }
            heap.push(Reverse((l, r.len(), id)));
            store[id] = r;
        }
    }
    b.finalize()?;
    let mut grew = false;
    for (v, _) in all.iter().zip(&chosen).filter(|(_, &c)| !c) {
        grew |= b.insert(v)?;
    }
    if grew {
        b.finalize()?;
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sv(e: &[(u32, i64)]) -> SparseVec {
        SparseVec::from_entries(e.iter().map(|&(i, c)| (i, Scalar::from_int(c))).collect())
    }

    #[test]
    fn from_entries_normalizes() {
        let v = sv(&[(3, 1), (1, 2), (3, -1), (0, 0)]);
        assert_eq!(v, sv(&[(1, 2)]));
    }

    #[test]
    fn multiples_have_rank_one() {
        let v = sv(&[(0, 1), (2, 3)]);
        let b = reduce_basis(4, vec![v.clone(), v.scale(&Scalar::from_int(2))], None).unwrap();
        assert_eq!(b.rank(), 1);
        assert_eq!(reduce_basis(4, Vec::new(), None).unwrap().rank(), 0);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(matches!(reduce_basis(2, vec![sv(&[(5, 1)])], None), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn budget_is_enforced() {
        let rows = vec![sv(&[(0, 1), (1, 1), (2, 1)]), sv(&[(1, 1), (3, 1)])];
        assert!(matches!(reduce_basis(4, rows, Some(3)), Err(Error::ResourceCap(_))));
    }

    fn dense_rank(rows: &[Vec<i64>], ncols: usize) -> usize {
        let mut m: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&c| Scalar::from_int(c)).collect()).collect();
        let mut rank = 0;
        for c in 0..ncols {
            let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
            m.swap(rank, p);
            for r in 0..m.len() {
                if r != rank && !m[r][c].is_zero() {
                    let f = &m[r][c] / &m[rank][c];
                    for k in 0..ncols {
                        let d = &f * &m[rank][k];
                        m[r][k] -= &d;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    proptest! {
        #[test]
        fn rank_matches_dense_and_rows_are_reduced(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 7), 0..9)) {
            let vecs: Vec<SparseVec> = rows.iter()
                .map(|r| sv(&r.iter().enumerate().map(|(i, &c)| (i as u32, c)).collect::<Vec<_>>()))
                .collect();
            let b = reduce_basis(7, vecs.clone(), None).unwrap();
            let mut streamed = RowEchelonBasis::new(7);
            for v in &vecs {
                streamed.insert(v).unwrap();
            }
            streamed.finalize().unwrap();
            prop_assert_eq!(streamed.rows(), b.rows());
            prop_assert_eq!(b.rank(), dense_rank(&rows, 7));
            let pivots = b.pivots();
            for row in b.rows() {
                for (c, _) in row.iter().skip(1) {
                    prop_assert!(!pivots.contains(c));
                }
            }
            for v in &vecs {
                prop_assert!(b.contains(v).unwrap());
            }
            let mut rev = vecs.clone();
            rev.reverse();
            let b2 = reduce_basis(7, rev, None).unwrap();
            let r1: Vec<SparseVec> = b.rows().into_iter().cloned().collect();
            let r2: Vec<SparseVec> = b2.rows().into_iter().cloned().collect();
            prop_assert_eq!(r1, r2);
            let all: Vec<SparseVec> = vecs.iter().filter(|v| !v.is_empty()).cloned().collect();
            let exact = exact_basis(RowEchelonBasis::new(7), &all, &(0..all.len()).collect::<Vec<_>>()).unwrap();
            prop_assert_eq!(exact.rows(), b.rows());
        }
    }
}
