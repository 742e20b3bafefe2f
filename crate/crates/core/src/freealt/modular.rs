//! Row reduction over a large prime field, used to find pivots and a
//! candidate reduced echelon form cheaply before exact verification.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::scalar::{mulmod, powmod, Scalar};

use super::sparse::SparseVec;

pub const PRIME: u64 = (1 << 61) - 1;

type Row = Vec<(u32, u64)>;

/// Semi-echelon form modulo [`PRIME`] with dense scratch space.
pub struct ModEchelon {
    pivots: Vec<Option<Row>>,
    acc: Vec<u64>,
    seen: Vec<bool>,
}

impl ModEchelon {
    pub fn new(ncols: usize) -> Self {
        ModEchelon { pivots: vec![None; ncols], acc: vec![0; ncols], seen: vec![false; ncols] }
    }

    fn reduce(&mut self, entries: impl Iterator<Item = (u32, u64)>) -> Row {
        let p = PRIME;
        let mut touched = Vec::new();
        let mut heap: BinaryHeap<Reverse<u32>> = BinaryHeap::new();
        for (c, a) in entries {
            let c = c as usize;
            self.acc[c] = a;
            self.seen[c] = true;
            touched.push(c as u32);
            if self.pivots[c].is_some() {
                heap.push(Reverse(c as u32));
            }
        }
        while let Some(Reverse(c)) = heap.pop() {
            let a = std::mem::take(&mut self.acc[c as usize]);
            if a == 0 {
                continue;
            }
            let na = p - a;
            for &(j, b) in &self.pivots[c as usize].as_ref().unwrap()[1..] {
                let j = j as usize;
                if !self.seen[j] {
                    self.seen[j] = true;
                    touched.push(j as u32);
                    if self.pivots[j].is_some() {
                        heap.push(Reverse(j as u32));
                    }
                }
                self.acc[j] = (self.acc[j] + mulmod(na, b, p)) % p;
            }
        }
        touched.sort_unstable();
        let mut row = Row::new();
        for c in touched {
            self.seen[c as usize] = false;
            let a = std::mem::take(&mut self.acc[c as usize]);
            if a != 0 {
                row.push((c, a));
            }
        }
        row
    }

    /// Adds a row; `None` if a coefficient has no image mod the prime,
    /// otherwise whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> Option<bool> {
        let img: Option<Row> = v.iter().map(|(c, a)| a.residue_mod(PRIME).map(|m| (*c, m))).collect();
        let mut row = self.reduce(img?.into_iter());
        let Some(&(lead, a)) = row.first() else { return Some(false) };
        let inv = powmod(a, PRIME - 2, PRIME);
        for e in &mut row {
            e.1 = mulmod(e.1, inv, PRIME);
        }
        self.pivots[lead as usize] = Some(row);
        Some(true)
    }

    /// Back-substitutes and returns the reduced rows in pivot order.
    pub fn into_reduced(mut self) -> Vec<Row> {
        for c in (0..self.pivots.len()).rev() {
            let Some(row) = self.pivots[c].take() else { continue };
            let mut tail = self.reduce(row[1..].iter().copied());
            tail.insert(0, row[0]);
            self.pivots[c] = Some(tail);
        }
        self.pivots.into_iter().flatten().collect()
    }
}

/// The rational `n/d` with `|n|, d <= sqrt(p/2)` congruent to `a`, if any.
pub fn rational_reconstruct(a: u64, p: u64) -> Option<Scalar> {
    let bound = ((p / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    Some(Scalar::new(n as i64, d as i64))
}

/// Lifts reduced rows back to the rationals.
pub fn lift(rows: &[Row]) -> Option<Vec<SparseVec>> {
    rows.iter()
        .map(|r| {
            let e: Option<Vec<(u32, Scalar)>> = r.iter().map(|&(c, a)| rational_reconstruct(a, PRIME).map(|s| (c, s))).collect();
            e.map(SparseVec::from_entries)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstruction_inverts_reduction() {
        for (n, d) in [(0, 1), (1, 1), (-1, 1), (3, 7), (-22, 9), (123456, 789)] {
            let s = Scalar::new(n, d);
            let m = s.residue_mod(PRIME).unwrap();
            assert_eq!(rational_reconstruct(m, PRIME), Some(s));
        }
    }

    #[test]
    fn small_rank() {
        let sv = |e: &[(u32, i64)]| SparseVec::from_entries(e.iter().map(|&(i, c)| (i, Scalar::from_int(c))).collect());
        let mut m = ModEchelon::new(3);
        assert_eq!(m.insert(&sv(&[(0, 1), (1, 2)])), Some(true));
        assert_eq!(m.insert(&sv(&[(1, 1), (2, 1)])), Some(true));
        assert_eq!(m.insert(&sv(&[(0, 1), (1, 3), (2, 1)])), Some(false));
        let rows = lift(&m.into_reduced()).unwrap();
        assert_eq!(rows, vec![sv(&[(0, 1), (2, -2)]), sv(&[(1, 1), (2, 1)])]);
    }
}
