//! Spanning set of the multilinear part of the T-ideal generated by the
//! linearized alternative laws.
//!
//! Every element `C[A(u,v,w)]`, with `A` one of `(u,v,w)+(v,u,w)` and
//! `(u,v,w)+(u,w,v)`, contains the monomial `C[(uv)w]`. Walking all labelled
//! monomials and all nodes of the form `(uv)w` therefore visits every
//! generator; the symmetry of each law in its two swapped slots is broken by
//! comparing the smallest variable of each slot, so each generator is
//! emitted exactly once.

use crate::scalar::Scalar;

use super::basis::{subtree_end, MultilinearBasis, NODE};
use super::sparse::SparseVec;

fn min_var(toks: &[u8]) -> u8 {
    toks.iter().copied().filter(|&t| t != NODE).min().unwrap()
}

struct Site<'a> {
    pre: &'a [u8],
    u: &'a [u8],
    v: &'a [u8],
    w: &'a [u8],
    post: &'a [u8],
}

impl Site<'_> {
    fn left(&self, a: &[u8], b: &[u8], c: &[u8], out: &mut Vec<u8>) {
        out.clear();
        out.extend_from_slice(self.pre);
        out.extend_from_slice(&[NODE, NODE]);
        out.extend_from_slice(a);
        out.extend_from_slice(b);
        out.extend_from_slice(c);
        out.extend_from_slice(self.post);
    }

    fn right(&self, a: &[u8], b: &[u8], c: &[u8], out: &mut Vec<u8>) {
        out.clear();
        out.extend_from_slice(self.pre);
        out.push(NODE);
        out.extend_from_slice(a);
        out.push(NODE);
        out.extend_from_slice(b);
        out.extend_from_slice(c);
        out.extend_from_slice(self.post);
    }
}

/// Generators of the degree-`d` multilinear consequences of alternativity,
/// as coordinate vectors in `basis`. The order is deterministic.
pub fn consequence_generators(basis: &MultilinearBasis) -> impl Iterator<Item = SparseVec> + '_ {
    let mut buf = Vec::new();
    (0..basis.len()).flat_map(move |i| {
        let toks = basis.tokens(i);
        let mut out = Vec::new();
        for p in 0..toks.len() {
            if toks[p] != NODE || toks[p + 1] != NODE {
                continue;
            }
            let ue = subtree_end(&toks, p + 2);
            let ve = subtree_end(&toks, ue);
            let we = subtree_end(&toks, ve);
            let s = Site { pre: &toks[..p], u: &toks[p + 2..ue], v: &toks[ue..ve], w: &toks[ve..we], post: &toks[we..] };
            let (mu, mv, mw) = (min_var(s.u), min_var(s.v), min_var(s.w));
            let mut terms = |a: &[u8], b: &[u8], c: &[u8]| {
                let mut e = Vec::with_capacity(4);
                s.left(s.u, s.v, s.w, &mut buf);
                e.push((basis.index_of(&buf) as u32, Scalar::one()));
                s.right(s.u, s.v, s.w, &mut buf);
                e.push((basis.index_of(&buf) as u32, Scalar::from_int(-1)));
                s.left(a, b, c, &mut buf);
                e.push((basis.index_of(&buf) as u32, Scalar::one()));
                s.right(a, b, c, &mut buf);
                e.push((basis.index_of(&buf) as u32, Scalar::from_int(-1)));
                SparseVec::from_entries(e)
            };
            if mu < mv {
                out.push(terms(s.v, s.u, s.w));
            }
            if mv < mw {
                out.push(terms(s.u, s.w, s.v));
            }
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::{parse, Parities};

    #[test]
    fn degree_three_generators_are_the_linearized_laws() {
        let b = MultilinearBasis::standard(3).unwrap();
        let gens: Vec<SparseVec> = consequence_generators(&b).collect();
        assert_eq!(gens.len(), 6);
        let law = b.to_vector(&parse("(x1,x2,x3) + (x2,x1,x3)", &Parities::default()).unwrap()).unwrap();
        assert!(gens.contains(&law));
        for g in &gens {
            assert_eq!(g.len(), 4);
        }
    }
}
