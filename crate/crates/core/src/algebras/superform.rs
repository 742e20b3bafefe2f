//! Evaluation of ordinary elements at arbitrary basis elements of a
//! superalgebra.
//!
//! An ordinary multihomogeneous `f` is fully polarized, and for each choice
//! of which generators take odd values the polarization is superized on the
//! corresponding copies. An identity of alternative algebras stays an
//! identity of alternative superalgebras in this form, so it must vanish at
//! every such assignment.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::terms::{polarize_all, superize, Expr, GenSym, Parity};

use super::{grassmann, tensor, Assignment, Element, Program, StructAlgebra};

pub struct SuperForms {
    polarized: Expr,
    /// original generator, its copies
    copies: Vec<(GenSym, Vec<GenSym>)>,
    programs: HashMap<u64, Program>,
}

impl SuperForms {
    /// `e` must be ordinary (all generators even) and multihomogeneous.
    pub fn new(e: &Expr) -> Result<Self> {
        if let Some(g) = e.generators().into_iter().find(|g| g.parity() == Parity::Odd) {
            return Err(Error::ParityMismatch(format!("`{}` is odd; expected an ordinary element", g.name())));
        }
        let (polarized, pol) = polarize_all(e)?;
        if pol.copies.len() > 64 {
            return Err(Error::InvalidParameter("too many generators".into()));
        }
        Ok(SuperForms { polarized, copies: pol.copies, programs: HashMap::new() })
    }

    /// The original generators with their degrees, in the order expected by
    /// [`eval_basis`](Self::eval_basis).
    pub fn generators(&self) -> Vec<(GenSym, usize)> {
        self.copies.iter().map(|(g, c)| (g.clone(), c.len())).collect()
    }

    /// Slots for [`StructAlgebra::graded_tuples`].
    pub fn slots(&self) -> Vec<(u32, Option<Parity>)> {
        self.copies.iter().map(|(_, c)| (c.len() as u32, None)).collect()
    }

    /// Value at the assignment sending the `i`-th generator to basis element `basis[i]`.
    pub fn eval_basis(&mut self, alg: &StructAlgebra, basis: &[usize]) -> Result<Element> {
        if basis.len() != self.copies.len() {
            return Err(Error::DimensionMismatch { expected: self.copies.len(), found: basis.len() });
        }
        let mask = basis
            .iter()
            .enumerate()
            .filter(|(_, &b)| alg.parity(b).is_odd())
            .fold(0u64, |m, (i, _)| m | (1 << i));
        if !self.programs.contains_key(&mask) {
            let odd: Vec<GenSym> = self
                .copies
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .flat_map(|(_, (_, c))| c.iter().cloned())
                .collect();
            let sup = superize(&self.polarized, &odd)?;
            self.programs.insert(mask, Program::compile(&sup));
        }
        let prog = &self.programs[&mask];
        let owner: HashMap<&str, usize> = self
            .copies
            .iter()
            .enumerate()
            .flat_map(|(i, (_, c))| c.iter().map(move |g| (g.name(), i)))
            .collect();
        let values: Vec<Element> = prog.vars().iter().map(|g| alg.basis_element(basis[owner[g.name()]])).collect();
        Ok(prog.run(alg, &values))
    }

    /// Runs every weight-admissible basis tuple; returns the number checked
    /// and the first tuple with a nonzero value.
    pub fn exhaustive(&mut self, alg: &StructAlgebra) -> Result<(usize, Option<(Vec<usize>, Element)>)> {
        let tuples = alg.graded_tuples(&self.slots());
        for t in &tuples {
            let v = self.eval_basis(alg, t)?;
            if !v.is_zero() {
                return Ok((tuples.len(), Some((t.clone(), v))));
            }
        }
        Ok((tuples.len(), None))
    }
}

/// Evaluation of a super element with one odd generator `x` of degree `r`
/// in `G(r) ⊗ A` at `x = Σ g_i ⊗ x_i`, with the even generators sent to
/// `1 ⊗ a`. The `g_1⋯g_r` component is the value of the skew-symmetric
/// ordinary form at `x_1..x_r`.
pub struct Envelope {
    x: GenSym,
    rank: usize,
    base_dim: usize,
    env: StructAlgebra,
    program: Program,
}

impl Envelope {
    pub fn new(e: &Expr, x: &GenSym, base: &StructAlgebra) -> Result<Self> {
        if x.parity() != Parity::Odd {
            return Err(Error::ParityMismatch(format!("`{}` must be odd", x.name())));
        }
        if base.is_graded() {
            return Err(Error::InvalidParameter("the base algebra must be ordinary".into()));
        }
        if let Some(g) = e.generators().into_iter().find(|g| g != x && g.parity() == Parity::Odd) {
            return Err(Error::ParityMismatch(format!("`{}` is odd; only `{}` may be", g.name(), x.name())));
        }
        let rank = e.terms().next().map_or(0, |(m, _)| m.degree_in(x));
        if rank > 10 {
            return Err(Error::InvalidParameter(format!("odd degree {rank} exceeds the Grassmann rank limit 10")));
        }
        let env = tensor(&grassmann(rank), base);
        Ok(Envelope { x: x.clone(), rank, base_dim: base.dim(), env, program: Program::compile(e) })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `asg` holds the even generators and `x1..xr` (named after `x`), all in the base algebra.
    pub fn top(&self, asg: &Assignment) -> Result<Element> {
        let da = self.base_dim;
        let lift = |v: &Element, mask: usize| {
            let mut c = vec![crate::scalar::Scalar::zero(); self.env.dim()];
            c[mask * da..(mask + 1) * da].clone_from_slice(v.coords());
            Element::from_coords(c)
        };
        let mut values = Vec::with_capacity(self.program.vars().len());
        for g in self.program.vars() {
            if g == &self.x {
                let mut sum = Element::zero(self.env.dim());
                for i in 0..self.rank {
                    let name = format!("{}{}", self.x.name(), i + 1);
                    let v = asg.get(&name).ok_or(Error::UnassignedGenerator(name))?;
                    sum.add_scaled(&lift(v, 1 << i), &1.into());
                }
                values.push(sum);
            } else {
                let v = asg.get(g.name()).ok_or_else(|| Error::UnassignedGenerator(g.name().to_string()))?;
                values.push(lift(v, 0));
            }
        }
        let out = self.program.run(&self.env, &values);
        let top = (1usize << self.rank) - 1;
        Ok(Element::from_coords(out.coords()[top * da..(top + 1) * da].to_vec()))
    }

    /// The base-algebra generators `top` expects.
    pub fn ordinary_vars(&self) -> Vec<GenSym> {
        let mut out: Vec<GenSym> = self.program.vars().iter().filter(|g| *g != &self.x).cloned().collect();
        out.extend((1..=self.rank).map(|i| GenSym::even(&format!("{}{i}", self.x.name()))));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{evaluate, grassmann, medvedev_shestakov, tensor, Assignment};
    use crate::terms::{parse, Parities};

    fn p(s: &str) -> Expr {
        parse(s, &Parities::default()).unwrap()
    }

    #[test]
    fn even_tuples_match_direct_evaluation() {
        let a = medvedev_shestakov(1).unwrap();
        let e = p("(a a, b, a) + 2*(a, b, a) a");
        let mut sf = SuperForms::new(&e).unwrap();
        let (v0, u2) = (a.index_of("v0").unwrap(), a.index_of("u2").unwrap());
        let direct = evaluate(&e, &Assignment::new().with("a", a.basis_element(v0)).with("b", a.basis_element(u2)), &a);
        // polarization multiplies by 3! for a and 1 for b
        let via = sf.eval_basis(&a, &[v0, u2]).unwrap();
        assert_eq!(via, direct.unwrap().scale(&6.into()));
    }

    #[test]
    fn grassmann_is_supercommutative() {
        let g = grassmann(2);
        let mut sf = SuperForms::new(&p("[a,b]")).unwrap();
        assert!(sf.exhaustive(&g).unwrap().1.is_none());
        let mut sf = SuperForms::new(&p("a b")).unwrap();
        assert!(sf.exhaustive(&g).unwrap().1.is_some());
    }

    #[test]
    fn alternative_laws_hold_in_superalgebras() {
        let e = p("(a,a,b)");
        for alg in [medvedev_shestakov(1).unwrap(), tensor(&grassmann(2), &crate::algebras::split_octonions())] {
            let mut sf = SuperForms::new(&e).unwrap();
            let (n, bad) = sf.exhaustive(&alg).unwrap();
            assert!(n > 0);
            assert!(bad.is_none(), "{}", alg.name());
        }
    }

    #[test]
    fn envelope_top_is_the_skew_form() {
        use crate::algebras::{random_assignment, split_octonions};
        use crate::catalog::{ordinary_skew, u_super};
        let (a, x) = (GenSym::even("a"), GenSym::odd("x"));
        let e = u_super(4, &a, &x).unwrap();
        let o = split_octonions();
        let env = Envelope::new(&e, &x, &o).unwrap();
        assert_eq!(env.rank(), 4);
        let ord = ordinary_skew(&e, &x).unwrap();
        let wit = parse("[x, x x]", &Parities::with_odd(&["x"])).unwrap();
        let env_wit = Envelope::new(&wit, &x, &o).unwrap();
        for seed in 0..2 {
            let asg = random_assignment(seed, &env.ordinary_vars(), &o, 3);
            assert_eq!(env.top(&asg).unwrap(), evaluate(&ord, &asg, &o).unwrap());
            let asg = random_assignment(seed, &env_wit.ordinary_vars(), &o, 3);
            let direct = evaluate(&ordinary_skew(&wit, &x).unwrap(), &asg, &o).unwrap();
            assert!(!direct.is_zero());
            assert_eq!(env_wit.top(&asg).unwrap(), direct);
        }
    }

    #[test]
    fn rejects_odd_input() {
        assert!(SuperForms::new(&parse("x y", &Parities::with_odd(&["x"])).unwrap()).is_err());
    }
}
