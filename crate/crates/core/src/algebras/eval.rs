use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::terms::{Expr, GenSym, Monomial};

use super::{Element, StructAlgebra};

/// Generator values, keyed by generator name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    values: BTreeMap<String, Element>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, name: &str, value: Element) {
        self.values.insert(name.to_string(), value);
    }

    pub fn with(mut self, name: &str, value: Element) -> Self {
        self.set(name, value);
        self
    }

    pub fn get(&self, name: &str) -> Option<&Element> {
        self.values.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Element)> {
        self.values.iter()
    }

    pub fn elements(&self) -> Vec<Element> {
        self.values.values().cloned().collect()
    }
}

enum Step {
    Var(usize),
    Mul(usize, usize),
}

/// An expression compiled to a straight-line program over its distinct
/// subwords, for repeated evaluation.
pub struct Program {
    vars: Vec<GenSym>,
    steps: Vec<Step>,
    output: Vec<(usize, Scalar)>,
}

impl Program {
    pub fn compile(e: &Expr) -> Program {
        let vars: Vec<GenSym> = e.generators().into_iter().collect();
        let var_ix: HashMap<&GenSym, usize> = vars.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let mut slots: HashMap<Monomial, usize> = HashMap::new();
        let mut steps = Vec::new();
        fn visit(
            m: &Monomial,
            var_ix: &HashMap<&GenSym, usize>,
            slots: &mut HashMap<Monomial, usize>,
            steps: &mut Vec<Step>,
        ) -> usize {
            if let Some(&s) = slots.get(m) {
                return s;
            }
            let step = match m.split() {
                None => Step::Var(var_ix[m.as_leaf().unwrap()]),
                Some((l, r)) => {
                    let a = visit(l, var_ix, slots, steps);
                    let b = visit(r, var_ix, slots, steps);
                    Step::Mul(a, b)
                }
            };
            steps.push(step);
            slots.insert(m.clone(), steps.len() - 1);
            steps.len() - 1
        }
        let output = e.terms().map(|(m, c)| (visit(m, &var_ix, &mut slots, &mut steps), c.clone())).collect();
        Program { vars, steps, output }
    }

    pub fn vars(&self) -> &[GenSym] {
        &self.vars
    }

    /// Runs on values given in the order of [`vars`](Self::vars).
    pub fn run(&self, alg: &StructAlgebra, values: &[Element]) -> Element {
        let mut vals: Vec<Element> = Vec::with_capacity(self.steps.len());
        for s in &self.steps {
            let v = match s {
                Step::Var(i) => values[*i].clone(),
                Step::Mul(a, b) => {
                    if vals[*a].is_zero() || vals[*b].is_zero() {
                        Element::zero(alg.dim())
                    } else {
                        alg.mul(&vals[*a], &vals[*b])
                    }
                }
            };
            vals.push(v);
        }
        let mut out = Element::zero(alg.dim());
        for (s, c) in &self.output {
            out.add_scaled(&vals[*s], c);
        }
        out
    }

    /// Looks up and parity-checks the values of this program's variables.
    pub fn bind(&self, asg: &Assignment, alg: &StructAlgebra) -> Result<Vec<Element>> {
        self.vars
            .iter()
            .map(|g| {
                let v = asg.get(g.name()).ok_or_else(|| Error::UnassignedGenerator(g.name().to_string()))?;
                if v.dim() != alg.dim() {
                    return Err(Error::DimensionMismatch { expected: alg.dim(), found: v.dim() });
                }
                if !alg.has_parity(v, g.parity()) {
                    return Err(Error::ParityMismatch(format!(
                        "{} is {} but its value `{}` is not",
                        g.name(),
                        g.parity(),
                        alg.format(v)
                    )));
                }
                Ok(v.clone())
            })
            .collect()
    }
}

/// Image of `e` under the homomorphism determined by `asg`.
pub fn evaluate(e: &Expr, asg: &Assignment, alg: &StructAlgebra) -> Result<Element> {
    let p = Program::compile(e);
    let vals = p.bind(asg, alg)?;
    Ok(p.run(alg, &vals))
}

/// Seeded random values for `vars`: integer coordinates in
/// `[-bound, bound]` on the basis elements of each generator's parity.
pub fn random_assignment(seed: u64, vars: &[GenSym], alg: &StructAlgebra, bound: u32) -> Assignment {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = bound.max(1) as i64;
    let mut asg = Assignment::new();
    for g in vars {
        let coords = (0..alg.dim())
            .map(|i| {
                if alg.parity(i) == g.parity() {
                    Scalar::from_int(rng.gen_range(-b..=b))
                } else {
                    Scalar::zero()
                }
            })
            .collect();
        asg.set(g.name(), Element::from_coords(coords));
    }
    asg
}
