//! Evaluation evidence: vanishing of u_6 and u_7, the u_4/u_5 centrality
//! checks, the central catalog and the u_{4m}/u_{4m+1} relation.

use crate::algebras::{
    grassmann, medvedev_shestakov, random_assignment, split_octonions, tensor, Assignment, Element, Envelope, Program,
    StructAlgebra, SuperForms,
};
use crate::catalog::{find, fil_super, prop6_relation, u_n, u_vars, z_n};
use crate::error::{Error, Result};
use crate::terms::{Expr, GenSym, Parity};

use super::{run_check, CheckRecord, Outcome, RunConfig, Target};

/// Seeds used by the Grassmann-envelope check of the relation.
const ENVELOPE_SEEDS: u64 = 10;
/// Number of octonion-generating assignments for centrality checks.
const GENERATING: usize = 25;

fn seeds(cfg: &RunConfig) -> impl Iterator<Item = u64> {
    cfg.seed..cfg.seed + cfg.trials as u64
}

fn run(prog: &Program, alg: &StructAlgebra, asg: &Assignment) -> Result<Element> {
    Ok(prog.run(alg, &prog.bind(asg, alg)?))
}

/// The first `count` seeds from `cfg.seed` on whose values for `vars` generate `alg`.
fn generating_seeds(vars: &[GenSym], alg: &StructAlgebra, cfg: &RunConfig, count: usize) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(count);
    let limit = cfg.seed + 50 * count as u64;
    let mut s = cfg.seed;
    while out.len() < count {
        if s >= limit {
            return Err(Error::ResourceCap(format!("found only {} generating assignments", out.len())));
        }
        let asg = random_assignment(s, vars, alg, cfg.coeff_bound);
        if alg.generates_whole(&asg.elements()) {
            out.push(s);
        }
        s += 1;
    }
    Ok(out)
}

/// Whether `prog` vanishes on seeded random octonion assignments.
fn vanishes_on_trials(prog: &Program, cfg: &RunConfig) -> Result<Outcome> {
    let o = split_octonions();
    for s in seeds(cfg) {
        let v = run(prog, &o, &random_assignment(s, prog.vars(), &o, cfg.coeff_bound))?;
        if !v.is_zero() {
            return Ok(Outcome::fail(format!("seed {s}: {}", o.format(&v)), ""));
        }
    }
    Ok(Outcome::pass(format!("{} octonion seeds from {}", cfg.trials, cfg.seed)))
}

fn u_expr(n: usize) -> Result<Expr> {
    let (a, xs) = u_vars(n);
    u_n(n, &a, &xs)
}

pub(super) struct Prop4;

impl Target for Prop4 {
    fn name(&self) -> &'static str {
        "prop4"
    }
    fn summary(&self) -> &'static str {
        "u_6 and u_7 vanish in the split octonions and on basis tuples of A_{4k+2}"
    }
    fn run(&self, cfg: &RunConfig) -> Vec<CheckRecord> {
        let mut out = Vec::new();
        for n in [6, 7] {
            out.push(run_check(format!("u{n} in octonions"), cfg, || {
                vanishes_on_trials(&Program::compile(&u_expr(n)?), cfg)
            }));
            out.push(run_check(format!("u{n} on medvedev:{} basis tuples", cfg.k), cfg, || {
                let alg = medvedev_shestakov(cfg.k)?;
                let mut sf = SuperForms::new(&u_expr(n)?)?;
                let (count, bad) = sf.exhaustive(&alg)?;
                Ok(match bad {
                    None => Outcome::pass(format!("{count} weight-admissible tuples; all others vanish by grading")),
                    Some((t, v)) => {
                        let at: Vec<&str> = t.iter().map(|&i| alg.label(i)).collect();
                        Outcome::fail(format!("at ({}): {}", at.join(", "), alg.format(&v)), "")
                    }
                })
            }));
        }
        out
    }
}

pub(super) struct UCenter;

/// Values used by the centrality checks at one seed.
struct UPoint {
    asg: Assignment,
    value: Element,
    fresh: [Element; 5],
}

fn u_point(prog: &Program, o: &StructAlgebra, seed: u64, cfg: &RunConfig) -> Result<UPoint> {
    let mut vars = prog.vars().to_vec();
    let names = ["b", "c", "d", "y", "w"];
    vars.extend(names.iter().map(|n| GenSym::even(n)));
    let all = random_assignment(seed, &vars, o, cfg.coeff_bound);
    let mut asg = Assignment::new();
    for g in prog.vars() {
        asg.set(g.name(), all.get(g.name()).expect("assigned").clone());
    }
    let fresh = names.map(|n| all.get(n).expect("assigned").clone());
    let value = run(prog, o, &asg)?;
    Ok(UPoint { asg, value, fresh })
}

/// Runs `check` at every trial seed; the first nonzero value is the witness.
fn for_each_seed(
    n: usize,
    cfg: &RunConfig,
    check: impl Fn(&Program, &StructAlgebra, &UPoint) -> Result<Element>,
) -> Result<Outcome> {
    let o = split_octonions();
    let prog = Program::compile(&u_expr(n)?);
    for s in seeds(cfg) {
        let p = u_point(&prog, &o, s, cfg)?;
        let v = check(&prog, &o, &p)?;
        if !v.is_zero() {
            return Ok(Outcome::fail(format!("seed {s}: {}", o.format(&v)), ""));
        }
    }
    Ok(Outcome::pass(format!("{} octonion seeds from {}", cfg.trials, cfg.seed)))
}

fn comm(o: &StructAlgebra, a: &Element, b: &Element) -> Element {
    &o.mul(a, b) - &o.mul(b, a)
}

fn jord(o: &StructAlgebra, a: &Element, b: &Element) -> Element {
    &o.mul(a, b) + &o.mul(b, a)
}

impl Target for UCenter {
    fn name(&self) -> &'static str {
        "u-center"
    }
    fn summary(&self) -> &'static str {
        "skew-symmetry, centrality, nuclear and square-zero behaviour of u_4, u_5 in the octonions"
    }
    fn run(&self, cfg: &RunConfig) -> Vec<CheckRecord> {
        let mut out = Vec::new();
        for n in [4, 5] {
            out.push(run_check(format!("u{n} (i) skew under transpositions"), cfg, || {
                for_each_seed(n, cfg, |prog, o, p| {
                    for i in 1..=n {
                        for j in i + 1..=n {
                            let (xi, xj) = (format!("x{i}"), format!("x{j}"));
                            let mut swapped = p.asg.clone();
                            swapped.set(&xi, p.asg.get(&xj).expect("assigned").clone());
                            swapped.set(&xj, p.asg.get(&xi).expect("assigned").clone());
                            let s = &run(prog, o, &swapped)? + &p.value;
                            if !s.is_zero() {
                                return Ok(s);
                            }
                        }
                    }
                    Ok(Element::zero(o.dim()))
                })
            }));
            out.push(run_check(format!("u{n} (ii) commutes and associates"), cfg, || {
                for_each_seed(n, cfg, |_, o, p| {
                    let [_, _, _, y, w] = &p.fresh;
                    let c = comm(o, &p.value, y);
                    Ok(if c.is_zero() { o.associator(&p.value, y, w) } else { c })
                })
            }));
            out.push(run_check(format!("u{n} (iii) u o (b,c,d) = 0"), cfg, || {
                for_each_seed(n, cfg, |_, o, p| {
                    let [b, c, d, _, _] = &p.fresh;
                    Ok(jord(o, &p.value, &o.associator(b, c, d)))
                })
            }));
            out.push(run_check(format!("u{n} (iv) u^2 = 0"), cfg, || {
                for_each_seed(n, cfg, |_, o, p| Ok(o.mul(&p.value, &p.value)))
            }));
            out.push(run_check(format!("u{n} (v) u(x1..x{}, [b,c]) = 0", n - 1), cfg, || {
                for_each_seed(n, cfg, |prog, o, p| {
                    let [b, c, _, _, _] = &p.fresh;
                    let mut asg = p.asg.clone();
                    asg.set(&format!("x{n}"), comm(o, b, c));
                    run(prog, o, &asg)
                })
            }));
        }
        out.push(run_check("phi(u4) = 0 at generating assignments", cfg, || {
            let o = split_octonions();
            let prog = Program::compile(&u_expr(4)?);
            let seeds = generating_seeds(prog.vars(), &o, cfg, GENERATING)?;
            for &s in &seeds {
                let v = run(&prog, &o, &random_assignment(s, prog.vars(), &o, cfg.coeff_bound))?;
                if !v.is_zero() {
                    return Ok(Outcome::fail(format!("seed {s}: {}", o.format(&v)), ""));
                }
            }
            Ok(Outcome::pass(format!("{} generating assignments, seeds {}..={}", seeds.len(), seeds[0], seeds[seeds.len() - 1])))
        }));
        out
    }
}

pub(super) struct CenterCatalog;

/// Ordinary or envelope evaluation of a catalog element at octonion values.
enum Evaluator {
    Ordinary(Program),
    Super(Envelope),
}

impl Evaluator {
    fn vars(&self) -> Vec<GenSym> {
        match self {
            Evaluator::Ordinary(p) => p.vars().to_vec(),
            Evaluator::Super(e) => e.ordinary_vars(),
        }
    }

    fn eval(&self, o: &StructAlgebra, asg: &Assignment) -> Result<Element> {
        match self {
            Evaluator::Ordinary(p) => run(p, o, asg),
            Evaluator::Super(e) => e.top(asg),
        }
    }
}

fn scalar_at_generating(ev: &Evaluator, cfg: &RunConfig) -> Result<Outcome> {
    let o = split_octonions();
    let vars = ev.vars();
    let seeds = generating_seeds(&vars, &o, cfg, GENERATING)?;
    let mut nonzero = 0;
    for &s in &seeds {
        let v = ev.eval(&o, &random_assignment(s, &vars, &o, cfg.coeff_bound))?;
        if !o.is_scalar(&v)? {
            return Ok(Outcome::fail(format!("seed {s}: {}", o.format(&v)), "not a scalar"));
        }
        nonzero += usize::from(!v.is_zero());
    }
    Ok(Outcome::pass(format!("{} generating assignments, {nonzero} nonzero", seeds.len())))
}

impl Target for CenterCatalog {
    fn name(&self) -> &'static str {
        "center-catalog"
    }
    fn summary(&self) -> &'static str {
        "known central elements take scalar values at octonion-generating assignments"
    }
    fn run(&self, cfg: &RunConfig) -> Vec<CheckRecord> {
        let (a, x) = (GenSym::even("a"), GenSym::odd("x"));
        let o = split_octonions();
        let mut out = Vec::new();
        for name in ["dorofeev-shelipov", "shestakov"] {
            out.push(run_check(format!("{name} scalar"), cfg, || {
                scalar_at_generating(&Evaluator::Ordinary(Program::compile(&find(name)?.build()?)), cfg)
            }));
        }
        out.push(run_check("fil (skew-symmetrized) scalar", cfg, || {
            scalar_at_generating(&Evaluator::Super(Envelope::new(&fil_super(&a, &x)?, &x, &o)?), cfg)
        }));
        out.push(run_check("z5 (skew-symmetrized) scalar", cfg, || {
            scalar_at_generating(&Evaluator::Super(Envelope::new(&z_n(5, &x)?, &x, &o)?), cfg)
        }));
        out.push(run_check(format!("shestakov nonzero scalar at seed {}", cfg.seed), cfg, || {
            let prog = Program::compile(&find("shestakov")?.build()?);
            let v = run(&prog, &o, &random_assignment(cfg.seed, prog.vars(), &o, cfg.coeff_bound))?;
            let shown = o.format(&v);
            Ok(if !v.is_zero() && o.is_scalar(&v)? { Outcome::pass_with(shown, "") } else { Outcome::fail(shown, "") })
        }));
        out
    }
}

pub(super) struct Prop6;

impl Target for Prop6 {
    fn name(&self) -> &'static str {
        "prop6"
    }
    fn summary(&self) -> &'static str {
        "2u_{4m+1} + u_{4m}(a, [a,x], x) vanishes on A_{4m+2} basis tuples and in G(6) ⊗ O"
    }
    fn run(&self, cfg: &RunConfig) -> Vec<CheckRecord> {
        let m = cfg.m;
        vec![
            run_check(format!("prop6 m={m} on medvedev:{m} basis tuples"), cfg, || {
                let alg = medvedev_shestakov(m)?;
                let e = prop6_relation(m)?;
                let prog = Program::compile(&e);
                let of = |p: Parity| (0..alg.dim()).filter(|&i| alg.parity(i) == p).collect::<Vec<_>>();
                let mut count = 0;
                for a in of(Parity::Even) {
                    for x in of(Parity::Odd) {
                        let asg = Assignment::new().with("a", alg.basis_element(a)).with("x", alg.basis_element(x));
                        let v = run(&prog, &alg, &asg)?;
                        if !v.is_zero() {
                            return Ok(Outcome::fail(format!("a={}, x={}: {}", alg.label(a), alg.label(x), alg.format(&v)), ""));
                        }
                        count += 1;
                    }
                }
                Ok(Outcome::pass(format!("all {count} even-odd basis pairs")))
            }),
            run_check(format!("prop6 m={m} in grassmann:6 * octonion"), cfg, || {
                let env = tensor(&grassmann(6), &split_octonions());
                let prog = Program::compile(&prop6_relation(m)?);
                for s in cfg.seed..cfg.seed + ENVELOPE_SEEDS {
                    let v = run(&prog, &env, &random_assignment(s, prog.vars(), &env, cfg.coeff_bound))?;
                    if !v.is_zero() {
                        return Ok(Outcome::fail(format!("seed {s}: {}", env.format(&v)), ""));
                    }
                }
                Ok(Outcome::pass(format!("{ENVELOPE_SEEDS} seeds from {}", cfg.seed)))
            }),
        ]
    }
}
