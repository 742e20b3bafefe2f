//! Engine self-checks: shuffle invariance of the flat elimination,
//! soundness transport of certified identities, and the parser round trip.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebras::{medvedev_shestakov, random_assignment, split_octonions, Program, SuperForms};
use crate::catalog::{find, listed_identities};
use crate::error::Result;
use crate::freealt::{alt_dim, consequence_generators, is_identity, reduce_basis, MultilinearBasis, SparseVec};
use crate::scalar::Scalar;
use crate::terms::{format, parse, Expr, GenSym, Monomial, Parities};

use super::{run_check, CheckRecord, Outcome, RunConfig, Target};

const SHUFFLES: u64 = 5;
const TRANSPORT_SEEDS: u64 = 10;
const ROUND_TRIPS: u64 = 1000;

fn random_monomial(rng: &mut impl Rng, gens: &[GenSym], degree: usize) -> Monomial {
    if degree == 1 {
        return Monomial::leaf(gens[rng.gen_range(0..gens.len())].clone());
    }
    let left = rng.gen_range(1..degree);
    Monomial::product(&random_monomial(rng, gens, left), &random_monomial(rng, gens, degree - left))
}

/// A random sum of up to `max_terms` monomials of degree at most
/// `max_degree` in `gens`, with small rational coefficients.
pub fn random_expr(rng: &mut impl Rng, gens: &[GenSym], max_terms: usize, max_degree: usize) -> Expr {
    let mut e = Expr::zero();
    for _ in 0..rng.gen_range(1..=max_terms) {
        let d = rng.gen_range(1..=max_degree);
        let num = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let den = rng.gen_range(1..=4);
        e.add_term(random_monomial(rng, gens, d), Scalar::new(num, den));
    }
    e
}

/// Identities certified at the configured cap, with their labels.
fn certified(cfg: &RunConfig) -> Result<Vec<(String, Expr)>> {
    let mut out = Vec::new();
    let mut candidates: Vec<(String, Expr)> =
        listed_identities().iter().map(|id| Ok((format!("({})", id.label), id.build()?))).collect::<Result<_>>()?;
    candidates.push(("u2".into(), find("u2")?.build()?));
    candidates.push(("u3".into(), find("u3")?.build()?));
    for (label, e) in candidates {
        match is_identity(&e, &cfg.opts) {
            Ok(v) if v.holds() => out.push((label, e)),
            Ok(_) | Err(crate::error::Error::DegreeCap { .. }) => {}
            Err(err) => return Err(err),
        }
    }
    Ok(out)
}

pub(super) struct Engine;

impl Target for Engine {
    fn name(&self) -> &'static str {
        "engine"
    }
    fn summary(&self) -> &'static str {
        "rank invariance under shuffled consequences, soundness transport, parser round trip"
    }
    fn run(&self, cfg: &RunConfig) -> Vec<CheckRecord> {
        let mut out: Vec<CheckRecord> = (3..=5)
            .map(|d| {
                run_check(format!("flat rank invariant under {SHUFFLES} shuffles, degree {d}"), cfg, || {
                    let expected = MultilinearBasis::standard(d)?.len() - alt_dim(d, &cfg.opts)?;
                    let basis = MultilinearBasis::standard(d)?;
                    let mut gens: Vec<SparseVec> = consequence_generators(&basis).collect();
                    let mut ranks = vec![reduce_basis(basis.len(), gens.iter().cloned(), cfg.opts.budget)?.rank()];
                    for i in 0..SHUFFLES {
                        gens.shuffle(&mut ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(i)));
                        ranks.push(reduce_basis(basis.len(), gens.iter().cloned(), cfg.opts.budget)?.rank());
                    }
                    let ok = ranks.iter().all(|&r| r == expected);
                    let shown = ranks.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ");
                    Ok(Outcome::from_bool(ok, Some(format!("ranks {shown}")), format!("tower rank {expected}")))
                })
            })
            .collect();
        out.push(run_check("certified identities vanish in octonions", cfg, || {
            let o = split_octonions();
            let ids = certified(cfg)?;
            for (label, e) in &ids {
                let prog = Program::compile(e);
                for s in cfg.seed..cfg.seed + TRANSPORT_SEEDS {
                    let asg = random_assignment(s, prog.vars(), &o, cfg.coeff_bound);
                    let v = prog.run(&o, &prog.bind(&asg, &o)?);
                    if !v.is_zero() {
                        return Ok(Outcome::fail(format!("{label} at seed {s}: {}", o.format(&v)), ""));
                    }
                }
            }
            Ok(Outcome::pass(format!("{} identities, {TRANSPORT_SEEDS} seeds each", ids.len())))
        }));
        out.push(run_check(format!("certified identities vanish on medvedev:{} basis tuples", cfg.k), cfg, || {
            let alg = medvedev_shestakov(cfg.k)?;
            let ids = certified(cfg)?;
            let mut total = 0;
            for (label, e) in &ids {
                let (count, bad) = SuperForms::new(e)?.exhaustive(&alg)?;
                total += count;
                if let Some((t, v)) = bad {
                    let at: Vec<&str> = t.iter().map(|&i| alg.label(i)).collect();
                    return Ok(Outcome::fail(format!("{label} at ({}): {}", at.join(", "), alg.format(&v)), ""));
                }
            }
            Ok(Outcome::pass(format!("{} identities, {total} tuples", ids.len())))
        }));
        out.push(run_check(format!("parser round trip on {ROUND_TRIPS} random expressions"), cfg, || {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let gens = [GenSym::even("a"), GenSym::even("b"), GenSym::odd("x"), GenSym::odd("y"), GenSym::even("c2")];
            let parities = Parities::with_odd(&["x", "y"]);
            for i in 0..ROUND_TRIPS {
                let e = random_expr(&mut rng, &gens, 4, 6);
                let text = format(&e);
                let back = parse(&text, &parities)?;
                if back != e {
                    return Ok(Outcome::fail(format!("case {i}: {text}"), "reparsed expression differs"));
                }
            }
            Ok(Outcome::pass(format!("seed {}", cfg.seed)))
        }));
        out
    }
}
