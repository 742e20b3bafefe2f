//! Targets: the identity suite, small u_n, the A_n table and the
//! nonvanishing witnesses in A_n.

use crate::algebras::{evaluate, medvedev_shestakov, Assignment, StructAlgebra};
use crate::catalog::{find, listed_identities, t_double_prime, tilde_s};
use crate::error::{Error, Result};
use crate::freealt::{is_identity, required_degree, Verdict};
use crate::scalar::Scalar;
use crate::terms::{format, Expr, GenSym};

use super::engine::Engine;
use super::evidence::{CenterCatalog, Prop4, Prop6, UCenter};
use super::{run_check, CheckRecord, Outcome, RunConfig, Target};

pub(super) fn registry() -> Vec<Box<dyn Target>> {
    vec![
        Box::new(Identities),
        Box::new(USmall),
        Box::new(MsTable),
        Box::new(Prop4),
        Box::new(Prop5S),
        Box::new(Prop5T),
        Box::new(UCenter),
        Box::new(CenterCatalog),
        Box::new(Prop6),
        Box::new(Engine),
    ]
}

/// Membership check of `e` as a check outcome.
pub(super) fn certify(e: &Expr, cfg: &RunConfig) -> Result<Outcome> {
    let d = required_degree(e);
    Ok(match is_identity(e, &cfg.opts)? {
        Verdict::Identity => Outcome::pass(format!("certified at polarized degree {d}")),
        Verdict::NotIdentity { witness } => Outcome::fail(format(&witness), format!("residue at polarized degree {d}")),
    })
}

struct Identities;

impl Target for Identities {
    fn name(&self) -> &'static str {
        "identities"
    }
    fn summary(&self) -> &'static str {
        "identities (1)-(21) certified by T-ideal membership; above the degree cap they are skipped"
    }
    fn run(&self, cfg: &RunConfig) -> Vec<CheckRecord> {
        listed_identities()
            .iter()
            .map(|id| run_check(format!("({}) {}", id.label, id.display()), cfg, || certify(&id.build()?, cfg)))
            .collect()
    }
}

struct USmall;

impl Target for USmall {
    fn name(&self) -> &'static str {
        "u-small"
    }
    fn summary(&self) -> &'static str {
        "u_2 = 0 and u_3 = 0 in the free alternative algebra"
    }
    fn run(&self, cfg: &RunConfig) -> Vec<CheckRecord> {
        ["u2", "u3"].iter().map(|n| run_check(format!("{n} = 0"), cfg, || certify(&find(n)?.build()?, cfg))).collect()
    }
}

struct MsTable;

fn violation_text(a: &StructAlgebra, v: Option<(usize, usize, usize)>) -> Option<String> {
    v.map(|(i, j, k)| format!("({}, {}, {})", a.label(i), a.label(j), a.label(k)))
}

impl Target for MsTable {
    fn name(&self) -> &'static str {
        "ms-table"
    }
    fn summary(&self) -> &'static str {
        "A_6 and A_10 are super-alternative; a single perturbed entry is detected"
    }
    fn run(&self, cfg: &RunConfig) -> Vec<CheckRecord> {
        let mut out: Vec<CheckRecord> = [1, 2]
            .iter()
            .map(|&k| {
                run_check(format!("medvedev:{k} super-alternative"), cfg, || {
                    let a = medvedev_shestakov(k)?;
                    let v = a.super_alternative_violation();
                    Ok(Outcome::from_bool(v.is_none(), violation_text(&a, v), format!("{} basis triples", a.dim().pow(3))))
                })
            })
            .collect();
        out.push(run_check("mutated medvedev:1 rejected", cfg, || {
            let mut a = medvedev_shestakov(1)?;
            let (x, v0, vp1, v1) = (idx(&a, "x")?, idx(&a, "v0")?, idx(&a, "vp1")?, idx(&a, "v1")?);
            a.set_product(x, v0, &[(vp1, Scalar::one()), (v1, Scalar::one())]);
            let v = a.super_alternative_violation();
            let detail = "x·v0 changed from vp1 to v1 + vp1";
            Ok(match violation_text(&a, v) {
                Some(w) => Outcome::pass_with(w, detail),
                None => Outcome::fail("no violation", detail),
            })
        }));
        out
    }
}

pub(super) fn idx(a: &StructAlgebra, label: &str) -> Result<usize> {
    a.index_of(label).ok_or_else(|| Error::InvalidParameter(format!("{} has no basis element `{label}`", a.name())))
}

/// Evaluates `e` at basis elements and compares with `expected`.
fn exact_value(
    e: &Expr,
    alg: &StructAlgebra,
    at: &[(&GenSym, &str)],
    expected: &[(&str, i64)],
    note: &str,
) -> Result<Outcome> {
    let mut asg = Assignment::new();
    for (g, label) in at {
        asg.set(g.name(), alg.basis_element(idx(alg, label)?));
    }
    let value = evaluate(e, &asg, alg)?;
    let want = alg.element(expected)?;
    let shown = alg.format(&value);
    Ok(if value == want {
        Outcome::pass_with(shown, note)
    } else {
        Outcome::fail(shown, format!("expected {}; {note}", alg.format(&want)))
    })
}

struct Prop5S;

impl Target for Prop5S {
    fn name(&self) -> &'static str {
        "prop5-s"
    }
    fn summary(&self) -> &'static str {
        "the linearized δ(S_{4k}) at (v0, v1, v'1, x) in A_{4k+2}, expected 2U - 2V"
    }
    fn run(&self, cfg: &RunConfig) -> Vec<CheckRecord> {
        let n = 4 * cfg.k;
        vec![run_check(format!("tilde-S_{n}(v0, v1, vp1, x) in medvedev:{}", cfg.k), cfg, || {
            let alg = medvedev_shestakov(cfg.k)?;
            let [e, z, t, x] = [GenSym::even("e"), GenSym::odd("z"), GenSym::odd("t"), GenSym::odd("x")];
            let expr = tilde_s(n, &e, &z, &t, &x)?;
            exact_value(&expr, &alg, &[(&e, "v0"), (&z, "v1"), (&t, "vp1"), (&x, "x")], &[("U", 2), ("V", -2)], "exact")
        })]
    }
}

struct Prop5T;

impl Target for Prop5T {
    fn name(&self) -> &'static str {
        "prop5-t"
    }
    fn summary(&self) -> &'static str {
        "T''_{4k+1}(e, v4, x, v1, x) at e = v0 in A_{4k+6}, expected -4U - 2V"
    }
    fn run(&self, cfg: &RunConfig) -> Vec<CheckRecord> {
        let n = 4 * cfg.k + 1;
        let k = cfg.k + 1;
        vec![run_check(format!("T''_{n}(v0, v4, x, v1, x) in medvedev:{k}"), cfg, || {
            let alg = medvedev_shestakov(k)?;
            let [e, a] = [GenSym::even("e"), GenSym::even("a")];
            let [z, t, x] = [GenSym::odd("z"), GenSym::odd("t"), GenSym::odd("x")];
            let expr = t_double_prime(n, &e, &a, &z, &t, &x)?;
            let at = [(&e, "v0"), (&a, "v4"), (&z, "x"), (&t, "v1"), (&x, "x")];
            exact_value(&expr, &alg, &at, &[("U", -4), ("V", -2)], "weights force A_{n+5}")
        })]
    }
}
