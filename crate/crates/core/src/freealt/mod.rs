//! Identities of alternative algebras, decided by membership in the
//! multilinear part of the T-ideal generated by the alternative laws.

mod basis;
mod cache;
mod generators;
mod modular;
mod sparse;
mod tower;

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::terms::{ordinary_form, polarize_all, Expr, GenSym};

pub use basis::{multilinear_basis, standard_vars, MultilinearBasis, MAX_DEGREE};
pub use cache::{cache_path, CACHE_VERSION};
pub use generators::consequence_generators;
pub use sparse::{reduce_basis, RowEchelonBasis, SparseVec};
pub use tower::{Elem, Level, Tower};

/// Default limit on stored echelon entries when degree 7 is enabled.
pub const DEG7_DEFAULT_BUDGET: usize = 40_000_000;

#[derive(Debug, Clone)]
pub struct IdentityOpts {
    pub degree_cap: usize,
    pub allow_deg7: bool,
    /// Limit on stored echelon entries; `None` means unlimited below degree 7.
    pub budget: Option<usize>,
    pub cache_dir: Option<PathBuf>,
}

impl Default for IdentityOpts {
    fn default() -> Self {
        IdentityOpts { degree_cap: 6, allow_deg7: false, budget: None, cache_dir: None }
    }
}

impl IdentityOpts {
    pub fn with_cap(degree_cap: usize) -> Self {
        IdentityOpts { degree_cap, ..Self::default() }
    }

    fn check_degree(&self, d: usize) -> Result<()> {
        let cap = if self.allow_deg7 { self.degree_cap.max(7) } else { self.degree_cap.min(6) };
        if d > cap || d > 7 {
            return Err(Error::DegreeCap { required: d, cap });
        }
        Ok(())
    }

    fn budget_for(&self, d: usize) -> Option<usize> {
        match (self.budget, d) {
            (Some(b), _) => Some(b),
            (None, 7) => Some(DEG7_DEFAULT_BUDGET),
            _ => None,
        }
    }
}

fn tower() -> &'static Mutex<Tower> {
    static TOWER: OnceLock<Mutex<Tower>> = OnceLock::new();
    TOWER.get_or_init(|| Mutex::new(Tower::new()))
}

/// Runs `f` on the process-wide tower after building (or loading from the
/// on-disk cache) all levels up to `d`.
pub fn with_tower<T>(d: usize, opts: &IdentityOpts, f: impl FnOnce(&Tower) -> Result<T>) -> Result<T> {
    opts.check_degree(d)?;
    let mut t = tower().lock().unwrap_or_else(|e| e.into_inner());
    while t.max_degree() < d {
        let k = t.max_degree() + 1;
        let cached = match &opts.cache_dir {
            Some(dir) => cache::load(dir, k, t.next_ambient())?,
            None => None,
        };
        match cached {
            Some(e) => t.extend_from(e)?,
            None => {
                t.extend(opts.budget_for(k))?;
                if let Some(dir) = &opts.cache_dir {
                    cache::save(dir, k, t.level(k).echelon())?;
                }
            }
        }
    }
    f(&t)
}

/// Dimension of the degree-`d` multilinear component of the free alternative algebra.
pub fn alt_dim(d: usize, opts: &IdentityOpts) -> Result<usize> {
    with_tower(d.max(1), opts, |t| Ok(t.dim(d.max(1))))
}

/// Frozen values of [`alt_dim`] for `d = 1..=6`, used as a regression check.
pub const KNOWN_ALT_DIMS: [usize; 6] = [1, 2, 7, 32, 175, 1080];

/// Rank of the alternative consequences in the degree-`d` multilinear
/// component of the free nonassociative algebra.
pub fn consequence_rank(d: usize, opts: &IdentityOpts) -> Result<usize> {
    let ambient = MultilinearBasis::standard(d)?.len();
    Ok(ambient - alt_dim(d, opts)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Identity,
    /// The normal form of the first multihomogeneous component that does not
    /// reduce to zero, in the polarized variables.
    NotIdentity { witness: Expr },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Identity)
    }
}

/// Polarized degree needed to decide `e`.
pub fn required_degree(e: &Expr) -> usize {
    e.homogeneous_components().values().map(|c| c.degree()).max().unwrap_or(0)
}

/// Decides whether `e` vanishes in every alternative algebra (odd generators:
/// every alternative superalgebra).
pub fn is_identity(e: &Expr, opts: &IdentityOpts) -> Result<Verdict> {
    let comps = e.homogeneous_components();
    for c in comps.values() {
        opts.check_degree(c.degree())?;
    }
    for c in comps.values() {
        let (pol, _) = polarize_all(c)?;
        let ord = ordinary_form(&pol)?;
        let d = ord.degree();
        let vars: Vec<GenSym> = ord.generators().into_iter().collect();
        let std = standard_vars(d);
        let to_std: HashMap<GenSym, GenSym> = vars.iter().cloned().zip(std.iter().cloned()).collect();
        let renamed = ord.rename(&to_std);
        let residue = if d < 3 { renamed } else { with_tower(d, opts, |t| t.residue(&renamed, &std))? };
        if !residue.is_zero() {
            let back: HashMap<GenSym, GenSym> = std.into_iter().zip(vars).collect();
            return Ok(Verdict::NotIdentity { witness: residue.rename(&back) });
        }
    }
    Ok(Verdict::Identity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::{parse, Parities};

    fn p(s: &str) -> Expr {
        parse(s, &Parities::default()).unwrap()
    }

    fn holds(s: &str) -> bool {
        is_identity(&p(s), &IdentityOpts::default()).unwrap().holds()
    }

    #[test]
    fn small_dimensions() {
        let o = IdentityOpts::default();
        assert_eq!(alt_dim(1, &o).unwrap(), 1);
        assert_eq!(alt_dim(2, &o).unwrap(), 2);
        assert_eq!(alt_dim(3, &o).unwrap(), 7);
        assert_eq!(alt_dim(4, &o).unwrap(), 32);
    }

    #[test]
    fn degree_three_laws() {
        assert!(holds("(a,a,b)"));
        assert!(holds("(a,b,b)"));
        assert!(holds("(a,b,a)"));
        assert!(holds("[a,b] + [b,a]"));
        assert!(!holds("(a,b,c)"));
        assert!(!holds("[a,b]"));
    }

    #[test]
    fn witness_is_the_residue() {
        match is_identity(&p("(a,b,c)"), &IdentityOpts::default()).unwrap() {
            Verdict::NotIdentity { witness } => {
                assert!(!witness.is_zero());
                assert_eq!(witness.generators().len(), 3);
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn jacobian_is_six_associators() {
        assert!(holds("J(a,b,c) - 6*(a,b,c)"));
        assert!(holds("([a,b],b,c) - (a,b,[c,b])"));
    }

    #[test]
    fn degree_cap_is_reported() {
        let e = p("(a,b,c) d e f g");
        match is_identity(&e, &IdentityOpts::default()) {
            Err(Error::DegreeCap { required: 7, cap: 6 }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(is_identity(&p("(a,b,c)"), &IdentityOpts::with_cap(2)), Err(Error::DegreeCap { .. })));
    }

    #[test]
    fn super_laws() {
        let e = parse("(x,x,a)", &Parities::with_odd(&["x"])).unwrap();
        assert!(!is_identity(&e, &IdentityOpts::default()).unwrap().holds());
        let e = parse("(x,y,a) + (y,x,a)", &Parities::with_odd(&["x", "y"])).unwrap();
        assert!(!is_identity(&e, &IdentityOpts::default()).unwrap().holds());
        let e = parse("(x,y,a) - (y,x,a)", &Parities::with_odd(&["x", "y"])).unwrap();
        assert!(is_identity(&e, &IdentityOpts::default()).unwrap().holds());
        let e = parse("(x,y,a) + (y,x,a)", &Parities::with_odd(&[])).unwrap();
        assert!(is_identity(&e, &IdentityOpts::default()).unwrap().holds());
    }
}
