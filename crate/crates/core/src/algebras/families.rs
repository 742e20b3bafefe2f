use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::terms::Parity;

use super::StructAlgebra;

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// Zorn vector-matrices `(a, v; w, b)` with integer entries.
#[derive(Clone, Copy)]
struct Zorn {
    a: i64,
    v: [i64; 3],
    w: [i64; 3],
    b: i64,
}

fn dot(x: [i64; 3], y: [i64; 3]) -> i64 {
    x[0] * y[0] + x[1] * y[1] + x[2] * y[2]
}

fn cross(x: [i64; 3], y: [i64; 3]) -> [i64; 3] {
    [x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]]
}

impl Zorn {
    fn mul(self, o: Zorn) -> Zorn {
        let add = |x: [i64; 3], y: [i64; 3]| [x[0] + y[0], x[1] + y[1], x[2] + y[2]];
        let sc = |c: i64, x: [i64; 3]| [c * x[0], c * x[1], c * x[2]];
        Zorn {
            a: self.a * o.a + dot(self.v, o.w),
            v: add(add(sc(self.a, o.v), sc(o.b, self.v)), cross(self.w, o.w)),
            w: add(add(sc(o.a, self.w), sc(self.b, o.w)), sc(-1, cross(self.v, o.v))),
            b: self.b * o.b + dot(self.w, o.v),
        }
    }

    /// Coordinates in the basis `1, e, v1..v3, w1..w3` where `e = (1,0;0,0)`.
    fn coords(self) -> [i64; 8] {
        [self.b, self.a - self.b, self.v[0], self.v[1], self.v[2], self.w[0], self.w[1], self.w[2]]
    }

    fn basis(i: usize) -> Zorn {
        let mut z = Zorn { a: 0, v: [0; 3], w: [0; 3], b: 0 };
        match i {
            0 => {
                z.a = 1;
                z.b = 1;
            }
            1 => z.a = 1,
            2..=4 => z.v[i - 2] = 1,
            _ => z.w[i - 5] = 1,
        }
        z
    }
}

/// The split octonions over the rationals as Zorn vector-matrices, in the
/// basis `1, e, v1, v2, v3, w1, w2, w3` with `e` the idempotent `(1,0;0,0)`.
/// All structure constants lie in {-1, 0, 1}.
pub fn split_octonions() -> StructAlgebra {
    let labels = ["1", "e", "v1", "v2", "v3", "w1", "w2", "w3"].map(String::from).to_vec();
    let mut alg = StructAlgebra::new("octonion", labels, vec![Parity::Even; 8]).unwrap();
    for i in 0..8 {
        for j in 0..8 {
            let c = Zorn::basis(i).mul(Zorn::basis(j)).coords();
            let entries: Vec<(usize, Scalar)> = c.iter().enumerate().map(|(k, &x)| (k, s(x))).collect();
            alg.set_product(i, j, &entries);
        }
    }
    alg.set_unit(Some(0));
    alg
}

/// Basis indices of the Medvedev–Shestakov superalgebra `A_n`.
struct MsBasis {
    n: usize,
}

impl MsBasis {
    fn x(&self) -> usize {
        0
    }
    fn v(&self, i: usize) -> usize {
        1 + i
    }
    fn vp(&self, i: usize) -> usize {
        debug_assert!(i >= 1);
        self.n + 1 + i
    }
    fn u(&self, i: usize) -> usize {
        2 * self.n + 2 + i
    }
    fn up(&self, i: usize) -> usize {
        3 * self.n + 2 + i
    }
    fn big_u(&self) -> usize {
        4 * self.n + 3
    }
    fn big_v(&self) -> usize {
        4 * self.n + 4
    }
    /// Index of `w_i` for the family letter `w`, or `None` if `i` is out of range.
    fn w(&self, w: char, i: i64) -> Option<usize> {
        let n = self.n as i64;
        let primed = matches!(w, 'V' | 'W');
        if i < i64::from(primed) || i > n {
            return None;
        }
        let i = i as usize;
        Some(match w {
            'v' => self.v(i),
            'V' => self.vp(i),
            'u' => self.u(i),
            _ => self.up(i),
        })
    }
}

/// Accumulates table entries, refusing to set a product twice.
struct TableBuilder {
    alg: StructAlgebra,
    set: Vec<bool>,
}

impl TableBuilder {
    fn put(&mut self, i: usize, j: usize, value: &[(usize, i64)]) {
        let n = self.alg.dim();
        assert!(!self.set[i * n + j], "product {}·{} set twice", self.alg.label(i), self.alg.label(j));
        self.set[i * n + j] = true;
        let entries: Vec<(usize, Scalar)> = value.iter().map(|&(k, c)| (k, s(c))).collect();
        self.alg.set_product(i, j, &entries);
    }
}

/// The Medvedev–Shestakov alternative superalgebra `A_n`, `n = 4k + 2`, of
/// dimension `4n + 5`, in the basis `x, v_0..v_n, v'_1..v'_n, u_0..u_n,
/// u'_1..u'_n, U, V` (labels `x v0 .. vp1 .. u0 .. up1 .. U V`).
///
/// `x` is odd, `v_i, v'_i, u_i, u'_i` have the parity of `i`, and `U, V` are
/// even. The weights `x ↦ (0,1)`, `v_i ↦ (1,i)`, `u_i ↦ (2,i)`, `U, V ↦ (3,n)`
/// are additive on the table.
pub fn medvedev_shestakov(k: usize) -> Result<StructAlgebra> {
    if k == 0 {
        return Err(Error::Table("medvedev_shestakov needs k >= 1".into()));
    }
    let n = 4 * k + 2;
    let b = MsBasis { n };
    let mut labels = vec!["x".to_string()];
    let mut parities = vec![Parity::Odd];
    let mut weights = vec![(0, 1)];
    let idx_parity = |i: usize| Parity::from_bool(i % 2 == 1);
    for (name, lo, wt) in [("v", 0, 1), ("vp", 1, 1), ("u", 0, 2), ("up", 1, 2)] {
        for i in lo..=n {
            labels.push(format!("{name}{i}"));
            parities.push(idx_parity(i));
            weights.push((wt, i as u32));
        }
    }
    labels.extend(["U".to_string(), "V".to_string()]);
    parities.extend([Parity::Even, Parity::Even]);
    weights.extend([(3, n as u32), (3, n as u32)]);
    let mut alg = StructAlgebra::new(&format!("medvedev:{k}"), labels, parities)?;
    alg.set_weights(Some(weights))?;
    let dim = alg.dim();
    let mut t = TableBuilder { alg, set: vec![false; dim * dim] };

    let e = b.v(0);
    let sgn = |i: usize| if i % 2 == 0 { 1 } else { -1 };
    t.put(e, e, &[(b.u(0), 1)]);
    for i in 1..=n {
        t.put(b.vp(i), e, &[(b.up(i), -sgn(i))]);
        t.put(b.v(i), e, &[(b.u(i), sgn(i)), (b.up(i), sgn(i))]);
        if i % 2 == 0 {
            t.put(e, b.vp(i), &[(b.u(i), -1)]);
            t.put(e, b.v(i), &[(b.up(i), -1)]);
        } else {
            t.put(e, b.vp(i), &[(b.u(i), -1), (b.up(i), -1)]);
            t.put(e, b.v(i), &[(b.u(i), 1)]);
        }
    }
    for i in 0..n {
        let even = i % 2 == 0;
        for w in ['v', 'V', 'u', 'W'] {
            if let (Some(a), Some(c)) = (b.w(w, i as i64), b.w(w, i as i64 + 1)) {
                t.put(a, b.x(), &[(c, 1)]);
            }
        }
        // x·v_i, x·u_i
        for (plain, primed) in [('v', 'V'), ('u', 'W')] {
            let (next, next_p) = (b.w(plain, i as i64 + 1).unwrap(), b.w(primed, i as i64 + 1).unwrap());
            let cur = b.w(plain, i as i64).unwrap();
            if even {
                t.put(b.x(), cur, &[(next_p, 1)]);
            } else {
                t.put(b.x(), cur, &[(next, 1), (next_p, 1)]);
            }
            if let Some(cur_p) = b.w(primed, i as i64) {
                if even {
                    t.put(b.x(), cur_p, &[(next, -1), (next_p, -1)]);
                } else {
                    t.put(b.x(), cur_p, &[(next, -1)]);
                }
            }
        }
    }

    // The U, V block: for j = 0..n/2, with p = n - 2j, q = 2j.
    let (bu, bv) = (b.big_u(), b.big_v());
    for j in 0..=(n / 2) as i64 {
        let sj = if j % 2 == 0 { 1 } else { -1 };
        let (p, q) = (n as i64 - 2 * j, 2 * j);
        let mut put = |l: (char, i64), r: (char, i64), value: &[(usize, i64)]| {
            if let (Some(a), Some(c)) = (b.w(l.0, l.1), b.w(r.0, r.1)) {
                t.put(a, c, value);
            }
        };
        let uu = [(bu, sj)];
        let neg_uu = [(bu, -sj)];
        put(('u', p), ('v', q), &uu);
        put(('v', q + 1), ('u', p - 1), &uu);
        put(('v', q), ('W', p), &uu);
        put(('W', p - 1), ('v', q + 1), &neg_uu);
        put(('W', p), ('V', q), &uu);
        put(('V', q + 1), ('W', p - 1), &uu);

        let vv = [(bv, sj)];
        let neg_vv = [(bv, -sj)];
        put(('v', q), ('u', p), &vv);
        put(('u', p - 1), ('v', q + 1), &neg_vv);
        put(('V', q + 1), ('u', p - 1), &vv);
        put(('u', p), ('V', q), &vv);
        put(('V', q), ('W', p), &vv);
        put(('W', p - 1), ('V', q + 1), &neg_vv);

        let uv = [(bu, -sj), (bv, -sj)];
        let neg_uv = [(bu, sj), (bv, sj)];
        put(('W', p), ('v', q), &uv);
        put(('u', p - 1), ('V', q + 1), &neg_uv);
        put(('v', q + 1), ('W', p - 1), &uv);
        put(('V', q), ('u', p), &uv);
    }
    Ok(t.alg)
}

/// The Grassmann algebra on `r` anticommuting odd generators `g1..gr`, with
/// basis the increasing monomials (indexed by bitmask) and unit `1`.
pub fn grassmann(r: usize) -> StructAlgebra {
    assert!(r <= 10, "grassmann rank too large");
    let dim = 1usize << r;
    let label = |m: usize| {
        if m == 0 {
            "1".to_string()
        } else {
            (0..r).filter(|i| m >> i & 1 == 1).map(|i| format!("g{}", i + 1)).collect::<Vec<_>>().join("")
        }
    };
    let labels = (0..dim).map(label).collect();
    let parities = (0..dim).map(|m| Parity::from_bool(m.count_ones() % 2 == 1)).collect();
    let mut alg = StructAlgebra::new(&format!("grassmann:{r}"), labels, parities).unwrap();
    for a in 0..dim {
        for b in 0..dim {
            if a & b != 0 {
                continue;
            }
            // transpositions needed to sort: pairs (i in a, j in b) with i > j
            let swaps: u32 = (0..r).filter(|j| b >> j & 1 == 1).map(|j| (a >> (j + 1)).count_ones()).sum();
            alg.set_product(a, b, &[(a | b, Scalar::sign(swaps % 2 == 1))]);
        }
    }
    alg.set_unit(Some(0));
    alg
}

/// The graded tensor product `G ⊗ A`, with basis `g ⊗ a` labelled `g.a` and
/// `(g⊗a)(g'⊗a') = (-1)^{|a||g'|} gg' ⊗ aa'`.
pub fn tensor(g: &StructAlgebra, a: &StructAlgebra) -> StructAlgebra {
    let (dg, da) = (g.dim(), a.dim());
    let ix = |i: usize, j: usize| i * da + j;
    let mut labels = Vec::with_capacity(dg * da);
    let mut parities = Vec::with_capacity(dg * da);
    for i in 0..dg {
        for j in 0..da {
            labels.push(format!("{}.{}", g.label(i), a.label(j)));
            parities.push(g.parity(i) + a.parity(j));
        }
    }
    let mut t = StructAlgebra::new(&format!("{}*{}", g.name(), a.name()), labels, parities).unwrap();
    for i in 0..dg {
        for j in 0..da {
            for i2 in 0..dg {
                let gg = g.product(i, i2);
                if gg.is_empty() {
                    continue;
                }
                for j2 in 0..da {
                    let aa = a.product(j, j2);
                    if aa.is_empty() {
                        continue;
                    }
                    let sign = Scalar::sign(a.parity(j).is_odd() && g.parity(i2).is_odd());
                    let mut entries = Vec::new();
                    for (k, c) in gg {
                        for (l, d) in aa {
                            entries.push((ix(*k as usize, *l as usize), &(c * d) * &sign));
                        }
                    }
                    t.set_product(ix(i, j), ix(i2, j2), &entries);
                }
            }
        }
    }
    if let (Some(u), Some(v)) = (g.unit(), a.unit()) {
        t.set_unit(Some(ix(u, v)));
    }
    t
}

/// A named family of algebras, selectable as `name` or `name:param`.
pub trait AlgebraFamily: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn default_param(&self) -> Option<usize>;
    fn build(&self, param: Option<usize>) -> Result<StructAlgebra>;
}

struct Octonions;
struct MedvedevShestakov;
struct Grassmann;
struct Envelope;

impl AlgebraFamily for Octonions {
    fn name(&self) -> &'static str {
        "octonion"
    }
    fn summary(&self) -> &'static str {
        "split octonions (Zorn vector-matrices), dimension 8"
    }
    fn default_param(&self) -> Option<usize> {
        None
    }
    fn build(&self, param: Option<usize>) -> Result<StructAlgebra> {
        match param {
            None => Ok(split_octonions()),
            Some(_) => Err(Error::UnknownAlgebra("octonion takes no parameter".into())),
        }
    }
}

impl AlgebraFamily for MedvedevShestakov {
    fn name(&self) -> &'static str {
        "medvedev"
    }
    fn summary(&self) -> &'static str {
        "Medvedev-Shestakov superalgebra A_n, n = 4k+2 (param k >= 1)"
    }
    fn default_param(&self) -> Option<usize> {
        Some(1)
    }
    fn build(&self, param: Option<usize>) -> Result<StructAlgebra> {
        medvedev_shestakov(param.unwrap_or(1))
    }
}

impl AlgebraFamily for Grassmann {
    fn name(&self) -> &'static str {
        "grassmann"
    }
    fn summary(&self) -> &'static str {
        "Grassmann algebra of rank r (param r, 1..=10)"
    }
    fn default_param(&self) -> Option<usize> {
        Some(4)
    }
    fn build(&self, param: Option<usize>) -> Result<StructAlgebra> {
        match param.unwrap_or(4) {
            r @ 1..=10 => Ok(grassmann(r)),
            r => Err(Error::UnknownAlgebra(format!("grassmann rank {r} out of range 1..=10"))),
        }
    }
}

impl AlgebraFamily for Envelope {
    fn name(&self) -> &'static str {
        "envelope"
    }
    fn summary(&self) -> &'static str {
        "Grassmann algebra of rank r tensored with the split octonions (param r, 1..=6)"
    }
    fn default_param(&self) -> Option<usize> {
        Some(4)
    }
    fn build(&self, param: Option<usize>) -> Result<StructAlgebra> {
        match param.unwrap_or(4) {
            r @ 1..=6 => Ok(tensor(&grassmann(r), &split_octonions())),
            r => Err(Error::UnknownAlgebra(format!("envelope rank {r} out of range 1..=6"))),
        }
    }
}

/// All registered families, in listing order.
pub fn families() -> Vec<Box<dyn AlgebraFamily>> {
    vec![Box::new(Octonions), Box::new(MedvedevShestakov), Box::new(Grassmann), Box::new(Envelope)]
}

/// Builds the algebra named by a selector such as `octonion` or `medvedev:2`.
pub fn select(selector: &str) -> Result<StructAlgebra> {
    let (name, param) = match selector.split_once(':') {
        Some((n, p)) => {
            let p = p.trim().parse::<usize>().map_err(|_| Error::UnknownAlgebra(selector.to_string()))?;
            (n.trim(), Some(p))
        }
        None => (selector.trim(), None),
    };
    families()
        .into_iter()
        .find(|f| f.name() == name)
        .ok_or_else(|| Error::UnknownAlgebra(selector.to_string()))?
        .build(param)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{evaluate, random_assignment, Element};
    use crate::terms::{parse, GenSym, Parities};

    #[test]
    fn octonions_are_alternative_with_unit() {
        let o = split_octonions();
        o.validate().unwrap();
        assert!(o.check_super_alternative());
        assert!(!o.is_graded());
        for a in &o.table {
            for (_, c) in a {
                assert!(c.abs().is_one());
            }
        }
    }

    #[test]
    fn octonion_moufang_and_nonassociativity() {
        let o = split_octonions();
        let vars: Vec<GenSym> = ["x", "y", "z"].iter().map(|n| GenSym::even(n)).collect();
        let moufang = parse("((x y) z) y - x (y (z y))", &Parities::default()).unwrap();
        let assoc = parse("(x,y,z)", &Parities::default()).unwrap();
        let mut nonzero = 0;
        for seed in 0..20 {
            let asg = random_assignment(seed, &vars, &o, 7);
            assert!(evaluate(&moufang, &asg, &o).unwrap().is_zero());
            nonzero += usize::from(!evaluate(&assoc, &asg, &o).unwrap().is_zero());
            let aab = parse("(x,x,y)", &Parities::default()).unwrap();
            assert!(evaluate(&aab, &asg, &o).unwrap().is_zero());
        }
        assert_eq!(nonzero, 20);
    }

    #[test]
    fn medvedev_shestakov_basics() {
        let a = medvedev_shestakov(1).unwrap();
        assert_eq!(a.dim(), 29);
        a.validate().unwrap();
        let (vp1, e, up1, x) = (a.index_of("vp1").unwrap(), a.index_of("v0").unwrap(), a.index_of("up1").unwrap(), 0);
        assert_eq!(a.mul(&a.basis_element(vp1), &a.basis_element(e)), a.basis_element(up1));
        assert!(a.mul(&a.basis_element(x), &a.basis_element(x)).is_zero());
        assert!(a.check_super_alternative());
        assert_eq!(medvedev_shestakov(2).unwrap().dim(), 45);
        assert!(medvedev_shestakov(0).is_err());
    }

    #[test]
    fn medvedev_shestakov_commutator() {
        let a = medvedev_shestakov(1).unwrap();
        let e = parse("[e,x]", &Parities::with_odd(&["x"])).unwrap();
        let asg = crate::algebras::Assignment::new()
            .with("e", a.element(&[("v0", 1)]).unwrap())
            .with("x", a.element(&[("x", 1)]).unwrap());
        assert_eq!(a.format(&evaluate(&e, &asg, &a).unwrap()), "v1 - vp1");
    }

    #[test]
    fn mutation_breaks_alternativity() {
        let mut a = medvedev_shestakov(1).unwrap();
        let (v1, x, v2) = (a.index_of("v1").unwrap(), 0, a.index_of("v2").unwrap());
        a.set_product(v1, x, &[(v2, Scalar::from_int(2))]);
        assert!(!a.check_super_alternative());
        let mut o = split_octonions();
        o.set_product(2, 5, &[(1, Scalar::from_int(2))]);
        assert!(!o.check_super_alternative());
    }

    #[test]
    fn grassmann_basics() {
        let g = grassmann(3);
        g.validate().unwrap();
        let (g1, g2) = (g.basis_element(1), g.basis_element(2));
        assert_eq!(g.mul(&g1, &g2), g.mul(&g2, &g1).scale(&Scalar::from_int(-1)));
        assert!(g.mul(&g1, &g1).is_zero());
        let top = g.mul(&g.mul(&g1, &g2), &g.basis_element(4));
        assert_eq!(g.format(&top), "g1g2g3");
        assert!(g.check_super_alternative());
    }

    #[test]
    fn envelope_is_super_alternative() {
        let t = tensor(&grassmann(2), &split_octonions());
        t.validate().unwrap();
        assert_eq!(t.dim(), 32);
        assert!(t.check_super_alternative());
        let one = t.basis_element(t.unit().unwrap());
        let x = Element::basis(32, 9);
        assert_eq!(t.mul(&one, &x), x);
    }

    #[test]
    fn registry() {
        assert_eq!(select("octonion").unwrap().dim(), 8);
        assert_eq!(select("medvedev:1").unwrap().dim(), 29);
        assert_eq!(select("medvedev").unwrap().dim(), 29);
        assert_eq!(select("grassmann:3").unwrap().dim(), 8);
        assert!(matches!(select("sedenion"), Err(Error::UnknownAlgebra(_))));
        assert!(matches!(select("grassmann:x"), Err(Error::UnknownAlgebra(_))));
        let names: Vec<_> = families().iter().map(|f| f.name()).collect();
        assert_eq!(names, ["octonion", "medvedev", "grassmann", "envelope"]);
    }
}
