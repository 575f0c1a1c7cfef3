//! Contravariant functors from a finite category to F_p vector spaces.
//!
//! For a morphism `f: a → b` the matrix `M(f)` has shape
//! `dim M(b) × dim M(a)` and acts on row vectors, so functoriality reads
//! `M(fg) = M(g)·M(f)` with `fg` = "first `f`, then `g`".

use crate::error::{Error, Result};
use crate::fpla::{Echelon, FpMatrix, QuotientCoords, Subspace};
use crate::fusion::{Ambient, SubId};
use crate::orbitcat::{FiniteCategory, OrbitCategory};
use crate::par;
use std::collections::HashMap;
use std::sync::Arc;

pub const DEFAULT_BAR_BOUND: usize = 64;
const FUNCTORIALITY_CHECK_LIMIT: usize = 200_000;

#[derive(Debug, Clone)]
pub struct FpFunctor {
    pub cat: Arc<FiniteCategory>,
    pub p: u32,
    dims: Vec<usize>,
    mats: Vec<FpMatrix>,
}

impl FpFunctor {
    /// Validates shapes, `M(id) = 1` and `M(fg) = M(g)·M(f)`.
    pub fn new(
        cat: Arc<FiniteCategory>,
        p: u32,
        dims: Vec<usize>,
        mats: Vec<FpMatrix>,
    ) -> Result<Self> {
        if dims.len() != cat.num_objects() || mats.len() != cat.num_morphisms() {
            return Err(Error::NotAFunctor(format!(
                "{} dimensions and {} matrices for {} objects and {} morphisms",
                dims.len(),
                mats.len(),
                cat.num_objects(),
                cat.num_morphisms()
            )));
        }
        for (f, m) in mats.iter().enumerate() {
            let mi = cat.mor(f);
            if m.p != p || m.rows != dims[mi.dst] || m.cols != dims[mi.src] {
                return Err(Error::NotAFunctor(format!(
                    "matrix of morphism {f} has shape {}x{}, expected {}x{}",
                    m.rows, m.cols, dims[mi.dst], dims[mi.src]
                )));
            }
        }
        let fun = Self { cat, p, dims, mats };
        fun.validate()?;
        Ok(fun)
    }

    fn validate(&self) -> Result<()> {
        let cat = &self.cat;
        for a in 0..cat.num_objects() {
            if self.mats[cat.identity(a)] != FpMatrix::identity(self.p, self.dims[a]) {
                return Err(Error::NotAFunctor(format!(
                    "identity of object {} is not sent to the identity",
                    cat.label(a)
                )));
            }
        }
        let mut checked = 0usize;
        for f in 0..cat.num_morphisms() {
            for &g in cat.out_of(cat.mor(f).dst) {
                if checked >= FUNCTORIALITY_CHECK_LIMIT {
                    return Ok(());
                }
                checked += 1;
                let fg = cat.compose(f, g);
                if self.mats[fg] != self.mats[g].mul(&self.mats[f])? {
                    return Err(Error::NotAFunctor(format!(
                        "M({f} then {g}) differs from M({g})·M({f})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn constant(cat: Arc<FiniteCategory>, p: u32) -> Self {
        let dims = vec![1; cat.num_objects()];
        let mats = (0..cat.num_morphisms())
            .map(|_| FpMatrix::identity(p, 1))
            .collect();
        Self { cat, p, dims, mats }
    }

    pub fn zero(cat: Arc<FiniteCategory>, p: u32) -> Self {
        let dims = vec![0; cat.num_objects()];
        let mats = (0..cat.num_morphisms())
            .map(|_| FpMatrix::zeros(p, 0, 0))
            .collect();
        Self { cat, p, dims, mats }
    }

    pub fn dim(&self, a: usize) -> usize {
        self.dims[a]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn matrix(&self, f: usize) -> &FpMatrix {
        &self.mats[f]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }
}

/// Natural transformations `A ⇒ B`, as a subspace of `⊕_P Hom(A(P), B(P))`
/// with each component flattened row-major in object order.
pub fn nat_space(a: &FpFunctor, b: &FpFunctor) -> Result<Subspace> {
    if !Arc::ptr_eq(&a.cat, &b.cat) || a.p != b.p {
        return Err(Error::CategoryMismatch(
            "functors over different categories or primes".into(),
        ));
    }
    let cat = &a.cat;
    let p = a.p;
    let mut offset = vec![0usize; cat.num_objects() + 1];
    for x in 0..cat.num_objects() {
        offset[x + 1] = offset[x] + a.dim(x) * b.dim(x);
    }
    let width = offset[cat.num_objects()];
    let mut eqs = Echelon::new(p, width);
    for f in 0..cat.num_morphisms() {
        if cat.is_identity(f) {
            continue;
        }
        let mi = cat.mor(f);
        let (pp, q) = (mi.src, mi.dst);
        let (af, bf) = (a.matrix(f), b.matrix(f));
        // η_Q·B(f) = A(f)·η_P, entry (r, c) with r < a_Q, c < b_P
        for r in 0..a.dim(q) {
            for c in 0..b.dim(pp) {
                let mut v = vec![0u8; width];
                for k in 0..b.dim(q) {
                    let x = bf.get(k, c);
                    if x != 0 {
                        let i = offset[q] + r * b.dim(q) + k;
                        v[i] = ((v[i] as u32 + x as u32) % p) as u8;
                    }
                }
                for k in 0..a.dim(pp) {
                    let x = af.get(r, k);
                    if x != 0 {
                        let i = offset[pp] + k * b.dim(pp) + c;
                        v[i] = ((v[i] as u32 + (p - x as u32)) % p) as u8;
                    }
                }
                if v.iter().any(|&x| x != 0) {
                    eqs.insert(v);
                }
            }
        }
    }
    Ok(Subspace::span(p, width, eqs.null_space()))
}

/// `P/Φ(P)` for a subgroup of the ambient group: minimal generators and the
/// coordinates of every element modulo the Frattini subgroup.
#[derive(Debug, Clone)]
pub struct FrattiniData {
    pub sub: SubId,
    pub gens: Vec<u16>,
    pub frattini: SubId,
    coords: HashMap<u16, Vec<u8>>,
}

impl FrattiniData {
    pub fn new(amb: &Ambient, sub: SubId) -> Self {
        let p = amb.p;
        let s = amb.sub(sub);
        let mut rel = Vec::new();
        for (i, &a) in s.gens.iter().enumerate() {
            rel.push(amb.pow(a, p as usize));
            for &b in &s.gens[i + 1..] {
                let c = amb.mul(amb.mul(amb.inv(a), amb.inv(b)), amb.mul(a, b));
                rel.push(c);
            }
        }
        let frattini = normal_closure(amb, sub, rel);
        let mut gens: Vec<u16> = Vec::new();
        let mut cur = frattini;
        for &x in &s.elements {
            if cur == sub {
                break;
            }
            if amb.sub(cur).contains(x) {
                continue;
            }
            gens.push(x);
            let mut g = amb.sub(frattini).gens.clone();
            g.extend_from_slice(&gens);
            cur = amb.generated(&g);
        }
        let d = gens.len();
        let phi = &amb.sub(frattini).elements;
        let mut coords = HashMap::new();
        let total = (p as usize).pow(d as u32);
        for code in 0..total {
            let mut c = vec![0u8; d];
            let mut rest = code;
            let mut y = amb.identity();
            for i in 0..d {
                c[i] = (rest % p as usize) as u8;
                rest /= p as usize;
                y = amb.mul(y, amb.pow(gens[i], c[i] as usize));
            }
            for &f in phi {
                coords.insert(amb.mul(y, f), c.clone());
            }
        }
        debug_assert_eq!(coords.len(), s.order);
        Self {
            sub,
            gens,
            frattini,
            coords,
        }
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn coord(&self, x: u16) -> &[u8] {
        &self.coords[&x]
    }
}

fn normal_closure(amb: &Ambient, sub: SubId, mut gens: Vec<u16>) -> SubId {
    loop {
        let n = amb.generated(&gens);
        let s = amb.sub(sub);
        let extra: Vec<u16> = amb
            .sub(n)
            .gens
            .iter()
            .flat_map(|&x| s.gens.iter().map(move |&g| (x, g)))
            .map(|(x, g)| amb.conj(x, g))
            .filter(|&y| !amb.sub(n).contains(y))
            .collect();
        if extra.is_empty() {
            return n;
        }
        gens = amb.sub(n).gens.clone();
        gens.extend(extra);
    }
}

/// `H²(P; F_p)` through cocycles normalized and reduced to their values
/// `u(x, i) = f(x, g_i)` on a generating set `g_i`.
#[derive(Debug, Clone)]
pub struct H2Data {
    pub sub: SubId,
    pub gens: Vec<u16>,
    /// `tables[k][a * |P| + y]` is the value of the `k`-th basis cocycle on
    /// the positions `(a, y)`.
    tables: Vec<Vec<u8>>,
    coords: QuotientCoords,
    order: usize,
}

impl H2Data {
    pub fn new(amb: &Ambient, sub: SubId, gens: &[u16], bound: usize) -> Result<Self> {
        let s = amb.sub(sub);
        let n = s.order;
        if n > bound {
            return Err(Error::BarBoundExceeded {
                subgroup: amb.describe(sub),
                order: n,
                bound,
            });
        }
        let p = amb.p;
        let d = gens.len();
        let width = n * d;
        let pos = |x: u16| s.pos(x).unwrap();
        let var = |x: usize, i: usize| x * d + i;
        let e = pos(amb.identity());
        // spanning tree over right multiplication by generators
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut order = vec![e];
        let mut seen = vec![false; n];
        seen[e] = true;
        let mut head = 0;
        while head < order.len() {
            let b = order[head];
            head += 1;
            for (i, &g) in gens.iter().enumerate() {
                let y = pos(amb.mul(s.elements[b], g));
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((b, i));
                    order.push(y);
                }
            }
        }
        let mul = |a: usize, b: usize| pos(amb.mul(s.elements[a], s.elements[b]));
        // forms[a][y]: f(a, y) as a linear form in u
        let mut forms: Vec<Vec<Vec<u8>>> = vec![vec![Vec::new(); n]; n];
        let add = |v: &mut [u8], i: usize, c: u32| v[i] = ((v[i] as u32 + c) % p) as u8;
        for a in 0..n {
            forms[a][e] = vec![0u8; width];
            for &y in &order[1..] {
                let (b, i) = parent[y].unwrap();
                let mut v = forms[a][b].clone();
                add(&mut v, var(mul(a, b), i), 1);
                add(&mut v, var(b, i), p - 1);
                forms[a][y] = v;
            }
        }
        let mut eqs = Echelon::new(p, width);
        for i in 0..d {
            let mut v = vec![0u8; width];
            v[var(e, i)] = 1;
            eqs.insert(v);
        }
        for b in 0..n {
            for (i, &g) in gens.iter().enumerate() {
                let y = pos(amb.mul(s.elements[b], g));
                if parent[y] == Some((b, i)) {
                    continue;
                }
                for a in 0..n {
                    let mut v = forms[a][y].clone();
                    for (x, &z) in v.iter_mut().zip(&forms[a][b]) {
                        *x = ((*x as u32 + p - z as u32) % p) as u8;
                    }
                    add(&mut v, var(mul(a, b), i), p - 1);
                    add(&mut v, var(b, i), 1);
                    if v.iter().any(|&x| x != 0) {
                        eqs.insert(v);
                    }
                }
            }
        }
        let cocycles = eqs.null_space();
        let mut bnd = Vec::new();
        for z in (0..n).filter(|&z| z != e) {
            let mut v = vec![0u8; width];
            for x in 0..n {
                for (i, &g) in gens.iter().enumerate() {
                    let gi = pos(g);
                    let mut c = 0u32;
                    if gi == z {
                        c += 1;
                    }
                    if mul(x, gi) == z {
                        c += p - 1;
                    }
                    if x == z {
                        c += 1;
                    }
                    v[var(x, i)] = (c % p) as u8;
                }
            }
            bnd.push(v);
        }
        let b_space = Subspace::span(p, width, bnd);
        let mut e_b = b_space.echelon();
        let reps: Vec<Vec<u8>> = cocycles
            .into_iter()
            .filter(|z| e_b.insert(z.clone()))
            .collect();
        let coords = QuotientCoords::new(&b_space, &reps)?;
        let tables = reps
            .iter()
            .map(|u| {
                let mut t = vec![0u8; n * n];
                for a in 0..n {
                    for y in 0..n {
                        let dot: u32 = forms[a][y]
                            .iter()
                            .zip(u)
                            .map(|(&f, &x)| f as u32 * x as u32)
                            .sum();
                        t[a * n + y] = (dot % p) as u8;
                    }
                }
                t
            })
            .collect();
        Ok(Self {
            sub,
            gens: gens.to_vec(),
            tables,
            coords,
            order: n,
        })
    }

    pub fn dim(&self) -> usize {
        self.tables.len()
    }

    /// Value of the `k`-th basis cocycle at `(a, y)` (ambient indices).
    pub fn value(&self, amb: &Ambient, k: usize, a: u16, y: u16) -> u8 {
        let s = amb.sub(self.sub);
        self.tables[k][s.pos(a).unwrap() * self.order + s.pos(y).unwrap()]
    }
}

/// Per-object data of `H^j(−; F_p)`.
#[derive(Debug, Clone)]
pub enum CohomologyData {
    H0,
    H1(FrattiniData),
    H2(FrattiniData, H2Data),
}

impl CohomologyData {
    pub fn new(amb: &Ambient, sub: SubId, j: usize, bar_bound: usize) -> Result<Self> {
        match j {
            0 => Ok(Self::H0),
            1 => Ok(Self::H1(FrattiniData::new(amb, sub))),
            2 => {
                let fr = FrattiniData::new(amb, sub);
                let h2 = H2Data::new(amb, sub, &fr.gens.clone(), bar_bound)?;
                Ok(Self::H2(fr, h2))
            }
            _ => Err(Error::DegreeUnsupported(j)),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::H0 => 1,
            Self::H1(f) => f.rank(),
            Self::H2(_, h) => h.dim(),
        }
    }

    /// Matrix of `φ^*: H^j(Q) → H^j(P)` for `φ: P → Q` given as an image
    /// table on the elements of `P`.
    pub fn induced(
        amb: &Ambient,
        p: u32,
        src: &Self,
        dst: &Self,
        table: &[u16],
    ) -> Result<FpMatrix> {
        let sp = |data: &Self| match data {
            Self::H1(f) => f.sub,
            Self::H2(f, _) => f.sub,
            Self::H0 => 0,
        };
        let image = |x: u16| table[amb.sub(sp(src)).pos(x).unwrap()];
        match (src, dst) {
            (Self::H0, Self::H0) => Ok(FpMatrix::identity(p, 1)),
            (Self::H1(fp), Self::H1(fq)) => {
                let mut m = FpMatrix::zeros(p, fq.rank(), fp.rank());
                for (i, &g) in fp.gens.iter().enumerate() {
                    let c = fq.coord(image(g));
                    for (j, &x) in c.iter().enumerate() {
                        m.set(j, i, x);
                    }
                }
                Ok(m)
            }
            (Self::H2(fp, hp), Self::H2(_, hq)) => {
                let ps = amb.sub(fp.sub);
                let d = hp.gens.len();
                let mut m = FpMatrix::zeros(p, hq.dim(), hp.dim());
                for k in 0..hq.dim() {
                    let mut u = vec![0u8; ps.order * d];
                    for (xi, &x) in ps.elements.iter().enumerate() {
                        for (i, &g) in hp.gens.iter().enumerate() {
                            u[xi * d + i] = hq.value(amb, k, image(x), image(g));
                        }
                    }
                    let c = hp.coords.coords(&u).ok_or_else(|| {
                        Error::InvariantViolated(
                            "pulled-back cocycle left the cocycle space".into(),
                        )
                    })?;
                    for (j, &x) in c.iter().enumerate() {
                        m.set(k, j, x);
                    }
                }
                Ok(m)
            }
            _ => Err(Error::InvariantViolated("mixed cohomology degrees".into())),
        }
    }
}

/// `H^j(−; F_p)` on an orbit category, `j ≤ 2`. Inner automorphisms are
/// checked to act trivially before the matrices are attached to orbit
/// morphisms.
pub fn cohomology_functor(oc: &OrbitCategory, j: usize, bar_bound: usize) -> Result<FpFunctor> {
    if j > 2 {
        return Err(Error::DegreeUnsupported(j));
    }
    let amb = oc.fusion.ambient().clone();
    let p = amb.p;
    let data: Vec<CohomologyData> =
        par::map(&oc.objects, |&q| CohomologyData::new(&amb, q, j, bar_bound))
            .into_iter()
            .collect::<Result<_>>()?;
    for (a, &q) in oc.objects.iter().enumerate() {
        for &x in &amb.sub(q).gens {
            let m = CohomologyData::induced(&amb, p, &data[a], &data[a], &amb.conj_table(q, x))?;
            if m != FpMatrix::identity(p, data[a].dim()) {
                return Err(Error::DescentFailure(format!(
                    "conjugation by an element of {} acts nontrivially on H^{j}",
                    amb.describe(q)
                )));
            }
        }
    }
    let cat = oc.cat.clone();
    let ids: Vec<usize> = (0..cat.num_morphisms()).collect();
    let mats: Vec<FpMatrix> = par::map(&ids, |&f| {
        let mi = cat.mor(f);
        CohomologyData::induced(&amb, p, &data[mi.src], &data[mi.dst], &oc.reps[f])
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let dims = data.iter().map(|d| d.dim()).collect();
    FpFunctor::new(cat, p, dims, mats)
}
