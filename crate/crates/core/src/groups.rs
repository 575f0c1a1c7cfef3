//! Finite groups held as complete, canonically sorted element lists.
//!
//! Elements are either permutations (0-based image arrays) or invertible
//! square matrices over F_p (row-major). All actions are right actions:
//! for permutations `(i)(xy) = ((i)x)y`, and matrices act on row vectors,
//! so the product is the ordinary matrix product. Conjugation is
//! `x^g = g⁻¹ x g`.

use crate::error::{Error, Result};
use crate::fpla::{inv_mod, is_prime};
use serde::Serialize;
use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

pub type Elem = Box<[u16]>;

pub const DEFAULT_ORDER_BOUND: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Representation {
    Permutation { degree: usize },
    Matrix { dim: usize, p: u32 },
}

impl Representation {
    pub fn identity(&self) -> Elem {
        match *self {
            Representation::Permutation { degree } => (0..degree as u16).collect(),
            Representation::Matrix { dim, .. } => {
                let mut m = vec![0u16; dim * dim];
                for i in 0..dim {
                    m[i * dim + i] = 1;
                }
                m.into_boxed_slice()
            }
        }
    }

    pub fn mul(&self, a: &[u16], b: &[u16]) -> Elem {
        match *self {
            Representation::Permutation { .. } => a.iter().map(|&i| b[i as usize]).collect(),
            Representation::Matrix { dim, p } => {
                let mut out = vec![0u16; dim * dim];
                for r in 0..dim {
                    for c in 0..dim {
                        let mut acc = 0u32;
                        for k in 0..dim {
                            acc += a[r * dim + k] as u32 * b[k * dim + c] as u32;
                        }
                        out[r * dim + c] = (acc % p) as u16;
                    }
                }
                out.into_boxed_slice()
            }
        }
    }

    pub fn inv(&self, a: &[u16]) -> Elem {
        match *self {
            Representation::Permutation { degree } => {
                let mut out = vec![0u16; degree];
                for (i, &x) in a.iter().enumerate() {
                    out[x as usize] = i as u16;
                }
                out.into_boxed_slice()
            }
            Representation::Matrix { dim, p } => {
                matrix_inverse(dim, p, a).expect("group element must be invertible")
            }
        }
    }

    pub fn validate(&self, a: &[u16]) -> Result<()> {
        match *self {
            Representation::Permutation { degree } => {
                if a.len() != degree {
                    return Err(Error::InvalidGroup(format!(
                        "permutation of length {} in degree {degree}",
                        a.len()
                    )));
                }
                let mut seen = vec![false; degree];
                for &x in a {
                    if x as usize >= degree || seen[x as usize] {
                        return Err(Error::InvalidGroup(format!("{a:?} is not a permutation")));
                    }
                    seen[x as usize] = true;
                }
                Ok(())
            }
            Representation::Matrix { dim, p } => {
                if !is_prime(p) || p > 251 {
                    return Err(Error::InvalidGroup(format!(
                        "modulus {p} is not a supported prime"
                    )));
                }
                if a.len() != dim * dim || a.iter().any(|&x| x as u32 >= p) {
                    return Err(Error::InvalidGroup(format!(
                        "matrix data of length {} is not a {dim}x{dim} matrix mod {p}",
                        a.len()
                    )));
                }
                if matrix_inverse(dim, p, a).is_none() {
                    return Err(Error::InvalidGroup("matrix is singular".into()));
                }
                Ok(())
            }
        }
    }
}

fn matrix_inverse(dim: usize, p: u32, a: &[u16]) -> Option<Elem> {
    let w = 2 * dim;
    let mut m: Vec<Vec<u32>> = (0..dim)
        .map(|r| {
            let mut row = vec![0u32; w];
            for c in 0..dim {
                row[c] = a[r * dim + c] as u32;
            }
            row[dim + r] = 1;
            row
        })
        .collect();
    for col in 0..dim {
        let piv = (col..dim).find(|&r| m[r][col] % p != 0)?;
        m.swap(col, piv);
        let s = inv_mod(m[col][col], p);
        for x in m[col].iter_mut() {
            *x = *x * s % p;
        }
        for r in 0..dim {
            if r != col && m[r][col] != 0 {
                let f = p - m[r][col];
                for c in 0..w {
                    m[r][c] = (m[r][c] + f * m[col][c]) % p;
                }
            }
        }
    }
    Some(
        (0..dim)
            .flat_map(|r| (0..dim).map(move |c| (r, c)))
            .map(|(r, c)| m[r][dim + c] as u16)
            .collect(),
    )
}

/// A finite group with its full, lexicographically sorted element list.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    rep: Representation,
    gens: Vec<Elem>,
    elements: Vec<Elem>,
    index: HashMap<Elem, u32>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep && self.elements == other.elements
    }
}
impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Closes `gens` under multiplication. Fails rather than truncating once
    /// more than `bound` elements have been found.
    pub fn generate(rep: Representation, gens: Vec<Elem>, bound: usize) -> Result<Self> {
        for g in &gens {
            rep.validate(g)?;
        }
        let id = rep.identity();
        let mut gens: Vec<Elem> = gens.into_iter().filter(|g| *g != id).collect();
        let mut seen_gen = HashSet::new();
        gens.retain(|g| seen_gen.insert(g.clone()));
        let mut set: HashSet<Elem> = HashSet::new();
        set.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = rep.mul(&x, g);
                if !set.contains(&y) {
                    if set.len() >= bound {
                        return Err(Error::OrderBoundExceeded {
                            what: format!("group generated by {} elements", gens.len()),
                            bound,
                        });
                    }
                    set.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Elem> = set.into_iter().collect();
        elements.sort();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        Ok(Self {
            rep,
            gens,
            elements,
            index,
        })
    }

    pub fn symmetric(n: usize) -> Self {
        let rep = Representation::Permutation { degree: n };
        let mut gens = Vec::new();
        if n >= 2 {
            let cycle: Elem = (0..n as u16).map(|i| (i + 1) % n as u16).collect();
            let mut t: Vec<u16> = (0..n as u16).collect();
            t.swap(0, 1);
            gens.push(cycle);
            gens.push(t.into_boxed_slice());
        }
        Self::generate(rep, gens, DEFAULT_ORDER_BOUND).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        let rep = Representation::Permutation { degree: n };
        let cycle: Elem = (0..n as u16).map(|i| (i + 1) % n as u16).collect();
        Self::generate(rep, vec![cycle], DEFAULT_ORDER_BOUND).unwrap()
    }

    /// Dihedral group of order `2n` acting on an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        let rep = Representation::Permutation { degree: n };
        let rot: Elem = (0..n as u16).map(|i| (i + 1) % n as u16).collect();
        let refl: Elem = (0..n as u16).map(|i| (n as u16 - i) % n as u16).collect();
        Self::generate(rep, vec![rot, refl], DEFAULT_ORDER_BOUND).unwrap()
    }

    /// Permutation group from 1-based one-line image arrays.
    pub fn from_one_line(degree: usize, gens: &[Vec<usize>]) -> Result<Self> {
        let rep = Representation::Permutation { degree };
        let gens = gens
            .iter()
            .map(|g| perm_from_one_line(degree, g))
            .collect::<Result<Vec<_>>>()?;
        Self::generate(rep, gens, DEFAULT_ORDER_BOUND)
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> Elem {
        self.rep.identity()
    }

    pub fn index_of(&self, x: &[u16]) -> Option<usize> {
        self.index.get(x).map(|&i| i as usize)
    }

    pub fn contains(&self, x: &[u16]) -> bool {
        self.index.contains_key(x)
    }

    pub fn mul(&self, a: &[u16], b: &[u16]) -> Elem {
        self.rep.mul(a, b)
    }

    pub fn inv(&self, a: &[u16]) -> Elem {
        self.rep.inv(a)
    }

    /// `g⁻¹ x g`
    pub fn conj(&self, x: &[u16], g: &[u16]) -> Elem {
        self.rep.mul(&self.rep.mul(&self.rep.inv(g), x), g)
    }

    pub fn pow(&self, x: &[u16], mut e: usize) -> Elem {
        let mut r = self.identity();
        let mut b: Elem = x.into();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    pub fn element_order(&self, x: &[u16]) -> usize {
        let id = self.identity();
        let mut y: Elem = x.into();
        let mut k = 1;
        while *y != *id {
            y = self.mul(&y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|a| self.gens.iter().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_p_group(&self, p: u32) -> bool {
        p_part(self.order(), p) == self.order()
    }

    pub fn is_subgroup_of(&self, g: &FiniteGroup) -> bool {
        self.rep == g.rep && self.gens.iter().all(|x| g.contains(x))
    }

    pub fn subgroup(&self, elems: &[Elem]) -> Result<FiniteGroup> {
        generate_subgroup(self, elems)
    }

    /// Generators chosen greedily in canonical element order; deterministic
    /// and independent of how the group was first described.
    pub fn canonical_generators(&self) -> Vec<Elem> {
        let mut gens: Vec<Elem> = Vec::new();
        let mut current: HashSet<Elem> = HashSet::from([self.identity()]);
        for x in &self.elements {
            if current.len() == self.order() {
                break;
            }
            if current.contains(x) {
                continue;
            }
            gens.push(x.clone());
            current = FiniteGroup::generate(self.rep.clone(), gens.clone(), usize::MAX)
                .unwrap()
                .elements
                .into_iter()
                .collect();
        }
        gens
    }

    /// Group with a known, multiplicatively closed element list.
    pub fn from_elements(rep: Representation, elems: Vec<Elem>) -> Result<FiniteGroup> {
        let n = elems.len();
        let g = FiniteGroup::generate(rep.clone(), elems.clone(), usize::MAX)?;
        if g.order() != n {
            return Err(Error::NotASubgroup(format!(
                "{n} elements generate a group of order {}",
                g.order()
            )));
        }
        let gens = elems_reduce(&g, elems);
        Ok(FiniteGroup { gens, ..g })
    }

    pub fn with_canonical_generators(&self) -> FiniteGroup {
        let mut g = self.clone();
        g.gens = self.canonical_generators();
        g
    }
}

pub fn perm_from_one_line(degree: usize, images: &[usize]) -> Result<Elem> {
    if images.len() != degree {
        return Err(Error::InvalidGroup(format!(
            "one-line permutation {images:?} does not have degree {degree}"
        )));
    }
    let e: Elem = images
        .iter()
        .map(|&i| {
            if i == 0 || i > degree {
                Err(Error::InvalidGroup(format!(
                    "one-line permutation {images:?} has entry {i} outside 1..={degree}"
                )))
            } else {
                Ok((i - 1) as u16)
            }
        })
        .collect::<Result<_>>()?;
    Representation::Permutation { degree }.validate(&e)?;
    Ok(e)
}

pub fn p_part(mut n: usize, p: u32) -> usize {
    let mut r = 1;
    while n % p as usize == 0 {
        n /= p as usize;
        r *= p as usize;
    }
    r
}

/// `log_p(n)` for an exact power of `p`.
pub fn log_p(n: usize, p: u32) -> usize {
    let mut k = 0;
    let mut m = n;
    while m > 1 {
        debug_assert_eq!(m % p as usize, 0);
        m /= p as usize;
        k += 1;
    }
    k
}

/// `⟨elems⟩` inside `g`.
pub fn generate_subgroup(g: &FiniteGroup, elems: &[Elem]) -> Result<FiniteGroup> {
    for x in elems {
        if !g.contains(x) {
            return Err(Error::NotASubgroup(format!(
                "{x:?} is not an element of the group"
            )));
        }
    }
    FiniteGroup::generate(g.rep.clone(), elems.to_vec(), g.order())
}

pub fn normalizer(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let elems: Vec<Elem> = g
        .elements()
        .iter()
        .filter(|x| h.generators().iter().all(|y| h.contains(&g.conj(y, x))))
        .cloned()
        .collect();
    FiniteGroup::generate(g.rep.clone(), elems_reduce(g, elems), g.order()).unwrap()
}

pub fn centralizer(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let elems: Vec<Elem> = g
        .elements()
        .iter()
        .filter(|x| h.generators().iter().all(|y| g.mul(x, y) == g.mul(y, x)))
        .cloned()
        .collect();
    FiniteGroup::generate(g.rep.clone(), elems_reduce(g, elems), g.order()).unwrap()
}

/// Turns a known subgroup element list into a short generating list.
fn elems_reduce(g: &FiniteGroup, elems: Vec<Elem>) -> Vec<Elem> {
    let target = elems.len();
    let mut gens = Vec::new();
    let mut current: HashSet<Elem> = HashSet::from([g.identity()]);
    for x in elems {
        if current.len() == target {
            break;
        }
        if current.contains(&x) {
            continue;
        }
        gens.push(x);
        current = FiniteGroup::generate(g.rep.clone(), gens.clone(), usize::MAX)
            .unwrap()
            .elements
            .into_iter()
            .collect();
    }
    gens
}

pub fn intersection(g: &FiniteGroup, a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let elems: Vec<Elem> = a
        .elements()
        .iter()
        .filter(|x| b.contains(x))
        .cloned()
        .collect();
    FiniteGroup::generate(g.rep.clone(), elems_reduce(g, elems), g.order()).unwrap()
}

/// A Sylow p-subgroup found by a deterministic search.
pub fn sylow_p(g: &FiniteGroup, p: u32) -> Result<FiniteGroup> {
    let trivial = FiniteGroup::generate(g.rep.clone(), vec![], 1)?;
    sylow_containing(g, p, &trivial)
}

/// A Sylow p-subgroup containing the p-subgroup `h`. Grows `h` one factor
/// of `p` at a time through its normalizer, always taking the least
/// admissible element.
pub fn sylow_containing(g: &FiniteGroup, p: u32, h: &FiniteGroup) -> Result<FiniteGroup> {
    if !is_prime(p) {
        return Err(Error::ParameterOutOfRange(format!("{p} is not prime")));
    }
    if !h.is_subgroup_of(g) {
        return Err(Error::NotASubgroup("seed is not a subgroup".into()));
    }
    if !h.is_p_group(p) {
        return Err(Error::NotAPGroup(format!("seed of order {}", h.order())));
    }
    let target = p_part(g.order(), p);
    let mut cur = h.clone();
    while cur.order() < target {
        let n = normalizer(g, &cur);
        let x = n
            .elements()
            .iter()
            .find(|x| !cur.contains(x) && cur.contains(&g.pow(x, p as usize)))
            .cloned()
            .ok_or_else(|| Error::InvariantViolated("no element of order p in N(H)/H".into()))?;
        let mut gens = cur.generators().to_vec();
        gens.push(x);
        cur = FiniteGroup::generate(g.rep.clone(), gens, g.order())?;
    }
    Ok(cur.with_canonical_generators())
}

#[derive(Debug, Clone)]
pub struct LocalSubgroups {
    pub center: FiniteGroup,
    pub centralizer: FiniteGroup,
    pub normalizer: FiniteGroup,
}

/// `Z(H)`, `C_G(H)` and `N_G(H)`.
pub fn local_subgroups(g: &FiniteGroup, h: &FiniteGroup) -> Result<LocalSubgroups> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotASubgroup("H is not a subgroup of G".into()));
    }
    let center = centralizer(h, h);
    let c = centralizer(g, h);
    let n = normalizer(g, h);
    debug_assert!(center.is_subgroup_of(&c) && c.is_subgroup_of(&n));
    Ok(LocalSubgroups {
        center,
        centralizer: c,
        normalizer: n,
    })
}

/// Normal closure of `elems` in `g`.
pub fn normal_closure(g: &FiniteGroup, elems: &[Elem]) -> FiniteGroup {
    let mut gens: Vec<Elem> = elems.to_vec();
    loop {
        let h = FiniteGroup::generate(g.rep.clone(), gens.clone(), g.order()).unwrap();
        let extra: Vec<Elem> = h
            .generators()
            .iter()
            .flat_map(|x| g.generators().iter().map(move |t| (x, t)))
            .map(|(x, t)| g.conj(x, t))
            .filter(|y| !h.contains(y))
            .collect();
        if extra.is_empty() {
            return h;
        }
        gens.extend(extra);
    }
}

/// `dim_{F_p} Ab(P) ⊗ F_p`, i.e. the rank of `P / [P,P] P^p`.
pub fn abelianization_mod_p(g: &FiniteGroup, p: u32) -> usize {
    abelianization_mod_p_modulo(g, &[], p)
}

/// `dim_{F_p} Ab(G/N) ⊗ F_p` for the normal subgroup `N` generated by `extra`.
pub fn abelianization_mod_p_modulo(g: &FiniteGroup, extra: &[Elem], p: u32) -> usize {
    let gens = g.generators();
    let mut rel: Vec<Elem> = extra.to_vec();
    for (i, a) in gens.iter().enumerate() {
        rel.push(g.pow(a, p as usize));
        for b in &gens[i + 1..] {
            let comm = g.mul(&g.mul(&g.inv(a), &g.inv(b)), &g.mul(a, b));
            rel.push(comm);
        }
    }
    let n = normal_closure(g, &rel);
    log_p(g.order() / n.order(), p)
}

/// A verified homomorphism, stored as a full element table.
#[derive(Debug, Clone)]
pub struct GroupHom {
    pub source: Arc<FiniteGroup>,
    pub target: Arc<FiniteGroup>,
    table: Vec<u32>,
    injective: bool,
}

impl GroupHom {
    /// Extends generator images to the whole source; fails when a relation
    /// of the source is not preserved.
    pub fn new(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        gen_images: &[Elem],
    ) -> Result<Self> {
        if gen_images.len() != source.generators().len() {
            return Err(Error::NotAHomomorphism(format!(
                "{} generator images for {} generators",
                gen_images.len(),
                source.generators().len()
            )));
        }
        for y in gen_images {
            if !target.contains(y) {
                return Err(Error::ImageNotContained(format!(
                    "generator image {y:?} is not in the target"
                )));
            }
        }
        let mut table = vec![u32::MAX; source.order()];
        let id_s = source.index_of(&source.identity()).unwrap();
        table[id_s] = target.index_of(&target.identity()).unwrap() as u32;
        let mut queue = VecDeque::from([id_s]);
        while let Some(i) = queue.pop_front() {
            let x = &source.elements()[i];
            let fx = &target.elements()[table[i] as usize];
            for (g, fg) in source.generators().iter().zip(gen_images) {
                let y = source.mul(x, g);
                let j = source.index_of(&y).unwrap();
                let fy = target.index_of(&target.mul(fx, fg)).unwrap() as u32;
                if table[j] == u32::MAX {
                    table[j] = fy;
                    queue.push_back(j);
                } else if table[j] != fy {
                    return Err(Error::NotAHomomorphism(format!(
                        "generator images do not respect a relation at {y:?}"
                    )));
                }
            }
        }
        Ok(Self::from_table(source, target, table))
    }

    fn from_table(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, table: Vec<u32>) -> Self {
        let distinct: HashSet<u32> = table.iter().copied().collect();
        let injective = distinct.len() == table.len();
        Self {
            source,
            target,
            table,
            injective,
        }
    }

    pub fn is_injective(&self) -> bool {
        self.injective
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn apply(&self, x: &[u16]) -> Option<Elem> {
        let i = self.source.index_of(x)?;
        Some(self.target.elements()[self.table[i] as usize].clone())
    }

    pub fn image(&self) -> FiniteGroup {
        let elems: Vec<Elem> = self
            .source
            .generators()
            .iter()
            .map(|g| self.apply(g).unwrap())
            .collect();
        FiniteGroup::generate(self.target.rep.clone(), elems, self.target.order()).unwrap()
    }

    /// `x ↦ ((x)f)g`.
    pub fn compose(&self, g: &GroupHom) -> Result<GroupHom> {
        if *self.target != *g.source {
            return Err(Error::IncompatibleDomains(
                "target of the first map differs from the source of the second".into(),
            ));
        }
        let table = self.table.iter().map(|&i| g.table[i as usize]).collect();
        Ok(Self::from_table(
            self.source.clone(),
            g.target.clone(),
            table,
        ))
    }

    pub fn restrict(&self, h: Arc<FiniteGroup>) -> Result<GroupHom> {
        if !h.is_subgroup_of(&self.source) {
            return Err(Error::IncompatibleDomains(
                "restriction to a non-subgroup".into(),
            ));
        }
        let table = h
            .elements()
            .iter()
            .map(|x| self.table[self.source.index_of(x).unwrap()])
            .collect();
        Ok(Self::from_table(h, self.target.clone(), table))
    }

    pub fn inverse_iso(&self) -> Result<GroupHom> {
        if !self.injective || self.source.order() != self.target.order() {
            return Err(Error::NotInjective(
                "inverse requested for a map that is not an isomorphism".into(),
            ));
        }
        let mut table = vec![0u32; self.table.len()];
        for (i, &j) in self.table.iter().enumerate() {
            table[j as usize] = i as u32;
        }
        Ok(Self::from_table(
            self.target.clone(),
            self.source.clone(),
            table,
        ))
    }

    /// `c_g : P → Q, x ↦ g⁻¹ x g`, for `P^g ≤ Q` inside `G`.
    pub fn conjugation(
        g: &FiniteGroup,
        elem: &[u16],
        p: Arc<FiniteGroup>,
        q: Arc<FiniteGroup>,
    ) -> Result<GroupHom> {
        if !p.is_subgroup_of(g) || !q.is_subgroup_of(g) || !g.contains(elem) {
            return Err(Error::IncompatibleDomains(
                "conjugation data does not live in G".into(),
            ));
        }
        let mut table = Vec::with_capacity(p.order());
        for x in p.elements() {
            let y = g.conj(x, elem);
            match q.index_of(&y) {
                Some(j) => table.push(j as u32),
                None => return Err(Error::ImageNotContained("P^g is not contained in Q".into())),
            }
        }
        Ok(Self::from_table(p, q, table))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4() -> FiniteGroup {
        FiniteGroup::symmetric(4)
    }

    fn perm(v: &[usize]) -> Elem {
        perm_from_one_line(v.len(), v).unwrap()
    }

    #[test]
    fn generate_examples() {
        let g = s4();
        assert_eq!(g.order(), 24);
        assert_eq!(generate_subgroup(&g, &[g.identity()]).unwrap().order(), 1);
        let d8 = generate_subgroup(&g, &[perm(&[2, 3, 4, 1]), perm(&[3, 2, 1, 4])]).unwrap();
        assert_eq!(d8.order(), 8);
        let transpositions: Vec<Elem> = (1..=4)
            .flat_map(|i| (i + 1..=4).map(move |j| (i, j)))
            .map(|(i, j)| {
                let mut v: Vec<usize> = (1..=4).collect();
                v.swap(i - 1, j - 1);
                perm(&v)
            })
            .collect();
        assert_eq!(generate_subgroup(&g, &transpositions).unwrap().order(), 24);
        // idempotent on subgroups
        let again = generate_subgroup(&g, d8.elements()).unwrap();
        assert_eq!(again, d8);
    }

    #[test]
    fn order_bound_is_an_error() {
        let g = FiniteGroup::from_one_line(5, &[vec![2, 3, 4, 5, 1], vec![2, 1, 3, 4, 5]]).unwrap();
        let r = FiniteGroup::generate(g.rep().clone(), g.generators().to_vec(), 100);
        assert!(matches!(r, Err(Error::OrderBoundExceeded { .. })));
    }

    #[test]
    fn sylow_examples() {
        let g = s4();
        let s2 = sylow_p(&g, 2).unwrap();
        assert_eq!(s2.order(), 8);
        assert!(!s2.is_abelian());
        assert_eq!(sylow_p(&g, 3).unwrap().order(), 3);
        assert_eq!(sylow_p(&g, 5).unwrap().order(), 1);
        // deterministic
        assert_eq!(sylow_p(&g, 2).unwrap().elements(), s2.elements());
    }

    #[test]
    fn local_subgroup_examples() {
        let g = s4();
        let d8 = sylow_p(&g, 2).unwrap();
        let l = local_subgroups(&d8, &d8).unwrap();
        assert_eq!(l.center.order(), 2);
        let v = generate_subgroup(&g, &[perm(&[2, 1, 4, 3]), perm(&[3, 4, 1, 2])]).unwrap();
        let l = local_subgroups(&g, &v).unwrap();
        assert_eq!(l.centralizer, v);
        assert_eq!(l.normalizer.order(), 24);
        let c6 = FiniteGroup::cyclic(6);
        let h = generate_subgroup(&c6, &[c6.pow(&c6.generators()[0], 2)]).unwrap();
        assert_eq!(local_subgroups(&c6, &h).unwrap().centralizer.order(), 6);
    }

    #[test]
    fn abelianization_examples() {
        assert_eq!(abelianization_mod_p(&FiniteGroup::dihedral(4), 2), 2);
        assert_eq!(abelianization_mod_p(&FiniteGroup::cyclic(9), 3), 1);
        // Heisenberg group mod 3 as upper unitriangular matrices
        let rep = Representation::Matrix { dim: 3, p: 3 };
        let a: Elem = vec![1, 1, 0, 0, 1, 0, 0, 0, 1].into();
        let b: Elem = vec![1, 0, 0, 0, 1, 1, 0, 0, 1].into();
        let h = FiniteGroup::generate(rep, vec![a, b], 1000).unwrap();
        assert_eq!(h.order(), 27);
        assert_eq!(abelianization_mod_p(&h, 3), 2);
        assert_eq!(abelianization_mod_p(&s4(), 2), 1);
        assert_eq!(abelianization_mod_p(&s4(), 3), 0);
    }

    #[test]
    fn conjugation_examples() {
        let g = Arc::new(s4());
        let t13 = Arc::new(generate_subgroup(&g, &[perm(&[3, 2, 1, 4])]).unwrap());
        let t23 = Arc::new(generate_subgroup(&g, &[perm(&[1, 3, 2, 4])]).unwrap());
        let c = GroupHom::conjugation(&g, &perm(&[2, 1, 3, 4]), t13.clone(), t23.clone()).unwrap();
        assert_eq!(c.image(), *t23);
        let id = GroupHom::conjugation(&g, &g.identity(), t13.clone(), t13.clone()).unwrap();
        assert!(id.table().iter().enumerate().all(|(i, &j)| i == j as usize));
        assert!(matches!(
            GroupHom::conjugation(&g, &g.identity(), t13.clone(), t23),
            Err(Error::ImageNotContained(_))
        ));
    }

    #[test]
    fn hom_relations_are_checked() {
        let c4 = Arc::new(FiniteGroup::cyclic(4));
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let x = c2.generators()[0].clone();
        assert!(GroupHom::new(c4.clone(), c2.clone(), &[x]).is_ok());
        let c3 = Arc::new(FiniteGroup::cyclic(3));
        let y = c3.generators()[0].clone();
        assert!(matches!(
            GroupHom::new(c4, c3, &[y]),
            Err(Error::NotAHomomorphism(_))
        ));
    }

    #[test]
    fn matrix_groups() {
        let rep = Representation::Matrix { dim: 2, p: 3 };
        let a: Elem = vec![1, 1, 0, 1].into();
        let b: Elem = vec![1, 0, 1, 1].into();
        let sl = FiniteGroup::generate(rep, vec![a, b], 1000).unwrap();
        assert_eq!(sl.order(), 24);
        assert_eq!(sylow_p(&sl, 2).unwrap().order(), 8);
    }
}
