//! Fusion systems over a finite p-group `S`.
//!
//! `S` is turned into an [`Ambient`]: elements are numbered `0..|S|` in
//! canonical order, multiplication is a Cayley table and every subgroup of
//! `S` gets a stable [`SubId`] (sorted by order, then by element list).
//! A morphism `P → S` is stored as its full image table over the sorted
//! elements of `P`; `Hom_F(P, Q)` is the part of `Hom_F(P, S)` landing in
//! `Q`.

use crate::error::{Error, Result};
use crate::groups::{sylow_p, Elem, FiniteGroup, GroupHom, Representation};
use crate::par;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, OnceLock};

pub type SubId = usize;

pub const DEFAULT_SUBGROUP_BUDGET: usize = 50_000;
pub const DEFAULT_MORPHISM_BUDGET: usize = 200_000;

#[derive(Debug, Clone)]
pub struct Subgroup {
    pub order: usize,
    pub elements: Vec<u16>,
    pub gens: Vec<u16>,
    bits: Box<[u64]>,
}

impl Subgroup {
    pub fn contains(&self, x: u16) -> bool {
        self.bits
            .get(x as usize / 64)
            .is_some_and(|w| w >> (x % 64) & 1 == 1)
    }

    /// Position of `x` in the sorted element list.
    pub fn pos(&self, x: u16) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }
}

/// A p-group with its Cayley table and full subgroup lattice.
#[derive(Debug)]
pub struct Ambient {
    pub p: u32,
    group: Arc<FiniteGroup>,
    n: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    identity: u16,
    subs: Vec<Subgroup>,
    by_bits: HashMap<Box<[u64]>, SubId>,
}

impl Ambient {
    pub fn new(group: Arc<FiniteGroup>, p: u32) -> Result<Self> {
        Self::with_budget(group, p, DEFAULT_SUBGROUP_BUDGET)
    }

    pub fn with_budget(group: Arc<FiniteGroup>, p: u32, budget: usize) -> Result<Self> {
        if !group.is_p_group(p) {
            return Err(Error::NotAPGroup(format!(
                "ambient group of order {} for p = {p}",
                group.order()
            )));
        }
        let n = group.order();
        if n > u16::MAX as usize {
            return Err(Error::OrderBoundExceeded {
                what: "ambient p-group".into(),
                bound: u16::MAX as usize,
            });
        }
        let els = group.elements();
        let mut mul = vec![0u16; n * n];
        for (i, a) in els.iter().enumerate() {
            for (j, b) in els.iter().enumerate() {
                mul[i * n + j] = group.index_of(&group.mul(a, b)).unwrap() as u16;
            }
        }
        let identity = group.index_of(&group.identity()).unwrap() as u16;
        let mut inv = vec![0u16; n];
        for i in 0..n {
            for j in 0..n {
                if mul[i * n + j] == identity {
                    inv[i] = j as u16;
                    break;
                }
            }
        }
        let mut amb = Self {
            p,
            group,
            n,
            mul,
            inv,
            identity,
            subs: Vec::new(),
            by_bits: HashMap::new(),
        };
        amb.enumerate_subgroups(budget)?;
        Ok(amb)
    }

    fn enumerate_subgroups(&mut self, budget: usize) -> Result<()> {
        let words = self.n.div_ceil(64);
        let mut found: HashMap<Box<[u64]>, Vec<u16>> = HashMap::new();
        let trivial = self.closure_bits(&[], words);
        let mut queue = VecDeque::from([trivial.clone()]);
        found.insert(trivial, vec![]);
        while let Some(h) = queue.pop_front() {
            let gens = found[&h].clone();
            for x in 0..self.n as u16 {
                if h[x as usize / 64] >> (x % 64) & 1 == 1 {
                    continue;
                }
                let mut g2 = gens.clone();
                g2.push(x);
                let k = self.closure_bits(&g2, words);
                if !found.contains_key(&k) {
                    if found.len() >= budget {
                        return Err(Error::OrderBoundExceeded {
                            what: "subgroup lattice".into(),
                            bound: budget,
                        });
                    }
                    found.insert(k.clone(), g2);
                    queue.push_back(k);
                }
            }
        }
        let mut subs: Vec<Subgroup> = found
            .into_keys()
            .map(|bits| {
                let elements: Vec<u16> = (0..self.n as u16)
                    .filter(|&x| bits[x as usize / 64] >> (x % 64) & 1 == 1)
                    .collect();
                Subgroup {
                    order: elements.len(),
                    elements,
                    gens: vec![],
                    bits,
                }
            })
            .collect();
        subs.sort_by(|a, b| (a.order, &a.elements).cmp(&(b.order, &b.elements)));
        for s in subs.iter_mut() {
            s.gens = self.canonical_gens(&s.elements, words);
        }
        self.by_bits = subs
            .iter()
            .enumerate()
            .map(|(i, s)| (s.bits.clone(), i))
            .collect();
        self.subs = subs;
        Ok(())
    }

    fn canonical_gens(&self, elements: &[u16], words: usize) -> Vec<u16> {
        let mut gens = Vec::new();
        let mut cur = self.closure_bits(&[], words);
        let mut count = 1;
        for &x in elements {
            if count == elements.len() {
                break;
            }
            if cur[x as usize / 64] >> (x % 64) & 1 == 1 {
                continue;
            }
            gens.push(x);
            cur = self.closure_bits(&gens, words);
            count = cur.iter().map(|w| w.count_ones() as usize).sum();
        }
        gens
    }

    fn closure_bits(&self, gens: &[u16], words: usize) -> Box<[u64]> {
        let mut bits = vec![0u64; words];
        let id = self.identity;
        bits[id as usize / 64] |= 1 << (id % 64);
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if bits[y as usize / 64] >> (y % 64) & 1 == 0 {
                    bits[y as usize / 64] |= 1 << (y % 64);
                    queue.push(y);
                }
            }
        }
        bits.into_boxed_slice()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> u16 {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    /// `g⁻¹ x g`
    #[inline]
    pub fn conj(&self, x: u16, g: u16) -> u16 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn pow(&self, x: u16, e: usize) -> u16 {
        (0..e).fold(self.identity, |acc, _| self.mul(acc, x))
    }

    pub fn element(&self, i: u16) -> &Elem {
        &self.group.elements()[i as usize]
    }

    pub fn index_of(&self, x: &[u16]) -> Option<u16> {
        self.group.index_of(x).map(|i| i as u16)
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subs
    }

    pub fn sub(&self, id: SubId) -> &Subgroup {
        &self.subs[id]
    }

    pub fn trivial(&self) -> SubId {
        0
    }

    pub fn top(&self) -> SubId {
        self.subs.len() - 1
    }

    pub fn is_sub(&self, a: SubId, b: SubId) -> bool {
        let (a, b) = (&self.subs[a], &self.subs[b]);
        a.order <= b.order && a.bits.iter().zip(b.bits.iter()).all(|(x, y)| x & !y == 0)
    }

    /// Id of the subgroup whose element set is exactly `elems`.
    pub fn id_of_set(&self, elems: impl IntoIterator<Item = u16>) -> Option<SubId> {
        let mut bits = vec![0u64; self.n.div_ceil(64)];
        for x in elems {
            bits[x as usize / 64] |= 1 << (x % 64);
        }
        self.by_bits.get(bits.as_slice()).copied()
    }

    pub fn generated(&self, elems: &[u16]) -> SubId {
        let bits = self.closure_bits(elems, self.n.div_ceil(64));
        self.by_bits[&bits]
    }

    /// Id of a subgroup of `S` given as a [`FiniteGroup`] in the same representation.
    pub fn id_of_group(&self, h: &FiniteGroup) -> Result<SubId> {
        let idx: Vec<u16> = h
            .elements()
            .iter()
            .map(|x| {
                self.index_of(x)
                    .ok_or_else(|| Error::NotASubgroup(format!("element {x:?} is not in S")))
            })
            .collect::<Result<_>>()?;
        self.id_of_set(idx)
            .ok_or_else(|| Error::NotASubgroup("element set is not a subgroup of S".into()))
    }

    /// The subgroup as a standalone [`FiniteGroup`].
    pub fn to_group(&self, id: SubId) -> FiniteGroup {
        let elems: Vec<Elem> = self.subs[id]
            .elements
            .iter()
            .map(|&i| self.element(i).clone())
            .collect();
        FiniteGroup::from_elements(self.group.rep().clone(), elems).unwrap()
    }

    pub fn centralizer(&self, id: SubId) -> SubId {
        let gens = &self.subs[id].gens;
        let els: Vec<u16> = (0..self.n as u16)
            .filter(|&x| gens.iter().all(|&g| self.mul(x, g) == self.mul(g, x)))
            .collect();
        self.id_of_set(els).unwrap()
    }

    pub fn center(&self, id: SubId) -> SubId {
        let s = &self.subs[id];
        let els: Vec<u16> = s
            .elements
            .iter()
            .copied()
            .filter(|&x| s.gens.iter().all(|&g| self.mul(x, g) == self.mul(g, x)))
            .collect();
        self.id_of_set(els).unwrap()
    }

    pub fn normalizer(&self, id: SubId) -> SubId {
        let s = &self.subs[id];
        let els: Vec<u16> = (0..self.n as u16)
            .filter(|&x| s.gens.iter().all(|&g| s.contains(self.conj(g, x))))
            .collect();
        self.id_of_set(els).unwrap()
    }

    /// Image subgroup of an image table.
    pub fn image_id(&self, img: &[u16]) -> SubId {
        self.id_of_set(img.iter().copied())
            .expect("image of a homomorphism is a subgroup")
    }

    /// Conjugation `c_g` on `P` as an image table.
    pub fn conj_table(&self, p: SubId, g: u16) -> Box<[u16]> {
        self.subs[p]
            .elements
            .iter()
            .map(|&x| self.conj(x, g))
            .collect()
    }

    /// `x ↦ ((x)φ)ψ` where `ψ` is an image table on the subgroup `r ⊇ im φ`.
    pub fn compose(&self, phi: &[u16], r: SubId, psi: &[u16]) -> Box<[u16]> {
        let r = &self.subs[r];
        phi.iter()
            .map(|&y| psi[r.pos(y).expect("composable maps")])
            .collect()
    }

    /// Restriction of a table on `p` to the subgroup `q ≤ p`.
    pub fn restrict(&self, phi: &[u16], p: SubId, q: SubId) -> Box<[u16]> {
        let ps = &self.subs[p];
        self.subs[q]
            .elements
            .iter()
            .map(|&x| phi[ps.pos(x).expect("restriction to a subgroup")])
            .collect()
    }

    pub fn describe(&self, id: SubId) -> String {
        format!("#{id} (order {})", self.subs[id].order)
    }
}

/// One realizable generating system `F_{S_x}(G_x)` carried into `S`.
#[derive(Debug)]
struct Part {
    name: String,
    group: Arc<FiniteGroup>,
    sx: SubId,
    to_local: HashMap<u16, Elem>,
    to_ambient: HashMap<Elem, u16>,
    maps: Vec<OnceLock<Arc<Vec<Box<[u16]>>>>>,
}

impl Part {
    fn new(amb: &Ambient, name: String, group: Arc<FiniteGroup>, embed: &GroupHom) -> Result<Self> {
        if !embed.source.is_subgroup_of(&group) {
            return Err(Error::NotASubgroup(format!(
                "Sylow subgroup of {name} is not contained in {name}"
            )));
        }
        if !embed.is_injective() {
            return Err(Error::NotInjective(format!(
                "embedding of the Sylow subgroup of {name}"
            )));
        }
        let mut to_local = HashMap::new();
        let mut to_ambient = HashMap::new();
        for x in embed.source.elements() {
            let y = embed.apply(x).unwrap();
            let i = amb
                .index_of(&y)
                .ok_or_else(|| Error::ImageNotContained(format!("embedding of {name} leaves S")))?;
            to_local.insert(i, x.clone());
            to_ambient.insert(x.clone(), i);
        }
        let sx = amb
            .id_of_set(to_local.keys().copied())
            .ok_or_else(|| Error::NotAHomomorphism(format!("embedding of {name}")))?;
        Ok(Self {
            name,
            group,
            sx,
            to_local,
            to_ambient,
            maps: (0..amb.subgroups().len())
                .map(|_| OnceLock::new())
                .collect(),
        })
    }

    /// `{c_g|R : g ∈ G_x, R^g ≤ S_x}` for `R ≤ S_x`, deduplicated and sorted.
    fn maps(&self, amb: &Ambient, r: SubId) -> Arc<Vec<Box<[u16]>>> {
        self.maps[r]
            .get_or_init(|| {
                let g = &self.group;
                let sub = amb.sub(r);
                let local: Vec<&Elem> = sub.elements.iter().map(|i| &self.to_local[i]).collect();
                let local_gens: Vec<&Elem> = sub.gens.iter().map(|i| &self.to_local[i]).collect();
                let mut out: HashSet<Box<[u16]>> = HashSet::new();
                for x in g.elements() {
                    let xi = g.inv(x);
                    let ok = local_gens
                        .iter()
                        .all(|y| self.to_ambient.contains_key(&g.mul(&g.mul(&xi, y), x)));
                    if !ok {
                        continue;
                    }
                    let table: Box<[u16]> = local
                        .iter()
                        .map(|y| self.to_ambient[&g.mul(&g.mul(&xi, y), x)])
                        .collect();
                    out.insert(table);
                }
                let mut v: Vec<_> = out.into_iter().collect();
                v.sort();
                Arc::new(v)
            })
            .clone()
    }
}

/// A generating piece for [`FusionSystem::closure`]: the group `G_x`, its
/// chosen Sylow subgroup `S_x` and an injective map `S_x → S`.
#[derive(Debug, Clone)]
pub struct PartSpec {
    pub name: String,
    pub group: Arc<FiniteGroup>,
    pub embed: GroupHom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum RadicalVariant {
    /// `O_p(Aut_F(P)) = Inn(P)`
    #[default]
    Standard,
    /// `Aut_F(P) = Inn(P)`
    Paper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CentricFlags {
    pub is_centric: bool,
    pub is_centric_radical_paper: bool,
    pub is_centric_radical_standard: bool,
}

impl CentricFlags {
    pub fn radical(&self, v: RadicalVariant) -> bool {
        match v {
            RadicalVariant::Standard => self.is_centric_radical_standard,
            RadicalVariant::Paper => self.is_centric_radical_paper,
        }
    }
}

type HomCache = OnceLock<std::result::Result<Arc<Vec<Box<[u16]>>>, Error>>;

#[derive(Debug)]
pub struct FusionSystem {
    amb: Arc<Ambient>,
    parts: Vec<Part>,
    realizable: bool,
    sylow_in_group: Option<bool>,
    budget: usize,
    homs: Vec<HomCache>,
}

impl FusionSystem {
    /// `F_S(G)`.
    pub fn of_group(s: Arc<FiniteGroup>, g: Arc<FiniteGroup>, p: u32) -> Result<Self> {
        if !s.is_subgroup_of(&g) {
            return Err(Error::NotASubgroup("S is not a subgroup of G".into()));
        }
        let amb = Arc::new(Ambient::new(s.clone(), p)?);
        Self::of_group_on(amb, g)
    }

    /// `F_S(G)` on an existing ambient `S ≤ G`.
    pub fn of_group_on(amb: Arc<Ambient>, g: Arc<FiniteGroup>) -> Result<Self> {
        let s = amb.group().clone();
        if !s.is_subgroup_of(&g) {
            return Err(Error::NotASubgroup("S is not a subgroup of G".into()));
        }
        let embed = identity_hom(&s);
        let part = Part::new(&amb, "G".into(), g.clone(), &embed)?;
        let sylow = crate::groups::p_part(g.order(), amb.p) == s.order();
        Ok(Self::assemble(amb, vec![part], true, Some(sylow)))
    }

    /// `⟨F_S(S), parts⟩_S`: the smallest fusion system over `S` containing
    /// every part.
    pub fn closure(amb: Arc<Ambient>, parts: Vec<PartSpec>) -> Result<Self> {
        let s = amb.group().clone();
        let mut built = vec![Part::new(&amb, "S".into(), s.clone(), &identity_hom(&s))?];
        for ps in parts {
            built.push(Part::new(&amb, ps.name, ps.group, &ps.embed)?);
        }
        Ok(Self::assemble(amb, built, false, None))
    }

    /// `F_{S_x}(G_x)` carried into `S` along the embedding of `spec`; a
    /// fusion system over the subgroup `S_x`, written in `S`-coordinates.
    pub fn realizable_part(amb: Arc<Ambient>, spec: PartSpec) -> Result<Self> {
        let part = Part::new(&amb, spec.name, spec.group.clone(), &spec.embed)?;
        let sylow = crate::groups::p_part(spec.group.order(), amb.p) == amb.sub(part.sx).order;
        Ok(Self::assemble(amb, vec![part], true, Some(sylow)))
    }

    fn assemble(
        amb: Arc<Ambient>,
        parts: Vec<Part>,
        realizable: bool,
        sylow: Option<bool>,
    ) -> Self {
        let n = amb.subgroups().len();
        Self {
            amb,
            parts,
            realizable,
            sylow_in_group: sylow,
            budget: DEFAULT_MORPHISM_BUDGET,
            homs: (0..n).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn with_morphism_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.amb
    }

    /// The subgroup the system lives over: `S_x` for a transported part,
    /// `S` otherwise.
    pub fn base(&self) -> SubId {
        if self.realizable {
            self.parts[0].sx
        } else {
            self.amb.top()
        }
    }

    pub fn p(&self) -> u32 {
        self.amb.p
    }

    pub fn part_names(&self) -> Vec<&str> {
        self.parts.iter().map(|x| x.name.as_str()).collect()
    }

    pub fn is_realizable_by_construction(&self) -> bool {
        self.realizable
    }

    /// For `F_S(G)`: whether `S` is Sylow in `G`.
    pub fn sylow_in_group(&self) -> Option<bool> {
        self.sylow_in_group
    }

    /// `Hom_F(P, S)` as sorted image tables.
    pub fn hom_to_s(&self, p: SubId) -> Result<Arc<Vec<Box<[u16]>>>> {
        self.homs[p]
            .get_or_init(|| {
                if self.realizable {
                    if !self.amb.is_sub(p, self.parts[0].sx) {
                        return Ok(Arc::new(Vec::new()));
                    }
                    Ok(self.parts[0].maps(&self.amb, p))
                } else {
                    self.close(p).map(Arc::new)
                }
            })
            .clone()
    }

    fn close(&self, p: SubId) -> Result<Vec<Box<[u16]>>> {
        let amb = &*self.amb;
        let start: Box<[u16]> = amb.sub(p).elements.clone().into_boxed_slice();
        let mut seen: HashSet<Box<[u16]>> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(phi) = queue.pop_front() {
            let r = amb.image_id(&phi);
            for part in &self.parts {
                if !amb.is_sub(r, part.sx) {
                    continue;
                }
                for psi in part.maps(amb, r).iter() {
                    let next = amb.compose(&phi, r, psi);
                    if !seen.contains(&next) {
                        if seen.len() >= self.budget {
                            return Err(Error::MorphismBudgetExceeded {
                                pair: format!("{}, S", amb.describe(p)),
                                budget: self.budget,
                            });
                        }
                        seen.insert(next.clone());
                        queue.push_back(next);
                    }
                }
            }
        }
        let mut v: Vec<_> = seen.into_iter().collect();
        v.sort();
        Ok(v)
    }

    /// `Hom_F(P, Q)`.
    pub fn hom(&self, p: SubId, q: SubId) -> Result<Vec<Box<[u16]>>> {
        let qs = self.amb.sub(q);
        Ok(self
            .hom_to_s(p)?
            .iter()
            .filter(|t| t.iter().all(|&x| qs.contains(x)))
            .cloned()
            .collect())
    }

    pub fn aut(&self, p: SubId) -> Result<Vec<Box<[u16]>>> {
        self.hom(p, p)
    }

    /// All subgroups `F`-isomorphic to `P`, ascending.
    pub fn conjugacy_orbit(&self, p: SubId) -> Result<Vec<SubId>> {
        let mut v: Vec<SubId> = self
            .hom_to_s(p)?
            .iter()
            .map(|t| self.amb.image_id(t))
            .collect();
        v.sort_unstable();
        v.dedup();
        Ok(v)
    }

    /// `C_{S_x}(Q) ≤ Q` with `S_x` the base of the system.
    fn s_centric(&self, q: SubId) -> bool {
        let base = self.amb.sub(self.base());
        let qs = self.amb.sub(q);
        if !self.amb.is_sub(q, self.base()) {
            return false;
        }
        self.amb
            .sub(self.amb.centralizer(q))
            .elements
            .iter()
            .all(|&x| !base.contains(x) || qs.contains(x))
    }

    pub fn is_centric(&self, p: SubId) -> Result<bool> {
        if !self.s_centric(p) {
            return Ok(false);
        }
        Ok(self
            .conjugacy_orbit(p)?
            .into_iter()
            .all(|q| self.s_centric(q)))
    }

    /// `Aut_F(P)` as a permutation group on the sorted elements of `P`.
    pub fn aut_group(&self, p: SubId) -> Result<FiniteGroup> {
        let ps = self.amb.sub(p);
        let rep = Representation::Permutation { degree: ps.order };
        let elems: Vec<Elem> = self
            .aut(p)?
            .iter()
            .map(|t| t.iter().map(|&y| ps.pos(y).unwrap() as u16).collect())
            .collect();
        FiniteGroup::from_elements(rep, elems)
    }

    pub fn centric_predicates(&self, p: SubId) -> Result<CentricFlags> {
        let centric = self.is_centric(p)?;
        if !centric {
            return Ok(CentricFlags {
                is_centric: false,
                is_centric_radical_paper: false,
                is_centric_radical_standard: false,
            });
        }
        let aut = self.aut_group(p)?;
        let inn = self.amb.sub(p).order / self.amb.sub(self.amb.center(p)).order;
        let op = op_core(&aut, self.p())?;
        Ok(CentricFlags {
            is_centric: true,
            is_centric_radical_paper: aut.order() == inn,
            is_centric_radical_standard: op == inn,
        })
    }

    /// All centric subgroups, ascending.
    pub fn centric_collection(&self) -> Result<Vec<SubId>> {
        let ids: Vec<SubId> = (0..self.amb.subgroups().len())
            .filter(|&q| self.s_centric(q))
            .collect();
        let flags = par::map(&ids, |&q| self.is_centric(q));
        let mut out = Vec::new();
        for (q, f) in ids.into_iter().zip(flags) {
            if f? {
                out.push(q);
            }
        }
        Ok(out)
    }

    pub fn centric_radicals(&self, variant: RadicalVariant) -> Result<Vec<SubId>> {
        let ids = self.centric_collection()?;
        let flags = par::map(&ids, |&q| self.centric_predicates(q));
        let mut out = Vec::new();
        for (q, f) in ids.into_iter().zip(flags) {
            if f?.radical(variant) {
                out.push(q);
            }
        }
        Ok(out)
    }

    /// Set equality of `Hom_F(P, S)` for every subgroup `P`; both systems
    /// must live over the same ambient group.
    pub fn same_morphisms(&self, other: &FusionSystem) -> Result<bool> {
        if self.amb.group().elements() != other.amb.group().elements() {
            return Err(Error::IncompatibleDomains(
                "fusion systems over different groups".into(),
            ));
        }
        let ids: Vec<SubId> = (0..self.amb.subgroups().len()).collect();
        let eq = par::map(&ids, |&q| -> Result<bool> {
            Ok(self.hom_to_s(q)? == other.hom_to_s(q)?)
        });
        for e in eq {
            if !e? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Sum of `|Hom_F(P, S)|` over all subgroups.
    pub fn total_morphisms(&self) -> Result<usize> {
        let mut t = 0;
        for q in 0..self.amb.subgroups().len() {
            t += self.hom_to_s(q)?.len();
        }
        Ok(t)
    }

    pub fn is_s_conjugation(&self, p: SubId, table: &[u16]) -> bool {
        (0..self.amb.order() as u16).any(|g| *self.amb.conj_table(p, g) == *table)
    }
}

fn identity_hom(s: &Arc<FiniteGroup>) -> GroupHom {
    GroupHom::new(s.clone(), s.clone(), s.generators()).unwrap()
}

/// Order of `O_p(A)`: the core of a Sylow p-subgroup.
pub fn op_core(a: &FiniteGroup, p: u32) -> Result<usize> {
    let mut t = sylow_p(a, p)?;
    loop {
        let mut next = t.clone();
        for g in a.generators() {
            let gi = a.inv(g);
            let elems: Vec<Elem> = next
                .elements()
                .iter()
                .filter(|x| next.contains(&a.conj(x, &gi)))
                .cloned()
                .collect();
            next = FiniteGroup::from_elements(a.rep().clone(), elems)?;
        }
        if next.order() == t.order() {
            return Ok(t.order());
        }
        t = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{perm_from_one_line, sylow_p};

    fn s4_d8() -> FusionSystem {
        let g = Arc::new(FiniteGroup::symmetric(4));
        let s = Arc::new(sylow_p(&g, 2).unwrap());
        FusionSystem::of_group(s, g, 2).unwrap()
    }

    fn find(amb: &Ambient, gens: &[&[usize]]) -> SubId {
        let idx: Vec<u16> = gens
            .iter()
            .map(|g| {
                amb.index_of(&perm_from_one_line(g.len(), g).unwrap())
                    .unwrap()
            })
            .collect();
        amb.generated(&idx)
    }

    #[test]
    fn d8_lattice() {
        let f = s4_d8();
        assert_eq!(f.ambient().subgroups().len(), 10);
        assert_eq!(f.ambient().sub(f.ambient().top()).order, 8);
    }

    #[test]
    fn realizable_examples() {
        let f = s4_d8();
        let amb = f.ambient().clone();
        let s = amb.top();
        assert_eq!(f.aut(s).unwrap().len(), 4);
        let v = find(&amb, &[&[2, 1, 4, 3], &[3, 4, 1, 2]]);
        assert_eq!(amb.sub(v).order, 4);
        assert_eq!(f.aut(v).unwrap().len(), 6);
        // F_S(S) has only S-conjugations
        let fs = FusionSystem::of_group(amb.group().clone(), amb.group().clone(), 2).unwrap();
        for q in 0..amb.subgroups().len() {
            for t in fs.hom_to_s(q).unwrap().iter() {
                assert!(fs.is_s_conjugation(q, t));
            }
        }
        assert_eq!(fs.conjugacy_orbit(s).unwrap(), vec![s]);
    }

    #[test]
    fn centric_examples() {
        let f = s4_d8();
        let amb = f.ambient();
        let c = f.centric_collection().unwrap();
        let orders: Vec<usize> = c.iter().map(|&q| amb.sub(q).order).collect();
        assert_eq!(orders, vec![4, 4, 4, 8]);
        let z = amb.center(amb.top());
        assert!(!f.is_centric(z).unwrap());
        assert!(f.is_centric(amb.top()).unwrap());
    }

    #[test]
    fn orbit_of_a_reflection() {
        let f = s4_d8();
        let amb = f.ambient();
        // a non-central involution of D8 is fused with the central one in Σ4
        // exactly when it is a double transposition
        for q in 0..amb.subgroups().len() {
            if amb.sub(q).order != 2 {
                continue;
            }
            let orbit = f.conjugacy_orbit(q).unwrap();
            assert!(orbit.contains(&q));
            for r in &orbit {
                assert_eq!(amb.sub(*r).order, 2);
            }
        }
        let z = amb.center(amb.top());
        assert_eq!(f.conjugacy_orbit(z).unwrap().len(), 3);
    }

    #[test]
    fn closure_examples() {
        let f = s4_d8();
        let amb = f.ambient().clone();
        let empty = FusionSystem::closure(amb.clone(), vec![]).unwrap();
        let fs = FusionSystem::of_group(amb.group().clone(), amb.group().clone(), 2).unwrap();
        assert!(empty.same_morphisms(&fs).unwrap());
        let g = Arc::new(FiniteGroup::symmetric(4));
        let s = amb.group().clone();
        let embed = GroupHom::new(s.clone(), s.clone(), s.generators()).unwrap();
        let again = FusionSystem::closure(
            amb,
            vec![PartSpec {
                name: "S4".into(),
                group: g,
                embed,
            }],
        )
        .unwrap();
        assert!(again.same_morphisms(&f).unwrap());
    }

    #[test]
    fn radical_flags() {
        let f = s4_d8();
        let amb = f.ambient();
        let flags: Vec<(usize, CentricFlags)> = f
            .centric_collection()
            .unwrap()
            .into_iter()
            .map(|q| (amb.sub(q).order, f.centric_predicates(q).unwrap()))
            .collect();
        // Aut_F(S) = Inn(S): radical under both readings
        let top = flags.last().unwrap().1;
        assert!(top.is_centric_radical_paper && top.is_centric_radical_standard);
        // the normal Klein four has Aut = Σ3 with O_2 trivial
        let v = find(amb, &[&[2, 1, 4, 3], &[3, 4, 1, 2]]);
        let fl = f.centric_predicates(v).unwrap();
        assert!(fl.is_centric_radical_standard && !fl.is_centric_radical_paper);
        // C4 has Aut_F = C2, O_2 = C2 but Inn trivial
        let c4 = (0..amb.subgroups().len())
            .find(|&q| {
                let s = amb.sub(q);
                s.order == 4 && s.elements.iter().any(|&x| amb.mul(x, x) != amb.identity())
            })
            .unwrap();
        let fl = f.centric_predicates(c4).unwrap();
        assert!(!fl.is_centric_radical_standard);
    }
}
