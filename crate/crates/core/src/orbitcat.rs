//! Finite categories with explicit composition tables, and the orbit
//! category of a fusion system on a collection of subgroups.
//!
//! Morphisms are numbered globally. Composition is written left to right:
//! `compose(f, g)` is "first `f`, then `g`".

use crate::error::{Error, Result};
use crate::fusion::{FusionSystem, SubId};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Arc;

const EXHAUSTIVE_CHECK_LIMIT: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct MorInfo {
    pub src: usize,
    pub dst: usize,
}

#[derive(Debug, Clone)]
pub struct FiniteCategory {
    labels: Vec<String>,
    mors: Vec<MorInfo>,
    identity: Vec<usize>,
    out: Vec<Vec<usize>>,
    out_pos: Vec<usize>,
    hom: Vec<Vec<Vec<usize>>>,
    comp: Vec<Vec<u32>>,
}

impl FiniteCategory {
    /// Builds and validates a category. `compose(f, g)` is called for every
    /// composable pair `f: a → b`, `g: b → c` and must return a morphism
    /// `a → c`.
    pub fn new(
        labels: Vec<String>,
        mors: Vec<MorInfo>,
        identity: Vec<usize>,
        compose: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = labels.len();
        if identity.len() != n {
            return Err(Error::InvalidCategory(format!(
                "{} identities for {n} objects",
                identity.len()
            )));
        }
        for (i, m) in mors.iter().enumerate() {
            if m.src >= n || m.dst >= n {
                return Err(Error::InvalidCategory(format!(
                    "morphism {i} has an unknown endpoint"
                )));
            }
        }
        for (a, &id) in identity.iter().enumerate() {
            if id >= mors.len() || mors[id] != (MorInfo { src: a, dst: a }) {
                return Err(Error::InvalidCategory(format!(
                    "identity of object {a} is not an endomorphism"
                )));
            }
        }
        let mut out = vec![Vec::new(); n];
        let mut out_pos = vec![0; mors.len()];
        let mut hom = vec![vec![Vec::new(); n]; n];
        for (i, m) in mors.iter().enumerate() {
            out_pos[i] = out[m.src].len();
            out[m.src].push(i);
            hom[m.src][m.dst].push(i);
        }
        let mut comp = Vec::with_capacity(mors.len());
        for (f, m) in mors.iter().enumerate() {
            let mut row = Vec::with_capacity(out[m.dst].len());
            for &g in &out[m.dst] {
                let h = compose(f, g);
                if h >= mors.len() || mors[h].src != m.src || mors[h].dst != mors[g].dst {
                    return Err(Error::InvalidCategory(format!(
                        "composite of {f} and {g} has the wrong endpoints"
                    )));
                }
                row.push(h as u32);
            }
            comp.push(row);
        }
        let cat = Self {
            labels,
            mors,
            identity,
            out,
            out_pos,
            hom,
            comp,
        };
        cat.validate()?;
        Ok(cat)
    }

    fn validate(&self) -> Result<()> {
        for (f, m) in self.mors.iter().enumerate() {
            if self.compose(self.identity[m.src], f) != f
                || self.compose(f, self.identity[m.dst]) != f
            {
                return Err(Error::InvalidCategory(format!(
                    "identity law fails at morphism {f}"
                )));
            }
        }
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for f in 0..self.mors.len() {
            for &g in &self.out[self.mors[f].dst] {
                pairs.push((f, g));
            }
        }
        let triples: usize = pairs
            .iter()
            .map(|&(_, g)| self.out[self.mors[g].dst].len())
            .sum();
        if triples > EXHAUSTIVE_CHECK_LIMIT {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            pairs.shuffle(&mut rng);
            pairs.truncate(EXHAUSTIVE_CHECK_LIMIT / 8);
        }
        for (f, g) in pairs {
            let fg = self.compose(f, g);
            for &h in &self.out[self.mors[g].dst] {
                if self.compose(fg, h) != self.compose(f, self.compose(g, h)) {
                    return Err(Error::InvalidCategory(format!(
                        "composition is not associative at ({f}, {g}, {h})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn num_objects(&self) -> usize {
        self.labels.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.mors.len()
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mor(&self, f: usize) -> MorInfo {
        self.mors[f]
    }

    pub fn identity(&self, a: usize) -> usize {
        self.identity[a]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.mors[f].src] == f
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.hom[a][b]
    }

    /// Morphisms out of `a`, in global order.
    pub fn out_of(&self, a: usize) -> &[usize] {
        &self.out[a]
    }

    /// First `f`, then `g`.
    pub fn compose(&self, f: usize, g: usize) -> usize {
        debug_assert_eq!(self.mors[f].dst, self.mors[g].src);
        self.comp[f][self.out_pos[g]] as usize
    }

    /// Non-degenerate chains `P₀ → … → Pₙ` (no identity links), in
    /// lexicographic order of morphism ids. For `n = 0` each chain is a
    /// single object, returned as `start` with no arrows.
    pub fn nondegenerate_chains(&self, n: usize) -> Vec<Chain> {
        let mut out = Vec::new();
        for a in 0..self.num_objects() {
            self.chains_from(a, n, &mut Vec::new(), &mut out);
        }
        out
    }

    /// Number of non-degenerate chains of length `n`, stopping early
    /// above `cap`.
    pub fn count_chains(&self, n: usize, cap: usize) -> usize {
        let mut memo = vec![vec![0usize; self.num_objects()]; n + 1];
        for a in 0..self.num_objects() {
            memo[0][a] = 1;
        }
        for k in 1..=n {
            for a in 0..self.num_objects() {
                let mut s = 0usize;
                for &f in &self.out[a] {
                    if !self.is_identity(f) {
                        s = s.saturating_add(memo[k - 1][self.mors[f].dst]);
                    }
                }
                memo[k][a] = s.min(cap.saturating_add(1));
            }
        }
        memo[n].iter().fold(0usize, |a, &b| a.saturating_add(b))
    }

    fn chains_from(&self, a: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Chain>) {
        if cur.len() == n {
            out.push(Chain {
                start: a,
                arrows: cur.clone(),
            });
            return;
        }
        let at = cur.last().map_or(a, |&f| self.mors[f].dst);
        for &f in &self.out[at] {
            if self.is_identity(f) {
                continue;
            }
            cur.push(f);
            self.chains_from(a, n, cur, out);
            cur.pop();
        }
    }

    /// Number of connected components of the underlying graph.
    pub fn components(&self) -> usize {
        let edges: Vec<(usize, usize)> = self.mors.iter().map(|m| (m.src, m.dst)).collect();
        crate::fpla::graph_h_dims(self.num_objects(), &edges, 2)
            .map(|(h0, _)| h0)
            .unwrap_or(0)
    }

    /// The poset on `0..n` generated by the relations `a ≤ b`.
    pub fn poset(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        let mut le = vec![vec![false; n]; n];
        for (a, row) in le.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::InvalidCategory(format!(
                    "relation ({a}, {b}) out of range"
                )));
            }
            le[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if le[i][k] && le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && le[i][j] && le[j][i] {
                    return Err(Error::InvalidCategory("relations contain a cycle".into()));
                }
            }
        }
        let mut mors = Vec::new();
        let mut index = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                if le[i][j] {
                    index.insert((i, j), mors.len());
                    mors.push(MorInfo { src: i, dst: j });
                }
            }
        }
        let identity = (0..n).map(|i| index[&(i, i)]).collect();
        let m2 = mors.clone();
        Self::new(
            (0..n).map(|i| i.to_string()).collect(),
            mors,
            identity,
            |f, g| index[&(m2[f].src, m2[g].dst)],
        )
    }

    /// One object whose endomorphisms form a group with the given
    /// multiplication table (`table[a][b]` = first `a`, then `b`).
    pub fn one_object_group(table: &[Vec<usize>], identity: usize) -> Result<Self> {
        let n = table.len();
        Self::new(
            vec!["*".into()],
            vec![MorInfo { src: 0, dst: 0 }; n],
            vec![identity],
            |f, g| table[f][g],
        )
    }

    /// Free category on a quiver without directed cycles: morphisms are
    /// paths, identities are the empty paths.
    pub fn free_on_acyclic_quiver(n: usize, arrows: &[(usize, usize)]) -> Result<Self> {
        Ok(Self::free_with_arrow_ids(n, arrows)?.0)
    }

    /// As [`Self::free_on_acyclic_quiver`], also returning the morphism of
    /// each one-arrow path.
    pub fn free_with_arrow_ids(n: usize, arrows: &[(usize, usize)]) -> Result<(Self, Vec<usize>)> {
        for &(a, b) in arrows {
            if a >= n || b >= n {
                return Err(Error::InvalidCategory(format!(
                    "arrow ({a}, {b}) out of range"
                )));
            }
        }
        let mut paths: Vec<(usize, Vec<usize>)> = (0..n).map(|a| (a, vec![])).collect();
        let mut frontier: Vec<usize> = (0..n).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for i in frontier {
                let (a, p) = paths[i].clone();
                let end = p.last().map_or(a, |&k| arrows[k].1);
                for (k, &(s, _)) in arrows.iter().enumerate() {
                    if s == end {
                        let mut q = p.clone();
                        q.push(k);
                        if q.len() > n {
                            return Err(Error::InvalidCategory(
                                "quiver has a directed cycle".into(),
                            ));
                        }
                        next.push(paths.len());
                        paths.push((a, q));
                    }
                }
            }
            frontier = next;
        }
        let index: HashMap<(usize, Vec<usize>), usize> = paths
            .iter()
            .enumerate()
            .map(|(i, (a, p))| ((*a, p.clone()), i))
            .collect();
        let mors: Vec<MorInfo> = paths
            .iter()
            .map(|(a, p)| MorInfo {
                src: *a,
                dst: p.last().map_or(*a, |&k| arrows[k].1),
            })
            .collect();
        let ids = (0..arrows.len())
            .map(|k| index[&(arrows[k].0, vec![k])])
            .collect();
        let cat = Self::new(
            (0..n).map(|i| i.to_string()).collect(),
            mors,
            (0..n).collect(),
            |f, g| {
                let (a, p) = &paths[f];
                let mut q = p.clone();
                q.extend_from_slice(&paths[g].1);
                index[&(*a, q)]
            },
        )?;
        Ok((cat, ids))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    pub start: usize,
    pub arrows: Vec<usize>,
}

/// The orbit category `O_F(C)`: objects are the subgroups in `C`
/// (ascending id), morphisms are `Inn(Q)`-orbits of `Hom_F(P, Q)` under
/// post-composition with conjugation by elements of `Q`.
#[derive(Debug, Clone)]
pub struct OrbitCategory {
    pub cat: Arc<FiniteCategory>,
    pub fusion: Arc<FusionSystem>,
    pub objects: Vec<SubId>,
    /// Least image table in each orbit.
    pub reps: Vec<Box<[u16]>>,
    /// Number of `F`-morphisms in each orbit.
    pub fiber: Vec<usize>,
    classes: HashMap<(usize, usize, Box<[u16]>), usize>,
}

impl OrbitCategory {
    pub fn new(fusion: Arc<FusionSystem>, collection: &[SubId]) -> Result<Self> {
        let amb = fusion.ambient().clone();
        let mut objects = collection.to_vec();
        objects.sort_unstable();
        objects.dedup();
        let pos: HashMap<SubId, usize> = objects.iter().enumerate().map(|(i, &q)| (q, i)).collect();
        for &q in &objects {
            for r in fusion.conjugacy_orbit(q)? {
                if !pos.contains_key(&r) {
                    return Err(Error::CollectionNotClosed(format!(
                        "{} is F-conjugate to {} but not in the collection",
                        amb.describe(r),
                        amb.describe(q)
                    )));
                }
            }
        }
        let homs: Vec<_> = objects
            .iter()
            .map(|&q| fusion.hom_to_s(q))
            .collect::<Result<_>>()?;
        let mut mors = Vec::new();
        let mut reps: Vec<Box<[u16]>> = Vec::new();
        let mut fiber = Vec::new();
        let mut classes = HashMap::new();
        for a in 0..objects.len() {
            for (b, &q) in objects.iter().enumerate() {
                let qs = amb.sub(q);
                let mut seen: HashMap<Box<[u16]>, usize> = HashMap::new();
                for t in homs[a].iter().filter(|t| t.iter().all(|&x| qs.contains(x))) {
                    if seen.contains_key(t) {
                        continue;
                    }
                    let orbit: Vec<Box<[u16]>> = {
                        let mut o: Vec<Box<[u16]>> = qs
                            .elements
                            .iter()
                            .map(|&g| t.iter().map(|&x| amb.conj(x, g)).collect())
                            .collect();
                        o.sort();
                        o.dedup();
                        o
                    };
                    let id = mors.len();
                    mors.push(MorInfo { src: a, dst: b });
                    reps.push(orbit[0].clone());
                    fiber.push(orbit.len());
                    for o in orbit {
                        classes.insert((a, b, o.clone()), id);
                        seen.insert(o, id);
                    }
                }
            }
        }
        let identity: Vec<usize> = objects
            .iter()
            .enumerate()
            .map(|(a, &q)| {
                let t: Box<[u16]> = amb.sub(q).elements.clone().into_boxed_slice();
                classes[&(a, a, t)]
            })
            .collect();
        let compose_table = |f: usize, g: usize| -> Result<usize> {
            let (mf, mg) = (mors[f], mors[g]);
            let q = objects[mf.dst];
            let t = amb.compose(&reps[f], q, &reps[g]);
            let id = *classes.get(&(mf.src, mg.dst, t)).ok_or_else(|| {
                Error::WellDefinednessFailure(format!(
                    "composite of {f} and {g} is not an F-morphism"
                ))
            })?;
            // independence of the representative of f
            for &x in &amb.sub(q).gens {
                let shifted: Box<[u16]> = reps[f].iter().map(|&y| amb.conj(y, x)).collect();
                let t2 = amb.compose(&shifted, q, &reps[g]);
                if classes.get(&(mf.src, mg.dst, t2)) != Some(&id) {
                    return Err(Error::WellDefinednessFailure(format!(
                        "composite of orbit morphisms {f} and {g} depends on the representative"
                    )));
                }
            }
            Ok(id)
        };
        let mut table: HashMap<(usize, usize), usize> = HashMap::new();
        for f in 0..mors.len() {
            for g in 0..mors.len() {
                if mors[f].dst == mors[g].src {
                    table.insert((f, g), compose_table(f, g)?);
                }
            }
        }
        let labels = objects.iter().map(|&q| amb.describe(q)).collect();
        let cat = FiniteCategory::new(labels, mors, identity, |f, g| table[&(f, g)])?;
        Ok(Self {
            cat: Arc::new(cat),
            fusion,
            objects,
            reps,
            fiber,
            classes,
        })
    }

    pub fn object_of(&self, q: SubId) -> Option<usize> {
        self.objects.binary_search(&q).ok()
    }

    /// Orbit morphism containing the `F`-morphism `table: P → Q`.
    pub fn classify(&self, p: SubId, q: SubId, table: &[u16]) -> Option<usize> {
        let a = self.object_of(p)?;
        let b = self.object_of(q)?;
        self.classes.get(&(a, b, table.into())).copied()
    }

    /// The inclusion `P ≤ Q` as an orbit morphism.
    pub fn inclusion(&self, p: SubId, q: SubId) -> Option<usize> {
        let t: Box<[u16]> = self
            .fusion
            .ambient()
            .sub(p)
            .elements
            .clone()
            .into_boxed_slice();
        self.classify(p, q, &t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{sylow_p, FiniteGroup};

    fn s4_d8() -> Arc<FusionSystem> {
        let g = Arc::new(FiniteGroup::symmetric(4));
        let s = Arc::new(sylow_p(&g, 2).unwrap());
        Arc::new(FusionSystem::of_group(s, g, 2).unwrap())
    }

    #[test]
    fn chains_in_small_categories() {
        let one = FiniteCategory::poset(1, &[]).unwrap();
        assert!(one.nondegenerate_chains(1).is_empty());
        assert_eq!(one.nondegenerate_chains(0).len(), 1);
        let two = FiniteCategory::poset(2, &[(0, 1)]).unwrap();
        assert_eq!(two.nondegenerate_chains(1).len(), 1);
        assert_eq!(two.count_chains(1, 100), 1);
        assert_eq!(two.nondegenerate_chains(2).len(), 0);
    }

    #[test]
    fn associativity_is_checked() {
        // a "composition" that is not associative: Z/3 with a ∘ b = a - b
        let table: Vec<Vec<usize>> = (0..3)
            .map(|a| (0..3).map(|b| (a + 3 - b) % 3).collect())
            .collect();
        assert!(FiniteCategory::one_object_group(&table, 0).is_err());
        let good: Vec<Vec<usize>> = (0..3)
            .map(|a| (0..3).map(|b| (a + b) % 3).collect())
            .collect();
        assert!(FiniteCategory::one_object_group(&good, 0).is_ok());
    }

    #[test]
    fn free_category_counts_paths() {
        let c = FiniteCategory::free_on_acyclic_quiver(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        // 3 identities, 3 arrows, 1 path of length 2
        assert_eq!(c.num_morphisms(), 7);
        assert_eq!(c.hom(0, 2).len(), 2);
    }

    #[test]
    fn orbit_category_of_s_on_s() {
        let f = s4_d8();
        let amb = f.ambient().clone();
        let fs =
            Arc::new(FusionSystem::of_group(amb.group().clone(), amb.group().clone(), 2).unwrap());
        let o = OrbitCategory::new(fs, &[amb.top()]).unwrap();
        assert_eq!(o.cat.num_morphisms(), 1);
    }

    #[test]
    fn centric_orbit_category_of_s4() {
        let f = s4_d8();
        let amb = f.ambient().clone();
        let c = f.centric_collection().unwrap();
        let o = OrbitCategory::new(f.clone(), &c).unwrap();
        let s = o.object_of(amb.top()).unwrap();
        assert_eq!(o.cat.hom(s, s).len(), 1);
        for a in 0..o.cat.num_objects() {
            assert!(!o.cat.hom(a, s).is_empty());
            for b in 0..o.cat.num_objects() {
                let total: usize = o.cat.hom(a, b).iter().map(|&m| o.fiber[m]).sum();
                let direct = f.hom(o.objects[a], o.objects[b]).unwrap().len();
                assert_eq!(total, direct);
            }
        }
        let z = amb.center(amb.top());
        assert!(matches!(
            OrbitCategory::new(f.clone(), &[z, c[0]]),
            Err(Error::CollectionNotClosed(_))
        ));
    }
}
