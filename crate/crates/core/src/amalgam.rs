//! Trees of groups, their completion fusion systems, the graphs
//! `Rep_F(P, FG)` and the functor `C_G^p = H₁(Rep_F(−, FG); F_p)`.
//!
//! The completion and its Bass–Serre tree are never built. Every local
//! Sylow subgroup `S(X)` is embedded in `S = S(v*)` once, so an `F`-map
//! into `S(e)` is literally also a map into `S(v)` and `S(w)`.

use crate::error::{Error, Result};
use crate::fpla::{graph_h_dims, FpMatrix};
use crate::funmod::FpFunctor;
use crate::fusion::{Ambient, FusionSystem, PartSpec, SubId};
use crate::groups::{
    abelianization_mod_p_modulo, centralizer, generate_subgroup, p_part, sylow_containing, sylow_p,
    Elem, FiniteGroup, GroupHom,
};
use crate::orbitcat::OrbitCategory;
use crate::par;
use serde::Serialize;
use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

pub const DEFAULT_MAX_TREE_VERTICES: usize = 8;

#[derive(Debug, Clone)]
pub struct EdgeSpec {
    pub name: String,
    pub group: Arc<FiniteGroup>,
    pub v: usize,
    pub w: usize,
    pub phi_v: GroupHom,
    pub phi_w: GroupHom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TreeObject {
    Vertex(usize),
    Edge(usize),
}

/// A p-local tree of groups with its local Sylow data embedded in `S`.
#[derive(Debug)]
pub struct TreeOfGroups {
    pub p: u32,
    pub vertex_names: Vec<String>,
    pub vertex_groups: Vec<Arc<FiniteGroup>>,
    pub edges: Vec<EdgeSpec>,
    pub root: usize,
    amb: Arc<Ambient>,
    vertex_parts: Vec<PartSpec>,
    edge_parts: Vec<PartSpec>,
    locals: Vec<FusionSystem>,
}

impl TreeOfGroups {
    /// `root_sylow` overrides the Sylow subgroup of the root group; by
    /// default it is grown from the image of an edge Sylow subgroup.
    pub fn new(
        p: u32,
        vertices: Vec<(String, Arc<FiniteGroup>)>,
        edges: Vec<EdgeSpec>,
        root: usize,
        root_sylow: Option<Arc<FiniteGroup>>,
    ) -> Result<Self> {
        let nv = vertices.len();
        if nv == 0 || nv > DEFAULT_MAX_TREE_VERTICES {
            return Err(Error::InvalidTree(format!(
                "{nv} vertices (allowed 1..={DEFAULT_MAX_TREE_VERTICES})"
            )));
        }
        if edges.len() + 1 != nv || root >= nv {
            return Err(Error::InvalidTree(format!(
                "{nv} vertices need {} edges",
                nv - 1
            )));
        }
        let (vertex_names, vertex_groups): (Vec<String>, Vec<Arc<FiniteGroup>>) =
            vertices.into_iter().unzip();
        for e in &edges {
            if e.v >= nv || e.w >= nv || e.v == e.w {
                return Err(Error::InvalidTree(format!(
                    "edge {} has bad endpoints",
                    e.name
                )));
            }
            for (hom, x) in [(&e.phi_v, e.v), (&e.phi_w, e.w)] {
                if *hom.source != *e.group || *hom.target != *vertex_groups[x] {
                    return Err(Error::IncompatibleDomains(format!(
                        "edge map of {} does not go from {} to {}",
                        e.name, e.name, vertex_names[x]
                    )));
                }
                if !hom.is_injective() {
                    return Err(Error::NotInjective(format!(
                        "edge map {} → {}",
                        e.name, vertex_names[x]
                    )));
                }
            }
        }
        // orient every edge away from the root
        let mut parent_edge: Vec<Option<usize>> = vec![None; nv];
        let mut seen = vec![false; nv];
        seen[root] = true;
        let mut order = vec![root];
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for (i, e) in edges.iter().enumerate() {
                let other = if e.v == u {
                    e.w
                } else if e.w == u {
                    e.v
                } else {
                    continue;
                };
                if !seen[other] {
                    seen[other] = true;
                    parent_edge[other] = Some(i);
                    order.push(other);
                }
            }
        }
        if order.len() != nv {
            return Err(Error::InvalidTree("the graph is not connected".into()));
        }
        let hom_at = |e: &EdgeSpec, x: usize| {
            if e.v == x {
                e.phi_v.clone()
            } else {
                e.phi_w.clone()
            }
        };
        // Sylow subgroup of the root
        let s_root = match root_sylow {
            Some(s) => {
                if !s.is_subgroup_of(&vertex_groups[root])
                    || s.order() != p_part(vertex_groups[root].order(), p)
                {
                    return Err(Error::NotAPGroup(format!(
                        "override is not a Sylow {p}-subgroup of {}",
                        vertex_names[root]
                    )));
                }
                s
            }
            None => {
                let g = &vertex_groups[root];
                let seed = match edges.iter().position(|e| e.v == root || e.w == root) {
                    Some(i) => {
                        let e = &edges[i];
                        let se = sylow_p(&e.group, p)?;
                        let img: Vec<Elem> = se
                            .generators()
                            .iter()
                            .map(|x| hom_at(e, root).apply(x).unwrap())
                            .collect();
                        generate_subgroup(g, &img)?
                    }
                    None => FiniteGroup::generate(g.rep().clone(), vec![], 1)?,
                };
                Arc::new(sylow_containing(g, p, &seed)?)
            }
        };
        let amb = Arc::new(Ambient::new(s_root.clone(), p)?);
        // embeddings S(v) → S, top down
        let mut vsyl: Vec<Option<(Arc<FiniteGroup>, GroupHom)>> = vec![None; nv];
        vsyl[root] = Some((s_root.clone(), identity(&s_root)));
        let mut edge_parts: Vec<Option<PartSpec>> = vec![None; edges.len()];
        for &v in &order[1..] {
            let ei = parent_edge[v].unwrap();
            let e = &edges[ei];
            let u = if e.v == v { e.w } else { e.v };
            let (su, eps_u) = vsyl[u].clone().unwrap();
            let gu = &vertex_groups[u];
            let to_u = hom_at(e, u);
            let to_v = hom_at(e, v);
            let se = Arc::new(sylow_p(&e.group, p)?);
            if se.order() != p_part(vertex_groups[v].order(), p) {
                return Err(Error::PLocalityViolated(format!(
                    "{p} divides the index of {} in {}",
                    e.name, vertex_names[v]
                )));
            }
            // correcting element g with φ_u(S_e)^g ≤ S(u)
            let img: Vec<Elem> = se
                .elements()
                .iter()
                .map(|x| to_u.apply(x).unwrap())
                .collect();
            let g = gu
                .elements()
                .iter()
                .find(|g| img.iter().all(|y| su.contains(&gu.conj(y, g))))
                .cloned()
                .ok_or_else(|| {
                    Error::InvariantViolated(format!(
                        "no conjugate of S({}) lies in S({})",
                        e.name, vertex_names[u]
                    ))
                })?;
            let eps_e_images: Vec<Elem> = se
                .generators()
                .iter()
                .map(|x| eps_u.apply(&gu.conj(&to_u.apply(x).unwrap(), &g)).unwrap())
                .collect();
            let eps_e = GroupHom::new(se.clone(), amb.group().clone(), &eps_e_images)?;
            // S(v) = φ_v(S_e), embedded through ε_e
            let sv_elems: Vec<Elem> = se
                .generators()
                .iter()
                .map(|x| to_v.apply(x).unwrap())
                .collect();
            let sv = Arc::new(
                generate_subgroup(&vertex_groups[v], &sv_elems)?.with_canonical_generators(),
            );
            let back = to_v.restrict(se.clone())?;
            let images: Vec<Elem> = sv
                .generators()
                .iter()
                .map(|y| {
                    let x = se
                        .elements()
                        .iter()
                        .find(|x| back.apply(x).as_deref() == Some(&**y))
                        .unwrap();
                    eps_e.apply(x).unwrap()
                })
                .collect();
            let eps_v = GroupHom::new(sv.clone(), amb.group().clone(), &images)?;
            vsyl[v] = Some((sv, eps_v));
            edge_parts[ei] = Some(PartSpec {
                name: e.name.clone(),
                group: e.group.clone(),
                embed: eps_e,
            });
        }
        let vertex_parts: Vec<PartSpec> = vsyl
            .into_iter()
            .enumerate()
            .map(|(v, x)| {
                let (_, embed) = x.unwrap();
                PartSpec {
                    name: vertex_names[v].clone(),
                    group: vertex_groups[v].clone(),
                    embed,
                }
            })
            .collect();
        let edge_parts: Vec<PartSpec> = edge_parts.into_iter().map(|x| x.unwrap()).collect();
        let locals = vertex_parts
            .iter()
            .chain(edge_parts.iter())
            .map(|ps| FusionSystem::realizable_part(amb.clone(), ps.clone()))
            .collect::<Result<_>>()?;
        Ok(Self {
            p,
            vertex_names,
            vertex_groups,
            edges,
            root,
            amb,
            vertex_parts,
            edge_parts,
            locals,
        })
    }

    /// `G₁ *_{G_e} G₂` with root `G₁`.
    pub fn two_vertex(
        p: u32,
        g1: (String, Arc<FiniteGroup>),
        g2: (String, Arc<FiniteGroup>),
        ge: (String, Arc<FiniteGroup>),
        phi1: &[Elem],
        phi2: &[Elem],
        root_sylow: Option<Arc<FiniteGroup>>,
    ) -> Result<Self> {
        let f1 = GroupHom::new(ge.1.clone(), g1.1.clone(), phi1)?;
        let f2 = GroupHom::new(ge.1.clone(), g2.1.clone(), phi2)?;
        let edge = EdgeSpec {
            name: ge.0,
            group: ge.1,
            v: 0,
            w: 1,
            phi_v: f1,
            phi_w: f2,
        };
        Self::new(p, vec![g1, g2], vec![edge], 0, root_sylow)
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.amb
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_groups.len()
    }

    /// Embedded `S(X)`.
    pub fn sylow_id(&self, x: TreeObject) -> SubId {
        self.local(x).base()
    }

    /// `FG(X)` over the embedded `S(X)`.
    pub fn local(&self, x: TreeObject) -> &FusionSystem {
        match x {
            TreeObject::Vertex(v) => &self.locals[v],
            TreeObject::Edge(e) => &self.locals[self.num_vertices() + e],
        }
    }

    pub fn vertex_parts(&self) -> &[PartSpec] {
        &self.vertex_parts
    }

    pub fn edge_parts(&self) -> &[PartSpec] {
        &self.edge_parts
    }

    /// `G₂ = G_e` in a two-vertex tree: the second edge map is onto.
    pub fn is_degenerate(&self) -> bool {
        self.edges.len() == 1 && {
            let e = &self.edges[0];
            let other = if e.v == self.root { e.w } else { e.v };
            e.group.order() == self.vertex_groups[other].order()
        }
    }
}

fn identity(s: &Arc<FiniteGroup>) -> GroupHom {
    GroupHom::new(s.clone(), s.clone(), s.generators()).unwrap()
}

/// The fusion system of the completion: `⟨FG(v) : v⟩_S`.
pub fn completion_fusion(t: &TreeOfGroups) -> Result<FusionSystem> {
    FusionSystem::closure(t.amb.clone(), t.vertex_parts.clone())
}

#[derive(Debug, Clone, Serialize)]
pub struct RepClass {
    /// Least image table in the class.
    pub rep: Vec<u16>,
    pub size: usize,
}

/// `Rep_F(P, FG(X))`: classes of `Hom_F(P, S(X))` under post-composition
/// with `FG(X)`-morphisms, in order of their least element.
pub fn rep_classes(
    t: &TreeOfGroups,
    f: &FusionSystem,
    p: SubId,
    x: TreeObject,
) -> Result<Vec<RepClass>> {
    Ok(classes_with_lookup(t, f, p, x)?.0)
}

fn classes_with_lookup(
    t: &TreeOfGroups,
    f: &FusionSystem,
    p: SubId,
    x: TreeObject,
) -> Result<(Vec<RepClass>, HashMap<Box<[u16]>, usize>)> {
    let amb = &*t.amb;
    let local = t.local(x);
    let homs = f.hom(p, t.sylow_id(x))?;
    let mut lookup: HashMap<Box<[u16]>, usize> = HashMap::new();
    let mut classes = Vec::new();
    for a in &homs {
        if lookup.contains_key(a) {
            continue;
        }
        let r = amb.image_id(a);
        let id = classes.len();
        let mut size = 0;
        for g in local.hom_to_s(r)?.iter() {
            let b = amb.compose(a, r, g);
            if lookup.insert(b, id).is_none() {
                size += 1;
            }
        }
        classes.push(RepClass {
            rep: a.to_vec(),
            size,
        });
    }
    if lookup.len() != homs.len() {
        return Err(Error::InvariantViolated(
            "local morphisms leave Hom_F(P, S(X))".into(),
        ));
    }
    Ok((classes, lookup))
}

#[derive(Debug, Clone, Serialize)]
pub struct RepVertex {
    pub tree_vertex: usize,
    pub class: RepClass,
}

#[derive(Debug, Clone, Serialize)]
pub struct RepEdge {
    pub tree_edge: usize,
    pub class: RepClass,
    /// Oriented from the class over `v` to the class over `w`.
    pub ends: (usize, usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct RepGraph {
    pub subgroup: SubId,
    pub vertices: Vec<RepVertex>,
    pub edges: Vec<RepEdge>,
    pub h0: usize,
    pub h1: usize,
    #[serde(skip)]
    vertex_lookup: Vec<HashMap<Box<[u16]>, usize>>,
    #[serde(skip)]
    edge_lookup: Vec<HashMap<Box<[u16]>, usize>>,
    /// Edges outside the spanning forest; the fundamental cycle of the
    /// `k`-th one is `cycles[k]`.
    #[serde(skip)]
    pub non_tree: Vec<usize>,
    #[serde(skip)]
    pub cycles: Vec<Vec<u8>>,
}

impl RepGraph {
    pub fn is_connected(&self) -> bool {
        self.h0 == 1
    }

    /// Index of the vertex over `tree_vertex` containing the map `alpha`.
    pub fn vertex_of(&self, tree_vertex: usize, alpha: &[u16]) -> Option<usize> {
        self.vertex_lookup.get(tree_vertex)?.get(alpha).copied()
    }

    /// Coordinates of a cycle in the fundamental-cycle basis.
    pub fn cycle_coords(&self, z: &[u8]) -> Vec<u8> {
        self.non_tree.iter().map(|&e| z[e]).collect()
    }
}

/// Builds `Rep_F(P, FG)`. Fails if the graph is disconnected.
pub fn rep_graph(t: &TreeOfGroups, f: &FusionSystem, p: SubId) -> Result<RepGraph> {
    let g = rep_graph_unchecked(t, f, p)?;
    if !g.is_connected() {
        return Err(Error::DisconnectedRepGraph {
            subgroup: t.amb.describe(p),
            components: g.h0,
        });
    }
    Ok(g)
}

fn rep_graph_unchecked(t: &TreeOfGroups, f: &FusionSystem, p: SubId) -> Result<RepGraph> {
    let prime = t.p;
    let mut vertices = Vec::new();
    let mut vertex_lookup = Vec::new();
    let mut offsets = Vec::new();
    for v in 0..t.num_vertices() {
        let (cls, mut look) = classes_with_lookup(t, f, p, TreeObject::Vertex(v))?;
        offsets.push(vertices.len());
        for c in look.values_mut() {
            *c += vertices.len();
        }
        vertices.extend(cls.into_iter().map(|class| RepVertex {
            tree_vertex: v,
            class,
        }));
        vertex_lookup.push(look);
    }
    let mut edges = Vec::new();
    let mut edge_lookup = Vec::new();
    for (ei, e) in t.edges.iter().enumerate() {
        let (cls, mut look) = classes_with_lookup(t, f, p, TreeObject::Edge(ei))?;
        for c in look.values_mut() {
            *c += edges.len();
        }
        for class in cls {
            let key: Box<[u16]> = class.rep.clone().into_boxed_slice();
            let a = *vertex_lookup[e.v].get(&key).ok_or_else(|| {
                Error::InvariantViolated("edge class does not land in its v-end".into())
            })?;
            let b = *vertex_lookup[e.w].get(&key).ok_or_else(|| {
                Error::InvariantViolated("edge class does not land in its w-end".into())
            })?;
            edges.push(RepEdge {
                tree_edge: ei,
                class,
                ends: (a, b),
            });
        }
        edge_lookup.push(look);
    }
    let pairs: Vec<(usize, usize)> = edges.iter().map(|e| e.ends).collect();
    let (h0, h1) = graph_h_dims(vertices.len(), &pairs, prime)?;
    let (non_tree, cycles) = fundamental_cycles(vertices.len(), &pairs, prime);
    debug_assert_eq!(non_tree.len(), h1);
    Ok(RepGraph {
        subgroup: p,
        vertices,
        edges,
        h0,
        h1,
        vertex_lookup,
        edge_lookup,
        non_tree,
        cycles,
    })
}

/// Spanning forest by edge order; one signed cycle per remaining edge.
fn fundamental_cycles(nv: usize, edges: &[(usize, usize)], p: u32) -> (Vec<usize>, Vec<Vec<u8>>) {
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    let mut non_tree = Vec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            non_tree.push(i);
        } else {
            parent[ra] = rb;
            adj[a].push((b, i));
            adj[b].push((a, i));
        }
    }
    let minus = (p - 1) as u8;
    let cycles = non_tree
        .iter()
        .map(|&t| {
            let (a, b) = edges[t];
            let mut z = vec![0u8; edges.len()];
            z[t] = 1;
            // tree path from b back to a
            let mut prev: Vec<Option<(usize, usize)>> = vec![None; nv];
            let mut seen = vec![false; nv];
            seen[b] = true;
            let mut queue = VecDeque::from([b]);
            while let Some(x) = queue.pop_front() {
                if x == a {
                    break;
                }
                for &(y, e) in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        prev[y] = Some((x, e));
                        queue.push_back(y);
                    }
                }
            }
            let mut y = a;
            while y != b {
                let (x, e) = prev[y].unwrap();
                // walking x → y along edge e
                z[e] = if edges[e] == (x, y) { 1 } else { minus };
                y = x;
            }
            z
        })
        .collect();
    (non_tree, cycles)
}

/// `C_G^p` on the orbit category, together with the graph of every object.
pub fn cgp_functor(t: &TreeOfGroups, oc: &OrbitCategory) -> Result<(FpFunctor, Vec<RepGraph>)> {
    let f = &*oc.fusion;
    let amb = &*t.amb;
    let prime = t.p;
    let graphs: Vec<RepGraph> = par::map(&oc.objects, |&q| rep_graph(t, f, q))
        .into_iter()
        .collect::<Result<_>>()?;
    let cat = oc.cat.clone();
    // φ: Q → P sends a cycle of Rep(P) to one of Rep(Q) by [α] ↦ [φα]
    let pull = |table: &[u16], src: usize, dst: usize| -> Result<FpMatrix> {
        let (gq, gp) = (&graphs[src], &graphs[dst]);
        let q = oc.objects[dst];
        let mut edge_map = Vec::with_capacity(gp.edges.len());
        for e in &gp.edges {
            let b = amb.compose(table, q, &e.class.rep);
            let j = *gq.edge_lookup[e.tree_edge].get(&b).ok_or_else(|| {
                Error::WellDefinednessFailure("precomposed edge class is missing".into())
            })?;
            edge_map.push(j);
        }
        let mut m = FpMatrix::zeros(prime, gp.h1, gq.h1);
        for (k, z) in gp.cycles.iter().enumerate() {
            let mut img = vec![0u8; gq.edges.len()];
            for (i, &c) in z.iter().enumerate() {
                if c != 0 {
                    let j = edge_map[i];
                    img[j] = ((img[j] as u32 + c as u32) % prime) as u8;
                }
            }
            for (j, &c) in gq.cycle_coords(&img).iter().enumerate() {
                m.set(k, j, c);
            }
        }
        Ok(m)
    };
    let ids: Vec<usize> = (0..cat.num_morphisms()).collect();
    let mats: Vec<FpMatrix> = par::map(&ids, |&m| -> Result<FpMatrix> {
        let mi = cat.mor(m);
        let rep = &oc.reps[m];
        let mat = pull(rep, mi.src, mi.dst)?;
        let target = oc.objects[mi.dst];
        for &x in &amb.sub(target).gens {
            let shifted: Vec<u16> = rep.iter().map(|&y| amb.conj(y, x)).collect();
            if pull(&shifted, mi.src, mi.dst)? != mat {
                return Err(Error::WellDefinednessFailure(format!(
                    "C_G^p of an orbit morphism into {} depends on the representative",
                    amb.describe(target)
                )));
            }
        }
        Ok(mat)
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let dims = graphs.iter().map(|g| g.h1).collect();
    let fun = FpFunctor::new(cat, prime, dims, mats)?;
    Ok((fun, graphs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CentralizerCheck {
    pub lhs: usize,
    pub rhs: usize,
    pub equal: bool,
}

/// For `G₂ = G_e`: `dim C_G^p(P)` against `dim Ab(C_{G₁}(P)/Z(P)) ⊗ F_p`.
pub fn degenerate_centralizer_check(
    t: &TreeOfGroups,
    f: &FusionSystem,
    p: SubId,
) -> Result<CentralizerCheck> {
    if !t.is_degenerate() {
        return Err(Error::NotDegenerate(
            "the non-root vertex group is larger than the edge group".into(),
        ));
    }
    if !f.is_centric(p)? {
        return Err(Error::NotCentric(t.amb.describe(p)));
    }
    let lhs = rep_graph(t, f, p)?.h1;
    let g1 = &t.vertex_groups[t.root];
    let pg = t.amb.to_group(p);
    let c = centralizer(g1, &pg);
    let z: Vec<Elem> = centralizer(&pg, &pg).elements().to_vec();
    let rhs = abelianization_mod_p_modulo(&c, &z, t.p);
    Ok(CentralizerCheck {
        lhs,
        rhs,
        equal: lhs == rhs,
    })
}
