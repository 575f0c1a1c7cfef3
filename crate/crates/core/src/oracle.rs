//! Seeded random families for cross-checking independent computations:
//! nerve cochains against projective resolutions, and union-find graph
//! homology against boundary-matrix ranks.

use crate::error::Result;
use crate::fpla::{graph_h_dims, FpMatrix};
use crate::funmod::FpFunctor;
use crate::holim::{ext_category, higher_limits};
use crate::orbitcat::FiniteCategory;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::sync::Arc;

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct OracleCase {
    pub kind: String,
    pub objects: usize,
    pub morphisms: usize,
    pub dims: Vec<usize>,
    pub lim: Vec<usize>,
    pub ext: Vec<usize>,
    pub equal: bool,
}

fn random_matrix(rng: &mut ChaCha8Rng, p: u32, rows: usize, cols: usize) -> FpMatrix {
    let mut m = FpMatrix::zeros(p, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, rng.gen_range(0..p) as u8);
        }
    }
    m
}

/// A random functor on the free category of a random acyclic quiver.
pub fn random_free_functor(rng: &mut ChaCha8Rng, p: u32) -> Result<FpFunctor> {
    let n = rng.gen_range(1..=5);
    let mut arrows = Vec::new();
    for _ in 0..rng.gen_range(0..=6) {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a < b {
            arrows.push((a, b));
        }
    }
    let (cat, path_of_arrow) = FiniteCategory::free_with_arrow_ids(n, &arrows)?;
    let cat = Arc::new(cat);
    let dims: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
    let arrow_mats: Vec<FpMatrix> = arrows
        .iter()
        .map(|&(a, b)| random_matrix(rng, p, dims[b], dims[a]))
        .collect();
    // extend paths one arrow at a time: M(f then k) = M(k)·M(f)
    let mut mats: Vec<Option<FpMatrix>> = vec![None; cat.num_morphisms()];
    for a in 0..n {
        mats[cat.identity(a)] = Some(FpMatrix::identity(p, dims[a]));
    }
    let mut frontier: Vec<usize> = (0..n).map(|a| cat.identity(a)).collect();
    while let Some(f) = frontier.pop() {
        let mf = mats[f].clone().unwrap();
        let end = cat.mor(f).dst;
        for (k, &(a, _)) in arrows.iter().enumerate() {
            if a != end {
                continue;
            }
            let g = cat.compose(f, path_of_arrow[k]);
            if mats[g].is_none() {
                mats[g] = Some(arrow_mats[k].mul(&mf)?);
                frontier.push(g);
            }
        }
    }
    let mats = mats.into_iter().map(|m| m.unwrap()).collect();
    FpFunctor::new(cat, p, dims, mats)
}

/// A random poset on at most five points with a direct sum of functors
/// supported on random convex subsets.
pub fn random_poset_functor(rng: &mut ChaCha8Rng, p: u32) -> Result<FpFunctor> {
    let n = rng.gen_range(1..=5);
    let mut rel = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(0.4) {
                rel.push((a, b));
            }
        }
    }
    let cat = Arc::new(FiniteCategory::poset(n, &rel)?);
    let le = |a: usize, b: usize| !cat.hom(a, b).is_empty();
    let summands = rng.gen_range(1..=2);
    let mut supports = Vec::new();
    for _ in 0..summands {
        let up: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        let down: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        let in_u = |x: usize| up.iter().any(|&u| le(u, x));
        let in_d = |x: usize| down.iter().any(|&d| le(x, d));
        supports.push((0..n).map(|x| in_u(x) && in_d(x)).collect::<Vec<bool>>());
    }
    let dims: Vec<usize> = (0..n)
        .map(|x| supports.iter().filter(|s| s[x]).count())
        .collect();
    let mats = (0..cat.num_morphisms())
        .map(|f| {
            let mi = cat.mor(f);
            let (src, dst) = (mi.src, mi.dst);
            let mut m = FpMatrix::zeros(p, dims[dst], dims[src]);
            let (mut r, mut c) = (0, 0);
            for s in &supports {
                if s[dst] && s[src] {
                    m.set(r, c, 1);
                }
                r += s[dst] as usize;
                c += s[src] as usize;
            }
            m
        })
        .collect();
    FpFunctor::new(cat, p, dims, mats)
}

/// `lim^n M` against `Ext^n(const, M)` for `count` random functors.
pub fn holim_ext_family(
    count: usize,
    seed: u64,
    p: u32,
    n_max: usize,
    budget: usize,
) -> Result<Vec<OracleCase>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let (kind, m) = if i % 2 == 0 {
            ("free", random_free_functor(&mut rng, p)?)
        } else {
            ("poset", random_poset_functor(&mut rng, p)?)
        };
        let cat = m.cat.clone();
        let lim = higher_limits(&cat, &m, n_max, budget)?.dims;
        let ext = ext_category(&FpFunctor::constant(cat.clone(), p), &m, n_max, budget)?;
        out.push(OracleCase {
            kind: kind.into(),
            objects: cat.num_objects(),
            morphisms: cat.num_morphisms(),
            dims: m.dims().to_vec(),
            equal: lim == ext,
            lim,
            ext,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct GraphCase {
    pub vertices: usize,
    pub edges: usize,
    pub h: (usize, usize),
    pub rank_oracle: (usize, usize),
    pub equal: bool,
}

/// `(h0, h1)` from the rank of the boundary matrix `C₁ → C₀`.
pub fn boundary_rank_h(vertices: usize, edges: &[(usize, usize)], p: u32) -> (usize, usize) {
    let mut d = FpMatrix::zeros(p, edges.len(), vertices);
    for (i, &(a, b)) in edges.iter().enumerate() {
        if a != b {
            d.set(i, a, (p - 1) as u8);
            d.set(i, b, 1);
        }
    }
    let r = d.rank();
    (vertices - r, edges.len() - r)
}

pub fn graph_family(count: usize, seed: u64, p: u32) -> Result<Vec<GraphCase>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let v = rng.gen_range(1..=30);
            let e = rng.gen_range(0..=45);
            let edges: Vec<(usize, usize)> = (0..e)
                .map(|_| (rng.gen_range(0..v), rng.gen_range(0..v)))
                .collect();
            let h = graph_h_dims(v, &edges, p)?;
            let rank_oracle = boundary_rank_h(v, &edges, p);
            Ok(GraphCase {
                vertices: v,
                edges: e,
                h,
                rank_oracle,
                equal: h == rank_oracle,
            })
        })
        .collect()
}
