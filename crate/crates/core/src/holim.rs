//! Higher limits and Ext over a finite category.
//!
//! `lim^n` comes from the normalized nerve: `C^n = ⊕ M(P₀)` over chains
//! `P₀ → … → Pₙ` without identity links. `Ext^n(N, M)` comes from a
//! resolution of `N` by sums of representables `F_p Hom(−, Q)`.

use crate::error::{Error, Result};
use crate::fpla::{left_kernel, Echelon, FpMatrix, Subspace};
use crate::funmod::{nat_space, FpFunctor};
use crate::fusion::{FusionSystem, SubId};
use crate::orbitcat::{Chain, FiniteCategory, OrbitCategory};
use crate::par;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Arc;

pub const DEFAULT_CHAIN_BUDGET: usize = 50_000;
pub const DEFAULT_RESOLUTION_BUDGET: usize = 20_000;
const DD_CHECK_LIMIT: usize = 50_000_000;

#[derive(Debug, Clone)]
pub struct CochainComplex {
    pub p: u32,
    pub dims: Vec<usize>,
    /// `d[n]: C^n → C^{n+1}`, acting on row vectors.
    pub d: Vec<FpMatrix>,
}

impl CochainComplex {
    pub fn max_degree(&self) -> usize {
        self.d.len().saturating_sub(1)
    }

    /// Exact check of `d^n d^{n+1} = 0`; skipped for very large products.
    pub fn check_dd(&self) -> Result<()> {
        for n in 0..self.d.len().saturating_sub(1) {
            let (a, b) = (&self.d[n], &self.d[n + 1]);
            if a.rows.saturating_mul(a.cols).saturating_mul(b.cols) > DD_CHECK_LIMIT {
                continue;
            }
            if !a.mul(b)?.is_zero() {
                return Err(Error::InvariantViolated(format!("d∘d ≠ 0 in degree {n}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HigherLimits {
    pub dims: Vec<usize>,
    pub cochain_dims: Vec<usize>,
    /// Basis of `lim⁰` inside `C⁰ = ⊕_P M(P)`.
    pub lim0_basis: Vec<Vec<u8>>,
    /// Cocycles representing a basis of `lim¹`.
    pub lim1_basis: Vec<Vec<u8>>,
}

/// The normalized cochain complex in degrees `0..=n_max+1`.
pub fn cochain_complex(
    cat: &FiniteCategory,
    m: &FpFunctor,
    n_max: usize,
    chain_budget: usize,
) -> Result<CochainComplex> {
    let p = m.p;
    let mut chains: Vec<Vec<Chain>> = Vec::with_capacity(n_max + 2);
    for n in 0..=n_max + 1 {
        let count = cat.count_chains(n, chain_budget);
        if count > chain_budget {
            return Err(Error::ChainBudgetExceeded {
                degree: n,
                count,
                budget: chain_budget,
            });
        }
        chains.push(cat.nondegenerate_chains(n));
    }
    let offsets: Vec<Vec<usize>> = chains
        .iter()
        .map(|cs| {
            let mut o = Vec::with_capacity(cs.len() + 1);
            o.push(0);
            for c in cs {
                o.push(o.last().unwrap() + m.dim(c.start));
            }
            o
        })
        .collect();
    let index: Vec<HashMap<&Chain, usize>> = chains
        .iter()
        .map(|cs| cs.iter().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();
    let dims: Vec<usize> = offsets.iter().map(|o| *o.last().unwrap()).collect();
    let mut d = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        // faces of each (n+1)-chain: (row offset, Some(morphism) or identity, sign)
        let faces = par::map(&chains[n + 1], |tau| {
            let k = tau.arrows.len();
            let mut out: Vec<(usize, Option<usize>, bool)> = Vec::with_capacity(k + 1);
            let f1 = tau.arrows[0];
            let first = Chain {
                start: cat.mor(f1).dst,
                arrows: tau.arrows[1..].to_vec(),
            };
            out.push((offsets[n][index[n][&first]], Some(f1), true));
            for i in 1..k {
                let h = cat.compose(tau.arrows[i - 1], tau.arrows[i]);
                if cat.is_identity(h) {
                    continue;
                }
                let mut arrows = tau.arrows[..i - 1].to_vec();
                arrows.push(h);
                arrows.extend_from_slice(&tau.arrows[i + 1..]);
                let c = Chain {
                    start: tau.start,
                    arrows,
                };
                out.push((offsets[n][index[n][&c]], None, i % 2 == 0));
            }
            let last = Chain {
                start: tau.start,
                arrows: tau.arrows[..k - 1].to_vec(),
            };
            out.push((offsets[n][index[n][&last]], None, k % 2 == 0));
            out
        });
        let mut mat = FpMatrix::zeros(p, dims[n], dims[n + 1]);
        for (t, (tau, fs)) in chains[n + 1].iter().zip(faces).enumerate() {
            let c0 = offsets[n + 1][t];
            let dim0 = m.dim(tau.start);
            for (r0, mor, plus) in fs {
                let sign = if plus { 1 } else { (p - 1) as u8 };
                match mor {
                    Some(f) => mat.add_block(r0, c0, m.matrix(f), sign),
                    None => {
                        for i in 0..dim0 {
                            mat.add_to(r0 + i, c0 + i, sign);
                        }
                    }
                }
            }
        }
        d.push(mat);
    }
    Ok(CochainComplex { p, dims, d })
}

/// `dim lim^n M` for `0 ≤ n ≤ n_max`.
pub fn higher_limits(
    cat: &FiniteCategory,
    m: &FpFunctor,
    n_max: usize,
    chain_budget: usize,
) -> Result<HigherLimits> {
    let cx = cochain_complex(cat, m, n_max, chain_budget)?;
    cx.check_dd()?;
    let ranks: Vec<usize> = par::map(&cx.d, |a| a.rank());
    let dims: Vec<usize> = (0..=n_max)
        .map(|n| cx.dims[n] - ranks[n] - if n > 0 { ranks[n - 1] } else { 0 })
        .collect();
    let lim0_basis = left_kernel(&cx.d[0]).basis;
    let lim1_basis = if n_max >= 1 {
        let z1 = left_kernel(&cx.d[1]);
        let mut b1 = Subspace::span(cx.p, cx.dims[1], cx.d[0].row_vectors()).echelon();
        z1.basis
            .into_iter()
            .filter(|z| b1.insert(z.clone()))
            .collect()
    } else {
        Vec::new()
    };
    debug_assert!(n_max < 1 || lim1_basis.len() == dims[1]);
    Ok(HigherLimits {
        dims,
        cochain_dims: cx.dims[..=n_max].to_vec(),
        lim0_basis,
        lim1_basis,
    })
}

/// A finite sum of representables `⊕_k F_p Hom(−, Q_k)`.
#[derive(Debug, Clone)]
struct FreeModule {
    gens: Vec<usize>,
    basis: Vec<Vec<(usize, usize)>>,
    index: Vec<HashMap<(usize, usize), usize>>,
}

impl FreeModule {
    fn new(cat: &FiniteCategory, gens: Vec<usize>) -> Self {
        let mut basis = vec![Vec::new(); cat.num_objects()];
        for (x, b) in basis.iter_mut().enumerate() {
            for (k, &q) in gens.iter().enumerate() {
                for &h in cat.hom(x, q) {
                    b.push((k, h));
                }
            }
        }
        let index = basis
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, &kh)| (kh, i)).collect())
            .collect();
        Self { gens, basis, index }
    }

    fn dim(&self, x: usize) -> usize {
        self.basis[x].len()
    }

    fn total(&self) -> usize {
        self.basis.iter().map(|b| b.len()).sum()
    }
}

enum Ambient<'a> {
    Functor(&'a FpFunctor),
    Free(&'a FreeModule),
}

impl Ambient<'_> {
    fn dim(&self, x: usize) -> usize {
        match self {
            Ambient::Functor(m) => m.dim(x),
            Ambient::Free(f) => f.dim(x),
        }
    }

    /// `v ∈ A(X)` pulled back along `f: X' → X`.
    fn act(&self, cat: &FiniteCategory, p: u32, v: &[u8], f: usize) -> Vec<u8> {
        match self {
            Ambient::Functor(m) => m.matrix(f).apply(v),
            Ambient::Free(fm) => {
                let x2 = cat.mor(f).src;
                let x = cat.mor(f).dst;
                let mut out = vec![0u8; fm.dim(x2)];
                for (i, &c) in v.iter().enumerate() {
                    if c != 0 {
                        let (k, h) = fm.basis[x][i];
                        let j = fm.index[x2][&(k, cat.compose(f, h))];
                        out[j] = ((out[j] as u32 + c as u32) % p) as u8;
                    }
                }
                out
            }
        }
    }
}

/// One step of the resolution: generators chosen in `A`, the free module
/// they span and the kernel of the cover.
struct Step {
    free: FreeModule,
    gen_vectors: Vec<Vec<u8>>,
    kernel: Vec<Subspace>,
}

fn cover_step(cat: &FiniteCategory, p: u32, amb: &Ambient, target: &[Subspace]) -> Result<Step> {
    let n = cat.num_objects();
    let mut image: Vec<Echelon> = (0..n).map(|x| Echelon::new(p, amb.dim(x))).collect();
    let mut gens = Vec::new();
    let mut gen_vectors = Vec::new();
    for q in (0..n).rev() {
        for b in &target[q].basis {
            let mut r = b.clone();
            if image[q].reduce(&mut r) {
                continue;
            }
            gens.push(q);
            gen_vectors.push(b.clone());
            for x in 0..n {
                for &h in cat.hom(x, q) {
                    image[x].insert(amb.act(cat, p, b, h));
                }
            }
        }
    }
    let free = FreeModule::new(cat, gens);
    let kernel: Vec<Subspace> = (0..n)
        .map(|x| {
            let rows: Vec<Vec<u8>> = free.basis[x]
                .iter()
                .map(|&(k, h)| amb.act(cat, p, &gen_vectors[k], h))
                .collect();
            let eps = if rows.is_empty() {
                FpMatrix::zeros(p, 0, amb.dim(x))
            } else {
                FpMatrix::from_rows(p, amb.dim(x), &rows)?
            };
            let ker = left_kernel(&eps);
            if ker.dim() + target[x].dim() != free.dim(x) {
                return Err(Error::InvariantViolated(format!(
                    "cover is not exact at object {}",
                    cat.label(x)
                )));
            }
            Ok(ker)
        })
        .collect::<Result<_>>()?;
    Ok(Step {
        free,
        gen_vectors,
        kernel,
    })
}

/// `dim Ext^n(N, M)` for `0 ≤ n ≤ n_max`.
pub fn ext_category(
    n_fun: &FpFunctor,
    m_fun: &FpFunctor,
    n_max: usize,
    budget: usize,
) -> Result<Vec<usize>> {
    if !Arc::ptr_eq(&n_fun.cat, &m_fun.cat) || n_fun.p != m_fun.p {
        return Err(Error::CategoryMismatch(
            "functors over different categories or primes".into(),
        ));
    }
    let cat = &*n_fun.cat;
    let p = n_fun.p;
    let full: Vec<Subspace> = (0..cat.num_objects())
        .map(|x| Subspace::full(p, n_fun.dim(x)))
        .collect();
    let mut steps: Vec<Step> = Vec::with_capacity(n_max + 2);
    for s in 0..=n_max + 1 {
        let step = match steps.last() {
            None => cover_step(cat, p, &Ambient::Functor(n_fun), &full)?,
            Some(prev) => cover_step(cat, p, &Ambient::Free(&prev.free), &prev.kernel)?,
        };
        let dim = step.free.total();
        if dim > budget {
            return Err(Error::ResolutionBudgetExceeded {
                step: s,
                dim,
                budget,
            });
        }
        steps.push(step);
    }
    // Hom(P_n, M) = ⊕_k M(Q_k); δ^n: Hom(P_n, M) → Hom(P_{n+1}, M)
    let hom_offsets: Vec<Vec<usize>> = steps
        .iter()
        .map(|st| {
            let mut o = vec![0];
            for &q in &st.free.gens {
                o.push(o.last().unwrap() + m_fun.dim(q));
            }
            o
        })
        .collect();
    let hom_dims: Vec<usize> = hom_offsets.iter().map(|o| *o.last().unwrap()).collect();
    let deltas: Vec<FpMatrix> = (0..=n_max)
        .map(|n| {
            let (cur, next) = (&steps[n], &steps[n + 1]);
            let mut mat = FpMatrix::zeros(p, hom_dims[n], hom_dims[n + 1]);
            for (k2, w) in next.gen_vectors.iter().enumerate() {
                let q2 = next.free.gens[k2];
                for (i, &c) in w.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let (k, h) = cur.free.basis[q2][i];
                    mat.add_block(
                        hom_offsets[n][k],
                        hom_offsets[n + 1][k2],
                        m_fun.matrix(h),
                        c,
                    );
                }
            }
            mat
        })
        .collect();
    let ranks: Vec<usize> = par::map(&deltas, |a| a.rank());
    let dims: Vec<usize> = (0..=n_max)
        .map(|n| hom_dims[n] - ranks[n] - if n > 0 { ranks[n - 1] } else { 0 })
        .collect();
    let nat = nat_space(n_fun, m_fun)?.dim();
    if dims[0] != nat {
        return Err(Error::InvariantViolated(format!(
            "Ext⁰ has dimension {} but Nat has dimension {nat}",
            dims[0]
        )));
    }
    Ok(dims)
}

/// `M^{F_x}`: the limit of `M` over the orbit category of the subsystem
/// `F_x` on the objects of `oc` lying in `S_x`, identified with its image
/// in `M(S_x)`.
pub fn limit_over_subsystem(
    oc: &OrbitCategory,
    m: &FpFunctor,
    fx: &FusionSystem,
    sx: SubId,
) -> Result<Subspace> {
    let amb = oc.fusion.ambient();
    let top = oc
        .object_of(sx)
        .ok_or_else(|| Error::SxNotInCollection(amb.describe(sx)))?;
    let p = m.p;
    let dim = m.dim(top);
    let mut cols: Vec<FpMatrix> = Vec::new();
    for &q in oc.objects.iter().filter(|&&q| amb.is_sub(q, sx)) {
        let incl = oc.inclusion(q, sx).ok_or_else(|| {
            Error::CollectionNotClosed(format!(
                "no inclusion {} → {}",
                amb.describe(q),
                amb.describe(sx)
            ))
        })?;
        let mi = m.matrix(incl);
        for t in fx.hom(q, sx)? {
            let f = oc.classify(q, sx, &t).ok_or_else(|| {
                Error::CategoryMismatch(format!(
                    "a subsystem morphism from {} is not in the orbit category",
                    amb.describe(q)
                ))
            })?;
            if f == incl {
                continue;
            }
            let mf = m.matrix(f);
            let mut diff = FpMatrix::zeros(p, dim, mf.cols);
            diff.add_block(0, 0, mf, 1);
            diff.add_block(0, 0, mi, (p - 1) as u8);
            cols.push(diff);
        }
    }
    let width: usize = cols.iter().map(|c| c.cols).sum();
    let mut all = FpMatrix::zeros(p, dim, width);
    let mut c0 = 0;
    for c in &cols {
        all.add_block(0, c0, c, 1);
        c0 += c.cols;
    }
    Ok(left_kernel(&all))
}

/// Image of a subspace of `M(S)` under `M(ι: S' ≤ S)`.
pub fn universal_restriction(
    oc: &OrbitCategory,
    m: &FpFunctor,
    from: &Subspace,
    s_prime: SubId,
    s: SubId,
) -> Result<Subspace> {
    let amb = oc.fusion.ambient();
    for x in [s_prime, s] {
        if oc.object_of(x).is_none() {
            return Err(Error::SxNotInCollection(amb.describe(x)));
        }
    }
    let f = oc.inclusion(s_prime, s).ok_or_else(|| {
        Error::NotASubgroup(format!(
            "{} is not contained in {}",
            amb.describe(s_prime),
            amb.describe(s)
        ))
    })?;
    Ok(from.image_under(m.matrix(f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funmod::cohomology_functor;
    use crate::groups::{sylow_p, FiniteGroup};

    fn lims(cat: &Arc<FiniteCategory>, m: &FpFunctor, n: usize) -> Vec<usize> {
        higher_limits(cat, m, n, DEFAULT_CHAIN_BUDGET).unwrap().dims
    }

    #[test]
    fn constant_over_terminal_object() {
        let cat = Arc::new(FiniteCategory::poset(3, &[(0, 2), (1, 2)]).unwrap());
        let c = FpFunctor::constant(cat.clone(), 2);
        assert_eq!(lims(&cat, &c, 3), vec![1, 0, 0, 0]);
    }

    #[test]
    fn pushout_shape() {
        let cat = Arc::new(FiniteCategory::poset(3, &[(1, 0), (1, 2)]).unwrap());
        let c = FpFunctor::constant(cat.clone(), 3);
        assert_eq!(lims(&cat, &c, 2), vec![1, 0, 0]);
    }

    #[test]
    fn circle_has_lim1() {
        // two parallel arrows: the nerve is a circle
        let cat = Arc::new(FiniteCategory::free_on_acyclic_quiver(2, &[(0, 1), (0, 1)]).unwrap());
        let c = FpFunctor::constant(cat.clone(), 2);
        let h = higher_limits(&cat, &c, 2, 1000).unwrap();
        assert_eq!(h.dims, vec![1, 1, 0]);
        assert_eq!(h.lim1_basis.len(), 1);
        assert_eq!(ext_category(&c, &c, 2, 1000).unwrap(), vec![1, 1, 0]);
    }

    #[test]
    fn group_category_cohomology() {
        // one object with endomorphism group C2: lim^n = H^n(C2; F2) = F2
        let table = vec![vec![0, 1], vec![1, 0]];
        let cat = Arc::new(FiniteCategory::one_object_group(&table, 0).unwrap());
        let c = FpFunctor::constant(cat.clone(), 2);
        assert_eq!(lims(&cat, &c, 3), vec![1, 1, 1, 1]);
        assert_eq!(ext_category(&c, &c, 3, 1000).unwrap(), vec![1, 1, 1, 1]);
        // over F3 the same group is invisible
        let c3 = FpFunctor::constant(cat.clone(), 3);
        assert_eq!(lims(&cat, &c3, 3), vec![1, 0, 0, 0]);
    }

    #[test]
    fn chain_budget_is_enforced() {
        let table = vec![vec![0, 1], vec![1, 0]];
        let cat = Arc::new(FiniteCategory::one_object_group(&table, 0).unwrap());
        let c = FpFunctor::constant(cat.clone(), 2);
        assert!(matches!(
            higher_limits(&cat, &c, 3, 0),
            Err(Error::ChainBudgetExceeded { .. })
        ));
    }

    #[test]
    fn representables_are_projective() {
        let cat = Arc::new(FiniteCategory::poset(3, &[(0, 1), (1, 2)]).unwrap());
        // P_1 = F_p Hom(−, 1): dims (1, 1, 0)
        let p = 2;
        let dims = vec![1, 1, 0];
        let mats = (0..cat.num_morphisms())
            .map(|f| {
                let m = cat.mor(f);
                if dims[m.src] == 1 && dims[m.dst] == 1 {
                    FpMatrix::identity(p, 1)
                } else {
                    FpMatrix::zeros(p, dims[m.dst], dims[m.src])
                }
            })
            .collect();
        let rep = FpFunctor::new(cat.clone(), p, dims, mats).unwrap();
        let c = FpFunctor::constant(cat.clone(), p);
        let e = ext_category(&rep, &c, 3, 1000).unwrap();
        assert_eq!(e, vec![1, 0, 0, 0]);
    }

    #[test]
    fn s4_sharpness_and_stable_elements() {
        let g = Arc::new(FiniteGroup::symmetric(4));
        let s = Arc::new(sylow_p(&g, 2).unwrap());
        let f = Arc::new(FusionSystem::of_group(s, g, 2).unwrap());
        let c = f.centric_collection().unwrap();
        let oc = OrbitCategory::new(f.clone(), &c).unwrap();
        let h1 = cohomology_functor(&oc, 1, 64).unwrap();
        let l = higher_limits(&oc.cat, &h1, 3, DEFAULT_CHAIN_BUDGET).unwrap();
        assert_eq!(&l.dims[1..], &[0, 0, 0]);
        // lim⁰ H¹ = H¹(Σ4; F2), one-dimensional
        assert_eq!(l.dims[0], 1);
        let top = f.ambient().top();
        let stable = limit_over_subsystem(&oc, &h1, &f, top).unwrap();
        assert_eq!(stable.dim(), 1);
        let same = universal_restriction(&oc, &h1, &stable, top, top).unwrap();
        assert_eq!(same, stable);
    }
}
