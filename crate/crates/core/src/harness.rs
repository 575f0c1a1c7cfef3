//! Theorem A / Theorem B reports and sharpness tables.
//!
//! Every verdict is recomputed from the stored dimension table by
//! [`TheoremReport::recompute`], so a reader of a serialized report can
//! check it by hand.

use crate::amalgam::{cgp_functor, completion_fusion, RepGraph, TreeObject, TreeOfGroups};
use crate::error::{Error, Result};
use crate::fpla::quotient_dim;
use crate::funmod::{cohomology_functor, FpFunctor, DEFAULT_BAR_BOUND};
use crate::fusion::{FusionSystem, RadicalVariant, SubId};
use crate::holim::{
    ext_category, higher_limits, limit_over_subsystem, universal_restriction, DEFAULT_CHAIN_BUDGET,
    DEFAULT_RESOLUTION_BUDGET,
};
use crate::orbitcat::OrbitCategory;
use serde::Serialize;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    True,
    False,
    NotApplicable,
}

impl Verdict {
    fn of(applicable: bool, holds: bool) -> Self {
        match (applicable, holds) {
            (false, _) => Verdict::NotApplicable,
            (true, true) => Verdict::True,
            (true, false) => Verdict::False,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct HarnessConfig {
    pub n_max: usize,
    pub radical: RadicalVariant,
    pub chain_budget: usize,
    pub resolution_budget: usize,
    pub bar_bound: usize,
    /// Declared by the user, never verified.
    pub saturated: bool,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        Self {
            n_max: 3,
            radical: RadicalVariant::Standard,
            chain_budget: DEFAULT_CHAIN_BUDGET,
            resolution_budget: DEFAULT_RESOLUTION_BUDGET,
            bar_bound: DEFAULT_BAR_BOUND,
            saturated: false,
        }
    }
}

/// Completion, centric collection, orbit category and `C_G^p` of a
/// two-vertex tree, shared by all reports on it.
pub struct Pipeline {
    pub tree: Arc<TreeOfGroups>,
    pub fusion: Arc<FusionSystem>,
    pub collection: Vec<SubId>,
    pub orbit: OrbitCategory,
    pub cgp: FpFunctor,
    pub rep_graphs: Vec<RepGraph>,
}

impl Pipeline {
    pub fn new(tree: Arc<TreeOfGroups>) -> Result<Self> {
        if tree.num_vertices() != 2 {
            return Err(Error::InvalidTree(format!(
                "the theorem harness needs 2 vertices, got {}",
                tree.num_vertices()
            )));
        }
        let fusion = Arc::new(completion_fusion(&tree)?);
        let collection = fusion.centric_collection()?;
        let orbit = OrbitCategory::new(fusion.clone(), &collection)?;
        let (cgp, rep_graphs) = cgp_functor(&tree, &orbit)?;
        Ok(Self {
            tree,
            fusion,
            collection,
            orbit,
            cgp,
            rep_graphs,
        })
    }

    /// The requested functor on the centric orbit category.
    pub fn functor(&self, req: &FunctorRequest, bar_bound: usize) -> Result<FpFunctor> {
        match req {
            FunctorRequest::Constant => {
                Ok(FpFunctor::constant(self.orbit.cat.clone(), self.tree.p))
            }
            FunctorRequest::Cohomology(j) => cohomology_functor(&self.orbit, *j, bar_bound),
        }
    }

    /// The non-root vertex.
    fn other_vertex(&self) -> usize {
        1 - self.tree.root
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "degree")]
pub enum FunctorRequest {
    Constant,
    Cohomology(usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct Hypotheses {
    /// `F^cr_x ⊆ C` for `x = 1, 2, e`.
    pub radicals_in_collection: [bool; 3],
    pub s_prime_in_collection: bool,
    pub cgp_vanishes: bool,
    pub saturation_declared: bool,
}

impl Hypotheses {
    pub fn theorem_a(&self) -> bool {
        self.radicals_in_collection.iter().all(|&b| b) && self.s_prime_in_collection
    }

    pub fn theorem_b(&self) -> bool {
        self.theorem_a() && self.cgp_vanishes
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct DimensionTable {
    /// `lim^0 … lim^{n_max}`.
    pub lim: Vec<usize>,
    /// `Ext^0 … Ext^{n_max-2}` of `(C_G^p, M)`; at least degree 0.
    pub ext: Vec<usize>,
    pub nat: usize,
    pub m_fe: usize,
    pub restriction_image: usize,
    pub m_f2: usize,
    pub quotient: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub functor: FunctorRequest,
    pub functor_dims: Vec<usize>,
    pub cgp_dims: Vec<usize>,
    pub hypotheses: Hypotheses,
    pub dims: DimensionTable,
    pub theorem_b_match: Verdict,
    pub euler_identity: Verdict,
    pub ext_shift_match: Verdict,
    /// `dim lim¹ ≤ quotient` and `dim lim² ≤ dim Nat`.
    pub endpoint_bounds: Verdict,
    /// Set when saturation is declared, `M = H^j` and `lim¹ ≠ 0`.
    pub lim1_contradicts_saturation: bool,
}

impl TheoremReport {
    /// Rebuilds all verdicts from the hypotheses and the dimension table.
    pub fn recompute(hyp: &Hypotheses, d: &DimensionTable) -> [Verdict; 4] {
        let lim = |n: usize| d.lim.get(n).copied().unwrap_or(0);
        let b_holds = lim(1) == d.quotient && d.lim.iter().skip(2).all(|&x| x == 0);
        let euler = lim(1) as i64 - d.quotient as i64 + d.nat as i64 - lim(2) as i64 == 0;
        let shift = (1..d.ext.len()).all(|n| d.ext[n] == lim(n + 2));
        let bounds = lim(1) <= d.quotient && lim(2) <= d.nat;
        [
            Verdict::of(hyp.theorem_b(), b_holds),
            Verdict::of(hyp.theorem_a(), euler),
            Verdict::of(hyp.theorem_a(), shift),
            Verdict::of(hyp.theorem_a(), bounds),
        ]
    }

    pub fn verdicts(&self) -> [Verdict; 4] {
        [
            self.theorem_b_match,
            self.euler_identity,
            self.ext_shift_match,
            self.endpoint_bounds,
        ]
    }

    /// No applicable verdict is false.
    pub fn all_hold(&self) -> bool {
        self.verdicts().iter().all(|&v| v != Verdict::False)
    }
}

fn hypotheses(pl: &Pipeline, cfg: &HarnessConfig) -> Result<Hypotheses> {
    let t = &*pl.tree;
    let objs = [
        TreeObject::Vertex(t.root),
        TreeObject::Vertex(pl.other_vertex()),
        TreeObject::Edge(0),
    ];
    let mut radicals_in_collection = [false; 3];
    for (k, x) in objs.iter().enumerate() {
        let cr = t.local(*x).centric_radicals(cfg.radical)?;
        radicals_in_collection[k] = cr.iter().all(|q| pl.collection.binary_search(q).is_ok());
    }
    let s_prime = t.sylow_id(TreeObject::Edge(0));
    Ok(Hypotheses {
        radicals_in_collection,
        s_prime_in_collection: pl.collection.binary_search(&s_prime).is_ok(),
        cgp_vanishes: pl.cgp.is_zero(),
        saturation_declared: cfg.saturated,
    })
}

/// Computes everything Theorem A and Theorem B talk about.
fn report(pl: &Pipeline, req: FunctorRequest, cfg: &HarnessConfig) -> Result<TheoremReport> {
    let t = &*pl.tree;
    let m = pl.functor(&req, cfg.bar_bound)?;
    let hyp = hypotheses(pl, cfg)?;
    let lims = higher_limits(&pl.orbit.cat, &m, cfg.n_max, cfg.chain_budget)?;
    let ext = ext_category(
        &pl.cgp,
        &m,
        cfg.n_max.saturating_sub(2),
        cfg.resolution_budget,
    )?;
    let nat = ext[0];

    let s = t.sylow_id(TreeObject::Vertex(t.root));
    let s_prime = t.sylow_id(TreeObject::Edge(0));
    let s2 = t.sylow_id(TreeObject::Vertex(pl.other_vertex()));
    if s2 != s_prime {
        return Err(Error::InvariantViolated(
            "S(2) and S(e) differ after embedding".into(),
        ));
    }
    let w = limit_over_subsystem(&pl.orbit, &m, t.local(TreeObject::Edge(0)), s_prime)?;
    let m1 = limit_over_subsystem(&pl.orbit, &m, t.local(TreeObject::Vertex(t.root)), s)?;
    let u = universal_restriction(&pl.orbit, &m, &m1, s_prime, s)?;
    let v = limit_over_subsystem(
        &pl.orbit,
        &m,
        t.local(TreeObject::Vertex(pl.other_vertex())),
        s2,
    )?;
    let q = quotient_dim(&w, &u, &v)?;

    let dims = DimensionTable {
        lim: lims.dims.clone(),
        ext,
        nat,
        m_fe: w.dim(),
        restriction_image: u.dim(),
        m_f2: v.dim(),
        quotient: q.dim,
    };
    let [b, e, x, bounds] = TheoremReport::recompute(&hyp, &dims);
    let lim1_contradicts_saturation = cfg.saturated
        && matches!(req, FunctorRequest::Cohomology(_))
        && dims.lim.get(1).copied().unwrap_or(0) != 0;
    Ok(TheoremReport {
        functor: req,
        functor_dims: m.dims().to_vec(),
        cgp_dims: pl.cgp.dims().to_vec(),
        hypotheses: hyp,
        dims,
        theorem_b_match: b,
        euler_identity: e,
        ext_shift_match: x,
        endpoint_bounds: bounds,
        lim1_contradicts_saturation,
    })
}

pub fn theorem_b_report(
    pl: &Pipeline,
    req: FunctorRequest,
    cfg: &HarnessConfig,
) -> Result<TheoremReport> {
    report(pl, req, cfg)
}

pub fn theorem_a_report(
    pl: &Pipeline,
    req: FunctorRequest,
    cfg: &HarnessConfig,
) -> Result<TheoremReport> {
    report(pl, req, cfg)
}

#[derive(Debug, Clone, Serialize)]
pub struct SharpnessTable {
    /// `rows[j][i] = dim lim^i H^j`.
    pub rows: Vec<Vec<usize>>,
    pub realizable: bool,
    /// `(j, i)` with `i ≥ 1` and a nonzero entry.
    pub deviations: Vec<(usize, usize)>,
    pub sharp: Verdict,
}

/// `dim lim^i H^j(−; F_p)` over the centric orbit category of `f`.
pub fn sharpness_table(
    f: Arc<FusionSystem>,
    j_max: usize,
    i_max: usize,
    cfg: &HarnessConfig,
) -> Result<SharpnessTable> {
    if j_max > 2 {
        return Err(Error::DegreeUnsupported(j_max));
    }
    let collection = f.centric_collection()?;
    let realizable = f.is_realizable_by_construction() && f.sylow_in_group() == Some(true);
    let oc = OrbitCategory::new(f, &collection)?;
    let mut rows = Vec::new();
    let mut deviations = Vec::new();
    for j in 0..=j_max {
        let m = cohomology_functor(&oc, j, cfg.bar_bound)?;
        let dims = higher_limits(&oc.cat, &m, i_max, cfg.chain_budget)?.dims;
        for (i, &d) in dims.iter().enumerate().skip(1) {
            if d != 0 {
                deviations.push((j, i));
            }
        }
        rows.push(dims);
    }
    let sharp = Verdict::of(realizable, deviations.is_empty());
    Ok(SharpnessTable {
        rows,
        realizable,
        deviations,
        sharp,
    })
}
