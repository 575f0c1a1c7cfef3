//! One function per subcommand. Each returns its result record and whether
//! every verdict in it holds.

use crate::error::CliError;
use crate::job::{explicit_functor, CollectionDef, ElementDef, FunctorDef, JobSpec, Resolved};
use fusionlim::amalgam::{
    cgp_functor, completion_fusion, degenerate_centralizer_check, rep_graph, TreeOfGroups,
};
use fusionlim::catalog::{clelland_parker_base, parker_stroth_base, Check, CATALOG_ORDER_BOUND};
use fusionlim::funmod::{cohomology_functor, FpFunctor, DEFAULT_BAR_BOUND};
use fusionlim::fusion::{Ambient, CentricFlags, FusionSystem, SubId};
use fusionlim::groups::{abelianization_mod_p, Representation};
use fusionlim::harness::{
    sharpness_table, theorem_a_report, theorem_b_report, Pipeline, SharpnessTable, TheoremReport,
    Verdict,
};
use fusionlim::holim::{higher_limits, DEFAULT_CHAIN_BUDGET, DEFAULT_RESOLUTION_BUDGET};
use fusionlim::oracle::{graph_family, holim_ext_family, GraphCase, OracleCase};
use fusionlim::orbitcat::{MorInfo, OrbitCategory};
use fusionlim::Error;
use serde::Serialize;
use std::sync::Arc;

pub struct Outcome<R> {
    pub result: R,
    pub ok: bool,
}

#[derive(Debug, Serialize)]
pub struct SubgroupOut {
    pub id: SubId,
    pub order: usize,
    pub generators: Vec<ElementDef>,
}

fn element_out(rep: &Representation, x: &[u16]) -> ElementDef {
    match rep {
        Representation::Permutation { .. } => {
            ElementDef::Perm(x.iter().map(|&i| i as usize + 1).collect())
        }
        Representation::Matrix { dim, .. } => ElementDef::Matrix(
            x.chunks(*dim)
                .map(|r| r.iter().map(|&v| v as u32).collect())
                .collect(),
        ),
    }
}

fn subgroup_out(amb: &Ambient, id: SubId) -> SubgroupOut {
    let h = amb.to_group(id);
    SubgroupOut {
        id,
        order: h.order(),
        generators: h
            .canonical_generators()
            .iter()
            .map(|x| element_out(h.rep(), x))
            .collect(),
    }
}

/// The fusion system a job describes, and its tree when it has one.
pub struct Setup {
    pub tree: Option<Arc<TreeOfGroups>>,
    pub fusion: Arc<FusionSystem>,
    pub resolved: Resolved,
    pub source: &'static str,
}

impl Setup {
    pub fn new(job: &JobSpec) -> Result<Self, CliError> {
        let resolved = Resolved::new(job)?;
        if let Some(a) = &job.amalgam {
            let tree = Arc::new(resolved.tree(a)?);
            let fusion = Arc::new(completion_fusion(&tree)?);
            Ok(Self {
                tree: Some(tree),
                fusion,
                resolved,
                source: "amalgam",
            })
        } else if let Some(fd) = &job.fusion {
            let fusion = Arc::new(resolved.group_fusion(fd)?);
            Ok(Self {
                tree: None,
                fusion,
                resolved,
                source: "group",
            })
        } else {
            Err(CliError::Input(
                "job defines neither `amalgam` nor `fusion`".into(),
            ))
        }
    }

    fn tree(&self, command: &str) -> Result<&Arc<TreeOfGroups>, CliError> {
        self.tree
            .as_ref()
            .ok_or_else(|| CliError::Input(format!("`{command}` needs an `amalgam` section")))
    }

    fn collection(&self, job: &JobSpec) -> Result<Vec<SubId>, CliError> {
        match &job.collection {
            CollectionDef::Centric => Ok(self.fusion.centric_collection()?),
            CollectionDef::Explicit(subs) => self.resolved.collection(self.fusion.ambient(), subs),
        }
    }

    fn centric_orbit(&self) -> Result<OrbitCategory, CliError> {
        let c = self.fusion.centric_collection()?;
        Ok(OrbitCategory::new(self.fusion.clone(), &c)?)
    }
}

#[derive(Debug, Serialize)]
pub struct CentricOut {
    pub subgroup: SubgroupOut,
    pub flags: CentricFlags,
}

#[derive(Debug, Serialize)]
pub struct HomCount {
    pub src: SubId,
    pub dst: SubId,
    pub count: usize,
}

#[derive(Debug, Serialize)]
pub struct FusionResult {
    pub source: &'static str,
    pub sylow: SubgroupOut,
    pub subgroups_of_s: usize,
    pub morphisms_total: usize,
    pub centric: Vec<CentricOut>,
    pub centric_homs: Vec<HomCount>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference_match: Option<bool>,
}

pub fn fusion(job: &JobSpec) -> Result<Outcome<FusionResult>, CliError> {
    let setup = Setup::new(job)?;
    let f = &setup.fusion;
    let amb = f.ambient();
    let collection = f.centric_collection()?;
    let centric = collection
        .iter()
        .map(|&q| {
            Ok(CentricOut {
                subgroup: subgroup_out(amb, q),
                flags: f.centric_predicates(q)?,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let mut centric_homs = Vec::new();
    for &a in &collection {
        for &b in &collection {
            let count = f.hom(a, b)?.len();
            if count > 0 {
                centric_homs.push(HomCount {
                    src: a,
                    dst: b,
                    count,
                });
            }
        }
    }
    let reference_match = match &job.reference {
        Some(name) => {
            let g = setup.resolved.group(name, "reference")?;
            let direct =
                FusionSystem::of_group_on(amb.clone(), g).map_err(CliError::from_core_input)?;
            Some(f.same_morphisms(&direct)?)
        }
        None => None,
    };
    Ok(Outcome {
        ok: reference_match != Some(false),
        result: FusionResult {
            source: setup.source,
            sylow: subgroup_out(amb, amb.top()),
            subgroups_of_s: amb.subgroups().len(),
            morphisms_total: f.total_morphisms()?,
            centric,
            centric_homs,
            reference_match,
        },
    })
}

#[derive(Debug, Serialize)]
pub struct LimitsResult {
    pub objects: Vec<SubgroupOut>,
    pub morphisms: Vec<MorInfo>,
    pub functor: FunctorDef,
    pub functor_dims: Vec<usize>,
    pub lim: Vec<usize>,
}

pub fn limits(job: &JobSpec) -> Result<Outcome<LimitsResult>, CliError> {
    let setup = Setup::new(job)?;
    let collection = setup.collection(job)?;
    let oc =
        OrbitCategory::new(setup.fusion.clone(), &collection).map_err(CliError::from_core_input)?;
    let p = setup.fusion.p();
    let m: FpFunctor = match &job.functor {
        FunctorDef::Constant => FpFunctor::constant(oc.cat.clone(), p),
        FunctorDef::Cohomology(j) => cohomology_functor(&oc, *j, job.budgets.bar)?,
        FunctorDef::Explicit { dims, matrices } => {
            explicit_functor(oc.cat.clone(), p, dims, matrices)?
        }
    };
    let lim = higher_limits(&oc.cat, &m, job.max_degree, job.budgets.chains)?.dims;
    let amb = setup.fusion.ambient();
    Ok(Outcome {
        ok: true,
        result: LimitsResult {
            objects: oc.objects.iter().map(|&q| subgroup_out(amb, q)).collect(),
            morphisms: (0..oc.cat.num_morphisms()).map(|f| oc.cat.mor(f)).collect(),
            functor: job.functor.clone(),
            functor_dims: m.dims().to_vec(),
            lim,
        },
    })
}

#[derive(Debug, Serialize)]
pub struct RepVertexOut {
    pub tree_vertex: usize,
    pub class_size: usize,
}

#[derive(Debug, Serialize)]
pub struct RepEdgeOut {
    pub tree_edge: usize,
    pub class_size: usize,
    pub ends: (usize, usize),
}

#[derive(Debug, Serialize)]
pub struct RepGraphOut {
    pub subgroup: SubId,
    pub order: usize,
    pub connected: bool,
    pub components: usize,
    pub h1: usize,
    pub vertices: Vec<RepVertexOut>,
    pub edges: Vec<RepEdgeOut>,
}

#[derive(Debug, Serialize)]
pub struct CentralizerOut {
    pub subgroup: SubId,
    pub lhs: usize,
    pub rhs: usize,
    pub equal: bool,
}

#[derive(Debug, Serialize)]
pub struct RepGraphResult {
    pub graphs: Vec<RepGraphOut>,
    pub disconnected: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cgp_dims: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub centralizer_checks: Option<Vec<CentralizerOut>>,
}

pub fn rep_graphs(job: &JobSpec) -> Result<Outcome<RepGraphResult>, CliError> {
    let setup = Setup::new(job)?;
    let t = setup.tree("rep-graph")?;
    let f = &setup.fusion;
    let amb = f.ambient();
    let collection = f.centric_collection()?;
    let mut graphs = Vec::new();
    for &q in &collection {
        let order = amb.sub(q).order;
        match rep_graph(t, f, q) {
            Ok(g) => graphs.push(RepGraphOut {
                subgroup: q,
                order,
                connected: g.h0 == 1,
                components: g.h0,
                h1: g.h1,
                vertices: g
                    .vertices
                    .iter()
                    .map(|v| RepVertexOut {
                        tree_vertex: v.tree_vertex,
                        class_size: v.class.size,
                    })
                    .collect(),
                edges: g
                    .edges
                    .iter()
                    .map(|e| RepEdgeOut {
                        tree_edge: e.tree_edge,
                        class_size: e.class.size,
                        ends: e.ends,
                    })
                    .collect(),
            }),
            Err(Error::DisconnectedRepGraph { components, .. }) => graphs.push(RepGraphOut {
                subgroup: q,
                order,
                connected: false,
                components,
                h1: 0,
                vertices: Vec::new(),
                edges: Vec::new(),
            }),
            Err(e) => return Err(e.into()),
        }
    }
    let disconnected = graphs.iter().filter(|g| !g.connected).count();
    let cgp_dims = if disconnected == 0 {
        let oc = OrbitCategory::new(f.clone(), &collection)?;
        Some(cgp_functor(t, &oc)?.0.dims().to_vec())
    } else {
        None
    };
    let centralizer_checks = if t.is_degenerate() {
        Some(
            collection
                .iter()
                .map(|&q| {
                    let c = degenerate_centralizer_check(t, f, q)?;
                    Ok(CentralizerOut {
                        subgroup: q,
                        lhs: c.lhs,
                        rhs: c.rhs,
                        equal: c.equal,
                    })
                })
                .collect::<Result<Vec<_>, Error>>()?,
        )
    } else {
        None
    };
    let ok = disconnected == 0 && centralizer_checks.iter().flatten().all(|c| c.equal);
    Ok(Outcome {
        ok,
        result: RepGraphResult {
            graphs,
            disconnected,
            cgp_dims,
            centralizer_checks,
        },
    })
}

pub fn theorem(job: &JobSpec, which_b: bool) -> Result<Outcome<TheoremReport>, CliError> {
    let req = job.functor_request()?;
    let setup = Setup::new(job)?;
    let t = setup.tree(if which_b { "theorem-b" } else { "theorem-a" })?;
    let pl = Pipeline::new(t.clone()).map_err(CliError::from_core_input)?;
    let cfg = job.harness_config();
    let r = if which_b {
        theorem_b_report(&pl, req, &cfg)?
    } else {
        theorem_a_report(&pl, req, &cfg)?
    };
    Ok(Outcome {
        ok: r.all_hold(),
        result: r,
    })
}

pub fn sharpness(job: &JobSpec, j_max: usize) -> Result<Outcome<SharpnessTable>, CliError> {
    let setup = Setup::new(job)?;
    let tab = sharpness_table(
        setup.fusion.clone(),
        j_max,
        job.max_degree,
        &job.harness_config(),
    )?;
    Ok(Outcome {
        ok: tab.sharp != Verdict::False,
        result: tab,
    })
}

#[derive(Debug, Serialize)]
pub struct CatalogResult {
    pub family: &'static str,
    pub orders: Vec<(String, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<Check>>,
}

fn catalog_outcome(
    family: &'static str,
    orders: Vec<(&str, usize)>,
    checks: Option<Vec<Check>>,
) -> Outcome<CatalogResult> {
    let ok = checks.iter().flatten().all(|c| c.pass);
    let orders = orders
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    Outcome {
        ok,
        result: CatalogResult {
            family,
            orders,
            checks,
        },
    }
}

pub fn clelland_parker(n: usize, q: u32, verify: bool) -> Result<Outcome<CatalogResult>, CliError> {
    let b = clelland_parker_base(n, q, CATALOG_ORDER_BOUND).map_err(CliError::from_core_input)?;
    let names: Vec<String> = (0..b.c.len()).map(|i| format!("C{i}")).collect();
    let mut orders = vec![
        ("D", b.d.order()),
        ("A", b.a.order()),
        ("P", b.p_group.order()),
        ("U", b.u.order()),
        ("S", b.s.order()),
    ];
    for (name, c) in names.iter().zip(&b.c) {
        orders.push((name, c.order()));
    }
    orders.extend([
        ("R", b.r.order()),
        ("Q", b.q_sub.order()),
        ("N_P(R)", b.np_r.order()),
        ("N_P(Q)", b.np_q.order()),
    ]);
    let checks = if verify { Some(b.verify()?) } else { None };
    Ok(catalog_outcome("clelland-parker", orders, checks))
}

pub fn parker_stroth(p: u32, verify: bool) -> Result<Outcome<CatalogResult>, CliError> {
    let b = parker_stroth_base(p, CATALOG_ORDER_BOUND).map_err(CliError::from_core_input)?;
    let orders = vec![
        ("Q", b.q.order()),
        ("C_D(Q)", b.cdq.len()),
        ("P1", b.p1.order()),
        ("S", b.s.order()),
        ("K", b.k.order()),
        ("C", b.c.order()),
        ("S'", b.s_prime.order()),
    ];
    let checks = if verify { Some(b.verify()?) } else { None };
    Ok(catalog_outcome("parker-stroth", orders, checks))
}

#[derive(Debug, Serialize)]
pub struct H1Case {
    pub subgroup: SubId,
    pub order: usize,
    pub h1: usize,
    pub abelianization: usize,
    pub equal: bool,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum OracleResult {
    HolimExt {
        cases: Vec<OracleCase>,
        mismatches: usize,
    },
    Graphs {
        cases: Vec<GraphCase>,
        mismatches: usize,
    },
    H1 {
        cases: Vec<H1Case>,
        mismatches: usize,
    },
}

pub fn oracle_holim_ext(
    count: usize,
    seed: u64,
    p: u32,
) -> Result<Outcome<OracleResult>, CliError> {
    let cases = holim_ext_family(
        count,
        seed,
        p,
        3,
        DEFAULT_RESOLUTION_BUDGET.max(DEFAULT_CHAIN_BUDGET),
    )?;
    let mismatches = cases.iter().filter(|c| !c.equal).count();
    Ok(Outcome {
        ok: mismatches == 0,
        result: OracleResult::HolimExt { cases, mismatches },
    })
}

pub fn oracle_graphs(count: usize, seed: u64, p: u32) -> Result<Outcome<OracleResult>, CliError> {
    let cases = graph_family(count, seed, p)?;
    let mismatches = cases.iter().filter(|c| !c.equal).count();
    Ok(Outcome {
        ok: mismatches == 0,
        result: OracleResult::Graphs { cases, mismatches },
    })
}

/// `dim H¹(P; F_p)` as a functor value against the abelianization of `P`.
pub fn oracle_h1(job: &JobSpec) -> Result<Outcome<OracleResult>, CliError> {
    let setup = Setup::new(job)?;
    let oc = setup.centric_orbit()?;
    let h1 = cohomology_functor(&oc, 1, DEFAULT_BAR_BOUND.max(job.budgets.bar))?;
    let amb = setup.fusion.ambient();
    let cases: Vec<H1Case> = oc
        .objects
        .iter()
        .enumerate()
        .map(|(a, &q)| {
            let g = amb.to_group(q);
            let ab = abelianization_mod_p(&g, setup.fusion.p());
            H1Case {
                subgroup: q,
                order: g.order(),
                h1: h1.dim(a),
                abelianization: ab,
                equal: h1.dim(a) == ab,
            }
        })
        .collect();
    let mismatches = cases.iter().filter(|c| !c.equal).count();
    Ok(Outcome {
        ok: mismatches == 0,
        result: OracleResult::H1 { cases, mismatches },
    })
}
