//! Declarative job files: parsing, defaults and name resolution.

use crate::error::CliError;
use fusionlim::amalgam::{EdgeSpec, TreeOfGroups};
use fusionlim::fpla::{is_prime, FpMatrix};
use fusionlim::funmod::{FpFunctor, DEFAULT_BAR_BOUND};
use fusionlim::fusion::{Ambient, FusionSystem, RadicalVariant, SubId};
use fusionlim::groups::{
    perm_from_one_line, sylow_p, Elem, FiniteGroup, GroupHom, Representation, DEFAULT_ORDER_BOUND,
};
use fusionlim::harness::{FunctorRequest, HarnessConfig};
use fusionlim::holim::{DEFAULT_CHAIN_BUDGET, DEFAULT_RESOLUTION_BUDGET};
use fusionlim::orbitcat::FiniteCategory;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

/// A group element as written in a job file: a 1-based one-line image
/// array, or a row-major matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementDef {
    Perm(Vec<usize>),
    Matrix(Vec<Vec<u32>>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum GroupDef {
    Permutation {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    Matrix {
        matrix_dim: usize,
        generators: Vec<Vec<Vec<u32>>>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDef {
    pub group: String,
    pub v: String,
    pub w: String,
    /// Images of the edge group's generators; omitted means inclusion.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_v: Option<Vec<ElementDef>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_w: Option<Vec<ElementDef>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmalgamDef {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDef>,
    /// Defaults to the first vertex.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<String>,
    /// Sylow override for the root group.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_sylow: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FusionDef {
    pub group: String,
    /// Sylow override; defaults to a computed Sylow subgroup.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sylow: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctorDef {
    Constant,
    Cohomology(usize),
    /// One matrix per orbit-category morphism, in the order the `limits`
    /// report lists them; shape `dim(dst) × dim(src)`.
    Explicit {
        dims: Vec<usize>,
        matrices: Vec<Vec<Vec<u32>>>,
    },
}

impl Default for FunctorDef {
    fn default() -> Self {
        FunctorDef::Cohomology(1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum CollectionDef {
    #[default]
    Centric,
    /// Subgroups of `S`, each given by generators.
    Explicit(Vec<Vec<ElementDef>>),
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Budgets {
    pub chains: usize,
    pub resolution: usize,
    pub bar: usize,
    pub order: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Self {
            chains: DEFAULT_CHAIN_BUDGET,
            resolution: DEFAULT_RESOLUTION_BUDGET,
            bar: DEFAULT_BAR_BOUND,
            order: DEFAULT_ORDER_BOUND,
        }
    }
}

fn default_max_degree() -> usize {
    3
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub p: u32,
    pub groups: BTreeMap<String, GroupDef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amalgam: Option<AmalgamDef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fusion: Option<FusionDef>,
    /// A group whose fusion system the amalgam completion should equal.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<String>,
    #[serde(default)]
    pub functor: FunctorDef,
    #[serde(default)]
    pub collection: CollectionDef,
    #[serde(default = "default_max_degree")]
    pub max_degree: usize,
    #[serde(default)]
    pub budgets: Budgets,
    #[serde(default)]
    pub radical: RadicalVariant,
    #[serde(default)]
    pub saturated: bool,
}

impl JobSpec {
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("{origin}: {e}")))
    }

    pub fn harness_config(&self) -> HarnessConfig {
        HarnessConfig {
            n_max: self.max_degree,
            radical: self.radical,
            chain_budget: self.budgets.chains,
            resolution_budget: self.budgets.resolution,
            bar_bound: self.budgets.bar,
            saturated: self.saturated,
        }
    }

    pub fn functor_request(&self) -> Result<FunctorRequest, CliError> {
        match &self.functor {
            FunctorDef::Constant => Ok(FunctorRequest::Constant),
            FunctorDef::Cohomology(j) => Ok(FunctorRequest::Cohomology(*j)),
            FunctorDef::Explicit { .. } => Err(CliError::Input(
                "explicit functors are accepted by `limits` only".into(),
            )),
        }
    }
}

/// `constant` or `cohomology:J`, as given on the command line.
pub fn parse_functor_flag(s: &str) -> Result<FunctorDef, CliError> {
    if s == "constant" {
        return Ok(FunctorDef::Constant);
    }
    s.strip_prefix("cohomology:")
        .and_then(|j| j.parse().ok())
        .map(FunctorDef::Cohomology)
        .ok_or_else(|| {
            CliError::Input(format!(
                "functor `{s}`: expected `constant` or `cohomology:J`"
            ))
        })
}

/// The resolved groups of a job.
pub struct Resolved {
    pub p: u32,
    pub groups: BTreeMap<String, Arc<FiniteGroup>>,
    given: BTreeMap<String, usize>,
}

impl Resolved {
    pub fn new(job: &JobSpec) -> Result<Self, CliError> {
        if !is_prime(job.p) {
            return Err(CliError::Input(format!("p = {} is not prime", job.p)));
        }
        // field elements are stored as bytes
        if job.p > 251 {
            return Err(CliError::Input(format!("p = {} is above 251", job.p)));
        }
        let mut groups = BTreeMap::new();
        let mut given = BTreeMap::new();
        for (name, def) in &job.groups {
            let (rep, gens, count) = match def {
                GroupDef::Permutation { degree, generators } => {
                    let gens = generators
                        .iter()
                        .map(|g| perm_from_one_line(*degree, g))
                        .collect::<fusionlim::Result<Vec<_>>>()
                        .map_err(|e| CliError::Input(format!("group `{name}`: {e}")))?;
                    (
                        Representation::Permutation { degree: *degree },
                        gens,
                        generators.len(),
                    )
                }
                GroupDef::Matrix {
                    matrix_dim,
                    generators,
                } => {
                    let gens = generators
                        .iter()
                        .map(|m| matrix_elem(*matrix_dim, job.p, m))
                        .collect::<Result<Vec<_>, String>>()
                        .map_err(|e| CliError::Input(format!("group `{name}`: {e}")))?;
                    (
                        Representation::Matrix {
                            dim: *matrix_dim,
                            p: job.p,
                        },
                        gens,
                        generators.len(),
                    )
                }
            };
            let g = FiniteGroup::generate(rep, gens, job.budgets.order).map_err(|e| match e {
                fusionlim::Error::OrderBoundExceeded { bound, .. } => {
                    fusionlim::Error::OrderBoundExceeded {
                        what: format!("group `{name}`"),
                        bound,
                    }
                    .into()
                }
                e => CliError::Input(format!("group `{name}`: {e}")),
            })?;
            if g.generators().len() != count {
                return Err(CliError::Input(format!(
                    "group `{name}`: generator list contains the identity or a repeat"
                )));
            }
            groups.insert(name.clone(), Arc::new(g));
            given.insert(name.clone(), count);
        }
        Ok(Self {
            p: job.p,
            groups,
            given,
        })
    }

    pub fn group(&self, name: &str, wanted_by: &str) -> Result<Arc<FiniteGroup>, CliError> {
        self.groups.get(name).cloned().ok_or_else(|| {
            CliError::Input(format!("{wanted_by} refers to undefined group `{name}`"))
        })
    }

    fn element(&self, g: &FiniteGroup, e: &ElementDef, what: &str) -> Result<Elem, CliError> {
        let x = match (g.rep(), e) {
            (Representation::Permutation { degree }, ElementDef::Perm(v)) => {
                perm_from_one_line(*degree, v)
                    .map_err(|err| CliError::Input(format!("{what}: {err}")))?
            }
            (Representation::Matrix { dim, p }, ElementDef::Matrix(m)) => {
                matrix_elem(*dim, *p, m).map_err(|err| CliError::Input(format!("{what}: {err}")))?
            }
            _ => {
                return Err(CliError::Input(format!(
                    "{what}: element kind does not match the group"
                )))
            }
        };
        if !g.contains(&x) {
            return Err(CliError::Input(format!(
                "{what}: element is not in the group"
            )));
        }
        Ok(x)
    }

    fn hom(
        &self,
        edge: &str,
        src: &Arc<FiniteGroup>,
        dst_name: &str,
        dst: &Arc<FiniteGroup>,
        images: &Option<Vec<ElementDef>>,
    ) -> Result<GroupHom, CliError> {
        let what = format!("map {edge} -> {dst_name}");
        let imgs: Vec<Elem> = match images {
            None => src.generators().to_vec(),
            Some(v) => {
                if v.len() != self.given[edge] {
                    return Err(CliError::Input(format!(
                        "{what}: {} images for {} generators",
                        v.len(),
                        self.given[edge]
                    )));
                }
                v.iter()
                    .enumerate()
                    .map(|(i, e)| self.element(dst, e, &format!("{what}, image {}", i + 1)))
                    .collect::<Result<_, _>>()?
            }
        };
        let h = GroupHom::new(src.clone(), dst.clone(), &imgs)
            .map_err(|e| CliError::Input(format!("{what}: {e}")))?;
        if !h.is_injective() {
            return Err(CliError::Input(format!("{what}: not injective")));
        }
        Ok(h)
    }

    pub fn tree(&self, def: &AmalgamDef) -> Result<TreeOfGroups, CliError> {
        let index = |name: &str, what: &str| -> Result<usize, CliError> {
            def.vertices.iter().position(|v| v == name).ok_or_else(|| {
                CliError::Input(format!("{what} refers to `{name}`, which is not a vertex"))
            })
        };
        let vertices = def
            .vertices
            .iter()
            .map(|n| Ok((n.clone(), self.group(n, "amalgam vertex list")?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        let mut edges = Vec::new();
        for e in &def.edges {
            let what = format!("edge `{}`", e.group);
            let ge = self.group(&e.group, &what)?;
            let (v, w) = (index(&e.v, &what)?, index(&e.w, &what)?);
            edges.push(EdgeSpec {
                name: e.group.clone(),
                group: ge.clone(),
                v,
                w,
                phi_v: self.hom(&e.group, &ge, &e.v, &vertices[v].1, &e.phi_v)?,
                phi_w: self.hom(&e.group, &ge, &e.w, &vertices[w].1, &e.phi_w)?,
            });
        }
        let root = match &def.root {
            Some(r) => index(r, "amalgam root")?,
            None => 0,
        };
        let sylow = match &def.root_sylow {
            Some(s) => Some(self.group(s, "root_sylow")?),
            None => None,
        };
        TreeOfGroups::new(self.p, vertices, edges, root, sylow).map_err(CliError::from_core_input)
    }

    /// `F_S(G)` for a `fusion` job.
    pub fn group_fusion(&self, def: &FusionDef) -> Result<FusionSystem, CliError> {
        let g = self.group(&def.group, "fusion")?;
        let s = match &def.sylow {
            Some(s) => self.group(s, "fusion sylow")?,
            None => Arc::new(sylow_p(&g, self.p)?),
        };
        FusionSystem::of_group(s, g, self.p).map_err(CliError::from_core_input)
    }

    pub fn collection(
        &self,
        amb: &Ambient,
        subs: &[Vec<ElementDef>],
    ) -> Result<Vec<SubId>, CliError> {
        let s = amb.group().clone();
        subs.iter()
            .enumerate()
            .map(|(k, gens)| {
                let idx = gens
                    .iter()
                    .enumerate()
                    .map(|(i, e)| {
                        let x = self.element(
                            &s,
                            e,
                            &format!("collection entry {}, generator {}", k + 1, i + 1),
                        )?;
                        Ok(amb.index_of(&x).expect("element of S"))
                    })
                    .collect::<Result<Vec<u16>, CliError>>()?;
                Ok(amb.generated(&idx))
            })
            .collect()
    }
}

pub fn matrix_elem(dim: usize, p: u32, m: &[Vec<u32>]) -> Result<Elem, String> {
    if m.len() != dim || m.iter().any(|r| r.len() != dim) {
        return Err(format!("matrix is not {dim}×{dim}"));
    }
    if let Some(&x) = m.iter().flatten().find(|&&x| x >= p) {
        return Err(format!("entry {x} is not reduced mod {p}"));
    }
    Ok(m.iter().flatten().map(|&x| x as u16).collect())
}

/// An explicit functor on `cat`.
pub fn explicit_functor(
    cat: Arc<FiniteCategory>,
    p: u32,
    dims: &[usize],
    matrices: &[Vec<Vec<u32>>],
) -> Result<FpFunctor, CliError> {
    if dims.len() != cat.num_objects() || matrices.len() != cat.num_morphisms() {
        return Err(CliError::Input(format!(
            "explicit functor: {} dims and {} matrices for {} objects and {} morphisms",
            dims.len(),
            matrices.len(),
            cat.num_objects(),
            cat.num_morphisms()
        )));
    }
    let mats = matrices
        .iter()
        .enumerate()
        .map(|(f, m)| {
            let mi = cat.mor(f);
            let rows: Vec<Vec<u8>> = m
                .iter()
                .map(|r| r.iter().map(|&x| (x % p) as u8).collect())
                .collect();
            if rows.len() != dims[mi.dst] {
                return Err(CliError::Input(format!(
                    "explicit functor, morphism {f}: {} rows, expected {}",
                    rows.len(),
                    dims[mi.dst]
                )));
            }
            FpMatrix::from_rows(p, dims[mi.src], &rows)
                .map_err(|e| CliError::Input(format!("explicit functor, morphism {f}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    FpFunctor::new(cat, p, dims.to_vec(), mats)
        .map_err(|e| CliError::Input(format!("explicit functor: {e}")))
}
