use thiserror::Error;

/// Errors raised anywhere in the pipeline. Every message names the object
/// (group, subgroup, morphism pair, degree) that triggered it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("subspace not contained: {0}")]
    SubspaceNotContained(String),
    #[error("edge {edge} has endpoint {endpoint} but the graph has {vertices} vertices")]
    EndpointOutOfRange {
        edge: usize,
        endpoint: usize,
        vertices: usize,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{what}: order exceeds the configured bound {bound}")]
    OrderBoundExceeded { what: String, bound: usize },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("not a p-group: {0}")]
    NotAPGroup(String),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("incompatible domains: {0}")]
    IncompatibleDomains(String),
    #[error("not injective: {0}")]
    NotInjective(String),
    #[error("image not contained: {0}")]
    ImageNotContained(String),
    #[error("invalid group data: {0}")]
    InvalidGroup(String),
    #[error("morphism budget exceeded for Hom({pair}): more than {budget} maps")]
    MorphismBudgetExceeded { pair: String, budget: usize },
    #[error("collection not closed: {0}")]
    CollectionNotClosed(String),
    #[error("well-definedness failure: {0}")]
    WellDefinednessFailure(String),
    #[error("not a functor: {0}")]
    NotAFunctor(String),
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("cohomology degree {0} is not supported (only 0, 1, 2)")]
    DegreeUnsupported(usize),
    #[error("bar resolution bound exceeded: |{subgroup}| = {order} > {bound}")]
    BarBoundExceeded {
        subgroup: String,
        order: usize,
        bound: usize,
    },
    #[error("descent failure: {0}")]
    DescentFailure(String),
    #[error("category mismatch: {0}")]
    CategoryMismatch(String),
    #[error("chain budget exceeded in degree {degree}: {count} chains > {budget}")]
    ChainBudgetExceeded {
        degree: usize,
        count: usize,
        budget: usize,
    },
    #[error("resolution budget exceeded at step {step}: dimension {dim} > {budget}")]
    ResolutionBudgetExceeded {
        step: usize,
        dim: usize,
        budget: usize,
    },
    #[error("subgroup {0} is not in the collection")]
    SxNotInCollection(String),
    #[error("p-locality violated: {0}")]
    PLocalityViolated(String),
    #[error("invalid tree of groups: {0}")]
    InvalidTree(String),
    #[error("Rep graph for {subgroup} has {components} components")]
    DisconnectedRepGraph { subgroup: String, components: usize },
    #[error("amalgam is not degenerate: {0}")]
    NotDegenerate(String),
    #[error("subgroup {0} is not centric")]
    NotCentric(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("invariant check failed: {0}")]
    InvariantViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;
