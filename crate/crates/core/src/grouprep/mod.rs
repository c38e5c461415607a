//! Finite groups, representations as generator matrices, and the
//! standard functors on them.

mod chars;
mod functors;
mod group;
mod rep;

pub use chars::{is_generic, CharData, GenericityReport, Partition};
pub use functors::{
    box_many, box_product, cyclic_character, dual, exterior_power, exterior_power_matrix, induce,
    lbar_box, lbar_tensor, restrict_along, subsets, tensor, twist, Homomorphism,
};
pub use group::{
    borel_group, cyclic_group, factor_offsets, levi_center, multiplicative_order, product_group,
    semidirect_group, validate_zero_pattern, Element, Group, GroupKind, GroupRef, GroupSpec, Word,
    DEFAULT_CLOSURE_CAP,
};
pub use rep::Rep;

use thiserror::Error;

use crate::ffla::FflaError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the two primes must differ (both are {0})")]
    EqualPrimes(u64),
    #[error("{0}")]
    OutOfRange(String),
    #[error(
        "zero pattern is not a subgroup: forcing ({},{}) to zero needs ({},{}) or ({},{}) forced too",
        forced.0, forced.1, left.0, left.1, right.0, right.1
    )]
    BadZeroPattern {
        forced: (usize, usize),
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("group order {order} exceeds the enumeration cap {cap}")]
    TooLarge { order: u64, cap: usize },
    #[error("representations live on different groups")]
    GroupMismatch,
    #[error("representations live over different fields")]
    FieldMismatch,
    #[error("generator {0} is not an invertible matrix of the right size")]
    BadGenerator(usize),
    #[error("expected {expected} generator matrices, got {got}")]
    GeneratorCount { expected: usize, got: usize },
    #[error("relation {0} of the group fails on the given matrices")]
    RelationViolated(usize),
    #[error("ill-typed homomorphism: {0}")]
    BadHomomorphism(String),
    #[error("{field} has no primitive {n}-th root of unity")]
    MissingRootOfUnity { n: u64, field: String },
    #[error("bad coset transversal: {0}")]
    BadTransversal(String),
    #[error("expected a one-dimensional representation")]
    NotOneDimensional,
    #[error(transparent)]
    Field(#[from] FflaError),
}
