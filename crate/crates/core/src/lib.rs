//! Iterated sumsets of finite integer sets, the deficiency function
//! `β_A(n) = |nA| − (2n − 1)(|A| − 1)`, Buchweitz sets of arbitrary finite
//! sets and of numerical-semigroup gapsets, the known interval-realizing
//! semigroup families, and an exhaustive genus survey.

pub mod buchweitz;
pub mod enumeration;
pub mod families;
pub mod intset;
pub mod report;
pub mod semigroup;

pub use buchweitz::{
    beta, beta_profile, buchweitz_set, buchweitz_set_of_semigroup, BetaProfile, BuchKind,
    BuchweitzError, BuchweitzResult, ProfileOptions,
};
pub use intset::{FiniteIntSet, IntSetError, NormalizedSet};
pub use semigroup::{NumericalSemigroup, SemigroupError};
