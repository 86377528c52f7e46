//! Instance constructions: formulas and their digraphs, tournament families
//! and seeded random instances.

pub mod cnf;
pub mod families;
pub mod nae;
pub mod random;

pub use cnf::{nae_brute_check, preprocess, CnfFormula, Literal, Preprocessed};
pub use families::{
    circular_parameters, circular_tournament, minimal_tournament, no_minimum_fixture,
    vc_reduction, Graph,
};
pub use nae::{
    hardness_instance, lambda_profile, nae_instance, witness_ordering, HardnessInstance,
    LambdaProfile, NaeInstance,
};
pub use random::{random_digraph, random_semicomplete, random_tournament};
