//! Defining-set linear codes over F_p, built from the trace condition
//! Tr(x + y^{p^t-1}) = 0 over GF(p^{2t}).
//!
//! The crate computes complete weight distributions empirically with an
//! exact radix-p character-count transform and verifies them against the
//! closed-form Kloosterman-sum predictions, bounds, and minimality
//! criteria for the three families C_D, C_D1, and C_D2.

pub mod code;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod oracle;
pub mod pipeline;
pub mod transform;

pub use code::{
    build_defining_set, codeword, codeword_weight_naive, default_t, dual_min_distance_upto4,
    is_minimal_exhaustive, weight_distribution, weight_table_full, CodeFamily, DefiningSet,
    WeightDistribution, WeightTable,
};
pub use cyclotomic::{
    char_sum_over_delta, char_value, compute_s, kloosterman, kloosterman_in, kloosterman_lift,
    kloosterman_subfield, CycInt, SValue,
};
pub use error::{Error, Result};
pub use field::{load_registry_file, Field, FieldElement, FieldSpec, SubsetTables};
pub use oracle::{
    ashikhmin_barg, bound_checks, classify_pair, compare, pless_check, predict_cd, predict_cd1,
    predict_cd2, predict_n, PairClass, PredictedDistribution,
};
pub use pipeline::{run_verify, FamilyKind, RunConfig, VerificationReport};
pub use transform::{char_count_transform, naive_count, CountSpectrum, DEFAULT_BUDGET};
