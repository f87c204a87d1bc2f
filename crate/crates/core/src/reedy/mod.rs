//! The (surjective, injective) Reedy structure on finite inhabited semilattices.

pub mod category;
pub mod certify;
pub mod pushout;
pub mod truncated;

pub use category::{CategoryJson, FinCategory, ReedyData};
pub use certify::{
    certify_cancellation, certify_factorization_unique, certify_pre_elegance, certify_reedy_axioms,
    certify_unique_factorizations, degree, reedy_factor,
};
pub use pushout::{lowering_pushout, verify_pushout_universal, LoweringPushoutSquare};
pub use truncated::{all_lowering_squares, object_name, truncated_semilattice_category, CategorySquare, Truncation};
