//! Finite presheaves over a finite Reedy category.
mod cells;
mod colimit;
mod corpus;
mod ez;
mod latching;
mod types;

pub use cells::{
    cell_square, skeleton_chain_failure, verify_cell_square, weighted_skeleton_level, CellLevel, CellSquareReport, WeightedSkeletonLevel,
};
pub use colimit::{coend, finite_colimit, weighted_colimit, Coend, SetColimit, SetDiagram};
pub use corpus::{
    brute_force_presheaves, enumerate_presheaves, failing_pushout_presheaf, for_each_presheaf, random_corpus, random_presheaf, smallest_non_reedy_mono,
    standard_corpus, two_surjections_pushout,
};
pub use ez::{
    all_ez_decompositions, certify_reflects_degeneracy_lemma, ez_decompose, ez_degree, ez_isomorphic, has_unique_ez,
    is_degenerate, reflects_degeneracy, skeleton, unique_ez_failure, EzDecomposition, EzWitness,
};
pub use latching::{
    is_reedy_mono, is_reedy_mono_morphism, latching_failure, latching_object, latching_object_via_weights, latching_routes_agree,
    maps_lowering_pushouts_to_pullbacks, relative_latching_map, LatchingObject, RelativeLatching,
};
pub use types::{autquo, pushout, FinCopresheaf, FinPresheaf, PresheafJson, PresheafMorphism};

#[cfg(test)]
mod tests;
