//! Finite join-semilattices, their morphisms, constructions, and canonical forms.

pub mod canonical;
pub mod constructions;
pub mod enumerate;
pub mod homs;
pub mod types;

pub use canonical::{
    are_isomorphic, canonical_form, canonicalize, find_isomorphism, find_isomorphism_brute_force,
    CanonicalForm,
};
pub use constructions::{
    adjoin_bottom, chain, cube, cube_coord, cube_label, diamond, free_on_generators, free_on_poset,
    image_factorize, interval, pentagon, product, quotient_by_pairs, terminal, tripod, vee,
    FreeSemilattice, Product,
};
pub use enumerate::{enumerate_semilattices, enumerate_up_to};
pub use homs::{automorphisms, brute_force_homs, enumerate_hom_maps, enumerate_homs, idempotents};
pub use types::{
    validate_semilattice, Distributivity, FinPoset, FiniteSemilattice, MorphismJson, SLatMorphism,
    SemilatticeJson,
};
