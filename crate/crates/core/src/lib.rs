//! Finite semilattices, their generalized Reedy structure, finite presheaves with
//! latching and skeletal machinery, cube categories, and executable obstructions.

pub mod budget;
pub mod error;
pub mod semilattice;
pub mod union_find;

pub use budget::Budget;
pub use error::{Error, Result};
pub mod certificate;
pub mod reedy;

pub use certificate::{Certificate, Check, Status};
pub mod elegance;
pub mod presheaf;
pub mod cube;
pub mod obstruction;
pub mod suites;
pub mod dot;
