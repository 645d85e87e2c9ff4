//! Exact combinatorics of omnioriented quasitoric orbifolds.
//!
//! A model is a simple polytope (as vertex–facet incidences) together with a
//! primitive characteristic vector per facet. From it this crate computes
//! local groups as Box elements, ages and heights, Chen-Ruan Betti numbers
//! by three independent assemblies, Ehrhart numerators of the lattice
//! simplices `Δ_F`, and crepant blowups with their induced subdivisions.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod blowup;
pub mod cohomology;
pub mod ehrhart;
pub mod exact;
pub mod generate;
pub mod intlat;
pub mod model;
pub mod sectors;

pub use blowup::{blow_up, mckay_check, BlowupSpec, McKayReport};
pub use cohomology::{cr_report, CrReport};
pub use exact::{Int, Poly, Rat};
pub use generate::generate_test_models;
pub use intlat::{IntMat, IntVec};
pub use model::{Face, Model, ModelError, Violation};
pub use sectors::is_quasi_sl;
