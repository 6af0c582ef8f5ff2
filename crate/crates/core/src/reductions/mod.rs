//! Symmetry reductions of the superfield equation: ansätze, reduced
//! equations, profile ODEs and the catalog of explicit solutions.

pub mod cases;
pub mod catalog;
pub mod complex;
pub mod component;
pub mod obstruction;
pub mod ode;
pub mod profile;
pub mod solve;

pub use cases::{generator_action, CaseId, ReductionCase};
pub use component::{ComponentCaseId, ComponentProfiles};
pub use profile::{AnsatzProfiles, Profile};
