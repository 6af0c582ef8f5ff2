//! Grassmann arithmetic, superfield calculus and graded prolongation for the
//! N=1 supersymmetric sine-Gordon equation.
//!
//! The numeric core ([`grassmann`], [`series`], [`superjet`], [`elliptic`]) is
//! generic over the scalar type; the field-theory layers work in `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod elliptic;
pub mod error;
pub mod grassmann;
pub mod prolongation;
pub mod reductions;
pub mod scalar;
pub mod series;
pub mod superalgebra;
pub mod superfield;
pub mod superjet;
pub mod verify;

pub use error::{Error, Result};
pub use grassmann::{AlgebraContext, GrassmannNumber, Parity};
pub use scalar::Scalar;
pub use series::{Analytic, Series};
pub use superfield::{Superfield, SuperfieldValueBundle};
pub use superjet::{JetSpec, SuperJet};

pub type Supernumber = GrassmannNumber<f64>;
pub type Supernumber32 = GrassmannNumber<f32>;
pub type Jet = SuperJet<f64>;
pub type Jet32 = SuperJet<f32>;
