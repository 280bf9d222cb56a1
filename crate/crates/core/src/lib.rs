//! Rank of sparse random matrices over finite fields.
//!
//! The crate covers both sides of the story: closed-form predictions for the
//! asymptotic rank ([`analytic`]) and the machinery to check them on sampled
//! instances ([`ensemble`], [`linalg`], [`coreops`], [`harness`]).

pub mod analytic;
pub mod coreops;
pub mod degrees;
pub mod ensemble;
pub mod gf;
pub mod harness;
pub mod linalg;
pub mod seed;

pub use analytic::{Chi, EnsembleSpec, GraphMode};
pub use degrees::{DegreeDistribution, Family};
pub use ensemble::{InstanceSeed, SparseMatrix, TannerGraph};
pub use gf::{Field, FieldElement};
