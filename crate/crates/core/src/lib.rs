//! Accessible information of two-state qubit ensembles.
//!
//! The crate computes mutual information between a two-letter quantum
//! alphabet and a measurement, maximizes it over von Neumann and three-outcome
//! rank-1 POVMs, and certifies the root-counting machinery behind the claim
//! that an orthogonal measurement always suffices for two qubit states:
//!
//! - [`qstate`]: validation and real-basis canonicalization of state pairs.
//! - [`measure`]: POVMs, joint distributions and mutual information.
//! - [`stationary`]: stationarity conditions, the `(α, ξ, η)` parameters,
//!   the root-counting function `f(t)` and the sextic `P`.
//! - [`poly`]: dense polynomials over `f64` or exact rationals, Sturm
//!   sequences, discriminants and the discriminant certificate.
//! - [`optimizer`]: von Neumann and trine searches and conjecture reports.
//!
//! The crate is `no_std` and only needs `alloc`. IO, file formats and the
//! command line live in the `qaccess` companion crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod error;
pub mod linalg;
pub mod measure;
pub mod optimizer;
pub mod poly;
pub mod qstate;
pub mod sampling;
pub mod stationary;

pub use error::{Error, Result};
pub use linalg::{CMat2, Mat2};
pub use measure::{JointDistribution, Povm, Rank1Povm};
pub use optimizer::{TrinePovmParam, VerificationReport, VonNeumannParam};
pub use poly::{DiscriminantCertificate, Polynomial};
pub use qstate::{ComplexDensityPair, DensityPair};
pub use stationary::{QuadraticTriple, StationaryParams};
