//! Exact root multiplicities of symmetrizable Kac-Moody algebras.
//!
//! The engine works purely at the level of the root lattice. A validated
//! [`CartanMatrix`] supplies the invariant form; real roots come from closing
//! the simple roots under fundamental reflections ([`weyl::pingpong`]);
//! imaginary roots come from the fundamental chamber ([`chamber`]), whose
//! points are fed through the Peterson recurrence in increasing height
//! ([`peterson::compute_all`]). Every value is an exact rational.
//!
//! [`oracle::naive_compute`] evaluates the same recurrence over the whole
//! positive lattice and serves as an independent check of the engine, and
//! [`metrics`] counts bilinear-form evaluations for both.

pub mod cartan;
pub mod chamber;
pub mod error;
pub mod export;
pub mod lattice;
pub mod metrics;
pub mod oracle;
pub mod peterson;
pub mod presets;
pub mod weyl;

pub use cartan::CartanMatrix;
pub use chamber::HilbertBasis;
pub use error::{Error, Result};
pub use lattice::RootVector;
pub use metrics::{KillingCounter, Meter, MetricsReport, Phase};
pub use oracle::OracleTable;
pub use peterson::{EngineOptions, RootKind, RootRecord, RootTable};
pub use weyl::OrbitBatch;

/// Exact rational used for every c-value.
pub type Rational = num_rational::BigRational;
