//! Decision procedures and certificates for suspension flows of hyperbolic
//! torus automorphisms and geodesic flows on hyperbolic 2-orbifolds.
//!
//! - [`conjugacy`]: topological equivalence of suspensions, decided as
//!   SL2(Z) conjugacy through cyclic RL-words.
//! - [`commensurability`]: the trace-of-powers criterion with an explicit
//!   covering certificate.
//! - [`models`] and [`chain`]: model flows and verifiable
//!   almost-commensurability chains between any two of them.

pub mod arith;
pub mod chain;
pub mod commensurability;
pub mod conjugacy;
pub mod error;
pub mod linalg;
pub mod models;

pub use error::{Error, Result};
pub use linalg::{HyperbolicMatrix, Lattice2, Mat2};
