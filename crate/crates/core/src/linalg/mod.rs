//! Exact 2×2 integer linear algebra.

mod intertwiner;
mod lattice;
mod mat;

pub use intertwiner::{intertwiner_lattice, IntertwinerBasis};
pub(crate) use intertwiner::first_nonzero_negative;
pub use lattice::{enumerate_sublattices, hnf, lattice_image, Lattice2};
pub use mat::{HyperbolicMatrix, Mat2};
