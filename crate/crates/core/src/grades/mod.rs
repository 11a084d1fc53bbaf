//! Grades: exact vectors in Q^r, lattices, finite abelian quotients and the
//! carry combinatorics of the index set I.

mod group;
mod index;
pub mod intmat;
mod lattice;
pub mod presentation;

pub use group::{rank_and_exponent, FiniteAbelianGroup, GroupElem, Quotient};
pub use index::beta_reduce;
pub use lattice::{index as lattice_index, lattice_quotient, GradeVector, Lattice, LatticeQuotient};
