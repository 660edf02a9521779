//! Exact search for permutation symmetries `P^T H P = H` of Hamiltonian
//! matrices whose entries are polynomials in real parameters, analysis of the
//! group they form, and decomposition of the state space into invariant
//! subspaces.
//!
//! ```
//! use hamsym::models::{build, Bindings};
//! use hamsym::search::{find_symmetries, SearchConfig};
//!
//! let h = build("hubbard2", &Bindings::new()).unwrap();
//! let found = find_symmetries(&h, &SearchConfig::default()).unwrap();
//! assert_eq!(found.count, 4);
//! ```

pub mod group;
mod linalg;
pub mod matrix;
pub mod matrix_file;
pub mod models;
pub mod perm;
pub mod report;
pub mod scalar;
pub mod search;
pub mod subspace;

pub use group::SymmetryGroup;
pub use matrix::ExactMatrix;
pub use perm::Perm;
pub use scalar::{GaussRational, Monomial, PolyScalar, Rational};
pub use search::{SearchConfig, SearchMode, SearchResult};
