//! Symmetrisation of singular-style chains on finite simplicial complexes,
//! and an exact comparison of the l1 semi-norm with its normalised variant.
//!
//! Singular simplices are modelled by ordered vertex tuples whose support is
//! a face of a finite simplicial complex ([`AffineSimplex`]). Repeated vertices
//! are allowed, so the model contains degenerate simplices exactly as the free
//! singular chain complex does. All coefficients are exact rationals.
//!
//! The crate is organised bottom-up:
//!
//! - [`scomplex`]: complexes, affine simplices, permutations.
//! - [`chain`]: sparse rational chains, face maps, boundary, l1 norm, Moore
//!   normalisation membership.
//! - [`symm`]: permutation enumeration, the cyclic permutations `tau_j` and the
//!   symmetrisation operator.
//! - [`homology`]: exact elimination, cycle and boundary spaces, Betti numbers
//!   and homologousness witnesses.
//! - [`l1opt`]: an exact simplex solver and the two class-wise minimisations.
//! - [`corpus`]: the bundled test complexes.

pub mod chain;
pub mod corpus;
pub mod error;
pub mod homology;
pub mod l1opt;
pub mod rational;
pub mod scomplex;
pub mod symm;

pub use chain::Chain;
pub use error::{Error, Result};
pub use rational::Q;
pub use scomplex::{AffineSimplex, Permutation, SimplicialComplex, Vertex};

/// Default upper bound on chain dimensions handled by symmetrisation and the
/// homology/LP layers. `(n+1)!` permutations are expanded per simplex.
pub const DEFAULT_DIM_CAP: usize = 6;
