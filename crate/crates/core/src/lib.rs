//! Exact computation in quantum lattice Heisenberg algebras.
//!
//! The algebras are realized as Heisenberg doubles of `Sym^{⊗I}`, the tensor
//! power of the ring of symmetric functions over `ℚ[q, q⁻¹]`. Everything here
//! is exact: coefficients are Laurent polynomials with arbitrary-precision
//! rational coefficients.
//!
//! - [`partitions`]: partitions, colored multipartitions and their bookkeeping
//! - [`laurent`]: the coefficient ring `ℚ[q, q⁻¹]` and quantum integers
//! - [`symfunc`]: elements of `Sym^{⊗I}` in the p, h and e bases
//! - [`pairing`]: Hopf pairings determined by their values on power sums
//! - [`double`]: the Heisenberg double and normal ordering
//! - [`graded`]: graded dimensions of symmetric and exterior powers
//! - [`relations`]: bounded verification of the h/e presentations

pub mod double;
pub mod error;
pub mod graded;
pub mod laurent;
pub mod pairing;
pub mod partitions;
pub mod relations;
pub mod symfunc;

pub use double::{DoubleElement, Generator, Side};
pub use error::{Error, Result};
pub use graded::{DegreeMultiset, GradedVS, PowerKind};
pub use laurent::{quantum_integer, LaurentPoly, Rational};
pub use pairing::{LatticeSpec, PairingSpec};
pub use partitions::{partitions_of, MultiPartition, Partition};
pub use relations::{LatticeDouble, Theorem, VerificationReport};
pub use symfunc::{Basis, SymElement, SymTensor};

/// Largest degree handled by basis conversion and generator construction.
pub const DEFAULT_DEGREE_BOUND: u32 = 16;
