//! Exact combinatorics for testing multiplicity upper bounds on graded
//! Artinian quotients `k[x_1, .., x_n]/I`.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! * [`hilbert`]: O-sequences, Macaulay bounds, enumeration, complete
//!   intersection series and the almost-complete-intersection obstruction.
//! * [`monomial`]: monomials in lex order, monomial ideals, lex-segment
//!   ideals, truncation and stability.
//! * [`betti`]: Betti diagrams, the Eliahou-Kervaire formula, consecutive
//!   cancellation and the greedy minimization of the maximal shifts.
//! * [`verdict`]: integer bound comparisons, realizability filters and the
//!   per-Hilbert-function classification.
//! * [`koszul`]: graded Betti numbers of arbitrary monomial quotients from
//!   multigraded Koszul homology over a prime field.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod betti;
mod error;
pub mod hilbert;
pub mod koszul;
pub mod monomial;
pub mod verdict;

pub use betti::BettiDiagram;
pub use error::{Error, Result};
pub use hilbert::HilbertFunction;
pub use monomial::{Monomial, MonomialIdeal};
