//! Cyclic-group algebra behind period finding: exact modular arithmetic,
//! cyclic groups and their irreducible representations, symmetry-adapted
//! orbitals on rings, the modular-exponentiation oracle and a classical
//! simulation of the quantum order-finding circuit.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod arithmetic;
pub mod error;
pub mod group;
pub mod hidden_subgroup;
pub mod representations;
pub mod ring_salc;
pub mod shor_sim;

pub use error::{Error, Result};
