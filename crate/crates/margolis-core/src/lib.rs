//! Exact computer algebra over F2 for Margolis homology.
//!
//! The crate computes kernel-mod-image homology of the nilpotent right
//! actions Q0, Q1, Q2 and P21 on the homology of tmf, its smash powers, and
//! `(BZ/2^k)_+`, entirely with exact bit-level linear algebra. Two
//! independent routes are provided throughout: a brute-force per-degree
//! matrix oracle, and the structural route through the length spectral
//! sequence (permanent-cycle subalgebra, finite modules `M_J`, and the
//! iterated exchange basis `B_J`).
//!
//! The crate is `no_std` with `alloc`; IO, serialization, and the command
//! line live in the companion `margolis-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod action;
pub mod basis;
pub mod f2;
pub mod lss;
pub mod matrix;
pub mod oracle;
pub mod spaces;

pub use action::{act, p21_action, q_action, OperatorId};
pub use f2::{F2Poly, SpaceDescriptor, ZetaMonomial};
pub use lss::{IndexSet, TxMonomial, TxPoly};
pub use oracle::{build_operator, finite_module_homology, HomologyReport};
