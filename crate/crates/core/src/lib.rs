//! Exact-arithmetic workbench core: a symbolic calculus of support families
//! with a polar operation on set families, essentially-free module objects
//! with duals/homs/tensors and the dual pairing, plus a structure-constant
//! engine for finite-dimensional algebras, coalgebras and bialgebras,
//! towers of finite-dimensional algebras, and linearly recursive sequences.
//!
//! Everything is exact (no floating point) and pure (no IO); the crate is
//! `no_std` with `alloc`. File formats, the DSL parser and the CLI live in
//! the companion `refcalc` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bialgebra;
pub mod catalog;
pub mod guard;
pub mod index;
pub mod linalg;
pub mod profinite;
pub mod rng;
pub mod sample;
pub mod scalar;
pub mod support;
pub mod testalg;
