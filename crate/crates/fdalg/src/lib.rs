//! fdalg: exact computation with finite-dimensional associative algebras
//! over Q.
//!
//! The crate builds algebras from structure constants and computes, with
//! exact rational arithmetic throughout: radicals, socles and primitive
//! idempotent decompositions; right modules, hom spaces and projectivity
//! witnesses (coordinate systems); symmetric linear functions, their trace
//! extensions to endomorphism rings, pseudotrace maps on basic symmetric
//! algebras, and the transfer between an algebra and its basic corner.
//!
//! Every search performed anywhere in the crate (minimal ideal shrinking,
//! invertible-witness hunting, symmetric-form hunting) is a deterministic
//! enumeration with an explicit budget, so results are reproducible
//! byte-for-byte.

pub mod algebra;
pub mod amodule;
pub mod exactla;
pub mod json;
pub mod pseudotrace;
pub mod slf;
pub mod structure;
pub mod verify;
pub mod zoo;

/// Default cap for all deterministic candidate enumerations. The CLI
/// overrides it from the `FDALG_SEARCH_BUDGET` environment variable.
pub const DEFAULT_SEARCH_BUDGET: usize = 20_000;
