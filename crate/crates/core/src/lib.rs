// Subspace hashing reads only the basis, not the lazily filled field tables.
#![allow(clippy::mutable_key_type)]

pub mod arith;
pub mod cli;
pub mod construct;
pub mod error;
pub mod field;
pub mod flag;
pub mod linalg;
pub mod singer;
pub mod subspace;

pub use error::{Error, Result};
