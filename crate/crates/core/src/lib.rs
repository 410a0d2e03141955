//! Maximal subgroups of free idempotent generated semigroups over bands of
//! transformation pairs.

pub mod cli;
pub mod constructions;
pub mod error;
pub mod ig;
pub mod presentation;
pub mod semigroup;
pub mod transform;
pub mod verify;

pub use error::{Error, Result, Stage};
