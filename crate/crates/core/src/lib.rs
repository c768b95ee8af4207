//! Regular languages of geodesic words in finitely generated groups.
//!
//! The crate builds, for a group given by a normal-form model, the
//! cone-type automaton of its (optionally filtered) geodesic language, the
//! short-lex unique-representative sublanguage, subgroup languages, and the
//! growth data of all of these.

pub mod cone;
pub mod error;
pub mod fsa;
pub mod group;
pub mod growth;
pub mod pump;
pub mod scenario;
pub mod shortlex;
pub mod subgroup;
pub mod word;

pub use error::{Error, Result};
