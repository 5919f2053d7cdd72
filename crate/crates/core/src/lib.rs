//! Exact construction and verification of matrix factorizations over
//! polynomial rings with a weighted grading.
//!
//! The modules build on each other: [`ring`] supplies polynomials and exact
//! linear algebra, [`fact`] the factorizations and their morphisms, [`fold`]
//! Koszul complexes, folding and totalization, and [`homalg`] Hom spaces in
//! the homotopy category. [`io`] reads and writes documents, [`corpus`] holds
//! the named examples, and [`selftest`] the batch checks run by the CLI.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod fact;
pub mod fold;
pub mod homalg;
pub mod io;
pub mod ring;
pub mod selftest;

pub use error::{Error, Result};
