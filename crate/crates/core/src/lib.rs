//! Exact computer algebra over Q[x1..xn]: Gröbner bases for submodules of
//! free modules, finitely presented modules and functors, the defect and the
//! Bass torsion, and their application to linear control systems.

pub mod arith;
pub mod commands;
pub mod error;
pub mod gb;
pub mod module;
pub mod control;
pub mod corpus;
pub mod functor;
mod lexer;
pub mod poly;
pub mod session;
pub mod suite;

pub use error::{Error, Result};
