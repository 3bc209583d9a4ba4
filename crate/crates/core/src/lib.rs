//! Uniform colorings of graphs and the two-step nilpotent Lie algebras they
//! determine.

mod error;
pub mod enumeration;
pub mod families;
pub mod graph;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod par;

pub use error::{Error, Result};
