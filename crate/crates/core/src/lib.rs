//! Cocycles and generating functionals on Hopf *-algebras presented by
//! generators and rewrite rules.

pub mod cli;
pub mod coquant;
pub mod error;
pub mod gfcocycle;
pub mod hopf;
pub mod io;
pub mod levydecomp;
pub mod linalg;
pub mod ncalg;
pub mod presets;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
