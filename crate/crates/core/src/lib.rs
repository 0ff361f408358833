//! Verification toolkit for flag simplicial complexes: local curvature
//! conditions (k-largeness, m-location, SD'), simplicial isometries
//! (displacement, minimal sets, axes) and Gromov hyperbolicity.

pub mod cli;
pub mod complex;
pub mod config;
pub mod curvature;
pub mod error;
pub mod generators;
pub mod hyperbolicity;
pub mod io;
pub mod isometry;
pub mod loops;
pub mod par;
pub mod verdict;

pub use complex::{Distance, FlagComplex, Simplex, SubcomplexView};
pub use config::Limits;
pub use error::{Error, Result};
pub use isometry::Isometry;
pub use loops::{FillingCertificate, LoopPath};
pub use verdict::{Verdict, Witness};
