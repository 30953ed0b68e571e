//! Exact homological algebra over the integers and over `F_p[x]`: Smith
//! normal form, bounded chain complexes of free modules, two-term Koszul
//! complexes, the cellular factorization of morphisms, the excision
//! constructions for acyclic Koszul complexes, and `K_0` invariants.

pub mod complex;
pub mod error;
pub mod io;
pub mod k0;
pub mod koszul;
pub mod linalg;
pub mod pid;
pub mod sfilter;

pub use error::{Error, Result};
pub use linalg::{FgModule, Matrix};
pub use pid::{DomainElement, Ring};
