//! Matrices over the domain, Smith normal form, solving, and finitely
//! generated modules.

mod fgmodule;
mod matrix;
mod presented;
mod snf;
mod solve;

pub mod diagrams;

pub use fgmodule::{module_iso, FgModule};
pub use matrix::Matrix;
pub use presented::{
    hom_generators, is_exact_between, is_short_exact, pullback, pushout, pushout_of_span, ModuleHom,
    PresentedModule,
};
pub use snf::{chain_of_diagonal, elementary_divisors, rank, snf, SnfCertificate};
pub use solve::{
    cokernel, image_basis, inverse, is_exact_at, is_injective, kernel_basis, left_inverse,
    right_inverse, solve,
};
