//! Exact computations for natural automorphisms `ψ = t_a ∘ h` of generalized
//! Kummer varieties `K_n(A)` over split abelian surfaces `A = E × E`:
//! fixed-point freeness with checkable certificates, topological Lefschetz
//! numbers from the Kummer generating series, and Enriques-type
//! classification of the free quotients.

pub mod enriques;
pub mod error;
pub mod exactnum;
pub mod fixedpoint;
pub mod lefschetz;
pub mod reference;
pub(crate) mod serial;
pub mod torus;

pub use error::{Error, Result};
