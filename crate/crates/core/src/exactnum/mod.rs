//! Exact arithmetic: quadratic cyclotomic rings, integer matrices, Smith
//! normal form and solvability of linear systems on real tori.

mod lattice;
mod matrix;
mod ring;
mod snf;

pub use lattice::{is_solution, torus_system_solvable, Obstruction, Solvability};
pub use matrix::{IntMatrix, RatMatrix};
pub use ring::{FieldElem, RingElem, RingId};
pub use snf::{smith_normal_form, SmithForm};

