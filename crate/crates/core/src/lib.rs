//! Exact GIT-cones for acyclic quivers.
//!
//! The crate decides when two rational vectors of an acyclic quiver define
//! the same subcategory of semi-stable representations. It provides the
//! Euler form and Coxeter matrix ([`quiver`]), an exact polyhedral cone
//! kernel ([`cone`], [`lp`]), generic subdimension vectors ([`genhom`]),
//! King's criterion and the domains of semi-invariants `D(β)`
//! ([`stability`]), the tube combinatorics of Euclidean quivers ([`tame`])
//! and the equivalence decision itself ([`equiv`]).

pub mod cone;
pub mod equiv;
pub mod error;
pub mod genhom;
pub mod linalg;
pub mod lp;
pub mod quiver;
pub mod selfcheck;
pub mod stability;
pub mod tame;
pub mod vector;

pub use cone::{Cone, HCone, VCone};
pub use error::{Error, Result};
pub use quiver::{EulerData, Quiver, QuiverType};
pub use vector::{DimVector, RatVector, Rational};
