//! Exact lattice and polyhedral machinery.
//!
//! Everything here works over arbitrary-precision integers and rationals:
//! integer matrices with Smith/Hermite normal forms, rational polytopes with
//! both inequality and vertex descriptions, lattice point enumeration, and
//! fans (normal fans, completeness checks, lattice isomorphism search).

pub mod dd;
pub mod fan;
pub mod matrix;
pub mod polytope;
pub mod text;

pub use fan::{normal_fan, Fan, FanIsomorphism};
pub use matrix::{hermite_normal_form, kernel_basis, smith_normal_form, IntMatrix, Snf};
pub use polytope::{Halfspace, PolytopeError, RationalPolytope};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
