//! Polynomial arithmetic, Groebner bases and Hilbert functions for small ideals.

mod f4;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod monomial;
pub mod ring;

pub use field::{Field, PrimeField, Rationals, DEFAULT_PRIME};
pub use groebner::{Budget, GbError, GroebnerBasis};
pub use hilbert::HilbertSeries;
pub use ideal::{exact_division, permuted_ring, toric_ideal, Ideal};
pub use monomial::{Monomial, Order, MAX_VARS};
pub use ring::{Poly, Ring, RingError};
