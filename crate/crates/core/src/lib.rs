//! Weighted scrolls over the projective line and their anticanonical hypersurfaces.

pub mod classify;
pub mod degen;
pub mod report;
pub mod scroll;
pub mod sections;
pub mod singular;

pub use scroll::{Coord, DivisorClass, Ray, ScrollError, ScrollSpec, TorusStratum};
pub use sections::{
    anticanonical_sections, base_locus, divisor_polytope, embedded_moduli_dim, fixed_divisor, random_section,
    section_space, MonomialDatum, SectionSpace, SectionsError,
};
