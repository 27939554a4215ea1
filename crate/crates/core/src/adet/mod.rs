//! Symbolic resultants and discriminants, and the product formula for the
//! principal A-determinant of a Lawrence prism.

pub mod multipoly;
pub mod parse;
pub mod prism;
pub mod resultant;

pub use multipoly::{Monomial, MultiPoly};
pub use parse::{parse_polynomial, parse_polynomial_over};
pub use prism::{
    coefficient_name, principal_adet_prism, verify_expansion, verify_worked_example,
    ExampleReport, FactoredPoly, REFERENCE_EXPANSION, REFERENCE_HEIGHTS,
};
pub use resultant::{discriminant, discriminant_sylvester, resultant, resultant_int, UniPolySym};
