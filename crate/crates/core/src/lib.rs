//! Exact computation of integral bases for the degree-two weighted
//! Stanley–Reisner module of a 4-dimensional toric orbifold, given its
//! characteristic vectors λ_1..λ_m around an m-gon.
//!
//! The main entry points are [`wsr::wsr2_basis`] (closed-form basis),
//! [`wsr::intersection_oracle`] (brute-force lattice intersection of the
//! vertex lattices), [`applications::cellular_basis`] and
//! [`applications::picard_report`]. All arithmetic is over arbitrary
//! precision integers and rationals.

pub mod applications;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod pair;
pub mod poly;
pub mod wsr;

pub use applications::{
    cellular_basis, ideal_j_generators, picard_report, reduce_mod_j, CellularBasis, CosetClass,
    PicardReport,
};
pub use error::{Error, Result};
pub use linalg::{Fraction, IntMatrix, Lattice};
pub use pair::{random_pair, CharVector, CharacteristicPair, TopologyReport, Violation};
pub use poly::{RatPoly2, SRPolynomial};
pub use wsr::{
    integrality_check, intersection_oracle, relation_lattice, relation_operator, wsr2_basis,
    wsr2_member, LinearForm, Wsr2Basis,
};
