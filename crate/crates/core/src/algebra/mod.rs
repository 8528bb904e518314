//! Exact arithmetic substrate: integer and rational polynomials, real
//! algebraic numbers, number fields, matrices and finite-field subspaces.

pub mod field;
pub mod fp;
pub mod intmat;
pub mod matrix;
pub mod qpoly;
pub mod real_algebraic;
pub mod zpoly;
