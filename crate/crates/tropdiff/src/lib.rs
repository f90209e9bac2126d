//! Tropical differential algebra over the rational-function field Q(t).
//!
//! The crate provides exact arithmetic in Q(t) with the t-adic valuation
//! ([`coefficients`]), differential monomials and polynomials in finitely
//! many differential indeterminates ([`diffpoly`]), support profiles and
//! tropical initials ([`tropical`]), capped differential reduction
//! ([`reduction`]), and completion algorithms with certificates
//! ([`engine`]). Text parsing and command dispatch for the `tropdiff`
//! binary live in [`cli`].

pub mod cli;
pub mod coefficients;
pub mod diffpoly;
pub mod engine;
pub mod reduction;
pub mod tropical;

pub use coefficients::{Rational, RationalFunction, TPolynomial, Valuation};
pub use diffpoly::{DerivVar, DiffMonomial, DiffPolynomial};
pub use tropical::{MonomialOrder, SupportProfile, SupportSet, TropicalLead};
