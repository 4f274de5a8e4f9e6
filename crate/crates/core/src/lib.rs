//! Exact computations with weighted monomial ideals.
//!
//! The crate covers degree-truncation ideals `R_{>=alpha}` of a weighted
//! polynomial ring, their products and powers, certificates that
//! `(R_{>=mA})^p = R_{>=pmA}` (which makes `R_{>=mA}` a normal ideal), the
//! integral closure of monomial ideals through their Newton polyhedra, and a
//! small sparse polynomial toolkit for checking integral-dependence
//! equations modulo one relation.

pub mod closure;
pub mod error;
pub mod format;
pub mod ideal;
pub mod normality;
pub mod poly;
pub mod ring;
pub mod syntax;

pub use error::{Error, Result};
pub use ideal::{truncation_ideal, MonomialIdeal};
pub use ring::{Monomial, WeightSystem, WeightedDegree};
