//! Exact engine for Kac-type polynomials of curves.
//!
//! Everything here runs on `core` and `alloc`; file formats, caching and the
//! command line live in the companion `census` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod census;
pub mod error;
pub mod frac;
pub mod monomial;
pub mod partition;
pub mod poly;
pub mod rational;
pub mod residue;
pub mod series;
pub mod zeta;

pub use error::{CensusError, Result};
pub use frac::{Atom, FactoredRat};
pub use monomial::{alpha, alphas, Monomial, Var};
pub use partition::{pairing, partitions_up_to, BlockProfile, Partition};
pub use poly::SparsePoly;
pub use rational::Rational;
pub use series::{pleth_exp, pleth_log, series_exp, series_log, BiSeries, CoeffRing, ZSeries};
pub use census::{
    betti_polynomial, constant_term, count_points, kac_polynomial, kac_rational, regularity_report, BettiResult,
    Executor, KacResult, PointCount, RegularityReport, Sequential,
};
pub use zeta::CurveData;
