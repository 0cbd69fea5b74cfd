//! The Littelmann path model for symmetrizable Kac-Moody root systems.
//!
//! Paths are exact piecewise-linear rational paths in the weight space,
//! written in fundamental-weight coordinates. On top of the root operators
//! the crate builds crystals `B(pi)`, tensor-product decompositions, an
//! extremality test with a sufficient criterion, and constructive witnesses
//! for generalized PRV components. A separate character-theoretic oracle
//! (Weyl dimension, Freudenthal, Klimyk) validates the path model in finite
//! type.

#![allow(clippy::needless_range_loop)]

pub mod cartan;
pub mod crystal;
pub mod error;
pub mod extremal;
pub mod figure;
pub mod multiset;
pub mod oracle;
pub mod path;
pub mod prv;
pub mod rational;
pub mod rootops;
pub mod weight;

pub use cartan::{RealRoot, RootSet, RootSystem, RootSystemSpec, WeylElement};
pub use crystal::{CrystalGraph, Limits};
pub use error::{Error, Result, VerifyMode};
pub use multiset::WeightMultiset;
pub use path::{HeightProfile, Path};
pub use rational::Rational;
pub use weight::{RationalWeight, Weight};
