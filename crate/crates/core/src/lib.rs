//! Exact computation of characteristic varieties of plane curve complements.
//!
//! The pipeline runs from an input [`arrangement::Curve`] through faces of
//! quasiadjunction ([`quasiadjunction`]) and fat-point superabundance
//! ([`sheafcoh`]) to torus components ([`charvariety`]) and cover invariants
//! ([`covers`]). The [`resonance`] module computes identity-containing
//! components independently, from the Aomoto complex alone.

pub mod arrangement;
pub mod charvariety;
pub mod covers;
pub mod error;
pub mod exactmath;
pub mod fixtures;
pub mod quasiadjunction;
pub mod resonance;
pub mod sheafcoh;

pub use error::{Error, Result};
