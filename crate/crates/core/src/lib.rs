//! Strict cartesian effect categories over finite carriers.
//!
//! Two models ship with the crate, partial maps and state-passing maps,
//! plus the Kleisli category of the Maybe monad as a second presentation of
//! partiality. The law engine checks every statement of the theory by
//! exhaustive enumeration, the Arrow bridge derives and checks the Arrow
//! operations, and the proof checker validates decorated equational proofs.

pub mod cartesian;
pub mod effect;
pub mod error;
pub mod finite;
pub mod arrow;
pub mod instances;
pub mod laws;
pub mod proof;
pub mod semantics;
pub mod syntax;
pub mod translation;

pub use effect::{CartesianEffectCategory, EffectCategory};
pub use error::{Error, Result};
pub use finite::{FinSet, ProductSet};
