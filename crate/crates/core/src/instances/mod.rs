//! The shipped models: partial maps, state-passing maps and the Kleisli
//! category of the Maybe monad.

pub mod kleisli;
pub mod literal;
pub mod partial;
pub mod state;

pub use kleisli::{from_kleisli, to_kleisli, MaybeKleisli, MaybeKleisliMap};
pub use literal::{parse_literal, parse_partial, parse_state, Literal, LiteralBody};
pub use partial::{PartialMap, PartialMaps};
pub use state::{StateMap, StateMaps};
