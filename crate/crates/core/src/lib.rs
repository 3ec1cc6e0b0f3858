//! Membership and conjugacy problems for finite inverse semigroups.
//!
//! Two representation models are supported: partial bijections of a finite
//! set ([`PartialBijection`]) and Cayley tables ([`CayleyTable`]). The
//! [`reduction`] module routes an instance to the fastest exact solver for
//! the variety the generated subsemigroup belongs to, and falls back to the
//! brute-force [`oracle`] otherwise.

pub mod answer;
pub mod automata;
pub mod classify;
pub mod ct;
pub mod error;
pub mod group;
pub mod hardness;
pub mod meta;
pub mod munn;
pub mod oracle;
pub mod partial;
pub mod reduction;
pub mod semigroup;
pub mod slp;
pub mod table;
pub mod unionfind;

pub use classify::{classify, classify_generated, Classification, VarietyTag};
pub use error::AlgebraError;
pub use oracle::{Caps, Conjugator, Green};
pub use partial::{brandt, direct_product, PartialBijection, PbSystem, SymmetricInverseMonoid};
pub use semigroup::{GeneratorSystem, InverseSemigroup};
pub use slp::{Slp, SlpItem};
pub use table::{preston_wagner, CayleyTable, CtSystem};
