//! Finite loops, their multiplication groups, and the commutator theory of
//! normal subloops.

pub mod catalog;
pub mod commutator;
pub mod error;
pub mod extensions;
pub mod iso;
pub mod library;
pub mod loops;
pub mod mult;
pub mod perm;
pub mod permgroup;
pub mod presets;
pub mod report;
pub mod structure;

pub use error::{Error, Result};
pub use loops::{Element, LatinSquare, LoopTable};
pub use perm::Permutation;
pub use permgroup::{Class, PermGroup};
pub use structure::Subloop;
