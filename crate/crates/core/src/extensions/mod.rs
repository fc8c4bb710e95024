//! Abelian and central extensions of a commutative group by a loop.

mod abelian;
mod cocycle;
pub(crate) mod decompose;
mod format;
mod search;

pub use abelian::{AbelianGroup, AUTOMORPHISM_ORDER_CAP};
pub use cocycle::{Cocycle, Violation};
pub use decompose::{decompose_extension, mlt_element_form, Decomposition, FiberAffine};
pub use format::{parse_cocycle, write_cocycle};
pub use search::{
    search_cocycles, splitmix_mix, CocycleKind, CocycleSpace, Hit, SearchMode, SplitMix64,
    EXHAUSTIVE_CAP,
};
