//! Finite posets and lattices: irreducibles, downsets and up-sets,
//! lattice classification, width and height, antichains, isomorphism.

mod antichain;
pub mod classify;
mod iso;
mod lattice;
mod poset;

pub use antichain::{
    count_antichains, enumerate_antichains, width, width_brute, width_height, width_matching,
    BRUTE_WIDTH_LIMIT, DEFAULT_ANTICHAIN_CAP,
};
pub use classify::{classify_lattice, LatticeClass};
pub use iso::{is_isomorphic, DEFAULT_ISO_CAP};
pub use lattice::{downsets, is_join_irreducible, join_irreducibles, upsets, FiniteLattice, SetLattice};
pub use poset::FinitePoset;
