//! The Lie lattices `D*` attached to a companion polynomial, their
//! derivations and automorphisms.

mod blocks;
mod lattice;

pub use blocks::{
    assemble_s, basis_change, companion, g_condition_check, h_element, make_xi, n_element,
    reversal, to_basis_c, BlockData,
};
pub use lattice::{Basis, CompanionData, LieLattice};
