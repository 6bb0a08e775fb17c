//! Finite permutation groups and the O-group decision for a prime `p`.
//!
//! A group is an O-group for `p` when each of its cyclic-by-`p` subgroups is
//! cyclic, dihedral of order `2pⁿ`, or (for `p = 2`) isomorphic to `A₄`.
//! This crate decides the property two ways: by enumerating cyclic-by-`p`
//! subgroups ([`classify::is_o_group_by_definition`]) and by the Sylow
//! normalizer/centralizer criteria ([`classify::is_o_group_by_criterion`]).

pub mod analysis;
mod chain;
pub mod classify;
pub mod cli;
pub mod construct;
pub mod error;
pub mod field;
pub mod group;
pub mod perm;

pub use error::{GroupError, Result};
pub use group::{enum_cap, set_enum_cap, ElementStream, Group, QuotientMap, DEFAULT_ENUM_CAP};
pub use perm::{compose, element_order, inverse, Permutation};
