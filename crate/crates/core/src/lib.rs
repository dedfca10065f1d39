//! Finite-group toolkit for groups that factor as products of cyclic
//! subgroups.
//!
//! Groups are stored as multiplication tables ([`FiniteGroup`]) and subgroups
//! as bitsets over the elements ([`ElementSet`]). On top of that sit the full
//! subgroup lattice with minimal generator counts and Prüfer rank, the search
//! for factorizations `G = AB` with cyclic `A` and `B`, Sylow bases built from
//! such factorizations, the structure decomposition `G = (S × T) ⋊ H`, and a
//! corpus runner that checks all of this across a few thousand small groups.

pub mod arith;
pub mod corpus;
pub mod elemset;
pub mod error;
pub mod factor;
pub mod formats;
pub mod group;
pub mod lattice;
pub mod structure;
pub mod subgroup;
pub mod verify;

pub use corpus::{generate_corpus, CatalogEntry, CorpusConfig, Status, Verdict};
pub use elemset::ElementSet;
pub use error::{Error, Result};
pub use group::{build, ActionSpec, Elem, FiniteGroup, GroupRecipe, Limits};
pub use lattice::{all_subgroups, minimal_generators, prufer_rank, SubgroupLattice};
pub use verify::{run_checks, Check, VerificationReport};
