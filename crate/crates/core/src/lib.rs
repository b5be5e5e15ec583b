//! Detection, certification and search for quasi-semiregular elements in
//! finite permutation groups.
//!
//! A permutation is quasi-semiregular when it fixes exactly one point and
//! every other cycle has length equal to its order.  The crate provides the
//! group machinery (stabilizer chains, coset actions, conjugacy classes) and
//! several independent routes for deciding quasi-semiregularity.

pub mod actions;
pub mod constructors;
pub mod dataset;
pub mod error;
pub mod field;
pub mod group;
pub mod harness;
pub mod par;
pub mod perm;
pub mod qsr;
pub mod structure;

pub use actions::ActionInstance;
pub use error::{Error, Result};
pub use group::{Family, Orbit, PermGroup, StabChain};
pub use par::Exec;
pub use perm::{CycleType, Permutation};
