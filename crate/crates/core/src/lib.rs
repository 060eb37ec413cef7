//! Bead arrangements on a cyclic wire, their associated plane trees, exact
//! counts, the mutation group action and the matching Hom-orthogonality model.

pub mod action;
pub mod arrangement;
pub mod catmodel;
pub mod counting;
pub mod error;
pub mod plane_tree;
pub mod render;
pub mod ring;

pub use error::{Error, Result};
pub use ring::{Bead, Circlet, Interval, Params};

/// Count type used where totals may exceed machine words.
pub type ExactCount = num_bigint::BigUint;
pub type ExactCountReport = counting::CountReport<ExactCount>;
pub type FastCountReport = counting::CountReport<u64>;
