//! Tools for the modular isomorphism problem of finite p-groups: pc-group
//! machinery, Jennings series, truncated augmentation ideal tables,
//! canonical forms of nilpotent algebras and the bin-splitting driver.

pub mod algtable;
pub mod canon;
pub mod caps;
pub mod corpus;
pub mod driver;
pub mod error;
pub mod field;
pub mod invariants;
pub mod jennings;
pub mod pcgroup;
pub mod smallring;

pub use caps::Caps;
pub use error::{Error, Result};
pub use pcgroup::{Element, PcPresentation, Subgroup, Word};
