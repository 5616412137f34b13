pub mod analyzer;
pub mod arith;
pub mod backtrack;
pub mod conjugacy;
pub mod constructions;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod group;
pub mod matrix;
pub mod oracle;
pub mod perm;
pub mod permfile;
pub mod random;
pub mod sylow;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use group::PermGroup;
pub use perm::Perm;
