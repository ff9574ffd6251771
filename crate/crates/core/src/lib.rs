pub mod error;
pub mod rep;
pub mod semigroup;
pub mod set;

pub use error::{Error, Result};
pub use rep::{PartialBijection, Representation};
pub use semigroup::{Elem, Semigroup, SemigroupDocument, Unitized};
pub use set::Subset;
pub mod hull;
pub mod spectrum;
pub mod strings;
pub mod subshift;
pub mod tables;
pub mod verify;
pub mod cli;
