pub mod classify;
pub mod error;
pub mod exactla;
pub mod homalg;
pub mod modmatrix;
pub mod partitions;
pub mod richmond;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use partitions::Partition;
pub use words::{AlgebraParams, Letter, Word};
