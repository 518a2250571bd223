pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod matter;
pub mod automorphisms;
pub mod lattice;
pub mod counting;
pub mod oracle;
mod numeric;
mod textio;

pub use error::{Error, Result};
