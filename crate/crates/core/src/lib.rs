pub mod bitset;
pub mod graph;
pub mod error;
pub mod instance;
pub mod rng;

pub use error::{Error, Result};
pub use instance::{Coloring, Instance, InstanceSpec, Tag};
pub mod oracle;
pub mod algebra;
pub mod solver;
pub mod kernel;
