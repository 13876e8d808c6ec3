pub mod arith;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod expansion;
pub mod field;
pub mod interval;
pub mod padic;
pub mod parse;
pub mod pure_periodic;
pub mod quadratic_cf;
pub mod report;
pub mod rational_cf;

pub use error::{Error, Result};
pub use padic::{LRational, PartialQuotient, Prime};
pub use quadratic_cf::QuadraticSurd;
