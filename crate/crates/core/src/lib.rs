pub mod certify;
pub mod cli;
pub mod cmcheck;
pub mod error;
pub mod families;
pub mod inequalities;
pub mod numdiff;
pub mod quad;
pub mod report;
pub mod specfun;

pub use error::{Error, Result};
