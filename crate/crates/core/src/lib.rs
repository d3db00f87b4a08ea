pub mod density;
pub mod error;
pub mod extremal;
pub mod group;
pub mod lp;
pub mod posdef;
pub mod radial;
pub mod rng;
pub mod suites;
pub mod trinomial;

pub use error::{Error, Result};
