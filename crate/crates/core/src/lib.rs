pub mod decision;
pub mod elimination;
pub mod error;
pub mod par;
pub mod plane;
pub mod poly;
pub mod position;
pub mod series;
pub mod witness;

pub use error::{Error, Result};
pub use par::{Exec, Settings};
