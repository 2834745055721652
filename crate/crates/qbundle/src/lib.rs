pub mod check;
pub mod cli;
pub mod dga;
pub mod error;
pub mod gauge;
pub mod hopf;
pub mod instances;
pub mod ncalg;
pub mod qpb;

pub use error::{Error, Result};
