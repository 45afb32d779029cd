//! Exact algebra of trace functions on moduli of flat connections, their
//! quantization, the pants difference-operator representation and Virasoro
//! conformal blocks.

pub mod error;
pub mod cft;
pub mod classical;
pub mod laurent;
pub mod pants_rep;
pub mod qcoeff;
pub mod quantum;
pub mod topology;
pub mod upoly;

pub use error::{Error, Result};
