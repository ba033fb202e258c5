//! Multiprecision Bessel moments, hypergeometric and Meijer-G evaluation, and
//! a registry of numerical identities checked by independent routes.

pub mod error;
pub mod hyper;
pub mod meijer;
pub mod modular;
pub mod moments;
pub mod mpcore;
pub mod quad;
pub mod quantity;
pub mod registry;
pub mod specfun;

pub use error::{Error, Result};
pub use mpcore::{Complex, PrecisionContext, Real};
