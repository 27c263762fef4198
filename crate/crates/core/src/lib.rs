//! Exact computations around the Gopakumar–Vafa form of Gromov–Witten
//! generating functions: truncated q-series over exact rings, Eisenstein
//! series, sl2 x sl2 characters and BPS extraction, the GW <-> BPS transform,
//! refined Göttsche products, and the holomorphic anomaly recursion.

pub mod anomaly;
pub mod bivariate;
pub mod error;
pub mod goettsche;
pub mod gvtransform;
pub mod laurent;
pub mod modular;
pub mod rational;
pub mod series;
pub mod sl2rep;
pub mod trig;

pub use error::{Error, Result};
pub use laurent::{Laurent1, Laurent2, LaurentPoly};
pub use num_bigint::BigInt;
pub use rational::Rational;
pub use series::{Coefficient, QSeries};
