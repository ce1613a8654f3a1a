pub mod error;
pub mod exact;
pub mod identities;
pub mod sequences;
pub mod series;
pub mod triangle;

pub use error::{Error, Result};
pub use exact::{binomial, choose, Integer, Rational};
pub use series::{Polynomial, SeriesMatch, TruncatedSeries};
