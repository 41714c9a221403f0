pub mod error;
pub mod graphs;
pub mod monomials;
pub mod resolution;
pub mod splittings;
pub mod admissible;
pub mod forest_engine;
pub mod corpus;

pub use error::{Error, Result};
pub use graphs::{Graph, Matching};
pub use monomials::{MonomialIdeal, SqfMonomial};
pub use resolution::{BettiTable, FieldSpec};
