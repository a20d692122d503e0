//! Shelling vectors and flag vectors of uniform hypergraphs.
//!
//! An `i`-graph is a set of `i`-element cells on a finite vertex set. A
//! shelling removes the vertices one at a time; at each step the removed
//! cells form the link, an `(i-1)`-graph. The flag vector sums, over every
//! shelling, the tensor product of the link contributions. Everything here
//! is exact rational arithmetic.

pub mod canonical;
pub mod claims;
pub mod enumeration;
pub mod error;
pub mod flag;
pub mod hypergraph;
pub mod io;
pub mod limits;
pub mod linalg;
pub mod rational;
pub mod shelling;

pub use error::{Error, Result};

pub use hypergraph::{expand_optional, glue_split, Cell, FormalSum, GlueSplit, Hypergraph, OptionalSpec};
pub use limits::Limits;
pub use linalg::{QMatrix, Solution};
pub use rational::Q;

pub use flag::{ClosedForm, FlagEngine, GenericRule, LinkRule, QuotientBasis, WordVector};
pub use shelling::{ShellingEngine, ShellingExpr, ShellingSum};
