//! Almost simplicial polytopes: the almost cyclic family `C(d,n,s)` built on
//! a modified moment curve, the almost stacked family `S(d,n,s)`, and exact
//! checkers for their face numbers, shellings, prime decompositions and
//! rigidity.
//!
//! All arithmetic is exact. Geometry goes through [`exactnum`]; everything
//! combinatorial works on sorted integer vertex sets.

pub mod complexes;
pub mod curves;
pub mod enumerative;
pub mod error;
pub mod exactnum;
pub mod gale;
pub mod hull;
pub mod par;
pub mod rigidity;
pub mod stackgen;

pub use error::{Error, Result};
pub use par::Strategy;
