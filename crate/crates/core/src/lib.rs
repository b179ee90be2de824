//! Finite monoids with associative ideals, finite categories, and the
//! translations between them; partially existing sequences described by an
//! existence predicate; and a rewriter that localizes first-order axioms to
//! that predicate.

pub mod bridge;
pub mod category;
pub mod chain;
pub mod corpus;
pub mod ideal;
pub mod logic;
pub mod monoid;
pub mod par;
pub mod text;
mod verdict;

pub use par::Strategy;
pub use verdict::Verdict;
