//! Pasting schemes, composition orders and coherence certificates for
//! 2-dimensional pasting diagrams in Gray-categories.

pub mod scheme;
pub mod relations;
pub mod rewrite;
pub mod composer;
pub mod corpus;
