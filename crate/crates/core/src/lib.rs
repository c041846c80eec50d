//! Reformulation of Essence-subset constraint specifications by graph
//! rewriting.
//!
//! A specification is parsed ([`essence`]), encoded as a labelled host graph
//! ([`graph`]), rewritten by a rule program ([`engine`], with the shipped rule
//! library in [`rules`]) and decoded back. The brute-force [`eval`] module
//! enumerates solutions of small instances, and [`convert`] maps solutions of
//! a reformulated specification back to the original decision variable's
//! type so both sides can be checked against each other. [`instances`]
//! produces the parameter sets those checks run on.

pub mod convert;
pub mod engine;
pub mod essence;
pub mod eval;
pub mod graph;
pub mod instances;
pub mod rules;
pub mod testgen;
pub mod value;

pub use essence::{parse_spec, print_spec, struct_eq, Specification};
pub use graph::LabeledGraph;
pub use value::Value;
