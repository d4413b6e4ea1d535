//! Toolkit for propositional intuitionistic linear logic: a focused
//! theorem prover with checkable proof objects, four translations from
//! intuitionistic logic, a Petri-net reachability problem generator, and a
//! benchmark harness over the generated problem library.

pub mod formula;
pub mod il;
pub mod multiset;
pub mod format;
pub mod translate;
pub mod kleene;
pub mod oracle;
pub mod illf;
pub mod petri;
pub mod bench;

pub use formula::{is_ill_admissible, negate, polarity, Formula, Polarity, Sequent};
pub use il::{expand_defined, ILFormula, ILSequent};
pub use multiset::Multiset;
