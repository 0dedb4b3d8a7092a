//! Answer sets of propositional logic programs with abstract constraint
//! atoms (c-atoms).
//!
//! The crate implements the fixpoint semantics based on conditional
//! satisfaction (with negation handled by reduct or by complement), the
//! equivalent level-mapping characterisation, answer sets of programs with
//! arbitrary c-atoms in rule heads, several competing semantics used as
//! comparators, and the unfolding of c-atom programs into normal programs.
//!
//! ```
//! use catoms::{parser, fixpoint::{self, Mode}, Limits};
//!
//! let p = parser::parse_program("p :- ({q},{{}}). q :- ({p},{{}}).").unwrap();
//! let sets = fixpoint::enumerate_answer_sets(&p, Mode::Reduct, &Limits::default()).unwrap();
//! let shown: Vec<_> = sets.iter().map(|m| p.atoms().render_set(m)).collect();
//! assert_eq!(shown, ["{p}", "{q}"]);
//! ```

pub mod altsem;
pub mod cli;
pub mod diffkit;
pub mod error;
pub mod fixpoint;
pub mod general;
pub mod limits;
pub mod model;
pub mod parser;
pub mod unfold;
pub mod wellsupport;

mod sweep;

pub use error::{Error, Result, SourceSpan};
pub use limits::Limits;
pub use model::{AtomId, AtomTable, CAtom, Interpretation, Program, Rule};
