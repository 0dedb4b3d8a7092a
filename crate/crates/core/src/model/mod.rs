//! Atoms, interpretations, c-atoms and programs, with the basic semantic
//! notions defined on them.

mod atoms;
mod catom;
mod interp;
pub mod ops;
mod program;

pub use atoms::{AtomId, AtomTable};
pub use catom::{CAtom, DOMAIN_CAP};
pub use interp::Interpretation;
pub use ops::{
    classify, closure, complement, hset, is_minimal_model, is_model, models, satisfies,
    satisfies_body, satisfies_naf, satisfies_rule, supports, CAtomClass,
};
pub use program::{Program, ProgramClass, Rule};
