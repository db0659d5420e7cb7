//! Requirement formulas, their normal forms and the lattice they form.

mod algebra;
mod formula;
mod laws;
mod ubl;

pub use algebra::{Requirement, RequirementAlgebra};
pub use formula::{parse_formula, Atom, Formula, ParseError};
pub use laws::{check_modal_laws, check_modal_laws_with, LawResult, ModalLawReport, MODAL_LAWS};
pub use ubl::{build_ubl, build_ubl_for_bl, lift_nucleus_ubl, UblLattice, DEFAULT_UBL_CAP, MAX_UBL_MAXIMAL};
