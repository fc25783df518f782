//! Model files and formulas.

pub mod formula;
pub mod model;

pub use formula::{check_valid, eval_formula, parse_formula, parse_formula_at, Formula};
pub use model::{is_name_char, parse_model, InductionDecl, Item, Model, ModelError, ModelFile, Space};
