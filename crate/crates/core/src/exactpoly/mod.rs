//! Exact coefficient arithmetic: rationals, number fields, univariate
//! polynomials and binary forms.

mod biform;
mod field;
mod rat;
mod unipoly;

pub use biform::BiForm;
pub use field::{Field, NfElem, NumberField};
pub use rat::{rat, Rat};
pub use unipoly::UniPoly;
