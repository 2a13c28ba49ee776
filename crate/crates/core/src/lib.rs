//! Exact intersection theory and Gromov-Witten bookkeeping for lines and
//! conics on degree-`k` hypersurfaces `M_N^k` of `P^(N-1)`.
//!
//! Everything is exact: rationals are arbitrary precision, number fields are
//! quotient rings `Q[t]/(m(t))`, and all ranks come from fraction-free
//! elimination.

pub mod covmoduli;
pub mod cubics;
pub mod dcover;
pub mod error;
pub mod exactpoly;
pub mod grassmann;
pub mod json;
pub mod linalg;
pub mod linegeom;
pub mod vsc;

pub use error::{Error, Result};
pub use exactpoly::{BiForm, Field, NfElem, NumberField, Rat, UniPoly};
pub use grassmann::{SchurExpansion, SymClass};

