//! Exact arithmetic in `F_q`, `F_q[t]` and `F_q(t)`.

mod field;
mod poly;
mod ratfn;

pub use field::{make_field, Field, FieldElement, FieldSpec, MAX_FIELD_ORDER};
pub use poly::{monic_enumerate, Poly, Valuation};
pub use ratfn::RationalFn;
