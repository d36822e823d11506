//! Exact computations around Hecke groups, Rosen continued fractions,
//! Veech triangle surfaces and the SAF invariant of interval exchanges.

pub mod arith;
pub mod exactfield;
pub mod linalg;
pub mod poly;
pub mod hecke;
pub mod matrix;
pub mod parse;
pub mod rosen;
pub mod surfaces;
pub mod saf;
pub mod trig;
pub mod verify;
