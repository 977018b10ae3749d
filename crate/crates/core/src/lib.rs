//! Arithmetic in Lipschitz quaternion rings `Z_n[i,j,k]` and matrix rings
//! `M_2(Z_m)`, zero-divisor graphs over them, and exact graph invariants
//! (order, diameter, girth, domination number) with machine-checkable
//! witnesses.

pub mod bits;
pub mod budget;
pub mod domination;
pub mod error;
pub mod graph;
pub mod invariants;
pub mod mat2;
pub mod matn;
pub mod quat;
pub mod ring;

pub use budget::Budgets;
pub use error::{Error, Result};
pub use quat::{ElementClass, Quat};
pub use ring::{Factor, Residue, RingSpec};
