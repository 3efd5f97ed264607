pub mod arith;
pub mod beauville;
pub mod error;
pub mod ffield;
pub mod grouptool;
pub mod psl2;
pub mod recipes;
pub mod serial;
pub mod suzuki;

pub use error::{Error, Result};
pub use ffield::{make_field, Fe, Field, Poly, PolyClass, QElem, QuadExtension};
