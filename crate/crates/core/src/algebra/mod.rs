//! The Cayley-Dickson algebras `A_n`.
//!
//! `A_0 = R` and `A_n = A_{n-1} × A_{n-1}` with
//! `(a,b)(c,d) = (ac - d*b, da + bc*)` and `(a,b)* = (a*, -b)`.
//! Products go through a memoized basis table ([`MulTable`]); the direct
//! recursion is kept as [`Element::mul_recursive`] for cross-checking.

mod complex;
mod element;
mod parse;
pub mod table;

pub use complex::ComplexScalar;
pub use element::Element;
pub use parse::parse_element;
pub use table::{allow_large, basis_product_by_recursion, MulTable};
