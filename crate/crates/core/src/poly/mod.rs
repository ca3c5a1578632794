//! Dense exact polynomials: univariate over a [`Field`](crate::ring::Field)
//! and bivariate in `(z, c)` stored as rows of `c`-polynomials.

mod bivar;
pub(crate) mod kernel;
mod text;
mod uni;

pub use bivar::BivarPoly;
pub use text::{from_text, to_text};
pub use uni::{gcd_uni, squarefree, UniPoly};
