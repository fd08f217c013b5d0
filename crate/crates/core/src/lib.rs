//! Exact computer algebra for projective polynomials `u x^{r+1} + v x^r + w x + z`
//! over finite fields and the hyperquadratic elements they define.

pub mod error;
pub mod fields;
pub mod linalg;
pub mod parse;
pub mod upoly;

pub use error::{Error, Result};
pub mod acceptance;
pub mod factor;
pub mod par;
pub mod projective;
pub mod riccati;
pub mod table;
