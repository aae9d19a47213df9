//! Exact polynomial arithmetic, Groebner bases and ideal operations.

pub mod factor;
pub mod field;
pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod modp;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod unipoly;

pub use factor::{factor, is_irreducible, FactorError};
pub use field::{Elem, Field, FieldError, FieldSpec};
pub use groebner::{groebner_basis, is_groebner, reduce, s_polynomial};
pub use ideal::{fresh_name, Ideal};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_laurent, parse_polynomial, ParseError};
pub use poly::{PolyError, PolyRing, Polynomial, DEFAULT_PAIR_BUDGET};
pub use unipoly::UniPoly;
