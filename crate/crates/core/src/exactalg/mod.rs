//! Exact fields and polynomial algebra.
//!
//! Three fields are provided: the rationals ([`Q`]), single-generator
//! extensions `Q(w)` ([`QExt`]) and rational functions `K(t)` ([`RatFunc`]).
//! Everything above this module is generic over [`Field`].

mod ext;
mod field;
mod form;
mod modgcd;
mod poly;
mod ratfunc;
mod rational;

pub use ext::{MinPoly, QExt};
pub use field::{Field, FieldContext};
pub use form::HomogForm;
pub use poly::Poly;
pub use ratfunc::{t_limit, RatFunc};
pub use rational::{primitive_part, rational_roots};

/// The rationals.
pub type Q = num_rational::BigRational;

/// `Q(t)`
pub type Qt = RatFunc<Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}
