//! Exact coefficient arithmetic.

pub mod gcd;
pub mod gf;
pub mod groebner;
pub mod linalg;
pub mod poly;
pub mod ratfunc;
pub mod ring;

pub use gf::{lambda_fe, Fe, Gf};
pub use poly::{Monomial, MonomialOrder, MultiPoly, PolyRing};
pub use ratfunc::{RatFunc, RatFuncField};
pub use ring::{Field, Ring};
pub mod generated;
pub mod series;

pub use generated::GeneratedAlgebra;
pub use series::PowerSeriesRing;
