//! Exact scalars in Q(zeta8) and the sign conventions on bi-degrees.

pub mod cyclo;
pub mod degree;
pub mod rational;

pub use cyclo::CycloScalar;
pub use degree::{sign_deligne, sign_super, sign_unbraid, BiDegree, Sign, SignRule};
pub use rational::{int, parse_rational, rat, Rational};
