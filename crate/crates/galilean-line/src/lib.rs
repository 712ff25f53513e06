//! Galilean line group over truncated analytic functions of time.
//!
//! Elements `(R(t), a(t), b)` act on spacetime by `(x, t) ↦ (R(t)x + a(t), t + b)`.
//! Time functions are carried either as order-`N` jets ([`jet::Jet`]) or,
//! for exact checks with time-dependent rotations, as rational functions
//! ([`ratfn::RatFn`]).

pub mod cli;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod extension;
pub mod generators;
pub mod jet;
pub mod line_group;
pub mod linalg;
pub mod map_semigroup;
pub mod random;
pub mod ratfn;
pub mod report;
pub mod scalar;
pub mod suites;
pub mod timefn;
pub mod velocity_rep;
