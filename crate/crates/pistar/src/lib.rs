//! Exact verification toolkit for finite-dimensional superalgebras with
//! superinvolution.
//!
//! The crate computes, over the rationals and without any floating-point
//! arithmetic:
//!
//! - `*`-codimension sequences `c_n` and per-signature codimensions of a
//!   superalgebra with superinvolution ([`codim`]),
//! - proper codimensions `gamma_n` via the inverse binomial transform and via
//!   degree-limited proper spanning sets ([`codim`]),
//! - multiplicities of proper cocharacters in degrees 1 and 2
//!   ([`cocharacter`]),
//! - linear spans of T*-ideal consequences of finite generator sets, compared
//!   against the actual multilinear identity spaces ([`tideal`]),
//! - reconstruction of a direct-sum decomposition from a cocharacter profile
//!   and round-trip checks ([`verify`]).
//!
//! # Design
//!
//! All linear algebra runs over arbitrary-precision rationals ([`exact`]),
//! with fraction-free Bareiss elimination for batch rank/rref and an
//! incremental reduced-row-echelon accumulator for the streaming evaluation
//! engines. Algebras are given by structure constants on a homogeneous basis
//! ([`star_algebra`]); a built-in catalog constructs the finite-dimensional
//! algebras relevant to quadratic codimension growth from elementary
//! matrices and Grassmann generators. Free `*`-polynomials on four kinds of
//! typed variables (even/odd, symmetric/skew) live in [`free_star`].

pub mod cocharacter;
pub mod codim;
pub mod exact;
pub mod free_star;
pub mod star_algebra;
pub mod tideal;
pub mod verify;
