//! Exact computational algebra for braids, flat connections built from
//! infinitesimal braid relations, and the universal one-dimensional formal
//! group law.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of its inputs; reading and writing files, JSON and the command
//! line live in the `braidlaz` companion crate.
//!
//! * [`braid`]: braid words, free reduction, Garside left normal form, the
//!   word problem, Markov moves, closures and the strand cobordism.
//! * [`kz`]: exact rational matrices, the infinitesimal braid relation
//!   checker, flatness of the KZ form and numeric holonomy.
//! * [`fgl`]: graded polynomials over the Lazard generators, buds, the
//!   stepwise universal law, logarithms, cobordism classes of projective
//!   spaces and the first Chern class of a tensor product.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod braid;
pub mod fgl;
pub mod kz;
pub mod rational;

pub use rational::Rational;
