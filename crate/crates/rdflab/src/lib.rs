//! A desk-scale laboratory for bilinear Rubio de Francia square functions
//! on the discrete circle `Z_N`.
//!
//! The crate implements, for collections of disjoint dyadic frequency
//! squares:
//!
//! - sharp frequency projections and the bilinear projection `π_ω`
//!   ([`spectral`]), over signals with cached spectra ([`signal`]);
//! - the maximal and variational operators that control them — Carleson,
//!   `r`-variation, the linear `RdF^r` aggregate, `T^r_Ω`, the dyadic
//!   maximal function, and exceptional-set construction ([`operators`]);
//! - the tri-tile time-frequency machinery: tile coefficients, sizes,
//!   energies with exact antichain certificates, stopping-time
//!   decompositions, and the discretized trilinear form ([`tiles`]);
//! - bilinear multipliers with nesting-controlled coefficient families
//!   ([`multiplier`]);
//! - collection generators and a derivative-free operator-norm ratio
//!   search with a reproducible experiment harness ([`lab`]).
//!
//! Start with the runnable examples (`cargo run -p rdflab --example …`) for
//! a tour of each capability.

pub mod dyadic;
pub mod error;
pub mod lab;
pub mod multiplier;
pub mod operators;
pub mod signal;
pub mod spectral;
pub mod tile;
pub mod tiles;

pub use error::{Error, Result};
