//! Cyclic codes, Mattson-Solomon transforms and uncertainty principles over
//! finite fields.
//!
//! The computational core is [`cyclic::mu`], which evaluates
//! `mu(F_q, n) = min { d(C) + dim C }` over all nonzero cyclic codes of
//! length `n`. The other modules supply the field arithmetic it rests on
//! ([`gf`], [`polyring`]), the transform view of the same quantity
//! ([`mstransform`]), combinatorial lower bounds ([`ramsey`]) and the
//! real-valued counting formulas ([`asymptotics`]).

pub mod asymptotics;
pub mod cache;
pub mod cyclic;
pub mod error;
pub mod gf;
pub mod mstransform;
pub mod polyring;
pub mod ramsey;
pub mod table;

pub use cyclic::{mu, CyclicCode, DistanceOptions, DistanceResult, Method, MuRecord};
pub use error::{Error, Result};
pub use gf::{FFElem, FieldCtx, Fq, PrimePower};
pub use mstransform::{MSVector, MsTransform};
pub use polyring::FPoly;
pub use ramsey::RamseyResult;

pub type FAlphaF64 = asymptotics::FAlpha<f64>;
pub type FAlphaF32 = asymptotics::FAlpha<f32>;
