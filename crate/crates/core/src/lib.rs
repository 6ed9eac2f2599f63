//! Exact Chern-character arithmetic on polarized Calabi-Yau threefolds of
//! Picard rank one, and a certifier that replays the case analysis proving
//! `ch3(E) <= ch2(E).H / (3 ch0(E))` for slope stable sheaves with `c1 = H`.
//!
//! Every quantity is an exact [`Rational`]; there is no floating point.

pub mod certifier;
pub mod chern;
pub mod cli;
pub mod config;
pub mod error;
pub mod geometry;
pub mod rational;
pub mod stability;

pub use chern::ChernVector;
pub use error::Error;
pub use geometry::{CurveBound, PolarizedCY3, Preset};
pub use rational::Rational;
