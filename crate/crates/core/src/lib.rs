//! Lurking/delurking as an evolutionary public-goods game.
//!
//! Active contributors are cooperators, lurkers are defectors. The crate
//! provides network generators and metrics ([`netgen`]), the payoff and
//! adoption rules ([`game`]), the well-mixed ODE ([`meanfield`]), the
//! networked Monte Carlo engine ([`engine`]), threshold sweeps ([`sweep`]) and
//! the command-line front end ([`cli`]).

pub mod cli;
pub mod engine;
pub mod error;
pub mod game;
pub mod meanfield;
pub mod netgen;
pub mod seed;
pub mod sweep;

pub use error::{Error, Result};
