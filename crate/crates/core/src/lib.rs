//! Iterated elimination of strictly dominated strategies on finite games,
//! with exact rational arithmetic throughout.

pub mod cli;
pub mod continuity;
pub mod dominance;
pub mod fourier_motzkin;
pub mod game;
pub mod lp;
pub mod measures;
pub mod reduction;
pub mod suite;
pub mod rational;

pub use game::{Game, GameError, Pairing, Player, Profile, Strategy, StrategySet};
pub use rational::Rational;
