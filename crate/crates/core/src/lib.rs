//! Finite-horizon selection games on finite spaces: exact solving, strategy
//! synthesis, strategy transformers, duality checks and cofinality.

pub mod duality;
pub mod exec;
pub mod game;
pub mod ground;
pub mod harness;
pub mod orders;
pub mod solver;
pub mod transforms;
